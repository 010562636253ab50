//! Column echelon form by lowest-entry elimination.
//!
//! Each column carries a payload vector that undergoes the same column
//! operations. With unit payloads the payloads of the zero columns form a basis
//! of the kernel lattice, because every step is unimodular.

use std::collections::HashMap;

use super::ring::Ring;
use super::sparse::{axpy, collect, lincomb, SVec};

#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    ring: R,
    rows: usize,
    cols: Vec<SVec<R::Elem>>,
    payloads: Vec<SVec<R::Elem>>,
    pivot: HashMap<usize, usize>,
    kernel: Vec<SVec<R::Elem>>,
    pushed: usize,
}

impl<R: Ring> Echelon<R> {
    pub fn new(ring: R, rows: usize) -> Self {
        Echelon { ring, rows, cols: Vec::new(), payloads: Vec::new(), pivot: HashMap::new(), kernel: Vec::new(), pushed: 0 }
    }

    /// Echelon of the given columns, each tagged with the unit vector of its index.
    pub fn of_columns(ring: R, rows: usize, columns: &[SVec<R::Elem>]) -> Self {
        let mut e = Echelon::new(ring, rows);
        for c in columns {
            e.push_unit(c.clone());
        }
        e
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn push_unit(&mut self, col: SVec<R::Elem>) {
        let p = vec![(self.pushed, self.ring.one())];
        self.push(col, p);
    }

    /// Reduces `col` into the echelon basis; returns true if it increased the rank.
    pub fn push(&mut self, mut col: SVec<R::Elem>, mut payload: SVec<R::Elem>) -> bool {
        self.pushed += 1;
        let ring = self.ring.clone();
        loop {
            let Some((low, b)) = col.last().cloned() else {
                self.kernel.push(payload);
                return false;
            };
            let Some(&k) = self.pivot.get(&low) else {
                self.pivot.insert(low, self.cols.len());
                self.cols.push(col);
                self.payloads.push(payload);
                return true;
            };
            let a = self.cols[k].last().expect("pivot column nonempty").1.clone();
            if ring.divides(&a, &b) {
                let q = ring.neg(&ring.div_exact(&b, &a));
                col = axpy(&ring, &col, &q, &self.cols[k]);
                payload = axpy(&ring, &payload, &q, &self.payloads[k]);
            } else {
                let (g, x, y) = ring.gcdext(&a, &b);
                let mb = ring.neg(&ring.div_exact(&b, &g));
                let ag = ring.div_exact(&a, &g);
                let pk = &self.cols[k];
                let new_pivot = lincomb(&ring, &x, pk, &y, &col);
                let rest = lincomb(&ring, &mb, pk, &ag, &col);
                let new_pay = lincomb(&ring, &x, &self.payloads[k], &y, &payload);
                let rest_pay = lincomb(&ring, &mb, &self.payloads[k], &ag, &payload);
                debug_assert!(rest.last().map_or(true, |e| e.0 != low));
                self.cols[k] = new_pivot;
                self.payloads[k] = new_pay;
                col = rest;
                payload = rest_pay;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn basis(&self) -> &[SVec<R::Elem>] {
        &self.cols
    }

    pub fn payloads(&self) -> &[SVec<R::Elem>] {
        &self.payloads
    }

    pub fn kernel(&self) -> &[SVec<R::Elem>] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<SVec<R::Elem>> {
        self.kernel
    }

    /// Coefficients of `b` in the echelon basis, if `b` lies in its span.
    pub fn solve(&self, b: &[(usize, R::Elem)]) -> Option<SVec<R::Elem>> {
        let ring = &self.ring;
        let mut b = b.to_vec();
        let mut coeffs = Vec::new();
        while let Some((low, v)) = b.last().cloned() {
            let &k = self.pivot.get(&low)?;
            let a = &self.cols[k].last().expect("pivot column nonempty").1;
            if !ring.divides(a, &v) {
                return None;
            }
            let q = ring.div_exact(&v, a);
            b = axpy(ring, &b, &ring.neg(&q), &self.cols[k]);
            coeffs.push((k, q));
        }
        Some(collect(ring, coeffs))
    }

    /// Combination of payloads matching the solution of [`Echelon::solve`].
    pub fn solve_payload(&self, b: &[(usize, R::Elem)]) -> Option<SVec<R::Elem>> {
        let c = self.solve(b)?;
        Some(self.payload_of(&c))
    }

    pub fn payload_of(&self, coeffs: &[(usize, R::Elem)]) -> SVec<R::Elem> {
        let mut out = Vec::new();
        for (k, q) in coeffs {
            out = axpy(&self.ring, &out, q, &self.payloads[*k]);
        }
        out
    }

    pub fn contains(&self, b: &[(usize, R::Elem)]) -> bool {
        self.solve(b).is_some()
    }
}
