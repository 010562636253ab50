//! Smith normal form with optional tracking of `U`, `U^-1` and `V`.
//!
//! Elimination runs on a sparse row representation. Pivots are chosen by
//! smallest Euclidean size, then smallest Markowitz cost `(r-1)(c-1)`, then
//! column and row index, so the result is a deterministic function of the input.

use std::collections::{BTreeMap, BTreeSet};

use super::int::Int;
use super::ring::{Integers, Ring};
use super::sparse::{lincomb, scale, IntMatrix, SVec, SparseMatrix};

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true };
}

/// `U·M·V = diag(d_1, ..., d_k, 0, ...)`; `u` is stored by rows, `u_inv` and `v` by columns.
#[derive(Clone, Debug)]
pub struct SmithForm<R: Ring> {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<R::Elem>,
    pub u: Option<Vec<SVec<R::Elem>>>,
    pub u_inv: Option<Vec<SVec<R::Elem>>>,
    pub v: Option<Vec<SVec<R::Elem>>>,
}

struct Work<'r, R: Ring> {
    ring: &'r R,
    m: Vec<BTreeMap<usize, R::Elem>>,
    colsupp: Vec<BTreeSet<usize>>,
    u: Option<Vec<SVec<R::Elem>>>,
    uinv_t: Option<Vec<SVec<R::Elem>>>,
    v_t: Option<Vec<SVec<R::Elem>>>,
}

fn unit_rows<R: Ring>(ring: &R, n: usize) -> Vec<SVec<R::Elem>> {
    (0..n).map(|i| vec![(i, ring.one())]).collect()
}

/// `(x_i, x_j) <- (a x_i + b x_j, c x_i + d x_j)`
fn combine<R: Ring>(ring: &R, xs: &mut [SVec<R::Elem>], i: usize, j: usize, g: &[R::Elem; 4]) {
    let ni = lincomb(ring, &g[0], &xs[i], &g[1], &xs[j]);
    let nj = lincomb(ring, &g[2], &xs[i], &g[3], &xs[j]);
    xs[i] = ni;
    xs[j] = nj;
}

impl<'r, R: Ring> Work<'r, R> {
    fn get(&self, i: usize, j: usize) -> Option<&R::Elem> {
        self.m[i].get(&j)
    }

    fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        if self.ring.is_zero(&v) {
            self.m[i].remove(&j);
            self.colsupp[j].remove(&i);
        } else {
            self.m[i].insert(j, v);
            self.colsupp[j].insert(i);
        }
    }

    /// Row operation with a determinant-one 2x2 matrix.
    fn row_op(&mut self, i: usize, j: usize, g: [R::Elem; 4]) {
        let ring = self.ring;
        let keys: BTreeSet<usize> = self.m[i].keys().chain(self.m[j].keys()).copied().collect();
        for k in keys {
            let x = self.m[i].get(&k).cloned().unwrap_or_else(|| ring.zero());
            let y = self.m[j].get(&k).cloned().unwrap_or_else(|| ring.zero());
            let nx = ring.add(&ring.mul(&g[0], &x), &ring.mul(&g[1], &y));
            let ny = ring.add(&ring.mul(&g[2], &x), &ring.mul(&g[3], &y));
            self.set(i, k, nx);
            self.set(j, k, ny);
        }
        if let Some(u) = self.u.as_mut() {
            combine(ring, u, i, j, &g);
        }
        if let Some(ui) = self.uinv_t.as_mut() {
            let inv = [g[3].clone(), ring.neg(&g[2]), ring.neg(&g[1]), g[0].clone()];
            combine(ring, ui, i, j, &inv);
        }
    }

    /// Column operation: `(c_i, c_j) <- (a c_i + b c_j, c c_i + d c_j)`.
    fn col_op(&mut self, i: usize, j: usize, g: [R::Elem; 4]) {
        let ring = self.ring;
        let rows: BTreeSet<usize> = self.colsupp[i].union(&self.colsupp[j]).copied().collect();
        for r in rows {
            let x = self.get(r, i).cloned().unwrap_or_else(|| ring.zero());
            let y = self.get(r, j).cloned().unwrap_or_else(|| ring.zero());
            let nx = ring.add(&ring.mul(&g[0], &x), &ring.mul(&g[1], &y));
            let ny = ring.add(&ring.mul(&g[2], &x), &ring.mul(&g[3], &y));
            self.set(r, i, nx);
            self.set(r, j, ny);
        }
        if let Some(v) = self.v_t.as_mut() {
            combine(ring, v, i, j, &g);
        }
    }

    fn elim_coeffs(&self, a: &R::Elem, b: &R::Elem) -> ([R::Elem; 4], bool) {
        let ring = self.ring;
        if ring.divides(a, b) {
            let q = ring.div_exact(b, a);
            ([ring.one(), ring.zero(), ring.neg(&q), ring.one()], false)
        } else {
            let (g, x, y) = ring.gcdext(a, b);
            let mb = ring.neg(&ring.div_exact(b, &g));
            let ag = ring.div_exact(a, &g);
            ([x, y, mb, ag], true)
        }
    }

    fn clear(&mut self, pr: usize, pc: usize) {
        loop {
            let others: Vec<usize> = self.colsupp[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in others {
                let (Some(a), Some(b)) = (self.get(pr, pc).cloned(), self.get(r, pc).cloned()) else { continue };
                let (g, _) = self.elim_coeffs(&a, &b);
                self.row_op(pr, r, g);
            }
            let others: Vec<usize> = self.m[pr].keys().copied().filter(|&c| c != pc).collect();
            for c in others {
                let (Some(a), Some(b)) = (self.get(pr, pc).cloned(), self.get(pr, c).cloned()) else { continue };
                let (g, _) = self.elim_coeffs(&a, &b);
                self.col_op(pc, c, g);
            }
            if self.colsupp[pc].len() == 1 && self.m[pr].len() == 1 {
                return;
            }
        }
    }

    fn choose_pivot(&self, active_rows: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<((u64, usize, usize, usize), (usize, usize))> = None;
        for &r in active_rows {
            let rc = self.m[r].len();
            for (c, v) in &self.m[r] {
                let cc = self.colsupp[*c].len();
                let key = (ring.size(v), (rc - 1) * (cc - 1), *c, r);
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, (r, *c)));
                }
            }
        }
        best.map(|(_, p)| p)
    }
}

pub fn smith<R: Ring>(ring: &R, mat: &SparseMatrix<R::Elem>, track: Track) -> SmithForm<R> {
    let (nr, nc) = (mat.rows(), mat.cols());
    let mut w = Work {
        ring,
        m: vec![BTreeMap::new(); nr],
        colsupp: vec![BTreeSet::new(); nc],
        u: track.u.then(|| unit_rows(ring, nr)),
        uinv_t: track.u_inv.then(|| unit_rows(ring, nr)),
        v_t: track.v.then(|| unit_rows(ring, nc)),
    };
    for (i, j, v) in mat.triplets() {
        w.m[i].insert(j, v.clone());
        w.colsupp[j].insert(i);
    }
    let mut active: BTreeSet<usize> = (0..nr).filter(|&r| !w.m[r].is_empty()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    while let Some((pr, pc)) = w.choose_pivot(&active) {
        w.clear(pr, pc);
        active.remove(&pr);
        pivots.push((pr, pc));
    }

    let k = pivots.len();
    let mut row_perm: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    let used_r: BTreeSet<usize> = row_perm.iter().copied().collect();
    row_perm.extend((0..nr).filter(|r| !used_r.contains(r)));
    let mut col_perm: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let used_c: BTreeSet<usize> = col_perm.iter().copied().collect();
    col_perm.extend((0..nc).filter(|c| !used_c.contains(c)));

    let mut diag: Vec<R::Elem> = pivots.iter().map(|&(r, c)| w.m[r][&c].clone()).collect();

    // Row permutation P: U' = P U, U'^-1 = U^-1 P^T, V' = V Q.
    let mut u = w.u.take().map(|u| row_perm.iter().map(|&r| u[r].clone()).collect::<Vec<_>>());
    let mut uinv = w.uinv_t.take().map(|u| row_perm.iter().map(|&r| u[r].clone()).collect::<Vec<_>>());
    let mut v = w.v_t.take().map(|v| col_perm.iter().map(|&c| v[c].clone()).collect::<Vec<_>>());

    let z = ring.zero();
    let one = ring.one();
    let row_g = |u: &mut Option<Vec<SVec<R::Elem>>>, ui: &mut Option<Vec<SVec<R::Elem>>>, i, j, g: [R::Elem; 4]| {
        if let Some(u) = u.as_mut() {
            combine(ring, u, i, j, &g);
        }
        if let Some(ui) = ui.as_mut() {
            let inv = [g[3].clone(), ring.neg(&g[2]), ring.neg(&g[1]), g[0].clone()];
            combine(ring, ui, i, j, &inv);
        }
    };
    for i in 0..k {
        for j in i + 1..k {
            if ring.divides(&diag[i], &diag[j]) {
                continue;
            }
            let (di, dj) = (diag[i].clone(), diag[j].clone());
            let (g, x, y) = ring.gcdext(&di, &dj);
            row_g(&mut u, &mut uinv, i, j, [one.clone(), one.clone(), z.clone(), one.clone()]);
            if let Some(v) = v.as_mut() {
                let h = [x.clone(), y.clone(), ring.neg(&ring.div_exact(&dj, &g)), ring.div_exact(&di, &g)];
                combine(ring, v, i, j, &h);
            }
            let q = ring.neg(&ring.div_exact(&ring.mul(&y, &dj), &g));
            row_g(&mut u, &mut uinv, i, j, [one.clone(), z.clone(), q, one.clone()]);
            diag[j] = ring.div_exact(&ring.mul(&di, &dj), &g);
            diag[i] = g;
        }
    }
    for (i, d) in diag.iter_mut().enumerate() {
        let (unit, inv) = ring.normal_unit(d);
        if unit == one {
            continue;
        }
        *d = ring.mul(&unit, d);
        if let Some(u) = u.as_mut() {
            u[i] = scale(ring, &unit, &u[i]);
        }
        if let Some(ui) = uinv.as_mut() {
            ui[i] = scale(ring, &inv, &ui[i]);
        }
    }

    SmithForm { rows: nr, cols: nc, diag, u, u_inv: uinv, v }
}

/// Nonzero invariant factors only.
pub fn invariant_factors<R: Ring>(ring: &R, mat: &SparseMatrix<R::Elem>) -> Vec<R::Elem> {
    smith(ring, mat, Track::NONE).diag
}

/// Integer Smith decomposition with explicit matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.entry(i, i)).filter(|d| !d.is_zero()).collect()
    }

    /// Re-multiplies `U·M·V` and compares with `S`; also checks the divisibility chain.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        if self.u.mul(m).mul(&self.v) != self.s {
            return false;
        }
        let d = self.invariant_factors();
        let diag_only = self.s.triplets().all(|(i, j, _)| i == j);
        let chain = d.windows(2).all(|w| w[0].divides(&w[1]));
        let positive = d.iter().all(|x| !x.is_negative());
        let prefix = (0..d.len()).all(|i| !self.s.entry(i, i).is_zero());
        diag_only && chain && positive && prefix && is_unimodular(&self.u) && is_unimodular(&self.v)
    }
}

/// Determinant `±1`, checked exactly by fraction-free elimination.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let d = determinant(&m.to_dense());
    d.is_unit()
}

/// Bareiss determinant of a square dense integer matrix.
pub fn determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::ONE;
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = Int::ONE;
    let mut prev = Int::ONE;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::ZERO;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let f = smith(&Integers, m, Track { u: true, u_inv: false, v: true });
    let (nr, nc) = (m.rows(), m.cols());
    let u_rows = f.u.expect("tracked");
    let u = IntMatrix::from_triplets(
        nr,
        nr,
        u_rows.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v.clone()))),
    );
    let v = IntMatrix::from_columns(nc, f.v.expect("tracked"));
    let s = IntMatrix::from_triplets(nr, nc, f.diag.iter().enumerate().map(|(i, d)| (i, i, d.clone())));
    let dec = SmithDecomposition { u, v, s };
    debug_assert!(dec.u.mul(m).mul(&dec.v) == dec.s);
    dec
}
