use super::echelon::Echelon;
use super::group::AbelianGroupPresentation;
use super::int::Int;
use super::ring::Ring;
use super::smith::{smith, Track};
use super::sparse::{axpy, IntMatrix, SVec, SparseMatrix};
use crate::{Error, Result};

/// The quotient `A/B` of two lattices in a free module, with chosen generators.
///
/// Generators are listed torsion first (by increasing order), then free.
#[derive(Clone, Debug)]
pub struct Subquotient<R: Ring> {
    ring: R,
    ambient: usize,
    a: Echelon<R>,
    u_rows: Vec<SVec<R::Elem>>,
    kept: Vec<usize>,
    orders: Vec<R::Elem>,
    gens_ambient: Vec<SVec<R::Elem>>,
    gens_a: Vec<SVec<R::Elem>>,
}

impl<R: Ring> Subquotient<R> {
    pub fn new(ring: R, ambient: usize, a_gens: &[SVec<R::Elem>], b_gens: &[SVec<R::Elem>]) -> Result<Self> {
        let a = Echelon::of_columns(ring.clone(), ambient, a_gens);
        let rank = a.rank();
        let mut c = Echelon::new(ring.clone(), rank);
        for b in b_gens {
            let x = a.solve(b).ok_or(Error::NotASubgroup)?;
            c.push(x, Vec::new());
        }
        let cm = SparseMatrix::from_columns(rank, c.basis().to_vec());
        let f = smith(&ring, &cm, Track { u: true, u_inv: true, v: false });
        let u_rows = f.u.expect("tracked");
        let u_inv = f.u_inv.expect("tracked");
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for j in 0..rank {
            let d = f.diag.get(j).cloned().unwrap_or_else(|| ring.zero());
            if ring.is_unit(&d) {
                continue;
            }
            kept.push(j);
            orders.push(d);
        }
        let mut gens_ambient = Vec::with_capacity(kept.len());
        let mut gens_a = Vec::with_capacity(kept.len());
        for &j in &kept {
            let col = &u_inv[j];
            let mut amb = Vec::new();
            for (i, x) in col {
                amb = axpy(&ring, &amb, x, &a.basis()[*i]);
            }
            gens_ambient.push(amb);
            gens_a.push(a.payload_of(col));
        }
        Ok(Subquotient { ring, ambient, a, u_rows, kept, orders, gens_ambient, gens_a })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn ngens(&self) -> usize {
        self.kept.len()
    }

    /// Order of each generator; zero means infinite.
    pub fn orders(&self) -> &[R::Elem] {
        &self.orders
    }

    pub fn generators(&self) -> &[SVec<R::Elem>] {
        &self.gens_ambient
    }

    /// Generators as combinations of the input `A` generators.
    pub fn generators_in_a(&self) -> &[SVec<R::Elem>] {
        &self.gens_a
    }

    pub fn group(&self) -> AbelianGroupPresentation {
        let ring = &self.ring;
        if ring.is_field() {
            return AbelianGroupPresentation::free(self.kept.len());
        }
        let free = self.orders.iter().filter(|d| ring.is_zero(d)).count();
        let torsion: Vec<Int> = self.orders.iter().filter(|d| !ring.is_zero(d)).map(|d| ring.to_int(d)).collect();
        AbelianGroupPresentation { free_rank: free, torsion }
    }

    /// Coordinates of `v ∈ A` in the chosen generators, reduced modulo the orders;
    /// `None` when `v ∉ A`.
    pub fn coords(&self, v: &[(usize, R::Elem)]) -> Option<Vec<R::Elem>> {
        let ring = &self.ring;
        let c = self.a.solve(v)?;
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&j, d)| {
                    let row = &self.u_rows[j];
                    let mut acc = ring.zero();
                    let (mut p, mut q) = (0, 0);
                    while p < row.len() && q < c.len() {
                        match row[p].0.cmp(&c[q].0) {
                            std::cmp::Ordering::Less => p += 1,
                            std::cmp::Ordering::Greater => q += 1,
                            std::cmp::Ordering::Equal => {
                                acc = ring.axpy(&acc, &row[p].1, &c[q].1);
                                p += 1;
                                q += 1;
                            }
                        }
                    }
                    ring.reduce_mod(&acc, d)
                })
                .collect(),
        )
    }

    /// An ambient representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[R::Elem]) -> SVec<R::Elem> {
        let mut out = Vec::new();
        for (x, g) in coords.iter().zip(&self.gens_ambient) {
            out = axpy(&self.ring, &out, x, g);
        }
        out
    }

    /// True when `v ∈ A` represents the zero class.
    pub fn is_trivial_class(&self, v: &[(usize, R::Elem)]) -> Option<bool> {
        self.coords(v).map(|c| c.iter().all(|x| self.ring.is_zero(x)))
    }
}

/// Presentation and ambient lifts of the generators of `A/B`, over the integers.
pub fn subquotient(ambient_rank: usize, a_gens: &IntMatrix, b_gens: &IntMatrix) -> Result<(AbelianGroupPresentation, IntMatrix)> {
    if a_gens.rows() != ambient_rank || b_gens.rows() != ambient_rank {
        return Err(Error::InvalidParameter("generator matrices must have ambient_rank rows".into()));
    }
    let q = Subquotient::new(super::ring::Integers, ambient_rank, a_gens.columns(), b_gens.columns())?;
    let lifts = IntMatrix::from_columns(ambient_rank, q.generators().to_vec());
    Ok((q.group(), lifts))
}
