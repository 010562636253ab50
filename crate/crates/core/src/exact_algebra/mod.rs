//! Exact linear algebra over `Z`, `Q` and `Z/p`.

mod echelon;
mod group;
mod int;
mod ring;
mod smith;
mod sparse;
mod subquotient;

pub use echelon::Echelon;
pub use group::{AbelianGroupPresentation, Coefficients};
pub use int::Int;
pub use ring::{is_prime, Integers, PrimeField, Rationals, Ring};
pub use smith::{determinant, invariant_factors, is_unimodular, smith, smith_normal_form, SmithDecomposition, SmithForm, Track};
pub use sparse::{
    axpy, collect, convert, from_dense, from_dense_matrix, get, identity, lincomb, mat_add, mat_convert, mat_mul, mat_vec,
    neg, scale, shift, to_dense, window, IntMatrix, SVec, SparseMatrix,
};
pub use subquotient::{subquotient, Subquotient};

use num_rational::BigRational;

use crate::{Error, Result};

pub fn kernel_basis<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> Vec<SVec<R::Elem>> {
    Echelon::of_columns(ring.clone(), m.rows(), m.columns()).into_kernel()
}

pub fn rank<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> usize {
    Echelon::of_columns(ring.clone(), m.rows(), m.columns()).rank()
}

/// `ker(d_out) / im(d_in)`; the two maps must compose to zero over `Z`.
pub fn homology_of_pair(d_out: &IntMatrix, d_in: &IntMatrix, coeff: Coefficients) -> Result<AbelianGroupPresentation> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::InvalidParameter(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::NotAComplex);
    }
    let n = d_out.cols();
    match coeff {
        Coefficients::Z => {
            let ker = kernel_basis(&Integers, d_out);
            Ok(Subquotient::new(Integers, n, &ker, d_in.columns())?.group())
        }
        Coefficients::Q => Ok(AbelianGroupPresentation::free(n - rank(&Integers, d_out) - rank(&Integers, d_in))),
        Coefficients::Zp(p) => {
            let f = PrimeField::new(p);
            let a = mat_convert(&Integers, &f, d_out);
            let b = mat_convert(&Integers, &f, d_in);
            Ok(AbelianGroupPresentation::free(n - rank(&f, &a) - rank(&f, &b)))
        }
    }
}

/// Some `x` with `M·x = v` over the coefficients, or `None`.
///
/// Over `Z/p` the entries are residues in `0..p`.
pub fn solve_membership(m: &IntMatrix, v: &[Int], coeff: Coefficients) -> Option<Vec<BigRational>> {
    assert_eq!(v.len(), m.rows(), "right-hand side length must equal the row count");
    fn run<R: Ring>(ring: R, m: &IntMatrix, v: &[Int], out: impl Fn(&R::Elem) -> BigRational) -> Option<Vec<BigRational>> {
        let mm = mat_convert(&Integers, &ring, m);
        let e = Echelon::of_columns(ring.clone(), mm.rows(), mm.columns());
        let b: SVec<R::Elem> = collect(&ring, v.iter().enumerate().map(|(i, x)| (i, ring.from_int(x))));
        let x = e.solve_payload(&b)?;
        Some(to_dense(&ring, &x, m.cols()).iter().map(out).collect())
    }
    match coeff {
        Coefficients::Z => run(Integers, m, v, |x: &Int| BigRational::from_integer(x.to_big())),
        Coefficients::Q => run(Rationals, m, v, |x: &BigRational| x.clone()),
        Coefficients::Zp(p) => run(PrimeField::new(p), m, v, |x: &u64| BigRational::from_integer((*x).into())),
    }
}

fn relation_columns<R: Ring>(ring: &R, orders: &[R::Elem]) -> Vec<SVec<R::Elem>> {
    orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !ring.is_zero(d))
        .map(|(i, d)| vec![(i, d.clone())])
        .collect()
}

/// Generators of `{x : g·x ≡ 0}` in a free module mapping to `⊕ R/orders_c`.
pub fn presented_kernel<R: Ring>(ring: &R, g: &SparseMatrix<R::Elem>, orders_c: &[R::Elem]) -> Vec<SVec<R::Elem>> {
    let b = g.cols();
    let mut cols = g.columns().to_vec();
    cols.extend(relation_columns(ring, orders_c));
    let big = SparseMatrix::from_columns(g.rows(), cols);
    kernel_basis(ring, &big)
        .into_iter()
        .map(|v| v.into_iter().filter(|(i, _)| *i < b).collect::<SVec<_>>())
        .filter(|v| !v.is_empty())
        .collect()
}

/// Homology at the middle of `A --f--> B --g--> C` for groups given as `⊕ R/orders`
/// (order zero meaning a free summand); matrices act on generator coordinates.
pub fn presented_homology<R: Ring>(
    ring: &R,
    f: &SparseMatrix<R::Elem>,
    g: &SparseMatrix<R::Elem>,
    orders_b: &[R::Elem],
    orders_c: &[R::Elem],
) -> Result<Subquotient<R>> {
    let nb = orders_b.len();
    let mut ker = presented_kernel(ring, g, orders_c);
    let rel_b = relation_columns(ring, orders_b);
    ker.extend(rel_b.iter().cloned());
    let mut img = f.columns().to_vec();
    img.extend(rel_b);
    Subquotient::new(ring.clone(), nb, &ker, &img)
}
