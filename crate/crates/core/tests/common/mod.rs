//! Dense, deliberately naive reference computations shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use homeolab::bicomplex::Variant;
use homeolab::complex::SimplicialComplex;
use homeolab::exact_algebra::{smith_normal_form, AbelianGroupPresentation, Int, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Simp = Vec<u32>;

/// A complex as a plain set of sorted vertex tuples, always containing the empty simplex.
#[derive(Clone, Debug)]
pub struct Toy {
    pub vertices: usize,
    pub simplices: BTreeSet<Simp>,
}

impl Toy {
    pub fn from_facets(vertices: usize, facets: &[Simp]) -> Toy {
        let mut simplices = BTreeSet::new();
        simplices.insert(Vec::new());
        for v in 0..vertices as u32 {
            simplices.insert(vec![v]);
        }
        for f in facets {
            let mut f = f.clone();
            f.sort();
            for mask in 0u32..(1 << f.len()) {
                simplices.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Toy { vertices, simplices }
    }

    pub fn of(k: &SimplicialComplex) -> Toy {
        let facets: Vec<Simp> = k.facets().iter().map(|s| s.vertices().to_vec()).collect();
        Toy::from_facets(k.num_vertices(), &facets)
    }

    pub fn dim(&self) -> i32 {
        self.simplices.iter().map(|s| s.len() as i32 - 1).max().unwrap_or(-1)
    }

    pub fn of_dim(&self, d: i32) -> Vec<Simp> {
        self.simplices.iter().filter(|s| s.len() as i32 - 1 == d).cloned().collect()
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.of_dim(d).len()).collect()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        let mut s = s.to_vec();
        s.sort();
        self.simplices.contains(&s)
    }

    /// `link σ` on the original vertex labels.
    pub fn link(&self, sigma: &[u32]) -> BTreeSet<Simp> {
        self.simplices
            .iter()
            .filter(|t| t.iter().all(|v| !sigma.contains(v)))
            .filter(|t| {
                let mut u: Simp = t.iter().chain(sigma).copied().collect();
                u.sort();
                self.simplices.contains(&u)
            })
            .cloned()
            .collect()
    }

    pub fn euler(&self) -> i64 {
        self.simplices.iter().filter(|s| !s.is_empty()).map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

/// `(-1)^i` for the face missing the `i`-th vertex.
pub fn boundary(s: &[u32]) -> Vec<(Simp, i64)> {
    (0..s.len())
        .map(|i| {
            let mut f = s.to_vec();
            f.remove(i);
            (f, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Sign of `[v, s_0, ..., s_k]` relative to the ascending order.
pub fn prepend_sign(v: u32, s: &[u32]) -> i64 {
    if s.iter().filter(|&&u| u < v).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Dense boundary matrix `C_d → C_{d-1}` on lexicographically ordered simplices.
pub fn boundary_matrix(k: &Toy, d: i32, reduced: bool) -> Vec<Vec<i128>> {
    let rows = if d == 0 && !reduced { Vec::new() } else { k.of_dim(d - 1) };
    let cols = if d == -1 && !reduced { Vec::new() } else { k.of_dim(d) };
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (f, sign) in boundary(c) {
            if let Some(i) = rows.iter().position(|r| *r == f) {
                m[i][j] += sign as i128;
            }
        }
    }
    m
}

/// Invariant factors of a dense integer matrix by plain row/column elimination.
pub fn dense_invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        let pivot = (top..rows).flat_map(|i| (top..cols).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let p = m[top][top];
            let mut clean = true;
            for i in top + 1..rows {
                let q = m[i][top] / p;
                if q != 0 {
                    for j in top..cols {
                        m[i][j] -= q * m[top][j];
                    }
                }
                if m[i][top] != 0 {
                    clean = false;
                }
            }
            for j in top + 1..cols {
                let q = m[top][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(top) {
                        row[j] -= q * row[top];
                    }
                }
                if m[top][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                let bad = (top + 1..rows).flat_map(|i| (top + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in top..cols {
                            m[top][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            let (bi, bj) = (top..rows).flat_map(|i| (top..cols).map(move |j| (i, j))).filter(|&(i, j)| (i == top || j == top) && m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs()).unwrap();
            m.swap(top, bi);
            for row in m.iter_mut() {
                row.swap(top, bj);
            }
        }
        diag.push(m[top][top].abs());
        top += 1;
    }
    diag
}

pub fn group(free: usize, factors: &[i128]) -> AbelianGroupPresentation {
    let torsion: Vec<Int> = factors.iter().filter(|&&d| d > 1).map(|&d| Int::from(d as i64)).collect();
    AbelianGroupPresentation::from_cyclic(free, &torsion)
}

/// `ker a / im b` for dense integer matrices with `a·b = 0`; `n` is the middle rank.
pub fn integer_homology(a: &[Vec<i128>], b: &[Vec<i128>], n: usize) -> AbelianGroupPresentation {
    let ra = dense_invariant_factors(a.to_vec()).len();
    let fb = dense_invariant_factors(b.to_vec());
    group(n - ra - fb.len(), &fb)
}

/// Simplicial homology over `Z` by brute force, degrees `-1..=dim` (`-1` only when reduced).
pub fn simplicial_homology(k: &Toy, reduced: bool) -> BTreeMap<i32, AbelianGroupPresentation> {
    let lo = if reduced { -1 } else { 0 };
    (lo..=k.dim())
        .map(|d| {
            let n = if d == -1 { 1 } else { k.of_dim(d).len() };
            (d, integer_homology(&boundary_matrix(k, d, reduced), &boundary_matrix(k, d + 1, reduced), n))
        })
        .collect()
}

pub trait Field {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, a: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Fp(pub u64);

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        (1..self.0).find(|x| self.mul(a, x) == 1).expect("invertible")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Qf;

impl Field for Qf {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

/// Row-reduces in place and returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut [Vec<F::E>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(row, p);
        let inv = f.inv(&m[row][c]);
        for x in m[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != row && !f.is_zero(&m[i][c]) {
                let q = f.neg(&m[i][c]);
                let pivot_row = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = f.add(x, &f.mul(&q, y));
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, vectors: &[Vec<F::E>]) -> usize {
    let mut m = vectors.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : m x = 0}` for a matrix given by rows of length `cols`.
pub fn nullspace<F: Field>(f: &F, m: &[Vec<F::E>], cols: usize) -> Vec<Vec<F::E>> {
    let mut a = m.to_vec();
    let pivots = rref(f, &mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![f.zero(); cols];
            x[free] = f.from_i64(1);
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = f.neg(&a[r][free]);
            }
            x
        })
        .collect()
}

/// The pair complex spelled out from its defining formula: nested pairs `σ ⊆ τ` and the cohomeology
/// differential `dσ⊗τ + (-1)^{dim σ} σ⊗δτ` as a dense square matrix (columns are sources).
pub struct PairComplex {
    pub basis: Vec<(Simp, Simp)>,
    pub delta: Vec<Vec<i64>>,
}

impl PairComplex {
    pub fn new(k: &Toy, reduced: bool) -> PairComplex {
        let mut basis = Vec::new();
        for tau in &k.simplices {
            if !reduced && tau.is_empty() {
                continue;
            }
            for mask in 0u32..(1 << tau.len()) {
                let sigma: Simp = tau.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                if reduced || !sigma.is_empty() {
                    basis.push((sigma, tau.clone()));
                }
            }
        }
        basis.sort_by(|a, b| (a.0.len(), a.1.len(), a).cmp(&(b.0.len(), b.1.len(), b)));
        let pos = |p: &(Simp, Simp)| basis.iter().position(|q| q == p);
        let n = basis.len();
        let mut delta = vec![vec![0i64; n]; n];
        for (j, (sigma, tau)) in basis.iter().enumerate() {
            for (face, sign) in boundary(sigma) {
                if let Some(i) = pos(&(face, tau.clone())) {
                    delta[i][j] += sign;
                }
            }
            let s_sign = if (sigma.len() as i32 - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            for v in 0..k.vertices as u32 {
                if tau.contains(&v) {
                    continue;
                }
                let mut up = tau.clone();
                up.push(v);
                up.sort();
                if !k.simplices.contains(&up) {
                    continue;
                }
                if let Some(i) = pos(&(sigma.clone(), up)) {
                    delta[i][j] += s_sign * prepend_sign(v, tau);
                }
            }
        }
        PairComplex { basis, delta }
    }

    pub fn bidegree(&self, i: usize) -> (i32, i32) {
        let (s, t) = &self.basis[i];
        (s.len() as i32 - 1, t.len() as i32 - 1)
    }

    pub fn bidegrees(&self) -> BTreeSet<(i32, i32)> {
        (0..self.basis.len()).map(|i| self.bidegree(i)).collect()
    }

    /// `dim E^{s,t}` of page `r` over `f`, straight from the filtration:
    /// `E_k^p = Z_k^p / (Z_{k-1}^{p-1} + d Z_{k-1}^{p+k-1})` with `Z_k^p = {x ∈ F_p : dx ∈ F_{p-k}}`
    /// and classical `k = r + 1`.
    pub fn page_dims<F: Field>(&self, f: &F, variant: Variant, r: usize) -> BTreeMap<(i32, i32), usize> {
        let n = self.basis.len();
        let d: Vec<Vec<F::E>> = match variant {
            Variant::Cohomeology => self.delta.iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect(),
            Variant::Homeology => (0..n).map(|i| (0..n).map(|j| f.from_i64(self.delta[j][i])).collect()).collect(),
        };
        let filt = |i: usize| match variant {
            Variant::Cohomeology => self.bidegree(i).0,
            Variant::Homeology => -self.bidegree(i).0,
        };
        let total = |i: usize| {
            let (s, t) = self.bidegree(i);
            t - s
        };
        // cycles Z_k^{p} in total degree e
        let cycles = |k: i32, p: i32, e: i32| -> Vec<Vec<F::E>> {
            let cols: Vec<usize> = (0..n).filter(|&i| filt(i) <= p && total(i) == e).collect();
            let rows: Vec<usize> = (0..n).filter(|&i| filt(i) > p - k).collect();
            let m: Vec<Vec<F::E>> = rows.iter().map(|&ri| cols.iter().map(|&c| d[ri][c].clone()).collect()).collect();
            let m = if m.is_empty() { vec![vec![f.zero(); cols.len()]] } else { m };
            nullspace(f, &m, cols.len())
                .into_iter()
                .map(|x| {
                    let mut full = vec![f.zero(); n];
                    for (c, v) in cols.iter().zip(x) {
                        full[*c] = v;
                    }
                    full
                })
                .collect()
        };
        let apply = |x: &Vec<F::E>| -> Vec<F::E> {
            (0..n).map(|i| (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&d[i][j], &x[j])))).collect()
        };
        let step = match variant {
            Variant::Cohomeology => 1,
            Variant::Homeology => -1,
        };
        let k = r as i32 + 1;
        let mut out = BTreeMap::new();
        for (s, t) in self.bidegrees() {
            let (p, e) = (match variant { Variant::Cohomeology => s, Variant::Homeology => -s }, t - s);
            let z = cycles(k, p, e);
            let mut denom = cycles(k - 1, p - 1, e);
            denom.extend(cycles(k - 1, p + k - 1, e - step).iter().map(apply));
            let dim = rank(f, &z) - rank(f, &denom);
            if dim > 0 {
                out.insert((s, t), dim);
            }
        }
        out
    }
}

pub fn to_i128(m: &homeolab::exact_algebra::IntMatrix) -> Vec<Vec<i128>> {
    m.to_dense().iter().map(|r| r.iter().map(|x| x.to_i64().expect("small entry") as i128).collect()).collect()
}

pub fn from_i128(rows: usize, cols: usize, m: &[Vec<i128>]) -> homeolab::exact_algebra::IntMatrix {
    let trip = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] != 0).map(|(i, j)| (i, j, Int::from(m[i][j] as i64)));
    homeolab::exact_algebra::IntMatrix::from_triplets(rows, cols, trip)
}

pub fn dense_mul(a: &[Vec<i128>], b: &[Vec<i128>], inner: usize, cols: usize) -> Vec<Vec<i128>> {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

pub fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != BigRational::from_integer(0.into())) else {
            return BigRational::from_integer(0.into());
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for i in c + 1..n {
            let q = &a[i][c] / &a[c][c];
            for j in c..n {
                let x = &q * &a[c][j];
                a[i][j] -= x;
            }
        }
    }
    d
}

fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense().iter().map(|r| r.iter().map(Int::to_big).collect()).collect()
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

/// Re-multiplies `U·M·V` in plain dense bignum arithmetic and checks every structural claim of the decomposition.
pub fn smith_holds(a: &IntMatrix) -> bool {
    let dec = smith_normal_form(a);
    let (r, c) = (a.rows(), a.cols());
    let (u, mm, v, s) = (to_big(&dec.u), to_big(a), to_big(&dec.v), to_big(&dec.s));
    if big_mul(&big_mul(&u, &mm, r, c), &v, c, c) != s {
        return false;
    }
    let diagonal = s.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
    let diag: Vec<BigInt> = (0..r.min(c)).map(|i| s[i][i].clone()).collect();
    let nz = diag.iter().take_while(|d| !d.is_zero()).count();
    let one = BigRational::one();
    let unit = |m: &[Vec<BigInt>]| {
        let d = det(m.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect());
        &d * &d == one
    };
    let factors: Vec<BigInt> = dense_invariant_factors(to_i128(a)).into_iter().map(BigInt::from).collect();
    diagonal
        && diag[nz..].iter().all(Zero::is_zero)
        && diag[..nz].iter().all(|d| *d > BigInt::zero())
        && diag[..nz].windows(2).all(|w| (&w[1] % &w[0]).is_zero())
        && unit(&u)
        && unit(&v)
        && diag[..nz].to_vec() == factors
}

/// Row-echelon basis of the row lattice by gcd elimination.
pub fn lattice_basis(mut rows: Vec<Vec<i128>>, n: usize) -> Vec<Vec<i128>> {
    let mut basis = Vec::new();
    for c in 0..n {
        loop {
            let live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            let p = *live.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &live {
                if i != p {
                    let q = rows[i][c] / rows[p][c];
                    let pr = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][c] != 0) {
            basis.push(rows.remove(i));
        }
    }
    basis
}

/// `A/B` from a lattice basis of `A`, the coordinates of `B` in it, and their invariant factors.
pub fn dense_subquotient(a: &[Vec<i128>], b: &[Vec<i128>], n: usize) -> AbelianGroupPresentation {
    let basis = lattice_basis(a.to_vec(), n);
    let pivots: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| *x != 0).unwrap()).collect();
    let coords: Vec<Vec<i128>> = b
        .iter()
        .map(|v| {
            let mut v = v.clone();
            let mut c = vec![0i128; basis.len()];
            for (i, (row, &p)) in basis.iter().zip(&pivots).enumerate() {
                assert_eq!(v[p] % row[p], 0, "B is not inside A");
                c[i] = v[p] / row[p];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= c[i] * y;
                }
            }
            assert!(v.iter().all(|x| *x == 0));
            c
        })
        .collect();
    let f = if coords.is_empty() { Vec::new() } else { dense_invariant_factors(coords) };
    group(basis.len() - f.len(), &f)
}

pub fn columns_to_matrix(n: usize, cols: &[Vec<i128>]) -> IntMatrix {
    let dense: Vec<Vec<i128>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    from_i128(n, cols.len(), &dense)
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let n = rng.gen_range(1..=8);
    let ka = rng.gen_range(0..=n + 1);
    let a: Vec<Vec<i128>> = (0..ka).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let kb = rng.gen_range(0..=ka + 1);
    let b: Vec<Vec<i128>> = (0..kb)
        .map(|_| {
            let c: Vec<i128> = (0..ka).map(|_| rng.gen_range(-2..=2)).collect();
            (0..n).map(|j| (0..ka).map(|i| c[i] * a[i][j]).sum()).collect()
        })
        .collect();
    (n, a, b)
}
