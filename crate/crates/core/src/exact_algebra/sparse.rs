use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::ring::{Integers, Ring};

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SVec<E> = Vec<(usize, E)>;

/// `a + c*b`, merged in index order.
pub fn axpy<R: Ring>(ring: &R, a: &[(usize, R::Elem)], c: &R::Elem, b: &[(usize, R::Elem)]) -> SVec<R::Elem> {
    if ring.is_zero(c) {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = ring.mul(c, &b[j].1);
            if !ring.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = ring.axpy(&a[i].1, c, &b[j].1);
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `x*a + y*b`
pub fn lincomb<R: Ring>(
    ring: &R,
    x: &R::Elem,
    a: &[(usize, R::Elem)],
    y: &R::Elem,
    b: &[(usize, R::Elem)],
) -> SVec<R::Elem> {
    let xa = scale(ring, x, a);
    axpy(ring, &xa, y, b)
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &[(usize, R::Elem)]) -> SVec<R::Elem> {
    if ring.is_zero(c) {
        return Vec::new();
    }
    a.iter()
        .filter_map(|(i, v)| {
            let w = ring.mul(c, v);
            (!ring.is_zero(&w)).then_some((*i, w))
        })
        .collect()
}

pub fn neg<R: Ring>(ring: &R, a: &[(usize, R::Elem)]) -> SVec<R::Elem> {
    a.iter().map(|(i, v)| (*i, ring.neg(v))).collect()
}

pub fn get<'a, E>(a: &'a [(usize, E)], i: usize) -> Option<&'a E> {
    a.binary_search_by_key(&i, |e| e.0).ok().map(|k| &a[k].1)
}

/// Builds a sparse vector from unsorted, possibly repeated entries.
pub fn collect<R: Ring>(ring: &R, entries: impl IntoIterator<Item = (usize, R::Elem)>) -> SVec<R::Elem> {
    let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
    for (i, v) in entries {
        let slot = acc.entry(i).or_insert_with(|| ring.zero());
        *slot = ring.add(slot, &v);
    }
    acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
}

pub fn from_dense<R: Ring>(ring: &R, v: &[R::Elem]) -> SVec<R::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !ring.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<R: Ring>(ring: &R, a: &[(usize, R::Elem)], len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); len];
    for (i, v) in a {
        out[*i] = v.clone();
    }
    out
}

/// Keeps entries with index in `lo..hi`, shifted down by `lo`.
pub fn window<E: Clone>(a: &[(usize, E)], lo: usize, hi: usize) -> SVec<E> {
    let start = a.partition_point(|e| e.0 < lo);
    a[start..]
        .iter()
        .take_while(|e| e.0 < hi)
        .map(|(i, v)| (i - lo, v.clone()))
        .collect()
}

pub fn shift<E: Clone>(a: &[(usize, E)], by: usize) -> SVec<E> {
    a.iter().map(|(i, v)| (i + by, v.clone())).collect()
}

pub fn convert<R: Ring, S: Ring>(from: &R, to: &S, a: &[(usize, R::Elem)]) -> SVec<S::Elem> {
    a.iter()
        .filter_map(|(i, v)| {
            let w = to.from_int(&from.to_int(v));
            (!to.is_zero(&w)).then_some((*i, w))
        })
        .collect()
}

/// Column-major sparse matrix over an arbitrary ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<SVec<E>>,
}

pub type IntMatrix = SparseMatrix<Int>;

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Columns must be sorted, in range, and free of zeros.
    pub fn from_columns(rows: usize, columns: Vec<SVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().all(|c| c.last().map_or(true, |e| e.0 < rows)));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[(usize, E)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SVec<E>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SVec<E>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        get(&self.columns[j], i)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SVec<E>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }

    /// Selects columns and rows (by original index); rows are renumbered in the order given.
    pub fn select(&self, row_sel: &[usize], col_sel: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.rows];
        for (k, &r) in row_sel.iter().enumerate() {
            map[r] = k;
        }
        let columns = col_sel
            .iter()
            .map(|&j| {
                let mut c: SVec<E> = self.columns[j]
                    .iter()
                    .filter(|(i, _)| map[*i] != usize::MAX)
                    .map(|(i, v)| (map[*i], v.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        SparseMatrix { rows: row_sel.len(), cols: col_sel.len(), columns }
    }

    /// Contiguous block `rows lo_r..hi_r`, `cols lo_c..hi_c`.
    pub fn block(&self, lo_r: usize, hi_r: usize, lo_c: usize, hi_c: usize) -> Self {
        let columns = self.columns[lo_c..hi_c].iter().map(|c| window(c, lo_r, hi_r)).collect();
        SparseMatrix { rows: hi_r - lo_r, cols: hi_c - lo_c, columns }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn to_dense_with(&self, zero: E) -> Vec<Vec<E>> {
        let mut out = vec![vec![zero; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> SparseMatrix<R::Elem> {
    SparseMatrix::from_columns(n, (0..n).map(|i| vec![(i, ring.one())]).collect())
}

pub fn from_dense_matrix<R: Ring>(ring: &R, rows: usize, cols: usize, m: &[Vec<R::Elem>]) -> SparseMatrix<R::Elem> {
    let columns = (0..cols)
        .map(|j| (0..rows).filter(|&i| !ring.is_zero(&m[i][j])).map(|i| (i, m[i][j].clone())).collect())
        .collect();
    SparseMatrix::from_columns(rows, columns)
}

pub fn mat_vec<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>, v: &[(usize, R::Elem)]) -> SVec<R::Elem> {
    let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
    for (j, x) in v {
        for (i, a) in m.col(*j) {
            let slot = acc.entry(*i).or_insert_with(|| ring.zero());
            *slot = ring.axpy(slot, x, a);
        }
    }
    acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
}

pub fn mat_mul<R: Ring>(ring: &R, a: &SparseMatrix<R::Elem>, b: &SparseMatrix<R::Elem>) -> SparseMatrix<R::Elem> {
    assert_eq!(a.cols(), b.rows(), "dimension mismatch in product");
    let columns = b.columns().iter().map(|c| mat_vec(ring, a, c)).collect();
    SparseMatrix::from_columns(a.rows(), columns)
}

pub fn mat_add<R: Ring>(ring: &R, a: &SparseMatrix<R::Elem>, b: &SparseMatrix<R::Elem>) -> SparseMatrix<R::Elem> {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let columns = a
        .columns()
        .iter()
        .zip(b.columns())
        .map(|(x, y)| axpy(ring, x, &ring.one(), y))
        .collect();
    SparseMatrix::from_columns(a.rows(), columns)
}

pub fn mat_convert<R: Ring, S: Ring>(from: &R, to: &S, m: &SparseMatrix<R::Elem>) -> SparseMatrix<S::Elem> {
    SparseMatrix::from_columns(m.rows(), m.columns().iter().map(|c| convert(from, to, c)).collect())
}

impl IntMatrix {
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Int)>) -> Self {
        let mut per_col: Vec<Vec<(usize, Int)>> = vec![Vec::new(); cols];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) out of range");
            per_col[j].push((i, v));
        }
        let columns = per_col.into_iter().map(|c| collect(&Integers, c)).collect();
        SparseMatrix::from_columns(rows, columns)
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, Int::from(v)))),
        )
    }

    pub fn identity(n: usize) -> Self {
        identity(&Integers, n)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        mat_mul(&Integers, self, other)
    }

    pub fn mul_vec(&self, v: &[(usize, Int)]) -> SVec<Int> {
        mat_vec(&Integers, self, v)
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        mat_add(&Integers, self, other)
    }

    pub fn neg(&self) -> IntMatrix {
        SparseMatrix::from_columns(self.rows, self.columns.iter().map(|c| neg(&Integers, c)).collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        self.to_dense_with(Int::ZERO)
    }

    pub fn entry(&self, i: usize, j: usize) -> Int {
        self.get(i, j).cloned().unwrap_or(Int::ZERO)
    }
}

#[derive(Serialize, Deserialize)]
struct TripletForm {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TripletForm {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(i, j, v)| (i, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TripletForm::deserialize(d)?;
        if t.entries.iter().any(|(i, j, _)| *i >= t.rows || *j >= t.cols) {
            return Err(serde::de::Error::custom("matrix entry out of range"));
        }
        Ok(IntMatrix::from_triplets(t.rows, t.cols, t.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let z = Integers;
        let a = vec![(0, Int::from(1i64)), (3, Int::from(2i64))];
        let b = vec![(3, Int::from(1i64)), (5, Int::from(1i64))];
        let r = axpy(&z, &a, &Int::from(-2i64), &b);
        assert_eq!(r, vec![(0, Int::from(1i64)), (5, Int::from(-2i64))]);
    }

    #[test]
    fn transpose_and_product() {
        let m = IntMatrix::from_rows_i64(&[vec![1, 2], vec![0, 3]]);
        let t = m.transpose();
        assert_eq!(t.to_dense(), IntMatrix::from_rows_i64(&[vec![1, 0], vec![2, 3]]).to_dense());
        let p = m.mul(&t);
        assert_eq!(p.to_dense(), IntMatrix::from_rows_i64(&[vec![5, 6], vec![6, 9]]).to_dense());
    }

    #[test]
    fn json_triplets_roundtrip() {
        let m = IntMatrix::from_rows_i64(&[vec![0, -1, 0], vec![4, 0, 0]]);
        let s = serde_json::to_string(&m).unwrap();
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
