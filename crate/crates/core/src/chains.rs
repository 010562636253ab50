//! Simplicial chain and cochain complexes: plain, reduced and relative.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::exact_algebra::{
    homology_of_pair, mat_convert, presented_kernel, AbelianGroupPresentation, Coefficients, Echelon, Int, IntMatrix,
    Integers, PrimeField, Rationals, Ring, SVec, SparseMatrix, Subquotient,
};
use crate::{Error, Result};

/// Basis label of a chain group: a canonical simplex or a block of a block complex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cell {
    Simplex(Simplex),
    Block(usize),
}

impl Cell {
    pub fn simplex(&self) -> Option<&Simplex> {
        match self {
            Cell::Simplex(s) => Some(s),
            Cell::Block(_) => None,
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Simplex(s) => write!(f, "{s:?}"),
            Cell::Block(b) => write!(f, "b{b}"),
        }
    }
}

pub type GradedBasis = BTreeMap<i32, Vec<Cell>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `d` lowers degree.
    Homological,
    /// `δ` raises degree.
    Cohomological,
}

#[derive(Clone, Debug)]
pub struct ChainComplexRep {
    pub basis: GradedBasis,
    /// Keyed by source degree.
    pub differentials: BTreeMap<i32, IntMatrix>,
    pub direction: Direction,
    pub reduced: bool,
    /// For relative complexes: the basis of each degree as columns in the ambient complex's basis.
    pub inclusion: Option<BTreeMap<i32, IntMatrix>>,
}

impl ChainComplexRep {
    pub fn rank(&self, k: i32) -> usize {
        self.basis.get(&k).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    fn target(&self, k: i32) -> i32 {
        match self.direction {
            Direction::Homological => k - 1,
            Direction::Cohomological => k + 1,
        }
    }

    /// Differential out of degree `k` (zero matrix if absent).
    pub fn diff(&self, k: i32) -> IntMatrix {
        self.differentials
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(self.target(k)), self.rank(k)))
    }

    /// Differential into degree `k`.
    pub fn diff_into(&self, k: i32) -> IntMatrix {
        let src = match self.direction {
            Direction::Homological => k + 1,
            Direction::Cohomological => k - 1,
        };
        self.diff(src)
    }

    pub fn index_map(&self, k: i32) -> HashMap<Cell, usize> {
        self.basis.get(&k).map_or_else(HashMap::new, |b| b.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
    }

    /// The dual complex: same basis, transposed differentials, opposite direction.
    pub fn dual(&self) -> ChainComplexRep {
        let mut differentials = BTreeMap::new();
        for (&k, m) in &self.differentials {
            differentials.insert(self.target(k), m.transpose());
        }
        let direction = match self.direction {
            Direction::Homological => Direction::Cohomological,
            Direction::Cohomological => Direction::Homological,
        };
        ChainComplexRep { basis: self.basis.clone(), differentials, direction, reduced: self.reduced, inclusion: None }
    }

    /// True when consecutive differentials compose to zero.
    pub fn is_complex(&self) -> bool {
        self.degrees().all(|k| {
            let t = self.target(k);
            self.diff(t).mul(&self.diff(k)).is_zero()
        })
    }

    /// Build from a basis and a boundary function returning `(face, coefficient)` pairs.
    pub fn from_boundary(
        basis: GradedBasis,
        reduced: bool,
        boundary: impl Fn(&Cell) -> Vec<(Cell, i64)>,
    ) -> ChainComplexRep {
        let mut differentials = BTreeMap::new();
        for (&k, cells) in &basis {
            let Some(lower) = basis.get(&(k - 1)) else { continue };
            let lower_idx: HashMap<&Cell, usize> = lower.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let cols = cells.iter().enumerate().flat_map(|(j, c)| {
                boundary(c)
                    .into_iter()
                    .filter_map(|(f, v)| lower_idx.get(&f).map(|&i| (i, j, Int::from(v))))
                    .collect::<Vec<_>>()
            });
            differentials.insert(k, IntMatrix::from_triplets(lower.len(), cells.len(), cols));
        }
        ChainComplexRep { basis, differentials, direction: Direction::Homological, reduced, inclusion: None }
    }
}

fn simplicial_basis(k: &SimplicialComplex, reduced: bool) -> GradedBasis {
    let lo = if reduced { -1 } else { 0 };
    let mut basis = GradedBasis::new();
    for d in lo..=k.dim().max(lo) {
        basis.insert(d, k.simplices(d).iter().cloned().map(Cell::Simplex).collect());
    }
    basis
}

pub fn simplex_boundary(s: &Simplex) -> Vec<(Cell, i64)> {
    s.facets().map(|(i, f)| (Cell::Simplex(f), if i % 2 == 0 { 1 } else { -1 })).collect()
}

pub fn chain_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplexRep {
    ChainComplexRep::from_boundary(simplicial_basis(k, reduced), reduced, |c| match c {
        Cell::Simplex(s) => simplex_boundary(s),
        Cell::Block(_) => Vec::new(),
    })
}

/// `δ[v_0..v_k] = Σ_v [v, v_0, ..., v_k]`, normalized to canonical simplices.
pub fn cochain_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplexRep {
    let basis = simplicial_basis(k, reduced);
    let mut differentials = BTreeMap::new();
    for (&d, cells) in &basis {
        let Some(upper) = basis.get(&(d + 1)) else { continue };
        let idx: HashMap<&Cell, usize> = upper.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut trip = Vec::new();
        for (j, c) in cells.iter().enumerate() {
            let s = c.simplex().expect("simplicial basis");
            for v in k.cofaces_vertices(s) {
                let mut seq = vec![v];
                seq.extend_from_slice(s.vertices());
                let (sign, t) = crate::complex::orient(&seq).expect("distinct vertices");
                if let Some(&i) = idx.get(&Cell::Simplex(t)) {
                    trip.push((i, j, Int::from(sign as i64)));
                }
            }
        }
        differentials.insert(d, IntMatrix::from_triplets(upper.len(), cells.len(), trip));
    }
    ChainComplexRep { basis, differentials, direction: Direction::Cohomological, reduced, inclusion: None }
}

/// `C_*(K, L)`: quotient for chains, restriction for cochains, on the simplices of `K` not in `L`.
pub fn relative_complex(k: &SimplicialComplex, l: &SimplicialComplex, direction: Direction) -> Result<ChainComplexRep> {
    let in_l = k.embed(l)?;
    let full = match direction {
        Direction::Homological => chain_complex(k, false),
        Direction::Cohomological => cochain_complex(k, false),
    };
    Ok(restrict_to_complement(&full, &in_l))
}

/// Keeps basis cells outside `removed`, with differentials restricted to them.
pub fn restrict_to_complement(full: &ChainComplexRep, removed: &HashSet<Simplex>) -> ChainComplexRep {
    let mut basis = GradedBasis::new();
    let mut keep: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let mut inclusion = BTreeMap::new();
    for (&d, cells) in &full.basis {
        let idx: Vec<usize> =
            (0..cells.len()).filter(|&i| cells[i].simplex().map_or(true, |s| !removed.contains(s))).collect();
        basis.insert(d, idx.iter().map(|&i| cells[i].clone()).collect());
        inclusion.insert(
            d,
            IntMatrix::from_triplets(cells.len(), idx.len(), idx.iter().enumerate().map(|(j, &i)| (i, j, Int::ONE))),
        );
        keep.insert(d, idx);
    }
    let mut differentials = BTreeMap::new();
    for (&d, m) in &full.differentials {
        let t = full.target(d);
        let (Some(rows), Some(cols)) = (keep.get(&t), keep.get(&d)) else { continue };
        differentials.insert(d, m.select(rows, cols));
    }
    ChainComplexRep { basis, differentials, direction: full.direction, reduced: full.reduced, inclusion: Some(inclusion) }
}

/// (Co)homology in every degree of the basis.
pub fn homology(c: &ChainComplexRep, coeff: Coefficients) -> Result<BTreeMap<i32, AbelianGroupPresentation>> {
    let mut out = BTreeMap::new();
    for k in c.degrees() {
        out.insert(k, homology_of_pair(&c.diff(k), &c.diff_into(k), coeff)?);
    }
    Ok(out)
}

/// Per-degree homology with explicit generators over a ring.
pub(crate) fn homology_quotient<R: Ring>(ring: &R, c: &ChainComplexRep, k: i32) -> Result<Subquotient<R>> {
    let out = mat_convert(&Integers, ring, &c.diff(k));
    let inc = mat_convert(&Integers, ring, &c.diff_into(k));
    let ker = Echelon::of_columns(ring.clone(), out.rows(), out.columns()).into_kernel();
    Subquotient::new(ring.clone(), c.rank(k), &ker, inc.columns())
}

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub group: AbelianGroupPresentation,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub coeff: Coefficients,
    pub nodes: Vec<LesNode>,
    pub exact: bool,
}

/// Checks exactness of `… → H_n(L) → H_n(K) → H_n(K,L) → H_{n-1}(L) → …` with explicit maps.
pub fn les_check(k: &SimplicialComplex, l: &SimplicialComplex, coeff: Coefficients) -> Result<LesReport> {
    match coeff {
        Coefficients::Z => les_generic(&Integers, k, l, coeff),
        Coefficients::Q => les_generic(&Rationals, k, l, coeff),
        Coefficients::Zp(p) => les_generic(&PrimeField::new(p), k, l, coeff),
    }
}

fn les_generic<R: Ring>(ring: &R, k: &SimplicialComplex, l: &SimplicialComplex, coeff: Coefficients) -> Result<LesReport> {
    let in_l = k.embed(l)?;
    let ck = chain_complex(k, false);
    let rel = restrict_to_complement(&ck, &in_l);
    let inc = rel.inclusion.clone().expect("relative complex keeps its inclusion");
    // L inside K's indexing: the complement of the relative basis
    let l_kept: HashSet<Simplex> = ck.all_simplex_cells().filter(|s| !in_l.contains(s)).collect();
    let cl = restrict_to_complement(&ck, &l_kept);
    let l_inc = cl.inclusion.clone().expect("kept");

    let top = k.dim().max(0);
    let mut hk = BTreeMap::new();
    let mut hl = BTreeMap::new();
    let mut hr = BTreeMap::new();
    for n in 0..=top {
        hk.insert(n, homology_quotient(ring, &ck, n)?);
        hl.insert(n, homology_quotient(ring, &cl, n)?);
        hr.insert(n, homology_quotient(ring, &rel, n)?);
    }
    let conv = |m: &IntMatrix| mat_convert(&Integers, ring, m);
    let apply = |m: &SparseMatrix<R::Elem>, v: &SVec<R::Elem>| crate::exact_algebra::mat_vec(ring, m, v);

    struct Node<R: Ring> {
        label: String,
        orders: Vec<R::Elem>,
        group: AbelianGroupPresentation,
    }
    let mut nodes: Vec<Node<R>> = Vec::new();
    let mut maps: Vec<SparseMatrix<R::Elem>> = Vec::new();
    let coords_matrix = |q: &Subquotient<R>, images: Vec<SVec<R::Elem>>| -> Result<SparseMatrix<R::Elem>> {
        let mut cols = Vec::with_capacity(images.len());
        for v in images {
            let c = q.coords(&v).ok_or(Error::NotAComplex)?;
            cols.push(crate::exact_algebra::from_dense(ring, &c));
        }
        Ok(SparseMatrix::from_columns(q.ngens(), cols))
    };

    for n in (0..=top).rev() {
        let (ql, qk, qr) = (&hl[&n], &hk[&n], &hr[&n]);
        let push = |nodes: &mut Vec<Node<R>>, label: String, q: &Subquotient<R>| {
            nodes.push(Node { label, orders: q.orders().to_vec(), group: q.group() });
        };
        push(&mut nodes, format!("H_{n}(L)"), ql);
        push(&mut nodes, format!("H_{n}(K)"), qk);
        push(&mut nodes, format!("H_{n}(K,L)"), qr);
        let i_star = coords_matrix(qk, ql.generators().iter().map(|g| apply(&conv(&l_inc[&n]), g)).collect())?;
        let proj = conv(&inc[&n]).transpose();
        let j_star = coords_matrix(qr, qk.generators().iter().map(|g| apply(&proj, g)).collect())?;
        maps.push(i_star);
        maps.push(j_star);
        if n > 0 {
            let lift = conv(&inc[&n]);
            let d = conv(&ck.diff(n));
            let to_l = conv(&l_inc[&(n - 1)]).transpose();
            let bd = coords_matrix(
                &hl[&(n - 1)],
                qr.generators().iter().map(|g| apply(&to_l, &apply(&d, &apply(&lift, g)))).collect(),
            )?;
            maps.push(bd);
        }
    }

    let mut report = Vec::with_capacity(nodes.len());
    let mut all = true;
    for (i, node) in nodes.iter().enumerate() {
        let nb = node.orders.len();
        let incoming = if i == 0 { SparseMatrix::zeros(nb, 0) } else { maps[i - 1].clone() };
        let (outgoing, out_orders) = if i + 1 < nodes.len() {
            (maps[i].clone(), nodes[i + 1].orders.clone())
        } else {
            (SparseMatrix::zeros(0, nb), Vec::new())
        };
        let rel_b: Vec<SVec<R::Elem>> = node
            .orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !ring.is_zero(d))
            .map(|(j, d)| vec![(j, d.clone())])
            .collect();
        let mut ker = presented_kernel(ring, &outgoing, &out_orders);
        ker.extend(rel_b.iter().cloned());
        let mut img: Vec<SVec<R::Elem>> = incoming.columns().to_vec();
        img.extend(rel_b);
        let ek = Echelon::of_columns(ring.clone(), nb, &ker);
        let ei = Echelon::of_columns(ring.clone(), nb, &img);
        let exact = img.iter().all(|v| ek.contains(v)) && ker.iter().all(|v| ei.contains(v));
        all &= exact;
        report.push(LesNode { label: node.label.clone(), group: node.group.clone(), exact });
    }
    Ok(LesReport { coeff, nodes: report, exact: all })
}

impl ChainComplexRep {
    fn all_simplex_cells(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.basis.values().flatten().filter_map(|c| c.simplex().cloned())
    }
}
