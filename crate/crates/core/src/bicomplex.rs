//! Double complexes of nested simplex pairs.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::chains::{chain_complex, cochain_complex, Cell, ChainComplexRep};
use crate::complex::{orient, Simplex, SimplicialComplex};
use crate::exact_algebra::{Int, IntMatrix};
use crate::{Error, Result};

pub type Bidegree = (i32, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// Differential `Δ`, lowering `s` or raising `t`.
    Cohomeology,
    /// Differential `D = Δᵀ`, raising `s` or lowering `t`.
    Homeology,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairBasisElement {
    pub sigma: Cell,
    pub tau: Cell,
    pub bidegree: Bidegree,
}

#[derive(Clone, Debug)]
pub struct BicomplexRep {
    pub basis: BTreeMap<Bidegree, Vec<PairBasisElement>>,
    /// Horizontal part keyed by source bidegree.
    pub d_h: BTreeMap<Bidegree, IntMatrix>,
    /// Vertical part keyed by source bidegree.
    pub d_v: BTreeMap<Bidegree, IntMatrix>,
    pub variant: Variant,
    pub reduced: bool,
}

impl BicomplexRep {
    pub fn rank(&self, b: Bidegree) -> usize {
        self.basis.get(&b).map_or(0, Vec::len)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.basis.keys().copied()
    }

    pub fn h_target(&self, (s, t): Bidegree) -> Bidegree {
        match self.variant {
            Variant::Cohomeology => (s - 1, t),
            Variant::Homeology => (s + 1, t),
        }
    }

    pub fn v_target(&self, (s, t): Bidegree) -> Bidegree {
        match self.variant {
            Variant::Cohomeology => (s, t + 1),
            Variant::Homeology => (s, t - 1),
        }
    }

    pub fn h(&self, b: Bidegree) -> IntMatrix {
        self.d_h.get(&b).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(self.h_target(b)), self.rank(b)))
    }

    pub fn v(&self, b: Bidegree) -> IntMatrix {
        self.d_v.get(&b).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(self.v_target(b)), self.rank(b)))
    }

    pub fn index_of(&self, p: &PairBasisElement) -> Option<usize> {
        self.basis.get(&p.bidegree)?.iter().position(|q| q == p)
    }

    /// Total degree `t - s`.
    pub fn total_degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.bidegrees().map(|(s, t)| t - s).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Bidegrees of total degree `n` in ascending `s`, with their offsets in the total basis.
    pub fn total_layout(&self, n: i32) -> Vec<(Bidegree, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for b in self.bidegrees().filter(|&(s, t)| t - s == n) {
            out.push((b, off));
            off += self.rank(b);
        }
        out
    }

    pub fn total_rank(&self, n: i32) -> usize {
        self.bidegrees().filter(|&(s, t)| t - s == n).map(|b| self.rank(b)).sum()
    }

    pub fn total_target(&self, n: i32) -> i32 {
        match self.variant {
            Variant::Cohomeology => n + 1,
            Variant::Homeology => n - 1,
        }
    }

    /// The total differential out of total degree `n`, in the layouts of `total_layout`.
    pub fn total_differential(&self, n: i32) -> IntMatrix {
        let target = self.total_target(n);
        let offsets: HashMap<Bidegree, usize> = self.total_layout(target).into_iter().collect();
        let mut trip = Vec::new();
        for (b, off) in self.total_layout(n) {
            for (m, tb) in [(self.h(b), self.h_target(b)), (self.v(b), self.v_target(b))] {
                let Some(&toff) = offsets.get(&tb) else { continue };
                trip.extend(m.triplets().map(|(i, j, v)| (toff + i, off + j, v.clone())));
            }
        }
        IntMatrix::from_triplets(self.total_rank(target), self.total_rank(n), trip)
    }

    /// The total differential on the whole group, basis ordered by bidegree.
    pub fn full_matrix(&self) -> IntMatrix {
        let offsets: BTreeMap<Bidegree, usize> = self
            .bidegrees()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += self.rank(b);
                Some((b, o))
            })
            .collect();
        let n: usize = self.basis.values().map(Vec::len).sum();
        let mut trip = Vec::new();
        for (&b, &off) in &offsets {
            for (m, tb) in [(self.h(b), self.h_target(b)), (self.v(b), self.v_target(b))] {
                let Some(&toff) = offsets.get(&tb) else { continue };
                trip.extend(m.triplets().map(|(i, j, v)| (toff + i, off + j, v.clone())));
            }
        }
        IntMatrix::from_triplets(n, n, trip)
    }

    /// `d_h² = 0`, `d_v² = 0` and `d_h d_v + d_v d_h = 0`.
    pub fn check_axioms(&self) -> bool {
        self.bidegrees().all(|b| {
            let (hb, vb) = (self.h_target(b), self.v_target(b));
            let hh = self.h(hb).mul(&self.h(b));
            let vv = self.v(vb).mul(&self.v(b));
            let anti = self.v(hb).mul(&self.h(b)).add(&self.h(vb).mul(&self.v(b)));
            hh.is_zero() && vv.is_zero() && anti.is_zero()
        })
    }

    /// Same pairs with the other differential (`D = Δᵀ` and back).
    pub fn dual(&self) -> BicomplexRep {
        let variant = match self.variant {
            Variant::Cohomeology => Variant::Homeology,
            Variant::Homeology => Variant::Cohomeology,
        };
        let mut d_h = BTreeMap::new();
        let mut d_v = BTreeMap::new();
        for (&b, m) in &self.d_h {
            d_h.insert(self.h_target(b), m.transpose());
        }
        for (&b, m) in &self.d_v {
            d_v.insert(self.v_target(b), m.transpose());
        }
        BicomplexRep { basis: self.basis.clone(), d_h, d_v, variant, reduced: self.reduced }
    }

    pub fn summary(&self) -> BicomplexSummary {
        BicomplexSummary {
            variant: self.variant,
            reduced: self.reduced,
            ranks: self.basis.iter().map(|(&(s, t), v)| (format!("{s},{t}"), v.len())).collect(),
            d_h: self.d_h.iter().filter(|(_, m)| !m.is_zero()).map(|(&(s, t), m)| (format!("{s},{t}"), m.clone())).collect(),
            d_v: self.d_v.iter().filter(|(_, m)| !m.is_zero()).map(|(&(s, t), m)| (format!("{s},{t}"), m.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BicomplexSummary {
    pub variant: Variant,
    pub reduced: bool,
    pub ranks: BTreeMap<String, usize>,
    pub d_h: BTreeMap<String, IntMatrix>,
    pub d_v: BTreeMap<String, IntMatrix>,
}

/// Assembles `Δ(σ⊗τ) = dσ⊗τ + (-1)^s σ⊗δτ` on the pairs `σ ∈ faces(τ)` accepted by `keep`.
///
/// `left` is the homological complex supplying `d`, `right` the cohomological one supplying `δ`.
pub fn assemble(
    left: &ChainComplexRep,
    right: &ChainComplexRep,
    faces: impl Fn(&Cell) -> Vec<Cell>,
    keep: impl Fn(&Cell, &Cell) -> bool,
    variant: Variant,
    reduced: bool,
) -> BicomplexRep {
    let mut deg_left: HashMap<&Cell, (i32, usize)> = HashMap::new();
    for (&s, cells) in &left.basis {
        for (i, c) in cells.iter().enumerate() {
            deg_left.insert(c, (s, i));
        }
    }
    let mut basis: BTreeMap<Bidegree, Vec<PairBasisElement>> = BTreeMap::new();
    for (&t, cells) in &right.basis {
        for tau in cells {
            for sigma in faces(tau) {
                let Some(&(s, _)) = deg_left.get(&sigma) else { continue };
                if keep(&sigma, tau) {
                    basis.entry((s, t)).or_default().push(PairBasisElement { sigma, tau: tau.clone(), bidegree: (s, t) });
                }
            }
        }
    }
    for v in basis.values_mut() {
        v.sort();
    }
    let index: HashMap<(&Cell, &Cell), usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(i, p)| ((&p.sigma, &p.tau), i))).collect();
    let right_idx: HashMap<&Cell, usize> =
        right.basis.values().flat_map(|v| v.iter().enumerate().map(|(i, c)| (c, i))).collect();
    let rank = |b: Bidegree| basis.get(&b).map_or(0, Vec::len);

    let mut d_h = BTreeMap::new();
    let mut d_v = BTreeMap::new();
    for (&(s, t), pairs) in &basis {
        let dl = left.diff(s);
        let dr = right.diff(t);
        let (mut th, mut tv) = (Vec::new(), Vec::new());
        let lower_s = left.basis.get(&(s - 1));
        let upper_t = right.basis.get(&(t + 1));
        for (j, p) in pairs.iter().enumerate() {
            let (_, si) = deg_left[&p.sigma];
            if let Some(lower) = lower_s {
                for (i, c) in dl.col(si) {
                    if let Some(&row) = index.get(&(&lower[*i], &p.tau)) {
                        th.push((row, j, c.clone()));
                    }
                }
            }
            if let Some(upper) = upper_t {
                let sign = if s.rem_euclid(2) == 0 { Int::ONE } else { -Int::ONE };
                for (i, c) in dr.col(right_idx[&p.tau]) {
                    if let Some(&row) = index.get(&(&p.sigma, &upper[*i])) {
                        tv.push((row, j, &sign * c));
                    }
                }
            }
        }
        d_h.insert((s, t), IntMatrix::from_triplets(rank((s - 1, t)), pairs.len(), th));
        d_v.insert((s, t), IntMatrix::from_triplets(rank((s, t + 1)), pairs.len(), tv));
    }
    let delta = BicomplexRep { basis, d_h, d_v, variant: Variant::Cohomeology, reduced };
    match variant {
        Variant::Cohomeology => delta,
        Variant::Homeology => delta.dual(),
    }
}

fn simplex_faces(c: &Cell) -> Vec<Cell> {
    match c {
        Cell::Simplex(t) => t.subsets().into_iter().map(Cell::Simplex).collect(),
        Cell::Block(_) => Vec::new(),
    }
}

pub fn build(k: &SimplicialComplex, variant: Variant, reduced: bool) -> BicomplexRep {
    assemble(&chain_complex(k, reduced), &cochain_complex(k, reduced), simplex_faces, |_, _| true, variant, reduced)
}

/// Pairs `σ⊗τ` with `τ ∉ L`: the quotient for `D`, the kernel of restriction for `Δ`.
pub fn build_relative(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    variant: Variant,
    reduced: bool,
) -> Result<BicomplexRep> {
    let in_l: HashSet<Simplex> = k.embed(l)?;
    let keep = |_: &Cell, tau: &Cell| tau.simplex().map_or(true, |t| !in_l.contains(t));
    Ok(assemble(&chain_complex(k, reduced), &cochain_complex(k, reduced), simplex_faces, keep, variant, reduced))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkLabel {
    pub sigma: Simplex,
    /// Simplex of `link_K σ`, in the vertex indexing of `K`.
    pub tau: Simplex,
    /// `σ⊗τ_canonical = sign · σ⊗(τ'∪σ)`.
    pub sign: i32,
}

/// The cohomeology bicomplex conjugated by `σ⊗(τ'∪σ) ↦ [τ']_σ`.
#[derive(Clone, Debug)]
pub struct LinkForm {
    pub labels: BTreeMap<Bidegree, Vec<LinkLabel>>,
    pub d_h: BTreeMap<Bidegree, IntMatrix>,
    pub d_v: BTreeMap<Bidegree, IntMatrix>,
    pub reduced: bool,
}

impl LinkForm {
    /// Positions of the labels with base `σ` inside bidegree `b`.
    pub fn positions(&self, b: Bidegree, sigma: &Simplex) -> Vec<usize> {
        self.labels.get(&b).map_or_else(Vec::new, |v| {
            v.iter().enumerate().filter(|(_, l)| &l.sigma == sigma).map(|(i, _)| i).collect()
        })
    }
}

pub fn to_link_form(b: &BicomplexRep) -> Result<LinkForm> {
    if b.variant != Variant::Cohomeology {
        return Err(Error::WrongVariant("cohomeology".into()));
    }
    let mut labels = BTreeMap::new();
    let mut signs: BTreeMap<Bidegree, Vec<Int>> = BTreeMap::new();
    for (&bd, pairs) in &b.basis {
        let mut ls = Vec::with_capacity(pairs.len());
        for p in pairs {
            let (Cell::Simplex(sigma), Cell::Simplex(tau)) = (&p.sigma, &p.tau) else {
                return Err(Error::WrongVariant("simplicial pairs".into()));
            };
            let rest = tau.minus(sigma);
            let mut seq = rest.vertices().to_vec();
            seq.extend_from_slice(sigma.vertices());
            let (sign, _) = orient(&seq).expect("distinct vertices");
            ls.push(LinkLabel { sigma: sigma.clone(), tau: rest, sign });
        }
        signs.insert(bd, ls.iter().map(|l| Int::from(l.sign as i64)).collect());
        labels.insert(bd, ls);
    }
    let conj = |m: &IntMatrix, src: Bidegree, dst: Bidegree| {
        let (ss, ds) = (&signs[&src], signs.get(&dst));
        IntMatrix::from_triplets(
            m.rows(),
            m.cols(),
            m.triplets().map(|(i, j, v)| (i, j, v * &ds.expect("target exists")[i] * &ss[j])),
        )
    };
    let d_h = b.d_h.iter().map(|(&bd, m)| (bd, conj(m, bd, b.h_target(bd)))).collect();
    let d_v = b.d_v.iter().map(|(&bd, m)| (bd, conj(m, bd, b.v_target(bd)))).collect();
    Ok(LinkForm { labels, d_h, d_v, reduced: b.reduced })
}
