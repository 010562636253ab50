//! Pages of a finitely filtered cochain complex.
//!
//! Every bicomplex is fed in as a cochain complex (differential raising the
//! engine degree) with an increasing filtration preserved by the
//! differential. Inside a degree the basis is sorted by filtration, so `F_p`
//! is a prefix. With `π_p` the projection onto the filtration-`p` block,
//! `E_k^p = π_p(Z_k^p) / π_p(d Z_{k-1}^{p+k-1})` where
//! `Z_k^p = {x ∈ F_p : dx ∈ F_{p-k}}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::bicomplex::{Bidegree, BicomplexRep, Variant};
use crate::exact_algebra::{from_dense, window, AbelianGroupPresentation, Echelon, Int, Ring, SVec, Subquotient};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub p: i32,
    pub bidegree: Bidegree,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Degree<E> {
    pub blocks: Vec<Block>,
    pub filt: Vec<i32>,
    /// Columns of the differential into the next degree.
    pub d: Vec<SVec<E>>,
    /// Engine index to position in the bicomplex's own total layout.
    pub to_public: Vec<usize>,
}

impl<E> Degree<E> {
    pub fn block(&self, p: i32) -> Option<&Block> {
        self.blocks.iter().find(|b| b.p == p)
    }

    pub fn dim(&self) -> usize {
        self.filt.len()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Entry<R: Ring> {
    pub sq: Subquotient<R>,
    /// Generator representatives in the engine coordinates of the whole degree.
    pub lifts: Vec<SVec<R::Elem>>,
}

#[derive(Debug)]
pub(crate) struct FilteredEngine<R: Ring> {
    pub ring: R,
    pub degrees: BTreeMap<i32, Degree<R::Elem>>,
    kernels: Mutex<HashMap<(i32, usize, usize), Arc<Vec<SVec<R::Elem>>>>>,
}

pub(crate) fn engine_position(variant: Variant, (s, t): Bidegree) -> (i32, i32) {
    match variant {
        Variant::Cohomeology => (t - s, s),
        Variant::Homeology => (s - t, -s),
    }
}

pub(crate) fn bidegree_at(variant: Variant, e: i32, p: i32) -> Bidegree {
    match variant {
        Variant::Cohomeology => (p, e + p),
        Variant::Homeology => (-p, -p - e),
    }
}

impl<R: Ring> FilteredEngine<R> {
    pub fn new(ring: R, b: &BicomplexRep) -> Self {
        let variant = b.variant;
        let mut grouped: BTreeMap<i32, Vec<(i32, Bidegree)>> = BTreeMap::new();
        for bd in b.bidegrees() {
            let (e, p) = engine_position(variant, bd);
            grouped.entry(e).or_default().push((p, bd));
        }
        let mut offsets: HashMap<Bidegree, usize> = HashMap::new();
        let mut layouts: BTreeMap<i32, Vec<Block>> = BTreeMap::new();
        for (&e, list) in grouped.iter_mut() {
            list.sort();
            let mut off = 0;
            let blocks = list
                .iter()
                .map(|&(p, bd)| {
                    let len = b.rank(bd);
                    offsets.insert(bd, off);
                    let blk = Block { p, bidegree: bd, offset: off, len };
                    off += len;
                    blk
                })
                .collect();
            layouts.insert(e, blocks);
        }
        let mut degrees = BTreeMap::new();
        for (&e, blocks) in &layouts {
            let dim: usize = blocks.iter().map(|b| b.len).sum();
            let filt: Vec<i32> = blocks.iter().flat_map(|b| std::iter::repeat(b.p).take(b.len)).collect();
            let mut d = Vec::with_capacity(dim);
            let mut to_public = vec![0; dim];
            let user_n = match variant {
                Variant::Cohomeology => e,
                Variant::Homeology => -e,
            };
            let public: HashMap<Bidegree, usize> = b.total_layout(user_n).into_iter().collect();
            for blk in blocks {
                let (h, v) = (b.h(blk.bidegree), b.v(blk.bidegree));
                let ht = offsets.get(&b.h_target(blk.bidegree)).copied();
                let vt = offsets.get(&b.v_target(blk.bidegree)).copied();
                for j in 0..blk.len {
                    to_public[blk.offset + j] = public[&blk.bidegree] + j;
                    let mut col: Vec<(usize, R::Elem)> = Vec::new();
                    if let Some(o) = ht {
                        col.extend(h.col(j).iter().map(|(i, x)| (o + i, ring.from_int(x))));
                    }
                    if let Some(o) = vt {
                        col.extend(v.col(j).iter().map(|(i, x)| (o + i, ring.from_int(x))));
                    }
                    col.retain(|(_, x)| !ring.is_zero(x));
                    col.sort_by_key(|e| e.0);
                    d.push(col);
                }
            }
            degrees.insert(e, Degree { blocks: blocks.clone(), filt, d, to_public });
        }
        FilteredEngine { ring, degrees, kernels: Mutex::new(HashMap::new()) }
    }

    pub fn apply_d(&self, e: i32, x: &[(usize, R::Elem)]) -> SVec<R::Elem> {
        let Some(next) = self.degrees.get(&(e + 1)) else { return Vec::new() };
        let deg = &self.degrees[&e];
        let mut acc = vec![self.ring.zero(); next.dim()];
        for (j, c) in x {
            for (i, v) in &deg.d[*j] {
                acc[*i] = self.ring.axpy(&acc[*i], c, v);
            }
        }
        from_dense(&self.ring, &acc)
    }

    /// `Z_k^p` in degree `e`, as a basis in full-degree coordinates.
    pub fn cycles(&self, e: i32, p: i32, k: i32) -> Arc<Vec<SVec<R::Elem>>> {
        let Some(deg) = self.degrees.get(&e) else { return Arc::new(Vec::new()) };
        let ncols = deg.filt.partition_point(|&f| f <= p);
        let (row_lo, rows) = match self.degrees.get(&(e + 1)) {
            Some(nd) => (nd.filt.partition_point(|&f| f <= p - k), nd.dim()),
            None => (0, 0),
        };
        let key = (e, ncols, row_lo);
        if let Some(z) = self.kernels.lock().expect("kernel cache").get(&key) {
            return z.clone();
        }
        let cols: Vec<SVec<R::Elem>> = deg.d[..ncols].iter().map(|c| window(c, row_lo, rows)).collect();
        let z = Arc::new(Echelon::of_columns(self.ring.clone(), rows - row_lo, &cols).into_kernel());
        self.kernels.lock().expect("kernel cache").insert(key, z.clone());
        z
    }

    /// The classical `E_k^p` in degree `e`.
    pub fn entry(&self, e: i32, p: i32, k: i32) -> Result<Option<Entry<R>>> {
        let Some(blk) = self.degrees.get(&e).and_then(|d| d.block(p)) else { return Ok(None) };
        let (lo, hi) = (blk.offset, blk.offset + blk.len);
        let z = self.cycles(e, p, k);
        let a: Vec<SVec<R::Elem>> = z.iter().map(|v| window(v, lo, hi)).collect();
        let b: Vec<SVec<R::Elem>> = if k == 0 {
            Vec::new()
        } else {
            self.cycles(e - 1, p + k - 1, k - 1).iter().map(|v| window(&self.apply_d(e - 1, v), lo, hi)).collect()
        };
        let sq = Subquotient::new(self.ring.clone(), blk.len, &a, &b)?;
        let lifts = sq
            .generators_in_a()
            .iter()
            .map(|g| {
                let mut out = Vec::new();
                for (i, c) in g {
                    out = crate::exact_algebra::axpy(&self.ring, &out, c, &z[*i]);
                }
                out
            })
            .collect();
        Ok(Some(Entry { sq, lifts }))
    }

    /// All entries of `E_k` keyed by `(e, p)`.
    pub fn entries(&self, k: i32) -> Result<BTreeMap<(i32, i32), Entry<R>>> {
        let keys: Vec<(i32, i32)> =
            self.degrees.iter().flat_map(|(&e, d)| d.blocks.iter().map(move |b| (e, b.p))).collect();
        let computed: Vec<Result<((i32, i32), Option<Entry<R>>)>> =
            keys.par_iter().map(|&(e, p)| self.entry(e, p, k).map(|x| ((e, p), x))).collect();
        let mut out = BTreeMap::new();
        for r in computed {
            let (key, entry) = r?;
            if let Some(entry) = entry {
                out.insert(key, entry);
            }
        }
        Ok(out)
    }

    /// `d_k` on the generators of `E_k^p(e)`, as coordinate columns in `E_k^{p-k}(e+1)`.
    pub fn page_differential(
        &self,
        entries: &BTreeMap<(i32, i32), Entry<R>>,
        e: i32,
        p: i32,
        k: i32,
    ) -> Result<Vec<Vec<R::Elem>>> {
        let src = &entries[&(e, p)];
        let Some(tgt) = entries.get(&(e + 1, p - k)) else {
            return Ok(vec![Vec::new(); src.lifts.len()]);
        };
        let blk = self.degrees[&(e + 1)].block(p - k).expect("entry has a block");
        src.lifts
            .iter()
            .map(|x| {
                let y = window(&self.apply_d(e, x), blk.offset, blk.offset + blk.len);
                tgt.sq.coords(&y).ok_or(Error::NotASubgroup)
            })
            .collect()
    }
}

/// Integer-valued view of a page entry: orders and generator data as `Int`.
pub(crate) fn to_int_elems<R: Ring>(ring: &R, v: &[R::Elem]) -> Vec<Int> {
    v.iter().map(|x| ring.to_int(x)).collect()
}

pub(crate) fn int_group(orders: &[Int]) -> AbelianGroupPresentation {
    let free = orders.iter().filter(|d| d.is_zero()).count();
    let tors: Vec<Int> = orders.iter().filter(|d| !d.is_zero()).cloned().collect();
    AbelianGroupPresentation::from_cyclic(free, &tors)
}
