//! Homeology and cohomeology spectral sequences.
//!
//! Pages use the public indexing in which page `r` is the classical `E_{r+1}`
//! of the filtration by `s`: page 0 is the direct sum of link (co)homologies.

mod checks;
mod engine;

pub use checks::*;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use serde_json::{json, Value};

use crate::bicomplex::{Bidegree, BicomplexRep, Variant};
use crate::exact_algebra::{
    homology_of_pair, AbelianGroupPresentation, Coefficients, Int, IntMatrix, Integers, PrimeField, Ring, SVec,
};
use crate::Result;
use engine::{bidegree_at, engine_position, int_group, to_int_elems, Entry, FilteredEngine};

type Entries<R> = BTreeMap<(i32, i32), Entry<R>>;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    pub variant: Variant,
    pub reduced: bool,
    pub coeff: Coefficients,
    pub groups: BTreeMap<Bidegree, AbelianGroupPresentation>,
    /// Cyclic orders of the chosen generators (zero for free generators).
    pub orders: BTreeMap<Bidegree, Vec<Int>>,
    /// Keyed by source bidegree; columns are images of source generators in target coordinates.
    pub differentials: BTreeMap<Bidegree, IntMatrix>,
    /// Generator representatives as total-complex chains of degree `t - s`.
    pub class_lifts: BTreeMap<Bidegree, IntMatrix>,
}

impl SpectralPage {
    pub fn group(&self, b: Bidegree) -> AbelianGroupPresentation {
        self.groups.get(&b).cloned().unwrap_or_else(AbelianGroupPresentation::zero)
    }

    pub fn target(&self, (s, t): Bidegree) -> Bidegree {
        let r = self.r as i32;
        match self.variant {
            Variant::Cohomeology => (s - r - 1, t - r),
            Variant::Homeology => (s + r + 1, t + r),
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Bidegree, &AbelianGroupPresentation)> + '_ {
        self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(&b, g)| (b, g))
    }

    /// Differential out of `b`, a zero matrix when there is no target.
    pub fn differential(&self, b: Bidegree) -> IntMatrix {
        self.differentials.get(&b).cloned().unwrap_or_else(|| {
            let rows = self.orders.get(&self.target(b)).map_or(0, Vec::len);
            IntMatrix::zeros(rows, self.orders.get(&b).map_or(0, Vec::len))
        })
    }

    /// Same groups at every bidegree (absent entries count as zero).
    pub fn same_groups(&self, other: &SpectralPage) -> bool {
        let keys: std::collections::BTreeSet<Bidegree> = self.groups.keys().chain(other.groups.keys()).copied().collect();
        keys.into_iter().all(|b| self.group(b) == other.group(b))
    }

    pub fn to_json(&self, with_differentials: bool) -> Value {
        let groups: serde_json::Map<String, Value> = self
            .groups
            .iter()
            .map(|(&(s, t), g)| (format!("{s},{t}"), serde_json::to_value(g).expect("serializable")))
            .collect();
        let mut v = json!({ "page": self.r, "groups": groups });
        if with_differentials {
            let diffs: serde_json::Map<String, Value> = self
                .differentials
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(s, t), m)| (format!("{s},{t}"), serde_json::to_value(m).expect("serializable")))
                .collect();
            v["differentials"] = Value::Object(diffs);
        }
        v
    }
}

enum Engine {
    Int(FilteredEngine<Integers>, Mutex<BTreeMap<usize, Arc<Entries<Integers>>>>),
    Prime(FilteredEngine<PrimeField>, Mutex<BTreeMap<usize, Arc<Entries<PrimeField>>>>),
}

macro_rules! with_engine {
    ($self:expr, $eng:ident, $cache:ident => $body:expr) => {
        match &$self.engine {
            Engine::Int($eng, $cache) => $body,
            Engine::Prime($eng, $cache) => $body,
        }
    };
}

/// Lazily computed pages of one bicomplex over one coefficient system.
pub struct SpectralSequence {
    pub variant: Variant,
    pub reduced: bool,
    pub coeff: Coefficients,
    total_ranks: BTreeMap<i32, usize>,
    t_span: i32,
    engine: Engine,
    pages: Mutex<BTreeMap<usize, Arc<SpectralPage>>>,
}

impl SpectralSequence {
    pub fn new(b: &BicomplexRep, coeff: Coefficients) -> SpectralSequence {
        let engine = match coeff {
            Coefficients::Z | Coefficients::Q => Engine::Int(FilteredEngine::new(Integers, b), Mutex::default()),
            Coefficients::Zp(p) => Engine::Prime(FilteredEngine::new(PrimeField::new(p), b), Mutex::default()),
        };
        let ts: Vec<i32> = b.bidegrees().filter(|&bd| b.rank(bd) > 0).map(|(_, t)| t).collect();
        let t_span = match (ts.iter().min(), ts.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        };
        let total_ranks = b.total_degrees().into_iter().map(|n| (n, b.total_rank(n))).collect();
        SpectralSequence {
            variant: b.variant,
            reduced: b.reduced,
            coeff,
            total_ranks,
            t_span,
            engine,
            pages: Mutex::default(),
        }
    }

    /// From this page on every differential vanishes for bidegree reasons.
    pub fn stable_page(&self) -> usize {
        (self.t_span + 1) as usize
    }

    fn keep(&self, order: &Int) -> bool {
        self.coeff != Coefficients::Q || order.is_zero()
    }

    fn cached_entries<R: Ring>(
        eng: &FilteredEngine<R>,
        cache: &Mutex<BTreeMap<usize, Arc<Entries<R>>>>,
        r: usize,
    ) -> Result<Arc<Entries<R>>> {
        if let Some(e) = cache.lock().expect("page cache").get(&r) {
            return Ok(e.clone());
        }
        let e = Arc::new(eng.entries(r as i32 + 1)?);
        cache.lock().expect("page cache").insert(r, e.clone());
        Ok(e)
    }

    fn build<R: Ring>(&self, eng: &FilteredEngine<R>, entries: &Entries<R>, r: usize) -> Result<SpectralPage> {
        let k = r as i32 + 1;
        let ring = &eng.ring;
        let mut page = SpectralPage {
            r,
            variant: self.variant,
            reduced: self.reduced,
            coeff: self.coeff,
            groups: BTreeMap::new(),
            orders: BTreeMap::new(),
            differentials: BTreeMap::new(),
            class_lifts: BTreeMap::new(),
        };
        let mut kept: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
        for (&(e, p), ent) in entries {
            let orders = to_int_elems(ring, ent.sq.orders());
            let idx: Vec<usize> = (0..orders.len()).filter(|&i| self.keep(&orders[i])).collect();
            let orders: Vec<Int> = idx.iter().map(|&i| orders[i].clone()).collect();
            let b = bidegree_at(self.variant, e, p);
            page.groups.insert(b, int_group(&orders));
            page.orders.insert(b, orders);
            let deg = &eng.degrees[&e];
            let n = b.1 - b.0;
            let cols: Vec<SVec<Int>> = idx
                .iter()
                .map(|&i| {
                    let mut v: SVec<Int> =
                        ent.lifts[i].iter().map(|(j, x)| (deg.to_public[*j], ring.to_int(x))).collect();
                    v.sort_by_key(|e| e.0);
                    v
                })
                .collect();
            page.class_lifts.insert(b, IntMatrix::from_columns(self.total_ranks.get(&n).copied().unwrap_or(0), cols));
            kept.insert((e, p), idx);
        }
        for &(e, p) in entries.keys() {
            let Some(tk) = kept.get(&(e + 1, p - k)) else { continue };
            let images = eng.page_differential(entries, e, p, k)?;
            let cols: Vec<SVec<Int>> = kept[&(e, p)]
                .iter()
                .map(|&j| {
                    tk.iter()
                        .enumerate()
                        .filter_map(|(row, &i)| {
                            let x = ring.to_int(&images[j][i]);
                            (!x.is_zero()).then_some((row, x))
                        })
                        .collect()
                })
                .collect();
            page.differentials.insert(bidegree_at(self.variant, e, p), IntMatrix::from_columns(tk.len(), cols));
        }
        Ok(page)
    }

    pub fn page(&self, r: usize) -> Result<Arc<SpectralPage>> {
        if let Some(p) = self.pages.lock().expect("page cache").get(&r) {
            return Ok(p.clone());
        }
        let page = Arc::new(with_engine!(self, eng, cache => {
            let entries = Self::cached_entries(eng, cache, r)?;
            self.build(eng, &entries, r)?
        }));
        self.pages.lock().expect("page cache").insert(r, page.clone());
        Ok(page)
    }

    pub fn pages(&self, upto: usize) -> Result<Vec<Arc<SpectralPage>>> {
        (0..=upto).map(|r| self.page(r)).collect()
    }

    /// Coordinates on page `r` at `b` of a cycle given in the local basis of bidegree `b`.
    ///
    /// `None` when the vector does not represent a page class.
    pub fn coords(&self, r: usize, b: Bidegree, v: &[(usize, Int)]) -> Result<Option<Vec<Int>>> {
        let (e, p) = engine_position(self.variant, b);
        with_engine!(self, eng, cache => {
            let entries = Self::cached_entries(eng, cache, r)?;
            let Some(ent) = entries.get(&(e, p)) else { return Ok(Some(Vec::new())) };
            let ring = &eng.ring;
            let w: Vec<_> = v.iter().map(|(i, x)| (*i, ring.from_int(x))).filter(|(_, x)| !ring.is_zero(x)).collect();
            Ok(ent.sq.coords(&w).map(|c| {
                let orders = to_int_elems(ring, ent.sq.orders());
                c.iter().zip(&orders).filter(|(_, d)| self.keep(d)).map(|(x, _)| ring.to_int(x)).collect()
            }))
        })
    }
}

pub fn page(b: &BicomplexRep, r: usize, coeff: Coefficients) -> Result<SpectralPage> {
    Ok(SpectralSequence::new(b, coeff).page(r)?.as_ref().clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitGroups {
    /// Total-complex (co)homology by total degree `t - s`.
    pub groups: BTreeMap<i32, AbelianGroupPresentation>,
    pub stable_page: usize,
    /// Direct sum of the stable page's entries by total degree.
    pub stable_sum: BTreeMap<i32, AbelianGroupPresentation>,
}

impl LimitGroups {
    pub fn group(&self, n: i32) -> AbelianGroupPresentation {
        self.groups.get(&n).cloned().unwrap_or_else(AbelianGroupPresentation::zero)
    }
}

pub fn limit(b: &BicomplexRep, coeff: Coefficients) -> Result<LimitGroups> {
    let mut groups = BTreeMap::new();
    for n in b.total_degrees() {
        let source = match b.variant {
            Variant::Cohomeology => n - 1,
            Variant::Homeology => n + 1,
        };
        let g = homology_of_pair(&b.total_differential(n), &b.total_differential(source), coeff)?;
        groups.insert(n, g);
    }
    let ss = SpectralSequence::new(b, coeff);
    let stable_page = ss.stable_page();
    let page = ss.page(stable_page)?;
    let mut stable_sum: BTreeMap<i32, AbelianGroupPresentation> = BTreeMap::new();
    for (&(s, t), g) in &page.groups {
        let acc = stable_sum.entry(t - s).or_insert_with(AbelianGroupPresentation::zero);
        *acc = acc.direct_sum(g);
    }
    Ok(LimitGroups { groups, stable_page, stable_sum })
}

#[cfg(test)]
mod tests;
