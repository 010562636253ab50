//! Solid maps and the homomorphisms they induce on pair complexes and pages.

mod products;

pub use products::*;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{build, Bidegree, BicomplexRep, Variant};
use crate::chains::Cell;
use crate::complex::{orient, ComplexJson, Simplex, SimplicialComplex};
use crate::exact_algebra::{Coefficients, Int, IntMatrix, Integers, Ring, SVec};
use crate::spectral::{SpectralPage, SpectralSequence};
use crate::{Error, Result};

/// A vertex map under which every simplex keeps its number of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolidMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: Vec<u32>,
}

fn check_vertex_map(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: &[u32]) -> Result<()> {
    if vertex_map.len() != source.num_vertices() {
        return Err(Error::InvalidParameter(format!(
            "vertex map has {} entries for {} vertices",
            vertex_map.len(),
            source.num_vertices()
        )));
    }
    if let Some(&w) = vertex_map.iter().find(|&&w| w as usize >= target.num_vertices()) {
        return Err(Error::InvalidParameter(format!("target has no vertex {w}")));
    }
    Ok(())
}

/// Fails with the first facet whose image is not a simplex of `target`.
pub fn check_simplicial(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: &[u32]) -> Result<()> {
    check_vertex_map(source, target, vertex_map)?;
    for f in source.facets() {
        if !target.contains(&Simplex::new(f.map(|v| vertex_map[v as usize]))) {
            return Err(Error::NotSimplicial(source.format_simplex(&f)));
        }
    }
    Ok(())
}

pub fn check_solid(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: Vec<u32>) -> Result<SolidMap> {
    check_simplicial(source, target, &vertex_map)?;
    // a simplex collapses exactly when one of its edges does
    for e in source.simplices(1) {
        let v = e.vertices();
        if vertex_map[v[0] as usize] == vertex_map[v[1] as usize] {
            return Err(Error::NotSolid(source.format_simplex(e)));
        }
    }
    Ok(SolidMap { source: source.clone(), target: target.clone(), vertex_map })
}

/// Edges `a < b` of `source` have `f(a) ≤ f(b)`.
pub fn is_order_preserving(source: &SimplicialComplex, vertex_map: &[u32]) -> bool {
    source.simplices(1).iter().all(|e| vertex_map[e.vertices()[0] as usize] <= vertex_map[e.vertices()[1] as usize])
}

impl SolidMap {
    pub fn identity(k: &SimplicialComplex) -> SolidMap {
        SolidMap { source: k.clone(), target: k.clone(), vertex_map: (0..k.num_vertices() as u32).collect() }
    }

    /// Inclusion of a subcomplex, matching vertices by name.
    pub fn inclusion(sub: &SimplicialComplex, k: &SimplicialComplex) -> Result<SolidMap> {
        let map = sub
            .names()
            .iter()
            .map(|n| k.vertex_index(n).ok_or_else(|| Error::UnknownVertex(n.clone())))
            .collect::<Result<Vec<u32>>>()?;
        check_solid(sub, k, map)
    }

    pub fn from_names(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        pairs: &BTreeMap<String, String>,
    ) -> Result<SolidMap> {
        check_solid(source, target, vertex_map_from_names(source, target, pairs)?)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SolidMap) -> Result<SolidMap> {
        if self.target != g.source {
            return Err(Error::InvalidParameter("maps do not compose".into()));
        }
        let map = self.vertex_map.iter().map(|&w| g.vertex_map[w as usize]).collect();
        check_solid(&self.source, &g.target, map)
    }

    /// Image of `s` with the sign of sorting it.
    pub fn push(&self, s: &Simplex) -> (i32, Simplex) {
        orient(&s.map(|v| self.vertex_map[v as usize])).expect("solid maps are injective on simplices")
    }

    pub fn is_order_preserving(&self) -> bool {
        is_order_preserving(&self.source, &self.vertex_map)
    }
}

pub fn vertex_map_from_names(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    pairs: &BTreeMap<String, String>,
) -> Result<Vec<u32>> {
    for n in pairs.keys() {
        source.vertex_index(n).ok_or_else(|| Error::UnknownVertex(n.clone()))?;
    }
    source
        .names()
        .iter()
        .map(|n| {
            let w = pairs.get(n).ok_or_else(|| Error::InvalidParameter(format!("no image for vertex `{n}`")))?;
            target.vertex_index(w).ok_or_else(|| Error::UnknownVertex(w.clone()))
        })
        .collect()
}

/// Order of `target` in which `f` preserves order, if one exists.
fn monotone_order(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: &[u32]) -> Result<Vec<u32>> {
    let n = target.num_vertices();
    let mut after: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for e in source.simplices(1) {
        let (a, b) = (vertex_map[e.vertices()[0] as usize], vertex_map[e.vertices()[1] as usize]);
        if a != b && !after[a as usize].contains(&b) {
            after[a as usize].push(b);
            indeg[b as usize] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<u32> = (0..n as u32).filter(|&w| indeg[w as usize] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(w) = ready.pop_first() {
        order.push(w);
        for &b in &after[w as usize] {
            indeg[b as usize] -= 1;
            if indeg[b as usize] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() < n {
        return Err(Error::NotMonotone("no vertex order of the target makes the map order preserving".into()));
    }
    Ok(order)
}

/// The graph `v ↦ (v, f(v))` of a simplicial map, into `K × L`.
///
/// When `f` does not preserve order the target is first rebuilt with a vertex
/// order that makes it do so; the returned map's target is the product with
/// that reordered copy.
pub fn graph_map(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: &[u32]) -> Result<SolidMap> {
    check_simplicial(source, target, vertex_map)?;
    let (target, map) = if is_order_preserving(source, vertex_map) {
        (target.clone(), vertex_map.to_vec())
    } else {
        let order = monotone_order(source, target, vertex_map)?;
        let mut inv = vec![0u32; order.len()];
        for (k, &old) in order.iter().enumerate() {
            inv[old as usize] = k as u32;
        }
        (target.reorder(&order)?, vertex_map.iter().map(|&w| inv[w as usize]).collect())
    };
    let n = target.num_vertices() as u32;
    let product = source.cartesian_product(&target);
    let graph = (0..source.num_vertices() as u32).map(|v| v * n + map[v as usize]).collect();
    check_solid(source, &product, graph)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub vertex_map: BTreeMap<String, String>,
}

/// Source, target and vertex map of a map file, before any solidity check.
pub fn parse_map_json(s: &str) -> Result<(SimplicialComplex, SimplicialComplex, Vec<u32>)> {
    let j: MapJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let source = SimplicialComplex::try_from(&j.source)?;
    let target = SimplicialComplex::try_from(&j.target)?;
    let map = vertex_map_from_names(&source, &target, &j.vertex_map)?;
    Ok((source, target, map))
}

pub fn map_from_json(s: &str) -> Result<SolidMap> {
    let (source, target, map) = parse_map_json(s)?;
    check_solid(&source, &target, map)
}

pub fn map_to_json(f: &SolidMap) -> String {
    let vertex_map = f
        .source
        .names()
        .iter()
        .zip(&f.vertex_map)
        .map(|(n, &w)| (n.clone(), f.target.vertex_name(w).to_string()))
        .collect();
    let j = MapJson { source: (&f.source).into(), target: (&f.target).into(), vertex_map };
    serde_json::to_string(&j).expect("serializable")
}

/// Bidegree-preserving map between two pair bicomplexes.
///
/// Homeology maps go from `T(K)` to `T(L)`; cohomeology maps the other way.
#[derive(Clone, Debug)]
pub struct BicomplexMap {
    pub variant: Variant,
    pub reduced: bool,
    pub source: BicomplexRep,
    pub target: BicomplexRep,
    pub matrices: BTreeMap<Bidegree, IntMatrix>,
}

impl BicomplexMap {
    pub fn matrix(&self, b: Bidegree) -> IntMatrix {
        self.matrices.get(&b).cloned().unwrap_or_else(|| IntMatrix::zeros(self.target.rank(b), self.source.rank(b)))
    }

    /// Both squares `d∘F = F∘d` commute in every bidegree.
    pub fn commutes(&self) -> bool {
        self.source.bidegrees().chain(self.target.bidegrees()).all(|b| {
            let f = self.matrix(b);
            let (th, tv) = (self.source.h_target(b), self.source.v_target(b));
            self.target.h(b).mul(&f) == self.matrix(th).mul(&self.source.h(b))
                && self.target.v(b).mul(&f) == self.matrix(tv).mul(&self.source.v(b))
        })
    }
}

fn pushforward(f: &SolidMap, tk: &BicomplexRep, tl: &BicomplexRep) -> BTreeMap<Bidegree, IntMatrix> {
    let mut out = BTreeMap::new();
    for (&b, pairs) in &tk.basis {
        let index: HashMap<(&Cell, &Cell), usize> =
            tl.basis.get(&b).map_or_else(HashMap::new, |v| v.iter().enumerate().map(|(i, p)| ((&p.sigma, &p.tau), i)).collect());
        let mut trip = Vec::new();
        for (j, p) in pairs.iter().enumerate() {
            let (Cell::Simplex(sigma), Cell::Simplex(tau)) = (&p.sigma, &p.tau) else { continue };
            let (e1, s) = f.push(sigma);
            let (e2, t) = f.push(tau);
            let row = index[&(&Cell::Simplex(s), &Cell::Simplex(t))];
            trip.push((row, j, Int::from((e1 * e2) as i64)));
        }
        out.insert(b, IntMatrix::from_triplets(tl.rank(b), pairs.len(), trip));
    }
    out
}

/// `f_*(σ⊗τ) = fσ⊗fτ` for homeology and its transpose `f^*` for cohomeology.
pub fn induced_bicomplex_map(f: &SolidMap, variant: Variant, reduced: bool) -> BicomplexMap {
    let tk = build(&f.source, variant, reduced);
    let tl = build(&f.target, variant, reduced);
    let push = pushforward(f, &tk, &tl);
    match variant {
        Variant::Homeology => BicomplexMap { variant, reduced, source: tk, target: tl, matrices: push },
        Variant::Cohomeology => {
            let mut matrices: BTreeMap<Bidegree, IntMatrix> = push.into_iter().map(|(b, m)| (b, m.transpose())).collect();
            for b in tl.bidegrees() {
                matrices.entry(b).or_insert_with(|| IntMatrix::zeros(tk.rank(b), tl.rank(b)));
            }
            BicomplexMap { variant, reduced, source: tl, target: tk, matrices }
        }
    }
}

/// An element of one page entry, in coordinates on the page's chosen generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PageClass {
    pub r: usize,
    pub bidegree: Bidegree,
    pub coords: Vec<Int>,
}

/// The pages of one complex in one variant, with access to class representatives.
pub struct Pages {
    pub complex: SimplicialComplex,
    pub bicomplex: BicomplexRep,
    pub ss: SpectralSequence,
}

impl Pages {
    pub fn new(k: &SimplicialComplex, variant: Variant, reduced: bool, coeff: Coefficients) -> Pages {
        Pages::from_bicomplex(k, build(k, variant, reduced), coeff)
    }

    pub fn from_bicomplex(k: &SimplicialComplex, b: BicomplexRep, coeff: Coefficients) -> Pages {
        let ss = SpectralSequence::new(&b, coeff);
        Pages { complex: k.clone(), bicomplex: b, ss }
    }

    pub fn coeff(&self) -> Coefficients {
        self.ss.coeff
    }

    pub fn variant(&self) -> Variant {
        self.ss.variant
    }

    pub fn page(&self, r: usize) -> Result<Arc<SpectralPage>> {
        self.ss.page(r)
    }

    pub fn orders(&self, r: usize, b: Bidegree) -> Result<Vec<Int>> {
        Ok(crate::spectral::orders(&*self.page(r)?, b))
    }

    pub fn rank(&self, r: usize, b: Bidegree) -> Result<usize> {
        Ok(self.orders(r, b)?.len())
    }

    /// Reduces coordinates modulo the generator orders and the characteristic.
    pub fn normalize(&self, r: usize, b: Bidegree, coords: &[Int]) -> Result<Vec<Int>> {
        let orders = self.orders(r, b)?;
        if coords.len() != orders.len() {
            return Err(Error::PageMismatch(format!("{} coordinates for {} generators at {b:?}", coords.len(), orders.len())));
        }
        Ok(coords.iter().zip(&orders).map(|(x, d)| reduce(self.coeff(), x, d)).collect())
    }

    pub fn class(&self, r: usize, b: Bidegree, coords: Vec<Int>) -> Result<PageClass> {
        let coords = self.normalize(r, b, &coords)?;
        Ok(PageClass { r, bidegree: b, coords })
    }

    pub fn zero(&self, r: usize, b: Bidegree) -> Result<PageClass> {
        self.class(r, b, vec![Int::ZERO; self.rank(r, b)?])
    }

    pub fn generator(&self, r: usize, b: Bidegree, i: usize) -> Result<PageClass> {
        let n = self.rank(r, b)?;
        if i >= n {
            return Err(Error::PageMismatch(format!("no generator {i} at {b:?}")));
        }
        let mut coords = vec![Int::ZERO; n];
        coords[i] = Int::ONE;
        Ok(PageClass { r, bidegree: b, coords })
    }

    /// All generators of page `r`, by bidegree.
    pub fn generators(&self, r: usize) -> Result<Vec<PageClass>> {
        let page = self.page(r)?;
        let mut out = Vec::new();
        for (&b, ord) in &page.orders {
            for i in 0..ord.len() {
                out.push(self.generator(r, b, i)?);
            }
        }
        Ok(out)
    }

    pub fn add(&self, x: &PageClass, y: &PageClass) -> Result<PageClass> {
        if (x.r, x.bidegree) != (y.r, y.bidegree) {
            return Err(Error::PageMismatch(format!("{:?} and {:?}", (x.r, x.bidegree), (y.r, y.bidegree))));
        }
        self.class(x.r, x.bidegree, x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Int, x: &PageClass) -> Result<PageClass> {
        self.class(x.r, x.bidegree, x.coords.iter().map(|a| c * a).collect())
    }

    pub fn is_zero(&self, x: &PageClass) -> Result<bool> {
        Ok(self.normalize(x.r, x.bidegree, &x.coords)?.iter().all(Int::is_zero))
    }

    /// Component in bidegree `b` of the class representative, in the local basis of `b`.
    pub(crate) fn leading(&self, x: &PageClass) -> Result<SVec<Int>> {
        let page = self.page(x.r)?;
        let b = x.bidegree;
        let Some(lifts) = page.class_lifts.get(&b) else {
            if x.coords.is_empty() {
                return Ok(Vec::new());
            }
            return Err(Error::PageMismatch(format!("page {} has no entry at {b:?}", x.r)));
        };
        if lifts.cols() != x.coords.len() {
            return Err(Error::PageMismatch(format!("{} coordinates for {} generators at {b:?}", x.coords.len(), lifts.cols())));
        }
        let n = b.1 - b.0;
        let off = self.bicomplex.total_layout(n).into_iter().find(|(c, _)| *c == b).map_or(0, |(_, o)| o);
        let len = self.bicomplex.rank(b);
        let mut acc = vec![Int::ZERO; len];
        for (j, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in crate::exact_algebra::window(lifts.col(j), off, off + len) {
                acc[i] = &acc[i] + &(c * &v);
            }
        }
        let zero = Int::ZERO;
        Ok(acc.into_iter().enumerate().map(|(i, v)| (i, reduce(self.coeff(), &v, &zero))).filter(|(_, v)| !v.is_zero()).collect())
    }

    /// Page class of a cycle given by its component in bidegree `b`.
    pub(crate) fn class_of(&self, r: usize, b: Bidegree, v: &[(usize, Int)]) -> Result<PageClass> {
        if self.rank(r, b)? == 0 {
            return Ok(PageClass { r, bidegree: b, coords: Vec::new() });
        }
        let coords = self
            .ss
            .coords(r, b, v)?
            .ok_or_else(|| Error::NotAPageClass(format!("chain at {b:?} is not a page-{r} class")))?;
        self.class(r, b, coords)
    }
}

fn reduce(coeff: Coefficients, x: &Int, order: &Int) -> Int {
    let x = match coeff {
        Coefficients::Zp(p) => Int::from(x.rem_euclid_u64(p)),
        _ => x.clone(),
    };
    Integers.reduce_mod(&x, order)
}

/// Page map from a chain map given on local bases, through class representatives.
pub(crate) fn transfer(
    dom: &Pages,
    cod: &Pages,
    r: usize,
    map: impl Fn(Bidegree, &SVec<Int>) -> SVec<Int>,
) -> Result<BTreeMap<Bidegree, IntMatrix>> {
    let page = dom.page(r)?;
    let mut out = BTreeMap::new();
    for (&b, ord) in &page.orders {
        let rows = cod.rank(r, b)?;
        let mut cols = Vec::with_capacity(ord.len());
        for i in 0..ord.len() {
            let x = dom.generator(r, b, i)?;
            let image = map(b, &dom.leading(&x)?);
            let c = cod.class_of(r, b, &image)?;
            cols.push(c.coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        out.insert(b, IntMatrix::from_columns(rows, cols));
    }
    Ok(out)
}

/// A homomorphism between page `r` of two spectral sequences, one matrix per bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct PageMap {
    pub r: usize,
    pub variant: Variant,
    pub matrices: BTreeMap<Bidegree, IntMatrix>,
}

impl PageMap {
    pub fn matrix(&self, b: Bidegree, dom: &Pages, cod: &Pages) -> Result<IntMatrix> {
        match self.matrices.get(&b) {
            Some(m) => Ok(m.clone()),
            None => Ok(IntMatrix::zeros(cod.rank(self.r, b)?, dom.rank(self.r, b)?)),
        }
    }

    pub fn apply(&self, x: &PageClass, dom: &Pages, cod: &Pages) -> Result<PageClass> {
        if x.r != self.r {
            return Err(Error::PageMismatch(format!("class on page {} for a page-{} map", x.r, self.r)));
        }
        let m = self.matrix(x.bidegree, dom, cod)?;
        if m.cols() != x.coords.len() {
            return Err(Error::PageMismatch(format!("{} coordinates for {} generators", x.coords.len(), m.cols())));
        }
        let v: SVec<Int> = x.coords.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let image = crate::exact_algebra::to_dense(&crate::exact_algebra::Integers, &m.mul_vec(&v), m.rows());
        cod.class(self.r, x.bidegree, image)
    }

    /// `self ∘ first`, reduced on the codomain of `self`.
    pub fn after(&self, first: &PageMap, dom: &Pages, mid: &Pages, cod: &Pages) -> Result<PageMap> {
        let mut matrices = BTreeMap::new();
        for &b in dom.page(self.r)?.orders.keys() {
            let m = self.matrix(b, mid, cod)?.mul(&first.matrix(b, dom, mid)?);
            matrices.insert(b, normalized(cod, self.r, b, &m)?);
        }
        Ok(PageMap { r: self.r, variant: self.variant, matrices })
    }

    /// Equality as homomorphisms, entries compared modulo the codomain orders.
    pub fn same_as(&self, other: &PageMap, dom: &Pages, cod: &Pages) -> Result<bool> {
        for &b in dom.page(self.r)?.orders.keys() {
            if normalized(cod, self.r, b, &self.matrix(b, dom, cod)?)? != normalized(cod, self.r, b, &other.matrix(b, dom, cod)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self, pages: &Pages) -> Result<bool> {
        let id = PageMap {
            r: self.r,
            variant: self.variant,
            matrices: pages.page(self.r)?.orders.iter().map(|(&b, o)| (b, IntMatrix::identity(o.len()))).collect(),
        };
        self.same_as(&id, pages, pages)
    }

    /// `d_r ∘ F = F ∘ d_r` out of every bidegree.
    pub fn commutes(&self, dom: &Pages, cod: &Pages) -> Result<bool> {
        let (dp, cp) = (dom.page(self.r)?, cod.page(self.r)?);
        for &b in dp.orders.keys() {
            let t = dp.target(b);
            let f = self.matrix(b, dom, cod)?;
            let lhs = cp.differential(b);
            let lhs = if lhs.cols() == f.rows() { lhs.mul(&f) } else { IntMatrix::zeros(cod.rank(self.r, t)?, f.cols()) };
            let ft = self.matrix(t, dom, cod)?;
            let dd = dp.differential(b);
            let rhs = if dd.rows() == ft.cols() { ft.mul(&dd) } else { IntMatrix::zeros(cod.rank(self.r, t)?, f.cols()) };
            if normalized(cod, self.r, t, &lhs)? != normalized(cod, self.r, t, &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn normalized(cod: &Pages, r: usize, b: Bidegree, m: &IntMatrix) -> Result<IntMatrix> {
    let orders = cod.orders(r, b)?;
    let zero = Int::ZERO;
    let trip: Vec<(usize, usize, Int)> = m
        .triplets()
        .map(|(i, j, v)| (i, j, reduce(cod.coeff(), v, orders.get(i).unwrap_or(&zero))))
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    Ok(IntMatrix::from_triplets(m.rows(), m.cols(), trip))
}

/// Page map of `f` between pages built on the matching complexes.
pub fn induced_page_map_between(f: &SolidMap, dom: &Pages, cod: &Pages, r: usize) -> Result<PageMap> {
    let variant = dom.variant();
    let bm = induced_bicomplex_map(f, variant, dom.bicomplex.reduced);
    if bm.source.basis != dom.bicomplex.basis || bm.target.basis != cod.bicomplex.basis {
        return Err(Error::PageMismatch("pages are not built on the map's source and target".into()));
    }
    let matrices = transfer(dom, cod, r, |b, v| bm.matrix(b).mul_vec(v))?;
    Ok(PageMap { r, variant, matrices })
}

/// Page map of `f` together with the domain and codomain pages it was computed on.
pub fn induced_page_map(
    f: &SolidMap,
    r: usize,
    coeff: Coefficients,
    variant: Variant,
    reduced: bool,
) -> Result<(PageMap, Pages, Pages)> {
    let (k, l) = match variant {
        Variant::Homeology => (&f.source, &f.target),
        Variant::Cohomeology => (&f.target, &f.source),
    };
    let dom = Pages::new(k, variant, reduced, coeff);
    let cod = Pages::new(l, variant, reduced, coeff);
    let m = induced_page_map_between(f, &dom, &cod, r)?;
    Ok((m, dom, cod))
}
