//! Products on pair complexes: the explicit cup formula on chains, and the
//! external, cup and module products on cohomeology pages over a field.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::{graph_map, induced_page_map_between, is_order_preserving, PageClass, PageMap, Pages, SolidMap};
use crate::bicomplex::{assemble, Bidegree, BicomplexRep, Variant};
use crate::blocks::{product_block_complex, trivial_block_complex};
use crate::chains::{chain_complex, Cell};
use crate::complex::{lattice_paths, orient, Simplex, SimplicialComplex};
use crate::exact_algebra::{Coefficients, Echelon, Int, Integers, PrimeField, Rationals, Ring, SVec};
use crate::spectral::CheckReport;
use crate::{Error, Result};

/// A cochain of `T^{*,*}(K)` as coefficients on pairs `(σ, τ)`.
pub type PairChain = BTreeMap<(Simplex, Simplex), Int>;

fn add_term(x: &mut PairChain, key: (Simplex, Simplex), c: Int) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(key.clone()).or_insert(Int::ZERO);
    *e = &*e + &c;
    if e.is_zero() {
        x.remove(&key);
    }
}

fn sign(e: i64) -> Int {
    if e.rem_euclid(2) == 0 {
        Int::ONE
    } else {
        -Int::ONE
    }
}

/// Total degree `t - s` of a pair.
pub fn pair_degree((sigma, tau): &(Simplex, Simplex)) -> i32 {
    tau.dim() - sigma.dim()
}

/// Unreduced `Δ(σ⊗τ) = dσ⊗τ + (-1)^s σ⊗δτ`.
pub fn pair_coboundary(k: &SimplicialComplex, x: &PairChain) -> PairChain {
    let mut out = PairChain::new();
    for ((sigma, tau), c) in x {
        let s = sigma.dim() as i64;
        if sigma.len() > 1 {
            for (i, f) in sigma.facets() {
                add_term(&mut out, (f, tau.clone()), c * &sign(i as i64));
            }
        }
        for v in k.cofaces_vertices(tau) {
            let mut w = vec![v];
            w.extend_from_slice(tau.vertices());
            let (e, up) = orient(&w).expect("new vertex");
            add_term(&mut out, (sigma.clone(), up), c * &sign(s + i64::from(e < 0)));
        }
    }
    out
}

fn concat(a: &[u32], b: &[u32]) -> Simplex {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    Simplex::from_sorted(v)
}

/// The case formula for `(σ₁⊗τ₁) ∪ (σ₂⊗τ₂)` on ordered pairs, summed over the cases that apply.
///
/// The first two cases glue `τ₂` after `τ₁` at a shared vertex, the last two
/// glue `τ₁` after `τ₂`; products whose glued simplex is not in `K` vanish.
pub fn cup_pairs(k: &SimplicialComplex, a: &(Simplex, Simplex), b: &(Simplex, Simplex)) -> Vec<((Simplex, Simplex), Int)> {
    let ((s1, t1), (s2, t2)) = (a, b);
    let (s1v, t1v, s2v, t2v) = (s1.vertices(), t1.vertices(), s2.vertices(), t2.vertices());
    if s1v.is_empty() || s2v.is_empty() {
        return Vec::new();
    }
    let (s, kk, t, l) = (s1.dim() as i64, t1.dim() as i64, s2.dim() as i64, t2.dim() as i64);
    let mut out = Vec::new();
    if t1v.last() == t2v.first() {
        let tau = concat(t1v, &t2v[1..]);
        if k.contains(&tau) {
            let e = sign(kk * t);
            if s1v.last() == t1v.last() {
                out.push(((concat(&s1v[..s1v.len() - 1], s2v), tau.clone()), e.clone()));
            }
            if s2v.first() == t2v.first() {
                out.push(((concat(s1v, &s2v[1..]), tau), e));
            }
        }
    }
    if t2v.last() == t1v.first() {
        let tau = concat(t2v, &t1v[1..]);
        if k.contains(&tau) {
            let e = sign(s * t + kk * t + kk * l);
            if s2v.last() == t2v.last() {
                out.push(((concat(&s2v[..s2v.len() - 1], s1v), tau.clone()), e.clone()));
            }
            if s1v.first() == t1v.first() {
                out.push(((concat(s2v, &s1v[1..]), tau), e));
            }
        }
    }
    out
}

pub fn cup_chain(k: &SimplicialComplex, x: &PairChain, y: &PairChain) -> PairChain {
    let mut out = PairChain::new();
    for (a, c) in x {
        for (b, d) in y {
            for (key, e) in cup_pairs(k, a, b) {
                add_term(&mut out, key, &(c * d) * &e);
            }
        }
    }
    out
}

/// `Δ(x∪y) - Δx∪y - (-1)^{|x|} x∪Δy`, with `|x|` taken termwise.
pub fn leibniz_defect(k: &SimplicialComplex, x: &PairChain, y: &PairChain) -> PairChain {
    let mut out = pair_coboundary(k, &cup_chain(k, x, y));
    for (a, c) in x {
        let xa: PairChain = [(a.clone(), c.clone())].into();
        for (key, v) in cup_chain(k, &pair_coboundary(k, &xa), y) {
            add_term(&mut out, key, -v);
        }
        let e = sign(pair_degree(a) as i64);
        for (key, v) in cup_chain(k, &xa, &pair_coboundary(k, y)) {
            add_term(&mut out, key, -(&e * &v));
        }
    }
    out
}

/// The shuffle chain of `a × b` in the staircase product whose vertex `(i, j)` sits at `i·n + j`.
///
/// A lattice path gets the sign of its shuffle: one factor per pair of an
/// `L`-step preceding a `K`-step.
pub fn shuffle_chain(a: &Simplex, b: &Simplex, n: u32) -> Vec<(i32, Simplex)> {
    let (av, bv) = (a.vertices(), b.vertices());
    lattice_paths(av.len() - 1, bv.len() - 1)
        .into_iter()
        .map(|path| {
            let (mut inversions, mut l_steps) = (0, 0);
            for w in path.windows(2) {
                if w[1].1 > w[0].1 {
                    l_steps += 1;
                } else {
                    inversions += l_steps;
                }
            }
            let rho = Simplex::from_sorted(path.iter().map(|&(i, j)| av[i] * n + bv[j]).collect());
            (if inversions % 2 == 0 { 1 } else { -1 }, rho)
        })
        .collect()
}

fn require_field(coeff: Coefficients) -> Result<()> {
    if coeff.is_field() {
        Ok(())
    } else {
        Err(Error::NonFieldCoefficients(format!("{coeff:?}")))
    }
}

fn require_cohomeology(p: &Pages, reduced: bool) -> Result<()> {
    if p.variant() != Variant::Cohomeology {
        return Err(Error::WrongVariant("cohomeology".into()));
    }
    if p.bicomplex.reduced != reduced {
        return Err(Error::PageMismatch(format!("products here use {} pages", if reduced { "reduced" } else { "unreduced" })));
    }
    Ok(())
}

fn same_page(a: &PageClass, b: &PageClass) -> Result<usize> {
    if a.r != b.r {
        return Err(Error::PageMismatch(format!("classes on pages {} and {}", a.r, b.r)));
    }
    Ok(a.r)
}

fn solve_in<R: Ring>(ring: &R, rows: usize, cols: &[SVec<Int>], b: &[Int]) -> Option<Vec<Int>> {
    let conv = |v: &SVec<Int>| -> SVec<R::Elem> {
        v.iter().map(|(i, x)| (*i, ring.from_int(x))).filter(|(_, x)| !ring.is_zero(x)).collect()
    };
    let cols: Vec<SVec<R::Elem>> = cols.iter().map(conv).collect();
    let e = Echelon::of_columns(ring.clone(), rows, &cols);
    let target: SVec<Int> = b.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    let sol = e.solve_payload(&conv(&target))?;
    let mut out = vec![Int::ZERO; cols.len()];
    for (i, x) in sol {
        let v = ring.to_int(&x);
        if ring.from_int(&v) != x {
            return None;
        }
        out[i] = v;
    }
    Some(out)
}

fn field_solve(coeff: Coefficients, rows: usize, cols: &[SVec<Int>], b: &[Int]) -> Result<Option<Vec<Int>>> {
    match coeff {
        Coefficients::Q => Ok(solve_in(&Rationals, rows, cols, b)),
        Coefficients::Zp(p) => Ok(solve_in(&PrimeField::new(p), rows, cols, b)),
        Coefficients::Z => Err(Error::NonFieldCoefficients("Z".into())),
    }
}

fn pair_simplices(p: &crate::bicomplex::PairBasisElement) -> (&Simplex, &Simplex) {
    match (&p.sigma, &p.tau) {
        (Cell::Simplex(s), Cell::Simplex(t)) => (s, t),
        _ => unreachable!("simplicial pair complexes only"),
    }
}

fn delta(rep: &BicomplexRep, b: Bidegree, v: &SVec<Int>) -> BTreeMap<Bidegree, SVec<Int>> {
    let mut out = BTreeMap::new();
    for (m, t) in [(rep.h(b), rep.h_target(b)), (rep.v(b), rep.v_target(b))] {
        if m.rows() > 0 {
            out.insert(t, m.mul_vec(v));
        }
    }
    out
}

fn accumulate(into: &mut BTreeMap<Bidegree, SVec<Int>>, b: Bidegree, v: &SVec<Int>, c: &Int) {
    let cur = into.remove(&b).unwrap_or_default();
    into.insert(b, crate::exact_algebra::axpy(&Integers, &cur, c, v));
}

fn same_chains(a: &BTreeMap<Bidegree, SVec<Int>>, b: &BTreeMap<Bidegree, SVec<Int>>) -> bool {
    let nonzero = |m: &BTreeMap<Bidegree, SVec<Int>>| -> BTreeMap<Bidegree, SVec<Int>> {
        m.iter().filter(|(_, v)| !v.is_empty()).map(|(b, v)| (*b, v.clone())).collect()
    };
    nonzero(a) == nonzero(b)
}

fn sorted(acc: HashMap<usize, Int>) -> SVec<Int> {
    let mut v: SVec<Int> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// External products `H_r(K) ⊗ H_r(L) → H_r(K×L)` on unreduced cohomeology pages.
///
/// The tensor product of the pair complexes is the pair complex of the product
/// block complex; its classes are carried to the staircase triangulation
/// through the complex of pairs (simplex, product block).
pub struct ProductPages {
    pub left: Arc<Pages>,
    pub right: Arc<Pages>,
    pub product: Arc<Pages>,
    transported: Pages,
    n: u32,
    /// `(τ₁, τ₂) ↦ (block τ₁×τ₂, sign relating its orientation to the shuffle chain)`.
    block_of: HashMap<(Simplex, Simplex), (usize, i32)>,
    /// Top simplex of a block with its orientation sign.
    top_of: HashMap<Simplex, (usize, i32)>,
    tb_index: HashMap<(Simplex, usize), usize>,
    columns: Mutex<HashMap<(usize, Bidegree), Arc<Vec<SVec<Int>>>>>,
}

impl ProductPages {
    pub fn new(left: Arc<Pages>, right: Arc<Pages>) -> Result<ProductPages> {
        let coeff = left.coeff();
        require_field(coeff)?;
        require_cohomeology(&left, false)?;
        require_cohomeology(&right, false)?;
        if right.coeff() != coeff {
            return Err(Error::PageMismatch("factors use different coefficients".into()));
        }
        let (k, l) = (&left.complex, &right.complex);
        let n = l.num_vertices() as u32;
        let blocks = product_block_complex(&trivial_block_complex(k), &trivial_block_complex(l))?;
        let host = blocks.host.clone();
        let product = Arc::new(Pages::new(&host, Variant::Cohomeology, false, coeff));

        let mut block_of = HashMap::new();
        let mut top_of = HashMap::new();
        for (i, b) in blocks.blocks.iter().enumerate().filter(|(_, b)| b.dim >= 0) {
            for (t, &o) in &b.orientation {
                top_of.insert(t.clone(), (i, o));
            }
            let (rho, o) = b.orientation.iter().next().expect("nonempty block has a top simplex");
            let t1 = Simplex::new(rho.map(|w| w / n));
            let t2 = Simplex::new(rho.map(|w| w % n));
            let ez = shuffle_chain(&t1, &t2, n).into_iter().find(|(_, r)| r == rho).expect("top simplex is a shuffle").0;
            block_of.insert((t1, t2), (i, o * ez));
        }

        let right_cochains = blocks.cochain_complex(false)?;
        let faces = |c: &Cell| match c {
            Cell::Block(i) => blocks.blocks[*i].simplices.iter().map(|s| Cell::Simplex(s.clone())).collect(),
            Cell::Simplex(_) => Vec::new(),
        };
        let tb = assemble(&chain_complex(&host, false), &right_cochains, faces, |_, _| true, Variant::Cohomeology, false);
        let mut tb_index = HashMap::new();
        for pairs in tb.basis.values() {
            for (i, p) in pairs.iter().enumerate() {
                if let (Cell::Simplex(s), Cell::Block(b)) = (&p.sigma, &p.tau) {
                    tb_index.insert((s.clone(), *b), i);
                }
            }
        }
        let transported = Pages::from_bicomplex(&host, tb, coeff);
        Ok(ProductPages { left, right, product, transported, n, block_of, top_of, tb_index, columns: Mutex::default() })
    }

    /// The tensor product map into the (simplex, block) pair complex, on one pair of basis elements.
    fn tensor_pair(&self, a: (&Simplex, &Simplex), b: (&Simplex, &Simplex)) -> Vec<(usize, Int)> {
        let ((s1, t1), (s2, t2)) = (a, b);
        let (blk, eps) = self.block_of[&(t1.clone(), t2.clone())];
        let base = sign(i64::from(t1.dim()) * i64::from(s2.dim())) * Int::from(eps);
        shuffle_chain(s1, s2, self.n)
            .into_iter()
            .map(|(e, rho)| (self.tb_index[&(rho, blk)], &base * &Int::from(e)))
            .collect()
    }

    /// Chain-level external product of two leading components, landing in the (simplex, block) complex.
    pub(crate) fn tensor(&self, ba: Bidegree, la: &SVec<Int>, bb: Bidegree, lb: &SVec<Int>) -> SVec<Int> {
        let (pa, pb) = (&self.left.bicomplex.basis[&ba], &self.right.bicomplex.basis[&bb]);
        let mut acc: HashMap<usize, Int> = HashMap::new();
        for (i, x) in la {
            for (j, y) in lb {
                let xy = x * y;
                for (row, v) in self.tensor_pair(pair_simplices(&pa[*i]), pair_simplices(&pb[*j])) {
                    let e = acc.entry(row).or_insert(Int::ZERO);
                    *e = &*e + &(&xy * &v);
                }
            }
        }
        sorted(acc)
    }

    /// Images of the product page generators in the (simplex, block) page.
    fn transport_columns(&self, r: usize, b: Bidegree) -> Result<Arc<Vec<SVec<Int>>>> {
        if let Some(c) = self.columns.lock().expect("column cache").get(&(r, b)) {
            return Ok(c.clone());
        }
        let mut cols = Vec::new();
        for i in 0..self.product.rank(r, b)? {
            let lead = self.product.leading(&self.product.generator(r, b, i)?)?;
            let image = self.transported.class_of(r, b, &self.transport_chain(b, &lead))?;
            cols.push(image.coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        let cols = Arc::new(cols);
        self.columns.lock().expect("column cache").insert((r, b), cols.clone());
        Ok(cols)
    }

    fn transport_chain(&self, b: Bidegree, v: &SVec<Int>) -> SVec<Int> {
        let pairs = &self.product.bicomplex.basis[&b];
        let mut acc: HashMap<usize, Int> = HashMap::new();
        for (idx, c) in v {
            let (sigma, tau) = pair_simplices(&pairs[*idx]);
            let Some(&(blk, o)) = self.top_of.get(tau) else { continue };
            let e = acc.entry(self.tb_index[&(sigma.clone(), blk)]).or_insert(Int::ZERO);
            *e = &*e + &(c * &Int::from(o));
        }
        sorted(acc)
    }

    /// Checks on every basis element that the tensor map and the transport map commute with `Δ`.
    pub fn check_chain_maps(&self) -> CheckReport {
        let tb = &self.transported.bicomplex;
        let (left, right, prod) = (&self.left.bicomplex, &self.right.bicomplex, &self.product.bicomplex);
        let unit = |i: usize| -> SVec<Int> { vec![(i, Int::ONE)] };
        let mut report = CheckReport::default();
        let mut bad = 0;
        for (&ba, pa) in &left.basis {
            for (&bb, pb) in &right.basis {
                let bt = (ba.0 + bb.0, ba.1 + bb.1);
                let e = sign(i64::from(ba.1 - ba.0));
                for i in 0..pa.len() {
                    for j in 0..pb.len() {
                        let lhs = delta(tb, bt, &self.tensor(ba, &unit(i), bb, &unit(j)));
                        let mut rhs: BTreeMap<Bidegree, SVec<Int>> = BTreeMap::new();
                        for (b2, v) in delta(left, ba, &unit(i)) {
                            accumulate(&mut rhs, (b2.0 + bb.0, b2.1 + bb.1), &self.tensor(b2, &v, bb, &unit(j)), &Int::ONE);
                        }
                        for (b2, v) in delta(right, bb, &unit(j)) {
                            accumulate(&mut rhs, (ba.0 + b2.0, ba.1 + b2.1), &self.tensor(ba, &unit(i), b2, &v), &e);
                        }
                        bad += usize::from(!same_chains(&lhs, &rhs));
                    }
                }
            }
        }
        report.push("tensor map commutes with Δ", bad == 0, format!("{bad} failing basis pairs"));
        let mut bad = 0;
        for (&b, pairs) in &prod.basis {
            for i in 0..pairs.len() {
                let lhs = delta(tb, b, &self.transport_chain(b, &unit(i)));
                let mut rhs = BTreeMap::new();
                for (b2, v) in delta(prod, b, &unit(i)) {
                    accumulate(&mut rhs, b2, &self.transport_chain(b2, &v), &Int::ONE);
                }
                bad += usize::from(!same_chains(&lhs, &rhs));
            }
        }
        report.push("transport map commutes with Δ", bad == 0, format!("{bad} failing basis elements"));
        report
    }

    /// `a × b` on page `r ≥ 1`.
    pub fn product(&self, a: &PageClass, b: &PageClass) -> Result<PageClass> {
        let r = same_page(a, b)?;
        if r == 0 {
            return Err(Error::InvalidParameter("page-level products are defined from page 1 on".into()));
        }
        let bt = (a.bidegree.0 + b.bidegree.0, a.bidegree.1 + b.bidegree.1);
        let (la, lb) = (self.left.leading(a)?, self.right.leading(b)?);
        if self.product.rank(r, bt)? == 0 {
            return self.product.zero(r, bt);
        }
        let v = self.tensor(a.bidegree, &la, b.bidegree, &lb);
        let target = self.transported.class_of(r, bt, &v)?;
        let cols = self.transport_columns(r, bt)?;
        let rows = self.transported.rank(r, bt)?;
        let x = field_solve(self.product.coeff(), rows, &cols, &target.coords)?
            .ok_or_else(|| Error::NotAPageClass(format!("product at {bt:?} does not come from the product complex")))?;
        self.product.class(r, bt, x)
    }
}

/// External products `H̃_r(K) ⊗ H̃_r(L) → H̃_r(K*L)` of bidegree `(1, 1)` on reduced pages.
pub struct JoinPages {
    pub left: Arc<Pages>,
    pub right: Arc<Pages>,
    pub join: Arc<Pages>,
    offset: u32,
}

impl JoinPages {
    pub fn new(left: Arc<Pages>, right: Arc<Pages>) -> Result<JoinPages> {
        let coeff = left.coeff();
        require_field(coeff)?;
        require_cohomeology(&left, true)?;
        require_cohomeology(&right, true)?;
        if right.coeff() != coeff {
            return Err(Error::PageMismatch("factors use different coefficients".into()));
        }
        let k = left.complex.join(&right.complex)?;
        let join = Arc::new(Pages::new(&k, Variant::Cohomeology, true, coeff));
        Ok(JoinPages { offset: left.complex.num_vertices() as u32, left, right, join })
    }

    pub fn product(&self, a: &PageClass, b: &PageClass) -> Result<PageClass> {
        let r = same_page(a, b)?;
        let bt = (a.bidegree.0 + b.bidegree.0 + 1, a.bidegree.1 + b.bidegree.1 + 1);
        if self.join.rank(r, bt)? == 0 {
            return self.join.zero(r, bt);
        }
        let (la, lb) = (self.left.leading(a)?, self.right.leading(b)?);
        let (pa, pb) = (&self.left.bicomplex.basis[&a.bidegree], &self.right.bicomplex.basis[&b.bidegree]);
        let index: HashMap<(&Simplex, &Simplex), usize> =
            self.join.bicomplex.basis[&bt].iter().enumerate().map(|(i, p)| (pair_simplices(p), i)).collect();
        let shift = |s: &Simplex, t: &Simplex| {
            let mut v = s.vertices().to_vec();
            v.extend(t.vertices().iter().map(|w| w + self.offset));
            Simplex::from_sorted(v)
        };
        let mut acc: HashMap<usize, Int> = HashMap::new();
        for (i, x) in &la {
            let (s1, t1) = pair_simplices(&pa[*i]);
            for (j, y) in &lb {
                let (s2, t2) = pair_simplices(&pb[*j]);
                let e = sign(i64::from(t1.dim() + 1) * i64::from(s2.dim() + 1));
                let row = index[&(&shift(s1, s2), &shift(t1, t2))];
                let v = acc.entry(row).or_insert(Int::ZERO);
                *v = &*v + &(&(x * y) * &e);
            }
        }
        self.join.class_of(r, bt, &sorted(acc))
    }
}

fn cached_pullback(
    cache: &Mutex<HashMap<usize, Arc<PageMap>>>,
    map: &SolidMap,
    dom: &Pages,
    cod: &Pages,
    r: usize,
) -> Result<Arc<PageMap>> {
    if let Some(m) = cache.lock().expect("page map cache").get(&r) {
        return Ok(m.clone());
    }
    let m = Arc::new(induced_page_map_between(map, dom, cod, r)?);
    cache.lock().expect("page map cache").insert(r, m.clone());
    Ok(m)
}

/// The cup product: the external square followed by restriction to the diagonal.
pub struct CupProduct {
    pub pages: Arc<Pages>,
    square: ProductPages,
    diagonal: SolidMap,
    pullbacks: Mutex<HashMap<usize, Arc<PageMap>>>,
}

impl CupProduct {
    pub fn new(k: &SimplicialComplex, coeff: Coefficients) -> Result<CupProduct> {
        require_field(coeff)?;
        CupProduct::from_pages(Arc::new(Pages::new(k, Variant::Cohomeology, false, coeff)))
    }

    pub fn from_pages(pages: Arc<Pages>) -> Result<CupProduct> {
        let square = ProductPages::new(pages.clone(), pages.clone())?;
        let k = &pages.complex;
        let diagonal = graph_map(k, k, &(0..k.num_vertices() as u32).collect::<Vec<_>>())?;
        Ok(CupProduct { pages, square, diagonal, pullbacks: Mutex::default() })
    }

    pub fn cup(&self, x: &PageClass, y: &PageClass) -> Result<PageClass> {
        let p = self.square.product(x, y)?;
        let m = cached_pullback(&self.pullbacks, &self.diagonal, &self.square.product, &self.pages, p.r)?;
        m.apply(&p, &self.square.product, &self.pages)
    }

    /// Products of all pairs of page-`r` generators, keyed by their positions in [`Pages::generators`].
    pub fn structure_constants(&self, r: usize) -> Result<BTreeMap<(usize, usize), PageClass>> {
        let gens = self.pages.generators(r)?;
        let mut out = BTreeMap::new();
        for (i, x) in gens.iter().enumerate() {
            for (j, y) in gens.iter().enumerate() {
                out.insert((i, j), self.cup(x, y)?);
            }
        }
        Ok(out)
    }
}

/// Pages of `X` as a module over the cup algebra of `Y` through a simplicial map `f: X → Y`.
pub struct ModuleAction {
    pub source: Arc<Pages>,
    pub target: Arc<Pages>,
    product: ProductPages,
    graph: SolidMap,
    pullbacks: Mutex<HashMap<usize, Arc<PageMap>>>,
}

impl ModuleAction {
    pub fn new(source: Arc<Pages>, target: Arc<Pages>, vertex_map: &[u32]) -> Result<ModuleAction> {
        if !is_order_preserving(&source.complex, vertex_map) {
            return Err(Error::NotMonotone("the map must preserve the vertex orders".into()));
        }
        let graph = graph_map(&source.complex, &target.complex, vertex_map)?;
        let product = ProductPages::new(source.clone(), target.clone())?;
        Ok(ModuleAction { source, target, product, graph, pullbacks: Mutex::default() })
    }

    /// `x·ρ = (graph f)^*(x × ρ)`.
    pub fn act(&self, x: &PageClass, rho: &PageClass) -> Result<PageClass> {
        let p = self.product.product(x, rho)?;
        let m = cached_pullback(&self.pullbacks, &self.graph, &self.product.product, &self.source, p.r)?;
        m.apply(&p, &self.product.product, &self.source)
    }
}
