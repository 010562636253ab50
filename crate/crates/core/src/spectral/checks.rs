//! Structural checks on pages: recursion, link description of page 0, the
//! reduced/unreduced sequences, Cohen–Macaulay collapse and the Lefschetz rows.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{SpectralPage, SpectralSequence};
use crate::bicomplex::{build, Bidegree, BicomplexRep, Variant};
use crate::chains::{cochain_complex, homology, homology_quotient, relative_complex, Cell, Direction};
use crate::complex::{orient, Simplex, SimplicialComplex};
use crate::exact_algebra::{
    mat_convert, presented_homology, AbelianGroupPresentation, Coefficients, Int, IntMatrix, Integers, Ring, SVec,
};
use crate::{chains::chain_complex, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), ..c });
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Integral data seen over the coefficient system (`Q` keeps the free part).
pub(crate) fn view(coeff: Coefficients, g: AbelianGroupPresentation) -> AbelianGroupPresentation {
    match coeff {
        Coefficients::Q => AbelianGroupPresentation::free(g.free_rank),
        _ => g,
    }
}

pub(crate) fn elems<R: Ring>(ring: &R, v: &[Int]) -> Vec<R::Elem> {
    v.iter().map(|x| ring.from_int(x)).collect()
}

/// Kernel and cokernel of a map between `⊕ R/orders` groups.
fn ker_coker<R: Ring>(
    ring: &R,
    m: &IntMatrix,
    src: &[Int],
    tgt: &[Int],
) -> Result<(AbelianGroupPresentation, AbelianGroupPresentation)> {
    let m = mat_convert(&Integers, ring, m);
    let (so, to) = (elems(ring, src), elems(ring, tgt));
    let none_in = crate::exact_algebra::SparseMatrix::zeros(src.len(), 0);
    let none_out = crate::exact_algebra::SparseMatrix::zeros(0, tgt.len());
    let ker = presented_homology(ring, &none_in, &m, &so, &to)?.group();
    let coker = presented_homology(ring, &m, &none_out, &to, &[])?.group();
    Ok((ker, coker))
}

pub(crate) fn orders(page: &SpectralPage, b: Bidegree) -> Vec<Int> {
    page.orders.get(&b).cloned().unwrap_or_default()
}

fn source_of(page: &SpectralPage, (s, t): Bidegree) -> Bidegree {
    let r = page.r as i32;
    match page.variant {
        Variant::Cohomeology => (s + r + 1, t + r),
        Variant::Homeology => (s - r - 1, t - r),
    }
}

/// Homology of `(page r, d_r)` at `b`.
pub fn page_homology(page: &SpectralPage, b: Bidegree) -> Result<AbelianGroupPresentation> {
    let coeff = page.coeff;
    let g = page.differential(b);
    let src = source_of(page, b);
    let f = page.differential(src);
    let (ob, oc) = (orders(page, b), orders(page, page.target(b)));
    with_ring!(coeff, ring => {
        let sq = presented_homology(
            ring,
            &mat_convert(&Integers, ring, &f),
            &mat_convert(&Integers, ring, &g),
            &elems(ring, &ob),
            &elems(ring, &oc),
        )?;
        Ok(view(coeff, sq.group()))
    })
}

/// Homology of page `r` against page `r + 1` computed from the filtration, for `r < upto`.
pub fn check_page_recursion(b: &BicomplexRep, coeff: Coefficients, upto: usize) -> Result<CheckReport> {
    let ss = SpectralSequence::new(b, coeff);
    let mut report = CheckReport::default();
    for r in 0..upto {
        let (p, q) = (ss.page(r)?, ss.page(r + 1)?);
        let mut bad = Vec::new();
        for &bd in p.groups.keys() {
            match page_homology(&p, bd) {
                Ok(h) if h == q.group(bd) => {}
                Ok(h) => bad.push(format!("{bd:?}: homology {h}, next page {}", q.group(bd))),
                Err(e) => bad.push(format!("{bd:?}: {e}")),
            }
        }
        report.push(format!("page {r} -> {}", r + 1), bad.is_empty(), bad.join("; "));
    }
    Ok(report)
}

/// Reduced cohomology of `link_K σ` by degree.
pub fn link_cohomology(k: &SimplicialComplex, sigma: &Simplex, coeff: Coefficients) -> Result<BTreeMap<i32, AbelianGroupPresentation>> {
    homology(&cochain_complex(&k.link(sigma)?, true), coeff)
}

/// Pair positions of a bicomplex, by bidegree.
fn pair_index(b: &BicomplexRep) -> HashMap<(Simplex, Simplex), usize> {
    let mut out = HashMap::new();
    for pairs in b.basis.values() {
        for (i, p) in pairs.iter().enumerate() {
            if let (Cell::Simplex(s), Cell::Simplex(t)) = (&p.sigma, &p.tau) {
                out.insert((s.clone(), t.clone()), i);
            }
        }
    }
    out
}

/// `ρ⁻¹`: a cochain of `link_K σ` (in link indices) as a vector of `σ⊗τ` pairs.
fn rho_inverse<R: Ring>(
    ring: &R,
    index: &HashMap<(Simplex, Simplex), usize>,
    sigma: &Simplex,
    back: &[u32],
    link_cells: &[Cell],
    x: &[(usize, R::Elem)],
) -> SVec<Int> {
    let mut out: Vec<(usize, Int)> = Vec::new();
    for (j, c) in x {
        let tp = link_cells[*j].simplex().expect("simplicial");
        let rest: Vec<u32> = tp.vertices().iter().map(|&v| back[v as usize]).collect();
        let mut seq = rest.clone();
        seq.extend_from_slice(sigma.vertices());
        let (sign, tau) = orient(&seq).expect("disjoint");
        let pos = index[&(sigma.clone(), tau)];
        out.push((pos, ring.to_int(&ring.mul(c, &ring.from_int(&Int::from(sign as i64))))));
    }
    out.sort_by_key(|e| e.0);
    out
}

/// `δ_v`: `C^t(link σ) → C^{t+1}(link (σ - v))`, `τ ↦ τ ∪ [v]`.
fn delta_v<R: Ring>(
    ring: &R,
    back: &[u32],
    link_cells: &[Cell],
    v: u32,
    back_v: &[u32],
    target_cells: &HashMap<Cell, usize>,
    x: &[(usize, R::Elem)],
) -> SVec<R::Elem> {
    let into_v: HashMap<u32, u32> = back_v.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
    let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
    for (j, c) in x {
        let tp = link_cells[*j].simplex().expect("simplicial");
        let mut seq: Vec<u32> = tp.vertices().iter().map(|&w| into_v[&back[w as usize]]).collect();
        seq.push(into_v[&v]);
        let (sign, canon) = orient(&seq).expect("distinct");
        let i = target_cells[&Cell::Simplex(canon)];
        let term = ring.mul(c, &ring.from_int(&Int::from(sign as i64)));
        let e = acc.entry(i).or_insert_with(|| ring.zero());
        *e = ring.add(e, &term);
    }
    acc.into_iter().filter(|(_, x)| !ring.is_zero(x)).collect()
}

pub(crate) fn reduce_all<R: Ring>(ring: &R, v: &[R::Elem], orders: &[R::Elem]) -> Vec<R::Elem> {
    v.iter().zip(orders).map(|(x, d)| ring.reduce_mod(x, d)).collect()
}

/// Page 0 against `⊕_σ H̃^*(link_K σ)`, both as groups and through the differential built from the maps `δ_v`.
pub fn check_page0_links(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for reduced in [true, false] {
        with_ring!(coeff, ring => page0_variant(ring, k, coeff, reduced, &mut report))?;
    }
    Ok(report)
}

fn page0_variant<R: Ring>(
    ring: &R,
    k: &SimplicialComplex,
    coeff: Coefficients,
    reduced: bool,
    report: &mut CheckReport,
) -> Result<()> {
    let tag = if reduced { "reduced" } else { "unreduced" };
    let b = build(k, Variant::Cohomeology, reduced);
    let ss = SpectralSequence::new(&b, coeff);
    let p0 = ss.page(0)?;
    let index = pair_index(&b);
    let keep = |d: &Int| coeff != Coefficients::Q || d.is_zero();
    let mut expected: BTreeMap<Bidegree, AbelianGroupPresentation> = BTreeMap::new();
    // (σ, t, generator) with the σ-column image under ρ⁻¹
    let mut gens: Vec<(Simplex, i32, SVec<R::Elem>, SVec<Int>)> = Vec::new();
    let mut phi_cols: BTreeMap<Bidegree, (Vec<SVec<Int>>, Vec<Int>)> = BTreeMap::new();
    let mut link_data = HashMap::new();
    for sigma in k.all_simplices() {
        if !reduced && sigma.is_empty() {
            continue;
        }
        let (link, back) = k.link_with_map(sigma)?;
        let lc = cochain_complex(&link, true);
        let s = sigma.dim();
        for t in lc.degrees().collect::<Vec<_>>() {
            let q = homology_quotient(ring, &lc, t)?;
            let bd = (s, s + t + 1);
            let acc = expected.entry(bd).or_insert_with(AbelianGroupPresentation::zero);
            *acc = acc.direct_sum(&view(coeff, q.group()));
            let cells = &lc.basis[&t];
            for (g, d) in q.generators().iter().zip(q.orders()) {
                let d = ring.to_int(d);
                if !keep(&d) {
                    continue;
                }
                let local = rho_inverse(ring, &index, sigma, &back, cells, g);
                let e = phi_cols.entry(bd).or_default();
                e.0.push(local.clone());
                e.1.push(d);
                gens.push((sigma.clone(), t, g.clone(), local));
            }
        }
        link_data.insert(sigma.clone(), (lc, back));
    }

    let keys: BTreeSet<Bidegree> = expected.keys().chain(p0.groups.keys()).copied().collect();
    let bad: Vec<String> = keys
        .into_iter()
        .filter_map(|bd| {
            let want = expected.get(&bd).cloned().unwrap_or_default();
            (p0.group(bd) != want).then(|| format!("{bd:?}: page {} vs links {want}", p0.group(bd)))
        })
        .collect();
    report.push(format!("{tag} page 0 groups"), bad.is_empty(), bad.join("; "));

    // Φ sends link generators onto page generators isomorphically.
    let mut bad = Vec::new();
    for (&bd, (cols, src_orders)) in &phi_cols {
        let mut coords = Vec::new();
        for v in cols {
            match ss.coords(0, bd, v)? {
                Some(c) => coords.push(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect::<SVec<Int>>()),
                None => bad.push(format!("{bd:?}: link class is not a page-0 class")),
            }
        }
        if coords.len() != cols.len() {
            continue;
        }
        let m = IntMatrix::from_columns(orders(&p0, bd).len(), coords);
        let (ker, coker) = ker_coker(ring, &m, src_orders, &orders(&p0, bd))?;
        if !ker.is_zero() || !coker.is_zero() {
            bad.push(format!("{bd:?}: kernel {ker}, cokernel {coker}"));
        }
    }
    report.push(format!("{tag} link isomorphism"), bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for (sigma, t, x, local) in &gens {
        let s = sigma.dim();
        let bd = (s, s + t + 1);
        let tgt = (s - 1, s + t + 1);
        let (lc, back) = &link_data[sigma];
        let mut image: BTreeMap<usize, Int> = BTreeMap::new();
        for &v in sigma.vertices() {
            let sv = sigma.without(v);
            if !reduced && sv.is_empty() {
                continue;
            }
            let (lcv, back_v) = &link_data[&sv];
            let dv = delta_v(ring, back, &lc.basis[t], v, back_v, &lcv.index_map(t + 1), x);
            for (i, c) in rho_inverse(ring, &index, &sv, back_v, &lcv.basis[&(t + 1)], &dv) {
                let e = image.entry(i).or_insert(Int::ZERO);
                *e = &*e + &c;
            }
        }
        let image: SVec<Int> = image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let src = ss.coords(0, bd, local)?.expect("checked above");
        let Some(want) = ss.coords(0, tgt, &image)? else {
            bad.push(format!("{bd:?}: formula image is not a page-0 class"));
            continue;
        };
        let m = mat_convert(&Integers, ring, &p0.differential(bd));
        let got = crate::exact_algebra::to_dense(
            ring,
            &crate::exact_algebra::mat_vec(ring, &m, &crate::exact_algebra::from_dense(ring, &elems(ring, &src))),
            want.len(),
        );
        let to = elems(ring, &orders(&p0, tgt));
        if reduce_all(ring, &got, &to) != reduce_all(ring, &elems(ring, &want), &to) {
            bad.push(format!("{bd:?} generator on {}: differential disagrees with formula", k.format_simplex(sigma)));
        }
    }
    report.push(format!("{tag} page 0 differential"), bad.is_empty(), bad.join("; "));
    Ok(())
}

fn rank_over(coeff: Coefficients, g: &AbelianGroupPresentation) -> usize {
    match coeff {
        Coefficients::Zp(p) => g.dim_mod(p),
        _ => g.free_rank,
    }
}

/// Constraints on `0 → A → B → C → D → 0` visible from the groups alone.
fn four_term(coeff: Coefficients, [a, b, c, d]: [&AbelianGroupPresentation; 4]) -> (bool, String) {
    let (ra, rb, rc, rd) = (rank_over(coeff, a), rank_over(coeff, b), rank_over(coeff, c), rank_over(coeff, d));
    let mut ok = ra + rc == rb + rd;
    if coeff.is_field() {
        ok &= ra <= rb && rd <= rc;
    } else if let (Some(oa), Some(ob), Some(oc), Some(od)) = (a.order(), b.order(), c.order(), d.order()) {
        ok &= &oa * &oc == &ob * &od;
    }
    (ok, format!("0 → {a} → {b} → {c} → {d} → 0"))
}

/// The four-term sequences relating reduced and unreduced page 1, and their agreement for `s > 0`.
pub fn check_reduced_unreduced_sequence(k: &SimplicialComplex, coeff: Coefficients, n: i32) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let red_c = SpectralSequence::new(&build(k, Variant::Cohomeology, true), coeff).page(1)?;
    let un_c = SpectralSequence::new(&build(k, Variant::Cohomeology, false), coeff).page(1)?;
    let red_h = SpectralSequence::new(&build(k, Variant::Homeology, true), coeff).page(1)?;
    let un_h = SpectralSequence::new(&build(k, Variant::Homeology, false), coeff).page(1)?;
    let coh = homology(&cochain_complex(k, true), coeff)?.get(&n).cloned().unwrap_or_default();
    let hom = homology(&chain_complex(k, true), coeff)?.get(&n).cloned().unwrap_or_default();

    let (ok, detail) = four_term(coeff, [&red_c.group((0, n)), &un_c.group((0, n)), &coh, &red_c.group((-1, n))]);
    report.push(format!("cohomeology sequence n={n}"), ok, detail);
    let (ok, detail) = four_term(coeff, [&red_h.group((-1, n)), &hom, &un_h.group((0, n)), &red_h.group((0, n))]);
    report.push(format!("homeology sequence n={n}"), ok, detail);

    for (name, red, un) in [("cohomeology", &red_c, &un_c), ("homeology", &red_h, &un_h)] {
        let keys: BTreeSet<Bidegree> = red.groups.keys().chain(un.groups.keys()).copied().filter(|b| b.0 > 0).collect();
        let bad: Vec<String> = keys
            .into_iter()
            .filter(|&b| red.group(b) != un.group(b))
            .map(|b| format!("{b:?}: {} vs {}", red.group(b), un.group(b)))
            .collect();
        report.push(format!("{name} s>0 agreement"), bad.is_empty(), bad.join("; "));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub dimension: i32,
    pub cohen_macaulay: bool,
    pub checks: CheckReport,
}

impl CmReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

/// Decides Cohen–Macaulayness from link cohomology and, when it holds, verifies the collapsed page shapes.
pub fn check_cm_structure(k: &SimplicialComplex, coeff: Coefficients) -> Result<CmReport> {
    let n = k.dim();
    let mut cm = true;
    for sigma in k.all_simplices() {
        let h = link_cohomology(k, sigma, coeff)?;
        if h.iter().any(|(&t, g)| t != n - sigma.dim() - 1 && !g.is_zero()) {
            cm = false;
            break;
        }
    }
    let mut checks = CheckReport::default();
    if !cm || n < 0 {
        return Ok(CmReport { dimension: n, cohen_macaulay: cm && n >= 0, checks });
    }
    let g = AbelianGroupPresentation::free(1);
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        let name = match variant {
            Variant::Cohomeology => "cohomeology",
            Variant::Homeology => "homeology",
        };
        let ss = SpectralSequence::new(&build(k, variant, true), coeff);
        let pages = ss.pages(n as usize + 1)?;
        for r in 1..n {
            let p = &pages[r as usize];
            let allowed = |(s, t): Bidegree| (t == n && (r..=n).contains(&s)) || (s == -1 && (0..=n - r).contains(&t));
            let stray: Vec<String> = p.nonzero().filter(|(b, _)| !allowed(*b)).map(|(b, g)| format!("{b:?}={g}")).collect();
            checks.push(format!("{name} page {r} shape"), stray.is_empty(), stray.join(", "));
            let mut bad = Vec::new();
            for s in r..=n {
                if p.group((s, n)) != pages[1].group((s, n)) {
                    bad.push(format!("({s},{n})"));
                }
            }
            for t in 0..=n - r {
                if p.group((-1, t)) != pages[0].group((-1, t)) {
                    bad.push(format!("(-1,{t})"));
                }
            }
            checks.push(format!("{name} page {r} entries persist"), bad.is_empty(), bad.join(", "));
            let (src, tgt) = match variant {
                Variant::Cohomeology => ((r, n), (-1, n - r)),
                Variant::Homeology => ((-1, n - r), (r, n)),
            };
            let (ker, coker) = with_ring!(coeff, ring => ker_coker(ring, &p.differential(src), &orders(p, src), &orders(p, tgt)))?;
            let iso = p.target(src) == tgt && ker.is_zero() && coker.is_zero() && p.group(src) == p.group(tgt);
            checks.push(format!("{name} page {r} differential is an isomorphism"), iso, format!("kernel {ker}, cokernel {coker}"));
        }
        let p = &pages[n as usize];
        let (src, tgt) = match variant {
            Variant::Cohomeology => ((n, n), (-1, 0)),
            Variant::Homeology => ((-1, 0), (n, n)),
        };
        let (ker, coker) = with_ring!(coeff, ring => ker_coker(ring, &p.differential(src), &orders(p, src), &orders(p, tgt)))?;
        let ok = p.target(src) == tgt
            && match variant {
                Variant::Cohomeology => coker.is_zero() && ker == g,
                Variant::Homeology => ker.is_zero() && coker == g,
            };
        checks.push(format!("{name} page {n} corner map"), ok, format!("kernel {ker}, cokernel {coker}"));
        let last = &pages[n as usize + 1];
        let nz: Vec<(Bidegree, AbelianGroupPresentation)> = last.nonzero().map(|(b, x)| (b, x.clone())).collect();
        checks.push(format!("{name} page {} is G at ({n},{n})", n + 1), nz == vec![((n, n), g.clone())], format!("{nz:?}"));
    }
    Ok(CmReport { dimension: n, cohen_macaulay: true, checks })
}

/// Row `t = n` of page 1 against the relative (co)homology of `(K, ∂K)` for an orientable manifold with boundary.
pub fn check_lefschetz_remark(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    k.coherent_orientation()?;
    let boundary = k.pseudomanifold_boundary()?;
    let n = k.dim();
    let rel_h = homology(&relative_complex(k, &boundary, Direction::Homological)?, coeff)?;
    let rel_c = homology(&relative_complex(k, &boundary, Direction::Cohomological)?, coeff)?;
    let coh = SpectralSequence::new(&build(k, Variant::Cohomeology, true), coeff).page(1)?;
    let hom = SpectralSequence::new(&build(k, Variant::Homeology, true), coeff).page(1)?;
    let mut report = CheckReport::default();
    for kk in 0..=n {
        let want = rel_h.get(&kk).cloned().unwrap_or_default();
        let got = coh.group((kk, n));
        report.push(format!("cohomeology ({kk},{n}) = H_{kk}(M,∂M)"), got == want, format!("{got} vs {want}"));
        let want = rel_c.get(&kk).cloned().unwrap_or_default();
        let got = hom.group((kk, n));
        report.push(format!("homeology ({kk},{n}) = H^{kk}(M,∂M)"), got == want, format!("{got} vs {want}"));
    }
    Ok(report)
}
