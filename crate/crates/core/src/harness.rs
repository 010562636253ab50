//! Seeded random complexes and the verification drivers used by `verify`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::{build, Variant};
use crate::blocks::{check_block_page0, compare_with_host, product_block_complex, subdivision_block_complex, trivial_block_complex};
use crate::chains::{chain_complex, cochain_complex, homology};
use crate::complex::{Simplex, SimplicialComplex};
use crate::exact_algebra::{AbelianGroupPresentation, Coefficients};
use crate::fixtures;
use crate::morphisms::{check_solid, induced_page_map_between, Pages, SolidMap};
use crate::spectral::{
    check_cm_structure, check_lefschetz_remark, check_page0_links, check_page_recursion, check_reduced_unreduced_sequence,
    limit, view, CheckReport, SpectralSequence,
};
use crate::Result;

pub const VARIANTS: [Variant; 2] = [Variant::Cohomeology, Variant::Homeology];

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// A complex on at most `max_vertices` vertices with facets of dimension at most `max_dim`; every vertex is used.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let mut all: Vec<u32> = (0..n as u32).collect();
    let mut facets = Vec::new();
    for _ in 0..rng.gen_range(1..=n + 1) {
        all.shuffle(rng);
        let size = rng.gen_range(1..=(max_dim + 1).min(n));
        facets.push(Simplex::new(all[..size].to_vec()));
    }
    let used: BTreeSet<u32> = facets.iter().flat_map(|f| f.vertices().to_vec()).collect();
    facets.extend((0..n as u32).filter(|v| !used.contains(v)).map(Simplex::vertex));
    SimplicialComplex::from_index_facets(names(n), facets)
}

/// A connected graph on `n ≥ 2` vertices: a random spanning tree plus random extra edges.
pub fn random_graph(rng: &mut impl Rng, n: usize) -> SimplicialComplex {
    let mut edges = BTreeSet::new();
    for v in 1..n as u32 {
        edges.insert(Simplex::new(vec![rng.gen_range(0..v), v]));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (a, b) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        if a != b {
            edges.insert(Simplex::new(vec![a, b]));
        }
    }
    SimplicialComplex::from_index_facets(names(n), edges.into_iter().collect())
}

/// Up to `len` stellar subdivisions at random simplices of positive dimension; returns the result and the subdivided simplices.
pub fn random_subdivisions(rng: &mut impl Rng, k: &SimplicialComplex, len: usize) -> Result<(SimplicialComplex, Vec<String>)> {
    let mut k = k.clone();
    let mut path = Vec::new();
    for step in 0..len {
        let candidates: Vec<Simplex> = k.all_simplices().filter(|s| s.dim() >= 1).cloned().collect();
        let Some(sigma) = candidates.choose(rng) else { break };
        path.push(k.format_simplex(sigma));
        k = k.stellar_subdivide(sigma, &format!("n{step}"))?;
    }
    Ok((k, path))
}

/// A triangulated 2-sphere or 2-disk obtained from `∂Δ³` or `Δ²` by a few random subdivisions.
pub fn random_cm_surface(rng: &mut impl Rng) -> Result<SimplicialComplex> {
    let base = if rng.gen_bool(0.5) { fixtures::sphere(2) } else { fixtures::disk(2) };
    let len = rng.gen_range(1..=3);
    Ok(random_subdivisions(rng, &base, len)?.0)
}

/// A composable pair: inclusion of a random subcomplex followed by a random relabelling.
pub fn random_solid_pair(rng: &mut impl Rng) -> Result<(SolidMap, SolidMap)> {
    let k = random_complex(rng, 6, 2);
    let facets = k.facets();
    let keep: Vec<Simplex> = facets.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    let keep = if keep.is_empty() { vec![facets[0].clone()] } else { keep };
    let sub = k.subcomplex(&keep.iter().flat_map(|f| f.subsets()).filter(|s| !s.is_empty()).collect());
    let inclusion = SolidMap::inclusion(&sub, &k)?;
    let mut order: Vec<u32> = (0..k.num_vertices() as u32).collect();
    order.shuffle(rng);
    let relabelled = k.reorder(&order)?;
    let mut map = vec![0u32; order.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old as usize] = new as u32;
    }
    Ok((inclusion, check_solid(&k, &relabelled, map)?))
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Cohomeology => "cohomeology",
        Variant::Homeology => "homeology",
    }
}

/// Pages `1..=upto` of `k` and `l` agree entry by entry in every variant.
pub fn compare_pages(k: &SimplicialComplex, l: &SimplicialComplex, coeff: Coefficients, upto: usize) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for variant in VARIANTS {
        for reduced in [true, false] {
            let a = SpectralSequence::new(&build(k, variant, reduced), coeff);
            let b = SpectralSequence::new(&build(l, variant, reduced), coeff);
            for r in 1..=upto {
                let (pa, pb) = (a.page(r)?, b.page(r)?);
                let keys: BTreeSet<_> = pa.groups.keys().chain(pb.groups.keys()).copied().collect();
                let bad: Vec<String> = keys
                    .into_iter()
                    .filter(|&x| pa.group(x) != pb.group(x))
                    .map(|x| format!("{x:?}: {} vs {}", pa.group(x), pb.group(x)))
                    .collect();
                let red = if reduced { "reduced " } else { "" };
                report.push(format!("{red}{} page {r} {coeff}", variant_name(variant)), bad.is_empty(), bad.join("; "));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialLog {
    pub trial: usize,
    pub vertices: usize,
    pub dim: i32,
    pub subdivided: Vec<String>,
    pub report: CheckReport,
}

impl TrialLog {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Runs `f` on trials `0..trials` with at most `threads` workers; results come back in trial order.
pub fn run_trials<T: Send>(trials: usize, threads: Option<usize>, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    let run = || (0..trials).into_par_iter().map(&f).collect();
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(run),
        None => run(),
    }
}

/// Worker cap from `HOMEOLAB_THREADS`.
pub fn thread_cap() -> Option<usize> {
    std::env::var("HOMEOLAB_THREADS").ok().and_then(|v| v.parse().ok())
}

/// Random complexes against random subdivision chains: pages 1..=3 in all variants over `Z`, `Q` and `Z/2`.
pub fn verify_invariance(seed: u64, trials: usize, threads: Option<usize>) -> Result<Vec<TrialLog>> {
    run_trials(trials, threads, |trial| {
        let mut rng = rng(seed, trial as u64);
        let k = random_complex(&mut rng, 8, 3);
        let len = rng.gen_range(1..=3);
        let (l, subdivided) = random_subdivisions(&mut rng, &k, len)?;
        let mut report = CheckReport::default();
        for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
            report.absorb("", compare_pages(&k, &l, coeff, 3)?);
        }
        Ok(TrialLog { trial, vertices: k.num_vertices(), dim: k.dim(), subdivided, report })
    })
    .into_iter()
    .collect()
}

/// Limits of the spectral sequences: (co)homology of `K` when unreduced, `G` in degree 0 when reduced.
pub fn check_convergence(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let g = view(coeff, AbelianGroupPresentation::free(1));
    for variant in VARIANTS {
        let oracle = match variant {
            Variant::Cohomeology => homology(&cochain_complex(k, false), coeff)?,
            Variant::Homeology => homology(&chain_complex(k, false), coeff)?,
        };
        let un = limit(&build(k, variant, false), coeff)?;
        let degrees: BTreeSet<i32> = oracle.keys().chain(un.groups.keys()).copied().collect();
        let bad: Vec<String> = degrees
            .into_iter()
            .filter(|&n| un.group(n) != oracle.get(&n).cloned().unwrap_or_default())
            .map(|n| format!("degree {n}: {} vs {}", un.group(n), oracle.get(&n).cloned().unwrap_or_default()))
            .collect();
        report.push(format!("{} limit = (co)homology", variant_name(variant)), bad.is_empty(), bad.join("; "));
        let red = limit(&build(k, variant, true), coeff)?;
        let bad: Vec<String> = red
            .groups
            .iter()
            .filter(|(&n, x)| if n == 0 { **x != g } else { !x.is_zero() })
            .map(|(n, x)| format!("degree {n}: {x}"))
            .collect();
        let ok = bad.is_empty() && red.group(0) == g;
        report.push(format!("reduced {} limit = G at 0", variant_name(variant)), ok, bad.join("; "));
        let free = |x: &AbelianGroupPresentation| x.free_rank;
        let stable: Vec<String> = un
            .groups
            .iter()
            .filter(|(n, x)| free(&un.stable_sum.get(n).cloned().unwrap_or_default()) != free(x))
            .map(|(n, _)| format!("degree {n}"))
            .collect();
        report.push(format!("{} stable page ranks", variant_name(variant)), stable.is_empty(), stable.join(", "));
    }
    Ok(report)
}

/// Page 0 against link cohomology, the page recursion and the reduced/unreduced sequences.
pub fn check_page0(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    report.absorb("page 0: ", check_page0_links(k, coeff)?);
    for variant in VARIANTS {
        for reduced in [true, false] {
            report.absorb(&format!("{} recursion: ", variant_name(variant)), check_page_recursion(&build(k, variant, reduced), coeff, 4)?);
        }
    }
    Ok(report)
}

pub fn check_sequences(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for n in -1..=k.dim() {
        report.absorb("", check_reduced_unreduced_sequence(k, coeff, n)?);
    }
    Ok(report)
}

/// Trivial, subdivision and product block complexes of `k` against `k`.
pub fn check_blocks(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let trivial = trivial_block_complex(k);
    report.absorb("trivial: ", compare_with_host(&trivial, coeff, 3)?);
    report.absorb("trivial page 0: ", check_block_page0(&trivial, coeff)?);
    if let Some(top) = k.facets().into_iter().find(|f| f.dim() >= 1) {
        let sub = subdivision_block_complex(k, &top, "b*")?;
        report.absorb("subdivision: ", compare_with_host(&sub, coeff, 3)?);
        report.absorb("subdivision page 0: ", check_block_page0(&sub, coeff)?);
    }
    let i = trivial_block_complex(&crate::complex::generate(crate::complex::Generator::Simplex(1))?);
    let product = product_block_complex(&trivial, &i)?;
    report.absorb("product: ", compare_with_host(&product, coeff, 3)?);
    report.absorb("product page 0: ", check_block_page0(&product, coeff)?);
    Ok(report)
}

pub fn check_cm(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    let cm = check_cm_structure(k, coeff)?;
    let mut report = CheckReport::default();
    report.push("Cohen–Macaulay", cm.cohen_macaulay, format!("dimension {}", cm.dimension));
    report.absorb("", cm.checks);
    Ok(report)
}

pub fn check_lefschetz(k: &SimplicialComplex, coeff: Coefficients) -> Result<CheckReport> {
    check_lefschetz_remark(k, coeff)
}

fn only(page: &crate::spectral::SpectralPage, want: &[((i32, i32), AbelianGroupPresentation)]) -> (bool, String) {
    let got: Vec<_> = page.nonzero().map(|(b, g)| (b, g.clone())).collect();
    (got == want, got.iter().map(|(b, g)| format!("{b:?}={g}")).collect::<Vec<_>>().join(", "))
}

/// Every closed-form table and worked example: disks and spheres, pure graphs, glued disks,
/// `SS¹ ∨ SS¹` against `C₃S¹`, the map example and the cylinder product.
pub fn verify_fixtures() -> Result<CheckReport> {
    let z = Coefficients::Z;
    let g = AbelianGroupPresentation::free(1);
    let mut report = CheckReport::default();
    for n in 1..=4 {
        for (name, k) in [("D", fixtures::disk(n)), ("S", fixtures::sphere(n))] {
            let ss = SpectralSequence::new(&build(&k, Variant::Cohomeology, true), z);
            for r in 1..=n + 2 {
                let (ok, detail) = only(&*ss.page(r)?, &[((n as i32, n as i32), g.clone())]);
                report.push(format!("{name}^{n} reduced page {r}"), ok, detail);
            }
        }
    }
    let (d2, d3) = (
        SpectralSequence::new(&build(&fixtures::disk(2), Variant::Cohomeology, true), z),
        SpectralSequence::new(&build(&fixtures::disk(3), Variant::Cohomeology, true), z),
    );
    report.push("D^2 and D^3 are told apart", !d2.page(1)?.same_groups(&*d3.page(1)?), "");
    for n in [3, 4, 5] {
        let k = crate::complex::generate(crate::complex::Generator::Cycle(n))?;
        let ss = SpectralSequence::new(&build(&k, Variant::Cohomeology, true), z);
        let (ok, detail) = only(&*ss.page(1)?, &[((1, 1), g.clone())]);
        report.push(format!("cycle {n} reduced page 1"), ok, detail);
    }
    for (m, n, k) in [(2, 2, 0), (3, 3, 1), (3, 4, 1), (2, 3, 1)] {
        let page = SpectralSequence::new(&build(&fixtures::glued_disks(m, n, k)?, Variant::Cohomeology, false), z).page(1)?;
        let (ok, detail) = only(&page, &glued_table(m as i32, n as i32, k as i32));
        report.push(format!("D^{m} ∪ D^{n} along D^{k}"), ok, detail);
    }
    let wedge = SpectralSequence::new(&build(&fixtures::wedge_of_suspensions(&fixtures::sphere(1))?, Variant::Cohomeology, true), z).page(1)?;
    let cone = SpectralSequence::new(&build(&fixtures::sphere(1).cone_n(3)?, Variant::Cohomeology, true), z).page(1)?;
    report.push("SS¹ ∨ SS¹ at (2,2)", wedge.group((2, 2)) == AbelianGroupPresentation::free(2), wedge.group((2, 2)).to_string());
    report.push("C₃S¹ at (2,2)", cone.group((2, 2)) == g, cone.group((2, 2)).to_string());
    report.absorb("graph maps: ", check_graph_example()?);
    report.absorb("cylinder page 1: ", fixtures::check_cylinder_product(1)?);
    Ok(report)
}

/// Nonzero entries of page 1 of `D^m ∪_{D^k} D^n`, all `Z`.
pub fn glued_table(m: i32, n: i32, k: i32) -> Vec<((i32, i32), AbelianGroupPresentation)> {
    let mut out: std::collections::BTreeMap<(i32, i32), usize> = Default::default();
    if k + 1 < m.min(n) {
        for b in [(m, m), (n, n), (k, k + 1)] {
            *out.entry(b).or_default() += 1;
        }
    } else if k + 1 == m && m <= n {
        out.insert((n, n), 1);
    }
    out.into_iter().map(|(b, r)| (b, AbelianGroupPresentation::free(r))).collect()
}

/// `f`, `g` solid and `(g f)_*` the identity on page 1 of `X`.
pub fn check_graph_example() -> Result<CheckReport> {
    let (f, g) = fixtures::example_maps();
    let mut report = CheckReport::default();
    report.push("f solid", check_solid(&f.source, &f.target, f.vertex_map.clone()).is_ok(), "");
    report.push("g solid", check_solid(&g.source, &g.target, g.vertex_map.clone()).is_ok(), "");
    let gf = f.then(&g)?;
    let x = Pages::new(&f.source, Variant::Homeology, false, Coefficients::Z);
    let y = Pages::new(&f.target, Variant::Homeology, false, Coefficients::Z);
    let (mf, mg, mgf) = (
        induced_page_map_between(&f, &x, &y, 1)?,
        induced_page_map_between(&g, &y, &x, 1)?,
        induced_page_map_between(&gf, &x, &x, 1)?,
    );
    report.push("(gf)_* = g_* f_*", mgf.same_as(&mg.after(&mf, &x, &y, &x)?, &x, &x)?, "");
    report.push("(gf)_* = 1 on page 1", mgf.is_identity(&x)?, "");
    Ok(report)
}

/// Identity and composition laws for a pair of composable solid maps, in both variances, pages `0..=upto`.
pub fn check_functoriality(f: &SolidMap, g: &SolidMap, coeff: Coefficients, upto: usize) -> Result<CheckReport> {
    let gf = f.then(g)?;
    let mut report = CheckReport::default();
    for variant in VARIANTS {
        let name = variant_name(variant);
        let pages: Vec<Pages> = [&f.source, &f.target, &g.target].iter().map(|k| Pages::new(k, variant, false, coeff)).collect();
        for r in 0..=upto {
            for (i, k) in [&f.source, &f.target].into_iter().enumerate() {
                let id = induced_page_map_between(&SolidMap::identity(k), &pages[i], &pages[i], r)?;
                report.push(format!("{name} page {r}: identity law {i}"), id.is_identity(&pages[i])?, "");
            }
            let (a, b, c) = (&pages[0], &pages[1], &pages[2]);
            let ok = match variant {
                Variant::Homeology => {
                    let (mf, mg, mgf) =
                        (induced_page_map_between(f, a, b, r)?, induced_page_map_between(g, b, c, r)?, induced_page_map_between(&gf, a, c, r)?);
                    mgf.same_as(&mg.after(&mf, a, b, c)?, a, c)? && mf.commutes(a, b)?
                }
                Variant::Cohomeology => {
                    let (mf, mg, mgf) =
                        (induced_page_map_between(f, b, a, r)?, induced_page_map_between(g, c, b, r)?, induced_page_map_between(&gf, c, a, r)?);
                    mgf.same_as(&mf.after(&mg, c, b, a)?, c, a)? && mf.commutes(b, a)?
                }
            };
            report.push(format!("{name} page {r}: composite law"), ok, "");
        }
    }
    Ok(report)
}
