mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{boundary, integer_homology, simplicial_homology, Fp, PairComplex, Qf, Simp, Toy};
use homeolab::bicomplex::{build, Bidegree, Variant};
use homeolab::complex::{generate, Generator, Simplex, SimplicialComplex};
use homeolab::exact_algebra::{AbelianGroupPresentation, Coefficients, Int};
use homeolab::fixtures;
use homeolab::harness::{random_complex, rng};
use homeolab::spectral::{
    check_cm_structure, check_lefschetz_remark, check_page0_links, check_page_recursion, check_reduced_unreduced_sequence, limit,
    SpectralSequence,
};
use homeolab::Error;
use proptest::prelude::*;

fn nonzero(groups: &BTreeMap<Bidegree, AbelianGroupPresentation>) -> BTreeMap<Bidegree, AbelianGroupPresentation> {
    groups.iter().filter(|(_, g)| !g.is_zero()).map(|(b, g)| (*b, g.clone())).collect()
}

fn dims(groups: &BTreeMap<Bidegree, AbelianGroupPresentation>) -> BTreeMap<Bidegree, usize> {
    groups.iter().filter(|(_, g)| g.free_rank > 0).map(|(b, g)| (*b, g.free_rank)).collect()
}

fn pages(k: &SimplicialComplex, variant: Variant, reduced: bool, coeff: Coefficients, upto: usize) -> Vec<BTreeMap<Bidegree, AbelianGroupPresentation>> {
    let ss = SpectralSequence::new(&build(k, variant, reduced), coeff);
    (0..=upto).map(|r| nonzero(&ss.page(r).unwrap().groups)).collect()
}

fn z() -> AbelianGroupPresentation {
    AbelianGroupPresentation::free(1)
}

/// `H^n` from integral homology: free part of `H_n` plus torsion of `H_{n-1}`.
fn cohomology_from_homology(h: &BTreeMap<i32, AbelianGroupPresentation>) -> BTreeMap<i32, AbelianGroupPresentation> {
    h.iter()
        .map(|(&n, g)| {
            let tors = h.get(&(n - 1)).map_or_else(Vec::new, |p| p.torsion.clone());
            (n, AbelianGroupPresentation::from_cyclic(g.free_rank, &tors))
        })
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

fn link_toy(k: &Toy, sigma: &[u32]) -> Toy {
    Toy { vertices: k.vertices, simplices: k.link(sigma) }
}

fn oracle_fixtures() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("point", generate(Generator::Point).unwrap()),
        ("points3", generate(Generator::Points(3)).unwrap()),
        ("edge", generate(Generator::Simplex(1)).unwrap()),
        ("circle", fixtures::sphere(1)),
        ("path3", generate(Generator::Path(3)).unwrap()),
        ("disk2", fixtures::disk(2)),
        ("cycle5", generate(Generator::Cycle(5)).unwrap()),
        ("sphere2", fixtures::sphere(2)),
        ("square", fixtures::square()),
    ]
}

fn compare_with_filtration(name: &str, k: &SimplicialComplex, upto: usize, with_q: bool) {
    let toy = Toy::of(k);
    for reduced in [false, true] {
        let pc = PairComplex::new(&toy, reduced);
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            let over_z = pages(k, variant, reduced, Coefficients::Z, upto);
            let over_2 = pages(k, variant, reduced, Coefficients::Zp(2), upto);
            let over_3 = pages(k, variant, reduced, Coefficients::Zp(3), upto);
            for r in 0..=upto {
                let tag = format!("{name} {variant:?} reduced={reduced} r={r}");
                assert_eq!(dims(&over_2[r]), pc.page_dims(&Fp(2), variant, r), "{tag} over Z/2");
                assert_eq!(dims(&over_3[r]), pc.page_dims(&Fp(3), variant, r), "{tag} over Z/3");
                if with_q {
                    let q = pc.page_dims(&Qf, variant, r);
                    assert_eq!(dims(&over_z[r]), q, "{tag} rank over Z");
                    let over_q = pages(k, variant, reduced, Coefficients::Q, r);
                    assert_eq!(dims(&over_q[r]), q, "{tag} over Q");
                }
            }
        }
    }
}

#[test]
fn pages_match_filtration_oracle() {
    for (name, k) in oracle_fixtures() {
        compare_with_filtration(name, &k, 3, true);
    }
    compare_with_filtration("annulus", &fixtures::annulus(), 3, false);
}

#[test]
fn disks_spheres_and_cycles() {
    for n in 1..=3 {
        for k in [fixtures::disk(n), fixtures::sphere(n)] {
            for variant in [Variant::Cohomeology, Variant::Homeology] {
                let p = pages(&k, variant, true, Coefficients::Z, n + 2);
                for r in 1..=n + 2 {
                    let want = BTreeMap::from([((n as i32, n as i32), z())]);
                    assert_eq!(p[r], want, "n={n} r={r} {variant:?}");
                }
            }
        }
    }
    let k = generate(Generator::Cycle(5)).unwrap();
    for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
        let p = pages(&k, Variant::Cohomeology, true, coeff, 3);
        for r in 1..=3 {
            assert_eq!(p[r], BTreeMap::from([((1, 1), z())]));
        }
    }
}

/// Page 0 of the reduced bicomplexes against `⊕_{dim σ = s}` of the link (co)homology, over `Z`.
fn page0_from_links(k: &SimplicialComplex) {
    let toy = Toy::of(k);
    let mut co: BTreeMap<Bidegree, AbelianGroupPresentation> = BTreeMap::new();
    let mut ho: BTreeMap<Bidegree, AbelianGroupPresentation> = BTreeMap::new();
    for sigma in &toy.simplices {
        let s = sigma.len() as i32 - 1;
        let h = simplicial_homology(&link_toy(&toy, sigma), true);
        for (t, g) in cohomology_from_homology(&h) {
            let e = co.entry((s, s + t + 1)).or_insert_with(AbelianGroupPresentation::zero);
            *e = e.direct_sum(&g);
        }
        for (t, g) in h.into_iter().filter(|(_, g)| !g.is_zero()) {
            let e = ho.entry((s, s + t + 1)).or_insert_with(AbelianGroupPresentation::zero);
            *e = e.direct_sum(&g);
        }
    }
    assert_eq!(pages(k, Variant::Cohomeology, true, Coefficients::Z, 0)[0], co);
    assert_eq!(pages(k, Variant::Homeology, true, Coefficients::Z, 0)[0], ho);
}

#[test]
fn page0_is_link_cohomology() {
    for (name, k) in oracle_fixtures() {
        page0_from_links(&k);
        for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
            let r = check_page0_links(&k, coeff).unwrap();
            assert!(r.passed(), "{name} {coeff}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
    // ∂Δ², unreduced: three vertices each with link S⁰
    let p = pages(&fixtures::sphere(1), Variant::Cohomeology, false, Coefficients::Z, 0);
    assert_eq!(p[0][&(0, 1)], AbelianGroupPresentation::free(3));
    // the only nonacyclic link of a point is {φ} below the vertex
    let p = pages(&generate(Generator::Point).unwrap(), Variant::Cohomeology, true, Coefficients::Z, 0);
    assert_eq!(p[0], BTreeMap::from([((0, 0), z())]));
    // reduced and unreduced differ only on the σ = φ column and the vertex column
    for (_, k) in oracle_fixtures() {
        let (u, r) = (pages(&k, Variant::Cohomeology, false, Coefficients::Z, 0), pages(&k, Variant::Cohomeology, true, Coefficients::Z, 0));
        let far = |m: &BTreeMap<Bidegree, AbelianGroupPresentation>| -> BTreeMap<Bidegree, AbelianGroupPresentation> {
            m.iter().filter(|((s, _), _)| *s > 0).map(|(b, g)| (*b, g.clone())).collect()
        };
        assert_eq!(far(&u[0]), far(&r[0]));
    }
}

#[test]
fn page_recursion() {
    let mut ks = oracle_fixtures();
    ks.push(("annulus", fixtures::annulus()));
    for (name, k) in ks {
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for reduced in [false, true] {
                for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
                    let rep = check_page_recursion(&build(&k, variant, reduced), coeff, 4).unwrap();
                    assert!(rep.passed(), "{name} {variant:?} {reduced} {coeff}: {:?}", rep.failures().collect::<Vec<_>>());
                }
            }
        }
    }
}

fn reduce(x: &Int, order: &Int, coeff: Coefficients) -> bool {
    match coeff {
        Coefficients::Zp(p) => x.rem_euclid_u64(p) == 0,
        _ if order.is_zero() => x.is_zero(),
        _ => order.divides(x),
    }
}

#[test]
fn differentials_compose_to_zero() {
    for k in [fixtures::disk(2), fixtures::sphere(2), fixtures::annulus(), fixtures::square()] {
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for coeff in [Coefficients::Z, Coefficients::Zp(2), Coefficients::Zp(3)] {
                let ss = SpectralSequence::new(&build(&k, variant, true), coeff);
                for r in 0..4 {
                    let p = ss.page(r).unwrap();
                    for &b in p.groups.keys() {
                        let (t1, t2) = (p.target(b), p.target(p.target(b)));
                        let (f, g) = (p.differential(b), p.differential(t1));
                        assert_eq!(f.rows(), p.orders.get(&t1).map_or(0, Vec::len));
                        let orders = p.orders.get(&t2).cloned().unwrap_or_default();
                        for j in 0..f.cols() {
                            for (i, order) in orders.iter().enumerate() {
                                let mut acc = Int::from(0i64);
                                for m in 0..f.rows() {
                                    if let (Some(a), Some(c)) = (g.get(i, m), f.get(m, j)) {
                                        acc = &acc + &(a * c);
                                    }
                                }
                                assert!(reduce(&acc, order, coeff), "r={r} {b:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn limits() {
    let mut ks = oracle_fixtures();
    ks.push(("annulus", fixtures::annulus()));
    ks.push(("wedge", fixtures::wedge_of_suspensions(&fixtures::sphere(1)).unwrap()));
    for (name, k) in ks {
        let toy = Toy::of(&k);
        let want = cohomology_from_homology(&simplicial_homology(&toy, false));
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            let l = limit(&build(&k, variant, false), Coefficients::Z).unwrap();
            let got: BTreeMap<i32, AbelianGroupPresentation> = l.groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
            let want = match variant {
                Variant::Cohomeology => want.clone(),
                Variant::Homeology => simplicial_homology(&toy, false).into_iter().filter(|(_, g)| !g.is_zero()).collect(),
            };
            assert_eq!(got, want, "{name} {variant:?}");
            let l = limit(&build(&k, variant, true), Coefficients::Z).unwrap();
            let got: BTreeMap<i32, AbelianGroupPresentation> = l.groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
            assert_eq!(got, BTreeMap::from([(0, z())]), "{name} {variant:?} reduced");
            assert_eq!(nonzero_sum(&l.stable_sum), BTreeMap::from([(0, z())]));
        }
    }
    let l = limit(&build(&generate(Generator::Cycle(4)).unwrap(), Variant::Cohomeology, false), Coefficients::Zp(2)).unwrap();
    let got: BTreeMap<i32, AbelianGroupPresentation> = l.groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
    assert_eq!(got, BTreeMap::from([(0, z()), (1, z())]));
}

fn nonzero_sum(m: &BTreeMap<i32, AbelianGroupPresentation>) -> BTreeMap<i32, AbelianGroupPresentation> {
    m.iter().filter(|(_, g)| !g.is_zero()).map(|(n, g)| (*n, g.clone())).collect()
}

#[test]
fn four_term_sequences() {
    for (name, k) in oracle_fixtures() {
        for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
            for n in 0..=k.dim() + 1 {
                let rep = check_reduced_unreduced_sequence(&k, coeff, n).unwrap();
                assert!(rep.passed(), "{name} {coeff} n={n}: {:?}", rep.failures().collect::<Vec<_>>());
            }
        }
        // independent rank count over Q on page 1
        let toy = Toy::of(&k);
        let (red, unred) = (PairComplex::new(&toy, true), PairComplex::new(&toy, false));
        let (a, b) = (red.page_dims(&Qf, Variant::Cohomeology, 1), unred.page_dims(&Qf, Variant::Cohomeology, 1));
        let h = simplicial_homology(&toy, true);
        for n in 0..=k.dim() {
            let get = |m: &BTreeMap<Bidegree, usize>, b: Bidegree| *m.get(&b).unwrap_or(&0) as i64;
            let c = h.get(&n).map_or(0, |g| g.free_rank as i64);
            assert_eq!(get(&a, (0, n)) - get(&b, (0, n)) + c - get(&a, (-1, n)), 0, "{name} n={n}");
            for s in 1..=k.dim() {
                assert_eq!(get(&a, (s, n)), get(&b, (s, n)));
            }
        }
    }
    // points(3), n = 0: the middle term is H̃⁰ = Z²
    let k = generate(Generator::Points(3)).unwrap();
    assert_eq!(simplicial_homology(&Toy::of(&k), true)[&0], AbelianGroupPresentation::free(2));
}

/// CM of dimension `dim K` over `coeff`, decided from the link homology of every simplex.
fn cm_oracle(k: &Toy, p: Option<u64>) -> bool {
    let n = k.dim();
    k.simplices.iter().all(|sigma| {
        let h = simplicial_homology(&link_toy(k, sigma), true);
        let want = n - (sigma.len() as i32 - 1) - 1;
        let lo: i32 = -1;
        (lo..=n).filter(|&t| t != want).all(|t| {
            let g = h.get(&t).cloned().unwrap_or_else(AbelianGroupPresentation::zero);
            let prev = h.get(&(t - 1)).cloned().unwrap_or_else(AbelianGroupPresentation::zero);
            match p {
                None => g.free_rank == 0 && prev.torsion.is_empty(),
                Some(p) => g.dim_mod(p) == 0 && prev.dim_mod(p) - prev.free_rank == 0,
            }
        })
    })
}

#[test]
fn cohen_macaulay() {
    for k in [fixtures::disk(3), fixtures::sphere(2), generate(Generator::Points(4)).unwrap(), generate(Generator::Cycle(5)).unwrap()] {
        for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
            let rep = check_cm_structure(&k, coeff).unwrap();
            assert!(rep.cohen_macaulay && rep.passed(), "{coeff}: {:?}", rep.checks.failures().collect::<Vec<_>>());
            assert_eq!(rep.dimension, k.dim());
        }
    }
    let p = pages(&generate(Generator::Points(4)).unwrap(), Variant::Cohomeology, true, Coefficients::Z, 1);
    assert_eq!(p[1], BTreeMap::from([((0, 0), z())]));
    let bad = generate(Generator::Point).unwrap().disjoint_union(&renamed(&generate(Generator::Simplex(1)).unwrap(), "e")).unwrap();
    let rep = check_cm_structure(&bad, Coefficients::Z).unwrap();
    assert!(!rep.cohen_macaulay && rep.passed());
    assert!(!cm_oracle(&Toy::of(&bad), None));
    // the collapse on the filtration oracle over Q
    for k in [fixtures::disk(2), fixtures::sphere(2), generate(Generator::Cycle(5)).unwrap()] {
        let n = k.dim();
        let pc = PairComplex::new(&Toy::of(&k), true);
        for r in 1..n as usize {
            for (s, t) in pc.page_dims(&Qf, Variant::Cohomeology, r).keys() {
                assert!((*t == n && *s >= r as i32) || (*s == -1 && *t <= n - r as i32), "({s},{t}) on page {r}");
            }
        }
        assert_eq!(pc.page_dims(&Qf, Variant::Cohomeology, n as usize + 1), BTreeMap::from([((n, n), 1)]));
    }
}

/// The subcomplex generated by the codimension-one faces lying in exactly one facet.
fn boundary_toy(k: &Toy) -> Toy {
    let n = k.dim();
    let faces: Vec<Simp> = k.of_dim(n - 1).into_iter().filter(|f| k.of_dim(n).iter().filter(|t| f.iter().all(|v| t.contains(v))).count() == 1).collect();
    Toy::from_facets(0, &faces)
}

fn relative_ranks(k: &Toy, l: &Toy) -> BTreeMap<i32, usize> {
    let cells = |d: i32| -> Vec<Simp> { k.of_dim(d).into_iter().filter(|s| !l.simplices.contains(s)).collect() };
    let mat = |d: i32| -> Vec<Vec<i128>> {
        let (rows, cols) = (cells(d - 1), cells(d));
        let mut m = vec![vec![0i128; cols.len()]; rows.len()];
        for (j, c) in cols.iter().enumerate() {
            for (f, s) in boundary(c) {
                if let Some(i) = rows.iter().position(|r| *r == f) {
                    m[i][j] += s as i128;
                }
            }
        }
        m
    };
    (0..=k.dim()).map(|d| (d, integer_homology(&mat(d), &mat(d + 1), cells(d).len()).free_rank)).collect()
}

fn mobius() -> SimplicialComplex {
    let names: Vec<String> = (0..5).map(|i| format!("m{i}")).collect();
    let facets = [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]].iter().map(|f| Simplex::new(f.to_vec())).collect();
    SimplicialComplex::from_index_facets(names, facets)
}

#[test]
fn lefschetz() {
    for k in [fixtures::annulus(), fixtures::disk(2), fixtures::disk(3)] {
        for coeff in [Coefficients::Z, Coefficients::Q] {
            let rep = check_lefschetz_remark(&k, coeff).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
        let toy = Toy::of(&k);
        let n = toy.dim();
        let want = relative_ranks(&toy, &boundary_toy(&toy));
        let got = PairComplex::new(&toy, true).page_dims(&Fp(3), Variant::Cohomeology, 1);
        for kk in 0..=n {
            assert_eq!(*got.get(&(kk, n)).unwrap_or(&0), want[&kk], "({kk},{n})");
        }
    }
    let p = pages(&fixtures::annulus(), Variant::Cohomeology, true, Coefficients::Z, 1);
    assert_eq!((p[1].get(&(2, 2)), p[1].get(&(1, 2))), (Some(&z()), Some(&z())));
    assert!(matches!(check_lefschetz_remark(&mobius(), Coefficients::Z), Err(Error::NotOrientable(_))));
}

#[test]
fn join_shift() {
    let xs = [generate(Generator::Sphere(0)).unwrap(), fixtures::sphere(1), generate(Generator::Points(3)).unwrap()];
    for x in &xs {
        let base = pages(x, Variant::Cohomeology, true, Coefficients::Z, 3);
        for n in 1..=3 {
            let cone = pages(&x.cone_n(n).unwrap(), Variant::Cohomeology, true, Coefficients::Z, 3);
            for r in 1..=3 {
                let shifted: BTreeMap<Bidegree, AbelianGroupPresentation> =
                    base[r].iter().filter(|((s, t), _)| *s >= 0 && *t >= 0).map(|((s, t), g)| ((s + 1, t + 1), g.clone())).collect();
                assert_eq!(cone[r], shifted, "n={n} r={r}");
            }
        }
    }
}

#[test]
fn wedge_witness() {
    let w = pages(&fixtures::wedge_of_suspensions(&fixtures::sphere(1)).unwrap(), Variant::Cohomeology, true, Coefficients::Z, 1);
    assert_eq!(w[1].get(&(2, 2)), Some(&AbelianGroupPresentation::free(2)));
    let c = pages(&fixtures::sphere(1).cone_n(3).unwrap(), Variant::Cohomeology, true, Coefficients::Z, 1);
    assert_eq!(c[1].get(&(2, 2)), Some(&z()));
}

fn renamed(k: &SimplicialComplex, prefix: &str) -> SimplicialComplex {
    let names = (0..k.num_vertices()).map(|i| format!("{prefix}{i}")).collect();
    SimplicialComplex::from_index_facets(names, k.facets())
}

fn sum_pages(a: &BTreeMap<Bidegree, AbelianGroupPresentation>, b: &BTreeMap<Bidegree, AbelianGroupPresentation>) -> BTreeMap<Bidegree, AbelianGroupPresentation> {
    let keys: BTreeSet<Bidegree> = a.keys().chain(b.keys()).copied().collect();
    let zero = AbelianGroupPresentation::zero();
    keys.into_iter().map(|k| (k, a.get(&k).unwrap_or(&zero).direct_sum(b.get(&k).unwrap_or(&zero)))).collect()
}

#[test]
fn disjoint_union_sums() {
    for seed in 0..6 {
        let mut g = rng(seed, 7);
        let (k, l) = (random_complex(&mut g, 5, 2), renamed(&random_complex(&mut g, 4, 2), "w"));
        let u = k.disjoint_union(&l).unwrap();
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            let (pk, pl, pu) = (pages(&k, variant, false, Coefficients::Z, 3), pages(&l, variant, false, Coefficients::Z, 3), pages(&u, variant, false, Coefficients::Z, 3));
            for r in 0..=3 {
                assert_eq!(pu[r], sum_pages(&pk[r], &pl[r]), "seed {seed} r={r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_pages_match_filtration_oracle(seed in any::<u64>()) {
        let mut g = rng(seed, 8);
        let k = random_complex(&mut g, 5, 2);
        compare_with_filtration("random", &k, 2, true);
    }

    #[test]
    fn stellar_invariance(seed in any::<u64>()) {
        let mut g = rng(seed, 9);
        let k = random_complex(&mut g, 5, 2);
        let nonempty: Vec<Simplex> = k.all_simplices().filter(|s| !s.is_empty()).cloned().collect();
        let sigma = nonempty[(seed % nonempty.len() as u64) as usize].clone();
        let sk = k.stellar_subdivide(&sigma, "new").unwrap();
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for reduced in [false, true] {
                let (a, b) = (pages(&k, variant, reduced, Coefficients::Z, 3), pages(&sk, variant, reduced, Coefficients::Z, 3));
                for r in 1..=3 {
                    prop_assert_eq!(&a[r], &b[r], "r={} σ={:?}", r, sigma);
                }
            }
        }
    }

    #[test]
    fn cm_flag_matches_links(seed in any::<u64>()) {
        let mut g = rng(seed, 10);
        let k = random_complex(&mut g, 6, 2);
        let toy = Toy::of(&k);
        prop_assert_eq!(check_cm_structure(&k, Coefficients::Z).unwrap().cohen_macaulay, cm_oracle(&toy, None));
        prop_assert_eq!(check_cm_structure(&k, Coefficients::Zp(2)).unwrap().cohen_macaulay, cm_oracle(&toy, Some(2)));
    }
}
