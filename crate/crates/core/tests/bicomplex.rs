mod common;

use std::collections::HashMap;

use common::{prepend_sign, PairComplex, Simp, Toy};
use homeolab::bicomplex::{build, build_relative, to_link_form, BicomplexRep, Variant};
use homeolab::chains::Cell;
use homeolab::exact_algebra::IntMatrix;
use homeolab::complex::{generate, Generator, Simplex, SimplicialComplex};
use homeolab::fixtures;
use homeolab::harness::{random_complex, rng};
use proptest::prelude::*;

fn cell(c: &Cell) -> Simp {
    c.simplex().expect("simplicial pair").vertices().to_vec()
}

/// Sign of the permutation sorting `seq`.
fn sort_sign(seq: &[u32]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn at(m: &IntMatrix, i: usize, j: usize) -> i64 {
    m.get(i, j).map_or(0, |x| x.to_i64().unwrap())
}

fn sorted(mut v: Simp) -> Simp {
    v.sort();
    v
}

/// Every column of the engine's `Δ` (or `D`) against the pair complex written out in the test.
fn assert_matches_oracle(k: &SimplicialComplex, b: &BicomplexRep) {
    let oracle = PairComplex::new(&Toy::of(k), b.reduced);
    let index: HashMap<(Simp, Simp), usize> = oracle.basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let entry = |row: usize, col: usize| match b.variant {
        Variant::Cohomeology => oracle.delta[row][col],
        Variant::Homeology => oracle.delta[col][row],
    };
    let mut seen = 0;
    for (&bd, pairs) in &b.basis {
        seen += pairs.len();
        for (m, tb) in [(b.h(bd), b.h_target(bd)), (b.v(bd), b.v_target(bd))] {
            let targets = b.basis.get(&tb).cloned().unwrap_or_default();
            for (j, p) in pairs.iter().enumerate() {
                let col = index[&(cell(&p.sigma), cell(&p.tau))];
                for (i, q) in targets.iter().enumerate() {
                    let row = index[&(cell(&q.sigma), cell(&q.tau))];
                    assert_eq!(at(&m, i, j), entry(row, col), "{bd:?} → {tb:?}: {p:?} ↦ {q:?}");
                }
            }
        }
    }
    assert_eq!(seen, oracle.basis.len());
}

fn small_fixtures() -> Vec<SimplicialComplex> {
    vec![
        generate(Generator::Point).unwrap(),
        fixtures::sphere(1),
        fixtures::disk(2),
        fixtures::sphere(2),
        fixtures::square(),
        generate(Generator::Points(3)).unwrap(),
    ]
}

#[test]
fn point_reduced_basis() {
    let b = build(&generate(Generator::Point).unwrap(), Variant::Cohomeology, true);
    let pairs: Vec<(Simp, Simp)> = b.basis.values().flatten().map(|p| (cell(&p.sigma), cell(&p.tau))).collect();
    assert_eq!(pairs, vec![(vec![], vec![]), (vec![], vec![0]), (vec![0], vec![0])]);
    // φ⊗φ ↦ (−1)^{−1} φ⊗δ̃φ, v⊗v ↦ d̃v⊗v
    assert_eq!(at(&b.v((-1, -1)), 0, 0), -1);
    assert_eq!(at(&b.h((0, 0)), 0, 0), 1);
    assert!(b.v((-1, 0)).is_zero() && b.v((0, 0)).is_zero());
}

#[test]
fn matrices_match_defining_formula() {
    for k in small_fixtures() {
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for reduced in [false, true] {
                let b = build(&k, variant, reduced);
                assert!(b.check_axioms());
                assert_matches_oracle(&k, &b);
            }
        }
    }
}

#[test]
fn homeology_is_transpose() {
    for k in small_fixtures() {
        for reduced in [false, true] {
            let c = build(&k, Variant::Cohomeology, reduced);
            let h = build(&k, Variant::Homeology, reduced);
            assert_eq!(h.full_matrix(), c.full_matrix().transpose());
        }
    }
}

/// The displayed `D` on `[v_0..v_m]⊗[v_0..v_m, v_{m+1}..v_{m+n}]`, with the face sum weighted by
/// `(-1)^{m+j}` times `face_sign(m)`, as a map on canonical pairs.
fn displayed_d(k: &Toy, reduced: bool, face_sign: impl Fn(i64) -> i64) -> HashMap<((Simp, Simp), (Simp, Simp)), i64> {
    let oracle = PairComplex::new(k, reduced);
    let mut out = HashMap::new();
    for (sigma, tau) in &oracle.basis {
        let m = sigma.len() as i64 - 1;
        let rest: Simp = tau.iter().copied().filter(|v| !sigma.contains(v)).collect();
        let written: Simp = sigma.iter().chain(&rest).copied().collect();
        let src_sign = sort_sign(&written);
        for (j, v) in rest.iter().enumerate() {
            let j = j as i64 + 1;
            let face: Simp = written.iter().copied().filter(|u| u != v).collect();
            let coeff = src_sign * face_sign(m) * if (m + j) % 2 == 0 { 1 } else { -1 } * sort_sign(&face);
            *out.entry(((sigma.clone(), tau.clone()), (sigma.clone(), sorted(face)))).or_insert(0) += coeff;
            let bigger: Simp = std::iter::once(*v).chain(sigma.iter().copied()).collect();
            let coeff = src_sign * sort_sign(&bigger) * sort_sign(&written);
            *out.entry(((sigma.clone(), tau.clone()), (sorted(bigger), tau.clone()))).or_insert(0) += coeff;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn transpose_entries(k: &Toy, reduced: bool) -> HashMap<((Simp, Simp), (Simp, Simp)), i64> {
    let oracle = PairComplex::new(k, reduced);
    let mut out = HashMap::new();
    for (i, p) in oracle.basis.iter().enumerate() {
        for (j, q) in oracle.basis.iter().enumerate() {
            if oracle.delta[i][j] != 0 {
                out.insert((p.clone(), q.clone()), oracle.delta[i][j]);
            }
        }
    }
    out
}

#[test]
fn displayed_d_formula_with_sigma_sign_is_the_transpose() {
    for k in [fixtures::disk(2), fixtures::sphere(2)] {
        let toy = Toy::of(&k);
        let signed = displayed_d(&toy, false, |m| if m % 2 == 0 { 1 } else { -1 });
        assert_eq!(signed, transpose_entries(&toy, false));
        let engine = build(&k, Variant::Homeology, false);
        let total: usize = engine.full_matrix().triplets().count();
        assert_eq!(total, signed.len());
    }
}

#[test]
fn displayed_d_formula_without_sigma_sign_does_not_square_to_zero() {
    let toy = Toy::of(&fixtures::disk(2));
    let literal = displayed_d(&toy, false, |_| 1);
    let mut square: HashMap<((Simp, Simp), (Simp, Simp)), i64> = HashMap::new();
    for ((a, b), x) in &literal {
        for ((c, d), y) in &literal {
            if b == c {
                *square.entry((a.clone(), d.clone())).or_insert(0) += x * y;
            }
        }
    }
    assert!(square.values().any(|v| *v != 0));
}

#[test]
fn relative_bicomplexes() {
    let k = fixtures::sphere(2);
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        let r = build_relative(&k, &k, variant, false).unwrap();
        assert_eq!(r.basis.values().map(Vec::len).sum::<usize>(), 0);
        let e = SimplicialComplex::empty();
        assert_eq!(build_relative(&k, &e, variant, false).unwrap().full_matrix(), build(&k, variant, false).full_matrix());
        let reduced = build_relative(&k, &e, variant, true).unwrap();
        assert_eq!(reduced.rank((-1, -1)), 0);
        assert_eq!(reduced.rank((-1, 0)), build(&k, variant, true).rank((-1, 0)));
    }
}

/// Entries of `m` between the cells of `rel` at `bd` and at `tb`, read off inside `full`.
fn restricted(full: &BicomplexRep, rel: &BicomplexRep, m: &IntMatrix, bd: (i32, i32), tb: (i32, i32)) -> Vec<Vec<i64>> {
    let pos = |b| -> Vec<usize> { rel.basis.get(&b).into_iter().flatten().map(|p| full.index_of(p).unwrap()).collect() };
    let (cols, rows) = (pos(bd), pos(tb));
    rows.iter().map(|&i| cols.iter().map(|&j| at(m, i, j)).collect()).collect()
}

fn dense(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| at(m, i, j)).collect()).collect()
}

#[test]
fn relative_is_a_restriction_with_partitioned_ranks() {
    let k = fixtures::disk(3);
    let l = fixtures::sphere(2);
    let (tk, tl) = (Toy::of(&k), Toy::of(&l));
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        for reduced in [false, true] {
            let full = build(&k, variant, reduced);
            let sub = build(&l, variant, reduced);
            let rel = build_relative(&k, &l, variant, reduced).unwrap();
            for bd in full.bidegrees() {
                assert_eq!(full.rank(bd), sub.rank(bd) + rel.rank(bd), "{bd:?}");
                let in_l = full.basis[&bd].iter().filter(|p| tl.contains(&cell(&p.tau))).count();
                assert_eq!(in_l, sub.rank(bd));
                assert!(rel.basis.get(&bd).into_iter().flatten().all(|p| !tl.contains(&cell(&p.tau)) && tk.contains(&cell(&p.tau))));
                for (m, rm, tb) in [(full.h(bd), rel.h(bd), full.h_target(bd)), (full.v(bd), rel.v(bd), full.v_target(bd))] {
                    let want = restricted(&full, &rel, &m, bd, tb);
                    if !want.is_empty() && !want[0].is_empty() {
                        assert_eq!(dense(&rm), want, "{variant:?} {bd:?}");
                    }
                }
            }
            if variant == Variant::Cohomeology {
                // Δ never leaves the pairs with τ ∉ L
                for bd in full.bidegrees() {
                    for (m, tb) in [(full.h(bd), full.h_target(bd)), (full.v(bd), full.v_target(bd))] {
                        for (i, j, _) in m.triplets() {
                            let (src, dst) = (&full.basis[&bd][j], &full.basis[&tb][i]);
                            assert!(tl.contains(&cell(&src.tau)) || !tl.contains(&cell(&dst.tau)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn link_form_blocks() {
    for k in [fixtures::sphere(1), fixtures::disk(2), fixtures::sphere(2)] {
        let b = build(&k, Variant::Cohomeology, true);
        let lf = to_link_form(&b).unwrap();
        let toy = Toy::of(&k);
        for (&bd, m) in &lf.d_v {
            let src = &lf.labels[&bd];
            let Some(dst) = lf.labels.get(&b.v_target(bd)) else { continue };
            for (i, j, x) in m.triplets() {
                assert_eq!(dst[i].sigma, src[j].sigma, "vertical part mixes bases");
                // (−1)^{dim σ} times the reduced coboundary of link σ: [v, τ′] with its prepend sign
                let sigma = src[j].sigma.vertices();
                let (t0, t1) = (src[j].tau.vertices(), dst[i].tau.vertices());
                let v = *t1.iter().find(|v| !t0.contains(v)).unwrap();
                let s_sign = if (sigma.len() as i64 - 1).rem_euclid(2) == 0 { 1 } else { -1 };
                assert_eq!(x.to_i64().unwrap(), s_sign * prepend_sign(v, t0));
                assert!(toy.link(sigma).contains(&t1.to_vec()));
            }
        }
        // the conjugating signs are those of [τ′, σ] against the ascending order
        for (&bd, m) in &lf.d_h {
            let src = &lf.labels[&bd];
            let Some(dst) = lf.labels.get(&b.h_target(bd)) else { continue };
            let raw = b.h(bd);
            for (i, j, x) in m.triplets() {
                let sj = sort_sign(&src[j].tau.vertices().iter().chain(src[j].sigma.vertices()).copied().collect::<Vec<_>>());
                let si = sort_sign(&dst[i].tau.vertices().iter().chain(dst[i].sigma.vertices()).copied().collect::<Vec<_>>());
                assert_eq!(x.to_i64().unwrap(), si * sj * at(&raw, i, j));
            }
        }
        let phi = Simplex::empty();
        for t in -1..k.dim() {
            let pos_src = lf.positions((-1, t), &phi);
            assert_eq!(pos_src.len(), toy.of_dim(t).len());
        }
    }
    assert!(to_link_form(&build(&fixtures::sphere(1), Variant::Homeology, true)).is_err());
}

#[test]
fn rank_bookkeeping() {
    for k in small_fixtures() {
        let toy = Toy::of(&k);
        let b = build(&k, Variant::Cohomeology, true);
        for s in -1..=toy.dim() {
            for t in -1..=toy.dim() {
                let count: usize = toy.of_dim(s).iter().map(|sigma| toy.link(sigma).iter().filter(|x| x.len() as i32 - 1 == t).count()).sum();
                assert_eq!(b.rank((s, s + t + 1)), count, "({s}, {t})");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_bicomplexes_are_bicomplexes(seed in any::<u64>()) {
        let mut g = rng(seed, 2);
        let k = random_complex(&mut g, 7, 3);
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for reduced in [false, true] {
                let b = build(&k, variant, reduced);
                prop_assert!(b.check_axioms());
                let d = b.full_matrix();
                let n = d.rows();
                let dd = common::to_i128(&d);
                prop_assert!(common::dense_mul(&dd, &dd, n, n).iter().flatten().all(|x| *x == 0));
                assert_matches_oracle(&k, &b);
            }
        }
    }
}
