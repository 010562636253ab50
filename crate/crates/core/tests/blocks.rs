mod common;

use std::collections::BTreeMap;

use common::{boundary, simplicial_homology, Simp, Toy};
use homeolab::bicomplex::{build, Variant};
use homeolab::blocks::{
    block_complex_from_json, block_complex_to_json, check_block_page0, compare_with_host, product_block_complex,
    subdivision_block_complex, trivial_block_complex, Block, BlockComplex, ViolationKind,
};
use homeolab::chains::{chain_complex, homology};
use homeolab::complex::{generate, Generator, Simplex, SimplicialComplex};
use homeolab::exact_algebra::{AbelianGroupPresentation, Coefficients};
use homeolab::fixtures;
use homeolab::harness::{random_complex, rng};
use homeolab::spectral::SpectralSequence;
use proptest::prelude::*;

fn s(v: &[u32]) -> Simplex {
    Simplex::new(v.to_vec())
}

fn interval() -> SimplicialComplex {
    generate(Generator::Simplex(1)).unwrap()
}

fn certified() -> Vec<(String, BlockComplex)> {
    let i = trivial_block_complex(&interval());
    let c = trivial_block_complex(&fixtures::sphere(1));
    vec![
        ("trivial point".into(), trivial_block_complex(&generate(Generator::Point).unwrap())),
        ("trivial sphere2".into(), trivial_block_complex(&fixtures::sphere(2))),
        ("trivial square".into(), trivial_block_complex(&fixtures::square())),
        ("triangle at its face".into(), subdivision_block_complex(&generate(Generator::Simplex(2)).unwrap(), &s(&[0, 1, 2]), "c").unwrap()),
        ("circle at an edge".into(), subdivision_block_complex(&fixtures::sphere(1), &s(&[0, 1]), "m").unwrap()),
        ("sphere2 at a facet".into(), subdivision_block_complex(&fixtures::sphere(2), &s(&[0, 1, 2]), "c").unwrap()),
        ("sphere2 at an edge".into(), subdivision_block_complex(&fixtures::sphere(2), &s(&[1, 3]), "c").unwrap()),
        ("disk3 at a vertex".into(), subdivision_block_complex(&fixtures::disk(3), &s(&[2]), "c").unwrap()),
        ("interval squared".into(), product_block_complex(&i, &i).unwrap()),
        ("interval times circle".into(), product_block_complex(&i, &c).unwrap()),
    ]
}

/// The oriented sum of a block's top simplices as a simplicial chain.
fn fundamental_chain(b: &Block) -> BTreeMap<Simp, i64> {
    b.orientation.iter().filter(|(t, _)| !t.is_empty() || b.dim < 0).map(|(t, &e)| (t.vertices().to_vec(), e as i64)).collect()
}

fn chain_boundary(c: &BTreeMap<Simp, i64>) -> BTreeMap<Simp, i64> {
    let mut out = BTreeMap::new();
    for (t, e) in c {
        for (f, sg) in boundary(t) {
            *out.entry(f).or_insert(0) += e * sg;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn fixtures_are_certified() {
    for (name, bc) in certified() {
        let report = bc.validate();
        assert!(report.certified, "{name}: {:?}", report.violations);
        // every host simplex interior to exactly one block
        for t in bc.host.all_simplices() {
            assert_eq!(bc.blocks.iter().filter(|b| b.interior.contains(t)).count(), 1, "{name}");
        }
    }
}

#[test]
fn boundary_of_fundamental_chain_is_the_cellular_boundary() {
    for (name, bc) in certified() {
        for (a, blk) in bc.blocks.iter().enumerate().filter(|(_, b)| b.dim >= 1) {
            let got = chain_boundary(&fundamental_chain(blk));
            let mut want: BTreeMap<Simp, i64> = BTreeMap::new();
            for (j, face) in bc.blocks.iter().enumerate().filter(|(_, b)| b.dim == blk.dim - 1) {
                let c = bc.connecting_coefficient(a, j).unwrap() as i64;
                for (f, e) in fundamental_chain(face) {
                    *want.entry(f).or_insert(0) += c * e;
                }
            }
            want.retain(|_, v| *v != 0);
            assert_eq!(got, want, "{name}: block {}", blk.label);
        }
    }
}

#[test]
fn cellular_homology_is_simplicial_homology() {
    for (name, bc) in certified() {
        let toy = Toy::of(&bc.host);
        for reduced in [false, true] {
            let h = homology(&bc.chain_complex(reduced).unwrap(), Coefficients::Z).unwrap();
            let got: BTreeMap<i32, AbelianGroupPresentation> = h.into_iter().filter(|(_, g)| !g.is_zero()).collect();
            let want: BTreeMap<i32, AbelianGroupPresentation> = simplicial_homology(&toy, reduced).into_iter().filter(|(_, g)| !g.is_zero()).collect();
            assert_eq!(got, want, "{name} reduced={reduced}");
        }
    }
}

#[test]
fn trivial_blocks_carry_simplicial_signs() {
    for k in [fixtures::sphere(2), fixtures::square(), fixtures::annulus()] {
        let bc = trivial_block_complex(&k);
        let cs = chain_complex(&k, true);
        let cb = bc.chain_complex(true).unwrap();
        for d in cs.degrees() {
            let (ms, mb) = (cs.diff(d), cb.diff(d));
            let sign = |deg: i32, i: usize| -> i64 {
                let target = cs.basis[&deg][i].simplex().unwrap().clone();
                let j = bc.blocks.iter().position(|b| b.dim == deg && b.interior.contains(&target)).unwrap();
                bc.blocks[j].orientation[&target] as i64
            };
            for j in 0..ms.cols() {
                for i in 0..ms.rows() {
                    let x = ms.get(i, j).map_or(0, |v| v.to_i64().unwrap());
                    let y = mb.get(i, j).map_or(0, |v| v.to_i64().unwrap());
                    assert_eq!(y, sign(d - 1, i) * x * sign(d, j));
                }
            }
        }
        let b = bc.bicomplex(Variant::Cohomeology, true).unwrap();
        let simp = build(&k, Variant::Cohomeology, true);
        for r in 0..3 {
            let p = SpectralSequence::new(&b, Coefficients::Z).page(r).unwrap();
            let q = SpectralSequence::new(&simp, Coefficients::Z).page(r).unwrap();
            assert!(p.same_groups(&q), "r={r}");
        }
    }
}

#[test]
fn block_pages_equal_host_pages() {
    for (name, bc) in certified() {
        for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
            let rep = compare_with_host(&bc, coeff, 3).unwrap();
            assert!(rep.passed(), "{name} {coeff}: {:?}", rep.failures().collect::<Vec<_>>());
            let rep = check_block_page0(&bc, coeff).unwrap();
            assert!(rep.passed(), "{name} {coeff}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
    // the subdivided sphere agrees with the original sphere as well
    let k = fixtures::sphere(2);
    let bc = subdivision_block_complex(&k, &s(&[0, 1, 2]), "c").unwrap();
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        let a = SpectralSequence::new(&bc.bicomplex(variant, true).unwrap(), Coefficients::Z);
        let b = SpectralSequence::new(&build(&k, variant, true), Coefficients::Z);
        for r in 1..4 {
            assert!(a.page(r).unwrap().same_groups(&b.page(r).unwrap()));
        }
    }
}

#[test]
fn subdivision_ranks_match_trivial_ranks() {
    let k = generate(Generator::Simplex(2)).unwrap();
    let sub = subdivision_block_complex(&k, &s(&[0, 1, 2]), "c").unwrap();
    assert_eq!(sub.len(), 8);
    let top = sub.blocks.iter().find(|b| b.dim == 2).unwrap();
    assert_eq!(top.orientation.len(), 3);
    let triv = trivial_block_complex(&k);
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        let (x, y) = (sub.bicomplex(variant, false).unwrap(), triv.bicomplex(variant, false).unwrap());
        let ranks = |b: &homeolab::bicomplex::BicomplexRep| -> BTreeMap<(i32, i32), usize> { b.bidegrees().map(|d| (d, b.rank(d))).filter(|(_, r)| *r > 0).collect() };
        assert_eq!(ranks(&x), ranks(&y));
    }
}

#[test]
fn product_blocks() {
    let i = trivial_block_complex(&interval());
    let p = product_block_complex(&i, &i).unwrap();
    let by_dim = |d: i32| p.blocks.iter().filter(|b| b.dim == d).count();
    assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (4, 4, 1));
    assert_eq!(p.host.simplices(2).len(), 2);
    let c = trivial_block_complex(&fixtures::sphere(1));
    let q = product_block_complex(&i, &c).unwrap();
    for (prod, a, b) in [(&p, &i, &i), (&q, &i, &c)] {
        let (tp, ta, tb) = (
            prod.bicomplex(Variant::Cohomeology, false).unwrap(),
            a.bicomplex(Variant::Cohomeology, false).unwrap(),
            b.bicomplex(Variant::Cohomeology, false).unwrap(),
        );
        for bd in tp.bidegrees() {
            let mut want = 0;
            for x in ta.bidegrees() {
                for y in tb.bidegrees() {
                    if (x.0 + y.0, x.1 + y.1) == bd {
                        want += ta.rank(x) * tb.rank(y);
                    }
                }
            }
            assert_eq!(tp.rank(bd), want, "{bd:?}");
        }
    }
}

#[test]
fn flipping_orientations() {
    for (name, bc) in certified() {
        for i in (0..bc.len()).filter(|&i| bc.blocks[i].dim >= 1).take(3) {
            let f = bc.with_flipped(i);
            let (a, b) = (bc.chain_complex(true).unwrap(), f.chain_complex(true).unwrap());
            for d in a.degrees() {
                let sign = |deg: i32, k: usize| match a.basis[&deg][k] {
                    homeolab::chains::Cell::Block(j) if j == i => -1,
                    _ => 1,
                };
                let (ma, mb) = (a.diff(d), b.diff(d));
                for (r, c, x) in ma.triplets() {
                    assert_eq!(mb.get(r, c).unwrap().to_i64().unwrap(), sign(d - 1, r) * sign(d, c) * x.to_i64().unwrap());
                }
                assert_eq!(ma.nnz(), mb.nnz());
            }
            for variant in [Variant::Cohomeology, Variant::Homeology] {
                let x = SpectralSequence::new(&bc.bicomplex(variant, true).unwrap(), Coefficients::Z);
                let y = SpectralSequence::new(&f.bicomplex(variant, true).unwrap(), Coefficients::Z);
                for r in 0..3 {
                    assert!(x.page(r).unwrap().same_groups(&y.page(r).unwrap()), "{name} block {i} r={r}");
                }
            }
        }
    }
}

#[test]
fn invalid_block_complexes() {
    let k = fixtures::sphere(1);
    let mut blocks = vec![Block::new(&k, "φ", &[]).unwrap()];
    for v in 0..3 {
        blocks.push(Block::new(&k, format!("v{v}"), &[s(&[v])]).unwrap());
    }
    blocks.push(Block::new(&k, "loop", k.simplices(1)).unwrap());
    let report = BlockComplex::new(k.clone(), blocks).validate();
    assert!(!report.certified && report.has(ViolationKind::NotADisk));
    assert!(simplicial_homology(&Toy::of(&k), true)[&1] != AbelianGroupPresentation::zero());

    // two edge blocks sharing the interior vertex of a path
    let path = generate(Generator::Path(2)).unwrap();
    let mut blocks = vec![Block::new(&path, "φ", &[]).unwrap(), Block::new(&path, "a", &[s(&[0])]).unwrap(), Block::new(&path, "c", &[s(&[2])]).unwrap()];
    blocks.push(Block::new(&path, "left", &[s(&[0, 1])]).unwrap());
    blocks.push(Block::new(&path, "right", &[s(&[1, 2])]).unwrap());
    blocks.push(Block::new(&path, "both", &[s(&[0, 1]), s(&[1, 2])]).unwrap());
    let report = BlockComplex::new(path, blocks).validate();
    assert!(report.has(ViolationKind::Partition));
}

#[test]
fn json_round_trip_adds_the_empty_block() {
    for (name, bc) in certified() {
        let text = block_complex_to_json(&bc);
        let back = block_complex_from_json(&text).unwrap();
        assert_eq!(back.blocks.len(), bc.blocks.len(), "{name}");
        assert_eq!(block_complex_to_json(&back), text);
        let mut j: serde_json::Value = serde_json::from_str(&text).unwrap();
        j["blocks"].as_array_mut().unwrap().retain(|b| b["dim"] != -1);
        let again = block_complex_from_json(&j.to_string()).unwrap();
        assert_eq!(again.blocks.len(), bc.blocks.len());
        assert!(again.validate().certified);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_subdivision_blocks(seed in any::<u64>()) {
        let mut g = rng(seed, 11);
        let k = random_complex(&mut g, 5, 2);
        let cells: Vec<Simplex> = k.all_simplices().filter(|t| !t.is_empty()).cloned().collect();
        let sigma = cells[(seed % cells.len() as u64) as usize].clone();
        let bc = subdivision_block_complex(&k, &sigma, "new").unwrap();
        prop_assert!(bc.validate().certified);
        prop_assert_eq!(bc.len(), k.num_simplices());
        let rep = compare_with_host(&bc, Coefficients::Z, 2).unwrap();
        prop_assert!(rep.passed());
        let toy = Toy::of(&bc.host);
        let h = homology(&bc.chain_complex(false).unwrap(), Coefficients::Z).unwrap();
        let want = simplicial_homology(&toy, false);
        for (d, g) in h {
            prop_assert_eq!(g, want.get(&d).cloned().unwrap_or_else(AbelianGroupPresentation::zero));
        }
    }
}
