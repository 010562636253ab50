use super::*;
use crate::bicomplex::build;
use crate::complex::{generate, Generator, SimplicialComplex};

fn only(page: &SpectralPage, b: Bidegree, g: AbelianGroupPresentation) -> bool {
    page.nonzero().map(|(bd, x)| (bd, x.clone())).collect::<Vec<_>>() == vec![(b, g)]
}

#[test]
fn disks() {
    for n in 1..=3 {
        let k = generate(Generator::Disk(n)).unwrap();
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            let ss = SpectralSequence::new(&build(&k, variant, true), Coefficients::Z);
            for r in 1..=(n as usize + 2) {
                let p = ss.page(r).unwrap();
                assert!(only(&p, (n as i32, n as i32), AbelianGroupPresentation::free(1)), "n={n} r={r} {variant:?} {:?}", p.groups);
            }
        }
    }
}

#[test]
fn cycle5() {
    let k = generate(Generator::Cycle(5)).unwrap();
    for coeff in [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)] {
        let ss = SpectralSequence::new(&build(&k, Variant::Cohomeology, true), coeff);
        for r in 1..=3 {
            assert!(only(&ss.page(r).unwrap(), (1, 1), AbelianGroupPresentation::free(1)));
        }
    }
}

#[test]
fn limits() {
    let k = generate(Generator::Sphere(2)).unwrap();
    let l = limit(&build(&k, Variant::Cohomeology, false), Coefficients::Z).unwrap();
    let nz: Vec<_> = l.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(n, g)| (*n, g.clone())).collect();
    assert_eq!(nz, vec![(0, AbelianGroupPresentation::free(1)), (2, AbelianGroupPresentation::free(1))]);
    let l = limit(&build(&k, Variant::Cohomeology, true), Coefficients::Z).unwrap();
    let nz: Vec<_> = l.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(n, _)| *n).collect();
    assert_eq!(nz, vec![0]);
    assert_eq!(l.stable_sum[&0], AbelianGroupPresentation::free(1));
}

fn all_coeffs() -> [Coefficients; 3] {
    [Coefficients::Z, Coefficients::Q, Coefficients::Zp(2)]
}

#[test]
fn page0_links_small() {
    for k in [generate(Generator::Sphere(1)).unwrap(), generate(Generator::Disk(2)).unwrap(), generate(Generator::Points(3)).unwrap()] {
        for coeff in all_coeffs() {
            let r = check_page0_links(&k, coeff).unwrap();
            assert!(r.passed(), "{coeff}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn recursion_small() {
    let k = generate(Generator::Sphere(2)).unwrap();
    for coeff in all_coeffs() {
        for variant in [Variant::Cohomeology, Variant::Homeology] {
            for reduced in [true, false] {
                let r = check_page_recursion(&build(&k, variant, reduced), coeff, 4).unwrap();
                assert!(r.passed(), "{coeff} {variant:?} {reduced}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn four_term_points() {
    let k = generate(Generator::Points(3)).unwrap();
    for coeff in all_coeffs() {
        let r = check_reduced_unreduced_sequence(&k, coeff, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn cm_examples() {
    for k in [generate(Generator::Disk(3)).unwrap(), generate(Generator::Sphere(2)).unwrap(), generate(Generator::Points(4)).unwrap()] {
        for coeff in all_coeffs() {
            let r = check_cm_structure(&k, coeff).unwrap();
            assert!(r.cohen_macaulay && r.passed(), "{coeff}: {:?}", r.checks.failures().collect::<Vec<_>>());
        }
    }
    let pt = generate(Generator::Point).unwrap();
    let edge = generate(Generator::Simplex(1)).unwrap().renamed(|n| format!("e{n}")).unwrap();
    let r = check_cm_structure(&pt.disjoint_union(&edge).unwrap(), Coefficients::Z).unwrap();
    assert!(!r.cohen_macaulay);
}

#[test]
fn lefschetz_examples() {
    let disk = generate(Generator::Disk(2)).unwrap();
    let annulus = generate(Generator::Path(1)).unwrap().cartesian_product(&generate(Generator::Cycle(3)).unwrap());
    for k in [disk, annulus] {
        let r = check_lefschetz_remark(&k, Coefficients::Z).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    let names: Vec<String> = (0..5).map(|i| format!("m{i}")).collect();
    let tri = |a: u32, b: u32, c: u32| crate::complex::Simplex::new(vec![a, b, c]);
    let mobius = SimplicialComplex::from_index_facets(names, vec![tri(0, 1, 2), tri(1, 2, 3), tri(2, 3, 4), tri(3, 4, 0), tri(4, 0, 1)]);
    assert!(matches!(check_lefschetz_remark(&mobius, Coefficients::Z), Err(crate::Error::NotOrientable(_))));
}
