//! Named example complexes and maps.

use std::sync::Arc;

use crate::bicomplex::Variant;
use crate::complex::{generate, Generator, Simplex, SimplicialComplex};
use crate::exact_algebra::Coefficients;
use crate::morphisms::{check_solid, induced_page_map_between, Pages, ProductPages, SolidMap};
use crate::spectral::CheckReport;
use crate::{Error, Result};

pub fn disk(n: usize) -> SimplicialComplex {
    generate(Generator::Disk(n)).expect("disk")
}

pub fn sphere(n: usize) -> SimplicialComplex {
    generate(Generator::Sphere(n)).expect("sphere")
}

/// `D^m ∪ D^n` glued along a common `k`-face; the shared vertices come first.
pub fn glued_disks(m: usize, n: usize, k: usize) -> Result<SimplicialComplex> {
    if k >= m.min(n) {
        return Err(Error::InvalidParameter(format!("a {k}-face lies in the boundary of both disks only if k < {}", m.min(n))));
    }
    let shared = k as u32 + 1;
    let left = Simplex::new((0..=m as u32).collect());
    let right = Simplex::new((0..shared).chain(m as u32 + 1..m as u32 + 1 + (n - k) as u32).collect());
    let total = m + 1 + n - k;
    let names = (0..total).map(|i| format!("v{i}")).collect();
    Ok(SimplicialComplex::from_index_facets(names, vec![left, right]))
}

/// `SX ∨ SX`, wedged at a suspension point.
pub fn wedge_of_suspensions(x: &SimplicialComplex) -> Result<SimplicialComplex> {
    let s = x.suspension()?;
    let other = s.renamed(|n| format!("{n}'"))?;
    s.wedge(&other, "c0", "c0'")
}

/// `I_1 × ∂Δ²`.
pub fn annulus() -> SimplicialComplex {
    generate(Generator::Simplex(1)).expect("interval").cartesian_product(&sphere(1))
}

/// `I_1 × I_1`.
pub fn square() -> SimplicialComplex {
    let i = generate(Generator::Simplex(1)).expect("interval");
    i.cartesian_product(&i)
}

/// The two graphs of the homeotopy example: `X` is a triangle `v1 v2 v3` with a whisker `v0 v1`,
/// `Y` the triangle `w1 w2 w3`.
pub fn example_graphs() -> (SimplicialComplex, SimplicialComplex) {
    let x = SimplicialComplex::from_facets(
        &["v0", "v1", "v2", "v3"],
        &[vec!["v0", "v1"], vec!["v1", "v2"], vec!["v1", "v3"], vec!["v2", "v3"]],
    )
    .expect("X");
    let y = SimplicialComplex::from_facets(&["w1", "w2", "w3"], &[vec!["w1", "w2"], vec!["w1", "w3"], vec!["w2", "w3"]])
        .expect("Y");
    (x, y)
}

/// `f: X → Y` with `f(v_i) = w_i` and `f(v0) = w3`, and the inclusion `g: Y → X`.
pub fn example_maps() -> (SolidMap, SolidMap) {
    let (x, y) = example_graphs();
    let name = |k: &SimplicialComplex, l: &SimplicialComplex, pairs: &[(&str, &str)]| {
        let map = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        SolidMap::from_names(k, l, &map).expect("example map")
    };
    let f = name(&x, &y, &[("v0", "w3"), ("v1", "w1"), ("v2", "w2"), ("v3", "w3")]);
    let g = name(&y, &x, &[("w1", "v1"), ("w2", "v2"), ("w3", "v3")]);
    (f, g)
}

/// The cylinder map `Φ = 1 × f: I_1 × X → I_1 × Y`, with `X` listed as `v1, v2, v3, v0` so that `f`
/// preserves the vertex order and both cylinders carry the staircase triangulation.
pub fn example_cylinder() -> Result<(SimplicialComplex, SimplicialComplex, SolidMap)> {
    let (x, y) = example_graphs();
    let x = x.reorder(&[1, 2, 3, 0])?;
    let f = reordered_f(&x, &y)?;
    let i = generate(Generator::Simplex(1))?;
    let (cx, cy) = (i.cartesian_product(&x), i.cartesian_product(&y));
    let n = y.num_vertices() as u32;
    let phi = (0..cx.num_vertices() as u32).map(|v| (v / x.num_vertices() as u32) * n + f.vertex_map[(v % x.num_vertices() as u32) as usize]);
    let phi = check_solid(&cx, &cy, phi.collect())?;
    Ok((x, y, phi))
}

fn reordered_f(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<SolidMap> {
    let map = [("v0", "w3"), ("v1", "w1"), ("v2", "w2"), ("v3", "w3")].map(|(a, b)| (a.to_string(), b.to_string()));
    SolidMap::from_names(x, y, &map.into())
}

/// `Φ^*(ι × y) = ι × f^*(y)` on page `r` over `Q`, for `ι` spanning the top entry of `I_1` and every generator `y` of `Y`.
pub fn check_cylinder_product(r: usize) -> Result<CheckReport> {
    let (x, y, phi) = example_cylinder()?;
    let coeff = Coefficients::Q;
    let pages = |k: &SimplicialComplex| Arc::new(Pages::new(k, Variant::Cohomeology, false, coeff));
    let (pi, px, py) = (pages(&generate(Generator::Simplex(1))?), pages(&x), pages(&y));
    let over_x = ProductPages::new(pi.clone(), px.clone())?;
    let over_y = ProductPages::new(pi.clone(), py.clone())?;
    let f = reordered_f(&x, &y)?;
    let f_star = induced_page_map_between(&f, &py, &px, r)?;
    let phi_star = induced_page_map_between(&phi, &over_y.product, &over_x.product, r)?;
    let iota = pi.generator(r, (1, 1), 0)?;
    let mut report = CheckReport::default();
    report.push("Φ commutes with the page differential", phi_star.commutes(&over_y.product, &over_x.product)?, "");
    for (i, gen) in py.generators(r)?.iter().enumerate() {
        let lhs = phi_star.apply(&over_y.product(&iota, gen)?, &over_y.product, &over_x.product)?;
        let rhs = over_x.product(&iota, &f_star.apply(gen, &py, &px)?)?;
        report.push(format!("generator {i} at {:?}", gen.bidegree), lhs == rhs, format!("{:?} vs {:?}", lhs.coords, rhs.coords));
    }
    Ok(report)
}

/// Complexes addressed by name from the command line.
pub fn named(name: &str) -> Result<SimplicialComplex> {
    let (x, y) = example_graphs();
    Ok(match name {
        "square" => square(),
        "annulus" => annulus(),
        "graph-x" => x,
        "graph-y" => y,
        "wedge-ss1" => wedge_of_suspensions(&sphere(1))?,
        "c3-s1" => sphere(1).cone_n(3)?,
        _ => {
            if let Some(rest) = name.strip_prefix("glued:") {
                let v: Vec<usize> = rest.split(',').map(|p| p.trim().parse()).collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse(format!("bad glued-disk parameters `{rest}`")))?;
                if let [m, n, k] = v[..] {
                    return glued_disks(m, n, k);
                }
            }
            return Err(Error::Parse(format!("unknown fixture `{name}`")));
        }
    })
}

pub const NAMED: &[&str] = &["square", "annulus", "graph-x", "graph-y", "wedge-ss1", "c3-s1", "glued:m,n,k"];
