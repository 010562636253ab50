//! Block complexes: partitions of a simplicial complex into triangulated disks,
//! their cellular chain complexes and block bicomplexes.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{assemble, Bidegree, BicomplexRep, PairBasisElement, Variant};
use crate::chains::{chain_complex, homology, homology_quotient, Cell, ChainComplexRep, Direction, GradedBasis};
use crate::complex::{ComplexJson, Simplex, SimplicialComplex};
use crate::exact_algebra::{
    from_dense, mat_convert, mat_vec, to_dense, AbelianGroupPresentation, Coefficients, Int, Integers,
    Ring, SVec,
};
use crate::spectral::{elems, orders, reduce_all, view, CheckReport, SpectralPage, SpectralSequence};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub dim: i32,
    pub label: String,
    /// Simplices in host indices, downward closed and containing `φ`.
    pub simplices: BTreeSet<Simplex>,
    /// Empty for the `(-1)`-block, `{φ}` for a 0-block.
    pub boundary: BTreeSet<Simplex>,
    pub interior: BTreeSet<Simplex>,
    /// Sign of each top simplex.
    pub orientation: BTreeMap<Simplex, i32>,
}

impl Block {
    /// The block spanned by the downward closure of `generators` inside `host`.
    pub fn new(host: &SimplicialComplex, label: impl Into<String>, generators: &[Simplex]) -> Result<Block> {
        let label = label.into();
        let mut simplices = BTreeSet::new();
        simplices.insert(Simplex::empty());
        for g in generators {
            if !host.contains(g) {
                return Err(Error::InvalidBlockComplex(format!(
                    "block {label}: {} is not a simplex of the host",
                    host.format_simplex(g)
                )));
            }
            simplices.extend(g.subsets());
        }
        let dim = simplices.iter().map(Simplex::dim).max().unwrap_or(-1);
        if dim < 0 {
            return Ok(Block {
                dim,
                label,
                interior: simplices.clone(),
                orientation: BTreeMap::from([(Simplex::empty(), 1)]),
                simplices,
                boundary: BTreeSet::new(),
            });
        }
        let set: HashSet<Simplex> = simplices.iter().cloned().collect();
        let sub = host.subcomplex(&set);
        let used: Vec<u32> = simplices.iter().flat_map(|s| s.vertices().iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let back = |s: &Simplex| Simplex::from_sorted(s.vertices().iter().map(|&v| used[v as usize]).collect());
        let invalid = |e: Error| Error::InvalidBlockComplex(format!("block {label}: {e}"));
        let boundary: BTreeSet<Simplex> = sub.pseudomanifold_boundary().map_err(invalid)?.all_simplices().map(|s| back(s)).collect();
        let orientation = sub.coherent_orientation().map_err(invalid)?.iter().map(|(s, &e)| (back(s), e)).collect();
        let interior = simplices.difference(&boundary).cloned().collect();
        Ok(Block { dim, label, simplices, boundary, interior, orientation })
    }

    pub fn contains(&self, other: &Block) -> bool {
        other.dim <= self.dim && other.simplices.is_subset(&self.simplices)
    }

    pub fn subcomplex(&self, host: &SimplicialComplex) -> SimplicialComplex {
        host.subcomplex(&self.simplices.iter().cloned().collect())
    }

    /// Reverses the orientation of every top simplex.
    pub fn flipped(&self) -> Block {
        let mut b = self.clone();
        if b.dim > 0 {
            for e in b.orientation.values_mut() {
                *e = -*e;
            }
        }
        b
    }
}

#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub host: SimplicialComplex,
    pub blocks: Vec<Block>,
    /// For each block, the blocks it contains (itself included).
    below: Vec<Vec<usize>>,
}

impl BlockComplex {
    pub fn new(host: SimplicialComplex, blocks: Vec<Block>) -> BlockComplex {
        let mut owners: HashMap<&Simplex, Vec<usize>> = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for s in &b.interior {
                owners.entry(s).or_default().push(i);
            }
        }
        let below = blocks
            .iter()
            .map(|b| {
                let cand: BTreeSet<usize> = b.simplices.iter().filter_map(|s| owners.get(s)).flatten().copied().collect();
                cand.into_iter().filter(|&c| b.contains(&blocks[c])).collect()
            })
            .collect();
        BlockComplex { host, blocks, below }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dim(&self) -> i32 {
        self.blocks.iter().map(|b| b.dim).max().unwrap_or(-1)
    }

    /// Blocks contained in block `i`, itself included.
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.label == label)
    }

    /// Same blocks with block `i` carrying the opposite orientation.
    pub fn with_flipped(&self, i: usize) -> BlockComplex {
        let mut out = self.clone();
        out.blocks[i] = self.blocks[i].flipped();
        out
    }

    /// `[α;β]`, checked against every witnessing top simplex.
    pub fn connecting_coefficient(&self, alpha: usize, beta: usize) -> Result<i32> {
        let (a, b) = (&self.blocks[alpha], &self.blocks[beta]);
        if b.dim != a.dim - 1 || !self.below[alpha].contains(&beta) {
            return Ok(0);
        }
        let mut value = None;
        for (t, &e) in &a.orientation {
            for (i, f) in t.facets() {
                let Some(&o) = b.orientation.get(&f) else { continue };
                let c = e * o * if i % 2 == 0 { 1 } else { -1 };
                match value {
                    None => value = Some(c),
                    Some(v) if v != c => {
                        return Err(Error::InvalidBlockComplex(format!(
                            "[{};{}] depends on the witness simplex",
                            a.label, b.label
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(value.unwrap_or(0))
    }

    fn check_partition(&self, out: &mut Vec<Violation>) {
        let mut count: HashMap<&Simplex, usize> = HashMap::new();
        for b in &self.blocks {
            for s in &b.interior {
                *count.entry(s).or_default() += 1;
            }
        }
        for s in self.host.all_simplices() {
            let n = count.get(s).copied().unwrap_or(0);
            if n != 1 {
                out.push(Violation::new(
                    ViolationKind::Partition,
                    format!("{} lies in the interior of {n} blocks", self.host.format_simplex(s)),
                ));
            }
        }
    }

    fn carriers(&self) -> HashMap<&Simplex, usize> {
        let mut out = HashMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for s in &b.interior {
                out.entry(s).or_insert(i);
            }
        }
        out
    }

    fn check_faces(&self, out: &mut Vec<Violation>) {
        let carriers = self.carriers();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.dim >= 0 {
                let union: BTreeSet<&Simplex> = self.below[i]
                    .iter()
                    .filter(|&&j| self.blocks[j].dim == b.dim - 1)
                    .flat_map(|&j| self.blocks[j].simplices.iter())
                    .collect();
                if union != b.boundary.iter().collect() {
                    out.push(Violation::new(
                        ViolationKind::BoundaryUnion,
                        format!("boundary of {} is not a union of {}-blocks", b.label, b.dim - 1),
                    ));
                }
            }
            for s in &b.simplices {
                if let Some(&c) = carriers.get(s) {
                    if !self.below[i].contains(&c) {
                        out.push(Violation::new(
                            ViolationKind::Intersection,
                            format!(
                                "{} meets {} in {} without containing it",
                                b.label,
                                self.blocks[c].label,
                                self.host.format_simplex(s)
                            ),
                        ));
                        break;
                    }
                }
            }
        }
    }

    fn check_disk(&self, b: &Block) -> Vec<Violation> {
        let mut out = Vec::new();
        if b.dim < 0 {
            return out;
        }
        let bad = |k: &SimplicialComplex, sphere: Option<i32>| -> bool {
            match homology(&chain_complex(k, true), Coefficients::Z) {
                Ok(h) => h.iter().any(|(&d, g)| *g != if Some(d) == sphere { AbelianGroupPresentation::free(1) } else { AbelianGroupPresentation::zero() }),
                Err(_) => true,
            }
        };
        let sub = b.subcomplex(&self.host);
        if bad(&sub, None) {
            out.push(Violation::new(ViolationKind::NotADisk, format!("{} is not acyclic", b.label)));
        }
        let bd = self.host.subcomplex(&b.boundary.iter().cloned().collect());
        if bad(&bd, Some(b.dim - 1)) {
            out.push(Violation::new(
                ViolationKind::BoundaryNotSphere,
                format!("boundary of {} lacks the homology of S^{}", b.label, b.dim - 1),
            ));
        }
        for s in b.boundary.iter().filter(|s| !s.is_empty()) {
            let local = sub.simplex_by_names(&self.host.simplex_names(s)).expect("simplex of the block");
            let Ok(link) = sub.link(&local) else { continue };
            if bad(&link, None) {
                out.push(Violation::new(
                    ViolationKind::LinkNotDisk,
                    format!("link of {} in {} is not acyclic", self.host.format_simplex(s), b.label),
                ));
            }
        }
        if b.dim > 0 {
            let mut coeff: HashMap<Simplex, i32> = HashMap::new();
            for (t, &e) in &b.orientation {
                for (i, f) in t.facets() {
                    *coeff.entry(f).or_default() += e * if i % 2 == 0 { 1 } else { -1 };
                }
            }
            let incoherent = coeff.iter().any(|(f, &c)| if b.boundary.contains(f) { c.abs() != 1 } else { c != 0 });
            if incoherent || b.orientation.len() != b.simplices.iter().filter(|s| s.dim() == b.dim).count() {
                out.push(Violation::new(ViolationKind::Orientation, format!("orientation of {} is not coherent", b.label)));
            }
        }
        out
    }

    /// Checks the defining conditions; disk conditions are tested on integral homology only.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        self.check_partition(&mut violations);
        self.check_faces(&mut violations);
        let per_block: Vec<Vec<Violation>> = self.blocks.par_iter().map(|b| self.check_disk(b)).collect();
        violations.extend(per_block.into_iter().flatten());
        for (i, b) in self.blocks.iter().enumerate() {
            for &j in &self.below[i] {
                if self.blocks[j].dim == b.dim - 1 {
                    if let Err(e) = self.connecting_coefficient(i, j) {
                        violations.push(Violation::new(ViolationKind::ConnectingCoefficient, e.to_string()));
                    }
                }
            }
        }
        ValidationReport {
            certified: violations.is_empty(),
            violations,
            notes: vec![
                "partition checked combinatorially: every simplex interior to exactly one block".into(),
                "disk, sphere and link conditions checked on integral homology".into(),
            ],
        }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidBlockComplex(format!("not certified: {}", v.detail))),
        }
    }

    /// Cellular chain complex on the blocks, `d b_n = Σ [α;β] b_{n-1}`.
    pub fn chain_complex(&self, reduced: bool) -> Result<ChainComplexRep> {
        let lo = if reduced { -1 } else { 0 };
        let mut basis = GradedBasis::new();
        for d in lo..=self.dim().max(lo) {
            basis.insert(d, (0..self.len()).filter(|&i| self.blocks[i].dim == d).map(Cell::Block).collect());
        }
        let mut coeffs: HashMap<usize, Vec<(Cell, i64)>> = HashMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let mut col = Vec::new();
            for &j in &self.below[i] {
                if self.blocks[j].dim == b.dim - 1 {
                    let c = self.connecting_coefficient(i, j)?;
                    if c != 0 {
                        col.push((Cell::Block(j), c as i64));
                    }
                }
            }
            coeffs.insert(i, col);
        }
        let c = ChainComplexRep::from_boundary(basis, reduced, |cell| match cell {
            Cell::Block(i) => coeffs.get(i).cloned().unwrap_or_default(),
            Cell::Simplex(_) => Vec::new(),
        });
        if !c.is_complex() {
            return Err(Error::InvalidBlockComplex("block boundary does not square to zero".into()));
        }
        Ok(c)
    }

    pub fn cochain_complex(&self, reduced: bool) -> Result<ChainComplexRep> {
        Ok(self.chain_complex(reduced)?.dual())
    }

    /// `T(𝔅)` on the nested pairs `b_m ⊆ b_n`.
    pub fn bicomplex(&self, variant: Variant, reduced: bool) -> Result<BicomplexRep> {
        self.require_valid()?;
        let left = self.chain_complex(reduced)?;
        let right = left.dual();
        let faces = |c: &Cell| match c {
            Cell::Block(i) => self.below[*i].iter().map(|&j| Cell::Block(j)).collect(),
            Cell::Simplex(_) => Vec::new(),
        };
        Ok(assemble(&left, &right, faces, |_, _| true, variant, reduced))
    }

    pub fn page(&self, variant: Variant, reduced: bool, r: usize, coeff: Coefficients) -> Result<SpectralPage> {
        crate::spectral::page(&self.bicomplex(variant, reduced)?, r, coeff)
    }

    /// `C^*(𝔅_{m,α})`: the cochains on blocks containing block `i`.
    pub fn upper_cochains(&self, i: usize) -> Result<ChainComplexRep> {
        let full = self.cochain_complex(true)?;
        let mut basis = GradedBasis::new();
        let mut keep: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (&d, cells) in &full.basis {
            let idx: Vec<usize> = (0..cells.len())
                .filter(|&k| matches!(cells[k], Cell::Block(j) if self.below[j].contains(&i)))
                .collect();
            if idx.is_empty() {
                continue;
            }
            basis.insert(d, idx.iter().map(|&k| cells[k].clone()).collect());
            keep.insert(d, idx);
        }
        let mut differentials = BTreeMap::new();
        for (&d, cols) in &keep {
            let rows = keep.get(&(d + 1)).cloned().unwrap_or_default();
            differentials.insert(d, full.diff(d).select(&rows, cols));
        }
        Ok(ChainComplexRep { basis, differentials, direction: Direction::Cohomological, reduced: true, inclusion: None })
    }

    pub fn to_json(&self) -> BlockComplexJson {
        BlockComplexJson {
            host: ComplexJson::from(&self.host),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    dim: b.dim,
                    label: b.label.clone(),
                    facets: b.orientation.keys().filter(|s| !s.is_empty()).map(|s| self.host.simplex_names(s)).collect(),
                })
                .collect(),
        }
    }

    /// The `(-1)`-block may be omitted; it is added when missing.
    pub fn from_json(j: &BlockComplexJson) -> Result<BlockComplex> {
        let host = SimplicialComplex::try_from(&j.host)?;
        let mut blocks = Vec::with_capacity(j.blocks.len() + 1);
        for bj in &j.blocks {
            let gens = bj.facets.iter().map(|f| host.simplex_by_names(f)).collect::<Result<Vec<_>>>()?;
            let b = Block::new(&host, bj.label.clone(), &gens)?;
            if b.dim != bj.dim {
                return Err(Error::InvalidBlockComplex(format!("block {} has dimension {}, declared {}", b.label, b.dim, bj.dim)));
            }
            blocks.push(b);
        }
        if !blocks.iter().any(|b| b.dim == -1) {
            blocks.insert(0, Block::new(&host, "φ", &[])?);
        }
        Ok(BlockComplex::new(host, blocks))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub dim: i32,
    pub label: String,
    pub facets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComplexJson {
    pub host: ComplexJson,
    pub blocks: Vec<BlockJson>,
}

pub fn block_complex_from_json(s: &str) -> Result<BlockComplex> {
    let j: BlockComplexJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    BlockComplex::from_json(&j)
}

pub fn block_complex_to_json(b: &BlockComplex) -> String {
    serde_json::to_string(&b.to_json()).expect("serializable")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    Partition,
    BoundaryUnion,
    Intersection,
    NotADisk,
    BoundaryNotSphere,
    LinkNotDisk,
    Orientation,
    ConnectingCoefficient,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, detail: String) -> Self {
        Violation { kind, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    /// No violation found; the disk conditions are necessary ones only.
    pub certified: bool,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

fn simplex_label(k: &SimplicialComplex, s: &Simplex) -> String {
    if s.is_empty() {
        "φ".into()
    } else {
        k.format_simplex(s)
    }
}

/// `{2^σ : σ ∈ K}`.
pub fn trivial_block_complex(k: &SimplicialComplex) -> BlockComplex {
    let blocks = std::iter::once(&Simplex::empty())
        .chain(k.all_simplices().filter(|s| !s.is_empty()))
        .map(|s| Block::new(k, simplex_label(k, s), std::slice::from_ref(s)).expect("closed simplex is a block"))
        .collect();
    BlockComplex::new(k.clone(), blocks)
}

/// Blocks `b_τ` on `S_σ(K)`: `2^τ` when `σ ⊄ τ`, else `S_σ(2^τ)`.
pub fn subdivision_block_complex(k: &SimplicialComplex, sigma: &Simplex, new_vertex: &str) -> Result<BlockComplex> {
    if !k.contains(sigma) {
        return Err(Error::SimplexNotInComplex(k.format_simplex(sigma)));
    }
    if sigma.is_empty() {
        return Err(Error::InvalidParameter("cannot subdivide the empty simplex".into()));
    }
    let host = k.stellar_subdivide(sigma, new_vertex)?;
    let v = host.vertex_index(new_vertex).expect("new vertex present");
    let mut blocks = vec![Block::new(&host, "φ", &[])?];
    for tau in k.all_simplices().filter(|s| !s.is_empty()) {
        let gens: Vec<Simplex> = if sigma.is_face_of(tau) {
            let span = tau.with(v);
            host.all_simplices().filter(|r| r.is_face_of(&span)).cloned().collect()
        } else {
            vec![tau.clone()]
        };
        blocks.push(Block::new(&host, simplex_label(k, tau), &gens)?);
    }
    Ok(BlockComplex::new(host, blocks))
}

/// Blocks `b × c` on the staircase product of the hosts.
pub fn product_block_complex(bk: &BlockComplex, bl: &BlockComplex) -> Result<BlockComplex> {
    let host = bk.host.cartesian_product(&bl.host);
    let n = bl.host.num_vertices() as u32;
    let project = |s: &Simplex| (Simplex::new(s.map(|w| w / n)), Simplex::new(s.map(|w| w % n)));
    let projected: Vec<(&Simplex, (Simplex, Simplex))> = host.all_simplices().map(|s| (s, project(s))).collect();
    let mut blocks = vec![Block::new(&host, "φ", &[])?];
    for b in bk.blocks.iter().filter(|b| b.dim >= 0) {
        for c in bl.blocks.iter().filter(|c| c.dim >= 0) {
            let gens: Vec<Simplex> = projected
                .iter()
                .filter(|(_, (p, q))| b.simplices.contains(p) && c.simplices.contains(q))
                .map(|(s, _)| (*s).clone())
                .collect();
            blocks.push(Block::new(&host, format!("({},{})", b.label, c.label), &gens)?);
        }
    }
    Ok(BlockComplex::new(host, blocks))
}

/// Page 0 of the block bicomplexes against `⊕_α H̃^*(𝔅_{m,α})` and its dual, groups and differentials.
pub fn check_block_page0(bc: &BlockComplex, coeff: Coefficients) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        for reduced in [true, false] {
            with_ring!(coeff, ring => block_page0_variant(ring, bc, coeff, variant, reduced, &mut report))?;
        }
    }
    Ok(report)
}

fn block_page0_variant<R: Ring>(
    ring: &R,
    bc: &BlockComplex,
    coeff: Coefficients,
    variant: Variant,
    reduced: bool,
    report: &mut CheckReport,
) -> Result<()> {
    let tag = format!("{variant:?} {}", if reduced { "reduced" } else { "unreduced" });
    let b = bc.bicomplex(variant, reduced)?;
    let ss = SpectralSequence::new(&b, coeff);
    let p0 = ss.page(0)?;
    let pos: HashMap<(usize, usize), usize> = b
        .basis
        .values()
        .flat_map(|v| v.iter().enumerate())
        .filter_map(|(i, p): (usize, &PairBasisElement)| match (&p.sigma, &p.tau) {
            (Cell::Block(a), Cell::Block(c)) => Some(((*a, *c), i)),
            _ => None,
        })
        .collect();
    let as_local = |alpha: usize, cells: &[Cell], x: &[(usize, R::Elem)]| -> SVec<Int> {
        let mut v: SVec<Int> = x
            .iter()
            .map(|(j, c)| match cells[*j] {
                Cell::Block(beta) => (pos[&(alpha, beta)], ring.to_int(c)),
                Cell::Simplex(_) => unreachable!("block cells only"),
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    };
    let keep = |d: &Int| coeff != Coefficients::Q || d.is_zero();

    let mut upper = HashMap::new();
    let mut expected: BTreeMap<Bidegree, AbelianGroupPresentation> = BTreeMap::new();
    let mut gens: Vec<(usize, i32, SVec<R::Elem>)> = Vec::new();
    for (alpha, blk) in bc.blocks.iter().enumerate() {
        if !reduced && blk.dim < 0 {
            continue;
        }
        let mut c = bc.upper_cochains(alpha)?;
        if variant == Variant::Homeology {
            c = c.dual();
        }
        for n in c.degrees().collect::<Vec<_>>() {
            let q = homology_quotient(ring, &c, n)?;
            let acc = expected.entry((blk.dim, n)).or_insert_with(AbelianGroupPresentation::zero);
            *acc = acc.direct_sum(&view(coeff, q.group()));
            for (g, d) in q.generators().iter().zip(q.orders()) {
                if keep(&ring.to_int(d)) {
                    gens.push((alpha, n, g.clone()));
                }
            }
        }
        upper.insert(alpha, c);
    }

    let keys: BTreeSet<Bidegree> = expected.keys().chain(p0.groups.keys()).copied().collect();
    let bad: Vec<String> = keys
        .into_iter()
        .filter_map(|bd| {
            let want = expected.get(&bd).cloned().unwrap_or_default();
            (p0.group(bd) != want).then(|| format!("{bd:?}: page {} vs upper sets {want}", p0.group(bd)))
        })
        .collect();
    report.push(format!("{tag} page 0 groups"), bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for (alpha, n, x) in &gens {
        let m = bc.blocks[*alpha].dim;
        let bd = (m, *n);
        let cells = &upper[alpha].basis[n];
        let Some(src) = ss.coords(0, bd, &as_local(*alpha, cells, x))? else {
            bad.push(format!("{bd:?}: class of {} is not a page-0 class", bc.blocks[*alpha].label));
            continue;
        };
        let (tgt, partners): (Bidegree, Vec<(usize, Int)>) = match variant {
            Variant::Cohomeology => (
                (m - 1, *n),
                bc.below[*alpha]
                    .iter()
                    .filter(|&&j| bc.blocks[j].dim == m - 1 && upper.contains_key(&j))
                    .map(|&j| (j, Int::from(bc.connecting_coefficient(*alpha, j).unwrap_or(0) as i64)))
                    .collect(),
            ),
            Variant::Homeology => (
                (m + 1, *n),
                (0..bc.len())
                    .filter(|&j| bc.blocks[j].dim == m + 1 && bc.below[j].contains(alpha))
                    .map(|j| (j, Int::from(bc.connecting_coefficient(j, *alpha).unwrap_or(0) as i64)))
                    .collect(),
            ),
        };
        let mut image: BTreeMap<usize, Int> = BTreeMap::new();
        for (j, c) in partners {
            let cj = &upper[&j].basis[n];
            let idx: HashMap<&Cell, usize> = cj.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let moved: SVec<R::Elem> =
                x.iter().filter_map(|(i, v)| idx.get(&cells[*i]).map(|&k| (k, ring.mul(v, &ring.from_int(&c))))).collect();
            for (i, v) in as_local(j, cj, &moved) {
                let e = image.entry(i).or_insert(Int::ZERO);
                *e = &*e + &v;
            }
        }
        let image: SVec<Int> = image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(want) = ss.coords(0, tgt, &image)? else {
            bad.push(format!("{bd:?}: formula image is not a page-0 class"));
            continue;
        };
        let d = mat_convert(&Integers, ring, &p0.differential(bd));
        let got = to_dense(ring, &mat_vec(ring, &d, &from_dense(ring, &elems(ring, &src))), want.len());
        let to = elems(ring, &orders(&p0, tgt));
        if reduce_all(ring, &got, &to) != reduce_all(ring, &elems(ring, &want), &to) {
            bad.push(format!("{bd:?} class on {}: differential disagrees with formula", bc.blocks[*alpha].label));
        }
    }
    report.push(format!("{tag} page 0 differential"), bad.is_empty(), bad.join("; "));
    Ok(())
}

/// Pages `1..=upto` of the block bicomplex against those of the host.
pub fn compare_with_host(bc: &BlockComplex, coeff: Coefficients, upto: usize) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for variant in [Variant::Cohomeology, Variant::Homeology] {
        for reduced in [true, false] {
            let blocks = SpectralSequence::new(&bc.bicomplex(variant, reduced)?, coeff);
            let simp = SpectralSequence::new(&crate::bicomplex::build(&bc.host, variant, reduced), coeff);
            for r in 1..=upto {
                let (p, q) = (blocks.page(r)?, simp.page(r)?);
                report.push(
                    format!("{variant:?} {} page {r}", if reduced { "reduced" } else { "unreduced" }),
                    p.same_groups(&q),
                    String::new(),
                );
            }
        }
    }
    Ok(report)
}
