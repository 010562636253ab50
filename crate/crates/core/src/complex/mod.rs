//! Finite abstract simplicial complexes and the standard constructions on them.

mod io;

pub use io::{complex_from_json, complex_from_text, complex_to_json, complex_to_text, ComplexJson};

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    /// Sorts and deduplicates.
    pub fn new(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Simplex::new(v)
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn with(&self, v: u32) -> Simplex {
        let mut w = self.0.clone();
        w.push(v);
        Simplex::new(w)
    }

    pub fn without(&self, v: u32) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Position of `v` inside the simplex.
    pub fn position(&self, v: u32) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    /// Codimension-one faces `(i, face)` obtained by removing the `i`-th vertex.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (i, Simplex(v))
        })
    }

    /// All faces including the empty one and the simplex itself.
    pub fn subsets(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 31, "simplex too large to enumerate faces");
        (0u32..(1u32 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> Vec<u32> {
        self.0.iter().map(|&v| f(v)).collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sign of the sorting permutation and the sorted simplex; `None` on repeated vertices.
pub fn orient(v: &[u32]) -> Option<(i32, Simplex)> {
    let mut w = v.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, Simplex(w)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub index: usize,
}

/// A downward-closed family of simplices on an ordered vertex list, always containing `φ`.
#[derive(Clone)]
pub struct SimplicialComplex {
    names: Vec<String>,
    by_dim: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.by_dim == other.by_dim
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.names)
            .field("facets", &self.facets().iter().map(|s| self.simplex_names(s)).collect::<Vec<_>>())
            .finish()
    }
}

impl SimplicialComplex {
    /// The complex `{φ}`.
    pub fn empty() -> Self {
        Self::from_index_facets(Vec::new(), Vec::new())
    }

    pub fn from_facets<S: AsRef<str>>(vertex_names: &[S], facets: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = vertex_names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut facet_idx = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = Vec::with_capacity(f.len());
            for v in f {
                let v = v.as_ref();
                s.push(*index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?);
            }
            facet_idx.push(Simplex::new(s));
        }
        Ok(Self::from_index_facets(names, facet_idx))
    }

    /// Downward closure of the given simplices plus every vertex as a 0-simplex.
    pub fn from_index_facets(names: Vec<String>, facets: Vec<Simplex>) -> Self {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        all.insert(Simplex::empty());
        for v in 0..names.len() as u32 {
            all.insert(Simplex::vertex(v));
        }
        for f in &facets {
            assert!(f.0.iter().all(|&v| (v as usize) < names.len()), "facet vertex out of range");
            if all.contains(f) {
                continue;
            }
            for s in f.subsets() {
                all.insert(s);
            }
        }
        Self::from_simplex_set(names, all)
    }

    /// From a set already known to be downward closed and to contain all vertices.
    fn from_simplex_set(names: Vec<String>, all: impl IntoIterator<Item = Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new()];
        for s in all {
            let d = s.len();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for layer in &mut by_dim {
            layer.sort();
            layer.dedup();
        }
        if by_dim[0].is_empty() {
            by_dim[0].push(Simplex::empty());
        }
        let mut lookup = HashMap::new();
        for layer in &by_dim {
            for (i, s) in layer.iter().enumerate() {
                lookup.insert(s.clone(), i);
            }
        }
        SimplicialComplex { names, by_dim, lookup }
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.names.iter().enumerate().map(|(index, name)| Vertex { name: name.clone(), index }).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Dimension; `-1` for `{φ}`.
    pub fn dim(&self) -> i32 {
        self.by_dim.len() as i32 - 2
    }

    /// Simplices of dimension `d` in lexicographic order (`d = -1` gives `[φ]`).
    pub fn simplices(&self, d: i32) -> &[Simplex] {
        if d < -1 {
            return &[];
        }
        self.by_dim.get((d + 1) as usize).map_or(&[][..], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// `f_k` = number of `k`-simplices, for `k = -1 .. dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.lookup.contains_key(s)
    }

    /// Position of `s` in its dimension layer.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// Maximal simplices, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in -1..=self.dim() {
            for s in self.simplices(d) {
                let maximal = self.simplices(d + 1).is_empty()
                    || !(0..self.num_vertices() as u32).any(|v| !s.contains(v) && self.contains(&s.with(v)));
                if maximal {
                    out.push(s.clone());
                }
            }
        }
        if out.len() > 1 {
            out.retain(|s| !s.is_empty());
        }
        out
    }

    /// Vertices `v ∉ s` with `s ∪ {v} ∈ K`.
    pub fn cofaces_vertices(&self, s: &Simplex) -> Vec<u32> {
        (0..self.num_vertices() as u32).filter(|&v| !s.contains(v) && self.contains(&s.with(v))).collect()
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.0.iter().map(|&v| self.names[v as usize].clone()).collect()
    }

    pub fn format_simplex(&self, s: &Simplex) -> String {
        format!("[{}]", self.simplex_names(s).join(","))
    }

    pub fn simplex_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex> {
        let mut v = Vec::with_capacity(names.len());
        for n in names {
            v.push(self.vertex_index(n.as_ref()).ok_or_else(|| Error::UnknownVertex(n.as_ref().to_string()))?);
        }
        Ok(Simplex::new(v))
    }

    /// The simplices of `l` expressed in this complex's vertex indices.
    pub fn embed(&self, l: &SimplicialComplex) -> Result<HashSet<Simplex>> {
        let mut map = Vec::with_capacity(l.num_vertices());
        for n in &l.names {
            map.push(self.vertex_index(n).ok_or_else(|| Error::NotASubcomplex(format!("vertex `{n}` not in the ambient complex")))?);
        }
        let mut out = HashSet::new();
        for s in l.all_simplices() {
            let t = Simplex::new(s.map(|v| map[v as usize]));
            if !self.contains(&t) {
                return Err(Error::NotASubcomplex(format!("simplex {} not in the ambient complex", l.format_simplex(s))));
            }
            out.insert(t);
        }
        Ok(out)
    }

    pub fn is_subcomplex_of(&self, k: &SimplicialComplex) -> bool {
        k.embed(self).is_ok()
    }

    /// The subcomplex on a downward-closed set of this complex's simplices, keeping used vertices in order.
    pub fn subcomplex(&self, simplices: &HashSet<Simplex>) -> SimplicialComplex {
        let used: BTreeSet<u32> = simplices.iter().flat_map(|s| s.0.iter().copied()).collect();
        let remap: HashMap<u32, u32> = used.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let names = used.iter().map(|&v| self.names[v as usize].clone()).collect();
        let mut set: Vec<Simplex> = simplices.iter().map(|s| Simplex::new(s.map(|v| remap[&v]))).collect();
        set.push(Simplex::empty());
        Self::from_simplex_set(names, set)
    }

    /// `link_K σ` with the map from its vertices back to this complex's indices.
    pub fn link_with_map(&self, sigma: &Simplex) -> Result<(SimplicialComplex, Vec<u32>)> {
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(format!("{sigma:?}")));
        }
        let members: Vec<Simplex> = self
            .all_simplices()
            .filter(|t| t.is_disjoint(sigma) && self.contains(&t.union(sigma)))
            .cloned()
            .collect();
        let used: BTreeSet<u32> = members.iter().flat_map(|s| s.0.iter().copied()).collect();
        let back: Vec<u32> = used.iter().copied().collect();
        let remap: HashMap<u32, u32> = back.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let names = back.iter().map(|&v| self.names[v as usize].clone()).collect();
        let set: Vec<Simplex> = members.iter().map(|s| Simplex::new(s.map(|v| remap[&v]))).collect();
        Ok((Self::from_simplex_set(names, set), back))
    }

    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        Ok(self.link_with_map(sigma)?.0)
    }

    /// The full subcomplex `2^σ`.
    pub fn closure_of(&self, sigma: &Simplex) -> SimplicialComplex {
        self.subcomplex(&sigma.subsets().into_iter().collect())
    }

    pub fn stellar_subdivide(&self, sigma: &Simplex, new_vertex: &str) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(format!("{sigma:?}")));
        }
        if self.vertex_index(new_vertex).is_some() {
            return Err(Error::NameCollision(new_vertex.to_string()));
        }
        match sigma.len() {
            0 => Ok(self.clone()),
            1 => {
                let mut k = self.clone();
                k.names[sigma.0[0] as usize] = new_vertex.to_string();
                Ok(k)
            }
            _ => {
                let v = self.names.len() as u32;
                let mut names = self.names.clone();
                names.push(new_vertex.to_string());
                let mut set: Vec<Simplex> = self.all_simplices().filter(|t| !sigma.is_face_of(t)).cloned().collect();
                let link = self.link_with_map(sigma)?;
                let link_simplices: Vec<Simplex> =
                    link.0.all_simplices().map(|t| Simplex::new(t.map(|w| link.1[w as usize]))).collect();
                for face in sigma.subsets() {
                    if face.len() == sigma.len() {
                        continue;
                    }
                    for t in &link_simplices {
                        set.push(face.union(t).with(v));
                    }
                }
                Ok(Self::from_simplex_set(names, set))
            }
        }
    }

    fn check_disjoint_names(&self, other: &SimplicialComplex) -> Result<()> {
        let mine: HashSet<&String> = self.names.iter().collect();
        match other.names.iter().find(|n| mine.contains(n)) {
            Some(n) => Err(Error::NameCollision(n.clone())),
            None => Ok(()),
        }
    }

    /// `K * L`, vertices of `K` first.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.check_disjoint_names(other)?;
        let off = self.names.len() as u32;
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut set = Vec::with_capacity(self.num_simplices() * other.num_simplices());
        for s in self.all_simplices() {
            for t in other.all_simplices() {
                let mut v = s.0.clone();
                v.extend(t.0.iter().map(|w| w + off));
                set.push(Simplex(v));
            }
        }
        Ok(Self::from_simplex_set(names, set))
    }

    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.check_disjoint_names(other)?;
        let off = self.names.len() as u32;
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut set: Vec<Simplex> = self.all_simplices().cloned().collect();
        set.extend(other.all_simplices().map(|t| Simplex(t.0.iter().map(|w| w + off).collect())));
        Ok(Self::from_simplex_set(names, set))
    }

    /// Join with `n` fresh isolated vertices; `cone_n(K, 1)` is the cone, `cone_n(K, 2)` the suspension.
    pub fn cone_n(&self, n: usize) -> Result<SimplicialComplex> {
        if n == 0 {
            return Err(Error::InvalidParameter("cone_n needs n ≥ 1".into()));
        }
        let taken: HashSet<&str> = self.names.iter().map(String::as_str).collect();
        let mut names = Vec::with_capacity(n);
        let mut k = 0usize;
        while names.len() < n {
            let cand = format!("c{k}");
            if !taken.contains(cand.as_str()) {
                names.push(cand);
            }
            k += 1;
        }
        self.join(&generate_points_named(names))
    }

    pub fn cone(&self) -> Result<SimplicialComplex> {
        self.cone_n(1)
    }

    pub fn suspension(&self) -> Result<SimplicialComplex> {
        self.cone_n(2)
    }

    /// Identifies vertex `l_vertex` of `other` with vertex `k_vertex` of `self`; the result keeps
    /// `self`'s vertices first, followed by the remaining vertices of `other`.
    pub fn wedge(&self, other: &SimplicialComplex, k_vertex: &str, l_vertex: &str) -> Result<SimplicialComplex> {
        let kv = self.vertex_index(k_vertex).ok_or_else(|| Error::UnknownVertex(k_vertex.to_string()))?;
        let lv = other.vertex_index(l_vertex).ok_or_else(|| Error::UnknownVertex(l_vertex.to_string()))?;
        let mine: HashSet<&String> = self.names.iter().collect();
        if let Some(n) = other.names.iter().enumerate().find(|(i, n)| *i as u32 != lv && mine.contains(n)).map(|p| p.1) {
            return Err(Error::NameCollision(n.clone()));
        }
        let mut names = self.names.clone();
        let mut map = vec![0u32; other.names.len()];
        for (i, n) in other.names.iter().enumerate() {
            if i as u32 == lv {
                map[i] = kv;
            } else {
                map[i] = names.len() as u32;
                names.push(n.clone());
            }
        }
        let mut set: Vec<Simplex> = self.all_simplices().cloned().collect();
        set.extend(other.all_simplices().map(|t| Simplex::new(t.map(|w| map[w as usize]))));
        Ok(Self::from_simplex_set(names, set))
    }

    /// Staircase triangulation on `S × T`, vertex `(i, j)` at position `i·|T| + j`.
    pub fn cartesian_product(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let (m, n) = (self.names.len(), other.names.len());
        let mut names = Vec::with_capacity(m * n);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("({a},{b})"));
            }
        }
        let mut maximal_chains: BTreeSet<Simplex> = BTreeSet::new();
        let fk: Vec<Simplex> = self.facets().into_iter().filter(|s| !s.is_empty()).collect();
        let fl: Vec<Simplex> = other.facets().into_iter().filter(|s| !s.is_empty()).collect();
        for f in &fk {
            for g in &fl {
                for path in lattice_paths(f.len() - 1, g.len() - 1) {
                    let v: Vec<u32> = path.iter().map(|&(i, j)| f.0[i] * n as u32 + g.0[j]).collect();
                    maximal_chains.insert(Simplex::new(v));
                }
            }
        }
        Self::from_index_facets(names, maximal_chains.into_iter().collect())
    }

    /// Same complex with a permuted vertex order; `order[k]` is the old index of the new `k`-th vertex.
    pub fn reorder(&self, order: &[u32]) -> Result<SimplicialComplex> {
        let n = self.names.len();
        let mut inv = vec![u32::MAX; n];
        if order.len() != n {
            return Err(Error::InvalidParameter("order must list every vertex once".into()));
        }
        for (k, &old) in order.iter().enumerate() {
            if old as usize >= n || inv[old as usize] != u32::MAX {
                return Err(Error::InvalidParameter("order must list every vertex once".into()));
            }
            inv[old as usize] = k as u32;
        }
        let names = order.iter().map(|&o| self.names[o as usize].clone()).collect();
        let set: Vec<Simplex> = self.all_simplices().map(|s| Simplex::new(s.map(|v| inv[v as usize]))).collect();
        Ok(Self::from_simplex_set(names, set))
    }

    /// Same complex with every vertex name passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<SimplicialComplex> {
        let names: Vec<String> = self.names.iter().map(|n| f(n)).collect();
        let uniq: HashSet<&String> = names.iter().collect();
        if uniq.len() != names.len() {
            return Err(Error::NameCollision("renaming is not injective".into()));
        }
        let mut k = self.clone();
        k.names = names;
        Ok(k)
    }

    /// True when every vertex subset of every simplex is present and all vertices are 0-simplices.
    pub fn is_downward_closed(&self) -> bool {
        self.all_simplices().all(|s| s.facets().all(|(_, f)| self.contains(&f)))
            && (0..self.names.len() as u32).all(|v| self.contains(&Simplex::vertex(v)))
            && self.contains(&Simplex::empty())
    }

    /// Codimension-one faces with the top simplices containing them and the boundary coefficients.
    fn ridges(&self) -> Result<HashMap<Simplex, Vec<(Simplex, i32)>>> {
        let n = self.dim();
        if self.facets().iter().any(|f| f.dim() != n) {
            return Err(Error::NotOrientable("complex is not pure".into()));
        }
        let mut ridges: HashMap<Simplex, Vec<(Simplex, i32)>> = HashMap::new();
        for t in self.simplices(n) {
            for (i, f) in t.facets() {
                ridges.entry(f).or_default().push((t.clone(), if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        if let Some((f, _)) = ridges.iter().find(|(_, ts)| ts.len() > 2) {
            return Err(Error::NotOrientable(format!("face {} lies in more than two top simplices", self.format_simplex(f))));
        }
        Ok(ridges)
    }

    /// Signs on the top simplices making interior codimension-one faces cancel in the boundary.
    ///
    /// Each connected piece is seeded with sign `+1` on its lexicographically least top simplex.
    pub fn coherent_orientation(&self) -> Result<HashMap<Simplex, i32>> {
        let ridges = self.ridges()?;
        let n = self.dim();
        let mut sign: HashMap<Simplex, i32> = HashMap::new();
        for seed in self.simplices(n) {
            if sign.contains_key(seed) {
                continue;
            }
            sign.insert(seed.clone(), 1);
            let mut queue = std::collections::VecDeque::from([seed.clone()]);
            while let Some(t) = queue.pop_front() {
                let e = sign[&t];
                for (i, f) in t.facets() {
                    let c = if i % 2 == 0 { 1 } else { -1 };
                    for (u, cu) in &ridges[&f] {
                        if *u == t {
                            continue;
                        }
                        let want = -e * c * cu;
                        match sign.get(u) {
                            Some(&have) if have != want => {
                                return Err(Error::NotOrientable(format!(
                                    "inconsistent orientation across {}",
                                    self.format_simplex(&f)
                                )))
                            }
                            Some(_) => {}
                            None => {
                                sign.insert(u.clone(), want);
                                queue.push_back(u.clone());
                            }
                        }
                    }
                }
            }
        }
        Ok(sign)
    }

    /// The closure of the codimension-one faces lying in exactly one top simplex.
    pub fn pseudomanifold_boundary(&self) -> Result<SimplicialComplex> {
        let ridges = self.ridges()?;
        let mut set = HashSet::new();
        for (f, ts) in &ridges {
            if ts.len() == 1 {
                set.extend(f.subsets());
            }
        }
        Ok(self.subcomplex(&set))
    }
}

/// Monotone lattice paths from `(0,0)` to `(a,b)` as vertex sequences.
pub(crate) fn lattice_paths(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = vec![(0usize, 0usize)];
    fn rec(a: usize, b: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *cur.last().expect("nonempty path");
        if i == a && j == b {
            out.push(cur.clone());
            return;
        }
        if i < a {
            cur.push((i + 1, j));
            rec(a, b, cur, out);
            cur.pop();
        }
        if j < b {
            cur.push((i, j + 1));
            rec(a, b, cur, out);
            cur.pop();
        }
    }
    rec(a, b, &mut cur, &mut out);
    out
}

fn generate_points_named(names: Vec<String>) -> SimplicialComplex {
    SimplicialComplex::from_index_facets(names, Vec::new())
}

fn vnames(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Standard complexes with vertices named `v0, v1, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Simplex(usize),
    Sphere(usize),
    Disk(usize),
    Path(usize),
    Cycle(usize),
    Points(usize),
    Point,
}

pub fn generate(kind: Generator) -> Result<SimplicialComplex> {
    Ok(match kind {
        Generator::Simplex(n) | Generator::Disk(n) => {
            SimplicialComplex::from_index_facets(vnames(n + 1), vec![Simplex((0..=n as u32).collect())])
        }
        Generator::Sphere(n) => {
            let full = Simplex((0..=(n as u32 + 1)).collect());
            SimplicialComplex::from_index_facets(vnames(n + 2), full.facets().map(|f| f.1).collect())
        }
        Generator::Path(n) => {
            if n == 0 {
                return Err(Error::InvalidParameter("path needs n ≥ 1".into()));
            }
            SimplicialComplex::from_index_facets(vnames(n + 1), (0..n as u32).map(|i| Simplex(vec![i, i + 1])).collect())
        }
        Generator::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter("cycle needs n ≥ 3".into()));
            }
            let n32 = n as u32;
            SimplicialComplex::from_index_facets(vnames(n), (0..n32).map(|i| Simplex::new(vec![i, (i + 1) % n32])).collect())
        }
        Generator::Points(n) => SimplicialComplex::from_index_facets(vnames(n), Vec::new()),
        Generator::Point => SimplicialComplex::from_index_facets(vnames(1), Vec::new()),
    })
}

impl FromStr for Generator {
    type Err = Error;

    /// `disk:3`, `sphere:2`, `cycle:5`, `point`, ...
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let n = || -> Result<usize> {
            arg.ok_or_else(|| Error::Parse(format!("generator `{name}` needs a parameter")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator parameter in `{s}`")))
        };
        match name {
            "simplex" => Ok(Generator::Simplex(n()?)),
            "sphere" => Ok(Generator::Sphere(n()?)),
            "disk" => Ok(Generator::Disk(n()?)),
            "path" => Ok(Generator::Path(n()?)),
            "cycle" => Ok(Generator::Cycle(n()?)),
            "points" => Ok(Generator::Points(n()?)),
            "point" if arg.is_none() => Ok(Generator::Point),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}
