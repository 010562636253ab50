//! Text and JSON forms of a complex.
//!
//! Text: one facet per line as whitespace-separated vertex names, `#` starts a
//! comment. A `#!vertices a b c` line fixes the vertex order and may declare
//! isolated vertices; without it vertices are ordered by first appearance.

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        ComplexJson {
            vertices: k.names().to_vec(),
            facets: k.facets().iter().filter(|s| !s.is_empty()).map(|s| k.simplex_names(s)).collect(),
        }
    }
}

impl TryFrom<&ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: &ComplexJson) -> Result<Self> {
        SimplicialComplex::from_facets(&j.vertices, &j.facets)
    }
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexJson::from(k)).expect("serializable")
}

pub fn complex_from_json(s: &str) -> Result<SimplicialComplex> {
    let j: ComplexJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    SimplicialComplex::try_from(&j)
}

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    out.push_str("#!vertices");
    for n in k.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for f in k.facets() {
        if f.is_empty() {
            continue;
        }
        out.push_str(&k.simplex_names(&f).join(" "));
        out.push('\n');
    }
    out
}

pub fn complex_from_text(s: &str) -> Result<SimplicialComplex> {
    let mut declared: Option<Vec<String>> = None;
    let mut seen: Vec<String> = Vec::new();
    let mut facets: Vec<Vec<String>> = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        if let Some(rest) = raw.trim_start().strip_prefix("#!vertices") {
            if declared.is_some() {
                return Err(Error::Parse(format!("line {}: second #!vertices line", lineno + 1)));
            }
            declared = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let line = raw.split('#').next().unwrap_or("");
        let facet: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if facet.is_empty() {
            continue;
        }
        for v in &facet {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        facets.push(facet);
    }
    let vertices = match declared {
        Some(d) => d,
        None => seen,
    };
    SimplicialComplex::from_facets(&vertices, &facets)
}
