//! Catalog of explicit list assignments with machine-checkable claims.
//!
//! Stored entries keep their printed 1-based color labels; the transversal
//! family is generated on load.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructive::precolor_counterexample;
use crate::error::{Error, Result};
use crate::exact;
use crate::graph::{ListAssignment, MultipartiteGraph, Request};
use crate::instance::{labeled_parts, labeled_request, Instance, InstanceFile, RequestEntry};

const CATALOG_JSON: &str = include_str!("../data/witnesses.json");

/// Generated `(t, n, b)` transversal counterexamples.
pub const PRECOLOR_FAMILY: [(usize, usize, usize); 2] = [(3, 2, 9), (2, 2, 4)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    NotColorable,
    MaxSatisfiedAtMost { value: usize },
    MaxSatisfiedEquals { value: usize },
}

/// On-disk form of an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub name: String,
    pub partite_sizes: Vec<usize>,
    pub lists: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request: Option<Vec<RequestEntry>>,
    pub claim: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CatalogFile {
    entries: Vec<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub name: String,
    pub graph: MultipartiteGraph,
    pub lists: ListAssignment,
    pub request: Option<Request>,
    pub claim: Claim,
}

impl WitnessRecord {
    pub fn to_entry(&self) -> Result<WitnessEntry> {
        let inst = Instance::from_file(&InstanceFile {
            partite_sizes: self.partite_sizes.clone(),
            lists: self.lists.clone(),
            request: self.request.clone(),
        })
        .map_err(|e| Error::Parse(format!("witness {}: {e}", self.name)))?;
        Ok(WitnessEntry { name: self.name.clone(), graph: inst.graph, lists: inst.lists, request: inst.request, claim: self.claim })
    }
}

impl WitnessEntry {
    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            name: self.name.clone(),
            partite_sizes: self.graph.partite_sizes().to_vec(),
            lists: labeled_parts(&self.graph, &self.lists),
            request: self.request.as_ref().map(|r| labeled_request(&self.graph, &self.lists, r)),
            claim: self.claim,
        }
    }
}

/// One entry per line inside a fixed envelope; parsing and re-serializing a
/// catalog file reproduces it byte for byte.
pub fn to_canonical_json(records: &[WitnessRecord]) -> String {
    let lines: Vec<String> = records.iter().map(|r| format!("    {}", serde_json::to_string(r).unwrap())).collect();
    format!("{{\n  \"entries\": [\n{}\n  ]\n}}\n", lines.join(",\n"))
}

pub fn parse_records(text: &str) -> Result<Vec<WitnessRecord>> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    Ok(file.entries)
}

pub fn stored_records() -> Vec<WitnessRecord> {
    parse_records(CATALOG_JSON).expect("bundled witness catalog parses")
}

pub fn precolor_entry(t: usize, n: usize, b: usize) -> Result<WitnessEntry> {
    let lists = precolor_counterexample(t, n, b)?;
    Ok(WitnessEntry {
        name: format!("precolor_{t}_{n}_{b}"),
        graph: MultipartiteGraph::complete_bipartite(n, b)?,
        lists,
        request: None,
        claim: Claim::NotColorable,
    })
}

/// Stored entries followed by the generated transversal family.
pub fn catalog() -> Vec<WitnessEntry> {
    let mut out: Vec<WitnessEntry> = stored_records().iter().map(|r| r.to_entry().expect("bundled witness is well formed")).collect();
    out.extend(PRECOLOR_FAMILY.iter().map(|&(t, n, b)| precolor_entry(t, n, b).unwrap()));
    out
}

/// SHA-256 over the canonical serialization of the full catalog.
pub fn catalog_hash() -> String {
    let records: Vec<WitnessRecord> = catalog().iter().map(WitnessEntry::to_record).collect();
    hex::encode(Sha256::digest(to_canonical_json(&records).as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub claim: Claim,
    pub passed: bool,
    pub colorable: bool,
    /// Exact maximum, when the entry carries a request and is colorable.
    pub measured_best: Option<usize>,
    pub nodes: u64,
}

/// Runs the exact solver and checks the claim.
pub fn verify(entry: &WitnessEntry) -> Result<VerificationReport> {
    entry.lists.validate(&entry.graph)?;
    let (colorable, measured_best, nodes) = match &entry.request {
        Some(r) => {
            let res = exact::max_satisfied(&entry.graph, &entry.lists, r)?;
            (res.is_solved(), res.is_solved().then_some(res.best), res.nodes)
        }
        None => {
            let (f, nodes) = exact::is_colorable_with_stats(&entry.graph, &entry.lists)?;
            (f.is_some(), None, nodes)
        }
    };
    let passed = match entry.claim {
        Claim::NotColorable => !colorable,
        Claim::MaxSatisfiedAtMost { value } => entry.request.is_some() && measured_best.is_some_and(|b| b <= value),
        Claim::MaxSatisfiedEquals { value } => entry.request.is_some() && measured_best == Some(value),
    };
    Ok(VerificationReport { name: entry.name.clone(), claim: entry.claim, passed, colorable, measured_best, nodes })
}

/// Slot-by-slot differences between an entry and the catalog entry of the
/// same name.
pub fn diff(entry: &WitnessEntry) -> Vec<String> {
    let Some(reference) = catalog().into_iter().find(|e| e.name == entry.name) else {
        return vec![format!("no catalog entry named {}", entry.name)];
    };
    let a = entry.to_record();
    let b = reference.to_record();
    let mut out = Vec::new();
    if a.partite_sizes != b.partite_sizes {
        out.push(format!("partite_sizes: {:?} != {:?}", a.partite_sizes, b.partite_sizes));
        return out;
    }
    for (p, (pa, pb)) in a.lists.iter().zip(&b.lists).enumerate() {
        for (i, (la, lb)) in pa.iter().zip(pb).enumerate() {
            if la != lb {
                out.push(format!("lists[{p}][{i}]: {la:?} != {lb:?}"));
            }
        }
    }
    if a.request != b.request {
        out.push("request differs".into());
    }
    if a.claim != b.claim {
        out.push(format!("claim: {:?} != {:?}", a.claim, b.claim));
    }
    out
}
