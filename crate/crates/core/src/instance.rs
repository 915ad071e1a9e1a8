//! JSON instance files: partite sizes, per-part per-vertex lists, and an
//! optional request.
//!
//! ```json
//! { "partite_sizes": [1, 1],
//!   "lists": [[[1, 2]], [[1, 2]]],
//!   "request": [{"part": 0, "index": 0, "color": 1}] }
//! ```

use serde::{Deserialize, Serialize};

use crate::colorset::ColorId;
use crate::error::{Error, Result};
use crate::graph::{Coloring, ListAssignment, MultipartiteGraph, Request, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestEntry {
    pub part: usize,
    pub index: usize,
    pub color: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub partite_sizes: Vec<usize>,
    pub lists: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request: Option<Vec<RequestEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: MultipartiteGraph,
    pub lists: ListAssignment,
    pub request: Option<Request>,
}

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn into_instance(self) -> Result<Instance> {
        Instance::from_file(&self)
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        Instance::from_file(&InstanceFile::parse(text)?)
    }

    pub fn from_file(f: &InstanceFile) -> Result<Instance> {
        if f.partite_sizes.is_empty() {
            return Err(at("partite_sizes", "at least one part is required"));
        }
        if let Some(i) = f.partite_sizes.iter().position(|&n| n == 0) {
            return Err(at(&format!("partite_sizes[{i}]"), "part sizes must be positive"));
        }
        let graph = MultipartiteGraph::new(f.partite_sizes.clone())?;
        if f.lists.len() != graph.part_count() {
            return Err(at("lists", format!("expected {} parts, found {}", graph.part_count(), f.lists.len())));
        }
        let mut flat: Vec<Vec<u32>> = Vec::with_capacity(graph.vertex_count());
        for (p, part) in f.lists.iter().enumerate() {
            if part.len() != graph.part_size(p) {
                return Err(at(&format!("lists[{p}]"), format!("expected {} vertices, found {}", graph.part_size(p), part.len())));
            }
            for (i, list) in part.iter().enumerate() {
                if list.is_empty() {
                    return Err(at(&format!("lists[{p}][{i}]"), "list is empty"));
                }
                let mut sorted = list.clone();
                sorted.sort_unstable();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(at(&format!("lists[{p}][{i}]"), format!("color {} appears twice", w[0])));
                }
                flat.push(list.clone());
            }
        }
        let lists = ListAssignment::from_labels(&flat)?;
        let request = match &f.request {
            None => None,
            Some(entries) => {
                let mut r = Request::empty(graph.vertex_count());
                for (j, e) in entries.iter().enumerate() {
                    let path = format!("request[{j}]");
                    let v = graph
                        .flat(Vertex { part: e.part, index: e.index })
                        .ok_or_else(|| at(&path, format!("no vertex ({}, {})", e.part, e.index)))?;
                    if r.get(v).is_some() {
                        return Err(at(&path, format!("vertex ({}, {}) is requested twice", e.part, e.index)));
                    }
                    let c = lists
                        .color_for_label(e.color)
                        .filter(|&c| lists.list(v).contains(c))
                        .ok_or_else(|| at(&path, format!("color {} is not in the list of vertex ({}, {})", e.color, e.part, e.index)))?;
                    r.set(v, Some(c));
                }
                if r.domain_size() == 0 {
                    return Err(at("request", "domain is empty"));
                }
                Some(r)
            }
        };
        Ok(Instance { graph, lists, request })
    }

    /// Serializable form with original labels.
    pub fn to_file(&self) -> InstanceFile {
        let labeled = self.lists.labeled_lists();
        let lists = (0..self.graph.part_count()).map(|p| self.graph.part_range(p).map(|v| labeled[v].clone()).collect()).collect();
        let request = self.request.as_ref().map(|r| {
            r.pairs()
                .map(|(v, c)| {
                    let Vertex { part, index } = self.graph.vertex(v);
                    RequestEntry { part, index, color: self.lists.label(c) }
                })
                .collect()
        });
        InstanceFile { partite_sizes: self.graph.partite_sizes().to_vec(), lists, request }
    }
}

/// Per-part color labels of a coloring, for reports.
pub fn labeled_coloring(g: &MultipartiteGraph, l: &ListAssignment, f: &Coloring) -> Vec<Vec<u32>> {
    (0..g.part_count()).map(|p| g.part_range(p).map(|v| l.label(f.color(v))).collect()).collect()
}

/// Per-part lists with labels.
pub fn labeled_parts(g: &MultipartiteGraph, l: &ListAssignment) -> Vec<Vec<Vec<u32>>> {
    let labeled = l.labeled_lists();
    (0..g.part_count()).map(|p| g.part_range(p).map(|v| labeled[v].clone()).collect()).collect()
}

/// Request entries with labels.
pub fn labeled_request(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Vec<RequestEntry> {
    r.pairs()
        .map(|(v, c): (usize, ColorId)| {
            let Vertex { part, index } = g.vertex(v);
            RequestEntry { part, index, color: l.label(c) }
        })
        .collect()
}
