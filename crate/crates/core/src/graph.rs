//! Complete multipartite graphs, list assignments, requests and colorings.
//!
//! Vertices are addressed structurally as `(part, index)` and stored part-major,
//! so vertex `(p, i)` has flat index `offset(p) + i`.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::brute;
use crate::colorset::{ColorId, ColorSet};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub part: usize,
    pub index: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.part, self.index)
    }
}

/// `K_{n_1, ..., n_k}`. Two vertices are adjacent iff their parts differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultipartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl MultipartiteGraph {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidGraph("at least one part is required".into()));
        }
        if let Some(p) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::InvalidGraph(format!("part {p} is empty")));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        for &n in &sizes {
            offsets.push(acc);
            acc += n;
        }
        offsets.push(acc);
        Ok(MultipartiteGraph { sizes, offsets })
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![m, n])
    }

    pub fn partite_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn part_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn part_size(&self, part: usize) -> usize {
        self.sizes[part]
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Flat indices of the vertices of `part`.
    pub fn part_range(&self, part: usize) -> Range<usize> {
        self.offsets[part]..self.offsets[part + 1]
    }

    pub fn part_of(&self, v: usize) -> usize {
        // offsets is sorted; the last offset <= v identifies the part
        self.offsets.partition_point(|&o| o <= v) - 1
    }

    pub fn vertex(&self, v: usize) -> Vertex {
        let part = self.part_of(v);
        Vertex { part, index: v - self.offsets[part] }
    }

    pub fn flat(&self, v: Vertex) -> Option<usize> {
        (v.part < self.sizes.len() && v.index < self.sizes[v.part]).then(|| self.offsets[v.part] + v.index)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.part_of(u) != self.part_of(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_count() - self.sizes[self.part_of(v)]
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_count() - self.sizes.iter().min().unwrap()
    }

    pub fn is_bipartite(&self) -> bool {
        self.sizes.len() == 2
    }

    /// Parts sorted ascending by size (stable), with `perm[new] = old`.
    pub fn normalized(&self) -> (MultipartiteGraph, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.sizes.len()).collect();
        perm.sort_by_key(|&p| self.sizes[p]);
        let sizes = perm.iter().map(|&p| self.sizes[p]).collect();
        (MultipartiteGraph::new(sizes).unwrap(), perm)
    }
}

impl fmt::Display for MultipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        write!(f, "K_{{{}}}", parts.join(","))
    }
}

/// Per-vertex color lists over a dense pot, plus the original labels of the
/// dense colors for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
    labels: Vec<u32>,
}

impl ListAssignment {
    /// Lists over dense colors; labels are the dense ids themselves.
    pub fn new(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists, labels: Vec::new() }
    }

    /// Remaps arbitrary labels to `0..p` in ascending label order.
    pub fn from_labels(lists: &[Vec<u32>]) -> Result<Self> {
        let mut all: Vec<u32> = lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() > ColorSet::CAPACITY {
            return Err(Error::PotTooLarge(all.len()));
        }
        let dense = lists
            .iter()
            .map(|l| l.iter().map(|c| ColorId(all.binary_search(c).unwrap() as u32)).collect())
            .collect();
        Ok(ListAssignment { lists: dense, labels: all })
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn set_list(&mut self, v: usize, list: ColorSet) {
        self.lists[v] = list;
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn pot(&self) -> ColorSet {
        self.lists.iter().fold(ColorSet::EMPTY, |a, &l| a.union(l))
    }

    pub fn pot_size(&self) -> usize {
        self.pot().len()
    }

    /// Original label of a dense color.
    pub fn label(&self, c: ColorId) -> u32 {
        self.labels.get(c.index()).copied().unwrap_or(c.0)
    }

    /// Dense color carrying `label`, if any list uses it.
    pub fn color_for_label(&self, label: u32) -> Option<ColorId> {
        if self.labels.is_empty() {
            let c = ColorId(label);
            return (label < 64 && self.pot().contains(c)).then_some(c);
        }
        self.labels.binary_search(&label).ok().map(|i| ColorId(i as u32))
    }

    pub fn labels(&self) -> Option<&[u32]> {
        (!self.labels.is_empty()).then_some(self.labels.as_slice())
    }

    pub fn labeled_lists(&self) -> Vec<Vec<u32>> {
        self.lists.iter().map(|l| l.iter().map(|c| self.label(c)).collect()).collect()
    }

    pub fn is_k_assignment(&self, k: usize) -> bool {
        self.lists.iter().all(|l| l.len() == k)
    }

    /// Lists of size `a` on part 0 and `b` on part 1 of a bipartite graph.
    pub fn is_ab_assignment(&self, g: &MultipartiteGraph, a: usize, b: usize) -> bool {
        g.is_bipartite()
            && self.lists.len() == g.vertex_count()
            && g.part_range(0).all(|v| self.lists[v].len() == a)
            && g.part_range(1).all(|v| self.lists[v].len() == b)
    }

    /// Checks vertex count and nonempty lists.
    pub fn validate(&self, g: &MultipartiteGraph) -> Result<()> {
        if self.lists.len() != g.vertex_count() {
            return Err(Error::VertexMismatch { expected: g.vertex_count(), found: self.lists.len() });
        }
        if let Some(v) = self.lists.iter().position(|l| l.is_empty()) {
            let Vertex { part, index } = g.vertex(v);
            return Err(Error::EmptyList { part, index });
        }
        Ok(())
    }

    /// Same lists with labels reset to the dense ids.
    pub fn dense(&self) -> ListAssignment {
        ListAssignment::new(self.lists.clone())
    }
}

/// Partial map from vertices to requested colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Request {
    entries: Vec<Option<ColorId>>,
}

impl Request {
    pub fn empty(vertex_count: usize) -> Self {
        Request { entries: vec![None; vertex_count] }
    }

    pub fn from_pairs(vertex_count: usize, pairs: impl IntoIterator<Item = (usize, ColorId)>) -> Self {
        let mut r = Request::empty(vertex_count);
        for (v, c) in pairs {
            r.entries[v] = Some(c);
        }
        r
    }

    pub fn get(&self, v: usize) -> Option<ColorId> {
        self.entries[v]
    }

    pub fn set(&mut self, v: usize, c: Option<ColorId>) {
        self.entries[v] = c;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().enumerate().filter_map(|(v, c)| c.map(|_| v))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, ColorId)> + '_ {
        self.entries.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn domain_size(&self) -> usize {
        self.entries.iter().filter(|c| c.is_some()).count()
    }

    /// `r(v) ∈ L(v)` for every requested vertex, and the domain is nonempty.
    pub fn validate(&self, g: &MultipartiteGraph, l: &ListAssignment) -> Result<()> {
        if self.entries.len() != g.vertex_count() {
            return Err(Error::VertexMismatch { expected: g.vertex_count(), found: self.entries.len() });
        }
        if self.domain_size() == 0 {
            return Err(Error::EmptyRequest);
        }
        for (v, c) in self.pairs() {
            if !l.list(v).contains(c) {
                let Vertex { part, index } = g.vertex(v);
                return Err(Error::InvalidRequest { part, index, color: l.label(c) });
            }
        }
        Ok(())
    }
}

/// Total map from vertices to colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<ColorId>,
}

impl Coloring {
    pub fn new(colors: Vec<ColorId>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> ColorId {
        self.colors[v]
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn used_on(&self, range: Range<usize>) -> ColorSet {
        self.colors[range].iter().copied().collect()
    }
}

/// Properness via part disjointness: the color sets of distinct parts must not meet.
pub fn is_proper(g: &MultipartiteGraph, f: &Coloring) -> Result<bool> {
    if f.len() != g.vertex_count() {
        return Err(Error::VertexMismatch { expected: g.vertex_count(), found: f.len() });
    }
    let mut seen = ColorSet::EMPTY;
    for p in 0..g.part_count() {
        let used = f.used_on(g.part_range(p));
        if !used.is_disjoint(seen) {
            return Ok(false);
        }
        seen = seen.union(used);
    }
    Ok(true)
}

pub fn respects_lists(l: &ListAssignment, f: &Coloring) -> Result<bool> {
    if f.len() != l.len() {
        return Err(Error::VertexMismatch { expected: l.len(), found: f.len() });
    }
    Ok((0..l.len()).all(|v| l.list(v).contains(f.color(v))))
}

pub fn satisfied_count(r: &Request, f: &Coloring) -> Result<usize> {
    if f.len() != r.len() {
        return Err(Error::VertexMismatch { expected: r.len(), found: f.len() });
    }
    Ok(r.pairs().filter(|&(v, c)| f.color(v) == c).count())
}

/// Hall ratio together with the brute-force value when the graph is small
/// enough to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HallRatio {
    pub value: Rational,
    pub brute_force: Option<Rational>,
}

pub const HALL_BRUTE_FORCE_LIMIT: usize = 12;

/// `ρ(K_{n_1..n_k}) = k`, cross-checked against induced-subgraph enumeration
/// for `|V| <= 12`.
pub fn hall_ratio(g: &MultipartiteGraph) -> HallRatio {
    let value = Rational::from_integer(g.part_count() as i64);
    let brute_force = (g.vertex_count() <= HALL_BRUTE_FORCE_LIMIT).then(|| brute::hall_ratio(g));
    if let Some(b) = brute_force {
        assert_eq!(b, value, "Hall ratio closed form disagrees with enumeration on {g}");
    }
    HallRatio { value, brute_force }
}

/// `col(K) = 1 + (sum of all part sizes except a largest one)`.
pub fn coloring_number(g: &MultipartiteGraph) -> usize {
    let largest = *g.partite_sizes().iter().max().unwrap();
    let col = 1 + g.vertex_count() - largest;
    if g.vertex_count() <= 10 {
        assert_eq!(brute::coloring_number(g), col, "coloring number mismatch on {g}");
    }
    col
}

pub fn independence_number(g: &MultipartiteGraph) -> usize {
    let alpha = *g.partite_sizes().iter().max().unwrap();
    if g.vertex_count() <= 12 {
        assert_eq!(brute::independence_number(g), alpha, "independence number mismatch on {g}");
    }
    alpha
}

pub fn chromatic_number(g: &MultipartiteGraph) -> usize {
    g.part_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorset::colors;

    fn coloring(ids: &[u32]) -> Coloring {
        Coloring::new(ids.iter().map(|&c| ColorId(c)).collect())
    }

    #[test]
    fn properness_on_small_graphs() {
        let k11 = MultipartiteGraph::complete_bipartite(1, 1).unwrap();
        assert!(!is_proper(&k11, &coloring(&[1, 1])).unwrap());
        assert!(is_proper(&k11, &coloring(&[1, 2])).unwrap());
        let k22 = MultipartiteGraph::complete_bipartite(2, 2).unwrap();
        assert!(is_proper(&k22, &coloring(&[1, 1, 2, 3])).unwrap());
        assert!(is_proper(&k11, &coloring(&[1])).is_err());
    }

    #[test]
    fn list_respect() {
        let l = ListAssignment::new(vec![colors(&[1, 2]), colors(&[1, 2])]);
        assert!(respects_lists(&l, &coloring(&[1, 2])).unwrap());
        let l = ListAssignment::new(vec![colors(&[1]), colors(&[2])]);
        assert!(!respects_lists(&l, &coloring(&[2, 2])).unwrap());
        assert!(respects_lists(&l, &coloring(&[2])).is_err());
    }

    #[test]
    fn satisfied_counts() {
        let r = Request::from_pairs(1, [(0, ColorId(1))]);
        assert_eq!(satisfied_count(&r, &coloring(&[2])).unwrap(), 0);
        let f = coloring(&[3, 4, 5]);
        let r = Request::from_pairs(3, [(0, ColorId(3)), (2, ColorId(5))]);
        assert_eq!(satisfied_count(&r, &f).unwrap(), 2);
    }

    #[test]
    fn invariants_of_named_graphs() {
        let g = |s: &[usize]| MultipartiteGraph::new(s.to_vec()).unwrap();
        assert_eq!(hall_ratio(&g(&[1, 1])).value, Rational::from_integer(2));
        let h = hall_ratio(&g(&[2, 3]));
        assert_eq!(h.brute_force, Some(Rational::from_integer(2)));
        assert_eq!(coloring_number(&g(&[2, 3])), 3);
        assert_eq!(coloring_number(&g(&[1, 1, 1])), 3);
        assert_eq!(coloring_number(&g(&[3, 3])), 4);
        assert_eq!(independence_number(&g(&[3, 7])), 7);
        assert_eq!(independence_number(&g(&[1, 1])), 1);
        assert_eq!(independence_number(&g(&[2, 2, 2])), 2);
    }

    #[test]
    fn vertex_addressing_is_part_major() {
        let g = MultipartiteGraph::new(vec![2, 3, 1]).unwrap();
        assert_eq!(g.vertex(0), Vertex { part: 0, index: 0 });
        assert_eq!(g.vertex(4), Vertex { part: 1, index: 2 });
        assert_eq!(g.vertex(5), Vertex { part: 2, index: 0 });
        assert_eq!(g.flat(Vertex { part: 1, index: 0 }), Some(2));
        assert_eq!(g.flat(Vertex { part: 2, index: 1 }), None);
        let (n, perm) = g.normalized();
        assert_eq!(n.partite_sizes(), &[1, 2, 3]);
        assert_eq!(perm, vec![2, 0, 1]);
    }

    #[test]
    fn labels_are_remapped_densely() {
        let l = ListAssignment::from_labels(&[vec![10, 30], vec![20, 30]]).unwrap();
        assert_eq!(l.list(0), colors(&[0, 2]));
        assert_eq!(l.label(ColorId(1)), 20);
        assert_eq!(l.color_for_label(30), Some(ColorId(2)));
        assert_eq!(l.labeled_lists(), vec![vec![10, 30], vec![20, 30]]);
    }

    #[test]
    fn rejects_empty_parts() {
        assert!(MultipartiteGraph::new(vec![]).is_err());
        assert!(MultipartiteGraph::new(vec![2, 0]).is_err());
    }
}
