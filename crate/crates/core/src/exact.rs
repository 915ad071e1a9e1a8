//! Exact L-colorability and request maximization.
//!
//! Properness on a complete multipartite graph only constrains the sets of
//! colors used by each part, so the search runs part by part over
//! `(colors used by finished parts, colors used by the current part)` states,
//! merging states with equal keys and keeping the best satisfied count. The
//! part with the most expensive list product is held back and colored
//! greedily at the end: given the colors used elsewhere, each of its vertices
//! independently takes its request when available and otherwise any free
//! list color.

use std::collections::HashMap;

use crate::colorset::{ColorId, ColorSet};
use crate::error::{Error, Result};
use crate::graph::{Coloring, ListAssignment, MultipartiteGraph, Request};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxSatStatus {
    NotColorable,
    Solved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSatResult {
    pub status: MaxSatStatus,
    /// Meaningful only when solved.
    pub best: usize,
    pub witness: Option<Coloring>,
    /// Search states created.
    pub nodes: u64,
}

impl MaxSatResult {
    pub fn is_solved(&self) -> bool {
        self.status == MaxSatStatus::Solved
    }
}

#[derive(Clone, Copy)]
struct Node {
    used: ColorSet,
    part: ColorSet,
    sat: u32,
    parent: u32,
    color: ColorId,
}

/// Parts other than the held-back one, in processing order, followed by the
/// held-back part.
fn plan(g: &MultipartiteGraph, l: &ListAssignment) -> (Vec<usize>, usize) {
    let cost = |p: usize| -> f64 { g.part_range(p).map(|v| (l.list(v).len() as f64).ln()).sum() };
    let costs: Vec<f64> = (0..g.part_count()).map(cost).collect();
    let last = (0..g.part_count())
        .max_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(b.cmp(&a)))
        .unwrap();
    let mut order: Vec<usize> = (0..g.part_count()).filter(|&p| p != last).collect();
    // fewest feasible color choices first
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    (order, last)
}

struct Outcome {
    best: Option<(usize, Coloring)>,
    nodes: u64,
}

fn search(g: &MultipartiteGraph, l: &ListAssignment, r: Option<&Request>, first_only: bool) -> Outcome {
    let (order, last) = plan(g, l);
    let requested = |v: usize| r.and_then(|r| r.get(v));

    let root = Node { used: ColorSet::EMPTY, part: ColorSet::EMPTY, sat: 0, parent: u32::MAX, color: ColorId(0) };
    let mut layers: Vec<(usize, Vec<Node>)> = Vec::new();
    let mut frontier = vec![root];
    let mut nodes = 1u64;

    for &p in &order {
        for (i, v) in g.part_range(p).enumerate() {
            let starts_part = i == 0;
            let mut next: Vec<Node> = Vec::new();
            let mut index: HashMap<(u64, u64), u32> = HashMap::new();
            for (pi, node) in frontier.iter().enumerate() {
                let (used, part) = if starts_part {
                    (node.used.union(node.part), ColorSet::EMPTY)
                } else {
                    (node.used, node.part)
                };
                for c in l.list(v).difference(used) {
                    let sat = node.sat + u32::from(requested(v) == Some(c));
                    let key = (used.bits(), part.with(c).bits());
                    let cand = Node { used, part: part.with(c), sat, parent: pi as u32, color: c };
                    match index.get(&key) {
                        Some(&at) => {
                            if next[at as usize].sat < sat {
                                next[at as usize] = cand;
                            }
                        }
                        None => {
                            index.insert(key, next.len() as u32);
                            next.push(cand);
                            nodes += 1;
                        }
                    }
                }
            }
            if next.is_empty() {
                return Outcome { best: None, nodes };
            }
            layers.push((v, std::mem::replace(&mut frontier, next)));
        }
    }

    // Greedy completion of the held-back part for every surviving state.
    let last_vertices: Vec<usize> = g.part_range(last).collect();
    let mut best: Option<(u32, usize)> = None;
    for (i, node) in frontier.iter().enumerate() {
        let forbidden = node.used.union(node.part);
        let mut sat = node.sat;
        let mut feasible = true;
        for &v in &last_vertices {
            let avail = l.list(v).difference(forbidden);
            if avail.is_empty() {
                feasible = false;
                break;
            }
            if let Some(c) = requested(v) {
                sat += u32::from(avail.contains(c));
            }
        }
        if feasible && best.is_none_or(|(b, _)| sat > b) {
            best = Some((sat, i));
            if first_only {
                break;
            }
        }
    }
    let Some((sat, leaf)) = best else {
        return Outcome { best: None, nodes };
    };

    let mut colors = vec![ColorId(0); g.vertex_count()];
    let node = frontier[leaf];
    let forbidden = node.used.union(node.part);
    for &v in &last_vertices {
        let avail = l.list(v).difference(forbidden);
        colors[v] = match requested(v) {
            Some(c) if avail.contains(c) => c,
            _ => avail.min().unwrap(),
        };
    }
    // walk parents back through the layers
    let mut cursor = node;
    for (v, prev) in layers.iter().rev() {
        colors[*v] = cursor.color;
        cursor = prev[cursor.parent as usize];
    }
    Outcome { best: Some((sat as usize, Coloring::new(colors))), nodes }
}

/// A proper list-respecting coloring, or `None` when the lists admit none.
pub fn is_colorable(g: &MultipartiteGraph, l: &ListAssignment) -> Result<Option<Coloring>> {
    l.validate(g)?;
    Ok(search(g, l, None, true).best.map(|(_, f)| f))
}

/// Like [`is_colorable`], also reporting the number of search states.
pub fn is_colorable_with_stats(g: &MultipartiteGraph, l: &ListAssignment) -> Result<(Option<Coloring>, u64)> {
    l.validate(g)?;
    let out = search(g, l, None, true);
    Ok((out.best.map(|(_, f)| f), out.nodes))
}

/// Exact maximum number of satisfied requests over proper L-colorings.
pub fn max_satisfied(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Result<MaxSatResult> {
    l.validate(g)?;
    r.validate(g, l)?;
    let out = search(g, l, Some(r), false);
    Ok(match out.best {
        Some((best, f)) => MaxSatResult { status: MaxSatStatus::Solved, best, witness: Some(f), nodes: out.nodes },
        None => MaxSatResult { status: MaxSatStatus::NotColorable, best: 0, witness: None, nodes: out.nodes },
    })
}

/// `⌈ε·|D|⌉`, the number of requests an ε-satisfying coloring must grant.
pub fn required_satisfied(epsilon: Rational, domain_size: usize) -> usize {
    let need = (epsilon * Rational::from_integer(domain_size as i64)).ceil();
    need.to_integer().max(0) as usize
}

pub fn check_epsilon(epsilon: Rational) -> Result<()> {
    if epsilon < Rational::from_integer(0) || epsilon > Rational::from_integer(1) {
        return Err(Error::precondition(format!("epsilon {epsilon} is outside [0, 1]")));
    }
    Ok(())
}

pub fn epsilon_satisfiable(g: &MultipartiteGraph, l: &ListAssignment, r: &Request, epsilon: Rational) -> Result<bool> {
    check_epsilon(epsilon)?;
    let res = max_satisfied(g, l, r)?;
    Ok(res.is_solved() && res.best >= required_satisfied(epsilon, r.domain_size()))
}

/// Drops every set that contains another member of the family.
pub(crate) fn minimalize(mut family: Vec<ColorSet>) -> Vec<ColorSet> {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
    family.dedup();
    let mut out: Vec<ColorSet> = Vec::with_capacity(family.len());
    for s in family {
        if !out.iter().any(|m| m.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Inclusion-minimal color sets used by proper colorings of the given parts
/// (each entry is the lists of one part). Any superset is redundant when asking
/// which opposite lists a coloring blocks.
pub(crate) fn minimal_used_sets(parts: &[&[ColorSet]]) -> Vec<ColorSet> {
    let mut acc = vec![ColorSet::EMPTY];
    for lists in parts {
        let mut part_sets = vec![ColorSet::EMPTY];
        for &list in lists.iter() {
            let mut next = Vec::with_capacity(part_sets.len() * list.len());
            for s in &part_sets {
                for c in list {
                    next.push(s.with(c));
                }
            }
            part_sets = minimalize(next);
        }
        let mut combined = Vec::new();
        for a in &acc {
            for s in &part_sets {
                if a.is_disjoint(*s) {
                    combined.push(a.union(*s));
                }
            }
        }
        acc = minimalize(combined);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorset::colors;
    use crate::graph::{is_proper, respects_lists, satisfied_count};

    fn lists(ls: &[&[u32]]) -> ListAssignment {
        ListAssignment::from_labels(&ls.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_part_is_always_colorable() {
        let g = MultipartiteGraph::new(vec![3]).unwrap();
        let l = ListAssignment::new(vec![colors(&[0]); 3]);
        assert!(is_colorable(&g, &l).unwrap().is_some());
    }

    #[test]
    fn edge_with_equal_singletons_is_not_colorable() {
        let g = MultipartiteGraph::new(vec![1, 1]).unwrap();
        let l = ListAssignment::new(vec![colors(&[0]), colors(&[0])]);
        assert!(is_colorable(&g, &l).unwrap().is_none());
    }

    #[test]
    fn k23_two_assignment_grants_nothing() {
        // x1 {1,2}, x2 {3,4}, y1 {1,3}, y2 {1,4}, y3 {1,2}; request x1 -> 1
        let g = MultipartiteGraph::new(vec![2, 3]).unwrap();
        let l = lists(&[&[1, 2], &[3, 4], &[1, 3], &[1, 4], &[1, 2]]);
        let r = Request::from_pairs(5, [(0, l.color_for_label(1).unwrap())]);
        let res = max_satisfied(&g, &l, &r).unwrap();
        assert_eq!(res.status, MaxSatStatus::Solved);
        assert_eq!(res.best, 0);
    }

    #[test]
    fn isolated_request_color_is_granted() {
        let g = MultipartiteGraph::new(vec![1, 2]).unwrap();
        let l = lists(&[&[1, 9], &[1, 2], &[1, 3]]);
        let r = Request::from_pairs(3, [(0, l.color_for_label(9).unwrap())]);
        assert_eq!(max_satisfied(&g, &l, &r).unwrap().best, 1);
    }

    #[test]
    fn witness_is_sound() {
        let g = MultipartiteGraph::new(vec![2, 1, 2]).unwrap();
        let l = lists(&[&[1, 2], &[2, 3], &[1, 3], &[1, 2, 3], &[3, 4]]);
        let r = Request::from_pairs(5, [(0, ColorId(0)), (2, ColorId(0)), (4, ColorId(2))]);
        let res = max_satisfied(&g, &l, &r).unwrap();
        let f = res.witness.unwrap();
        assert!(is_proper(&g, &f).unwrap());
        assert!(respects_lists(&l, &f).unwrap());
        assert_eq!(satisfied_count(&r, &f).unwrap(), res.best);
        assert_eq!(Some(res.best), crate::brute::max_satisfied(&g, &l, &r));
    }

    #[test]
    fn rejects_invalid_request() {
        let g = MultipartiteGraph::new(vec![1, 1]).unwrap();
        let l = ListAssignment::new(vec![colors(&[0]), colors(&[1])]);
        let r = Request::from_pairs(2, [(0, ColorId(1))]);
        assert!(matches!(max_satisfied(&g, &l, &r), Err(Error::InvalidRequest { .. })));
    }

    #[test]
    fn required_counts_use_exact_ceilings() {
        assert_eq!(required_satisfied(Rational::new(2, 3), 3), 2);
        assert_eq!(required_satisfied(Rational::new(1, 3), 3), 1);
        assert_eq!(required_satisfied(Rational::new(51, 100), 2), 2);
        assert_eq!(required_satisfied(Rational::from_integer(0), 7), 0);
    }

    #[test]
    fn minimal_used_sets_respect_part_disjointness() {
        let a = [colors(&[0, 1])];
        let b = [colors(&[0, 2])];
        let fam = minimal_used_sets(&[&a, &b]);
        assert_eq!(fam, vec![colors(&[0, 1]), colors(&[0, 2]), colors(&[1, 2])]);
        // a repeated color inside one part collapses the used set
        let x = [colors(&[0, 1]), colors(&[0, 2])];
        assert_eq!(minimal_used_sets(&[&x]), vec![colors(&[0]), colors(&[1, 2])]);
    }
}
