//! Brute-force reference implementations.
//!
//! These work from the adjacency relation alone and never use the
//! part-disjointness shortcuts of the main solvers, so they can serve as
//! independent oracles for them.

use crate::colorset::ColorId;
use crate::graph::{ListAssignment, MultipartiteGraph, Request};
use crate::Rational;

fn is_independent(g: &MultipartiteGraph, mask: u32) -> bool {
    let vs: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask & (1 << v) != 0).collect();
    for (i, &u) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            if g.adjacent(u, w) {
                return false;
            }
        }
    }
    true
}

/// Largest independent subset of `mask`.
fn alpha_within(g: &MultipartiteGraph, mask: u32) -> usize {
    // iterate submasks of mask
    let mut best = 0;
    let mut sub = mask;
    loop {
        let k = sub.count_ones() as usize;
        if k > best && is_independent(g, sub) {
            best = k;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    best
}

pub fn independence_number(g: &MultipartiteGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "brute-force independence number is limited to 20 vertices");
    alpha_within(g, ((1u64 << n) - 1) as u32)
}

/// `max |D| / α(G[D])` over nonempty vertex subsets `D`.
pub fn hall_ratio(g: &MultipartiteGraph) -> Rational {
    let n = g.vertex_count();
    assert!(n <= 16, "brute-force Hall ratio is limited to 16 vertices");
    let mut best = Rational::from_integer(0);
    for mask in 1u32..(1u32 << n) {
        let r = Rational::new(mask.count_ones() as i64, alpha_within(g, mask) as i64);
        if r > best {
            best = r;
        }
    }
    best
}

/// `1 + max over nonempty induced subgraphs of the minimum degree`.
pub fn coloring_number(g: &MultipartiteGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "brute-force coloring number is limited to 16 vertices");
    let mut degeneracy = 0;
    for mask in 1u32..(1u32 << n) {
        let min_deg = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .map(|v| (0..n).filter(|&w| mask & (1 << w) != 0 && g.adjacent(v, w)).count())
            .min()
            .unwrap();
        degeneracy = degeneracy.max(min_deg);
    }
    degeneracy + 1
}

/// Enumerates every list-respecting total coloring; `None` when none is proper.
pub fn max_satisfied(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Option<usize> {
    let n = g.vertex_count();
    let lists: Vec<Vec<ColorId>> = (0..n).map(|v| l.list(v).to_vec()).collect();
    let mut idx = vec![0usize; n];
    let mut best: Option<usize> = None;
    loop {
        let proper = (0..n).all(|u| (u + 1..n).all(|w| !g.adjacent(u, w) || lists[u][idx[u]] != lists[w][idx[w]]));
        if proper {
            let sat = r.pairs().filter(|&(v, c)| lists[v][idx[v]] == c).count();
            best = Some(best.map_or(sat, |b| b.max(sat)));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Vertex-by-vertex backtracking over the adjacency relation.
pub fn colorable(g: &MultipartiteGraph, l: &ListAssignment) -> bool {
    fn go(g: &MultipartiteGraph, l: &ListAssignment, v: usize, f: &mut Vec<ColorId>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in l.list(v) {
            if (0..v).all(|u| !g.adjacent(u, v) || f[u] != c) {
                f.push(c);
                if go(g, l, v + 1, f) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    go(g, l, 0, &mut Vec::with_capacity(g.vertex_count()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_ratio_of_k23_by_enumeration() {
        let g = MultipartiteGraph::new(vec![2, 3]).unwrap();
        assert_eq!(hall_ratio(&g), Rational::from_integer(2));
    }

    #[test]
    fn degeneracy_of_k33() {
        let g = MultipartiteGraph::new(vec![3, 3]).unwrap();
        assert_eq!(coloring_number(&g), 4);
    }

    #[test]
    fn independence_of_k222() {
        let g = MultipartiteGraph::new(vec![2, 2, 2]).unwrap();
        assert_eq!(independence_number(&g), 2);
    }
}
