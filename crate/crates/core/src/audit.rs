//! Seeded randomized audits of the constructive colorers against their
//! stated guarantees and the exact solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructive::{knn_flex_color, multipartite_flex_color, FlexColorOutcome};
use crate::error::Result;
use crate::exact;
use crate::gen::{random_lists, random_request};
use crate::graph::{is_proper, respects_lists, satisfied_count, ListAssignment, MultipartiteGraph, Request};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colorer {
    Multipartite,
    Knn,
}

impl Colorer {
    pub fn list_size(self, g: &MultipartiteGraph) -> usize {
        match self {
            Colorer::Multipartite => g.vertex_count() - g.partite_sizes().iter().max().unwrap() + 1,
            Colorer::Knn => g.part_size(0),
        }
    }

    pub fn guarantee(self, g: &MultipartiteGraph, domain_size: usize) -> usize {
        match self {
            Colorer::Multipartite => domain_size.div_ceil(g.part_count()),
            Colorer::Knn => domain_size.div_ceil(2),
        }
    }

    pub fn run(self, g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Result<FlexColorOutcome> {
        match self {
            Colorer::Multipartite => multipartite_flex_color(g, l, r),
            Colorer::Knn => knn_flex_color(g, l, r),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub trials: u64,
    /// Trials also solved exactly.
    pub oracle_checked: u64,
    pub violations: Vec<String>,
}

/// Trial `i` draws a pot uniformly from `[k, 2k]` for list size `k` and a
/// request on `1 + i mod |V|` vertices.
pub fn audit(colorer: Colorer, g: &MultipartiteGraph, trials: u64, seed: u64, oracle_limit: usize) -> AuditReport {
    let k = colorer.list_size(g);
    let n = g.vertex_count();
    let oracle = n <= oracle_limit;
    let results: Vec<Option<String>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let pot = rng.gen_range(k..=(2 * k).min(64));
            let l = random_lists(&vec![k; n], pot, &mut rng);
            let r = random_request(&l, 1 + (i as usize % n), &mut rng);
            check_one(colorer, g, &l, &r, oracle).err().map(|e| format!("trial {i}: {e}; lists {:?}", l.lists()))
        })
        .collect();
    AuditReport {
        trials,
        oracle_checked: if oracle { trials } else { 0 },
        violations: results.into_iter().flatten().collect(),
    }
}

fn check_one(colorer: Colorer, g: &MultipartiteGraph, l: &ListAssignment, r: &Request, oracle: bool) -> std::result::Result<(), String> {
    let run = std::panic::catch_unwind(|| colorer.run(g, l, r)).map_err(|_| "colorer panicked".to_string())?;
    let out = run.map_err(|e| format!("colorer error: {e}"))?;
    let f = &out.coloring;
    if !is_proper(g, f).unwrap_or(false) {
        return Err("coloring is not proper".into());
    }
    if !respects_lists(l, f).unwrap_or(false) {
        return Err("coloring leaves the lists".into());
    }
    let sat = satisfied_count(r, f).map_err(|e| e.to_string())?;
    if sat != out.satisfied {
        return Err(format!("reported {} satisfied, counted {sat}", out.satisfied));
    }
    let want = colorer.guarantee(g, r.domain_size());
    if sat < want {
        return Err(format!("satisfied {sat} < guarantee {want}"));
    }
    if oracle {
        let res = exact::max_satisfied(g, l, r).map_err(|e| e.to_string())?;
        if !res.is_solved() || sat > res.best {
            return Err(format!("satisfied {sat} exceeds exact maximum {:?}", res.is_solved().then_some(res.best)));
        }
    }
    Ok(())
}

/// Nondecreasing part-size vectors with `parts` entries in `1..=max_size`.
pub fn shapes(parts: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn go(parts: usize, lo: usize, max_size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            out.push(cur.clone());
            return;
        }
        for s in lo..=max_size {
            cur.push(s);
            go(parts, s, max_size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(parts, 1, max_size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        assert_eq!(shapes(2, 4).len(), 10);
        assert_eq!(shapes(3, 4).len(), 20);
        assert_eq!(shapes(4, 4).len(), 35);
    }

    #[test]
    fn small_audits_are_clean() {
        let g = MultipartiteGraph::new(vec![1, 2, 2]).unwrap();
        let rep = audit(Colorer::Multipartite, &g, 200, 3, 8);
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert_eq!(rep.oracle_checked, 200);
    }
}
