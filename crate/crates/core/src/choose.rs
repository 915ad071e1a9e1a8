//! Exhaustive f-choosability and (a,b)-choosability.
//!
//! One part (the "blocking" part) is never enumerated. For every canonical
//! list tuple on the other parts we compute the family `T` of inclusion-minimal
//! color sets used by their proper colorings. The tuple extends to a bad
//! assignment iff the blocking part's lists can be chosen so that every
//! `S ∈ T` contains one of them; that is a small covering problem decided by
//! branching on an uncovered `S` over its internal blockers.
//!
//! When all list sizes are below `|V|`, only pots of at most `|V| - 1` colors
//! need to be examined, which makes the search complete.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::colorset::{ColorId, ColorSet};
use crate::constructive::precolor_counterexample;
use crate::error::{Error, Result};
use crate::exact::{self, minimal_used_sets};
use crate::graph::{coloring_number, ListAssignment, MultipartiteGraph};

const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub max_classes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget { time: Some(Duration::from_secs_f64(secs)), max_classes: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChooseOptions {
    /// Explicit pot bound; the small-pot bound `|V| - 1` otherwise.
    pub pot_bound: Option<usize>,
    /// Enumerate canonical representatives only (colors up to renaming,
    /// same-part vertices with equal sizes up to reordering).
    pub canonical: bool,
    pub budget: Budget,
}

impl Default for ChooseOptions {
    fn default() -> Self {
        ChooseOptions { pot_bound: None, canonical: true, budget: Budget::unlimited() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Choosable,
    NotChoosable,
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    PrecolorRule,
    Trivial,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::PrecolorRule => "precolor-rule",
            Method::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub classes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityVerdict {
    pub decision: Decision,
    pub graph: MultipartiteGraph,
    pub counterexample: Option<ListAssignment>,
    pub method: Method,
    pub pot_bound: Option<usize>,
    /// The pot bound came from configuration rather than the small-pot reduction,
    /// so a positive answer only covers that bound.
    pub bounded_pot: bool,
    pub stats: SearchStats,
}

impl ChoosabilityVerdict {
    pub fn choosable(&self) -> Option<bool> {
        match self.decision {
            Decision::Choosable => Some(true),
            Decision::NotChoosable => Some(false),
            Decision::Timeout => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbMode {
    Auto,
    Exhaustive,
    Shortcut,
}

// ---------------------------------------------------------------------------
// enumeration

#[derive(Clone, Copy, Debug)]
struct Slot {
    size: usize,
    /// Same part and size as the previous slot: lists must not decrease.
    continues_block: bool,
}

struct Enumerator<'a> {
    slots: &'a [Slot],
    pot: usize,
    canonical: bool,
    subsets: HashMap<(usize, usize), Vec<ColorSet>>,
}

impl Enumerator<'_> {
    fn candidates(&mut self, limit: usize, size: usize) -> Vec<ColorSet> {
        self.subsets.entry((limit, size)).or_insert_with(|| ColorSet::range(limit).subsets_of_size(size)).clone()
    }

    fn run(&mut self, emit: &mut dyn FnMut(&[ColorSet]) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut cur = Vec::with_capacity(self.slots.len());
        self.go(0, 0, &mut cur, emit)
    }

    fn go(
        &mut self,
        i: usize,
        used: usize,
        cur: &mut Vec<ColorSet>,
        emit: &mut dyn FnMut(&[ColorSet]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.slots.len() {
            return emit(cur);
        }
        let slot = self.slots[i];
        let limit = if self.canonical { self.pot.min(used + slot.size) } else { self.pot };
        for cand in self.candidates(limit, slot.size) {
            let mut next_used = used;
            if self.canonical {
                // new colors must be exactly used, used+1, ... (first-appearance order)
                let fresh = cand.difference(ColorSet::range(used));
                let j = fresh.len();
                if fresh.bits() != ((1u64 << j) - 1) << used {
                    continue;
                }
                if slot.continues_block && cand.lex_cmp(cur[i - 1]).is_lt() {
                    continue;
                }
                next_used = used + j;
            }
            cur.push(cand);
            let flow = self.go(i + 1, next_used, cur, emit);
            cur.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits list tuples (flat vertex order) with the given sizes over a pot of
/// `pot` colors. With `canonical`, only restricted-growth tuples whose
/// consecutive same-part, same-size lists are lex-nondecreasing are visited;
/// every assignment is equivalent to at least one of them.
pub fn for_each_assignment(
    g: &MultipartiteGraph,
    sizes: &[usize],
    pot: usize,
    canonical: bool,
    emit: &mut dyn FnMut(&[ColorSet]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let slots: Vec<Slot> = (0..g.vertex_count())
        .map(|v| {
            let continues_block = v > 0 && g.part_of(v - 1) == g.part_of(v) && sizes[v - 1] == sizes[v];
            Slot { size: sizes[v], continues_block }
        })
        .collect();
    Enumerator { slots: &slots, pot, canonical, subsets: HashMap::new() }.run(emit)
}

/// Renames colors in order of first appearance (flat vertex order, each list
/// ascending). Returns the renamed lists and the map `old -> new`.
pub fn relabel_by_first_appearance(lists: &[ColorSet]) -> (Vec<ColorSet>, [Option<ColorId>; 64]) {
    let mut map: [Option<ColorId>; 64] = [None; 64];
    let mut next = 0u32;
    for s in lists {
        for c in s.iter() {
            if map[c.index()].is_none() {
                map[c.index()] = Some(ColorId(next));
                next += 1;
            }
        }
    }
    let out = lists.iter().map(|s| s.iter().map(|c| map[c.index()].unwrap()).collect()).collect();
    (out, map)
}

// ---------------------------------------------------------------------------
// covering

enum CoverOutcome {
    Found(Vec<ColorSet>),
    NotFound,
    Timeout,
}

struct Coverer<'a> {
    nodes: u64,
    deadline: Option<Instant>,
    cancelled: &'a AtomicBool,
}

impl Coverer<'_> {
    /// Chooses at most `avail[i].1` blockers of size `avail[i].0` so that every
    /// set in `uncovered` contains one of them.
    fn cover(&mut self, uncovered: &[ColorSet], avail: &mut [(usize, usize)], chosen: &mut Vec<ColorSet>) -> CoverOutcome {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if self.cancelled.load(AtomicOrdering::Relaxed) {
                return CoverOutcome::Timeout;
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.cancelled.store(true, AtomicOrdering::Relaxed);
                return CoverOutcome::Timeout;
            }
        }
        if uncovered.is_empty() {
            return CoverOutcome::Found(chosen.clone());
        }
        let remaining: usize = avail.iter().map(|a| a.1).sum();
        if remaining == 0 {
            return CoverOutcome::NotFound;
        }
        let bmin = avail.iter().filter(|a| a.1 > 0).map(|a| a.0).min().unwrap();

        // fail first: the set with the fewest internal blockers
        let mut pick = None;
        let mut pick_opts = u64::MAX;
        for &s in uncovered {
            let k = s.len();
            let opts: u64 = avail.iter().filter(|a| a.1 > 0 && a.0 <= k).map(|a| binomial(k, a.0)).sum();
            if opts == 0 {
                return CoverOutcome::NotFound;
            }
            if opts < pick_opts {
                pick_opts = opts;
                pick = Some(s);
            }
        }
        let s = pick.unwrap();

        // sets meeting in fewer than bmin colors need distinct blockers
        let mut packing: Vec<ColorSet> = Vec::new();
        for &t in uncovered {
            if packing.iter().all(|p| p.intersection(t).len() < bmin) {
                packing.push(t);
                if packing.len() > remaining {
                    return CoverOutcome::NotFound;
                }
            }
        }

        for ai in 0..avail.len() {
            let (b, count) = avail[ai];
            if count == 0 || b > s.len() {
                continue;
            }
            let mut options: Vec<(usize, ColorSet)> = s
                .subsets_of_size(b)
                .into_iter()
                .map(|blk| (uncovered.iter().filter(|t| blk.is_subset(**t)).count(), blk))
                .collect();
            options.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.lex_cmp(y.1)));
            for (_, blk) in options {
                let rest: Vec<ColorSet> = uncovered.iter().copied().filter(|t| !blk.is_subset(*t)).collect();
                avail[ai].1 -= 1;
                chosen.push(blk);
                let out = self.cover(&rest, avail, chosen);
                chosen.pop();
                avail[ai].1 += 1;
                match out {
                    CoverOutcome::NotFound => {}
                    other => return other,
                }
            }
        }
        CoverOutcome::NotFound
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Sizes in the blocking part, as `(size, count)` ascending by size.
fn size_classes(sizes: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    for s in sizes {
        match map.iter_mut().find(|e| e.0 == s) {
            Some(e) => e.1 += 1,
            None => map.push((s, 1)),
        }
    }
    map.sort();
    map
}

/// Colorability of a bipartite instance through the blocking criterion: a
/// proper coloring exists iff some minimal used set of part 0 contains no
/// list of part 1.
pub fn blocking_colorable(g: &MultipartiteGraph, l: &ListAssignment) -> Result<bool> {
    if !g.is_bipartite() {
        return Err(Error::precondition("blocking test needs a bipartite graph"));
    }
    l.validate(g)?;
    let xs: Vec<ColorSet> = g.part_range(0).map(|v| l.list(v)).collect();
    let ys: Vec<ColorSet> = g.part_range(1).map(|v| l.list(v)).collect();
    let family = minimal_used_sets(&[&xs]);
    Ok(family.iter().any(|s| ys.iter().all(|y| !y.is_subset(*s))))
}

// ---------------------------------------------------------------------------
// drivers

/// Vertices whose list is longer than their degree once the other such
/// vertices are gone; they can always be colored last.
fn peelable(g: &MultipartiteGraph, sizes: &[usize]) -> Vec<bool> {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    loop {
        let left = gone.iter().filter(|&&x| !x).count();
        let in_part: Vec<usize> = (0..g.part_count()).map(|p| g.part_range(p).filter(|&v| !gone[v]).count()).collect();
        let next = (0..n).find(|&v| !gone[v] && sizes[v] > left - in_part[g.part_of(v)]);
        match next {
            Some(v) => gone[v] = true,
            None => return gone,
        }
    }
}

/// Exhaustive decision of f-choosability for list sizes `sizes` (indexed by
/// flat vertex).
pub fn is_f_choosable(g: &MultipartiteGraph, sizes: &[usize], opts: &ChooseOptions) -> Result<ChoosabilityVerdict> {
    let start = Instant::now();
    let n = g.vertex_count();
    if sizes.len() != n {
        return Err(Error::VertexMismatch { expected: n, found: sizes.len() });
    }
    if sizes.contains(&0) {
        return Err(Error::precondition("list sizes must be positive"));
    }
    let gone = peelable(g, sizes);
    if gone.iter().any(|&x| x) {
        let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        let sub_sizes: Vec<usize> = (0..g.part_count())
            .map(|p| g.part_range(p).filter(|&v| !gone[v]).count())
            .filter(|&c| c > 0)
            .collect();
        if sub_sizes.len() < 2 {
            // what is left is independent
            return Ok(ChoosabilityVerdict {
                decision: Decision::Choosable,
                graph: g.clone(),
                counterexample: None,
                method: Method::Trivial,
                pot_bound: opts.pot_bound,
                bounded_pot: opts.pot_bound.is_some(),
                stats: SearchStats { elapsed: start.elapsed(), ..Default::default() },
            });
        }
        let sub = MultipartiteGraph::new(sub_sizes)?;
        let kept_sizes: Vec<usize> = keep.iter().map(|&v| sizes[v]).collect();
        let mut v = is_f_choosable(&sub, &kept_sizes, opts)?;
        if let Some(l) = v.counterexample.take() {
            let mut lists: Vec<ColorSet> = (0..n).map(|v| ColorSet::range(sizes[v])).collect();
            for (i, &u) in keep.iter().enumerate() {
                lists[u] = l.list(i);
            }
            let lifted = ListAssignment::new(lists);
            assert!(exact::is_colorable(g, &lifted)?.is_none(), "internal error: lifted counterexample on {g} is colorable");
            v.counterexample = Some(lifted);
        }
        v.graph = g.clone();
        v.stats.elapsed = start.elapsed();
        return Ok(v);
    }

    let small_pot = sizes.iter().all(|&s| s < n);
    let (pot, bounded_pot) = match (small_pot, opts.pot_bound) {
        (true, Some(p)) if p < n - 1 => (p, true),
        (true, _) => (n - 1, false),
        (false, Some(p)) => (p, true),
        (false, None) => {
            return Err(Error::Unbounded(format!(
                "some list size is at least |V| = {n}, so no small-pot reduction applies; supply a pot bound"
            )))
        }
    };
    if pot > ColorSet::CAPACITY {
        return Err(Error::PotTooLarge(pot));
    }

    let verdict = |decision, counterexample, method, stats| ChoosabilityVerdict {
        decision,
        graph: g.clone(),
        counterexample,
        method,
        pot_bound: Some(pot),
        bounded_pot,
        stats,
    };

    // No list can be drawn at all: vacuously choosable within the bound.
    if sizes.iter().any(|&s| s > pot) {
        return Ok(verdict(Decision::Choosable, None, Method::Trivial, SearchStats { elapsed: start.elapsed(), ..Default::default() }));
    }

    // Hold back the part that would be the most expensive to enumerate.
    let ln_choose = |s: usize| -> f64 { (binomial(pot, s).max(1) as f64).ln() };
    let cost: Vec<f64> = (0..g.part_count()).map(|p| g.part_range(p).map(|v| ln_choose(sizes[v])).sum()).collect();
    let blocking = (0..g.part_count()).max_by(|&a, &b| cost[a].total_cmp(&cost[b]).then(b.cmp(&a))).unwrap();
    let enumerated: Vec<usize> = (0..g.part_count()).filter(|&p| p != blocking).collect();

    let mut slot_vertices: Vec<usize> = Vec::new();
    let mut slots: Vec<Slot> = Vec::new();
    let mut part_bounds: Vec<(usize, usize)> = Vec::new();
    for &p in &enumerated {
        let mut vs: Vec<usize> = g.part_range(p).collect();
        vs.sort_by_key(|&v| sizes[v]);
        let begin = slots.len();
        for (i, &v) in vs.iter().enumerate() {
            let continues_block = i > 0 && sizes[vs[i - 1]] == sizes[v];
            slots.push(Slot { size: sizes[v], continues_block });
            slot_vertices.push(v);
        }
        part_bounds.push((begin, slots.len()));
    }

    let blockers = size_classes(g.part_range(blocking).map(|v| sizes[v]));
    if blockers.iter().all(|&(b, _)| b > slots.len()) {
        // a used set has at most one color per enumerated vertex
        return Ok(verdict(Decision::Choosable, None, Method::Trivial, SearchStats { elapsed: start.elapsed(), ..Default::default() }));
    }

    let deadline = opts.budget.time.map(|t| start + t);
    let cancelled = AtomicBool::new(false);
    let mut stats = SearchStats::default();
    let mut found: Option<(Vec<ColorSet>, Vec<ColorSet>)> = None;
    let mut timed_out = false;

    let process = |tuple: &Vec<ColorSet>| -> (u64, CoverOutcome) {
        let parts: Vec<&[ColorSet]> = part_bounds.iter().map(|&(a, b)| &tuple[a..b]).collect();
        let family = minimal_used_sets(&parts);
        let mut coverer = Coverer { nodes: 0, deadline, cancelled: &cancelled };
        let mut avail = blockers.clone();
        let out = coverer.cover(&family, &mut avail, &mut Vec::new());
        (coverer.nodes, out)
    };

    let mut flush = |chunk: &mut Vec<Vec<ColorSet>>, stats: &mut SearchStats| -> ControlFlow<()> {
        let results: Vec<(u64, CoverOutcome)> = chunk.par_iter().map(process).collect();
        for (tuple, (nodes, out)) in chunk.iter().zip(results) {
            stats.nodes += nodes;
            stats.classes += 1;
            match out {
                CoverOutcome::Found(blk) => {
                    found = Some((tuple.clone(), blk));
                    return ControlFlow::Break(());
                }
                CoverOutcome::Timeout => {
                    timed_out = true;
                    return ControlFlow::Break(());
                }
                CoverOutcome::NotFound => {}
            }
        }
        chunk.clear();
        if deadline.is_some_and(|d| Instant::now() >= d)
            || opts.budget.max_classes.is_some_and(|m| stats.classes >= m)
        {
            timed_out = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    };

    let mut chunk: Vec<Vec<ColorSet>> = Vec::with_capacity(CHUNK);
    let mut enumerator = Enumerator { slots: &slots, pot, canonical: opts.canonical, subsets: HashMap::new() };
    let flow = enumerator.run(&mut |tuple| {
        chunk.push(tuple.to_vec());
        if chunk.len() == CHUNK {
            flush(&mut chunk, &mut stats)
        } else {
            ControlFlow::Continue(())
        }
    });
    if flow.is_continue() && !chunk.is_empty() {
        let _ = flush(&mut chunk, &mut stats);
    }
    stats.elapsed = start.elapsed();

    if let Some((tuple, blk)) = found {
        let mut lists = vec![ColorSet::EMPTY; n];
        for (slot, &v) in slot_vertices.iter().enumerate() {
            lists[v] = tuple[slot];
        }
        let mut remaining: Vec<ColorSet> = blk;
        for v in g.part_range(blocking) {
            let want = sizes[v];
            lists[v] = match remaining.iter().position(|b| b.len() == want) {
                Some(i) => remaining.remove(i),
                None => ColorSet::range(want),
            };
        }
        let l = ListAssignment::new(lists);
        assert!(
            exact::is_colorable(g, &l)?.is_none(),
            "internal error: reported counterexample on {g} is colorable: {l:?}"
        );
        return Ok(verdict(Decision::NotChoosable, Some(l), Method::Exhaustive, stats));
    }
    let decision = if timed_out { Decision::Timeout } else { Decision::Choosable };
    Ok(verdict(decision, None, Method::Exhaustive, stats))
}

/// When the instance has the shape of the precolor rule, returns
/// `(t, n, b, swapped)` for `K_{n,b}` with `t`-lists on the `n` side and
/// `n`-lists on the `b` side. `swapped` means the `n` side is part 1.
pub fn precolor_shape(m: usize, n: usize, a: usize, b: usize) -> Option<(usize, usize, usize, bool)> {
    if b == m {
        Some((a, m, n, false))
    } else if a == n {
        Some((b, n, m, true))
    } else {
        None
    }
}

fn pow_saturating(t: usize, n: usize) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(t))
}

/// (a,b)-choosability of `K_{m,n}`: `a`-lists on the size-`m` part, `b`-lists
/// on the size-`n` part.
pub fn is_ab_choosable(m: usize, n: usize, a: usize, b: usize, mode: AbMode, opts: &ChooseOptions) -> Result<ChoosabilityVerdict> {
    if m == 0 || n == 0 || a == 0 || b == 0 {
        return Err(Error::precondition("m, n, a, b must all be positive"));
    }
    let g = MultipartiteGraph::complete_bipartite(m, n)?;
    let shape = precolor_shape(m, n, a, b);
    let use_shortcut = match mode {
        AbMode::Shortcut => {
            if shape.is_none() {
                return Err(Error::precondition(format!(
                    "({a},{b})-lists on K_{{{m},{n}}} do not have the precolor shape (one side's list size must equal the other side's size)"
                )));
            }
            true
        }
        AbMode::Auto => shape.is_some(),
        AbMode::Exhaustive => false,
    };
    if use_shortcut {
        let start = Instant::now();
        let (t, k, bb, swapped) = shape.unwrap();
        let choosable = bb < pow_saturating(t, k);
        let counterexample = if choosable {
            None
        } else {
            let l = precolor_counterexample(t, k, bb)?;
            Some(if swapped {
                // the builder lists X (k vertices) then Y (bb vertices); here X is part 1
                let mut lists: Vec<ColorSet> = l.lists()[k..].to_vec();
                lists.extend_from_slice(&l.lists()[..k]);
                ListAssignment::new(lists)
            } else {
                l
            })
        };
        return Ok(ChoosabilityVerdict {
            decision: if choosable { Decision::Choosable } else { Decision::NotChoosable },
            graph: g,
            counterexample,
            method: Method::PrecolorRule,
            pot_bound: None,
            bounded_pot: false,
            stats: SearchStats { elapsed: start.elapsed(), ..Default::default() },
        });
    }
    let sizes: Vec<usize> = (0..m + n).map(|v| if v < m { a } else { b }).collect();
    is_f_choosable(&g, &sizes, opts)
}

pub const LIST_CHROMATIC_LIMIT: usize = 10;

/// Least `k` such that the graph is `k`-choosable, for `|V| <= 10`.
pub fn list_chromatic_number_small(g: &MultipartiteGraph) -> Result<usize> {
    if g.vertex_count() > LIST_CHROMATIC_LIMIT {
        return Err(Error::Guardrail(format!(
            "{g} has {} vertices; exhaustive list chromatic number is limited to {LIST_CHROMATIC_LIMIT}",
            g.vertex_count()
        )));
    }
    // col(G) colors always suffice
    let col = coloring_number(g);
    for k in 1..col {
        let v = is_f_choosable(g, &vec![k; g.vertex_count()], &ChooseOptions::default())?;
        if v.decision == Decision::Choosable {
            return Ok(k);
        }
    }
    Ok(col)
}

/// Uniform sizes helper: `k` on every vertex.
pub fn uniform_sizes(g: &MultipartiteGraph, k: usize) -> Vec<usize> {
    vec![k; g.vertex_count()]
}
