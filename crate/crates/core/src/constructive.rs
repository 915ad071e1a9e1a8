//! Constructive colorers with request guarantees, the star completion rule,
//! and the transversal construction for `(t, n)`-lists on `K_{n,b}`.

use std::fmt;

use crate::colorset::{ColorId, ColorSet};
use crate::error::{Error, Result};
use crate::exact;
use crate::graph::{is_proper, respects_lists, satisfied_count, Coloring, ListAssignment, MultipartiteGraph, Request};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexColorOutcome {
    pub coloring: Coloring,
    pub satisfied: usize,
    pub guarantee: usize,
    pub strategy_used: String,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn dump(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> String {
    let lists: Vec<Vec<u32>> = l.lists().iter().map(|s| s.iter().map(|c| c.0).collect()).collect();
    let req: Vec<(usize, u32)> = r.pairs().map(|(v, c)| (v, c.0)).collect();
    format!("graph {g}, lists {lists:?}, request {req:?}")
}

/// Aborts with the instance when a construction breaks its own contract.
fn finish(g: &MultipartiteGraph, l: &ListAssignment, r: &Request, colors: Vec<ColorId>, guarantee: usize, tag: String) -> FlexColorOutcome {
    let coloring = Coloring::new(colors);
    let ok = is_proper(g, &coloring).unwrap() && respects_lists(l, &coloring).unwrap();
    assert!(ok, "internal error: strategy {tag} produced an invalid coloring {:?} on {}", coloring.colors(), dump(g, l, r));
    let satisfied = satisfied_count(r, &coloring).unwrap();
    assert!(
        satisfied >= guarantee,
        "internal error: strategy {tag} satisfied {satisfied} < {guarantee} on {}",
        dump(g, l, r)
    );
    FlexColorOutcome { coloring, satisfied, guarantee, strategy_used: tag }
}

// ---------------------------------------------------------------------------
// complete multipartite graphs with (s+1)-lists

const UNSET: ColorId = ColorId(u32::MAX);

/// Colors the largest part greedily, granting a request whenever its color
/// is unused on the other parts.
fn greedy_last(last: &[usize], l: &ListAssignment, r: &Request, colors: &mut [ColorId], used: ColorSet) {
    for &v in last {
        colors[v] = match r.get(v) {
            Some(c) if !used.contains(c) => c,
            _ => l.list(v).difference(used).min().expect("list larger than the colors used elsewhere"),
        };
    }
}

/// At least `⌈|D|/k⌉` requests on `K_{n_1..n_k}` with `(s+1)`-lists, where
/// `s` is the number of vertices outside a largest part.
pub fn multipartite_flex_color(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Result<FlexColorOutcome> {
    let k = g.part_count();
    if k < 2 {
        return Err(Error::precondition("at least two parts are required"));
    }
    l.validate(g)?;
    r.validate(g, l)?;
    let (_, order) = g.normalized();
    let last = order[k - 1];
    let others: Vec<usize> = order[..k - 1].to_vec();
    let s: usize = others.iter().map(|&p| g.part_size(p)).sum();
    if let Some(v) = (0..g.vertex_count()).find(|&v| l.list(v).len() != s + 1) {
        let vx = g.vertex(v);
        return Err(Error::precondition(format!(
            "every list must have {} colors; vertex {vx} has {}",
            s + 1,
            l.list(v).len()
        )));
    }

    let last_vs: Vec<usize> = g.part_range(last).collect();
    let pot_p = others.iter().flat_map(|&p| g.part_range(p)).fold(ColorSet::EMPTY, |acc, v| acc.union(l.list(v)));
    let mut count = [0usize; 64];
    for &v in &last_vs {
        if let Some(c) = r.get(v) {
            count[c.index()] += 1;
        }
    }
    // c_1, c_2, ...: by request count on the last part, descending
    let mut ordered: Vec<ColorId> = pot_p.to_vec();
    ordered.sort_by(|a, b| count[b.index()].cmp(&count[a.index()]).then(a.cmp(b)));
    let mut rank = [usize::MAX; 64];
    for (i, c) in ordered.iter().enumerate() {
        rank[c.index()] = i;
    }
    let prefix = |a: usize, b: usize| -> ColorSet { ordered[a.min(ordered.len())..b.min(ordered.len())].iter().copied().collect() };
    let highest = |set: ColorSet| set.iter().max_by_key(|c| rank[c.index()]);

    let n_vertices = g.vertex_count();
    let mut candidates: Vec<(String, Vec<ColorId>)> = Vec::new();

    // f: highest index, avoiding colors already placed on other parts
    if k >= 3 {
        let mut colors = vec![UNSET; n_vertices];
        let mut used = vec![ColorSet::EMPTY; g.part_count()];
        for &p in &others {
            let elsewhere = others.iter().filter(|&&q| q != p).fold(ColorSet::EMPTY, |acc, &q| acc.union(used[q]));
            for v in g.part_range(p) {
                let c = highest(l.list(v).difference(elsewhere)).unwrap();
                colors[v] = c;
                used[p].insert(c);
            }
        }
        let all = used.iter().fold(ColorSet::EMPTY, |a, &b| a.union(b));
        greedy_last(&last_vs, l, r, &mut colors, all);
        candidates.push(("f".into(), colors));
    } else {
        let mut colors = vec![UNSET; n_vertices];
        let mut all = ColorSet::EMPTY;
        for v in g.part_range(others[0]) {
            colors[v] = highest(l.list(v)).unwrap();
            all.insert(colors[v]);
        }
        greedy_last(&last_vs, l, r, &mut colors, all);
        candidates.push(("f".into(), colors));
    }

    // g_j: honor the requests on the j-th smaller part
    for (j, &pj) in others.iter().enumerate() {
        let mut colors = vec![UNSET; n_vertices];
        let mut used = vec![ColorSet::EMPTY; g.part_count()];
        for v in g.part_range(pj) {
            let c = r.get(v).unwrap_or_else(|| l.list(v).min().unwrap());
            colors[v] = c;
            used[pj].insert(c);
        }
        let a = used[pj];
        let nj = g.part_size(pj);
        let b = prefix(0, nj).difference(a);
        let cj = prefix(nj, s);
        let ell = a.intersection(cj).len();
        let b_prime: ColorSet = b.iter().take(ell).collect();
        let forbidden = a.union(b_prime).union(cj);
        for &p in others.iter().filter(|&&p| p != pj) {
            for v in g.part_range(p) {
                let elsewhere = others.iter().filter(|&&q| q != p).fold(ColorSet::EMPTY, |acc, &q| acc.union(used[q]));
                let free = l.list(v).difference(elsewhere);
                let c = match free.difference(forbidden).min() {
                    Some(c) => c,
                    None => highest(free).expect("a color outside the other parts always remains"),
                };
                colors[v] = c;
                used[p].insert(c);
            }
        }
        let all = used.iter().fold(ColorSet::EMPTY, |a, &b| a.union(b));
        greedy_last(&last_vs, l, r, &mut colors, all);
        candidates.push((format!("g{}", j + 1), colors));
    }

    let guarantee = ceil_div(r.domain_size(), k);
    let mut best: Option<(usize, String, Vec<ColorId>)> = None;
    for (tag, colors) in candidates {
        let f = Coloring::new(colors.clone());
        debug_assert!(is_proper(g, &f).unwrap(), "candidate {tag} improper on {}", dump(g, l, r));
        let sat = satisfied_count(r, &f).unwrap();
        if best.as_ref().is_none_or(|b| sat > b.0) {
            best = Some((sat, tag, colors));
        }
    }
    let (_, tag, colors) = best.unwrap();
    Ok(finish(g, l, r, colors, guarantee, tag))
}

// ---------------------------------------------------------------------------
// stars

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarObstruction {
    pub leaf_singletons: Vec<ColorId>,
    pub center_equals_union: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarOutcome {
    /// Center color, then leaf colors.
    Colorable { center: ColorId, leaves: Vec<ColorId> },
    Obstructed(StarObstruction),
}

/// Star with center list `center` and leaf lists `leaves`, `|center| >= leaves.len()`.
pub fn star_complete(center: ColorSet, leaves: &[ColorSet]) -> Result<StarOutcome> {
    let n = leaves.len();
    if n == 0 {
        return Err(Error::precondition("a star needs at least one leaf"));
    }
    if center.len() < n {
        return Err(Error::precondition(format!("center list has {} colors, fewer than the {n} leaves", center.len())));
    }
    if leaves.iter().any(|s| s.is_empty()) {
        return Err(Error::precondition("leaf lists must be nonempty"));
    }
    // a leaf with a spare color: color it last
    if let Some(k) = leaves.iter().position(|s| s.len() > 1) {
        let mut out: Vec<ColorId> = leaves.iter().map(|s| s.min().unwrap()).collect();
        let taken: ColorSet = out.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect();
        let x = center.difference(taken).min().unwrap();
        out[k] = leaves[k].without(x).min().unwrap();
        return Ok(StarOutcome::Colorable { center: x, leaves: out });
    }
    let singles: Vec<ColorId> = leaves.iter().map(|s| s.min().unwrap()).collect();
    let union: ColorSet = singles.iter().copied().collect();
    if union.len() < n {
        // two leaves share their only color
        let x = center.difference(union).min().unwrap();
        return Ok(StarOutcome::Colorable { center: x, leaves: singles });
    }
    if center != union {
        let x = center.difference(union).min().unwrap();
        return Ok(StarOutcome::Colorable { center: x, leaves: singles });
    }
    Ok(StarOutcome::Obstructed(StarObstruction { leaf_singletons: singles, center_equals_union: true }))
}

/// `K_{1,n}` with the center in part 0.
pub fn star_obstruction_check(n: usize, l: &ListAssignment) -> Result<StarOutcome> {
    let g = MultipartiteGraph::complete_bipartite(1, n)?;
    l.validate(&g)?;
    star_complete(l.list(0), &l.lists()[1..])
}

// ---------------------------------------------------------------------------
// complete bipartite completion from degree-sized lists

/// Proper coloring of `K_{|xs|,|ys|}` from the given lists, each at least
/// as large as the vertex degree.
fn degree_color_lists(xs: &[ColorSet], ys: &[ColorSet]) -> (Vec<ColorId>, Vec<ColorId>) {
    let g = MultipartiteGraph::complete_bipartite(xs.len(), ys.len()).unwrap();
    let mut lists = xs.to_vec();
    lists.extend_from_slice(ys);
    let l = ListAssignment::new(lists);
    let f = exact::is_colorable(&g, &l)
        .unwrap()
        .unwrap_or_else(|| panic!("internal error: degree-sized lists on {g} are not colorable: {l:?}"));
    let c = f.colors();
    (c[..xs.len()].to_vec(), c[xs.len()..].to_vec())
}

/// Complete bipartite graphs with both parts of size at least two are
/// degree-choosable; this finds the coloring.
pub fn degree_color_bipartite(g: &MultipartiteGraph, l: &ListAssignment) -> Result<Coloring> {
    if !g.is_bipartite() || g.part_size(0) < 2 || g.part_size(1) < 2 {
        return Err(Error::precondition("both parts must have at least two vertices"));
    }
    l.validate(g)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| l.list(v).len() < g.degree(v)) {
        return Err(Error::precondition(format!("vertex {} has a list smaller than its degree", g.vertex(v))));
    }
    let m = g.part_size(0);
    let (x, y) = degree_color_lists(&l.lists()[..m], &l.lists()[m..]);
    Ok(Coloring::new(x.into_iter().chain(y).collect()))
}

// ---------------------------------------------------------------------------
// K_{n,n} with n-lists

/// At least `⌈|D|/2⌉` requests on `K_{n,n}`, `n >= 4`, with `n`-lists.
pub fn knn_flex_color(g: &MultipartiteGraph, l: &ListAssignment, r: &Request) -> Result<FlexColorOutcome> {
    if !g.is_bipartite() || g.part_size(0) != g.part_size(1) {
        return Err(Error::precondition(format!("{g} is not of the form K_{{n,n}}")));
    }
    let n = g.part_size(0);
    if n < 4 {
        return Err(Error::precondition(format!("n = {n}; this construction needs n >= 4")));
    }
    l.validate(g)?;
    r.validate(g, l)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| l.list(v).len() != n) {
        return Err(Error::precondition(format!("every list must have {n} colors; vertex {} has {}", g.vertex(v), l.list(v).len())));
    }
    let d = r.domain_size();
    let guarantee = ceil_div(d, 2);
    let in_d = |v: usize| r.get(v).is_some();
    let req = |v: usize| r.get(v).unwrap();
    let part = |p: usize| -> Vec<usize> { g.part_range(p).collect() };
    // requested vertices first, stable
    let requested_first = |mut vs: Vec<usize>| {
        vs.sort_by_key(|&v| !in_d(v));
        vs
    };
    let count_in = |p: usize| g.part_range(p).filter(|&v| in_d(v)).count();

    let mut colors = vec![UNSET; g.vertex_count()];
    let tag: &str;

    if d >= 2 * n - 1 {
        let xp = if count_in(0) == n { 0 } else { 1 };
        let mut xs = part(xp);
        let mut ys = requested_first(part(1 - xp));
        let cs: Vec<ColorId> = xs.iter().map(|&x| req(x)).collect();
        let cset: ColorSet = cs.iter().copied().collect();
        if cset.len() < n {
            for &x in &xs {
                colors[x] = req(x);
            }
            for &y in &ys {
                colors[y] = l.list(y).difference(cset).min().unwrap();
            }
            tag = "knn-repeated-request";
        } else {
            let y1 = ys[0];
            let r1 = req(y1);
            if let Some(i) = xs.iter().position(|&x| req(x) == r1) {
                let x = xs.remove(i);
                xs.push(x);
            }
            let c: Vec<ColorId> = xs.iter().map(|&x| req(x)).collect();
            let head: ColorSet = c[..n - 1].iter().copied().collect();
            let xn = xs[n - 1];
            let leaves: Vec<ColorSet> = ys[1..].iter().map(|&y| l.list(y).difference(head)).collect();
            match star_complete(l.list(xn).without(r1), &leaves)? {
                StarOutcome::Colorable { center, leaves: lc } => {
                    colors[y1] = r1;
                    for i in 0..n - 1 {
                        colors[xs[i]] = c[i];
                    }
                    colors[xn] = center;
                    for (i, &y) in ys[1..].iter().enumerate() {
                        colors[y] = lc[i];
                    }
                    tag = "knn-star";
                }
                StarOutcome::Obstructed(_) => {
                    let hit = ys[1..].iter().filter(|&&y| in_d(y)).find_map(|&y| c[..n - 1].iter().position(|&cq| cq == req(y)));
                    if let Some(q) = hit {
                        let cq = c[q];
                        for &y in &ys[1..] {
                            colors[y] = cq;
                        }
                        for i in (0..n).filter(|&i| i != q) {
                            colors[xs[i]] = c[i];
                        }
                        let rest: ColorSet = (0..n).filter(|&i| i != q).map(|i| c[i]).collect();
                        colors[y1] = l.list(y1).difference(rest).min().unwrap();
                        colors[xs[q]] = l.list(xs[q]).without(cq).without(colors[y1]).min().unwrap();
                        tag = "knn-recolor-shared";
                    } else {
                        // every requested leaf asks for its private color d_i
                        let cn = c[n - 1];
                        let k = (1..n).find(|&k| in_d(ys[k]) && req(ys[k]) != cn).expect("two requested leaves with distinct private colors");
                        ys.swap(1, k);
                        let d2 = req(ys[1]);
                        colors[ys[1]] = d2;
                        for i in 1..n {
                            colors[xs[i]] = c[i];
                        }
                        for &y in &ys[2..] {
                            colors[y] = c[0];
                        }
                        let tail: ColorSet = c[1..].iter().copied().collect();
                        colors[y1] = l.list(y1).difference(tail).min().unwrap();
                        colors[xs[0]] = l.list(xs[0]).without(colors[y1]).without(d2).without(c[0]).min().unwrap();
                        tag = "knn-recolor-private";
                    }
                }
            }
        }
    } else if d >= 2 * n - 3 {
        let xp = if count_in(0) >= n - 1 { 0 } else { 1 };
        let xs = requested_first(part(xp));
        let ys = requested_first(part(1 - xp));
        let c: Vec<ColorId> = xs[..n - 1].iter().map(|&x| req(x)).collect();
        let head: ColorSet = c.iter().copied().collect();
        let xn = xs[n - 1];
        let leaves: Vec<ColorSet> = ys.iter().map(|&y| l.list(y).difference(head)).collect();
        match star_complete(l.list(xn), &leaves)? {
            StarOutcome::Colorable { center, leaves: lc } => {
                for i in 0..n - 1 {
                    colors[xs[i]] = c[i];
                }
                colors[xn] = center;
                for (i, &y) in ys.iter().enumerate() {
                    colors[y] = lc[i];
                }
                tag = "knn-near-full-star";
            }
            StarOutcome::Obstructed(_) => {
                let y1 = ys[0];
                let r1 = req(y1);
                colors[y1] = r1;
                let granted: Vec<usize> = (0..n - 1).filter(|&i| c[i] != r1).take(n - 2).collect();
                let mut cb = ColorSet::EMPTY;
                for &i in &granted {
                    colors[xs[i]] = c[i];
                    cb.insert(c[i]);
                }
                let rest_x: Vec<usize> = (0..n).filter(|i| !granted.contains(i)).map(|i| xs[i]).collect();
                let rest_y: Vec<usize> = ys[1..].to_vec();
                let lx: Vec<ColorSet> = rest_x.iter().map(|&x| l.list(x).without(r1)).collect();
                let ly: Vec<ColorSet> = rest_y.iter().map(|&y| l.list(y).difference(cb)).collect();
                let (fx, fy) = degree_color_lists(&lx, &ly);
                for (i, &x) in rest_x.iter().enumerate() {
                    colors[x] = fx[i];
                }
                for (i, &y) in rest_y.iter().enumerate() {
                    colors[y] = fy[i];
                }
                tag = "knn-near-full-degree";
            }
        }
    } else {
        let xp = if count_in(0) >= count_in(1) { 0 } else { 1 };
        let xs = requested_first(part(xp));
        let ys = part(1 - xp);
        let a = guarantee;
        let mut ra = ColorSet::EMPTY;
        for &x in &xs[..a] {
            colors[x] = req(x);
            ra.insert(req(x));
        }
        let lx: Vec<ColorSet> = xs[a..].iter().map(|&x| l.list(x)).collect();
        let ly: Vec<ColorSet> = ys.iter().map(|&y| l.list(y).difference(ra)).collect();
        let (fx, fy) = degree_color_lists(&lx, &ly);
        for (i, &x) in xs[a..].iter().enumerate() {
            colors[x] = fx[i];
        }
        for (i, &y) in ys.iter().enumerate() {
            colors[y] = fy[i];
        }
        tag = "knn-majority-degree";
    }
    Ok(finish(g, l, r, colors, guarantee, tag.to_string()))
}

// ---------------------------------------------------------------------------
// t-lists on n vertices against n-lists on b vertices

fn transversals(lists: &[ColorSet]) -> Vec<ColorSet> {
    let mut out = vec![ColorSet::EMPTY];
    for s in lists {
        out = out.into_iter().flat_map(|acc| s.iter().map(move |c| acc.with(c))).collect();
    }
    out
}

fn checked_pow(t: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(t))
}

/// Proper coloring of `K_{n,b}` from a `(t, n)`-assignment when `b < t^n`.
pub fn precolor_choose(g: &MultipartiteGraph, l: &ListAssignment, t: usize) -> Result<Coloring> {
    if !g.is_bipartite() {
        return Err(Error::precondition("graph must be bipartite"));
    }
    let (n, b) = (g.part_size(0), g.part_size(1));
    l.validate(g)?;
    if !l.is_ab_assignment(g, t, n) {
        return Err(Error::precondition(format!("expected {t}-lists on the first part and {n}-lists on the second")));
    }
    if checked_pow(t, n).is_some_and(|p| b >= p) {
        return Err(Error::precondition(format!("b = {b} is not below t^n = {t}^{n}")));
    }
    let xs = &l.lists()[..n];
    let ys = &l.lists()[n..];
    let mut colors: Vec<ColorId> = xs.iter().map(|s| s.min().unwrap()).collect();
    let shared = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !xs[i].is_disjoint(xs[j]));
    if let Some((i, j)) = shared {
        let c = xs[i].intersection(xs[j]).min().unwrap();
        colors[i] = c;
        colors[j] = c;
    } else {
        let pick = transversals(xs).into_iter().find(|s| ys.iter().all(|y| y != s)).expect("fewer than t^n lists cannot block every transversal");
        for (i, x) in xs.iter().enumerate() {
            colors[i] = x.intersection(pick).min().unwrap();
        }
    }
    let used: ColorSet = colors.iter().copied().collect();
    for y in ys {
        colors.push(y.difference(used).min().expect("an n-list outside the transversal"));
    }
    let f = Coloring::new(colors);
    assert!(is_proper(g, &f)? && respects_lists(l, &f)?, "internal error: precolor coloring invalid on {g}: {l:?}");
    Ok(f)
}

/// `K_{n,b}` with disjoint `t`-lists on the first part and every transversal
/// (cyclically repeated) on the second; never colorable when `b >= t^n`.
pub fn precolor_counterexample(t: usize, n: usize, b: usize) -> Result<ListAssignment> {
    if t == 0 || n == 0 {
        return Err(Error::precondition("t and n must be positive"));
    }
    let total = checked_pow(t, n).filter(|_| t * n <= ColorSet::CAPACITY).ok_or(Error::PotTooLarge(t * n))?;
    if b < total {
        return Err(Error::precondition(format!("b = {b} is below t^n = {total}, so no counterexample exists")));
    }
    let xs: Vec<ColorSet> = (0..n).map(|i| ColorSet::range((i + 1) * t).difference(ColorSet::range(i * t))).collect();
    let all = transversals(&xs);
    let mut lists = xs;
    lists.extend((0..b).map(|i| all[i % all.len()]));
    Ok(ListAssignment::new(lists))
}

impl fmt::Display for FlexColorOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} satisfied (guarantee {}) via {}", self.satisfied, self.guarantee, self.strategy_used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorset::colors;

    fn req(n: usize, pairs: &[(usize, u32)]) -> Request {
        Request::from_pairs(n, pairs.iter().map(|&(v, c)| (v, ColorId(c))))
    }

    #[test]
    fn thm1_on_an_edge() {
        let g = MultipartiteGraph::complete_bipartite(1, 1).unwrap();
        let l = ListAssignment::new(vec![colors(&[1, 2]); 2]);
        let out = multipartite_flex_color(&g, &l, &req(2, &[(0, 1), (1, 1)])).unwrap();
        assert_eq!(out.guarantee, 1);
        assert!(out.satisfied >= 1);
    }

    #[test]
    fn thm1_grants_requests_outside_the_small_parts() {
        let g = MultipartiteGraph::new(vec![1, 2, 3]).unwrap();
        let mut lists = vec![colors(&[0, 1, 2, 3]); 3];
        lists.extend(vec![colors(&[4, 5, 6, 7]); 3]);
        let l = ListAssignment::new(lists);
        let r = req(6, &[(3, 4), (4, 5), (5, 7)]);
        let out = multipartite_flex_color(&g, &l, &r).unwrap();
        assert_eq!(out.satisfied, 3);
    }

    #[test]
    fn thm1_rejects_wrong_sizes() {
        let g = MultipartiteGraph::complete_bipartite(2, 2).unwrap();
        let l = ListAssignment::new(vec![colors(&[0, 1]); 4]);
        assert!(multipartite_flex_color(&g, &l, &req(4, &[(0, 0)])).is_err());
    }

    #[test]
    fn star_examples() {
        let out = star_complete(colors(&[1, 2]), &[colors(&[1]), colors(&[2])]).unwrap();
        assert_eq!(
            out,
            StarOutcome::Obstructed(StarObstruction { leaf_singletons: vec![ColorId(1), ColorId(2)], center_equals_union: true })
        );
        let out = star_complete(colors(&[1, 2, 3]), &[colors(&[1]), colors(&[2])]).unwrap();
        assert_eq!(out, StarOutcome::Colorable { center: ColorId(3), leaves: vec![ColorId(1), ColorId(2)] });
        let out = star_complete(colors(&[1, 2, 3]), &[colors(&[1]), colors(&[1]), colors(&[2])]).unwrap();
        assert_eq!(out, StarOutcome::Colorable { center: ColorId(3), leaves: vec![ColorId(1), ColorId(1), ColorId(2)] });
    }

    #[test]
    fn degree_coloring_of_c4() {
        let g = MultipartiteGraph::complete_bipartite(2, 2).unwrap();
        let l = ListAssignment::new(vec![colors(&[1, 2]); 4]);
        let f = degree_color_bipartite(&g, &l).unwrap();
        assert!(is_proper(&g, &f).unwrap());
    }

    #[test]
    fn knn_same_request_everywhere() {
        let g = MultipartiteGraph::complete_bipartite(4, 4).unwrap();
        let l = ListAssignment::new(vec![colors(&[0, 1, 2, 3]); 8]);
        let r = req(8, &(0..8).map(|v| (v, 0)).collect::<Vec<_>>());
        let out = knn_flex_color(&g, &l, &r).unwrap();
        assert!(out.satisfied >= 4);
    }

    #[test]
    fn precolor_examples() {
        let l = precolor_counterexample(3, 2, 9).unwrap();
        assert_eq!(l.list(0), colors(&[0, 1, 2]));
        assert_eq!(l.list(1), colors(&[3, 4, 5]));
        assert_eq!(l.list(2), colors(&[0, 3]));
        assert_eq!(l.list(10), colors(&[2, 5]));
        let g = MultipartiteGraph::complete_bipartite(2, 9).unwrap();
        assert!(exact::is_colorable(&g, &l).unwrap().is_none());

        let l = precolor_counterexample(2, 1, 2).unwrap();
        assert_eq!(l.lists(), &[colors(&[0, 1]), colors(&[0]), colors(&[1])]);

        // drop one transversal: the missing pair is used
        let mut lists = vec![colors(&[1, 2, 3]), colors(&[4, 5, 6])];
        for i in 1..=3 {
            for j in 4..=6 {
                if (i, j) != (2, 5) {
                    lists.push(colors(&[i, j]));
                }
            }
        }
        let g = MultipartiteGraph::complete_bipartite(2, 8).unwrap();
        let f = precolor_choose(&g, &ListAssignment::new(lists), 3).unwrap();
        assert_eq!(&f.colors()[..2], &[ColorId(2), ColorId(5)]);
        assert!(precolor_counterexample(3, 2, 8).is_err());
    }
}
