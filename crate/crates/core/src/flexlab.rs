//! Flexibility levels of complete bipartite graphs: ε bounds with
//! certificates, the reduction to asymmetric choosability, and sampled or
//! exhaustive counterexample searches.

use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::choose::{self, AbMode, ChooseOptions, Decision};
use crate::colorset::{ColorId, ColorSet};
use crate::error::{Error, Result};
use crate::gen;
use crate::exact::{self, required_satisfied, MaxSatStatus};
use crate::graph::{chromatic_number, coloring_number, hall_ratio, ListAssignment, MultipartiteGraph, Request};
use crate::witnesses;
use crate::Rational;

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(a as i64, b as i64)
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerCertificate {
    ConstructiveThm1,
    ConstructiveKnn,
    LemmaConnect,
    Literature(String),
    Choosability,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperCertificate {
    HallRatio,
    Witness(String),
    LemmaConnect,
}

impl fmt::Display for LowerCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerCertificate::ConstructiveThm1 => write!(f, "constructive-multipartite"),
            LowerCertificate::ConstructiveKnn => write!(f, "constructive-knn"),
            LowerCertificate::LemmaConnect => write!(f, "lemma-connect"),
            LowerCertificate::Literature(c) => write!(f, "literature:{c}"),
            LowerCertificate::Choosability => write!(f, "choosability"),
        }
    }
}

impl fmt::Display for UpperCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperCertificate::HallRatio => write!(f, "hall-ratio"),
            UpperCertificate::Witness(w) => write!(f, "witness:{w}"),
            UpperCertificate::LemmaConnect => write!(f, "lemma-connect"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonBound {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub lower: Rational,
    pub upper: Rational,
    pub lower_certificate: LowerCertificate,
    pub upper_certificate: UpperCertificate,
}

/// Whether `K_{m,n}` is `k`-choosable, where a closed characterization is
/// available; `None` otherwise.
pub fn known_choosability(m: usize, n: usize, k: usize) -> Option<bool> {
    let (m, n) = (m.min(n), m.max(n));
    if k == 0 {
        return Some(false);
    }
    if k > m {
        return Some(true);
    }
    if k == 1 {
        return Some(false);
    }
    if k == 2 {
        return Some(m == 1 || (m == 2 && n <= 3));
    }
    if k == 3 {
        return Some(matches!((m, n), (3, ..=26) | (4, ..=20) | (5, ..=12) | (6, ..=10)));
    }
    if k == m {
        // m-lists on the m-side, m-lists on the other: the transversal rule
        return Some(n < m.checked_pow(m as u32).unwrap_or(usize::MAX));
    }
    None
}

const LITERATURE_THIRD: &str = "one-third";

/// The tightest interval for `ε_ℓ(K_{m,n}, t)` that the known results give.
pub fn epsilon_bounds_bipartite(m: usize, n: usize, t: usize) -> Result<EpsilonBound> {
    if m == 0 || n == 0 || t == 0 {
        return Err(Error::precondition("m, n, t must be positive"));
    }
    let (m, n) = (m.min(n), m.max(n));
    let half = ratio(1, 2);
    let zero = Rational::from_integer(0);
    let bound = |lower, upper, lc, uc| Ok(EpsilonBound { m, n, t, lower, upper, lower_certificate: lc, upper_certificate: uc });
    use LowerCertificate as L;
    use UpperCertificate as U;

    match known_choosability(m, n, t) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::precondition(format!("K_{{{m},{n}}} is not {t}-choosable, so ε_ℓ is undefined at t = {t}")));
        }
        None => {
            return Err(Error::precondition(format!("{t}-choosability of K_{{{m},{n}}} is not known here")));
        }
    }
    if t > m {
        return bound(half, half, L::ConstructiveThm1, U::HallRatio);
    }
    if m == n && n >= 3 && t >= n {
        return bound(half, half, L::ConstructiveKnn, U::HallRatio);
    }
    if m == 2 && t == 2 {
        // n is 2 or 3 here
        return bound(zero, zero, L::Choosability, U::Witness(format!("k2n_t2_n{n}")));
    }
    if m == 3 && t == 3 {
        return match n {
            4..=6 => bound(ratio(1, 3), half, L::Literature(LITERATURE_THIRD.into()), U::HallRatio),
            7..=8 => bound(ratio(1, 3), ratio(1, 3), L::Literature(LITERATURE_THIRD.into()), U::Witness(format!("k3n_t3_flex_n{n}"))),
            _ => bound(zero, zero, L::Choosability, U::LemmaConnect),
        };
    }
    // remaining rows: decided by the reduction to asymmetric choosability
    let first = known_ab(m, n - 1, t - 1, t);
    let second = known_ab(m - 1, n, t, t - 1);
    match (first, second) {
        (Some(true), Some(true)) => bound(ratio(1, m + n), half, L::LemmaConnect, U::HallRatio),
        (Some(false), _) | (_, Some(false)) => bound(zero, zero, L::Choosability, U::LemmaConnect),
        _ => Err(Error::precondition(format!("no known bound for K_{{{m},{n}}} at t = {t}"))),
    }
}

/// `(a,b)`-choosability of `K_{m,n}` from the transversal rule and the
/// `(3,2)` / `(2,3)` characterization.
pub fn known_ab(m: usize, n: usize, a: usize, b: usize) -> Option<bool> {
    if m == 0 || n == 0 {
        return Some(true);
    }
    if let Some((t, k, bb, _)) = choose::precolor_shape(m, n, a, b) {
        return Some(bb < t.checked_pow(k as u32).unwrap_or(usize::MAX));
    }
    let three_two = |p: usize, q: usize| -> bool {
        // (3,2)-lists with 3-lists on the p side
        let (lo, hi) = (p.min(q), p.max(q));
        if lo == 1 {
            return true;
        }
        if p <= q {
            matches!((lo, hi), (2, ..=8) | (3, ..=6) | (4, 4))
        } else {
            // 2-lists on the smaller side
            matches!((lo, hi), (2, _) | (3, ..=7) | (4, ..=5))
        }
    };
    match (a, b) {
        (3, 2) => Some(three_two(m, n)),
        (2, 3) => Some(three_two(n, m)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// the reduction lemma

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectWitness {
    pub graph: MultipartiteGraph,
    pub lists: ListAssignment,
    pub request: Request,
    /// The reduced instance `(m', n', a, b)` whose bad assignment was lifted.
    pub reduced: (usize, usize, usize, usize),
    pub best: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectOutcome {
    Zero(Box<ConnectWitness>),
    AtLeastOneOverMN,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectReport {
    pub outcome: ConnectOutcome,
    /// `K_{m,n-1}` is `(k-1,k)`-choosable.
    pub first: Option<bool>,
    /// `K_{m-1,n}` is `(k,k-1)`-choosable.
    pub second: Option<bool>,
}

fn fresh_color(l: &ListAssignment) -> Result<ColorId> {
    ColorSet::range(ColorSet::CAPACITY)
        .difference(l.pot())
        .min()
        .ok_or(Error::PotTooLarge(ColorSet::CAPACITY + 1))
}

/// Zero flexibility iff one of the two one-vertex-smaller asymmetric
/// instances is not choosable; otherwise at least one request of `m + n`
/// can always be granted.
pub fn lemma_connect_classify(m: usize, n: usize, k: usize, opts: &ChooseOptions) -> Result<ConnectReport> {
    if k < 2 {
        return Err(Error::precondition("k must be at least 2"));
    }
    let g = MultipartiteGraph::complete_bipartite(m, n)?;
    let choosable = match known_choosability(m, n, k) {
        Some(c) => Some(c),
        None => is_ab_choosable_or_none(m, n, k, k, opts)?.map(|(c, _)| c),
    };
    match choosable {
        Some(true) => {}
        Some(false) => return Err(Error::precondition(format!("{g} is not {k}-choosable"))),
        None => return Ok(ConnectReport { outcome: ConnectOutcome::Undecided, first: None, second: None }),
    }

    let first = if n >= 2 { is_ab_choosable_or_none(m, n - 1, k - 1, k, opts)? } else { Some((true, None)) };
    if let Some((false, Some(bad))) = &first {
        // bad (k-1,k)-lists on K_{m,n-1}: lift through a new y_1
        let c = fresh_color(bad)?;
        let mut lists: Vec<ColorSet> = bad.lists()[..m].iter().map(|s| s.with(c)).collect();
        lists.push(bad.list(0).with(c));
        lists.extend_from_slice(&bad.lists()[m..]);
        let r = Request::from_pairs(m + n, [(m, c)]);
        let w = finish_witness(&g, lists, r, (m, n - 1, k - 1, k))?;
        return Ok(ConnectReport { outcome: ConnectOutcome::Zero(Box::new(w)), first: Some(false), second: None });
    }
    let second = if m >= 2 { is_ab_choosable_or_none(m - 1, n, k, k - 1, opts)? } else { Some((true, None)) };
    if let Some((false, Some(bad))) = &second {
        // bad (k,k-1)-lists on K_{m-1,n}: lift through a new x_1
        let c = fresh_color(bad)?;
        let mut lists: Vec<ColorSet> = vec![bad.list(m - 1).with(c)];
        lists.extend_from_slice(&bad.lists()[..m - 1]);
        lists.extend(bad.lists()[m - 1..].iter().map(|s| s.with(c)));
        let r = Request::from_pairs(m + n, [(0, c)]);
        let w = finish_witness(&g, lists, r, (m - 1, n, k, k - 1))?;
        return Ok(ConnectReport {
            outcome: ConnectOutcome::Zero(Box::new(w)),
            first: first.map(|f| f.0),
            second: Some(false),
        });
    }
    let outcome = match (&first, &second) {
        (Some(_), Some(_)) => ConnectOutcome::AtLeastOneOverMN,
        _ => ConnectOutcome::Undecided,
    };
    Ok(ConnectReport { outcome, first: first.map(|f| f.0), second: second.map(|s| s.0) })
}

fn is_ab_choosable_or_none(m: usize, n: usize, a: usize, b: usize, opts: &ChooseOptions) -> Result<Option<(bool, Option<ListAssignment>)>> {
    let v = choose::is_ab_choosable(m, n, a, b, AbMode::Auto, opts)?;
    Ok(match v.decision {
        Decision::Choosable => Some((true, None)),
        Decision::NotChoosable => Some((false, v.counterexample)),
        Decision::Timeout => None,
    })
}

fn finish_witness(g: &MultipartiteGraph, lists: Vec<ColorSet>, r: Request, reduced: (usize, usize, usize, usize)) -> Result<ConnectWitness> {
    let l = ListAssignment::new(lists);
    let res = exact::max_satisfied(g, &l, &r)?;
    assert!(
        res.status == MaxSatStatus::Solved && res.best == 0,
        "internal error: lifted witness on {g} grants {} requests",
        res.best
    );
    Ok(ConnectWitness { graph: g.clone(), lists: l, request: r, reduced, best: res.best })
}

// ---------------------------------------------------------------------------
// certificate checks

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    Annotation,
    Failed(String),
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub lower: CheckStatus,
    pub upper: CheckStatus,
}

impl BoundCheck {
    pub fn passed(&self) -> bool {
        !matches!(self.lower, CheckStatus::Failed(_) | CheckStatus::Timeout)
            && !matches!(self.upper, CheckStatus::Failed(_) | CheckStatus::Timeout)
    }
}

/// Re-derives each side of a bound from its certificate.
pub fn verify_bound(b: &EpsilonBound, opts: &ChooseOptions) -> Result<BoundCheck> {
    let g = MultipartiteGraph::complete_bipartite(b.m, b.n)?;
    let fail = |s: String| CheckStatus::Failed(s);
    let col = coloring_number(&g);
    let lower = match &b.lower_certificate {
        LowerCertificate::ConstructiveThm1 => {
            if b.t >= col && b.lower == ratio(1, 2) {
                CheckStatus::Verified
            } else {
                fail(format!("t = {} is below col = {col}", b.t))
            }
        }
        LowerCertificate::ConstructiveKnn => {
            if b.m == b.n && b.n >= 3 && b.t >= b.n && b.lower == ratio(1, 2) {
                CheckStatus::Verified
            } else {
                fail("not a K_{n,n} instance with t >= n >= 3".into())
            }
        }
        LowerCertificate::Literature(_) => CheckStatus::Annotation,
        LowerCertificate::Choosability => {
            if b.lower == Rational::from_integer(0) && known_choosability(b.m, b.n, b.t) == Some(true) {
                CheckStatus::Verified
            } else {
                fail("choosability does not hold".into())
            }
        }
        LowerCertificate::LemmaConnect => match lemma_connect_classify(b.m, b.n, b.t, opts)?.outcome {
            ConnectOutcome::AtLeastOneOverMN if b.lower == ratio(1, b.m + b.n) => CheckStatus::Verified,
            ConnectOutcome::Undecided => CheckStatus::Timeout,
            other => fail(format!("reduction gives {other:?}")),
        },
    };
    let upper = match &b.upper_certificate {
        UpperCertificate::HallRatio => {
            if b.upper * hall_ratio(&g).value == Rational::from_integer(1) {
                CheckStatus::Verified
            } else {
                fail("upper bound is not 1/ρ".into())
            }
        }
        UpperCertificate::LemmaConnect => match lemma_connect_classify(b.m, b.n, b.t, opts)?.outcome {
            ConnectOutcome::Zero(w) if w.best == 0 && b.upper == Rational::from_integer(0) => CheckStatus::Verified,
            ConnectOutcome::Undecided => CheckStatus::Timeout,
            other => fail(format!("reduction gives {other:?}")),
        },
        UpperCertificate::Witness(name) => match witnesses::catalog().into_iter().find(|e| &e.name == name) {
            None => fail(format!("no witness named {name}")),
            Some(e) => {
                let report = witnesses::verify(&e)?;
                let sizes_ok = e.graph.partite_sizes() == [b.m, b.n] && e.lists.is_k_assignment(b.t);
                let measured = match (report.measured_best, &e.request) {
                    (Some(best), Some(r)) => Some(ratio(best, r.domain_size())),
                    _ => None,
                };
                if report.passed && sizes_ok && measured.is_some_and(|x| x <= b.upper) {
                    CheckStatus::Verified
                } else {
                    fail(format!("witness {name} does not certify {}", b.upper))
                }
            }
        },
    };
    Ok(BoundCheck { lower, upper })
}

/// Every `(m, n, t)` with `m <= n`, `1 <= m <= max_m`, `n <= max_n`,
/// `2 <= t <= m + 1` that has a known bound.
pub fn bounds_table(max_m: usize, max_n: usize) -> Vec<EpsilonBound> {
    let mut rows = Vec::new();
    for m in 1..=max_m {
        for n in m..=max_n {
            for t in 2..=m + 1 {
                if let Ok(b) = epsilon_bounds_bipartite(m, n, t) {
                    rows.push(b);
                }
            }
        }
    }
    rows
}

pub fn format_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn bounds_csv(rows: &[EpsilonBound]) -> String {
    let mut out = String::from("m,n,t,lower,upper,lower_cert,upper_cert\n");
    for b in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            b.m,
            b.n,
            b.t,
            format_rational(b.lower),
            format_rational(b.upper),
            b.lower_certificate,
            b.upper_certificate
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// searches

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlexSearchMode {
    SampledNoCounterexample,
    BoundedPotExhausted,
    CounterexampleFound,
}

impl FlexSearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FlexSearchMode::SampledNoCounterexample => "sampled-no-counterexample",
            FlexSearchMode::BoundedPotExhausted => "bounded-pot-exhausted",
            FlexSearchMode::CounterexampleFound => "counterexample-found",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexCounterexample {
    pub lists: ListAssignment,
    pub request: Request,
    /// `None` when no proper coloring exists at all.
    pub best: Option<usize>,
    pub required: usize,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexSearchReport {
    pub mode: FlexSearchMode,
    /// Samples, enumerated `(L, r)` pairs, or local-search steps.
    pub explored: u64,
    pub pot_bound: usize,
    pub seed: u64,
    /// The full bounded-pot space was enumerated without a hit.
    pub exhausted: bool,
    pub counterexample: Option<FlexCounterexample>,
}

/// `(L, r)` violates ε-satisfiability; returns the verified details.
fn violation(g: &MultipartiteGraph, l: &ListAssignment, r: &Request, epsilon: Rational, source: &str) -> Result<Option<FlexCounterexample>> {
    let required = required_satisfied(epsilon, r.domain_size());
    let res = exact::max_satisfied(g, l, r)?;
    let best = res.is_solved().then_some(res.best);
    if best.is_some_and(|b| b >= required) {
        return Ok(None);
    }
    Ok(Some(FlexCounterexample { lists: l.clone(), request: r.clone(), best, required, source: source.into() }))
}

/// All lists `{0..k-1}`, one vertex per part requesting color 0.
pub fn adversarial_instance(g: &MultipartiteGraph, k: usize) -> (ListAssignment, Request) {
    let l = ListAssignment::new(vec![ColorSet::range(k); g.vertex_count()]);
    let r = Request::from_pairs(g.vertex_count(), (0..g.part_count()).map(|p| (g.part_range(p).start, ColorId(0))));
    (l, r)
}

fn check_pool(
    g: &MultipartiteGraph,
    k: usize,
    epsilon: Rational,
    pool: &[(ListAssignment, Request)],
) -> Result<Option<FlexCounterexample>> {
    let (al, ar) = adversarial_instance(g, k);
    if let Some(c) = violation(g, &al, &ar, epsilon, "adversarial")? {
        return Ok(Some(c));
    }
    for (i, (l, r)) in pool.iter().enumerate() {
        l.validate(g)?;
        r.validate(g, l)?;
        if !l.is_k_assignment(k) {
            return Err(Error::precondition(format!("pool entry {i} is not a {k}-assignment")));
        }
        if let Some(c) = violation(g, l, r, epsilon, &format!("pool[{i}]"))? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn random_instance(g: &MultipartiteGraph, k: usize, pot: usize, rng: &mut ChaCha8Rng) -> (ListAssignment, Request) {
    let n = g.vertex_count();
    let raw = gen::random_lists(&vec![k; n], pot, rng);
    let (lists, _) = choose::relabel_by_first_appearance(raw.lists());
    let l = ListAssignment::new(lists);
    let size = rng.gen_range(1..=n);
    let r = gen::random_request(&l, size, rng);
    (l, r)
}

const SAMPLE_CHUNK: usize = 256;

/// Seeded random `(L, r)` pairs; never claims flexibility.
pub fn check_flexible_sampled(
    g: &MultipartiteGraph,
    k: usize,
    epsilon: Rational,
    trials: u64,
    seed: u64,
    pot_bound: Option<usize>,
    pool: &[(ListAssignment, Request)],
) -> Result<FlexSearchReport> {
    exact::check_epsilon(epsilon)?;
    let pot = pot_bound.unwrap_or(k * g.vertex_count());
    if pot > ColorSet::CAPACITY {
        return Err(Error::PotTooLarge(pot));
    }
    if k == 0 || k > pot {
        return Err(Error::precondition(format!("list size {k} does not fit a pot of {pot}")));
    }
    let mut report = FlexSearchReport {
        mode: FlexSearchMode::SampledNoCounterexample,
        explored: 0,
        pot_bound: pot,
        seed,
        exhausted: false,
        counterexample: None,
    };
    if let Some(c) = check_pool(g, k, epsilon, pool)? {
        report.mode = FlexSearchMode::CounterexampleFound;
        report.counterexample = Some(c);
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0u64;
    while done < trials {
        let batch = (trials - done).min(SAMPLE_CHUNK as u64) as usize;
        let items: Vec<(ListAssignment, Request)> = (0..batch).map(|_| random_instance(g, k, pot, &mut rng)).collect();
        let results: Vec<Result<Option<FlexCounterexample>>> =
            items.par_iter().map(|(l, r)| violation(g, l, r, epsilon, "sample")).collect();
        for (i, res) in results.into_iter().enumerate() {
            if let Some(c) = res? {
                report.explored = done + i as u64 + 1;
                report.mode = FlexSearchMode::CounterexampleFound;
                report.counterexample = Some(c);
                return Ok(report);
            }
        }
        done += batch as u64;
    }
    report.explored = done;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Upper bound on `(L, r)` evaluations.
    pub max_evaluations: u64,
    pub time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_evaluations: 200_000, time: None }
    }
}

/// Exhaustive over canonical `(L, r)` under the pot bound when that fits the
/// budget, otherwise seeded local search.
pub fn search_flexibility_counterexample(
    g: &MultipartiteGraph,
    k: usize,
    epsilon: Rational,
    budget: SearchBudget,
    pot_bound: usize,
    seed: u64,
    pool: &[(ListAssignment, Request)],
) -> Result<FlexSearchReport> {
    exact::check_epsilon(epsilon)?;
    if pot_bound > ColorSet::CAPACITY {
        return Err(Error::PotTooLarge(pot_bound));
    }
    if k == 0 || k > pot_bound {
        return Err(Error::precondition(format!("list size {k} does not fit a pot of {pot_bound}")));
    }
    let start = Instant::now();
    let out_of_time = || budget.time.is_some_and(|t| start.elapsed() >= t);
    let mut report = FlexSearchReport {
        mode: FlexSearchMode::SampledNoCounterexample,
        explored: 0,
        pot_bound,
        seed,
        exhausted: false,
        counterexample: None,
    };
    if let Some(c) = check_pool(g, k, epsilon, pool)? {
        report.mode = FlexSearchMode::CounterexampleFound;
        report.counterexample = Some(c);
        return Ok(report);
    }

    let n = g.vertex_count();
    let requests_per = (k as u64 + 1).checked_pow(n as u32).map(|x| x - 1);
    let sizes = vec![k; n];
    if let Some(per) = requests_per.filter(|&p| p <= budget.max_evaluations) {
        // count classes first, stopping once the budget is certainly exceeded
        let cap = budget.max_evaluations / per;
        let mut classes = 0u64;
        let _ = choose::for_each_assignment(g, &sizes, pot_bound, true, &mut |_| {
            classes += 1;
            if classes > cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if classes <= cap {
            let mut found: Option<FlexCounterexample> = None;
            let mut explored = 0u64;
            let mut failure: Option<Error> = None;
            let _ = choose::for_each_assignment(g, &sizes, pot_bound, true, &mut |lists| {
                let l = ListAssignment::new(lists.to_vec());
                let mut choice = vec![0usize; n];
                let opts: Vec<Vec<ColorId>> = lists.iter().map(|s| s.to_vec()).collect();
                loop {
                    // odometer over {none} ∪ L(v) per vertex, skipping the empty request
                    let mut i = 0;
                    loop {
                        if i == n {
                            return ControlFlow::Continue(());
                        }
                        choice[i] += 1;
                        if choice[i] <= k {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    let r = Request::from_pairs(n, (0..n).filter(|&v| choice[v] > 0).map(|v| (v, opts[v][choice[v] - 1])));
                    explored += 1;
                    match violation(g, &l, &r, epsilon, "exhaustive") {
                        Ok(Some(c)) => {
                            found = Some(c);
                            return ControlFlow::Break(());
                        }
                        Ok(None) => {}
                        Err(e) => {
                            failure = Some(e);
                            return ControlFlow::Break(());
                        }
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            report.explored = explored;
            if let Some(c) = found {
                report.mode = FlexSearchMode::CounterexampleFound;
                report.counterexample = Some(c);
            } else {
                report.mode = FlexSearchMode::BoundedPotExhausted;
                report.exhausted = true;
            }
            return Ok(report);
        }
    }

    // local search: minimize (best - required), restart when stuck
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let score = |l: &ListAssignment, r: &Request| -> Result<i64> {
        let required = required_satisfied(epsilon, r.domain_size()) as i64;
        let res = exact::max_satisfied(g, l, r)?;
        Ok(if res.is_solved() { res.best as i64 - required } else { -1 })
    };
    let (mut l, mut r) = random_instance(g, k, pot_bound, &mut rng);
    let mut cur = score(&l, &r)?;
    let mut stale = 0u32;
    let mut steps = 0u64;
    while steps < budget.max_evaluations && !out_of_time() {
        steps += 1;
        if cur < 0 {
            let c = violation(g, &l, &r, epsilon, "local-search")?.expect("negative score is a verified violation");
            report.mode = FlexSearchMode::CounterexampleFound;
            report.counterexample = Some(c);
            report.explored = steps;
            return Ok(report);
        }
        if stale > 200 {
            (l, r) = random_instance(g, k, pot_bound, &mut rng);
            cur = score(&l, &r)?;
            stale = 0;
            continue;
        }
        let (mut l2, mut r2) = (l.clone(), r.clone());
        let v = rng.gen_range(0..n);
        if rng.gen_bool(0.5) {
            let list: ColorSet = sample(&mut rng, pot_bound, k).into_iter().map(|c| ColorId(c as u32)).collect();
            l2.set_list(v, list);
            if let Some(c) = r2.get(v) {
                if !list.contains(c) {
                    r2.set(v, Some(list.min().unwrap()));
                }
            }
        } else {
            let opts = l2.list(v).to_vec();
            let pick = rng.gen_range(0..=opts.len());
            r2.set(v, if pick == opts.len() { None } else { Some(opts[pick]) });
            if r2.domain_size() == 0 {
                r2.set(v, Some(opts[0]));
            }
        }
        let s2 = score(&l2, &r2)?;
        if s2 <= cur {
            if s2 < cur {
                stale = 0;
            } else {
                stale += 1;
            }
            (l, r, cur) = (l2, r2, s2);
        } else {
            stale += 1;
        }
    }
    report.explored = steps;
    Ok(report)
}

// ---------------------------------------------------------------------------
// parameters

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlexUpperCertificate {
    ColoringNumber,
    Knn,
}

impl FlexUpperCertificate {
    pub fn as_str(self) -> &'static str {
        match self {
            FlexUpperCertificate::ColoringNumber => "coloring-number",
            FlexUpperCertificate::Knn => "knn",
        }
    }
}

/// Upper bound on the list flexibility number.
pub fn flex_number_upper(sizes: &[usize]) -> Result<(usize, FlexUpperCertificate)> {
    let g = MultipartiteGraph::new(sizes.to_vec())?;
    if g.part_count() < 2 {
        return Err(Error::precondition("at least two parts are required"));
    }
    let col = coloring_number(&g);
    if g.part_count() == 2 && sizes[0] == sizes[1] && sizes[0] >= 3 {
        return Ok((sizes[0], FlexUpperCertificate::Knn));
    }
    Ok((col, FlexUpperCertificate::ColoringNumber))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub chromatic: usize,
    pub list_chromatic: usize,
    pub flex_upper: usize,
    pub max_degree_plus_one: usize,
}

/// `χ ≤ χ_ℓ ≤ (flex upper bound) ≤ Δ + 1` on a small graph.
pub fn chain_check(g: &MultipartiteGraph) -> Result<Chain> {
    let chain = Chain {
        chromatic: chromatic_number(g),
        list_chromatic: choose::list_chromatic_number_small(g)?,
        flex_upper: flex_number_upper(g.partite_sizes())?.0,
        max_degree_plus_one: g.max_degree() + 1,
    };
    assert!(
        chain.chromatic <= chain.list_chromatic && chain.list_chromatic <= chain.flex_upper && chain.flex_upper <= chain.max_degree_plus_one,
        "parameter chain broken on {g}: {chain:?}"
    );
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_rows() {
        let b = epsilon_bounds_bipartite(2, 3, 2).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(0, 1), ratio(0, 1)));
        let b = epsilon_bounds_bipartite(3, 7, 3).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(1, 3), ratio(1, 3)));
        let b = epsilon_bounds_bipartite(3, 5, 3).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(1, 3), ratio(1, 2)));
        let b = epsilon_bounds_bipartite(4, 10, 3).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(0, 1), ratio(0, 1)));
        let b = epsilon_bounds_bipartite(4, 5, 3).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(1, 9), ratio(1, 2)));
        assert!(epsilon_bounds_bipartite(2, 4, 2).is_err());
        assert!(epsilon_bounds_bipartite(3, 27, 3).is_err());
    }

    #[test]
    fn known_ab_matches_the_characterization() {
        assert_eq!(known_ab(2, 8, 3, 2), Some(true));
        assert_eq!(known_ab(2, 9, 3, 2), Some(false));
        assert_eq!(known_ab(4, 4, 3, 2), Some(true));
        assert_eq!(known_ab(4, 5, 3, 2), Some(false));
        assert_eq!(known_ab(5, 4, 3, 2), Some(true));
        assert_eq!(known_ab(6, 4, 3, 2), Some(false));
        assert_eq!(known_ab(4, 5, 2, 3), Some(true));
        assert_eq!(known_ab(4, 6, 2, 3), Some(false));
        assert_eq!(known_ab(3, 7, 2, 3), Some(true));
        assert_eq!(known_ab(3, 8, 2, 3), Some(false));
        assert_eq!(known_ab(9, 2, 2, 3), Some(false));
    }

    #[test]
    fn flex_upper_examples() {
        assert_eq!(flex_number_upper(&[2, 3]).unwrap().0, 3);
        assert_eq!(flex_number_upper(&[4, 4]).unwrap(), (4, FlexUpperCertificate::Knn));
        assert_eq!(flex_number_upper(&[3, 3]).unwrap().0, 3);
    }

    #[test]
    fn chains() {
        let c = chain_check(&MultipartiteGraph::new(vec![2, 3]).unwrap()).unwrap();
        assert_eq!((c.chromatic, c.list_chromatic, c.flex_upper, c.max_degree_plus_one), (2, 2, 3, 4));
        let c = chain_check(&MultipartiteGraph::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!((c.chromatic, c.list_chromatic, c.flex_upper, c.max_degree_plus_one), (3, 3, 3, 3));
        let c = chain_check(&MultipartiteGraph::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!((c.chromatic, c.list_chromatic, c.flex_upper, c.max_degree_plus_one), (2, 3, 3, 4));
    }
}
