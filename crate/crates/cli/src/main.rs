mod report;
mod reproduce;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use flexcolor::choose::{is_ab_choosable, AbMode, Budget, ChooseOptions, Decision};
use flexcolor::constructive::{knn_flex_color, multipartite_flex_color};
use flexcolor::exact;
use flexcolor::flexlab::{bounds_csv, bounds_table, check_flexible_sampled, format_rational};
use flexcolor::graph::hall_ratio;
use flexcolor::instance::{labeled_coloring, labeled_parts, Instance};
use flexcolor::witnesses::{self, catalog, diff, verify, WitnessRecord};
use flexcolor::{MultipartiteGraph, Rational};

use report::{render, Body, Format, Header, Table};

#[derive(Parser, Debug)]
#[command(name = "flexcolor", version, about = "Flexible list coloring of complete multipartite graphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; FLEXCOLOR_WORKERS takes precedence.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Shortcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Thm1,
    Knn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Most requests grantable by a proper list coloring.
    Maxsat {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Decide (a,b)-choosability of K_{m,n}.
    Choosable {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long = "list-sizes", value_delimiter = ',', required = true)]
        list_sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        /// Write a counterexample instance here when one is found.
        #[arg(long = "witness-out")]
        witness_out: Option<PathBuf>,
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        /// Lift the instance-size guardrail.
        #[arg(long = "allow-large")]
        allow_large: bool,
    },
    /// Color an instance with a request guarantee.
    Construct {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
    },
    /// Recompute a published table and compare it with the stated values.
    Reproduce {
        #[arg(long, value_enum)]
        result: reproduce::Result,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Hall ratio of a complete multipartite graph.
    Hall {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Check witness claims: the whole catalog, one entry, or an entry file.
    Verify {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        entry: Option<PathBuf>,
    },
    /// Bounds on ε for K_{m,n} as CSV.
    Bounds {
        #[arg(long = "max-m", default_value_t = 6)]
        max_m: usize,
        #[arg(long = "max-n", default_value_t = 30)]
        max_n: usize,
    },
    /// Sampled search for an ε-flexibility counterexample.
    Sample {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        k: usize,
        /// As p/q.
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long = "pot-bound")]
        pot_bound: Option<usize>,
    },
}

const GUARDRAIL_VERTICES: usize = 24;

struct Ctx {
    seed: u64,
    timing: bool,
    start: Instant,
}

impl Ctx {
    fn header(&self, command: &str, budget: Option<f64>) -> Header {
        Header {
            tool: "flexcolor",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed: self.seed,
            budget_seconds: budget,
            catalog_hash: witnesses::catalog_hash(),
            elapsed_seconds: self.timing.then(|| self.start.elapsed().as_secs_f64()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn workers(flag: Option<usize>) -> anyhow::Result<Option<usize>> {
    match std::env::var("FLEXCOLOR_WORKERS") {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("FLEXCOLOR_WORKERS={v} is not a positive integer"))?;
            Ok(Some(n))
        }
        Err(_) => Ok(flag),
    }
    .and_then(|w| match w {
        Some(0) => bail!("worker count must be positive"),
        w => Ok(w),
    })
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(w) = workers(cli.workers)? {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().context("starting worker pool")?;
    }
    let ctx = Ctx { seed: cli.seed, timing: cli.timing, start: Instant::now() };
    let fmt = cli.format;
    let emit = |header: Header, body: Body, default: Format| {
        print!("{}", render(&header, &body, fmt.unwrap_or(default)));
    };

    match cli.command {
        Command::Maxsat { instance } => {
            let inst = read_instance(&instance)?;
            let g = &inst.graph;
            let (body, code) = match &inst.request {
                Some(r) => {
                    let res = exact::max_satisfied(g, &inst.lists, r)?;
                    let body = Body::default()
                        .field("graph", g.to_string())
                        .field("status", if res.is_solved() { "solved" } else { "not-colorable" })
                        .field("best", res.is_solved().then_some(res.best))
                        .field("domain_size", r.domain_size())
                        .field("coloring", res.witness.as_ref().map(|f| labeled_coloring(g, &inst.lists, f)))
                        .field("nodes", res.nodes);
                    (body, if res.is_solved() { 0 } else { 1 })
                }
                None => {
                    let (f, nodes) = exact::is_colorable_with_stats(g, &inst.lists)?;
                    let body = Body::default()
                        .field("graph", g.to_string())
                        .field("status", if f.is_some() { "solved" } else { "not-colorable" })
                        .field("best", None::<usize>)
                        .field("domain_size", 0)
                        .field("coloring", f.as_ref().map(|f| labeled_coloring(g, &inst.lists, f)))
                        .field("nodes", nodes);
                    (body, if f.is_some() { 0 } else { 1 })
                }
            };
            emit(ctx.header("maxsat", None), body, Format::Json);
            Ok(code)
        }

        Command::Choosable { sizes, list_sizes, mode, witness_out, budget, allow_large } => {
            let (&[m, n], &[a, b]) = (sizes.as_slice(), list_sizes.as_slice()) else {
                bail!("--sizes and --list-sizes each take two comma-separated values");
            };
            if [m, n, a, b].contains(&0) {
                bail!("sizes and list sizes must be positive");
            }
            if budget <= 0.0 {
                bail!("budget must be positive");
            }
            let mode = match mode {
                Mode::Auto => AbMode::Auto,
                Mode::Exhaustive => AbMode::Exhaustive,
                Mode::Shortcut => AbMode::Shortcut,
            };
            if mode != AbMode::Shortcut && m + n > GUARDRAIL_VERTICES && !allow_large {
                bail!("K_{{{m},{n}}} has more than {GUARDRAIL_VERTICES} vertices; pass --allow-large to search anyway");
            }
            let opts = ChooseOptions { budget: Budget::seconds(budget), ..ChooseOptions::default() };
            let v = is_ab_choosable(m, n, a, b, mode, &opts)?;
            let (decision, code) = match v.decision {
                Decision::Choosable => ("choosable", 0),
                Decision::NotChoosable => ("not-choosable", 1),
                Decision::Timeout => ("timeout", 3),
            };
            if let (Some(path), Some(l)) = (&witness_out, &v.counterexample) {
                let file = Instance { graph: v.graph.clone(), lists: l.clone(), request: None }.to_file();
                fs::write(path, serde_json::to_string_pretty(&file)? + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            let body = Body::default()
                .field("graph", v.graph.to_string())
                .field("list_sizes", [a, b])
                .field("decision", decision)
                .field("method", v.method.as_str())
                .field("pot_bound", v.pot_bound)
                .field("bounded_pot", v.bounded_pot)
                .field("classes", v.stats.classes)
                .field("nodes", v.stats.nodes)
                .field("counterexample", v.counterexample.as_ref().map(|l| labeled_parts(&v.graph, l)));
            emit(ctx.header("choosable", Some(budget)), body, Format::Json);
            Ok(code)
        }

        Command::Construct { instance, algorithm } => {
            let inst = read_instance(&instance)?;
            let g = &inst.graph;
            let r = inst.request.as_ref().ok_or_else(|| anyhow!("{}: the instance has no request", instance.display()))?;
            let out = match algorithm {
                Algorithm::Thm1 => multipartite_flex_color(g, &inst.lists, r)?,
                Algorithm::Knn => knn_flex_color(g, &inst.lists, r)?,
            };
            let exact_best = if g.vertex_count() <= 12 {
                let res = exact::max_satisfied(g, &inst.lists, r)?;
                res.is_solved().then_some(res.best)
            } else {
                None
            };
            let body = Body::default()
                .field("graph", g.to_string())
                .field("algorithm", if algorithm == Algorithm::Thm1 { "thm1" } else { "knn" })
                .field("strategy_used", &out.strategy_used)
                .field("satisfied", out.satisfied)
                .field("guarantee", out.guarantee)
                .field("domain_size", r.domain_size())
                .field("exact_best", exact_best)
                .field("coloring", labeled_coloring(g, &inst.lists, &out.coloring));
            emit(ctx.header("construct", None), body, Format::Json);
            Ok(0)
        }

        Command::Reproduce { result, budget } => {
            let budget = budget.unwrap_or(result.default_budget());
            if budget <= 0.0 {
                bail!("budget must be positive");
            }
            let out = reproduce::run(result, budget)?;
            emit(ctx.header(&format!("reproduce {}", result.name()), Some(budget)), out.body, Format::Json);
            Ok(reproduce::exit_code(out.status))
        }

        Command::Hall { sizes } => {
            let g = MultipartiteGraph::new(sizes)?;
            let h = hall_ratio(&g);
            let body = Body::default()
                .field("graph", g.to_string())
                .field("rho", format_rational(h.value))
                .field("brute_force", h.brute_force.map(format_rational))
                .field("agrees", h.brute_force.map(|b| b == h.value));
            emit(ctx.header("hall", None), body, Format::Json);
            Ok(0)
        }

        Command::Verify { name, entry } => {
            let entries = match (&name, &entry) {
                (_, Some(path)) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let rec: WitnessRecord = serde_json::from_str(&text)
                        .map_err(|e| anyhow!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))?;
                    vec![rec.to_entry()?]
                }
                (Some(n), None) => {
                    vec![catalog().into_iter().find(|e| &e.name == n).ok_or_else(|| anyhow!("no catalog entry named {n}"))?]
                }
                (None, None) => catalog(),
            };
            let mut t = Table::new(&["name", "graph", "claim", "colorable", "measured_best", "nodes", "diff", "status"]);
            let mut all = true;
            for e in &entries {
                let rep = verify(e)?;
                let d = diff(e);
                let ok = rep.passed && d.is_empty();
                all &= ok;
                t.push(vec![
                    e.name.clone(),
                    e.graph.to_string(),
                    reproduce::claim_str(e.claim),
                    rep.colorable.to_string(),
                    rep.measured_best.map_or("-".into(), |b| b.to_string()),
                    rep.nodes.to_string(),
                    if d.is_empty() { "-".into() } else { d.join("; ") },
                    if ok { "pass" } else { "fail" }.into(),
                ]);
            }
            let body = Body::default().field("entries", entries.len()).field("status", if all { "pass" } else { "fail" }).with_table(t);
            emit(ctx.header("verify", None), body, Format::Json);
            Ok(if all { 0 } else { 1 })
        }

        Command::Bounds { max_m, max_n } => {
            let rows = bounds_table(max_m, max_n);
            let header = ctx.header("bounds", None);
            match fmt.unwrap_or(Format::Csv) {
                Format::Csv => {
                    print!("{}", render(&header, &Body::default(), Format::Csv));
                    print!("{}", bounds_csv(&rows));
                }
                f => {
                    let mut t = Table::new(&["m", "n", "t", "lower", "upper", "lower_cert", "upper_cert"]);
                    for b in &rows {
                        t.push(vec![
                            b.m.to_string(),
                            b.n.to_string(),
                            b.t.to_string(),
                            format_rational(b.lower),
                            format_rational(b.upper),
                            b.lower_certificate.to_string(),
                            b.upper_certificate.to_string(),
                        ]);
                    }
                    print!("{}", render(&header, &Body::default().field("rows_total", rows.len()).with_table(t), f));
                }
            }
            Ok(0)
        }

        Command::Sample { sizes, k, epsilon, trials, pot_bound } => {
            let eps = parse_rational(&epsilon)?;
            let g = MultipartiteGraph::new(sizes)?;
            let rep = check_flexible_sampled(&g, k, eps, trials, ctx.seed, pot_bound, &[])?;
            let cx = rep.counterexample.as_ref().map(|c| {
                json!({
                    "source": c.source,
                    "lists": labeled_parts(&g, &c.lists),
                    "request": c.request.pairs().map(|(v, col)| json!({"vertex": v, "color": c.lists.label(col)})).collect::<Vec<_>>(),
                    "best": c.best,
                    "required": c.required,
                })
            });
            let body = Body::default()
                .field("graph", g.to_string())
                .field("k", k)
                .field("epsilon", format_rational(eps))
                .field("mode", rep.mode.as_str())
                .field("explored", rep.explored)
                .field("pot_bound", rep.pot_bound)
                .field("counterexample", cx);
            emit(ctx.header("sample", None), body, Format::Json);
            Ok(if rep.counterexample.is_some() { 1 } else { 0 })
        }
    }
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().with_context(|| format!("bad numerator in {s}"))?;
    let q: i64 = q.trim().parse().with_context(|| format!("bad denominator in {s}"))?;
    if q == 0 {
        bail!("zero denominator in {s}");
    }
    Ok(Rational::new(p, q))
}
