//! `biasgraph`: command-line front end for the orientation-irregularity
//! library. Exit codes: 0 all checks passed, 1 a verification failure was
//! found, 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use biasgraph_core::bias::{DEFAULT_BIAS_LIMIT, DEFAULT_OW_LIMIT};
use biasgraph_core::cycles::{self, DEFAULT_CYCLE_BUDGET};
use biasgraph_core::generate::GeneratorSpec;
use biasgraph_core::hom::{self, DenseHypothesis};
use biasgraph_core::oneway;
use biasgraph_core::probe::{conjecture_probe, ProbeBudget, ProbeTarget};
use biasgraph_core::report::{digest_hex, Report, ReportFormat};
use biasgraph_core::verify::{run_suite, SuiteParams, SUITES};
use biasgraph_core::{OrientedGraph, PartiallyOrientedGraph, Rational};

#[derive(Parser)]
#[command(
    name = "biasgraph",
    version,
    about = "bias and one-way subgraph measures for oriented graphs"
)]
struct Cli {
    /// Seed for randomized operations (recorded in reports).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format for reports.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exhaustive-scan size limit override.
    #[arg(long, global = true)]
    limit_n: Option<usize>,
    /// Worker threads (default: BIASGRAPH_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family and write it in edge-list format.
    Gen(GenArgs),
    /// Exact or heuristic gamma-biased pair.
    Bias(BiasArgs),
    /// Exact one-way pair (largest e(A,B) with e(B,A) = 0).
    Ow(InputArgs),
    /// Greedy one-way pair for a regular digraph.
    Greedy(GreedyArgs),
    /// Monte-Carlo one-way sampler with inclusion probability p.
    SampleOw(SampleArgs),
    /// Degree-banded one-way sampler.
    BandedOw(BandedArgs),
    /// Cycle counts and two-path statistics.
    Cycles(CyclesArgs),
    /// Homomorphism counts of a pattern, optionally with the dense-case check.
    Hom(HomArgs),
    /// Run a named verification suite (or `all`).
    Verify(VerifyArgs),
    /// Search cycle-free families for extremal bias/ow ratios.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file ("-" for stdin).
    #[arg(long)]
    input: String,
}

#[derive(Args)]
struct GenArgs {
    /// polarity | c4free | random-orientation | blowup | log-partition |
    /// circulant | gnp-oriented
    #[arg(long)]
    family: String,
    /// Prime order for polarity graphs.
    #[arg(long)]
    q: Option<u64>,
    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Base vertex count for blow-up composites.
    #[arg(long)]
    m: Option<usize>,
    /// Blow-up cell size.
    #[arg(long)]
    l: Option<usize>,
    /// Circulant offsets, comma separated (e.g. 1,2,3).
    #[arg(long)]
    offsets: Option<String>,
    /// Edge target for gnp-oriented.
    #[arg(long)]
    e: Option<u64>,
}

#[derive(Args)]
struct BiasArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Bias parameter as an exact rational p/q in (0,1).
    #[arg(long, default_value = "1/2")]
    gamma: String,
    /// Use the randomized local-search lower bound instead of the
    /// exhaustive scan.
    #[arg(long)]
    heuristic: bool,
    /// Restarts for the heuristic.
    #[arg(long, default_value_t = 64)]
    iterations: u64,
}

#[derive(Args)]
struct GreedyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also write the per-step trace (t, chosen_vertex, e2) as CSV.
    #[arg(long)]
    trace_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Inclusion probability (accepts 0.25 or 1/4).
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 512)]
    trials: u64,
}

#[derive(Args)]
struct BandedArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 512)]
    trials: u64,
}

#[derive(Args)]
struct CyclesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cycle length.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// simple | hom | c4-formula
    #[arg(long, default_value = "simple")]
    mode: String,
    /// Also emit two-path and balance statistics.
    #[arg(long)]
    stats: bool,
    /// Unbalanced-pair factor for the statistics (strict inequality).
    #[arg(long, default_value_t = 16)]
    unbalance_factor: u64,
}

#[derive(Args)]
struct HomArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Pattern file: header "k m", lines "u v >" (arc) or "u v -" (edge).
    #[arg(long)]
    pattern: PathBuf,
    /// oriented | underlying
    #[arg(long, default_value = "oriented")]
    mode: String,
    /// Evaluate the dense-case counting inequality.
    #[arg(long)]
    check_dense: bool,
    /// Epsilon for the dense-case check, as p/q.
    #[arg(long, default_value = "1/10")]
    epsilon: String,
    /// Pattern-size budget for the backtracking counter.
    #[arg(long, default_value_t = 6)]
    budget_k: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long)]
    suite: String,
    /// Trials override for sampler suites.
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Args)]
struct ProbeArgs {
    /// six-cycle-3/2 | even-cycle-K | ow-c4
    #[arg(long)]
    target: String,
    /// Exhaustive corpus bound (0 disables).
    #[arg(long, default_value_t = 5)]
    exhaustive_n: usize,
    /// Largest seeded instance.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    /// Seeds per family configuration.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("BIASGRAPH_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    if let Some(t) = flag.or(from_env) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<ExitCode, AnyError> {
    let format: ReportFormat = cli.format.parse()?;
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Gen(args) => {
            let spec = parse_family(&args, seed)?;
            let graph = spec.build()?;
            let text = graph.serialize();
            match &cli.out {
                Some(path) => {
                    std::fs::write(path, &text)?;
                    let sidecar = serde_json::json!({
                        "spec": spec,
                        "n": graph.vertex_count(),
                        "m": graph.arc_count(),
                        "version": biasgraph_core::VERSION,
                    });
                    let mut side_path = path.clone().into_os_string();
                    side_path.push(".json");
                    std::fs::write(side_path, serde_json::to_string_pretty(&sidecar)?)?;
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bias(args) => {
            let graph = read_graph(&args.input.input)?;
            let gamma: Rational = args.gamma.parse()?;
            let cert = if args.heuristic {
                biasgraph_core::heuristic_bias(&graph, gamma, seed, args.iterations)?
            } else {
                let limit = cli.limit_n.unwrap_or(DEFAULT_BIAS_LIMIT);
                match biasgraph_core::exact_bias(&graph, gamma, limit) {
                    Err(e @ biasgraph_core::Error::SizeLimit { .. }) => {
                        return Err(format!(
                            "{e}; pass --heuristic for a lower-bound certificate or raise --limit-n"
                        )
                        .into())
                    }
                    other => other?,
                }
            };
            emit(&cli.out, &serde_json::to_string_pretty(&cert)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ow(args) => {
            let graph = read_graph(&args.input)?;
            let limit = cli.limit_n.unwrap_or(DEFAULT_OW_LIMIT);
            let cert = biasgraph_core::exact_ow(&graph, limit)?;
            emit(&cli.out, &serde_json::to_string_pretty(&cert)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Greedy(args) => {
            let graph = read_graph(&args.input.input)?;
            let trace = oneway::greedy_oneway_regular(&graph)?;
            if let Some(path) = &args.trace_csv {
                std::fs::write(path, trace.trace_csv())?;
            }
            let cert = trace.certificate(&graph);
            let payload = serde_json::json!({
                "certificate": cert,
                "degree": trace.degree,
                "steps": trace.chosen.len(),
                "chosen": trace.chosen,
                "e2_per_step": trace.e2_per_step,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&payload)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SampleOw(args) => {
            let graph = read_graph(&args.input.input)?;
            let p = parse_probability(&args.p)?;
            let out = oneway::sampled_oneway(&graph, p, seed, args.trials)?;
            emit(&cli.out, &serde_json::to_string_pretty(&out)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::BandedOw(args) => {
            let graph = read_graph(&args.input.input)?;
            let (out, band) = oneway::banded_oneway_with_band(&graph, seed, args.trials)?;
            let payload = serde_json::json!({ "outcome": out, "band": band });
            emit(&cli.out, &serde_json::to_string_pretty(&payload)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cycles(args) => {
            let graph = read_graph(&args.input.input)?;
            let mut payload = serde_json::Map::new();
            payload.insert("k".into(), args.k.into());
            payload.insert("mode".into(), args.mode.clone().into());
            match args.mode.as_str() {
                "simple" => {
                    let budget = cli.limit_n.unwrap_or(DEFAULT_CYCLE_BUDGET);
                    let c = cycles::simple_cycle_count(&graph, args.k, budget)?;
                    payload.insert("count".into(), c.into());
                }
                "hom" => {
                    let c = cycles::hom_cycle_count(&graph, args.k);
                    payload.insert("count".into(), c.to_string().into());
                }
                "c4-formula" => {
                    payload.insert("count".into(), cycles::oriented_c4_count(&graph).into());
                }
                other => return Err(format!("unknown mode {other:?}").into()),
            }
            if args.stats {
                let s = cycles::path_stats(&graph, args.unbalance_factor, None);
                payload.insert(
                    "stats".into(),
                    serde_json::json!({
                        "two_path_total": s.two_path_total,
                        "good_two_paths": s.good_two_paths,
                        "unbalanced_pairs": s.unbalanced_pairs,
                        "unbalanced_two_paths": s.unbalanced_two_paths,
                        "e_x": s.e_x,
                    }),
                );
            }
            let rendered = match format {
                ReportFormat::Csv => flatten_csv(&serde_json::Value::Object(payload)),
                _ => serde_json::to_string_pretty(&serde_json::Value::Object(payload))?,
            };
            emit(&cli.out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hom(args) => {
            let graph = read_graph(&args.input.input)?;
            let pattern_text = std::fs::read_to_string(&args.pattern)?;
            let pattern = PartiallyOrientedGraph::parse(&pattern_text)?;
            let mut payload = serde_json::Map::new();
            let count = match args.mode.as_str() {
                "oriented" => hom::hom_count(&pattern, &graph, args.budget_k)?,
                "underlying" => hom::underlying_hom_count(&pattern, &graph, args.budget_k)?,
                other => return Err(format!("unknown mode {other:?}").into()),
            };
            payload.insert("mode".into(), args.mode.clone().into());
            payload.insert("count".into(), count.into());
            if args.check_dense {
                let eps: Rational = args.epsilon.parse()?;
                let rec = hom::dense_bound_check(
                    &pattern,
                    &graph,
                    eps,
                    DenseHypothesis::ExhaustiveCondition,
                    args.budget_k,
                )?;
                payload.insert("dense_check".into(), serde_json::to_value(&rec)?);
            }
            emit(
                &cli.out,
                &serde_json::to_string_pretty(&serde_json::Value::Object(payload))?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let params = SuiteParams {
                limit_n: cli.limit_n,
                seed: cli.seed,
                trials: args.trials,
            };
            let mut all_pass = true;
            let mut outputs = Vec::new();
            let names: Vec<&str> = if args.suite == "all" {
                SUITES.to_vec()
            } else {
                vec![args.suite.as_str()]
            };
            for name in names {
                let report = run_suite(name, params)?;
                all_pass &= report.all_pass();
                outputs.push(render(&report, format)?);
            }
            emit(&cli.out, &outputs.join("\n"))?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Probe(args) => {
            let target: ProbeTarget = args.target.parse()?;
            let budget = ProbeBudget {
                exhaustive_n: cli.limit_n.unwrap_or(args.exhaustive_n),
                max_n: args.max_n,
                seeds: args.seeds,
            };
            let report = conjecture_probe(target, budget, seed)?;
            emit(&cli.out, &render(&report, format)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// key,value rows for scalar outputs under --format csv.
fn flatten_csv(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, rows: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, rows);
                }
            }
            serde_json::Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), child, rows);
                }
            }
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{}\n", v.trim_matches('"')));
    }
    out
}

fn render(report: &Report, format: ReportFormat) -> Result<String, AnyError> {
    Ok(match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv()?,
        ReportFormat::Text => report.to_text(),
    })
}

fn parse_family(args: &GenArgs, seed: u64) -> Result<GeneratorSpec, AnyError> {
    fn need<T: Copy>(opt: Option<T>, what: &str) -> Result<T, AnyError> {
        opt.ok_or_else(|| format!("--{what} is required for this family").into())
    }
    Ok(match args.family.as_str() {
        "polarity" => GeneratorSpec::Polarity {
            q: need(args.q, "q")?,
        },
        "c4free" => GeneratorSpec::C4free {
            n: need(args.n, "n")?,
        },
        "random-orientation" => GeneratorSpec::RandomOrientation {
            n: need(args.n, "n")?,
            seed,
        },
        "blowup" => GeneratorSpec::Blowup {
            m: need(args.m, "m")?,
            l: need(args.l, "l")?,
            seed,
        },
        "log-partition" => GeneratorSpec::LogPartition {
            n: need(args.n, "n")?,
            seed,
        },
        "circulant" => {
            let offsets_text = args
                .offsets
                .as_deref()
                .ok_or("--offsets is required for circulant")?;
            let offsets: Vec<u32> = offsets_text
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()?;
            GeneratorSpec::Circulant {
                n: need(args.n, "n")?,
                offsets,
            }
        }
        "gnp-oriented" => GeneratorSpec::GnpOriented {
            n: need(args.n, "n")?,
            e: need(args.e, "e")?,
            seed,
        },
        other => return Err(format!("unknown family {other:?}").into()),
    })
}

fn parse_probability(s: &str) -> Result<f64, AnyError> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse()?;
        let q: f64 = q.trim().parse()?;
        return Ok(p / q);
    }
    Ok(s.trim().parse()?)
}

fn read_graph(path: &str) -> Result<OrientedGraph, AnyError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    let graph = OrientedGraph::parse(&text)?;
    // Digest on stderr keeps stdout parseable.
    eprintln!(
        "# input {} sha256 {} n {} m {}",
        path,
        digest_hex(text.as_bytes()),
        graph.vertex_count(),
        graph.arc_count()
    );
    Ok(graph)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), AnyError> {
    match out {
        Some(path) => std::fs::write(path, text.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}
