//! `specrad`: build extremal graphs, verify the theorems, measure radii.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use specrad::census::CensusResult;
use specrad::connectivity::vertex_connectivity;
use specrad::graph::{extremal_graph, g6_decode, g6_encode, parse_edge_list, ExtremalParams, Graph};
use specrad::quotient::{cubic_coefficients, largest_cubic_root};
use specrad::report::{Failure, Report};
use specrad::rewiring::RewireTolerances;
use specrad::spectral::{perron_with, PerronOptions, DEFAULT_MAX_ITER, DEFAULT_TOL, RESIDUAL_TOL};
use specrad::suites;

#[derive(Parser)]
#[command(
    name = "specrad",
    version,
    about = "Spectral radius extremal graphs under connectivity and minimum-degree bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build K_k + (K_{delta-k+1} ∪ K_{n-delta-1}) and compare its radius with the cubic.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run one verification suite; exits 1 if anything fails.
    Verify(VerifyArgs),
    /// Spectral radius, Perron vector, connectivity and minimum degree of a graph file.
    Radius {
        /// graph6 (one graph per line) or an edge list (`u v` per line).
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        input_format: InputFormat,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    G6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    G6,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Main,
    Shiu,
    Lemma,
    Cubic,
    Rewire,
    Corollary,
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Convergence tolerance of the power iteration.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Accepted residual `‖Ax - ρx‖∞ / max(1, ρ)`.
    #[arg(long, default_value_t = RESIDUAL_TOL)]
    residual_tol: f64,
}

impl SolverArgs {
    fn options(&self) -> PerronOptions {
        PerronOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            residual_tol: self.residual_tol,
        }
    }
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Smallest order in the grid.
    #[arg(long)]
    n_min: Option<usize>,
    /// Largest order in the grid (census: 7, cubic: 200, random suites: 9).
    #[arg(long)]
    n_max: Option<usize>,
    /// Allow exhaustive scans at order 8 (2^28 graphs).
    #[arg(long)]
    allow_n8: bool,
    /// Instances for the randomized suites.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, env = "SPECRAD_SHARDS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    shards: u64,
    /// Largest accepted gap between the cubic root and the power iteration.
    #[arg(long, default_value_t = suites::CUBIC_ROOT_TOL)]
    cubic_tol: f64,
    /// Perron sums closer than this count as equal.
    #[arg(long, default_value_t = RewireTolerances::default().sum_eq)]
    sum_eq_tol: f64,
    /// Slack on the weak conclusions.
    #[arg(long, default_value_t = RewireTolerances::default().weak)]
    weak_tol: f64,
    /// Premise margin that demands a strict conclusion.
    #[arg(long, default_value_t = RewireTolerances::default().strict_premise)]
    strict_premise: f64,
    /// Gap a strict conclusion must clear.
    #[arg(long, default_value_t = RewireTolerances::default().strict_gap)]
    strict_gap: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Extremal {
            n,
            k,
            delta,
            format,
            solver,
        } => cmd_extremal(n, k, delta, format, &solver),
        Command::Verify(args) => cmd_verify(&args),
        Command::Radius {
            input,
            input_format,
            solver,
        } => cmd_radius(&input, input_format, &solver),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn cmd_extremal(n: usize, k: usize, delta: usize, format: Format, solver: &SolverArgs) -> Result<bool> {
    let p = ExtremalParams::new(n, k, delta)?;
    let g = extremal_graph(p);
    let g6 = g6_encode(&g);
    let pair = perron_with(&g, &solver.options())?;
    let cubic = cubic_coefficients(p);
    let root = largest_cubic_root(cubic);
    let kappa = vertex_connectivity(&g).kappa;
    let diff = (pair.rho - root).abs();
    eprintln!(
        "G_{{{k},{delta},{n}}}: kappa {kappa}, min degree {}, rho {:.12}, cubic root {:.12}, |diff| {diff:.3e}",
        g.min_degree(),
        pair.rho,
        root
    );
    if !p.realizes_min_degree() {
        eprintln!(
            "note: n < 2 delta + 2 - k, so the minimum degree is {} rather than {delta}",
            g.min_degree()
        );
    }
    let text = match format {
        Format::G6 => g6,
        Format::Csv => format!(
            "n,k,delta,graph6,kappa,min_degree,rho,cubic_root,diff\n{n},{k},{delta},{g6},{kappa},{},{},{},{}\n",
            g.min_degree(),
            pair.rho,
            root,
            diff
        ),
        Format::Json => {
            let mut report = Report::new("extremal", json!({ "n": n, "k": k, "delta": delta }));
            report.findings.push(json!({
                "graph6": g6,
                "degrees": g.degrees(),
                "kappa": kappa,
                "min_degree": g.min_degree(),
                "realizes_min_degree": p.realizes_min_degree(),
                "rho": pair.rho,
                "cubic": cubic.to_string(),
                "cubic_root": root,
                "difference": diff,
            }));
            report.to_json()
        }
    };
    emit(&text, None)?;
    Ok(true)
}

fn census_csv(results: &[CensusResult]) -> String {
    let mut s = String::from(CensusResult::csv_header());
    s.push('\n');
    for r in results {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let started = Instant::now();
    let shards = a.shards as usize;
    let census_like = matches!(a.theorem, Theorem::Main | Theorem::Shiu | Theorem::Lemma);
    let (default_min, default_max) = match a.theorem {
        Theorem::Main | Theorem::Shiu | Theorem::Lemma => (4, 7),
        Theorem::Cubic => (3, 200),
        Theorem::Rewire | Theorem::Corollary => (3, 9),
    };
    let n_min = a.n_min.unwrap_or(default_min);
    let n_max = a.n_max.unwrap_or(default_max);
    if n_min > n_max {
        bail!("empty grid: --n-min {n_min} exceeds --n-max {n_max}");
    }
    if census_like && n_max >= 8 && !a.allow_n8 {
        bail!("exhaustive scans at order {n_max} need --allow-n8 (order 8 is 2^28 graphs; 9 and up are refused)");
    }
    if matches!(a.format, Format::G6) {
        bail!("graph6 output applies to `extremal`; use json or csv for reports");
    }
    let tol = RewireTolerances {
        sum_eq: a.sum_eq_tol,
        weak: a.weak_tol,
        strict_premise: a.strict_premise,
        strict_gap: a.strict_gap,
    };
    let name = match a.theorem {
        Theorem::Main => "main",
        Theorem::Shiu => "shiu",
        Theorem::Lemma => "lemma",
        Theorem::Cubic => "cubic",
        Theorem::Rewire => "rewire",
        Theorem::Corollary => "corollary",
    };
    let mut params = json!({ "theorem": name, "n_min": n_min, "n_max": n_max });
    let mut report = Report::new("verify", Value::Null);
    let csv: String;

    match a.theorem {
        Theorem::Main | Theorem::Shiu => {
            let results = if a.theorem == Theorem::Main {
                suites::main_census(n_min..=n_max, shards)?
            } else {
                suites::shiu_census(n_min..=n_max, shards)?
            };
            for r in &results {
                eprintln!(
                    "{}: {} members, rho {:.10}, {} maximizer(s), {}",
                    r.class,
                    r.class_size,
                    r.max_rho.unwrap_or(f64::NAN),
                    r.maximizers.len(),
                    if r.passed() { "ok" } else { "FAIL" }
                );
            }
            report.failures = suites::census_failures(&results);
            report.findings = results
                .iter()
                .map(|r| serde_json::to_value(r).expect("serializable"))
                .collect();
            csv = census_csv(&results);
        }
        Theorem::Lemma => {
            let reports = suites::lemma_census(n_min..=n_max, shards)?;
            let mut s = String::from("n,k,graphs_scanned,premise_count,counterexamples\n");
            for r in &reports {
                eprintln!(
                    "n={} k={}: {} graphs meet the degree bound, {} counterexample(s)",
                    r.n,
                    r.k,
                    r.premise_count,
                    r.counterexamples.len()
                );
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.k,
                    r.graphs_scanned,
                    r.premise_count,
                    r.counterexamples.len()
                ));
            }
            report.failures = suites::lemma_failures(&reports);
            report.findings = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("serializable"))
                .collect();
            csv = s;
        }
        Theorem::Cubic | Theorem::Rewire | Theorem::Corollary => {
            let outcome = match a.theorem {
                Theorem::Cubic => {
                    params["cubic_tol"] = json!(a.cubic_tol);
                    suites::cubic_suite(n_min.max(3)..=n_max, a.cubic_tol)
                }
                Theorem::Rewire => {
                    params["trials"] = json!(a.trials);
                    params["seed"] = json!(a.seed);
                    params["tolerances"] = serde_json::to_value(tol)?;
                    suites::rewire_suite(a.trials, a.seed, n_max, &tol, shards)
                }
                _ => {
                    params["trials"] = json!(a.trials);
                    params["seed"] = json!(a.seed);
                    params["tolerances"] = serde_json::to_value(tol)?;
                    suites::corollary_suite(a.trials, a.seed, n_max, &tol, shards)
                }
            };
            eprintln!(
                "{}: {} checked, {} skipped, {} vacuous, worst {:.3e}, {} failure(s)",
                outcome.suite,
                outcome.checked,
                outcome.skipped,
                outcome.vacuous,
                outcome.worst,
                outcome.failures.len()
            );
            csv = format!(
                "suite,checked,skipped,vacuous,worst,failures\n{},{},{},{},{:e},{}\n",
                outcome.suite,
                outcome.checked,
                outcome.skipped,
                outcome.vacuous,
                outcome.worst,
                outcome.failures.len()
            );
            report.failures = outcome.failures.clone();
            report.findings.push(json!({
                "suite": outcome.suite,
                "checked": outcome.checked,
                "skipped": outcome.skipped,
                "vacuous": outcome.vacuous,
                "worst": outcome.worst,
            }));
        }
    }
    report.params = params;
    if a.timing {
        report.timing = Some(started.elapsed().as_secs_f64());
    }
    for f in &report.failures {
        eprintln!("FAIL [{}] {}", f.check, f.message);
    }
    let text = match a.format {
        Format::Csv => csv,
        _ => report.to_json(),
    };
    emit(&text, a.output.as_ref())?;
    Ok(report.passed())
}

/// Graph6 when every non-empty line is a single token that decodes;
/// otherwise an edge list.
fn read_graphs(text: &str, format: InputFormat) -> Result<Vec<Graph>> {
    let g6_lines = || -> Result<Vec<Graph>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| g6_decode(l.trim().as_bytes()).with_context(|| format!("line {}", i + 1)))
            .collect()
    };
    match format {
        InputFormat::G6 => g6_lines(),
        InputFormat::Edges => Ok(vec![parse_edge_list(text)?]),
        InputFormat::Auto => {
            let looks_g6 = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .all(|l| !l.starts_with('#') && !l.contains(char::is_whitespace) && l.parse::<u64>().is_err());
            if looks_g6 && !text.trim().is_empty() {
                g6_lines()
            } else {
                Ok(vec![parse_edge_list(text)?])
            }
        }
    }
}

fn radius_finding(g: &Graph, opts: &PerronOptions) -> Result<Value> {
    let mut components = Vec::new();
    for comp in g.components() {
        let h = g.induced_subgraph(&comp)?;
        let pair = perron_with(&h, opts)?;
        components.push(json!({ "vertices": comp, "rho": pair.rho, "perron_vector": pair.vec }));
    }
    let rho = components
        .iter()
        .map(|c| c["rho"].as_f64().expect("number"))
        .fold(0.0, f64::max);
    let kappa = vertex_connectivity(g).kappa;
    eprintln!(
        "order {}, {} edge(s), {} component(s), rho {rho:.12}, kappa {kappa}, min degree {}",
        g.order(),
        g.edge_count(),
        components.len(),
        g.min_degree()
    );
    let mut out = json!({
        "graph6": g6_encode(g),
        "order": g.order(),
        "edges": g.edge_count(),
        "connected": components.len() == 1,
        "rho": rho,
        "kappa": kappa,
        "min_degree": g.min_degree(),
    });
    if components.len() == 1 {
        out["perron_vector"] = components[0]["perron_vector"].clone();
    } else {
        out["components"] = Value::Array(components);
    }
    Ok(out)
}

fn cmd_radius(input: &PathBuf, format: InputFormat, solver: &SolverArgs) -> Result<bool> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let graphs = read_graphs(&text, format)?;
    let mut report = Report::new("radius", json!({ "input": input.display().to_string() }));
    let opts = solver.options();
    for g in &graphs {
        match radius_finding(g, &opts) {
            Ok(f) => report.findings.push(f),
            Err(e) => report
                .failures
                .push(Failure::new("radius", e.to_string()).with_graph(g6_encode(g))),
        }
    }
    emit(&report.to_json(), None)?;
    Ok(report.passed())
}
