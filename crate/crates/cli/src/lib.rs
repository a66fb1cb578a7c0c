//! Command-line front end for `graph-weierstrass`.
//!
//! Exit codes: 0 success, 1 internal failure, 2 bad input, 3 enumeration
//! cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_weierstrass::jacobian::DEFAULT_ENUMERATION_CAP;
use graph_weierstrass::sweep::{BoundPolicy, Family, SweepConfig};
use graph_weierstrass::weierstrass::{default_bound, DEFAULT_HF_CAP};
use graph_weierstrass::{
    connectivity_report, conjecture_sweep, jacobian, reduce, ContainmentReport, Divisor, Graph,
    RankEngine, SemigroupWindow, Weierstrass,
};
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<graph_weierstrass::Error> for CliError {
    fn from(e: graph_weierstrass::Error) -> CliError {
        use graph_weierstrass::Error as E;
        match e {
            E::EnumerationCapExceeded { .. } => CliError::Cap(e.to_string()),
            E::TheoremViolation(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Internal(e.to_string())
    }
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "graph-weierstrass", version, about = "Divisor theory and Weierstrass semigroups on finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// generator spec, e.g. `wheel:4`, `complete:5`, `bridged:triangle,triangle`
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "input")]
    pub generator: Option<String>,
    /// edge-list file: vertex count on the first line, then `u v` per edge
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// seed for random generators given without one
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Laplacian matrix.
    Laplacian {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Print the genus `|E| - |V| + 1`.
    Genus {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Print the graph in edge-list format.
    Edges {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Edge, vertex and algebraic connectivity, and cut vertices.
    Connectivity {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Baker–Norine rank with an obstruction certificate.
    Rank {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// dense `a,b,c` or sparse `v:c,v:c` (`P` names the distinguished vertex)
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Reduce a divisor against a base vertex.
    Reduce {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value = "0")]
        base: String,
    },
    /// Invariant factors of the Jacobian.
    Jacobian {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "0")]
        base: String,
    },
    /// H_f, H_r and H_r^red of a vertex on a window [0, B].
    Semigroups {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "P")]
        vertex: String,
        /// window bound; defaults to max(2g, deg P) + 2
        #[arg(long)]
        bound: Option<u64>,
        /// rank memo state cap
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// H_f classes-per-degree cap
        #[arg(long, default_value_t = DEFAULT_HF_CAP)]
        hf_cap: u64,
    },
    /// Run the containment report over a graph family, one JSON line per (graph, vertex).
    Sweep {
        /// random-connected, random-tree, all-trees, cycles, complete, wheels,
        /// or `;`-separated generator specs
        #[arg(long)]
        family: String,
        /// size range `a..b` (inclusive)
        #[arg(long, default_value = "4..6")]
        n: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// fixed window bound instead of max(2g, deg P) + 2
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_HF_CAP)]
        hf_cap: u64,
        /// JSONL destination; stdout when omitted (summary then goes to stderr)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

/// Resolved inputs of a single-graph command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: Graph,
    /// distinguished vertex of the generator; 0 for files
    pub distinguished: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(source: &Source, output: &Output) -> Result<RunConfig, CliError> {
        let (graph, distinguished) = match (&source.generator, &source.input) {
            (Some(spec), None) => graph_weierstrass::families::from_spec(&seeded_spec(spec, output.seed))?,
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
                (Graph::parse_edge_list(&text)?, 0)
            }
            _ => return Err(input_err("give exactly one of --gen or --input")),
        };
        Ok(RunConfig {
            graph,
            distinguished,
            format: output.format,
            out: output.out.clone(),
        })
    }

    /// `P` or a vertex index.
    pub fn vertex(&self, s: &str) -> Result<usize, CliError> {
        let v = if s.trim() == "P" {
            self.distinguished
        } else {
            s.trim()
                .parse()
                .map_err(|_| input_err(format!("bad vertex `{s}`")))?
        };
        self.graph.check_vertex(v)?;
        Ok(v)
    }

    pub fn divisor(&self, s: &str) -> Result<Divisor, CliError> {
        let n = self.graph.vertex_count();
        let s = s.trim();
        if s.contains(':') {
            let mut terms = Vec::new();
            for term in s.split(',') {
                let (v, c) = term
                    .split_once(':')
                    .ok_or_else(|| input_err(format!("bad divisor term `{term}`")))?;
                let c: i64 = c
                    .trim()
                    .parse()
                    .map_err(|_| input_err(format!("bad coefficient in `{term}`")))?;
                terms.push((self.vertex(v)?, c));
            }
            Ok(Divisor::from_sparse(n, &terms)?)
        } else {
            let values = s
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| input_err(format!("bad coefficient `{x}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != n {
                return Err(graph_weierstrass::Error::LengthMismatch { expected: n, found: values.len() }.into());
            }
            Ok(Divisor::new(values))
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        emit(&self.out, text)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Appends `seed` to `random-tree:n` and `random-connected:n`.
fn seeded_spec(spec: &str, seed: u64) -> String {
    let spec = spec.trim();
    if (spec.starts_with("random-tree:") || spec.starts_with("random-connected:"))
        && spec.matches(':').count() == 1
    {
        format!("{spec}:{seed}")
    } else {
        spec.to_owned()
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || input_err(format!("bad size range `{s}`, expected `a..b`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok((a, b))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn join(xs: &[u64]) -> String {
    if xs.is_empty() {
        "(none)".into()
    } else {
        xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn window_table(out: &mut String, name: &str, w: &SemigroupWindow) {
    let _ = writeln!(out, "{name:<10} members: {}", join(&w.members()));
    let _ = writeln!(out, "{:<10} gaps:    {}", "", join(&w.gaps()));
}

pub fn semigroups_human(r: &ContainmentReport) -> String {
    let c = &r.checks;
    let g = &r.graph;
    let mut s = String::new();
    let _ = writeln!(s, "graph: n={} m={} genus={}", g.vertex_count(), g.edge_count(), c.genus);
    let _ = writeln!(s, "vertex P={} deg(P)={} window [0, {}]", r.vertex, c.deg_p, r.bound);
    let _ = writeln!(s);
    window_table(&mut s, "H_f", &r.hf);
    window_table(&mut s, "H_r", &r.hr);
    window_table(&mut s, "H_r^red", &r.hred);
    let _ = writeln!(s);
    let _ = writeln!(s, "min nonzero H_f = {}   lambda = {}   cut vertex: {}", c.min_hf, c.lambda, c.is_cut_vertex);
    let _ = writeln!(s, "|H_f \\ H_r| in window = {}: {}", c.hf_minus_hr.len(), join(&c.hf_minus_hr));
    let _ = writeln!(s, "H_r^red in H_f: {}   H_r^red in H_r: {}", c.containment_hred_hf, c.hred_subset_hr);
    let _ = writeln!(s, "H_r in H_f: {}", c.hr_subset_hf);
    if !c.conjecture_counterexamples.is_empty() {
        let _ = writeln!(s, "FINDING: H_r members outside H_f: {}", join(&c.conjecture_counterexamples));
    }
    for v in r.theorem_violations() {
        let _ = writeln!(s, "THEOREM FAILURE: {v}");
    }
    s
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Laplacian { source, output } => {
            let cfg = RunConfig::load(&source, &output)?;
            let l = cfg.graph.laplacian();
            let text = match cfg.format {
                Format::Human => l.to_string(),
                Format::Json => to_json(&json!({ "laplacian": l.entries() }))?,
            };
            cfg.emit(&text)
        }
        Command::Genus { source, output } => {
            let cfg = RunConfig::load(&source, &output)?;
            let genus = cfg.graph.genus()?;
            let text = match cfg.format {
                Format::Human => format!("{genus}\n"),
                Format::Json => to_json(&json!({ "genus": genus }))?,
            };
            cfg.emit(&text)
        }
        Command::Edges { source, output } => {
            let cfg = RunConfig::load(&source, &output)?;
            let text = match cfg.format {
                Format::Human => cfg.graph.to_edge_list(),
                Format::Json => to_json(&cfg.graph)?,
            };
            cfg.emit(&text)
        }
        Command::Connectivity { source, output } => {
            let cfg = RunConfig::load(&source, &output)?;
            let r = connectivity_report(&cfg.graph)?;
            let text = match cfg.format {
                Format::Human => {
                    let cut: Vec<u64> = r.cut_vertices.iter().map(|&v| v as u64).collect();
                    format!(
                        "edge connectivity lambda = {}\nvertex connectivity kappa = {}\nmin degree delta = {}\nalgebraic connectivity = {:.6}\ncut vertices: {}\n",
                        r.edge_connectivity,
                        r.vertex_connectivity,
                        r.min_degree,
                        r.algebraic_connectivity,
                        join(&cut)
                    )
                }
                Format::Json => to_json(&r)?,
            };
            cfg.emit(&text)
        }
        Command::Rank { source, output, divisor, cap } => {
            let cfg = RunConfig::load(&source, &output)?;
            let d = cfg.divisor(&divisor)?;
            let mut engine = RankEngine::with_cap(&cfg.graph, cap)?;
            let cert = engine.certificate(&d)?;
            let text = match cfg.format {
                Format::Human => {
                    let mut s = format!("D = {}\nrank r(D) = {}\n", cert.divisor, cert.rank);
                    if let Some(e) = &cert.obstruction {
                        let _ = writeln!(s, "obstruction E = {e} (deg {}), D - E not winnable", e.degree());
                    }
                    s
                }
                Format::Json => to_json(&cert)?,
            };
            cfg.emit(&text)
        }
        Command::Reduce { source, output, divisor, base } => {
            let cfg = RunConfig::load(&source, &output)?;
            let d = cfg.divisor(&divisor)?;
            let q = cfg.vertex(&base)?;
            let r = reduce(&cfg.graph, &d, q)?;
            let text = match cfg.format {
                Format::Human => format!(
                    "reduced = {}\nscript  = {:?}\nbase {q}, burn order {:?}\n",
                    r.reduced,
                    r.script.values(),
                    r.burn_order
                ),
                Format::Json => to_json(&r)?,
            };
            cfg.emit(&text)
        }
        Command::Jacobian { source, output, base } => {
            let cfg = RunConfig::load(&source, &output)?;
            let q = cfg.vertex(&base)?;
            let jac = jacobian(&cfg.graph, q)?;
            let text = match cfg.format {
                Format::Human => {
                    let factors: Vec<String> = jac.invariant_factors.iter().map(|d| format!("Z/{d}Z")).collect();
                    let group = if factors.is_empty() { "0".to_owned() } else { factors.join(" x ") };
                    format!("Jac(G) = {group}\norder {}\n", jac.order)
                }
                Format::Json => to_json(&jac)?,
            };
            cfg.emit(&text)
        }
        Command::Semigroups { source, output, vertex, bound, cap, hf_cap } => {
            let cfg = RunConfig::load(&source, &output)?;
            let p = cfg.vertex(&vertex)?;
            if cap == 0 || hf_cap == 0 {
                return Err(input_err("caps must be positive"));
            }
            let bound = match bound {
                Some(0) => return Err(input_err("--bound must be at least 1")),
                Some(b) => b,
                None => default_bound(&cfg.graph, p)?,
            };
            let mut w = Weierstrass::with_caps(&cfg.graph, cap, hf_cap)?;
            let report = w.containment_report(p, bound)?;
            let text = match cfg.format {
                Format::Human => semigroups_human(&report),
                Format::Json => to_json(&report)?,
            };
            cfg.emit(&text)?;
            if report.theorem_violations().is_empty() {
                Ok(())
            } else {
                Err(CliError::Internal("theorem check failed; see report".into()))
            }
        }
        Command::Sweep { family, n, count, seed, bound, cap, hf_cap, out, format } => {
            let (n_min, n_max) = parse_range(&n)?;
            let mut config = SweepConfig::new(Family::parse(&family)?, n_min, n_max, count, seed);
            config.rank_cap = cap;
            config.hf_cap = hf_cap;
            if let Some(b) = bound {
                config.bound = BoundPolicy::Fixed(b);
            }
            let report = conjecture_sweep(&config)?;
            let mut lines = Vec::new();
            report.write_jsonl(&mut lines)?;
            let s = &report.summary;
            let summary = match format {
                Format::Human => format!(
                    "graphs {}  pairs {}  ok {}  violations {}  theorem failures {}  cap exceeded {}  errors {}\n",
                    s.graphs, s.pairs, s.ok, s.violations, s.theorem_failures, s.cap_exceeded, s.errors
                ),
                Format::Json => to_json(s)?,
            };
            match &out {
                Some(path) => {
                    fs::write(path, &lines)?;
                    emit(&None, &summary)?;
                }
                None => {
                    std::io::stdout().write_all(&lines)?;
                    std::io::stderr().write_all(summary.as_bytes())?;
                }
            }
            for v in report.violations() {
                eprintln!("FINDING: graph {} vertex {} has H_r not contained in H_f", v.graph_index, v.vertex);
            }
            if s.theorem_failures > 0 {
                return Err(CliError::Internal(format!("{} theorem failures", s.theorem_failures)));
            }
            Ok(())
        }
    }
}
