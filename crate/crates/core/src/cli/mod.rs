//! The `graphcap` command line.
//!
//! Exit codes: 0 all checks pass, 1 hard failure, 2 usage or configuration
//! error, 3 budget exhausted.

pub mod cache;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alpha::{AlphaSource, SolverConfig};
use crate::capacity::{capacity_interval_with, CapacityConfig};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, parse_graph6, power, Graph, GraphSpec};
use crate::poly::{evaluate, Polynomial, SizeBudget};
use crate::theta::{theta, ThetaConfig};
use crate::verifier::{check_id, run_suite_with, CheckResult, Relation, SuiteConfig};
use cache::DiskCache;
use report::{ConfigEcho, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "graphcap",
    version,
    about = "Exact stable sets, Lovász theta and Shannon capacity enclosures"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Largest power k tried for capacity lower bounds.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// ϑ solver gap for theta/capacity; comparison tolerance for verify.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Replace the input graph by its strong power.
    #[arg(long, global = true)]
    pub power: Option<u32>,
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Append the JSON report to this directory under a fresh name.
    #[arg(long, global = true)]
    pub report_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value = ".graphcap-cache")]
    pub cache_dir: PathBuf,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Recompute every cache hit and count disagreements.
    #[arg(long, global = true)]
    pub verify_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a generated or parsed graph as graph6.
    Gen {
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact stable set number with a witness.
    Alpha { graph: String },
    /// Lovász theta with certified bounds.
    Theta { graph: String },
    /// Certified enclosure of the Shannon capacity.
    Capacity { graph: String },
    /// Build p(G1, ..., Gn).
    Eval {
        polynomial: String,
        graphs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        alpha: bool,
        #[arg(long)]
        theta: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// A graph argument: `g6:<string>`, a file holding graph6, or a generator spec.
pub fn load_graph(input: &str) -> Result<Graph> {
    if let Some(g6) = input.strip_prefix("g6:") {
        return Ok(parse_graph6(g6)?.with_provenance(input));
    }
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::param(format!("{input}: no graph6 line")))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        return Ok(parse_graph6(line)?.with_provenance(name.unwrap_or_else(|| input.into())));
    }
    input.parse::<GraphSpec>()?.build()
}

fn solver_config(g: &GlobalArgs) -> SolverConfig {
    let mut s = SolverConfig::default();
    if let Some(n) = g.budget_nodes {
        s.max_nodes = n;
    }
    if let Some(t) = g.budget_seconds {
        s.max_time = Duration::from_secs(t);
    }
    s
}

struct Run<'a> {
    g: &'a GlobalArgs,
    cache: DiskCache,
}

impl Run<'_> {
    fn theta_cfg(&self) -> ThetaConfig {
        self.g.tol.map(ThetaConfig::with_tol).unwrap_or_default()
    }

    fn capacity_cfg(&self) -> CapacityConfig {
        CapacityConfig {
            kmax: self.g.kmax.unwrap_or(2),
            theta: self.theta_cfg(),
            solver: solver_config(self.g),
            ..CapacityConfig::default()
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            kmax: self.g.kmax,
            tol: self.g.tol,
            power: self.g.power,
            budget_nodes: self.g.budget_nodes,
            budget_seconds: self.g.budget_seconds,
            seed: self.g.seed,
            cache: !self.g.no_cache,
            verify_cache: self.g.verify_cache,
            suite: None,
        }
    }

    fn input(&self, spec: &str) -> Result<Graph> {
        let g = load_graph(spec)?;
        Ok(match self.g.power {
            Some(k) => {
                SizeBudget::default().check_power(&g, k)?;
                let label = g.label();
                power(&g, k).with_provenance(format!("{label}^{k}"))
            }
            None => g,
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(v)?)
}

/// Exit code for an error that ended a command.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::Size { .. } | Error::Convergence { .. } | Error::NoLowerBound { .. } => {
            EXIT_BUDGET
        }
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Budget { best, .. } = e {
                let _ = writeln!(err, "best stable set found before stopping: {best}");
            }
            exit_code_for(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn std::io::Write) -> Result<i32> {
    let g = &cli.global;
    let cache_dir = (!g.no_cache).then(|| g.cache_dir.clone());
    let mut run = Run {
        g,
        cache: DiskCache::new(cache_dir, g.verify_cache, solver_config(g))?,
    };

    let mut text = String::new();
    let mut code = EXIT_OK;
    let mut doc = match &cli.command {
        Command::Gen { graph, out: file } => {
            let gr = run.input(graph)?;
            let g6 = emit_graph6(&gr);
            if let Some(p) = file {
                fs::write(p, format!("{g6}\n"))?;
            }
            writeln!(text, "{g6}").ok();
            let mut doc = ReportDocument::new("gen", run.echo(), run.cache.stats());
            doc.result = Some(serde_json::json!({
                "graph": gr.label(), "graph6": g6, "n": gr.n(), "edges": gr.edge_count(),
            }));
            doc
        }
        Command::Alpha { graph } => {
            let gr = run.input(graph)?;
            let r = run.cache.alpha(&gr)?;
            writeln!(text, "graph    {} ({} vertices)", gr.label(), gr.n()).ok();
            writeln!(text, "alpha    {}", r.value).ok();
            writeln!(text, "witness  {:?}", r.witness.vertices()).ok();
            writeln!(text, "nodes    {}", r.stats.nodes).ok();
            let mut doc = ReportDocument::new("alpha", run.echo(), run.cache.stats());
            let mut v = to_value(&r)?;
            v["graph"] = gr.label().into();
            v["graph6"] = emit_graph6(&gr).into();
            doc.result = Some(v);
            doc
        }
        Command::Theta { graph } => {
            let gr = run.input(graph)?;
            let r = theta(&gr, &run.theta_cfg())?;
            writeln!(text, "graph       {} ({} vertices)", gr.label(), gr.n()).ok();
            writeln!(text, "theta       {:.6}", r.value).ok();
            writeln!(text, "lower_cert  {:.9}", r.lower_cert).ok();
            writeln!(text, "upper_cert  {:.9}", r.upper_cert).ok();
            writeln!(text, "gap         {:e}", r.gap).ok();
            let mut doc = ReportDocument::new("theta", run.echo(), run.cache.stats());
            let mut v = to_value(&r)?;
            v["graph"] = gr.label().into();
            doc.result = Some(v);
            doc
        }
        Command::Capacity { graph } => {
            let gr = run.input(graph)?;
            let iv = capacity_interval_with(&gr, &run.capacity_cfg(), &run.cache)?;
            writeln!(text, "graph     {} ({} vertices)", gr.label(), gr.n()).ok();
            writeln!(text, "interval  [{:.9}, {:.9}]", iv.lower, iv.upper).ok();
            writeln!(text, "width     {:e}", iv.width()).ok();
            let lp = &iv.lower_provenance;
            writeln!(text, "lower     alpha(G^{}) = {}", lp.k, lp.alpha).ok();
            for s in &lp.skipped {
                writeln!(text, "skipped   k = {}: {}", s.k, s.reason).ok();
            }
            let mut doc = ReportDocument::new("capacity", run.echo(), run.cache.stats());
            doc.result = Some(to_value(&iv)?);
            doc
        }
        Command::Eval {
            polynomial,
            graphs,
            out: file,
            alpha,
            theta: want_theta,
        } => {
            let gs: Vec<Graph> = graphs.iter().map(|s| run.input(s)).collect::<Result<_>>()?;
            let p = Polynomial::parse(polynomial, Some(gs.len()))?;
            let pg = evaluate(&p, &gs, &SizeBudget::default())?;
            let g6 = emit_graph6(&pg);
            if let Some(path) = file {
                fs::write(path, format!("{g6}\n"))?;
            }
            writeln!(text, "polynomial  {p}").ok();
            writeln!(text, "vertices    {}", pg.n()).ok();
            writeln!(text, "edges       {}", pg.edge_count()).ok();
            let mut v = serde_json::json!({
                "polynomial": p.to_string(), "vertices": pg.n(), "edges": pg.edge_count(),
            });
            if *alpha {
                let r = run.cache.alpha(&pg)?;
                writeln!(text, "alpha       {}", r.value).ok();
                v["alpha"] = r.value.into();
            }
            if *want_theta {
                let r = theta(&pg, &run.theta_cfg())?;
                writeln!(text, "theta       {:.6}", r.value).ok();
                v["theta"] = to_value(&r)?;
            }
            let mut doc = ReportDocument::new("eval", run.echo(), run.cache.stats());
            doc.result = Some(v);
            doc
        }
        Command::Verify { config } => {
            let mut suite = match config {
                Some(p) => SuiteConfig::from_toml(
                    &fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
                )?,
                None => SuiteConfig::default(),
            };
            if let Some(s) = g.seed {
                suite.seed = s;
            }
            if let Some(k) = g.kmax {
                suite.kmax = k;
            }
            if let Some(t) = g.tol {
                suite.tol = t;
            }
            if let Some(n) = g.budget_nodes {
                suite.budget_nodes = n;
            }
            if let Some(s) = g.budget_seconds {
                suite.budget_seconds = s;
            }
            run.cache = DiskCache::new(
                (!g.no_cache).then(|| g.cache_dir.clone()),
                g.verify_cache,
                suite.capacity().solver,
            )?;
            let report = run_suite_with(&suite, &run.cache)?;
            let mut checks = report.checks;
            let stats = run.cache.stats();
            if stats.mismatches > 0 {
                checks.push(CheckResult::new(
                    check_id("cache_coherence", &[] as &[&str]),
                    vec![],
                    stats.mismatches as usize,
                    Relation::Eq,
                    0usize,
                    0.0,
                ));
            }
            let report = crate::verifier::VerificationReport::from_checks(checks, report.certificates);
            code = report.exit_code();
            for c in &report.checks {
                writeln!(
                    text,
                    "{:<13} {}  {} {} {}",
                    format!("{:?}", c.status).to_uppercase(),
                    c.check_id,
                    c.lhs,
                    c.relation,
                    c.rhs
                )
                .ok();
            }
            let s = &report.summary;
            writeln!(
                text,
                "{} checks: {} passed, {} failed, {} inconclusive, {} over budget",
                s.total, s.passed, s.failed, s.inconclusive, s.budget
            )
            .ok();
            let mut echo = run.echo();
            echo.suite = Some(to_value(&suite)?);
            let mut doc = ReportDocument::new("verify", echo, stats);
            doc.summary = Some(report.summary);
            doc.checks = report.checks;
            doc.certificates = report.certificates;
            doc
        }
    };
    doc.cache = run.cache.stats();
    if let Some(p) = &g.report {
        doc.write_to(p)?;
    }
    if let Some(d) = &g.report_dir {
        doc.append_to_dir(d)?;
    }
    match g.format {
        Format::Json => out.write_all(doc.to_json()?.as_bytes())?,
        Format::Table => out.write_all(text.as_bytes())?,
    }
    Ok(code)
}
