//! Command-line front end for the `ringgroom` library.
//!
//! Exit codes: 0 success, 1 infeasible solution or ratio violation,
//! 2 usage or parse error, 3 exact solver budget exhausted.

mod bench;
pub mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use ringgroom::approx::{algorithm_a_quasi, algorithm_a_with, ratio_report, CoveringDesign};
use ringgroom::bounds::best_lower_bound;
use ringgroom::exact::{oracle_optimum_with, prop2_solve_with, ExactBudget, ExactError};
use ringgroom::ilp::{build_ilp, check_assignment, export_lp_text, solution_to_assignment};
use ringgroom::model::{
    from_bin_packing, parse_instance, parse_solution, quasi_uniform_random, serialize_instance,
    serialize_solution, uniform_instance, BinPackingInstance,
};
use ringgroom::{adm_count, verify_solution, Instance, Solution};
use serde_json::{json, Value};

pub use bench::{run_bench, BenchGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ringgroom", version, about = "ADM minimization on stacked SONET rings")]
pub struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest demand lattice the shortest-path solver will search.
    #[arg(long, global = true)]
    pub budget_lattice: Option<u64>,
    /// Search node cap for the exact solvers.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// Total demand cap for the reference solver.
    #[arg(long, global = true)]
    pub budget_demand: Option<u64>,
    /// Vertex cap for the reference solver.
    #[arg(long, global = true)]
    pub budget_vertices: Option<usize>,
    /// Wall-clock cap in seconds (0 disables it).
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
    /// Node cap for each single-ring feasibility check.
    #[arg(long, global = true)]
    pub budget_fit_nodes: Option<u64>,
}

impl BudgetArgs {
    pub fn to_budget(&self) -> ExactBudget {
        let d = ExactBudget::default();
        ExactBudget {
            max_lattice: self.budget_lattice.unwrap_or(d.max_lattice),
            max_nodes: self.budget_nodes.unwrap_or(d.max_nodes),
            max_total_demand: self.budget_demand.unwrap_or(d.max_total_demand),
            max_n: self.budget_vertices.unwrap_or(d.max_n),
            time_limit: match self.budget_seconds {
                Some(0) => None,
                Some(s) => Some(Duration::from_secs(s)),
                None => d.time_limit,
            },
            fit_nodes: self.budget_fit_nodes.unwrap_or(d.fit_nodes),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print every applicable lower bound.
    Bound { instance: PathBuf },
    /// Solve an instance and verify the result.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Approx)]
        method: Method,
        /// Covering design file to use instead of the built-in construction.
        #[arg(long)]
        design: Option<PathBuf>,
        /// Where to write the verified solution.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a parameter grid and check approximation ratios.
    Bench(BenchGrid),
    /// Write the integer program in LP format.
    ExportIlp {
        instance: PathBuf,
        /// Add the pair-to-ADM strengthening rows.
        #[arg(long)]
        cuts: bool,
        /// Number of rings (default: the total demand).
        #[arg(long)]
        rings: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Also evaluate the integer program rows.
        #[arg(long)]
        ilp: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Every pair carries the same demand.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random demands in `[ceil(dmax/k), dmax]`.
    Quasi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        dmax: u32,
        /// Ratio bound, an integer or a fraction such as 3/2.
        #[arg(long)]
        k: Ratio<u64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The bin packing reduction.
    Binpack {
        #[arg(long = "bin")]
        bin: u32,
        /// Comma-separated item sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Covering-design approximation (uniform or quasi-uniform traffic).
    Approx,
    /// Shortest path over the demand lattice.
    Exact,
    /// Unit-by-unit branch and bound.
    Oracle,
}

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Failure { code: EXIT_USAGE, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::usage(error)
    }
}

/// What a command produced: the report to print and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Value>,
    /// Raw text for stdout when no report is produced.
    pub text: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn report(report: Value, code: i32) -> Self {
        Outcome { report: Some(report), text: None, code }
    }

    fn text(text: String) -> Self {
        Outcome { report: None, text: Some(text), code: EXIT_OK }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Some(report) = &out.report {
                print!("{}", render_report(report, cli.format));
            }
            if let Some(text) = &out.text {
                print!("{text}");
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}

pub fn render_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report is valid JSON") + "\n",
        Format::Table => render::table(report),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: String) -> anyhow::Result<Outcome> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(Outcome { report: None, text: None, code: EXIT_OK })
        }
        None => Ok(Outcome::text(text)),
    }
}

pub fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gen { kind } => Ok(cmd_gen(kind)?),
        Command::Bound { instance } => Ok(cmd_bound(&load_instance(instance)?)),
        Command::Solve { instance, method, design, out } => {
            let inst = load_instance(instance)?;
            let design = match design {
                Some(path) => Some(
                    CoveringDesign::parse(inst.n(), &read(path)?)
                        .with_context(|| format!("{}", path.display()))?,
                ),
                None => None,
            };
            cmd_solve(&inst, *method, design.as_ref(), out.as_deref(), &cli.budget.to_budget())
        }
        Command::Bench(grid) => {
            let report = run_bench(grid).map_err(Failure::usage)?;
            let code = if report["summary"]["violations"].as_u64() == Some(0) {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            };
            Ok(Outcome::report(report, code))
        }
        Command::ExportIlp { instance, cuts, rings, out } => {
            let inst = load_instance(instance)?;
            if *rings == Some(0) {
                return Err(Failure::usage(anyhow!("--rings must be at least 1")));
            }
            let model = build_ilp(&inst, *rings, *cuts);
            Ok(write_or_print(out.as_deref(), export_lp_text(&model))?)
        }
        Command::Verify { instance, solution, ilp } => {
            let inst = load_instance(instance)?;
            let sol = parse_solution(&read(solution)?)
                .with_context(|| format!("{}", solution.display()))?;
            Ok(cmd_verify(&inst, &sol, *ilp))
        }
    }
}

fn cmd_gen(kind: &GenKind) -> anyhow::Result<Outcome> {
    let (inst, out) = match kind {
        GenKind::Uniform { n, c, d, out } => (uniform_instance(*n, *c, *d)?, out),
        GenKind::Quasi { n, c, dmax, k, seed, out } => {
            (quasi_uniform_random(*n, *c, *dmax, *k, *seed)?, out)
        }
        GenKind::Binpack { bin, items, out } => {
            let bp = BinPackingInstance::new(*bin, items.clone())?;
            (from_bin_packing(&bp), out)
        }
    };
    write_or_print(out.as_deref(), serialize_instance(&inst))
}

pub fn cmd_bound(inst: &Instance) -> Outcome {
    let report = json!({
        "command": "bound",
        "instance": render::instance_summary(inst),
        "bounds": render::bounds(&best_lower_bound(inst)),
        "status": "ok",
    });
    Outcome::report(report, EXIT_OK)
}

pub fn cmd_solve(
    inst: &Instance,
    method: Method,
    design: Option<&CoveringDesign>,
    out: Option<&Path>,
    budget: &ExactBudget,
) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let bounds = best_lower_bound(inst);
    let method_name = match method {
        Method::Approx => "approx",
        Method::Exact => "exact",
        Method::Oracle => "oracle",
    };
    let mut report = json!({
        "command": "solve",
        "method": method_name,
        "instance": render::instance_summary(inst),
    });
    let solved: Result<(Solution, Option<u64>), ExactError> = match method {
        Method::Approx => {
            let sol = match inst.uniform_demand() {
                Some(d) => algorithm_a_with(inst.n(), inst.capacity(), d, design),
                None if inst.demands().next().is_none() => Ok(Solution::default()),
                None => algorithm_a_quasi(inst, design),
            }
            .map_err(|e| Failure::usage(anyhow!(e)))?;
            Ok((sol, None))
        }
        Method::Exact => prop2_solve_with(inst, budget).map(|o| (o.solution, Some(o.nodes))),
        Method::Oracle => oracle_optimum_with(inst, budget).map(|o| (o.solution, Some(o.nodes))),
    };
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    report["elapsed_ms"] = json!(format!("{elapsed:.3}"));
    let (sol, nodes) = match solved {
        Ok(x) => x,
        Err(e) => {
            report["status"] = json!("aborted-budget");
            report["error"] = json!(e.to_string());
            return Ok(Outcome::report(report, EXIT_BUDGET));
        }
    };
    let check = verify_solution(inst, &sol);
    report["adms"] = json!(adm_count(&sol));
    report["rings"] = json!(sol.rings.len());
    report["lower_bound"] = json!(bounds.best_integer);
    report["ratio"] = match ratio_report(inst, &sol) {
        Ok(r) => render::rational(r),
        Err(_) => Value::Null,
    };
    if let Some(nodes) = nodes {
        report["search_nodes"] = json!(nodes);
    }
    report["feasible"] = json!(check.is_feasible());
    if !check.is_feasible() {
        report["status"] = json!("infeasible");
        report["violations"] = json!(check.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        return Ok(Outcome::report(report, EXIT_INFEASIBLE));
    }
    if let Some(path) = out {
        fs::write(path, serialize_solution(&sol))
            .with_context(|| format!("cannot write {}", path.display()))?;
        report["solution_file"] = json!(path.display().to_string());
    }
    report["status"] = json!("ok");
    Ok(Outcome::report(report, EXIT_OK))
}

fn cmd_verify(inst: &Instance, sol: &Solution, ilp: bool) -> Outcome {
    let check = verify_solution(inst, sol);
    let mut report = json!({
        "command": "verify",
        "instance": render::instance_summary(inst),
        "adms": adm_count(sol),
        "rings": sol.rings.len(),
        "feasible": check.is_feasible(),
        "violations": check.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "warnings": check.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    let mut feasible = check.is_feasible();
    if ilp {
        let rings = sol.rings.len().max(ringgroom::total_demand(inst) as usize).max(1);
        let model = build_ilp(inst, Some(rings), false);
        let rows = solution_to_assignment(&model, sol)
            .and_then(|assignment| check_assignment(&model, &assignment));
        match rows {
            Ok(rows) => {
                report["ilp_feasible"] = json!(rows.is_feasible());
                report["ilp_violated_rows"] =
                    json!(rows.violated_rows.iter().map(|r| r.row.clone()).collect::<Vec<_>>());
                feasible &= rows.is_feasible();
            }
            Err(e) => {
                report["ilp_feasible"] = json!(false);
                report["ilp_error"] = json!(e.to_string());
                feasible = false;
            }
        }
    }
    report["status"] = json!(if feasible { "ok" } else { "infeasible" });
    Outcome::report(report, if feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}
