//! The `psep` command line.
//!
//! Exit codes: 0 success (or `reduced`), 1 negative answer (`no_instance`,
//! invalid witness, separator larger than `k`), 2 bad input, 3 kernel too
//! large for the exact solver, 101 internal failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crown::verify_crown;
use crate::error::Error;
use crate::gen;
use crate::graph::{components_within, Graph, VertexSet};
use crate::io::{parse_witness, write_crown, Instance, Witness};
use crate::kernel::{
    kernelize_with, solve, KernelConfig, KernelOutcome, KernelStats, Mode, Solved, Verdict,
};

/// Largest kernel `solve` hands to the exact solver.
pub const SOLVE_LIMIT: usize = 60;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "psep", version, about = "Kernelization and exact solving for p-size separator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Linear,
    Quadratic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Linear => Mode::Linear,
            ModeArg::Quadratic => Mode::Quadratic,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Path,
    Cycle,
    Grid,
    Random,
    Spider,
}

#[derive(clap::Args, Debug)]
struct KernelArgs {
    /// Instance file.
    input: PathBuf,
    /// Largest allowed component size.
    #[arg(long)]
    p: usize,
    /// Deletion budget.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "linear")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Add the wall time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce an instance to a kernel.
    Kernelize {
        #[command(flatten)]
        args: KernelArgs,
        /// Where to write the kernel instance.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the crown decomposition behind the reduction.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Kernelize, then solve the kernel exactly.
    Solve {
        #[command(flatten)]
        args: KernelArgs,
    },
    /// Check a separator or crown witness against an instance.
    Verify {
        input: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Write a generated instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        legs: Option<usize>,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Fields of a `kernelize` or `solve` report, in output order.
#[derive(Serialize, Debug)]
struct Report {
    command: &'static str,
    mode: Mode,
    p: usize,
    k: Option<usize>,
    verdict: Verdict,
    input_vertices: usize,
    input_edges: usize,
    forced: Vec<String>,
    budget_used: usize,
    kernel_vertices: usize,
    kernel_edges: usize,
    bound: Option<usize>,
    stats: KernelStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    separator: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    separator_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

impl Report {
    fn new(command: &'static str, inst: &Instance, out: &KernelOutcome) -> Self {
        Report {
            command,
            mode: out.mode,
            p: out.p,
            k: out.k,
            verdict: out.verdict,
            input_vertices: inst.graph.n(),
            input_edges: inst.graph.m(),
            forced: labels(inst, &out.forced),
            budget_used: out.budget_used,
            kernel_vertices: out.kernel.n(),
            kernel_edges: out.kernel.m(),
            bound: out.bound,
            stats: out.stats,
            separator: None,
            separator_size: None,
            wall_time_ms: None,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
                let mut s = String::new();
                let _ = writeln!(s, "command: {}", self.command);
                let _ = writeln!(s, "mode: {}", self.mode);
                let _ = writeln!(s, "p: {}", self.p);
                let _ = writeln!(s, "k: {}", opt(self.k));
                let _ = writeln!(s, "verdict: {}", self.verdict);
                let _ = writeln!(s, "input_vertices: {}", self.input_vertices);
                let _ = writeln!(s, "input_edges: {}", self.input_edges);
                let _ = writeln!(s, "forced: {}", self.forced.join(" "));
                let _ = writeln!(s, "budget_used: {}", self.budget_used);
                let _ = writeln!(s, "kernel_vertices: {}", self.kernel_vertices);
                let _ = writeln!(s, "kernel_edges: {}", self.kernel_edges);
                let _ = writeln!(s, "bound: {}", opt(self.bound));
                let st = &self.stats;
                for (key, v) in [
                    ("small_components", st.small_components),
                    ("scc_runs", st.scc_runs),
                    ("extensions", st.extensions),
                    ("refilled", st.refilled),
                    ("crown_runs", st.crown_runs),
                    ("replacements", st.replacements),
                    ("eliminations", st.eliminations),
                    ("rounds", st.rounds),
                ] {
                    let _ = writeln!(s, "stats.{key}: {v}");
                }
                if let Some(sep) = &self.separator {
                    let _ = writeln!(s, "separator: {}", sep.join(" "));
                }
                if let Some(size) = self.separator_size {
                    let _ = writeln!(s, "separator_size: {size}");
                }
                if let Some(ms) = self.wall_time_ms {
                    let _ = writeln!(s, "wall_time_ms: {ms:.3}");
                }
                s
            }
        }
    }
}

fn labels(inst: &Instance, s: &VertexSet) -> Vec<String> {
    inst.labels_of(s).into_iter().map(str::to_string).collect()
}

/// A failure that ends the command with an exit code and a message.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Parse { .. } => EXIT_INPUT,
            Error::Precondition(_) | Error::Internal(_) | Error::Invariant(_) => 101,
        };
        Fail(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Fail> {
    Instance::parse(&read(path)?).map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn check_p(p: usize) -> Result<(), Fail> {
    if p == 0 {
        return Err(Fail(EXIT_INPUT, "--p must be at least 1".into()));
    }
    Ok(())
}

fn run_kernel(args: &KernelArgs) -> Result<(Instance, KernelOutcome, Instant), Fail> {
    check_p(args.p)?;
    let inst = load(&args.input)?;
    let start = Instant::now();
    let out = kernelize_with(&inst.graph, args.p, args.k, args.mode.into(), &KernelConfig::from_env())?;
    Ok((inst, out, start))
}

fn kernel_instance(inst: &Instance, out: &KernelOutcome) -> Instance {
    Instance {
        graph: out.kernel.clone(),
        labels: out.kernel_map.iter().map(|&v| inst.labels[v].clone()).collect(),
    }
}

fn cmd_kernelize(
    args: &KernelArgs,
    out_path: Option<&Path>,
    witness: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32, Fail> {
    let (inst, out, start) = run_kernel(args)?;
    let mut report = Report::new("kernelize", &inst, &out);
    if let Some(path) = out_path {
        write(path, &kernel_instance(&inst, &out).to_text())?;
    }
    if let Some(path) = witness {
        write(path, &write_crown(&inst, &out.decomposition))?;
    }
    if args.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    emit(stdout, &report.render(args.format))?;
    Ok(match out.verdict {
        Verdict::Reduced => EXIT_OK,
        Verdict::NoInstance => EXIT_NO,
    })
}

fn cmd_solve(args: &KernelArgs, stdout: &mut dyn Write) -> Result<i32, Fail> {
    check_p(args.p)?;
    let inst = load(&args.input)?;
    let start = Instant::now();
    let cfg = KernelConfig::from_env();
    let solved = solve(&inst.graph, args.p, args.k, args.mode.into(), &cfg, SOLVE_LIMIT)?;
    let (out, separator) = match solved {
        Solved::Exact { outcome, separator } => (outcome, separator),
        Solved::KernelTooLarge { outcome } => {
            return Err(Fail(
                EXIT_CAPACITY,
                format!(
                    "kernel exceeds oracle capacity ({} > {SOLVE_LIMIT} vertices)",
                    outcome.kernel.n()
                ),
            ))
        }
    };
    let mut report = Report::new("solve", &inst, &out);
    report.separator_size = Some(separator.len());
    report.separator = Some(labels(&inst, &separator));
    if args.timing {
        report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    emit(stdout, &report.render(args.format))?;
    let over = args.k.is_some_and(|k| separator.len() > k);
    Ok(if over { EXIT_NO } else { EXIT_OK })
}

fn cmd_verify(input: &Path, p: usize, witness: &Path, stdout: &mut dyn Write) -> Result<i32, Fail> {
    check_p(p)?;
    let inst = load(input)?;
    let text = read(witness)?;
    let w = parse_witness(&inst, p, &text)
        .map_err(|e| Fail(EXIT_INPUT, format!("{}: {e}", witness.display())))?;
    let problems: Vec<String> = match &w {
        Witness::Separator(s) => {
            let g: &Graph = &inst.graph;
            let alive: Vec<bool> = g.vertices().map(|v| !s.contains(v)).collect();
            components_within(g, &alive)
                .into_iter()
                .filter(|c| c.len() > p)
                .map(|c| {
                    format!("component of {} vertices contains {}", c.len(), inst.labels[c[0]])
                })
                .collect()
        }
        Witness::Crown(cd) => verify_crown(&inst.graph, cd).iter().map(ToString::to_string).collect(),
    };
    let mut text = String::new();
    if problems.is_empty() {
        text.push_str("valid\n");
    } else {
        for problem in &problems {
            let _ = writeln!(text, "violation: {problem}");
        }
        text.push_str("invalid\n");
    }
    emit(stdout, &text)?;
    Ok(if problems.is_empty() { EXIT_OK } else { EXIT_NO })
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, Fail> {
    value.ok_or_else(|| Fail(EXIT_INPUT, format!("gen {kind} needs --{flag}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: Kind,
    n: Option<usize>,
    m: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    legs: Option<usize>,
    len: Option<usize>,
    seed: Option<u64>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32, Fail> {
    let g = match kind {
        Kind::Path => gen::path(need(n, "n", "path")?),
        Kind::Cycle => gen::cycle(need(n, "n", "cycle")?)?,
        Kind::Grid => gen::grid(need(rows, "rows", "grid")?, need(cols, "cols", "grid")?),
        Kind::Spider => gen::spider(need(legs, "legs", "spider")?, need(len, "len", "spider")?),
        Kind::Random => {
            let Some(seed) = seed else {
                return Err(Fail(EXIT_INPUT, "gen random needs --seed".into()));
            };
            gen::random_gnm(need(n, "n", "random")?, need(m, "m", "random")?, seed)?
        }
    };
    let text = Instance::from_graph(g).to_text();
    match out {
        Some(path) => write(path, &text)?,
        None => emit(stdout, &text)?,
    }
    Ok(EXIT_OK)
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Fail> {
    stdout.write_all(text.as_bytes()).map_err(|e| Fail(EXIT_INPUT, format!("write failed: {e}")))
}

/// Runs the command line in `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Kernelize { args, out, emit_witness } => {
            cmd_kernelize(args, out.as_deref(), emit_witness.as_deref(), stdout)
        }
        Command::Solve { args } => cmd_solve(args, stdout),
        Command::Verify { input, p, witness } => cmd_verify(input, *p, witness, stdout),
        Command::Gen { kind, n, m, rows, cols, legs, len, seed, out } => {
            cmd_gen(*kind, *n, *m, *rows, *cols, *legs, *len, *seed, out.as_deref(), stdout)
        }
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
