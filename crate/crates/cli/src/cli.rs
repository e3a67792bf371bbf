use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use plumbcalc_core::calculus::{equivalent, reduce, splice_diagram, Verdict};
use plumbcalc_core::constructions::Family;
use plumbcalc_core::contfrac::{cf_eval, hj_expand, ExactRational, HJExpansion};
use plumbcalc_core::graded_roots::{d_invariant, graded_root, involutive_ds, monotone_subroot, tau_sequence};
use plumbcalc_core::invariants::report;
use plumbcalc_core::seifert_splice::{brieskorn_plumbing_marked, splice, BrieskornTriple};
use plumbcalc_core::PlumbingGraph;

use crate::error::{CliError, EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_OK, EXIT_UNKNOWN};
use crate::format::{graph_from_json, graph_to_dot, graph_to_json};
use crate::output::{diagram_json, pretty, report_json, root_dot, root_json, verdict_json};
use crate::sweep::{sweep, Check};

#[derive(Parser)]
#[command(name = "plumbcalc", version, about = "Exact plumbing calculus for plumbed homology spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    X,
    Y,
    Z,
    W,
    Brieskorn,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum CfCommand {
    /// Expand p/q as a negative continued fraction.
    Expand { fraction: String },
    /// Evaluate a bracket such as "[3,2,2]".
    Eval { bracket: String },
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph.
    Family {
        #[arg(long, value_enum, ignore_case = true)]
        name: FamilyName,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonical negative-definite plumbing of Σ(p,q,r).
    Brieskorn {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        r: i64,
        /// Mark the leg of this multiplicity with an arrow; repeatable.
        #[arg(long)]
        arrow: Vec<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Splice two graphs along arrowed fibers.
    Splice {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        arrow_a: String,
        #[arg(long)]
        arrow_b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Splice diagram of a homology-sphere tree.
    SpliceDiagram {
        input: PathBuf,
        /// Normalize to the minimal diagram.
        #[arg(long)]
        minimal: bool,
    },
    /// Deterministic blow-down and 0-chain reduction.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invariant report.
    Invariants { input: PathBuf },
    /// Decide equivalence; exit 0 Equivalent, 1 Distinct, 3 Unknown.
    Equiv { a: PathBuf, b: PathBuf },
    /// Graded root of Σ(p,q,r).
    GradedRoot {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        emit_root: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Continued fractions.
    Cf {
        #[command(subcommand)]
        command: CfCommand,
    },
    /// Run a check over a range of n.
    Sweep {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 1)]
        from: i64,
        #[arg(long)]
        to: i64,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Re-emit a graph as JSON or DOT.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load(path: &Path) -> Result<PlumbingGraph, CliError> {
    graph_from_json(&read(path)?)
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn need(x: Option<i64>, flag: &str) -> Result<i64, CliError> {
    x.ok_or_else(|| CliError::Input(format!("missing --{flag}")))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Family { name, n, p, q, r, output } => {
            let g = match name {
                FamilyName::Brieskorn => {
                    let t = BrieskornTriple::new(need(p, "p")?, need(q, "q")?, need(r, "r")?)?;
                    brieskorn_plumbing_marked(t, &[])
                }
                FamilyName::X => Family::X.build(need(n, "n")?)?,
                FamilyName::Y => Family::Y.build(need(n, "n")?)?,
                FamilyName::Z => Family::Z.build(need(n, "n")?)?,
                FamilyName::W => Family::W.build(need(n, "n")?)?,
            };
            emit(&graph_to_json(&g), output.as_deref(), out)?;
        }
        Command::Brieskorn { p, q, r, arrow, output } => {
            let t = BrieskornTriple::new(p, q, r)?;
            if let Some(bad) = arrow.iter().find(|a| !t.as_array().contains(a)) {
                return Err(CliError::Input(format!("{bad} is not a multiplicity of {t}")));
            }
            emit(&graph_to_json(&brieskorn_plumbing_marked(t, &arrow)), output.as_deref(), out)?;
        }
        Command::Splice { a, b, arrow_a, arrow_b, output } => {
            let g = splice(&load(&a)?, &arrow_a, &load(&b)?, &arrow_b)?;
            emit(&graph_to_json(&g), output.as_deref(), out)?;
        }
        Command::SpliceDiagram { input, minimal } => {
            let mut d = splice_diagram(&load(&input)?)?;
            if minimal {
                d = d.normalized();
            }
            emit(&pretty(&diagram_json(&d)), None, out)?;
        }
        Command::Reduce { input, output } => {
            emit(&graph_to_json(&reduce(&load(&input)?)), output.as_deref(), out)?;
        }
        Command::Invariants { input } => {
            emit(&pretty(&report_json(&report(&load(&input)?))), None, out)?;
        }
        Command::Equiv { a, b } => {
            let v = equivalent(&load(&a)?, &load(&b)?)?;
            emit(&pretty(&verdict_json(&v)), None, out)?;
            return Ok(match v.tag {
                Verdict::Equivalent => EXIT_OK,
                Verdict::Distinct => EXIT_CHECK_FAILED,
                Verdict::Unknown => EXIT_UNKNOWN,
            });
        }
        Command::GradedRoot { p, q, r, emit_root, dot } => {
            let t = BrieskornTriple::new(p, q, r)?;
            let tau = tau_sequence(t)?;
            let root = graded_root(&tau);
            let d = d_invariant(&root);
            let ds = involutive_ds(&root)?;
            let mono = monotone_subroot(&root)?;
            let doc = pretty(&root_json(t, &tau, &root, d, ds, &mono));
            if let Some(path) = emit_root {
                emit(&doc, Some(&path), out)?;
            }
            if let Some(path) = dot {
                emit(&root_dot(&root), Some(&path), out)?;
            }
            let summary = serde_json::json!({
                "triple": t.as_array(),
                "d": d,
                "dbar": ds.0,
                "dunder": ds.1,
                "leaves": root.leaf_count(),
                "monotone_trivial": mono.is_trivial(),
            });
            emit(&pretty(&summary), None, out)?;
        }
        Command::Cf { command } => match command {
            CfCommand::Expand { fraction } => {
                let x: ExactRational = fraction.parse()?;
                let (p, q) = (i64::try_from(x.numer()), i64::try_from(x.denom()));
                let (Ok(p), Ok(q)) = (p, q) else {
                    return Err(CliError::Input(format!("{fraction} is out of range")));
                };
                emit(&format!("{}\n", hj_expand(p, q)?), None, out)?;
            }
            CfCommand::Eval { bracket } => {
                let e: HJExpansion = bracket.parse()?;
                emit(&format!("{}\n", cf_eval(&e)?), None, out)?;
            }
        },
        Command::Sweep { check, from, to, json } => {
            let check: Check = check.parse()?;
            let rep = thread_pool()?.install(|| sweep(check, from, to))?;
            let text = if json {
                let mut s = serde_json::to_string_pretty(&rep)?;
                s.push('\n');
                s
            } else {
                rep.table()
            };
            emit(&text, None, out)?;
            return Ok(if rep.pass { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::Export { input, format, output } => {
            let g = load(&input)?;
            let text = match format {
                ExportFormat::Json => graph_to_json(&g),
                ExportFormat::Dot => graph_to_dot(&g),
            };
            emit(&text, output.as_deref(), out)?;
        }
    }
    Ok(EXIT_OK)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("PLUMBCALC_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Input(format!("PLUMBCALC_THREADS must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Input(e.to_string()))
}

/// Parse `argv`, run the command writing to `out` and diagnostics to `err`,
/// and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
