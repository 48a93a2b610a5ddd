use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxlab::poset::{grid, ideal_lattice_with_cap, to_dot_named};
use coxlab::rootsys::{build_root_system, cominuscule_poset};
use coxlab::verify::{
    orbit_trace, verify_cominuscule, verify_grid, OrbitTrace, DEFAULT_ORDER_CAP, DEFAULT_SWEEP_CAP,
};
use coxlab::{EnhancedPartition, RootType, SuiteOptions, VerificationReport};

#[derive(Parser)]
#[command(
    name = "coxlab",
    version,
    about = "Coxeter transformations of order-ideal lattices"
)]
struct Cli {
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "COXLAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyTarget),
    /// Trace the τ-orbit of an enhanced partition.
    Orbit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Enhanced partition such as "(|1,1,2,3,3|)".
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a Hasse diagram or a JSON report to a file.
    #[command(subcommand)]
    Export(ExportTarget),
}

#[derive(Args, Clone, Copy)]
struct SuiteFlags {
    /// Largest lattice for the full invariant sweep.
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    max_size: usize,
    /// Largest lattice for the order computation.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// Exponent bound for the order search (default: 4 × lattice size).
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    skip_exactness: bool,
}

impl SuiteFlags {
    fn options(self) -> SuiteOptions {
        SuiteOptions {
            sweep_cap: self.max_size,
            order_cap: self.order_cap,
            skip_exactness: self.skip_exactness,
            k_max: self.k_max,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
struct CominusculeArgs {
    #[arg(long = "type", value_parser = parse_root_type)]
    type_label: RootType,
    #[arg(long)]
    rank: usize,
    /// 1-based simple root index.
    #[arg(long)]
    root: usize,
}

#[derive(Subcommand)]
enum VerifyTarget {
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        flags: SuiteFlags,
        #[arg(long)]
        json: bool,
    },
    Cominuscule {
        #[command(flatten)]
        root: CominusculeArgs,
        #[command(flatten)]
        flags: SuiteFlags,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum ExportTarget {
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: SuiteFlags,
    },
    Cominuscule {
        #[command(flatten)]
        root: CominusculeArgs,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: SuiteFlags,
    },
}

fn parse_root_type(s: &str) -> Result<RootType, String> {
    s.parse::<RootType>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("coxlab: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("coxlab: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every non-open check passed.
fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Verify(VerifyTarget::Grid { grid, flags, json }) => {
            let report =
                verify_grid(grid.m, grid.n, &flags.options()).map_err(|e| e.to_string())?;
            emit_report(&report, json)
        }
        Command::Verify(VerifyTarget::Cominuscule { root, flags, json }) => {
            let report =
                verify_cominuscule(root.type_label, root.rank, root.root, &flags.options())
                    .map_err(|e| e.to_string())?;
            emit_report(&report, json)
        }
        Command::Orbit { m, n, alpha, json } => {
            let alpha = EnhancedPartition::parse(&alpha, n).map_err(|e| e.to_string())?;
            let trace = orbit_trace(m, n, &alpha, DEFAULT_SWEEP_CAP).map_err(|e| e.to_string())?;
            if json {
                emit(&to_json(&trace)?)?;
            } else {
                emit(&orbit_text(&trace))?;
            }
            Ok(trace.passed())
        }
        Command::Export(ExportTarget::Grid {
            grid: g,
            format,
            out,
            flags,
        }) => {
            let mut passed = true;
            let body = match format {
                Format::Dot => {
                    let lattice = ideal_lattice_with_cap(
                        &grid(g.m, g.n).map_err(|e| e.to_string())?,
                        flags.order_cap,
                    )
                    .map_err(|e| e.to_string())?;
                    to_dot_named(&lattice.lattice, "lattice")
                }
                Format::Json => {
                    let report =
                        verify_grid(g.m, g.n, &flags.options()).map_err(|e| e.to_string())?;
                    passed = report.passed();
                    to_json(&report)?
                }
            };
            write_out(&out, &body)?;
            Ok(passed)
        }
        Command::Export(ExportTarget::Cominuscule {
            root,
            format,
            out,
            flags,
        }) => {
            let mut passed = true;
            let body = match format {
                Format::Dot => {
                    let rs =
                        build_root_system(root.type_label, root.rank).map_err(|e| e.to_string())?;
                    let data = cominuscule_poset(&rs, root.root).map_err(|e| e.to_string())?;
                    let lattice = ideal_lattice_with_cap(&data.poset, flags.order_cap)
                        .map_err(|e| e.to_string())?;
                    format!(
                        "{}{}",
                        to_dot_named(&data.poset, "poset"),
                        to_dot_named(&lattice.lattice, "lattice")
                    )
                }
                Format::Json => {
                    let report =
                        verify_cominuscule(root.type_label, root.rank, root.root, &flags.options())
                            .map_err(|e| e.to_string())?;
                    passed = report.passed();
                    to_json(&report)?
                }
            };
            write_out(&out, &body)?;
            Ok(passed)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn write_out(path: &Path, body: &str) -> Result<(), String> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn emit_report(report: &VerificationReport, json: bool) -> Result<bool, String> {
    if json {
        emit(&to_json(report)?)?;
    } else {
        emit(&report_text(report))?;
    }
    Ok(report.passed())
}

/// Writes `text` and a newline to stdout. A closed pipe is not an error.
fn emit(text: &str) -> Result<(), String> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(format!("cannot write to stdout: {e}"))
        }
        _ => Ok(()),
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "subject: {}",
        serde_json::to_string(&r.subject).unwrap_or_default()
    );
    let _ = writeln!(s, "lattice size: {}", r.lattice_size);
    if r.expected.open_case {
        let _ = writeln!(
            s,
            "OPEN CASE: no theorem covers this poset; checks are informational"
        );
    }
    match &r.order {
        Some(o) => {
            let _ = writeln!(
                s,
                "order: Φ^{} = {:+}·I, exact order {}",
                o.k, o.sign, o.exact
            );
        }
        None => {
            let _ = writeln!(s, "order: not found");
        }
    }
    let _ = writeln!(s, "expected: {}", r.expected.note);
    for c in &r.checks {
        let status = match (c.pass, c.open) {
            (true, _) => "PASS",
            (false, true) => "OPEN",
            (false, false) => "FAIL",
        };
        let _ = match &c.detail {
            Some(d) => writeln!(s, "{status} {}: {d}", c.name),
            None => writeln!(s, "{status} {}", c.name),
        };
    }
    for skipped in &r.skipped {
        let _ = writeln!(s, "SKIP {skipped}");
    }
    let _ = write!(s, "time: {} ms", r.ms);
    s
}

fn orbit_text(t: &OrbitTrace) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>4}  {:<28} {:<40} {:<24} sign",
        "step", "alpha", "interval", "configuration"
    );
    for row in &t.rows {
        let check = match row.coxeter_agrees {
            Some(false) => "  (Φ disagrees)",
            _ => "",
        };
        let interval = format!("[[{},{}]]", row.interval.0, row.interval.1);
        let _ = writeln!(
            s,
            "{:>4}  {:<28} {:<40} {:<24} {:+}{check}",
            row.step, row.alpha, interval, row.config, row.sign
        );
    }
    let _ = write!(s, "closes: {}", t.closes);
    s
}
