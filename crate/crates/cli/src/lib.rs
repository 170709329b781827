//! Command-line front end for the cuboid descent engine.
//!
//! Every command produces a [`report::DescentReport`]; `scan` streams one
//! report per grid point to a file and prints a summary.

pub mod engine;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descent_core::arith::{self, Int, Rat};
use descent_core::cuboid::Family;

use engine::{Bounds, Format, ScanError, ScanGrid};
use report::{CsvRow, DescentReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "descent-kit", version, about = "Torsion, descent tables and rank bounds for cuboid curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Height bound for the homogeneous-space point search [default: 200]
    #[arg(long, global = true)]
    pub search_bound: Option<u64>,
    /// Largest prime power used by the local solubility test
    /// [default: 81 for 2-descent, 121 for 3-descent]
    #[arg(long, global = true, verbatim_doc_comment)]
    pub local_bound: Option<u64>,
    /// Cap on Eisenstein candidate classes examined per curve [default: 729]
    #[arg(long, global = true)]
    pub max_classes: Option<usize>,
    /// Coefficient family feeding the curve
    #[arg(long, global = true, value_enum, default_value_t = FamilyArg::P1)]
    pub family: FamilyArg,
    /// Output format; csv flattens each report to one row
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Persistent factorization cache file (created if missing)
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads for scan [default: number of CPUs]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Record wall time in each report (makes output non-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    P1,
    P2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::P1 => Family::P1,
            FamilyArg::P2 => Family::P2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    arith::parse_rat(s).map_err(|e| e.to_string())
}

fn parse_int_arg(s: &str) -> Result<Int, String> {
    s.trim().parse::<Int>().map_err(|e| format!("{s:?}: {e}"))
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Full pipeline for one parameter pair (b, c)
    Cuboid {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        b: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        c: Rat,
    },
    /// Run the pipeline over a (b, c) grid; b is the outer loop
    Scan {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        b_from: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        b_to: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        c_from: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        c_to: Rat,
        #[arg(long, value_parser = parse_rat_arg)]
        step: Rat,
        /// Destination file: JSON Lines or CSV depending on --format
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one engine on a directly specified curve
    Curve {
        #[command(subcommand)]
        mode: CurveMode,
    },
}

#[derive(Debug, Subcommand)]
pub enum CurveMode {
    /// 2-isogeny descent on y^2 = x^3 + a x - c^3 - a c, 2-torsion point (c, 0)
    Two {
        #[arg(allow_hyphen_values = true, value_parser = parse_int_arg)]
        a: Int,
        #[arg(allow_hyphen_values = true, value_parser = parse_int_arg)]
        c: Int,
    },
    /// 3-isogeny descent on y^2 = x^3 + e^2, e cube-free
    Three {
        #[arg(allow_hyphen_values = true, value_parser = parse_int_arg)]
        e: Int,
    },
    /// Lutz-Nagell torsion of y^2 = x^3 + a x + b
    Torsion {
        #[arg(allow_hyphen_values = true, value_parser = parse_int_arg)]
        a: Int,
        #[arg(allow_hyphen_values = true, value_parser = parse_int_arg)]
        b: Int,
    },
}

impl GlobalOpts {
    pub fn bounds(&self) -> Bounds {
        Bounds {
            search_bound: self.search_bound,
            local_bound: self.local_bound,
            max_classes: self.max_classes,
        }
    }
}

/// Render one report in the chosen format.
pub fn render(rep: &DescentReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = rep.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(CsvRow::of(rep)).expect("csv row serializes");
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
    }
}

/// Execute a parsed command, writing to `out`/`err`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let g = &cli.global;
    if let Some(path) = &g.cache {
        if let Err(e) = arith::enable_cache(Some(path)) {
            let _ = writeln!(err, "error: cannot open cache {}: {e}", path.display());
            return EXIT_INVALID;
        }
    }
    let bounds = g.bounds();
    let format: Format = g.format.into();
    let code = match &cli.command {
        Command::Cuboid { b, c } => {
            let rep = engine::timed(g.timing, || engine::cmd_cuboid(b, c, g.family.into(), &bounds));
            emit(&rep, format, out)
        }
        Command::Curve { mode } => {
            let rep = engine::timed(g.timing, || match mode {
                CurveMode::Two { a, c } => engine::cmd_two(a, c, &bounds),
                CurveMode::Three { e } => engine::cmd_three(e, &bounds),
                CurveMode::Torsion { a, b } => engine::cmd_torsion(a, b),
            });
            emit(&rep, format, out)
        }
        Command::Scan {
            b_from,
            b_to,
            c_from,
            c_to,
            step,
            out: path,
        } => {
            let scan = ScanGrid {
                b_from: b_from.clone(),
                b_to: b_to.clone(),
                c_from: c_from.clone(),
                c_to: c_to.clone(),
                step: step.clone(),
                family: g.family.into(),
                bounds,
                format,
                timing: g.timing,
            };
            run_scan(&scan, path, g.jobs, out, err)
        }
    };
    if g.cache.is_some() {
        arith::disable_cache();
    }
    code
}

fn emit(rep: &DescentReport, format: Format, out: &mut dyn Write) -> i32 {
    if out.write_all(render(rep, format).as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    rep.exit_code()
}

fn run_scan(scan: &ScanGrid, path: &PathBuf, jobs: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(e) = scan.grid() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INVALID;
    }
    let file = match File::create(path) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_INVALID;
        }
    };
    let mut w = BufWriter::new(file);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INTERNAL;
        }
    };
    match pool.install(|| engine::cmd_scan(scan, &mut w)) {
        Ok(summary) => {
            let s = serde_json::to_string_pretty(&summary).expect("summary serializes");
            let _ = writeln!(out, "{s}");
            if summary.incomplete > 0 {
                EXIT_INCOMPLETE
            } else {
                EXIT_OK
            }
        }
        Err(ScanError::Range(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INVALID
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

/// Parse `args` and run; clap usage errors map to exit code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    execute(&cli, &mut stdout.lock(), &mut stderr.lock())
}
