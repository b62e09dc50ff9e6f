//! `score-lab`: count, list, map and verify self-conjugate simultaneous cores.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unsupported method,
//! 3 domain error, 64 usage.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use score_core::abacus::{self, AbacusSpec};
use score_core::bijection::{self, MappingRecord, PhiContext};
use score_core::formulas::{self, CountMethod, CountResult};
use score_core::motzkin::{self, MotzkinPath, CSV_HEADER};
use score_core::oracle::{self, EnumerationTask, VerifyOptions, VerifyReport};
use score_core::{Error, MdSet, PartitionRecord};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "score-lab",
    version,
    about = "Self-conjugate simultaneous core partitions and Motzkin paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count self-conjugate (s, s+d, ..., s+pd)-cores
    Count(CountArgs),
    /// List every core with its path
    Enumerate(EnumerateArgs),
    /// Map a diagonal-hook set to its path
    Map(MapArgs),
    /// Map a path back to its diagonal-hook set
    Unmap(UnmapArgs),
    /// Draw the abacus of a diagonal-hook set
    Abacus(AbacusArgs),
    /// Corner counts for d = 1
    Corners(CornersArgs),
    /// Check every route against every other over a parameter grid
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Dp,
    Enumerate,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Params {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    s: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    /// Largest diagonal hook tried by the enumeration
    #[arg(long)]
    bound: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long)]
    bound: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MapArgs {
    /// Comma-separated odd diagonal hooks, e.g. 77,41,35
    #[arg(long)]
    md: String,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct UnmapArgs {
    /// Steps over U, D, F
    #[arg(long)]
    path: String,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AbacusArgs {
    #[arg(long)]
    md: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    s: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CornersArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    s: u64,
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// 2 or 3
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Only this corner count
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// `a..b` (inclusive) or a single value
    #[arg(long)]
    s: Span,
    #[arg(long)]
    d: Span,
    #[arg(long)]
    p: Span,
    /// Worker threads; defaults to all cores
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    bound: Option<u64>,
    /// Also run the partition-scan oracle up to this size, or `auto` for
    /// the largest possible (s, s+d)-core
    #[arg(long)]
    n_max: Option<NMax>,
    #[command(flatten)]
    common: Common,
}

/// Inclusive range of positive integers.
#[derive(Clone, Copy, Debug)]
struct Span {
    lo: u64,
    hi: u64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match text.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(text)?;
                (v, v)
            }
        };
        if lo == 0 {
            return Err("values must be positive".into());
        }
        if lo > hi {
            return Err(format!("empty range {text}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Clone, Copy, Debug)]
enum NMax {
    Auto,
    Fixed(u64),
}

impl FromStr for NMax {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        if text == "auto" {
            Ok(NMax::Auto)
        } else {
            text.parse()
                .map(NMax::Fixed)
                .map_err(|e| format!("{text:?}: {e}"))
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    const VERIFY: u8 = 1;
    const UNSUPPORTED: u8 = 2;
    const DOMAIN: u8 = 3;
    const USAGE: u8 = 64;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => Exit::UNSUPPORTED,
            Error::Internal(_) => Exit::VERIFY,
            _ => Exit::DOMAIN,
        };
        Exit::new(code, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::new(Exit::VERIFY, format!("i/o error: {e}"))
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Outcome = Result<(), Exit>;

fn open(common: &Common) -> Result<Box<dyn Write>, Exit> {
    Ok(match &common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

/// Parses `77,41,35`; out-of-order or repeated values are fixed with a warning.
fn parse_md(text: &str) -> Result<MdSet, Exit> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = part
            .parse::<u64>()
            .map_err(|e| Exit::new(Exit::USAGE, format!("--md: {part:?}: {e}")))?;
        values.push(v);
    }
    let mut fixed = values.clone();
    fixed.sort_unstable_by(|a, b| b.cmp(a));
    fixed.dedup();
    if fixed != values {
        eprintln!("warning: --md reordered to {}", join(&fixed));
    }
    Ok(MdSet::new(fixed)?)
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parts_text(md: &MdSet) -> String {
    format!("({})", join(md.to_partition().parts()))
}

fn count_with(
    method: Method,
    s: u64,
    d: u64,
    p: u32,
    bound: Option<u64>,
) -> Result<Vec<CountResult>, Exit> {
    match method {
        Method::Formula => {
            let found = if p == 1 {
                vec![formulas::count_fms(s, s + d)?]
            } else {
                formulas::formula_counts(s, d, p)?
            };
            if found.is_empty() {
                return Err(Exit::new(
                    Exit::UNSUPPORTED,
                    format!(
                        "no closed form for p = {p} with d = {d}; use --method dp or enumerate"
                    ),
                ));
            }
            Ok(found)
        }
        Method::Dp => {
            if p == 1 {
                return Err(Exit::new(Exit::UNSUPPORTED, "the path count needs p >= 2"));
            }
            let ctx = PhiContext::new(s, d, p)?;
            let n = motzkin::count_paths_dp(ctx.x(), ctx.y(), ctx.constraints());
            Ok(vec![CountResult::new(n, CountMethod::Dp)])
        }
        Method::Enumerate => {
            let mut task = EnumerationTask::new(s, d, p);
            task.bound = bound;
            let n = oracle::enumerate_md_sets(&task)?.len();
            Ok(vec![CountResult::new(n.into(), CountMethod::Enumeration)])
        }
        Method::All => {
            let mut all = Vec::new();
            for m in [Method::Formula, Method::Dp, Method::Enumerate] {
                match count_with(m, s, d, p, bound) {
                    Ok(mut r) => all.append(&mut r),
                    Err(e) if e.code == Exit::UNSUPPORTED => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(all)
        }
    }
}

#[derive(Serialize)]
struct Agreement<'a> {
    results: &'a [CountResult],
    agree: bool,
}

fn cmd_count(args: &CountArgs) -> Outcome {
    let Params { s, d, p } = args.params;
    let results = count_with(args.method, s, d, p, args.bound)?;
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    let mut out = open(&args.common)?;
    if args.method == Method::All {
        match args.common.format {
            Format::Text => {
                for r in &results {
                    writeln!(out, "{} {}", r.method, r.value)?;
                }
                writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" })?;
            }
            Format::Json => json_line(
                &mut out,
                &Agreement {
                    results: &results,
                    agree,
                },
            )?,
            Format::Csv => {
                writeln!(out, "method,value")?;
                for r in &results {
                    writeln!(out, "{},{}", r.method, r.value)?;
                }
            }
        }
    } else {
        let r = &results[0];
        match args.common.format {
            Format::Text => writeln!(out, "{}", r.value)?,
            Format::Json => json_line(&mut out, r)?,
            Format::Csv => writeln!(out, "method,value\n{},{}", r.method, r.value)?,
        }
    }
    out.flush()?;
    if agree {
        Ok(())
    } else {
        Err(Exit::new(Exit::VERIFY, "methods disagree"))
    }
}

/// A mapping record plus the partition itself.
#[derive(Serialize)]
struct Mapped {
    #[serde(flatten)]
    record: MappingRecord,
    parts: Vec<usize>,
}

impl Mapped {
    fn new(md: &MdSet, path: &MotzkinPath, ctx: &PhiContext) -> Self {
        Mapped {
            record: MappingRecord::new(md, path, ctx),
            parts: md.to_partition().parts().to_vec(),
        }
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let Params { s, d, p } = args.params;
    let mut task = EnumerationTask::new(s, d, p);
    task.bound = args.bound;
    let cores = oracle::enumerate_md_sets(&task)?;
    let ctx = if p >= 2 {
        Some(PhiContext::new(s, d, p)?)
    } else {
        None
    };
    let mut out = open(&args.common)?;
    if args.common.format == Format::Csv {
        writeln!(out, "md,{CSV_HEADER},parts")?;
    }
    for md in &cores {
        let path = ctx.as_ref().map(|c| bijection::phi(md, c)).transpose()?;
        match (args.common.format, &path, &ctx) {
            (Format::Text, Some(path), _) => {
                writeln!(out, "{{{}}} {path} {}", join(md.elements()), parts_text(md))?
            }
            (Format::Text, None, _) => {
                writeln!(out, "{{{}}} {}", join(md.elements()), parts_text(md))?
            }
            (Format::Json, Some(path), Some(c)) => json_line(&mut out, &Mapped::new(md, path, c))?,
            (Format::Json, ..) => json_line(&mut out, &PartitionRecord::from(&md.to_partition()))?,
            (Format::Csv, path, _) => writeln!(
                out,
                "\"{}\",{},\"{}\"",
                join(md.elements()),
                path.as_ref()
                    .map_or(",,,,".to_string(), MotzkinPath::csv_row),
                join(md.to_partition().parts())
            )?,
        }
    }
    out.flush()?;
    eprintln!("{} cores", cores.len());
    Ok(())
}

fn write_mapping(
    common: &Common,
    md: &MdSet,
    path: &MotzkinPath,
    ctx: &PhiContext,
    path_first: bool,
) -> Outcome {
    let mut out = open(common)?;
    match common.format {
        Format::Text => {
            if path_first {
                writeln!(out, "{path}")?;
            } else {
                writeln!(out, "{}", join(md.elements()))?;
            }
            writeln!(out, "parts {}", parts_text(md))?;
        }
        Format::Json => json_line(&mut out, &Mapped::new(md, path, ctx))?,
        Format::Csv => writeln!(
            out,
            "md,{CSV_HEADER}\n\"{}\",{}",
            join(md.elements()),
            path.csv_row()
        )?,
    }
    out.flush()?;
    Ok(())
}

fn cmd_map(args: &MapArgs) -> Outcome {
    let Params { s, d, p } = args.params;
    let md = parse_md(&args.md)?;
    let ctx = PhiContext::new(s, d, p)?;
    let path = bijection::phi(&md, &ctx)?;
    write_mapping(&args.common, &md, &path, &ctx, true)
}

fn cmd_unmap(args: &UnmapArgs) -> Outcome {
    let Params { s, d, p } = args.params;
    let path: MotzkinPath = args.path.trim().to_ascii_uppercase().parse()?;
    let ctx = PhiContext::new(s, d, p)?;
    let md = bijection::phi_inverse(&path, &ctx)?;
    write_mapping(&args.common, &md, &path, &ctx, false)
}

fn cmd_abacus(args: &AbacusArgs) -> Outcome {
    let md = parse_md(&args.md)?;
    let spec = AbacusSpec::new(args.s, args.d)?;
    let state = abacus::place_beads(&spec, &md)?;
    let mut out = open(&args.common)?;
    match args.common.format {
        Format::Text => {
            write!(out, "{}", abacus::render_abacus(&state, None))?;
            writeln!(
                out,
                "f = ({})",
                join(abacus::abacus_function(&state).values())
            )?;
        }
        Format::Json => json_line(&mut out, &state.to_record())?,
        Format::Csv => {
            writeln!(out, "j,r,b,f")?;
            for c in state.to_record().columns {
                writeln!(out, "{},{},{},{}", c.j, c.r, c.b, c.f)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CornerRow {
    m: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<u64>,
}

fn cmd_corners(args: &CornersArgs) -> Outcome {
    if args.d != 1 {
        return Err(Exit::new(
            Exit::DOMAIN,
            format!("corner counts need d = 1, got d = {}", args.d),
        ));
    }
    if args.p != 2 && args.p != 3 {
        return Err(Exit::new(
            Exit::UNSUPPORTED,
            format!("corner counts need p = 2 or 3, got p = {}", args.p),
        ));
    }
    if args.method == Method::Dp {
        return Err(Exit::new(
            Exit::UNSUPPORTED,
            "corner counts have no dp route",
        ));
    }
    let s = args.s;
    let want_formula = matches!(args.method, Method::Formula | Method::All);
    let want_enum = matches!(args.method, Method::Enumerate | Method::All);

    let mut histogram = vec![0u64; s as usize + 2];
    if want_enum {
        for md in oracle::enumerate_md_sets(&EnumerationTask::new(s, 1, args.p))? {
            histogram[md.to_partition().corners()] += 1;
        }
    }
    let ms: Vec<u64> = match args.m {
        Some(m) => vec![m],
        None => (0..=s).collect(),
    };
    let mut rows = Vec::new();
    let mut agree = true;
    for m in ms {
        let formula = if want_formula {
            let r = if args.p == 2 {
                formulas::count_corners_p2(s, m)?
            } else {
                formulas::count_corners_p3(s, m)?
            };
            Some(r.value)
        } else {
            None
        };
        let enumerated = want_enum.then(|| histogram.get(m as usize).copied().unwrap_or(0));
        if let (Some(f), Some(e)) = (&formula, enumerated) {
            agree &= *f == e.into();
        }
        let zero =
            formula.as_ref().is_none_or(|f| *f == 0u32.into()) && enumerated.unwrap_or(0) == 0;
        if args.m.is_none() && zero {
            continue;
        }
        rows.push(CornerRow {
            m,
            formula: formula.map(|f| f.to_string()),
            enumerated,
        });
    }

    let mut out = open(&args.common)?;
    match args.common.format {
        Format::Text | Format::Csv => {
            let sep = if args.common.format == Format::Csv {
                ","
            } else {
                " "
            };
            let mut head = vec!["m"];
            if want_formula {
                head.push("formula");
            }
            if want_enum {
                head.push("enumerated");
            }
            writeln!(out, "{}", head.join(sep))?;
            for r in &rows {
                let mut cells = vec![r.m.to_string()];
                cells.extend(r.formula.clone());
                cells.extend(r.enumerated.map(|e| e.to_string()));
                writeln!(out, "{}", cells.join(sep))?;
            }
            if args.method == Method::All && args.common.format == Format::Text {
                writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" })?;
            }
        }
        Format::Json => {
            for r in &rows {
                json_line(&mut out, r)?;
            }
        }
    }
    out.flush()?;
    if agree {
        Ok(())
    } else {
        Err(Exit::new(Exit::VERIFY, "formula and enumeration disagree"))
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if args.p.lo < 2 {
        return Err(Exit::new(Exit::USAGE, "--p must start at 2 or more"));
    }
    let mut grid = Vec::new();
    for s in args.s.lo..=args.s.hi {
        for d in args.d.lo..=args.d.hi {
            if num_integer::gcd(s, d) != 1 {
                eprintln!("note: skipping s={s} d={d}, gcd is not 1");
                continue;
            }
            for p in args.p.lo..=args.p.hi {
                grid.push((s, d, p as u32));
            }
        }
    }
    let run = || -> Vec<Result<VerifyReport, Error>> {
        grid.par_iter()
            .map(|&(s, d, p)| {
                let n_max = args.n_max.map(|n| match n {
                    NMax::Auto => EnumerationTask::new(s, d, p).max_core_size(),
                    NMax::Fixed(n) => n,
                });
                oracle::verify_instance(
                    s,
                    d,
                    p,
                    &VerifyOptions {
                        bound: args.bound,
                        n_max,
                    },
                )
            })
            .collect()
    };
    let reports = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Exit::new(Exit::USAGE, e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut out = open(&args.common)?;
    if args.common.format == Format::Csv {
        writeln!(
            out,
            "s,d,p,n_md,n_path,n_dp,n_formula,n_scan,roundtrip,corners,pass"
        )?;
    }
    let (mut passed, mut failed) = (0, 0);
    for report in reports {
        let r = report?;
        if r.pass {
            passed += 1;
        } else {
            failed += 1;
            for problem in &r.problems {
                eprintln!("s={} d={} p={}: {problem}", r.s, r.d, r.p);
            }
        }
        match args.common.format {
            Format::Text => writeln!(out, "{r}")?,
            Format::Json => json_line(&mut out, &r)?,
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.s,
                r.d,
                r.p,
                r.n_md,
                r.n_path,
                r.n_dp,
                r.n_formula
                    .as_ref()
                    .map_or(String::new(), |v| v.to_string()),
                r.n_scan.map_or(String::new(), |v| v.to_string()),
                r.roundtrip,
                r.corners,
                r.pass
            )?,
        }
    }
    let summary = format!(
        "{} instances: {passed} pass, {failed} fail",
        passed + failed
    );
    if args.common.format == Format::Text {
        writeln!(out, "{summary}")?;
    } else {
        eprintln!("{summary}");
    }
    out.flush()?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Exit::new(Exit::VERIFY, summary))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::USAGE } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Map(a) => cmd_map(a),
        Command::Unmap(a) => cmd_unmap(a),
        Command::Abacus(a) => cmd_abacus(a),
        Command::Corners(a) => cmd_corners(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
