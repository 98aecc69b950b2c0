//! The `pda` command line: `construct`, `verify`, `simulate`, `compare` and
//! `enumerate`.
//!
//! [`run`] takes the arguments and output streams explicitly so the binary is
//! a one-liner and the commands can be driven in-process. Exit codes:
//! 0 success, 1 semantic failure (invalid PDA, decode failure), 2 usage or
//! parameter-domain error, 3 resource cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    self, compare_general, compare_special, default_z_range, enumerate_all, enumerate_schemes,
    estimate_m_range, format_sig15, locate_general, locate_special, parse_rational, Baseline,
    ComparisonResult, EnumeratedScheme, OperatingPoint,
};
use crate::constructions::{
    construct, construct_mn_with_cap, ConstructionError, ConstructionParams, Family,
    DEFAULT_MAX_CELLS,
};
use crate::pda::{canonicalize, emit, params_of, parse, verify_document, PdaDocument};
use crate::sim::{self, DemandVector, PacketStore, DEFAULT_PACKET_SIZE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Largest synthetic library `simulate` will allocate.
pub const MAX_LIBRARY_BYTES: usize = 1 << 30;

#[derive(Parser, Debug)]
#[command(
    name = "pda",
    version,
    about = "Placement delivery arrays for coded caching"
)]
struct Cli {
    /// Seed for file contents and random demands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a PDA and write it in the text format.
    Construct(ConstructArgs),
    /// Check a PDA file against C1-C3.
    Verify { path: PathBuf },
    /// Run placement, delivery and decoding on synthetic files.
    Simulate(SimulateArgs),
    /// Compare a family against its memory-sharing baseline.
    Compare(CompareArgs),
    /// List the schemes reaching a user count and memory ratio.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Mn,
    General,
    Special,
    ExtGeneral,
    ExtSpecial,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    z: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// `t` for the general families, `KM/N` for mn. Defaults to 1 for the
    /// special families.
    #[arg(long)]
    t: Option<u32>,
    /// Number of users (mn only).
    #[arg(long)]
    k: Option<usize>,
    /// Refuse to build arrays with more cells than this.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    path: PathBuf,
    /// Number of files N (default K).
    #[arg(long)]
    files: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_PACKET_SIZE)]
    packet_size: usize,
    /// Comma-separated 1-based file per user (default: user k requests
    /// file ((k-1) mod N) + 1).
    #[arg(long, value_delimiter = ',', conflicts_with = "random_demands")]
    demand: Option<Vec<usize>>,
    /// Run this many rounds with uniformly random demands.
    #[arg(long)]
    random_demands: Option<usize>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_parser = parse_baseline, required_unless_present_any = ["table_iv", "table_v"])]
    baseline: Option<Baseline>,
    #[arg(long, required_unless_present_any = ["table_iv", "table_v"])]
    q: Option<u32>,
    /// Single `z` at a lattice point (default: sweep).
    #[arg(long, conflicts_with = "ratio")]
    z: Option<u32>,
    /// Target memory ratio `a/b`; locates `z` and whether it is a lattice point.
    #[arg(long)]
    ratio: Option<String>,
    #[arg(long)]
    t: Option<u32>,
    /// Baseline mixing weight, `a/b` or a decimal.
    #[arg(long, required_unless_present_any = ["table_iv", "table_v"])]
    lambda: Option<String>,
    /// General family, q = 20, t = 3, lambda = 0.1, z = 11..18.
    #[arg(long, conflicts_with_all = ["baseline", "q", "z", "ratio", "t", "lambda", "table_v"])]
    table_iv: bool,
    /// Special family, q = 20, lambda = 0.5, z = 11..18.
    #[arg(long, conflicts_with_all = ["baseline", "q", "z", "ratio", "t", "lambda"])]
    table_v: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, required_unless_present = "table_iii")]
    k: Option<u64>,
    /// Memory ratio as an exact fraction `a/b`.
    #[arg(long, required_unless_present = "table_iii")]
    ratio: Option<String>,
    /// Also list the dominated `t = 1` general-family schemes.
    #[arg(long)]
    all: bool,
    /// K = 405, M/N = 2/3.
    #[arg(long, conflicts_with_all = ["k", "ratio"])]
    table_iii: bool,
}

fn parse_baseline(s: &str) -> Result<Baseline, String> {
    s.parse()
}

/// A command failure: exit code plus message for stderr.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::Domain(_) => EXIT_USAGE,
            ConstructionError::CellCap { .. } => EXIT_CAP,
        };
        Failure(code, e.to_string())
    }
}

impl From<analysis::AnalysisError> for Failure {
    fn from(e: analysis::AnalysisError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<sim::SimError> for Failure {
    fn from(e: sim::SimError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a command produced: the main output, notes for stderr, and the
/// exit code.
struct Output {
    body: String,
    notes: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            notes: String::new(),
            code: EXIT_OK,
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify { path } => cmd_verify(path),
        Command::Simulate(a) => cmd_simulate(a, cli.seed, cli.format),
        Command::Compare(a) => cmd_compare(a, cli.format),
        Command::Enumerate(a) => cmd_enumerate(a, cli.format),
    };
    match result {
        Ok(out) => {
            let _ = stderr.write_all(out.notes.as_bytes());
            if let Err(e) = write_body(cli.out.as_deref(), &out.body, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            out.code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn write_body(out: Option<&Path>, body: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn require<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("--{flag} is required for the {family} family")))
}

fn cmd_construct(a: &ConstructArgs) -> Result<Output, Failure> {
    let arr = match a.family {
        FamilyArg::Mn => {
            let k = require(a.k, "k", "mn")?;
            let t = require(a.t, "t", "mn")?;
            construct_mn_with_cap(k, t as usize, a.max_cells)?
        }
        other => {
            let family = match other {
                FamilyArg::General => Family::General,
                FamilyArg::Special => Family::Special,
                FamilyArg::ExtGeneral => Family::ExtGeneral,
                _ => Family::ExtSpecial,
            };
            let name = family.name();
            let t = if family.is_special() {
                a.t.unwrap_or(1)
            } else {
                require(a.t, "t", name)?
            };
            let p = ConstructionParams::new(
                require(a.q, "q", name)?,
                require(a.z, "z", name)?,
                require(a.m, "m", name)?,
                t,
            );
            construct(family, &p, a.max_cells)?
        }
    };
    let arr = canonicalize(&arr);
    let p = params_of(&arr).expect("constructions are uniform");
    Ok(Output {
        body: emit(&arr),
        notes: format!(
            "params (K,F,Z,S) = {p}  M/N = {}  R = {}\n",
            p.memory_ratio(),
            p.rate()
        ),
        code: EXIT_OK,
    })
}

fn read_document(path: &Path) -> Result<PdaDocument, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(path: &Path) -> Result<Output, Failure> {
    let doc = read_document(path)?;
    let report = verify_document(&doc);
    let mut body = format!(
        "header (K,F,Z,S) = ({},{},{},{})\n",
        doc.header.k, doc.header.f, doc.header.z, doc.header.s
    );
    body.push_str(&report.to_string());
    Ok(Output {
        code: if report.valid { EXIT_OK } else { EXIT_FAILURE },
        ..Output::ok(body)
    })
}

fn cmd_simulate(a: &SimulateArgs, seed: u64, format: Format) -> Result<Output, Failure> {
    let doc = read_document(&a.path)?;
    let arr = &doc.array;
    let n_files = a.files.unwrap_or(arr.cols());
    if n_files == 0 || a.packet_size == 0 {
        return Err(Failure::usage("--files and --packet-size must be positive"));
    }
    let library = n_files
        .checked_mul(arr.rows())
        .and_then(|x| x.checked_mul(a.packet_size))
        .filter(|&x| x <= MAX_LIBRARY_BYTES)
        .ok_or_else(|| {
            Failure(
                EXIT_CAP,
                format!("library exceeds {MAX_LIBRARY_BYTES} bytes"),
            )
        })?;
    let store = PacketStore::generate(n_files, arr.rows(), a.packet_size, seed)?;
    let mut notes = String::new();
    let report = verify_document(&doc);
    if !report.valid {
        notes.push_str(&format!("warning: array is not a valid PDA\n{report}"));
    }

    let demands: Vec<DemandVector> = match (&a.demand, a.random_demands) {
        (Some(d), _) => vec![DemandVector::new(d, n_files)?],
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(1);
            (0..n)
                .map(|_| DemandVector::random(arr.cols(), n_files, &mut rng))
                .collect()
        }
        (None, None) => {
            let d: Vec<usize> = (0..arr.cols()).map(|k| k % n_files + 1).collect();
            vec![DemandVector::new(&d, n_files)?]
        }
    };

    let f = arr.rows();
    let mut all_ok = true;
    let mut body = String::new();
    let mut csv_rows = Vec::new();
    if format == Format::Text {
        body.push_str(&format!(
            "seed {seed}\nfiles {n_files} x {f} packets x {} bytes ({library} bytes)\n",
            a.packet_size
        ));
    }
    for (round, demand) in demands.iter().enumerate() {
        let out = sim::run_round(arr, &store, demand)?;
        let sent = out.log.transmissions.len();
        let rate = out.log.measured_rate(f);
        all_ok &= out.report.success;
        match format {
            Format::Text => {
                body.push_str(&format!("round {} demand {demand}\n", round + 1));
                if demands.len() == 1 {
                    body.push_str(&out.log.to_trace());
                }
                body.push_str(&format!(
                    "bytes sent {} ({sent} x {})\nrate {rate} (S/F = {sent}/{f})\n",
                    out.log.bytes_sent(),
                    a.packet_size
                ));
                body.push_str(&out.report.to_string());
                body.push_str(if out.report.success {
                    "decode ok\n"
                } else {
                    "decode FAILED\n"
                });
            }
            Format::Csv => csv_rows.push(vec![
                (round + 1).to_string(),
                demand
                    .one_based()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                out.log.bytes_sent().to_string(),
                rate.numer().to_string(),
                rate.denom().to_string(),
                out.report.success.to_string(),
            ]),
        }
    }
    if format == Format::Csv {
        body = to_csv(
            &[
                "round",
                "demand",
                "bytes_sent",
                "rate_num",
                "rate_den",
                "success",
            ],
            &csv_rows,
        );
    }
    Ok(Output {
        body,
        notes,
        code: if all_ok { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn cmd_compare(a: &CompareArgs, format: Format) -> Result<Output, Failure> {
    let (baseline, q, t, lambda) = if a.table_iv {
        (Baseline::Szg, 20, 3, analysis::parse_rational("1/10")?)
    } else if a.table_v {
        (Baseline::Yctc, 20, 1, analysis::parse_rational("1/2")?)
    } else {
        let baseline = a.baseline.expect("required by clap");
        let t = match baseline {
            Baseline::Szg => {
                a.t.ok_or_else(|| Failure::usage("--t is required for the szg baseline"))?
            }
            Baseline::Yctc => match a.t {
                None | Some(1) => 1,
                Some(t) => {
                    return Err(Failure::usage(format!(
                        "the yctc baseline has t = 1 (got t = {t})"
                    )))
                }
            },
        };
        let lambda = parse_rational(a.lambda.as_deref().expect("required by clap"))?;
        (baseline, a.q.expect("required by clap"), t, lambda)
    };
    if q < 2 {
        return Err(Failure::usage(format!("q >= 2 (got q = {q})")));
    }
    let points: Vec<(u32, OperatingPoint)> = if let Some(r) = &a.ratio {
        let ratio = parse_fraction(r)?;
        let found = match baseline {
            Baseline::Szg => locate_general(q, t, &ratio),
            Baseline::Yctc => locate_special(q, &ratio),
        };
        vec![found.ok_or_else(|| {
            Failure::usage(format!(
                "M/N = {ratio} is outside the family's range for q = {q}"
            ))
        })?]
    } else if let Some(z) = a.z {
        vec![(z, OperatingPoint::Lattice)]
    } else {
        default_z_range(q)
            .map(|z| (z, OperatingPoint::Lattice))
            .collect()
    };
    let results = points
        .into_iter()
        .map(|(z, point)| match baseline {
            Baseline::Szg => compare_general(q, z, t, &lambda, point),
            Baseline::Yctc => compare_special(q, z, &lambda, point),
        })
        .collect::<Result<Vec<ComparisonResult>, _>>()?;

    let body = match format {
        Format::Text => {
            let f_head = if results.iter().all(|r| r.f_is_equality) {
                "F_z/F_base"
            } else {
                "F_z/F_base <"
            };
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    let z = match r.point {
                        OperatingPoint::Lattice => r.z.to_string(),
                        OperatingPoint::Between => format!("({},{})", r.z, r.z + 1),
                    };
                    vec![z, format_sig15(r.r_ratio_bound), format_sig15(r.f_ratio)]
                })
                .collect();
            let mut s = format!("# baseline {baseline} q={q} t={t} lambda={lambda}\n");
            s.push_str(&aligned(&["z", "R_z/R_base <", f_head], &rows));
            s
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.baseline.to_string(),
                        r.q.to_string(),
                        r.z.to_string(),
                        r.t.to_string(),
                        r.lambda.to_string(),
                        if r.exact_case() { "lattice" } else { "between" }.to_string(),
                        format_sig15(r.r_ratio_bound),
                        format_sig15(r.f_ratio),
                        r.f_is_equality.to_string(),
                        r.f_ratio_actual.to_string(),
                        r.advantage.to_string(),
                    ]
                })
                .collect();
            to_csv(
                &[
                    "baseline",
                    "q",
                    "z",
                    "t",
                    "lambda",
                    "point",
                    "r_ratio_bound",
                    "f_ratio",
                    "f_is_equality",
                    "f_ratio_exact",
                    "advantage",
                ],
                &rows,
            )
        }
    };
    Ok(Output::ok(body))
}

/// Command-line ratios are exact `a/b` fractions only.
fn parse_fraction(s: &str) -> Result<BigRational, Failure> {
    if !s.contains('/') {
        return Err(Failure::usage(format!(
            "ratio `{s}` must be an exact fraction a/b"
        )));
    }
    Ok(parse_rational(s)?)
}

fn cmd_enumerate(a: &EnumerateArgs, format: Format) -> Result<Output, Failure> {
    let (k, ratio) = if a.table_iii {
        (405, parse_fraction("2/3")?)
    } else {
        (
            a.k.expect("required by clap"),
            parse_fraction(a.ratio.as_deref().expect("required by clap"))?,
        )
    };
    if k < 2 {
        return Err(Failure::usage(format!("K >= 2 (got K = {k})")));
    }
    if ratio <= BigRational::from_integer(0.into()) || ratio >= BigRational::from_integer(1.into())
    {
        return Err(Failure::usage(format!("0 < M/N < 1 (got {ratio})")));
    }
    let rows = if a.all {
        enumerate_all(k, &ratio)
    } else {
        enumerate_schemes(k, &ratio)
    };
    let body = match format {
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.family.name().to_string(),
                        r.q.to_string(),
                        r.z.to_string(),
                        r.m.to_string(),
                        r.t.to_string(),
                        r.rate.numer().to_string(),
                        r.rate.denom().to_string(),
                        format_sig15(r.ln_f),
                    ]
                })
                .collect();
            to_csv(
                &["family", "q", "z", "m", "t", "R_num", "R_den", "lnF"],
                &cells,
            )
        }
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(text_row).collect();
            let mut s = format!("# K={k} M/N={ratio}: {} scheme(s)\n", rows.len());
            s.push_str(&aligned(
                &[
                    "family",
                    "q",
                    "z",
                    "m",
                    "t",
                    "R",
                    "lnF",
                    "m range (growth estimate)",
                ],
                &cells,
            ));
            s
        }
    };
    Ok(Output::ok(body))
}

fn text_row(r: &EnumeratedScheme) -> Vec<String> {
    let (lo, hi) = estimate_m_range(r.k, r.q, r.t);
    vec![
        r.family.name().to_string(),
        r.q.to_string(),
        r.z.to_string(),
        r.m.to_string(),
        r.t.to_string(),
        r.rate.to_string(),
        format!("{:.4}", r.ln_f),
        format!("({lo:.2}, {hi:.2})"),
    ]
}
