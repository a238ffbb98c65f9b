//! Command line surface for the bargraph cell-count toolkit.
//!
//! Every subcommand is a thin wrapper over the `bwcap` library: parse
//! flags, call the exact routines, format the result as text, CSV, or
//! JSON. Exit codes: 0 success, 1 failed verification or cross-check,
//! 2 usage error, 3 resource or budget limit.

pub mod oeis;
pub mod verify;

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bwcap::asym::{self, Claim};
use bwcap::kary::{self, EnumOptions, KaryParams};
use bwcap::perm;
use bwcap::special::factorial;
use bwcap::{BigInt, BigRational, Error, Word};

/// Command line errors carry their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// An error surfaced by the core library.
    Core(Error),
    /// Bad flags or malformed input.
    Usage(String),
    /// A verification or cross-check failed.
    Check(String),
    /// Network, I/O, or other resource trouble.
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
            CliError::Resource(_) => 3,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. }
                | Error::PermanentTooLarge { .. }
                | Error::DegreeCapExceeded { .. }
                | Error::ExpansionBoundExceeded { .. } => 3,
                // Two supposedly equivalent routes disagreed.
                Error::Internal { .. } => 1,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Check(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Resource(format!("write failed: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bwcap",
    version,
    about = "Chessboard cell counts on bargraphs: word statistics, enumerating polynomials, balanced-count tables, and asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cell counts and balance flags for a single word.
    Stats(StatsArgs),
    /// Balanced-count table over k = 1..=k and n = 0..=n.
    Table1(Table1Args),
    /// Enumerating polynomial of a word family, as canonical JSON.
    Poly(PolyArgs),
    /// Number of balanced words in a family.
    Bal(BalArgs),
    /// Odd-displacement census of permutations.
    Census(CensusArgs),
    /// Exact-versus-estimate convergence report for a limit claim.
    Asymptotics(AsymptoticsArgs),
    /// Run cross-validation suites; exits 0 only if every check passes.
    Verify(VerifyArgs),
    /// Compare computed sequences against OEIS reference terms.
    Oeis(OeisArgs),
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Word as digits ("152322") or comma-separated letters ("15,2,3").
    pub word: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Largest alphabet size; rows cover k = 1..=k.
    #[arg(long, default_value_t = 6)]
    pub k: u32,
    /// Largest word length; columns cover n = 0..=n.
    #[arg(long, default_value_t = 10)]
    pub n: u32,
    /// Counting route: sum, jacobi, series, or brute.
    #[arg(long, default_value = "sum")]
    pub method: String,
    #[arg(long)]
    pub json: bool,
    /// Emit CSV (the default output).
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    /// Word-visit cap for brute-force enumeration.
    #[arg(long, default_value_t = kary::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker-count hint for enumeration; never changes output.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Word family: kary or perm.
    #[arg(long)]
    pub family: String,
    /// Alphabet size (kary family only).
    #[arg(long)]
    pub k: Option<u32>,
    /// Word length.
    #[arg(long)]
    pub n: u32,
    /// kary: product or brute; perm: closed, permanent, or brute.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long, default_value_t = kary::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct BalArgs {
    /// Word family: kary or perm.
    #[arg(long)]
    pub family: String,
    /// Alphabet size (kary family only).
    #[arg(long)]
    pub k: Option<u32>,
    /// Length to count balanced words of.
    #[arg(long, conflicts_with = "order")]
    pub n: Option<u32>,
    /// Print the counts for every length 0..=order instead.
    #[arg(long)]
    pub order: Option<u32>,
    /// kary: sum, jacobi, series, or brute; perm: closed, egf, or brute.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = kary::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// Permutation length.
    #[arg(long)]
    pub n: u32,
    /// closed (default) or brute.
    #[arg(long, default_value = "closed")]
    pub method: String,
    /// Print only the size of the class with this 1-based index.
    #[arg(long)]
    pub class: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = kary::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    /// kary-even, kary-odd, perm, or jacobi-szego.
    #[arg(long)]
    pub claim: String,
    /// Alphabet size for the kary claims, degree base for jacobi-szego.
    #[arg(long)]
    pub k: Option<u32>,
    /// Jacobi alpha parameter (jacobi-szego only).
    #[arg(long, default_value_t = 0)]
    pub alpha: u32,
    /// Comma-separated index schedule, e.g. "8,40,200,1000".
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// kary, perm, identities, asymptotics, or all.
    #[arg(default_value = "all")]
    pub suite: String,
    /// Seed for the randomized spot checks; logged in the output.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = kary::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct OeisArgs {
    /// Sequence id, e.g. A001405.
    #[arg(long)]
    pub id: String,
    /// How many terms to compare.
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    /// Exit nonzero when any compared term disagrees.
    #[arg(long)]
    pub strict: bool,
    /// Fetch the reference b-file over HTTP instead of using the
    /// embedded snapshot.
    #[arg(long)]
    pub fetch: bool,
    #[arg(long)]
    pub json: bool,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Stats(a) => cmd_stats(&a, out),
        Command::Table1(a) => cmd_table1(&a, out),
        Command::Poly(a) => cmd_poly(&a, out),
        Command::Bal(a) => cmd_bal(&a, out),
        Command::Census(a) => cmd_census(&a, out),
        Command::Asymptotics(a) => cmd_asymptotics(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Oeis(a) => cmd_oeis(&a, out),
    }
}

/// Parses a word given as a digit string or comma-separated letters.
pub fn parse_word_text(text: &str) -> Result<Vec<u32>, CliError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    if trimmed.contains(',') {
        trimmed
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u32>().map_err(|_| {
                    CliError::Usage(format!("letter {part:?} is not a nonnegative integer"))
                })
            })
            .collect()
    } else {
        trimmed
            .chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| {
                    CliError::Usage(format!(
                        "character {c:?} is not a digit; use commas to separate letters above 9"
                    ))
                })
            })
            .collect()
    }
}

fn unknown_method(found: &str, expected: &str) -> CliError {
    CliError::Usage(format!("unknown method {found:?}; expected {expected}"))
}

fn enum_options(budget: u64, jobs: usize) -> EnumOptions {
    EnumOptions { budget, jobs }
}

fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let word = Word::new(parse_word_text(&args.word)?)?;
    let count = word.cell_count();
    let permutation = word.is_permutation();
    let displacements = if permutation {
        Some(word.odd_displacements()?)
    } else {
        None
    };
    if args.json {
        let mut obj = serde_json::Map::new();
        obj.insert("word".into(), json!(word.letters()));
        obj.insert("length".into(), json!(word.len()));
        obj.insert("black".into(), json!(count.black.to_string()));
        obj.insert("white".into(), json!(count.white.to_string()));
        obj.insert("balanced".into(), json!(word.is_balanced()));
        obj.insert("permutation".into(), json!(permutation));
        if let Some(d) = displacements {
            obj.insert("odd_displacements".into(), json!(d));
        }
        writeln!(out, "{}", Value::Object(obj))?;
    } else {
        let letters: Vec<String> = word.letters().iter().map(|l| l.to_string()).collect();
        writeln!(out, "word: {}", letters.join(" "))?;
        writeln!(out, "length: {}", word.len())?;
        writeln!(out, "black: {}", count.black)?;
        writeln!(out, "white: {}", count.white)?;
        writeln!(out, "balanced: {}", word.is_balanced())?;
        writeln!(out, "permutation: {permutation}")?;
        if let Some(d) = displacements {
            writeln!(out, "odd displacements: {d}")?;
        }
    }
    Ok(())
}

fn cmd_table1(args: &Table1Args, out: &mut dyn Write) -> Result<(), CliError> {
    let method: kary::Method = args.method.parse()?;
    let opts = enum_options(args.budget, args.jobs);
    let table = kary::count_table(method, 1..=args.k, 0..=args.n, &opts)?;
    if args.json {
        writeln!(out, "{}", table.to_json())?;
    } else {
        write!(out, "{}", table.to_csv())?;
    }
    Ok(())
}

fn cmd_poly(args: &PolyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = enum_options(args.budget, args.jobs);
    let poly = match args.family.as_str() {
        "kary" => {
            let k = args
                .k
                .ok_or_else(|| CliError::Usage("--k is required for the kary family".into()))?;
            let params = KaryParams::new(k, args.n)?;
            match args.method.as_deref().unwrap_or("product") {
                "product" => kary::enumerating_polynomial(&params)?,
                "brute" => kary::enumerating_polynomial_brute(&params, &opts)?,
                other => return Err(unknown_method(other, "product or brute")),
            }
        }
        "perm" => match args.method.as_deref().unwrap_or("closed") {
            "closed" => perm::enumerating_polynomial_closed(args.n)?,
            "permanent" => perm::permanent_poly(&perm::capacity_matrix(args.n)?)?,
            "brute" => perm::enumerating_polynomial_brute(args.n, &opts)?,
            other => return Err(unknown_method(other, "closed, permanent, or brute")),
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?}; expected kary or perm"
            )))
        }
    };
    writeln!(out, "{}", poly.to_json_string())?;
    Ok(())
}

/// Reads a count out of the EGF: coefficient of x^n times n! must be a
/// nonnegative integer, otherwise the two series routes disagree.
fn egf_count(egf: &bwcap::RationalSeries, n: u32) -> Result<BigInt, CliError> {
    let scaled = egf.coeff(n as usize) * BigRational::from_integer(factorial(n as u64));
    if !scaled.is_integer() {
        return Err(CliError::Check(format!(
            "EGF coefficient at degree {n} times {n}! is not an integer"
        )));
    }
    Ok(scaled.to_integer())
}

fn bal_single(
    family: &str,
    k: Option<u32>,
    n: u32,
    method: Option<&str>,
    opts: &EnumOptions,
) -> Result<(String, BigInt), CliError> {
    match family {
        "kary" => {
            let k = k.ok_or_else(|| CliError::Usage("--k is required for the kary family".into()))?;
            let params = KaryParams::new(k, n)?;
            let method = method.unwrap_or("sum");
            let count = match method {
                "brute" => kary::balanced_count_brute(&params, opts)?,
                "sum" => kary::balanced_count_sum(&params),
                "jacobi" => kary::balanced_count_jacobi(&params)?,
                "series" => kary::balanced_series(k, n)?
                    .pop()
                    .expect("series row is never empty"),
                other => return Err(unknown_method(other, "brute, sum, jacobi, or series")),
            };
            Ok((method.to_string(), count))
        }
        "perm" => {
            let method = method.unwrap_or("closed");
            let count = match method {
                "closed" => perm::balanced_count_closed(n as u64),
                "egf" => egf_count(&perm::balanced_egf(n)?, n)?,
                "brute" => perm::enumerating_polynomial_brute(n, opts)?.balanced_coefficient_sum(),
                other => return Err(unknown_method(other, "closed, egf, or brute")),
            };
            Ok((method.to_string(), count))
        }
        other => Err(CliError::Usage(format!(
            "unknown family {other:?}; expected kary or perm"
        ))),
    }
}

fn bal_sequence(
    family: &str,
    k: Option<u32>,
    order: u32,
    method: Option<&str>,
    opts: &EnumOptions,
) -> Result<(String, Vec<BigInt>), CliError> {
    match family {
        "kary" => {
            let k = k.ok_or_else(|| CliError::Usage("--k is required for the kary family".into()))?;
            let method = method.unwrap_or("series");
            if method == "series" {
                return Ok((method.to_string(), kary::balanced_series(k, order)?));
            }
            let mut counts = Vec::with_capacity(order as usize + 1);
            for n in 0..=order {
                counts.push(bal_single("kary", Some(k), n, Some(method), opts)?.1);
            }
            Ok((method.to_string(), counts))
        }
        "perm" => {
            let method = method.unwrap_or("closed");
            if method == "egf" {
                let egf = perm::balanced_egf(order)?;
                let mut counts = Vec::with_capacity(order as usize + 1);
                for n in 0..=order {
                    counts.push(egf_count(&egf, n)?);
                }
                return Ok((method.to_string(), counts));
            }
            let mut counts = Vec::with_capacity(order as usize + 1);
            for n in 0..=order {
                counts.push(bal_single("perm", None, n, Some(method), opts)?.1);
            }
            Ok((method.to_string(), counts))
        }
        other => Err(CliError::Usage(format!(
            "unknown family {other:?}; expected kary or perm"
        ))),
    }
}

fn cmd_bal(args: &BalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = enum_options(args.budget, args.jobs);
    let method = args.method.as_deref();
    match (args.n, args.order) {
        (Some(n), None) => {
            let (method, count) = bal_single(&args.family, args.k, n, method, &opts)?;
            if args.json {
                let mut obj = serde_json::Map::new();
                obj.insert("family".into(), json!(args.family));
                if let Some(k) = args.k {
                    obj.insert("k".into(), json!(k));
                }
                obj.insert("n".into(), json!(n));
                obj.insert("method".into(), json!(method));
                obj.insert("count".into(), json!(count.to_string()));
                writeln!(out, "{}", Value::Object(obj))?;
            } else {
                writeln!(out, "{count}")?;
            }
        }
        (None, Some(order)) => {
            let (method, counts) = bal_sequence(&args.family, args.k, order, method, &opts)?;
            if args.json {
                let rendered: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                let mut obj = serde_json::Map::new();
                obj.insert("family".into(), json!(args.family));
                if let Some(k) = args.k {
                    obj.insert("k".into(), json!(k));
                }
                obj.insert("order".into(), json!(order));
                obj.insert("method".into(), json!(method));
                obj.insert("counts".into(), json!(rendered));
                writeln!(out, "{}", Value::Object(obj))?;
            } else {
                writeln!(out, "n,count")?;
                for (n, count) in counts.iter().enumerate() {
                    writeln!(out, "{n},{count}")?;
                }
            }
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --n or --order is required".into(),
            ))
        }
    }
    Ok(())
}

fn cmd_census(args: &CensusArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(class) = args.class {
        let size = perm::displacement_class_formula(args.n as u64, class)?;
        if args.json {
            writeln!(
                out,
                "{}",
                json!({ "n": args.n, "class": class, "size": size.to_string() })
            )?;
        } else {
            writeln!(out, "{size}")?;
        }
        return Ok(());
    }
    let opts = enum_options(args.budget, args.jobs);
    let census = match args.method.as_str() {
        "closed" => perm::displacement_census_closed(args.n)?,
        "brute" => perm::displacement_census(args.n, &opts)?,
        other => return Err(unknown_method(other, "closed or brute")),
    };
    if args.json {
        writeln!(out, "{}", census.to_json())?;
    } else {
        writeln!(out, "d,count")?;
        for (d, count) in &census.counts {
            writeln!(out, "{d},{count}")?;
        }
    }
    Ok(())
}

fn parse_claim(name: &str, k: Option<u32>, alpha: u32) -> Result<Claim, CliError> {
    match name {
        "kary-even" => Ok(Claim::KaryEven { k: k.unwrap_or(2) }),
        "kary-odd" => Ok(Claim::KaryOdd { k: k.unwrap_or(3) }),
        "perm" => Ok(Claim::Perm),
        "jacobi-szego" => Ok(Claim::JacobiSzego {
            k: k.unwrap_or(3),
            alpha,
        }),
        other => Err(CliError::Usage(format!(
            "unknown claim {other:?}; expected kary-even, kary-odd, perm, or jacobi-szego"
        ))),
    }
}

fn parse_schedule(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<u64>().map_err(|_| {
                CliError::Usage(format!("schedule entry {part:?} is not a nonnegative integer"))
            })
        })
        .collect()
}

fn cmd_asymptotics(args: &AsymptoticsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let claim = parse_claim(&args.claim, args.k, args.alpha)?;
    let schedule = match &args.schedule {
        Some(text) => parse_schedule(text)?,
        None => claim.default_schedule(),
    };
    let report = asym::convergence_report(&claim, &schedule)?;
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_csv())?;
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = enum_options(args.budget, args.jobs);
    let checks = verify::run_suite(&args.suite, args.seed, &opts)?;
    writeln!(out, "suite: {}", args.suite)?;
    writeln!(out, "seed: {}", args.seed)?;
    let mut failed = 0usize;
    for check in &checks {
        let tag = if check.pass { "pass" } else { "FAIL" };
        writeln!(out, "[{tag}] {}: {}", check.name, check.detail)?;
        if !check.pass {
            failed += 1;
        }
    }
    writeln!(
        out,
        "verify: {} checks, {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    )?;
    if failed > 0 {
        return Err(CliError::Check(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

fn cmd_oeis(args: &OeisArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = oeis::check(&args.id, args.terms, args.fetch)?;
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    if args.strict && !report.mismatches.is_empty() {
        return Err(CliError::Check(format!(
            "{} of {} compared terms disagree for {}",
            report.mismatches.len(),
            report.compared,
            report.id
        )));
    }
    Ok(())
}
