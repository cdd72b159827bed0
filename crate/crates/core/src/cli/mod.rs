//! Command-line front end: word generation, factor interval tables, abelian
//! period analysis, and a verification harness over the closed forms.
//!
//! Exit codes: 0 success (all checks pass), 1 verification mismatch,
//! 2 usage or domain error.

mod verify;

use std::io::Read as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::abelian::{k_m_witness_in, longest_prefix_rep, min_abelian_period, Tier};
use crate::bijection::IntervalPartition;
use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::words::{fibonacci_word, sturmian_prefix, SturmianParams, Word};

/// Largest prefix any single invocation will generate.
const MAX_GENERATE_LEN: usize = 10_000_000;
/// Scan bounds keep the per-period pass (O(length * log m) each) interactive.
const MAX_SCAN_LEN: usize = 500_000;
const MAX_SCAN_M: usize = 200;

#[derive(Parser)]
#[command(
    name = "sturm",
    version,
    about = "Sturmian words, the factor interval bijection, and abelian repetitions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the Sturmian word with slope alpha and intercept rho
    Generate {
        /// Slope: fib, quad:p,q,r,d, or ratio:n/m (ratio needs --periodic)
        #[arg(long, default_value = "fib")]
        alpha: String,
        /// Intercept, same syntax as --alpha
        #[arg(long, default_value = "ratio:0")]
        rho: String,
        /// Number of letters to emit
        #[arg(long)]
        length: usize,
        /// Accept a rational slope (the generated word is then periodic)
        #[arg(long)]
        periodic: bool,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
    },
    /// Print the finite Fibonacci word f_j
    Fibword {
        /// Index j >= 0 (f_0 = b, f_1 = a)
        j: u64,
    },
    /// Factor interval table: the m+1 length-m factors and their intervals
    Bijection {
        #[arg(long, default_value = "fib")]
        alpha: String,
        /// Factor length
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        /// Decimal digits for the interval endpoint renderings
        #[arg(long, default_value_t = 3)]
        digits: usize,
    },
    /// Minimal abelian period of a word (argument or stdin)
    Period {
        /// Word over a single-byte alphabet; read from stdin when omitted
        word: Option<String>,
        /// relaxed admits any factorization; repetition requires exponent >= 2
        #[arg(long, value_enum, default_value_t = TierArg::Relaxed)]
        tier: TierArg,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long, default_value_t = 3)]
        digits: usize,
    },
    /// Longest prefix that is an abelian repetition of period m
    Prefix {
        #[arg(long, default_value = "fib")]
        alpha: String,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long, default_value_t = 3)]
        digits: usize,
    },
    /// Maximal abelian exponent per period over a fixed prefix, with witnesses
    Scan {
        #[arg(long, default_value = "fib")]
        alpha: String,
        /// Prefix length to scan
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        /// Scan periods 1..=max-m
        #[arg(long, default_value_t = 20)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long, default_value_t = 3)]
        digits: usize,
    },
    /// Check a named family of identities; exit 1 on any mismatch
    Verify {
        /// One of: table1, table2, theorem6, lexorder, identity,
        /// parikh-split, proposition6, corollary5
        target: String,
        /// Index range a..b (inclusive), or a single index
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        max_k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long, default_value_t = 3)]
        digits: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Txt,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Relaxed,
    Repetition,
}

/// Parse and dispatch; the binary exits with the returned code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here with a zero-exit display
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Generate {
            alpha,
            rho,
            length,
            periodic,
            format,
        } => cmd_generate(&alpha, &rho, length, periodic, format),
        Command::Fibword { j } => {
            emit(&format!("{}\n", fibonacci_word(j)?));
            Ok(0)
        }
        Command::Bijection {
            alpha,
            m,
            format,
            digits,
        } => cmd_bijection(&alpha, m, format, digits),
        Command::Period {
            word,
            tier,
            format,
            digits,
        } => cmd_period(word, tier, format, digits),
        Command::Prefix {
            alpha,
            m,
            format,
            digits,
        } => cmd_prefix(&alpha, m, format, digits),
        Command::Scan {
            alpha,
            length,
            max_m,
            format,
            digits,
        } => cmd_scan(&alpha, length, max_m, format, digits),
        Command::Verify {
            target,
            j,
            max_m,
            max_k,
            format,
            digits,
        } => verify::run(&verify::VerifyArgs {
            target,
            j,
            max_m,
            max_k,
            format,
            digits,
        }),
    }
}

/// Slope from its textual form; rational slopes need the explicit opt-in.
fn parse_slope(text: &str, periodic: bool) -> Result<QuadraticNumber> {
    let slope = if text == "fib" {
        QuadraticNumber::golden_slope()
    } else {
        text.parse()?
    };
    if slope.is_rational() && !periodic {
        return Err(Error::Parse(format!(
            "slope {slope} is rational; pass --periodic to generate the periodic word"
        )));
    }
    Ok(slope)
}

fn cmd_generate(
    alpha: &str,
    rho: &str,
    length: usize,
    periodic: bool,
    format: Format,
) -> Result<i32> {
    if length > MAX_GENERATE_LEN {
        return Err(Error::OutOfRange(format!(
            "--length is capped at {MAX_GENERATE_LEN}"
        )));
    }
    let alpha = parse_slope(alpha, periodic)?;
    let rho: QuadraticNumber = rho.parse()?;
    // parse_slope already vetoed undeclared rational slopes
    let params = SturmianParams::periodic(alpha, rho)?;
    let word = sturmian_prefix(&params, length);
    match format {
        Format::Txt => {
            if !word.is_empty() {
                emit(&format!("{word}\n"));
            }
        }
        _ => {
            let report = Report {
                rows: vec![Row::new(vec![("word", Cell::Text(word.to_string()))])],
            };
            print_report(&report, format, 0);
        }
    }
    Ok(0)
}

fn cmd_bijection(alpha: &str, m: usize, format: Format, digits: usize) -> Result<i32> {
    let alpha = parse_slope(alpha, false)?;
    let partition = IntervalPartition::new(&alpha, m)?;
    let mut rows = Vec::new();
    for interval in partition.all_factors()? {
        let contains = interval.left.cmp_checked(&alpha)?.is_le()
            && alpha.cmp_checked(&interval.right)?.is_lt();
        rows.push(Row::new(vec![
            ("k", Cell::Count(interval.k as u64)),
            ("left", Cell::Exact(interval.left)),
            ("right", Cell::Exact(interval.right)),
            ("factor", Cell::Text(interval.factor.to_string())),
            ("class", Cell::Text(interval.parikh_class.to_string())),
            ("contains_alpha", Cell::Flag(contains)),
        ]));
    }
    print_report(&Report { rows }, format, digits);
    Ok(0)
}

fn cmd_period(word: Option<String>, tier: TierArg, format: Format, digits: usize) -> Result<i32> {
    let text = match word {
        Some(text) => text,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
            buffer
        }
    };
    let word = Word::infer(text.trim())?;
    let tier = match tier {
        TierArg::Relaxed => Tier::Relaxed,
        TierArg::Repetition => Tier::Repetition,
    };
    match min_abelian_period(&word, tier)? {
        Some(fact) => {
            print_report(&Report { rows: vec![factorization_row(&fact)] }, format, digits);
        }
        None => emit("none\n"),
    }
    Ok(0)
}

fn cmd_prefix(alpha: &str, m: usize, format: Format, digits: usize) -> Result<i32> {
    let alpha = parse_slope(alpha, false)?;
    match longest_prefix_rep(&alpha, m)? {
        Some((length, fact)) => {
            let mut row = vec![("length", Cell::Count(length as u64))];
            row.extend(factorization_row(&fact).cells);
            print_report(&Report { rows: vec![Row::new(row)] }, format, digits);
        }
        None => emit("none\n"),
    }
    Ok(0)
}

fn cmd_scan(alpha: &str, length: usize, max_m: usize, format: Format, digits: usize) -> Result<i32> {
    if !(1..=MAX_SCAN_M).contains(&max_m) || length > MAX_SCAN_LEN {
        return Err(Error::OutOfRange(format!(
            "scan supports --max-m 1..={MAX_SCAN_M} and --length up to {MAX_SCAN_LEN}"
        )));
    }
    if length < 2 * max_m {
        return Err(Error::OutOfRange(format!(
            "--length must be at least 2 * max_m = {}",
            2 * max_m
        )));
    }
    let alpha = parse_slope(alpha, false)?;
    let params = SturmianParams::new(alpha, QuadraticNumber::from_int(0))?;
    let prefix = sturmian_prefix(&params, length);
    let mut rows = Vec::new();
    for m in 1..=max_m {
        let (exponent, start, fact) = k_m_witness_in(&prefix, m)?;
        rows.push(Row::new(vec![
            ("m", Cell::Count(m as u64)),
            ("exponent", Cell::Fraction(exponent)),
            ("length", Cell::Count(fact.length() as u64)),
            ("start", Cell::Count(start as u64)),
            ("head", Cell::Count(fact.head as u64)),
            ("blocks", Cell::Count(fact.blocks as u64)),
            ("tail", Cell::Count(fact.tail as u64)),
        ]));
    }
    print_report(&Report { rows }, format, digits);
    Ok(0)
}

fn factorization_row(fact: &crate::abelian::AbelianFactorization) -> Row {
    Row::new(vec![
        ("m", Cell::Count(fact.period as u64)),
        ("h", Cell::Count(fact.head as u64)),
        ("blocks", Cell::Count(fact.blocks as u64)),
        ("tail", Cell::Count(fact.tail as u64)),
        ("exponent", Cell::Fraction(fact.exponent())),
        ("block_parikh", Cell::Text(fact.block_parikh.to_string())),
    ])
}

/// One typed table cell; exact kinds grow an adjacent `*_dec` column.
pub(crate) enum Cell {
    Count(u64),
    Int(BigInt),
    Exact(QuadraticNumber),
    Fraction(Ratio<u64>),
    Text(String),
    Flag(bool),
}

pub(crate) struct Row {
    cells: Vec<(&'static str, Cell)>,
}

impl Row {
    pub(crate) fn new(cells: Vec<(&'static str, Cell)>) -> Self {
        Row { cells }
    }
}

pub(crate) struct Report {
    pub(crate) rows: Vec<Row>,
}

/// Flatten a row to (column, rendering) pairs for the textual formats.
fn expand_row(row: &Row, digits: usize) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, cell) in &row.cells {
        match cell {
            Cell::Count(v) => out.push((name.to_string(), v.to_string())),
            Cell::Int(v) => out.push((name.to_string(), v.to_string())),
            Cell::Text(v) => out.push((name.to_string(), v.clone())),
            Cell::Flag(v) => out.push((name.to_string(), if *v { "yes" } else { "no" }.into())),
            Cell::Exact(q) => {
                out.push((name.to_string(), q.to_string()));
                out.push((format!("{name}_dec"), q.approx_decimal(digits)));
            }
            Cell::Fraction(f) => {
                out.push((name.to_string(), format!("{}/{}", f.numer(), f.denom())));
                out.push((format!("{name}_dec"), fraction_decimal(f, digits)));
            }
        }
    }
    out
}

fn fraction_decimal(f: &Ratio<u64>, digits: usize) -> String {
    QuadraticNumber::rational(BigInt::from(*f.numer()), BigInt::from(*f.denom()))
        .expect("fraction denominators are nonzero")
        .approx_decimal(digits)
}

fn json_row(row: &Row, digits: usize) -> Value {
    let mut map = serde_json::Map::new();
    for (name, cell) in &row.cells {
        match cell {
            Cell::Count(v) => {
                map.insert(name.to_string(), json!(v));
            }
            Cell::Int(v) => {
                // numbers beyond i64 stay exact as strings
                let rendered = i64::try_from(v.clone())
                    .map(|n| json!(n))
                    .unwrap_or_else(|_| json!(v.to_string()));
                map.insert(name.to_string(), rendered);
            }
            Cell::Text(v) => {
                map.insert(name.to_string(), json!(v));
            }
            Cell::Flag(v) => {
                map.insert(name.to_string(), json!(v));
            }
            Cell::Exact(q) => {
                map.insert(name.to_string(), json!(q.to_string()));
                map.insert(format!("{name}_dec"), json!(q.approx_decimal(digits)));
            }
            Cell::Fraction(f) => {
                map.insert(name.to_string(), json!(format!("{}/{}", f.numer(), f.denom())));
                map.insert(format!("{name}_dec"), json!(fraction_decimal(f, digits)));
            }
        }
    }
    Value::Object(map)
}

/// Write to stdout, exiting with the conventional SIGPIPE code when the
/// reading end has gone away (e.g. piping into `head`).
pub(crate) fn emit(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .is_err()
    {
        std::process::exit(141);
    }
}

pub(crate) fn print_report(report: &Report, format: Format, digits: usize) {
    emit(&render_report(report, format, digits));
}

fn render_report(report: &Report, format: Format, digits: usize) -> String {
    match format {
        Format::Txt => render_txt(report, digits),
        Format::Csv => render_csv(report, digits),
        Format::Json => {
            let rows: Vec<Value> = report.rows.iter().map(|r| json_row(r, digits)).collect();
            let mut text = serde_json::to_string_pretty(&Value::Array(rows))
                .expect("report serialization cannot fail");
            text.push('\n');
            text
        }
    }
}

fn render_txt(report: &Report, digits: usize) -> String {
    if report.rows.is_empty() {
        return String::new();
    }
    let expanded: Vec<Vec<(String, String)>> = report
        .rows
        .iter()
        .map(|row| expand_row(row, digits))
        .collect();
    let mut widths: Vec<usize> = expanded[0].iter().map(|(name, _)| name.len()).collect();
    for row in &expanded {
        debug_assert_eq!(row.len(), widths.len(), "rows must share one schema");
        for (i, (_, value)) in row.iter().enumerate() {
            widths[i] = widths[i].max(value.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = expanded[0]
        .iter()
        .enumerate()
        .map(|(i, (name, _))| format!("{:<1$}", name, widths[i]))
        .collect();
    out.push_str(header.join("  ").trim_end());
    out.push('\n');
    for row in &expanded {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, (_, value))| format!("{:<1$}", value, widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(report: &Report, digits: usize) -> String {
    if report.rows.is_empty() {
        return String::new();
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    let expanded: Vec<Vec<(String, String)>> = report
        .rows
        .iter()
        .map(|row| expand_row(row, digits))
        .collect();
    let header: Vec<&str> = expanded[0].iter().map(|(name, _)| name.as_str()).collect();
    writer.write_record(&header).expect("csv write to memory");
    for row in &expanded {
        let record: Vec<&str> = row.iter().map(|(_, value)| value.as_str()).collect();
        writer.write_record(&record).expect("csv write to memory");
    }
    let bytes = writer.into_inner().expect("csv flush to memory");
    String::from_utf8(bytes).expect("csv output is utf-8")
}
