//! The `verify` targets: each one recomputes a family of closed-form
//! values two independent ways and reports per-row PASS/FAIL.
//!
//! Every target works over a documented desk-scale range and refuses
//! requests beyond it, so a clean exit 0 is always a complete check.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{print_report, Cell, Format, Report, Row};
use crate::abelian::{
    best_power_over_starts, max_power_run, min_abelian_period, power_run_table,
    theorem6_predicate, Tier,
};
use crate::bijection::{IntervalPartition, ParikhClass};
use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::formulas::{lp_formula, max_exp_formula, min_ab_period_fib, sqrt5_gap};
use crate::numtheory::{best_approx_check, convergents, fibonacci, golden_identity_check};
use crate::words::{fibonacci_word, sturmian_prefix, SturmianParams};

pub(crate) struct VerifyArgs {
    pub target: String,
    pub j: Option<String>,
    pub max_m: Option<usize>,
    pub max_k: Option<u64>,
    pub format: Format,
    pub digits: usize,
}

pub(crate) fn run(args: &VerifyArgs) -> Result<i32> {
    let (report, pass) = match args.target.as_str() {
        "table1" => table1(parse_range(args.j.as_deref(), (2, 11), (2, 11))?)?,
        "table2" => table2(parse_range(args.j.as_deref(), (3, 16), (3, 16))?)?,
        "theorem6" => theorem6(args.max_m.unwrap_or(200), args.max_k.unwrap_or(10))?,
        "lexorder" => bijection_sweep(args.max_m.unwrap_or(60), BijectionCheck::LexOrder)?,
        "identity" => identity(parse_range(args.j.as_deref(), (1, 40), (1, 200))?)?,
        "parikh-split" => {
            bijection_sweep(args.max_m.unwrap_or(60), BijectionCheck::ParikhSplit)?
        }
        "proposition6" => proposition6(parse_range(args.j.as_deref(), (2, 9), (2, 10))?)?,
        "corollary5" => corollary5()?,
        other => {
            return Err(Error::Parse(format!(
                "unknown verify target {other:?}; expected one of table1, table2, \
                 theorem6, lexorder, identity, parikh-split, proposition6, corollary5"
            )))
        }
    };
    print_report(&report, args.format, args.digits);
    if args.format == Format::Txt {
        super::emit(&format!("result: {}\n", if pass { "PASS" } else { "FAIL" }));
    }
    Ok(if pass { 0 } else { 1 })
}

/// Inclusive `a..b` (or single index) within the allowed window; the
/// default applies when the flag is absent.
fn parse_range(
    text: Option<&str>,
    default: (u64, u64),
    allowed: (u64, u64),
) -> Result<(u64, u64)> {
    let (lo, hi) = match text {
        None => default,
        Some(text) => {
            let parse = |part: &str| -> Result<u64> {
                part.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid index {part:?}")))
            };
            match text.split_once("..") {
                Some((a, b)) => (parse(a)?, parse(b)?),
                None => {
                    let j = parse(text)?;
                    (j, j)
                }
            }
        }
    };
    if lo > hi || lo < allowed.0 || hi > allowed.1 {
        return Err(Error::OutOfRange(format!(
            "--j must lie within {}..{}",
            allowed.0, allowed.1
        )));
    }
    Ok((lo, hi))
}

fn status(ok: bool) -> Cell {
    Cell::Text(if ok { "PASS" } else { "FAIL" }.to_string())
}

fn fib_usize(j: u64) -> Result<usize> {
    fibonacci(j)
        .to_usize()
        .ok_or_else(|| Error::OutOfRange(format!("index {j} overflows the machine word")))
}

/// Longest-prefix lengths and the scaled approximation gaps, checked
/// against frozen reference values and (for small indices) a direct scan.
fn table1((lo, hi): (u64, u64)) -> Result<(Report, bool)> {
    const LP_REFERENCE: [u64; 10] = [8, 19, 58, 142, 388, 985, 2616, 6763, 17798, 46366];
    const GAP_REFERENCE: [&str; 10] = [
        "23.6", "12.5", "8.393", "1.732", "5.98", "0.25", "2.69", "0.037", "1.087", "0.005",
    ];
    // beyond this the oracle prefix scan would leave interactive scale
    const ORACLE_LIMIT: u64 = 9;

    let alpha = QuadraticNumber::golden_slope();
    let hundred = QuadraticNumber::from_int(100);
    let mut rows = Vec::new();
    let mut pass = true;
    for j in lo..=hi {
        let idx = (j - 2) as usize;
        let formula = lp_formula(j)?;
        let reference = BigInt::from(LP_REFERENCE[idx]);
        let gap_reference = GAP_REFERENCE[idx];
        // the reference strings fix how many digits each row prints
        let digits = gap_reference.split('.').nth(1).map_or(0, str::len);
        let gap = sqrt5_gap(j)?.try_mul(&hundred)?.approx_decimal(digits);
        let oracle = if j <= ORACLE_LIMIT {
            let m = fib_usize(j)?;
            let (length, _) = crate::abelian::longest_prefix_rep(&alpha, m)?
                .ok_or_else(|| Error::OutOfRange(format!("no prefix repetition at m = {m}")))?;
            Some(BigInt::from(length))
        } else {
            None
        };
        let ok = formula == reference
            && oracle.as_ref().is_none_or(|o| *o == reference)
            && gap == gap_reference;
        pass &= ok;
        rows.push(Row::new(vec![
            ("j", Cell::Count(j)),
            ("lp_formula", Cell::Int(formula)),
            ("lp_reference", Cell::Int(reference)),
            (
                "lp_scan",
                Cell::Text(oracle.map_or("-".into(), |o| o.to_string())),
            ),
            ("gap_x100", Cell::Text(gap)),
            ("gap_reference", Cell::Text(gap_reference.to_string())),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}

/// Minimal abelian periods of the finite Fibonacci words: closed form
/// against the direct search.
fn table2((lo, hi): (u64, u64)) -> Result<(Report, bool)> {
    let mut rows = Vec::new();
    let mut pass = true;
    for j in lo..=hi {
        let formula = min_ab_period_fib(j)?;
        let word = fibonacci_word(j)?;
        let fact = min_abelian_period(&word, Tier::Relaxed)?
            .expect("every nonempty word has a relaxed factorization");
        let ok = BigInt::from(fact.period) == formula;
        pass &= ok;
        rows.push(Row::new(vec![
            ("j", Cell::Count(j)),
            ("period_formula", Cell::Int(formula)),
            ("period_scan", Cell::Count(fact.period as u64)),
            ("head", Cell::Count(fact.head as u64)),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}

/// Orbit-gap predicate against the letter-level scan.
///
/// Weak form: the predicate holds iff some exponent-k power with period m
/// starts within the first m(k+6) positions. Strong form: it starts at
/// position m exactly. Violations get one row each; the summary row counts
/// the sweep.
fn theorem6(max_m: usize, max_k: u64) -> Result<(Report, bool)> {
    if !(1..=400).contains(&max_m) || !(2..=12).contains(&max_k) {
        return Err(Error::OutOfRange(
            "theorem6 supports --max-m 1..=400 and --max-k 2..=12".to_string(),
        ));
    }
    let alpha = QuadraticNumber::golden_slope();
    let params = SturmianParams::new(alpha.clone(), QuadraticNumber::from_int(0))?;
    let kk = max_k as usize;
    // window m(k+6) plus k more blocks of headroom for the run at its edge
    let prefix = sturmian_prefix(&params, max_m * (2 * kk + 6));

    let mut rows = Vec::new();
    let mut pairs = 0u64;
    for m in 1..=max_m {
        let runs = power_run_table(&prefix, m)?;
        for k in 2..=max_k {
            pairs += 1;
            let window = m * (k as usize + 6);
            let weak = theorem6_predicate(&alpha, m, k, false)?;
            let first = runs[..window.min(runs.len())]
                .iter()
                .position(|&r| r >= k as usize)
                .map(|s| s + 1);
            match (weak, first) {
                (true, None) => rows.push(violation_row(
                    "weak",
                    m,
                    k,
                    format!("predicate holds but no exponent-{k} power starts by {window}"),
                )),
                (false, Some(n)) => rows.push(violation_row(
                    "weak",
                    m,
                    k,
                    format!("predicate fails but a power starts at {n}"),
                )),
                _ => {}
            }
            let strong = theorem6_predicate(&alpha, m, k, true)?;
            if strong && runs[m - 1] < k as usize {
                rows.push(violation_row(
                    "strong",
                    m,
                    k,
                    format!("strong predicate holds but no exponent-{k} power starts at {m}"),
                ));
            }
        }
    }
    let pass = rows.is_empty();
    rows.push(Row::new(vec![
        ("kind", Cell::Text("summary".to_string())),
        ("m", Cell::Text("-".to_string())),
        ("k", Cell::Text("-".to_string())),
        (
            "detail",
            Cell::Text(format!("checked {pairs} (m, k) pairs, both forms")),
        ),
        ("status", status(pass)),
    ]));
    Ok((Report { rows }, pass))
}

fn violation_row(kind: &str, m: usize, k: u64, detail: String) -> Row {
    Row::new(vec![
        ("kind", Cell::Text(kind.to_string())),
        ("m", Cell::Text(m.to_string())),
        ("k", Cell::Text(k.to_string())),
        ("detail", Cell::Text(detail)),
        ("status", status(false)),
    ])
}

/// Slopes exercised by the bijection sweeps: the golden slope plus four
/// unrelated quadratic irrationals in (0, 1).
fn sweep_slopes() -> Result<Vec<(&'static str, QuadraticNumber)>> {
    Ok(vec![
        ("fib", QuadraticNumber::golden_slope()),
        ("quad:-2,1,1,5", QuadraticNumber::new(-2, 1, 1, 5)?),
        ("quad:7,-1,10,5", QuadraticNumber::new(7, -1, 10, 5)?),
        ("quad:-1,1,1,2", QuadraticNumber::new(-1, 1, 1, 2)?),
        ("quad:0,1,2,2", QuadraticNumber::new(0, 1, 2, 2)?),
    ])
}

enum BijectionCheck {
    LexOrder,
    ParikhSplit,
}

/// Per-slope sweep over factor lengths 1..=max_m.
///
/// LexOrder: exactly m+1 pairwise distinct factors, listed in strictly
/// decreasing lexicographic order. ParikhSplit: the factors realize exactly
/// two frequency vectors of norm m whose letter counts differ by one.
fn bijection_sweep(max_m: usize, check: BijectionCheck) -> Result<(Report, bool)> {
    if !(1..=120).contains(&max_m) {
        return Err(Error::OutOfRange(
            "bijection sweeps support --max-m 1..=120".to_string(),
        ));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for (label, alpha) in sweep_slopes()? {
        let mut first_failure: Option<String> = None;
        for m in 1..=max_m {
            let partition = IntervalPartition::new(&alpha, m)?;
            let factors = partition.all_factors()?;
            let problem = match check {
                BijectionCheck::LexOrder => {
                    let mut seen = HashSet::new();
                    if factors.len() != m + 1 {
                        Some(format!("m={m}: {} factors, expected {}", factors.len(), m + 1))
                    } else if !factors
                        .iter()
                        .all(|f| seen.insert(f.factor.letters().to_vec()))
                    {
                        Some(format!("m={m}: duplicate factor"))
                    } else if !partition.is_lex_decreasing()? {
                        Some(format!("m={m}: factors out of lexicographic order"))
                    } else {
                        None
                    }
                }
                BijectionCheck::ParikhSplit => {
                    let (v1, v2, _) = partition.parikh_split()?;
                    if v1.norm() != m as u64 || v2.norm() != m as u64 {
                        Some(format!("m={m}: class vector norms differ from {m}"))
                    } else if v1.counts()[0] != v2.counts()[0] + 1 {
                        Some(format!("m={m}: letter counts do not split by one"))
                    } else {
                        factors.iter().find_map(|f| {
                            let expected = match f.parikh_class {
                                ParikhClass::V1 => &v1,
                                ParikhClass::V2 => &v2,
                            };
                            (f.factor.parikh() != *expected)
                                .then(|| format!("m={m}, k={}: vector mismatch", f.k))
                        })
                    }
                }
            };
            if let Some(problem) = problem {
                first_failure.get_or_insert(problem);
            }
        }
        let ok = first_failure.is_none();
        pass &= ok;
        rows.push(Row::new(vec![
            ("alpha", Cell::Text(label.to_string())),
            ("max_m", Cell::Count(max_m as u64)),
            (
                "detail",
                Cell::Text(first_failure.unwrap_or_else(|| "-".to_string())),
            ),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}

/// The golden identity at each index, including the alternating sign.
fn identity((lo, hi): (u64, u64)) -> Result<(Report, bool)> {
    let mut rows = Vec::new();
    let mut pass = true;
    for j in lo..=hi {
        let identity = golden_identity_check(j)?;
        let expected_sign: i8 = if j % 2 == 0 { 1 } else { -1 };
        // lhs is the independently computed difference, so the sign lives there
        let ok = identity.equal && identity.lhs.sign() == expected_sign;
        pass &= ok;
        rows.push(Row::new(vec![
            ("j", Cell::Count(j)),
            ("lhs", Cell::Exact(identity.lhs)),
            ("rhs", Cell::Exact(identity.rhs)),
            ("sign", Cell::Text(format!("{expected_sign:+}"))),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}

/// Maximal abelian powers at Fibonacci periods: the closed form against
/// the best over all starts and against the run anchored at position m.
fn proposition6((lo, hi): (u64, u64)) -> Result<(Report, bool)> {
    let alpha = QuadraticNumber::golden_slope();
    let params = SturmianParams::new(alpha.clone(), QuadraticNumber::from_int(0))?;
    let mut rows = Vec::new();
    let mut pass = true;
    for j in lo..=hi {
        let formula = max_exp_formula(j)?;
        let (start, exponent) = best_power_over_starts(&alpha, j)?;
        let m = fib_usize(j)?;
        let expected = formula
            .to_usize()
            .ok_or_else(|| Error::OutOfRange(format!("exponent at j = {j} overflows")))?;
        let prefix = sturmian_prefix(&params, m * (expected + 3));
        let run_at_m = max_power_run(&prefix, m, m)?;
        let ok = exponent == expected && run_at_m == expected;
        pass &= ok;
        rows.push(Row::new(vec![
            ("j", Cell::Count(j)),
            ("exponent_formula", Cell::Int(formula)),
            ("best_exponent", Cell::Count(exponent as u64)),
            ("best_start", Cell::Count(start as u64)),
            ("run_at_m", Cell::Count(run_at_m as u64)),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}

/// Continued-fraction facts behind the power analysis: convergents of the
/// golden slope are best approximations, and the orbit prefix stays on one
/// side of each convergent-denominator point.
fn corollary5() -> Result<(Report, bool)> {
    let alpha = QuadraticNumber::golden_slope();
    let mut rows = Vec::new();
    let mut pass = true;

    // every convergent with denominator <= 10^4; index 0 and 1 are the
    // trivial seeds the best-approximation notion excludes
    let bound = BigInt::from(10_000);
    for conv in convergents(&alpha, 25)? {
        if conv.index < 2 {
            continue;
        }
        if conv.denominator > bound {
            break;
        }
        let ok = best_approx_check(&alpha, conv.index)?;
        pass &= ok;
        rows.push(Row::new(vec![
            ("kind", Cell::Text("best-approx".to_string())),
            ("index", Cell::Count(conv.index as u64)),
            ("value", Cell::Text(conv.to_string())),
            ("status", status(ok)),
        ]));
    }

    // {i alpha} for 0 < i < F_j stays strictly on one side of {F_j alpha}
    for j in 2..=15u64 {
        let m = fib_usize(j)?;
        let pivot = alpha.try_mul(&QuadraticNumber::from_int(m as i64))?.frac();
        let lower = pivot.cmp_checked(&QuadraticNumber::rational(1, 2)?)?.is_lt();
        let mut ok = true;
        let mut point = alpha.frac();
        for _ in 1..m {
            let above = point.cmp_checked(&pivot)?.is_gt();
            if above != lower {
                ok = false;
                break;
            }
            point = point.try_add(&alpha)?.frac();
        }
        pass &= ok;
        rows.push(Row::new(vec![
            ("kind", Cell::Text("side-condition".to_string())),
            ("index", Cell::Count(j)),
            ("value", Cell::Text(format!("F_{j} = {m}"))),
            ("status", status(ok)),
        ]));
    }
    Ok((Report { rows }, pass))
}
