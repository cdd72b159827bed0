//! Closed-form predictions for repetitions in the Fibonacci word, kept
//! strictly separate from the brute-force scans so each side checks the
//! other: every formula here is parity-split in j, and the floor-based
//! variants are recomputed in exact arithmetic on every call.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::numtheory::fibonacci;

/// The closed-form values attached to the Fibonacci word f_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPrediction {
    pub j: u64,
    /// F_j, the period all other fields refer to.
    pub period: BigInt,
    /// Largest abelian-power exponent among starts 1..=F_j.
    pub max_power_exponent: BigInt,
    /// Length of the longest prefix repetition of period F_j.
    pub lp: BigInt,
    /// Minimal abelian period of the finite word f_j.
    pub min_ab_period: BigInt,
    /// |√5 − lp/F_j²| exactly.
    pub sqrt5_gap: QuadraticNumber,
}

fn require_index(j: u64, least: u64) -> Result<()> {
    if j < least {
        return Err(Error::OutOfRange(format!(
            "index must be at least {least}, got {j}"
        )));
    }
    Ok(())
}

/// Largest abelian-power exponent of period F_j among starts 1..=F_j:
/// F_{j+1} + F_{j−1} − 1 for even j, − 2 for odd j. Also recomputed as
/// ⌊φ·F_j + F_{j−1}⌋ − 1 in exact arithmetic; the two must agree.
pub fn max_exp_formula(j: u64) -> Result<BigInt> {
    require_index(j, 2)?;
    let shift = if j.is_multiple_of(2) { 1 } else { 2 };
    let value = fibonacci(j + 1) + fibonacci(j - 1) - BigInt::from(shift);

    let scaled = QuadraticNumber::golden_ratio()
        .try_mul(&QuadraticNumber::from_int(fibonacci(j)))?
        .try_add(&QuadraticNumber::from_int(fibonacci(j - 1)))?;
    let floored = scaled.floor() - BigInt::one();
    assert_eq!(value, floored, "parity form disagrees with exact floor at j = {j}");
    Ok(value)
}

/// Length of the longest prefix of the golden-slope word that is an
/// abelian repetition of period F_j: F_j(F_{j+1} + F_{j−1} + 1) − 2 for
/// even j, F_j(F_{j+1} + F_{j−1}) − 2 for odd j.
pub fn lp_formula(j: u64) -> Result<BigInt> {
    require_index(j, 2)?;
    let parity = u64::from(j.is_multiple_of(2));
    let inner = fibonacci(j + 1) + fibonacci(j - 1) + BigInt::from(parity);
    Ok(fibonacci(j) * inner - BigInt::from(2))
}

/// Minimal abelian period of the finite word f_j: F_n with n = ⌊j/2⌋ when
/// j ≡ 0, 1, 2 (mod 4) and n = 1 + ⌊j/2⌋ when j ≡ 3 (mod 4).
pub fn min_ab_period_fib(j: u64) -> Result<BigInt> {
    require_index(j, 3)?;
    let n = if j % 4 == 3 { 1 + j / 2 } else { j / 2 };
    Ok(fibonacci(n))
}

/// |√5 − lp_formula(j)/F_j²| as an exact element of Q(√5). Callers render
/// it with approx_decimal; the exact value settles any precision dispute.
pub fn sqrt5_gap(j: u64) -> Result<QuadraticNumber> {
    require_index(j, 2)?;
    let period = fibonacci(j);
    let ratio = QuadraticNumber::rational(lp_formula(j)?, &period * &period)?;
    Ok(QuadraticNumber::sqrt(5)?.try_sub(&ratio)?.abs())
}

/// Bundle of all predictions for one j; the minimal-period closed form
/// only starts at j = 3, so the bundle does too.
pub fn fib_prediction(j: u64) -> Result<FibPrediction> {
    require_index(j, 3)?;
    Ok(FibPrediction {
        j,
        period: fibonacci(j),
        max_power_exponent: max_exp_formula(j)?,
        lp: lp_formula(j)?,
        min_ab_period: min_ab_period_fib(j)?,
        sqrt5_gap: sqrt5_gap(j)?,
    })
}
