//! Fibonacci numbers, continued fractions, convergents, and exact
//! Diophantine-approximation predicates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;

/// F_j with F_0 = F_1 = 1, F_{j+1} = F_j + F_{j-1}.
pub fn fibonacci(j: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 0..j {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// A finite prefix [a_0; a_1, a_2, ...] of a continued-fraction expansion.
///
/// a_i >= 1 for i >= 1. For rational inputs the expansion is complete once
/// the Gauss map hits zero, so the prefix may be shorter than requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    coefficients: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coefficients.iter().enumerate() {
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "; {a}")?,
                _ => write!(f, ", {a}")?,
            }
        }
        write!(f, "]")
    }
}

/// First `count` continued-fraction coefficients of a positive value,
/// computed by the exact Gauss map: a_i is the floor of the current tail
/// and the tail is inverted in exact arithmetic.
pub fn cf_expand(alpha: &QuadraticNumber, count: usize) -> Result<ContinuedFraction> {
    if alpha.sign() <= 0 {
        return Err(Error::OutOfRange(format!(
            "continued fractions require a positive value, got {alpha}"
        )));
    }
    if count == 0 {
        return Err(Error::OutOfRange("coefficient count must be at least 1".into()));
    }
    let mut coefficients = Vec::with_capacity(count);
    let mut x = alpha.clone();
    loop {
        let a = x.floor();
        let tail = x
            .try_sub(&QuadraticNumber::from_int(a.clone()))
            .expect("integer operand is always compatible");
        coefficients.push(a);
        if coefficients.len() == count || tail.is_zero() {
            break;
        }
        x = QuadraticNumber::from_int(1)
            .try_div(&tail)
            .expect("tail is nonzero");
    }
    Ok(ContinuedFraction { coefficients })
}

/// One truncation n_i/m_i of a continued-fraction expansion.
///
/// The fraction is automatically in lowest terms; 0/1 (for values below 1)
/// carries index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub numerator: BigInt,
    pub denominator: BigInt,
    pub index: usize,
}

impl Convergent {
    pub fn value(&self) -> QuadraticNumber {
        QuadraticNumber::rational(self.numerator.clone(), self.denominator.clone())
            .expect("convergent denominators are positive")
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Convergents from the first `count` coefficients, via the standard
/// recurrence p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2}.
///
/// For rational inputs the list ends with the value itself and may be
/// shorter than requested.
pub fn convergents(alpha: &QuadraticNumber, count: usize) -> Result<Vec<Convergent>> {
    let cf = cf_expand(alpha, count)?;
    let mut result = Vec::with_capacity(cf.len());
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_prev2, mut q_prev2) = (BigInt::zero(), BigInt::one());
    for (index, a) in cf.coefficients().iter().enumerate() {
        let p = a * &p_prev + &p_prev2;
        let q = a * &q_prev + &q_prev2;
        result.push(Convergent {
            numerator: p.clone(),
            denominator: q.clone(),
            index,
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    Ok(result)
}

/// Both closed forms of the golden-ratio convergent identity
/// φ - F_{j+1}/F_j = (φ-1) - F_{j-1}/F_j = (-1)^j / (F_j(φF_j + F_{j-1})),
/// evaluated exactly in Q(√5).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenIdentity {
    pub lhs: QuadraticNumber,
    pub mid: QuadraticNumber,
    pub rhs: QuadraticNumber,
    pub equal: bool,
}

pub fn golden_identity_check(j: u64) -> Result<GoldenIdentity> {
    if j == 0 {
        return Err(Error::OutOfRange("identity requires j >= 1".into()));
    }
    let phi = QuadraticNumber::golden_ratio();
    let f_j = QuadraticNumber::from_int(fibonacci(j));
    let f_next = fibonacci(j + 1);
    let f_prev = fibonacci(j - 1);

    let lhs = &phi - &QuadraticNumber::rational(f_next, fibonacci(j))?;
    let mid = &(&phi - &QuadraticNumber::from_int(1))
        - &QuadraticNumber::rational(f_prev.clone(), fibonacci(j))?;
    let denominator = &f_j * &(&(&phi * &f_j) + &QuadraticNumber::from_int(f_prev));
    let numerator = QuadraticNumber::from_int(if j.is_multiple_of(2) { 1 } else { -1 });
    let rhs = numerator.try_div(&denominator)?;

    let equal = lhs == mid && mid == rhs;
    Ok(GoldenIdentity { lhs, mid, rhs, equal })
}

/// Whether the i-th convergent n_i/m_i of alpha beats every other fraction
/// with denominator at most m_i: |n_i - m_i alpha| < |n - m alpha| for all
/// 0 < m <= m_i, n the nearest integer to m*alpha, n/m != n_i/m_i.
///
/// Exhaustive exact scan, so the denominator must fit in a machine word.
pub fn best_approx_check(alpha: &QuadraticNumber, i: usize) -> Result<bool> {
    if i <= 1 {
        return Err(Error::OutOfRange(format!("convergent index must exceed 1, got {i}")));
    }
    let convs = convergents(alpha, i + 1)?;
    let conv = convs.get(i).ok_or_else(|| {
        Error::OutOfRange(format!("expansion terminates before index {i}"))
    })?;
    let m_i = conv.denominator.to_u64().ok_or_else(|| {
        Error::OutOfRange("convergent denominator too large for exhaustive scan".into())
    })?;

    let best_err = QuadraticNumber::from_int(conv.numerator.clone())
        .try_sub(&alpha.try_mul(&QuadraticNumber::from_int(conv.denominator.clone()))?)?
        .abs();

    for m in 1..=m_i {
        let scaled = alpha.try_mul(&QuadraticNumber::from_int(m))?;
        let n = scaled.nearest_int();
        if &n * &conv.denominator == &conv.numerator * &BigInt::from(m) {
            continue;
        }
        let err = QuadraticNumber::from_int(n).try_sub(&scaled)?.abs();
        if best_err.cmp_checked(&err)? != std::cmp::Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All coprime pairs (n, m) with 1 <= m <= m_max and |n/m - alpha| < 1/(A m²),
/// decided exactly. A must be a positive rational (the irrational boundary
/// A = √5 is approached through rationals).
pub fn hurwitz_solutions(
    alpha: &QuadraticNumber,
    a: &QuadraticNumber,
    m_max: u64,
) -> Result<Vec<(BigInt, u64)>> {
    if !a.is_rational() || a.sign() <= 0 {
        return Err(Error::OutOfRange(format!(
            "approximation strength must be a positive rational, got {a}"
        )));
    }
    if m_max == 0 {
        return Err(Error::OutOfRange("denominator bound must be at least 1".into()));
    }
    let mut solutions = Vec::new();
    for m in 1..=m_max {
        let m_int = QuadraticNumber::from_int(m);
        let scaled = alpha.try_mul(&m_int)?;
        // |n/m - alpha| < 1/(A m²) is |n - m alpha| < 1/(A m)
        let bound = QuadraticNumber::from_int(1).try_div(&a.try_mul(&m_int)?)?;
        let mut n = scaled.try_sub(&bound)?.floor();
        let hi = scaled.try_add(&bound)?.floor() + BigInt::one();
        while n <= hi {
            let err = QuadraticNumber::from_int(n.clone()).try_sub(&scaled)?.abs();
            if err.cmp_checked(&bound)? == std::cmp::Ordering::Less
                && n.gcd(&BigInt::from(m)).is_one()
            {
                solutions.push((n.clone(), m));
            }
            n += 1;
        }
    }
    Ok(solutions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden_slope() -> QuadraticNumber {
        QuadraticNumber::golden_slope()
    }

    fn coeffs(cf: &ContinuedFraction) -> Vec<i64> {
        cf.coefficients().iter().map(|a| a.to_i64().unwrap()).collect()
    }

    #[test]
    fn fibonacci_paper_indexing() {
        let seq: Vec<i64> = (0..12).map(|j| fibonacci(j).to_i64().unwrap()).collect();
        assert_eq!(seq, [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
        assert_eq!(fibonacci(4), BigInt::from(5));
        assert_eq!(fibonacci(11), BigInt::from(144));
    }

    #[test]
    fn gauss_map_expansions() {
        let cf = cf_expand(&golden_slope(), 5).unwrap();
        assert_eq!(coeffs(&cf), [0, 1, 1, 1, 1]);
        assert_eq!(cf.to_string(), "[0; 1, 1, 1, 1]");

        // rational input terminates early
        let half = QuadraticNumber::rational(1, 2).unwrap();
        assert_eq!(coeffs(&cf_expand(&half, 5).unwrap()), [0, 2]);

        let sqrt5_minus_2 = QuadraticNumber::new(-2, 1, 1, 5).unwrap();
        assert_eq!(coeffs(&cf_expand(&sqrt5_minus_2, 4).unwrap()), [0, 4, 4, 4]);

        let phi = QuadraticNumber::golden_ratio();
        assert_eq!(coeffs(&cf_expand(&phi, 6).unwrap()), [1, 1, 1, 1, 1, 1]);

        assert_eq!(coeffs(&cf_expand(&QuadraticNumber::from_int(3), 5).unwrap()), [3]);
    }

    #[test]
    fn cf_domain_errors() {
        assert!(matches!(
            cf_expand(&QuadraticNumber::from_int(0), 3),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            cf_expand(&QuadraticNumber::from_int(-2), 3),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            cf_expand(&golden_slope(), 0),
            Err(Error::OutOfRange(_))
        ));
    }

    fn convergent_pairs(alpha: &QuadraticNumber, count: usize) -> Vec<(i64, i64)> {
        convergents(alpha, count)
            .unwrap()
            .iter()
            .map(|c| (c.numerator.to_i64().unwrap(), c.denominator.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn convergent_sequences() {
        assert_eq!(
            convergent_pairs(&golden_slope(), 6),
            [(0, 1), (1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]
        );
        assert_eq!(
            convergent_pairs(&QuadraticNumber::golden_ratio(), 4),
            [(1, 1), (2, 1), (3, 2), (5, 3)]
        );
        let third = QuadraticNumber::rational(1, 3).unwrap();
        assert_eq!(convergent_pairs(&third, 2), [(0, 1), (1, 3)]);
        // request beyond a finite expansion returns what exists
        assert_eq!(convergent_pairs(&third, 7), [(0, 1), (1, 3)]);
    }

    #[test]
    fn golden_denominators_are_fibonacci() {
        let convs = convergents(&golden_slope(), 26).unwrap();
        for c in &convs {
            assert_eq!(c.denominator, fibonacci(c.index as u64), "index {}", c.index);
        }
    }

    #[test]
    fn convergent_recurrence_and_reduction() {
        let convs = convergents(&golden_slope(), 20).unwrap();
        for c in &convs {
            assert!(c.numerator.gcd(&c.denominator).is_one());
        }
        // denominators strictly increase beyond the first two terms
        for pair in convs.windows(2).skip(1) {
            assert!(pair[1].denominator > pair[0].denominator);
        }
    }

    #[test]
    fn golden_identity_small_cases() {
        // j = 1: both sides are φ - 2 = -1/(φ + 1)
        let id = golden_identity_check(1).unwrap();
        let phi = QuadraticNumber::golden_ratio();
        assert_eq!(id.lhs, &phi - &QuadraticNumber::from_int(2));
        let expected = QuadraticNumber::from_int(-1)
            .try_div(&(&phi + &QuadraticNumber::from_int(1)))
            .unwrap();
        assert_eq!(id.rhs, expected);
        assert!(id.equal);

        // j = 2: φ - 3/2 = +1/(2(2φ + 1))
        let id = golden_identity_check(2).unwrap();
        assert_eq!(id.lhs, &phi - &QuadraticNumber::rational(3, 2).unwrap());
        let expected = QuadraticNumber::from_int(1)
            .try_div(
                &(&QuadraticNumber::from_int(2)
                    * &(&(&QuadraticNumber::from_int(2) * &phi) + &QuadraticNumber::from_int(1))),
            )
            .unwrap();
        assert_eq!(id.rhs, expected);
        assert!(id.equal);

        assert!(matches!(golden_identity_check(0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn golden_identity_holds_with_alternating_sign() {
        for j in 1..=40u64 {
            let id = golden_identity_check(j).unwrap();
            assert!(id.equal, "identity failed at j = {j}");
            let expected_sign = if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(id.lhs.sign(), expected_sign, "sign at j = {j}");
        }
    }

    #[test]
    fn best_approximation_at_convergents() {
        let alpha = golden_slope();
        assert!(best_approx_check(&alpha, 4).unwrap());
        assert!(best_approx_check(&alpha, 2).unwrap());
        for i in 2..=12 {
            assert!(best_approx_check(&alpha, i).unwrap(), "index {i}");
        }

        let sqrt5_minus_2 = QuadraticNumber::new(-2, 1, 1, 5).unwrap();
        assert!(best_approx_check(&sqrt5_minus_2, 3).unwrap());

        assert!(matches!(best_approx_check(&alpha, 1), Err(Error::OutOfRange(_))));
        // rational value whose expansion stops before the requested index
        let third = QuadraticNumber::rational(1, 3).unwrap();
        assert!(matches!(best_approx_check(&third, 5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn hurwitz_below_sqrt5_contains_convergents() {
        let alpha = golden_slope();
        let two = QuadraticNumber::from_int(2);
        let sols = hurwitz_solutions(&alpha, &two, 100).unwrap();
        // every convergent denominator <= 100 appears; from index 1 on the
        // convergent pair itself qualifies (m|n - m alpha| stays below 1/2,
        // while 0/1 misses with error alpha > 1/2)
        for c in convergents(&alpha, 11).unwrap() {
            let m = c.denominator.to_u64().unwrap();
            assert!(sols.iter().any(|(_, sm)| *sm == m), "missing denominator {m}");
            if c.index >= 1 {
                let pair = (c.numerator.clone(), m);
                assert!(sols.contains(&pair), "missing convergent {c}");
            }
        }
    }

    #[test]
    fn hurwitz_above_sqrt5_is_empty_for_golden() {
        // inf over m of m|n - m alpha| is |1 - alpha| ≈ 0.382 at m = 1,
        // above 1/3, so no solutions exist at all
        let alpha = golden_slope();
        let three = QuadraticNumber::from_int(3);
        let sols = hurwitz_solutions(&alpha, &three, 100_000).unwrap();
        assert!(sols.is_empty(), "unexpected solutions {sols:?}");
    }

    #[test]
    fn hurwitz_small_cases() {
        let alpha = golden_slope();
        let one = QuadraticNumber::from_int(1);
        let sols = hurwitz_solutions(&alpha, &one, 1).unwrap();
        assert_eq!(sols, [(BigInt::from(0), 1), (BigInt::from(1), 1)]);

        // rational target: |n/m - 1/2| < 1/m² by hand
        let half = QuadraticNumber::rational(1, 2).unwrap();
        let sols = hurwitz_solutions(&half, &one, 4).unwrap();
        assert_eq!(
            sols,
            [(BigInt::from(0), 1), (BigInt::from(1), 1), (BigInt::from(1), 2)]
        );

        assert!(matches!(
            hurwitz_solutions(&alpha, &QuadraticNumber::sqrt(5).unwrap(), 10),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            hurwitz_solutions(&alpha, &QuadraticNumber::from_int(-1), 10),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            hurwitz_solutions(&alpha, &one, 0),
            Err(Error::OutOfRange(_))
        ));
    }

    fn arb_positive_irrational() -> impl Strategy<Value = QuadraticNumber> {
        let d = prop::sample::select(vec![2u64, 3, 5, 6, 7]);
        (d, -20i64..20, 1i64..20, 1i64..20)
            .prop_map(|(d, p, q, r)| QuadraticNumber::new(p, q, r, d).unwrap())
            .prop_filter("positive", |x| x.sign() > 0)
    }

    proptest! {
        #[test]
        fn prop_cf_tail_coefficients_positive(alpha in arb_positive_irrational()) {
            let cf = cf_expand(&alpha, 12).unwrap();
            for a in cf.coefficients().iter().skip(1) {
                prop_assert!(a >= &BigInt::one());
            }
        }

        #[test]
        fn prop_convergents_alternate_and_sharpen(alpha in arb_positive_irrational()) {
            let convs = convergents(&alpha, 10).unwrap();
            let mut previous_err: Option<QuadraticNumber> = None;
            for c in &convs {
                // convergents alternate sides: below alpha at even index
                let side = c.value().try_sub(&alpha).unwrap().sign();
                let expected = if c.index % 2 == 0 { -1 } else { 1 };
                prop_assert_eq!(side, expected);

                // |q_i alpha - p_i| strictly decreases
                let err = QuadraticNumber::from_int(c.denominator.clone())
                    .try_mul(&alpha).unwrap()
                    .try_sub(&QuadraticNumber::from_int(c.numerator.clone())).unwrap()
                    .abs();
                if let Some(prev) = previous_err {
                    prop_assert_eq!(err.cmp_checked(&prev).unwrap(), std::cmp::Ordering::Less);
                }
                previous_err = Some(err);
            }
        }

        #[test]
        fn prop_recurrence_cross_check(alpha in arb_positive_irrational()) {
            let cf = cf_expand(&alpha, 10).unwrap();
            let convs = convergents(&alpha, 10).unwrap();
            let a = cf.coefficients();
            for i in 2..convs.len() {
                prop_assert_eq!(
                    &convs[i].numerator,
                    &(&a[i] * &convs[i - 1].numerator + &convs[i - 2].numerator)
                );
                prop_assert_eq!(
                    &convs[i].denominator,
                    &(&a[i] * &convs[i - 1].denominator + &convs[i - 2].denominator)
                );
                prop_assert!(convs[i].numerator.gcd(&convs[i].denominator).is_one());
            }
        }
    }
}
