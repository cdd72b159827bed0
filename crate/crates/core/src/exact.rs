//! Exact arithmetic in real quadratic fields Q(√d).
//!
//! A [`QuadraticNumber`] is (p + q√d)/r with big integers p, q and r > 0,
//! kept in canonical form (gcd(p, q, r) = 1, and d = 1 whenever q = 0).
//! Signs, floors, comparisons, and decimal renderings are all decided by
//! integer reasoning on p, q, r, d; no floating point is involved anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Square-freeness is verified by trial division up to 2^20, which is
/// exhaustive for discriminants below 2^40. Larger d values are rejected.
const MAX_DISCRIMINANT: u64 = (1 << 40) - 1;

fn is_square_free(m: u64) -> bool {
    let mut m = m;
    let mut i = 2u64;
    while i * i <= m {
        if m.is_multiple_of(i) {
            m /= i;
            if m.is_multiple_of(i) {
                return false;
            }
        }
        i += 1;
    }
    true
}

/// An exact element (p + q√d)/r of the quadratic field Q(√d).
///
/// Values are immutable and always in canonical form, so structural equality
/// coincides with value equality. Rational numbers are the q = 0 case (with
/// d fixed to 1) and interoperate with every discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: BigInt,
    q: BigInt,
    /// Always positive.
    r: BigInt,
    /// Square-free and >= 2, except d = 1 exactly when q = 0.
    d: u64,
}

/// Restores canonical form. The caller guarantees r != 0 and d valid for q.
fn canonical(mut p: BigInt, mut q: BigInt, mut r: BigInt, mut d: u64) -> QuadraticNumber {
    debug_assert!(!r.is_zero());
    if r.is_negative() {
        p = -p;
        q = -q;
        r = -r;
    }
    if q.is_zero() {
        d = 1;
    }
    let g = p.gcd(&q).gcd(&r);
    if !g.is_one() {
        p /= &g;
        q /= &g;
        r /= g;
    }
    QuadraticNumber { p, q, r, d }
}

impl QuadraticNumber {
    /// Constructs (p + q√d)/r in canonical form.
    ///
    /// d = 1 is folded into the rational part (√1 = 1). When q = 0 the
    /// discriminant is irrelevant and normalizes to 1; otherwise d must be
    /// square-free, at least 2, and at most 2^40.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self> {
        let mut p = p.into();
        let mut q = q.into();
        let r = r.into();
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d == 1 && !q.is_zero() {
            p += std::mem::take(&mut q);
        }
        if !q.is_zero() && (!(2..=MAX_DISCRIMINANT).contains(&d) || !is_square_free(d)) {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(canonical(p, q, r, d))
    }

    /// The rational number n/m.
    pub fn rational(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(canonical(n.into(), BigInt::zero(), m, 1))
    }

    /// The integer n.
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadraticNumber {
            p: n.into(),
            q: BigInt::zero(),
            r: BigInt::one(),
            d: 1,
        }
    }

    /// √d for square-free d >= 2.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(0, 1, 1, d)
    }

    /// The golden ratio φ = (1 + √5)/2.
    pub fn golden_ratio() -> Self {
        QuadraticNumber {
            p: BigInt::one(),
            q: BigInt::one(),
            r: BigInt::from(2),
            d: 5,
        }
    }

    /// φ - 1 = (√5 - 1)/2, the slope of the Fibonacci word.
    pub fn golden_slope() -> Self {
        QuadraticNumber {
            p: BigInt::from(-1),
            q: BigInt::one(),
            r: BigInt::from(2),
            d: 5,
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.r.is_one()
    }

    /// The numerator/denominator pair when the value is rational.
    pub fn to_rational(&self) -> Option<(BigInt, BigInt)> {
        self.q.is_zero().then(|| (self.p.clone(), self.r.clone()))
    }

    /// Discriminant shared by both operands, or an error when two genuinely
    /// irrational values live in different fields.
    fn unified_d(&self, other: &Self) -> Result<u64> {
        if self.q.is_zero() {
            Ok(other.d)
        } else if other.q.is_zero() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(Error::FieldMismatch(self.d, other.d))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.unified_d(other)?;
        Ok(canonical(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.unified_d(other)?;
        Ok(canonical(
            &self.p * &other.r - &other.p * &self.r,
            &self.q * &other.r - &other.q * &self.r,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.unified_d(other)?;
        // (p1 + q1√d)(p2 + q2√d) = (p1 p2 + q1 q2 d) + (p1 q2 + q1 p2)√d.
        // When either operand is rational its q term vanishes, so using the
        // unified d here is sound.
        Ok(canonical(
            &self.p * &other.p + &self.q * &other.q * BigInt::from(d),
            &self.p * &other.q + &self.q * &other.p,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let d = self.unified_d(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/((p + q√d)/r) = r(p - q√d)/(p² - q²d). The field norm p² - q²d
        // vanishes only at zero, since √d is irrational for q != 0.
        let norm = &other.p * &other.p - &other.q * &other.q * BigInt::from(other.d);
        debug_assert!(!norm.is_zero());
        let inverse = canonical(&other.r * &other.p, -(&other.r * &other.q), norm, d);
        self.try_mul(&inverse)
    }

    /// Exact sign of the value: -1, 0, or +1.
    ///
    /// Since r > 0 only p + q√d matters. When p and q pull in opposite
    /// directions, |p| > |q|√d iff p² > q²d, an integer comparison.
    pub fn sign(&self) -> i8 {
        match (self.p.sign(), self.q.sign()) {
            (Sign::NoSign, Sign::NoSign) => 0,
            (Sign::NoSign, s) | (s, Sign::NoSign) => {
                if s == Sign::Plus {
                    1
                } else {
                    -1
                }
            }
            (Sign::Plus, Sign::Plus) => 1,
            (Sign::Minus, Sign::Minus) => -1,
            (ps, _) => {
                let pp = &self.p * &self.p;
                let qq = &self.q * &self.q * BigInt::from(self.d);
                match pp.cmp(&qq) {
                    Ordering::Greater => {
                        if ps == Sign::Plus {
                            1
                        } else {
                            -1
                        }
                    }
                    Ordering::Less => {
                        if ps == Sign::Plus {
                            -1
                        } else {
                            1
                        }
                    }
                    // p² = q²d would make √d rational; unreachable for
                    // canonical values, and 0 is the correct answer anyway.
                    Ordering::Equal => 0,
                }
            }
        }
    }

    /// Exact comparison; errors when the fields are incompatible.
    pub fn cmp_checked(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// The unique integer k with k <= x < k + 1.
    ///
    /// Seeds k from the integer square root of q²d, then corrects with one
    /// exact sign test.
    pub fn floor(&self) -> BigInt {
        let radical_floor = if self.q.is_zero() {
            BigInt::zero()
        } else {
            // floor(q√d): √(q²d) is irrational here, so for negative q the
            // floor of -|q|√d is -isqrt(q²d) - 1 unconditionally.
            let s = (&self.q * &self.q * BigInt::from(self.d)).sqrt();
            if self.q.is_positive() {
                s
            } else {
                -s - 1
            }
        };
        let candidate = (&self.p + radical_floor).div_floor(&self.r);
        // candidate <= floor(x) <= candidate + 1.
        let next = &candidate + BigInt::one();
        let diff = self
            .try_sub(&Self::from_int(next.clone()))
            .expect("integer operand is always compatible");
        if diff.sign() >= 0 {
            next
        } else {
            candidate
        }
    }

    /// Fractional part x - floor(x), always in [0, 1).
    pub fn frac(&self) -> Self {
        self.try_sub(&Self::from_int(self.floor()))
            .expect("integer operand is always compatible")
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest integer, via floor and an exact midpoint sign test.
    ///
    /// An exact midpoint (possible only for rationals with even denominator)
    /// resolves downward; callers comparing |x - nearest| are unaffected by
    /// that choice since both neighbors are then equidistant.
    pub fn nearest_int(&self) -> BigInt {
        let fl = self.floor();
        let twice = self.try_add(self).expect("same field");
        let midpoint = Self::from_int(&fl * 2 + 1);
        match twice.cmp_checked(&midpoint).expect("integer operand") {
            Ordering::Greater => fl + 1,
            _ => fl,
        }
    }

    /// Correctly rounded decimal rendering with `digits` fractional digits,
    /// rounding ties to even. Exact: the scaled value is compared against
    /// the rounding midpoint by sign tests alone.
    pub fn approx_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self
            .try_mul(&Self::from_int(scale))
            .expect("integer operand is always compatible");
        let n = scaled.floor();
        // Compare frac(scaled) with 1/2 via 2*scaled vs 2n + 1.
        let twice = scaled
            .try_add(&scaled)
            .expect("same field");
        let midpoint = Self::from_int(&n * 2 + 1);
        let rounded = match twice.cmp_checked(&midpoint).expect("integer operand") {
            Ordering::Greater => &n + 1,
            Ordering::Less => n.clone(),
            Ordering::Equal => {
                if n.is_even() {
                    n.clone()
                } else {
                    &n + 1
                }
            }
        };
        let negative = rounded.is_negative();
        let abs = rounded.magnitude().to_string();
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{abs}");
        }
        let padded = format!("{abs:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` exactly when the two values live in incompatible fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_checked(other).ok()
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        QuadraticNumber::is_zero(self)
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::from_int(1)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }

        impl $trait<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }

        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        // Negation preserves canonical form.
        QuadraticNumber {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl fmt::Display for QuadraticNumber {
    /// Rationals render as `ratio:n/m`, irrationals as `quad:p,q,r,d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "ratio:{}/{}", self.p, self.r)
        } else {
            write!(f, "quad:{},{},{},{}", self.p, self.q, self.r, self.d)
        }
    }
}

fn parse_bigint(text: &str) -> Result<BigInt> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {text:?}")))
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts `quad:p,q,r,d` and `ratio:n/m` (also `ratio:n` for integers).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(body) = s.strip_prefix("quad:") {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("expected quad:p,q,r,d, got {s:?}")));
            }
            let d: u64 = parts[3]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid discriminant {:?}", parts[3])))?;
            Self::new(
                parse_bigint(parts[0])?,
                parse_bigint(parts[1])?,
                parse_bigint(parts[2])?,
                d,
            )
        } else if let Some(body) = s.strip_prefix("ratio:") {
            let (n, m) = body.split_once('/').unwrap_or((body, "1"));
            Self::rational(parse_bigint(n)?, parse_bigint(m)?)
        } else {
            Err(Error::Parse(format!(
                "expected quad:p,q,r,d or ratio:n/m, got {s:?}"
            )))
        }
    }
}
