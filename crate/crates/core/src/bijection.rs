//! The factor/interval correspondence for rotation words: partition points
//! c_k(α, m), the interval-to-factor map, lexicographic ordering, and the
//! two-class Parikh dichotomy.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::words::{ParikhVector, SturmianParams, Word, BINARY_ALPHABET};

/// Which of the two Parikh vectors a factor carries: V1 right of the
/// boundary {−mα} (one extra 'a'), V2 left of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParikhClass {
    V1,
    V2,
}

impl fmt::Display for ParikhClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParikhClass::V1 => write!(f, "v1"),
            ParikhClass::V2 => write!(f, "v2"),
        }
    }
}

/// One interval L_k = [c_k, c_{k+1}) together with its length-m factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorInterval {
    pub k: usize,
    pub left: QuadraticNumber,
    pub right: QuadraticNumber,
    pub factor: Word,
    pub parikh_class: ParikhClass,
}

/// The m + 2 sorted points 0, 1, and {−iα} for 1 <= i <= m, cutting [0, 1)
/// into the m + 1 intervals of the factor bijection.
#[derive(Debug, Clone)]
pub struct IntervalPartition {
    alpha: QuadraticNumber,
    m: usize,
    /// c_0 = 0 < c_1 < ... < c_{m+1} = 1.
    points: Vec<QuadraticNumber>,
    /// neg_orbit[i] = {−iα} unsorted, so neg_orbit[0] = 0; cached because
    /// the letter rule consults consecutive pairs for every factor position.
    neg_orbit: Vec<QuadraticNumber>,
}

/// 'a' iff `point` falls in the letter-a region between the bounds
/// lo = {−(i+1)α} and hi = {−iα}: the plain interval [lo, hi) when lo < hi,
/// otherwise the wrapped union [0, hi) ∪ [lo, 1).
fn letter_from_bounds(
    point: &QuadraticNumber,
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
) -> u8 {
    let cmp = |x: &QuadraticNumber, y: &QuadraticNumber| {
        x.cmp_checked(y).expect("orbit points share a field")
    };
    let is_a = match cmp(lo, hi) {
        Ordering::Less => cmp(point, lo) != Ordering::Less && cmp(point, hi) == Ordering::Less,
        // lo = hi would force a rational slope, which constructors reject
        _ => cmp(point, hi) == Ordering::Less || cmp(point, lo) != Ordering::Less,
    };
    if is_a {
        b'a'
    } else {
        b'b'
    }
}

/// The letter a_{n+i} read off from where {nα + ρ} falls relative to
/// {−(i+1)α} and {−iα}; must agree with [`sturmian_letter`] at n + i.
pub fn letter_rule(params: &SturmianParams, n: u64, i: u64) -> u8 {
    assert!(n >= 1, "positions are 1-based");
    let point = params.point_at(n);
    let alpha = params.alpha();
    let neg = |j: u64| {
        (-&alpha
            .try_mul(&QuadraticNumber::from_int(j))
            .expect("integer operand"))
            .frac()
    };
    letter_from_bounds(&point, &neg(i + 1), &neg(i))
}

impl IntervalPartition {
    /// Builds the partition for an irrational slope in (0, 1) and m >= 1.
    pub fn new(alpha: &QuadraticNumber, m: usize) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::RationalSlope);
        }
        if alpha.sign() <= 0 || (alpha - &QuadraticNumber::from_int(1)).sign() >= 0 {
            return Err(Error::SlopeOutOfRange(format!(
                "slope must lie strictly between 0 and 1, got {alpha}"
            )));
        }
        if m == 0 {
            return Err(Error::OutOfRange("window length m must be at least 1".into()));
        }

        let mut neg_orbit = Vec::with_capacity(m + 1);
        neg_orbit.push(QuadraticNumber::from_int(0));
        let mut running = QuadraticNumber::from_int(0);
        for _ in 1..=m {
            running = running.try_sub(alpha)?;
            neg_orbit.push(running.frac());
        }

        let mut points = neg_orbit.clone();
        points.push(QuadraticNumber::from_int(1));
        points.sort_by(|x, y| x.cmp_checked(y).expect("points share a field"));
        // irrational slopes cannot produce coincident points; verify anyway
        for pair in points.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DegeneratePoint);
            }
        }

        Ok(IntervalPartition {
            alpha: alpha.clone(),
            m,
            points,
            neg_orbit,
        })
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[QuadraticNumber] {
        &self.points
    }

    /// The half-open interval L_k = [c_k, c_{k+1}) for 0 <= k <= m.
    pub fn interval(&self, k: usize) -> Option<(&QuadraticNumber, &QuadraticNumber)> {
        (k <= self.m).then(|| (&self.points[k], &self.points[k + 1]))
    }

    /// The boundary {−mα} separating the two Parikh classes.
    pub fn boundary(&self) -> &QuadraticNumber {
        &self.neg_orbit[self.m]
    }

    /// The length-m factor shared by every point of L_k, evaluated at the
    /// representative c_k.
    pub fn factor(&self, k: usize) -> Result<Word> {
        if k > self.m {
            return Err(Error::OutOfRange(format!(
                "interval index {k} exceeds m = {}",
                self.m
            )));
        }
        let representative = &self.points[k];
        let letters: Vec<u8> = (0..self.m)
            .map(|i| {
                letter_from_bounds(representative, &self.neg_orbit[i + 1], &self.neg_orbit[i])
            })
            .collect();
        Word::from_bytes(&letters, BINARY_ALPHABET)
    }

    /// Every interval with its factor and Parikh class, k = 0 ..= m.
    pub fn all_factors(&self) -> Result<Vec<FactorInterval>> {
        let boundary = self.boundary();
        (0..=self.m)
            .map(|k| {
                let factor = self.factor(k)?;
                let left = self.points[k].clone();
                let right = self.points[k + 1].clone();
                let parikh_class = match left.cmp_checked(boundary)? {
                    Ordering::Less => ParikhClass::V2,
                    _ => ParikhClass::V1,
                };
                Ok(FactorInterval {
                    k,
                    left,
                    right,
                    factor,
                    parikh_class,
                })
            })
            .collect()
    }

    /// Index k of the interval containing `point`, by exact binary search.
    ///
    /// A point exactly equal to a partition point is refused: that can only
    /// happen for special intercepts, and guessing a side would silently
    /// resolve a boundary case the factor correspondence leaves open.
    pub fn locate(&self, point: &QuadraticNumber) -> Result<usize> {
        if point.sign() < 0
            || point
                .cmp_checked(&QuadraticNumber::from_int(1))?
                .is_ge()
        {
            return Err(Error::OutOfRange(format!(
                "point must lie in [0, 1), got {point}"
            )));
        }
        let (mut lo, mut hi) = (0usize, self.m + 1);
        // invariant: points[lo] <= point < points[hi]
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match point.cmp_checked(&self.points[mid])? {
                Ordering::Less => hi = mid,
                Ordering::Greater => lo = mid,
                Ordering::Equal => return Err(Error::DegeneratePoint),
            }
        }
        // binary search probes only O(log m) points, so the landing spot
        // still needs its own coincidence check
        if point.cmp_checked(&self.points[lo])? == Ordering::Equal {
            return Err(Error::DegeneratePoint);
        }
        Ok(lo)
    }

    /// True iff factors strictly decrease lexicographically as k grows.
    pub fn is_lex_decreasing(&self) -> Result<bool> {
        let factors = self.all_factors()?;
        for pair in factors.windows(2) {
            if pair[0].factor.lex_cmp(&pair[1].factor)? != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The two Parikh vectors and the boundary {−mα} that separates them:
    /// v1 profiles every interval at or right of the boundary, v2 the rest,
    /// and v1 has exactly one more 'a'.
    pub fn parikh_split(&self) -> Result<(ParikhVector, ParikhVector, QuadraticNumber)> {
        // the rightmost interval starts at or beyond {−mα}, the leftmost
        // strictly before it, so these two representatives always differ
        let v1 = self.factor(self.m)?.parikh();
        let v2 = self.factor(0)?.parikh();
        Ok((v1, v2, self.boundary().clone()))
    }
}

/// Interval index of the window s[n .. n+m-1]: where {nα + ρ} lands in the
/// partition for (α, m).
pub fn locate(params: &SturmianParams, n: u64, m: usize) -> Result<usize> {
    assert!(n >= 1, "positions are 1-based");
    let partition = IntervalPartition::new(params.alpha(), m)?;
    partition.locate(&params.point_at(n))
}
