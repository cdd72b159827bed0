//! Brute-force ground truth for abelian repetitions: factorization checking,
//! minimal abelian periods, maximal power exponents, longest repetition
//! prefixes, and the exact fractional-part exponent predicate.
//!
//! A word w is factored as head u_0, inner blocks u_1 ... u_b, tail u_{b+1}:
//! the inner blocks all share one Parikh vector of norm m, and the head and
//! tail Parikh vectors are strictly contained in it (or empty). Two tiers
//! are exposed: the relaxed form only demands b >= 1; repetition reporting
//! additionally requires exponent |w|/m >= 2.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::numtheory::fibonacci;
use crate::words::{sturmian_prefix, ParikhVector, SturmianParams, Word};

/// Which containment rule a period search applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// At least one inner block; head and tail may be empty.
    Relaxed,
    /// Additionally requires exponent |w|/m >= 2.
    Repetition,
}

/// A witnessed factorization w = head + b inner m-blocks + tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianFactorization {
    pub period: usize,
    /// Head length, in [0, m-1].
    pub head: usize,
    /// Number of inner blocks, at least 1.
    pub blocks: usize,
    /// Tail length, in [0, m-1]; always (|w| - head) mod m.
    pub tail: usize,
    /// Shared Parikh vector of the inner blocks, norm m.
    pub block_parikh: ParikhVector,
}

impl AbelianFactorization {
    /// Total length head + blocks·m + tail.
    pub fn length(&self) -> usize {
        self.head + self.blocks * self.period + self.tail
    }

    /// The exponent |w|/m as an exact reduced rational.
    pub fn exponent(&self) -> Ratio<u64> {
        Ratio::new(self.length() as u64, self.period as u64)
    }
}

/// Per-letter prefix counts over a word, so any window's Parikh data costs
/// O(σ) instead of a rescan.
struct PrefixCounts {
    /// table[l][i] = occurrences of alphabet letter l in the first i letters.
    table: Vec<Vec<u32>>,
}

impl PrefixCounts {
    fn new(w: &Word) -> Result<Self> {
        if w.len() >= u32::MAX as usize {
            return Err(Error::OutOfRange("word too long for prefix counting".into()));
        }
        let table = w
            .alphabet()
            .iter()
            .map(|&letter| {
                let mut column = Vec::with_capacity(w.len() + 1);
                let mut running = 0u32;
                column.push(0);
                for &c in w.letters() {
                    running += u32::from(c == letter);
                    column.push(running);
                }
                column
            })
            .collect();
        Ok(PrefixCounts { table })
    }

    fn sigma(&self) -> usize {
        self.table.len()
    }

    /// Count of letter l in the half-open 0-based window [lo, hi).
    fn count(&self, l: usize, lo: usize, hi: usize) -> u32 {
        self.table[l][hi] - self.table[l][lo]
    }

    fn windows_equal(&self, s1: usize, s2: usize, m: usize) -> bool {
        (0..self.sigma()).all(|l| self.count(l, s1, s1 + m) == self.count(l, s2, s2 + m))
    }

    /// Whether [lo, hi) is componentwise dominated by the block at `s`.
    fn window_fits(&self, lo: usize, hi: usize, s: usize, m: usize) -> bool {
        (0..self.sigma()).all(|l| self.count(l, lo, hi) <= self.count(l, s, s + m))
    }

    fn window_counts(&self, lo: usize, hi: usize) -> Vec<u64> {
        (0..self.sigma())
            .map(|l| u64::from(self.count(l, lo, hi)))
            .collect()
    }

    /// Largest x in [0, cap] such that `fits(x)` holds; `fits` must be
    /// downward-closed, which Parikh domination by a fixed block is.
    fn search_extent(cap: usize, fits: impl Fn(usize) -> bool) -> usize {
        let (mut lo, mut hi) = (0usize, cap);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }
}

fn block_parikh_at(w: &Word, pc: &PrefixCounts, s: usize, m: usize) -> ParikhVector {
    ParikhVector::new(w.alphabet(), pc.window_counts(s, s + m))
        .expect("alphabet and counts come from the same word")
}

/// Checks the factorization of w with period m and head length h, returning
/// it when every containment/equality constraint holds with at least one
/// inner block.
pub fn check_factorization(w: &Word, m: usize, h: usize) -> Result<Option<AbelianFactorization>> {
    if m < 1 || m > w.len() {
        return Err(Error::OutOfRange(format!(
            "period must satisfy 1 <= m <= |w| = {}, got {m}",
            w.len()
        )));
    }
    if h >= m {
        return Err(Error::OutOfRange(format!(
            "head length must satisfy 0 <= h < m = {m}, got {h}"
        )));
    }
    let pc = PrefixCounts::new(w)?;
    Ok(check_with_counts(w, &pc, m, h))
}

/// Core of [`check_factorization`] on prebuilt counts. The head and tail are
/// shorter than m, so their strict-norm requirement is automatic and only
/// componentwise domination needs testing.
fn check_with_counts(
    w: &Word,
    pc: &PrefixCounts,
    m: usize,
    h: usize,
) -> Option<AbelianFactorization> {
    let n = w.len();
    let blocks = (n - h) / m;
    if blocks == 0 {
        return None;
    }
    let tail = (n - h) % m;

    for i in 1..blocks {
        if !pc.windows_equal(h, h + i * m, m) {
            return None;
        }
    }
    if !pc.window_fits(0, h, h, m) {
        return None;
    }
    let tail_start = h + blocks * m;
    if !pc.window_fits(tail_start, tail_start + tail, h, m) {
        return None;
    }

    Some(AbelianFactorization {
        period: m,
        head: h,
        blocks,
        tail,
        block_parikh: block_parikh_at(w, pc, h, m),
    })
}

/// Smallest abelian period of w, searched in ascending m and, within one m,
/// ascending head length; the first hit is returned, which makes the
/// reported head deterministic.
///
/// Under the relaxed tier this always succeeds (m = |w|, h = 0 works);
/// under the repetition tier words shorter than 2m everywhere yield None.
/// The scan is transparent rather than clever: O(|w|) per (m, h) pair.
pub fn min_abelian_period(w: &Word, tier: Tier) -> Result<Option<AbelianFactorization>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let pc = PrefixCounts::new(w)?;
    for m in 1..=w.len() {
        if tier == Tier::Repetition && 2 * m > w.len() {
            break;
        }
        for h in 0..m {
            if let Some(fact) = check_with_counts(w, &pc, m, h) {
                return Ok(Some(fact));
            }
        }
    }
    Ok(match tier {
        Tier::Relaxed => unreachable!("m = |w|, h = 0 always factorizes"),
        Tier::Repetition => None,
    })
}

/// Largest k such that the k consecutive m-blocks starting at the 1-based
/// position `start` share one Parikh vector and lie inside the prefix.
pub fn max_power_run(prefix: &Word, m: usize, start: usize) -> Result<usize> {
    if m < 1 {
        return Err(Error::OutOfRange("period must be at least 1".into()));
    }
    if start < 1 || start + m - 1 > prefix.len() {
        return Err(Error::OutOfRange(format!(
            "start must satisfy 1 <= start and start + m - 1 <= |prefix|, got start {start}, m {m}, |prefix| {}",
            prefix.len()
        )));
    }
    let pc = PrefixCounts::new(prefix)?;
    Ok(run_length(&pc, prefix.len(), start - 1, m))
}

/// Number of consecutive equal-Parikh m-blocks from 0-based position s.
fn run_length(pc: &PrefixCounts, n: usize, s: usize, m: usize) -> usize {
    let mut k = 1;
    while s + (k + 1) * m <= n && pc.windows_equal(s + (k - 1) * m, s + k * m, m) {
        k += 1;
    }
    k
}

/// Run lengths at every 0-based start: table[s] counts the consecutive
/// equal-Parikh m-blocks beginning at s that lie fully inside the prefix.
/// Entries near the end are truncated by the prefix boundary, never
/// inflated, so `table[s] >= k` always witnesses a genuine exponent-k power.
pub fn power_run_table(prefix: &Word, m: usize) -> Result<Vec<usize>> {
    if m < 1 || m > prefix.len() {
        return Err(Error::OutOfRange(format!(
            "period must satisfy 1 <= m <= |prefix| = {}, got {m}",
            prefix.len()
        )));
    }
    let pc = PrefixCounts::new(prefix)?;
    Ok(run_table(&pc, prefix.len(), m))
}

fn run_table(pc: &PrefixCounts, n: usize, m: usize) -> Vec<usize> {
    let mut runs = vec![0usize; n - m + 1];
    for s in (0..=n - m).rev() {
        runs[s] = if s + 2 * m <= n && pc.windows_equal(s, s + m, m) {
            runs[s + m] + 1
        } else {
            1
        };
    }
    runs
}

/// The lesser of {mα} and {−mα}, plus whether {mα} itself was the lesser
/// side (equivalently, whether consecutive power points drift upward).
fn lesser_side(alpha: &QuadraticNumber, m: usize) -> Result<(QuadraticNumber, bool)> {
    let scaled = alpha.try_mul(&QuadraticNumber::from_int(m as u64))?;
    let forward = scaled.frac();
    let half = QuadraticNumber::rational(1, 2)?;
    match forward.cmp_checked(&half)? {
        std::cmp::Ordering::Less => Ok((forward, true)),
        std::cmp::Ordering::Greater => Ok(((-&scaled).frac(), false)),
        std::cmp::Ordering::Equal => Err(Error::RationalSlope),
    }
}

/// floor(1/side) + 1, an upper bound on any abelian-power exponent of
/// period m (exponent k forces side < 1/k).
fn exponent_ceiling(side: &QuadraticNumber) -> Result<usize> {
    let inverse = QuadraticNumber::from_int(1).try_div(side)?;
    (inverse.floor() + BigInt::one())
        .to_usize()
        .ok_or_else(|| Error::OutOfRange("exponent bound exceeds addressable memory".into()))
}

fn golden_fibonacci_setup(alpha: &QuadraticNumber, m: usize, slack: usize) -> Result<(Word, PrefixCounts)> {
    let params = SturmianParams::new(alpha.clone(), QuadraticNumber::from_int(0))?;
    let (side, _) = lesser_side(alpha, m)?;
    let window = m
        .checked_mul(exponent_ceiling(&side)? + slack)
        .ok_or_else(|| Error::OutOfRange("scan window exceeds addressable memory".into()))?;
    let prefix = sturmian_prefix(&params, window);
    let pc = PrefixCounts::new(&prefix)?;
    Ok((prefix, pc))
}

/// Over all 1-based starts i <= F_j, the maximal abelian-power run of
/// period m = F_j, with the smallest start achieving it. The search prefix
/// is sized from the exponent bound, so no run can be cut short.
pub fn best_power_over_starts(alpha: &QuadraticNumber, j: u64) -> Result<(usize, usize)> {
    if j < 2 {
        return Err(Error::OutOfRange(format!("index must be at least 2, got {j}")));
    }
    let m = fibonacci(j)
        .to_usize()
        .ok_or_else(|| Error::OutOfRange("period exceeds addressable memory".into()))?;
    let (prefix, pc) = golden_fibonacci_setup(alpha, m, 8)?;

    let mut best: Option<(usize, usize)> = None;
    for start in 1..=m {
        let k = run_length(&pc, prefix.len(), start - 1, m);
        if best.is_none_or(|(_, best_k)| k > best_k) {
            best = Some((start, k));
        }
    }
    Ok(best.expect("m >= 1 gives at least one start"))
}

/// Longest prefix that is an abelian repetition of period m (relaxed
/// containment plus exponent >= 2), with its factorization. The scan window
/// m·(floor(1/side) + 5) dominates any achievable length, which keeps the
/// search finite on principled grounds.
pub fn longest_prefix_rep(
    alpha: &QuadraticNumber,
    m: usize,
) -> Result<Option<(usize, AbelianFactorization)>> {
    if m < 1 {
        return Err(Error::OutOfRange("period must be at least 1".into()));
    }
    let (prefix, pc) = golden_fibonacci_setup(alpha, m, 4)?;
    let n = prefix.len();

    let mut best: Option<(usize, AbelianFactorization)> = None;
    for h in 0..m {
        if h + m > n {
            break;
        }
        // the head is forced to be prefix[1..h]; if it does not embed in
        // its block there is no factorization with this head length
        if !pc.window_fits(0, h, h, m) {
            continue;
        }
        let b = run_length(&pc, n, h, m);
        let end = h + b * m;
        let t = PrefixCounts::search_extent((m - 1).min(n - end), |t| {
            pc.window_fits(end, end + t, h, m)
        });
        let length = h + b * m + t;
        if length >= 2 * m && best.as_ref().is_none_or(|(l, _)| length > *l) {
            best = Some((
                length,
                AbelianFactorization {
                    period: m,
                    head: h,
                    blocks: b,
                    tail: t,
                    block_parikh: block_parikh_at(&prefix, &pc, h, m),
                },
            ));
        }
    }
    Ok(best)
}

/// The exact exponent test for abelian powers of period m: compare the
/// lesser of {mα}, {−mα} against 1/k (weak form) or 1/(k+1) (strong form,
/// which additionally guarantees an occurrence starting at position m).
pub fn theorem6_predicate(
    alpha: &QuadraticNumber,
    m: usize,
    k: u64,
    strong: bool,
) -> Result<bool> {
    if alpha.is_rational() {
        return Err(Error::RationalSlope);
    }
    if m < 1 || k < 2 {
        return Err(Error::OutOfRange(format!(
            "need m >= 1 and k >= 2, got m = {m}, k = {k}"
        )));
    }
    let (side, _) = lesser_side(alpha, m)?;
    let denominator = if strong { k + 1 } else { k };
    let threshold = QuadraticNumber::rational(1, BigInt::from(denominator))?;
    match side.cmp_checked(&threshold)? {
        std::cmp::Ordering::Less => Ok(true),
        std::cmp::Ordering::Greater => Ok(false),
        std::cmp::Ordering::Equal => {
            unreachable!("an irrational fractional part cannot equal 1/k")
        }
    }
}

/// Whether the k+1 orbit points {(n+tm)α}, 0 <= t <= k, all lie on one side
/// of {−mα} and drift monotonically (upward when {mα} < 1/2, downward
/// otherwise). These are exactly the points carrying an abelian power of
/// period m and exponent k+1 at position n.
pub fn power_points_check(alpha: &QuadraticNumber, n: u64, m: u64, k: u64) -> Result<bool> {
    if alpha.is_rational() {
        return Err(Error::RationalSlope);
    }
    if n < 1 || m < 1 {
        return Err(Error::OutOfRange("need n >= 1 and m >= 1".into()));
    }
    let boundary = (-&alpha.try_mul(&QuadraticNumber::from_int(m))?).frac();
    let (_, increasing) = lesser_side(alpha, m as usize)?;

    let mut previous: Option<QuadraticNumber> = None;
    let mut side: Option<std::cmp::Ordering> = None;
    for t in 0..=k {
        let point = alpha
            .try_mul(&QuadraticNumber::from_int(n + t * m))?
            .frac();
        let this_side = point.cmp_checked(&boundary)?;
        if this_side == std::cmp::Ordering::Equal {
            return Err(Error::DegeneratePoint);
        }
        if *side.get_or_insert(this_side) != this_side {
            return Ok(false);
        }
        if let Some(prev) = previous {
            let drift = point.cmp_checked(&prev)?;
            let expected = if increasing {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            };
            if drift != expected {
                return Ok(false);
            }
        }
        previous = Some(point);
    }
    Ok(true)
}

/// Maximal exponent |w|/m over all abelian repetitions of period m
/// (head and tail allowed) inside the length-N prefix of the rotation word
/// with slope alpha. Finite N yields a lower bound for the true supremum.
pub fn k_m_empirical(alpha: &QuadraticNumber, m: usize, n: usize) -> Result<Ratio<u64>> {
    let params = SturmianParams::new(alpha.clone(), QuadraticNumber::from_int(0))?;
    let prefix = sturmian_prefix(&params, n);
    k_m_empirical_in(&prefix, m)
}

/// As [`k_m_empirical`], over an already generated prefix.
pub fn k_m_empirical_in(prefix: &Word, m: usize) -> Result<Ratio<u64>> {
    Ok(k_m_witness_in(prefix, m)?.0)
}

/// Maximal-exponent scan that also reports where the maximum lives: the
/// 1-based start of the whole window and its factorization.
///
/// Every candidate window has its blocks on the m-grid anchored at some s:
/// the longest window there uses the maximal block run from s (a lost block
/// costs m, a tail gains at most m-1) plus the farthest head and tail that
/// embed in the block vector, found by binary search on prefix counts.
pub fn k_m_witness_in(
    prefix: &Word,
    m: usize,
) -> Result<(Ratio<u64>, usize, AbelianFactorization)> {
    let n = prefix.len();
    if m < 1 || n < 2 * m {
        return Err(Error::OutOfRange(format!(
            "need 1 <= m and 2m <= N, got m = {m}, N = {n}"
        )));
    }
    let pc = PrefixCounts::new(prefix)?;
    let runs = run_table(&pc, n, m);

    let mut best: Option<(usize, usize, AbelianFactorization)> = None;
    for (s, &b) in runs.iter().enumerate() {
        let h = PrefixCounts::search_extent((m - 1).min(s), |h| {
            pc.window_fits(s - h, s, s, m)
        });
        let end = s + b * m;
        let t = PrefixCounts::search_extent((m - 1).min(n - end), |t| {
            pc.window_fits(end, end + t, s, m)
        });
        let length = h + b * m + t;
        if best.as_ref().is_none_or(|(l, _, _)| length > *l) {
            best = Some((
                length,
                s - h + 1,
                AbelianFactorization {
                    period: m,
                    head: h,
                    blocks: b,
                    tail: t,
                    block_parikh: block_parikh_at(prefix, &pc, s, m),
                },
            ));
        }
    }

    let (length, start, fact) = best.expect("n >= 2m guarantees a candidate");
    Ok((Ratio::new(length as u64, m as u64), start, fact))
}
