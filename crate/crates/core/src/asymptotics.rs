//! Heuristic asymptotic-normality diagnostics for sequences of CGFs.
//!
//! Limit theorems cannot be decided from finitely many points, so every
//! verdict here is a trend check over the supplied grid.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::forms::{polynomiality_check, Polynomiality, RationalForm};
use crate::stats::{bernoulli, cumulant, rat_to_f64, Rat};
use crate::Error;

/// Per-form diagnostics, computed on the multisets exactly as supplied.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    /// `sum_b (b^2 - 1) / sum_a (a^2 - 1)`.
    pub ratio: f64,
    /// `sum_a (a / max a)^4` over numerator entries `a >= 2`.
    pub quartic: f64,
    pub std_k3: f64,
    pub std_k4: f64,
    /// Exact `kappa_4 / kappa_2^2`.
    pub std_k4_exact: Rat,
    /// `max a / sqrt(sum a^2 - sum b^2)`.
    pub ms_bound: f64,
    pub sigma: f64,
    pub mu: f64,
}

fn sq_excess(v: &[u64]) -> BigInt {
    v.iter().map(|&x| BigInt::from(x) * BigInt::from(x) - 1).sum()
}

pub fn diaconis_diagnostics(rf: &RationalForm) -> Result<Diagnostics, Error> {
    let k2 = cumulant(rf, 2);
    if !k2.is_positive() {
        return Err(Error::DegenerateVariance);
    }
    let (a, b) = rf.padded();
    let num = sq_excess(&a);
    let den = sq_excess(&b);
    let ratio = rat_to_f64(&Rat::new(den, num));

    let max_a = a.iter().copied().max().unwrap_or(1);
    let quartic = a
        .iter()
        .filter(|&&x| x >= 2)
        .map(|&x| {
            let r = x as f64 / max_a as f64;
            r * r * r * r
        })
        .sum();

    let sigma = libm::sqrt(rat_to_f64(&k2));
    let k3 = cumulant(rf, 3);
    let std_k4_exact = cumulant(rf, 4) / (&k2 * &k2);
    // sum a^2 - sum b^2 = 12 sigma^2
    let ms_bound = max_a as f64 / libm::sqrt(12.0 * rat_to_f64(&k2));
    Ok(Diagnostics {
        ratio,
        quartic,
        std_k3: rat_to_f64(&k3) / (sigma * sigma * sigma),
        std_k4: rat_to_f64(&std_k4_exact),
        std_k4_exact,
        ms_bound,
        sigma,
        mu: rat_to_f64(&cumulant(rf, 1)),
    })
}

/// A labeled sequence of rational forms indexed by `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetSeq {
    pub label: String,
    pub points: Vec<(u64, RationalForm)>,
}

impl MultisetSeq {
    /// Rejects any point whose quotient is not a polynomial.
    pub fn new(label: impl Into<String>, points: Vec<(u64, RationalForm)>) -> Result<Self, Error> {
        if points
            .iter()
            .any(|(_, rf)| polynomiality_check(rf) != Polynomiality::Holds)
        {
            return Err(Error::InvalidParameter("sequence point is not a polynomial"));
        }
        Ok(MultisetSeq {
            label: label.into(),
            points,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub ratio_max: f64,
    pub quartic_min: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            ratio_max: 0.95,
            quartic_min: 10.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NormalConsistent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NormalConsistent => "normal-consistent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Diagnostics table and heuristic verdict for a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub label: String,
    pub rows: Vec<(u64, Diagnostics)>,
    pub ratio_ok: bool,
    pub quartic_increasing: bool,
    pub quartic_exceeds_min: bool,
    pub std_k4_decreasing: bool,
    /// First `N` from which every form equals the last one, if the tail
    /// has at least two points.
    pub constant_from: Option<u64>,
    pub verdict: Verdict,
}

pub fn normality_scan(seq: &MultisetSeq, th: Thresholds) -> Result<ScanReport, Error> {
    if seq.points.len() < 3 {
        return Err(Error::InvalidParameter("a scan needs at least three points"));
    }
    let rows = seq
        .points
        .iter()
        .map(|(n, rf)| diaconis_diagnostics(rf).map(|d| (*n, d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(judge(seq, rows, th))
}

/// Verdict from precomputed rows (allows the rows to be produced in parallel).
pub fn judge(seq: &MultisetSeq, rows: Vec<(u64, Diagnostics)>, th: Thresholds) -> ScanReport {
    let ratio_ok = th.ratio_max < 1.0 && rows.iter().all(|(_, d)| d.ratio <= th.ratio_max);
    let quartic_increasing = rows.windows(2).all(|w| w[1].1.quartic > w[0].1.quartic);
    let quartic_exceeds_min = rows.last().is_some_and(|(_, d)| d.quartic > th.quartic_min);
    let std_k4_decreasing = rows
        .windows(2)
        .all(|w| w[1].1.std_k4_exact.abs() < w[0].1.std_k4_exact.abs());
    let constant_from = eventually_constant(&seq.points);
    let verdict = if ratio_ok && quartic_increasing && quartic_exceeds_min && std_k4_decreasing {
        Verdict::NormalConsistent
    } else {
        Verdict::Inconclusive
    };
    ScanReport {
        label: seq.label.clone(),
        rows,
        ratio_ok,
        quartic_increasing,
        quartic_exceeds_min,
        std_k4_decreasing,
        constant_from,
        verdict,
    }
}

/// Start of the constant tail (compared as reduced forms), when that tail
/// has at least two points.
pub fn eventually_constant(points: &[(u64, RationalForm)]) -> Option<u64> {
    let (_, last) = points.last()?;
    let last = last.reduced();
    let start = points
        .iter()
        .rposition(|(_, rf)| rf.reduced() != last)
        .map_or(0, |i| i + 1);
    (points.len() - start >= 2).then(|| points[start].0)
}

/// Descending `a / |a|_2` together with `|a|_p`; `p = f64::INFINITY`
/// selects the max norm.
pub fn rescaled_multiset(a: &[u64], p: f64) -> Result<(Vec<f64>, f64), Error> {
    if a.is_empty() || a.iter().all(|&x| x == 0) {
        return Err(Error::InvalidParameter("multiset must be nonempty"));
    }
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter("p must be at least 1"));
    }
    let norm2 = libm::sqrt(a.iter().map(|&x| (x as f64) * (x as f64)).sum());
    let mut v: Vec<f64> = a.iter().map(|&x| x as f64 / norm2).collect();
    v.sort_by(|x, y| y.total_cmp(x));
    let pnorm = if p.is_infinite() {
        a.iter().copied().max().unwrap_or(0) as f64
    } else {
        libm::pow(a.iter().map(|&x| libm::pow(x as f64, p)).sum(), 1.0 / p)
    };
    Ok((v, pnorm))
}

/// Largest elementwise gap between two descending vectors, the shorter
/// padded with zeros.
pub fn pointwise_gap(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len().max(v.len());
    (0..n)
        .map(|i| libm::fabs(u.get(i).copied().unwrap_or(0.0) - v.get(i).copied().unwrap_or(0.0)))
        .fold(0.0, f64::max)
}

/// Central cumulant of a sum of independent continuous uniforms of widths
/// `t`: `(B_d/d) |t|_d^d` for `d >= 2`, zero for `d = 1`.
pub fn uniform_sum_cumulant(t: &[f64], d: u32) -> f64 {
    if d <= 1 {
        return 0.0;
    }
    let b = rat_to_f64(&(bernoulli(d) / Rat::from_integer(BigInt::from(d))));
    if b.is_zero() {
        return 0.0;
    }
    b * t.iter().map(|&x| libm::pow(x, d as f64)).sum::<f64>()
}
