//! CGF membership and the cyclotomic and rational canonical forms.
//!
//! A CGF `f` is written either as `alpha q^beta prod Phi_{n_j}(q)`
//! ([`CycloForm`]) or as `alpha q^beta prod [a_j]_q / [b_j]_q`
//! ([`RationalForm`]). Conversions between the two go through cyclotomic
//! multiplicities: `[n]_q = prod_{1 < d | n} Phi_d(q)`, and
//! `Phi_n = prod_{d | n} [d]_q^{mu(n/d)}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclo, cyclo_rational, divisors, euler_phi, index_bound};
use crate::partitions::for_each_restricted;
use crate::{Error, IntPoly};

/// `alpha * q^beta * prod Phi_{indices_j}(q)`, indices ascending and `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloForm {
    pub alpha: BigUint,
    pub beta: usize,
    pub indices: Vec<u64>,
}

/// `alpha * q^beta * prod [numer_j]_q / prod [denom_j]_q`.
///
/// Both multisets are kept sorted ascending. A form built with
/// [`RationalForm::new`] is stored as given (it may contain common
/// elements or sides of different length); [`RationalForm::reduced`]
/// yields the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalForm {
    pub alpha: BigUint,
    pub beta: usize,
    pub numer: Vec<u64>,
    pub denom: Vec<u64>,
}

/// Why a polynomial failed the CGF test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCgf {
    ZeroPolynomial,
    NegativeCoefficient,
    /// Dividing off every cyclotomic factor left a non-constant residue.
    NonCyclotomicResidue { residue: IntPoly },
}

impl NotCgf {
    pub fn reason(&self) -> &'static str {
        match self {
            NotCgf::ZeroPolynomial => "ZeroPolynomial",
            NotCgf::NegativeCoefficient => "NegativeCoefficient",
            NotCgf::NonCyclotomicResidue { .. } => "NonCyclotomicResidue",
        }
    }
}

/// Why a rational form does not expand to a CGF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `Phi_witness` appears more often in the denominator than in the
    /// numerator, so the quotient is not a polynomial.
    NotPolynomial { witness: u64 },
    /// The quotient is a polynomial but has a negative coefficient.
    NotNonnegative { expansion: IntPoly },
}

impl Rejection {
    pub fn reason(&self) -> &'static str {
        match self {
            Rejection::NotPolynomial { .. } => "NotPolynomial",
            Rejection::NotNonnegative { .. } => "NotNonnegative",
        }
    }
}

impl CycloForm {
    pub fn new(alpha: BigUint, beta: usize, mut indices: Vec<u64>) -> Result<Self, Error> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("alpha must be positive"));
        }
        if indices.iter().any(|&n| n < 2) {
            return Err(Error::InvalidParameter("cyclotomic indices must be at least 2"));
        }
        indices.sort_unstable();
        Ok(CycloForm { alpha, beta, indices })
    }

    /// `prod Phi_{indices_j}` with `alpha = 1`, `beta = 0`.
    pub fn basic(indices: Vec<u64>) -> Result<Self, Error> {
        Self::new(BigUint::one(), 0, indices)
    }

    pub fn is_basic(&self) -> bool {
        self.alpha.is_one() && self.beta == 0
    }

    pub fn degree(&self) -> u64 {
        self.beta as u64 + self.indices.iter().map(|&n| euler_phi(n)).sum::<u64>()
    }

    pub fn to_poly(&self) -> IntPoly {
        let prod = self
            .indices
            .iter()
            .fold(IntPoly::one(), |acc, &n| &acc * &*cyclo(n));
        prod.scale(&BigInt::from(self.alpha.clone())).shift(self.beta)
    }
}

fn pad_to(v: &mut Vec<u64>, len: usize) {
    while v.len() < len {
        v.push(1);
    }
    v.sort_unstable();
}

impl RationalForm {
    /// A basic form (`alpha = 1`, `beta = 0`). Entries must be positive.
    pub fn new(mut numer: Vec<u64>, mut denom: Vec<u64>) -> Result<Self, Error> {
        if numer.iter().chain(&denom).any(|&x| x == 0) {
            return Err(Error::InvalidParameter("q-integer sizes must be positive"));
        }
        numer.sort_unstable();
        denom.sort_unstable();
        Ok(RationalForm {
            alpha: BigUint::one(),
            beta: 0,
            numer,
            denom,
        })
    }

    pub fn with_scale(mut self, alpha: BigUint, beta: usize) -> Result<Self, Error> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("alpha must be positive"));
        }
        self.alpha = alpha;
        self.beta = beta;
        Ok(self)
    }

    /// Canonical representative: common elements cancelled, 1's stripped,
    /// the shorter side padded with 1's, both sides sorted ascending.
    pub fn reduced(&self) -> RationalForm {
        let mut numer = Vec::new();
        let mut denom = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.numer, &self.denom);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    numer.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    denom.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    numer.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    denom.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        numer.retain(|&x| x != 1);
        denom.retain(|&x| x != 1);
        let m = numer.len().max(denom.len());
        pad_to(&mut numer, m);
        pad_to(&mut denom, m);
        RationalForm {
            alpha: self.alpha.clone(),
            beta: self.beta,
            numer,
            denom,
        }
    }

    /// Both sides padded with 1's to a common length, no cancellation.
    pub fn padded(&self) -> (Vec<u64>, Vec<u64>) {
        let m = self.numer.len().max(self.denom.len());
        let mut a = self.numer.clone();
        let mut b = self.denom.clone();
        pad_to(&mut a, m);
        pad_to(&mut b, m);
        (a, b)
    }

    /// `beta + sum a - sum b`; the degree when the form is a polynomial.
    pub fn degree(&self) -> i128 {
        self.beta as i128 + self.numer.iter().map(|&a| a as i128).sum::<i128>()
            - self.denom.iter().map(|&b| b as i128).sum::<i128>()
    }

    /// Product of two forms: multiset unions, `alpha`s multiply, `beta`s add.
    pub fn mul(&self, other: &RationalForm) -> RationalForm {
        let mut numer = [self.numer.as_slice(), other.numer.as_slice()].concat();
        let mut denom = [self.denom.as_slice(), other.denom.as_slice()].concat();
        numer.sort_unstable();
        denom.sort_unstable();
        RationalForm {
            alpha: &self.alpha * &other.alpha,
            beta: self.beta + other.beta,
            numer,
            denom,
        }
    }

    /// Multiplicity of each `Phi_d` (`d >= 2`) in the quotient; negative
    /// when the denominator has more copies.
    pub fn cyclotomic_multiplicities(&self) -> BTreeMap<u64, i64> {
        let mut mult: BTreeMap<u64, i64> = BTreeMap::new();
        for &a in &self.numer {
            for d in divisors(a).into_iter().skip(1) {
                *mult.entry(d).or_default() += 1;
            }
        }
        for &b in &self.denom {
            for d in divisors(b).into_iter().skip(1) {
                *mult.entry(d).or_default() -= 1;
            }
        }
        mult.retain(|_, m| *m != 0);
        mult
    }
}

/// `a1,a2,.../b1,b2,...`; an empty side prints as nothing.
impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, v: &[u64]| -> fmt::Result {
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        side(f, &self.numer)?;
        f.write_str("/")?;
        side(f, &self.denom)
    }
}

/// Decides whether `p` is a CGF by dividing off cyclotomic factors.
///
/// After removing `alpha` (the content) and `q^beta`, every `Phi_n` with
/// `2 <= n <= 2 deg^2` is divided off while exact. The polynomial is a CGF
/// iff the residue is `1`. The bound is sound because `phi(n) >= sqrt(n/2)`.
pub fn cgf_check(p: &IntPoly) -> Result<CycloForm, NotCgf> {
    if p.is_zero() {
        return Err(NotCgf::ZeroPolynomial);
    }
    if !p.is_nonnegative() {
        return Err(NotCgf::NegativeCoefficient);
    }
    let beta = p.zero_order();
    let alpha = p.content();
    let alpha_int = BigInt::from(alpha.clone());
    let mut rest = IntPoly::from_coeffs(
        p.coeffs()[beta..].iter().map(|c| c / &alpha_int).collect(),
    );
    let deg = rest.degree().unwrap_or(0) as u64;
    let mut indices = Vec::new();
    if deg > 0 {
        for n in 2..index_bound(deg) {
            let phi = euler_phi(n);
            loop {
                let cur = rest.degree().unwrap_or(0) as u64;
                if cur < phi {
                    break;
                }
                match rest.div_exact(&cyclo(n)) {
                    Ok(q) => {
                        rest = q;
                        indices.push(n);
                    }
                    Err(_) => break,
                }
            }
            if rest.degree() == Some(0) {
                break;
            }
        }
    }
    if !rest.is_one() {
        return Err(NotCgf::NonCyclotomicResidue { residue: rest });
    }
    Ok(CycloForm { alpha, beta, indices })
}

/// Rational form of a cyclotomic form, canonical and reduced.
pub fn cyclo_to_rational(cf: &CycloForm) -> RationalForm {
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for &n in &cf.indices {
        let (a, b) = cyclo_rational(n).expect("CycloForm indices are at least 2");
        numer.extend(a);
        denom.extend(b);
    }
    numer.sort_unstable();
    denom.sort_unstable();
    RationalForm {
        alpha: cf.alpha.clone(),
        beta: cf.beta,
        numer,
        denom,
    }
    .reduced()
}

/// Cyclotomic form of a rational form whose quotient is a polynomial.
/// Coefficient signs are not checked.
pub fn rational_to_cyclo(rf: &RationalForm) -> Result<CycloForm, Rejection> {
    let mult = rf.cyclotomic_multiplicities();
    if let Some((&witness, _)) = mult.iter().find(|(_, &m)| m < 0) {
        return Err(Rejection::NotPolynomial { witness });
    }
    let indices = mult
        .iter()
        .flat_map(|(&d, &m)| core::iter::repeat_n(d, m as usize))
        .collect();
    Ok(CycloForm {
        alpha: rf.alpha.clone(),
        beta: rf.beta,
        indices,
    })
}

/// Expands a rational form, requiring a polynomial with nonnegative
/// coefficients.
pub fn rational_to_poly(rf: &RationalForm) -> Result<IntPoly, Rejection> {
    let poly = rational_to_cyclo(rf)?.to_poly();
    if poly.is_nonnegative() {
        Ok(poly)
    } else {
        Err(Rejection::NotNonnegative { expansion: poly })
    }
}

/// Outcome of the divisor-count polynomiality criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polynomiality {
    Holds,
    /// Smallest `l` with `#{a : l | a} < #{b : l | b}`.
    Fails { witness: u64 },
}

/// `#{k : l | a_k} >= #{k : l | b_k}` for every `l >= 2`.
pub fn polynomiality_check(rf: &RationalForm) -> Polynomiality {
    let top = rf.denom.iter().copied().max().unwrap_or(0);
    for l in 2..=top {
        let na = rf.numer.iter().filter(|&&a| a % l == 0).count();
        let nb = rf.denom.iter().filter(|&&b| b % l == 0).count();
        if na < nb {
            return Polynomiality::Fails { witness: l };
        }
    }
    Polynomiality::Holds
}

/// `binom(x, m) = x (x-1) ... (x-m+1) / m!` for any integer `x`.
fn general_binomial(x: &BigInt, m: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..m {
        num *= x - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Coefficient of `q^k` in the power series `alpha q^beta prod [a]/[b]`,
/// computed as a sum over partitions of `k - beta` weighted by
/// generalized binomials in `M_i = #{b = i} - #{a = i}`.
pub fn coeff_via_partitions(rf: &RationalForm, k: u64) -> BigInt {
    let Some(k) = k.checked_sub(rf.beta as u64) else {
        return BigInt::zero();
    };
    let mut m: BTreeMap<u64, i64> = BTreeMap::new();
    for &b in &rf.denom {
        *m.entry(b).or_default() += 1;
    }
    for &a in &rf.numer {
        *m.entry(a).or_default() -= 1;
    }
    // parts with M_i = 0 contribute binom(m-1, m) = 0
    let allowed: Vec<u64> = m
        .iter()
        .filter(|&(&i, &mi)| mi != 0 && i <= k)
        .map(|(&i, _)| i)
        .collect();
    let cap = |i: u64| {
        let mi = m[&i];
        if mi < 0 { mi.unsigned_abs() } else { u64::MAX }
    };
    let mut total = BigInt::zero();
    for_each_restricted(k, &allowed, cap, &mut |parts| {
        let mut term = BigInt::one();
        for &(i, mult) in parts {
            let x = BigInt::from(m[&i]) + BigInt::from(mult) - 1;
            term *= general_binomial(&x, mult);
        }
        total += term;
    });
    total * BigInt::from(rf.alpha.clone())
}

/// Numerical necessary conditions for a rational form to be a basic CGF,
/// evaluated on the reduced, padded, sorted multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    /// One flag per numerator element: `a_k` lies in the nonnegative
    /// integer span of the denominator.
    pub span_ok: Vec<bool>,
    /// `a_1 >= b_1` and `a_m >= b_m`.
    pub ends_ok: bool,
    /// `mu / 2 <= sigma^2 <= mu^2`.
    pub variance_bounds_ok: bool,
    /// `sum(a^4 - b^4) / (sum(a^2 - b^2))^2 <= 5/3`.
    pub kurtosis_ok: bool,
    /// `sum a^d >= sum b^d` for `d` in 1, 2, 4, 6, 8.
    pub power_sums_ok: Vec<(u32, bool)>,
    /// Prefix and suffix sums of the numerator dominate the denominator's.
    pub majorization_ok: bool,
    /// `b_k <= a_k` for every `k` (Gale order).
    pub gale_ok: bool,
    /// Same predicate as `gale_ok`, reported under its pointwise name.
    pub pointwise_ok: bool,
}

impl NecessaryReport {
    /// Every condition that a genuine CGF must satisfy (all but the Gale
    /// and pointwise flags; majorization is included as conjectured).
    pub fn mandatory_ok(&self) -> bool {
        self.span_ok.iter().all(|&b| b)
            && self.ends_ok
            && self.variance_bounds_ok
            && self.kurtosis_ok
            && self.power_sums_ok.iter().all(|&(_, b)| b)
            && self.majorization_ok
    }
}

fn power_sum(v: &[u64], d: u32) -> BigInt {
    v.iter().map(|&x| BigInt::from(x).pow(d)).sum()
}

/// Nonnegative integer span membership of each target, by coin-change DP
/// up to the largest target.
pub fn span_membership(targets: &[u64], generators: &[u64]) -> Vec<bool> {
    let top = targets.iter().copied().max().unwrap_or(0) as usize;
    let mut reach = vec![false; top + 1];
    reach[0] = true;
    for &g in generators {
        let g = g as usize;
        if g == 0 {
            continue;
        }
        for v in g..=top {
            if reach[v - g] {
                reach[v] = true;
            }
        }
    }
    targets.iter().map(|&t| reach[t as usize]).collect()
}

/// `lower <= upper` elementwise on two sorted multisets of equal length.
pub fn gale_leq(lower: &[u64], upper: &[u64]) -> bool {
    lower.len() == upper.len() && lower.iter().zip(upper).all(|(b, a)| b <= a)
}

/// Two-sided majorization of sorted, equal-length multisets.
pub fn majorizes_both_sides(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (mut pa, mut pb) = (0u128, 0u128);
    for (x, y) in a.iter().zip(b) {
        pa += *x as u128;
        pb += *y as u128;
        if pa < pb {
            return false;
        }
    }
    let (mut sa, mut sb) = (0u128, 0u128);
    for (x, y) in a.iter().zip(b).rev() {
        sa += *x as u128;
        sb += *y as u128;
        if sa < sb {
            return false;
        }
    }
    true
}

pub fn necessary_conditions(rf: &RationalForm) -> NecessaryReport {
    let r = rf.reduced();
    let (a, b) = (&r.numer, &r.denom);
    let span_ok = span_membership(a, b);
    let ends_ok = match (a.first(), b.first(), a.last(), b.last()) {
        (Some(a1), Some(b1), Some(am), Some(bm)) => a1 >= b1 && am >= bm,
        _ => true,
    };

    let s1 = power_sum(a, 1) - power_sum(b, 1);
    let s2 = power_sum(a, 2) - power_sum(b, 2);
    let s4 = power_sum(a, 4) - power_sum(b, 4);
    let mu = BigRational::new(s1, BigInt::from(2));
    let var = BigRational::new(s2.clone(), BigInt::from(12));
    let variance_bounds_ok = &mu / BigInt::from(2) <= var && var <= &mu * &mu;
    let kurtosis_ok = if s2.is_zero() {
        true
    } else {
        BigRational::new(s4, &s2 * &s2) <= BigRational::new(BigInt::from(5), BigInt::from(3))
    };
    let power_sums_ok = [1u32, 2, 4, 6, 8]
        .iter()
        .map(|&d| (d, power_sum(a, d) >= power_sum(b, d)))
        .collect();
    let gale = gale_leq(b, a);
    NecessaryReport {
        span_ok,
        ends_ok,
        variance_bounds_ok,
        kurtosis_ok,
        power_sums_ok,
        majorization_ok: majorizes_both_sides(a, b),
        gale_ok: gale,
        pointwise_ok: gale,
    }
}

/// Which divisibility pattern makes a small quotient a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallCase {
    /// Nothing left after reduction (`m = 0`).
    Constant,
    /// `m = 1` and `b | a`.
    Divides,
    /// `b_1 | a_1` and `b_2 | a_2`.
    Case1,
    /// `b_1 | a_2` and `b_2 | a_1`.
    Case2,
    /// `b_1, b_2 | a_1` and `gcd(b_1, b_2) | a_2`.
    Case3,
    /// `b_1, b_2 | a_2` and `gcd(b_1, b_2) | a_1`.
    Case4,
}

/// Closed-form classification for reduced forms with at most two
/// non-unit q-integers on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallClassification {
    pub m: usize,
    pub divisibility: Option<SmallCase>,
    pub span_ok: bool,
    pub is_cgf: bool,
}

pub fn classify_small(rf: &RationalForm) -> Result<SmallClassification, Error> {
    let r = rf.reduced();
    let m = r.numer.len();
    let (a, b) = (&r.numer, &r.denom);
    let span_ok = span_membership(a, b).into_iter().all(|x| x);
    let divisibility = match m {
        0 => Some(SmallCase::Constant),
        1 => (a[0] % b[0] == 0).then_some(SmallCase::Divides),
        2 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let g = num_integer::gcd(b1, b2);
            if a1 % b1 == 0 && a2 % b2 == 0 {
                Some(SmallCase::Case1)
            } else if a2 % b1 == 0 && a1 % b2 == 0 {
                Some(SmallCase::Case2)
            } else if a1 % b1 == 0 && a1 % b2 == 0 && a2 % g == 0 {
                Some(SmallCase::Case3)
            } else if a2 % b1 == 0 && a2 % b2 == 0 && a1 % g == 0 {
                Some(SmallCase::Case4)
            } else {
                None
            }
        }
        _ => return Err(Error::InvalidParameter("classification needs at most two q-integers per side")),
    };
    let is_cgf = match m {
        0 => true,
        1 => divisibility.is_some(),
        _ => divisibility.is_some() && span_ok,
    };
    Ok(SmallClassification {
        m,
        divisibility,
        span_ok,
        is_cgf,
    })
}
