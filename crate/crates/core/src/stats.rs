//! Exact cumulants and moments of CGF distributions, and their
//! characteristic functions.
//!
//! A form `alpha q^beta prod [a_k]/[b_k]` has cumulants
//! `kappa_d = (B_d/d) sum(a^d - b^d)` (with `B_1 = +1/2`), plus `beta`
//! in `kappa_1`. Moments follow from the moment-cumulant relation, summed
//! over partitions of `d` whose parts are even or 1 (even only for central
//! moments), since odd cumulants beyond the first vanish.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use spin::Mutex;

use crate::cyclotomic::jordan;
use crate::forms::RationalForm;
use crate::partitions::for_each_restricted;
use crate::{Error, IntPoly};

/// Exact rational in lowest terms with positive denominator.
pub type Rat = BigRational;

static BERNOULLI: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Bernoulli number `B_d` with the convention `B_1 = +1/2`.
pub fn bernoulli(d: u32) -> Rat {
    let mut cache = BERNOULLI.lock();
    // the cache holds the B_1 = -1/2 sequence; the sign is fixed on the way out
    while cache.len() <= d as usize {
        let m = cache.len() as u64;
        let next = if m == 0 {
            Rat::one()
        } else {
            let s: Rat = (0..m)
                .map(|j| &cache[j as usize] * Rat::from_integer(binomial(m + 1, j)))
                .sum();
            -s / Rat::from_integer(BigInt::from(m + 1))
        };
        cache.push(next);
    }
    let b = cache[d as usize].clone();
    if d == 1 { -b } else { b }
}

// on the sides padded to equal length with 1's
fn power_sum_diff(rf: &RationalForm, d: u32) -> BigInt {
    let a: BigInt = rf.numer.iter().map(|&x| BigInt::from(x).pow(d)).sum();
    let b: BigInt = rf.denom.iter().map(|&x| BigInt::from(x).pow(d)).sum();
    a - b - BigInt::from(rf.numer.len()) + BigInt::from(rf.denom.len())
}

/// `kappa_d` of the (formal) distribution of `rf`. Requires `d >= 1`.
pub fn cumulant(rf: &RationalForm, d: u32) -> Rat {
    assert!(d >= 1, "cumulants are indexed from 1");
    let k = bernoulli(d) / rat(d as i64) * Rat::from_integer(power_sum_diff(rf, d));
    if d == 1 { k + rat(rf.beta as i64) } else { k }
}

/// `[kappa_1, ..., kappa_max_d]`.
pub fn cumulants(rf: &RationalForm, max_d: u32) -> Vec<Rat> {
    (1..=max_d).map(|d| cumulant(rf, d)).collect()
}

fn moment_from_cumulants(kappa: &[Rat], d: u32, central: bool) -> Rat {
    if d == 0 {
        return Rat::one();
    }
    let allowed: Vec<u64> = (1..=d as u64)
        .filter(|&i| i % 2 == 0 || (i == 1 && !central))
        .collect();
    let dfact = Rat::from_integer(factorial(d as u64));
    let mut total = Rat::zero();
    for_each_restricted(d as u64, &allowed, |_| u64::MAX, &mut |parts| {
        let mut term = dfact.clone();
        for &(i, m) in parts {
            let base = &kappa[(i - 1) as usize] / Rat::from_integer(factorial(i));
            for _ in 0..m {
                term *= &base;
            }
            term /= Rat::from_integer(factorial(m));
        }
        total += term;
    });
    total
}

/// Raw moment `E[X^d]`.
pub fn moment(rf: &RationalForm, d: u32) -> Rat {
    let kappa = cumulants(rf, d.max(1));
    moment_from_cumulants(&kappa, d, false)
}

/// Central moment `E[(X - mu)^d]`.
pub fn central_moment(rf: &RationalForm, d: u32) -> Rat {
    let kappa = cumulants(rf, d.max(1));
    moment_from_cumulants(&kappa, d, true)
}

fn check_distribution(p: &IntPoly) -> Result<BigInt, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_nonnegative() {
        return Err(Error::NegativeCoefficient);
    }
    Ok(p.eval_one())
}

/// `sum k^d c_k / f(1)`, straight from the coefficients.
pub fn moment_oracle(p: &IntPoly, d: u32) -> Result<Rat, Error> {
    let total = check_distribution(p)?;
    let s: BigInt = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| BigInt::from(k).pow(d) * c)
        .sum();
    Ok(Rat::new(s, total))
}

/// `sum (k - mu)^d c_k / f(1)`, straight from the coefficients.
pub fn central_moment_oracle(p: &IntPoly, d: u32) -> Result<Rat, Error> {
    let total = check_distribution(p)?;
    let mu = moment_oracle(p, 1)?;
    let mut s = Rat::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let x = rat(k as i64) - &mu;
        let mut pw = Rat::one();
        for _ in 0..d {
            pw *= &x;
        }
        s += pw * Rat::from_integer(c.clone());
    }
    Ok(s / Rat::from_integer(total))
}

/// `kappa_d(Phi_n) = (B_d/d) J_d(n)` for `n >= 2`.
pub fn cyclo_cumulant(n: u64, d: u32) -> Result<Rat, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("cyclotomic cumulants need n >= 2"));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("cumulants are indexed from 1"));
    }
    Ok(bernoulli(d) / rat(d as i64) * Rat::from_integer(BigInt::from(jordan(n, d))))
}

/// Nearest `f64` to an exact rational.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if let Some(v) = x.to_f64() {
        return v;
    }
    // scale both parts down until they fit
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(0.0);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

fn cis(x: f64) -> Complex64 {
    Complex64::new(libm::cos(x), libm::sin(x))
}

/// `phi(t) = f(e^{it}) / f(1)` by summing the coefficient vector. When
/// `standardized`, returns `e^{-it mu/sigma} phi(t/sigma)` instead.
pub fn charfun_eval(p: &IntPoly, t: f64, standardized: bool) -> Result<Complex64, Error> {
    let total = check_distribution(p)?;
    let (scale, shift) = if standardized {
        let mu = rat_to_f64(&moment_oracle(p, 1)?);
        let var = central_moment_oracle(p, 2)?;
        if var.is_zero() {
            return Err(Error::DegenerateVariance);
        }
        let sigma = libm::sqrt(rat_to_f64(&var));
        (1.0 / sigma, mu / sigma)
    } else {
        (1.0, 0.0)
    };
    let s = t * scale;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = rat_to_f64(&Rat::new(c.clone(), total.clone()));
        acc += cis(s * k as f64) * w;
    }
    Ok(acc * cis(-t * shift))
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 { 1.0 } else { libm::sin(x) / x }
}

/// `phi(t) = e^{i t mu} prod sinc(a t/2) / sinc(b t/2)` on the padded
/// multisets. Returns `None` within `1e-6` of a denominator zero.
pub fn charfun_sinc(rf: &RationalForm, t: f64) -> Option<Complex64> {
    let (a, b) = rf.padded();
    let mut prod = 1.0;
    for (&x, &y) in a.iter().zip(&b) {
        let den = sinc(y as f64 * t / 2.0);
        if libm::fabs(den) < 1e-6 {
            return None;
        }
        prod *= sinc(x as f64 * t / 2.0) / den;
    }
    let mu = rat_to_f64(&cumulant(rf, 1));
    Some(cis(t * mu) * prod)
}

/// One term of the expansion of `log phi_{X*}(z)` in `z^{2d}/(2d)!`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCharfunTerm {
    /// The even order `2d`.
    pub order: u32,
    /// `kappa_{2d}`.
    pub kappa: Rat,
    /// `sigma^{2d} = kappa_2^d`.
    pub sigma_power: Rat,
    /// `kappa*_{2d} = kappa_{2d} / sigma^{2d}`.
    pub standardized: Rat,
    /// Coefficient of `z^{2d}/(2d)!`, equal to `(-1)^d kappa*_{2d}`.
    pub coefficient: Rat,
    pub value: f64,
}

/// Coefficients of `z^{2d}/(2d)!` in `log phi_{X*}(z)` for `2 <= 2d <= max_order`.
pub fn log_charfun_coeffs(rf: &RationalForm, max_order: u32) -> Result<Vec<LogCharfunTerm>, Error> {
    let k2 = cumulant(rf, 2);
    if !k2.is_positive() {
        return Err(Error::DegenerateVariance);
    }
    let mut out = Vec::new();
    let mut sigma_power = Rat::one();
    for d in 1..=max_order / 2 {
        sigma_power *= &k2;
        let kappa = cumulant(rf, 2 * d);
        let standardized = &kappa / &sigma_power;
        let coefficient = if d % 2 == 0 { standardized.clone() } else { -standardized.clone() };
        out.push(LogCharfunTerm {
            order: 2 * d,
            value: rat_to_f64(&coefficient),
            kappa,
            sigma_power: sigma_power.clone(),
            standardized,
            coefficient,
        });
    }
    Ok(out)
}
