//! Dense univariate polynomials over the integers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// A polynomial `sum c_k q^k` with arbitrary-precision integer coefficients.
///
/// Coefficients are stored low to high. The highest stored coefficient is
/// always nonzero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Coefficient-shape predicates of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffProfile {
    pub nonnegative: bool,
    pub monic: bool,
    pub palindromic: bool,
    pub unimodal: bool,
    pub log_concave_no_internal_zeros: bool,
    /// gcd of all coefficients.
    pub content: BigUint,
    /// Largest `beta` with `q^beta` dividing the polynomial.
    pub zero_order: usize,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from low-to-high coefficients, trimming
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `q^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn mul_ref(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Returns `r` with `self = divisor * r`, using long division over the
    /// integers. Fails on a nonzero remainder or when a leading
    /// coefficient does not divide.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, Error> {
        let lead = divisor.leading().ok_or(Error::InvalidParameter("division by zero polynomial"))?;
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Err(Error::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        let lead_is_one = lead.is_one();
        for k in (0..qlen).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = if lead_is_one {
                top.clone()
            } else {
                let (c, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                c
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Exact value at an integer point (Horner).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of the coefficients, `p(1)`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
            .magnitude()
            .clone()
    }

    /// Largest `beta` with `q^beta | p`; zero for the zero polynomial.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Computes all coefficient predicates. The zero polynomial is rejected.
    pub fn profile(&self) -> Result<CoeffProfile, Error> {
        let c = &self.coeffs;
        if c.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let n = c.len();
        let nonnegative = self.is_nonnegative();
        let monic = c[n - 1].is_one();
        let palindromic = (0..n / 2).all(|k| c[k] == c[n - 1 - k]);

        let mut k = 1;
        while k < n && c[k] >= c[k - 1] {
            k += 1;
        }
        while k < n && c[k] <= c[k - 1] {
            k += 1;
        }
        let unimodal = k == n;

        let first = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
        let contiguous = c[first..].iter().all(|x| !x.is_zero());
        let log_concave = (first + 1..n.saturating_sub(1)).all(|k| &c[k] * &c[k] >= &c[k - 1] * &c[k + 1]);

        Ok(CoeffProfile {
            nonnegative,
            monic,
            palindromic,
            unimodal,
            log_concave_no_internal_zeros: nonnegative && contiguous && log_concave,
            content: self.content(),
            zero_order: self.zero_order(),
        })
    }

    /// Human-readable form, highest degree first, e.g. `q^2 - q + 1`.
    pub fn pretty(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            let mag = c.magnitude();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            if !unit || k == 0 {
                let _ = write!(s, "{mag}");
            }
            match k {
                0 => {}
                1 => s.push('q'),
                _ => {
                    let _ = write!(s, "q^{k}");
                }
            }
        }
        s
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_ref(rhs)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        self.mul_ref(&rhs)
    }
}

/// Comma-separated coefficients, low to high (`1,1,3,4`). The zero
/// polynomial prints as `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
