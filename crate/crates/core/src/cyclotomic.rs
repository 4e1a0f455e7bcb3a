//! Number-theoretic helpers and cyclotomic polynomials.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use spin::Mutex;

use crate::{Error, IntPoly};

/// Euler totient, Moebius value and Jordan totients of one integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NtProfile {
    pub n: u64,
    pub euler_phi: u64,
    pub mobius: i8,
    /// `J_d(n)` for `1 <= d <= max_d`.
    pub jordan: BTreeMap<u32, BigUint>,
}

/// Prime factorization by trial division, as `(p, exponent)` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `J_d(n) = n^d prod_{p | n} (1 - p^-d)`, evaluated as
/// `prod p^{d(e-1)} (p^d - 1)` over the prime factorization.
pub fn jordan(n: u64, d: u32) -> BigUint {
    factorize(n).into_iter().fold(BigUint::one(), |acc, (p, e)| {
        let pd = BigUint::from(p).pow(d);
        acc * BigUint::from(p).pow(d * (e - 1)) * (pd - 1u32)
    })
}

/// `true` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

pub fn nt_profile(n: u64, max_d: u32) -> Result<NtProfile, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive"));
    }
    Ok(NtProfile {
        n,
        euler_phi: euler_phi(n),
        mobius: mobius(n),
        jordan: (1..=max_d).map(|d| (d, jordan(n, d))).collect(),
    })
}

static CYCLO_CACHE: Mutex<BTreeMap<u64, Arc<IntPoly>>> = Mutex::new(BTreeMap::new());

/// The cyclotomic polynomial `Phi_n(q)`.
///
/// Computed as `q^n - 1` divided exactly by `Phi_d` for every proper
/// divisor `d`, and memoized for the lifetime of the process.
///
/// # Panics
///
/// Panics when `n == 0`.
pub fn cyclo(n: u64) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = CYCLO_CACHE.lock().get(&n) {
        return p.clone();
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut p = IntPoly::from_coeffs(coeffs);
    for d in divisors(n) {
        if d < n {
            p = p
                .div_exact(&cyclo(d))
                .expect("Phi_d divides q^n - 1 for d | n");
        }
    }
    let p = Arc::new(p);
    CYCLO_CACHE.lock().entry(n).or_insert(p).clone()
}

/// Seeds the cache with a previously computed `Phi_n`.
///
/// The polynomial is accepted only if its product with `Phi_d` over the
/// proper divisors `d` of `n` is exactly `q^n - 1`.
pub fn preload(n: u64, poly: IntPoly) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive"));
    }
    let product = divisors(n)
        .into_iter()
        .filter(|&d| d < n)
        .fold(poly.clone(), |acc, d| acc.mul_ref(&cyclo(d)));
    let mut target = vec![BigInt::zero(); n as usize + 1];
    target[0] = BigInt::from(-1);
    target[n as usize] = BigInt::one();
    if product != IntPoly::from_coeffs(target) {
        return Err(Error::Verification("preloaded polynomial is not Phi_n"));
    }
    CYCLO_CACHE.lock().entry(n).or_insert_with(|| Arc::new(poly));
    Ok(())
}

/// Snapshot of every cached `Phi_n`, ascending in `n`.
pub fn cached() -> Vec<(u64, Arc<IntPoly>)> {
    CYCLO_CACHE
        .lock()
        .iter()
        .map(|(n, p)| (*n, p.clone()))
        .collect()
}

/// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u64) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); n as usize])
}

/// Moebius-inversion form of `Phi_n` as a quotient of q-integers:
/// the divisors `d | n` with `mu(n/d) = +1` and those with `mu(n/d) = -1`.
pub fn cyclo_rational(n: u64) -> Result<(Vec<u64>, Vec<u64>), Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("Phi_1 has no q-integer quotient form"));
    }
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => numer.push(d),
            -1 => denom.push(d),
            _ => {}
        }
    }
    Ok((numer, denom))
}

/// Smallest `n` with `phi(m) > max_degree` for all `m >= n`: every index
/// whose cyclotomic degree is at most `max_degree` lies below it.
pub fn index_bound(max_degree: u64) -> u64 {
    2 * max_degree * max_degree + 3
}

/// All `n >= 1` with `phi(n) <= max_degree`, ascending.
pub fn indices_up_to_degree(max_degree: u64) -> Vec<u64> {
    (1..index_bound(max_degree))
        .filter(|&n| euler_phi(n) <= max_degree)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn nt_profile_examples() {
        let twelve = nt_profile(12, 2).unwrap();
        assert_eq!((twelve.euler_phi, twelve.mobius), (4, 0));
        assert_eq!(nt_profile(27, 1).unwrap().euler_phi, 18);
        // divisor-sum oracle: sum_{k | 6} mu(6/k) k^2 = 36 - 9 - 4 + 1
        let oracle: i64 = divisors(6)
            .into_iter()
            .map(|k| mobius(6 / k) as i64 * (k * k) as i64)
            .sum();
        assert_eq!(oracle, 24);
        assert_eq!(nt_profile(6, 2).unwrap().jordan[&2], BigUint::from(24u32));
        assert!(nt_profile(0, 1).is_err());
    }

    #[test]
    fn jordan_matches_divisor_sum() {
        for n in 1..200u64 {
            for d in 1..6u32 {
                let sum: BigInt = divisors(n)
                    .into_iter()
                    .map(|k| BigInt::from(mobius(n / k)) * BigInt::from(k).pow(d))
                    .sum();
                assert_eq!(sum, BigInt::from(jordan(n, d)), "n={n} d={d}");
            }
            assert_eq!(BigUint::from(euler_phi(n)), jordan(n, 1));
        }
    }

    #[test]
    fn totient_elementary_bounds() {
        for n in 1..2000u64 {
            let phi = euler_phi(n) as f64;
            assert!(phi <= n as f64);
            assert!(phi >= libm::sqrt(n as f64 / 2.0), "n={n}");
        }
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 2..300u64 {
            let s: i64 = divisors(n).into_iter().map(|d| mobius(n / d) as i64).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclo(1), p(&[-1, 1]));
        assert_eq!(*cyclo(2), p(&[1, 1]));
        assert_eq!(*cyclo(3), p(&[1, 1, 1]));
        assert_eq!(*cyclo(4), p(&[1, 0, 1]));
        assert_eq!(*cyclo(6), p(&[1, -1, 1]));
        let mut c27 = vec![0i64; 19];
        c27[0] = 1;
        c27[9] = 1;
        c27[18] = 1;
        assert_eq!(*cyclo(27), p(&c27));
    }

    #[test]
    fn product_over_divisors_is_q_n_minus_one() {
        for n in 1..=200u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(IntPoly::one(), |acc, d| &acc * &*cyclo(d));
            let mut c = vec![BigInt::zero(); n as usize + 1];
            c[0] = BigInt::from(-1);
            c[n as usize] = BigInt::one();
            assert_eq!(prod, IntPoly::from_coeffs(c), "n={n}");
        }
    }

    #[test]
    fn structural_properties() {
        for n in 2..=200u64 {
            let f = cyclo(n);
            let pr = f.profile().unwrap();
            assert!(pr.palindromic && pr.monic);
            assert_eq!(f.coeff(0), BigInt::one());
            assert_eq!(f.degree(), Some(euler_phi(n) as usize));
            let fac = factorize(n);
            let expected = if fac.len() == 1 { fac[0].0 } else { 1 };
            assert_eq!(f.eval_one(), BigInt::from(expected), "n={n}");
        }
    }

    #[test]
    fn prime_power_formula() {
        for n in 2..=128u64 {
            let fac = factorize(n);
            if fac.len() != 1 {
                continue;
            }
            let (pr, k) = fac[0];
            let step = pr.pow(k - 1) as usize;
            let mut c = vec![0i64; step * (pr as usize - 1) + 1];
            for j in 0..pr as usize {
                c[j * step] = 1;
            }
            assert_eq!(*cyclo(n), p(&c), "n={n}");
        }
    }

    #[test]
    fn q_integers() {
        assert!(q_int(1).is_one());
        assert_eq!(q_int(5), *cyclo(5));
        assert_eq!(q_int(6), &(&*cyclo(2) * &*cyclo(3)) * &*cyclo(6));
        for n in 2..60u64 {
            let prod = divisors(n)
                .into_iter()
                .filter(|&d| d > 1)
                .fold(IntPoly::one(), |acc, d| &acc * &*cyclo(d));
            assert_eq!(prod, q_int(n));
        }
    }

    #[test]
    fn moebius_quotient_forms() {
        assert_eq!(cyclo_rational(6).unwrap(), (vec![1, 6], vec![2, 3]));
        assert_eq!(cyclo_rational(4).unwrap(), (vec![4], vec![2]));
        assert_eq!(cyclo_rational(7).unwrap(), (vec![7], vec![1]));
        assert!(cyclo_rational(1).is_err());
        for n in 2..80u64 {
            let (num, den) = cyclo_rational(n).unwrap();
            assert_eq!(num.len(), den.len());
            let top = num.iter().fold(IntPoly::one(), |acc, &a| &acc * &q_int(a));
            let bottom = den.iter().fold(IntPoly::one(), |acc, &b| &acc * &q_int(b));
            assert_eq!(top.div_exact(&bottom).unwrap(), *cyclo(n));
        }
    }

    #[test]
    fn preload_validates() {
        assert!(preload(6, p(&[1, -1, 1])).is_ok());
        assert!(preload(5, p(&[1, 1])).is_err());
    }

    #[test]
    fn degree_index_bound_is_sound() {
        let idx = indices_up_to_degree(6);
        assert_eq!(idx, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]);
    }
}
