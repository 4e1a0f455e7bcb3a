//! Named CGF families and brute-force enumerations that certify them.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::forms::RationalForm;
use crate::partitions::Partition;
use crate::{Error, IntPoly};

/// Largest number of states an exhaustive oracle may visit.
pub const STATE_LIMIT: u128 = 10_000_000;

/// A named family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `[n]! / ([k]! [n-k]!)`.
    QBinomial { n: u64, k: u64 },
    /// `[n]!`.
    QFactorial { n: u64 },
    /// `[c_1 + ... + c_r]! / prod [c_i]!`.
    QMultinomial { composition: Vec<u64> },
    /// `[2n]! / ([n]! [n+1]!)`.
    QCatalan { n: u64 },
}

/// Rational form of a family member, not reduced.
pub fn family(f: &Family) -> Result<RationalForm, Error> {
    let (numer, denom): (Vec<u64>, Vec<u64>) = match *f {
        Family::QBinomial { n, k } => {
            if k > n {
                return Err(Error::InvalidParameter("q-binomial needs k <= n"));
            }
            ((n - k + 1..=n).collect(), (1..=k).collect())
        }
        Family::QFactorial { n } => ((1..=n).collect(), vec![1; n as usize]),
        Family::QMultinomial { ref composition } => {
            if composition.is_empty() {
                return Err(Error::InvalidParameter("q-multinomial needs a nonempty composition"));
            }
            if composition.contains(&0) {
                return Err(Error::InvalidParameter("composition parts must be positive"));
            }
            let total: u64 = composition.iter().sum();
            let denom = composition.iter().flat_map(|&c| 1..=c).collect();
            ((1..=total).collect(), denom)
        }
        Family::QCatalan { n } => ((n + 2..=2 * n).collect(), (1..=n).collect()),
    };
    RationalForm::new(numer, denom)
}

/// Size generating function of plane partitions in an `x * y * z` box:
/// numerator `{i+j+z-1}`, denominator `{i+j-1}` over `1 <= i <= x`,
/// `1 <= j <= y`.
pub fn macmahon_box(x: u64, y: u64, z: u64) -> Result<RationalForm, Error> {
    if x == 0 || y == 0 || z == 0 {
        return Err(Error::InvalidParameter("box sides must be positive"));
    }
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for i in 1..=x {
        for j in 1..=y {
            numer.push(i + j + z - 1);
            denom.push(i + j - 1);
        }
    }
    RationalForm::new(numer, denom)
}

/// `q^{b(lambda)} [n]! / prod [h_c]`, the major-index generating function
/// of standard Young tableaux of shape `lambda`.
pub fn hook_cgf(lambda: &Partition) -> Result<RationalForm, Error> {
    if lambda.is_empty() {
        return Err(Error::InvalidParameter("partition must be nonempty"));
    }
    let rf = RationalForm::new((1..=lambda.size()).collect(), lambda.hook_lengths())?;
    rf.with_scale(1u32.into(), lambda.b_statistic() as usize)
}

/// Exhaustive enumerations used as independent oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// `x * y` arrays with entries in `0..=z`, weakly decreasing along rows
    /// and columns, counted by entry sum.
    PlanePartitions { x: u64, y: u64, z: u64 },
    /// Standard Young tableaux of a shape, counted by major index.
    SytMaj(Partition),
    /// Partitions fitting in a `k * (n-k)` box, counted by size.
    BoxPartitions { n: u64, k: u64 },
}

pub fn bruteforce_oracle(o: &Oracle) -> Result<IntPoly, Error> {
    match o {
        Oracle::PlanePartitions { x, y, z } => plane_partitions(*x, *y, *z),
        Oracle::SytMaj(l) => syt_maj(l),
        Oracle::BoxPartitions { n, k } => box_partitions(*n, *k),
    }
}

fn guard(states: u128) -> Result<(), Error> {
    if states > STATE_LIMIT {
        Err(Error::SizeGuard { states, limit: STATE_LIMIT })
    } else {
        Ok(())
    }
}

fn saturating_pow(base: u128, exp: u64) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn tally(counts: Vec<u64>) -> IntPoly {
    IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

pub fn plane_partitions(x: u64, y: u64, z: u64) -> Result<IntPoly, Error> {
    guard(saturating_pow(z as u128 + 1, x.saturating_mul(y)))?;
    let (x, y) = (x as usize, y as usize);
    let mut counts = vec![0u64; x * y * z as usize + 1];
    let mut grid = vec![0u64; x * y];

    fn fill(cell: usize, x: usize, y: usize, z: u64, sum: usize, grid: &mut [u64], counts: &mut [u64]) {
        if cell == x * y {
            counts[sum] += 1;
            return;
        }
        let (i, j) = (cell / y, cell % y);
        let mut cap = z;
        if i > 0 {
            cap = cap.min(grid[cell - y]);
        }
        if j > 0 {
            cap = cap.min(grid[cell - 1]);
        }
        for v in 0..=cap {
            grid[cell] = v;
            fill(cell + 1, x, y, z, sum + v as usize, grid, counts);
        }
    }

    fill(0, x, y, z, 0, &mut grid, &mut counts);
    Ok(tally(counts))
}

pub fn syt_maj(lambda: &Partition) -> Result<IntPoly, Error> {
    let n = lambda.size();
    guard((1..=n as u128).fold(1u128, |acc, j| acc.saturating_mul(j)))?;
    let shape = lambda.parts();
    let max_maj = (n * n.saturating_sub(1) / 2) as usize;
    let mut counts = vec![0u64; max_maj + 1];
    let mut filled = vec![0u64; shape.len()];

    // place 1..=n in turn; `prev_row` is the row holding the last entry
    fn place(
        next: u64,
        n: u64,
        prev_row: usize,
        maj: usize,
        shape: &[u64],
        filled: &mut [u64],
        counts: &mut [u64],
    ) {
        if next > n {
            counts[maj] += 1;
            return;
        }
        for r in 0..shape.len() {
            let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
            if !ok {
                continue;
            }
            // next - 1 is a descent when next lands strictly lower
            let m = if next > 1 && r > prev_row { maj + (next - 1) as usize } else { maj };
            filled[r] += 1;
            place(next + 1, n, r, m, shape, filled, counts);
            filled[r] -= 1;
        }
    }

    place(1, n, 0, 0, shape, &mut filled, &mut counts);
    Ok(tally(counts))
}

pub fn box_partitions(n: u64, k: u64) -> Result<IntPoly, Error> {
    if k > n {
        return Err(Error::InvalidParameter("box partitions need k <= n"));
    }
    let width = n - k;
    guard(saturating_pow(width as u128 + 1, k))?;
    let mut counts = vec![0u64; (k * width) as usize + 1];

    fn go(rows_left: u64, cap: u64, sum: usize, counts: &mut [u64]) {
        if rows_left == 0 {
            counts[sum] += 1;
            return;
        }
        for v in 0..=cap {
            go(rows_left - 1, v, sum + v as usize, counts);
        }
    }

    go(k, width, 0, &mut counts);
    Ok(tally(counts))
}
