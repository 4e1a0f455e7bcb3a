//! Integer partitions.

use alloc::vec::Vec;

use crate::Error;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u64>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate partition (column lengths).
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u64)
            .collect();
        Partition { parts }
    }

    /// Hook lengths `arm + leg + 1` of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u64 - 1;
                let leg = conj.parts[j] - i as u64 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// `b(lambda) = sum_i (i - 1) lambda_i` with rows indexed from 1.
    pub fn b_statistic(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p)
            .sum()
    }
}

/// All partitions of `n` as weakly decreasing part vectors, in reverse
/// lexicographic order starting from `(n)`.
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Partitions {
    pub fn new(n: u64) -> Self {
        let first = if n == 0 { Vec::new() } else { alloc::vec![n] };
        Partitions {
            current: Some(first),
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.current.take()?;
        // successor: drop trailing 1's, decrement the last part > 1, and
        // refill the freed amount greedily with parts no larger than it
        let mut next = cur.clone();
        let mut freed = 0u64;
        while next.last() == Some(&1) {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            freed += 1;
            let cap = *last;
            while freed > 0 {
                let part = freed.min(cap);
                next.push(part);
                freed -= part;
            }
            self.current = Some(next);
        }
        Some(cur)
    }
}

/// Calls `f` with the multiplicity vector of every partition of `n` whose
/// parts come from `allowed` (ascending, distinct). `f` receives pairs
/// `(part, multiplicity)` with positive multiplicities. `max_mult(part)`
/// caps how often a part may repeat.
pub fn for_each_restricted<F, M>(n: u64, allowed: &[u64], max_mult: M, f: &mut F)
where
    F: FnMut(&[(u64, u64)]),
    M: Fn(u64) -> u64,
{
    fn go<F, M>(rem: u64, allowed: &[u64], max_mult: &M, acc: &mut Vec<(u64, u64)>, f: &mut F)
    where
        F: FnMut(&[(u64, u64)]),
        M: Fn(u64) -> u64,
    {
        if rem == 0 {
            f(acc);
            return;
        }
        let Some((&part, rest)) = allowed.split_last() else {
            return;
        };
        let cap = (rem / part).min(max_mult(part));
        for m in (0..=cap).rev() {
            if m > 0 {
                acc.push((part, m));
            }
            go(rem - m * part, rest, max_mult, acc, f);
            if m > 0 {
                acc.pop();
            }
        }
    }
    let mut acc = Vec::new();
    go(n, allowed, &max_mult, &mut acc, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..15).map(|n| Partitions::new(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]);
    }

    #[test]
    fn order_and_shape() {
        let all: Vec<Vec<u64>> = Partitions::new(4).collect();
        assert_eq!(
            all,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        for p in Partitions::new(10) {
            assert_eq!(p.iter().sum::<u64>(), 10);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn restricted_generation_matches_filter() {
        let allowed = [1u64, 3, 4];
        let mut seen = 0;
        for_each_restricted(12, &allowed, |p| if p == 1 { 2 } else { 99 }, &mut |ms| {
            seen += 1;
            assert_eq!(ms.iter().map(|(p, m)| p * m).sum::<u64>(), 12);
        });
        let expected = Partitions::new(12)
            .filter(|p| p.iter().all(|x| allowed.contains(x)))
            .filter(|p| p.iter().filter(|&&x| x == 1).count() <= 2)
            .count();
        assert_eq!(seen, expected);
    }

    #[test]
    fn hooks_and_b() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(l.hook_lengths(), vec![3, 1, 1]);
        assert_eq!(l.b_statistic(), 1);
        let col = Partition::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(col.b_statistic(), 6);
        assert_eq!(col.conjugate().parts(), &[4]);
        let l = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(l.hook_lengths(), vec![6, 4, 2, 1, 3, 1, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
