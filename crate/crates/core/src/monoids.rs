//! Enumeration of the cyclotomic monoids by degree.
//!
//! Elements are multisets of cyclotomic indices; distinct multisets give
//! distinct polynomials, so counting multisets counts elements. The five
//! classes are nested as `LCC <= UNI <= PLUS <= PM` and `GALE <= PLUS`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, ToPrimitive};

use crate::cyclotomic::{cyclo, euler_phi, index_bound, indices_up_to_degree, is_prime};
use crate::forms::{cyclo_to_rational, gale_leq, majorizes_both_sides, rational_to_poly, CycloForm, RationalForm};
use crate::{Error, IntPoly};

/// Largest degree the machine-word enumeration supports: the l1 norm of a
/// product of cyclotomics of total degree `D` is at most `2^D`.
pub const MAX_DEGREE: u64 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonoidClass {
    /// All products of cyclotomic polynomials, `Phi_1` included.
    Pm,
    /// Products with nonnegative coefficients (basic CGFs).
    Plus,
    /// Basic CGFs with unimodal coefficients.
    Uni,
    /// Basic CGFs with log-concave coefficients and no internal zeros.
    Lcc,
    /// Basic CGFs whose reduced rational form satisfies `b_k <= a_k`.
    Gale,
}

impl MonoidClass {
    pub const ALL: [MonoidClass; 5] = [
        MonoidClass::Lcc,
        MonoidClass::Uni,
        MonoidClass::Gale,
        MonoidClass::Plus,
        MonoidClass::Pm,
    ];

    fn bit(self) -> u8 {
        match self {
            MonoidClass::Pm => 1,
            MonoidClass::Plus => 2,
            MonoidClass::Uni => 4,
            MonoidClass::Lcc => 8,
            MonoidClass::Gale => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonoidClass::Pm => "pm",
            MonoidClass::Plus => "plus",
            MonoidClass::Uni => "uni",
            MonoidClass::Lcc => "lcc",
            MonoidClass::Gale => "gale",
        }
    }
}

impl fmt::Display for MonoidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonoidClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "pm" | "plusminus" => Ok(MonoidClass::Pm),
            "plus" => Ok(MonoidClass::Plus),
            "uni" => Ok(MonoidClass::Uni),
            "lcc" => Ok(MonoidClass::Lcc),
            "gale" => Ok(MonoidClass::Gale),
            _ => Err(Error::InvalidParameter("unknown monoid class")),
        }
    }
}

/// Elements and generators of one class in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumRecord {
    pub degree: u64,
    pub class: MonoidClass,
    /// Ascending index multisets, in lexicographic order.
    pub elements: Vec<Vec<u64>>,
    pub generators: Vec<Vec<u64>>,
}

impl EnumRecord {
    pub fn count(&self) -> usize {
        self.elements.len()
    }
}

fn mul_small(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn small_cyclo(n: u64) -> Vec<i64> {
    cyclo(n)
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficients in range are small"))
        .collect()
}

fn unimodal(c: &[i64]) -> bool {
    let mut k = 1;
    while k < c.len() && c[k] >= c[k - 1] {
        k += 1;
    }
    while k < c.len() && c[k] <= c[k - 1] {
        k += 1;
    }
    k == c.len()
}

fn log_concave_no_internal_zeros(c: &[i64]) -> bool {
    c.iter().all(|&x| x > 0)
        && (1..c.len().saturating_sub(1))
            .all(|k| (c[k] as i128) * (c[k] as i128) >= (c[k - 1] as i128) * (c[k + 1] as i128))
}

fn is_gale(indices: &[u64]) -> bool {
    let cf = CycloForm {
        alpha: 1u32.into(),
        beta: 0,
        indices: indices.to_vec(),
    };
    let rf = cyclo_to_rational(&cf);
    gale_leq(&rf.denom, &rf.numer)
}

/// Class bitmask of the product with coefficients `c` of the ascending
/// multiset `indices`.
fn flags_of(indices: &[u64], c: &[i64]) -> u8 {
    let mut f = MonoidClass::Pm.bit();
    if indices.first() == Some(&1) || c.iter().any(|&x| x < 0) {
        return f;
    }
    f |= MonoidClass::Plus.bit();
    if unimodal(c) {
        f |= MonoidClass::Uni.bit();
    }
    if log_concave_no_internal_zeros(c) {
        f |= MonoidClass::Lcc.bit();
    }
    if is_gale(indices) {
        f |= MonoidClass::Gale.bit();
    }
    f
}

/// Whether the product of `indices` (any order, values `>= 1`) lies in
/// `class`.
pub fn indices_in_class(indices: &[u64], class: MonoidClass) -> bool {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    let c = sorted
        .iter()
        .fold(vec![1i64], |acc, &n| mul_small(&acc, &small_cyclo(n)));
    flags_of(&sorted, &c) & class.bit() != 0
}

/// Cyclotomic factorization of a monic polynomial with `p(0) != 0`, index 1
/// allowed; `None` when some factor is not cyclotomic.
pub fn cyclotomic_indices(p: &IntPoly) -> Option<Vec<u64>> {
    let deg = p.degree()? as u64;
    if !p.leading()?.is_one() || p.zero_order() > 0 {
        return None;
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    for n in 1..index_bound(deg.max(1)) {
        while rest.degree().unwrap_or(0) as u64 >= euler_phi(n) {
            match rest.div_exact(&cyclo(n)) {
                Ok(q) => {
                    rest = q;
                    out.push(n);
                }
                Err(_) => break,
            }
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    rest.is_one().then_some(out)
}

/// Membership of a polynomial in a class.
pub fn class_membership(p: &IntPoly, class: MonoidClass) -> bool {
    cyclotomic_indices(p).is_some_and(|ix| indices_in_class(&ix, class))
}

/// Membership of a cyclotomic form; only basic forms can be members.
pub fn class_membership_cyclo(cf: &CycloForm, class: MonoidClass) -> bool {
    cf.is_basic() && indices_in_class(&cf.indices, class)
}

/// Indices `n` with `phi(n) <= max_degree` (index 1 included). Each one
/// labels the stratum of multisets whose largest index is `n`.
pub fn strata(max_degree: u64) -> Vec<u64> {
    indices_up_to_degree(max_degree)
}

/// One enumerated multiset with its class bitmask.
pub type Entry = (Vec<u64>, u8);

/// Every multiset of total cyclotomic degree `<= max_degree` whose largest
/// index is `largest`, as ascending vectors with class flags.
pub fn enumerate_stratum(max_degree: u64, largest: u64) -> Result<Vec<Entry>, Error> {
    if max_degree > MAX_DEGREE {
        return Err(Error::SizeGuard {
            states: max_degree as u128,
            limit: MAX_DEGREE as u128,
        });
    }
    let pool: Vec<(u64, u64, Vec<i64>)> = indices_up_to_degree(max_degree)
        .into_iter()
        .filter(|&n| n <= largest)
        .map(|n| (n, euler_phi(n), small_cyclo(n)))
        .collect();
    let Some(top) = pool.iter().position(|&(n, _, _)| n == largest) else {
        return Ok(Vec::new());
    };
    if pool[top].1 > max_degree {
        return Ok(Vec::new());
    }

    struct Walk<'a> {
        pool: &'a [(u64, u64, Vec<i64>)],
        max_degree: u64,
        stack: Vec<u64>,
        out: Vec<Entry>,
    }

    impl Walk<'_> {
        fn go(&mut self, pos: usize, degree: u64, poly: &[i64]) {
            // stack is non-increasing; report it ascending
            let asc: Vec<u64> = self.stack.iter().rev().copied().collect();
            let flags = flags_of(&asc, poly);
            self.out.push((asc, flags));
            for i in (0..=pos).rev() {
                let (n, phi, ref c) = self.pool[i];
                if degree + phi > self.max_degree {
                    continue;
                }
                let next = mul_small(poly, c);
                self.stack.push(n);
                self.go(i, degree + phi, &next);
                self.stack.pop();
            }
        }
    }

    let (n, phi, ref c) = pool[top];
    let mut walk = Walk {
        pool: &pool,
        max_degree,
        stack: vec![n],
        out: Vec::new(),
    };
    walk.go(top, phi, c);
    Ok(walk.out)
}

/// All classes up to a fixed degree, from one sweep over index multisets.
#[derive(Clone, Debug)]
pub struct Catalog {
    max_degree: u64,
    /// `by_degree[n]` holds the degree-`n` multisets in lexicographic order.
    by_degree: Vec<Vec<Entry>>,
}

impl Catalog {
    /// Sequential build over every stratum.
    pub fn build(max_degree: u64) -> Result<Catalog, Error> {
        let mut all = Vec::new();
        for s in strata(max_degree) {
            all.extend(enumerate_stratum(max_degree, s)?);
        }
        Ok(Catalog::from_entries(max_degree, all))
    }

    /// Assembles a catalog from stratum outputs in any order.
    pub fn from_entries(max_degree: u64, entries: impl IntoIterator<Item = Entry>) -> Catalog {
        let mut by_degree = vec![Vec::new(); max_degree as usize + 1];
        for (ix, flags) in entries {
            let d: u64 = ix.iter().map(|&n| euler_phi(n)).sum();
            by_degree[d as usize].push((ix, flags));
        }
        for v in &mut by_degree {
            v.sort_unstable();
        }
        Catalog {
            max_degree,
            by_degree,
        }
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    fn check_degree(&self, n: u64) -> Result<(), Error> {
        if n == 0 || n > self.max_degree {
            Err(Error::InvalidParameter("degree outside the catalog range"))
        } else {
            Ok(())
        }
    }

    /// Degree-`n` members of `class`, lexicographically ordered.
    pub fn elements(&self, class: MonoidClass, n: u64) -> Result<Vec<Vec<u64>>, Error> {
        self.check_degree(n)?;
        Ok(self.by_degree[n as usize]
            .iter()
            .filter(|(_, f)| f & class.bit() != 0)
            .map(|(ix, _)| ix.clone())
            .collect())
    }

    pub fn count(&self, class: MonoidClass, n: u64) -> Result<usize, Error> {
        self.check_degree(n)?;
        Ok(self.by_degree[n as usize]
            .iter()
            .filter(|(_, f)| f & class.bit() != 0)
            .count())
    }

    fn member_set(&self, class: MonoidClass, below: u64) -> BTreeSet<&[u64]> {
        self.by_degree[..below as usize]
            .iter()
            .flatten()
            .filter(|(_, f)| f & class.bit() != 0)
            .map(|(ix, _)| ix.as_slice())
            .collect()
    }

    /// Degree-`n` irreducible members: no split into two nonempty
    /// sub-multisets that both lie in the class.
    pub fn generators(&self, class: MonoidClass, n: u64) -> Result<Vec<Vec<u64>>, Error> {
        let members = self.member_set(class, n);
        Ok(self
            .elements(class, n)?
            .into_iter()
            .filter(|ix| !splits(ix, &members))
            .collect())
    }

    pub fn record(&self, class: MonoidClass, n: u64) -> Result<EnumRecord, Error> {
        Ok(EnumRecord {
            degree: n,
            class,
            elements: self.elements(class, n)?,
            generators: self.generators(class, n)?,
        })
    }
}

/// Whether `ix` (ascending) splits into two nonempty parts in `members`.
fn splits(ix: &[u64], members: &BTreeSet<&[u64]>) -> bool {
    let mut groups: Vec<(u64, usize)> = Vec::new();
    for &n in ix {
        match groups.last_mut() {
            Some((m, c)) if *m == n => *c += 1,
            _ => groups.push((n, 1)),
        }
    }
    let mut take = vec![0usize; groups.len()];
    let mut part = Vec::with_capacity(ix.len());
    let mut rest = Vec::with_capacity(ix.len());
    loop {
        // odometer over sub-multiset choices
        let mut i = 0;
        while i < groups.len() && take[i] == groups[i].1 {
            take[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            return false;
        }
        take[i] += 1;
        let size: usize = take.iter().sum();
        if size == ix.len() {
            continue;
        }
        part.clear();
        rest.clear();
        for (&(n, c), &t) in groups.iter().zip(&take) {
            part.extend(core::iter::repeat_n(n, t));
            rest.extend(core::iter::repeat_n(n, c - t));
        }
        if members.contains(part.as_slice()) && members.contains(rest.as_slice()) {
            return true;
        }
    }
}

/// Elements and generators of `class` in degree `n`.
pub fn enumerate(class: MonoidClass, n: u64) -> Result<EnumRecord, Error> {
    Catalog::build(n)?.record(class, n)
}

/// Number of index multisets (index 1 included) of total degree `n`,
/// by the coin-change recurrence over totient values.
pub fn count_index_multisets(n: u64) -> u128 {
    let mut ways = vec![0u128; n as usize + 1];
    ways[0] = 1;
    for m in indices_up_to_degree(n.max(1)) {
        let phi = euler_phi(m) as usize;
        for v in phi..=n as usize {
            ways[v] += ways[v - phi];
        }
    }
    ways[n as usize]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    /// Reduced numerators dominate denominators in prefix and suffix sums.
    Majorization,
    /// Every non-unit unimodal basic CGF has a prime cyclotomic index.
    UniPrimeFactor,
    /// Non-Gale members of the nonnegative monoid, per degree.
    NongaleCount,
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "majorization" => Ok(Conjecture::Majorization),
            "uni_prime_factor" | "uni-prime-factor" => Ok(Conjecture::UniPrimeFactor),
            "nongale_count" | "nongale-count" => Ok(Conjecture::NongaleCount),
            _ => Err(Error::InvalidParameter("unknown conjecture")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub which: Conjecture,
    pub max_degree: u64,
    pub checked: usize,
    /// Offending multisets; for `NongaleCount`, the non-Gale elements.
    pub violations: Vec<Vec<u64>>,
    /// `(degree, |PLUS_n| - |GALE_n|)`, filled for `NongaleCount` only.
    pub per_degree: Vec<(u64, usize)>,
}

pub fn conjecture_scan(catalog: &Catalog, which: Conjecture) -> Result<ConjectureReport, Error> {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut per_degree = Vec::new();
    for n in 1..=catalog.max_degree() {
        match which {
            Conjecture::Majorization => {
                for ix in catalog.elements(MonoidClass::Plus, n)? {
                    checked += 1;
                    let rf = cyclo_to_rational(&CycloForm::basic(ix.clone())?);
                    if !majorizes_both_sides(&rf.numer, &rf.denom) {
                        violations.push(ix);
                    }
                }
            }
            Conjecture::UniPrimeFactor => {
                for ix in catalog.elements(MonoidClass::Uni, n)? {
                    checked += 1;
                    if !ix.iter().any(|&m| is_prime(m)) {
                        violations.push(ix);
                    }
                }
            }
            Conjecture::NongaleCount => {
                let mut here = 0;
                for (ix, f) in &catalog.by_degree[n as usize] {
                    if f & MonoidClass::Plus.bit() != 0 {
                        checked += 1;
                        if f & MonoidClass::Gale.bit() == 0 {
                            here += 1;
                            violations.push(ix.clone());
                        }
                    }
                }
                per_degree.push((n, here));
            }
        }
    }
    Ok(ConjectureReport {
        which,
        max_degree: catalog.max_degree(),
        checked,
        violations,
        per_degree,
    })
}

fn is_cgf_quotient(numer: &[u64], denom: &[u64]) -> bool {
    RationalForm::new(numer.to_vec(), denom.to_vec())
        .ok()
        .is_some_and(|rf| rational_to_poly(&rf).is_ok())
}

/// Path from `a` to `a2` in the graph on numerator multisets over the fixed
/// denominator `b`, where neighbours differ in one element and every vertex
/// gives a CGF. Goes through `h_k = a_k * a2_k`, replacing positions left
/// to right; consecutive repeats are collapsed.
pub fn cgf_graph_path(b: &[u64], a: &[u64], a2: &[u64]) -> Result<Vec<Vec<u64>>, Error> {
    let m = a.len().max(a2.len()).max(b.len());
    let pad = |v: &[u64]| {
        let mut v = v.to_vec();
        v.resize(m, 1);
        v
    };
    let (a, a2) = (pad(a), pad(a2));
    if !is_cgf_quotient(&a, b) || !is_cgf_quotient(&a2, b) {
        return Err(Error::InvalidParameter("path endpoint is not a CGF"));
    }
    let sorted = |v: &[u64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    let mut path = vec![a.clone()];
    if sorted(&a) == sorted(&a2) {
        return Ok(path);
    }
    let h: Vec<u64> = a.iter().zip(&a2).map(|(x, y)| x * y).collect();
    let mut cur = a.clone();
    let push = |v: &[u64], path: &mut Vec<Vec<u64>>| {
        if sorted(path.last().unwrap()) != sorted(v) {
            path.push(v.to_vec());
        }
    };
    for k in 0..m {
        cur[k] = h[k];
        push(&cur, &mut path);
    }
    for k in 0..m {
        cur[k] = a2[k];
        push(&cur, &mut path);
    }
    for v in &path {
        if !is_cgf_quotient(v, b) {
            return Err(Error::Verification("intermediate vertex is not a CGF"));
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::cgf_check;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_enumeration_examples() {
        let r = enumerate(MonoidClass::Plus, 2).unwrap();
        assert_eq!(r.elements, vec![vec![2, 2], vec![3], vec![4]]);
        assert_eq!(enumerate(MonoidClass::Pm, 1).unwrap().elements, vec![vec![1], vec![2]]);
        assert_eq!(enumerate(MonoidClass::Lcc, 4).unwrap().count(), 5);
    }

    #[test]
    fn generator_examples() {
        let cat = Catalog::build(6).unwrap();
        let g6 = cat.generators(MonoidClass::Plus, 6).unwrap();
        assert!(g6.contains(&vec![5, 6]));
        let counts: Vec<usize> = (1..=6)
            .map(|n| cat.generators(MonoidClass::Plus, n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 1, 3, 1, 4]);
        assert_eq!(cat.generators(MonoidClass::Pm, 3).unwrap().len(), 0);
    }

    #[test]
    fn membership_examples() {
        let f = cgf_check(&p(&[1, 4, 8, 9, 5, 0, 0, 5, 9, 8, 4, 1])).unwrap();
        assert_eq!(f.indices, vec![2, 3, 3, 3, 12]);
        assert!(class_membership_cyclo(&f, MonoidClass::Plus));
        assert!(!class_membership_cyclo(&f, MonoidClass::Gale));

        let uni = CycloForm::basic(vec![12, 8, 3, 3, 3, 3, 3, 3]).unwrap();
        assert!(class_membership_cyclo(&uni, MonoidClass::Uni));
        assert!(!class_membership_cyclo(&uni, MonoidClass::Gale));

        let mut lcc = vec![12, 6];
        lcc.extend([2; 19]);
        let lcc = CycloForm::basic(lcc).unwrap();
        assert!(class_membership_cyclo(&lcc, MonoidClass::Lcc));
        assert!(!class_membership_cyclo(&lcc, MonoidClass::Gale));
        assert!(class_membership(&lcc.to_poly(), MonoidClass::Lcc));

        // q^2 - q + 1 is a cyclotomic product but has a negative coefficient
        assert!(class_membership(&p(&[1, -1, 1]), MonoidClass::Pm));
        assert!(!class_membership(&p(&[1, -1, 1]), MonoidClass::Plus));
        assert!(class_membership(&p(&[-1, 1]), MonoidClass::Pm));
        assert!(!class_membership(&p(&[1, 2]), MonoidClass::Pm));
        // a scaled form is not basic
        let scaled = CycloForm::new(2u32.into(), 0, vec![2]).unwrap();
        assert!(!class_membership_cyclo(&scaled, MonoidClass::Plus));
    }

    #[test]
    fn graph_path_examples() {
        let path = cgf_graph_path(&[2, 3], &[2, 3], &[6, 5]).unwrap();
        assert_eq!(path, vec![vec![2, 3], vec![12, 3], vec![12, 15], vec![6, 15], vec![6, 5]]);
        let path = cgf_graph_path(&[1, 1], &[2, 3], &[4, 2]).unwrap();
        assert!(path.len() - 1 <= 4);
        assert!(path.contains(&vec![8, 6]));
        assert_eq!(cgf_graph_path(&[2, 3], &[6, 5], &[5, 6]).unwrap().len(), 1);
        assert!(cgf_graph_path(&[2, 3], &[1, 6], &[6, 5]).is_err());
    }

    #[test]
    fn index_multiset_count_matches_pm() {
        let cat = Catalog::build(10).unwrap();
        for n in 1..=10 {
            assert_eq!(cat.count(MonoidClass::Pm, n).unwrap() as u128, count_index_multisets(n));
        }
    }
}
