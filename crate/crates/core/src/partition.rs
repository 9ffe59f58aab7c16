//! Integer partitions in run-length form.
//!
//! A [`Partition`] stores `(part, multiplicity)` runs with strictly decreasing
//! parts, so `(9,9,9,3,3)` is `[(9,3),(3,2)]`. Both entries are arbitrary
//! precision: the reduction chain produces rectangles with ~10^13 identical
//! rows, which are two numbers here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest height we are willing to expand into a dense `Vec`.
pub const DENSE_LIMIT: usize = 1 << 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rle: Vec<(BigUint, BigUint)>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { rle: Vec::new() }
    }

    /// Build from runs. Zero parts and zero multiplicities are dropped and
    /// equal neighbours merged; the parts must be non-increasing.
    pub fn from_rle<I>(runs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, BigUint)>,
    {
        let mut rle: Vec<(BigUint, BigUint)> = Vec::new();
        for (part, mult) in runs {
            if part.is_zero() || mult.is_zero() {
                continue;
            }
            match rle.last_mut() {
                Some((last, m)) if *last == part => *m += mult,
                Some((last, _)) if *last < part => {
                    return Err(Error::InvalidPartition(format!(
                        "parts must be non-increasing, found {part} after {last}"
                    )))
                }
                _ => rle.push((part, mult)),
            }
        }
        Ok(Partition { rle })
    }

    /// Build from a non-increasing list of parts; trailing zeros are allowed.
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        Self::from_rle(parts.iter().map(|&p| (BigUint::from(p), BigUint::one())))
    }

    /// Build from parts given in any order.
    pub fn from_multiset(parts: &[u64]) -> Self {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_parts(&sorted).expect("sorted parts are non-increasing")
    }

    pub fn from_dense(parts: &[usize]) -> Result<Self> {
        Self::from_rle(parts.iter().map(|&p| (BigUint::from(p), BigUint::one())))
    }

    /// `(part^count)`, the rectangle with `count` rows of length `part`.
    pub fn rectangle(part: BigUint, count: BigUint) -> Self {
        Self::from_rle([(part, count)]).expect("single run is canonical")
    }

    pub fn rle(&self) -> &[(BigUint, BigUint)] {
        &self.rle
    }

    pub fn is_empty(&self) -> bool {
        self.rle.is_empty()
    }

    /// |λ|
    pub fn size(&self) -> BigUint {
        self.rle.iter().map(|(p, m)| p * m).sum()
    }

    /// ht(λ), the number of non-zero parts.
    pub fn height(&self) -> BigUint {
        self.rle.iter().map(|(_, m)| m.clone()).sum()
    }

    /// λ_0, or zero for the empty partition.
    pub fn first_part(&self) -> BigUint {
        self.rle.first().map(|(p, _)| p.clone()).unwrap_or_default()
    }

    /// Smallest non-zero part, or zero for the empty partition.
    pub fn last_part(&self) -> BigUint {
        self.rle.last().map(|(p, _)| p.clone()).unwrap_or_default()
    }

    /// The `i`-th part (0-based); zero past the height.
    pub fn part(&self, i: &BigUint) -> BigUint {
        let mut start = BigUint::zero();
        for (p, m) in &self.rle {
            start += m;
            if *i < start {
                return p.clone();
            }
        }
        BigUint::zero()
    }

    /// Conjugate partition: rows and columns of the diagram swapped.
    pub fn transpose(&self) -> Partition {
        let mut heights = Vec::with_capacity(self.rle.len());
        let mut acc = BigUint::zero();
        for (_, m) in &self.rle {
            acc += m;
            heights.push(acc.clone());
        }
        let mut runs = Vec::with_capacity(self.rle.len());
        for i in (0..self.rle.len()).rev() {
            let next = self.rle.get(i + 1).map(|(p, _)| p.clone()).unwrap_or_default();
            runs.push((heights[i].clone(), &self.rle[i].0 - next));
        }
        Partition::from_rle(runs).expect("conjugate of a partition is a partition")
    }

    /// True iff λ = (a, 1^b) with a ≥ 1, b ≥ 0.
    pub fn is_hook(&self) -> Result<bool> {
        match self.rle.as_slice() {
            [] => Err(Error::EmptyPartition("is_hook")),
            [(p, m)] => Ok(m.is_one() || p.is_one()),
            [(_, m), (q, _)] => Ok(m.is_one() && q.is_one()),
            _ => Ok(false),
        }
    }

    /// δ = (d^r) with d = size / r.
    pub fn delta_rect(size: &BigUint, r: &BigUint) -> Result<Partition> {
        if r.is_zero() {
            return Err(Error::precondition("rectangle height must be positive"));
        }
        let (d, rem) = size.div_rem(r);
        if !rem.is_zero() {
            return Err(Error::NotDivisible {
                value: size.to_string(),
                divisor: r.to_string(),
            });
        }
        Ok(Partition::rectangle(d, r.clone()))
    }

    /// Entrywise sum after zero-padding the shorter partition.
    pub fn add(&self, other: &Partition) -> Partition {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut rem_a = self.rle.first().map(|r| r.1.clone()).unwrap_or_default();
        let mut rem_b = other.rle.first().map(|r| r.1.clone()).unwrap_or_default();
        while i < self.rle.len() || j < other.rle.len() {
            let (va, vb) = (
                self.rle.get(i).map(|r| r.0.clone()).unwrap_or_default(),
                other.rle.get(j).map(|r| r.0.clone()).unwrap_or_default(),
            );
            let step = match (i < self.rle.len(), j < other.rle.len()) {
                (true, true) => rem_a.clone().min(rem_b.clone()),
                (true, false) => rem_a.clone(),
                (false, true) => rem_b.clone(),
                (false, false) => unreachable!(),
            };
            out.push((va + vb, step.clone()));
            if i < self.rle.len() {
                rem_a -= &step;
                if rem_a.is_zero() {
                    i += 1;
                    rem_a = self.rle.get(i).map(|r| r.1.clone()).unwrap_or_default();
                }
            }
            if j < other.rle.len() {
                rem_b -= &step;
                if rem_b.is_zero() {
                    j += 1;
                    rem_b = other.rle.get(j).map(|r| r.1.clone()).unwrap_or_default();
                }
            }
        }
        Partition::from_rle(out).expect("sum of partitions is non-increasing")
    }

    /// `(value^count, self)`: new rows on top. `value` must not be shorter
    /// than the current first row.
    pub fn prepend_rows(&self, value: BigUint, count: BigUint) -> Result<Partition> {
        if count.is_zero() {
            return Ok(self.clone());
        }
        if value < self.first_part() {
            return Err(Error::precondition(format!(
                "prepended row {value} shorter than first row {}",
                self.first_part()
            )));
        }
        Partition::from_rle(std::iter::once((value, count)).chain(self.rle.iter().cloned()))
    }

    /// Drop the first `count` rows.
    pub fn drop_rows(&self, count: &BigUint) -> Partition {
        let mut left = count.clone();
        let mut runs = Vec::new();
        for (p, m) in &self.rle {
            if left >= *m {
                left -= m;
            } else {
                runs.push((p.clone(), m - &left));
                left = BigUint::zero();
            }
        }
        Partition::from_rle(runs).expect("suffix of a partition")
    }

    /// Subtract `value` from each of the first `count` rows. Fails if a row
    /// is too short or the result is not a partition.
    pub fn sub_rect(&self, value: &BigUint, count: &BigUint) -> Result<Partition> {
        if count > &self.height() && !value.is_zero() {
            return Err(Error::precondition("rectangle taller than the partition"));
        }
        let mut left = count.clone();
        let mut runs = Vec::new();
        for (p, m) in &self.rle {
            if left.is_zero() {
                runs.push((p.clone(), m.clone()));
                continue;
            }
            let inside = m.clone().min(left.clone());
            if p < value {
                return Err(Error::precondition(format!("row {p} shorter than {value}")));
            }
            runs.push((p - value, inside.clone()));
            if *m > inside {
                runs.push((p.clone(), m - &inside));
            }
            left -= inside;
        }
        Partition::from_rle(runs)
    }

    /// Dense parts, largest first. Fails if the height exceeds [`DENSE_LIMIT`].
    pub fn to_vec(&self) -> Result<Vec<usize>> {
        let height = self.height();
        let h = height
            .to_usize()
            .filter(|&h| h <= DENSE_LIMIT)
            .ok_or_else(|| Error::budget("dense partition", &height, DENSE_LIMIT))?;
        let mut out = Vec::with_capacity(h);
        for (p, m) in &self.rle {
            let p = p
                .to_usize()
                .ok_or_else(|| Error::budget("dense partition part", p, usize::MAX))?;
            out.extend(std::iter::repeat_n(p, m.to_usize().expect("bounded by height")));
        }
        Ok(out)
    }

    /// Σ_i i·λ_i over 0-based row indices, in closed form per run.
    pub fn weighted_index_sum(&self) -> BigUint {
        let mut start = BigUint::zero();
        let mut total = BigUint::zero();
        for (p, m) in &self.rle {
            // Σ_{i=start}^{start+m-1} i = m·start + m(m-1)/2
            let idx_sum = m * &start + (m * (m - 1u32)) / 2u32;
            total += p * idx_sum;
            start += m;
        }
        total
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let small = self.rle.iter().all(|(_, m)| m.to_u32().is_some_and(|m| m <= 4));
        let mut items = Vec::new();
        for (p, m) in &self.rle {
            if small {
                for _ in 0..m.to_u32().unwrap_or(0) {
                    items.push(p.to_string());
                }
            } else if m.is_one() {
                items.push(p.to_string());
            } else {
                items.push(format!("{p}^{m}"));
            }
        }
        write!(f, "({})", items.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1`, `(3,1)`, `9^3,3^2` and the empty `()`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut runs = Vec::new();
        for item in body.split(',') {
            let item = item.trim();
            let (p, m) = match item.split_once('^') {
                Some((p, m)) => (p.trim(), m.trim()),
                None => (item, "1"),
            };
            let parse = |x: &str| {
                x.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad partition entry {item:?}")))
            };
            runs.push((parse(p)?, parse(m)?));
        }
        Partition::from_rle(runs)
    }
}

/// A triple (λ, μ, π) of partitions of one common size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionTriple {
    lambda: Partition,
    mu: Partition,
    pi: Partition,
}

impl PartitionTriple {
    pub fn new(lambda: Partition, mu: Partition, pi: Partition) -> Result<Self> {
        let (a, b, c) = (lambda.size(), mu.size(), pi.size());
        if a != b || a != c {
            return Err(Error::SizeMismatch(format!(
                "|λ|={a}, |μ|={b}, |π|={c}"
            )));
        }
        Ok(PartitionTriple { lambda, mu, pi })
    }

    pub fn from_parts(lambda: &[u64], mu: &[u64], pi: &[u64]) -> Result<Self> {
        Self::new(
            Partition::from_parts(lambda)?,
            Partition::from_parts(mu)?,
            Partition::from_parts(pi)?,
        )
    }

    pub fn from_dense(lambda: &[usize], mu: &[usize], pi: &[usize]) -> Result<Self> {
        Self::new(
            Partition::from_dense(lambda)?,
            Partition::from_dense(mu)?,
            Partition::from_dense(pi)?,
        )
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn pi(&self) -> &Partition {
        &self.pi
    }

    pub fn parts(&self) -> [&Partition; 3] {
        [&self.lambda, &self.mu, &self.pi]
    }

    pub fn size(&self) -> BigUint {
        self.lambda.size()
    }

    /// Size as a machine integer for the enumeration-backed routines.
    pub fn small_size(&self, what: &'static str, limit: usize) -> Result<usize> {
        let n = self.size();
        n.to_usize()
            .filter(|&n| n <= limit)
            .ok_or_else(|| Error::budget(what, &n, limit))
    }

    /// Dense column lengths (λ^T, μ^T, π^T): the marginals behind t and p.
    pub fn dense_transposes(&self) -> Result<[Vec<usize>; 3]> {
        Ok([
            self.lambda.transpose().to_vec()?,
            self.mu.transpose().to_vec()?,
            self.pi.transpose().to_vec()?,
        ])
    }

    /// The triple with its three entries reordered: `order[i]` names the
    /// original slot placed at position `i`.
    pub fn permuted(&self, order: [usize; 3]) -> PartitionTriple {
        let src = self.parts();
        PartitionTriple {
            lambda: src[order[0]].clone(),
            mu: src[order[1]].clone(),
            pi: src[order[2]].clone(),
        }
    }
}

impl fmt::Display for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lambda, self.mu, self.pi)
    }
}

/// Dense helpers for the small-size enumeration code.
pub mod dense {
    /// All partitions of `n`, reverse-lexicographic (so `(n)` first).
    pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }

    /// Conjugate of a dense non-increasing vector (zeros ignored).
    pub fn transpose(parts: &[usize]) -> Vec<usize> {
        let width = parts.first().copied().unwrap_or(0);
        (0..width)
            .map(|j| parts.iter().take_while(|&&p| p > j).count())
            .collect()
    }

    pub fn is_non_increasing(v: &[usize]) -> bool {
        v.windows(2).all(|w| w[0] >= w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("3,1").transpose(), p("2,1,1"));
        assert_eq!(p("2,2,2").transpose(), p("3,3"));
        assert_eq!(p("4,2,1").transpose().transpose(), p("4,2,1"));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn hooks() {
        assert!(p("5,1,1").is_hook().unwrap());
        assert!(!p("2,2").is_hook().unwrap());
        assert!(p("7").is_hook().unwrap());
        assert!(p("1,1,1").is_hook().unwrap());
        assert!(!p("3,2,1").is_hook().unwrap());
        assert_eq!(Partition::empty().is_hook(), Err(Error::EmptyPartition("is_hook")));
    }

    #[test]
    fn delta_rect_examples() {
        let d = |n: u32, r: u32| Partition::delta_rect(&n.into(), &r.into());
        assert_eq!(d(6, 3).unwrap(), p("2,2,2"));
        assert_eq!(d(6, 2).unwrap(), p("3,3"));
        assert!(matches!(d(5, 2), Err(Error::NotDivisible { .. })));
        assert!(d(5, 0).is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("3,1").add(&p("1,1")), p("4,2"));
        assert_eq!(
            Partition::from_parts(&[3, 1, 0]).unwrap().add(&Partition::from_parts(&[1, 1, 0]).unwrap()),
            p("4,2")
        );
        assert_eq!(p("9^3").add(&p("2^5")), p("11^3,2^2"));
        assert_eq!(p("1").add(&Partition::empty()), p("1"));
    }

    #[test]
    fn rle_canonical_form() {
        let a = Partition::from_parts(&[9, 9, 9, 3, 3, 0, 0]).unwrap();
        let b = p("9^3,3^2");
        let c = Partition::from_rle([
            (9u32.into(), 1u32.into()),
            (9u32.into(), 2u32.into()),
            (3u32.into(), 2u32.into()),
            (0u32.into(), 7u32.into()),
        ])
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.size(), BigUint::from(33u32));
        assert_eq!(a.height(), BigUint::from(5u32));
        assert!(Partition::from_parts(&[1, 2]).is_err());
    }

    #[test]
    fn huge_rectangles_stay_compact() {
        let big: BigUint = "10000000000000".parse().unwrap();
        let rect = Partition::rectangle(BigUint::from(5u32), big.clone());
        let t = rect.transpose();
        assert_eq!(t.rle(), &[(big.clone(), BigUint::from(5u32))]);
        assert_eq!(t.transpose(), rect);
        assert!(rect.to_vec().is_err());
    }

    #[test]
    fn weighted_index_sum_matches_dense() {
        let q = p("4,4,2,1,1,1");
        let dense: usize = q.to_vec().unwrap().iter().enumerate().map(|(i, v)| i * v).sum();
        assert_eq!(q.weighted_index_sum(), BigUint::from(dense));
    }

    #[test]
    fn prepend_and_drop() {
        let q = p("2,1");
        assert_eq!(q.prepend_rows(3u32.into(), 2u32.into()).unwrap(), p("3,3,2,1"));
        assert!(q.prepend_rows(1u32.into(), 1u32.into()).is_err());
        assert_eq!(p("3,3,2,1").drop_rows(&2u32.into()), q);
    }

    #[test]
    fn sub_rect_inverts_add() {
        let q = p("2,2,2");
        let big = Partition::rectangle(3u32.into(), 9u32.into()).add(&q);
        assert_eq!(big, p("5,5,5,3^6"));
        assert_eq!(big.sub_rect(&3u32.into(), &9u32.into()).unwrap(), q);
        assert!(p("3,1").sub_rect(&2u32.into(), &2u32.into()).is_err());
        assert!(p("3,3").sub_rect(&1u32.into(), &1u32.into()).is_err());
    }

    #[test]
    fn triple_sizes_enforced() {
        assert!(PartitionTriple::from_parts(&[2], &[1, 1], &[2]).is_ok());
        assert!(matches!(
            PartitionTriple::from_parts(&[2], &[1], &[2]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn dense_enumeration() {
        let counts: Vec<usize> = (0..=10).map(|n| dense::partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for n in 0..=12 {
            for lam in dense::partitions_of(n) {
                let t = dense::transpose(&lam);
                assert_eq!(t.iter().sum::<usize>(), n);
                assert_eq!(t.first().copied().unwrap_or(0), lam.len());
                assert_eq!(dense::transpose(&t), lam);
                let big = Partition::from_dense(&lam).unwrap();
                assert_eq!(big.transpose().to_vec().unwrap(), t);
            }
        }
    }
}
