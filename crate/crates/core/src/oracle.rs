//! Brute-force symmetric group data: characters, Kronecker and
//! Littlewood-Richardson coefficients for small sizes.
//!
//! Characters follow the Murnaghan-Nakayama rule on beta-sets. A shape is a
//! `u128` bead mask with every negative position implicitly occupied, so
//! stripping the trailing run of ones gives one canonical mask per shape and
//! the empty shape is `0`. Removing a rim hook of length `h` moves one bead
//! down by `h`; its sign is the parity of the beads jumped over.

use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::partition::{dense, Partition, PartitionTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest admissible n.
    pub max_n: usize,
    /// Largest admissible number of conjugacy classes p(n).
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        // p(36) = 17977 covers the long-first-row embeddings of |λ| ≤ 6.
        Budget { max_n: 36, max_classes: 20_000 }
    }
}

impl Budget {
    pub fn admits(&self, n: usize) -> bool {
        n <= self.max_n && partition_count(n) <= self.max_classes as u64
    }

    fn check(&self, n: &BigUint) -> Result<usize> {
        let small = n.to_usize().filter(|&n| n <= self.max_n);
        let n = small.ok_or_else(|| Error::budget("kronecker oracle (n)", n, self.max_n))?;
        let classes = partition_count(n);
        if classes > self.max_classes as u64 {
            return Err(Error::budget("kronecker oracle (classes)", classes, self.max_classes));
        }
        Ok(n)
    }
}

/// p(n) by the standard coin-change recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] = ways[total].saturating_add(ways[total - part]);
        }
    }
    ways[n]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub class_size: BigUint,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// n!/z_ρ with z_ρ = Π i^{m_i}·m_i!.
fn class_size(cycle_type: &[usize], n_fact: &BigUint) -> BigUint {
    let mut z = BigUint::one();
    let mut i = 0;
    while i < cycle_type.len() {
        let part = cycle_type[i];
        let mult = cycle_type[i..].iter().take_while(|&&p| p == part).count();
        z *= BigUint::from(part).pow(mult as u32) * factorial(mult);
        i += mult;
    }
    n_fact / z
}

/// All conjugacy classes of S_n with their sizes.
pub fn sym_group_classes(n: usize) -> Vec<ConjugacyClass> {
    let nf = factorial(n);
    dense::partitions_of(n)
        .into_iter()
        .map(|ct| ConjugacyClass {
            class_size: class_size(&ct, &nf),
            cycle_type: Partition::from_dense(&ct).expect("generated partitions are canonical"),
        })
        .collect()
}

/// Partitions of every size up to a bound, indexed, with the split of each
/// class into (largest part, index of the remaining partition).
#[derive(Default)]
struct ClassIndex {
    lookup: Vec<FxHashMap<Vec<usize>, u32>>,
    split: Vec<Vec<(usize, u32)>>,
}

impl ClassIndex {
    fn ensure(&mut self, n: usize) {
        while self.split.len() <= n {
            let m = self.split.len();
            let parts = dense::partitions_of(m);
            let mut lookup = FxHashMap::default();
            let mut split = Vec::with_capacity(parts.len());
            for (i, p) in parts.iter().enumerate() {
                lookup.insert(p.clone(), i as u32);
                if let Some((&first, rest)) = p.split_first() {
                    split.push((first, self.lookup[m - first][rest]));
                } else {
                    split.push((0, 0));
                }
            }
            self.lookup.push(lookup);
            self.split.push(split);
        }
    }

    fn index(&self, p: &[usize]) -> u32 {
        self.lookup[p.iter().sum::<usize>()][p]
    }
}

/// Memoized Murnaghan-Nakayama evaluation. Values fit in i128 for every
/// admissible n (|χ| ≤ √n!).
#[derive(Default)]
struct CharTable {
    classes: ClassIndex,
    memo: FxHashMap<(u128, u32), i128>,
}

const MEMO_CAP: usize = 1 << 25;

fn strip(mask: u128) -> u128 {
    mask >> mask.trailing_ones()
}

fn shape_mask(shape: &[usize]) -> Result<u128> {
    let l = shape.len();
    let mut mask = 0u128;
    for (i, &p) in shape.iter().enumerate() {
        let bead = p + l - 1 - i;
        if bead >= 128 {
            return Err(Error::budget("character bead mask", bead, 127));
        }
        mask |= 1u128 << bead;
    }
    Ok(strip(mask))
}

impl CharTable {
    fn chi(&mut self, mask: u128, m: usize, cls: u32) -> i128 {
        if m == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(mask, cls)) {
            return v;
        }
        let (h, tail) = self.classes.split[m][cls as usize];
        let mut total = 0i128;
        let mut beads = mask;
        while beads != 0 {
            let p = beads.trailing_zeros() as usize;
            beads &= beads - 1;
            if p < h {
                continue;
            }
            let q = p - h;
            if mask >> q & 1 == 1 {
                continue;
            }
            let between = (mask >> (q + 1)) & ((1u128 << (h - 1)) - 1);
            let moved = mask ^ (1u128 << p) ^ (1u128 << q);
            let v = self.chi(strip(moved), m - h, tail);
            if between.count_ones() % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        if self.memo.len() >= MEMO_CAP {
            self.memo.clear();
        }
        self.memo.insert((mask, cls), total);
        total
    }

    /// χ_shape on every class of n = |shape|, in `partitions_of(n)` order.
    fn column(&mut self, shape: &[usize]) -> Result<Vec<i128>> {
        let n: usize = shape.iter().sum();
        self.classes.ensure(n);
        let mask = shape_mask(shape)?;
        let count = self.classes.split[n].len();
        Ok((0..count as u32).map(|c| self.chi(mask, n, c)).collect())
    }
}

thread_local! {
    // Confined per worker thread: concurrent callers never share it.
    static TABLE: RefCell<CharTable> = RefCell::new(CharTable::default());
}

fn dense_parts(p: &Partition) -> Result<Vec<usize>> {
    p.to_vec()
}

/// χ_shape(cls).
pub fn character(shape: &Partition, cls: &Partition) -> Result<BigInt> {
    if shape.size() != cls.size() {
        return Err(Error::SizeMismatch(format!("shape {shape} vs class {cls}")));
    }
    let n = Budget::default().check(&shape.size())?;
    let (s, c) = (dense_parts(shape)?, dense_parts(cls)?);
    TABLE.with(|t| {
        let mut t = t.borrow_mut();
        t.classes.ensure(n);
        let mask = shape_mask(&s)?;
        let idx = t.classes.index(&c);
        Ok(BigInt::from(t.chi(mask, n, idx)))
    })
}

/// k^λ_{μ,π} under the default budget.
pub fn kronecker(t: &PartitionTriple) -> Result<BigUint> {
    kronecker_with(t, &Budget::default())
}

/// k^λ_{μ,π} = (1/n!) Σ_ρ |C_ρ| χ_λ(ρ) χ_μ(ρ) χ_π(ρ).
pub fn kronecker_with(t: &PartitionTriple, budget: &Budget) -> Result<BigUint> {
    let n = budget.check(&t.size())?;
    let [l, m, p] = t.parts().map(dense_parts);
    let (l, m, p) = (l?, m?, p?);
    let (cl, cm, cp) = TABLE.with(|tab| -> Result<_> {
        let mut tab = tab.borrow_mut();
        Ok((tab.column(&l)?, tab.column(&m)?, tab.column(&p)?))
    })?;
    let nf = factorial(n);
    let mut total = BigInt::zero();
    for (i, ct) in dense::partitions_of(n).iter().enumerate() {
        let prod = BigInt::from(cl[i]) * BigInt::from(cm[i]) * BigInt::from(cp[i]);
        if !prod.is_zero() {
            total += prod * BigInt::from(class_size(ct, &nf));
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(nf));
    assert!(r.is_zero(), "character sum not divisible by n!: oracle bug");
    Ok(q.to_biguint().expect("Kronecker coefficients are nonnegative"))
}

/// c^λ_{μ,π} by counting Littlewood-Richardson tableaux of shape λ/μ and
/// content π.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, pi: &Partition) -> Result<BigUint> {
    if lambda.size() != mu.size() + pi.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ|={} but |μ|+|π|={}",
            lambda.size(),
            mu.size() + pi.size()
        )));
    }
    let lam = dense_parts(lambda)?;
    let mut inner = dense_parts(mu)?;
    let content = dense_parts(pi)?;
    if inner.len() > lam.len() || inner.iter().zip(&lam).any(|(a, b)| a > b) {
        return Ok(BigUint::zero());
    }
    inner.resize(lam.len(), 0);
    // cells in reading order: rows top to bottom, each right to left
    let cells: Vec<(usize, usize)> = (0..lam.len())
        .flat_map(|i| (inner[i]..lam[i]).rev().map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = lam.iter().map(|&w| vec![usize::MAX; w]).collect();
    let mut count = vec![0usize; content.len()];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        content: &[usize],
        grid: &mut Vec<Vec<usize>>,
        count: &mut Vec<usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        // weakly increasing along rows: at most the entry to the right
        let hi = grid[i].get(j + 1).copied().unwrap_or(usize::MAX).min(content.len() - 1);
        // strictly increasing down columns
        let lo = if i > 0 && j >= inner[i - 1] { grid[i - 1][j] + 1 } else { 0 };
        let mut total = 0;
        for v in lo..=hi {
            if count[v] == content[v] || (v > 0 && count[v] == count[v - 1]) {
                continue;
            }
            count[v] += 1;
            grid[i][j] = v;
            total += rec(k + 1, cells, inner, content, grid, count);
            count[v] -= 1;
        }
        grid[i][j] = usize::MAX;
        total
    }
    if content.is_empty() {
        return Ok(BigUint::from(u64::from(cells.is_empty())));
    }
    Ok(BigUint::from(rec(0, &cells, &inner, &content, &mut grid, &mut count)))
}

/// (λ̃, μ̃, π̃): each of λ, μ, π with a long first row making the size 3ι,
/// ι = |λ| + λ_0. Then k(λ̃, μ̃, π̃) = c^λ_{μ,π}.
pub fn murnaghan_embed(lambda: &Partition, mu: &Partition, pi: &Partition) -> Result<PartitionTriple> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition("murnaghan_embed: μ"));
    }
    if pi.is_empty() {
        return Err(Error::EmptyPartition("murnaghan_embed: π"));
    }
    if lambda.size() != mu.size() + pi.size() {
        return Err(Error::SizeMismatch(format!(
            "|λ|={} but |μ|+|π|={}",
            lambda.size(),
            mu.size() + pi.size()
        )));
    }
    let iota = lambda.size() + lambda.first_part();
    let total = BigUint::from(3u32) * iota;
    let lift = |p: &Partition| p.prepend_rows(&total - p.size(), BigUint::one());
    PartitionTriple::new(lift(lambda)?, lift(mu)?, lift(pi)?)
}

/// ι of the embedding; useful for reading λ, μ, π back off an embedded triple.
pub fn embed_iota(lambda: &Partition) -> BigUint {
    lambda.size() + lambda.first_part()
}
