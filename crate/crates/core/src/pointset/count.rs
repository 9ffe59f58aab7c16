//! Exact t and p counters.
//!
//! t: point sets are built slice by slice along x. A slice is a 0/1 matrix
//! in the (y, z) plane, so the search runs over its row-sum vector `a` and
//! column-sum vector `c` and multiplies by the number of 0/1 matrices with
//! those margins. Residual y and z margins are kept sorted, which is a
//! relabeling of slices and leaves the count unchanged; the memo is keyed on
//! (slice index, sorted residual y, sorted residual z).
//!
//! Pruning, all in the sorted labeling:
//! * capacity: R remaining slices give each (y, z) cell at most R points,
//!   so the residual margins must pass Gale-Ryser with entry bound R;
//! * level sums: the residual points have total y + z equal to
//!   W = Σ j·resY_j + Σ k·resZ_k, and a slice of s points has y + z sum at
//!   least [`min_level_sum`]`(s)`, so W must cover every remaining slice and
//!   the current slice may use at most W minus the rest.
//!
//! Within a block of equal residual values only the arrangement with the
//! largest entries first is expanded; the others reach the same sorted child
//! and are counted by a multinomial factor.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::Marginals;
use crate::error::Result;
use crate::exec::Exec;

/// Minimal Σ (j + k) over `s` distinct cells of N².
pub fn min_level_sum(s: usize) -> u64 {
    let (mut left, mut level, mut total) = (s as u64, 0u64, 0u64);
    while left > 0 {
        let take = left.min(level + 1);
        total += take * level;
        left -= take;
        level += 1;
    }
    total
}

fn canon(v: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut out: Vec<u32> = v.into_iter().filter(|&e| e > 0).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn binom(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Number of distinct orderings of `v` that keep block boundaries fixed,
/// where blocks are the runs of equal values in `keys`.
fn arrangements(v: &[u32], keys: &[u32]) -> BigUint {
    let mut total = BigUint::one();
    let mut i = 0;
    while i < keys.len() {
        let g = keys[i..].iter().take_while(|&&k| k == keys[i]).count();
        let block = &v[i..i + g];
        total *= factorial(g as u32);
        let mut j = 0;
        while j < g {
            let run = block[j..].iter().take_while(|&&e| e == block[j]).count();
            total /= factorial(run as u32);
            j += run;
        }
        i += g;
    }
    total
}

/// Gale-Ryser with entry bound `cap`: does a matrix with entries in
/// 0..=cap exist with row sums `rows` and column sums `cols` (both sorted
/// descending, equal totals)?
fn bounded_gale_ryser(rows: &[u32], cols: &[u32], cap: u64) -> bool {
    let mut prefix = 0u64;
    for (l, &r) in rows.iter().enumerate() {
        prefix += r as u64;
        let bound = cap * (l as u64 + 1);
        let avail: u64 = cols.iter().map(|&c| (c as u64).min(bound)).sum();
        if prefix > avail {
            return false;
        }
    }
    true
}

type TKey = (u32, Vec<u32>, Vec<u32>);
type MKey = (Vec<u32>, Vec<u32>);

#[derive(Default)]
struct Memo {
    t: FxHashMap<TKey, BigUint>,
    n01: FxHashMap<MKey, BigUint>,
}

/// Number of 0/1 matrices with the given margins (both sorted descending,
/// zeros removed). Rows are consumed one at a time; columns with equal
/// residual are interchangeable, so each row chooses a count per block.
fn n01(rows: &[u32], cols: &[u32], memo: &mut Memo) -> BigUint {
    let Some((&first, rest)) = rows.split_first() else {
        return if cols.is_empty() { BigUint::one() } else { BigUint::zero() };
    };
    let rs: u64 = rows.iter().map(|&r| r as u64).sum();
    let cs: u64 = cols.iter().map(|&c| c as u64).sum();
    if rs != cs || first as usize > cols.len() || !bounded_gale_ryser(rows, cols, 1) {
        return BigUint::zero();
    }
    if rest.is_empty() {
        // one row covering every remaining column exactly once
        return BigUint::from(u32::from(cols.iter().all(|&c| c == 1)));
    }
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(v) = memo.n01.get(&key) {
        return v.clone();
    }
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &c in cols {
        match blocks.last_mut() {
            Some((v, n)) if *v == c => *n += 1,
            _ => blocks.push((c, 1)),
        }
    }
    let mut total = BigUint::zero();
    let mut take = vec![0u32; blocks.len()];
    fn rec(
        b: usize,
        need: u32,
        blocks: &[(u32, u32)],
        take: &mut Vec<u32>,
        rest: &[u32],
        memo: &mut Memo,
        total: &mut BigUint,
    ) {
        if b == blocks.len() {
            if need > 0 {
                return;
            }
            let mut coef = BigUint::one();
            let mut next = Vec::new();
            for (&(v, n), &s) in blocks.iter().zip(take.iter()) {
                coef *= binom(n, s);
                next.extend(std::iter::repeat_n(v - 1, s as usize));
                next.extend(std::iter::repeat_n(v, (n - s) as usize));
            }
            let sub = n01(rest, &canon(next), memo);
            if !sub.is_zero() {
                *total += coef * sub;
            }
            return;
        }
        let room: u32 = blocks[b + 1..].iter().map(|&(_, n)| n).sum();
        let lo = need.saturating_sub(room);
        for s in lo..=need.min(blocks[b].1) {
            take[b] = s;
            rec(b + 1, need - s, blocks, take, rest, memo, total);
        }
        take[b] = 0;
    }
    rec(0, first, &blocks, &mut take, rest, memo, &mut total);
    memo.n01.insert(key, total.clone());
    total
}

struct TCounter {
    x: Vec<u32>,
    /// suffix[i] = Σ_{i' ≥ i} min_level_sum(x[i'])
    suffix: Vec<u64>,
}

/// Cheapest way to place `need` points in rows `from..` when the t-th point
/// of row j costs j + t and row j holds at most caps[j]. `None` if they do
/// not fit.
fn row_floor(caps: &[u32], from: usize, need: u32) -> Option<u64> {
    if need == 0 {
        return Some(0);
    }
    let room: u64 = caps[from..].iter().map(|&c| c as u64).sum();
    if room < need as u64 {
        return None;
    }
    let (mut left, mut cost) = (need as u64, 0u64);
    let mut level = from;
    while left > 0 {
        let avail = (from..caps.len().min(level + 1))
            .filter(|&j| ((level - j) as u32) < caps[j])
            .count() as u64;
        let t = avail.min(left);
        cost += t * level as u64;
        left -= t;
        level += 1;
    }
    Some(cost)
}

/// Cheapest Σ k·c_k placing `need` points in columns `from..` with caps.
fn col_floor(caps: &[u32], from: usize, need: u32) -> Option<u64> {
    let mut left = need;
    let mut cost = 0u64;
    for (k, &cap) in caps.iter().enumerate().skip(from) {
        if left == 0 {
            break;
        }
        let t = cap.min(left);
        cost += t as u64 * k as u64;
        left -= t;
    }
    (left == 0).then_some(cost)
}

impl TCounter {
    /// Weight budget for slice `i`, or `None` if no completion exists.
    fn budget(&self, i: usize, y: &[u32], z: &[u32]) -> Option<u64> {
        let remaining = (self.x.len() - i) as u64;
        let xi = self.x[i] as u64;
        if (y.len() as u64) * (z.len() as u64) < xi
            || y.first().is_some_and(|&v| v as u64 > remaining * z.len() as u64)
            || z.first().is_some_and(|&v| v as u64 > remaining * y.len() as u64)
            || !bounded_gale_ryser(y, z, remaining)
        {
            return None;
        }
        let w: u64 = y.iter().enumerate().map(|(j, &v)| j as u64 * v as u64).sum::<u64>()
            + z.iter().enumerate().map(|(k, &v)| k as u64 * v as u64).sum::<u64>();
        if w < self.suffix[i] {
            return None;
        }
        Some(w - self.suffix[i + 1])
    }

    /// Every (a, c) option for slice `i`, merged by sorted child state, each
    /// weighted by arrangements × number of 0/1 fillings.
    fn children(&self, i: usize, y: &[u32], z: &[u32], memo: &mut Memo) -> Vec<(MKey, BigUint)> {
        let Some(budget) = self.budget(i, y, z) else {
            return Vec::new();
        };
        let xi = self.x[i];
        let row_caps: Vec<u32> = y.iter().map(|&v| v.min(z.len() as u32)).collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut a = vec![0u32; y.len()];
        gen_rows(0, xi, 0, budget, y, &row_caps, &mut a, &mut rows);

        let mut out: FxHashMap<MKey, BigUint> = FxHashMap::default();
        for a in rows {
            let a_mult = arrangements(&a, y);
            let a_weight: u64 = a.iter().enumerate().map(|(j, &v)| j as u64 * v as u64).sum();
            let used_rows = a.iter().filter(|&&v| v > 0).count() as u32;
            let col_caps: Vec<u32> = z.iter().map(|&v| v.min(used_rows)).collect();
            let mut cols: Vec<Vec<u32>> = Vec::new();
            let mut c = vec![0u32; z.len()];
            gen_cols(0, xi, 0, budget - a_weight, z, &col_caps, &mut c, &mut cols);
            let a_sorted = canon(a.iter().copied());
            for c in cols {
                let fill = n01(&a_sorted, &canon(c.iter().copied()), memo);
                if fill.is_zero() {
                    continue;
                }
                let weight = &a_mult * arrangements(&c, z) * fill;
                let child = (
                    canon(y.iter().zip(&a).map(|(v, d)| v - d)),
                    canon(z.iter().zip(&c).map(|(v, d)| v - d)),
                );
                *out.entry(child).or_default() += weight;
            }
        }
        let mut out: Vec<(MKey, BigUint)> = out.into_iter().collect();
        out.sort();
        out
    }

    fn count(&self, i: usize, y: &[u32], z: &[u32], memo: &mut Memo) -> BigUint {
        if i == self.x.len() {
            return BigUint::from(u32::from(y.is_empty() && z.is_empty()));
        }
        let key = (i as u32, y.to_vec(), z.to_vec());
        if let Some(v) = memo.t.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for ((cy, cz), w) in self.children(i, y, z, memo) {
            let sub = self.count(i + 1, &cy, &cz, memo);
            if !sub.is_zero() {
                total += w * sub;
            }
        }
        memo.t.insert(key, total.clone());
        total
    }
}

/// Row-sum vectors for one slice: non-increasing inside blocks of equal
/// residual, Σ = need, level-sum floor within budget.
#[allow(clippy::too_many_arguments)]
fn gen_rows(j: usize, need: u32, spent: u64, budget: u64, y: &[u32], caps: &[u32], a: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if j == y.len() {
        if need == 0 {
            out.push(a.clone());
        }
        return;
    }
    let mut hi = caps[j].min(need);
    if j > 0 && y[j] == y[j - 1] {
        hi = hi.min(a[j - 1]);
    }
    for v in (0..=hi).rev() {
        let cost = spent + j as u64 * v as u64 + (v as u64 * v.saturating_sub(1) as u64) / 2;
        match row_floor(caps, j + 1, need - v) {
            Some(floor) if cost + floor <= budget => {}
            _ => continue,
        }
        a[j] = v;
        gen_rows(j + 1, need - v, cost, budget, y, caps, a, out);
    }
    a[j] = 0;
}

#[allow(clippy::too_many_arguments)]
fn gen_cols(k: usize, need: u32, spent: u64, budget: u64, z: &[u32], caps: &[u32], c: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == z.len() {
        if need == 0 {
            out.push(c.clone());
        }
        return;
    }
    let mut hi = caps[k].min(need);
    if k > 0 && z[k] == z[k - 1] {
        hi = hi.min(c[k - 1]);
    }
    for v in (0..=hi).rev() {
        let cost = spent + k as u64 * v as u64;
        match col_floor(caps, k + 1, need - v) {
            Some(floor) if cost + floor <= budget => {}
            _ => continue,
        }
        c[k] = v;
        gen_cols(k + 1, need - v, cost, budget, z, caps, c, out);
    }
    c[k] = 0;
}

/// t: the number of point sets with the given marginals.
pub fn count_t(m: &Marginals) -> Result<BigUint> {
    count_t_with(m, Exec::default())
}

const FRONTIER: usize = 64;

pub fn count_t_with(m: &Marginals, exec: Exec) -> Result<BigUint> {
    m.total()?;
    let x = canon(m.x.iter().map(|&v| v as u32));
    let y = canon(m.y.iter().map(|&v| v as u32));
    let z = canon(m.z.iter().map(|&v| v as u32));
    let mut suffix = vec![0u64; x.len() + 1];
    for i in (0..x.len()).rev() {
        suffix[i] = suffix[i + 1] + min_level_sum(x[i] as usize);
    }
    let tc = TCounter { x, suffix };

    // Expand breadth-first until there is enough independent work, merging
    // identical states, then finish each frontier state on its own.
    let mut memo = Memo::default();
    let mut frontier: Vec<(MKey, BigUint)> = vec![((y, z), BigUint::one())];
    let mut depth = 0;
    while depth < tc.x.len() && frontier.len() < FRONTIER && !frontier.is_empty() {
        let mut next: FxHashMap<MKey, BigUint> = FxHashMap::default();
        for ((fy, fz), w) in &frontier {
            for (child, cw) in tc.children(depth, fy, fz, &mut memo) {
                *next.entry(child).or_default() += w * cw;
            }
        }
        frontier = next.into_iter().collect();
        frontier.sort();
        depth += 1;
    }
    if !exec.is_parallel() {
        let mut total = BigUint::zero();
        for ((fy, fz), w) in &frontier {
            total += w * tc.count(depth, fy, fz, &mut memo);
        }
        return Ok(total);
    }
    Ok(exec.map_reduce(
        &frontier,
        BigUint::zero(),
        |((fy, fz), w)| w * tc.count(depth, fy, fz, &mut Memo::default()),
        |a, b| a + b,
    ))
}

fn trimmed(v: &[usize]) -> &[usize] {
    let end = v.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
    &v[..end]
}

fn non_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

type PKey = (u32, Vec<u32>, Vec<u32>, Vec<u32>);

struct PCounter {
    x: Vec<u32>,
    zlen: usize,
    memo: FxHashMap<PKey, BigUint>,
}

impl PCounter {
    /// Pyramids: x-slices are Young diagrams D_0 ⊇ D_1 ⊇ …, |D_i| = x_i.
    fn count(&mut self, i: usize, prev: &[u32], y: &[u32], z: &[u32]) -> BigUint {
        if i == self.x.len() {
            return BigUint::from(u32::from(y.iter().all(|&v| v == 0) && z.iter().all(|&v| v == 0)));
        }
        let key = (i as u32, prev.to_vec(), y.to_vec(), z.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let after = (self.x.len() - i - 1) as u32;
        let mut shapes = Vec::new();
        let mut d = vec![0u32; y.len()];
        young(0, self.x[i], prev, y, after, self.zlen as u32, &mut d, &mut shapes);
        let mut total = BigUint::zero();
        for d in shapes {
            let mut cols = vec![0u32; z.len()];
            for &row in &d {
                for c in cols.iter_mut().take(row as usize) {
                    *c += 1;
                }
            }
            // each later slice is contained in d, so it can absorb at most
            // `after` copies of every column
            let ok = z.iter().zip(&cols).all(|(&r, &c)| c <= r && r - c <= after * c);
            if !ok {
                continue;
            }
            let ny: Vec<u32> = y.iter().zip(&d).map(|(a, b)| a - b).collect();
            let nz: Vec<u32> = z.iter().zip(&cols).map(|(a, b)| a - b).collect();
            total += self.count(i + 1, &d, &ny, &nz);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Young diagrams with `need` boxes inside `prev`, row j between
/// ⌈y_j/(after+1)⌉ and y_j.
#[allow(clippy::too_many_arguments)]
fn young(j: usize, need: u32, prev: &[u32], y: &[u32], after: u32, width: u32, d: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if j == y.len() {
        if need == 0 {
            out.push(d.clone());
        }
        return;
    }
    let mut hi = prev[j].min(y[j]).min(need).min(width);
    if j > 0 {
        hi = hi.min(d[j - 1]);
    }
    let lo = y[j].div_ceil(after + 1);
    if lo > hi {
        return;
    }
    let rows_left = (y.len() - j) as u32;
    for v in (lo..=hi).rev() {
        if need - v > v * (rows_left - 1) {
            break;
        }
        d[j] = v;
        young(j + 1, need - v, prev, y, after, width, d, out);
    }
    d[j] = 0;
}

/// p: the number of pyramids with the given marginals. Zero whenever a
/// marginal is not non-increasing, since pyramid marginals always are.
pub fn count_p(m: &Marginals) -> Result<BigUint> {
    m.total()?;
    let (x, y, z) = (trimmed(&m.x), trimmed(&m.y), trimmed(&m.z));
    if !(non_increasing(x) && non_increasing(y) && non_increasing(z)) {
        return Ok(BigUint::zero());
    }
    let mut pc = PCounter {
        x: x.iter().map(|&v| v as u32).collect(),
        zlen: z.len(),
        memo: FxHashMap::default(),
    };
    let prev = vec![u32::MAX; y.len()];
    let y: Vec<u32> = y.iter().map(|&v| v as u32).collect();
    let z: Vec<u32> = z.iter().map(|&v| v as u32).collect();
    Ok(pc.count(0, &prev, &y, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::PartitionTriple;

    fn marg(l: &[u64], m: &[u64], p: &[u64]) -> Marginals {
        Marginals::of_triple(&PartitionTriple::from_parts(l, m, p).unwrap()).unwrap()
    }

    fn t(l: &[u64], m: &[u64], p: &[u64]) -> u64 {
        count_t(&marg(l, m, p)).unwrap().try_into().unwrap()
    }

    fn p(l: &[u64], m: &[u64], q: &[u64]) -> u64 {
        count_p(&marg(l, m, q)).unwrap().try_into().unwrap()
    }

    #[test]
    fn t_examples() {
        assert_eq!(t(&[1], &[1], &[1]), 1);
        assert_eq!(t(&[1, 1], &[2], &[2]), 2);
        assert_eq!(t(&[2, 2, 2], &[2, 2, 1, 1], &[2, 2, 1, 1]), 1);
        assert_eq!(t(&[1, 1], &[1, 1], &[1, 1]), 0);
    }

    #[test]
    fn p_examples() {
        assert_eq!(p(&[1], &[1], &[1]), 1);
        assert_eq!(p(&[1, 1], &[2], &[2]), 0);
        assert_eq!(p(&[2, 2, 2], &[2, 2, 1, 1], &[2, 2, 1, 1]), 1);
    }

    #[test]
    fn unequal_sums_rejected() {
        let m = Marginals::new(vec![1], vec![2], vec![1]);
        assert!(count_t(&m).is_err());
        assert!(count_p(&m).is_err());
    }

    #[test]
    fn empty_marginals() {
        assert_eq!(count_t(&Marginals::default()).unwrap(), BigUint::one());
        assert_eq!(count_p(&Marginals::default()).unwrap(), BigUint::one());
    }

    #[test]
    fn zero_one_matrices() {
        let mut memo = Memo::default();
        // 2x2 with all margins 1: two permutation matrices
        assert_eq!(n01(&[1, 1], &[1, 1], &mut memo), BigUint::from(2u32));
        // 3x3 permutation matrices
        assert_eq!(n01(&[1, 1, 1], &[1, 1, 1], &mut memo), BigUint::from(6u32));
        // 3x3 with margins 2: complements of permutation matrices
        assert_eq!(n01(&[2, 2, 2], &[2, 2, 2], &mut memo), BigUint::from(6u32));
        assert_eq!(n01(&[3], &[1, 1], &mut memo), BigUint::zero());
    }

    #[test]
    fn level_sums() {
        assert_eq!(min_level_sum(0), 0);
        assert_eq!(min_level_sum(1), 0);
        assert_eq!(min_level_sum(3), 2);
        assert_eq!(min_level_sum(4), 4);
        assert_eq!(min_level_sum(6), 8);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let m = marg(&[3, 2, 1], &[3, 2, 1], &[3, 2, 1]);
        assert_eq!(
            count_t_with(&m, Exec::Sequential).unwrap(),
            count_t_with(&m, Exec::Parallel).unwrap()
        );
    }
}
