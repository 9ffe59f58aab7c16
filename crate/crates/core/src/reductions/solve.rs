//! Brute-force deciders for small instances.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::instances::{FourPartition, NumberPartition, Permutation, Rn3dm, Rnmts, ThreeDm, ThreePartition};
use crate::error::{Error, Result};

/// Largest element count for the partition solvers (one bit per element).
pub const MAX_ELEMENTS: usize = 64;
/// Largest n for the permutation-style solvers.
pub const MAX_N: usize = 12;

fn budget(what: &'static str, requested: impl ToString, limit: impl ToString) -> Error {
    Error::BudgetExceeded { what, requested: requested.to_string(), limit: limit.to_string() }
}

pub fn solve_3dm(i: &ThreeDm) -> Result<bool> {
    i.validate()?;
    let q = i.q;
    let mut by_w: Vec<Vec<(usize, usize)>> = vec![Vec::new(); q];
    for t in &i.triples {
        by_w[t[0] - 1].push((t[1] - 1, t[2] - 1));
    }
    fn go(w: usize, by_w: &[Vec<(usize, usize)>], xs: &mut [bool], ys: &mut [bool]) -> bool {
        if w == by_w.len() {
            return true;
        }
        for &(x, y) in &by_w[w] {
            if !xs[x] && !ys[y] {
                xs[x] = true;
                ys[y] = true;
                if go(w + 1, by_w, xs, ys) {
                    return true;
                }
                xs[x] = false;
                ys[y] = false;
            }
        }
        false
    }
    Ok(go(0, &by_w, &mut vec![false; q], &mut vec![false; q]))
}

pub fn solve_4partition(i: &FourPartition) -> Result<bool> {
    i.validate()?;
    solve_groups(&i.0, 4)
}

pub fn solve_3partition(i: &ThreePartition) -> Result<bool> {
    i.validate()?;
    solve_groups(&i.0, 3)
}

/// Splits into groups of `g` summing to the bound; failed used-sets are
/// memoized.
fn solve_groups(p: &NumberPartition, g: usize) -> Result<bool> {
    let n = p.sizes.len();
    if n > MAX_ELEMENTS {
        return Err(budget("number partition", n, MAX_ELEMENTS));
    }
    let too_big = || budget("number partition element", "more than 128 bits", "128 bits");
    let bound = p.bound.to_u128().ok_or_else(too_big)?;
    let sizes: Vec<u128> = p.sizes.iter().map(|s| s.to_u128().ok_or_else(too_big)).collect::<Result<_>>()?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    struct Search<'a> {
        sizes: &'a [u128],
        g: usize,
        bound: u128,
        full: u64,
        failed: HashSet<u64>,
    }
    impl Search<'_> {
        fn solve(&mut self, used: u64) -> bool {
            if used == self.full {
                return true;
            }
            if self.failed.contains(&used) {
                return false;
            }
            let first = (!used).trailing_zeros() as usize;
            let rest = self.bound.checked_sub(self.sizes[first]);
            let ok = rest.is_some_and(|rest| self.fill(used | 1 << first, first + 1, self.g - 1, rest));
            if !ok {
                self.failed.insert(used);
            }
            ok
        }

        fn fill(&mut self, used: u64, from: usize, left: usize, rest: u128) -> bool {
            if left == 0 {
                return rest == 0 && self.solve(used);
            }
            for j in from..self.sizes.len() {
                if used >> j & 1 == 0 && self.sizes[j] <= rest && self.fill(used | 1 << j, j + 1, left - 1, rest - self.sizes[j]) {
                    return true;
                }
            }
            false
        }
    }
    Ok(Search { sizes: &sizes, g, bound, full, failed: HashSet::new() }.solve(0))
}

fn expand(runs: &[(BigUint, BigUint)], what: &'static str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (v, m) in runs {
        let m = m.to_usize().filter(|&m| out.len() + m <= MAX_N).ok_or_else(|| budget(what, "n", MAX_N))?;
        let v = v.to_u64().ok_or_else(|| budget(what, v, u64::MAX))?;
        out.extend(std::iter::repeat(v).take(m));
    }
    Ok(out)
}

/// Permutations σ, τ of 1..n with u_j + σ(j) + τ(j) = e for every j.
pub fn solve_rn3dm(i: &Rn3dm) -> Result<bool> {
    i.validate()?;
    let u = expand(&i.u, "RN3DM")?;
    let e = i.e.to_u64().ok_or_else(|| budget("RN3DM", &i.e, u64::MAX))?;
    let n = u.len() as u64;
    fn go(j: usize, u: &[u64], e: u64, n: u64, s: &mut [bool], t: &mut [bool]) -> bool {
        if j == u.len() {
            return true;
        }
        for a in 1..=n {
            if s[a as usize] {
                continue;
            }
            let Some(b) = e.checked_sub(u[j] + a) else { continue };
            if b == 0 || b > n || t[b as usize] {
                continue;
            }
            s[a as usize] = true;
            t[b as usize] = true;
            if go(j + 1, u, e, n, s, t) {
                return true;
            }
            s[a as usize] = false;
            t[b as usize] = false;
        }
        false
    }
    let mut s = vec![false; u.len() + 1];
    let mut t = s.clone();
    Ok(go(0, &u, e, n, &mut s, &mut t))
}

/// Permutations σ, τ of 1..n with σ(j) + τ(j) = y_j for every j.
pub fn solve_rnmts(i: &Rnmts) -> Result<bool> {
    i.validate()?;
    let y = expand(&i.y, "RNMTS")?;
    let n = y.len() as u64;
    // Larger targets first: fewer ways to write them.
    let mut y = y;
    y.sort_unstable_by(|a, b| b.cmp(a));
    fn go(j: usize, y: &[u64], n: u64, s: &mut [bool], t: &mut [bool]) -> bool {
        if j == y.len() {
            return true;
        }
        for a in 1..=n.min(y[j].saturating_sub(1)) {
            let b = y[j] - a;
            if s[a as usize] || b > n || t[b as usize] {
                continue;
            }
            s[a as usize] = true;
            t[b as usize] = true;
            if go(j + 1, y, n, s, t) {
                return true;
            }
            s[a as usize] = false;
            t[b as usize] = false;
        }
        false
    }
    let mut s = vec![false; y.len() + 1];
    let mut t = s.clone();
    Ok(go(0, &y, n, &mut s, &mut t))
}

/// An n×n permutation matrix with z_l ones on the anti-diagonal i + j = l.
pub fn solve_permutation(i: &Permutation) -> Result<bool> {
    i.validate()?;
    let n = i.n.to_usize().filter(|&n| n <= MAX_N).ok_or_else(|| budget("PERMUTATION", &i.n, MAX_N))?;
    let mut z = vec![0u64; 2 * n + 1];
    for (l, c) in &i.z {
        z[l.to_usize().unwrap_or(0)] = c.to_u64().unwrap_or(0);
    }
    fn go(row: usize, n: usize, z: &mut [u64], cols: &mut [bool]) -> bool {
        if row > n {
            return true;
        }
        for col in 1..=n {
            if !cols[col] && z[row + col] > 0 {
                cols[col] = true;
                z[row + col] -= 1;
                if go(row + 1, n, z, cols) {
                    return true;
                }
                cols[col] = false;
                z[row + col] += 1;
            }
        }
        false
    }
    Ok(go(1, n, &mut z, &mut vec![false; n + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dm() {
        let m0 = ThreeDm::new(2, [[1, 1, 1], [2, 1, 2], [1, 2, 2]]).unwrap();
        assert!(!solve_3dm(&m0).unwrap());
        let all = ThreeDm::new(2, (1..=2).flat_map(|a| (1..=2).flat_map(move |b| (1..=2).map(move |c| [a, b, c])))).unwrap();
        assert!(solve_3dm(&all).unwrap());
    }

    #[test]
    fn groups() {
        let b = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        // B = 100, sizes in (25, 50)
        let yes = ThreePartition::new(b(&[30, 30, 40, 26, 34, 40]), 2, BigUint::from(100u8)).unwrap();
        assert!(solve_3partition(&yes).unwrap());
        let no = ThreePartition::new(b(&[26, 26, 26, 40, 41, 41]), 2, BigUint::from(100u8)).unwrap();
        assert!(!solve_3partition(&no).unwrap());
        let four = FourPartition::new(b(&[21, 21, 29, 29, 22, 22, 28, 28]), 2, BigUint::from(100u8)).unwrap();
        assert!(solve_4partition(&four).unwrap());
    }

    #[test]
    fn permutations() {
        assert!(solve_permutation(&Permutation::from_dense(&[1, 0, 1]).unwrap()).unwrap());
        assert!(!solve_permutation(&Permutation::from_dense(&[1, 1, 0, 0, 0, 1, 1]).unwrap()).unwrap());
        let y = Rnmts::from_values(&[2, 3, 7, 8]).unwrap();
        assert!(!solve_rnmts(&y).unwrap());
        let y = Rnmts::from_values(&[2, 4, 6]).unwrap();
        assert!(solve_rnmts(&y).unwrap());
        // e = 5 with σ = τ = id gives u = (3, 1)
        let r = Rn3dm::from_values(&[3, 1], 5).unwrap();
        assert!(solve_rn3dm(&r).unwrap());
    }

    #[test]
    fn budgets() {
        // identity on n = 13: one entry on each even anti-diagonal
        let z: Vec<u64> = (0..25).map(|k| u64::from(k % 2 == 0)).collect();
        let big = Permutation::from_dense(&z).unwrap();
        assert!(matches!(solve_permutation(&big), Err(Error::BudgetExceeded { .. })));
    }
}
