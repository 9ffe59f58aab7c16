//! Highest-weight test for the wedge vector of a point set.
//!
//! A point set P ⊆ N³ stands for the wedge ψ_P of the basis vectors
//! e_x ⊗ e_y ⊗ e_z, (x,y,z) ∈ P, taken in sorted order. The raising operator
//! E_{x′,x} (x′ < x) acting on the first factor sends e_x to e_{x′}, and
//! acts on ψ_P as a derivation: one summand per point with first coordinate
//! x, that point moved to x′. A summand whose moved point already lies in P
//! has a repeated factor and vanishes. The surviving summands are collected
//! with their signs; ψ_P is highest weight iff every collected coefficient
//! is zero, for every raising operator on every axis.

use rustc_hash::FxHashMap;

use super::{Point, PointSet};

/// Sign of sorting `v` after position `idx` was overwritten.
fn moved_sign(v: &[Point], idx: usize) -> i64 {
    let q = v[idx];
    let passed = v
        .iter()
        .enumerate()
        .filter(|&(j, e)| (j > idx && *e < q) || (j < idx && *e > q))
        .count();
    if passed % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn check_highest_weight(p: &PointSet) -> bool {
    let basis: Vec<Point> = p.iter().copied().collect();
    for axis in 0..3 {
        let mut targets: Vec<usize> = basis.iter().map(|pt| pt[axis]).collect();
        targets.sort_unstable();
        targets.dedup();
        for &x in &targets {
            for x_low in 0..x {
                let mut terms: FxHashMap<Vec<Point>, i64> = FxHashMap::default();
                for (idx, pt) in basis.iter().enumerate() {
                    if pt[axis] != x {
                        continue;
                    }
                    let mut q = *pt;
                    q[axis] = x_low;
                    if p.contains(&q) {
                        continue;
                    }
                    let mut word = basis.clone();
                    word[idx] = q;
                    let sign = moved_sign(&word, idx);
                    word.sort_unstable();
                    *terms.entry(word).or_default() += sign;
                }
                if terms.values().any(|&c| c != 0) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::simplex;

    fn set(pts: &[Point]) -> PointSet {
        pts.iter().copied().collect()
    }

    #[test]
    fn examples() {
        assert!(check_highest_weight(&simplex(2)));
        assert!(!check_highest_weight(&set(&[[0, 0, 0], [0, 1, 1]])));
        assert!(check_highest_weight(&set(&[[0, 0, 0], [1, 0, 0]])));
        assert!(check_highest_weight(&PointSet::new()));
        // gap along x: E_{1,2} moves (2,0,0) to an unoccupied (1,0,0)
        assert!(!check_highest_weight(&set(&[[0, 0, 0], [2, 0, 0]])));
    }

    #[test]
    fn sign_of_single_move() {
        // the moved entry passes two others, then one
        assert_eq!(moved_sign(&[[1, 0, 0], [2, 0, 0], [0, 0, 0]], 2), 1);
        assert_eq!(moved_sign(&[[1, 0, 0], [0, 0, 0]], 1), -1);
    }
}
