//! Point sets in N³, their marginals, and the counts t and p.
//!
//! For a triple (λ, μ, π), t counts point sets with marginals
//! (λ^T, μ^T, π^T) and p counts those that are pyramids; p ≤ k ≤ t.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::oracle;
use crate::partition::PartitionTriple;

mod count;
mod simplex;
mod weight;

pub use count::{count_p, count_t, count_t_with, min_level_sum};
pub use simplex::{
    lattice_permutation_columns, lattice_permutation_triple, p_of_n, pedestal, recognize_lattice_form,
    recognize_pedestalled, simplex_size, is_simplex_like, simplex_r, LatticeForm, Pedestalled,
};
pub use weight::check_highest_weight;

pub type Point = [usize; 3];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: BTreeSet<Point>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.points.insert(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.points.iter().map(|p| serde_json::json!(p)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("point set must be an array".into()))?;
        let mut out = PointSet::new();
        for item in arr {
            let coords: Option<Vec<usize>> = item
                .as_array()
                .map(|c| c.iter().filter_map(|x| x.as_u64().map(|x| x as usize)).collect());
            match coords.as_deref() {
                Some(&[x, y, z]) => {
                    out.insert([x, y, z]);
                }
                _ => return Err(Error::Parse(format!("bad point {item}"))),
            }
        }
        Ok(out)
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet { points: iter.into_iter().collect() }
    }
}

/// Three slice-count vectors. Entries need not be sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Marginals {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

impl Marginals {
    pub fn new(x: Vec<usize>, y: Vec<usize>, z: Vec<usize>) -> Self {
        Marginals { x, y, z }
    }

    /// (λ^T, μ^T, π^T).
    pub fn of_triple(t: &PartitionTriple) -> Result<Self> {
        let [x, y, z] = t.dense_transposes()?;
        Ok(Marginals { x, y, z })
    }

    pub fn axes(&self) -> [&Vec<usize>; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// The common sum, or an error if the three sums differ.
    pub fn total(&self) -> Result<usize> {
        let s: Vec<usize> = self.axes().iter().map(|v| v.iter().sum()).collect();
        if s[0] != s[1] || s[0] != s[2] {
            return Err(Error::SizeMismatch(format!("marginal sums {} / {} / {}", s[0], s[1], s[2])));
        }
        Ok(s[0])
    }
}

pub fn marginals_of(p: &PointSet) -> Marginals {
    let mut axes: [Vec<usize>; 3] = Default::default();
    for pt in p.iter() {
        for (axis, &c) in axes.iter_mut().zip(pt) {
            if axis.len() <= c {
                axis.resize(c + 1, 0);
            }
            axis[c] += 1;
        }
    }
    let [x, y, z] = axes;
    Marginals { x, y, z }
}

/// Closed under decreasing any one coordinate by one.
pub fn is_pyramid(p: &PointSet) -> bool {
    p.iter().all(|pt| {
        (0..3).all(|axis| {
            if pt[axis] == 0 {
                return true;
            }
            let mut q = *pt;
            q[axis] -= 1;
            p.contains(&q)
        })
    })
}

/// P_r = {x + y + z ≤ r − 1}.
pub fn simplex(r: usize) -> PointSet {
    let mut out = PointSet::new();
    for x in 0..r {
        for y in 0..r - x {
            for z in 0..r - x - y {
                out.insert([x, y, z]);
            }
        }
    }
    out
}

/// Σ (x + y + z) over the points.
pub fn barycenter_diag(p: &PointSet) -> u64 {
    p.iter().map(|pt| pt.iter().sum::<usize>() as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub p: BigUint,
    /// `None` when the oracle budget does not admit the size.
    pub k: Option<BigUint>,
    pub t: BigUint,
}

/// (p, k, t) for a triple, asserting p ≤ k ≤ t.
pub fn verify_bounds(t: &PartitionTriple) -> Result<Bounds> {
    let m = Marginals::of_triple(t)?;
    let (p, tc) = (count_p(&m)?, count_t(&m)?);
    let k = match oracle::kronecker(t) {
        Ok(k) => Some(k),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    assert!(p <= tc, "p > t for {t}");
    if let Some(k) = &k {
        assert!(p <= *k && *k <= tc, "p ≤ k ≤ t fails for {t}: {p} {k} {tc}");
    }
    Ok(Bounds { p, k, t: tc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[Point]) -> PointSet {
        pts.iter().copied().collect()
    }

    #[test]
    fn marginals_examples() {
        let m = marginals_of(&set(&[[0, 0, 0], [1, 0, 0]]));
        assert_eq!(m, Marginals::new(vec![1, 1], vec![2], vec![2]));
        let m = marginals_of(&simplex(2));
        assert_eq!(m, Marginals::new(vec![3, 1], vec![3, 1], vec![3, 1]));
        assert_eq!(marginals_of(&PointSet::new()), Marginals::default());
    }

    #[test]
    fn pyramid_examples() {
        assert!(is_pyramid(&simplex(2)));
        assert!(!is_pyramid(&set(&[[0, 0, 0], [0, 1, 1]])));
        assert!(is_pyramid(&PointSet::new()));
    }

    #[test]
    fn simplex_sizes() {
        assert_eq!(simplex(1), set(&[[0, 0, 0]]));
        assert_eq!(simplex(2).len(), 4);
        assert_eq!(simplex(4).len(), 20);
        assert!(simplex(0).is_empty());
    }

    #[test]
    fn barycenter_examples() {
        assert_eq!(barycenter_diag(&simplex(1)), 0);
        assert_eq!(barycenter_diag(&simplex(2)), 3);
        assert_eq!(barycenter_diag(&set(&[[0, 0, 0], [1, 1, 1]])), 3);
    }

    #[test]
    fn bounds_examples() {
        let b = |l: &[u64], m: &[u64], p: &[u64]| {
            let b = verify_bounds(&PartitionTriple::from_parts(l, m, p).unwrap()).unwrap();
            (b.p, b.k.unwrap(), b.t)
        };
        let u = |x: u32| BigUint::from(x);
        assert_eq!(b(&[1], &[1], &[1]), (u(1), u(1), u(1)));
        assert_eq!(b(&[1, 1], &[2], &[2]), (u(0), u(0), u(2)));
        assert_eq!(b(&[2, 2, 2], &[2, 2, 1, 1], &[2, 2, 1, 1]), (u(1), u(1), u(1)));
    }

    #[test]
    fn json_round_trip() {
        let s = simplex(3);
        assert_eq!(PointSet::from_json(&s.to_json()).unwrap(), s);
    }
}
