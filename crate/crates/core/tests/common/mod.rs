#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;

use kron_core::partition::dense;
use kron_core::pointset::{count_t, Marginals, Point, PointSet};
use kron_core::reductions::{
    reduce_permutation_to_consistency, Permutation, RestrictedKronecker, Rn3dm, ThreeDm,
};
use kron_core::{Partition, PartitionTriple, Result, Shape};

pub fn partitions(n: usize) -> Vec<Partition> {
    dense::partitions_of(n).iter().map(|p| Partition::from_dense(p).unwrap()).collect()
}

/// Every triple of partitions of n.
pub fn triples(n: usize) -> Vec<PartitionTriple> {
    let ps = partitions(n);
    let mut out = Vec::with_capacity(ps.len().pow(3));
    for l in &ps {
        for m in &ps {
            for p in &ps {
                out.push(PartitionTriple::new(l.clone(), m.clone(), p.clone()).unwrap());
            }
        }
    }
    out
}

pub fn t_positive(t: &PartitionTriple) -> bool {
    count_t(&Marginals::of_triple(t).unwrap()).unwrap() > BigUint::ZERO
}

/// All pyramids (down-closed point sets) with at most `max` points, grown
/// one addable corner at a time.
pub fn pyramids(max: usize) -> Vec<PointSet> {
    let mut layer: HashSet<PointSet> = HashSet::from([PointSet::new()]);
    let mut out: Vec<PointSet> = vec![PointSet::new()];
    for _ in 0..max {
        let mut next = HashSet::new();
        for p in &layer {
            let mut corners: Vec<Point> = vec![[0, 0, 0]];
            for pt in p.iter() {
                for axis in 0..3 {
                    let mut q = *pt;
                    q[axis] += 1;
                    corners.push(q);
                }
            }
            for c in corners {
                if p.contains(&c) {
                    continue;
                }
                let below_ok = (0..3).all(|axis| {
                    c[axis] == 0 || {
                        let mut q = c;
                        q[axis] -= 1;
                        p.contains(&q)
                    }
                });
                if below_ok {
                    let mut bigger = p.clone();
                    bigger.insert(c);
                    next.insert(bigger);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Sorted multisets of `len` values in lo..=hi with the given sum.
pub fn multisets(len: usize, lo: u64, hi: u64, sum: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, lo: u64, hi: u64, sum: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if hi * (len as u64) < sum {
            return;
        }
        for v in lo..=hi {
            if v * len as u64 > sum {
                break;
            }
            cur.push(v);
            rec(len - 1, v, hi, sum - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, lo, hi, sum, &mut Vec::new(), &mut out);
    out
}

/// Every PERMUTATION instance of order n.
pub fn permutation_instances(n: usize) -> Vec<Permutation> {
    let n64 = n as u64;
    multisets(n, 2, 2 * n64, n64 * (n64 + 1))
        .into_iter()
        .map(|y| {
            let mut z = vec![0u64; 2 * n - 1];
            for v in y {
                z[v as usize - 2] += 1;
            }
            Permutation::from_dense(&z).unwrap()
        })
        .collect()
}

/// RN3DM instances of order n with e ≤ 2n + 2; every admissible u multiset
/// for each e.
pub fn rn3dm_instances(n: usize) -> Vec<Rn3dm> {
    let n64 = n as u64;
    let mut out = Vec::new();
    for e in n64 + 1..=2 * n64 + 2 {
        for u in multisets(n, 0, e - 2, n64 * (e - n64 - 1)) {
            out.push(Rn3dm::from_values(&u, e).unwrap());
        }
    }
    out
}

/// Every valid 3DM instance with the given q ≤ 2.
pub fn three_dm_instances(q: usize) -> Vec<ThreeDm> {
    let all: Vec<[usize; 3]> = (1..=q)
        .flat_map(|a| (1..=q).flat_map(move |b| (1..=q).map(move |c| [a, b, c])))
        .collect();
    assert!(all.len() <= 16);
    (1u32..1 << all.len())
        .filter_map(|mask| {
            let ts = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| *t);
            ThreeDm::new(q, ts).ok()
        })
        .collect()
}

/// Deterministic q = 3 instances: the diagonal plus every subset of a fixed
/// list of extra triples.
pub fn three_dm_q3(count: usize) -> Vec<ThreeDm> {
    let extra: Vec<[usize; 3]> = (1..=3)
        .flat_map(|a| (1..=3).flat_map(move |b| (1..=3).map(move |c| [a, b, c])))
        .filter(|t| !(t[0] == t[1] && t[1] == t[2]))
        .collect();
    (0u32..)
        .map(|mask| {
            let diag = (1..=3).map(|i| [i, i, i]);
            let ts = extra.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| *t);
            ThreeDm::new(3, diag.chain(ts)).unwrap()
        })
        .take(count)
        .collect()
}

/// The explicit stage-(VII) triple of a PERMUTATION instance.
pub fn stage_seven_triple(p: &Permutation) -> Result<PartitionTriple> {
    let c = reduce_permutation_to_consistency(p)?;
    let lam = Shape::Columns(c.lambda_cols.clone()).materialize(1 << 12)?;
    let mu = Shape::Columns(c.mu_cols.clone()).materialize(1 << 12)?;
    PartitionTriple::new(lam, mu.clone(), mu)
}

type Key = (BigUint, BigUint, BigUint);

fn shape_key(s: &Shape) -> Key {
    (s.height(), s.size(), s.first_row())
}

/// Number of pairwise different instances: grouped by fingerprint, then
/// compared exactly within each group.
pub fn distinct_outputs(outs: &[RestrictedKronecker]) -> usize {
    let mut groups: BTreeMap<(Key, Key), Vec<&RestrictedKronecker>> = BTreeMap::new();
    for o in outs {
        let bucket = groups.entry((shape_key(&o.lambda), shape_key(&o.mu))).or_default();
        let dup = bucket
            .iter()
            .any(|b| b.lambda.same_as(&o.lambda, 1 << 12) && b.mu.same_as(&o.mu, 1 << 12) && b.pi.same_as(&o.pi, 1 << 12));
        if !dup {
            bucket.push(o);
        }
    }
    groups.values().map(Vec::len).sum()
}
