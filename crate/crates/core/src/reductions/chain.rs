//! The reductions (I)–(VIII) and their composition.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::instances::{
    normalize_rle, Consistency, FourPartition, MachineFlow, NumberPartition, Permutation, Rn3dm, Rnmts, ThreeDm, ThreePartition,
};
use super::ratio::Epsilon;
use super::verify::{verify_restricted, PedestalParams, RestrictedKronecker};
use crate::error::{Error, Result};
use crate::partition::PartitionTriple;
use crate::pointset::{recognize_lattice_form, LatticeForm};
use crate::segmented::{quadratic_tail, SegmentedSequence, Shape};

/// Lattice forms with r up to this are materialized as explicit partitions.
pub const EXPLICIT_R: u32 = 1000;

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn to_int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// One element per occurrence of w_i, x_j, y_k in a triple (the first
/// occurrence sized differently from the rest) and one per triple; r = 32q
/// and B = 40r⁴ + 15. Elements are listed w, x, y occurrences then triples.
pub fn reduce_3dm_to_4partition(i: &ThreeDm) -> Result<FourPartition> {
    i.validate()?;
    let r = big(32 * i.q);
    let r2 = &r * &r;
    let r3 = &r2 * &r;
    let r4 = &r3 * &r;
    let mut count = [vec![0usize; i.q + 1], vec![0usize; i.q + 1], vec![0usize; i.q + 1]];
    for t in &i.triples {
        for axis in 0..3 {
            count[axis][t[axis]] += 1;
        }
    }
    // (first, repeat) leading coefficients, index weight and constant per axis
    let shape: [(u32, u32, &BigUint, u32); 3] = [(10, 11, &r, 1), (10, 11, &r2, 2), (10, 8, &r3, 4)];
    let mut sizes = Vec::with_capacity(4 * i.triples.len());
    for (axis, &(first, repeat, weight, constant)) in shape.iter().enumerate() {
        for z in 1..=i.q {
            for l in 0..count[axis][z] {
                let lead = if l == 0 { first } else { repeat };
                sizes.push(&r4 * lead + weight * z + constant);
            }
        }
    }
    for t in &i.triples {
        let [w, x, y] = t.map(big);
        sizes.push(&r4 * 10u32 + 8u32 - &r3 * y - &r2 * x - &r * w);
    }
    FourPartition::new(sizes, i.triples.len(), &r4 * 40u32 + 15u32)
}

/// w_i, the pairs u_{i,j}, ū_{i,j} for i < j, and 8m² − 3m fillers of size
/// 20B; B′ = 64B + 4 and m′ = 8m² − m.
pub fn reduce_4partition_to_3partition(i: &FourPartition) -> Result<ThreePartition> {
    i.validate()?;
    let NumberPartition { sizes, m, bound: b } = &i.0;
    let m = *m;
    let a = sizes.len();
    let b5 = b * 5u32;
    let mut out = Vec::with_capacity(a + a * (a - 1) + 8 * m * m);
    out.extend(sizes.iter().map(|s| (&b5 + s) * 4u32 + 1u32));
    for x in 0..a {
        for y in x + 1..a {
            let pair = &sizes[x] + &sizes[y];
            out.push((b * 6u32 - &pair) * 4u32 + 2u32);
            out.push((&b5 + &pair) * 4u32 + 2u32);
        }
    }
    let filler = b * 20u32;
    out.extend(std::iter::repeat_n(filler, 8 * m * m - 3 * m));
    ThreePartition::new(out, 8 * m * m - m, b * 64u32 + 4u32)
}


/// Scale by 4m (a_j = 4m·s_j, B_mod = mB), then delays a_j for the first
/// 3m jobs, 0 up to job 4mB_mod, and u + 1 up to job n = mu, with
/// u = 4(m+1)B_mod and threshold y = n + 4mB_mod + 2.
pub fn reduce_3partition_to_machineflow(i: &ThreePartition) -> Result<MachineFlow> {
    i.validate()?;
    let NumberPartition { sizes, m, bound } = &i.0;
    let m = big(*m);
    let b_mod = &m * bound;
    let u = (&m + 1u32) * &b_mod * 4u32;
    let n = &m * &u;
    let head = &m * &b_mod * 4u32;
    let mut delays: Vec<(BigUint, BigUint)> = sizes.iter().map(|s| (&m * s * 4u32, BigUint::one())).collect();
    delays.push((BigUint::zero(), &head - &m * 3u32));
    delays.push((&u + 1u32, &n - &head));
    let out = MachineFlow { delays: normalize_rle(delays), threshold: &n + &head + 2u32, jobs: n };
    out.validate()?;
    Ok(out)
}

/// u_j = l_j and e = y. Fails when the RN3DM side conditions do not hold,
/// which signals an input not produced by (III).
pub fn reduce_machineflow_to_rn3dm(i: &MachineFlow) -> Result<Rn3dm> {
    i.validate()?;
    Rn3dm::new(i.delays.iter().cloned(), i.threshold.clone())
}

/// y_j = e − u_j, sorted.
pub fn reduce_rn3dm_to_rnmts(i: &Rn3dm) -> Result<Rnmts> {
    i.validate()?;
    Rnmts::new(i.u.iter().map(|(u, k)| (&i.e - u, k.clone())))
}


/// z_l = #{k : y_k = l}.
pub fn reduce_rnmts_to_permutation(i: &Rnmts) -> Result<Permutation> {
    i.validate()?;
    Permutation::new(i.n(), i.y.iter().cloned())
}

/// r = n − 1 and d_i = z_{i+2}.
pub fn reduce_permutation_to_consistency(i: &Permutation) -> Result<Consistency> {
    i.validate()?;
    let two = BigUint::from(2u8);
    let d: BTreeMap<BigUint, BigUint> = i.z.iter().map(|(l, v)| (l - &two, v.clone())).collect();
    Consistency::new(LatticeForm { r: &i.n - 1u32, d })
}

/// Pedestal of depth c and cross-section s × s, s = 2r + 1:
/// λ^T = ((s²)^c, λ_base^T), μ^T = π^T = μ_base^T + ((cs)^s), with the
/// smallest c satisfying c ≥ s^{2/ε − 1}.
pub fn reduce_consistency_to_kronecker(i: &Consistency, epsilon: Epsilon) -> Result<RestrictedKronecker> {
    let r = &i.form.r;
    let s = r * 2u32 + 1u32;
    let c = epsilon.pedestal_depth(&s);
    let top = to_int(&s);
    let cs = to_int(&(&c * &s));

    let mut lam = SegmentedSequence::new();
    lam.push_constant(to_int(&(&s * &s)), c.clone());
    lam.push(quadratic_tail(&top, &BigInt::zero(), &s));
    for (k, v) in &i.form.d {
        lam.add_at(&c + r * 2u32 - k, to_int(v))?;
    }
    let mut mu = SegmentedSequence::new();
    mu.push(quadratic_tail(&top, &(&cs + 1), &(r + 1u32)));
    mu.push(quadratic_tail(&to_int(r), &cs, r));

    let (lambda, mu) = if *r <= BigUint::from(EXPLICIT_R) {
        let runs = 4 * EXPLICIT_R as usize + 16;
        (
            Shape::Explicit(lam.to_partition(runs)?.transpose()),
            Shape::Explicit(mu.to_partition(runs)?.transpose()),
        )
    } else {
        (Shape::from_columns(lam)?, Shape::from_columns(mu)?)
    };
    Ok(RestrictedKronecker {
        lambda,
        pi: mu.clone(),
        mu,
        epsilon,
        params: Some(PedestalParams { r: r.clone(), s, c }),
    })
}

/// Stage (VIII) on an explicit lattice-permutation triple.
pub fn reduce_triple_to_kronecker(t: &PartitionTriple, epsilon: Epsilon) -> Result<RestrictedKronecker> {
    let form = recognize_lattice_form(t)
        .ok_or_else(|| Error::precondition(format!("{t} is not in lattice-permutation form")))?;
    reduce_consistency_to_kronecker(&Consistency::new(form)?, epsilon)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

impl Check {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Check { name: name.into(), holds }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStage {
    pub stage: &'static str,
    pub instance: Value,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReductionTrace {
    pub stages: Vec<TraceStage>,
}

impl ReductionTrace {
    fn record(&mut self, stage: &'static str, instance: Value, checks: Vec<Check>) -> Result<()> {
        if let Some(bad) = checks.iter().find(|c| !c.holds) {
            return Err(Error::StageFailed { stage, reason: format!("check failed: {}", bad.name) });
        }
        self.stages.push(TraceStage { stage, instance, checks });
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.stages
                .iter()
                .map(|s| {
                    let checks: Vec<Value> = s.checks.iter().map(|c| json!({ "check": c.name, "holds": c.holds })).collect();
                    json!({ "stage": s.stage, "instance": s.instance, "checks": checks })
                })
                .collect(),
        )
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::StageFailed { .. } => e,
        other => Error::StageFailed { stage: name, reason: other.to_string() },
    })
}

fn in_range(sizes: &[BigUint], bound: &BigUint, lo_div: u32, hi_div: u32) -> bool {
    sizes.iter().all(|s| s * lo_div > *bound && s * hi_div < *bound)
}

/// (I) through (VIII), every intermediate instance and its invariants
/// recorded. Aborts with the name of the first stage whose checks fail.
pub fn pipeline(i: &ThreeDm, epsilon: Epsilon) -> Result<(RestrictedKronecker, ReductionTrace)> {
    let mut trace = ReductionTrace::default();
    trace.record("3dm", i.to_json(), vec![Check::new("every element occurs", i.validate().is_ok())])?;

    let four = stage("4-partition", reduce_3dm_to_4partition(i))?;
    let f = &four.0;
    trace.record(
        "4-partition",
        four.to_json(),
        vec![
            Check::new("|A| = 4|M|", f.sizes.len() == 4 * i.triples.len()),
            Check::new("B/5 < s < B/3", in_range(&f.sizes, &f.bound, 5, 3)),
            Check::new("Σs = mB", f.sizes.iter().sum::<BigUint>() == &f.bound * f.m),
        ],
    )?;

    let three = stage("3-partition", reduce_4partition_to_3partition(&four))?;
    let t = &three.0;
    trace.record(
        "3-partition",
        three.to_json(),
        vec![
            Check::new("m′ = 8m² − m", t.m == 8 * f.m * f.m - f.m),
            Check::new("B′ = 64B + 4", t.bound == &f.bound * 64u32 + 4u32),
            Check::new("B′/4 < s′ < B′/2", in_range(&t.sizes, &t.bound, 4, 2)),
            Check::new("Σs′ = m′B′", t.sizes.iter().sum::<BigUint>() == &t.bound * t.m),
        ],
    )?;

    let flow = stage("machine-flow", reduce_3partition_to_machineflow(&three))?;
    let m = big(t.m);
    let b_mod = &m * &t.bound;
    let scaled_ok = t.sizes.iter().all(|s| {
        let a = &m * s * 4u32;
        a > b_mod && a < &b_mod * 2u32 && (&a % &m).is_zero()
    });
    let u = (&m + 1u32) * &b_mod * 4u32;
    trace.record(
        "machine-flow",
        flow.to_json(),
        vec![
            Check::new("B < a < 2B and m | a after scaling", scaled_ok),
            Check::new("m | 4B after scaling", (&b_mod * 4u32 % &m).is_zero()),
            Check::new("n = m·u", flow.jobs == &m * &u),
            Check::new("y = n + 4mB + 2", flow.threshold == &flow.jobs + &m * &b_mod * 4u32 + 2u32),
        ],
    )?;

    let rn3dm = stage("rn3dm", reduce_machineflow_to_rn3dm(&flow))?;
    let n = rn3dm.n();
    let sum_u: BigUint = rn3dm.u.iter().map(|(v, k)| v * k).sum();
    trace.record(
        "rn3dm",
        rn3dm.to_json(),
        vec![
            Check::new("Σu + n(n+1) = ne", sum_u + &n * (&n + 1u32) == &n * &rn3dm.e),
            Check::new("u < e − 1", rn3dm.u.last().is_none_or(|(v, _)| v + 1u32 < rn3dm.e)),
        ],
    )?;

    let rnmts = stage("rnmts", reduce_rn3dm_to_rnmts(&rn3dm))?;
    trace.record("rnmts", rnmts.to_json(), vec![Check::new("2 ≤ y ≤ 2n, Σy = n(n+1)", rnmts.validate().is_ok())])?;

    let perm = stage("permutation", reduce_rnmts_to_permutation(&rnmts))?;
    trace.record("permutation", perm.to_json(), vec![Check::new("Σz = n, Σl·z = n(n+1)", perm.validate().is_ok())])?;

    let cons = stage("special-consistency", reduce_permutation_to_consistency(&perm))?;
    trace.record(
        "special-consistency",
        cons.to_json(),
        vec![Check::new("λ^T non-increasing", cons.lambda_cols.is_partition())],
    )?;

    let out = stage("restricted-kronecker", reduce_consistency_to_kronecker(&cons, epsilon))?;
    let report = verify_restricted(&out);
    let checks = report.constraints.iter().map(|c| Check::new(format!("({}) {}", c.id, c.name), c.holds)).collect();
    let mut recorded = out.to_json();
    recorded["summary"] = out.summary();
    trace.record("restricted-kronecker", recorded, checks)?;
    Ok((out, trace))
}
