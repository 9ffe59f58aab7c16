//! Instance types of the problems along the chain, their invariants and
//! JSON forms.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::json::{array, field, num, rle_from_json, rle_to_json, small, uint};
use crate::pointset::{lattice_permutation_columns, LatticeForm};
use crate::segmented::SegmentedSequence;

fn invalid(kind: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidInstance { kind, reason: reason.into() }
}

/// Three-dimensional matching over W = X = Y = {1, …, q}; a triple
/// (i, j, k) stands for (w_i, x_j, y_k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeDm {
    pub q: usize,
    pub triples: BTreeSet<[usize; 3]>,
}

impl ThreeDm {
    pub fn new(q: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let out = ThreeDm { q, triples: triples.into_iter().collect() };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(invalid("3DM", "q must be positive"));
        }
        let mut seen = [vec![false; self.q], vec![false; self.q], vec![false; self.q]];
        for t in &self.triples {
            for (axis, &c) in t.iter().enumerate() {
                if c == 0 || c > self.q {
                    return Err(invalid("3DM", format!("coordinate {c} of {t:?} outside 1..={}", self.q)));
                }
                seen[axis][c - 1] = true;
            }
        }
        for (axis, name) in ["w", "x", "y"].iter().enumerate() {
            if let Some(i) = seen[axis].iter().position(|s| !s) {
                return Err(invalid("3DM", format!("{name}_{} occurs in no triple", i + 1)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let triples: Vec<Value> = self.triples.iter().map(|t| json!([num(t[0]), num(t[1]), num(t[2])])).collect();
        json!({ "q": num(self.q), "triples": triples })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let q = small(field(v, "q")?)?;
        let mut triples = Vec::new();
        for t in array(field(v, "triples")?, "a triple list")? {
            match t.as_array().map(Vec::as_slice) {
                Some([a, b, c]) => triples.push([small(a)?, small(b)?, small(c)?]),
                _ => return Err(Error::Parse(format!("bad triple {t}"))),
            }
        }
        ThreeDm::new(q, triples)
    }
}

/// Shared shape of 4-PARTITION and 3-PARTITION: `sizes` of |A| = group·m
/// elements to be split into m groups each summing to `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberPartition {
    pub sizes: Vec<BigUint>,
    pub m: usize,
    pub bound: BigUint,
}

impl NumberPartition {
    /// Group size g with B/(g+1) < s < B/(g−1) and Σs = mB.
    fn validate(&self, kind: &'static str, g: usize) -> Result<()> {
        if self.sizes.len() != g * self.m || self.m == 0 {
            return Err(invalid(kind, format!("{} elements for m = {}", self.sizes.len(), self.m)));
        }
        let total: BigUint = self.sizes.iter().sum();
        if total != &self.bound * self.m {
            return Err(invalid(kind, format!("Σs = {total} ≠ mB = {}", &self.bound * self.m)));
        }
        for s in &self.sizes {
            let lower = s * (g + 1) > self.bound;
            let upper = s * (g - 1) < self.bound;
            if !(lower && upper) {
                return Err(invalid(kind, format!("size {s} outside (B/{}, B/{}) for B = {}", g + 1, g - 1, self.bound)));
            }
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "m": num(self.m),
            "bound": num(&self.bound),
            "sizes": self.sizes.iter().map(num).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(NumberPartition {
            m: small(field(v, "m")?)?,
            bound: uint(field(v, "bound")?)?,
            sizes: array(field(v, "sizes")?, "a size list")?.iter().map(uint).collect::<Result<_>>()?,
        })
    }
}

macro_rules! number_partition {
    ($name:ident, $kind:literal, $group:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub NumberPartition);

        impl $name {
            pub const GROUP: usize = $group;

            pub fn new(sizes: Vec<BigUint>, m: usize, bound: BigUint) -> Result<Self> {
                let out = $name(NumberPartition { sizes, m, bound });
                out.validate()?;
                Ok(out)
            }

            pub fn validate(&self) -> Result<()> {
                self.0.validate($kind, $group)
            }

            pub fn to_json(&self) -> Value {
                self.0.to_json()
            }

            pub fn from_json(v: &Value) -> Result<Self> {
                let p = NumberPartition::from_json(v)?;
                Self::new(p.sizes, p.m, p.bound)
            }
        }
    };
}

number_partition!(FourPartition, "4-PARTITION", 4);
number_partition!(ThreePartition, "3-PARTITION", 3);

fn rle_total(runs: &[(BigUint, BigUint)]) -> BigUint {
    runs.iter().map(|(_, m)| m).sum()
}

fn rle_sum(runs: &[(BigUint, BigUint)]) -> BigUint {
    runs.iter().map(|(v, m)| v * m).sum()
}

/// Merges equal neighbours and drops empty runs.
pub(crate) fn normalize_rle(runs: impl IntoIterator<Item = (BigUint, BigUint)>) -> Vec<(BigUint, BigUint)> {
    let mut out: Vec<(BigUint, BigUint)> = Vec::new();
    for (v, m) in runs {
        if m.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((w, k)) if *w == v => *k += m,
            _ => out.push((v, m)),
        }
    }
    out
}

/// Two-machine flow shop with unit jobs: `delays` in job order (run-length
/// encoded), and the completion threshold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineFlow {
    pub delays: Vec<(BigUint, BigUint)>,
    pub jobs: BigUint,
    pub threshold: BigUint,
}

impl MachineFlow {
    pub fn validate(&self) -> Result<()> {
        if rle_total(&self.delays) != self.jobs {
            return Err(invalid("MACHINE FLOW", format!("delay runs cover {} jobs, not {}", rle_total(&self.delays), self.jobs)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "jobs": num(&self.jobs), "threshold": num(&self.threshold), "delays": rle_to_json(&self.delays) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let out = MachineFlow {
            jobs: uint(field(v, "jobs")?)?,
            threshold: uint(field(v, "threshold")?)?,
            delays: rle_from_json(field(v, "delays")?)?,
        };
        out.validate()?;
        Ok(out)
    }
}

/// Restricted numerical 3-dimensional matching: the multiset U (ascending
/// runs) and e, with Σu + n(n+1) = ne and every u < e − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rn3dm {
    pub u: Vec<(BigUint, BigUint)>,
    pub e: BigUint,
}

impl Rn3dm {
    pub fn new(u: impl IntoIterator<Item = (BigUint, BigUint)>, e: BigUint) -> Result<Self> {
        let mut runs: Vec<_> = u.into_iter().collect();
        runs.sort();
        let out = Rn3dm { u: normalize_rle(runs), e };
        out.validate()?;
        Ok(out)
    }

    pub fn from_values(u: &[u64], e: u64) -> Result<Self> {
        Self::new(u.iter().map(|&x| (BigUint::from(x), BigUint::one())), BigUint::from(e))
    }

    pub fn n(&self) -> BigUint {
        rle_total(&self.u)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n.is_zero() {
            return Err(invalid("RN3DM", "empty U"));
        }
        let lhs = rle_sum(&self.u) + &n * (&n + 1u32);
        if lhs != &n * &self.e {
            return Err(invalid("RN3DM", format!("Σu + n(n+1) = {lhs} ≠ ne = {}", &n * &self.e)));
        }
        if let Some((top, _)) = self.u.last() {
            if top + 1u32 >= self.e {
                return Err(invalid("RN3DM", format!("u = {top} is not below e − 1 = {}", &self.e - 1u32)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "e": num(&self.e), "u": rle_to_json(&self.u) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Rn3dm::new(rle_from_json(field(v, "u")?)?, uint(field(v, "e")?)?)
    }
}

/// Target sums 2 ≤ y₁ ≤ … ≤ yₙ ≤ 2n with Σy = n(n+1), as ascending runs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rnmts {
    pub y: Vec<(BigUint, BigUint)>,
}

impl Rnmts {
    pub fn new(y: impl IntoIterator<Item = (BigUint, BigUint)>) -> Result<Self> {
        let mut runs: Vec<_> = y.into_iter().collect();
        runs.sort();
        let out = Rnmts { y: normalize_rle(runs) };
        out.validate()?;
        Ok(out)
    }

    pub fn from_values(y: &[u64]) -> Result<Self> {
        Self::new(y.iter().map(|&x| (BigUint::from(x), BigUint::one())))
    }

    pub fn n(&self) -> BigUint {
        rle_total(&self.y)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n.is_zero() {
            return Err(invalid("RNMTS", "empty y"));
        }
        if !self.y.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(invalid("RNMTS", "runs not strictly ascending"));
        }
        let (lo, hi) = (&self.y[0].0, &self.y[self.y.len() - 1].0);
        if *lo < BigUint::from(2u8) || *hi > &n * 2u32 {
            return Err(invalid("RNMTS", format!("values span [{lo}, {hi}], outside [2, 2n = {}]", &n * 2u32)));
        }
        let total = rle_sum(&self.y);
        if total != &n * (&n + 1u32) {
            return Err(invalid("RNMTS", format!("Σy = {total} ≠ n(n+1)")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "y": rle_to_json(&self.y) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Rnmts::new(rle_from_json(field(v, "y")?)?)
    }
}

/// Anti-diagonal sums z_l (l = 2…2n) of an n×n permutation matrix; only the
/// non-zero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    pub n: BigUint,
    pub z: BTreeMap<BigUint, BigUint>,
}

impl Permutation {
    pub fn new(n: BigUint, z: impl IntoIterator<Item = (BigUint, BigUint)>) -> Result<Self> {
        let out = Permutation { n, z: z.into_iter().filter(|(_, v)| !v.is_zero()).collect() };
        out.validate()?;
        Ok(out)
    }

    /// From the dense vector (z_2, …, z_{2n}).
    pub fn from_dense(z: &[u64]) -> Result<Self> {
        if z.is_empty() || z.len() % 2 == 0 {
            return Err(invalid("PERMUTATION", format!("dense z has length {}, expected 2n − 1", z.len())));
        }
        let n = BigUint::from(z.len().div_ceil(2));
        Permutation::new(n, z.iter().enumerate().map(|(i, &v)| (BigUint::from(i + 2), BigUint::from(v))))
    }

    /// (z_2, …, z_{2n}) when small enough.
    pub fn dense(&self) -> Result<Vec<u64>> {
        let n = self.n.to_usize().filter(|&n| n <= 1 << 20).ok_or_else(|| Error::budget("dense z", &self.n, 1 << 20))?;
        let mut out = vec![0u64; 2 * n - 1];
        for (l, v) in &self.z {
            out[l.to_usize().expect("l ≤ 2n") - 2] = v.to_u64().expect("z_l ≤ n");
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        let n = &self.n;
        if n.is_zero() {
            return Err(invalid("PERMUTATION", "n must be positive"));
        }
        for (l, v) in &self.z {
            if *l < BigUint::from(2u8) || *l > n * 2u32 {
                return Err(invalid("PERMUTATION", format!("index {l} outside 2..=2n")));
            }
            if v > n {
                return Err(invalid("PERMUTATION", format!("z_{l} = {v} exceeds n")));
            }
        }
        let total: BigUint = self.z.values().sum();
        let moment: BigUint = self.z.iter().map(|(l, v)| l * v).sum();
        if &total != n || moment != n * (n + 1u32) {
            return Err(invalid("PERMUTATION", format!("Σz = {total}, Σl·z = {moment}; need n and n(n+1)")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let z: Map<String, Value> = self.z.iter().map(|(l, v)| (l.to_string(), num(v))).collect();
        json!({ "n": num(&self.n), "z": z })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let z = field(v, "z")?;
        let entries: Vec<(BigUint, BigUint)> = match z {
            Value::Object(o) => o
                .iter()
                .map(|(l, x)| Ok((l.parse().map_err(|_| Error::Parse(format!("bad index {l:?}")))?, uint(x)?)))
                .collect::<Result<_>>()?,
            Value::Array(a) => a.iter().enumerate().map(|(i, x)| Ok((BigUint::from(i + 2), uint(x)?))).collect::<Result<_>>()?,
            _ => return Err(Error::Parse("z must be an object or an array".into())),
        };
        let n = match v.get("n") {
            Some(n) => uint(n)?,
            None => BigUint::from(entries.len().div_ceil(2)),
        };
        Permutation::new(n, entries)
    }
}

/// A lattice-permutation triple held by its (r, d), with its column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub form: LatticeForm,
    pub lambda_cols: SegmentedSequence,
    pub mu_cols: SegmentedSequence,
}

impl Consistency {
    pub fn new(form: LatticeForm) -> Result<Self> {
        let (lambda_cols, mu_cols) = lattice_permutation_columns(&form.r, &form.d)?;
        Ok(Consistency { form, lambda_cols, mu_cols })
    }

    pub fn to_json(&self) -> Value {
        let d: Map<String, Value> = self.form.d.iter().map(|(k, v)| (k.to_string(), num(v))).collect();
        json!({ "r": num(&self.form.r), "d": d })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let d = field(v, "d")?.as_object().ok_or_else(|| Error::Parse("d must be an object".into()))?;
        let d = d
            .iter()
            .map(|(k, x)| Ok((k.parse().map_err(|_| Error::Parse(format!("bad index {k:?}")))?, uint(x)?)))
            .collect::<Result<BTreeMap<BigUint, BigUint>>>()?;
        Consistency::new(LatticeForm { r: uint(field(v, "r")?)?, d })
    }
}
