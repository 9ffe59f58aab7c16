//! Constraint checks on RESTRICTED KRONECKER instances and exceptional
//! candidates.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use super::ratio::{Epsilon, Ratio};
use crate::error::{Error, Result};
use crate::json::{field, num, shape_from_json, shape_to_json};
use crate::oracle;
use crate::partition::{Partition, PartitionTriple};
use crate::segmented::Shape;

/// Run budget for turning symbolic shapes into explicit ones.
pub const MATERIALIZE_RUNS: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PedestalParams {
    pub r: BigUint,
    pub s: BigUint,
    pub c: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedKronecker {
    pub lambda: Shape,
    pub mu: Shape,
    pub pi: Shape,
    pub epsilon: Epsilon,
    /// Present when produced by stage (VIII).
    pub params: Option<PedestalParams>,
}

impl RestrictedKronecker {
    /// m = ht(μ).
    pub fn m(&self) -> BigUint {
        self.mu.height()
    }

    pub fn explicit_triple(&self) -> Result<PartitionTriple> {
        PartitionTriple::new(
            self.lambda.materialize(MATERIALIZE_RUNS)?,
            self.mu.materialize(MATERIALIZE_RUNS)?,
            self.pi.materialize(MATERIALIZE_RUNS)?,
        )
    }

    /// Heights, sizes and parameters without the shapes themselves.
    pub fn summary(&self) -> Value {
        let mut v = json!({
            "epsilon": self.epsilon.to_string(),
            "m": num(self.m()),
            "height_lambda": num(self.lambda.height()),
            "height_mu": num(self.mu.height()),
            "size": num(self.lambda.size()),
            "symbolic": matches!(self.lambda, Shape::Columns(_)),
        });
        if let Some(p) = &self.params {
            v["params"] = json!({ "r": num(&p.r), "s": num(&p.s), "c": num(&p.c) });
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": self.epsilon.to_string(),
            "lambda": shape_to_json(&self.lambda),
            "mu": shape_to_json(&self.mu),
            "pi": shape_to_json(&self.pi),
        })
    }

    /// Reads `to_json` output or a plain triple; `epsilon` overrides any
    /// value stored in the document.
    pub fn from_json(v: &Value, epsilon: Option<Epsilon>) -> Result<Self> {
        let epsilon = match (epsilon, v.get("epsilon")) {
            (Some(e), _) => e,
            (None, Some(Value::String(s))) => s.parse()?,
            (None, _) => return Err(Error::Parse("no epsilon given".into())),
        };
        Ok(RestrictedKronecker {
            lambda: shape_from_json(field(v, "lambda")?)?,
            mu: shape_from_json(field(v, "mu")?)?,
            pi: shape_from_json(field(v, "pi")?)?,
            epsilon,
            params: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub id: &'static str,
    pub name: &'static str,
    /// `None` when not evaluated.
    pub holds: Option<bool>,
    pub detail: String,
}

impl Verdict {
    fn new(id: &'static str, name: &'static str, holds: bool, detail: String) -> Self {
        Verdict { id, name, holds: Some(holds), detail }
    }

    fn skipped(id: &'static str, name: &'static str, detail: impl Into<String>) -> Self {
        Verdict { id, name, holds: None, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "constraint": self.id, "name": self.name, "holds": self.holds, "detail": self.detail })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCertificate {
    pub height: BigUint,
    /// Smallest column of μ.
    pub h: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedReport {
    pub constraints: Vec<RestrictedVerdict>,
    pub cone: Option<ConeCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedVerdict {
    pub id: &'static str,
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl RestrictedReport {
    pub fn all_hold(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }

    pub fn get(&self, id: &str) -> Option<&RestrictedVerdict> {
        self.constraints.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        let constraints: Vec<Value> = self
            .constraints
            .iter()
            .map(|c| json!({ "constraint": c.id, "name": c.name, "holds": c.holds, "detail": c.detail }))
            .collect();
        let cone = self.cone.as_ref().map(|c| json!({ "height_lambda": num(&c.height), "smallest_column_mu": num(&c.h) }));
        json!({ "all_hold": self.all_hold(), "constraints": constraints, "cone_certificate": cone })
    }
}

/// ht(λ) ≤ h² with h the smallest column of μ: then (λ, μ, μ) lies in the
/// Kronecker cone. `false` certifies nothing.
pub fn kron_cone_sufficient(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition("kron_cone_sufficient needs μ ≠ ∅"));
    }
    cone_check(&Shape::Explicit(lambda.clone()), &Shape::Explicit(mu.clone())).map(|c| c.is_some())
}

fn cone_check(lambda: &Shape, mu: &Shape) -> Result<Option<ConeCertificate>> {
    let h = mu.smallest_column();
    if h.is_zero() {
        return Err(Error::EmptyPartition("kron_cone_sufficient needs μ ≠ ∅"));
    }
    let height = lambda.height();
    Ok((height <= &h * &h).then_some(ConeCertificate { height, h }))
}

/// The five constraints: (1) μ = π, (2) ht(λ) ≤ m^ε, (3) cone membership
/// via the smallest-column certificate, (4) |λ| = |μ| = |π| ≤ m³, (5) λ is
/// not a hook. Here m = ht(μ).
pub fn verify_restricted(i: &RestrictedKronecker) -> RestrictedReport {
    let v = |id, name, holds, detail| RestrictedVerdict { id, name, holds, detail };
    let m = i.m();
    let ht = i.lambda.height();
    let same = i.mu.same_as(&i.pi, MATERIALIZE_RUNS) && i.pi.height() == m;
    let e = i.epsilon.ratio();
    let cone = cone_check(&i.lambda, &i.mu).ok().flatten();
    let (sl, sm, sp) = (i.lambda.size(), i.mu.size(), i.pi.size());
    let cube = Pow::pow(&m, 3u32);
    let hook = i.lambda.is_hook();
    let constraints = vec![
        v("1", "mu equals pi", same, "μ and π compared exactly".into()),
        v("2", "ht(lambda) <= m^epsilon", e.le_power(&ht, &m), format!("ht(λ) = {ht}, m = {m}, ε = {e}")),
        v(
            "3",
            "Kronecker cone",
            cone.is_some(),
            match &cone {
                Some(c) => format!("ht(λ) = {} ≤ h² with h = {}", c.height, c.h),
                None => "no certificate".into(),
            },
        ),
        v("4", "|lambda| = |mu| = |pi| <= m^3", sl == sm && sm == sp && sl <= cube, format!("|λ| = {sl}, m³ = {cube}")),
        v(
            "5",
            "lambda not a hook",
            matches!(hook, Ok(false)),
            match &hook {
                Ok(h) => format!("hook: {h}"),
                Err(e) => e.to_string(),
            },
        ),
    ];
    RestrictedReport { constraints, cone }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub d: BigUint,
    pub constraints: Vec<Verdict>,
}

impl ExceptionalReport {
    pub fn get(&self, id: &str) -> Option<&Verdict> {
        self.constraints.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({ "d": num(&self.d), "constraints": self.constraints.iter().map(Verdict::to_json).collect::<Vec<_>>() })
    }
}

/// Candidate (λ, δ, δ) with δ = (d^r), d = |λ|/r, against the exceptional
/// constraints. (5) is not computed; hooks are flagged there since p(λ)
/// vanishes for them.
pub fn exceptional_candidate_check(lambda: &Partition, r: &BigUint, epsilon: Epsilon, b: Ratio) -> Result<ExceptionalReport> {
    let n = lambda.size();
    let delta = Partition::delta_rect(&n, r)?;
    let d = delta.first_part();
    let ht = lambda.height();
    let e = epsilon.ratio();
    let hook = !lambda.is_empty() && lambda.is_hook()?;

    let zero = if hook {
        Verdict::skipped("0", "k = 0", "moot: λ is a hook")
    } else {
        let t = PartitionTriple::new(lambda.clone(), delta.clone(), delta.clone())?;
        match oracle::kronecker(&t) {
            Ok(k) => Verdict::new("0", "k = 0", k.is_zero(), format!("k = {k}")),
            Err(err) if err.is_budget() => Verdict::skipped("0", "k = 0", format!("not evaluated: {err}")),
            Err(err) => return Err(err),
        }
    };
    let cone = !delta.is_empty() && kron_cone_sufficient(lambda, &delta)?;
    // (6): λ₀ ≥ n(1 − r^{ε/2 − 1}) ⇔ (n − λ₀)^{2q} · r^{2q − p} ≤ n^{2q}
    let (p, q) = (e.num, e.den);
    let gap = &n - lambda.first_part();
    let six = Pow::pow(&gap, 2 * q) * Pow::pow(r, 2 * q - p) <= Pow::pow(&n, 2 * q);
    let constraints = vec![
        zero,
        Verdict::new("1", "mu = pi = delta(lambda)", true, format!("δ = ({d}^{r})")),
        Verdict::new("2", "ht(lambda) <= r^epsilon", e.le_power(&ht, r), format!("ht(λ) = {ht}, r = {r}, ε = {e}")),
        Verdict::new("3", "Kronecker cone", cone, "implied by (1) with ht(λ) ≤ r²".into()),
        Verdict::new("4", "|lambda| <= r^b", b.le_power(&n, r), format!("|λ| = {n}, b = {b}")),
        if hook {
            Verdict::new("5", "p(lambda) > 0", false, "λ is a hook, and p(λ) = 0 for hooks (documented, not computed)".into())
        } else {
            Verdict::skipped("5", "p(lambda) > 0", "not evaluated (plethysm multiplicity out of scope)")
        },
        Verdict::new("6", "lambda_0 >= |lambda|(1 - r^(epsilon/2 - 1))", six, format!("λ₀ = {}", lambda.first_part())),
    ];
    Ok(ExceptionalReport { d, constraints })
}
