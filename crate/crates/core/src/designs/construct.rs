//! Explicit designs for the special classes and the positivity deciders.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::flow::{max_flow, FlowNetwork};
use super::{is_design, search_design, t_positive_by_count, ObstructionDesign, SEARCH_LIMIT};
use crate::error::{Error, Result};
use crate::oracle;
use crate::partition::{Partition, PartitionTriple};
use crate::pointset::{count_p, is_simplex_like, Marginals};

/// Triples up to this size are decided by exhaustive design search.
const SEARCH_SIZE: usize = 7;

fn small(p: &Partition, what: &'static str) -> Result<usize> {
    p.size()
        .to_usize()
        .filter(|&n| n <= crate::partition::DENSE_LIMIT)
        .ok_or_else(|| Error::budget(what, p.size(), crate::partition::DENSE_LIMIT))
}

/// Splits the column list into consecutive hyperedges over `order`.
fn chunk(order: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        out.push(order[at..at + s].to_vec());
        at += s;
    }
    out
}

/// Recovers (λ, μ, π) from a Murnaghan embedding, or fails.
fn unembed(t: &PartitionTriple) -> Result<[Partition; 3]> {
    let not_embedded = || Error::precondition(format!("{t} is not a Murnaghan embedding"));
    let [l, m, p] = t.parts().map(|x| x.drop_rows(&BigUint::from(1u8)));
    if m.is_empty() || p.is_empty() {
        return Err(not_embedded());
    }
    let again = oracle::murnaghan_embed(&l, &m, &p).map_err(|_| not_embedded())?;
    if &again != t {
        return Err(not_embedded());
    }
    Ok([l, m, p])
}

/// Design for an embedded triple (λ̃, μ̃, π̃) of size 3ι.
///
/// Vertices are split into three parts. Each layer places its non-singleton
/// hyperedges (its first columns) inside its own part and keeps every other
/// vertex a singleton, so each vertex is a singleton in two layers. Equal
/// parts of size ι are used when they fit; otherwise part i has exactly the
/// size of layer i's non-singleton columns and the slack goes to part 0.
pub fn lr_embed_construction(t: &PartitionTriple) -> Result<ObstructionDesign> {
    let inner = unembed(t)?;
    let n = small(t.lambda(), "embedding construction")?;
    let cols = t.dense_transposes()?;
    let mut core = [0usize; 3];
    let mut core_cols: [&[usize]; 3] = [&[]; 3];
    for i in 0..3 {
        let w = inner[i].first_part().to_usize().unwrap_or(usize::MAX);
        core_cols[i] = &cols[i][..w];
        core[i] = core_cols[i].iter().sum();
    }
    let iota = n / 3;
    let mut part = if core.iter().all(|&c| c <= iota) { [iota; 3] } else { core };
    part[0] += n - part.iter().sum::<usize>();
    let mut layers: [Vec<Vec<usize>>; 3] = Default::default();
    let mut offset = 0;
    for i in 0..3 {
        let own: Vec<usize> = (offset..offset + core[i]).collect();
        let mut layer = chunk(&own, core_cols[i]);
        layer.extend((0..n).filter(|v| *v < offset || *v >= offset + core[i]).map(|v| vec![v]));
        layers[i] = layer;
        offset += part[i];
    }
    Ok(ObstructionDesign { vertex_count: n, layers })
}

fn max_height(t: &PartitionTriple) -> BigUint {
    t.parts().iter().map(|p| p.height()).max().unwrap_or_default()
}

fn check_heights(t: &PartitionTriple, c: usize) -> Result<()> {
    let h = max_height(t);
    if h > BigUint::from(c) {
        return Err(Error::precondition(format!("height {h} exceeds c = {c}")));
    }
    Ok(())
}

/// Rectangular array with columns of c vertices, the last column possibly
/// shorter. Layer 1 takes μ's columns in columnwise order, layer 2 π's
/// columns in rowwise order; layer 0 is arbitrary.
pub fn const_height_construction(t: &PartitionTriple, c: usize) -> Result<ObstructionDesign> {
    check_heights(t, c)?;
    let n = small(t.lambda(), "constant-height construction")?;
    if c == 0 || n < (c + 2) * c {
        return Err(Error::precondition(format!("size {n} below (c+2)c for c = {c}")));
    }
    let cols = t.dense_transposes()?;
    let columnwise: Vec<usize> = (0..n).collect();
    let width = n.div_ceil(c);
    let rowwise: Vec<usize> = (0..c)
        .flat_map(|row| (0..width).map(move |col| col * c + row))
        .filter(|&v| v < n)
        .collect();
    Ok(ObstructionDesign {
        vertex_count: n,
        layers: [chunk(&columnwise, &cols[0]), chunk(&columnwise, &cols[1]), chunk(&rowwise, &cols[2])],
    })
}

type HeightKey = (usize, [Vec<usize>; 3]);

fn height_memo() -> &'static Mutex<HashMap<HeightKey, bool>> {
    static MEMO: OnceLock<Mutex<HashMap<HeightKey, bool>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Positivity for heights ≤ c: always true from (c+2)c boxes on. Below
/// that the answer comes from a memo filled by design search, or by
/// counting past the search limit.
pub fn const_height_decide(t: &PartitionTriple, c: usize) -> Result<bool> {
    check_heights(t, c)?;
    let big = t.size() >= BigUint::from((c + 2) * c);
    if big {
        return Ok(true);
    }
    let key = (c, t.dense_transposes()?);
    if let Some(&v) = height_memo().lock().expect("memo poisoned").get(&key) {
        return Ok(v);
    }
    let v = if t.size() <= BigUint::from(SEARCH_LIMIT) { search_design(t)?.is_some() } else { t_positive_by_count(t)? };
    height_memo().lock().expect("memo poisoned").insert(key, v);
    Ok(v)
}

/// λ = (D−k+1, 1^{k−1}): positive iff the μ/π column network carries
/// flow ≥ k.
pub fn hook_t_positive(lambda: &Partition, mu: &Partition, pi: &Partition) -> Result<bool> {
    hook_flow(lambda, mu, pi).map(|(flow, k)| flow >= k)
}

fn hook_flow(lambda: &Partition, mu: &Partition, pi: &Partition) -> Result<(u64, u64)> {
    let t = PartitionTriple::new(lambda.clone(), mu.clone(), pi.clone())?;
    if lambda.is_empty() {
        return Ok((0, 0));
    }
    if !lambda.is_hook()? {
        return Err(Error::precondition(format!("{lambda} is not a hook")));
    }
    let k = lambda.height().to_u64().ok_or_else(|| Error::budget("hook decider", lambda.height(), u64::MAX))?;
    if k == 1 {
        return Ok((1, 1));
    }
    small(lambda, "hook decider")?;
    let [_, mc, pc] = t.dense_transposes()?;
    Ok((max_flow(&FlowNetwork::hook(&mc, &pc))?, k))
}

/// The occupancy grid: location (i, j) of the d×d grid carries
/// r div d + [(i+j) mod d < r mod d] vertices, so every row and column
/// holds r. For d ≥ r this is the single-vertex rule (i+j) rem d < r.
///
/// Layer 0 has λ's columns; each hyperedge takes one vertex from each of
/// the locations with most vertices left, ties broken by (i, j). Layers
/// 1 and 2 are the grid rows and grid columns.
pub fn rectangular_construction(lambda: &Partition, d: usize, r: usize) -> Result<ObstructionDesign> {
    let n = small(lambda, "rectangular construction")?;
    if d == 0 || r == 0 || d.checked_mul(r) != Some(n) {
        return Err(Error::NotDivisible { value: n.to_string(), divisor: format!("{d}·{r}") });
    }
    let ht = lambda.height();
    let bound = (d * d).min(r * r);
    if ht > BigUint::from(bound) {
        return Err(Error::precondition(format!("height {ht} exceeds min(d², r²) = {bound}")));
    }
    let mut stacks: Vec<Vec<usize>> = Vec::with_capacity(d * d);
    let mut rows = vec![Vec::new(); d];
    let mut cols = vec![Vec::new(); d];
    let mut next = 0;
    for i in 0..d {
        for j in 0..d {
            let m = r / d + usize::from((i + j) % d < r % d);
            let here: Vec<usize> = (next..next + m).collect();
            next += m;
            rows[i].extend(&here);
            cols[j].extend(&here);
            stacks.push(here);
        }
    }
    let mut layer0 = Vec::new();
    for &size in &lambda.transpose().to_vec()? {
        let mut order: Vec<usize> = (0..stacks.len()).filter(|&l| !stacks[l].is_empty()).collect();
        if order.len() < size {
            return Err(Error::StageFailed { stage: "rectangular", reason: format!("no room for a hyperedge of size {size}") });
        }
        order.sort_by_key(|&l| std::cmp::Reverse(stacks[l].len()));
        layer0.push(order[..size].iter().map(|&l| stacks[l].pop().expect("nonempty")).collect());
    }
    Ok(ObstructionDesign { vertex_count: n, layers: [layer0, rows, cols] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Hook,
    ConstHeight,
    Rectangular,
    SimplexLike,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "hook" => Method::Hook,
            "const-height" => Method::ConstHeight,
            "rectangular" => Method::Rectangular,
            "simplex-like" => Method::SimplexLike,
            _ => return Err(Error::Parse(format!("unknown method {s}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Design(ObstructionDesign),
    Flow { value: u64, needed: u64 },
    Count(BigUint),
    /// Heights ≤ c with at least (c+2)c boxes.
    Threshold { c: usize },
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Design(d) => json!({ "design": d.to_json() }),
            Certificate::Flow { value, needed } => {
                json!({ "flow": { "value": value.to_string(), "needed": needed.to_string() } })
            }
            Certificate::Count(c) => json!({ "count": c.to_string() }),
            Certificate::Threshold { c } => json!({ "threshold": { "c": c.to_string() } }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub positive: bool,
    pub method: &'static str,
    pub certificate: Certificate,
}

fn by_count(t: &PartitionTriple) -> Result<Decision> {
    let c = crate::pointset::count_t(&Marginals::of_triple(t)?)?;
    Ok(Decision { positive: !c.is_zero(), method: "count", certificate: Certificate::Count(c) })
}

fn hook_decision(t: &PartitionTriple) -> Result<Option<Decision>> {
    for order in [[0, 1, 2], [1, 0, 2], [2, 0, 1]] {
        let s = t.permuted(order);
        if s.lambda().is_hook()? {
            let (value, needed) = hook_flow(s.lambda(), s.mu(), s.pi())?;
            let certificate = Certificate::Flow { value, needed };
            return Ok(Some(Decision { positive: value >= needed, method: "hook", certificate }));
        }
    }
    Ok(None)
}

fn rectangular_decision(t: &PartitionTriple) -> Result<Option<Decision>> {
    for order in [[0, 1, 2], [1, 0, 2], [2, 0, 1]] {
        let s = t.permuted(order);
        let (mu, pi) = (s.mu(), s.pi());
        if mu != pi || mu.rle().len() != 1 {
            continue;
        }
        let (Some(d), Some(r)) = (mu.first_part().to_usize(), mu.height().to_usize()) else { continue };
        let bound = BigUint::from(d).pow(2).min(BigUint::from(r).pow(2));
        if s.lambda().height() > bound {
            continue;
        }
        let design = rectangular_construction(s.lambda(), d, r)?;
        let design = reorder(design, order);
        return Ok(Some(Decision { positive: true, method: "rectangular", certificate: Certificate::Design(design) }));
    }
    Ok(None)
}

/// Layers of a design built for `t.permuted(order)`, put back in t's order.
fn reorder(d: ObstructionDesign, order: [usize; 3]) -> ObstructionDesign {
    let mut layers: [Vec<Vec<usize>>; 3] = Default::default();
    for (from, layer) in d.layers.into_iter().enumerate() {
        layers[order[from]] = layer;
    }
    ObstructionDesign { vertex_count: d.vertex_count, layers }
}

fn height_decision(t: &PartitionTriple, c: usize) -> Result<Decision> {
    check_heights(t, c)?;
    if t.size() >= BigUint::from((c + 2) * c) {
        let certificate = match const_height_construction(t, c) {
            Ok(d) => Certificate::Design(d),
            Err(e) if e.is_budget() => Certificate::Threshold { c },
            Err(e) => return Err(e),
        };
        return Ok(Decision { positive: true, method: "const-height", certificate });
    }
    let positive = const_height_decide(t, c)?;
    let mut out = by_count(t)?;
    debug_assert_eq!(out.positive, positive);
    out.method = "const-height";
    Ok(out)
}

fn simplex_decision(t: &PartitionTriple) -> Result<Decision> {
    if !is_simplex_like(t)? {
        return Err(Error::precondition(format!("{t} is not simplex-like")));
    }
    // p = t on simplex-like triples
    let p = count_p(&Marginals::of_triple(t)?)?;
    Ok(Decision { positive: !p.is_zero(), method: "simplex-like", certificate: Certificate::Count(p) })
}

/// Decides t > 0 with the requested method. `Auto` tries, in order: design
/// search on small sizes, the hook network, the rectangular and embedding
/// constructions, the constant-height threshold, and finally counting.
pub fn decide(t: &PartitionTriple, method: Method) -> Result<Decision> {
    let not_applicable = |what: &str| Error::precondition(format!("{t} is not {what}"));
    match method {
        Method::Hook => hook_decision(t)?.ok_or_else(|| not_applicable("a hook triple")),
        Method::Rectangular => rectangular_decision(t)?.ok_or_else(|| not_applicable("a rectangular triple")),
        Method::ConstHeight => {
            let c = max_height(t).to_usize().ok_or_else(|| Error::budget("constant-height", max_height(t), usize::MAX))?;
            height_decision(t, c)
        }
        Method::SimplexLike => simplex_decision(t),
        Method::Auto => {
            if t.size() <= BigUint::from(SEARCH_SIZE) {
                let found = search_design(t)?;
                let positive = found.is_some();
                let certificate = match found {
                    Some(d) => Certificate::Design(d),
                    None => Certificate::Count(BigUint::zero()),
                };
                return Ok(Decision { positive, method: "search", certificate });
            }
            if let Some(d) = hook_decision(t)? {
                return Ok(d);
            }
            if let Some(d) = rectangular_decision(t)? {
                return Ok(d);
            }
            if unembed(t).is_ok() {
                if let Ok(d) = lr_embed_construction(t) {
                    return Ok(Decision { positive: true, method: "lr-embedding", certificate: Certificate::Design(d) });
                }
            }
            if let Some(c) = max_height(t).to_usize() {
                if t.size() >= BigUint::from((c + 2) * c) {
                    return height_decision(t, c);
                }
            }
            by_count(t)
        }
    }
}

/// t̃ > 0, which by the design correspondence is t > 0.
pub fn t_tilde_positive(t: &PartitionTriple) -> Result<bool> {
    decide(t, Method::Auto).map(|d| d.positive)
}

/// Whether a certificate design is valid for the triple.
pub fn certifies(t: &PartitionTriple, d: &ObstructionDesign) -> Result<bool> {
    Ok(is_design(d)? && d.has_type(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn trip(l: &str, m: &str, q: &str) -> PartitionTriple {
        PartitionTriple::new(p(l), p(m), p(q)).unwrap()
    }

    #[test]
    fn t_tilde_examples() {
        assert!(t_tilde_positive(&trip("1,1", "2", "2")).unwrap());
        assert!(!t_tilde_positive(&trip("1,1", "1,1", "1,1")).unwrap());
        assert!(t_tilde_positive(&trip("2,2,2", "2,2,1,1", "2,2,1,1")).unwrap());
    }

    #[test]
    fn lr_embed_examples() {
        let e = oracle::murnaghan_embed(&p("2,1"), &p("2"), &p("1")).unwrap();
        let d = lr_embed_construction(&e).unwrap();
        assert_eq!(d.vertex_count, 15);
        assert!(certifies(&e, &d).unwrap());

        assert!(oracle::murnaghan_embed(&p("1"), &p("1"), &p("")).is_err());

        let e = oracle::murnaghan_embed(&p("2,2"), &p("2"), &p("1,1")).unwrap();
        let d = lr_embed_construction(&e).unwrap();
        assert_eq!(d.vertex_count, 18);
        assert!(certifies(&e, &d).unwrap());

        // μ too wide for equal thirds
        let e = oracle::murnaghan_embed(&p("1,1,1,1"), &p("3"), &p("1")).unwrap();
        assert!(certifies(&e, &lr_embed_construction(&e).unwrap()).unwrap());

        assert!(lr_embed_construction(&trip("2,1", "2,1", "2,1")).is_err());
    }

    #[test]
    fn const_height_examples() {
        assert!(const_height_decide(&trip("4,4", "4,4", "4,4"), 2).unwrap());
        assert!(!const_height_decide(&trip("1,1", "1,1", "1,1"), 2).unwrap());
        assert!(const_height_decide(&trip("2", "1,1", "1,1"), 2).unwrap());
        assert!(const_height_decide(&trip("1,1,1", "3", "3"), 2).is_err());

        for (s, c, n) in [("4,4", 2, 8), ("5,4", 2, 9), ("5,5,5", 3, 15)] {
            let t = trip(s, s, s);
            let d = const_height_construction(&t, c).unwrap();
            assert_eq!(d.vertex_count, n);
            assert!(certifies(&t, &d).unwrap(), "{t}");
        }
        assert!(const_height_construction(&trip("2,1", "2,1", "2,1"), 2).is_err());
    }

    #[test]
    fn hook_examples() {
        assert!(hook_t_positive(&p("1,1"), &p("2"), &p("2")).unwrap());
        assert!(!hook_t_positive(&p("1,1,1"), &p("1,1,1"), &p("1,1,1")).unwrap());
        assert!(hook_t_positive(&p("2,1"), &p("3"), &p("3")).unwrap());
        assert!(hook_t_positive(&p("3"), &p("1,1,1"), &p("1,1,1")).unwrap());
        assert!(hook_t_positive(&p("2,2"), &p("4"), &p("4")).is_err());
        assert!(hook_t_positive(&p("2,1"), &p("2"), &p("2")).is_err());
    }

    #[test]
    fn rectangular_examples() {
        let d = rectangular_construction(&p("3,2,1"), 3, 2).unwrap();
        assert_eq!(d.vertex_count, 6);
        assert!(certifies(&trip("3,2,1", "3,3", "3,3"), &d).unwrap());
        let d = rectangular_construction(&p("3,2,1"), 2, 3).unwrap();
        assert!(certifies(&trip("3,2,1", "2,2,2", "2,2,2"), &d).unwrap());
        assert!(rectangular_construction(&p("1,1,1,1,1"), 2, 2).is_err());
        assert!(rectangular_construction(&p("3,2"), 2, 2).is_err());
    }

    #[test]
    fn decide_methods() {
        let t = trip("1,1,1", "1,1,1", "1,1,1");
        let d = decide(&t, Method::Hook).unwrap();
        assert!(!d.positive);
        assert_eq!(d.certificate, Certificate::Flow { value: 1, needed: 3 });
        let t = trip("4,4", "4,4", "4,4");
        let d = decide(&t, Method::ConstHeight).unwrap();
        assert!(d.positive);
        let Certificate::Design(design) = d.certificate else { panic!() };
        assert!(certifies(&t, &design).unwrap());
        let t = trip("4,3,2", "3,3,3", "3,3,3");
        let d = decide(&t, Method::Rectangular).unwrap();
        let Certificate::Design(design) = d.certificate else { panic!() };
        assert!(certifies(&t, &design).unwrap());
        let t = trip("3,3,3", "4,3,2", "3,3,3");
        let Certificate::Design(design) = decide(&t, Method::Auto).unwrap().certificate else { panic!() };
        assert!(certifies(&t, &design).unwrap());
        assert!(decide(&trip("2,1,1", "2,1,1", "2,1,1"), Method::SimplexLike).unwrap().positive);
    }
}
