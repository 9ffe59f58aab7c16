//! Obstruction designs: three-layer hypergraphs whose existence is
//! equivalent to t > 0, and the positivity deciders built on them.
//!
//! Layer i of a design of type (λ, μ, π) has one hyperedge per column of
//! the i-th partition, of that column's length. A predesign becomes a design
//! when no two vertices lie in the same hyperedge in all three layers.

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::PartitionTriple;
use crate::pointset::{count_t, Marginals, PointSet};

mod construct;
mod flow;

pub use construct::{
    const_height_construction, const_height_decide, hook_t_positive, lr_embed_construction,
    rectangular_construction, t_tilde_positive, certifies, decide, Certificate, Decision, Method,
};
pub use flow::{max_flow, FlowNetwork};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionDesign {
    pub vertex_count: usize,
    pub layers: [Vec<Vec<usize>>; 3],
}

impl ObstructionDesign {
    /// Per vertex, the index of its hyperedge in each layer. Fails unless
    /// every layer partitions the vertex set.
    pub fn membership(&self) -> Result<Vec<[usize; 3]>> {
        let mut of = vec![[usize::MAX; 3]; self.vertex_count];
        for (l, layer) in self.layers.iter().enumerate() {
            for (e, edge) in layer.iter().enumerate() {
                if edge.is_empty() {
                    return Err(Error::MalformedDesign(format!("empty hyperedge in layer {l}")));
                }
                for &v in edge {
                    let slot = of
                        .get_mut(v)
                        .ok_or_else(|| Error::MalformedDesign(format!("vertex {v} out of range in layer {l}")))?;
                    if slot[l] != usize::MAX {
                        return Err(Error::MalformedDesign(format!("vertex {v} twice in layer {l}")));
                    }
                    slot[l] = e;
                }
            }
            if let Some(v) = of.iter().position(|m| m[l] == usize::MAX) {
                return Err(Error::MalformedDesign(format!("vertex {v} missing from layer {l}")));
            }
        }
        Ok(of)
    }

    /// Hyperedge sizes of a layer, largest first.
    pub fn layer_sizes(&self, layer: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.layers[layer].iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Whether the layer sizes are the column lengths of the triple.
    pub fn has_type(&self, t: &PartitionTriple) -> Result<bool> {
        let cols = t.dense_transposes()?;
        Ok((0..3).all(|l| self.layer_sizes(l) == cols[l]))
    }

    /// Numbers each layer's hyperedges by decreasing size and reads every
    /// vertex as the triple of its hyperedge numbers.
    pub fn to_pointset(&self) -> Result<PointSet> {
        let of = self.membership()?;
        let mut rank = [Vec::new(), Vec::new(), Vec::new()];
        for (l, layer) in self.layers.iter().enumerate() {
            let mut order: Vec<usize> = (0..layer.len()).collect();
            order.sort_by_key(|&e| std::cmp::Reverse(layer[e].len()));
            rank[l] = vec![0; layer.len()];
            for (pos, e) in order.into_iter().enumerate() {
                rank[l][e] = pos;
            }
        }
        Ok(of.iter().map(|m| [rank[0][m[0]], rank[1][m[1]], rank[2][m[2]]]).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.vertex_count, "layers": self.layers })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("design must be {vertices, layers: [l0, l1, l2]}".into());
        let vertex_count = v.get("vertices").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let layers: Vec<Vec<Vec<usize>>> =
            serde_json::from_value(v.get("layers").cloned().ok_or_else(bad)?).map_err(|_| bad())?;
        let layers: [Vec<Vec<usize>>; 3] = layers.try_into().map_err(|_| bad())?;
        Ok(ObstructionDesign { vertex_count, layers })
    }
}

/// Vertices are the points; the slices along each axis are the hyperedges.
pub fn design_from_pointset(p: &PointSet) -> ObstructionDesign {
    let points: Vec<_> = p.iter().copied().collect();
    let mut layers: [Vec<Vec<usize>>; 3] = Default::default();
    for (axis, layer) in layers.iter_mut().enumerate() {
        let width = points.iter().map(|pt| pt[axis] + 1).max().unwrap_or(0);
        let mut slices = vec![Vec::new(); width];
        for (v, pt) in points.iter().enumerate() {
            slices[pt[axis]].push(v);
        }
        *layer = slices.into_iter().filter(|s| !s.is_empty()).collect();
    }
    ObstructionDesign { vertex_count: points.len(), layers }
}

/// The design property. Errors if a layer does not partition the vertices.
pub fn is_design(d: &ObstructionDesign) -> Result<bool> {
    let mut of = d.membership()?;
    of.sort_unstable();
    Ok(of.windows(2).all(|w| w[0] != w[1]))
}

/// Largest vertex count [`search_design`] accepts.
pub const SEARCH_LIMIT: usize = 10;

/// Exhaustive search for a design of the given type, independent of point
/// sets: layer 0 is fixed as consecutive blocks, layer 1 runs over all set
/// partitions with the required block sizes, and layer 2 is placed vertex by
/// vertex avoiding any block that already holds a vertex with the same
/// layer-0 and layer-1 hyperedges.
pub fn search_design(t: &PartitionTriple) -> Result<Option<ObstructionDesign>> {
    let n = t.small_size("design search", SEARCH_LIMIT)?;
    let [c0, c1, c2] = t.dense_transposes()?;
    let mut e0 = vec![0usize; n];
    let mut at = 0;
    for (e, &len) in c0.iter().enumerate() {
        e0[at..at + len].fill(e);
        at += len;
    }
    let mut e1 = vec![usize::MAX; n];
    let mut fill1 = vec![0usize; c1.len()];
    let mut e2 = vec![usize::MAX; n];
    let mut fill2 = vec![0usize; c2.len()];
    let found = assign(0, &c1, &mut fill1, &mut e1, &mut |e1| {
        e2.fill(usize::MAX);
        fill2.fill(0);
        assign_third(0, &c2, &mut fill2, &e0, e1, &mut e2)
    });
    if !found {
        return Ok(None);
    }
    let e2_final = e2;
    let mut layers: [Vec<Vec<usize>>; 3] = [vec![Vec::new(); c0.len()], vec![Vec::new(); c1.len()], vec![Vec::new(); c2.len()]];
    for v in 0..n {
        layers[0][e0[v]].push(v);
        layers[1][e1[v]].push(v);
        layers[2][e2_final[v]].push(v);
    }
    Ok(Some(ObstructionDesign { vertex_count: n, layers }))
}

/// Set partitions of 0..n into blocks of sizes `caps` (non-increasing).
/// Among unopened blocks of equal size only the first may be opened, so
/// each set partition is produced once. Stops when `done` returns true.
fn assign(
    v: usize,
    caps: &[usize],
    fill: &mut [usize],
    e: &mut Vec<usize>,
    done: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if v == e.len() {
        return done(e);
    }
    for b in 0..caps.len() {
        if fill[b] == caps[b] {
            continue;
        }
        if fill[b] == 0 && b > 0 && caps[b - 1] == caps[b] && fill[b - 1] == 0 {
            continue;
        }
        fill[b] += 1;
        e[v] = b;
        if assign(v + 1, caps, fill, e, done) {
            return true;
        }
        fill[b] -= 1;
    }
    e[v] = usize::MAX;
    false
}

fn assign_third(v: usize, caps: &[usize], fill: &mut [usize], e0: &[usize], e1: &[usize], e2: &mut [usize]) -> bool {
    if v == e2.len() {
        return true;
    }
    for b in 0..caps.len() {
        if fill[b] == caps[b] || (fill[b] == 0 && b > 0 && caps[b - 1] == caps[b] && fill[b - 1] == 0) {
            continue;
        }
        let clash = (0..v).any(|w| e2[w] == b && e0[w] == e0[v] && e1[w] == e1[v]);
        if clash {
            continue;
        }
        fill[b] += 1;
        e2[v] = b;
        if assign_third(v + 1, caps, fill, e0, e1, e2) {
            return true;
        }
        fill[b] -= 1;
        e2[v] = usize::MAX;
    }
    false
}

/// t > 0 by counting; used as the fallback decider.
pub(crate) fn t_positive_by_count(t: &PartitionTriple) -> Result<bool> {
    let m = Marginals::of_triple(t)?;
    Ok(count_t(&m)?.to_u8().is_none_or(|v| v > 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::simplex;

    #[test]
    fn from_pointset_examples() {
        let p: PointSet = [[0, 0, 0], [1, 0, 0]].into_iter().collect();
        let d = design_from_pointset(&p);
        assert_eq!(d.vertex_count, 2);
        assert_eq!(d.layers[0], vec![vec![0], vec![1]]);
        assert_eq!(d.layers[1], vec![vec![0, 1]]);
        assert_eq!(d.layers[2], vec![vec![0, 1]]);
        assert!(is_design(&d).unwrap());

        let d = design_from_pointset(&simplex(2));
        assert_eq!(d.vertex_count, 4);
        let t = PartitionTriple::from_parts(&[2, 1, 1], &[2, 1, 1], &[2, 1, 1]).unwrap();
        assert!(d.has_type(&t).unwrap());
        assert!(is_design(&d).unwrap());

        let d = design_from_pointset(&PointSet::new());
        assert_eq!(d.vertex_count, 0);
        assert!(is_design(&d).unwrap());
    }

    #[test]
    fn design_property() {
        let all = ObstructionDesign { vertex_count: 2, layers: [vec![vec![0, 1]], vec![vec![0, 1]], vec![vec![0, 1]]] };
        assert!(!is_design(&all).unwrap());
        let one = ObstructionDesign { vertex_count: 1, layers: [vec![vec![0]], vec![vec![0]], vec![vec![0]]] };
        assert!(is_design(&one).unwrap());
        let broken = ObstructionDesign { vertex_count: 2, layers: [vec![vec![0]], vec![vec![0, 1]], vec![vec![0, 1]]] };
        assert!(matches!(is_design(&broken), Err(Error::MalformedDesign(_))));
    }

    #[test]
    fn search_examples() {
        let t = |l: &[u64], m: &[u64], p: &[u64]| PartitionTriple::from_parts(l, m, p).unwrap();
        let found = search_design(&t(&[1, 1], &[2], &[2])).unwrap().unwrap();
        assert!(is_design(&found).unwrap());
        assert!(search_design(&t(&[1, 1], &[1, 1], &[1, 1])).unwrap().is_none());
        let trip = t(&[2, 2, 2], &[2, 2, 1, 1], &[2, 2, 1, 1]);
        let found = search_design(&trip).unwrap().unwrap();
        assert!(found.has_type(&trip).unwrap());
        let back = found.to_pointset().unwrap();
        assert_eq!(crate::pointset::marginals_of(&back), Marginals::of_triple(&trip).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = design_from_pointset(&simplex(3));
        assert_eq!(ObstructionDesign::from_json(&d.to_json()).unwrap(), d);
    }
}
