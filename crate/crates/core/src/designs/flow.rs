//! Integer max-flow by capacity scaling.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub source: usize,
    pub sink: usize,
    /// (from, to, capacity).
    pub edges: Vec<(usize, usize, u64)>,
}

impl FlowNetwork {
    /// Source to one node per μ-column (capacity μ^T_i), one node per
    /// π-column to the sink (capacity π^T_j), and a unit edge between every
    /// μ-column and every π-column.
    pub fn hook(mu_cols: &[usize], pi_cols: &[usize]) -> Self {
        let (a, b) = (mu_cols.len(), pi_cols.len());
        let source = 0;
        let sink = a + b + 1;
        let mut edges = Vec::with_capacity(a + b + a * b);
        for (i, &c) in mu_cols.iter().enumerate() {
            edges.push((source, 1 + i, c as u64));
        }
        for (j, &c) in pi_cols.iter().enumerate() {
            edges.push((1 + a + j, sink, c as u64));
        }
        for i in 0..a {
            for j in 0..b {
                edges.push((1 + i, 1 + a + j, 1));
            }
        }
        FlowNetwork { nodes: a + b + 2, source, sink, edges }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedNetwork(m));
        if self.source >= self.nodes || self.sink >= self.nodes {
            return bad(format!("terminal out of range for {} nodes", self.nodes));
        }
        if self.source == self.sink {
            return bad("source equals sink".into());
        }
        if let Some(e) = self.edges.iter().find(|e| e.0 >= self.nodes || e.1 >= self.nodes) {
            return bad(format!("edge {e:?} leaves the node range"));
        }
        Ok(())
    }
}

pub fn max_flow(n: &FlowNetwork) -> Result<u64> {
    n.validate()?;
    // residual arcs stored in pairs: arc 2e forward, 2e+1 backward
    let mut head = Vec::with_capacity(2 * n.edges.len());
    let mut cap = Vec::with_capacity(2 * n.edges.len());
    let mut adj = vec![Vec::new(); n.nodes];
    for &(u, v, c) in &n.edges {
        adj[u].push(head.len());
        head.push(v);
        cap.push(c);
        adj[v].push(head.len());
        head.push(u);
        cap.push(0);
    }
    let top = n.edges.iter().map(|e| e.2).max().unwrap_or(0);
    if top == 0 {
        return Ok(0);
    }
    let mut delta = 1u64 << (63 - top.leading_zeros());
    let mut flow = 0u64;
    let mut parent = vec![usize::MAX; n.nodes];
    while delta > 0 {
        loop {
            parent.fill(usize::MAX);
            let mut queue = VecDeque::from([n.source]);
            let mut seen = vec![false; n.nodes];
            seen[n.source] = true;
            while let Some(u) = queue.pop_front() {
                for &a in &adj[u] {
                    let v = head[a];
                    if !seen[v] && cap[a] >= delta {
                        seen[v] = true;
                        parent[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[n.sink] {
                break;
            }
            let mut push = u64::MAX;
            let mut v = n.sink;
            while v != n.source {
                let a = parent[v];
                push = push.min(cap[a]);
                v = head[a ^ 1];
            }
            let mut v = n.sink;
            while v != n.source {
                let a = parent[v];
                cap[a] -= push;
                cap[a ^ 1] += push;
                v = head[a ^ 1];
            }
            flow += push;
        }
        delta /= 2;
    }
    Ok(flow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let parallel = FlowNetwork { nodes: 4, source: 0, sink: 3, edges: vec![(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)] };
        assert_eq!(max_flow(&parallel).unwrap(), 2);
        let single = FlowNetwork { nodes: 2, source: 0, sink: 1, edges: vec![(0, 1, 3)] };
        assert_eq!(max_flow(&single).unwrap(), 3);
        assert_eq!(max_flow(&FlowNetwork::hook(&[3], &[3])).unwrap(), 1);
    }

    #[test]
    fn needs_reverse_arcs() {
        // the greedy path 0-1-2-3 blocks both others unless undone
        let n = FlowNetwork {
            nodes: 4,
            source: 0,
            sink: 3,
            edges: vec![(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        };
        assert_eq!(max_flow(&n).unwrap(), 2);
        let big = FlowNetwork { nodes: 3, source: 0, sink: 2, edges: vec![(0, 1, 1 << 40), (1, 2, (1 << 40) - 5)] };
        assert_eq!(max_flow(&big).unwrap(), (1 << 40) - 5);
    }

    #[test]
    fn malformed() {
        let n = FlowNetwork { nodes: 2, source: 0, sink: 0, edges: vec![] };
        assert!(matches!(max_flow(&n), Err(Error::MalformedNetwork(_))));
        let n = FlowNetwork { nodes: 2, source: 0, sink: 1, edges: vec![(0, 5, 1)] };
        assert!(matches!(max_flow(&n), Err(Error::MalformedNetwork(_))));
    }
}
