//! The expectation semiring over `ℝ≥0 ⊕̃ ℝᵈ` and its use for computing
//! totals and expectations of additive path features over weighted DAGs.
//!
//! An edge with probability `p` and feature vector `v` is lifted to the
//! weight `(p, p·v)`. The semiring product along a path then carries
//! `(Πp, Πp · Σv)`, and the sum over all source-to-sink paths carries the
//! total mass together with the unnormalized expectation.

use std::collections::HashMap;

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for comparing weights.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance for comparing weights.
pub const ABSOLUTE_TOLERANCE: f64 = 1e-12;
/// Path-count limit of [`brute_force_total`].
pub const DEFAULT_PATH_LIMIT: usize = 20;

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABSOLUTE_TOLERANCE.max(RELATIVE_TOLERANCE * a.abs().max(b.abs()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericWeight {
    pub p: f64,
    pub r: Vec<f64>,
}

impl NumericWeight {
    pub fn new(p: f64, r: Vec<f64>) -> Self {
        NumericWeight { p, r }
    }

    pub fn zero(dim: usize) -> Self {
        NumericWeight { p: 0.0, r: vec![0.0; dim] }
    }

    pub fn one(dim: usize) -> Self {
        NumericWeight { p: 1.0, r: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// Componentwise equality within the module tolerances.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && approx_eq(self.p, other.p) && self.r.iter().zip(&other.r).all(|(a, b)| approx_eq(*a, *b))
    }
}

fn same_dim(a: &NumericWeight, b: &NumericWeight) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() })
    }
}

pub fn wadd(a: &NumericWeight, b: &NumericWeight) -> Result<NumericWeight> {
    same_dim(a, b)?;
    Ok(NumericWeight { p: a.p + b.p, r: a.r.iter().zip(&b.r).map(|(x, y)| x + y).collect() })
}

/// `(p₁, r₁)·(p₂, r₂) = (p₁p₂, p₁r₂ + p₂r₁)`
pub fn wmul(a: &NumericWeight, b: &NumericWeight) -> Result<NumericWeight> {
    same_dim(a, b)?;
    Ok(NumericWeight { p: a.p * b.p, r: a.r.iter().zip(&b.r).map(|(x, y)| a.p * y + b.p * x).collect() })
}

/// `(p, v) ↦ (p, p·v)`
pub fn lift_edge(p: f64, v: &[f64]) -> NumericWeight {
    NumericWeight { p, r: v.iter().map(|x| p * x).collect() }
}

/// Edge as ingested: probability and raw feature vector, never pre-lifted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub p: f64,
    #[serde(default)]
    pub v: Vec<f64>,
}

/// The graph JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub d: usize,
    pub nodes: Vec<String>,
    pub source: String,
    pub sink: String,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq)]
struct Edge {
    from: usize,
    to: usize,
    p: f64,
    v: Vec<f64>,
}

/// A validated acyclic graph with its topological order fixed at load time.
#[derive(Debug, Clone)]
pub struct WeightedDag {
    dim: usize,
    nodes: Vec<String>,
    edges: Vec<Edge>,
    source: usize,
    sink: usize,
    order: Vec<usize>,
}

impl WeightedDag {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, name) in spec.nodes.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node `{name}`")));
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::InvalidGraph(format!("unknown node `{name}`")))
        };
        let source = lookup(&spec.source)?;
        let sink = lookup(&spec.sink)?;
        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            if !(e.p >= 0.0 && e.p.is_finite()) {
                return Err(Error::InvalidGraph(format!("edge {}->{} has invalid mass {}", e.from, e.to, e.p)));
            }
            if e.v.len() != spec.d {
                return Err(Error::DimensionMismatch { left: spec.d, right: e.v.len() });
            }
            let (from, to) = (lookup(&e.from)?, lookup(&e.to)?);
            if to == source {
                return Err(Error::InvalidGraph("source has an incoming edge".into()));
            }
            if from == sink {
                return Err(Error::InvalidGraph("sink has an outgoing edge".into()));
            }
            edges.push(Edge { from, to, p: e.p, v: e.v.clone() });
        }

        let mut graph = DiGraph::<(), ()>::new();
        let ids: Vec<_> = spec.nodes.iter().map(|_| graph.add_node(())).collect();
        for e in &edges {
            graph.add_edge(ids[e.from], ids[e.to], ());
        }
        let order = toposort(&graph, None)
            .map_err(|cycle| Error::CycleDetected(spec.nodes[cycle.node_id().index()].clone()))?
            .into_iter()
            .map(|n| n.index())
            .collect();
        Ok(WeightedDag { dim: spec.d, nodes: spec.nodes.clone(), edges, source, sink, order })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            d: self.dim,
            nodes: self.nodes.clone(),
            source: self.nodes[self.source].clone(),
            sink: self.nodes[self.sink].clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec { from: self.nodes[e.from].clone(), to: self.nodes[e.to].clone(), p: e.p, v: e.v.clone() })
                .collect(),
        }
    }

    /// Number of source-to-sink paths.
    pub fn path_count(&self) -> u128 {
        let mut count = vec![0u128; self.nodes.len()];
        count[self.source] = 1;
        for &u in &self.order {
            for e in self.edges.iter().filter(|e| e.from == u) {
                count[e.to] += count[u];
            }
        }
        count[self.sink]
    }

    /// Same graph with every edge mass multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.p *= factor;
        }
        out
    }

    /// Lengths of all source-to-sink paths (for small graphs).
    pub fn path_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(self.source, &mut Vec::new(), &mut |path| out.push(path.len()));
        out
    }

    fn walk<'a>(&'a self, node: usize, path: &mut Vec<&'a Edge>, visit: &mut dyn FnMut(&[&'a Edge])) {
        if node == self.sink {
            visit(path);
            return;
        }
        for e in self.edges.iter().filter(|e| e.from == node) {
            path.push(e);
            self.walk(e.to, path, visit);
            path.pop();
        }
    }
}

/// Semiring sum over source-to-sink paths of the product of lifted edge
/// weights, by one pass in topological order. A graph without such paths
/// yields zero.
pub fn forward_total(g: &WeightedDag) -> Result<NumericWeight> {
    let mut alpha = vec![NumericWeight::zero(g.dim); g.nodes.len()];
    alpha[g.source] = NumericWeight::one(g.dim);
    for &u in &g.order {
        if u == g.sink {
            continue;
        }
        for e in g.edges.iter().filter(|e| e.from == u) {
            let step = wmul(&alpha[u], &lift_edge(e.p, &e.v))?;
            alpha[e.to] = wadd(&alpha[e.to], &step)?;
        }
    }
    Ok(std::mem::take(&mut alpha[g.sink]))
}

impl Default for NumericWeight {
    fn default() -> Self {
        NumericWeight::zero(0)
    }
}

/// Expected value of the additive path feature under `p(path) / Z`.
pub fn expectation(g: &WeightedDag) -> Result<Vec<f64>> {
    let total = forward_total(g)?;
    if total.p <= ABSOLUTE_TOLERANCE {
        return Err(Error::ZeroMass(total.p));
    }
    Ok(total.r.iter().map(|x| x / total.p).collect())
}

/// Explicit path enumeration: `Σ_path (Πp, Πp · Σv)`.
pub fn brute_force_total(g: &WeightedDag) -> Result<NumericWeight> {
    brute_force_total_with_limit(g, DEFAULT_PATH_LIMIT)
}

pub fn brute_force_total_with_limit(g: &WeightedDag, limit: usize) -> Result<NumericWeight> {
    if g.path_count() > limit as u128 {
        return Err(Error::TooManyPaths { limit });
    }
    let mut mass = 0.0;
    let mut numerator = vec![0.0; g.dim];
    g.walk(g.source, &mut Vec::new(), &mut |path| {
        let prob: f64 = path.iter().map(|e| e.p).product();
        for (k, slot) in numerator.iter_mut().enumerate() {
            let feature: f64 = path.iter().map(|e| e.v[k]).sum();
            *slot += prob * feature;
        }
        mass += prob;
    });
    Ok(NumericWeight { p: mass, r: numerator })
}

/// Parameters for [`random_dag`].
#[derive(Debug, Clone, Copy)]
pub struct RandomDagConfig {
    pub max_nodes: usize,
    pub max_paths: usize,
    pub max_dim: usize,
}

impl Default for RandomDagConfig {
    fn default() -> Self {
        RandomDagConfig { max_nodes: 8, max_paths: 20, max_dim: 3 }
    }
}

/// A random DAG on nodes `n0..n{k-1}` (source `n0`, sink `n{k-1}`) with at
/// least one and at most `max_paths` source-to-sink paths.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, config: &RandomDagConfig) -> WeightedDag {
    loop {
        let k = rng.gen_range(2..=config.max_nodes.max(2));
        let d = rng.gen_range(0..=config.max_dim);
        let nodes: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
        let density = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for i in 0..k - 1 {
            for j in (i + 1)..k {
                if rng.gen_bool(density) {
                    edges.push(EdgeSpec {
                        from: nodes[i].clone(),
                        to: nodes[j].clone(),
                        p: rng.gen_range(0.0..1.0),
                        v: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                    });
                }
            }
        }
        let spec = GraphSpec { d, source: nodes[0].clone(), sink: nodes[k - 1].clone(), nodes, edges };
        let g = WeightedDag::from_spec(&spec).expect("forward edges form a valid DAG");
        let paths = g.path_count();
        if paths >= 1 && paths <= config.max_paths as u128 {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(from: &str, to: &str, p: f64, v: &[f64]) -> EdgeSpec {
        EdgeSpec { from: from.into(), to: to.into(), p, v: v.to_vec() }
    }

    fn graph(d: usize, nodes: &[&str], edges: Vec<EdgeSpec>) -> WeightedDag {
        WeightedDag::from_spec(&GraphSpec {
            d,
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            source: nodes[0].into(),
            sink: nodes[nodes.len() - 1].into(),
            edges,
        })
        .unwrap()
    }

    fn parallel() -> WeightedDag {
        graph(1, &["s", "t"], vec![edge("s", "t", 0.3, &[1.0]), edge("s", "t", 0.7, &[2.0])])
    }

    fn chain() -> WeightedDag {
        graph(1, &["s", "m", "t"], vec![edge("s", "m", 0.5, &[1.0]), edge("m", "t", 0.4, &[3.0])])
    }

    #[test]
    fn addition() {
        let sum = wadd(&NumericWeight::new(0.3, vec![0.3]), &NumericWeight::new(0.7, vec![1.4])).unwrap();
        assert!(sum.approx_eq(&NumericWeight::new(1.0, vec![1.7])));
        let a = NumericWeight::new(0.25, vec![1.0, -2.0]);
        assert_eq!(wadd(&a, &NumericWeight::zero(2)).unwrap(), a);
        assert!(matches!(wadd(&a, &NumericWeight::zero(1)), Err(Error::DimensionMismatch { left: 2, right: 1 })));
    }

    #[test]
    fn multiplication() {
        let prod = wmul(&NumericWeight::new(0.5, vec![0.5]), &NumericWeight::new(0.4, vec![1.2])).unwrap();
        // 0.5·1.2 + 0.4·0.5 = 0.8
        assert!(prod.approx_eq(&NumericWeight::new(0.2, vec![0.8])));
        let a = NumericWeight::new(0.25, vec![1.0, -2.0]);
        assert_eq!(wmul(&a, &NumericWeight::one(2)).unwrap(), a);
        let (v1, v2) = ([1.5, -0.5], [0.25, 2.0]);
        let lifted = wmul(&lift_edge(0.6, &v1), &lift_edge(0.3, &v2)).unwrap();
        let direct = lift_edge(0.18, &[v1[0] + v2[0], v1[1] + v2[1]]);
        assert!(lifted.approx_eq(&direct));
    }

    #[test]
    fn lifting() {
        assert!(lift_edge(0.3, &[1.0]).approx_eq(&NumericWeight::new(0.3, vec![0.3])));
        assert_eq!(lift_edge(0.0, &[4.0, -1.0]), NumericWeight::zero(2));
        assert_eq!(lift_edge(1.0, &[0.0, 0.0]), NumericWeight::one(2));
    }

    #[test]
    fn fixed_totals() {
        assert!(forward_total(&parallel()).unwrap().approx_eq(&NumericWeight::new(1.0, vec![1.7])));
        assert!(forward_total(&chain()).unwrap().approx_eq(&NumericWeight::new(0.2, vec![0.8])));
        assert!(brute_force_total(&parallel()).unwrap().approx_eq(&NumericWeight::new(1.0, vec![1.7])));
        assert!(brute_force_total(&chain()).unwrap().approx_eq(&NumericWeight::new(0.2, vec![0.8])));
    }

    #[test]
    fn zero_dimension_gives_plain_path_sum() {
        let g = graph(0, &["s", "a", "t"], vec![edge("s", "a", 0.5, &[]), edge("a", "t", 0.5, &[]), edge("s", "t", 0.1, &[])]);
        let total = forward_total(&g).unwrap();
        assert!(approx_eq(total.p, 0.35));
        assert!(total.r.is_empty());
    }

    #[test]
    fn expectations() {
        let e = expectation(&parallel()).unwrap();
        assert!(approx_eq(e[0], 1.7));
        let single = graph(1, &["s", "m", "t"], vec![edge("s", "m", 0.01, &[1.0]), edge("m", "t", 0.3, &[3.0])]);
        assert!(approx_eq(expectation(&single).unwrap()[0], 4.0));
        let dead = graph(1, &["s", "t"], vec![edge("s", "t", 0.0, &[1.0])]);
        assert!(matches!(expectation(&dead), Err(Error::ZeroMass(_))));
    }

    #[test]
    fn no_path_is_zero() {
        let g = graph(1, &["s", "x", "t"], vec![edge("s", "x", 0.5, &[1.0])]);
        assert_eq!(forward_total(&g).unwrap(), NumericWeight::zero(1));
    }

    #[test]
    fn ingestion_errors() {
        let spec = |edges| GraphSpec { d: 1, nodes: vec!["s".into(), "a".into(), "b".into(), "t".into()], source: "s".into(), sink: "t".into(), edges };
        let cyclic = spec(vec![edge("s", "a", 0.5, &[1.0]), edge("a", "b", 0.5, &[1.0]), edge("b", "a", 0.5, &[1.0]), edge("b", "t", 0.5, &[1.0])]);
        assert!(matches!(WeightedDag::from_spec(&cyclic), Err(Error::CycleDetected(_))));
        assert!(matches!(WeightedDag::from_spec(&spec(vec![edge("s", "t", -0.1, &[1.0])])), Err(Error::InvalidGraph(_))));
        assert!(matches!(WeightedDag::from_spec(&spec(vec![edge("a", "s", 0.1, &[1.0])])), Err(Error::InvalidGraph(_))));
        assert!(matches!(WeightedDag::from_spec(&spec(vec![edge("t", "a", 0.1, &[1.0])])), Err(Error::InvalidGraph(_))));
        assert!(matches!(WeightedDag::from_spec(&spec(vec![edge("s", "t", 0.1, &[1.0, 2.0])])), Err(Error::DimensionMismatch { .. })));
        let lifted = r#"{"d":1,"nodes":["s","t"],"source":"s","sink":"t","edges":[{"from":"s","to":"t","p":0.5,"v":[1.0],"r":[0.5]}]}"#;
        assert!(serde_json::from_str::<GraphSpec>(lifted).is_err());
    }

    #[test]
    fn diamond_agrees_with_oracle() {
        let g = graph(
            2,
            &["s", "a", "b", "m", "c", "d", "t"],
            vec![
                edge("s", "a", 0.6, &[1.0, 0.0]),
                edge("s", "b", 0.4, &[0.0, 1.0]),
                edge("a", "m", 0.9, &[0.5, 0.5]),
                edge("b", "m", 0.8, &[2.0, -1.0]),
                edge("m", "c", 0.3, &[1.0, 1.0]),
                edge("m", "d", 0.7, &[-1.0, 3.0]),
                edge("c", "t", 1.0, &[0.0, 0.0]),
                edge("d", "t", 0.5, &[4.0, 0.0]),
            ],
        );
        assert_eq!(g.path_count(), 4);
        assert!(forward_total(&g).unwrap().approx_eq(&brute_force_total(&g).unwrap()));
    }

    #[test]
    fn too_many_paths() {
        // 3 stacked diamonds: 8 paths
        let mut edges = Vec::new();
        let nodes = ["n0", "a0", "b0", "n1", "a1", "b1", "n2", "a2", "b2", "n3"];
        for k in 0..3 {
            let (from, a, b, to) = (nodes[3 * k], nodes[3 * k + 1], nodes[3 * k + 2], nodes[3 * k + 3]);
            edges.extend([edge(from, a, 0.5, &[1.0]), edge(from, b, 0.5, &[2.0]), edge(a, to, 1.0, &[0.0]), edge(b, to, 1.0, &[0.0])]);
        }
        let g = graph(1, &nodes, edges);
        assert_eq!(g.path_count(), 8);
        assert!(matches!(brute_force_total_with_limit(&g, 7), Err(Error::TooManyPaths { limit: 7 })));
        assert!(brute_force_total(&g).unwrap().approx_eq(&forward_total(&g).unwrap()));
    }

    #[test]
    fn spec_round_trip() {
        let g = chain();
        let again = WeightedDag::from_spec(&g.to_spec()).unwrap();
        assert_eq!(again.to_spec(), g.to_spec());
    }
}
