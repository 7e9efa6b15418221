//! Exact solver for a single transitive edge part.
//!
//! For an acyclic transitive part the maximum-weight independent set is a
//! maximum-weight antichain. It is read off a minimum flow with lower bounds:
//! every vertex `v` becomes an arc `v⁺ → v⁻` that must carry at least `c_v`,
//! every edge `(x, y)` becomes `x⁻ → y⁺`, and the source/sink attach to the
//! part's sources/sinks. All arithmetic is exact.
//!
//! The same part also defines the polytope of nonnegative vectors whose sum
//! along every source-to-sink path is at most 1. Its vertices are indicators
//! of independent sets, so the flow solver is a linear optimization oracle
//! for it, and a longest-path pass is a separation oracle.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::order::Relation;
use crate::rational::Rational;
use crate::specgraph::build_special_graph;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[inline]
pub fn plus(v: usize) -> usize {
    2 + 2 * v
}

#[inline]
pub fn minus(v: usize) -> usize {
    3 + 2 * v
}

/// Arc with a lower bound and unbounded capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    vertices: usize,
    arcs: Vec<Arc>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

impl FlowNetwork {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn node_count(&self) -> usize {
        2 * self.vertices + 2
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Vertices without incoming edges in the part.
    pub fn min_vertices(&self) -> &[usize] {
        &self.sources
    }

    /// Vertices without outgoing edges in the part.
    pub fn max_vertices(&self) -> &[usize] {
        &self.sinks
    }

    pub fn find_arc(&self, from: usize, to: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.from == from && a.to == to)
    }

    /// Every arc lies on an s→t path and the network has no directed cycle.
    pub fn check_structure(&self) -> bool {
        let nodes = self.node_count();
        let mut rel = Relation::empty(nodes);
        for a in &self.arcs {
            rel.insert(a.from, a.to);
        }
        if rel.topological_order().is_none() {
            return false;
        }
        let from_source = reach(nodes, &self.arcs, SOURCE, false);
        let to_sink = reach(nodes, &self.arcs, SINK, true);
        self.arcs
            .iter()
            .all(|a| from_source[a.from] && to_sink[a.to])
    }
}

fn reach(nodes: usize, arcs: &[Arc], start: usize, backwards: bool) -> Vec<bool> {
    let mut seen = vec![false; nodes];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for a in arcs {
            let (tail, head) = if backwards {
                (a.to, a.from)
            } else {
                (a.from, a.to)
            };
            if tail == u && !seen[head] {
                seen[head] = true;
                queue.push_back(head);
            }
        }
    }
    seen
}

/// A validated acyclic transitive edge part with cached structure.
#[derive(Clone, Debug)]
pub struct PartOracle {
    part: Relation,
    topo: Vec<usize>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

impl PartOracle {
    pub fn new(part: &Relation) -> Result<Self> {
        let n = part.len();
        if let Some(v) = (0..n).find(|&v| part.contains(v, v)) {
            return Err(Error::SelfLoop(v));
        }
        let topo = part.topological_order().ok_or_else(|| {
            let mut c = part.clone();
            c.close();
            Error::Cyclic((0..n).find(|&v| c.contains(v, v)).unwrap_or(0))
        })?;
        part.check_transitive()?;
        let sources = (0..n)
            .filter(|&v| part.predecessors(v).next().is_none())
            .collect();
        let sinks = (0..n)
            .filter(|&v| part.successors(v).next().is_none())
            .collect();
        Ok(PartOracle {
            part: part.clone(),
            topo,
            sources,
            sinks,
        })
    }

    pub fn len(&self) -> usize {
        self.part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part.is_empty()
    }

    pub fn part(&self) -> &Relation {
        &self.part
    }

    pub fn network(&self, weights: &[Rational]) -> Result<FlowNetwork> {
        let n = self.len();
        check_len(n, weights.len())?;
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(v));
        }
        let mut arcs: Vec<Arc> = weights
            .iter()
            .enumerate()
            .map(|(v, c)| Arc {
                from: plus(v),
                to: minus(v),
                lower: c.clone(),
            })
            .collect();
        let zero = Rational::zero();
        arcs.extend(self.part.pairs().map(|(x, y)| Arc {
            from: minus(x),
            to: plus(y),
            lower: zero.clone(),
        }));
        arcs.extend(self.sources.iter().map(|&a| Arc {
            from: SOURCE,
            to: plus(a),
            lower: zero.clone(),
        }));
        arcs.extend(self.sinks.iter().map(|&b| Arc {
            from: minus(b),
            to: SINK,
            lower: zero.clone(),
        }));
        Ok(FlowNetwork {
            vertices: n,
            arcs,
            sources: self.sources.clone(),
            sinks: self.sinks.clone(),
        })
    }

    /// Maximum-weight independent set for nonnegative weights.
    pub fn max_wcut_is(&self, weights: &[Rational]) -> Result<CutResult> {
        let net = self.network(weights)?;
        let flow = min_flow(&net);
        let set: Vec<bool> = (0..self.len())
            .map(|r| flow.source_side[plus(r)] && !flow.source_side[minus(r)])
            .collect();
        let weight = set
            .iter()
            .zip(weights)
            .filter(|(s, _)| **s)
            .fold(Rational::zero(), |acc, (_, w)| acc + w);
        assert_eq!(weight, flow.value, "cut weight must equal the minimum flow");
        Ok(CutResult {
            value: flow.value,
            set,
        })
    }

    /// Boolean maximizer of `Σ c_v y_v` over the path polytope. Negative
    /// coordinates are clamped to zero first.
    pub fn linear_oracle(&self, c: &[Rational]) -> Result<Vec<bool>> {
        check_len(self.len(), c.len())?;
        let clamped: Vec<Rational> = c
            .iter()
            .map(|v| {
                if v.is_negative() {
                    Rational::zero()
                } else {
                    v.clone()
                }
            })
            .collect();
        Ok(self.max_wcut_is(&clamped)?.set)
    }

    /// Heaviest vertex-weighted path, by dynamic programming in topological order.
    pub fn longest_path(&self, y: &[Rational]) -> Result<(Rational, Vec<usize>)> {
        let n = self.len();
        check_len(n, y.len())?;
        if n == 0 {
            return Ok((Rational::zero(), vec![]));
        }
        let mut best: Vec<Rational> = vec![Rational::zero(); n];
        let mut prev = vec![usize::MAX; n];
        for &v in &self.topo {
            let mut acc = Rational::zero();
            for u in self.part.predecessors(v) {
                if best[u] > acc {
                    acc = best[u].clone();
                    prev[v] = u;
                }
            }
            best[v] = acc + &y[v];
        }
        let mut end = self.topo[0];
        for &v in &self.topo {
            if best[v] > best[end] {
                end = v;
            }
        }
        let mut path = vec![end];
        while prev[*path.last().unwrap()] != usize::MAX {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        Ok((best[end].clone(), path))
    }

    pub fn membership(&self, y: &[Rational]) -> Result<Membership> {
        check_len(self.len(), y.len())?;
        if let Some(v) = y.iter().position(|c| c.is_negative()) {
            return Ok(Membership::Negative(v));
        }
        let (length, vertices) = self.longest_path(y)?;
        if length > Rational::from_integer(1.into()) {
            Ok(Membership::Path { vertices, length })
        } else {
            Ok(Membership::Inside)
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: Rational,
    pub set: Vec<bool>,
}

impl CutResult {
    pub fn members(&self) -> Vec<usize> {
        self.set
            .iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(v, _)| v)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    /// Coordinate violating nonnegativity.
    Negative(usize),
    /// Path whose vertex sum exceeds 1.
    Path {
        vertices: Vec<usize>,
        length: Rational,
    },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinFlow {
    pub value: Rational,
    /// Flow per arc, indexed like [`FlowNetwork::arcs`].
    pub flow: Vec<Rational>,
    /// Nodes that can still reach the source in the final residual network.
    pub source_side: Vec<bool>,
}

/// Minimum s→t flow meeting every lower bound.
///
/// A feasible flow is built by sending each lower bound along an explicit
/// s→t path through its arc; the excess is then cancelled by pushing a
/// maximum flow from t back to s, where an arc can be decreased by
/// `flow - lower` and increased without limit.
pub fn min_flow(net: &FlowNetwork) -> MinFlow {
    let nodes = net.node_count();
    let arcs = net.arcs();
    let mut out_arcs = vec![Vec::new(); nodes];
    let mut in_arcs = vec![Vec::new(); nodes];
    for (k, a) in arcs.iter().enumerate() {
        out_arcs[a.from].push(k);
        in_arcs[a.to].push(k);
    }

    let to_node = bfs_tree(nodes, SOURCE, |u| {
        out_arcs[u].iter().map(|&k| (k, arcs[k].to))
    });
    let from_node = bfs_tree(nodes, SINK, |u| {
        in_arcs[u].iter().map(|&k| (k, arcs[k].from))
    });

    let mut flow = vec![Rational::zero(); arcs.len()];
    for (k, a) in arcs.iter().enumerate() {
        if !a.lower.is_positive() {
            continue;
        }
        flow[k] += &a.lower;
        let mut u = a.from;
        while u != SOURCE {
            let e = to_node[u].expect("every arc lies on an s-t path");
            flow[e] += &a.lower;
            u = arcs[e].from;
        }
        let mut v = a.to;
        while v != SINK {
            let e = from_node[v].expect("every arc lies on an s-t path");
            flow[e] += &a.lower;
            v = arcs[e].to;
        }
    }

    // Residual edge from node `u`: (arc, forward). Forward edges are unbounded.
    loop {
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[SINK] = true;
        let mut queue = VecDeque::from([SINK]);
        while let Some(u) = queue.pop_front() {
            if u == SOURCE {
                break;
            }
            for &k in &out_arcs[u] {
                let v = arcs[k].to;
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some((k, true));
                    queue.push_back(v);
                }
            }
            for &k in &in_arcs[u] {
                let v = arcs[k].from;
                if !seen[v] && flow[k] > arcs[k].lower {
                    seen[v] = true;
                    pred[v] = Some((k, false));
                    queue.push_back(v);
                }
            }
        }
        if !seen[SOURCE] {
            break;
        }
        let mut bottleneck: Option<Rational> = None;
        let mut v = SOURCE;
        while v != SINK {
            let (k, forward) = pred[v].unwrap();
            if forward {
                v = arcs[k].from;
            } else {
                let slack = &flow[k] - &arcs[k].lower;
                if bottleneck.as_ref().is_none_or(|b| slack < *b) {
                    bottleneck = Some(slack);
                }
                v = arcs[k].to;
            }
        }
        let delta = bottleneck.expect("t→s residual path always decreases some arc");
        let mut v = SOURCE;
        while v != SINK {
            let (k, forward) = pred[v].unwrap();
            if forward {
                flow[k] += &delta;
                v = arcs[k].from;
            } else {
                flow[k] -= &delta;
                v = arcs[k].to;
            }
        }
    }

    // Nodes that can reach s through residual edges.
    let mut source_side = vec![false; nodes];
    source_side[SOURCE] = true;
    let mut queue = VecDeque::from([SOURCE]);
    while let Some(y) = queue.pop_front() {
        for &k in &in_arcs[y] {
            let x = arcs[k].from;
            if !source_side[x] {
                source_side[x] = true;
                queue.push_back(x);
            }
        }
        for &k in &out_arcs[y] {
            let x = arcs[k].to;
            if !source_side[x] && flow[k] > arcs[k].lower {
                source_side[x] = true;
                queue.push_back(x);
            }
        }
    }

    let value = out_arcs[SOURCE]
        .iter()
        .fold(Rational::zero(), |acc, &k| acc + &flow[k]);
    MinFlow {
        value,
        flow,
        source_side,
    }
}

fn bfs_tree<I>(nodes: usize, root: usize, next: impl Fn(usize) -> I) -> Vec<Option<usize>>
where
    I: Iterator<Item = (usize, usize)>,
{
    let mut via = vec![None; nodes];
    let mut seen = vec![false; nodes];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for (k, v) in next(u) {
            if !seen[v] {
                seen[v] = true;
                via[v] = Some(k);
                queue.push_back(v);
            }
        }
    }
    via
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrderSolution {
    pub kept: Vec<usize>,
    pub kept_weight: Rational,
}

/// Exact MaxCMS for a total label order, where the whole conflict graph is
/// a single transitive part.
pub fn solve_total_order(inst: &Instance) -> Result<TotalOrderSolution> {
    if !inst.label_order().is_total() {
        return Err(Error::LabelOrderNotTotal);
    }
    let graph = build_special_graph(inst);
    let cut = PartOracle::new(graph.edges())?.max_wcut_is(graph.weights())?;
    Ok(TotalOrderSolution {
        kept: cut.members(),
        kept_weight: cut.value,
    })
}

pub fn build_network(weights: &[Rational], part: &Relation) -> Result<FlowNetwork> {
    PartOracle::new(part)?.network(weights)
}

pub fn max_wcut_is(weights: &[Rational], part: &Relation) -> Result<CutResult> {
    PartOracle::new(part)?.max_wcut_is(weights)
}

pub fn linear_oracle(part: &Relation, c: &[Rational]) -> Result<Vec<bool>> {
    PartOracle::new(part)?.linear_oracle(c)
}

pub fn membership(part: &Relation, y: &[Rational]) -> Result<Membership> {
    PartOracle::new(part)?.membership(y)
}
