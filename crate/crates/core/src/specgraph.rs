//! Conflict graphs of MaxCMS instances.
//!
//! An edge `(i, j)` joins objects with `i >= j` whose labels fail
//! `label(i) >= label(j)`. Independent sets of this graph are exactly the
//! acceptable subsets. When the label order comes with a realizer of
//! dimension `d`, the edges split into `d` transitive parts, one per chain.

use crate::error::{Error, Result};
use crate::instance::{Instance, Object};
use crate::order::{Poset, Preorder, Relation};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialGraph {
    weights: Vec<Rational>,
    edges: Relation,
    parts: Option<Vec<Relation>>,
}

impl SpecialGraph {
    /// Validates loop-freeness, acyclicity and, when given, that the parts
    /// are transitive and cover the edges exactly.
    pub fn new(
        weights: Vec<Rational>,
        edges: Relation,
        parts: Option<Vec<Relation>>,
    ) -> Result<Self> {
        let n = weights.len();
        if edges.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: edges.len(),
            });
        }
        if let Some(v) = (0..n).find(|&v| edges.contains(v, v)) {
            return Err(Error::SelfLoop(v));
        }
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(v));
        }
        if edges.topological_order().is_none() {
            return Err(Error::Cyclic(first_on_cycle(&edges)));
        }
        if let Some(parts) = &parts {
            let mut union = Relation::empty(n);
            for p in parts {
                if p.len() != n {
                    return Err(Error::PartsMismatch);
                }
                p.check_transitive()?;
                union = union.union(p);
            }
            if union != edges {
                return Err(Error::PartsMismatch);
            }
        }
        Ok(SpecialGraph {
            weights,
            edges,
            parts,
        })
    }

    /// Graph whose edge set is the union of the given transitive parts.
    pub fn from_parts(weights: Vec<Rational>, parts: Vec<Relation>) -> Result<Self> {
        let n = weights.len();
        let edges = parts.iter().fold(Relation::empty(n), |acc, p| {
            if p.len() == n {
                acc.union(p)
            } else {
                acc
            }
        });
        Self::new(weights, edges, Some(parts))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }

    pub fn edges(&self) -> &Relation {
        &self.edges
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.pairs().collect()
    }

    pub fn parts(&self) -> Option<&[Relation]> {
        self.parts.as_deref()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(a, b) || self.edges.contains(b, a)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| !self.edges.contains(a, b)))
    }

    pub fn weight_of(&self, set: &[usize]) -> Rational {
        set.iter()
            .fold(Rational::zero(), |acc, &v| acc + &self.weights[v])
    }
}

fn first_on_cycle(edges: &Relation) -> usize {
    let mut closed = edges.clone();
    closed.close();
    (0..edges.len())
        .find(|&v| closed.contains(v, v))
        .unwrap_or(0)
}

/// Conflict graph of an instance, without a part decomposition.
pub fn build_special_graph(inst: &Instance) -> SpecialGraph {
    let n = inst.len();
    let mut edges = Relation::empty(n);
    for i in 0..n {
        for j in 0..n {
            if inst.violates(i, j) {
                edges.insert(i, j);
            }
        }
    }
    SpecialGraph {
        weights: inst.weights(),
        edges,
        parts: None,
    }
}

/// Conflict graph with one transitive edge part per realizer chain: part `s`
/// holds the pairs `i >= j` whose labels are out of order in chain `s`.
pub fn decompose_edges(inst: &Instance) -> Result<SpecialGraph> {
    let realizer = inst.realizer().ok_or(Error::MissingRealizer)?;
    if !realizer.realizes(inst.label_order()) {
        return Err(Error::InvalidRealizer(
            "realizer does not match label order".into(),
        ));
    }
    let n = inst.len();
    let order = inst.object_order();
    let parts: Vec<Relation> = (0..realizer.dimension())
        .map(|s| {
            let mut part = Relation::empty(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && order.ge(i, j) && !realizer.ge_in(s, inst.label(i), inst.label(j))
                    {
                        part.insert(i, j);
                    }
                }
            }
            part
        })
        .collect();
    let mut graph = build_special_graph(inst);
    debug_assert_eq!(
        parts.iter().fold(Relation::empty(n), |a, p| a.union(p)),
        graph.edges
    );
    graph.parts = Some(parts);
    Ok(graph)
}

/// Turns the graph with edges `ge ∩ ¬succ` into a MaxCMS instance: each
/// vertex is labeled with its class of mutual `succ`-comparability, and
/// classes are ordered by `succ`.
pub fn quotient_reduce(weights: &[Rational], succ: &Preorder, ge: &Poset) -> Result<Instance> {
    let n = weights.len();
    for len in [succ.len(), ge.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let class = succ.classes();
    let class_count = class.iter().map(|c| c + 1).max().unwrap_or(0);
    let mut representative = vec![usize::MAX; class_count];
    for (v, &c) in class.iter().enumerate() {
        if representative[c] == usize::MAX {
            representative[c] = v;
        }
    }
    let mut label_rel = Relation::empty(class_count);
    for a in 0..class_count {
        for b in 0..class_count {
            if succ.ge(representative[a], representative[b]) {
                label_rel.insert(a, b);
            }
        }
    }
    let label_order = Poset::new(label_rel).expect("induced order on classes is a partial order");
    let objects = weights
        .iter()
        .enumerate()
        .map(|(v, w)| Object {
            id: format!("v{v}"),
            weight: w.clone(),
            label: class[v],
        })
        .collect();
    let label_names = (0..class_count).map(|c| format!("k{c}")).collect();
    Instance::new(objects, label_names, ge.clone(), label_order, None)
}
