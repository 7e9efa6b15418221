//! Exhaustive maximum-weight independent set by branch and bound.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::specgraph::{build_special_graph, SpecialGraph};
use num_traits::Zero;

pub const DEFAULT_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    /// Sorted vertex ids.
    pub best_set: Vec<usize>,
    pub best_weight: Rational,
    /// Search nodes visited.
    pub enumerated: u64,
}

pub fn brute_force_is(g: &SpecialGraph) -> Result<ExactResult> {
    brute_force_is_with_limit(g, DEFAULT_LIMIT)
}

/// Among optimal sets returns the lexicographically smallest sorted id list.
pub fn brute_force_is_with_limit(g: &SpecialGraph, limit: usize) -> Result<ExactResult> {
    let n = g.len();
    if n > limit.min(64) {
        return Err(Error::TooLarge {
            n,
            limit: limit.min(64),
        });
    }
    let neighbours: Vec<u64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| g.adjacent(a, b))
                .fold(0u64, |m, b| m | (1 << b))
        })
        .collect();
    let mut search = Search {
        weights: g.weights(),
        neighbours,
        best: None,
        enumerated: 0,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.visit(0, 0, all, Rational::zero());
    let (mask, best_weight) = search.best.expect("empty set is always feasible");
    Ok(ExactResult {
        best_set: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
        best_weight,
        enumerated: search.enumerated,
    })
}

struct Search<'a> {
    weights: &'a [Rational],
    neighbours: Vec<u64>,
    best: Option<(u64, Rational)>,
    enumerated: u64,
}

impl Search<'_> {
    // Vertices are decided in increasing order, "take" before "skip", and
    // only strict improvements replace the incumbent; the first optimum
    // reached is therefore the lexicographically smallest.
    fn visit(&mut self, next: usize, chosen: u64, candidates: u64, weight: Rational) {
        self.enumerated += 1;
        let rest = if next >= 64 {
            0
        } else {
            candidates & (u64::MAX << next)
        };
        if rest == 0 {
            if self.best.as_ref().is_none_or(|(_, w)| weight > *w) {
                self.best = Some((chosen, weight));
            }
            return;
        }
        if let Some((_, best)) = &self.best {
            let bound = bits(rest).fold(weight.clone(), |acc, v| acc + &self.weights[v]);
            if bound <= *best {
                return;
            }
        }
        let v = rest.trailing_zeros() as usize;
        let after = v + 1;
        self.visit(
            after,
            chosen | (1 << v),
            candidates & !self.neighbours[v],
            weight.clone() + &self.weights[v],
        );
        self.visit(after, chosen, candidates & !(1 << v), weight);
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Exact MaxCMS through the conflict graph.
pub fn brute_force_maxcms(inst: &Instance) -> Result<ExactResult> {
    brute_force_maxcms_with_limit(inst, DEFAULT_LIMIT)
}

pub fn brute_force_maxcms_with_limit(inst: &Instance, limit: usize) -> Result<ExactResult> {
    let result = brute_force_is_with_limit(&build_special_graph(inst), limit)?;
    debug_assert!(inst.first_violation(&result.best_set)?.is_none());
    Ok(result)
}
