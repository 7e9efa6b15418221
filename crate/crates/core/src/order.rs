//! Dense binary relations, preorders, posets, realizers and lattices.
//!
//! All relations are read in the "greater-or-equal" direction: a pair
//! `(i, j)` in a [`Poset`] means `i >= j`.

use crate::error::{Error, Result};

/// Dense boolean relation over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Relation")
            .field("n", &self.n)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        Relation {
            n,
            bits: vec![true; n * n],
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n);
        for &(i, j) in pairs {
            for id in [i, j] {
                if id >= n {
                    return Err(Error::OutOfRange { id, n });
                }
            }
            r.insert(i, j);
        }
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
    }

    #[inline]
    pub fn remove(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = false;
    }

    pub fn pair_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(k, _)| (k / n, k % n))
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.contains(i, j))
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i, j))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a && !*b)
                .collect(),
        }
    }

    /// Warshall's closure, in place. Does not add reflexive pairs.
    pub fn close(&mut self) {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if !self.bits[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if self.bits[k * n + j] {
                        self.bits[i * n + j] = true;
                    }
                }
            }
        }
    }

    pub fn check_reflexive(&self) -> Result<()> {
        match (0..self.n).find(|&i| !self.contains(i, i)) {
            Some(i) => Err(Error::NotReflexive(i)),
            None => Ok(()),
        }
    }

    pub fn check_transitive(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in self.successors(i) {
                for k in self.successors(j) {
                    if !self.contains(i, k) {
                        return Err(Error::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_antisymmetric(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.contains(i, j) && self.contains(j, i) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_transitive(&self) -> bool {
        self.check_transitive().is_ok()
    }

    /// Kahn's algorithm; `None` if the relation (ignoring loops) has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indegree = vec![0usize; n];
        for (i, j) in self.pairs() {
            if i != j {
                indegree[j] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for u in (0..n).rev() {
                if u != v && self.contains(v, u) {
                    indegree[u] -= 1;
                    if indegree[u] == 0 {
                        stack.push(u);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Smallest reflexive-transitive relation containing `pairs`.
pub fn transitive_closure(pairs: &[(usize, usize)], n: usize) -> Result<Preorder> {
    let mut r = Relation::from_pairs(n, pairs)?;
    for i in 0..n {
        r.insert(i, i);
    }
    r.close();
    Ok(Preorder(r))
}

/// Reflexive and transitive relation; `(i, j)` reads `i ≽ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder(Relation);

impl Preorder {
    pub fn new(relation: Relation) -> Result<Self> {
        relation.check_reflexive()?;
        relation.check_transitive()?;
        Ok(Preorder(relation))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.0.contains(i, j)
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn into_poset(self) -> Result<Poset> {
        self.0.check_antisymmetric()?;
        Ok(Poset(self.0))
    }

    /// Equivalence classes of mutual comparability, numbered by first member.
    pub fn classes(&self) -> Vec<usize> {
        let n = self.len();
        let mut class = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            if class[i] != usize::MAX {
                continue;
            }
            for (j, c) in class.iter_mut().enumerate().skip(i) {
                if self.ge(i, j) && self.ge(j, i) {
                    *c = next;
                }
            }
            next += 1;
        }
        class
    }
}

/// Partial order; `(i, j)` reads `i >= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset(Relation);

impl Poset {
    pub fn new(relation: Relation) -> Result<Self> {
        relation.check_reflexive()?;
        relation.check_transitive()?;
        relation.check_antisymmetric()?;
        Ok(Poset(relation))
    }

    /// Closes `(greater, lesser)` pairs and checks antisymmetry.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        transitive_closure(pairs, n)?.into_poset()
    }

    pub fn antichain(n: usize) -> Self {
        Poset(Relation::identity(n))
    }

    /// Chain listed from greatest to least.
    pub fn chain(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut r = Relation::empty(n);
        for (a, &i) in order.iter().enumerate() {
            if i >= n {
                return Err(Error::OutOfRange { id: i, n });
            }
            for &j in &order[a..] {
                r.insert(i, j);
            }
        }
        Poset::new(r)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.0.contains(i, j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.0.contains(j, i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.ge(i, j) || self.ge(j, i)
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn as_preorder(&self) -> Preorder {
        Preorder(self.0.clone())
    }

    /// Strict part (`i > j`).
    pub fn strict(&self) -> Relation {
        let mut r = self.0.clone();
        for i in 0..self.len() {
            r.remove(i, i);
        }
        r
    }

    /// Hasse diagram pairs `(upper, lower)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.ge(i, j) {
                    continue;
                }
                let covered = (0..n).any(|k| k != i && k != j && self.ge(i, k) && self.ge(k, j));
                if !covered {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.comparable(i, j)))
    }
}

/// Linear extensions whose intersection is a partial order. Each chain lists
/// every element once, from greatest to least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrderRealizer {
    chains: Vec<Vec<usize>>,
    position: Vec<Vec<usize>>,
}

impl TotalOrderRealizer {
    pub fn new(chains: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = chains.first() else {
            return Err(Error::InvalidRealizer("no chains".into()));
        };
        let m = first.len();
        let mut position = Vec::with_capacity(chains.len());
        for (s, chain) in chains.iter().enumerate() {
            if chain.len() != m {
                return Err(Error::InvalidRealizer(format!(
                    "chain {s} has {} elements, expected {m}",
                    chain.len()
                )));
            }
            let mut pos = vec![usize::MAX; m];
            for (p, &label) in chain.iter().enumerate() {
                if label >= m || pos[label] != usize::MAX {
                    return Err(Error::InvalidRealizer(format!(
                        "chain {s} is not a permutation of 0..{m}"
                    )));
                }
                pos[label] = p;
            }
            position.push(pos);
        }
        Ok(TotalOrderRealizer { chains, position })
    }

    pub fn dimension(&self) -> usize {
        self.chains.len()
    }

    pub fn len(&self) -> usize {
        self.position[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    /// `a >= b` in chain `s`.
    #[inline]
    pub fn ge_in(&self, s: usize, a: usize, b: usize) -> bool {
        self.position[s][a] <= self.position[s][b]
    }

    pub fn ge(&self, a: usize, b: usize) -> bool {
        (0..self.dimension()).all(|s| self.ge_in(s, a, b))
    }

    /// Intersection of the chains.
    pub fn poset(&self) -> Poset {
        let m = self.len();
        let mut r = Relation::empty(m);
        for a in 0..m {
            for b in 0..m {
                if self.ge(a, b) {
                    r.insert(a, b);
                }
            }
        }
        Poset(r)
    }

    pub fn realizes(&self, poset: &Poset) -> bool {
        poset.len() == self.len()
            && (0..self.len()).all(|a| (0..self.len()).all(|b| self.ge(a, b) == poset.ge(a, b)))
    }
}

/// A poset together with its binary join table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
}

impl Lattice {
    pub fn new(poset: Poset, join: Vec<usize>) -> Result<Self> {
        let m = poset.len();
        if join.len() != m * m {
            return Err(Error::LengthMismatch {
                expected: m * m,
                found: join.len(),
            });
        }
        for a in 0..m {
            for b in 0..m {
                let j = join[a * m + b];
                if j >= m || least_upper_bound(&poset, a, b) != Some(j) {
                    return Err(Error::BadJoin(a, b));
                }
            }
        }
        Ok(Lattice { poset, join })
    }

    /// Computes the join table, failing if some pair lacks a least upper bound.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let m = poset.len();
        let mut join = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                join.push(least_upper_bound(&poset, a, b).ok_or(Error::NotALattice(a, b))?);
            }
        }
        Ok(Lattice { poset, join })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.len() + b]
    }

    pub fn bottom(&self) -> Option<usize> {
        let m = self.poset.len();
        (0..m).find(|&a| (0..m).all(|b| self.poset.ge(b, a)))
    }
}

fn least_upper_bound(poset: &Poset, a: usize, b: usize) -> Option<usize> {
    let m = poset.len();
    let uppers: Vec<usize> = (0..m)
        .filter(|&u| poset.ge(u, a) && poset.ge(u, b))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| poset.ge(v, u)))
}
