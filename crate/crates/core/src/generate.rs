//! Random instances.

use crate::error::{Error, Result};
use crate::instance::{Instance, Object};
use crate::order::{Poset, Relation, TotalOrderRealizer};
use crate::rational::{frac, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Parameters of a noisy monotone dataset on an integer grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub objects: usize,
    /// Chain length for dimension 1, side of the label grid for dimension 2.
    pub labels: usize,
    pub dimension: usize,
    /// Probability that an object's label is replaced by a uniform one.
    pub noise: f64,
    /// Coordinates are drawn from `0..coord_range` in two dimensions.
    pub coord_range: i64,
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        if self.objects == 0 {
            return Err(Error::BadParams("at least one object is required".into()));
        }
        if self.labels == 0 {
            return Err(Error::BadParams("at least one label is required".into()));
        }
        if !(1..=2).contains(&self.dimension) {
            return Err(Error::BadParams("label dimension must be 1 or 2".into()));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::BadParams("noise must lie in [0, 1]".into()));
        }
        if self.coord_range < 1 {
            return Err(Error::BadParams("coordinate range must be positive".into()));
        }
        Ok(())
    }
}

/// Objects as 2-d integer vectors with labels drawn from a chain (dimension 1)
/// or a product of two chains (dimension 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub ids: Vec<String>,
    pub weights: Vec<Rational>,
    pub vectors: Vec<Vec<i64>>,
    pub labels: Vec<usize>,
    pub label_names: Vec<String>,
    /// Realizer chains, each listed greatest first.
    pub chains: Vec<Vec<usize>>,
}

impl Dataset {
    pub fn instance(&self) -> Result<Instance> {
        let objects = self
            .ids
            .iter()
            .zip(&self.weights)
            .zip(&self.labels)
            .map(|((id, w), &label)| Object {
                id: id.clone(),
                weight: w.clone(),
                label,
            })
            .collect();
        Instance::with_realizer(
            objects,
            self.label_names.clone(),
            vector_order(&self.vectors)?,
            TotalOrderRealizer::new(self.chains.clone())?,
        )
    }
}

/// Componentwise order; identical vectors are ordered by position, the later
/// one being greater.
pub fn vector_order(vectors: &[Vec<i64>]) -> Result<Poset> {
    vector_order_by(vectors, |a, b| a >= b)
}

pub fn vector_order_by<T: PartialEq>(
    vectors: &[Vec<T>],
    ge: impl Fn(&T, &T) -> bool,
) -> Result<Poset> {
    let n = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::LengthMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let mut r = Relation::empty(n);
    for i in 0..n {
        for j in 0..n {
            let dominates = vectors[i].iter().zip(&vectors[j]).all(|(a, b)| ge(a, b));
            if dominates && (vectors[i] != vectors[j] || i >= j) {
                r.insert(i, j);
            }
        }
    }
    Poset::new(r)
}

/// Weights `p/q` with `p` in `1..=9` and `q` in `1..=3`.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    frac(rng.gen_range(1..=9), rng.gen_range(1..=3))
}

pub fn random_dataset<R: Rng + ?Sized>(spec: &DatasetSpec, rng: &mut R) -> Result<Dataset> {
    spec.validate()?;
    let m = spec.labels;
    let range = spec.coord_range;
    let vectors: Vec<Vec<i64>> = (0..spec.objects)
        .map(|_| vec![rng.gen_range(0..range), rng.gen_range(0..range)])
        .collect();
    let scale = |value: i64, span: i64| ((value * m as i64) / span).min(m as i64 - 1) as usize;
    let (label_names, chains, truth): (Vec<String>, Vec<Vec<usize>>, Vec<usize>) =
        if spec.dimension == 1 {
            let names = (0..m).map(|k| format!("L{k}")).collect();
            let chain = (0..m).rev().collect();
            let truth = vectors
                .iter()
                .map(|v| scale(v[0] + v[1], 2 * range - 1))
                .collect();
            (names, vec![chain], truth)
        } else {
            let index = |p: usize, q: usize| p * m + q;
            let names = (0..m * m)
                .map(|k| format!("L{}_{}", k / m, k % m))
                .collect();
            let mut first: Vec<(usize, usize)> =
                (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
            first.sort_by(|a, b| b.cmp(a));
            let mut second = first.clone();
            second.sort_by_key(|&(p, q)| std::cmp::Reverse((q, p)));
            let chains = vec![
                first.iter().map(|&(p, q)| index(p, q)).collect(),
                second.iter().map(|&(p, q)| index(p, q)).collect(),
            ];
            let truth = vectors
                .iter()
                .map(|v| index(scale(v[0], range), scale(v[1], range)))
                .collect();
            (names, chains, truth)
        };
    let label_count = label_names.len();
    let labels = truth
        .into_iter()
        .map(|t| {
            if rng.gen_bool(spec.noise) {
                rng.gen_range(0..label_count)
            } else {
                t
            }
        })
        .collect();
    Ok(Dataset {
        ids: (0..spec.objects).map(|k| format!("o{k}")).collect(),
        weights: (0..spec.objects).map(|_| random_weight(rng)).collect(),
        vectors,
        labels,
        label_names,
        chains,
    })
}

/// Transitive closure of a random DAG with edge probability `density`.
pub fn random_poset<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut r = Relation::identity(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                r.insert(perm[b], perm[a]);
            }
        }
    }
    r.close();
    Poset::new(r).expect("closure of a DAG is a partial order")
}

pub fn random_realizer<R: Rng + ?Sized>(
    m: usize,
    dimension: usize,
    rng: &mut R,
) -> TotalOrderRealizer {
    let chains = (0..dimension)
        .map(|_| {
            let mut c: Vec<usize> = (0..m).collect();
            c.shuffle(rng);
            c
        })
        .collect();
    TotalOrderRealizer::new(chains).expect("shuffles are permutations")
}

/// Random poset on objects, random labels from a random realizer of the
/// given dimension, random rational weights.
pub fn random_instance<R: Rng + ?Sized>(
    n: usize,
    labels: usize,
    dimension: usize,
    density: f64,
    rng: &mut R,
) -> Instance {
    let order = random_poset(n, density, rng);
    let realizer = random_realizer(labels, dimension, rng);
    let objects = (0..n)
        .map(|k| Object {
            id: format!("o{k}"),
            weight: random_weight(rng),
            label: rng.gen_range(0..labels),
        })
        .collect();
    let names = (0..labels).map(|k| format!("L{k}")).collect();
    Instance::with_realizer(objects, names, order, realizer).expect("generated instance is valid")
}

/// Random poset on objects and on labels (no realizer).
pub fn random_poset_instance<R: Rng + ?Sized>(
    n: usize,
    labels: usize,
    density: f64,
    rng: &mut R,
) -> Instance {
    let order = random_poset(n, density, rng);
    let label_order = random_poset(labels, density, rng);
    let objects = (0..n)
        .map(|k| Object {
            id: format!("o{k}"),
            weight: random_weight(rng),
            label: rng.gen_range(0..labels),
        })
        .collect();
    let names = (0..labels).map(|k| format!("L{k}")).collect();
    Instance::new(objects, names, order, label_order, None).expect("generated instance is valid")
}
