//! Weighted labeled datasets and the monotonicity (acceptability) check.

use crate::error::{Error, Result};
use crate::order::{Lattice, Poset, TotalOrderRealizer};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub id: String,
    pub weight: Rational,
    pub label: usize,
}

/// A MaxCMS instance: objects with a partial order, labels with a partial
/// order, and the labeling carried on each object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    objects: Vec<Object>,
    label_names: Vec<String>,
    object_order: Poset,
    label_order: Poset,
    realizer: Option<TotalOrderRealizer>,
}

impl Instance {
    pub fn new(
        objects: Vec<Object>,
        label_names: Vec<String>,
        object_order: Poset,
        label_order: Poset,
        realizer: Option<TotalOrderRealizer>,
    ) -> Result<Self> {
        if object_order.len() != objects.len() {
            return Err(Error::LengthMismatch {
                expected: objects.len(),
                found: object_order.len(),
            });
        }
        if label_order.len() != label_names.len() {
            return Err(Error::LengthMismatch {
                expected: label_names.len(),
                found: label_order.len(),
            });
        }
        for (k, o) in objects.iter().enumerate() {
            if o.label >= label_names.len() {
                return Err(Error::UnknownLabel {
                    object: k,
                    label: o.label,
                });
            }
            if !o.weight.is_positive() {
                return Err(Error::NonPositiveWeight(k));
            }
        }
        if let Some(r) = &realizer {
            if !r.realizes(&label_order) {
                return Err(Error::InvalidRealizer(
                    "chains do not intersect to the label order".into(),
                ));
            }
        }
        Ok(Instance {
            objects,
            label_names,
            object_order,
            label_order,
            realizer,
        })
    }

    /// Label order given by a realizer; the poset is its intersection.
    pub fn with_realizer(
        objects: Vec<Object>,
        label_names: Vec<String>,
        object_order: Poset,
        realizer: TotalOrderRealizer,
    ) -> Result<Self> {
        let label_order = realizer.poset();
        Self::new(
            objects,
            label_names,
            object_order,
            label_order,
            Some(realizer),
        )
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn object_order(&self) -> &Poset {
        &self.object_order
    }

    pub fn label_order(&self) -> &Poset {
        &self.label_order
    }

    pub fn realizer(&self) -> Option<&TotalOrderRealizer> {
        self.realizer.as_ref()
    }

    pub fn label(&self, object: usize) -> usize {
        self.objects[object].label
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.objects.iter().map(|o| o.weight.clone()).collect()
    }

    pub fn total_weight(&self) -> Rational {
        self.objects
            .iter()
            .fold(Rational::zero(), |acc, o| acc + &o.weight)
    }

    pub fn weight_of(&self, subset: &[usize]) -> Rational {
        subset
            .iter()
            .fold(Rational::zero(), |acc, &i| acc + &self.objects[i].weight)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    /// `i >= j` on objects while `label(i) >= label(j)` fails.
    #[inline]
    pub fn violates(&self, i: usize, j: usize) -> bool {
        i != j && self.object_order.ge(i, j) && !self.label_order.ge(self.label(i), self.label(j))
    }

    /// First ordered pair `(i, j)` of the subset with `i >= j` but
    /// `label(i) >= label(j)` failing.
    pub fn first_violation(&self, subset: &[usize]) -> Result<Option<(usize, usize)>> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.len()) {
            return Err(Error::UnknownObject(bad));
        }
        for &i in subset {
            for &j in subset {
                if self.violates(i, j) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

/// True iff the labeling restricted to `subset` is monotone.
pub fn is_acceptable(inst: &Instance, subset: &[usize]) -> Result<bool> {
    Ok(inst.first_violation(subset)?.is_none())
}

/// Extends the labeling of an acceptable set to every object by taking the
/// join of accepted labels below each object. Objects with nothing accepted
/// below them receive `default`, which must lie below every accepted label.
pub fn monotone_extension(
    inst: &Instance,
    lattice: &Lattice,
    accepted: &[usize],
    default: usize,
) -> Result<Vec<usize>> {
    if lattice.poset() != inst.label_order() {
        return Err(Error::InvalidRealizer(
            "lattice order differs from the instance label order".into(),
        ));
    }
    if default >= inst.label_names().len() {
        return Err(Error::UnknownLabel {
            object: usize::MAX,
            label: default,
        });
    }
    if let Some((i, j)) = inst.first_violation(accepted)? {
        return Err(Error::NotAcceptable(i, j));
    }
    if accepted
        .iter()
        .any(|&a| !inst.label_order().ge(inst.label(a), default))
    {
        return Err(Error::BadDefault(default));
    }
    let order = inst.object_order();
    Ok((0..inst.len())
        .map(|x| {
            accepted
                .iter()
                .filter(|&&a| order.le(a, x))
                .map(|&a| inst.label(a))
                .reduce(|acc, l| lattice.join(acc, l))
                .unwrap_or(default)
        })
        .collect())
}
