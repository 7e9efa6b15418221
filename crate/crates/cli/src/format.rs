//! JSON documents for instances and solutions.

use crate::error::CliError;
use monocms_core::generate::vector_order_by;
use monocms_core::rational::{self, Rational};
use monocms_core::{transitive_closure, Instance, Object, Poset, TotalOrderRealizer};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A weight or coordinate: a JSON integer, or a string such as `"3/4"` or `"0.25"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn value(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(v) => Ok(rational::int(*v)),
            Number::Text(s) => rational::parse(s).map_err(CliError::from_parse),
        }
    }
}

impl From<&Rational> for Number {
    fn from(r: &Rational) -> Self {
        Number::Text(rational::format(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub id: String,
    pub weight: Number,
    pub label: String,
}

/// Pairs read `[greater, lesser]`; vectors are aligned with `objects`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectOrder {
    Pairs { pairs: Vec<[String; 2]> },
    Vectors { vectors: Vec<Vec<Number>> },
}

/// Chains are listed greatest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LabelOrder {
    Total { chain: Vec<String> },
    Realizer2 { chains: [Vec<String>; 2] },
    Pairs { pairs: Vec<[String; 2]> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Label names in index order. Defaults to the first chain, or to the
    /// order of first appearance for `pairs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub objects: Vec<ObjectEntry>,
    pub object_order: ObjectOrder,
    pub label_order: LabelOrder,
}

fn lookup(index: &HashMap<&str, usize>, name: &str, what: &str) -> Result<usize, CliError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| CliError::Parse(format!("unknown {what} {name:?}")))
}

fn index_of<'a>(names: &'a [String], what: &str) -> Result<HashMap<&'a str, usize>, CliError> {
    let mut index = HashMap::new();
    for (k, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), k).is_some() {
            return Err(CliError::Parse(format!("duplicate {what} {n:?}")));
        }
    }
    Ok(index)
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance documents serialize");
        s.push('\n');
        s
    }

    fn label_names(&self) -> Vec<String> {
        if let Some(labels) = &self.labels {
            return labels.clone();
        }
        match &self.label_order {
            LabelOrder::Total { chain } => chain.clone(),
            LabelOrder::Realizer2 { chains } => chains[0].clone(),
            LabelOrder::Pairs { pairs } => {
                let mut names: Vec<String> = Vec::new();
                let seen = pairs
                    .iter()
                    .flatten()
                    .chain(self.objects.iter().map(|o| &o.label));
                for n in seen {
                    if !names.contains(n) {
                        names.push(n.clone());
                    }
                }
                names
            }
        }
    }

    pub fn to_instance(&self) -> Result<Instance, CliError> {
        let label_names = self.label_names();
        let labels = index_of(&label_names, "label")?;
        let ids: Vec<String> = self.objects.iter().map(|o| o.id.clone()).collect();
        let id_index = index_of(&ids, "object id")?;
        let objects = self
            .objects
            .iter()
            .map(|o| {
                Ok(Object {
                    id: o.id.clone(),
                    weight: o.weight.value()?,
                    label: lookup(&labels, &o.label, "label")?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let n = objects.len();
        let object_order = match &self.object_order {
            ObjectOrder::Pairs { pairs } => {
                let pairs = pairs
                    .iter()
                    .map(|[a, b]| {
                        Ok((
                            lookup(&id_index, a, "object id")?,
                            lookup(&id_index, b, "object id")?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                transitive_closure(&pairs, n)
                    .and_then(|p| p.into_poset())
                    .map_err(CliError::from_parse)?
            }
            ObjectOrder::Vectors { vectors } => {
                if vectors.len() != n {
                    return Err(CliError::Parse(format!(
                        "{} vectors for {n} objects",
                        vectors.len()
                    )));
                }
                let values = vectors
                    .iter()
                    .map(|v| v.iter().map(Number::value).collect())
                    .collect::<Result<Vec<Vec<Rational>>, CliError>>()?;
                vector_order_by(&values, |a, b| a >= b).map_err(CliError::from_parse)?
            }
        };
        let chain_indices = |chain: &[String]| -> Result<Vec<usize>, CliError> {
            chain.iter().map(|l| lookup(&labels, l, "label")).collect()
        };
        let (label_order, realizer) = match &self.label_order {
            LabelOrder::Total { chain } => {
                let r = TotalOrderRealizer::new(vec![chain_indices(chain)?])
                    .map_err(CliError::from_parse)?;
                (r.poset(), Some(r))
            }
            LabelOrder::Realizer2 { chains } => {
                let chains = chains
                    .iter()
                    .map(|c| chain_indices(c))
                    .collect::<Result<_, _>>()?;
                let r = TotalOrderRealizer::new(chains).map_err(CliError::from_parse)?;
                (r.poset(), Some(r))
            }
            LabelOrder::Pairs { pairs } => {
                let pairs = pairs
                    .iter()
                    .map(|[a, b]| Ok((lookup(&labels, a, "label")?, lookup(&labels, b, "label")?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let poset = transitive_closure(&pairs, label_names.len())
                    .and_then(|p| p.into_poset())
                    .map_err(CliError::from_parse)?;
                (poset, None)
            }
        };
        Instance::new(objects, label_names, object_order, label_order, realizer)
            .map_err(CliError::from_parse)
    }

    /// Object order as cover pairs; the label order as chains when a
    /// realizer of dimension one or two is present, as cover pairs otherwise.
    pub fn from_instance(inst: &Instance) -> Self {
        let names = inst.label_names();
        let ids: Vec<&str> = inst.objects().iter().map(|o| o.id.as_str()).collect();
        let named = |chain: &[usize]| chain.iter().map(|&l| names[l].clone()).collect::<Vec<_>>();
        let label_order = match inst.realizer().map(|r| r.chains()) {
            Some([chain]) => LabelOrder::Total {
                chain: named(chain),
            },
            Some([a, b]) => LabelOrder::Realizer2 {
                chains: [named(a), named(b)],
            },
            _ => LabelOrder::Pairs {
                pairs: cover_pairs(inst.label_order(), |l| names[l].clone()),
            },
        };
        InstanceFile {
            labels: Some(names.to_vec()),
            objects: inst
                .objects()
                .iter()
                .map(|o| ObjectEntry {
                    id: o.id.clone(),
                    weight: Number::from(&o.weight),
                    label: names[o.label].clone(),
                })
                .collect(),
            object_order: ObjectOrder::Pairs {
                pairs: cover_pairs(inst.object_order(), |v| ids[v].to_string()),
            },
            label_order,
        }
    }
}

fn cover_pairs(poset: &Poset, name: impl Fn(usize) -> String) -> Vec<[String; 2]> {
    poset
        .covers()
        .into_iter()
        .map(|(a, b)| [name(a), name(b)])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(rename = "W")]
    pub total_weight: String,
    pub alpha: String,
    pub epsilon: String,
    pub bound: String,
    pub gap: String,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_prime: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub algorithm: String,
    pub kept: Vec<String>,
    pub removed: Vec<String>,
    pub kept_weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

impl SolutionFile {
    /// Checks that `kept` is acceptable and partitions the objects with
    /// `removed`, then renders the document.
    pub fn to_json(&self, inst: &Instance) -> Result<String, CliError> {
        let ids: Vec<String> = inst.objects().iter().map(|o| o.id.clone()).collect();
        let index = index_of(&ids, "object id")?;
        let kept = self
            .kept
            .iter()
            .map(|id| lookup(&index, id, "object id"))
            .collect::<Result<Vec<_>, _>>()?;
        let mut all: Vec<&String> = self.kept.iter().chain(&self.removed).collect();
        all.sort();
        let mut expected: Vec<&String> = ids.iter().collect();
        expected.sort();
        if all != expected {
            return Err(CliError::Internal(
                "kept and removed do not partition the objects".into(),
            ));
        }
        if let Some((i, j)) = inst.first_violation(&kept)? {
            return Err(CliError::Internal(format!(
                "kept set is not monotone: {} > {}",
                ids[i], ids[j]
            )));
        }
        let mut s = serde_json::to_string_pretty(self).expect("solution documents serialize");
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}
