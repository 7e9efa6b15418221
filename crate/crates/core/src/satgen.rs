//! Hard instances from 3-CNF formulas.
//!
//! Each variable contributes a pair `u_i → ¬u_i`, each clause a transitive
//! triangle `c¹ → c² → c³`, and each literal occurrence links the clause
//! copy to its literal: `u_k → c` for a positive occurrence, `c → ¬u_k` for
//! a negative one. The formula is satisfiable iff the graph has an
//! independent set of size `n + m`. Taking the order `E*` (transitive
//! closure) and the preorder `E* \ E` presents the graph as a conflict
//! graph, so it converts into a MaxCMS instance.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::order::{Poset, Preorder, Relation};
use crate::rational::{int, Rational};
use crate::specgraph::{quotient_reduce, SpecialGraph};
use rand::seq::index::sample;
use rand::Rng;

pub const SAT_CHECK_LIMIT: usize = 20;

/// Literals are DIMACS style: `+k` is `u_k`, `-k` is `¬u_k`, `k` in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3 {
    variables: usize,
    clauses: Vec<[i64; 3]>,
}

impl Cnf3 {
    pub fn new(variables: usize, clauses: Vec<[i64; 3]>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            for (k, &lit) in clause.iter().enumerate() {
                if lit == 0 || lit.unsigned_abs() as usize > variables {
                    return Err(Error::BadLiteral {
                        clause: c,
                        literal: lit,
                    });
                }
                if clause[..k].iter().any(|other| other.abs() == lit.abs()) {
                    return Err(Error::RepeatedVariable {
                        clause: c,
                        var: lit.unsigned_abs() as usize,
                    });
                }
            }
        }
        Ok(Cnf3 { variables, clauses })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[i64; 3]] {
        &self.clauses
    }

    /// Reads `p cnf N M` followed by zero-terminated clauses of exactly three
    /// literals. Lines starting with `c` are comments.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut variables = None;
        let mut declared = 0usize;
        let mut literals: Vec<i64> = Vec::new();
        let mut clauses = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(Error::Dimacs(format!("bad header {line:?}")));
                }
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Dimacs(format!("bad header {line:?}")))
                };
                variables = Some(parse(fields[1])?);
                declared = parse(fields[2])?;
                continue;
            }
            if variables.is_none() {
                return Err(Error::Dimacs("clause before header".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| Error::Dimacs(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    let clause: [i64; 3] = literals.as_slice().try_into().map_err(|_| {
                        Error::Dimacs(format!(
                            "clause {} has {} literals, expected 3",
                            clauses.len() + 1,
                            literals.len()
                        ))
                    })?;
                    clauses.push(clause);
                    literals.clear();
                } else {
                    literals.push(lit);
                }
            }
        }
        let variables = variables.ok_or_else(|| Error::Dimacs("missing header".into()))?;
        if !literals.is_empty() {
            return Err(Error::Dimacs("unterminated clause".into()));
        }
        if clauses.len() != declared {
            return Err(Error::Dimacs(format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            )));
        }
        Cnf3::new(variables, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variables, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }

    /// `clauses` clauses over three distinct variables each, random signs.
    pub fn random<R: Rng + ?Sized>(variables: usize, clauses: usize, rng: &mut R) -> Result<Self> {
        if clauses > 0 && variables < 3 {
            return Err(Error::BadParams(
                "a 3-CNF clause needs at least three variables".into(),
            ));
        }
        let clauses = (0..clauses)
            .map(|_| {
                let vars = sample(rng, variables, 3);
                let mut clause = [0i64; 3];
                for (slot, v) in clause.iter_mut().zip(vars.iter()) {
                    let lit = v as i64 + 1;
                    *slot = if rng.gen_bool(0.5) { lit } else { -lit };
                }
                clause
            })
            .collect();
        Cnf3::new(variables, clauses)
    }

    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }
}

/// Satisfiability by enumerating all assignments.
pub fn sat_check_brute(f: &Cnf3) -> Result<bool> {
    if f.variables > SAT_CHECK_LIMIT {
        return Err(Error::TooLarge {
            n: f.variables,
            limit: SAT_CHECK_LIMIT,
        });
    }
    Ok((0..1u32 << f.variables).any(|a| f.satisfied_by(a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    cnf: Cnf3,
    names: Vec<String>,
    literal_edges: Relation,
    clause_edges: Relation,
    edges: Relation,
    closure: Relation,
    complement: Relation,
}

impl Gadget {
    pub fn cnf(&self) -> &Cnf3 {
        &self.cnf
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Pairs `u → ¬u` and literal occurrence links.
    pub fn literal_edges(&self) -> &Relation {
        &self.literal_edges
    }

    /// Clause triangles.
    pub fn clause_edges(&self) -> &Relation {
        &self.clause_edges
    }

    pub fn edges(&self) -> &Relation {
        &self.edges
    }

    /// Transitive closure `E*` (without reflexive pairs).
    pub fn closure(&self) -> &Relation {
        &self.closure
    }

    /// `E* \ E`.
    pub fn complement(&self) -> &Relation {
        &self.complement
    }

    pub fn cover_target(&self) -> usize {
        self.cnf.variables + 2 * self.cnf.clauses.len()
    }

    pub fn independence_target(&self) -> usize {
        self.cnf.variables + self.cnf.clauses.len()
    }

    /// Unit-weight graph with the literal and clause edges as its two parts.
    pub fn graph(&self) -> SpecialGraph {
        SpecialGraph::new(
            vec![int(1); self.vertex_count()],
            self.edges.clone(),
            Some(vec![self.literal_edges.clone(), self.clause_edges.clone()]),
        )
        .expect("gadget parts are transitive and acyclic")
    }

    /// `E*` with reflexive pairs.
    pub fn order(&self) -> Poset {
        let mut r = self.closure.clone();
        for v in 0..self.vertex_count() {
            r.insert(v, v);
        }
        Poset::new(r).expect("gadget closure is acyclic")
    }

    /// `E* \ E` with reflexive pairs.
    pub fn preorder(&self) -> Preorder {
        let mut r = self.complement.clone();
        for v in 0..self.vertex_count() {
            r.insert(v, v);
        }
        Preorder::new(r).expect("complement part is transitive")
    }
}

pub fn positive_vertex(var: usize) -> usize {
    2 * (var - 1)
}

pub fn negative_vertex(var: usize) -> usize {
    2 * (var - 1) + 1
}

/// Vertex of the copy of clause `clause` (0-based) at `position` (1..=3).
pub fn clause_vertex(variables: usize, clause: usize, position: usize) -> usize {
    2 * variables + 3 * clause + position - 1
}

pub fn build_gadget(f: &Cnf3) -> Result<Gadget> {
    let f = Cnf3::new(f.variables, f.clauses.clone())?;
    let n = f.variables;
    let m = f.clauses.len();
    let size = 2 * n + 3 * m;
    let mut names = Vec::with_capacity(size);
    for i in 1..=n {
        names.push(format!("u{i}"));
        names.push(format!("~u{i}"));
    }
    for j in 1..=m {
        for l in 1..=3 {
            names.push(format!("c{j}_{l}"));
        }
    }
    let mut literal_edges = Relation::empty(size);
    let mut clause_edges = Relation::empty(size);
    for i in 1..=n {
        literal_edges.insert(positive_vertex(i), negative_vertex(i));
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        for (k, &lit) in clause.iter().enumerate() {
            let c = clause_vertex(n, j, k + 1);
            let var = lit.unsigned_abs() as usize;
            if lit > 0 {
                literal_edges.insert(positive_vertex(var), c);
            } else {
                literal_edges.insert(c, negative_vertex(var));
            }
        }
        let [a, b, c] = [1, 2, 3].map(|l| clause_vertex(n, j, l));
        clause_edges.insert(a, b);
        clause_edges.insert(b, c);
        clause_edges.insert(a, c);
    }
    let edges = literal_edges.union(&clause_edges);
    let mut closure = edges.clone();
    closure.close();
    let complement = closure.difference(&edges);
    complement.check_transitive()?;
    Ok(Gadget {
        cnf: f,
        names,
        literal_edges,
        clause_edges,
        edges,
        closure,
        complement,
    })
}

/// MaxCMS instance whose optimum equals the gadget's maximum independent set.
pub fn gadget_to_instance(g: &Gadget) -> Result<Instance> {
    let weights: Vec<Rational> = vec![int(1); g.vertex_count()];
    quotient_reduce(&weights, &g.preorder(), &g.order())
}
