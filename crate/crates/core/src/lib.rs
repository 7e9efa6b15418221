//! Maximum-weight monotone subsets of labeled data.
//!
//! Given objects with a partial order, labels with a partial order and a
//! labeling, find the heaviest subset on which the labeling is monotone.
//! The crate provides the conflict-graph formulation, an exact brute-force
//! oracle, an exact min-flow solver for total label orders, a convex
//! relaxation with rounding for label orders of dimension two, and a
//! generator of hard instances from 3-CNF formulas.

pub mod approx2;
pub mod error;
pub mod exact;
pub mod flow;
pub mod generate;
pub mod instance;
pub mod order;
pub mod rational;
pub mod satgen;
pub mod specgraph;

pub use error::{Error, Result};
pub use exact::{brute_force_is, brute_force_maxcms, ExactResult};
pub use flow::{solve_total_order, PartOracle};
pub use instance::{is_acceptable, monotone_extension, Instance, Object};
pub use order::{transitive_closure, Lattice, Poset, Preorder, Relation, TotalOrderRealizer};
pub use rational::Rational;
pub use satgen::{build_gadget, gadget_to_instance, sat_check_brute, Cnf3, Gadget};
pub use specgraph::{build_special_graph, decompose_edges, quotient_reduce, SpecialGraph};
