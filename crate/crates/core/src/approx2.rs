//! Approximation for label orders of dimension two.
//!
//! With the conflict edges split into two transitive parts `G1`, `G2`, the
//! heaviest independent set is the maximum of the bilinear form
//! `psi(x, y) = Σ w_v x_v y_v` over `P(G1) × P(G2)`, where `P(G)` is the
//! path polytope of a part. The solver maximizes the concave surrogate
//!
//! ```text
//! phi(x, y) = Σ w_v ((x_v + y_v) / 2 - (x_v - y_v)² / 2)
//! ```
//!
//! which agrees with `psi` on boolean points and dominates its maximum,
//! to within a certified `epsilon`, then rounds with two calls to the
//! linear oracles of the parts.

use crate::error::{Error, Result};
use crate::exact::brute_force_is_with_limit;
use crate::flow::PartOracle;
use crate::instance::Instance;
use crate::rational::{self, frac, Rational};
use crate::specgraph::{decompose_edges, SpecialGraph};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Step sizes are rounded down to multiples of `2^-GRID_BITS`, which keeps
/// every iterate on a fixed dyadic grid.
pub const GRID_BITS: u32 = 64;
pub const HARD_ITERATION_CAP: usize = 1_000_000;

pub fn default_epsilon() -> Rational {
    frac(1, 16)
}

fn check_lengths(x: &[Rational], y: &[Rational], w: &[Rational]) -> Result<()> {
    for found in [x.len(), y.len()] {
        if found != w.len() {
            return Err(Error::LengthMismatch {
                expected: w.len(),
                found,
            });
        }
    }
    Ok(())
}

fn half() -> Rational {
    frac(1, 2)
}

/// `Σ w_v x_v y_v`.
pub fn psi(x: &[Rational], y: &[Rational], w: &[Rational]) -> Result<Rational> {
    check_lengths(x, y, w)?;
    Ok(x.iter()
        .zip(y)
        .zip(w)
        .fold(Rational::zero(), |acc, ((a, b), c)| acc + c * a * b))
}

/// `½ Σ w_v ((x_v + y_v)² - (x_v + y_v))`.
pub fn gamma(x: &[Rational], y: &[Rational], w: &[Rational]) -> Result<Rational> {
    check_lengths(x, y, w)?;
    let sum = x
        .iter()
        .zip(y)
        .zip(w)
        .fold(Rational::zero(), |acc, ((a, b), c)| {
            let s = a + b;
            acc + c * (&s * &s - &s)
        });
    Ok(sum * half())
}

/// `-½ Σ w_v ((x_v - y_v)² - (x_v + y_v))`.
pub fn phi_concave(x: &[Rational], y: &[Rational], w: &[Rational]) -> Result<Rational> {
    check_lengths(x, y, w)?;
    let sum = x
        .iter()
        .zip(y)
        .zip(w)
        .fold(Rational::zero(), |acc, ((a, b), c)| {
            let d = a - b;
            acc + c * (&d * &d - (a + b))
        });
    Ok(-sum * half())
}

/// Partial derivatives of [`phi_concave`]:
/// `∂/∂x_v = w_v (y_v - x_v + ½)`, `∂/∂y_v = w_v (x_v - y_v + ½)`.
pub fn phi_gradient(
    x: &[Rational],
    y: &[Rational],
    w: &[Rational],
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_lengths(x, y, w)?;
    let h = half();
    Ok(x.iter()
        .zip(y)
        .zip(w)
        .map(|((a, b), c)| (c * (b - a + &h), c * (a - b + &h)))
        .unzip())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxationPoint {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub psi: Rational,
    pub gamma: Rational,
    pub phi: Rational,
}

impl RelaxationPoint {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, w: &[Rational]) -> Result<Self> {
        Ok(RelaxationPoint {
            psi: psi(&x, &y, w)?,
            gamma: gamma(&x, &y, w)?,
            phi: phi_concave(&x, &y, w)?,
            x,
            y,
        })
    }
}

/// Lowers the larger coordinate wherever `|x_v - y_v| > ½` so the gap is
/// exactly ½. Both polytopes are downward closed, so feasibility is kept,
/// and each clamped coordinate raises phi by `½ w_v (|x_v - y_v| - ½)²`.
pub fn clamp_box(x: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let h = half();
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            if a - b > h {
                (b + &h, b.clone())
            } else if b - a > h {
                (a.clone(), a + &h)
            } else {
                (a.clone(), b.clone())
            }
        })
        .unzip()
}

/// The two part oracles of a graph split into exactly two transitive parts.
#[derive(Clone, Debug)]
pub struct PairOracles {
    pub first: PartOracle,
    pub second: PartOracle,
}

impl PairOracles {
    pub fn new(g: &SpecialGraph) -> Result<Self> {
        let parts = g.parts().ok_or(Error::MissingRealizer)?;
        if parts.len() != 2 {
            return Err(Error::WrongPartCount {
                expected: 2,
                found: parts.len(),
            });
        }
        Ok(PairOracles {
            first: PartOracle::new(&parts[0])?,
            second: PartOracle::new(&parts[1])?,
        })
    }

    pub fn contains(&self, x: &[Rational], y: &[Rational]) -> Result<bool> {
        Ok(self.first.membership(x)?.is_inside() && self.second.membership(y)?.is_inside())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolverOptions {
    /// Overrides the default budget `ceil(8 C / epsilon)`, `C = 2 max_v w_v n`.
    pub max_iterations: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonSolution {
    /// Clamped point; `phi` here is at least `phi` at the certified iterate.
    pub point: RelaxationPoint,
    /// Frank-Wolfe duality gap at the final iterate, an upper bound on
    /// `max phi - phi(point)`.
    pub gap: Rational,
    pub epsilon: Rational,
    pub iterations: usize,
}

pub fn iteration_budget(w: &[Rational], epsilon: &Rational) -> usize {
    let n = w.len().max(1);
    let max_w = rational::max_abs(w);
    let curvature = Rational::from_integer(BigInt::from(2 * n)) * max_w;
    let raw = (Rational::from_integer(BigInt::from(8)) * curvature / epsilon).ceil();
    raw.to_integer()
        .to_usize()
        .unwrap_or(HARD_ITERATION_CAP)
        .clamp(1, HARD_ITERATION_CAP)
}

pub fn epsilon_solve(g: &SpecialGraph, epsilon: &Rational) -> Result<EpsilonSolution> {
    epsilon_solve_with(g, epsilon, &SolverOptions::default())
}

/// Maximizes phi over `P(G1) × P(G2)` to a certified duality gap
/// `<= epsilon`, using pairwise conditional-gradient steps with exact line
/// search. The iterate is kept as a convex combination of boolean vertex
/// pairs returned by the flow oracles.
pub fn epsilon_solve_with(
    g: &SpecialGraph,
    epsilon: &Rational,
    options: &SolverOptions,
) -> Result<EpsilonSolution> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let oracles = PairOracles::new(g)?;
    let w = g.weights();
    let n = w.len();
    let budget = options
        .max_iterations
        .unwrap_or_else(|| iteration_budget(w, epsilon))
        .min(HARD_ITERATION_CAP);

    let zeros = vec![Rational::zero(); n];
    let (gx, gy) = phi_gradient(&zeros, &zeros, w)?;
    let start = (
        oracles.first.linear_oracle(&gx)?,
        oracles.second.linear_oracle(&gy)?,
    );
    let mut x = indicator(&start.0);
    let mut y = indicator(&start.1);
    let mut active: Vec<(Vec<bool>, Vec<bool>, Rational)> =
        vec![(start.0, start.1, Rational::one())];

    let mut iterations = 0usize;
    loop {
        let (gx, gy) = phi_gradient(&x, &y, w)?;
        let sx = oracles.first.linear_oracle(&gx)?;
        let sy = oracles.second.linear_oracle(&gy)?;
        let at_iterate = dot(&gx, &x) + dot(&gy, &y);
        let gap = dot_bool(&gx, &sx) + dot_bool(&gy, &sy) - &at_iterate;
        if gap <= *epsilon {
            let (cx, cy) = clamp_box(&x, &y);
            return Ok(EpsilonSolution {
                point: RelaxationPoint::new(cx, cy, w)?,
                gap,
                epsilon: epsilon.clone(),
                iterations,
            });
        }
        if iterations >= budget {
            return Err(Error::BudgetExhausted {
                iterations,
                gap: rational::format(&gap),
            });
        }
        iterations += 1;

        // away vertex: the active pair with the smallest linear score
        let away = active
            .iter()
            .enumerate()
            .map(|(k, (ax, ay, _))| (k, dot_bool(&gx, ax) + dot_bool(&gy, ay)))
            .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
            .map(|(k, _)| k)
            .expect("active set is never empty");
        let (ax, ay, lambda_away) = active[away].clone();
        let dx: Vec<Rational> = sx.iter().zip(&ax).map(|(s, a)| bool_diff(*s, *a)).collect();
        let dy: Vec<Rational> = sy.iter().zip(&ay).map(|(s, a)| bool_diff(*s, *a)).collect();
        let slope = dot(&gx, &dx) + dot(&gy, &dy);
        let curvature = dx
            .iter()
            .zip(&dy)
            .zip(w)
            .fold(Rational::zero(), |acc, ((a, b), c)| {
                let d = a - b;
                acc + c * &d * &d
            });
        let mut step = if curvature.is_positive() {
            let unconstrained = &slope / &curvature;
            if unconstrained < lambda_away {
                unconstrained
            } else {
                lambda_away.clone()
            }
        } else {
            lambda_away.clone()
        };
        if step < lambda_away {
            let rounded = rational::floor_dyadic(&step, GRID_BITS);
            if rounded.is_positive() {
                step = rounded;
            }
        }

        for (v, d) in x.iter_mut().zip(&dx) {
            *v += &step * d;
        }
        for (v, d) in y.iter_mut().zip(&dy) {
            *v += &step * d;
        }
        active[away].2 -= &step;
        match active.iter().position(|(px, py, _)| *px == sx && *py == sy) {
            Some(k) => active[k].2 += &step,
            None => active.push((sx, sy, step)),
        }
        active.retain(|(_, _, l)| l.is_positive());
    }
}

fn indicator(set: &[bool]) -> Vec<Rational> {
    set.iter()
        .map(|&b| if b { Rational::one() } else { Rational::zero() })
        .collect()
}

fn bool_diff(s: bool, a: bool) -> Rational {
    match (s, a) {
        (true, false) => Rational::one(),
        (false, true) => -Rational::one(),
        _ => Rational::zero(),
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

fn dot_bool(a: &[Rational], b: &[bool]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(_, s)| **s)
        .fold(Rational::zero(), |acc, (p, _)| acc + p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounding {
    pub x_star: Vec<bool>,
    pub y_star: Vec<bool>,
    /// Sorted vertices with `x*_v = y*_v = 1`.
    pub kept: Vec<usize>,
    pub kept_weight: Rational,
}

/// `x* = argmax_x psi(x, y')` over `P(G1)`, then `y* = argmax_y psi(x*, y)`
/// over `P(G2)`; both are boolean and psi never decreases along the way.
pub fn round_solution(g: &SpecialGraph, x: &[Rational], y: &[Rational]) -> Result<Rounding> {
    let oracles = PairOracles::new(g)?;
    round_with(&oracles, g.weights(), x, y)
}

fn round_with(
    oracles: &PairOracles,
    w: &[Rational],
    x: &[Rational],
    y: &[Rational],
) -> Result<Rounding> {
    check_lengths(x, y, w)?;
    let cx: Vec<Rational> = w.iter().zip(y).map(|(a, b)| a * b).collect();
    let x_star = oracles.first.linear_oracle(&cx)?;
    let cy: Vec<Rational> = w
        .iter()
        .zip(&x_star)
        .map(|(a, &b)| if b { a.clone() } else { Rational::zero() })
        .collect();
    let y_star = oracles.second.linear_oracle(&cy)?;
    let kept: Vec<usize> = (0..w.len()).filter(|&v| x_star[v] && y_star[v]).collect();
    let kept_weight = kept.iter().fold(Rational::zero(), |acc, &v| acc + &w[v]);
    Ok(Rounding {
        x_star,
        y_star,
        kept,
        kept_weight,
    })
}

/// Upper bound on `OPT - kept_weight` given `alpha = phi(x', y') / W`:
///
/// * `(¼ - (alpha - ½)²) W + epsilon` for `alpha >= ½`,
/// * `¼ W + epsilon` for `3/8 <= alpha <= ½`,
/// * `(¼ - (alpha - 3/8)²) W + epsilon` for `alpha <= 3/8`.
pub fn approximation_bound(
    alpha: &Rational,
    total: &Rational,
    epsilon: &Rational,
) -> Result<Rational> {
    if alpha.is_negative() || *alpha > Rational::one() {
        return Err(Error::AlphaOutOfRange(rational::format(alpha)));
    }
    let quarter = frac(1, 4);
    let three_eighths = frac(3, 8);
    let h = half();
    let coefficient = if *alpha >= h {
        let d = alpha - &h;
        &quarter - &d * &d
    } else if *alpha >= three_eighths {
        quarter
    } else {
        let d = alpha - &three_eighths;
        &quarter - &d * &d
    };
    Ok(coefficient * total + epsilon)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxReport {
    pub total_weight: Rational,
    pub alpha: Rational,
    pub epsilon: Rational,
    pub gap: Rational,
    pub bound: Rational,
    pub kept_weight: Rational,
    pub removed_weight: Rational,
    /// `OPT / W`, when an exact optimum is known.
    pub alpha_prime: Option<Rational>,
    /// `W - OPT`, when an exact optimum is known.
    pub delta: Option<Rational>,
}

impl ApproxReport {
    /// `removed <= (1 + alpha') Δ + epsilon`, meaningful when `alpha' >= ½`.
    pub fn ratio_holds(&self) -> Option<bool> {
        let (ap, delta) = (self.alpha_prime.as_ref()?, self.delta.as_ref()?);
        if *ap < half() {
            return None;
        }
        Some(self.removed_weight <= (Rational::one() + ap) * delta + &self.epsilon)
    }

    /// `removed - Δ <= ¼ W + epsilon`.
    pub fn quarter_holds(&self) -> Option<bool> {
        let delta = self.delta.as_ref()?;
        Some(&self.removed_weight - delta <= frac(1, 4) * &self.total_weight + &self.epsilon)
    }

    /// `OPT - kept <= bound`.
    pub fn bound_holds(&self) -> Option<bool> {
        let delta = self.delta.as_ref()?;
        let opt = &self.total_weight - delta;
        Some(opt - &self.kept_weight <= self.bound)
    }
}

pub fn report(
    g: &SpecialGraph,
    solution: &EpsilonSolution,
    rounding: &Rounding,
    optimum: Option<&Rational>,
) -> Result<ApproxReport> {
    let total = g.total_weight();
    let alpha = if total.is_zero() {
        Rational::one()
    } else {
        &solution.point.phi / &total
    };
    let bound = approximation_bound(&alpha, &total, &solution.epsilon)?;
    Ok(ApproxReport {
        alpha_prime: optimum.map(|o| {
            if total.is_zero() {
                Rational::one()
            } else {
                o / &total
            }
        }),
        delta: optimum.map(|o| &total - o),
        removed_weight: &total - &rounding.kept_weight,
        kept_weight: rounding.kept_weight.clone(),
        total_weight: total,
        alpha,
        epsilon: solution.epsilon.clone(),
        gap: solution.gap.clone(),
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx2Solution {
    pub relaxation: EpsilonSolution,
    pub rounding: Rounding,
    pub report: ApproxReport,
}

/// Relax, round and report. When the graph has at most `exact_limit`
/// vertices the exact optimum is computed for the report.
pub fn solve_graph(
    g: &SpecialGraph,
    epsilon: &Rational,
    exact_limit: usize,
) -> Result<Approx2Solution> {
    let relaxation = epsilon_solve(g, epsilon)?;
    let oracles = PairOracles::new(g)?;
    let rounding = round_with(
        &oracles,
        g.weights(),
        &relaxation.point.x,
        &relaxation.point.y,
    )?;
    let optimum = if g.len() <= exact_limit {
        Some(brute_force_is_with_limit(g, exact_limit)?.best_weight)
    } else {
        None
    };
    let report = report(g, &relaxation, &rounding, optimum.as_ref())?;
    Ok(Approx2Solution {
        relaxation,
        rounding,
        report,
    })
}

/// Instance-level entry point; the instance needs a realizer of dimension 2.
pub fn solve_instance(
    inst: &Instance,
    epsilon: &Rational,
    exact_limit: usize,
) -> Result<Approx2Solution> {
    let dimension = inst.realizer().ok_or(Error::MissingRealizer)?.dimension();
    if dimension != 2 {
        return Err(Error::WrongPartCount {
            expected: 2,
            found: dimension,
        });
    }
    solve_graph(&decompose_edges(inst)?, epsilon, exact_limit)
}
