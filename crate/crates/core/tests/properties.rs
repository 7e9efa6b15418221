use monocms_core::approx2::{
    clamp_box, phi_concave, phi_gradient, psi, round_solution, PairOracles,
};
use monocms_core::flow::{min_flow, Membership, PartOracle, SINK, SOURCE};
use monocms_core::generate::{random_dataset, random_instance, random_poset_instance, DatasetSpec};
use monocms_core::rational::{frac, to_f64, Rational};
use monocms_core::{
    brute_force_is, brute_force_maxcms, build_gadget, build_special_graph, decompose_edges,
    is_acceptable, monotone_extension, quotient_reduce, sat_check_brute, solve_total_order, Cnf3,
    Lattice, Poset, Preorder, Relation, SpecialGraph,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn dimension_two_graph(seed: u64) -> SpecialGraph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=8);
    let m = r.gen_range(2..=5);
    decompose_edges(&random_instance(n, m, 2, 0.4, &mut r)).unwrap()
}

/// A point of `P(part)` built as a convex combination of oracle vertices.
fn random_feasible(oracle: &PartOracle, rng: &mut impl Rng) -> Vec<Rational> {
    let n = oracle.len();
    let mut point = vec![Rational::zero(); n];
    let mut remaining = Rational::from_integer(1.into());
    for _ in 0..3 {
        let c: Vec<Rational> = (0..n).map(|_| frac(rng.gen_range(-2..10), 1)).collect();
        let vertex = oracle.linear_oracle(&c).unwrap();
        let share = &remaining * frac(rng.gen_range(0..=8), 8);
        remaining -= &share;
        for (p, &on) in point.iter_mut().zip(&vertex) {
            if on {
                *p += &share;
            }
        }
    }
    point
}

fn random_pair(g: &SpecialGraph, rng: &mut impl Rng) -> (Vec<Rational>, Vec<Rational>) {
    let oracles = PairOracles::new(g).unwrap();
    (
        random_feasible(&oracles.first, rng),
        random_feasible(&oracles.second, rng),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independence_is_acceptability(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(0..=10);
        let inst = random_poset_instance(n, r.gen_range(1..=4), 0.4, &mut r);
        let g = build_special_graph(&inst);
        for _ in 0..20 {
            let s = random_subset(n, &mut r);
            prop_assert_eq!(g.is_independent(&s), is_acceptable(&inst, &s).unwrap());
        }
    }

    #[test]
    fn acceptability_is_pairwise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(0..=8);
        let inst = random_poset_instance(n, 3, 0.5, &mut r);
        let s = random_subset(n, &mut r);
        let pairwise = s.iter().all(|&a| s.iter().all(|&b| is_acceptable(&inst, &[a, b]).unwrap()));
        prop_assert_eq!(pairwise, is_acceptable(&inst, &s).unwrap());
    }

    #[test]
    fn parts_are_transitive_and_cover_edges(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=3);
        let inst = random_instance(r.gen_range(1..=10), 4, d, 0.4, &mut r);
        let g = decompose_edges(&inst).unwrap();
        let parts = g.parts().unwrap();
        prop_assert_eq!(parts.len(), d);
        let mut union = Relation::empty(inst.len());
        for p in parts {
            prop_assert!(p.is_transitive());
            prop_assert_eq!(&p.difference(g.edges()), &Relation::empty(inst.len()));
            union = union.union(p);
        }
        prop_assert_eq!(&union, g.edges());
    }

    #[test]
    fn flow_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(r.gen_range(0..=10), r.gen_range(1..=4), 1, 0.5, &mut r);
        let flow = solve_total_order(&inst).unwrap();
        prop_assert!(is_acceptable(&inst, &flow.kept).unwrap());
        prop_assert_eq!(inst.weight_of(&flow.kept), flow.kept_weight.clone());
        prop_assert_eq!(flow.kept_weight, brute_force_maxcms(&inst).unwrap().best_weight);
    }

    #[test]
    fn min_flow_is_feasible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(r.gen_range(1..=9), 3, 1, 0.5, &mut r);
        let g = build_special_graph(&inst);
        let net = PartOracle::new(g.edges()).unwrap().network(g.weights()).unwrap();
        prop_assert!(net.check_structure());
        let result = min_flow(&net);
        let mut balance = vec![Rational::zero(); net.node_count()];
        for (arc, f) in net.arcs().iter().zip(&result.flow) {
            prop_assert!(*f >= arc.lower);
            balance[arc.from] -= f;
            balance[arc.to] += f;
        }
        for (node, b) in balance.iter().enumerate() {
            if node != SOURCE && node != SINK {
                prop_assert!(b.is_zero());
            }
        }
        prop_assert_eq!(&-balance[SOURCE].clone(), &result.value);
        prop_assert_eq!(&balance[SINK], &result.value);
    }

    #[test]
    fn oracle_vertices_are_members(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let oracles = PairOracles::new(&g).unwrap();
        for oracle in [&oracles.first, &oracles.second] {
            let c: Vec<Rational> = (0..g.len()).map(|_| frac(r.gen_range(-3..10), r.gen_range(1..4))).collect();
            let vertex = oracle.linear_oracle(&c).unwrap();
            let y: Vec<Rational> = vertex.iter().map(|&b| frac(b as i64, 1)).collect();
            prop_assert!(oracle.membership(&y).unwrap().is_inside());
            let set: Vec<usize> = (0..g.len()).filter(|&v| vertex[v]).collect();
            prop_assert!(set.iter().all(|&a| set.iter().all(|&b| !oracle.part().contains(a, b))));
        }
    }

    #[test]
    fn longest_path_matches_pairwise_relaxation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let n = g.len();
        let oracle = PartOracle::new(&g.parts().unwrap()[0]).unwrap();
        let y: Vec<Rational> = (0..n).map(|_| frac(r.gen_range(0..7), r.gen_range(1..5))).collect();
        // best[i][j]: heaviest path from i to j, counting both ends.
        let mut best: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for i in 0..n {
            best[i][i] = Some(y[i].clone());
            for j in oracle.part().successors(i) {
                best[i][j] = Some(&y[i] + &y[j]);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (&best[i][k], &best[k][j]) {
                        let via = a + b - &y[k];
                        if best[i][j].as_ref().is_none_or(|c| via > *c) {
                            best[i][j] = Some(via);
                        }
                    }
                }
            }
        }
        let expected = best.iter().flatten().flatten().max().cloned().unwrap_or_else(Rational::zero);
        let (length, path) = oracle.longest_path(&y).unwrap();
        prop_assert_eq!(&length, &expected);
        let along: Rational = path.iter().map(|&v| y[v].clone()).sum();
        prop_assert_eq!(along, length);
        prop_assert!(path.windows(2).all(|w| oracle.part().contains(w[0], w[1]) || oracle.part().contains(w[1], w[0])));
    }

    #[test]
    fn membership_reports_negative_and_long_paths(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let oracle = PartOracle::new(&g.parts().unwrap()[1]).unwrap();
        let y: Vec<Rational> = (0..g.len()).map(|_| frac(r.gen_range(-1..4), 4)).collect();
        match oracle.membership(&y).unwrap() {
            Membership::Inside => {
                prop_assert!(y.iter().all(|v| !v.is_negative()));
                prop_assert!(oracle.longest_path(&y).unwrap().0 <= frac(1, 1));
            }
            Membership::Negative(v) => prop_assert!(y[v].is_negative()),
            Membership::Path { vertices, length } => {
                prop_assert!(length > frac(1, 1));
                prop_assert_eq!(vertices.iter().map(|&v| y[v].clone()).sum::<Rational>(), length);
            }
        }
    }

    #[test]
    fn quotient_preserves_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let ge = monocms_core::generate::random_poset(n, 0.5, &mut r);
        let mut rel = Relation::identity(n);
        for i in 0..n {
            for j in 0..n {
                if r.gen_bool(0.25) {
                    rel.insert(i, j);
                }
            }
        }
        rel.close();
        let succ = Preorder::new(rel).unwrap();
        let weights: Vec<Rational> = (0..n).map(|_| frac(r.gen_range(1..9), r.gen_range(1..4))).collect();
        let edges = ge.strict().difference(succ.relation());
        let direct = brute_force_is(&SpecialGraph::new(weights.clone(), edges.clone(), None).unwrap()).unwrap();
        let inst = quotient_reduce(&weights, &succ, &ge).unwrap();
        let rebuilt = build_special_graph(&inst);
        prop_assert_eq!(rebuilt.edges(), &edges);
        prop_assert_eq!(brute_force_maxcms(&inst).unwrap().best_weight, direct.best_weight);
    }

    #[test]
    fn gadget_independence_matches_satisfiability(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=4);
        let f = Cnf3::random(n, r.gen_range(0..=4), &mut r).unwrap();
        let gadget = build_gadget(&f).unwrap();
        prop_assert!(gadget.complement().is_transitive());
        let best = brute_force_is(&gadget.graph()).unwrap().best_weight;
        let target = frac(gadget.independence_target() as i64, 1);
        prop_assert!(best <= target);
        prop_assert_eq!(sat_check_brute(&f).unwrap(), best == target);
    }

    #[test]
    fn monotone_extension_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = DatasetSpec { objects: r.gen_range(1..=9), labels: 2, dimension: 2, noise: 0.4, coord_range: 6 };
        let inst = random_dataset(&spec, &mut r).unwrap().instance().unwrap();
        let lattice = Lattice::from_poset(inst.label_order().clone()).unwrap();
        let accepted = brute_force_maxcms(&inst).unwrap().best_set;
        let ext = monotone_extension(&inst, &lattice, &accepted, lattice.bottom().unwrap()).unwrap();
        for &a in &accepted {
            prop_assert_eq!(ext[a], inst.label(a));
        }
        let order = inst.object_order();
        let labels = inst.label_order();
        for i in 0..inst.len() {
            for j in 0..inst.len() {
                if order.ge(i, j) {
                    prop_assert!(labels.ge(ext[i], ext[j]));
                }
            }
        }
    }

    #[test]
    fn clamp_is_feasible_and_never_lowers_phi(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let (x, y) = random_pair(&g, &mut r);
        let (cx, cy) = clamp_box(&x, &y);
        let oracles = PairOracles::new(&g).unwrap();
        prop_assert!(oracles.contains(&cx, &cy).unwrap());
        let half = frac(1, 2);
        for v in 0..g.len() {
            prop_assert!((&cx[v] - &cy[v]).abs() <= half);
            let w = [g.weights()[v].clone()];
            let before = phi_concave(&x[v..=v], &y[v..=v], &w).unwrap();
            let after = phi_concave(&cx[v..=v], &cy[v..=v], &w).unwrap();
            prop_assert!(after >= before);
        }
    }

    #[test]
    fn rounding_never_decreases_psi(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let (x, y) = random_pair(&g, &mut r);
        let w = g.weights();
        let rounded = round_solution(&g, &x, &y).unwrap();
        let xs: Vec<Rational> = rounded.x_star.iter().map(|&b| frac(b as i64, 1)).collect();
        let ys: Vec<Rational> = rounded.y_star.iter().map(|&b| frac(b as i64, 1)).collect();
        let start = psi(&x, &y, w).unwrap();
        let middle = psi(&xs, &y, w).unwrap();
        let end = psi(&xs, &ys, w).unwrap();
        prop_assert!(start <= middle && middle <= end);
        prop_assert_eq!(&end, &rounded.kept_weight);
        prop_assert!(g.is_independent(&rounded.kept));
    }

    #[test]
    fn gradient_matches_central_differences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = dimension_two_graph(seed);
        let (x, y) = random_pair(&g, &mut r);
        let w = g.weights();
        let (gx, gy) = phi_gradient(&x, &y, w).unwrap();
        let phi = |x: &[f64], y: &[f64]| -> f64 {
            x.iter().zip(y).zip(w).map(|((a, b), c)| to_f64(c) * ((a + b) / 2.0 - (a - b) * (a - b) / 2.0)).sum()
        };
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        let yf: Vec<f64> = y.iter().map(to_f64).collect();
        let h = 1.0 / 1024.0;
        for v in 0..g.len() {
            for (which, exact) in [(0, &gx[v]), (1, &gy[v])] {
                let (mut up, mut down) = ((xf.clone(), yf.clone()), (xf.clone(), yf.clone()));
                if which == 0 {
                    up.0[v] += h;
                    down.0[v] -= h;
                } else {
                    up.1[v] += h;
                    down.1[v] -= h;
                }
                let fd = (phi(&up.0, &up.1) - phi(&down.0, &down.1)) / (2.0 * h);
                let e = to_f64(exact);
                prop_assert!((fd - e).abs() <= 1e-9 * e.abs().max(1.0), "{} vs {}", fd, e);
            }
        }
    }
}

#[test]
fn unsatisfiable_formula_misses_the_target() {
    let clauses: Vec<[i64; 3]> = (0..8)
        .map(|bits: i64| [1, 2, 3].map(|v| if bits >> (v - 1) & 1 == 1 { -v } else { v }))
        .collect();
    let f = Cnf3::new(3, clauses).unwrap();
    assert!(!sat_check_brute(&f).unwrap());
    let gadget = build_gadget(&f).unwrap();
    assert_eq!(gadget.vertex_count(), 30);
    let best = monocms_core::exact::brute_force_is_with_limit(&gadget.graph(), 30)
        .unwrap()
        .best_weight;
    assert!(best < frac(gadget.independence_target() as i64, 1));
}

#[test]
fn chain_poset_orders_greatest_first() {
    let p = Poset::chain(&[2, 0, 1]).unwrap();
    assert!(p.ge(2, 0) && p.ge(0, 1) && p.ge(2, 1));
    assert!(!p.ge(1, 2));
}
