use gamehodge::equilibria::{
    correlated_deviation_gains, deviation_payoffs, epsilon_equilibria_indices,
    harmonic_indifference_checks, pareto_optimal_indices, pure_nash_indices, CorrelatedBounds,
};
use gamehodge::random::{random_game, random_harmonic, random_potential, rng};
use gamehodge::solver::DEFAULT_SOLVER_TOL;
use gamehodge::subspaces::nonstrategic_basis;
use gamehodge::{
    decompose, epsilon_transfer_bound, harmonic_correlated_system, is_correlated_equilibrium,
    is_mixed_nash, pareto_align_transform, pure_nash, uniformly_mixed, Game, GameGraph,
    JointDistribution, MixedProfile, Shape, DEFAULT_TOL,
};
use proptest::prelude::*;
use rand::Rng;

const SHAPES: [&[usize]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];

fn shape(i: usize) -> Shape {
    Shape::new(SHAPES[i % SHAPES.len()]).unwrap()
}

#[test]
fn potential_games_have_pure_equilibria_at_argmax_phi() {
    let mut r = rng(41);
    for i in 0..100 {
        let g = random_potential(&shape(i), &mut r).unwrap();
        let phi = decompose(&g, DEFAULT_SOLVER_TOL).unwrap().phi;
        let argmax = (0..phi.len())
            .max_by(|&a, &b| phi[a].total_cmp(&phi[b]))
            .unwrap();
        let ne = pure_nash_indices(&g);
        assert!(!ne.is_empty());
        // φ is exact up to round-off, so compare with a tolerance
        let eps = epsilon_equilibria_indices(&g, 1e-9).unwrap();
        assert!(eps.contains(&argmax), "game {i}");
    }
}

#[test]
fn random_harmonic_games_have_no_pure_equilibria() {
    // zero-probability event for continuous coordinates; seed fixed
    let mut r = rng(42);
    for i in 0..100 {
        let g = random_harmonic(&shape(i), &mut r).unwrap();
        assert!(pure_nash(&g).is_empty(), "game {i}");
    }
}

#[test]
fn uniform_profile_makes_harmonic_players_indifferent() {
    let mut r = rng(43);
    for i in 0..100 {
        let g = random_harmonic(&shape(i), &mut r).unwrap();
        let x = uniformly_mixed(&g);
        assert!(is_mixed_nash(&g, &x, 1e-9).unwrap());
        for m in 0..g.num_players() {
            let dev = deviation_payoffs(&g, m, &x).unwrap();
            let spread = dev.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
                - dev.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            assert!(spread < 1e-9);
        }
    }
}

#[test]
fn correlated_equilibria_of_harmonic_games_satisfy_equalities() {
    // unnormalized harmonic games: every deviation gain vanishes at the uniform distribution
    let mut r = rng(44);
    for i in 0..40 {
        let s = shape(i);
        let ns = nonstrategic_basis(s.counts()).unwrap();
        let mut g = random_harmonic(&s, &mut r).unwrap();
        for e in ns.elements() {
            g = g.linear_combination(1.0, e, r.random_range(-1.0..=1.0)).unwrap();
        }
        let x = JointDistribution::uniform(s.len());
        assert!(is_correlated_equilibrium(&g, &x, 1e-9).unwrap());
        let gains = correlated_deviation_gains(&g, &x).unwrap();
        assert!(gains.iter().flatten().flatten().all(|v| v.abs() < 1e-9));
    }
}

#[test]
fn correlated_dimensions_for_two_players() {
    let mut r = rng(45);
    for (h, expected) in [([2usize, 2usize], 0usize), ([2, 3], 1), ([3, 2], 1), ([2, 4], 2), ([3, 3], 0)] {
        let s = Shape::new(&h).unwrap();
        let g = random_harmonic(&s, &mut r).unwrap();
        let set = harmonic_correlated_system(&g, DEFAULT_TOL).unwrap();
        assert_eq!(set.dimension, expected, "{h:?}");
        assert_eq!(set.generators.len(), expected);
        assert!(set.violation(&set.particular) < 1e-9);
    }
}

#[test]
fn correlated_bounds_for_three_players() {
    let s = Shape::new(&[3, 3, 3]).unwrap();
    let g = random_harmonic(&s, &mut rng(46)).unwrap();
    let set = harmonic_correlated_system(&g, DEFAULT_TOL).unwrap();
    let b = set.bounds.expect("equal counts, three players");
    assert_eq!(b, CorrelatedBounds::for_equal_counts(3, 3));
    assert!(b.separates());
    assert!(set.dimension as i64 >= b.correlated_lower);
}

#[test]
fn harmonic_flux_identity_on_basis_span() {
    let mut r = rng(47);
    for i in 0..50 {
        let s = Shape::new(if i % 2 == 0 { &[2, 3] } else { &[3, 4] }).unwrap();
        let g = random_harmonic(&s, &mut r).unwrap();
        let report = harmonic_indifference_checks(&g, 1e-9);
        assert!(report.holds(), "{report:?}");
    }
}

#[test]
fn transfer_bound_containment() {
    let mut r = rng(48);
    for i in 0..100 {
        let s = Shape::new(if i % 2 == 0 { &[2, 2] } else { &[2, 3] }).unwrap();
        let g = random_game(&s, &mut r);
        let b = epsilon_transfer_bound(&g).unwrap();
        let approx = epsilon_equilibria_indices(&g, b.eps_bound).unwrap();
        for p in pure_nash_indices(&b.closest_potential) {
            assert!(approx.contains(&p));
        }
    }
}

#[test]
fn pareto_transform_preserves_comparisons_and_aligns_when_equilibria_exist() {
    let mut r = rng(49);
    let mut aligned = 0;
    for i in 0..50 {
        let s = Shape::new([&[2usize, 2][..], &[2, 3], &[2, 2, 2]][i % 3]).unwrap();
        let graph = GameGraph::from_shape(s.clone());
        let g = random_game(&s, &mut r);
        let t = pareto_align_transform(&g);
        let drift = graph
            .pairwise_comparison(&t)
            .unwrap()
            .sub(&graph.pairwise_comparison(&g).unwrap())
            .max_abs();
        assert!(drift < 1e-9);
        let ne = pure_nash_indices(&g);
        assert_eq!(pure_nash_indices(&t), ne);
        if ne.is_empty() {
            // no equilibrium: the Pareto set is never empty, so alignment is impossible
            assert!(!pareto_optimal_indices(&t).is_empty());
        } else {
            assert_eq!(ne, pareto_optimal_indices(&t));
            for &p in &ne {
                assert!((0..t.num_players()).all(|m| t.utility_at(m, p) == 0.0));
            }
            aligned += 1;
        }
    }
    assert!(aligned > 0);
}

fn add_random_nonstrategic(g: &Game, seed: u64) -> Game {
    let mut r = rng(seed);
    let mut out = g.clone();
    for e in nonstrategic_basis(g.strategy_counts()).unwrap().elements() {
        out = out.linear_combination(1.0, e, r.random_range(-3.0..=3.0)).unwrap();
    }
    out
}

proptest! {
    #[test]
    fn epsilon_sets_are_monotone(seed in any::<u64>(), which in 0usize..4, e1 in 0.0f64..2.0, e2 in 0.0f64..2.0) {
        let g = random_game(&shape(which), &mut rng(seed));
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let small = epsilon_equilibria_indices(&g, lo).unwrap();
        let large = epsilon_equilibria_indices(&g, hi).unwrap();
        prop_assert!(small.iter().all(|p| large.contains(p)));
    }

    #[test]
    fn equilibria_ignore_nonstrategic_shifts(seed in any::<u64>(), which in 0usize..4) {
        let s = shape(which);
        let g = random_game(&s, &mut rng(seed));
        let shifted = add_random_nonstrategic(&g, seed ^ 5);
        prop_assert_eq!(pure_nash_indices(&g), pure_nash_indices(&shifted));
        let mut r = rng(seed ^ 9);
        let strategies: Vec<Vec<f64>> = s.counts().iter().map(|&h| {
            let w: Vec<f64> = (0..h).map(|_| r.random_range(0.0..1.0)).collect();
            let t: f64 = w.iter().sum();
            w.into_iter().map(|v| v / t).collect()
        }).collect();
        // renormalize so the last entry absorbs rounding
        let strategies: Vec<Vec<f64>> = strategies.into_iter().map(|mut v| {
            let head: f64 = v[..v.len() - 1].iter().sum();
            let last = v.len() - 1;
            v[last] = (1.0 - head).max(0.0);
            v
        }).collect();
        let x = MixedProfile::new(strategies).unwrap();
        prop_assert_eq!(is_mixed_nash(&g, &x, 1e-9).unwrap(), is_mixed_nash(&shifted, &x, 1e-9).unwrap());
        let joint = x.to_joint(&g).unwrap();
        prop_assert_eq!(
            is_correlated_equilibrium(&g, &joint, 1e-9).unwrap(),
            is_correlated_equilibrium(&shifted, &joint, 1e-9).unwrap()
        );
    }
}
