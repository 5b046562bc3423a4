//! The invariant suite run by `gamehodge verify`: decomposition identities,
//! projections, equilibrium transfer and the Pareto transform, each reported
//! with its measured violation.

use serde::{Deserialize, Serialize};

use crate::decompose::{
    closest_harmonic, closest_potential, decompose_on, game_norm, is_harmonic, is_potential,
};
use crate::equilibria::{
    epsilon_equilibria_indices, epsilon_transfer_bound, harmonic_indifference_checks,
    is_mixed_nash, pareto_align_transform, pareto_optimal_indices, pure_nash_indices,
    uniformly_mixed,
};
use crate::error::Result;
use crate::game::Game;
use crate::graph::GameGraph;
use crate::solver::DEFAULT_SOLVER_TOL;
use crate::subspaces::verify_normalized_harmonic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured violation, or `None` for purely logical checks.
    pub value: Option<f64>,
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn measure(&mut self, name: &str, value: f64, threshold: f64) {
        self.checks.push(Check {
            name: name.into(),
            passed: value <= threshold,
            value: Some(value),
            threshold: Some(threshold),
        });
    }

    fn assert(&mut self, name: &str, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            value: None,
            threshold: None,
        });
    }
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Runs every invariant on `g`. Absolute thresholds are `tol` scaled by
/// `max(1, max|u|)`; norm identities are relative.
pub fn verify_game(g: &Game, tol: f64) -> Result<VerificationReport> {
    let graph = GameGraph::from_shape(g.shape().clone());
    let scale = g.max_abs().max(1.0);
    let abs = tol * scale;
    let solver_tol = tol.min(DEFAULT_SOLVER_TOL);
    let mut s = Suite::default();

    let d = decompose_on(&graph, g, solver_tol)?;
    s.measure("reconstruction", d.residuals.reconstruction, abs);
    s.assert(
        "components normalized",
        d.potential.is_normalized(abs) && d.harmonic.is_normalized(abs),
    );
    let grad = graph.gradient(&d.phi)?;
    let pot_flow = graph.pairwise_comparison(&d.potential)?;
    s.measure("potential flow is gradient of phi", pot_flow.sub(&grad).max_abs(), abs);
    s.measure("harmonic flow divergence", d.residuals.harmonic_divergence, abs);
    let ns_flow = graph.pairwise_comparison(&d.nonstrategic)?;
    s.measure("nonstrategic flow", ns_flow.max_abs(), abs);
    s.measure("curl of game flow", d.residuals.curl, abs);
    let game_flow = graph.pairwise_comparison(g)?;
    let harm_flow = graph.pairwise_comparison(&d.harmonic)?;
    s.measure(
        "gradient plus harmonic flow",
        grad.add(&harm_flow).sub(&game_flow).max_abs(),
        abs,
    );

    let total = game_norm(g).powi(2);
    let parts = game_norm(&d.potential).powi(2)
        + game_norm(&d.harmonic).powi(2)
        + game_norm(&d.nonstrategic).powi(2);
    s.measure("pythagorean identity", (total - parts).abs() / total.max(1e-300), 1e-8);

    let dp = decompose_on(&graph, &d.potential, solver_tol)?;
    let dh = decompose_on(&graph, &d.harmonic, solver_tol)?;
    let dn = decompose_on(&graph, &d.nonstrategic, solver_tol)?;
    s.measure(
        "idempotence",
        max_abs([
            dp.harmonic.max_abs(),
            dp.nonstrategic.max_abs(),
            dp.potential.max_abs_diff(&d.potential)?,
            dh.potential.max_abs(),
            dh.nonstrategic.max_abs(),
            dh.harmonic.max_abs_diff(&d.harmonic)?,
            dn.potential.max_abs(),
            dn.harmonic.max_abs(),
            dn.nonstrategic.max_abs_diff(&d.nonstrategic)?,
        ]),
        abs,
    );

    let dnorm = decompose_on(&graph, &g.normalize(), solver_tol)?;
    s.measure(
        "strategic equivalence",
        dnorm
            .potential
            .max_abs_diff(&d.potential)?
            .max(dnorm.harmonic.max_abs_diff(&d.harmonic)?),
        abs,
    );
    s.assert(
        "harmonic part is normalized harmonic",
        verify_normalized_harmonic(&d.harmonic, tol),
    );
    s.assert("closest potential is potential", is_potential(&closest_potential(g)?, tol)?);
    s.assert("closest harmonic is harmonic", is_harmonic(&closest_harmonic(g)?, tol)?);

    let bound = epsilon_transfer_bound(g)?;
    let approx = epsilon_equilibria_indices(g, bound.eps_bound + abs)?;
    s.assert(
        "closest potential equilibria are eps-equilibria",
        pure_nash_indices(&bound.closest_potential)
            .iter()
            .all(|p| approx.binary_search(p).is_ok()),
    );

    let nash = pure_nash_indices(g);
    if is_harmonic(g, tol)? {
        s.assert(
            "uniform profile is mixed equilibrium",
            is_mixed_nash(g, &uniformly_mixed(g), abs)?,
        );
        s.assert(
            "harmonic flux and indifference",
            harmonic_indifference_checks(&g.normalize(), tol).holds(),
        );
    }

    let t = pareto_align_transform(g);
    let t_flow = graph.pairwise_comparison(&t)?;
    s.measure("pareto transform preserves comparisons", t_flow.sub(&game_flow).max_abs(), abs);
    if !nash.is_empty() {
        s.assert(
            "pareto transform aligns equilibria",
            pure_nash_indices(&t) == pareto_optimal_indices(&t),
        );
    }

    let passed = s.checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        passed,
        checks: s.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_games_verify() {
        for g in [
            catalog::battle_of_sexes(),
            catalog::matching_pennies(),
            catalog::generalized_rps(2.0, 1.0, 3.0),
            catalog::road_sharing(),
            catalog::cyclic_three_player(),
        ] {
            let r = verify_game(&g, 1e-9).unwrap();
            let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
            assert!(r.passed, "{failed:?}");
        }
    }
}
