//! Pure, approximate, mixed and correlated equilibria by enumeration, the
//! correlated-equilibrium equality system of normalized harmonic games,
//! Pareto optimality and the Pareto-aligning transform.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::decompose::{closest_potential, game_distance, is_harmonic};
use crate::error::{GameError, Result};
use crate::game::{Game, Profile};
use crate::linalg::{null_space, numeric_rank, RANK_TOL};

/// Largest number of profiles for which the dense correlated system is built.
pub const MAX_CORRELATED_PROFILES: usize = 4096;

const SIMPLEX_TOL: f64 = 1e-12;

fn check_simplex(v: &[f64], what: &str) -> Result<()> {
    if v.is_empty() {
        return Err(GameError::Invalid(format!("{what} is empty")));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(GameError::Invalid(format!("{what} has invalid entry {x}")));
    }
    let total: f64 = v.iter().sum();
    if (total - 1.0).abs() > SIMPLEX_TOL {
        return Err(GameError::Invalid(format!("{what} sums to {total}, not 1")));
    }
    Ok(())
}

/// One probability vector per player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedProfile {
    strategies: Vec<Vec<f64>>,
}

impl MixedProfile {
    pub fn new(strategies: Vec<Vec<f64>>) -> Result<Self> {
        for (m, x) in strategies.iter().enumerate() {
            check_simplex(x, &format!("mixed strategy of player {m}"))?;
        }
        Ok(MixedProfile { strategies })
    }

    pub fn strategies(&self) -> &[Vec<f64>] {
        &self.strategies
    }

    pub fn player(&self, m: usize) -> &[f64] {
        &self.strategies[m]
    }

    fn check_game(&self, g: &Game) -> Result<()> {
        let lens: Vec<usize> = self.strategies.iter().map(Vec::len).collect();
        if lens != g.strategy_counts() {
            return Err(GameError::ShapeMismatch(format!(
                "mixed profile sizes {lens:?} vs strategy counts {:?}",
                g.strategy_counts()
            )));
        }
        Ok(())
    }

    /// The product distribution over profiles.
    pub fn to_joint(&self, g: &Game) -> Result<JointDistribution> {
        self.check_game(g)?;
        let shape = g.shape();
        let probs = shape
            .indices()
            .map(|idx| {
                (0..shape.num_players())
                    .map(|m| self.strategies[m][shape.coordinate(m, idx)])
                    .product()
            })
            .collect();
        Ok(JointDistribution { probs })
    }
}

/// A probability distribution over all profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_simplex(&probs, "joint distribution")?;
        Ok(JointDistribution { probs })
    }

    pub fn uniform(n: usize) -> Self {
        JointDistribution {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, idx: usize) -> Result<Self> {
        if idx >= n {
            return Err(GameError::Invalid(format!("profile {idx} out of range for {n} profiles")));
        }
        let mut probs = vec![0.0; n];
        probs[idx] = 1.0;
        Ok(JointDistribution { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

fn profiles(g: &Game, idx: Vec<usize>) -> Vec<Profile> {
    idx.into_iter().map(|i| g.shape().profile(i)).collect()
}

/// Best payoff of player `m` in each opponent block.
fn block_maxima(g: &Game, m: usize) -> Vec<f64> {
    let shape = g.shape();
    let mut best = vec![f64::NEG_INFINITY; shape.opponent_profiles(m)];
    for (idx, &u) in g.player_utilities(m).iter().enumerate() {
        let b = shape.block_of(m, idx);
        best[b] = best[b].max(u);
    }
    best
}

/// Indices of profiles where no player gains more than `eps` by deviating.
fn epsilon_indices(g: &Game, eps: f64) -> Vec<usize> {
    let shape = g.shape();
    let maxima: Vec<Vec<f64>> = (0..g.num_players()).map(|m| block_maxima(g, m)).collect();
    shape
        .indices()
        .filter(|&idx| {
            (0..g.num_players())
                .all(|m| g.utility_at(m, idx) >= maxima[m][shape.block_of(m, idx)] - eps)
        })
        .collect()
}

/// Pure Nash equilibria as profile indices, ascending.
pub fn pure_nash_indices(g: &Game) -> Vec<usize> {
    epsilon_indices(g, 0.0)
}

/// Pure Nash equilibria (weak inequalities), ordered by profile index.
pub fn pure_nash(g: &Game) -> Vec<Profile> {
    profiles(g, pure_nash_indices(g))
}

pub fn epsilon_equilibria_indices(g: &Game, eps: f64) -> Result<Vec<usize>> {
    if eps.is_nan() || eps < 0.0 {
        return Err(GameError::Invalid(format!("eps must be nonnegative, got {eps}")));
    }
    Ok(epsilon_indices(g, eps))
}

/// Profiles where every unilateral deviation gains at most `eps`.
pub fn epsilon_equilibria(g: &Game, eps: f64) -> Result<Vec<Profile>> {
    Ok(profiles(g, epsilon_equilibria_indices(g, eps)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferBound {
    pub closest_potential: Game,
    /// Distance from the game to its closest potential game.
    pub alpha: f64,
    /// `max_m 2α/√h_m`.
    pub eps_bound: f64,
}

/// Every pure equilibrium of the closest potential game is an
/// `eps_bound`-equilibrium of `g`.
pub fn epsilon_transfer_bound(g: &Game) -> Result<TransferBound> {
    let closest = closest_potential(g)?;
    let alpha = game_distance(g, &closest)?;
    let eps_bound = g
        .strategy_counts()
        .iter()
        .map(|&h| 2.0 * alpha / (h as f64).sqrt())
        .fold(0.0, f64::max);
    Ok(TransferBound {
        closest_potential: closest,
        alpha,
        eps_bound,
    })
}

pub fn uniformly_mixed(g: &Game) -> MixedProfile {
    MixedProfile {
        strategies: g
            .strategy_counts()
            .iter()
            .map(|&h| vec![1.0 / h as f64; h])
            .collect(),
    }
}

/// `u^m(s, x^{-m})` for every own strategy `s`.
pub fn deviation_payoffs(g: &Game, m: usize, x: &MixedProfile) -> Result<Vec<f64>> {
    x.check_game(g)?;
    g.shape().check_player(m)?;
    let shape = g.shape();
    let mut out = vec![0.0; shape.count(m)];
    for (idx, &u) in g.player_utilities(m).iter().enumerate() {
        let w: f64 = (0..shape.num_players())
            .filter(|&k| k != m)
            .map(|k| x.player(k)[shape.coordinate(k, idx)])
            .product();
        out[shape.coordinate(m, idx)] += u * w;
    }
    Ok(out)
}

/// Expected payoff `u^m(x)`.
pub fn mixed_utility(g: &Game, m: usize, x: &MixedProfile) -> Result<f64> {
    let dev = deviation_payoffs(g, m, x)?;
    Ok(dev.iter().zip(x.player(m)).map(|(u, p)| u * p).sum())
}

/// No pure deviation of any player gains more than `tol`.
pub fn is_mixed_nash(g: &Game, x: &MixedProfile, tol: f64) -> Result<bool> {
    for m in 0..g.num_players() {
        let dev = deviation_payoffs(g, m, x)?;
        let value: f64 = dev.iter().zip(x.player(m)).map(|(u, p)| u * p).sum();
        if dev.iter().any(|&d| d > value + tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `gains[m][a][b] = Σ_{p^{-m}} (u^m(a, p^{-m}) − u^m(b, p^{-m})) x(a, p^{-m})`.
pub fn correlated_deviation_gains(g: &Game, x: &JointDistribution) -> Result<Vec<Vec<Vec<f64>>>> {
    let shape = g.shape();
    if x.probs().len() != shape.len() {
        return Err(GameError::ShapeMismatch(format!(
            "distribution over {} profiles, game has {}",
            x.probs().len(),
            shape.len()
        )));
    }
    let mut gains = Vec::with_capacity(g.num_players());
    for m in 0..g.num_players() {
        let h = shape.count(m);
        let u = g.player_utilities(m);
        let mut table = vec![vec![0.0; h]; h];
        for (idx, &w) in x.probs().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let a = shape.coordinate(m, idx);
            for (b, cell) in table[a].iter_mut().enumerate() {
                *cell += (u[idx] - u[shape.deviate(m, idx, b)]) * w;
            }
        }
        gains.push(table);
    }
    Ok(gains)
}

/// Obedience constraints hold for every player, recommendation and deviation
/// within `tol`.
pub fn is_correlated_equilibrium(g: &Game, x: &JointDistribution, tol: f64) -> Result<bool> {
    let gains = correlated_deviation_gains(g, x)?;
    Ok(gains.iter().flatten().flatten().all(|&v| v >= -tol))
}

/// Dimension bounds for players with a common strategy count `h` and
/// `M > 2`: correlated equilibria have dimension at least `correlated_lower`
/// while mixed equilibria have dimension at most `mixed_upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelatedBounds {
    pub correlated_lower: i64,
    pub mixed_upper: i64,
}

impl CorrelatedBounds {
    pub fn for_equal_counts(num_players: usize, h: usize) -> Self {
        let (m, h) = (num_players as i64, h as i64);
        CorrelatedBounds {
            correlated_lower: h.pow(m as u32) - 1 - m * h * (h - 1),
            mixed_upper: m * (h - 1),
        }
    }

    /// Whether the lower bound strictly exceeds the upper one.
    pub fn separates(&self) -> bool {
        self.correlated_lower > self.mixed_upper
    }
}

/// `{x : C x = 0, 1ᵀx = 1}` intersected with the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolutionSet {
    /// Homogeneous equalities, one row per `(m, p^m, q^m)`.
    pub constraints: DMatrix<f64>,
    /// A point of the affine hull (least-squares solution).
    pub particular: Vec<f64>,
    /// Basis of the direction space.
    pub generators: Vec<Vec<f64>>,
    /// Dimension of the solution set, valid because the uniform
    /// distribution is a strictly positive solution.
    pub dimension: usize,
    /// Present for `M > 2` with equal strategy counts.
    pub bounds: Option<CorrelatedBounds>,
}

impl AffineSolutionSet {
    /// Largest violation of the defining equalities at `x`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let v = DVector::from_column_slice(x);
        let cx = (&self.constraints * &v).amax();
        cx.max((v.sum() - 1.0).abs())
    }
}

fn check_normalized_harmonic(g: &Game, tol: f64) -> Result<()> {
    if !g.is_normalized(tol) {
        return Err(GameError::Precondition("game is not normalized".into()));
    }
    if !is_harmonic(g, tol)? {
        return Err(GameError::Precondition("game is not harmonic".into()));
    }
    Ok(())
}

/// Correlated equilibria of a normalized harmonic game as the solution set of
/// `Σ_{p^{-m}} u^m(q^m, p^{-m}) x(p^m, p^{-m}) = 0` plus `Σ x = 1`.
pub fn harmonic_correlated_system(g: &Game, tol: f64) -> Result<AffineSolutionSet> {
    check_normalized_harmonic(g, tol)?;
    let shape = g.shape();
    let n = shape.len();
    if n > MAX_CORRELATED_PROFILES {
        return Err(GameError::Size {
            nodes: n as u128,
            cap: MAX_CORRELATED_PROFILES,
        });
    }
    let rows: usize = shape.counts().iter().map(|h| h * h).sum();
    let mut c = DMatrix::<f64>::zeros(rows, n);
    let mut row0 = 0;
    for m in 0..shape.num_players() {
        let h = shape.count(m);
        let u = g.player_utilities(m);
        for idx in 0..n {
            let a = shape.coordinate(m, idx);
            for b in 0..h {
                c[(row0 + a * h + b, idx)] = u[shape.deviate(m, idx, b)];
            }
        }
        row0 += h * h;
    }

    let full = c.clone().insert_row(rows, 1.0);
    let svd = full.clone().svd(true, true);
    let rank = numeric_rank(&svd.singular_values);
    let mut rhs = DVector::<f64>::zeros(rows + 1);
    rhs[rows] = 1.0;
    let eps = RANK_TOL * svd.singular_values.max();
    let particular: Vec<f64> = svd
        .solve(&rhs, eps)
        .map_err(|e| GameError::Numeric {
            message: format!("SVD solve failed: {e}"),
            residual: f64::NAN,
        })?
        .iter()
        .copied()
        .collect();
    let generators = null_space(&full);

    let counts = shape.counts();
    let bounds = (counts.len() > 2 && counts.iter().all(|&h| h == counts[0]))
        .then(|| CorrelatedBounds::for_equal_counts(counts.len(), counts[0]));

    Ok(AffineSolutionSet {
        constraints: c,
        particular,
        dimension: n - rank,
        generators,
        bounds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxViolation {
    pub player: usize,
    pub q: usize,
    pub r: usize,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndifferenceViolation {
    pub profile: usize,
    pub player: usize,
    pub strategy: usize,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IndifferenceReport {
    /// Largest `|Σ_{p^{-m}} u^m(r, p^{-m}) − u^m(q, p^{-m})|`.
    pub max_flux: f64,
    pub flux_violations: Vec<FluxViolation>,
    pub pure_nash: Vec<usize>,
    pub indifference_violations: Vec<IndifferenceViolation>,
}

impl IndifferenceReport {
    pub fn holds(&self) -> bool {
        self.flux_violations.is_empty() && self.indifference_violations.is_empty()
    }
}

/// Per player, sums of own payoffs over opponent profiles for each own
/// strategy.
fn strategy_totals(g: &Game, m: usize) -> Vec<f64> {
    let shape = g.shape();
    let mut totals = vec![0.0; shape.count(m)];
    for (idx, &u) in g.player_utilities(m).iter().enumerate() {
        totals[shape.coordinate(m, idx)] += u;
    }
    totals
}

/// Checks that every own strategy earns the same total against all opponent
/// profiles, and that players are fully indifferent at every pure
/// equilibrium. Tolerances are scaled by `max(1, max|u|)`.
pub fn harmonic_indifference_checks(g: &Game, tol: f64) -> IndifferenceReport {
    let shape = g.shape();
    let scale = g.max_abs().max(1.0);
    let mut report = IndifferenceReport::default();
    for m in 0..g.num_players() {
        let totals = strategy_totals(g, m);
        for q in 0..totals.len() {
            for r in q + 1..totals.len() {
                let difference = totals[r] - totals[q];
                report.max_flux = report.max_flux.max(difference.abs());
                if difference.abs() > tol * scale * shape.opponent_profiles(m) as f64 {
                    report.flux_violations.push(FluxViolation {
                        player: m,
                        q,
                        r,
                        difference,
                    });
                }
            }
        }
    }
    report.pure_nash = pure_nash_indices(g);
    for &p in &report.pure_nash {
        for m in 0..g.num_players() {
            let here = g.utility_at(m, p);
            for s in 0..shape.count(m) {
                let difference = g.utility_at(m, shape.deviate(m, p, s)) - here;
                if difference.abs() > tol * scale {
                    report.indifference_violations.push(IndifferenceViolation {
                        profile: p,
                        player: m,
                        strategy: s,
                        difference,
                    });
                }
            }
        }
    }
    report
}

/// `q` weakly improves on `p` for everyone and strictly for someone.
fn dominates(g: &Game, q: usize, p: usize) -> bool {
    let mut strict = false;
    for m in 0..g.num_players() {
        let (a, b) = (g.utility_at(m, q), g.utility_at(m, p));
        if a < b {
            return false;
        }
        strict |= a > b;
    }
    strict
}

pub fn pareto_optimal_indices(g: &Game) -> Vec<usize> {
    let n = g.num_profiles();
    (0..n)
        .filter(|&p| !(0..n).any(|q| dominates(g, q, p)))
        .collect()
}

/// Pareto optimal profiles, ordered by profile index.
pub fn pareto_optimal(g: &Game) -> Vec<Profile> {
    profiles(g, pareto_optimal_indices(g))
}

/// `comparable[m][p]`: an equilibrium differs from `p` only in player `m`'s
/// strategy (or equals `p`). Returns the equilibrium's payoff to `m`.
fn equilibrium_neighbour_payoffs(g: &Game, nash: &[bool]) -> Vec<Vec<Option<f64>>> {
    let shape = g.shape();
    (0..g.num_players())
        .map(|m| {
            // payoff at any equilibrium in each block; equal across the block
            let mut block_value = vec![None; shape.opponent_profiles(m)];
            for idx in shape.indices().filter(|&i| nash[i]) {
                block_value[shape.block_of(m, idx)] = Some(g.utility_at(m, idx));
            }
            shape
                .indices()
                .map(|idx| block_value[shape.block_of(m, idx)])
                .collect()
        })
        .collect()
}

/// A game with the same pairwise comparisons as `g` in which, whenever `g`
/// has a pure equilibrium, the equilibria are exactly the Pareto optimal
/// profiles.
///
/// Stage one shifts payoffs so every equilibrium pays zero; stage two
/// subtracts `α = 1 + max payoff` from each player at profiles that are not
/// within one own deviation of an equilibrium.
pub fn pareto_align_transform(g: &Game) -> Game {
    let n = g.num_profiles();
    let mut nash = vec![false; n];
    for p in pure_nash_indices(g) {
        nash[p] = true;
    }
    let near = equilibrium_neighbour_payoffs(g, &nash);

    let hat = g.map_players(|m, u| {
        (0..n)
            .map(|p| match near[m][p] {
                _ if nash[p] => 0.0,
                Some(v) => u[p] - v,
                None => u[p],
            })
            .collect()
    });
    let alpha = 1.0
        + hat
            .utilities()
            .iter()
            .flatten()
            .fold(f64::NEG_INFINITY, |a, &v| a.max(v));
    hat.map_players(|m, u| {
        (0..n)
            .map(|p| {
                if nash[p] || near[m][p].is_some() {
                    u[p]
                } else {
                    u[p] - alpha
                }
            })
            .collect()
    })
}

/// Wire form of an equilibrium analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub pure_nash: Vec<Vec<usize>>,
    pub epsilon: f64,
    pub epsilon_equilibria: Vec<Vec<usize>>,
    pub pareto_optimal: Vec<Vec<usize>>,
    pub uniform_mixed_is_ne: bool,
    /// Dimension of the correlated equilibria of harmonic games; `None`
    /// otherwise.
    pub correlated_dim: Option<usize>,
}

fn coords(ps: Vec<Profile>) -> Vec<Vec<usize>> {
    ps.into_iter().map(|p| p.0).collect()
}

pub fn equilibrium_report(g: &Game, eps: f64, tol: f64) -> Result<EquilibriumReport> {
    let correlated_dim = if is_harmonic(g, tol)? && g.num_profiles() <= MAX_CORRELATED_PROFILES {
        Some(harmonic_correlated_system(&g.normalize(), tol)?.dimension)
    } else {
        None
    };
    Ok(EquilibriumReport {
        pure_nash: coords(pure_nash(g)),
        epsilon: eps,
        epsilon_equilibria: coords(epsilon_equilibria(g, eps)?),
        pareto_optimal: coords(pareto_optimal(g)),
        uniform_mixed_is_ne: is_mixed_nash(g, &uniformly_mixed(g), tol)?,
        correlated_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::game::DEFAULT_TOL;

    fn labels(g: &Game, ps: &[Profile]) -> Vec<String> {
        ps.iter()
            .map(|p| g.profile_label(g.shape().index(&p.0).unwrap()))
            .collect()
    }

    #[test]
    fn pure_nash_examples() {
        let bos = catalog::battle_of_sexes();
        assert_eq!(labels(&bos, &pure_nash(&bos)), ["(O,O)", "(F,F)"]);
        assert!(pure_nash(&catalog::matching_pennies()).is_empty());
        assert!(pure_nash(&catalog::cyclic_three_player()).is_empty());
    }

    #[test]
    fn epsilon_examples() {
        let bos = catalog::battle_of_sexes();
        assert_eq!(epsilon_equilibria(&bos, 0.0).unwrap(), pure_nash(&bos));
        assert_eq!(epsilon_equilibria(&bos, 3.0).unwrap().len(), 4);
        assert_eq!(epsilon_equilibria(&bos, 1.9).unwrap().len(), 2);
        assert_eq!(epsilon_equilibria(&bos, 2.0).unwrap().len(), 3);
        let mp = catalog::matching_pennies();
        assert_eq!(epsilon_equilibria(&mp, 2.0).unwrap().len(), 4);
        assert!(epsilon_equilibria(&mp, 1.99).unwrap().is_empty());
        assert!(matches!(epsilon_equilibria(&mp, -0.1), Err(GameError::Invalid(_))));
    }

    #[test]
    fn transfer_bound_examples() {
        let bos = catalog::battle_of_sexes();
        let t = epsilon_transfer_bound(&bos).unwrap();
        assert!(t.eps_bound < 1e-9);
        assert_eq!(pure_nash(&t.closest_potential), pure_nash(&bos));

        let third = 1.0 / 3.0;
        let rps = catalog::generalized_rps(third, third, third);
        let t = epsilon_transfer_bound(&rps).unwrap();
        assert!(t.closest_potential.max_abs() < 1e-12);
        assert!((t.alpha - crate::decompose::game_norm(&rps)).abs() < 1e-9);
        let eq = epsilon_equilibria(&rps, t.eps_bound).unwrap();
        assert_eq!(eq.len(), 9);
    }

    #[test]
    fn mixed_examples() {
        let bos = catalog::battle_of_sexes();
        let x = MixedProfile::new(vec![vec![0.6, 0.4], vec![0.4, 0.6]]).unwrap();
        let dev = deviation_payoffs(&bos, 0, &x).unwrap();
        assert!((dev[0] - dev[1]).abs() < 1e-12);
        assert!(is_mixed_nash(&bos, &x, 1e-12).unwrap());
        assert!(!is_mixed_nash(&bos, &uniformly_mixed(&bos), 1e-9).unwrap());
        let mp = catalog::matching_pennies();
        assert!(is_mixed_nash(&mp, &uniformly_mixed(&mp), 1e-12).unwrap());
        assert!(MixedProfile::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(MixedProfile::new(vec![vec![1.5, -0.5]]).is_err());
        let third = vec![1.0 / 3.0; 3];
        let u = uniformly_mixed(&catalog::generalized_rps(1.0, 1.0, 1.0));
        assert_eq!(u.strategies(), &[third.clone(), third]);
    }

    #[test]
    fn correlated_examples() {
        let bos = catalog::battle_of_sexes();
        let x = MixedProfile::new(vec![vec![0.6, 0.4], vec![0.4, 0.6]]).unwrap();
        assert!(is_correlated_equilibrium(&bos, &x.to_joint(&bos).unwrap(), 1e-12).unwrap());
        let of = JointDistribution::point_mass(4, 1).unwrap();
        assert!(!is_correlated_equilibrium(&bos, &of, 1e-9).unwrap());
        let mp = catalog::matching_pennies();
        assert!(is_correlated_equilibrium(&mp, &JointDistribution::uniform(4), 1e-12).unwrap());
        assert!(JointDistribution::new(vec![0.5, 0.4]).is_err());
    }

    #[test]
    fn correlated_system_examples() {
        let s = harmonic_correlated_system(&catalog::matching_pennies(), DEFAULT_TOL).unwrap();
        assert_eq!(s.dimension, 0);
        assert!(s.generators.is_empty());
        for v in &s.particular {
            assert!((v - 0.25).abs() < 1e-9);
        }

        let g = catalog::harmonic_2x3(1.0, 1.0);
        let s = harmonic_correlated_system(&g, DEFAULT_TOL).unwrap();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.generators.len(), 1);
        assert!(s.violation(&[1.0 / 6.0; 6]) < 1e-12);
        for gen in &s.generators {
            let v = DVector::from_column_slice(gen);
            assert!((&s.constraints * v).amax() < 1e-9);
        }
        assert!(s.bounds.is_none());

        assert!(matches!(
            harmonic_correlated_system(&catalog::battle_of_sexes(), DEFAULT_TOL),
            Err(GameError::Precondition(_))
        ));
    }

    #[test]
    fn correlated_bounds_for_three_players() {
        let b = CorrelatedBounds::for_equal_counts(3, 3);
        assert_eq!(b.correlated_lower, 27 - 1 - 18);
        assert_eq!(b.mixed_upper, 6);
        assert!(b.separates());
        assert!(!CorrelatedBounds::for_equal_counts(3, 2).separates());
    }

    #[test]
    fn indifference_examples() {
        let r = harmonic_indifference_checks(&catalog::matching_pennies(), 1e-9);
        assert!(r.holds());
        assert!(r.pure_nash.is_empty());
        let z = Game::zeros(catalog::matching_pennies().shape());
        let r = harmonic_indifference_checks(&z, 1e-9);
        assert!(r.holds());
        assert_eq!(r.pure_nash, vec![0, 1, 2, 3]);
        assert!(!harmonic_indifference_checks(&catalog::battle_of_sexes(), 1e-9).holds());
    }

    #[test]
    fn pareto_examples() {
        let bos = catalog::battle_of_sexes();
        assert_eq!(labels(&bos, &pareto_optimal(&bos)), ["(O,O)", "(F,F)"]);
        let u = vec![1.0, 3.0, 3.0, 0.0];
        let ii = Game::new(&[2, 2], vec![u.clone(), u]).unwrap();
        assert_eq!(pareto_optimal_indices(&ii), vec![1, 2]);
        assert_eq!(pareto_optimal_indices(&Game::zeros(bos.shape())), vec![0, 1, 2, 3]);
    }

    #[test]
    fn pareto_transform_on_battle_of_sexes() {
        let bos = catalog::battle_of_sexes();
        let t = pareto_align_transform(&bos);
        for p in [0, 3] {
            assert_eq!(t.utility_at(0, p), 0.0);
            assert_eq!(t.utility_at(1, p), 0.0);
        }
        assert_eq!(pure_nash_indices(&t), pareto_optimal_indices(&t));
        let graph = crate::graph::GameGraph::new(&[2, 2]).unwrap();
        let diff = graph
            .pairwise_comparison(&t)
            .unwrap()
            .sub(&graph.pairwise_comparison(&bos).unwrap());
        assert!(diff.max_abs() < 1e-12);
    }

    #[test]
    fn pareto_transform_on_zero_game() {
        let z = Game::zeros(&crate::game::Shape::new(&[2, 3]).unwrap());
        let t = pareto_align_transform(&z);
        assert_eq!(t.max_abs(), 0.0);
        assert_eq!(pure_nash_indices(&t).len(), 6);
        assert_eq!(pareto_optimal_indices(&t).len(), 6);
    }

    #[test]
    fn report_json_keys() {
        let r = equilibrium_report(&catalog::matching_pennies(), 0.0, DEFAULT_TOL).unwrap();
        assert_eq!(r.correlated_dim, Some(0));
        assert!(r.uniform_mixed_is_ne);
        let r = equilibrium_report(&catalog::battle_of_sexes(), 0.5, DEFAULT_TOL).unwrap();
        assert_eq!(r.correlated_dim, None);
        assert_eq!(r.pure_nash, vec![vec![0, 0], vec![1, 1]]);
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "pure_nash",
            "epsilon",
            "epsilon_equilibria",
            "pareto_optimal",
            "uniform_mixed_is_ne",
            "correlated_dim",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
