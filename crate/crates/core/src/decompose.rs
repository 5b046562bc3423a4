//! Potential / harmonic / nonstrategic decomposition of games, projections
//! onto potential and harmonic games, and the weighted game metric.
//!
//! With `φ` the mean-zero solution of `Δ0 φ = Σ_m Δ0,m u^m`:
//!
//! * potential part: `Π_m φ`
//! * harmonic part: `Π_m u^m − Π_m φ`
//! * nonstrategic part: `u^m − Π_m u^m`
//!
//! All three are computed per player with the block-mean projections, so
//! nothing of edge-space size is materialized except in the diagnostics.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::flow::{project_player, NodeFunction};
use crate::game::{Game, GameJson};
use crate::graph::GameGraph;
use crate::solver::{laplacian_pinv_solve_detailed, DEFAULT_SOLVER_TOL};

/// Absolute floor on the norm used by the relative membership tests.
pub const NORM_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Largest entry of `potential + harmonic + nonstrategic − input`.
    pub reconstruction: f64,
    /// Largest entry of δ0* applied to the harmonic part's flow.
    pub harmonic_divergence: f64,
    /// Largest curl of the input's pairwise comparison flow.
    pub curl: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub potential: Game,
    pub harmonic: Game,
    pub nonstrategic: Game,
    /// Mean-zero potential function of the potential part.
    pub phi: NodeFunction,
    pub residuals: Residuals,
}

/// Wire form of a [`Decomposition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub potential: GameJson,
    pub harmonic: GameJson,
    pub nonstrategic: GameJson,
    pub phi: Vec<f64>,
    pub residuals: Residuals,
}

impl Decomposition {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            potential: self.potential.to_json(),
            harmonic: self.harmonic.to_json(),
            nonstrategic: self.nonstrategic.to_json(),
            phi: self.phi.clone(),
            residuals: self.residuals,
        }
    }
}

/// Decomposes `game`; `tol` is the relative residual tolerance of the
/// Laplacian solve.
pub fn decompose(game: &Game, tol: f64) -> Result<Decomposition> {
    let graph = GameGraph::from_shape(game.shape().clone());
    decompose_on(&graph, game, tol)
}

/// Same as [`decompose`] with a prebuilt graph of matching shape.
pub fn decompose_on(graph: &GameGraph, game: &Game, tol: f64) -> Result<Decomposition> {
    let parts = components(graph, game, tol)?;
    let Components {
        potential,
        harmonic,
        nonstrategic,
        phi,
    } = parts;

    let reconstruction = potential
        .add(&harmonic)?
        .add(&nonstrategic)?
        .max_abs_diff(game)?;
    let harmonic_flow = graph.pairwise_comparison(&harmonic)?;
    let harmonic_divergence = graph
        .divergence_adjoint(&harmonic_flow)
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let curl = graph.curl(&graph.pairwise_comparison(game)?).max_abs();

    Ok(Decomposition {
        potential,
        harmonic,
        nonstrategic,
        phi,
        residuals: Residuals {
            reconstruction,
            harmonic_divergence,
            curl,
        },
    })
}

struct Components {
    potential: Game,
    harmonic: Game,
    nonstrategic: Game,
    phi: NodeFunction,
}

fn components(graph: &GameGraph, game: &Game, tol: f64) -> Result<Components> {
    if graph.shape() != game.shape() {
        return Err(GameError::ShapeMismatch("graph and game shapes differ".into()));
    }
    let shape = game.shape();
    let projected: Vec<Vec<f64>> = (0..game.num_players())
        .map(|m| project_player(shape, m, game.player_utilities(m)))
        .collect();

    // Σ_m Δ0,m u^m = Σ_m h_m Π_m u^m
    let mut rhs = vec![0.0; shape.len()];
    for (m, pu) in projected.iter().enumerate() {
        let h = shape.count(m) as f64;
        for (acc, v) in rhs.iter_mut().zip(pu) {
            *acc += h * v;
        }
    }
    let phi = laplacian_pinv_solve_detailed(graph, &rhs, tol)?.phi;

    let potential = game.map_players(|m, _| project_player(shape, m, &phi));
    let harmonic = game.map_players(|m, _| {
        projected[m]
            .iter()
            .zip(potential.player_utilities(m))
            .map(|(pu, pp)| pu - pp)
            .collect()
    });
    let nonstrategic = game.map_players(|m, u| {
        u.iter().zip(&projected[m]).map(|(a, b)| a - b).collect()
    });
    Ok(Components {
        potential,
        harmonic,
        nonstrategic,
        phi,
    })
}

fn check_shape(a: &Game, b: &Game) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(GameError::ShapeMismatch(format!(
            "{:?} vs {:?}",
            a.strategy_counts(),
            b.strategy_counts()
        )));
    }
    Ok(())
}

/// `Σ_m h_m ⟨u^m, v^m⟩`.
pub fn game_inner(a: &Game, b: &Game) -> Result<f64> {
    check_shape(a, b)?;
    Ok((0..a.num_players())
        .map(|m| {
            let h = a.shape().count(m) as f64;
            h * a
                .player_utilities(m)
                .iter()
                .zip(b.player_utilities(m))
                .map(|(x, y)| x * y)
                .sum::<f64>()
        })
        .sum())
}

pub fn game_norm(g: &Game) -> f64 {
    game_inner(g, g).expect("same shape").max(0.0).sqrt()
}

pub fn game_distance(a: &Game, b: &Game) -> Result<f64> {
    Ok(game_norm(&a.sub(b)?))
}

fn membership_threshold(g: &Game, tol: f64) -> f64 {
    tol * game_norm(g).max(NORM_FLOOR)
}

/// Whether the harmonic part vanishes relative to the game's norm.
pub fn is_potential(g: &Game, tol: f64) -> Result<bool> {
    let d = decompose(g, DEFAULT_SOLVER_TOL)?;
    Ok(game_norm(&d.harmonic) <= membership_threshold(g, tol))
}

/// Whether the potential part vanishes relative to the game's norm.
pub fn is_harmonic(g: &Game, tol: f64) -> Result<bool> {
    let d = decompose(g, DEFAULT_SOLVER_TOL)?;
    Ok(game_norm(&d.potential) <= membership_threshold(g, tol))
}

/// The mean-zero exact potential of `g`, or `None` when `g` is not a
/// potential game within `tol`.
///
/// The candidate is checked on every edge: a unilateral switch changes the
/// deviator's payoff by exactly the change in `φ`.
pub fn potential_function(g: &Game, tol: f64) -> Result<Option<NodeFunction>> {
    let graph = GameGraph::from_shape(g.shape().clone());
    let d = decompose_on(&graph, g, DEFAULT_SOLVER_TOL)?;
    if game_norm(&d.harmonic) > membership_threshold(g, tol) {
        return Ok(None);
    }
    let scale = g.max_abs().max(1.0);
    for e in graph.edges() {
        let u = g.player_utilities(e.player);
        let du = u[e.to] - u[e.from];
        let dphi = d.phi[e.to] - d.phi[e.from];
        if (du - dphi).abs() > tol * scale {
            return Ok(None);
        }
    }
    Ok(Some(d.phi))
}

/// Orthogonal projection onto potential games: `g` minus its harmonic part.
pub fn closest_potential(g: &Game) -> Result<Game> {
    let d = decompose(g, DEFAULT_SOLVER_TOL)?;
    g.sub(&d.harmonic)
}

/// Orthogonal projection onto harmonic games: `g` minus its potential part.
pub fn closest_harmonic(g: &Game) -> Result<Game> {
    let d = decompose(g, DEFAULT_SOLVER_TOL)?;
    g.sub(&d.potential)
}

/// Closed-form components of a normalized square bimatrix game.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixComponents {
    pub potential_row: Vec<Vec<f64>>,
    pub potential_col: Vec<Vec<f64>>,
    pub harmonic_row: Vec<Vec<f64>>,
    pub harmonic_col: Vec<Vec<f64>>,
}

/// Potential and harmonic parts of a normalized `h × h` bimatrix game
/// `(A, B)` with `1ᵀA = 0` and `B1 = 0`:
/// `(S+Γ, S−Γ)` and `(D−Γ, −D+Γ)` where `S = (A+B)/2`, `D = (A−B)/2` and
/// `Γ = (A11ᵀ − 11ᵀB) / 2h`.
pub fn decompose_bimatrix_normalized(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    tol: f64,
) -> Result<BimatrixComponents> {
    let h = a.len();
    let square = |m: &[Vec<f64>]| m.len() == h && m.iter().all(|r| r.len() == h);
    if h == 0 || !square(a) || !square(b) {
        return Err(GameError::UnsupportedShape(
            "closed form needs two square payoff matrices of equal size".into(),
        ));
    }
    for j in 0..h {
        let col: f64 = (0..h).map(|i| a[i][j]).sum();
        let row: f64 = b[j].iter().sum();
        if col.abs() > tol || row.abs() > tol {
            return Err(GameError::Precondition(
                "bimatrix game is not normalized; normalize it first".into(),
            ));
        }
    }
    let row_sums: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<f64> = (0..h).map(|j| (0..h).map(|i| b[i][j]).sum()).collect();
    let scale = 1.0 / (2.0 * h as f64);
    let mut out = BimatrixComponents {
        potential_row: vec![vec![0.0; h]; h],
        potential_col: vec![vec![0.0; h]; h],
        harmonic_row: vec![vec![0.0; h]; h],
        harmonic_col: vec![vec![0.0; h]; h],
    };
    for i in 0..h {
        for j in 0..h {
            let s = 0.5 * (a[i][j] + b[i][j]);
            let d = 0.5 * (a[i][j] - b[i][j]);
            let gamma = scale * (row_sums[i] - col_sums[j]);
            out.potential_row[i][j] = s + gamma;
            out.potential_col[i][j] = s - gamma;
            out.harmonic_row[i][j] = d - gamma;
            out.harmonic_col[i][j] = -d + gamma;
        }
    }
    Ok(out)
}
