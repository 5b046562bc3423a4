//! Seeded random games. Payoffs and basis coordinates are drawn uniformly
//! from `[-1, 1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::{closest_potential, decompose};
use crate::error::Result;
use crate::game::{Game, Shape};
use crate::solver::DEFAULT_SOLVER_TOL;
use crate::subspaces::harmonic_basis_2p;

/// The generator used for every seeded routine in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_game<R: Rng>(shape: &Shape, rng: &mut R) -> Game {
    let utilities = (0..shape.num_players())
        .map(|_| (0..shape.len()).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    Game::from_shape(shape.clone(), utilities).expect("finite utilities of matching length")
}

/// A potential game: the closest potential game to a random game.
pub fn random_potential<R: Rng>(shape: &Shape, rng: &mut R) -> Result<Game> {
    closest_potential(&random_game(shape, rng))
}

/// A normalized harmonic game. Two-player shapes use random coordinates in
/// the explicit harmonic basis; other shapes take the harmonic component of
/// a random game.
pub fn random_harmonic<R: Rng>(shape: &Shape, rng: &mut R) -> Result<Game> {
    if let [h1, h2] = *shape.counts() {
        let basis = harmonic_basis_2p(h1, h2)?;
        let mut g = Game::zeros(shape);
        for e in basis.elements() {
            g = g.linear_combination(1.0, e, rng.random_range(-1.0..=1.0))?;
        }
        return Ok(g);
    }
    Ok(decompose(&random_game(shape, rng), DEFAULT_SOLVER_TOL)?.harmonic)
}
