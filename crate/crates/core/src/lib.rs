//! Decomposition of finite strategic-form games into potential, harmonic
//! and nonstrategic components, with the flow calculus on the game graph,
//! equilibrium utilities and subspace bookkeeping built on top.

pub mod catalog;
pub mod checks;
pub mod decompose;
pub mod equilibria;
pub mod error;
pub mod flow;
pub mod game;
pub mod graph;
pub mod linalg;
pub mod random;
pub mod solver;
pub mod subspaces;

pub use decompose::{
    closest_harmonic, closest_potential, decompose, decompose_bimatrix_normalized, game_distance,
    game_inner, game_norm, is_harmonic, is_potential, potential_function, Decomposition,
};
pub use equilibria::{
    epsilon_equilibria, epsilon_transfer_bound, harmonic_correlated_system,
    is_correlated_equilibrium, is_mixed_nash, pareto_align_transform, pareto_optimal, pure_nash,
    uniformly_mixed, JointDistribution, MixedProfile,
};
pub use error::{GameError, Result};
pub use flow::{EdgeFlow, NodeFunction, TriangleFlow};
pub use game::{profile_index, profile_of_index, Game, Profile, Shape, DEFAULT_TOL};
pub use graph::{Edge, GameGraph, Triangle};
pub use solver::laplacian_pinv_solve;
pub use subspaces::{
    empirical_dims, harmonic_basis_2p, nonstrategic_basis, subspace_dims,
    verify_normalized_harmonic, zs_ii_intersection_dims, SubspaceBasis,
};
