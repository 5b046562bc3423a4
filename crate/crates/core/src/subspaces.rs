//! Explicit bases of the nonstrategic and two-player harmonic subspaces,
//! closed-form and rank-based dimension counts, and the zero-sum /
//! identical-interest intersection table.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::decompose::decompose;
use crate::error::{GameError, Result};
use crate::game::{Game, GameJson, Shape};
use crate::linalg::{matrix_rank, rows_matrix};
use crate::random::{random_game, rng};
use crate::solver::DEFAULT_SOLVER_TOL;

/// Largest ambient dimension `M·|E|` for dense rank computations.
pub const MAX_RANK_AMBIENT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubspaceTag {
    #[serde(rename = "N")]
    Nonstrategic,
    #[serde(rename = "H2p")]
    Harmonic2p,
    #[serde(rename = "P-span")]
    PotentialSpan,
    #[serde(rename = "derived")]
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    tag: SubspaceTag,
    shape: Shape,
    elements: Vec<Game>,
}

/// Wire form of a basis: a manifest plus the elements as games.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub manifest: BasisManifest,
    pub games: Vec<GameJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisManifest {
    pub tag: SubspaceTag,
    pub strategy_counts: Vec<usize>,
    pub count: usize,
}

impl SubspaceBasis {
    pub fn new(tag: SubspaceTag, shape: Shape, elements: Vec<Game>) -> Result<Self> {
        if let Some(e) = elements.iter().find(|e| e.shape() != &shape) {
            return Err(GameError::ShapeMismatch(format!(
                "basis element of shape {:?} in a {:?} basis",
                e.strategy_counts(),
                shape.counts()
            )));
        }
        Ok(SubspaceBasis { tag, shape, elements })
    }

    pub fn tag(&self) -> SubspaceTag {
        self.tag
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn elements(&self) -> &[Game] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as rows in `ℝ^{M·|E|}`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let rows: Vec<Vec<f64>> = self.elements.iter().map(Game::to_vector).collect();
        rows_matrix(&rows, self.shape.num_players() * self.shape.len())
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.matrix())
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            manifest: BasisManifest {
                tag: self.tag,
                strategy_counts: self.shape.counts().to_vec(),
                count: self.len(),
            },
            games: self.elements.iter().map(Game::to_json).collect(),
        }
    }
}

/// For each player `m` and opponent profile `q^{-m}`, the game whose only
/// nonzero utility is `u^m = 1` on the profiles extending `q^{-m}`.
pub fn nonstrategic_basis(counts: &[usize]) -> Result<SubspaceBasis> {
    let shape = Shape::new(counts)?;
    let mut elements = Vec::new();
    for m in 0..shape.num_players() {
        for block in 0..shape.opponent_profiles(m) {
            let mut utilities = vec![vec![0.0; shape.len()]; shape.num_players()];
            for a in 0..shape.count(m) {
                utilities[m][shape.node_in_block(m, block, a)] = 1.0;
            }
            elements.push(Game::from_shape(shape.clone(), utilities)?);
        }
    }
    SubspaceBasis::new(SubspaceTag::Nonstrategic, shape, elements)
}

/// The `(h1−1)(h2−1)` games `(h2·A^{ij}, −h1·A^{ij})`, where `A^{ij}` is
/// `+1` at `(i,j)` and `(i+1,j+1)` and `−1` at `(i+1,j)` and `(i,j+1)`.
/// Ordered by `i`, then `j`.
pub fn harmonic_basis_2p(h1: usize, h2: usize) -> Result<SubspaceBasis> {
    let shape = Shape::new(&[h1, h2])?;
    if h1 < 2 || h2 < 2 {
        log::warn!("harmonic subspace of a {h1}x{h2} game is trivial; returning an empty basis");
        return SubspaceBasis::new(SubspaceTag::Harmonic2p, shape, Vec::new());
    }
    let mut elements = Vec::with_capacity((h1 - 1) * (h2 - 1));
    for i in 0..h1 - 1 {
        for j in 0..h2 - 1 {
            let mut a = vec![0.0; h1 * h2];
            a[i * h2 + j] = 1.0;
            a[(i + 1) * h2 + j + 1] = 1.0;
            a[(i + 1) * h2 + j] = -1.0;
            a[i * h2 + j + 1] = -1.0;
            let row = a.iter().map(|v| h2 as f64 * v).collect();
            let col = a.iter().map(|v| -(h1 as f64) * v).collect();
            elements.push(Game::from_shape(shape.clone(), vec![row, col])?);
        }
    }
    SubspaceBasis::new(SubspaceTag::Harmonic2p, shape, elements)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDims {
    pub potential: usize,
    pub harmonic: usize,
    pub nonstrategic: usize,
    /// Potential games: potential plus nonstrategic.
    pub potential_games: usize,
    /// Harmonic games: harmonic plus nonstrategic.
    pub harmonic_games: usize,
}

impl fmt::Display for SubspaceDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={} H={} N={}", self.potential, self.harmonic, self.nonstrategic)
    }
}

/// Closed-form dimensions for strategy counts `counts`.
pub fn subspace_dims(counts: &[usize]) -> Result<SubspaceDims> {
    let shape = Shape::new(counts)?;
    let m = shape.num_players();
    let total = shape.len();
    let others: usize = (0..m).map(|k| shape.opponent_profiles(k)).sum();
    Ok(SubspaceDims {
        potential: total - 1,
        harmonic: (m - 1) * total + 1 - others,
        nonstrategic: others,
        potential_games: total + others - 1,
        harmonic_games: (m - 1) * total + 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalDims {
    pub potential: usize,
    pub harmonic: usize,
    pub nonstrategic: usize,
}

fn ambient(shape: &Shape) -> Result<usize> {
    let n = shape.num_players() * shape.len();
    if n > MAX_RANK_AMBIENT {
        return Err(GameError::Size {
            nodes: n as u128,
            cap: MAX_RANK_AMBIENT,
        });
    }
    Ok(n)
}

/// Numeric ranks of the component spans of `samples` seeded random games.
/// Needs at least as many samples as the largest dimension to be exact.
pub fn empirical_dims(counts: &[usize], samples: usize, seed: u64) -> Result<EmpiricalDims> {
    let shape = Shape::new(counts)?;
    let n = ambient(&shape)?;
    let mut rng = rng(seed);
    let (mut p, mut h, mut z) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let d = decompose(&random_game(&shape, &mut rng), DEFAULT_SOLVER_TOL)?;
        p.push(d.potential.to_vector());
        h.push(d.harmonic.to_vector());
        z.push(d.nonstrategic.to_vector());
    }
    Ok(EmpiricalDims {
        potential: matrix_rank(&rows_matrix(&p, n)),
        harmonic: matrix_rank(&rows_matrix(&h, n)),
        nonstrategic: matrix_rank(&rows_matrix(&z, n)),
    })
}

/// `dim(A ∩ B) = rank A + rank B − rank [A; B]`.
pub fn intersection_dim(a: &[Vec<f64>], b: &[Vec<f64>], ncols: usize) -> usize {
    let stacked: Vec<Vec<f64>> = a.iter().chain(b).cloned().collect();
    matrix_rank(&rows_matrix(a, ncols)) + matrix_rank(&rows_matrix(b, ncols))
        - matrix_rank(&rows_matrix(&stacked, ncols))
}

/// Rows: potential games, harmonic games, all games. Columns: intersection
/// with zero-sum games, intersection with identical-interest games, the
/// row's own dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    pub h: usize,
    pub closed_form: [[usize; 3]; 3],
    /// `None` when the ambient space is too large for dense ranks.
    pub computed: Option<[[usize; 3]; 3]>,
}

impl IntersectionTable {
    /// `(Z∩Pot, I∩Pot, Z∩Harm, I∩Harm)` of a table.
    pub fn key(table: &[[usize; 3]; 3]) -> (usize, usize, usize, usize) {
        (table[0][0], table[0][1], table[1][0], table[1][1])
    }

    pub fn agrees(&self) -> Option<bool> {
        self.computed.map(|c| c == self.closed_form)
    }
}

/// Seed for the random games spanning the potential subspace.
pub const INTERSECTION_SEED: u64 = 0x0005_eed2;

/// Dimensions of the intersections of zero-sum (`u¹ + u² = 0`) and
/// identical-interest (`u¹ = u²`) games with potential and harmonic games,
/// for two players with `h` strategies each.
pub fn zs_ii_intersection_dims(h: usize) -> Result<IntersectionTable> {
    let shape = Shape::new(&[h, h])?;
    let h2 = h * h;
    let closed_form = [
        [2 * h - 1, h2, h2 + 2 * h - 1],
        [h2 - 2 * h + 2, 1, h2 + 1],
        [h2, h2, 2 * h2],
    ];
    let n = match ambient(&shape) {
        Ok(n) => n,
        Err(GameError::Size { .. }) => {
            return Ok(IntersectionTable {
                h,
                closed_form,
                computed: None,
            })
        }
        Err(e) => return Err(e),
    };

    let unit = |p: usize, sign: f64| {
        let mut v = vec![0.0; n];
        v[p] = 1.0;
        v[h2 + p] = sign;
        v
    };
    let zero_sum: Vec<Vec<f64>> = (0..h2).map(|p| unit(p, -1.0)).collect();
    let identical: Vec<Vec<f64>> = (0..h2).map(|p| unit(p, 1.0)).collect();

    let nonstrategic: Vec<Vec<f64>> = nonstrategic_basis(&[h, h])?
        .elements()
        .iter()
        .map(Game::to_vector)
        .collect();
    let mut potential = nonstrategic.clone();
    let mut rng = rng(INTERSECTION_SEED);
    for _ in 0..h2 + 1 {
        let d = decompose(&random_game(&shape, &mut rng), DEFAULT_SOLVER_TOL)?;
        potential.push(d.potential.to_vector());
    }
    let mut harmonic = nonstrategic;
    harmonic.extend(harmonic_basis_2p(h, h)?.elements().iter().map(Game::to_vector));
    let everything: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut v = vec![0.0; n];
            v[k] = 1.0;
            v
        })
        .collect();

    let row = |span: &[Vec<f64>]| {
        [
            intersection_dim(&zero_sum, span, n),
            intersection_dim(&identical, span, n),
            matrix_rank(&rows_matrix(span, n)),
        ]
    };
    Ok(IntersectionTable {
        h,
        closed_form,
        computed: Some([row(&potential), row(&harmonic), row(&everything)]),
    })
}

/// `Π_m u^m = u^m` for every player and `Σ_m h_m u^m(p) = 0` at every
/// profile, within `tol·max(1, max|u|)`.
pub fn verify_normalized_harmonic(g: &Game, tol: f64) -> bool {
    let scale = g.max_abs().max(1.0);
    if !g.is_normalized(tol * scale) {
        return false;
    }
    let shape = g.shape();
    shape.indices().all(|p| {
        let s: f64 = (0..g.num_players())
            .map(|m| shape.count(m) as f64 * g.utility_at(m, p))
            .sum();
        s.abs() <= tol * scale
    })
}
