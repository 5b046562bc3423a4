//! Strategic-form games, profile indexing and the normal forms that only
//! touch payoffs (normalization, zero-sum / identical-interest split).
//!
//! Profiles are stored in mixed-radix order with the last player varying
//! fastest, so a two-player game's utility vector is its payoff matrix in
//! row-major order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::flow;

/// Default tolerance for payoff comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Upper bound on the number of strategy profiles unless overridden.
pub const DEFAULT_MAX_NODES: usize = 10_000_000;

/// Environment variable that overrides [`DEFAULT_MAX_NODES`].
pub const MAX_NODES_ENV: &str = "GAMEHODGE_MAX_NODES";

/// The active node cap: `GAMEHODGE_MAX_NODES` when set to a positive
/// integer, [`DEFAULT_MAX_NODES`] otherwise.
pub fn node_cap() -> usize {
    std::env::var(MAX_NODES_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_NODES)
}

/// Joint strategy space of a game: per-player strategy counts plus the
/// mixed-radix strides used to index profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    counts: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Shape {
    pub fn new(counts: &[usize]) -> Result<Self> {
        Self::with_cap(counts, node_cap())
    }

    pub fn with_cap(counts: &[usize], cap: usize) -> Result<Self> {
        if counts.is_empty() {
            return Err(GameError::Invalid("a game needs at least one player".into()));
        }
        if let Some(m) = counts.iter().position(|&h| h == 0) {
            return Err(GameError::Invalid(format!(
                "player {m} has no strategies"
            )));
        }
        let total: u128 = counts.iter().fold(1u128, |acc, &h| acc.saturating_mul(h as u128));
        if total > cap as u128 {
            return Err(GameError::Size { nodes: total, cap });
        }
        let mut strides = vec![1usize; counts.len()];
        for m in (0..counts.len().saturating_sub(1)).rev() {
            strides[m] = strides[m + 1] * counts[m + 1];
        }
        Ok(Shape {
            counts: counts.to_vec(),
            strides,
            size: total as usize,
        })
    }

    pub fn num_players(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, m: usize) -> usize {
        self.counts[m]
    }

    /// Number of strategy profiles |E|.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn stride(&self, m: usize) -> usize {
        self.strides[m]
    }

    /// Number of opponent profiles p^{-m}, i.e. |E| / h_m.
    pub fn opponent_profiles(&self, m: usize) -> usize {
        self.size / self.counts[m]
    }

    pub fn check_player(&self, m: usize) -> Result<()> {
        if m < self.counts.len() {
            Ok(())
        } else {
            Err(GameError::InvalidPlayer {
                player: m,
                num_players: self.counts.len(),
            })
        }
    }

    /// Mixed-radix index of a profile, last player fastest.
    pub fn index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.counts.len() {
            return Err(GameError::ShapeMismatch(format!(
                "profile has {} coordinates, game has {} players",
                coords.len(),
                self.counts.len()
            )));
        }
        let mut idx = 0;
        for (m, (&c, &h)) in coords.iter().zip(&self.counts).enumerate() {
            if c >= h {
                return Err(GameError::Bounds {
                    player: m,
                    index: c,
                    count: h,
                });
            }
            idx = idx * h + c;
        }
        Ok(idx)
    }

    /// Inverse of [`Shape::index`].
    pub fn profile(&self, idx: usize) -> Profile {
        debug_assert!(idx < self.size);
        let coords = self
            .counts
            .iter()
            .zip(&self.strides)
            .map(|(&h, &s)| (idx / s) % h)
            .collect();
        Profile(coords)
    }

    /// Strategy of player `m` at profile `idx`.
    #[inline]
    pub fn coordinate(&self, m: usize, idx: usize) -> usize {
        (idx / self.strides[m]) % self.counts[m]
    }

    /// Index of the opponent profile p^{-m} of node `idx`, in
    /// `0..opponent_profiles(m)`.
    #[inline]
    pub fn block_of(&self, m: usize, idx: usize) -> usize {
        let s = self.strides[m];
        let hi = idx / (s * self.counts[m]);
        let lo = idx % s;
        hi * s + lo
    }

    /// Node whose opponent profile is `block` and whose own strategy is `a`.
    #[inline]
    pub fn node_in_block(&self, m: usize, block: usize, a: usize) -> usize {
        let s = self.strides[m];
        let hi = block / s;
        let lo = block % s;
        hi * s * self.counts[m] + a * s + lo
    }

    /// Node reached when player `m` switches to strategy `a` at `idx`.
    #[inline]
    pub fn deviate(&self, m: usize, idx: usize, a: usize) -> usize {
        let s = self.strides[m];
        idx - self.coordinate(m, idx) * s + a * s
    }

    /// Iterator over profile indices in increasing order.
    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

/// A strategy profile: one 0-based strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Mixed-radix index of `p` for strategy counts `h`.
pub fn profile_index(p: &[usize], h: &[usize]) -> Result<usize> {
    Shape::new(h)?.index(p)
}

/// Inverse of [`profile_index`].
pub fn profile_of_index(idx: usize, h: &[usize]) -> Result<Profile> {
    let shape = Shape::new(h)?;
    if idx >= shape.len() {
        return Err(GameError::Bounds {
            player: 0,
            index: idx,
            count: shape.len(),
        });
    }
    Ok(shape.profile(idx))
}

/// A finite strategic-form game: one utility vector per player over the
/// joint strategy space.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    shape: Shape,
    player_names: Option<Vec<String>>,
    strategy_labels: Option<Vec<Vec<String>>>,
    utilities: Vec<Vec<f64>>,
}

impl Game {
    pub fn new(counts: &[usize], utilities: Vec<Vec<f64>>) -> Result<Self> {
        let shape = Shape::new(counts)?;
        Self::from_shape(shape, utilities)
    }

    pub fn from_shape(shape: Shape, utilities: Vec<Vec<f64>>) -> Result<Self> {
        if utilities.len() != shape.num_players() {
            return Err(GameError::Invalid(format!(
                "expected {} utility arrays, got {}",
                shape.num_players(),
                utilities.len()
            )));
        }
        for (m, u) in utilities.iter().enumerate() {
            if u.len() != shape.len() {
                return Err(GameError::Invalid(format!(
                    "utilities of player {m} have length {}, expected {}",
                    u.len(),
                    shape.len()
                )));
            }
            if let Some(i) = u.iter().position(|v| !v.is_finite()) {
                return Err(GameError::Invalid(format!(
                    "utility of player {m} at profile {i} is not finite"
                )));
            }
        }
        Ok(Game {
            shape,
            player_names: None,
            strategy_labels: None,
            utilities,
        })
    }

    /// The game with every payoff equal to zero.
    pub fn zeros(shape: &Shape) -> Self {
        Game {
            shape: shape.clone(),
            player_names: None,
            strategy_labels: None,
            utilities: vec![vec![0.0; shape.len()]; shape.num_players()],
        }
    }

    /// Two-player game from row and column payoff matrices.
    pub fn bimatrix(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Self> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let well_formed = |m: &[Vec<f64>]| m.len() == rows && m.iter().all(|r| r.len() == cols);
        if rows == 0 || cols == 0 || !well_formed(a) || !well_formed(b) {
            return Err(GameError::ShapeMismatch(
                "payoff matrices must be non-empty, rectangular and of equal size".into(),
            ));
        }
        let flat = |m: &[Vec<f64>]| m.iter().flatten().copied().collect::<Vec<_>>();
        Game::new(&[rows, cols], vec![flat(a), flat(b)])
    }

    pub fn with_labels(
        mut self,
        player_names: Vec<String>,
        strategy_labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if player_names.len() != self.num_players() || strategy_labels.len() != self.num_players() {
            return Err(GameError::Invalid("label count does not match player count".into()));
        }
        for (m, labels) in strategy_labels.iter().enumerate() {
            if labels.len() != self.shape.count(m) {
                return Err(GameError::Invalid(format!(
                    "player {m} has {} strategies but {} labels",
                    self.shape.count(m),
                    labels.len()
                )));
            }
        }
        self.player_names = Some(player_names);
        self.strategy_labels = Some(strategy_labels);
        Ok(self)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn num_players(&self) -> usize {
        self.shape.num_players()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        self.shape.counts()
    }

    pub fn num_profiles(&self) -> usize {
        self.shape.len()
    }

    pub fn player_names(&self) -> Option<&[String]> {
        self.player_names.as_deref()
    }

    pub fn strategy_labels(&self) -> Option<&[Vec<String>]> {
        self.strategy_labels.as_deref()
    }

    pub fn player_name(&self, m: usize) -> String {
        self.player_names
            .as_ref()
            .map(|n| n[m].clone())
            .unwrap_or_else(|| format!("player{}", m + 1))
    }

    pub fn strategy_label(&self, m: usize, s: usize) -> String {
        self.strategy_labels
            .as_ref()
            .map(|l| l[m][s].clone())
            .unwrap_or_else(|| s.to_string())
    }

    /// Human-readable tuple of strategy labels for profile `idx`.
    pub fn profile_label(&self, idx: usize) -> String {
        let p = self.shape.profile(idx);
        let parts: Vec<String> = p
            .coords()
            .iter()
            .enumerate()
            .map(|(m, &s)| self.strategy_label(m, s))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn utilities(&self) -> &[Vec<f64>] {
        &self.utilities
    }

    pub fn player_utilities(&self, m: usize) -> &[f64] {
        &self.utilities[m]
    }

    pub fn into_utilities(self) -> Vec<Vec<f64>> {
        self.utilities
    }

    pub fn utility(&self, m: usize, p: &Profile) -> Result<f64> {
        self.shape.check_player(m)?;
        let idx = self.shape.index(p.coords())?;
        Ok(self.utilities[m][idx])
    }

    #[inline]
    pub fn utility_at(&self, m: usize, idx: usize) -> f64 {
        self.utilities[m][idx]
    }

    /// Builds a game of the same shape (and labels) from new utilities.
    pub(crate) fn map_players<F>(&self, mut f: F) -> Game
    where
        F: FnMut(usize, &[f64]) -> Vec<f64>,
    {
        let utilities = self
            .utilities
            .iter()
            .enumerate()
            .map(|(m, u)| f(m, u))
            .collect();
        Game {
            shape: self.shape.clone(),
            player_names: self.player_names.clone(),
            strategy_labels: self.strategy_labels.clone(),
            utilities,
        }
    }

    fn check_same_shape(&self, other: &Game) -> Result<()> {
        if self.shape != other.shape {
            return Err(GameError::ShapeMismatch(format!(
                "{:?} vs {:?}",
                self.shape.counts(),
                other.shape.counts()
            )));
        }
        Ok(())
    }

    /// `a * self + b * other`.
    pub fn linear_combination(&self, a: f64, other: &Game, b: f64) -> Result<Game> {
        self.check_same_shape(other)?;
        Ok(self.map_players(|m, u| {
            u.iter()
                .zip(&other.utilities[m])
                .map(|(x, y)| a * x + b * y)
                .collect()
        }))
    }

    pub fn add(&self, other: &Game) -> Result<Game> {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Game) -> Result<Game> {
        self.linear_combination(1.0, other, -1.0)
    }

    pub fn scaled(&self, a: f64) -> Game {
        self.map_players(|_, u| u.iter().map(|x| a * x).collect())
    }

    /// Largest absolute payoff over all players and profiles.
    pub fn max_abs(&self) -> f64 {
        self.utilities
            .iter()
            .flatten()
            .fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Game) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .utilities
            .iter()
            .flatten()
            .zip(other.utilities.iter().flatten())
            .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs())))
    }

    /// Flattened coordinates in R^{M|E|}, player-major.
    pub fn to_vector(&self) -> Vec<f64> {
        self.utilities.iter().flatten().copied().collect()
    }

    /// The unique strategically equivalent game whose per-player,
    /// per-opponent-profile payoff sums vanish.
    pub fn normalize(&self) -> Game {
        self.map_players(|m, u| flow::project_player(&self.shape, m, u))
    }

    /// Whether every sum over a player's own strategies (opponents fixed)
    /// is within `tol` of zero.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (0..self.num_players()).all(|m| {
            let h = self.shape.count(m);
            (0..self.shape.opponent_profiles(m)).all(|block| {
                let s: f64 = (0..h)
                    .map(|a| self.utilities[m][self.shape.node_in_block(m, block, a)])
                    .sum();
                s.abs() <= tol
            })
        })
    }

    /// Splits a two-player game into its zero-sum part
    /// `((u1-u2)/2, (u2-u1)/2)` and identical-interest part
    /// `((u1+u2)/2, (u1+u2)/2)`.
    pub fn zero_sum_identical_split(&self) -> Result<(Game, Game)> {
        if self.num_players() != 2 {
            return Err(GameError::UnsupportedShape(format!(
                "zero-sum / identical-interest split needs 2 players, got {}",
                self.num_players()
            )));
        }
        let (u1, u2) = (&self.utilities[0], &self.utilities[1]);
        let diff: Vec<f64> = u1.iter().zip(u2).map(|(a, b)| (a - b) / 2.0).collect();
        let mean: Vec<f64> = u1.iter().zip(u2).map(|(a, b)| (a + b) / 2.0).collect();
        let zero_sum = self.map_players(|m, _| {
            if m == 0 {
                diff.clone()
            } else {
                diff.iter().map(|v| -v).collect()
            }
        });
        let identical = self.map_players(|_, _| mean.clone());
        Ok((zero_sum, identical))
    }

    pub fn to_json(&self) -> GameJson {
        GameJson::from(self)
    }

    pub fn from_json(json: GameJson) -> Result<Game> {
        json.into_game()
    }

    pub fn from_json_str(s: &str) -> Result<Game> {
        let json: GameJson =
            serde_json::from_str(s).map_err(|e| GameError::Parse(e.to_string()))?;
        json.into_game()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("game JSON serializes")
    }
}

/// Wire form of a player: its name and strategy labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerJson {
    pub name: String,
    pub strategies: Vec<String>,
}

/// Wire form of a game.
///
/// `utilities[m]` lists player `m`'s payoffs over all profiles in index
/// order (last player fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameJson {
    pub players: Vec<PlayerJson>,
    pub utilities: Vec<Vec<f64>>,
}

impl GameJson {
    pub fn into_game(self) -> Result<Game> {
        let counts: Vec<usize> = self.players.iter().map(|p| p.strategies.len()).collect();
        let names = self.players.iter().map(|p| p.name.clone()).collect();
        let labels = self.players.into_iter().map(|p| p.strategies).collect();
        let game = Game::new(&counts, self.utilities).map_err(|e| match e {
            GameError::Invalid(msg) => GameError::Parse(msg),
            other => other,
        })?;
        game.with_labels(names, labels)
    }
}

impl From<&Game> for GameJson {
    fn from(g: &Game) -> Self {
        let players = (0..g.num_players())
            .map(|m| PlayerJson {
                name: g.player_name(m),
                strategies: (0..g.shape.count(m)).map(|s| g.strategy_label(m, s)).collect(),
            })
            .collect();
        GameJson {
            players,
            utilities: g.utilities.clone(),
        }
    }
}
