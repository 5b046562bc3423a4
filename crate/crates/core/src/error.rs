use thiserror::Error;

/// Errors produced by game construction, the flow operators and the analyses
/// built on top of them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("strategy index {index} out of range for player {player} with {count} strategies")]
    Bounds {
        player: usize,
        index: usize,
        count: usize,
    },

    #[error("invalid player {player} (game has {num_players} players)")]
    InvalidPlayer { player: usize, num_players: usize },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },

    #[error("game too large: {nodes} profiles exceeds the cap of {cap}")]
    Size { nodes: u128, cap: usize },

    #[error("invalid game: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
