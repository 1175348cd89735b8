use thiserror::Error;

/// Which budget a solve ran out of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Nodes,
    Time,
    Vertices,
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BudgetKind::Nodes => "search nodes",
            BudgetKind::Time => "wall-clock time",
            BudgetKind::Vertices => "vertex count",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("result would have {vertices} vertices, over the budget of {budget}")]
    Size { vertices: String, budget: u64 },

    #[error("{kind} budget exhausted after {nodes} search nodes (best value so far {best})")]
    Budget { kind: BudgetKind, nodes: u64, best: usize },

    #[error("theta solver did not converge within {iterations} iterations (best gap {gap:e})")]
    Convergence {
        iterations: usize,
        gap: f64,
        lower: f64,
        upper: f64,
    },

    #[error("matrix is not fitting for the graph at ({row}, {col}): {reason}")]
    FittingViolation { row: usize, col: usize, reason: String },

    #[error("no power of the graph could be solved within budget (skipped k = {skipped:?})")]
    NoLowerBound { skipped: Vec<u32> },

    #[error("sum certificate derivation failed: margin deficit {deficit:e}")]
    DerivationFailed { deficit: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn format(offset: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: msg.into(),
        }
    }

    /// True for errors a caller may retry with a larger budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Size { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
