use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A function was evaluated outside the region where it is defined and smooth.
    #[error("{function} is not defined at {point}")]
    Domain { function: String, point: String },

    /// A fractional-linear map hit a vanishing denominator.
    #[error("{map} has a pole at {point}")]
    Pole { map: &'static str, point: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A vector field could not be written in the symmetry basis.
    #[error("vector field is not in the span of X1..X5; residual {residual}")]
    NotInSpan { residual: String },

    #[error(
        "quadrature did not reach tolerance {tolerance:e} within {max_intervals} subintervals"
    )]
    Tolerance {
        tolerance: f64,
        max_intervals: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Failure while evaluating one node of a scenario grid.
    #[error("at grid node (f={f}, g={g}): {source}")]
    GridNode {
        f: f64,
        g: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(function: impl Into<String>, point: impl std::fmt::Debug) -> Self {
        Error::Domain {
            function: function.into(),
            point: format!("{point:?}"),
        }
    }

    pub(crate) fn pole(map: &'static str, point: impl std::fmt::Debug) -> Self {
        Error::Pole {
            map,
            point: format!("{point:?}"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
