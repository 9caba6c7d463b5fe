use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge (worst residual {worst_residual:e})")]
    Convergence { worst_residual: f64 },

    #[error("validation error: {0}")]
    Validation(String),

    /// The charge-basis cutoff kept changing the spectrum up to the cap.
    #[error("charge cutoff did not converge up to ncut = {max_ncut} (last change {last_change:e} GHz)")]
    Cutoff { max_ncut: usize, last_change: f64 },

    #[error("degenerate detuning: {0}")]
    Degeneracy(String),

    #[error("dressed-state labeling ambiguous for |{qubit},{photons}> (overlap {overlap:.3})")]
    Labeling {
        qubit: usize,
        photons: usize,
        overlap: f64,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("reduction error: {0}")]
    Reduction(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("no solution for {quantity} in bracket [{lo}, {hi}]")]
    Infeasible { quantity: String, lo: f64, hi: f64 },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("{element}: {source}")]
    Element {
        element: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn in_element(self, element: &str) -> Error {
        Error::Element {
            element: element.to_string(),
            source: Box::new(self),
        }
    }
}
