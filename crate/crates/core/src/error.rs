use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("numeric range: {0}")]
    NumericRange(String),

    #[error(
        "quadrature did not converge{}: error estimate {achieved:.3e} exceeds requested {requested:.3e} after {subdivisions} subdivisions",
        .delta.map(|d| format!(" at delta = {d:e} rad/s")).unwrap_or_default()
    )]
    Convergence {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
        delta: Option<f64>,
    },

    #[error("configuration: {0}")]
    Configuration(String),

    #[error("no pump strength in the interval satisfies the transmission constraint (best transmission found {max_transmission:.6e})")]
    Infeasible { max_transmission: f64 },

    #[error("{line}: `{key}`: {message}")]
    Parse { line: String, key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Attaches the probe detuning at which a quadrature failure happened.
    pub fn at_delta(self, delta: f64) -> Self {
        match self {
            Error::Convergence {
                achieved,
                requested,
                subdivisions,
                delta: None,
            } => Error::Convergence {
                achieved,
                requested,
                subdivisions,
                delta: Some(delta),
            },
            other => other,
        }
    }

    /// Stable, machine-readable category used by the command-line tool.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::NumericRange(_) => "numeric-range",
            Error::Convergence { .. } => "convergence",
            Error::Configuration(_) => "configuration",
            Error::Infeasible { .. } => "infeasible",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "parse" => 2,
            "invalid-parameter" => 3,
            "configuration" => 4,
            "convergence" => 5,
            "numeric-range" => 6,
            "infeasible" => 7,
            _ => 8,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergence_errors_carry_the_detuning_once() {
        let e = Error::Convergence {
            achieved: 1e-3,
            requested: 1e-9,
            subdivisions: 100,
            delta: None,
        }
        .at_delta(2.5)
        .at_delta(7.0);
        assert!(matches!(e, Error::Convergence { delta: Some(d), .. } if d == 2.5));
        assert!(e.to_string().contains("2.5e0"));
        assert_eq!(e.category(), "convergence");
    }

    #[test]
    fn categories_map_to_distinct_exit_codes() {
        let errs = [
            Error::invalid("x", "bad"),
            Error::NumericRange(String::new()),
            Error::Configuration(String::new()),
            Error::Infeasible { max_transmission: 0.1 },
            Error::Parse {
                line: "1".into(),
                key: "k".into(),
                message: String::new(),
            },
        ];
        let mut codes: Vec<i32> = errs.iter().map(Error::exit_code).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), errs.len());
        assert!(codes.iter().all(|&c| c != 0));
    }
}
