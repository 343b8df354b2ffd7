//! Job documents for `novikov-core`: parsing, dispatch and reports.
//!
//! A document is a JSON object with a `kind`, optional `options`
//! (`precision`, `direction`) and a kind-specific `payload`. Polynomials are
//! coefficient maps keyed by decimal exponents, `{"0": 1, "1": -2}` for
//! `1 - 2z`; bare integers are constants and `{"num": .., "den": ..}` is an
//! element of the rational subring. Matrices are arrays of rows. Complexes
//! are `{"lo", "ranks", "differentials": {"i": matrix}}` with `d_i` mapping
//! degree `i` to `i - 1`.

pub mod corpus;
pub mod document;
pub mod report;
pub mod run;

pub use document::{
    parse_complex_text, parse_document, parse_matrix_text, parse_polynomial, JobDocument, Kind, Options, Payload,
};
pub use report::{Format, Report};
pub use run::{run, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {path}: {reason}")]
    Parse { path: String, reason: String },

    #[error("validation error at {path}: {source}")]
    Validation { path: String, source: novikov_core::Error },

    #[error(transparent)]
    Core(#[from] novikov_core::Error),

    #[error("oracle cross-check failed: {0}")]
    Oracle(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INCONCLUSIVE: i32 = 1;
    pub const ERROR: i32 = 2;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(novikov_core::Error::Inconclusive { .. }) => exit::INCONCLUSIVE,
            _ => exit::ERROR,
        }
    }
}

/// Outcome of one job: the rendered report or the error, plus exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: Result<String, String>,
    pub code: i32,
}

/// Parses, runs and renders a document.
pub fn process(text: &str, cfg: &RunConfig, format: Format) -> Outcome {
    match parse_document(text).and_then(|doc| run(&doc, cfg)) {
        Ok(report) => Outcome {
            code: if report.conclusive {
                exit::OK
            } else {
                exit::INCONCLUSIVE
            },
            output: Ok(report.render(format)),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            output: Err(e.to_string()),
        },
    }
}
