use std::path::PathBuf;

use geomint_core::evalkit::EvalError;
use geomint_core::solver::TrialError;
use geomint_core::synth::SynthError;
use geomint_core::trials::ProblemError;
use geomint_core::FigureError;

/// Everything that can go wrong outside of argument parsing.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        source: image::ImageError,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Problem { path: PathBuf, source: ProblemError },
    #[error("{path}: {source}")]
    Figure { path: PathBuf, source: FigureError },
    #[error(transparent)]
    Trial(#[from] TrialError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("report: {0}")]
    Report(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
