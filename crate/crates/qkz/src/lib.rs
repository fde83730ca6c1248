//! Std front end for `qkz-core`: JSON formats, the on-disk solution cache,
//! a small worker pool and the command implementations behind the `qkz`
//! binary.

pub mod cache;
pub mod cli;
pub mod json;
pub mod pool;

use std::path::PathBuf;

use qkz_core::nilp::NilpError;
use qkz_core::qkz::QkzError;

pub use cache::Cache;
pub use json::FormatError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Qkz(#[from] QkzError),
    #[error(transparent)]
    Nilp(#[from] NilpError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl AppError {
    /// 2 for requests outside the supported envelope, 3 for everything
    /// else (solver invariants, corrupt files, I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_)
            | AppError::Qkz(QkzError::BadSize(_))
            | AppError::Nilp(NilpError::SizeLimit { .. }) => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qkz_core::linkpattern::LinkPattern;

    #[test]
    fn exit_codes() {
        assert_eq!(AppError::Usage("x".into()).exit_code(), 2);
        assert_eq!(AppError::Qkz(QkzError::BadSize(3)).exit_code(), 2);
        assert_eq!(
            AppError::Nilp(NilpError::SizeLimit { n: 9, max: 7 }).exit_code(),
            2
        );
        let stalled = QkzError::Stalled {
            unresolved: vec![LinkPattern::fully_nested(4)],
        };
        assert_eq!(AppError::Qkz(stalled).exit_code(), 3);
        let norm = QkzError::NormalizationFailure {
            pattern: LinkPattern::fully_nested(4),
            reason: "x",
        };
        assert_eq!(AppError::Qkz(norm).exit_code(), 3);
    }
}
