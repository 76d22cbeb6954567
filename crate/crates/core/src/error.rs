use thiserror::Error;

/// Failure kinds shared by every module. The CLI maps each variant to its own
/// exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{what} of size {size} exceeds the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact division failed, so the input cannot come from a real object.
    #[error("inconsistent input: {0}")]
    Consistency(String),
    #[error("precision error: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::Capacity { what, size, cap })
    } else {
        Ok(())
    }
}
