use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: quasilocal_core::Error,
    },
}

pub type HResult<T> = Result<T, HarnessError>;

/// Tag a core error with the pipeline stage it came from.
pub fn stage<T>(stage: &'static str, r: quasilocal_core::Result<T>) -> HResult<T> {
    r.map_err(|source| HarnessError::Stage { stage, source })
}
