use liefol_core::catalog::CatalogError;
use liefol_core::cecoh::CEError;
use liefol_core::forms::FormError;
use liefol_core::geom::GeomError;
use liefol_core::liecore::LieError;
use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_CLAIM_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input.
    #[error("input error: {0}")]
    Input(String),
    /// A computed object violated an invariant that holds by construction.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CEError> for CliError {
    fn from(e: CEError) -> Self {
        match e {
            CEError::NotAComplex { .. } => CliError::Internal(e.to_string()),
            CEError::Lie(LieError::RepresentationLaw { .. }) => {
                CliError::Input(format!("{e} (run `liefol validate` on the input)"))
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        // Entries build their own inputs: only the name and parameters can
        // be wrong on the caller's side.
        match e {
            CatalogError::UnknownEntry(_) | CatalogError::InvalidParam(_) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}
