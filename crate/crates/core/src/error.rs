use thiserror::Error;

use crate::polyring::PolyError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),

    /// Negative powers of `t` survived the localization sum, so the
    /// restriction tuple does not come from a class on the total space.
    #[error("inconsistent class: localization sum leaves {0}")]
    InconsistentClass(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("basis construction failed: {0}")]
    BasisConstruction(String),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("Chern class mismatch on `{component}`: data gives {from_data}, closed form gives {closed_form}")]
    ChernMismatch {
        component: String,
        from_data: String,
        closed_form: String,
    },

    #[error("unsupported partner: {0}")]
    UnsupportedPartner(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    Parse(String),
}
