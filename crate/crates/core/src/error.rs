use thiserror::Error;

use crate::dynamics::KinematicState;
use crate::transvec::TranslationKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation angle {angle} rad outside the supported domain [0, {limit})")]
    Domain { angle: f64, limit: f64 },

    #[error("expected a {expected} translation vector, got {found}")]
    KindMismatch {
        expected: TranslationKind,
        found: TranslationKind,
    },

    #[error("singular linear system while inverting the {0} map")]
    Singular(&'static str),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("rotation vector left the domain at t = {t} s")]
    IntegrationDomain { t: f64, last: Box<KinematicState> },

    #[error("t = {t} s outside the profile horizon [0, {horizon}] s")]
    OutOfHorizon { t: f64, horizon: f64 },

    #[error(
        "ground truth not converged: {quantity} changed by {change:e} (relative) under refinement"
    )]
    NotConverged { quantity: &'static str, change: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
