use thiserror::Error;

use crate::distmodel::SpecError;
use crate::quadrature::QuadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution spec: {0}")]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("{family} does not provide {capability}")]
    UnsupportedCapability {
        family: &'static str,
        capability: &'static str,
    },
    #[error("t = {t} lies beyond the support (survival is 0)")]
    BeyondSupport { t: f64 },
    #[error("t = {t} must exceed the integration origin {origin}")]
    OriginSingularity { t: f64, origin: f64 },
    #[error("{family} has no formal extension below its support start")]
    FormalUnavailable { family: &'static str },
    #[error("mean residual life must be positive, got {value} at t = {t}")]
    NonPositiveMrl { t: f64, value: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unknown corpus case {0:?}")]
    UnknownCase(String),
    #[error("shortcut {shortcut} says {shortcut_relation} but the grid check says {grid_relation}")]
    ShortcutDisagreement {
        shortcut: String,
        shortcut_relation: String,
        grid_relation: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
