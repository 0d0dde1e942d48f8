use crate::geometry::ComplexPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point ({}, {}) is not in the {domain}", .point.re, .point.im)]
    OutOfDomain {
        domain: &'static str,
        point: ComplexPoint,
    },

    #[error("non-finite coordinate in input point")]
    NonFinite,

    #[error("an unbounded boundary cannot be sampled without a window")]
    MissingWindow,

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("bracket [{lo}, {hi}] does not enclose a sign change")]
    BadBracket { lo: f64, hi: f64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("the radial maps are undefined at the origin")]
    ZeroInput,

    #[error("bad configuration: {0}")]
    BadConfiguration(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid exponent {0}: p must be a number >= 1 or infinity")]
    InvalidExponent(String),

    #[error("metric `{metric}` is not available on the {domain}")]
    UnsupportedMetric {
        metric: &'static str,
        domain: &'static str,
    },

    #[error("malformed polygon document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
