//! Barrlund p-relative distance and companion intrinsic metrics of planar
//! domains.
//!
//! For a proper subdomain `G` of the plane, `p >= 1` and `z1, z2` in `G`,
//!
//! ```text
//! b_{G,p}(z1, z2) = sup_{z in ∂G} |z1 - z2| / (|z1 - z|^p + |z - z2|^p)^(1/p)
//! ```
//!
//! with the maximum of the two distances in place of the p-norm when
//! `p = ∞`. The case `p = 1` is the triangular ratio metric `s_G`.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: domains, membership, boundary distance and sampling.
//! * [`numerics`]: quartic roots, periodic minimisation, bisection, AGM.
//! * [`metrics`]: hyperbolic, triangular ratio, point-pair and `m_D`.
//! * [`barrlund`]: closed forms and guarded numerical evaluation of `b_{G,p}`.
//! * [`bounds`]: the half-plane lower bounds `T_p` and `U_p`.
//! * [`mobius_qc`]: Möbius maps, Lipschitz experiments, the Grötzsch modulus
//!   and the distortion function `φ_K`.
//! * [`validation`]: the boundary-sampling oracle and the property suites.
//! * [`levelset`]: marching-squares level curves of any of the metrics.

pub mod barrlund;
pub mod bounds;
mod error;
pub mod geometry;
pub mod levelset;
pub mod metrics;
pub mod mobius_qc;
pub mod numerics;
pub mod validation;

pub use barrlund::{b, BoundaryMode, PExponent};
pub use error::{Error, Result};
pub use geometry::{BoundaryWindow, ComplexPoint, Domain, PolygonWithHoles, Ring};
pub use metrics::{Method, MetricResult};
pub use validation::VerificationReport;
