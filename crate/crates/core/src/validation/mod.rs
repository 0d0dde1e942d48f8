//! Independent checks: a boundary-sampling oracle, seeded property suites
//! and conjecture searches, all producing [`VerificationReport`]s.

pub mod balls;
pub mod conjecture;
pub mod oracle;
mod report;
pub mod sampling;
pub mod suites;

pub use conjecture::{search_artanh_triangle, search_mobius_conjecture};
pub use report::VerificationReport;
pub use suites::{run_inequality_suite, run_named, run_oracle_suite, suite_names};
