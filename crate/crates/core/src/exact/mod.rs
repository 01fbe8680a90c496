//! Exact scalars, truncated series in `x` and `1/z`, bivariate polynomials and
//! rational linear algebra.

pub mod linalg;
pub mod ratpoly2;
pub mod scalar;
pub mod text;
pub mod xseries;
pub mod zseries;

pub use linalg::{kernel_basis, rank, solve_affine};
pub use ratpoly2::RatPoly2;
pub use scalar::{int, parse_scalar, ratio, Scalar};
pub use xseries::XSeries;
pub use zseries::ZSeries;

/// Three-valued answer of a truncated check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    YesCertified,
    NoWitness,
    UnknownAtPrecision,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::YesCertified => "yes-certified",
            Verdict::NoWitness => "no-witness",
            Verdict::UnknownAtPrecision => "unknown-at-precision",
        })
    }
}
