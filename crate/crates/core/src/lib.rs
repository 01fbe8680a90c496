//! Exact pseudodifferential operator calculus over truncated power series.

pub mod acceptance;
pub mod error;
pub mod exact;
pub mod fractional;
pub mod grassmannian;
pub mod krichever;
pub mod psdo;
pub mod relations;

pub use error::{Error, Result};
pub use exact::{RatPoly2, Scalar, Verdict, XSeries, ZSeries};
pub use psdo::PsDO;
