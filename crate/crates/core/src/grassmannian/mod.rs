//! Big-cell planes of the Sato Grassmannian, the right action of operators on
//! Laurent series, spectral algebra and field, and rank.

mod action;
mod dictionary;
mod plane;
pub(crate) mod spectral;
mod tails;
#[cfg(test)]
mod tests;

pub use action::right_act;
pub use dictionary::{
    conjugate_spectral, dressing_from_plane, dressing_from_plane_to, plane_from_dressing,
};
pub use plane::{example_4_5, rank_two_example, Plane};
pub use spectral::{
    field_membership, quotient_dim, rank, spectral_membership, RankReport, SpectralCert,
    SpectralCheck,
};
pub use tails::{clear_tails, frac_certify, FracCertificate};
