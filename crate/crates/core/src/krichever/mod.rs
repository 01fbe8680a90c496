//! Weierstrass series, elliptic and cuspidal planes, their commuting operator
//! pairs, z-side operators acting on planes, and rank-one checks.

mod curve;
mod elliptic;
mod sections;

pub use curve::{ode_residual, weierstrass_p, CurveData, WeierstrassSeries};
pub use elliptic::{
    certified_differential, conjugated_pair, conjugated_section, elliptic_plane, rank1_verify,
    section_operator, section_psdo, ConjugatedPair, EllipticPlane,
};
pub use sections::{section_check, z_apply, SectionCheck, SectionVerdict, ZOperator};
