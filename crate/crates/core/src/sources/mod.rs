//! Coefficient providers for the zeta function, Dirichlet characters,
//! newforms and elliptic curves.

mod character;
mod elliptic;
mod source;

pub use character::DirichletCharacter;
pub use elliptic::{count_points, frobenius_trace, EllipticCurve, MAX_POINT_COUNT_PRIME};
pub use source::{
    character_source, elliptic_source, newform_source, parse_ap_table, zeta_source,
    CoefficientSource, EulerFactor, SourceKind,
};

