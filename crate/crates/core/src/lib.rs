//! Exact computation of supports of multi-variable monodromy data.
//!
//! Supports are finite unions of codimension-one subtori of (ℂ*)^r translated by
//! torsion points. Two routes produce them:
//!
//! * [`oracle::arrangement_support`]: the dense-edge formula for rational
//!   hyperplane arrangements, one component `∏_{i ∈ W} t_i = 1` per dense edge `W`;
//! * [`zeta::support_from_resolution`]: the union over strata of the zero and
//!   polar loci of the multi-variable monodromy zeta functions read off from
//!   log-resolution data.
//!
//! For line arrangements in ℂ² the resolution data is generated automatically
//! ([`arrangement::line_arrangement_resolution`]) and the two routes can be
//! compared exactly. Membership of a torsion local system in the support
//! decides simplicity of its direct images ([`oracle::simplicity_report`]).

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod torus;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{IntVector, Rational};
pub use torus::{FactoredTorusFunction, SupportSet, TorsionPoint, TranslatedSubtorus};
