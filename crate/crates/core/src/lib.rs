//! Spontaneous emission and free-carrier absorption by hot electrons in
//! many-valley semiconductors, for acoustic-phonon and ionized-impurity
//! scattering.
//!
//! ```
//! use hotrad::acoustic::emission_acoustic;
//! use hotrad::units::{kelvin_to_erg, HBAR};
//! use hotrad::{CarrierState, MaterialParams, RadiationQuery, UnitVec3, ValleySet};
//!
//! let mat = MaterialParams::n_ge();
//! let t1 = kelvin_to_erg(20.0);
//! let carriers = CarrierState::field_111(6.25e14, t1, 6.25e14, 2.0 * t1)?;
//! let g0 = UnitVec3::from_components(1.0, 1.0, 1.0)?;
//! let q = RadiationQuery::new(0.1 * t1 / HBAR, g0)?;
//! let w = emission_acoustic(&mat, &ValleySet::germanium(), &carriers, &q)?;
//! assert!(w.total > 0.0);
//! # Ok::<(), hotrad::Error>(())
//! ```

pub mod acoustic;
pub mod config;
pub mod coulomb;
pub mod emission;
pub mod error;
pub mod hotfield;
pub mod material;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod sweep;
pub mod units;
pub mod vector;

pub use acoustic::Process;
pub use coulomb::{BraceMode, ScreeningParams};
pub use emission::{AngularDecomposition, Emission, ValleyResponse};
pub use error::{Error, Result};
pub use hotfield::{BracketForm, MonoValleyModel};
pub use material::{CarrierState, MaterialParams, RadiationQuery, ValleyCarriers, ValleySet};
pub use units::Constants;
pub use vector::{UnitVec3, Vec3};
