//! Design and analysis toolkit for thermal-reflow micro-ball lenses.
//!
//! Melting a patterned photoresist column above its glass transition on a
//! hydrophobic (PTFE-coated) substrate pulls it into a truncated sphere.
//! Because the melt conserves volume, the final ball-lens diameter follows
//! from the pattern diameter, the resist thickness and the equilibrium
//! contact angle alone. This crate implements that model and the
//! supporting workflows:
//!
//! - [`geometry`]: spherical-cap relations, volumes and a quadrature-based
//!   volume check.
//! - [`conservation`]: forward lens prediction and the two inverse design
//!   directions.
//! - [`wetting`]: Young's equation and wetting-regime classification.
//! - [`spincoat`]: power-law spin-speed calibration and design sweeps.
//! - [`metrology`]: roughness, sphere fits to stylus scans, and
//!   experiment-versus-model comparison.
//! - [`recipe`]: fabrication-recipe data model and rule-based validation.

pub mod conservation;
pub mod error;
pub mod geometry;
pub mod metrology;
pub mod recipe;
pub mod spincoat;
pub mod wetting;

pub use conservation::{DesignRow, ResistPattern};
pub use error::{Error, Result};
pub use geometry::{ContactAngle, LensGeometry, VolumeConvention};
pub use metrology::{ComparisonRow, MeasuredLens, SurfaceProfile};
pub use recipe::{ProcessRecipe, ProcessStep, ValidationReport};
pub use spincoat::{CalibrationPoint, SpinModel};
pub use wetting::{HydrophobicityClass, SurfaceEnergies, WettingRegime};

/// Contact angle of melted AZ4620 on the PTFE coating, the toolkit-wide
/// default when no angle is given.
pub const DEFAULT_CONTACT_ANGLE_DEG: f64 = 116.0;
