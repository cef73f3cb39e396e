//! Spherical-cap and ball-lens geometry.
//!
//! A reflowed lens sitting on a substrate is a sphere of diameter `D_b`
//! truncated by the substrate plane. Its shape is fixed by the equilibrium
//! contact angle `theta`: the sag height is `h = (D_b/2)(1 - cos theta)` and
//! the contact radius is `a = (D_b/2) sin theta`. Lengths are micrometers,
//! volumes cubic micrometers, angles degrees at API boundaries.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Equilibrium contact angle in degrees, restricted to the open interval
/// (0, 180). The endpoints are degenerate: 0 is full wetting, 180 a free
/// sphere with no contact area, and both make the profile relation singular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ContactAngle {
    degrees: f64,
}

impl ContactAngle {
    pub fn new(degrees: f64) -> Result<Self> {
        if !(degrees > 0.0 && degrees < 180.0) {
            return Err(Error::Domain {
                quantity: "contact angle (deg)",
                value: degrees,
                constraint: "0 < theta < 180",
            });
        }
        Ok(Self { degrees })
    }

    pub fn degrees(self) -> f64 {
        self.degrees
    }

    pub fn radians(self) -> f64 {
        self.degrees.to_radians()
    }
}

impl TryFrom<f64> for ContactAngle {
    type Error = Error;

    fn try_from(degrees: f64) -> Result<Self> {
        Self::new(degrees)
    }
}

/// Which part of the truncated sphere counts as the lens volume.
///
/// The sphere splits into two caps at the substrate plane. `SessileDrop`
/// takes the cap of height `R(1 - cos theta)`, the classical sessile-drop
/// volume. `CapComplement` takes the rest of the sphere, i.e. the sessile
/// cap of the supplementary angle. The two fractions sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum VolumeConvention {
    #[default]
    CapComplement,
    SessileDrop,
}

impl VolumeConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            VolumeConvention::CapComplement => "cap-complement",
            VolumeConvention::SessileDrop => "sessile-drop",
        }
    }
}

impl std::str::FromStr for VolumeConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cap-complement" => Ok(VolumeConvention::CapComplement),
            "sessile-drop" => Ok(VolumeConvention::SessileDrop),
            other => Err(Error::Format(format!(
                "unknown volume convention \"{other}\" (expected \"cap-complement\" or \"sessile-drop\")"
            ))),
        }
    }
}

impl std::fmt::Display for VolumeConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fraction of the full sphere volume occupied by the lens, in (0, 1).
///
/// The sessile cap holds `(2 + cos theta)(1 - cos theta)^2 / 4` of the
/// sphere; the complement holds one minus that.
pub fn cap_fill_fraction(theta: ContactAngle, convention: VolumeConvention) -> f64 {
    let c = theta.radians().cos();
    let cap = (2.0 + c) * (1.0 - c) * (1.0 - c) / 4.0;
    match convention {
        VolumeConvention::SessileDrop => cap,
        VolumeConvention::CapComplement => 1.0 - cap,
    }
}

/// Sag height `h = (D_b/2)(1 - cos theta)` of a lens of sphere diameter
/// `sphere_diameter_um`.
pub fn sag_height(sphere_diameter_um: f64, theta: ContactAngle) -> Result<f64> {
    ensure_positive(sphere_diameter_um, "sphere diameter (um)")?;
    Ok(sphere_diameter_um / 2.0 * (1.0 - theta.radians().cos()))
}

/// Contact angle recovered from a measured sphere radius and sag height:
/// `theta = 90 deg + atan((2h - 2R) / sqrt(8Rh - 4h^2))`.
///
/// Inverts [`sag_height`]: for any valid angle,
/// `contact_angle_from_profile(D/2, sag_height(D, theta)) == theta`.
pub fn contact_angle_from_profile(radius_um: f64, sag_um: f64) -> Result<ContactAngle> {
    ensure_positive(radius_um, "sphere radius (um)")?;
    if !(sag_um > 0.0 && sag_um < 2.0 * radius_um) {
        return Err(Error::Domain {
            quantity: "sag height (um)",
            value: sag_um,
            constraint: "0 < h < 2R",
        });
    }
    // 8Rh - 4h^2 = 4h(2R - h) > 0 given the range check above.
    let root = (8.0 * radius_um * sag_um - 4.0 * sag_um * sag_um).sqrt();
    let degrees = 90.0 + ((2.0 * sag_um - 2.0 * radius_um) / root).atan().to_degrees();
    ContactAngle::new(degrees)
}

/// Radius `a = R sin theta` of the circular lens-substrate contact area.
pub fn contact_radius(radius_um: f64, theta: ContactAngle) -> Result<f64> {
    ensure_positive(radius_um, "sphere radius (um)")?;
    Ok(radius_um * theta.radians().sin())
}

/// Lens volume `f(theta) * (pi/6) D_b^3` under the given convention.
pub fn lens_volume(
    sphere_diameter_um: f64,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> Result<f64> {
    ensure_positive(sphere_diameter_um, "sphere diameter (um)")?;
    Ok(cap_fill_fraction(theta, convention) * PI / 6.0 * sphere_diameter_um.powi(3))
}

/// Volume `pi d_b^2 t_b / 4` of the cylindrical resist column before reflow.
pub fn column_volume(pattern_diameter_um: f64, thickness_um: f64) -> Result<f64> {
    ensure_positive(pattern_diameter_um, "pattern diameter (um)")?;
    ensure_positive(thickness_um, "resist thickness (um)")?;
    Ok(PI * pattern_diameter_um * pattern_diameter_um * thickness_um / 4.0)
}

/// Brute-force check value for the sessile-drop volume, computed without the
/// closed form: the cap is integrated as a solid of revolution,
/// `V = int_0^h pi (R^2 - (z - (h - R))^2) dz` with `h = R(1 - cos theta)`,
/// by composite Simpson quadrature over 100 000 panels.
///
/// Kept deliberately independent of [`cap_fill_fraction`] so the two routes
/// can be checked against each other.
pub fn oracle_volume(sphere_diameter_um: f64, theta: ContactAngle) -> Result<f64> {
    ensure_positive(sphere_diameter_um, "sphere diameter (um)")?;
    const PANELS: usize = 100_000;

    let radius = sphere_diameter_um / 2.0;
    let height = radius * (1.0 - theta.radians().cos());
    let center_z = height - radius;
    let section_area = |z: f64| {
        let w = z - center_z;
        PI * (radius * radius - w * w)
    };

    let dz = height / PANELS as f64;
    let mut sum = section_area(0.0) + section_area(height);
    for i in 1..PANELS {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * section_area(i as f64 * dz);
    }
    Ok(sum * dz / 3.0)
}

/// Equilibrium ball lens resting on the substrate.
///
/// Construct through [`LensGeometry::from_diameter_and_angle`] or
/// [`LensGeometry::from_diameter_and_sag`] so that the fields stay mutually
/// consistent (`a = R sin theta`, `h = R(1 - cos theta)`,
/// `a^2 + (h - R)^2 = R^2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LensGeometry {
    pub sphere_diameter_um: f64,
    pub sag_height_um: f64,
    #[serde(rename = "contact_angle_deg")]
    pub contact_angle: ContactAngle,
    pub contact_radius_um: f64,
    pub volume_um3: f64,
}

impl LensGeometry {
    /// Build the lens from its sphere diameter and contact angle.
    pub fn from_diameter_and_angle(
        sphere_diameter_um: f64,
        theta: ContactAngle,
        convention: VolumeConvention,
    ) -> Result<Self> {
        let radius = sphere_diameter_um / 2.0;
        Ok(Self {
            sphere_diameter_um,
            sag_height_um: sag_height(sphere_diameter_um, theta)?,
            contact_angle: theta,
            contact_radius_um: contact_radius(radius, theta)?,
            volume_um3: lens_volume(sphere_diameter_um, theta, convention)?,
        })
    }

    /// Build the lens from its sphere diameter and measured sag height; the
    /// contact angle is recovered from the profile relation.
    pub fn from_diameter_and_sag(
        sphere_diameter_um: f64,
        sag_height_um: f64,
        convention: VolumeConvention,
    ) -> Result<Self> {
        ensure_positive(sphere_diameter_um, "sphere diameter (um)")?;
        let radius = sphere_diameter_um / 2.0;
        let theta = contact_angle_from_profile(radius, sag_height_um)?;
        Ok(Self {
            sphere_diameter_um,
            sag_height_um,
            contact_angle: theta,
            contact_radius_um: contact_radius(radius, theta)?,
            volume_um3: lens_volume(sphere_diameter_um, theta, convention)?,
        })
    }

    pub fn radius_um(&self) -> f64 {
        self.sphere_diameter_um / 2.0
    }
}

pub(crate) fn ensure_positive(value: f64, quantity: &'static str) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::Domain {
            quantity,
            value,
            constraint: "must be positive and finite",
        });
    }
    Ok(())
}
