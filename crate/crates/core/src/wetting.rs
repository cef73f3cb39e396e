//! Surface-energy wetting model: Young's equation and regime classification.
//!
//! A drop on a substrate spreads when the solid surface energy exceeds the
//! combined liquid-solid and liquid surface energies, beads up in the
//! opposite extreme, and otherwise settles at the Young equilibrium angle
//! `cos theta = (S_sa - S_ls) / S_al`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ContactAngle;

/// The three interfacial energies (mJ/m^2) at a solid-liquid-air triple line:
/// solid-air `S_sa`, liquid-solid `S_ls`, air-liquid `S_al`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceEnergies {
    pub solid_air: f64,
    pub liquid_solid: f64,
    pub air_liquid: f64,
}

impl SurfaceEnergies {
    pub fn new(solid_air: f64, liquid_solid: f64, air_liquid: f64) -> Result<Self> {
        for (value, quantity) in [
            (solid_air, "solid-air surface energy (mJ/m^2)"),
            (liquid_solid, "liquid-solid surface energy (mJ/m^2)"),
        ] {
            if !value.is_finite() {
                return Err(Error::Domain {
                    quantity,
                    value,
                    constraint: "must be finite",
                });
            }
        }
        if !(air_liquid > 0.0 && air_liquid.is_finite()) {
            return Err(Error::Domain {
                quantity: "air-liquid surface energy (mJ/m^2)",
                value: air_liquid,
                constraint: "liquid surface tension must be positive",
            });
        }
        Ok(Self {
            solid_air,
            liquid_solid,
            air_liquid,
        })
    }
}

/// Equilibrium behaviour of a drop on the substrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WettingRegime {
    /// `S_sa > S_ls + S_al`: the drop spreads into a film.
    Spreading,
    /// An equilibrium contact angle exists.
    PartialWetting,
    /// `S_sa < S_ls - S_al`: the drop minimizes contact, pulling into a ball.
    Beading,
}

/// Conventional label for a contact angle magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HydrophobicityClass {
    /// theta < 90 deg
    Hydrophilic,
    /// 90 deg <= theta < 150 deg
    Hydrophobic,
    /// theta >= 150 deg
    SuperHydrophobic,
}

/// Young equilibrium angle `theta = arccos((S_sa - S_ls) / S_al)` in degrees.
///
/// Fails with [`Error::NoEquilibriumAngle`] when the cosine argument leaves
/// (-1, 1); use [`classify_wetting`] to tell which side was left.
pub fn young_contact_angle(energies: SurfaceEnergies) -> Result<ContactAngle> {
    let cos_theta = (energies.solid_air - energies.liquid_solid) / energies.air_liquid;
    if !(cos_theta.abs() < 1.0) {
        return Err(Error::NoEquilibriumAngle { cos_theta });
    }
    ContactAngle::new(cos_theta.acos().to_degrees())
}

/// Spreading / partial wetting / beading from the energy inequalities.
pub fn classify_wetting(energies: SurfaceEnergies) -> WettingRegime {
    if energies.solid_air > energies.liquid_solid + energies.air_liquid {
        WettingRegime::Spreading
    } else if energies.solid_air < energies.liquid_solid - energies.air_liquid {
        WettingRegime::Beading
    } else {
        WettingRegime::PartialWetting
    }
}

/// Hydrophilic below 90 deg, hydrophobic from 90 deg, superhydrophobic from
/// 150 deg up (boundary values take the higher label).
pub fn classify_angle(theta: ContactAngle) -> HydrophobicityClass {
    let degrees = theta.degrees();
    if degrees < 90.0 {
        HydrophobicityClass::Hydrophilic
    } else if degrees < 150.0 {
        HydrophobicityClass::Hydrophobic
    } else {
        HydrophobicityClass::SuperHydrophobic
    }
}
