//! Mass-conservation design: the melted lens keeps the volume of the resist
//! column it came from, `pi d_b^2 t_b / 4 = f(theta) (pi/6) D_b^3`.
//!
//! Solving that balance for each unknown gives the forward prediction of the
//! lens diameter and the two inverse design directions (required thickness,
//! required pattern diameter). All three are closed-form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    cap_fill_fraction, column_volume, ensure_positive, ContactAngle, LensGeometry,
    VolumeConvention,
};

/// Cylindrical photoresist column as patterned, before reflow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResistPattern {
    pub pattern_diameter_um: f64,
    pub thickness_um: f64,
}

impl ResistPattern {
    pub fn new(pattern_diameter_um: f64, thickness_um: f64) -> Result<Self> {
        ensure_positive(pattern_diameter_um, "pattern diameter (um)")?;
        ensure_positive(thickness_um, "resist thickness (um)")?;
        Ok(Self {
            pattern_diameter_um,
            thickness_um,
        })
    }

    pub fn volume_um3(&self) -> f64 {
        // Positive inputs guaranteed at construction.
        column_volume(self.pattern_diameter_um, self.thickness_um).expect("validated pattern")
    }
}

/// One design-table entry: a pattern and the lens it reflows into.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignRow {
    pub pattern: ResistPattern,
    pub predicted: LensGeometry,
}

/// Lens sphere diameter produced by a resist pattern:
/// `D_b = (3 d_b^2 t_b / (2 f(theta)))^(1/3)`.
pub fn forward_lens_diameter(
    pattern: ResistPattern,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> f64 {
    let f = cap_fill_fraction(theta, convention);
    let d = pattern.pattern_diameter_um;
    (3.0 * d * d * pattern.thickness_um / (2.0 * f)).cbrt()
}

/// Full predicted geometry for a pattern.
pub fn predict_lens(
    pattern: ResistPattern,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> LensGeometry {
    let diameter = forward_lens_diameter(pattern, theta, convention);
    LensGeometry::from_diameter_and_angle(diameter, theta, convention)
        .expect("forward diameter is positive")
}

/// Resist thickness needed to reach a target lens diameter with a given
/// pattern diameter: `t_b = 2 f(theta) D^3 / (3 d_b^2)`.
pub fn required_thickness(
    target_diameter_um: f64,
    pattern_diameter_um: f64,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> Result<f64> {
    ensure_positive(target_diameter_um, "target lens diameter (um)")?;
    ensure_positive(pattern_diameter_um, "pattern diameter (um)")?;
    let f = cap_fill_fraction(theta, convention);
    Ok(2.0 * f * target_diameter_um.powi(3) / (3.0 * pattern_diameter_um * pattern_diameter_um))
}

/// Pattern diameter needed to reach a target lens diameter with a given
/// resist thickness: `d_b = sqrt(2 f(theta) D^3 / (3 t_b))`.
pub fn required_pattern_diameter(
    target_diameter_um: f64,
    thickness_um: f64,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> Result<f64> {
    ensure_positive(target_diameter_um, "target lens diameter (um)")?;
    ensure_positive(thickness_um, "resist thickness (um)")?;
    let f = cap_fill_fraction(theta, convention);
    Ok((2.0 * f * target_diameter_um.powi(3) / (3.0 * thickness_um)).sqrt())
}

/// Predict one lens per pattern diameter, all at the same resist thickness.
/// Rows keep the input order. An invalid diameter aborts with its index.
pub fn design_table(
    pattern_diameters_um: &[f64],
    thickness_um: f64,
    theta: ContactAngle,
    convention: VolumeConvention,
) -> Result<Vec<DesignRow>> {
    if pattern_diameters_um.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    pattern_diameters_um
        .iter()
        .enumerate()
        .map(|(index, &diameter)| {
            let pattern =
                ResistPattern::new(diameter, thickness_um).map_err(|source| Error::InvalidEntry {
                    index,
                    source: Box::new(source),
                })?;
            Ok(DesignRow {
                pattern,
                predicted: predict_lens(pattern, theta, convention),
            })
        })
        .collect()
}

/// Check value for [`design_table`] rows: relative volume mismatch between
/// the column and the predicted lens. Zero up to rounding by construction.
pub fn conservation_residual(row: &DesignRow) -> f64 {
    let column = row.pattern.volume_um3();
    (column - row.predicted.volume_um3).abs() / column
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn deg(d: f64) -> ContactAngle {
        ContactAngle::new(d).unwrap()
    }

    const CONV: VolumeConvention = VolumeConvention::CapComplement;

    #[test]
    fn forward_reproduces_reference_diameters() {
        let d80 = forward_lens_diameter(ResistPattern::new(80.0, 21.0).unwrap(), deg(116.0), CONV);
        assert_abs_diff_eq!(d80, 101.6, epsilon = 0.1);
        let d70 = forward_lens_diameter(ResistPattern::new(70.0, 21.0).unwrap(), deg(116.0), CONV);
        assert_abs_diff_eq!(d70, 92.95, epsilon = 0.1);
    }

    #[test]
    fn forward_scales_with_cube_root_of_thickness() {
        let base = forward_lens_diameter(ResistPattern::new(55.0, 3.0).unwrap(), deg(105.0), CONV);
        let eight = forward_lens_diameter(ResistPattern::new(55.0, 24.0).unwrap(), deg(105.0), CONV);
        assert_relative_eq!(eight, 2.0 * base, max_relative = 1e-12);
    }

    #[test]
    fn required_thickness_back_solves_reference_rows() {
        let t = required_thickness(101.59, 80.0, deg(116.0), CONV).unwrap();
        assert_abs_diff_eq!(t, 21.0, epsilon = 0.1);
        // The 80 and 70 um rows imply the same resist coat to 0.05%.
        let t70 = required_thickness(92.94, 70.0, deg(116.0), CONV).unwrap();
        assert_relative_eq!(t70, t, max_relative = 5e-4);
        let t60 = required_thickness(86.39, 60.0, deg(116.0), CONV).unwrap();
        assert_abs_diff_eq!(t60, 22.9, epsilon = 0.1);
        // Doubling the target diameter needs eight times the resist.
        let t2 = required_thickness(2.0 * 86.39, 60.0, deg(116.0), CONV).unwrap();
        assert_relative_eq!(t2, 8.0 * t60, max_relative = 1e-12);
    }

    #[test]
    fn required_pattern_diameter_inverts_forward() {
        let d = required_pattern_diameter(101.59, 21.0, deg(116.0), CONV).unwrap();
        assert_abs_diff_eq!(d, 80.0, epsilon = 0.1);
        let d70 = required_pattern_diameter(92.94, 21.0, deg(116.0), CONV).unwrap();
        assert_abs_diff_eq!(d70, 70.0, epsilon = 0.1);
    }

    #[test]
    fn inverse_round_trips() {
        let pattern = ResistPattern::new(63.0, 14.5).unwrap();
        let theta = deg(116.0);
        let target = forward_lens_diameter(pattern, theta, CONV);

        let t = required_thickness(target, pattern.pattern_diameter_um, theta, CONV).unwrap();
        assert_relative_eq!(t, pattern.thickness_um, max_relative = 1e-12);

        let d = required_pattern_diameter(target, pattern.thickness_um, theta, CONV).unwrap();
        assert_relative_eq!(d, pattern.pattern_diameter_um, max_relative = 1e-12);
    }

    #[test]
    fn conventions_coincide_only_at_right_angle() {
        let pattern = ResistPattern::new(80.0, 21.0).unwrap();
        let complement = forward_lens_diameter(pattern, deg(90.0), VolumeConvention::CapComplement);
        let sessile = forward_lens_diameter(pattern, deg(90.0), VolumeConvention::SessileDrop);
        assert_relative_eq!(complement, sessile, max_relative = 1e-12);

        for theta in [60.0, 89.0, 91.0, 116.0] {
            let complement = forward_lens_diameter(pattern, deg(theta), VolumeConvention::CapComplement);
            let sessile = forward_lens_diameter(pattern, deg(theta), VolumeConvention::SessileDrop);
            assert!((complement - sessile).abs() / sessile > 1e-3);
        }
    }

    #[test]
    fn design_table_matches_reference() {
        let rows = design_table(&[80.0, 70.0], 21.0, deg(116.0), CONV).unwrap();
        assert_eq!(rows.len(), 2);
        assert_abs_diff_eq!(rows[0].predicted.sphere_diameter_um, 101.6, epsilon = 0.1);
        assert_abs_diff_eq!(rows[0].predicted.sag_height_um, 73.1, epsilon = 0.1);
        assert_abs_diff_eq!(rows[1].predicted.sphere_diameter_um, 92.9, epsilon = 0.1);
        assert_abs_diff_eq!(rows[1].predicted.sag_height_um, 66.8, epsilon = 0.1);

        let row60 = design_table(&[60.0], 22.9, deg(116.0), CONV).unwrap();
        assert_abs_diff_eq!(row60[0].predicted.sphere_diameter_um, 86.4, epsilon = 0.1);
    }

    #[test]
    fn design_table_conserves_mass() {
        for row in design_table(&[60.0, 70.0, 80.0], 21.0, deg(116.0), CONV).unwrap() {
            assert!(conservation_residual(&row) < 1e-9);
        }
    }

    #[test]
    fn design_table_reports_offending_index() {
        let err = design_table(&[80.0, -3.0], 21.0, deg(116.0), CONV).unwrap_err();
        match err {
            Error::InvalidEntry { index, .. } => assert_eq!(index, 1),
            other => panic!("expected InvalidEntry, got {other:?}"),
        }
        assert!(design_table(&[], 21.0, deg(116.0), CONV).is_err());
    }

    #[test]
    fn single_row_equals_forward_call() {
        let rows = design_table(&[44.0], 9.0, deg(100.0), CONV).unwrap();
        let direct = predict_lens(ResistPattern::new(44.0, 9.0).unwrap(), deg(100.0), CONV);
        assert_eq!(rows[0].predicted, direct);
    }

    #[test]
    fn geometry_module_anchor_consistency() {
        // The 80 um pattern at 21.0 um resist and the reference lens volume
        // describe the same amount of material.
        let column = column_volume(80.0, 21.0).unwrap();
        let lens = crate::geometry::lens_volume(101.59, deg(116.0), CONV).unwrap();
        assert_relative_eq!(column, lens, max_relative = 1e-3);
    }
}
