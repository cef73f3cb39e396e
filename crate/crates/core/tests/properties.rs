//! Property tests for the algebraic identities and round trips the model
//! rests on.

use proptest::prelude::*;

use reflow_lens_core::conservation::{
    design_table, forward_lens_diameter, required_pattern_diameter, required_thickness,
    ResistPattern,
};
use reflow_lens_core::geometry::{
    cap_fill_fraction, contact_angle_from_profile, lens_volume, oracle_volume, sag_height,
    ContactAngle, LensGeometry, VolumeConvention,
};
use reflow_lens_core::metrology::{roughness_ra, SurfaceProfile};
use reflow_lens_core::recipe::{reference_recipe, validate_recipe};
use reflow_lens_core::spincoat::{
    fit_spin_model, read_sweep_csv, speed_for_thickness, sweep_lens_vs_speed, thickness_at,
    write_sweep_csv, CalibrationPoint, SpinModel,
};
use reflow_lens_core::wetting::{classify_wetting, young_contact_angle, SurfaceEnergies, WettingRegime};

fn angle() -> impl Strategy<Value = ContactAngle> {
    (0.01f64..179.99).prop_map(|d| ContactAngle::new(d).unwrap())
}

proptest! {
    #[test]
    fn fill_fractions_complement_each_other(theta in angle()) {
        let sessile = cap_fill_fraction(theta, VolumeConvention::SessileDrop);
        let complement = cap_fill_fraction(theta, VolumeConvention::CapComplement);
        prop_assert!((sessile + complement - 1.0).abs() < 1e-12);
        prop_assert!(sessile > 0.0 && sessile < 1.0);
    }

    #[test]
    fn fill_fraction_supplementary_identity(theta in 0.01f64..179.99) {
        let sessile = cap_fill_fraction(ContactAngle::new(theta).unwrap(), VolumeConvention::SessileDrop);
        let complement = cap_fill_fraction(
            ContactAngle::new(180.0 - theta).unwrap(),
            VolumeConvention::CapComplement,
        );
        prop_assert!((sessile - complement).abs() < 1e-12);
    }

    #[test]
    fn sessile_fill_fraction_is_strictly_increasing(
        low in 0.5f64..179.0,
        gap in 0.01f64..10.0,
    ) {
        let high = (low + gap).min(179.5);
        prop_assume!(high > low);
        let f_low = cap_fill_fraction(ContactAngle::new(low).unwrap(), VolumeConvention::SessileDrop);
        let f_high = cap_fill_fraction(ContactAngle::new(high).unwrap(), VolumeConvention::SessileDrop);
        prop_assert!(f_high > f_low, "f({high}) = {f_high} <= f({low}) = {f_low}");
    }

    #[test]
    fn sag_angle_round_trip(diameter in 1.0f64..500.0, theta in angle()) {
        let sag = sag_height(diameter, theta).unwrap();
        let recovered = contact_angle_from_profile(diameter / 2.0, sag).unwrap();
        prop_assert!((recovered.degrees() - theta.degrees()).abs() < 1e-9);
    }

    #[test]
    fn oracle_agrees_with_closed_form(diameter in 1.0f64..500.0, theta in angle()) {
        let oracle = oracle_volume(diameter, theta).unwrap();
        let closed = lens_volume(diameter, theta, VolumeConvention::SessileDrop).unwrap();
        prop_assert!(((oracle - closed) / closed).abs() < 1e-9);
    }

    #[test]
    fn constructed_lens_satisfies_cap_geometry(
        diameter in 1.0f64..500.0,
        theta in angle(),
    ) {
        let lens = LensGeometry::from_diameter_and_angle(diameter, theta, VolumeConvention::default()).unwrap();
        let r = lens.radius_um();
        let lhs = lens.contact_radius_um.powi(2) + (lens.sag_height_um - r).powi(2);
        prop_assert!(((lhs - r * r) / (r * r)).abs() < 1e-9);
        prop_assert!(lens.sag_height_um > 0.0 && lens.sag_height_um < diameter);
        prop_assert!(lens.volume_um3 > 0.0);
    }

    #[test]
    fn conservation_round_trips(
        pattern_d in 1.0f64..300.0,
        thickness in 0.1f64..50.0,
        theta in angle(),
        sessile in proptest::bool::ANY,
    ) {
        let convention = if sessile { VolumeConvention::SessileDrop } else { VolumeConvention::CapComplement };
        let pattern = ResistPattern::new(pattern_d, thickness).unwrap();
        let target = forward_lens_diameter(pattern, theta, convention);

        let t = required_thickness(target, pattern_d, theta, convention).unwrap();
        prop_assert!(((t - thickness) / thickness).abs() < 1e-12);

        let d = required_pattern_diameter(target, thickness, theta, convention).unwrap();
        prop_assert!(((d - pattern_d) / pattern_d).abs() < 1e-12);
    }

    #[test]
    fn lens_diameter_grows_with_pattern_and_thickness(
        pattern_d in 1.0f64..300.0,
        thickness in 0.1f64..50.0,
        theta in angle(),
        factor in 1.000001f64..4.0,
    ) {
        let convention = VolumeConvention::SessileDrop;
        let base = forward_lens_diameter(ResistPattern::new(pattern_d, thickness).unwrap(), theta, convention);
        let wider = forward_lens_diameter(ResistPattern::new(pattern_d * factor, thickness).unwrap(), theta, convention);
        let thicker = forward_lens_diameter(ResistPattern::new(pattern_d, thickness * factor).unwrap(), theta, convention);
        prop_assert!(wider > base);
        prop_assert!(thicker > base);
    }

    #[test]
    fn lens_diameter_shrinks_with_angle_for_sessile(
        pattern_d in 1.0f64..300.0,
        thickness in 0.1f64..50.0,
        low in 0.5f64..178.0,
        gap in 0.1f64..10.0,
    ) {
        let high = (low + gap).min(179.0);
        prop_assume!(high > low);
        let pattern = ResistPattern::new(pattern_d, thickness).unwrap();
        let d_low = forward_lens_diameter(pattern, ContactAngle::new(low).unwrap(), VolumeConvention::SessileDrop);
        let d_high = forward_lens_diameter(pattern, ContactAngle::new(high).unwrap(), VolumeConvention::SessileDrop);
        prop_assert!(d_high < d_low);
    }

    #[test]
    fn design_rows_conserve_mass(
        diameters in proptest::collection::vec(1.0f64..300.0, 1..8),
        thickness in 0.1f64..50.0,
        theta in angle(),
    ) {
        let rows = design_table(&diameters, thickness, theta, VolumeConvention::default()).unwrap();
        prop_assert_eq!(rows.len(), diameters.len());
        for row in rows {
            let column = row.pattern.volume_um3();
            prop_assert!(((column - row.predicted.volume_um3) / column).abs() < 1e-9);
        }
    }

    #[test]
    fn young_angle_scale_invariance(
        solid_air in -80.0f64..80.0,
        liquid_solid in -80.0f64..80.0,
        air_liquid in 0.1f64..80.0,
        lambda in 0.001f64..1000.0,
    ) {
        let base = SurfaceEnergies::new(solid_air, liquid_solid, air_liquid).unwrap();
        let scaled = SurfaceEnergies::new(
            solid_air * lambda,
            liquid_solid * lambda,
            air_liquid * lambda,
        ).unwrap();
        match (young_contact_angle(base), young_contact_angle(scaled)) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a.degrees() - b.degrees()).abs() <= 1e-9 * a.degrees().max(1.0));
            }
            // Borderline cosines may flip across +/-1 under a general
            // scaling's last-ulp rounding; both sides must then be at the
            // domain edge.
            (Ok(a), Err(_)) => prop_assert!(a.degrees() < 1e-3 || a.degrees() > 180.0 - 1e-3),
            (Err(_), Ok(b)) => prop_assert!(b.degrees() < 1e-3 || b.degrees() > 180.0 - 1e-3),
            (Err(_), Err(_)) => {}
        }
    }

    #[test]
    fn young_angle_strictly_decreases_in_solid_energy(
        liquid_solid in -50.0f64..50.0,
        air_liquid in 0.5f64..50.0,
        offset_low in -0.99f64..0.97,
        gap in 0.001f64..0.5,
    ) {
        // Pick two solid energies whose cosines stay inside (-1, 1).
        let offset_high = (offset_low + gap).min(0.99);
        prop_assume!(offset_high > offset_low);
        let lower = SurfaceEnergies::new(liquid_solid + offset_low * air_liquid, liquid_solid, air_liquid).unwrap();
        let higher = SurfaceEnergies::new(liquid_solid + offset_high * air_liquid, liquid_solid, air_liquid).unwrap();
        let theta_lower = young_contact_angle(lower).unwrap();
        let theta_higher = young_contact_angle(higher).unwrap();
        prop_assert!(theta_higher.degrees() < theta_lower.degrees());
    }

    #[test]
    fn wetting_classification_matches_cosine_domain(
        solid_air in -100.0f64..100.0,
        liquid_solid in -100.0f64..100.0,
        air_liquid in 0.1f64..50.0,
    ) {
        let energies = SurfaceEnergies::new(solid_air, liquid_solid, air_liquid).unwrap();
        let cos_theta = (solid_air - liquid_solid) / air_liquid;
        let regime = classify_wetting(energies);
        if cos_theta > 1.0 {
            prop_assert_eq!(regime, WettingRegime::Spreading);
        } else if cos_theta < -1.0 {
            prop_assert_eq!(regime, WettingRegime::Beading);
        } else {
            prop_assert_eq!(regime, WettingRegime::PartialWetting);
        }
        if regime == WettingRegime::PartialWetting && cos_theta.abs() < 1.0 {
            prop_assert!(young_contact_angle(energies).is_ok());
        } else {
            prop_assert!(young_contact_angle(energies).is_err());
        }
    }

    #[test]
    fn spin_fit_recovers_noiseless_power_law(
        coefficient in 10.0f64..5000.0,
        exponent in -2.0f64..-0.05,
        speeds in proptest::collection::vec(100.0f64..8000.0, 2..12),
    ) {
        let mut distinct = speeds.clone();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        prop_assume!(distinct.len() >= 2);
        let points: Vec<CalibrationPoint> = distinct
            .iter()
            .map(|&w| CalibrationPoint::new(w, coefficient * w.powf(exponent)).unwrap())
            .collect();
        let model = fit_spin_model(&points).unwrap();
        prop_assert!(((model.coefficient - coefficient) / coefficient).abs() < 1e-6);
        prop_assert!((model.exponent - exponent).abs() < 1e-6);
    }

    #[test]
    fn spin_speed_round_trip(
        coefficient in 10.0f64..5000.0,
        exponent in -2.0f64..-0.05,
        target in 0.5f64..50.0,
    ) {
        let model = SpinModel { coefficient, exponent, rms_log_residual: 0.0 };
        let speed = speed_for_thickness(&model, target).unwrap();
        let thickness = thickness_at(&model, speed).unwrap();
        prop_assert!(((thickness - target) / target).abs() < 1e-12);
    }

    #[test]
    fn sweep_rows_decrease_with_speed_and_conserve_mass(
        steps in 2usize..30,
        omega_min in 500.0f64..2000.0,
        omega_span in 1.0f64..4000.0,
    ) {
        let model = SpinModel { coefficient: 939.1, exponent: -0.5, rms_log_residual: 0.0 };
        let theta = ContactAngle::new(116.0).unwrap();
        let rows = sweep_lens_vs_speed(
            &model,
            &[60.0, 80.0],
            theta,
            VolumeConvention::default(),
            (omega_min, omega_min + omega_span),
            steps,
        ).unwrap();
        prop_assert_eq!(rows.len(), 2 * steps);
        for group in rows.chunks(steps) {
            for pair in group.windows(2) {
                prop_assert!(pair[1].lens_diameter_um < pair[0].lens_diameter_um);
                prop_assert!(pair[1].sag_height_um < pair[0].sag_height_um);
            }
        }
        for row in &rows {
            let pattern = ResistPattern::new(row.pattern_diameter_um, row.thickness_um).unwrap();
            let lens = lens_volume(row.lens_diameter_um, theta, VolumeConvention::default()).unwrap();
            prop_assert!(((pattern.volume_um3() - lens) / lens).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_csv_round_trips(
        steps in 2usize..12,
        omega_min in 500.0f64..2000.0,
        omega_span in 10.0f64..4000.0,
    ) {
        let model = SpinModel { coefficient: 939.1, exponent: -0.5, rms_log_residual: 0.0 };
        let rows = sweep_lens_vs_speed(
            &model,
            &[70.0],
            ContactAngle::new(116.0).unwrap(),
            VolumeConvention::default(),
            (omega_min, omega_min + omega_span),
            steps,
        ).unwrap();
        let mut buffer = Vec::new();
        write_sweep_csv(&mut buffer, &rows).unwrap();
        let parsed = read_sweep_csv(buffer.as_slice()).unwrap();
        prop_assert_eq!(parsed.len(), rows.len());
        for (a, b) in parsed.iter().zip(&rows) {
            prop_assert!((a.spin_rpm - b.spin_rpm).abs() < 1e-4);
            prop_assert!((a.thickness_um - b.thickness_um).abs() < 1e-4);
            prop_assert!((a.lens_diameter_um - b.lens_diameter_um).abs() < 1e-4);
            prop_assert!((a.sag_height_um - b.sag_height_um).abs() < 1e-4);
        }
    }

    #[test]
    fn roughness_is_affine_invariant_and_scales(
        offset in -50.0f64..50.0,
        slope in -5.0f64..5.0,
        gain in 0.1f64..20.0,
    ) {
        let wave = |x: f64| 0.04 * (1.7 * x).cos() + 0.01 * (5.3 * x).sin();
        let base: Vec<(f64, f64)> = (0..2000)
            .map(|i| {
                let x = i as f64 * 0.01;
                (x, wave(x))
            })
            .collect();
        let shifted: Vec<(f64, f64)> = base.iter().map(|&(x, z)| (x, z + offset + slope * x)).collect();
        let scaled: Vec<(f64, f64)> = base.iter().map(|&(x, z)| (x, gain * z)).collect();

        let ra_base = roughness_ra(&SurfaceProfile::new(base).unwrap());
        let ra_shifted = roughness_ra(&SurfaceProfile::new(shifted).unwrap());
        let ra_scaled = roughness_ra(&SurfaceProfile::new(scaled).unwrap());
        prop_assert!(((ra_shifted - ra_base) / ra_base).abs() < 1e-9);
        prop_assert!(((ra_scaled - gain * ra_base) / (gain * ra_base)).abs() < 1e-9);
    }

    #[test]
    fn peel_off_finding_never_disappears_with_longer_bakes(
        temperature in 165.0f64..400.0,
        duration in 30.0f64..120.0,
        extension in 0.0f64..240.0,
    ) {
        let mut recipe = reference_recipe();
        recipe.steps[4].temperature_c = Some(temperature);
        recipe.steps[4].duration_min = Some(duration);
        let before = validate_recipe(&recipe).unwrap();
        prop_assert!(before.findings.iter().any(|f| f.rule_id == "R1"));

        recipe.steps[4].duration_min = Some(duration + extension);
        let after = validate_recipe(&recipe).unwrap();
        prop_assert!(after.findings.iter().any(|f| f.rule_id == "R1"));
    }
}
