//! Python bindings for the micro-ball lens toolkit.
//!
//! Exposes the geometry, mass-conservation, wetting, spin-coating,
//! metrology and recipe operations as plain functions plus two small
//! classes (`LensGeometry`, `SpinModel`). Angles are degrees, lengths
//! micrometers, volumes cubic micrometers throughout.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use reflow_lens_core as core;
use reflow_lens_core::geometry::VolumeConvention;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn angle(degrees: f64) -> PyResult<core::ContactAngle> {
    core::ContactAngle::new(degrees).map_err(err)
}

fn convention(name: &str) -> PyResult<VolumeConvention> {
    name.parse().map_err(err)
}

fn profile(samples: Vec<(f64, f64)>) -> PyResult<core::SurfaceProfile> {
    core::SurfaceProfile::new(samples).map_err(err)
}

/// Equilibrium ball-lens geometry: sphere diameter, sag height, contact
/// angle, contact radius and volume.
#[pyclass(frozen, skip_from_py_object, name = "LensGeometry", module = "reflow_lens")]
#[derive(Clone)]
struct PyLensGeometry {
    inner: core::LensGeometry,
}

#[pymethods]
impl PyLensGeometry {
    /// Build a lens from its sphere diameter (um) and contact angle (deg).
    #[new]
    #[pyo3(signature = (sphere_diameter_um, angle_deg, convention="cap-complement"))]
    fn new(sphere_diameter_um: f64, angle_deg: f64, convention: &str) -> PyResult<Self> {
        let inner = core::LensGeometry::from_diameter_and_angle(
            sphere_diameter_um,
            angle(angle_deg)?,
            self::convention(convention)?,
        )
        .map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn sphere_diameter_um(&self) -> f64 {
        self.inner.sphere_diameter_um
    }

    #[getter]
    fn sag_height_um(&self) -> f64 {
        self.inner.sag_height_um
    }

    #[getter]
    fn contact_angle_deg(&self) -> f64 {
        self.inner.contact_angle.degrees()
    }

    #[getter]
    fn contact_radius_um(&self) -> f64 {
        self.inner.contact_radius_um
    }

    #[getter]
    fn volume_um3(&self) -> f64 {
        self.inner.volume_um3
    }

    fn __repr__(&self) -> String {
        format!(
            "LensGeometry(sphere_diameter_um={}, sag_height_um={}, contact_angle_deg={}, contact_radius_um={}, volume_um3={})",
            self.inner.sphere_diameter_um,
            self.inner.sag_height_um,
            self.inner.contact_angle.degrees(),
            self.inner.contact_radius_um,
            self.inner.volume_um3,
        )
    }
}

/// Fitted spin-coating power law `t(omega) = coefficient * omega**exponent`.
#[pyclass(frozen, skip_from_py_object, name = "SpinModel", module = "reflow_lens")]
#[derive(Clone)]
struct PySpinModel {
    inner: core::SpinModel,
}

#[pymethods]
impl PySpinModel {
    #[new]
    fn new(coefficient: f64, exponent: f64) -> PyResult<Self> {
        if !(coefficient > 0.0) {
            return Err(PyValueError::new_err("coefficient must be positive"));
        }
        if !(exponent < 0.0) {
            return Err(PyValueError::new_err("exponent must be negative"));
        }
        Ok(Self {
            inner: core::SpinModel {
                coefficient,
                exponent,
                rms_log_residual: 0.0,
            },
        })
    }

    #[getter]
    fn coefficient(&self) -> f64 {
        self.inner.coefficient
    }

    #[getter]
    fn exponent(&self) -> f64 {
        self.inner.exponent
    }

    #[getter]
    fn rms_log_residual(&self) -> f64 {
        self.inner.rms_log_residual
    }

    /// Resist thickness (um) coated at the given spin speed (rpm).
    fn thickness_at(&self, spin_rpm: f64) -> PyResult<f64> {
        core::spincoat::thickness_at(&self.inner, spin_rpm).map_err(err)
    }

    /// Spin speed (rpm) that coats the given thickness (um).
    fn speed_for_thickness(&self, thickness_um: f64) -> PyResult<f64> {
        core::spincoat::speed_for_thickness(&self.inner, thickness_um).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "SpinModel(coefficient={}, exponent={}, rms_log_residual={})",
            self.inner.coefficient, self.inner.exponent, self.inner.rms_log_residual
        )
    }
}

/// Fraction of the sphere volume occupied by the lens, in (0, 1).
#[pyfunction]
#[pyo3(signature = (angle_deg, convention="cap-complement"))]
fn cap_fill_fraction(angle_deg: f64, convention: &str) -> PyResult<f64> {
    Ok(core::geometry::cap_fill_fraction(
        angle(angle_deg)?,
        self::convention(convention)?,
    ))
}

/// Sag height h = (D/2)(1 - cos theta) in um.
#[pyfunction]
fn sag_height(sphere_diameter_um: f64, angle_deg: f64) -> PyResult<f64> {
    core::geometry::sag_height(sphere_diameter_um, angle(angle_deg)?).map_err(err)
}

/// Contact angle (deg) recovered from sphere radius and sag height (um).
#[pyfunction]
fn contact_angle_from_profile(radius_um: f64, sag_um: f64) -> PyResult<f64> {
    core::geometry::contact_angle_from_profile(radius_um, sag_um)
        .map(|theta| theta.degrees())
        .map_err(err)
}

/// Contact radius a = R sin theta in um.
#[pyfunction]
fn contact_radius(radius_um: f64, angle_deg: f64) -> PyResult<f64> {
    core::geometry::contact_radius(radius_um, angle(angle_deg)?).map_err(err)
}

/// Lens volume (um^3) under the given convention.
#[pyfunction]
#[pyo3(signature = (sphere_diameter_um, angle_deg, convention="cap-complement"))]
fn lens_volume(sphere_diameter_um: f64, angle_deg: f64, convention: &str) -> PyResult<f64> {
    core::geometry::lens_volume(
        sphere_diameter_um,
        angle(angle_deg)?,
        self::convention(convention)?,
    )
    .map_err(err)
}

/// Volume (um^3) of the cylindrical resist column.
#[pyfunction]
fn column_volume(pattern_diameter_um: f64, thickness_um: f64) -> PyResult<f64> {
    core::geometry::column_volume(pattern_diameter_um, thickness_um).map_err(err)
}

/// Quadrature check value for the sessile-drop volume (um^3).
#[pyfunction]
fn oracle_volume(sphere_diameter_um: f64, angle_deg: f64) -> PyResult<f64> {
    core::geometry::oracle_volume(sphere_diameter_um, angle(angle_deg)?).map_err(err)
}

/// Lens sphere diameter (um) produced by a resist pattern.
#[pyfunction]
#[pyo3(signature = (pattern_diameter_um, thickness_um, angle_deg=core::DEFAULT_CONTACT_ANGLE_DEG, convention="cap-complement"))]
fn forward_lens_diameter(
    pattern_diameter_um: f64,
    thickness_um: f64,
    angle_deg: f64,
    convention: &str,
) -> PyResult<f64> {
    let pattern = core::ResistPattern::new(pattern_diameter_um, thickness_um).map_err(err)?;
    Ok(core::conservation::forward_lens_diameter(
        pattern,
        angle(angle_deg)?,
        self::convention(convention)?,
    ))
}

/// Full predicted lens geometry for a resist pattern.
#[pyfunction]
#[pyo3(signature = (pattern_diameter_um, thickness_um, angle_deg=core::DEFAULT_CONTACT_ANGLE_DEG, convention="cap-complement"))]
fn predict_lens(
    pattern_diameter_um: f64,
    thickness_um: f64,
    angle_deg: f64,
    convention: &str,
) -> PyResult<PyLensGeometry> {
    let pattern = core::ResistPattern::new(pattern_diameter_um, thickness_um).map_err(err)?;
    Ok(PyLensGeometry {
        inner: core::conservation::predict_lens(
            pattern,
            angle(angle_deg)?,
            self::convention(convention)?,
        ),
    })
}

/// Resist thickness (um) needed for a target lens diameter at a given
/// pattern diameter.
#[pyfunction]
#[pyo3(signature = (target_diameter_um, pattern_diameter_um, angle_deg=core::DEFAULT_CONTACT_ANGLE_DEG, convention="cap-complement"))]
fn required_thickness(
    target_diameter_um: f64,
    pattern_diameter_um: f64,
    angle_deg: f64,
    convention: &str,
) -> PyResult<f64> {
    core::conservation::required_thickness(
        target_diameter_um,
        pattern_diameter_um,
        angle(angle_deg)?,
        self::convention(convention)?,
    )
    .map_err(err)
}

/// Pattern diameter (um) needed for a target lens diameter at a given
/// resist thickness.
#[pyfunction]
#[pyo3(signature = (target_diameter_um, thickness_um, angle_deg=core::DEFAULT_CONTACT_ANGLE_DEG, convention="cap-complement"))]
fn required_pattern_diameter(
    target_diameter_um: f64,
    thickness_um: f64,
    angle_deg: f64,
    convention: &str,
) -> PyResult<f64> {
    core::conservation::required_pattern_diameter(
        target_diameter_um,
        thickness_um,
        angle(angle_deg)?,
        self::convention(convention)?,
    )
    .map_err(err)
}

/// Young equilibrium angle (deg) from (S_sa, S_ls, S_al) in mJ/m^2.
#[pyfunction]
fn young_contact_angle(solid_air: f64, liquid_solid: f64, air_liquid: f64) -> PyResult<f64> {
    let energies = core::SurfaceEnergies::new(solid_air, liquid_solid, air_liquid).map_err(err)?;
    core::wetting::young_contact_angle(energies)
        .map(|theta| theta.degrees())
        .map_err(err)
}

/// Wetting regime: "Spreading", "PartialWetting" or "Beading".
#[pyfunction]
fn classify_wetting(solid_air: f64, liquid_solid: f64, air_liquid: f64) -> PyResult<String> {
    let energies = core::SurfaceEnergies::new(solid_air, liquid_solid, air_liquid).map_err(err)?;
    Ok(format!("{:?}", core::wetting::classify_wetting(energies)))
}

/// Hydrophobicity label: "Hydrophilic", "Hydrophobic" or "SuperHydrophobic".
#[pyfunction]
fn classify_angle(angle_deg: f64) -> PyResult<String> {
    Ok(format!("{:?}", core::wetting::classify_angle(angle(angle_deg)?)))
}

/// Fit the spin-coating power law to (spin_rpm, thickness_um) points.
#[pyfunction]
fn fit_spin_model(points: Vec<(f64, f64)>) -> PyResult<PySpinModel> {
    let points: Vec<core::CalibrationPoint> = points
        .into_iter()
        .map(|(spin_rpm, thickness_um)| {
            core::CalibrationPoint::new(spin_rpm, thickness_um).map_err(err)
        })
        .collect::<PyResult<_>>()?;
    Ok(PySpinModel {
        inner: core::spincoat::fit_spin_model(&points).map_err(err)?,
    })
}

/// (spin_rpm, pattern_diameter_um, thickness_um, lens_diameter_um, sag_height_um)
type SweepTuple = (f64, f64, f64, f64, f64);

/// Sweep a spin-speed grid. Returns rows of
/// (spin_rpm, pattern_diameter_um, thickness_um, lens_diameter_um,
/// sag_height_um), grouped by pattern diameter.
#[pyfunction]
#[pyo3(signature = (model, pattern_diameters_um, omega_min, omega_max, steps, angle_deg=core::DEFAULT_CONTACT_ANGLE_DEG, convention="cap-complement"))]
fn sweep_lens_vs_speed(
    model: &PySpinModel,
    pattern_diameters_um: Vec<f64>,
    omega_min: f64,
    omega_max: f64,
    steps: usize,
    angle_deg: f64,
    convention: &str,
) -> PyResult<Vec<SweepTuple>> {
    let rows = core::spincoat::sweep_lens_vs_speed(
        &model.inner,
        &pattern_diameters_um,
        angle(angle_deg)?,
        self::convention(convention)?,
        (omega_min, omega_max),
        steps,
    )
    .map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            (
                r.spin_rpm,
                r.pattern_diameter_um,
                r.thickness_um,
                r.lens_diameter_um,
                r.sag_height_um,
            )
        })
        .collect())
}

/// Arithmetic-average roughness (nm) of a detrended (x_um, z_um) profile.
#[pyfunction]
fn roughness_ra(samples: Vec<(f64, f64)>) -> PyResult<f64> {
    Ok(core::metrology::roughness_ra(&profile(samples)?))
}

/// Fit a sphere to a stylus scan of the lens top and extrapolate the full
/// geometry down to the substrate plane.
#[pyfunction]
#[pyo3(signature = (samples, base_plane_z_um=0.0))]
fn fit_sphere_profile(samples: Vec<(f64, f64)>, base_plane_z_um: f64) -> PyResult<PyLensGeometry> {
    Ok(PyLensGeometry {
        inner: core::metrology::fit_sphere_profile(&profile(samples)?, base_plane_z_um)
            .map_err(err)?,
    })
}

/// Percent deviations (diameter, height) of measured dimensions from
/// predicted ones, relative to the prediction.
#[pyfunction]
fn compare_to_theory(
    experimental_diameter_um: f64,
    experimental_height_um: f64,
    theoretical_diameter_um: f64,
    theoretical_height_um: f64,
) -> PyResult<(f64, f64)> {
    let measured = core::MeasuredLens::new(experimental_diameter_um, experimental_height_um)
        .map_err(err)?;
    let theoretical = core::LensGeometry::from_diameter_and_sag(
        theoretical_diameter_um,
        theoretical_height_um,
        VolumeConvention::default(),
    )
    .map_err(err)?;
    let row = core::metrology::compare_to_theory(measured, &theoretical);
    Ok((row.diameter_error_pct, row.height_error_pct))
}

/// Built-in measured-vs-predicted reference table as JSON.
#[pyfunction]
fn reference_comparison_json() -> PyResult<String> {
    serde_json::to_string_pretty(&core::metrology::reference_comparison())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// The reference fabrication recipe as JSON.
#[pyfunction]
fn reference_recipe_json() -> PyResult<String> {
    core::recipe::reference_recipe().to_json().map_err(err)
}

/// Validate a recipe JSON document. Returns findings as
/// (severity, rule_id, step_index, message) tuples; empty means the recipe
/// passes.
#[pyfunction]
fn validate_recipe_json(text: &str) -> PyResult<Vec<(String, String, usize, String)>> {
    let recipe = core::ProcessRecipe::from_json(text).map_err(err)?;
    let report = core::recipe::validate_recipe(&recipe).map_err(err)?;
    Ok(report
        .findings
        .into_iter()
        .map(|f| {
            (
                format!("{:?}", f.severity),
                f.rule_id.to_string(),
                f.step_index,
                f.message,
            )
        })
        .collect())
}

#[pymodule]
fn reflow_lens(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_CONTACT_ANGLE_DEG", core::DEFAULT_CONTACT_ANGLE_DEG)?;
    m.add_class::<PyLensGeometry>()?;
    m.add_class::<PySpinModel>()?;
    m.add_function(wrap_pyfunction!(cap_fill_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(sag_height, m)?)?;
    m.add_function(wrap_pyfunction!(contact_angle_from_profile, m)?)?;
    m.add_function(wrap_pyfunction!(contact_radius, m)?)?;
    m.add_function(wrap_pyfunction!(lens_volume, m)?)?;
    m.add_function(wrap_pyfunction!(column_volume, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_volume, m)?)?;
    m.add_function(wrap_pyfunction!(forward_lens_diameter, m)?)?;
    m.add_function(wrap_pyfunction!(predict_lens, m)?)?;
    m.add_function(wrap_pyfunction!(required_thickness, m)?)?;
    m.add_function(wrap_pyfunction!(required_pattern_diameter, m)?)?;
    m.add_function(wrap_pyfunction!(young_contact_angle, m)?)?;
    m.add_function(wrap_pyfunction!(classify_wetting, m)?)?;
    m.add_function(wrap_pyfunction!(classify_angle, m)?)?;
    m.add_function(wrap_pyfunction!(fit_spin_model, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_lens_vs_speed, m)?)?;
    m.add_function(wrap_pyfunction!(roughness_ra, m)?)?;
    m.add_function(wrap_pyfunction!(fit_sphere_profile, m)?)?;
    m.add_function(wrap_pyfunction!(compare_to_theory, m)?)?;
    m.add_function(wrap_pyfunction!(reference_comparison_json, m)?)?;
    m.add_function(wrap_pyfunction!(reference_recipe_json, m)?)?;
    m.add_function(wrap_pyfunction!(validate_recipe_json, m)?)?;
    Ok(())
}
