//! Spin-coating calibration and speed sweeps.
//!
//! Resist thickness versus spin speed follows the usual power law
//! `t = a * omega^b` with `b < 0`; the model is fitted by least squares in
//! log-log space, so any two-point calibration is matched exactly. Sweeps
//! compose the calibration with the mass-conservation prediction to map a
//! spin-speed range onto lens diameter and sag height curves.

use std::io;

use serde::Serialize;

use crate::conservation::{predict_lens, ResistPattern};
use crate::error::{Error, Result};
use crate::geometry::{ensure_positive, ContactAngle, VolumeConvention};

/// One measured (spin speed, resist thickness) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationPoint {
    pub spin_rpm: f64,
    pub thickness_um: f64,
}

impl CalibrationPoint {
    pub fn new(spin_rpm: f64, thickness_um: f64) -> Result<Self> {
        ensure_positive(spin_rpm, "spin speed (rpm)")?;
        ensure_positive(thickness_um, "resist thickness (um)")?;
        Ok(Self {
            spin_rpm,
            thickness_um,
        })
    }
}

/// Fitted power law `t(omega) = coefficient * omega^exponent`.
///
/// `rms_log_residual` is the root-mean-square residual of the fit in log
/// space, i.e. roughly the relative scatter of the calibration data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinModel {
    pub coefficient: f64,
    pub exponent: f64,
    pub rms_log_residual: f64,
}

/// One row of a design sweep: a spin speed, the resist thickness it coats,
/// and the lens a given pattern diameter reflows into at that thickness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub spin_rpm: f64,
    pub pattern_diameter_um: f64,
    pub thickness_um: f64,
    pub lens_diameter_um: f64,
    pub sag_height_um: f64,
}

/// Least-squares power-law fit through calibration points.
///
/// Needs at least two points with distinct speeds; repeated speeds with
/// different thicknesses are fine, the regression averages them. A fitted
/// exponent >= 0 (thickness not decreasing with speed) is rejected as
/// non-physical.
pub fn fit_spin_model(points: &[CalibrationPoint]) -> Result<SpinModel> {
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: points.len(),
        });
    }

    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.spin_rpm.ln(), p.thickness_um.ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();

    if sxx <= 0.0 {
        // All speeds identical: the slope is unconstrained.
        return Err(Error::InsufficientData { needed: 2, got: 1 });
    }

    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    if exponent >= 0.0 {
        return Err(Error::NonPhysicalFit { exponent });
    }

    let ss_res: f64 = logs
        .iter()
        .map(|(x, y)| {
            let r = y - (intercept + exponent * x);
            r * r
        })
        .sum();

    Ok(SpinModel {
        coefficient: intercept.exp(),
        exponent,
        rms_log_residual: (ss_res / n).sqrt(),
    })
}

/// Thickness coated at `spin_rpm`.
pub fn thickness_at(model: &SpinModel, spin_rpm: f64) -> Result<f64> {
    ensure_positive(spin_rpm, "spin speed (rpm)")?;
    Ok(model.coefficient * spin_rpm.powf(model.exponent))
}

/// Spin speed that coats `thickness_um`; inverse of [`thickness_at`].
pub fn speed_for_thickness(model: &SpinModel, thickness_um: f64) -> Result<f64> {
    ensure_positive(thickness_um, "resist thickness (um)")?;
    Ok((thickness_um / model.coefficient).powf(1.0 / model.exponent))
}

/// Sweep a uniform spin-speed grid and predict the lens each pattern
/// diameter produces at each speed. Rows are grouped by pattern diameter in
/// input order, then ordered by speed.
pub fn sweep_lens_vs_speed(
    model: &SpinModel,
    pattern_diameters_um: &[f64],
    theta: ContactAngle,
    convention: VolumeConvention,
    speed_range_rpm: (f64, f64),
    steps: usize,
) -> Result<Vec<SweepRow>> {
    let (omega_min, omega_max) = speed_range_rpm;
    ensure_positive(omega_min, "minimum spin speed (rpm)")?;
    if !(omega_max >= omega_min && omega_max.is_finite()) {
        return Err(Error::Domain {
            quantity: "maximum spin speed (rpm)",
            value: omega_max,
            constraint: "must be finite and >= minimum",
        });
    }
    if steps < 2 {
        return Err(Error::Domain {
            quantity: "sweep steps",
            value: steps as f64,
            constraint: "at least 2 grid points",
        });
    }
    if pattern_diameters_um.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }

    let span = omega_max - omega_min;
    let mut rows = Vec::with_capacity(steps * pattern_diameters_um.len());
    for (index, &pattern_diameter) in pattern_diameters_um.iter().enumerate() {
        ensure_positive(pattern_diameter, "pattern diameter (um)").map_err(|source| {
            Error::InvalidEntry {
                index,
                source: Box::new(source),
            }
        })?;
        for step in 0..steps {
            let spin_rpm = omega_min + span * step as f64 / (steps - 1) as f64;
            let thickness_um = thickness_at(model, spin_rpm)?;
            let pattern = ResistPattern::new(pattern_diameter, thickness_um)?;
            let lens = predict_lens(pattern, theta, convention);
            rows.push(SweepRow {
                spin_rpm,
                pattern_diameter_um: pattern_diameter,
                thickness_um,
                lens_diameter_um: lens.sphere_diameter_um,
                sag_height_um: lens.sag_height_um,
            });
        }
    }
    Ok(rows)
}

const CALIBRATION_HEADER: [&str; 2] = ["spin_rpm", "thickness_um"];
const SWEEP_HEADER: [&str; 5] = [
    "spin_rpm",
    "pattern_um",
    "thickness_um",
    "lens_diameter_um",
    "sag_height_um",
];

/// Read calibration points from CSV with header `spin_rpm,thickness_um`.
pub fn read_calibration_csv<R: io::Read>(reader: R) -> Result<Vec<CalibrationPoint>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    check_header(&csv_reader.headers()?.clone(), &CALIBRATION_HEADER)?;
    let mut points = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        points.push(CalibrationPoint::new(
            parse_field(&record, 0)?,
            parse_field(&record, 1)?,
        )?);
    }
    Ok(points)
}

/// Write sweep rows as CSV (header row, LF line endings, 4 decimal places).
pub fn write_sweep_csv<W: io::Write>(writer: W, rows: &[SweepRow]) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(SWEEP_HEADER)?;
    for row in rows {
        csv_writer.write_record([
            format!("{:.4}", row.spin_rpm),
            format!("{:.4}", row.pattern_diameter_um),
            format!("{:.4}", row.thickness_um),
            format!("{:.4}", row.lens_diameter_um),
            format!("{:.4}", row.sag_height_um),
        ])?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// Read sweep rows back from CSV produced by [`write_sweep_csv`].
pub fn read_sweep_csv<R: io::Read>(reader: R) -> Result<Vec<SweepRow>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    check_header(&csv_reader.headers()?.clone(), &SWEEP_HEADER)?;
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        rows.push(SweepRow {
            spin_rpm: parse_field(&record, 0)?,
            pattern_diameter_um: parse_field(&record, 1)?,
            thickness_um: parse_field(&record, 2)?,
            lens_diameter_um: parse_field(&record, 3)?,
            sag_height_um: parse_field(&record, 4)?,
        });
    }
    Ok(rows)
}

pub(crate) fn check_header(got: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let matches = got.len() == expected.len()
        && got.iter().zip(expected).all(|(g, e)| g.trim() == *e);
    if !matches {
        return Err(Error::Format(format!(
            "unexpected CSV header {:?}, expected {:?}",
            got.iter().collect::<Vec<_>>(),
            expected
        )));
    }
    Ok(())
}

pub(crate) fn parse_field(record: &csv::StringRecord, index: usize) -> Result<f64> {
    let raw = record.get(index).ok_or_else(|| {
        Error::Format(format!("missing column {index} in CSV record {record:?}"))
    })?;
    raw.trim()
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("cannot parse \"{raw}\" as a number")))
}
