//! Process-recipe data model and rule-based validator.
//!
//! A recipe is an ordered list of fabrication steps (clean, coat, bake,
//! expose, develop, reflow, cool). The validator first checks structure
//! (kind-appropriate fields), then applies the thermal-processing rules:
//!
//! - **R1** (Error): a bake at 165 C or above held 30 min or longer risks
//!   peeling the PTFE layer off the substrate.
//! - **R2** (Error): heating faster than the ramp ceiling (default
//!   9.5 C/min, the rate of the known-safe 25 -> 120 C in 10 min ramp)
//!   risks cracking the sample by thermal expansion.
//! - **R3** (Warning): a reflow below the 160 C resist glass transition
//!   will not reflow anything.
//! - **R4** (Warning): temperatures within a consecutive run of bake steps
//!   should not decrease.
//! - **R5** (Error): every spin-coating step needs a preceding clean.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bake-duration threshold (min) above which a high-temperature bake is
/// flagged as a peel-off risk (rule R1).
pub const PEEL_OFF_DURATION_MIN: f64 = 30.0;
/// Bake temperature (C) from which R1 applies.
pub const PEEL_OFF_TEMPERATURE_C: f64 = 165.0;
/// Default heating-ramp ceiling (C/min) for rule R2, set by the known-safe
/// ramp of 25 -> 120 C in 10 min. Override per recipe via
/// `max_ramp_c_per_min`.
pub const DEFAULT_MAX_RAMP_C_PER_MIN: f64 = 9.5;
/// Glass transition temperature (C) of the AZ4620 resist; reflows below it
/// are flagged by rule R3.
pub const GLASS_TRANSITION_C: f64 = 160.0;

/// Physical parameters of the liquid PTFE coating material. Informational
/// reference data only; no validation rule consumes these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtfeParameters {
    pub melt_point_c: f64,
    pub content_pct: f64,
    pub nonionic_surfactant_on_mixture_pct: f64,
    pub nonionic_surfactant_on_solid_pct: f64,
    pub ph: f64,
    pub specific_gravity_20c: f64,
    pub conductivity_us_per_cm: f64,
    pub avg_particle_size_um: f64,
    pub brookfield_viscosity_35c_mpa_s: f64,
}

/// Data sheet of the ALGOFLON 60/A liquid PTFE used for the coating.
pub const PTFE_PARAMETERS: PtfeParameters = PtfeParameters {
    melt_point_c: 340.0,
    content_pct: 60.0,
    nonionic_surfactant_on_mixture_pct: 3.0,
    nonionic_surfactant_on_solid_pct: 6.0,
    ph: 9.0,
    specific_gravity_20c: 1.52,
    conductivity_us_per_cm: 700.0,
    avg_particle_size_um: 0.24,
    brookfield_viscosity_35c_mpa_s: 20.0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    Clean,
    SpinCoat,
    Bake,
    Expose,
    Develop,
    Reflow,
    Cool,
}

/// One fabrication step. Which optional fields must be present depends on
/// the kind: `SpinCoat` needs `spin_segments`, `Bake` and `Reflow` need
/// `temperature_c` and `duration_min`, and only those two kinds may carry
/// `ramp_from_c` (the temperature the oven ramps up from).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessStep {
    pub kind: StepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramp_from_c: Option<f64>,
    /// (rpm, seconds) spin segments, e.g. a slow spread then the main spin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin_segments: Option<Vec<(f64, f64)>>,
}

impl ProcessStep {
    pub fn bare(kind: StepKind) -> Self {
        Self {
            kind,
            temperature_c: None,
            duration_min: None,
            ramp_from_c: None,
            spin_segments: None,
        }
    }

    pub fn bake(temperature_c: f64, duration_min: f64) -> Self {
        Self {
            temperature_c: Some(temperature_c),
            duration_min: Some(duration_min),
            ..Self::bare(StepKind::Bake)
        }
    }

    pub fn ramped_bake(ramp_from_c: f64, temperature_c: f64, duration_min: f64) -> Self {
        Self {
            ramp_from_c: Some(ramp_from_c),
            ..Self::bake(temperature_c, duration_min)
        }
    }

    pub fn reflow(temperature_c: f64, duration_min: f64, ramp_from_c: Option<f64>) -> Self {
        Self {
            temperature_c: Some(temperature_c),
            duration_min: Some(duration_min),
            ramp_from_c,
            ..Self::bare(StepKind::Reflow)
        }
    }

    pub fn spin_coat(segments: Vec<(f64, f64)>) -> Self {
        Self {
            spin_segments: Some(segments),
            ..Self::bare(StepKind::SpinCoat)
        }
    }
}

/// Named, ordered fabrication recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessRecipe {
    pub name: String,
    /// Heating-ramp ceiling for rule R2;
    /// [`DEFAULT_MAX_RAMP_C_PER_MIN`] when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ramp_c_per_min: Option<f64>,
    pub steps: Vec<ProcessStep>,
}

impl ProcessRecipe {
    /// Parse a recipe from its JSON form. Unknown keys are rejected with an
    /// error naming the key.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

/// One rule violation, tied to the step that triggered it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub rule_id: &'static str,
    pub step_index: usize,
    pub message: String,
}

/// Validation outcome; an empty findings list means the recipe passes.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.findings
            .iter()
            .any(|f| f.severity == Severity::Error)
    }
}

/// The reference fabrication recipe:
/// wafer clean (piranha 3:1, DI rinse, N2 dry, 120 C dehydration bake),
/// PTFE coating (spread 1000 rpm / 10 s, spin 2000 rpm / 40 s) with bakes at
/// 110 C / 10 min, 165 C / 10 min and 260 C / 15 min, lithography, the
/// 25 -> 120 C in 10 min pre-reflow ramp, reflow at 160 C / 15 min, and a
/// natural cool-down.
pub fn reference_recipe() -> ProcessRecipe {
    ProcessRecipe {
        name: "ptfe-microlens-reference".to_string(),
        max_ramp_c_per_min: None,
        steps: vec![
            ProcessStep {
                temperature_c: Some(120.0),
                ..ProcessStep::bare(StepKind::Clean)
            },
            ProcessStep::spin_coat(vec![(1000.0, 10.0), (2000.0, 40.0)]),
            ProcessStep::bake(110.0, 10.0),
            ProcessStep::bake(165.0, 10.0),
            ProcessStep::bake(260.0, 15.0),
            ProcessStep::bare(StepKind::Expose),
            ProcessStep::bare(StepKind::Develop),
            ProcessStep::ramped_bake(25.0, 120.0, 10.0),
            ProcessStep::reflow(160.0, 15.0, Some(120.0)),
            ProcessStep::bare(StepKind::Cool),
        ],
    }
}

/// Validate a recipe: structural checks first (an `Err`), then the rule set
/// (a report). Findings are ordered by step index, then rule id, so the
/// report is byte-for-byte stable for a given recipe.
pub fn validate_recipe(recipe: &ProcessRecipe) -> Result<ValidationReport> {
    check_structure(recipe)?;

    let max_ramp = recipe
        .max_ramp_c_per_min
        .unwrap_or(DEFAULT_MAX_RAMP_C_PER_MIN);
    let mut findings = Vec::new();
    let mut clean_seen = false;

    for (index, step) in recipe.steps.iter().enumerate() {
        match step.kind {
            StepKind::Clean => clean_seen = true,
            StepKind::SpinCoat => {
                if !clean_seen {
                    findings.push(Finding {
                        severity: Severity::Error,
                        rule_id: "R5",
                        step_index: index,
                        message: "spin coating without a preceding clean step".to_string(),
                    });
                }
            }
            StepKind::Bake => {
                let temperature = step.temperature_c.unwrap_or_default();
                let duration = step.duration_min.unwrap_or_default();
                if temperature >= PEEL_OFF_TEMPERATURE_C && duration >= PEEL_OFF_DURATION_MIN {
                    findings.push(Finding {
                        severity: Severity::Error,
                        rule_id: "R1",
                        step_index: index,
                        message: format!(
                            "peel-off risk: {temperature} C bake held {duration} min \
                             (>= {PEEL_OFF_DURATION_MIN} min at >= {PEEL_OFF_TEMPERATURE_C} C)"
                        ),
                    });
                }
                if index > 0 {
                    if let Some(previous) = recipe.steps.get(index - 1) {
                        if previous.kind == StepKind::Bake
                            && temperature < previous.temperature_c.unwrap_or_default()
                        {
                            findings.push(Finding {
                                severity: Severity::Warning,
                                rule_id: "R4",
                                step_index: index,
                                message: format!(
                                    "bake sequence temperature decreases ({} C -> {} C)",
                                    previous.temperature_c.unwrap_or_default(),
                                    temperature
                                ),
                            });
                        }
                    }
                }
            }
            StepKind::Reflow => {
                let temperature = step.temperature_c.unwrap_or_default();
                if temperature < GLASS_TRANSITION_C {
                    findings.push(Finding {
                        severity: Severity::Warning,
                        rule_id: "R3",
                        step_index: index,
                        message: format!(
                            "reflow at {temperature} C is below the {GLASS_TRANSITION_C} C \
                             glass transition, no reflow will occur"
                        ),
                    });
                }
            }
            StepKind::Expose | StepKind::Develop | StepKind::Cool => {}
        }

        // R2 applies to any heating step that declares a ramp start.
        if let (Some(ramp_from), Some(temperature), Some(duration)) =
            (step.ramp_from_c, step.temperature_c, step.duration_min)
        {
            let rate = (temperature - ramp_from) / duration;
            if rate > max_ramp {
                findings.push(Finding {
                    severity: Severity::Error,
                    rule_id: "R2",
                    step_index: index,
                    message: format!(
                        "thermal-crack risk: heating {ramp_from} C -> {temperature} C in \
                         {duration} min is {rate} C/min, above the {max_ramp} C/min ceiling"
                    ),
                });
            }
        }
    }

    findings.sort_by(|a, b| (a.step_index, a.rule_id).cmp(&(b.step_index, b.rule_id)));
    Ok(ValidationReport { findings })
}

fn check_structure(recipe: &ProcessRecipe) -> Result<()> {
    if recipe.steps.is_empty() {
        return Err(Error::EmptyRecipe);
    }
    if let Some(ceiling) = recipe.max_ramp_c_per_min {
        if !(ceiling > 0.0 && ceiling.is_finite()) {
            return Err(Error::MalformedStep {
                step_index: 0,
                message: format!("max_ramp_c_per_min = {ceiling} must be positive"),
            });
        }
    }

    for (step_index, step) in recipe.steps.iter().enumerate() {
        let malformed = |message: String| Error::MalformedStep {
            step_index,
            message,
        };

        match step.kind {
            StepKind::SpinCoat => {
                let segments = step
                    .spin_segments
                    .as_ref()
                    .ok_or_else(|| malformed("SpinCoat requires spin_segments".to_string()))?;
                if segments.is_empty() {
                    return Err(malformed("spin_segments must not be empty".to_string()));
                }
                for &(rpm, seconds) in segments {
                    if !(rpm > 0.0 && seconds > 0.0) {
                        return Err(malformed(format!(
                            "spin segment ({rpm} rpm, {seconds} s) must be positive"
                        )));
                    }
                }
            }
            StepKind::Bake | StepKind::Reflow => {
                if step.temperature_c.is_none() || step.duration_min.is_none() {
                    return Err(malformed(format!(
                        "{:?} requires temperature_c and duration_min",
                        step.kind
                    )));
                }
            }
            _ => {}
        }

        if step.kind != StepKind::SpinCoat && step.spin_segments.is_some() {
            return Err(malformed(format!(
                "spin_segments is only valid on SpinCoat steps, not {:?}",
                step.kind
            )));
        }
        if step.ramp_from_c.is_some()
            && !matches!(step.kind, StepKind::Bake | StepKind::Reflow)
        {
            return Err(malformed(format!(
                "ramp_from_c is only valid on Bake or Reflow steps, not {:?}",
                step.kind
            )));
        }
        if let Some(duration) = step.duration_min {
            if !(duration > 0.0 && duration.is_finite()) {
                return Err(malformed(format!("duration_min = {duration} must be positive")));
            }
        }
        for (value, field) in [
            (step.temperature_c, "temperature_c"),
            (step.ramp_from_c, "ramp_from_c"),
        ] {
            if let Some(value) = value {
                if !value.is_finite() {
                    return Err(malformed(format!("{field} = {value} must be finite")));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_recipe_is_clean() {
        let report = validate_recipe(&reference_recipe()).unwrap();
        assert!(report.is_clean(), "unexpected findings: {:?}", report.findings);
    }

    #[test]
    fn reference_recipe_matches_published_parameters() {
        let recipe = reference_recipe();
        // Third PTFE bake: 260 C, duration within the published 10-15 min.
        let bake = &recipe.steps[4];
        assert_eq!(bake.kind, StepKind::Bake);
        assert_eq!(bake.temperature_c, Some(260.0));
        let duration = bake.duration_min.unwrap();
        assert!((10.0..=15.0).contains(&duration));

        let reflow = recipe
            .steps
            .iter()
            .find(|s| s.kind == StepKind::Reflow)
            .unwrap();
        assert_eq!(reflow.temperature_c, Some(160.0));
        assert_eq!(reflow.duration_min, Some(15.0));

        let coat = recipe
            .steps
            .iter()
            .find(|s| s.kind == StepKind::SpinCoat)
            .unwrap();
        assert_eq!(
            coat.spin_segments.as_deref(),
            Some(&[(1000.0, 10.0), (2000.0, 40.0)][..])
        );
    }

    #[test]
    fn long_hot_bake_triggers_peel_off_rule() {
        let mut recipe = reference_recipe();
        recipe.steps[4].duration_min = Some(40.0);
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R1");
        assert_eq!(report.findings[0].severity, Severity::Error);
        assert_eq!(report.findings[0].step_index, 4);
    }

    #[test]
    fn fast_ramp_triggers_thermal_crack_rule() {
        let mut recipe = reference_recipe();
        recipe.steps[7].duration_min = Some(2.0);
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R2");
        assert_eq!(report.findings[0].severity, Severity::Error);
    }

    #[test]
    fn ramp_ceiling_is_configurable() {
        let mut recipe = reference_recipe();
        recipe.max_ramp_c_per_min = Some(5.0);
        // The reference ramp (9.5 C/min) now exceeds the ceiling.
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R2");
    }

    #[test]
    fn cold_reflow_warns() {
        let mut recipe = reference_recipe();
        recipe.steps[8].temperature_c = Some(140.0);
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R3");
        assert_eq!(report.findings[0].severity, Severity::Warning);
        assert!(!report.has_errors());
    }

    #[test]
    fn decreasing_bake_run_warns() {
        let mut recipe = reference_recipe();
        recipe.steps.swap(3, 4); // 110, 260, 165
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R4");
        assert_eq!(report.findings[0].step_index, 4);
    }

    #[test]
    fn coat_without_clean_is_an_error() {
        let recipe = ProcessRecipe {
            name: "no-clean".to_string(),
            max_ramp_c_per_min: None,
            steps: vec![ProcessStep::spin_coat(vec![(2000.0, 40.0)])],
        };
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert_eq!(report.findings[0].rule_id, "R5");
    }

    #[test]
    fn structural_errors_precede_rules() {
        let recipe = ProcessRecipe {
            name: "broken".to_string(),
            max_ramp_c_per_min: None,
            steps: vec![ProcessStep::bare(StepKind::Bake)],
        };
        assert!(matches!(
            validate_recipe(&recipe),
            Err(Error::MalformedStep { step_index: 0, .. })
        ));

        let empty = ProcessRecipe {
            name: "empty".to_string(),
            max_ramp_c_per_min: None,
            steps: vec![],
        };
        assert!(matches!(validate_recipe(&empty), Err(Error::EmptyRecipe)));

        let stray = ProcessRecipe {
            name: "stray".to_string(),
            max_ramp_c_per_min: None,
            steps: vec![ProcessStep {
                ramp_from_c: Some(25.0),
                ..ProcessStep::bare(StepKind::Cool)
            }],
        };
        assert!(matches!(
            validate_recipe(&stray),
            Err(Error::MalformedStep { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let recipe = reference_recipe();
        let text = recipe.to_json().unwrap();
        let parsed = ProcessRecipe::from_json(&text).unwrap();
        assert_eq!(parsed, recipe);
    }

    #[test]
    fn unknown_json_keys_are_named() {
        let text = r#"{"name": "x", "steps": [], "oven_model": "XYZ"}"#;
        let err = ProcessRecipe::from_json(text).unwrap_err();
        assert!(err.to_string().contains("oven_model"), "{err}");

        let step_text = r#"{"name": "x", "steps": [{"kind": "Cool", "speed": 3}]}"#;
        let err = ProcessRecipe::from_json(step_text).unwrap_err();
        assert!(err.to_string().contains("speed"), "{err}");
    }

    #[test]
    fn report_is_deterministic() {
        let mut recipe = reference_recipe();
        recipe.steps[4].duration_min = Some(45.0);
        recipe.steps[7].duration_min = Some(1.0);
        let a = serde_json::to_string(&validate_recipe(&recipe).unwrap()).unwrap();
        let b = serde_json::to_string(&validate_recipe(&recipe).unwrap()).unwrap();
        assert_eq!(a, b);
        // Ordered by step index.
        let report = validate_recipe(&recipe).unwrap();
        assert_eq!(report.findings[0].step_index, 4);
        assert_eq!(report.findings[1].step_index, 7);
    }

    #[test]
    fn ptfe_reference_block() {
        assert_eq!(PTFE_PARAMETERS.melt_point_c, 340.0);
        assert_eq!(PTFE_PARAMETERS.content_pct, 60.0);
        assert_eq!(PTFE_PARAMETERS.ph, 9.0);
    }
}
