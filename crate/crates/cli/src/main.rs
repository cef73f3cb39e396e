//! Command-line front end for the micro-ball lens toolkit.
//!
//! Data goes to stdout (JSON, or CSV for sweeps); diagnostics go to stderr.
//! Exit codes: 0 success, 1 recipe validation errors, 2 usage or I/O
//! errors, 3 domain errors (out-of-range inputs, degenerate fits).

mod svg;

use std::fs::File;
use std::io::{self, BufReader, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use reflow_lens_core::conservation::{
    predict_lens, required_pattern_diameter, required_thickness, ResistPattern,
};
use reflow_lens_core::error::Error;
use reflow_lens_core::geometry::{ContactAngle, VolumeConvention};
use reflow_lens_core::metrology::{
    fit_sphere_profile, reference_comparison, roughness_ra, SurfaceProfile,
};
use reflow_lens_core::recipe::{validate_recipe, ProcessRecipe, Severity};
use reflow_lens_core::spincoat::{
    fit_spin_model, read_calibration_csv, sweep_lens_vs_speed, write_sweep_csv,
};
use reflow_lens_core::wetting::{classify_angle, classify_wetting, young_contact_angle, SurfaceEnergies};
use reflow_lens_core::DEFAULT_CONTACT_ANGLE_DEG;

#[derive(Parser)]
#[command(
    name = "reflow-lens",
    version,
    about = "Design and analysis toolkit for thermal-reflow micro-ball lenses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Contact angle and volume convention shared by the model subcommands.
#[derive(Args, Clone, Copy)]
struct ModelArgs {
    /// Contact angle between the melted resist and the substrate (degrees)
    #[arg(long, default_value_t = DEFAULT_CONTACT_ANGLE_DEG, allow_negative_numbers = true)]
    angle_deg: f64,
    /// Lens volume convention
    #[arg(long, default_value = "cap-complement", value_parser = parse_convention)]
    convention: VolumeConvention,
}

impl ModelArgs {
    fn angle(&self) -> Result<ContactAngle, Error> {
        ContactAngle::new(self.angle_deg)
    }
}

#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
struct KnownDesignVariable {
    /// Known pattern diameter (um); solves for the required resist thickness
    #[arg(long, allow_negative_numbers = true)]
    pattern_um: Option<f64>,
    /// Known resist thickness (um); solves for the required pattern diameter
    #[arg(long, allow_negative_numbers = true)]
    thickness_um: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Predict the lens a resist pattern reflows into (JSON)
    Forward {
        /// Photoresist pattern diameter (um)
        #[arg(long, allow_negative_numbers = true)]
        pattern_um: f64,
        /// Resist thickness (um)
        #[arg(long, allow_negative_numbers = true)]
        thickness_um: f64,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Solve for the missing design variable to hit a target lens diameter
    Inverse {
        /// Target lens sphere diameter (um)
        #[arg(long, allow_negative_numbers = true)]
        target_d_um: f64,
        #[command(flatten)]
        known: KnownDesignVariable,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Print the built-in measured-vs-predicted reference table (JSON)
    Table3,
    /// Sweep spin speeds into lens-diameter and sag-height curves (CSV)
    Sweep {
        /// Calibration CSV with header spin_rpm,thickness_um
        #[arg(long)]
        calib: PathBuf,
        /// Comma-separated pattern diameters in um, e.g. 60,70,80
        #[arg(long)]
        patterns: String,
        /// Spin-speed grid as MIN:MAX:STEPS, e.g. 1000:4000:25
        #[arg(long)]
        omega: String,
        /// Also render the curves to this SVG file
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Fit the spin-coating power law to calibration points (JSON)
    Calibrate {
        /// Calibration CSV with header spin_rpm,thickness_um
        #[arg(long)]
        points: PathBuf,
    },
    /// Young's angle and wetting regime from surface energies (JSON)
    Wetting {
        /// Solid-air surface energy (mJ/m^2)
        #[arg(long, allow_negative_numbers = true)]
        ssa: f64,
        /// Liquid-solid surface energy (mJ/m^2)
        #[arg(long, allow_negative_numbers = true)]
        sls: f64,
        /// Air-liquid surface energy (mJ/m^2)
        #[arg(long, allow_negative_numbers = true)]
        sal: f64,
    },
    /// Analyze a stylus profile CSV (header x_um,z_um)
    Profile {
        #[command(subcommand)]
        command: ProfileCommand,
    },
    /// Work with process recipe files
    Recipe {
        #[command(subcommand)]
        command: RecipeCommand,
    },
}

#[derive(Subcommand)]
enum ProfileCommand {
    /// Arithmetic-average roughness of the detrended profile, in nm (JSON)
    Ra {
        #[arg(long)]
        csv: PathBuf,
    },
    /// Fit a sphere to the scan and report the full lens geometry (JSON)
    Fit {
        #[arg(long)]
        csv: PathBuf,
        /// Substrate plane level in the scan's z datum (um)
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        base_z_um: f64,
    },
}

#[derive(Subcommand)]
enum RecipeCommand {
    /// Validate a recipe JSON file; exit 1 if any rule reports an Error
    Check { file: PathBuf },
}

fn parse_convention(s: &str) -> Result<VolumeConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            report_error(&error);
            if error.is_domain() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Forward {
            pattern_um,
            thickness_um,
            model,
        } => {
            let pattern = ResistPattern::new(pattern_um, thickness_um)?;
            let lens = predict_lens(pattern, model.angle()?, model.convention);
            print_json(&lens)?;
        }
        Command::Inverse {
            target_d_um,
            known,
            model,
        } => {
            let theta = model.angle()?;
            let value = match (known.pattern_um, known.thickness_um) {
                (Some(pattern_um), None) => serde_json::json!({
                    "required_thickness_um":
                        required_thickness(target_d_um, pattern_um, theta, model.convention)?,
                }),
                (None, Some(thickness_um)) => serde_json::json!({
                    "required_pattern_diameter_um":
                        required_pattern_diameter(target_d_um, thickness_um, theta, model.convention)?,
                }),
                // clap's argument group enforces exactly one.
                _ => unreachable!("argument group guarantees one known variable"),
            };
            print_json(&value)?;
        }
        Command::Table3 => {
            let rows = reference_comparison();
            print_json(&rows)?;
            // Human view on stderr, errors rounded to one decimal.
            eprintln!("pattern_um  exp_D   theo_D  err_D%  exp_h   theo_h  err_h%");
            for row in &rows {
                eprintln!(
                    "{:<10}  {:<6.2}  {:<6.2}  {:<6.1}  {:<6.2}  {:<6.2}  {:<6.1}",
                    row.pattern_diameter_um,
                    row.comparison.experimental.diameter_um,
                    row.comparison.theoretical.sphere_diameter_um,
                    row.comparison.diameter_error_pct,
                    row.comparison.experimental.height_um,
                    row.comparison.theoretical.sag_height_um,
                    row.comparison.height_error_pct,
                );
            }
        }
        Command::Sweep {
            calib,
            patterns,
            omega,
            svg,
            model,
        } => {
            let points = read_calibration_csv(open(&calib)?)?;
            let spin_model = fit_spin_model(&points)?;
            let pattern_list = parse_patterns(&patterns)?;
            let (omega_min, omega_max, steps) = parse_omega(&omega)?;
            let rows = sweep_lens_vs_speed(
                &spin_model,
                &pattern_list,
                model.angle()?,
                model.convention,
                (omega_min, omega_max),
                steps,
            )?;
            let stdout = io::stdout();
            write_sweep_csv(stdout.lock(), &rows)?;
            if let Some(path) = svg {
                std::fs::write(&path, svg::render_sweep_chart(&rows))?;
                eprintln!("wrote {} sweep points and chart {}", rows.len(), path.display());
            }
        }
        Command::Calibrate { points } => {
            let points = read_calibration_csv(open(&points)?)?;
            let model = fit_spin_model(&points)?;
            print_json(&model)?;
        }
        Command::Wetting { ssa, sls, sal } => {
            let energies = SurfaceEnergies::new(ssa, sls, sal)?;
            let regime = classify_wetting(energies);
            let value = match young_contact_angle(energies) {
                Ok(theta) => serde_json::json!({
                    "contact_angle_deg": theta.degrees(),
                    "regime": regime,
                    "classification": classify_angle(theta),
                }),
                Err(Error::NoEquilibriumAngle { .. }) => serde_json::json!({
                    "contact_angle_deg": null,
                    "regime": regime,
                    "classification": null,
                }),
                Err(other) => return Err(other),
            };
            print_json(&value)?;
        }
        Command::Profile { command } => match command {
            ProfileCommand::Ra { csv } => {
                let profile = SurfaceProfile::from_csv(open(&csv)?)?;
                print_json(&serde_json::json!({ "ra_nm": roughness_ra(&profile) }))?;
            }
            ProfileCommand::Fit { csv, base_z_um } => {
                let profile = SurfaceProfile::from_csv(open(&csv)?)?;
                let lens = fit_sphere_profile(&profile, base_z_um)?;
                print_json(&lens)?;
            }
        },
        Command::Recipe { command } => match command {
            RecipeCommand::Check { file } => {
                let text = std::fs::read_to_string(&file)?;
                let recipe = ProcessRecipe::from_json(&text)?;
                let report = validate_recipe(&recipe)?;
                print_json(&report)?;
                summarize_report(&recipe, &report);
                if report.has_errors() {
                    return Ok(ExitCode::from(1));
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn open(path: &Path) -> Result<BufReader<File>, Error> {
    Ok(BufReader::new(File::open(path)?))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn parse_patterns(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Format(format!("cannot parse pattern diameter \"{part}\"")))
        })
        .collect()
}

fn parse_omega(text: &str) -> Result<(f64, f64, usize), Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Format(format!(
            "omega grid \"{text}\" must be MIN:MAX:STEPS"
        )));
    }
    let min = parts[0]
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("cannot parse omega minimum \"{}\"", parts[0])))?;
    let max = parts[1]
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("cannot parse omega maximum \"{}\"", parts[1])))?;
    let steps = parts[2]
        .parse::<usize>()
        .map_err(|_| Error::Format(format!("cannot parse omega steps \"{}\"", parts[2])))?;
    Ok((min, max, steps))
}

fn styling_enabled() -> bool {
    std::env::var_os("REFLOW_LENS_NO_COLOR").is_none() && io::stderr().is_terminal()
}

fn report_error(error: &Error) {
    if styling_enabled() {
        eprintln!("\x1b[31merror\x1b[0m: {error}");
    } else {
        eprintln!("error: {error}");
    }
}

/// Human-readable recipe summary on the diagnostic stream; the JSON report
/// on stdout is the data artifact.
fn summarize_report(recipe: &ProcessRecipe, report: &reflow_lens_core::ValidationReport) {
    let style = styling_enabled();
    if report.is_clean() {
        eprintln!("recipe \"{}\": {} steps, no findings", recipe.name, recipe.steps.len());
        return;
    }
    eprintln!(
        "recipe \"{}\": {} steps, {} finding(s)",
        recipe.name,
        recipe.steps.len(),
        report.findings.len()
    );
    for finding in &report.findings {
        let tag = match (finding.severity, style) {
            (Severity::Error, true) => "\x1b[31mERROR\x1b[0m",
            (Severity::Error, false) => "ERROR",
            (Severity::Warning, true) => "\x1b[33mWARN\x1b[0m ",
            (Severity::Warning, false) => "WARN ",
        };
        eprintln!(
            "  {tag} [{}] step {}: {}",
            finding.rule_id, finding.step_index, finding.message
        );
    }
}
