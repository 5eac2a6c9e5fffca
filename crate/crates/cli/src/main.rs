mod cases;
mod emit;
mod spec_file;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use hardy_spectra::classify::classify_type;
use hardy_spectra::operators::{composition_matrix, weighted_composition_matrix, OperatorMatrix};
use hardy_spectra::spectra::{boundary_data, predict_spectrum, pseudospectrum_grid, Grade, Region};
use hardy_spectra::symbols::{Symbol, Weight};
use hardy_spectra::Error;
use serde_json::json;

use cases::{CaseReport, Settings, CASE_IDS};
use spec_file::SpecError;

#[derive(Parser)]
#[command(
    name = "hardy-spectra",
    version,
    about = "Spectra of composition operators on the Hardy space H²"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Denjoy–Wolff point, type and boundary data of a symbol.
    Classify {
        /// Spec file or catalogue id.
        spec: String,
    },
    /// Predicted spectrum, optionally with pseudospectra on disk.
    Spectrum {
        spec: String,
        /// Weight spec file or weight catalogue id.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Pseudospectrum grid, `NXxNY`.
        #[arg(long, default_value = "120x120")]
        grid: String,
        /// `auto` or `re_min,re_max,im_min,im_max`.
        #[arg(long, default_value = "auto")]
        region: String,
        /// Write model.json, pseudospectra.csv and plot.svg here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Compact single-line JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run one reproduction case, or `all`.
    Reproduce {
        case: String,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Print the reports as JSON instead of a table.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Finite section of `C_φ` or `C_{g,φ}` as CSV.
    MatrixDump {
        spec: String,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Write `<label>.csv` and a JSON sidecar here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<SpecError>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::ContractViolation(_)
            | Error::ParameterOutOfRange(_)
            | Error::NotASelfMap(_)
            | Error::DegenerateMobius
            | Error::UnknownCatalogueId(_),
        ) => 2,
        Some(
            Error::NonConvergence { .. }
            | Error::LowSmoothness { .. }
            | Error::SamplingFailure { .. }
            | Error::NotAnalyticOnSamplingDisc { .. }
            | Error::IndeterminateType { .. },
        ) => 3,
        Some(Error::HypothesisViolation { .. } | Error::MissingThirdDerivative) => 4,
        None => 1,
    }
}

fn parse_grid(s: &str) -> anyhow::Result<(usize, usize)> {
    let parsed = s
        .split_once('x')
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
    parsed.ok_or_else(|| SpecError(format!("--grid expects NXxNY, got `{s}`")).into())
}

fn parse_region(s: &str) -> anyhow::Result<Option<Region>> {
    if s == "auto" {
        return Ok(None);
    }
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| SpecError(format!("--region expects auto or four numbers, got `{s}`")))?;
    if v.len() != 4 {
        bail!(SpecError(format!("--region expects four numbers, got {}", v.len())));
    }
    Ok(Some(Region::new(v[0], v[1], v[2], v[3])?))
}

fn section(s: &Symbol, g: Option<&Weight>, n: usize) -> anyhow::Result<OperatorMatrix> {
    Ok(match g {
        Some(g) => weighted_composition_matrix(g, s, n)?,
        None => composition_matrix(s, n)?,
    })
}

fn print_json(value: &serde_json::Value, compact: bool) -> anyhow::Result<()> {
    let text = if compact {
        serde_json::to_string(value)?
    } else {
        serde_json::to_string_pretty(value)?
    };
    println!("{text}");
    Ok(())
}

fn classify(spec: &str) -> anyhow::Result<()> {
    let s = spec_file::load_symbol(spec)?;
    let cl = classify_type(&s)?;
    print_json(&serde_json::to_value(&cl)?, false)
}

#[allow(clippy::too_many_arguments)]
fn spectrum(
    spec: &str,
    weight: Option<&str>,
    n: usize,
    grid: &str,
    region: &str,
    emit: Option<&Path>,
    compact: bool,
) -> anyhow::Result<()> {
    let (nx, ny) = parse_grid(grid)?;
    let region = parse_region(region)?;
    let s = spec_file::load_symbol(spec)?;
    let g = weight.map(spec_file::load_weight).transpose()?;
    let cl = classify_type(&s)?;
    let jet = boundary_data(&s, &cl)?;
    let pred = predict_spectrum(&cl, jet.as_ref(), g.as_ref())?;

    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let region = region.unwrap_or_else(|| Region::auto(&pred.spectrum));
        let est = pseudospectrum_grid(&section(&s, g.as_ref(), n)?, region, nx, ny)?;
        emit::write_json(&dir.join("model.json"), &pred)?;
        fs::write(dir.join("pseudospectra.csv"), est.pseudo_grid.to_csv())?;
        fs::write(dir.join("plot.svg"), emit::plot_svg(&est, &pred.spectrum))?;
        emit::write_json(&dir.join("eigenvalues.json"), &est)?;
    }
    let out = json!({
        "classification": cl,
        "spectrum": pred.spectrum,
        "essential": pred.essential,
    });
    print_json(&out, compact)
}

fn emit_case(dir: &Path, r: &CaseReport) -> anyhow::Result<()> {
    emit::write_json(&dir.join(format!("{}.json", r.case_id)), r)?;
    if let (Some(est), Some(model)) = (&r.estimate, &r.model) {
        fs::write(
            dir.join(format!("{}-pseudospectra.csv", r.case_id)),
            est.pseudo_grid.to_csv(),
        )?;
        fs::write(
            dir.join(format!("{}.svg", r.case_id)),
            emit::plot_svg(est, &model.spectrum),
        )?;
    }
    Ok(())
}

fn reproduce(case: &str, emit: Option<&Path>, as_json: bool, n: usize) -> anyhow::Result<bool> {
    let ids: Vec<&str> = if case == "all" {
        CASE_IDS.to_vec()
    } else if cases::is_case(case) {
        vec![case]
    } else {
        bail!(SpecError(format!(
            "unknown case `{case}`; known cases: all, {}",
            CASE_IDS.join(", ")
        )));
    };
    if !(32..=256).contains(&n) {
        bail!(SpecError(format!("--n must lie in 32..=256, got {n}")));
    }
    let reports = cases::run_cases(&ids, Settings { n, grid: (120, 120) });

    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for r in &reports {
            emit_case(dir, r)?;
        }
        let summary: Vec<_> = reports
            .iter()
            .map(|r| json!({"case_id": r.case_id, "verdict": r.verdict, "wall_time": r.wall_time}))
            .collect();
        emit::write_json(&dir.join("summary.json"), &summary)?;
    }

    if as_json {
        print_json(&serde_json::to_value(&reports)?, false)?;
    } else {
        for r in &reports {
            println!(
                "{:<24} {:<13} {:<42} {:>7.2}s",
                r.case_id,
                r.verdict.as_str(),
                r.theorem,
                r.wall_time
            );
            for ch in r.checks.iter().filter(|ch| ch.grade != Grade::Pass || ids.len() == 1) {
                println!("    {:<13} {}: {}", ch.grade.as_str(), ch.name, ch.detail);
            }
        }
        let fails = reports.iter().filter(|r| r.verdict == Grade::Fail).count();
        let weak = reports.iter().filter(|r| r.verdict == Grade::EvidenceWeak).count();
        println!(
            "{} cases: {} pass, {weak} evidence-weak, {fails} fail",
            reports.len(),
            reports.len() - weak - fails
        );
    }
    Ok(reports.iter().all(|r| r.verdict != Grade::Fail))
}

fn matrix_dump(spec: &str, weight: Option<&str>, n: usize, emit: Option<&Path>) -> anyhow::Result<()> {
    let s = spec_file::load_symbol(spec)?;
    let g = weight.map(spec_file::load_weight).transpose()?;
    let m = section(&s, g.as_ref(), n)?;
    match emit {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let stem: String = m
                .label()
                .chars()
                .map(|c| if c.is_alphanumeric() || c == '-' { c } else { '_' })
                .collect();
            emit::write_matrix(dir, &stem, &m)
        }
        None => {
            print!("{}", emit::matrix_csv(&m));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Classify { spec } => classify(&spec)?,
        Command::Spectrum {
            spec,
            weight,
            n,
            grid,
            region,
            emit,
            json,
        } => spectrum(&spec, weight.as_deref(), n, &grid, &region, emit.as_deref(), json)?,
        Command::Reproduce { case, emit, json, n } => return reproduce(&case, emit.as_deref(), json, n),
        Command::MatrixDump { spec, weight, n, emit } => matrix_dump(&spec, weight.as_deref(), n, emit.as_deref())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
