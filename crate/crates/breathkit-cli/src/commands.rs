//! The five commands behind the CLI surface. Each returns the complete
//! output document as a string, so integration tests can drive them without
//! spawning processes; byte-identical output for identical inputs is part of
//! the contract.

use crate::error::CliError;
use crate::format::{
    fmt_f64, fmt_f64_short, json_f64, json_string, point_csv_row, point_json, sweep_csv,
    sweep_json, SWEEP_CSV_HEADER,
};
use crate::manifest::{OutputFormat, RunManifest};
use breathkit_core::geometry::{build_tile, oracle_check, tessellation_check, TileSpec};
use breathkit_core::packing::{
    closed_form_minima, initial_body_area_tilde, PackingKind, PackingScenario,
};
use breathkit_core::partition::{
    classify, coefficient, CoefficientDefinition, LimitCase, ValidityConfig, VolumeDelta,
};
use breathkit_core::sweep::{
    detect_extrema, evaluate_point, minimisation_limit, ExtremaReport, SweepConfig, SweepPoint,
};
use core::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyFormat {
    Text,
    Csv,
    Json,
}

pub struct ClassifyArgs {
    pub d_body: Option<f64>,
    pub d_solid: Option<f64>,
    pub d_void: Option<f64>,
    pub definition: CoefficientDefinition,
    pub validity: ValidityConfig,
    pub eps_class: f64,
    pub format: ClassifyFormat,
}

/// Builds the delta (inferring the missing component), classifies it, and
/// reports the requested coefficient plus all six definitions.
pub fn classify_report(args: &ClassifyArgs) -> Result<String, CliError> {
    for value in [args.d_body, args.d_solid, args.d_void].into_iter().flatten() {
        if !value.is_finite() {
            return Err(CliError::Usage("delta components must be finite".into()));
        }
    }
    let (delta, inferred) = match (args.d_body, args.d_solid, args.d_void) {
        (Some(b), Some(s), Some(v)) => {
            let scale = b.abs().max(s.abs() + v.abs());
            if (b - (s + v)).abs() > 1e-9 * scale {
                return Err(CliError::Domain(format!(
                    "inconsistent deltas: d_body {b} != d_solid {s} + d_void {v}"
                )));
            }
            (VolumeDelta::from_solid_void(s, v), None)
        }
        (Some(b), Some(s), None) => (VolumeDelta::from_body_solid(b, s), Some("d_void")),
        (Some(b), None, Some(v)) => (VolumeDelta::from_body_void(b, v), Some("d_solid")),
        (None, Some(s), Some(v)) => (VolumeDelta::from_solid_void(s, v), Some("d_body")),
        _ => {
            return Err(CliError::Usage(
                "at least two of --db, --ds, --dv are required".into(),
            ))
        }
    };
    let regime = classify(&delta, args.eps_class)?;
    let requested = coefficient(&delta, args.definition, &args.validity);
    let all: Vec<_> = CoefficientDefinition::ALL
        .iter()
        .map(|&def| coefficient(&delta, def, &args.validity))
        .collect();
    let limit_name = regime.limit_case.map(LimitCase::as_str);

    let mut out = String::new();
    match args.format {
        ClassifyFormat::Text => {
            let _ = writeln!(
                out,
                "delta: d_body={} d_solid={} d_void={}{}",
                fmt_f64_short(delta.d_body),
                fmt_f64_short(delta.d_solid),
                fmt_f64_short(delta.d_void),
                inferred.map(|f| format!(" ({f} inferred)")).unwrap_or_default()
            );
            let _ = writeln!(out, "configuration: {}", regime.configuration);
            let _ = writeln!(out, "limit case: {}", limit_name.unwrap_or("none"));
            let _ = writeln!(
                out,
                "u_{} = {} ({})",
                requested.definition,
                fmt_f64_short(requested.value),
                requested.validity
            );
            let _ = writeln!(out);
            let _ = writeln!(out, "definition  value                   validity");
            for r in &all {
                let _ = writeln!(
                    out,
                    "{:<11} {:<23} {}",
                    r.definition.as_str(),
                    fmt_f64_short(r.value),
                    r.validity
                );
            }
        }
        ClassifyFormat::Csv => {
            let _ = writeln!(out, "# configuration={}", regime.configuration);
            let _ = writeln!(out, "# limit_case={}", limit_name.unwrap_or("none"));
            if let Some(f) = inferred {
                let _ = writeln!(out, "# inferred={f}");
            }
            let _ = writeln!(out, "definition,value,validity");
            for r in &all {
                let _ = writeln!(out, "{},{},{}", r.definition, fmt_f64(r.value), r.validity);
            }
        }
        ClassifyFormat::Json => {
            let rows: Vec<String> = all
                .iter()
                .map(|r| {
                    format!(
                        "{{\"definition\":{},\"value\":{},\"validity\":{}}}",
                        json_string(r.definition.as_str()),
                        json_f64(r.value),
                        json_string(r.validity.as_str())
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "{{\"delta\":{{\"d_body\":{},\"d_solid\":{},\"d_void\":{}}},\"inferred\":{},\"configuration\":{},\"limit_case\":{},\"requested\":{{\"definition\":{},\"value\":{},\"validity\":{}}},\"coefficients\":[{}]}}",
                json_f64(delta.d_body),
                json_f64(delta.d_solid),
                json_f64(delta.d_void),
                inferred.map(json_string).unwrap_or_else(|| "null".into()),
                json_string(regime.configuration.as_str()),
                limit_name.map(json_string).unwrap_or_else(|| "null".into()),
                json_string(requested.definition.as_str()),
                json_f64(requested.value),
                json_string(requested.validity.as_str()),
                rows.join(",")
            );
        }
    }
    Ok(out)
}

pub struct EvalArgs {
    pub scenario: PackingScenario,
    pub xi: f64,
    pub validity: ValidityConfig,
}

pub fn eval_report(args: &EvalArgs, manifest: &RunManifest) -> Result<String, CliError> {
    let point = evaluate_point(&args.scenario, &args.validity, args.xi)?;
    Ok(match manifest.output_format {
        OutputFormat::Csv => format!("{SWEEP_CSV_HEADER}\n{}\n", point_csv_row(&point)),
        OutputFormat::Json => format!(
            "{{\"config\":{},\"point\":{}}}\n",
            manifest.config_json(),
            point_json(&point)
        ),
    })
}

pub struct SweepArgs {
    pub config: SweepConfig,
    pub jobs: usize,
}

/// Evaluates the grid, splitting it across `jobs` worker threads; the merge
/// preserves grid order, so the output does not depend on the worker count.
pub fn run_sweep_parallel(args: &SweepArgs) -> Result<Vec<SweepPoint>, CliError> {
    let grid = args.config.grid().map_err(CliError::from)?;
    let scenario = args.config.scenario;
    let validity = args.config.validity;
    if args.jobs <= 1 {
        return grid
            .iter()
            .map(|&xi| evaluate_point(&scenario, &validity, xi).map_err(CliError::from))
            .collect();
    }
    let chunk = grid.len().div_ceil(args.jobs);
    let chunks: Vec<&[f64]> = grid.chunks(chunk).collect();
    let results: Vec<Result<Vec<SweepPoint>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|slice| {
                scope.spawn(move || {
                    slice
                        .iter()
                        .map(|&xi| evaluate_point(&scenario, &validity, xi).map_err(CliError::from))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut points = Vec::with_capacity(grid.len());
    for r in results {
        points.extend(r?);
    }
    debug_assert!(points.windows(2).all(|w| w[0].xi <= w[1].xi));
    Ok(points)
}

pub fn sweep_report(args: &SweepArgs, manifest: &RunManifest) -> Result<String, CliError> {
    let points = run_sweep_parallel(args)?;
    let report: Option<ExtremaReport> = detect_extrema(&points).ok();
    Ok(match manifest.output_format {
        OutputFormat::Csv => sweep_csv(&points, report.as_ref()),
        OutputFormat::Json => sweep_json(&manifest.config_json(), &points, report.as_ref()),
    })
}

pub struct VerifyArgs {
    pub trials: u64,
    pub seed: u64,
    pub packing: Option<PackingKind>,
    pub xi: Option<f64>,
    pub alpha0: Option<f64>,
    pub copies: usize,
    pub dump: Option<std::path::PathBuf>,
}

const ORACLE_TOLERANCE: f64 = 1e-10;

/// Seeded random formula-versus-shoelace checks plus a tessellation matrix
/// over the tile families. Any miss is a verification failure (exit 3).
pub fn verify_report(args: &VerifyArgs) -> Result<String, CliError> {
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if args.copies < 2 {
        return Err(CliError::Usage("--copies must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let kinds: Vec<PackingKind> = match args.packing {
        Some(kind) => vec![kind],
        None => vec![PackingKind::Square, PackingKind::Hex60, PackingKind::Hex30],
    };
    let mut worst = 0.0_f64;
    let mut worst_desc = String::new();
    let mut dump_payload: Option<String> = None;
    for trial in 0..args.trials {
        let xi = args.xi.unwrap_or_else(|| rng.random_range(1.0..32.0));
        let kind = kinds[(trial % kinds.len() as u64) as usize];
        let alpha0 = match kind {
            PackingKind::Hex30 => FRAC_PI_6,
            _ => args
                .alpha0
                .unwrap_or_else(|| rng.random_range(0.0..FRAC_PI_3 * 0.999_999)),
        };
        let scenario = PackingScenario::new(kind, alpha0)?;
        let check = oracle_check(xi, &scenario).map_err(|e| {
            CliError::Verification(format!(
                "trial {trial}: kind={kind} xi={xi} alpha0={alpha0}: {e}"
            ))
        })?;
        if check.rel_error > ORACLE_TOLERANCE {
            return Err(CliError::Verification(format!(
                "trial {trial}: kind={kind} xi={xi} alpha0={alpha0}: rel_error {} above {ORACLE_TOLERANCE}",
                check.rel_error
            )));
        }
        if check.rel_error >= worst {
            worst = check.rel_error;
            worst_desc = format!("kind={kind} xi={} alpha0={}", fmt_f64_short(xi), fmt_f64_short(alpha0));
        }
        if trial == 0 && args.dump.is_some() {
            let spec = TileSpec::from_model(&scenario, xi, 1.0)?;
            let tile = build_tile(&spec)?;
            dump_payload = Some(tile_json(&spec, &tile));
        }
    }

    let families: Vec<(PackingKind, [f64; 5])> = [
        (PackingKind::Square, [0.0, 0.13, 0.26, 0.39, FRAC_PI_6]),
        (PackingKind::Hex60, [0.0, 0.13, 0.26, 0.39, FRAC_PI_6]),
        (PackingKind::Hex30, [FRAC_PI_6, 0.65, 0.8, 0.95, FRAC_PI_3]),
    ]
    .into_iter()
    .filter(|(kind, _)| args.packing.is_none() || args.packing == Some(*kind))
    .collect();
    let mut tessellations = 0usize;
    for (kind, angles) in &families {
        for &alpha in angles {
            let spec = TileSpec::new(*kind, alpha, 1.0, 1.0)?;
            let tile = build_tile(&spec)?;
            tessellation_check(&tile, args.copies).map_err(|e| {
                CliError::Verification(format!("tessellation {kind} alpha={alpha}: {e}"))
            })?;
            tessellations += 1;
        }
    }

    if let (Some(path), Some(payload)) = (&args.dump, dump_payload) {
        std::fs::write(path, payload)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "oracle trials: {} (seed {}), worst rel_error = {:e} at {}",
        args.trials, args.seed, worst, worst_desc
    );
    let _ = writeln!(
        out,
        "tessellation checks: {} passed ({}x{} copies)",
        tessellations, args.copies, args.copies
    );
    let _ = writeln!(out, "all checks passed");
    Ok(out)
}

fn tile_json(spec: &TileSpec, tile: &breathkit_core::geometry::TileGeometry) -> String {
    let points = |pts: &[breathkit_core::geometry::Vec2]| -> String {
        let rows: Vec<String> = pts
            .iter()
            .map(|p| format!("[{},{}]", json_f64(p.x), json_f64(p.y)))
            .collect();
        format!("[{}]", rows.join(","))
    };
    format!(
        "{{\"kind\":{},\"alpha\":{},\"radius\":{},\"r0\":{},\"vertices\":{},\"disc_centres\":{},\"lattice\":{},\"disc_count_inside\":{}}}\n",
        json_string(spec.kind.as_str()),
        json_f64(spec.alpha),
        json_f64(spec.radius),
        json_f64(spec.r0),
        points(&tile.vertices),
        points(&tile.disc_centres),
        points(&tile.lattice),
        json_f64(tile.disc_count_inside)
    )
}

/// The characteristic values of the model and the closed-form minima table.
pub fn limits_report() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "minimisation limit   sqrt(12)/pi = {:.12}", minimisation_limit());
    let _ = writeln!(out, "densest packing      pi/sqrt(12) = {:.12}", PI / 12f64.sqrt());
    let _ = writeln!(out, "square start, xi->1         2/pi = {:.12}", 2.0 / PI);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "closed-form minima for a hexagonal initial packing: u_bs(alpha=0) / u_bs(alpha=pi/6)"
    );
    let alpha0s = [(0.0, "0"), (PI / 12.0, "pi/12"), (FRAC_PI_6, "pi/6")];
    let mut header = String::from(" n");
    for (_, label) in &alpha0s {
        let _ = write!(header, "  {:<27}", format!("alpha0={label}"));
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for n in 0..=6u32 {
        let mut row = format!("{n:>2}");
        for (alpha0, _) in &alpha0s {
            let scenario = PackingScenario::hex60(*alpha0).expect("table angles are valid");
            let a0 = initial_body_area_tilde(&scenario);
            let cell = match closed_form_minima(n, *alpha0, a0) {
                Ok((at_hex, at_30)) => format!("{at_hex:.9} / {at_30:.9}"),
                Err(_) => "degenerate".to_string(),
            };
            let _ = write!(row, "  {cell:<27}");
        }
        let _ = writeln!(out, "{}", row.trim_end());
    }
    out
}
