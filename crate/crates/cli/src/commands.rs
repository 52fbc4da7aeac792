use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use quasitile::cutproject::{generate_patch_with, CutError, EdgeRule, Patch};
use quasitile::export;
use quasitile::golden::{GoldenInt, TAU};
use quasitile::lattice6::LatticePoint6;
use quasitile::linalg::Complex64;
use quasitile::stats::patch_stats;
use quasitile::substitution::{self as subst, TileKind, VolMatrix};
use quasitile::tiles::find_prototiles;
use quasitile::verify::run_all;
use quasitile::window::{build_window, Shift};
use serde::Serialize;

use crate::config::{format_shift, parse_shift, CliError, FileConfig, Format};
use crate::{Cli, Command, EdgeRuleArg, ExportTarget};

const DEFAULT_RADIUS: f64 = 10.0;

pub fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    if let Some(n) = cli.threads.or(file.threads) {
        if n == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Gen { radius, shift, format, out, edge_rule } => {
            let radius = radius.or(file.radius).unwrap_or(DEFAULT_RADIUS);
            let shift = match shift.or(file.shift) {
                Some(s) => parse_shift(&s)?,
                None => Shift::default(),
            };
            let format = format.or(file.format).unwrap_or(Format::Json);
            let rule = match edge_rule.or(file.edge_rule) {
                Some(EdgeRuleArg::Endpoints) => EdgeRule::Endpoints,
                _ => EdgeRule::DualFacet,
            };
            cmd_gen(radius, &shift, format, out.or(file.out), rule)
        }
        Command::Verify { out, corrupt_m } => cmd_verify(out.or(file.out), corrupt_m),
        Command::Stats { patch, axis, out } => cmd_stats(&patch, axis.or(file.axis), out.or(file.out)),
        Command::Export { what, patch, format, out } => {
            cmd_export(what, patch.as_deref(), format.or(file.format).unwrap_or(Format::Json), out.or(file.out))
        }
        Command::Spectra { out } => cmd_spectra(out.or(file.out)),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(format!("writing {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(format!("writing stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn read_patch(path: &Path) -> Result<Patch, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))?;
    let patch: Patch = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: not a patch file: {e}", path.display())))?;
    let n = patch.vertices.len();
    if patch.edges.iter().any(|e| e.a >= n || e.b >= n) {
        return Err(CliError::usage(format!("{}: edge index out of range", path.display())));
    }
    if patch.edges.iter().any(|e| patch.vertices[e.a] + e.root != patch.vertices[e.b]) {
        return Err(CliError::usage(format!("{}: edge root does not join its endpoints", path.display())));
    }
    if patch.vertices.iter().any(|v: &LatticePoint6| !v.is_d6()) {
        return Err(CliError::usage(format!("{}: vertex outside D6", path.display())));
    }
    Ok(patch)
}

/// Alternative shifts offered when the requested one is singular.
fn suggested_shifts() -> Vec<Shift> {
    let r = |d: i64| quasitile::golden::GoldenRat::from_parts(1, 0, d);
    vec![
        Shift::default_generic(),
        Shift::from_components([r(17), r(19), r(23)]),
        Shift::from_components([r(29), r(31), r(37)]),
    ]
}

fn cmd_gen(radius: f64, shift: &Shift, format: Format, out: Option<PathBuf>, rule: EdgeRule) -> Result<ExitCode, CliError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(CliError::usage(format!("--radius must be positive, got {radius}")));
    }
    let patch = match generate_patch_with(radius, shift, rule) {
        Ok(p) => p,
        Err(e @ CutError::SingularShift { .. }) => {
            let alts: Vec<String> = suggested_shifts().iter().map(|s| format!("--shift {}", format_shift(s))).collect();
            return Err(CliError::usage(format!("{e}; try one of: {}", alts.join(" | "))));
        }
        Err(e) => return Err(CliError::usage(e.to_string())),
    };
    let text = match format {
        Format::Json => to_json(&patch),
        Format::Off => export::patch_off(&patch),
    };
    write_output(out.as_deref(), &text)?;
    let summary = format!(
        "vertices {} edges {} candidates {} ({:.1} ms enumerate, {:.1} ms edges)",
        patch.vertices.len(),
        patch.edges.len(),
        patch.timings.candidates,
        patch.timings.enumerate_ms,
        patch.timings.edges_ms
    );
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    checks: Vec<quasitile::check::Check>,
}

fn cmd_verify(out: Option<PathBuf>, corrupt: bool) -> Result<ExitCode, CliError> {
    let mut m = VolMatrix::default();
    if corrupt {
        m = m.with_entry(TileKind::A, TileKind::A, GoldenInt::new(-15, 11));
    }
    let report = run_all(&m);
    let passed = report.passed();
    let first = report.first_failure().map(|c| c.name.clone());
    write_output(out.as_deref(), &to_json(&VerifyReport { passed, checks: report.checks }))?;
    match first {
        None => Ok(ExitCode::SUCCESS),
        Some(name) => Err(CliError::verification(format!("check {name} failed"))),
    }
}

fn cmd_stats(path: &Path, axis: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let patch = read_patch(path)?;
    let axes: Vec<usize> = axis.into_iter().collect();
    let stats = patch_stats(&patch, &axes).map_err(|e| CliError::usage(e.to_string()))?;
    write_output(out.as_deref(), &to_json(&stats))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(what: ExportTarget, patch: Option<&Path>, format: Format, out: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let text = match what {
        ExportTarget::Window => {
            let w = build_window().map_err(|e| CliError::verification(e.to_string()))?;
            match format {
                Format::Json => to_json(&export::window_export(&w)),
                Format::Off => export::polytope_off(&w.polytope),
            }
        }
        ExportTarget::Tiles => {
            let classes = find_prototiles().map_err(|e| CliError::verification(e.to_string()))?;
            match format {
                Format::Json => to_json(&export::tiles_export(&classes)),
                Format::Off => export::tiles_off(&classes),
            }
        }
        ExportTarget::Patch => {
            let path = patch.ok_or_else(|| CliError::usage("export patch needs --patch <file>"))?;
            let p = read_patch(path)?;
            match format {
                Format::Json => to_json(&p),
                Format::Off => export::patch_off(&p),
            }
        }
    };
    write_output(out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Root {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Spectra {
    charpoly: String,
    charpoly_check: quasitile::check::Check,
    quartic_roots: Vec<GoldenInt>,
    cubic_roots: Vec<Root>,
    reported_cubic_roots: Vec<Root>,
    cubic_roots_check: quasitile::check::Check,
    depressed_cubic: String,
    depressed_cubic_roots: Vec<Root>,
    perron_root_s: f64,
    tau_cubed: f64,
    /// Growth of the volume-weighted tile count of S^n e_A, n = 1..10.
    subst_growth_a: Vec<f64>,
}

fn roots(v: &[Complex64]) -> Vec<Root> {
    v.iter().map(|z| Root { re: z.re, im: z.im }).collect()
}

fn cmd_spectra(out: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let m = VolMatrix::default();
    let vol = subst::volume_eigenvector(&m)
        .ok_or_else(|| CliError::verification("tau^3 eigenspace is not one-dimensional"))?;
    let vol_f: [f64; 8] = vol.map(|v| v.to_f64());
    let report = Spectra {
        charpoly: subst::charpoly_m(&m).to_string(),
        charpoly_check: subst::verify_charpoly(&m),
        quartic_roots: subst::quartic_roots().to_vec(),
        cubic_roots: roots(&subst::cubic_roots_f64()),
        reported_cubic_roots: subst::REPORTED_CUBIC_ROOTS
            .iter()
            .map(|&(re, im)| Root { re, im })
            .collect(),
        cubic_roots_check: subst::verify_cubic_numeric(5e-4),
        depressed_cubic: subst::depressed_cubic().to_string(),
        depressed_cubic_roots: roots(&subst::depressed_cubic().roots_f64()),
        perron_root_s: subst::perron_root_s(),
        tau_cubed: TAU.powi(3),
        subst_growth_a: subst::subst_growth(TileKind::A, 10, &vol_f),
    };
    write_output(out.as_deref(), &to_json(&report))?;
    Ok(ExitCode::SUCCESS)
}
