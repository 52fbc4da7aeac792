//! Acceptance criteria 1 to 11. Runs without the libtest harness so every
//! criterion prints its PASS/FAIL line; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use quasitile::cutproject::{generate_patch, vertex_stars};
use quasitile::golden::{GoldenInt, TAU};
use quasitile::lattice6::{module_coords, project_par, verify_inflation_reduction, verify_projection, LatticePoint6};
use quasitile::stats::{patch_stats, short_gap_closed_form};
use quasitile::substitution::*;
use quasitile::tiles::{find_prototiles, tile_volumes, verify_axes, LONG_SQ, SHORT_SQ};
use quasitile::window::{verify_window, Shift};

fn report(n: u32, passed: bool, limit: Duration, elapsed: Duration, detail: &str) -> bool {
    let ok = passed && elapsed <= limit;
    println!(
        "{} criterion {n}: {detail} ({:.3}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion_01_projection() -> bool {
    let t = Instant::now();
    let c = verify_projection();
    report(1, c.passed, secs(1), t.elapsed(), &c.detail)
}

fn criterion_02_inflation_reduction() -> bool {
    let t = Instant::now();
    let c = verify_inflation_reduction();
    report(2, c.passed, secs(1), t.elapsed(), &c.detail)
}

fn criterion_03_window() -> bool {
    let t = Instant::now();
    let c = verify_window();
    report(3, c.passed, secs(5), t.elapsed(), &c.detail)
}

fn criterion_04_frequencies() -> bool {
    let t = Instant::now();
    let c = verify_frequencies(&VolMatrix::default());
    let sum = frequency_sum();
    let ok = c.passed && sum == GoldenInt::new(1, 1).into();
    report(4, ok, secs(1), t.elapsed(), &format!("{}; sum f = {sum}", c.detail))
}

fn criterion_05_geometric_volumes() -> bool {
    let t = Instant::now();
    let m = VolMatrix::default();
    let classes = find_prototiles().unwrap();
    let vol = tile_volumes(&classes).unwrap();
    let c = verify_volume_eigenvector(&m, &vol);
    let dim = tau3_eigenspace(&m).len();
    report(5, c.passed && dim == 1, secs(10), t.elapsed(), &format!("{}; eigenspace dim {dim}", c.detail))
}

fn criterion_06_charpoly() -> bool {
    let t = Instant::now();
    let exact = verify_charpoly(&VolMatrix::default());
    let quartic = verify_quartic_roots();
    let numeric = verify_cubic_numeric(5e-4);
    let ok = exact.passed && quartic.passed && numeric.passed;
    let detail = format!(
        "exact factorisation {}; quartic roots {}; cubic roots {}: {}",
        if exact.passed { "ok" } else { "WRONG" },
        if quartic.passed { "ok" } else { "WRONG" },
        if numeric.passed { "ok" } else { "off" },
        numeric.detail
    );
    report(6, ok, secs(1), t.elapsed(), &detail)
}

fn criterion_07_s_m_consistency() -> bool {
    let t = Instant::now();
    let checks = consistency_s_vs_m(&VolMatrix::default());
    let ok = checks.iter().all(|c| c.passed);
    let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    report(7, ok, secs(1), t.elapsed(), &names.join(", "))
}

fn criterion_08_tile_reconstruction() -> bool {
    let t = Instant::now();
    let classes = find_prototiles().unwrap();
    let rows_ok = classes.len() == 6
        && classes.iter().all(|c| face_content(c.name) == c.content)
        && classes.iter().map(|c| c.name).collect::<BTreeSet<_>>().len() == 6;
    let axes = verify_axes(&classes);
    report(8, rows_ok && axes.passed, secs(10), t.elapsed(), &format!("{} classes, content rows match", classes.len()))
}

fn criterion_09_vc_dynamics() -> bool {
    let t = Instant::now();
    let d = vc_dynamics();
    let deepest = d.depth.values().max().copied().unwrap_or(0);
    report(9, d.passed, secs(1), t.elapsed(), &format!("4-step image of 1..35 is {{36}}; deepest first arrival {deepest}"))
}

fn criterion_10_patch_properties() -> bool {
    let t = Instant::now();
    let patch = generate_patch(20.0, &Shift::default()).unwrap();
    let coords_ok = patch.vertices.iter().all(|v| module_coords(&project_par(v)).is_ok());
    let edges_ok = patch
        .edges
        .iter()
        .all(|e| matches!((project_par(&patch.vertices[e.b]) - project_par(&patch.vertices[e.a])).norm_sq_scaled(), SHORT_SQ | LONG_SQ));
    let stats = patch_stats(&patch, &[]).unwrap();
    let layers_ok = stats.layers.iter().all(|l| {
        l.gaps_exact.len() == 2
            && l.gaps_exact[1] == l.gaps_exact[0] * GoldenInt::TAU
            && (l.ratio.unwrap() - TAU).abs() < 1e-9
            && (l.gaps[0] - 1.6558).abs() < 5e-5
            && (l.gaps[0] - short_gap_closed_form()).abs() < 1e-12
    });
    let stars = vertex_stars(&patch).len();
    let stars_ok = (25..=36).contains(&stars);
    let density_ok = (stats.density_ratio - 1.0).abs() < 0.05;
    let detail = format!(
        "{} vertices, {} edges, module coords {coords_ok}, edge lengths {edges_ok}, layers {layers_ok} \
         (short gap {:.5}), {stars} star classes, density ratio {:.4}",
        patch.vertices.len(),
        patch.edges.len(),
        stats.layers[0].gaps[0],
        stats.density_ratio
    );
    let ok = coords_ok && edges_ok && layers_ok && stars_ok && density_ok;
    report(10, ok, secs(60), t.elapsed(), &detail)
}

fn criterion_11_brute_force_oracle() -> bool {
    let t = Instant::now();
    let shift = Shift::default();
    let fast: BTreeSet<LatticePoint6> = generate_patch(3.0, &shift).unwrap().vertices.into_iter().collect();
    let slow = quasitile_testkit::brute_force_vertices(3.0, &shift, 3);
    report(11, fast == slow, secs(5), t.elapsed(), &format!("{} vertices, oracle {}", fast.len(), slow.len()))
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_projection,
        criterion_02_inflation_reduction,
        criterion_03_window,
        criterion_04_frequencies,
        criterion_05_geometric_volumes,
        criterion_06_charpoly,
        criterion_07_s_m_consistency,
        criterion_08_tile_reconstruction,
        criterion_09_vc_dynamics,
        criterion_10_patch_properties,
        criterion_11_brute_force_oracle,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
