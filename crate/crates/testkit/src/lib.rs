//! Slow, independent reference implementations used to cross-check the
//! exact library in tests.

use std::collections::BTreeSet;

use quasitile::golden::TAU;
use quasitile::lattice6::{projection_f64, LatticePoint6};
use quasitile::window::Shift;

/// Naive oracle: scan the full box `[-k, k]⁶` in floating point, accept a
/// point when its perpendicular image lies in the zonotope spanned by the
/// `eᵢ⊥` (the window) and its parallel image within the radius.
pub fn brute_force_vertices(radius: f64, shift: &Shift, k: i64) -> BTreeSet<LatticePoint6> {
    let b = projection_f64();
    let e: Vec<[f64; 3]> = (0..6).map(|i| [b[3][i], b[4][i], b[5][i]]).collect();
    let mut planes = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let (a, c) = (e[i], e[j]);
            let n = [a[1] * c[2] - a[2] * c[1], a[2] * c[0] - a[0] * c[2], a[0] * c[1] - a[1] * c[0]];
            let h = 0.5 * e.iter().map(|x| (n[0] * x[0] + n[1] * x[1] + n[2] * x[2]).abs()).sum::<f64>();
            planes.push((n, h));
        }
    }
    let g = shift.to_f64();
    let r = radius * (2.0 / (TAU + 2.0)).sqrt();
    let mut out = BTreeSet::new();
    let side = (2 * k + 1) as usize;
    for idx in 0..side.pow(6) {
        let mut v = [0i64; 6];
        let mut t = idx;
        for c in v.iter_mut() {
            *c = (t % side) as i64 - k;
            t /= side;
        }
        if v.iter().sum::<i64>() % 2 != 0 {
            continue;
        }
        let proj = |rows: [usize; 3]| rows.map(|r| (0..6).map(|i| b[r][i] * v[i] as f64).sum::<f64>());
        let par = proj([0, 1, 2]);
        if par.iter().map(|x| x * x).sum::<f64>().sqrt() > r + 1e-12 {
            continue;
        }
        let p = proj([3, 4, 5]);
        let x = [p[0] - g[0], p[1] - g[1], p[2] - g[2]];
        let gauge = planes
            .iter()
            .map(|(n, h)| (n[0] * x[0] + n[1] * x[1] + n[2] * x[2]).abs() / h)
            .fold(0.0, f64::max);
        assert!((gauge - 1.0).abs() > 1e-9, "oracle hit the window boundary");
        if gauge < 1.0 {
            out.insert(LatticePoint6(v));
        }
    }
    out
}
