//! The full exact verification suite.

use crate::check::{Check, Report};
use crate::lattice6::{verify_inflation_reduction, verify_projection};
use crate::substitution::{self, TileKind, VolMatrix};
use crate::tiles;
use crate::window::verify_window;

/// Runs every exact check against the given volume inflation matrix.
pub fn run_all(m: &VolMatrix) -> Report {
    let mut r = Report::default();
    r.push(verify_projection());
    r.push(verify_inflation_reduction());
    r.push(verify_window());
    for c in substitution::verify_all(m) {
        r.push(c);
    }
    for c in tiles::verify_tiles(m) {
        r.push(c);
    }
    match substitution::volume_eigenvector(m) {
        Some(vol) => r.push(substitution::verify_volume_growth(m, TileKind::A, 5, &vol)),
        None => r.push(Check::new("volume_growth_A_5", false, "no unique tau^3 eigenvector")),
    }
    r
}
