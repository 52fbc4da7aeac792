//! Summary statistics of a generated patch.

use serde::{Deserialize, Serialize};

use crate::cutproject::{layers_5fold, predicted_density, vertex_stars, CutError, CutProject, GapClass, Patch};
use crate::golden::{GoldenInt, TAU};
use crate::lattice6::project_par;
use crate::tiles::{LONG_SQ, SHORT_SQ};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisLayers {
    pub axis: usize,
    pub layers: usize,
    /// Distinct exact gaps in layer coordinates, increasing.
    pub gaps_exact: Vec<GoldenInt>,
    pub gaps: Vec<f64>,
    /// Long over short gap, when there are exactly two.
    pub ratio: Option<f64>,
    /// Short/long word, when the gaps take two values in ratio `τ`.
    pub sequence: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatchStats {
    pub radius: f64,
    pub vertices: usize,
    pub edges: usize,
    /// Edges whose squared length is neither `Az²` nor `τ²Az²`.
    pub bad_edges: usize,
    pub density: f64,
    pub predicted_density: f64,
    pub density_ratio: f64,
    pub interior_vertices: usize,
    pub star_classes: usize,
    /// Vertices per star class, decreasing.
    pub star_counts: Vec<usize>,
    pub layers: Vec<AxisLayers>,
}

pub fn axis_layers(patch: &Patch, axis: usize) -> Result<AxisLayers, CutError> {
    let rep = layers_5fold(patch, axis)?;
    let gaps: Vec<f64> = rep.distinct_gaps.iter().map(|g| crate::cutproject::layer_height(*g)).collect();
    let ratio = match gaps.as_slice() {
        [s, l] => Some(l / s),
        _ => None,
    };
    let sequence = rep.classes.as_ref().map(|c| {
        c.iter().map(|g| if *g == GapClass::S { 'S' } else { 'L' }).collect::<String>()
    });
    Ok(AxisLayers { axis, layers: rep.coords.len(), gaps_exact: rep.distinct_gaps, gaps, ratio, sequence })
}

/// Statistics for the given 5-fold axes (all six when `axes` is empty).
pub fn patch_stats(patch: &Patch, axes: &[usize]) -> Result<PatchStats, CutError> {
    let bad_edges = patch
        .edges
        .iter()
        .filter(|e| !matches!(project_par(&e.root).norm_sq_scaled(), SHORT_SQ | LONG_SQ))
        .count();
    let census = vertex_stars(patch);
    let mut star_counts: Vec<usize> = census.values().copied().collect();
    star_counts.sort_unstable_by(|a, b| b.cmp(a));
    let axes: Vec<usize> = if axes.is_empty() { (1..=6).collect() } else { axes.to_vec() };
    let layers = axes.iter().map(|&a| axis_layers(patch, a)).collect::<Result<Vec<_>, _>>()?;
    let density = patch.density();
    let predicted = predicted_density(&CutProject::get().window);
    Ok(PatchStats {
        radius: patch.radius,
        vertices: patch.vertices.len(),
        edges: patch.edges.len(),
        bad_edges,
        density,
        predicted_density: predicted,
        density_ratio: density / predicted,
        interior_vertices: star_counts.iter().sum(),
        star_classes: census.len(),
        star_counts,
        layers,
    })
}

/// The short layer spacing `τ³·2/(τ+2)·(1/√2)`.
pub fn short_gap_closed_form() -> f64 {
    TAU.powi(3) * 2.0 / (TAU + 2.0) / std::f64::consts::SQRT_2
}
