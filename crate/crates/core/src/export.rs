//! OFF and JSON renderings of patches, the window and the prototiles.
//!
//! OFF output lists real coordinates. Patch edges are written as two-vertex
//! faces, which Geomview and most OFF readers draw as line segments.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cutproject::Patch;
use crate::golden::GoldenRat;
use crate::lattice6::{project_par, LatticePoint6, ModuleVec3};
use crate::substitution::Prototile;
use crate::tiles::PrototileClass;
use crate::window::{ConvexPolytope, VertexKind, Window};

fn push_vertex(out: &mut String, p: [f64; 3]) {
    let _ = writeln!(out, "{:.12} {:.12} {:.12}", p[0], p[1], p[2]);
}

pub fn patch_off(patch: &Patch) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(out, "{} {} 0", patch.vertices.len(), patch.edges.len());
    for v in &patch.vertices {
        push_vertex(&mut out, project_par(v).to_f64());
    }
    for e in &patch.edges {
        let _ = writeln!(out, "2 {} {}", e.a, e.b);
    }
    out
}

pub fn polytope_off(p: &ConvexPolytope) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(out, "{} {} {}", p.vertices.len(), p.facet_vertices.len(), p.edges.len());
    for i in 0..p.vertices.len() {
        push_vertex(&mut out, p.vertex_f64(i));
    }
    for f in &p.facet_vertices {
        let idx: Vec<String> = f.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} {}", f.len(), idx.join(" "));
    }
    out
}

/// All six tetrahedra in one file, spaced out along the x axis.
pub fn tiles_off(classes: &[PrototileClass]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(out, "{} {} {}", 4 * classes.len(), 4 * classes.len(), 6 * classes.len());
    for (k, c) in classes.iter().enumerate() {
        for v in &c.representative.vertices {
            let p = v.to_f64();
            push_vertex(&mut out, [p[0] + 2.0 * k as f64, p[1], p[2]]);
        }
    }
    for (k, c) in classes.iter().enumerate() {
        let base = 4 * k;
        // orient faces outward: flip when the base triple is left-handed
        let flip = c.representative.det_scaled().signum() < 0;
        for [a, b, d] in [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]] {
            let (b, d) = if flip { (d, b) } else { (b, d) };
            let _ = writeln!(out, "3 {} {} {}", base + a, base + b, base + d);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowVertex {
    /// Exact coordinates `X`; the real point is `X/(2ν)`.
    pub exact: ModuleVec3,
    pub position: [f64; 3],
    pub kind: VertexKind,
    /// Doubled `D6` hole projecting onto this vertex.
    pub hole: [i64; 6],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowExport {
    pub vertices: Vec<WindowVertex>,
    pub facets: Vec<Vec<usize>>,
    pub volume: f64,
}

pub fn window_export(w: &Window) -> WindowExport {
    let p = &w.polytope;
    WindowExport {
        vertices: (0..p.vertices.len())
            .map(|i| WindowVertex {
                exact: p.vertices[i],
                position: p.vertex_f64(i),
                kind: w.vertex_kind[i],
                hole: w.vertex_hole[i],
            })
            .collect(),
        facets: p.facet_vertices.clone(),
        volume: w.volume(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TileExport {
    pub name: Prototile,
    /// Exact coordinates `P`; the real point is `P/ν`.
    pub exact: [ModuleVec3; 4],
    pub lift: [LatticePoint6; 4],
    pub positions: [[f64; 3]; 4],
    /// `ν³·Vol`.
    pub volume_exact: GoldenRat,
    pub volume: f64,
    pub faces: [u8; 4],
    pub edges: [u8; 2],
}

pub fn tiles_export(classes: &[PrototileClass]) -> Vec<TileExport> {
    classes
        .iter()
        .map(|c| {
            let t = &c.representative;
            TileExport {
                name: c.name,
                exact: t.vertices,
                lift: t.lift,
                positions: t.vertices.map(|v| v.to_f64()),
                volume_exact: t.volume_scaled(),
                volume: t.volume(),
                faces: c.content.faces,
                edges: c.content.edges,
            }
        })
        .collect()
}
