//! Finite patches of the canonical tiling by cut and projection, plus the
//! post-passes run on them: 5-fold layer spacing and the vertex-star census.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{GoldenInt, TAU};
use crate::lattice6::{
    icosahedral_group, nu, project_par, project_perp, project_perp_raw, projection_f64, roots,
    LatticePoint6, ModuleVec3, PROJECTION,
};
use crate::window::{build_window, ConvexPolytope, Membership, Shift, Window};

/// `Az = √(2/(τ+2))`, the short edge length.
pub fn az() -> f64 {
    (2.0 / (TAU + 2.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CutError {
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("shift is singular: {point} projects onto the boundary of the {what} window")]
    SingularShift { point: LatticePoint6, what: &'static str },
    #[error("axis must be in 1..=6, got {0}")]
    BadAxis(usize),
    #[error("degenerate patch: only {0} layers found")]
    DegeneratePatch(usize),
}

/// Which lattice-root differences become tiling edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRule {
    /// `{v, v+r}` is an edge iff `v⊥ − γ` lies in the perpendicular projection
    /// of the Voronoi facet dual to the root `r`.
    #[default]
    DualFacet,
    /// `{v, v+r}` is an edge iff both endpoints are accepted.
    Endpoints,
}

/// An undirected edge `vertices[a] → vertices[b] = vertices[a] + root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize, LatticePoint6)", into = "(usize, usize, LatticePoint6)")]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub root: LatticePoint6,
}

impl From<(usize, usize, LatticePoint6)> for Edge {
    fn from((a, b, root): (usize, usize, LatticePoint6)) -> Self {
        Edge { a, b, root }
    }
}

impl From<Edge> for (usize, usize, LatticePoint6) {
    fn from(e: Edge) -> Self {
        (e.a, e.b, e.root)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PatchTimings {
    pub candidates: u64,
    pub enumerate_ms: f64,
    pub edges_ms: f64,
}

/// A finite patch. `radius` is measured in units of `Az`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Patch {
    pub shift: Shift,
    pub radius: f64,
    pub vertices: Vec<LatticePoint6>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub timings: PatchTimings,
}

/// The vertex window together with the 60 edge windows, indexed like
/// [`roots`].
pub struct CutProject {
    pub window: Window,
    pub edge_windows: Vec<ConvexPolytope>,
}

impl CutProject {
    pub fn new() -> Self {
        let window = build_window().expect("window construction");
        let holes = crate::window::hole_representatives();
        let edge_windows = roots()
            .iter()
            .map(|r| {
                // doubled holes h with h·r = −1
                let pts: Vec<ModuleVec3> = holes
                    .iter()
                    .filter(|h| (0..6).map(|i| h[i] * r.0[i]).sum::<i64>() == -2)
                    .map(project_perp_raw)
                    .collect();
                ConvexPolytope::hull(&pts).expect("edge window construction")
            })
            .collect();
        CutProject { window, edge_windows }
    }

    /// Shared instance.
    pub fn get() -> &'static CutProject {
        static CP: OnceLock<CutProject> = OnceLock::new();
        CP.get_or_init(CutProject::new)
    }

    /// The accepted `D6` points with `|v∥| ≤ R·Az`.
    pub fn accepted_vertices(
        &self,
        radius: f64,
        shift: &Shift,
    ) -> Result<(Vec<LatticePoint6>, u64), CutError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(CutError::BadRadius(radius));
        }
        let r_par = radius * az();
        let gf = shift.to_f64();
        let rho = self.window.circumradius() + gf.iter().map(|x| x * x).sum::<f64>().sqrt();
        let bound = r_par * r_par + rho * rho;
        let m = bound.sqrt().floor() as i64;
        let par_limit = 4.0 * radius * radius;
        let rho_sq = (rho + 1e-9) * (rho + 1e-9);
        let ctx = EnumCtx { perp: perp_rows_f64(), gamma: gf, rho_sq, bound };

        let per_slice: Vec<Result<(Vec<LatticePoint6>, u64), CutError>> = (-m..=m)
            .into_par_iter()
            .map(|x0| {
                let mut out = Vec::new();
                let mut count = 0u64;
                let mut err = None;
                let mut v = [0i64; 6];
                v[0] = x0;
                let acc = ctx.step([0.0; 3], 0, x0);
                ctx.recurse(&mut v, 1, acc, (x0 * x0) as f64, x0, &mut |p| {
                    count += 1;
                    if err.is_some() {
                        return;
                    }
                    let lp = LatticePoint6(*p);
                    match self.window.contains_point(&lp, shift) {
                        Membership::Outside => {}
                        Membership::Boundary => {
                            err = Some(CutError::SingularShift { point: lp, what: "vertex" })
                        }
                        Membership::Inside => {
                            let n = project_par(&lp).norm_sq_scaled();
                            if n.cmp_f64(par_limit) != Ordering::Greater {
                                out.push(lp);
                            }
                        }
                    }
                });
                match err {
                    Some(e) => Err(e),
                    None => Ok((out, count)),
                }
            })
            .collect();
        let mut vertices = Vec::new();
        let mut candidates = 0;
        for r in per_slice {
            let (v, c) = r?;
            vertices.extend(v);
            candidates += c;
        }
        vertices.sort();
        Ok((vertices, candidates))
    }

    pub fn generate_patch(
        &self,
        radius: f64,
        shift: &Shift,
        rule: EdgeRule,
    ) -> Result<Patch, CutError> {
        let t0 = Instant::now();
        let (vertices, candidates) = self.accepted_vertices(radius, shift)?;
        let t1 = Instant::now();
        let edges = self.edges(&vertices, shift, rule)?;
        let t2 = Instant::now();
        Ok(Patch {
            shift: *shift,
            radius,
            vertices,
            edges,
            timings: PatchTimings {
                candidates,
                enumerate_ms: (t1 - t0).as_secs_f64() * 1e3,
                edges_ms: (t2 - t1).as_secs_f64() * 1e3,
            },
        })
    }

    /// Tiling edges among `vertices` (sorted, all accepted).
    pub fn edges(
        &self,
        vertices: &[LatticePoint6],
        shift: &Shift,
        rule: EdgeRule,
    ) -> Result<Vec<Edge>, CutError> {
        let index: HashMap<LatticePoint6, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let per_vertex: Vec<Result<Vec<Edge>, CutError>> = vertices
            .par_iter()
            .enumerate()
            .map(|(a, v)| {
                let perp = project_perp(v);
                let mut out = Vec::new();
                for (k, r) in roots().iter().enumerate() {
                    let Some(&b) = index.get(&(*v + *r)) else { continue };
                    if b < a {
                        continue;
                    }
                    let keep = match rule {
                        EdgeRule::Endpoints => true,
                        EdgeRule::DualFacet => match self.edge_windows[k].classify(&perp, shift) {
                            Membership::Inside => true,
                            Membership::Outside => false,
                            Membership::Boundary => {
                                return Err(CutError::SingularShift { point: *v, what: "edge" })
                            }
                        },
                    };
                    if keep {
                        out.push(Edge { a, b, root: *r });
                    }
                }
                Ok(out)
            })
            .collect();
        let mut edges = Vec::new();
        for e in per_vertex {
            edges.extend(e?);
        }
        Ok(edges)
    }
}

impl Default for CutProject {
    fn default() -> Self {
        CutProject::new()
    }
}

fn perp_rows_f64() -> [[f64; 6]; 3] {
    let b = projection_f64();
    [b[3], b[4], b[5]]
}

struct EnumCtx {
    perp: [[f64; 6]; 3],
    gamma: [f64; 3],
    rho_sq: f64,
    bound: f64,
}

impl EnumCtx {
    #[inline]
    fn step(&self, acc: [f64; 3], i: usize, x: i64) -> [f64; 3] {
        let x = x as f64;
        [acc[0] + self.perp[0][i] * x, acc[1] + self.perp[1][i] * x, acc[2] + self.perp[2][i] * x]
    }

    /// Visit every `D6` point of the ball `|v|² ≤ bound` extending the fixed
    /// prefix `v[..depth]` whose perpendicular image lies within `rho` of `γ`.
    fn recurse(
        &self,
        v: &mut [i64; 6],
        depth: usize,
        acc: [f64; 3],
        used: f64,
        parity: i64,
        visit: &mut impl FnMut(&[i64; 6]),
    ) {
        let left = self.bound - used;
        if left < 0.0 {
            return;
        }
        let m = (left + 1e-9).sqrt().floor() as i64;
        if depth == 5 {
            let start = if (parity - m).rem_euclid(2) == 0 { -m } else { -m + 1 };
            let mut x = start;
            while x <= m {
                let p = self.step(acc, 5, x);
                let d = [p[0] - self.gamma[0], p[1] - self.gamma[1], p[2] - self.gamma[2]];
                if d[0] * d[0] + d[1] * d[1] + d[2] * d[2] <= self.rho_sq {
                    v[5] = x;
                    visit(v);
                }
                x += 2;
            }
            return;
        }
        for x in -m..=m {
            v[depth] = x;
            let acc2 = self.step(acc, depth, x);
            self.recurse(v, depth + 1, acc2, used + (x * x) as f64, parity + x, visit);
        }
    }
}

/// Patch with the shared windows.
pub fn generate_patch(radius: f64, shift: &Shift) -> Result<Patch, CutError> {
    CutProject::get().generate_patch(radius, shift, EdgeRule::DualFacet)
}

pub fn generate_patch_with(radius: f64, shift: &Shift, rule: EdgeRule) -> Result<Patch, CutError> {
    CutProject::get().generate_patch(radius, shift, rule)
}

impl Patch {
    /// Number of vertices per unit parallel volume of the patch ball.
    pub fn density(&self) -> f64 {
        let r = self.radius * az();
        self.vertices.len() as f64 / (4.0 / 3.0 * std::f64::consts::PI * r * r * r)
    }

    /// Roots leaving each vertex along tiling edges.
    pub fn stars(&self) -> Vec<Vec<LatticePoint6>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.a].push(e.root);
            out[e.b].push(-e.root);
        }
        out
    }

    /// Vertices whose distance to the patch boundary exceeds `τ·Az`.
    pub fn interior_vertices(&self) -> Vec<usize> {
        let inner = self.radius - TAU;
        if inner <= 0.0 {
            return Vec::new();
        }
        let limit = 4.0 * inner * inner;
        (0..self.vertices.len())
            .filter(|&i| {
                project_par(&self.vertices[i]).norm_sq_scaled().cmp_f64(limit) == Ordering::Less
            })
            .collect()
    }
}

/// Expected vertex density: window volume over the covolume of `D6`.
pub fn predicted_density(w: &Window) -> f64 {
    w.volume() / 2.0
}

/// A vertex star: the roots along which a vertex has edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStar {
    pub center: usize,
    pub outgoing: Vec<LatticePoint6>,
    pub canonical_form: Vec<LatticePoint6>,
}

/// Lexicographic minimum of the sorted root set over the icosahedral group.
pub fn canonical_star(star: &[LatticePoint6]) -> Vec<LatticePoint6> {
    let mut best: Option<Vec<LatticePoint6>> = None;
    for g in icosahedral_group() {
        let mut img: Vec<LatticePoint6> = star.iter().map(|r| g.apply(r)).collect();
        img.sort();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

pub fn vertex_star_list(patch: &Patch) -> Vec<VertexStar> {
    let stars = patch.stars();
    patch
        .interior_vertices()
        .into_par_iter()
        .map(|c| {
            let mut outgoing = stars[c].clone();
            outgoing.sort();
            let canonical_form = canonical_star(&outgoing);
            VertexStar { center: c, outgoing, canonical_form }
        })
        .collect()
}

/// Count of interior vertices per star class.
pub fn vertex_stars(patch: &Patch) -> BTreeMap<Vec<LatticePoint6>, usize> {
    let mut census = BTreeMap::new();
    for s in vertex_star_list(patch) {
        *census.entry(s.canonical_form).or_insert(0) += 1;
    }
    census
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapClass {
    S,
    L,
}

/// Planar layers perpendicular to a 5-fold axis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayerReport {
    pub axis: usize,
    /// Exact layer coordinates `c`; the real height is `c·√2/(2(τ+2))`.
    pub coords: Vec<GoldenInt>,
    pub heights: Vec<f64>,
    pub gaps: Vec<GoldenInt>,
    pub gaps_f64: Vec<f64>,
    /// Distinct gap values in increasing order.
    pub distinct_gaps: Vec<GoldenInt>,
    /// Short/long sequence, present when the gaps take exactly two values
    /// in ratio `τ`.
    pub classes: Option<Vec<GapClass>>,
}

/// Real length represented by a layer coordinate.
pub fn layer_height(c: GoldenInt) -> f64 {
    c.to_f64() * std::f64::consts::SQRT_2 / (nu() * nu())
}

/// Layers of the planar sub-tilings orthogonal to the 5-fold axis `eₐₓᵢₛ∥`.
/// A vertex lies in such a layer iff its perpendicular image is inside the
/// decagonal belt of the window around the matching axis `eₐₓᵢₛ⊥`, which in
/// exact form reads `|ν(v⊥−γ)·νeₐₓᵢₛ⊥| ≤ 1`.
pub fn layers_5fold(patch: &Patch, axis: usize) -> Result<LayerReport, CutError> {
    if !(1..=6).contains(&axis) {
        return Err(CutError::BadAxis(axis));
    }
    let i = axis - 1;
    let e_par = ModuleVec3([PROJECTION[0][i], PROJECTION[1][i], PROJECTION[2][i]]);
    let e_perp = ModuleVec3([PROJECTION[3][i], PROJECTION[4][i], PROJECTION[5][i]]);
    let den = GoldenInt::from(patch.shift.den);
    let mut coords: Vec<GoldenInt> = patch
        .vertices
        .iter()
        .filter(|v| {
            let x = project_perp(v).scale(den) - patch.shift.num;
            x.dot(&e_perp).abs().cmp_real(den) != Ordering::Greater
        })
        .map(|v| project_par(v).dot(&e_par))
        .collect();
    coords.sort_by(|a, b| a.cmp_real(*b));
    coords.dedup();
    if coords.len() < 3 {
        return Err(CutError::DegeneratePatch(coords.len()));
    }
    let gaps: Vec<GoldenInt> = coords.windows(2).map(|w| w[1] - w[0]).collect();
    let mut distinct = gaps.clone();
    distinct.sort_by(|a, b| a.cmp_real(*b));
    distinct.dedup();
    let classes = match distinct.as_slice() {
        [s, l] if *l == *s * GoldenInt::TAU => Some(
            gaps.iter().map(|g| if g == s { GapClass::S } else { GapClass::L }).collect(),
        ),
        _ => None,
    };
    Ok(LayerReport {
        axis,
        heights: coords.iter().map(|c| layer_height(*c)).collect(),
        gaps_f64: gaps.iter().map(|g| layer_height(*g)).collect(),
        coords,
        gaps,
        distinct_gaps: distinct,
        classes,
    })
}
