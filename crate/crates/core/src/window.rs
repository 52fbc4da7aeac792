//! The acceptance window: the perpendicular projection of the Voronoi cell of
//! `D6`, a rhombic triacontahedron. Hulls are computed exactly over `Z[τ]`.
//!
//! Polytopes here live in the *doubled* frame: a vertex `X` with golden integer
//! components stands for the real point `X/(2ν)`. Doubling makes the
//! projected half-integer holes of `D6` integral.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::Check;
use crate::golden::{GoldenInt, GoldenRat};
use crate::lattice6::{nu, project_perp_raw, LatticePoint6, ModuleVec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("hull construction failed: {0}")]
    Construction(String),
}

/// Outer normal `n` and offset `d`: a doubled-frame point `X` satisfies the
/// half-space iff `n·X ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: ModuleVec3,
    pub offset: GoldenInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// A perpendicular-space translation `num/(den·ν)` with a common positive
/// integer denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shift {
    pub num: ModuleVec3,
    pub den: i64,
}

impl Shift {
    pub const ZERO: Shift = Shift { num: ModuleVec3::ZERO, den: 1 };

    /// Build from three exact components in the `1/ν` frame.
    pub fn from_components(c: [GoldenRat; 3]) -> Shift {
        let den = c.iter().fold(1i64, |l, x| num_integer::lcm(l, x.denom()));
        let num = ModuleVec3(c.map(|x| x.numer() * (den / x.denom())));
        Shift { num, den }
    }

    /// `(1/7, 1/11, 1/13)` in the `1/ν` frame.
    pub fn default_generic() -> Shift {
        Shift::from_components([
            GoldenRat::from_parts(1, 0, 7),
            GoldenRat::from_parts(1, 0, 11),
            GoldenRat::from_parts(1, 0, 13),
        ])
    }

    pub fn components(&self) -> [GoldenRat; 3] {
        self.num.0.map(|x| GoldenRat::new(x, self.den).expect("positive denominator"))
    }

    pub fn scale(&self, k: GoldenInt) -> Shift {
        Shift::from_components(self.components().map(|c| c * GoldenRat::from(k)))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let n = nu();
        self.num.0.map(|x| x.to_f64() / (self.den as f64 * n))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Default for Shift {
    fn default() -> Self {
        Shift::default_generic()
    }
}

impl Serialize for Shift {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Shift {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        <[GoldenRat; 3]>::deserialize(d).map(Shift::from_components)
    }
}

/// A convex polytope in the doubled frame with exact facet planes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexPolytope {
    pub vertices: Vec<ModuleVec3>,
    pub facets: Vec<HalfSpace>,
    /// Vertex indices of each facet, in cyclic order.
    pub facet_vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

fn det3(a: &ModuleVec3, b: &ModuleVec3, c: &ModuleVec3) -> GoldenInt {
    a.dot(&b.cross(c))
}

fn primitive(n: ModuleVec3) -> ModuleVec3 {
    use num_integer::Integer;
    let g = n.0.iter().fold(0i64, |g, x| g.gcd(&x.a).gcd(&x.b));
    if g > 1 {
        ModuleVec3(n.0.map(|x| GoldenInt::new(x.a / g, x.b / g)))
    } else {
        n
    }
}

impl ConvexPolytope {
    /// Exact convex hull of a point set, by testing every candidate plane
    /// through three input points against all others with exact signs.
    pub fn hull(points: &[ModuleVec3]) -> Result<ConvexPolytope, WindowError> {
        let mut pts: Vec<ModuleVec3> = points.to_vec();
        pts.sort();
        pts.dedup();
        let n = pts.len();
        // keyed by the sorted set of points lying on the plane
        let mut planes: BTreeMap<Vec<usize>, HalfSpace> = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let u = pts[j] - pts[i];
                for k in j + 1..n {
                    let normal = u.cross(&(pts[k] - pts[i]));
                    if normal.is_zero() {
                        continue;
                    }
                    let mut pos = false;
                    let mut neg = false;
                    let mut on = Vec::new();
                    for (m, p) in pts.iter().enumerate() {
                        match normal.dot(&(*p - pts[i])).signum() {
                            1 => pos = true,
                            -1 => neg = true,
                            _ => on.push(m),
                        }
                        if pos && neg {
                            break;
                        }
                    }
                    if pos && neg {
                        continue;
                    }
                    if planes.contains_key(&on) {
                        continue;
                    }
                    let normal = primitive(if pos { -normal } else { normal });
                    let offset = normal.dot(&pts[i]);
                    planes.insert(on, HalfSpace { normal, offset });
                }
            }
        }
        if planes.len() < 4 {
            return Err(WindowError::Construction("point set is not full-dimensional".into()));
        }
        // a point is a vertex iff the normals of its incident facets span 3-space
        let incident: Vec<Vec<&HalfSpace>> = (0..n)
            .map(|m| planes.iter().filter(|(on, _)| on.contains(&m)).map(|(_, h)| h).collect())
            .collect();
        let is_vertex: Vec<bool> = incident
            .iter()
            .map(|hs| {
                hs.iter().enumerate().any(|(a, h1)| {
                    hs[a + 1..].iter().enumerate().any(|(b, h2)| {
                        hs[a + 1 + b + 1..]
                            .iter()
                            .any(|h3| !det3(&h1.normal, &h2.normal, &h3.normal).is_zero())
                    })
                })
            })
            .collect();
        let mut remap = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for m in 0..n {
            if is_vertex[m] {
                remap[m] = vertices.len();
                vertices.push(pts[m]);
            }
        }
        let mut facets = Vec::new();
        let mut facet_vertices = Vec::new();
        for (on, h) in planes {
            let vs: Vec<usize> = on.iter().filter(|&&m| is_vertex[m]).map(|&m| remap[m]).collect();
            facet_vertices.push(order_cyclically(&vertices, &vs, &h.normal));
            facets.push(h);
        }
        let mut edges = Vec::new();
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                let shared = facet_vertices
                    .iter()
                    .filter(|f| f.contains(&a) && f.contains(&b))
                    .count();
                if shared >= 2 {
                    edges.push((a, b));
                }
            }
        }
        Ok(ConvexPolytope { vertices, facets, facet_vertices, edges })
    }

    /// Classify the doubled-frame point `num/den` (`den > 0`).
    pub fn classify_scaled(&self, num: &ModuleVec3, den: i64) -> Membership {
        let mut boundary = false;
        for h in &self.facets {
            let s = (h.offset * den - h.normal.dot(num)).signum();
            if s < 0 {
                return Membership::Outside;
            }
            if s == 0 {
                boundary = true;
            }
        }
        if boundary {
            Membership::Boundary
        } else {
            Membership::Inside
        }
    }

    /// Classify `p − γ` where `p` is in the `1/ν` frame.
    pub fn classify(&self, p: &ModuleVec3, shift: &Shift) -> Membership {
        let x = (p.scale(GoldenInt::from(shift.den)) - shift.num).scale(GoldenInt::from(2));
        self.classify_scaled(&x, shift.den)
    }

    /// Six times the volume in doubled-frame units: the real volume is this
    /// divided by `6·(2ν)³`.
    pub fn volume_scaled(&self) -> GoldenInt {
        let mut total = GoldenInt::ZERO;
        for (h, f) in self.facets.iter().zip(&self.facet_vertices) {
            let v0 = self.vertices[f[0]];
            for w in f[1..].windows(2) {
                let (v1, v2) = (self.vertices[w[0]], self.vertices[w[1]]);
                let d = det3(&v0, &v1, &v2);
                // orient each fan triangle along the outer normal
                let orient = (v1 - v0).cross(&(v2 - v0)).dot(&h.normal).signum();
                total += if orient < 0 { -d } else { d };
            }
        }
        total
    }

    pub fn volume(&self) -> f64 {
        self.volume_scaled().to_f64() / (6.0 * (2.0 * nu()).powi(3))
    }

    pub fn circumradius(&self) -> f64 {
        let s = 2.0 * nu();
        self.vertices
            .iter()
            .map(|v| v.norm_sq_scaled().to_f64().sqrt() / s)
            .fold(0.0, f64::max)
    }

    /// Copy scaled by the golden integer `k` (which must be positive).
    pub fn scaled(&self, k: GoldenInt) -> ConvexPolytope {
        assert!(k.signum() > 0, "scale factor must be positive");
        ConvexPolytope {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            facets: self
                .facets
                .iter()
                .map(|h| HalfSpace { normal: h.normal, offset: h.offset * k })
                .collect(),
            facet_vertices: self.facet_vertices.clone(),
            edges: self.edges.clone(),
        }
    }

    pub fn vertex_f64(&self, i: usize) -> [f64; 3] {
        let s = 2.0 * nu();
        self.vertices[i].0.map(|x| x.to_f64() / s)
    }
}

fn order_cyclically(vertices: &[ModuleVec3], idx: &[usize], normal: &ModuleVec3) -> Vec<usize> {
    if idx.len() <= 3 {
        let mut v = idx.to_vec();
        if v.len() == 3 {
            let (a, b, c) = (vertices[v[0]], vertices[v[1]], vertices[v[2]]);
            if (b - a).cross(&(c - a)).dot(normal).signum() < 0 {
                v.swap(1, 2);
            }
        }
        return v;
    }
    let f = |m: &ModuleVec3| m.0.map(|x| x.to_f64());
    let pts: Vec<[f64; 3]> = idx.iter().map(|&i| f(&vertices[i])).collect();
    let c = pts.iter().fold([0.0; 3], |s, p| [s[0] + p[0], s[1] + p[1], s[2] + p[2]]);
    let c = c.map(|x| x / pts.len() as f64);
    let nf = f(normal);
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let u = sub(pts[0], c);
    let w = cross(nf, u);
    let mut order: Vec<(f64, usize)> = pts
        .iter()
        .zip(idx)
        .map(|(p, &i)| {
            let d = sub(*p, c);
            (dot(d, w).atan2(dot(d, u)), i)
        })
        .collect();
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    order.into_iter().map(|(_, i)| i).collect()
}

/// Local symmetry of a window vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    FiveFold,
    ThreeFold,
}

/// The acceptance window with its vertices traced back to `D6` holes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Window {
    pub polytope: ConvexPolytope,
    pub vertex_kind: Vec<VertexKind>,
    /// Doubled coordinates of the hole projecting onto each vertex.
    pub vertex_hole: Vec<[i64; 6]>,
}

/// Doubled coordinates of the Voronoi vertices of `D6` nearest the origin:
/// `±2eᵢ` and all `(±1, …, ±1)`.
pub fn hole_representatives() -> Vec<[i64; 6]> {
    let mut out = Vec::with_capacity(76);
    for i in 0..6 {
        for s in [2, -2] {
            let mut h = [0; 6];
            h[i] = s;
            out.push(h);
        }
    }
    for mask in 0u32..64 {
        out.push(std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 }));
    }
    out
}

/// Parity class of a doubled half-integer hole: number of negative entries mod 2.
pub fn hole_parity(h: &[i64; 6]) -> Option<u8> {
    h.iter()
        .all(|x| x.abs() == 1)
        .then(|| (h.iter().filter(|&&x| x < 0).count() % 2) as u8)
}

pub fn build_window() -> Result<Window, WindowError> {
    let holes = hole_representatives();
    let projected: Vec<ModuleVec3> = holes.iter().map(project_perp_raw).collect();
    let polytope = ConvexPolytope::hull(&projected)?;
    let (nf, nv, ne) = (polytope.facets.len(), polytope.vertices.len(), polytope.edges.len());
    if (nf, nv, ne) != (30, 32, 60) {
        return Err(WindowError::Construction(format!(
            "expected a triacontahedron, got {nf} facets, {nv} vertices, {ne} edges"
        )));
    }
    let mut vertex_kind = Vec::with_capacity(nv);
    let mut vertex_hole = Vec::with_capacity(nv);
    for (i, v) in polytope.vertices.iter().enumerate() {
        let deg = polytope.facet_vertices.iter().filter(|f| f.contains(&i)).count();
        vertex_kind.push(match deg {
            5 => VertexKind::FiveFold,
            3 => VertexKind::ThreeFold,
            d => {
                return Err(WindowError::Construction(format!("vertex with {d} incident facets")))
            }
        });
        let h = holes[projected.iter().position(|p| p == v).expect("vertex comes from a hole")];
        vertex_hole.push(h);
    }
    Ok(Window { polytope, vertex_kind, vertex_hole })
}

impl Window {
    /// Exact classification of `p − γ`, `p` a perpendicular-space vector.
    pub fn contains(&self, p: &ModuleVec3, shift: &Shift) -> Membership {
        self.polytope.classify(p, shift)
    }

    pub fn contains_point(&self, v: &LatticePoint6, shift: &Shift) -> Membership {
        self.contains(&crate::lattice6::project_perp(v), shift)
    }

    pub fn volume(&self) -> f64 {
        self.polytope.volume()
    }

    pub fn circumradius(&self) -> f64 {
        self.polytope.circumradius()
    }
}

/// Facet, vertex and edge counts of the triacontahedron, with every edge of
/// real squared length exactly `1/2`.
pub fn verify_window() -> Check {
    let w = match build_window() {
        Ok(w) => w,
        Err(e) => return Check::new("window_triacontahedron", false, e.to_string()),
    };
    let p = &w.polytope;
    let four_nu_sq = GoldenRat::from(crate::lattice6::NU_SQ * GoldenInt::from(4));
    let half = GoldenRat::from_parts(1, 0, 2);
    let res: Vec<GoldenRat> = p
        .edges
        .iter()
        .map(|&(a, b)| {
            let d = p.vertices[a] - p.vertices[b];
            GoldenRat::from(d.norm_sq_scaled()) / four_nu_sq - half
        })
        .collect();
    let mut c = Check::residual(
        "window_triacontahedron",
        &res,
        format!(
            "{} facets, {} vertices, {} edges of squared length 1/2",
            p.facets.len(),
            p.vertices.len(),
            p.edges.len()
        ),
    );
    c.passed &= (p.facets.len(), p.vertices.len(), p.edges.len()) == (30, 32, 60);
    c
}

/// Volume of the window.
pub fn window_volume(w: &Window) -> f64 {
    w.volume()
}
