//! The six prototile tetrahedra, found by search over edge vectors along the
//! 2-fold axes with lengths `Az` and `τAz`, and tied back to the inflation data.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::Check;
use crate::golden::{GoldenInt, GoldenRat};
use crate::lattice6::{
    axis_fold, icosahedral_group, inflate6, project_par, roots, LatticePoint6, ModuleVec3,
};
use crate::substitution::{face_content, FaceContent, Prototile, TileKind, VolMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("degenerate or unclassifiable face with squared edges {0:?}")]
    UnknownFace(Vec<GoldenInt>),
    #[error("prototile search mismatch: {0}")]
    SearchMismatch(String),
}

/// `ν²·Az²` and `ν²·τ²Az²` in the `1/ν` frame.
pub const SHORT_SQ: GoldenInt = GoldenInt::new(4, 0);
pub const LONG_SQ: GoldenInt = GoldenInt::new(4, 4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceType {
    /// Equilateral, side `τAz`.
    Sigma1,
    /// Golden, one `τAz` and two `Az`.
    Sigma2,
    /// Golden, two `τAz` and one `Az`.
    Sigma3,
    /// Equilateral, side `Az`.
    Sigma4,
}

impl FaceType {
    pub fn index(self) -> usize {
        self as usize
    }

    /// Rotational order of the axis a face of this type is perpendicular to.
    pub fn normal_fold(self) -> u8 {
        match self {
            FaceType::Sigma1 | FaceType::Sigma4 => 3,
            FaceType::Sigma2 | FaceType::Sigma3 => 5,
        }
    }
}

pub fn classify_face(tri: &[ModuleVec3; 3]) -> Result<FaceType, TileError> {
    let [a, b, c] = *tri;
    let sides = [(b - a).norm_sq_scaled(), (c - b).norm_sq_scaled(), (a - c).norm_sq_scaled()];
    if (b - a).cross(&(c - a)).is_zero() {
        return Err(TileError::UnknownFace(sides.to_vec()));
    }
    let long = sides.iter().filter(|&&s| s == LONG_SQ).count();
    let short = sides.iter().filter(|&&s| s == SHORT_SQ).count();
    match (long, short) {
        (3, 0) => Ok(FaceType::Sigma1),
        (1, 2) => Ok(FaceType::Sigma2),
        (2, 1) => Ok(FaceType::Sigma3),
        (0, 3) => Ok(FaceType::Sigma4),
        _ => Err(TileError::UnknownFace(sides.to_vec())),
    }
}

/// A tetrahedron with exact parallel-space vertices (`1/ν` frame) and their
/// lifts to `D6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tetra {
    pub vertices: [ModuleVec3; 4],
    pub lift: [LatticePoint6; 4],
}

const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
const EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

impl Tetra {
    pub fn faces(&self) -> [[ModuleVec3; 3]; 4] {
        FACES.map(|f| f.map(|i| self.vertices[i]))
    }

    pub fn edge_vectors(&self) -> [ModuleVec3; 6] {
        EDGES.map(|[i, j]| self.vertices[j] - self.vertices[i])
    }

    /// `det(v₁−v₀, v₂−v₀, v₃−v₀)` in the `1/ν` frame; the real value is this over `ν³`.
    pub fn det_scaled(&self) -> GoldenInt {
        let [a, b, c, d] = self.vertices;
        (b - a).cross(&(c - a)).dot(&(d - a))
    }

    /// `ν³·Vol`, exact.
    pub fn volume_scaled(&self) -> GoldenRat {
        GoldenRat::from(self.det_scaled().abs()) / GoldenRat::from(6)
    }

    pub fn volume(&self) -> f64 {
        self.volume_scaled().to_f64() / crate::lattice6::nu().powi(3)
    }

    pub fn face_types(&self) -> Result<[FaceType; 4], TileError> {
        let f = self.faces();
        Ok([classify_face(&f[0])?, classify_face(&f[1])?, classify_face(&f[2])?, classify_face(&f[3])?])
    }

    pub fn content(&self) -> Result<FaceContent, TileError> {
        let mut faces = [0u8; 4];
        for t in self.face_types()? {
            faces[t.index()] += 1;
        }
        let mut edges = [0u8; 2];
        for e in self.edge_vectors() {
            edges[usize::from(e.norm_sq_scaled() == LONG_SQ)] += 1;
        }
        Ok(FaceContent { faces, edges })
    }

    /// Squared edge lengths ordered by vertex pairs, minimised over the 24
    /// vertex orderings: a complete invariant of the tetrahedron up to isometry.
    pub fn metric_key(&self) -> [GoldenInt; 6] {
        let d = |i: usize, j: usize| (self.vertices[i] - self.vertices[j]).norm_sq_scaled();
        let mut best: Option<[GoldenInt; 6]> = None;
        for p in permutations4() {
            let k = EDGES.map(|[i, j]| d(p[i], p[j]));
            let lex = |x: &[GoldenInt; 6], y: &[GoldenInt; 6]| {
                x.iter().zip(y).map(|(a, b)| a.cmp_real(*b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            };
            if best.as_ref().is_none_or(|b| lex(&k, b).is_lt()) {
                best = Some(k);
            }
        }
        best.expect("24 orderings")
    }

    /// Canonical key under the icosahedral group and the choice of base vertex.
    pub fn group_key(&self) -> [LatticePoint6; 3] {
        let mut best: Option<[LatticePoint6; 3]> = None;
        for base in 0..4 {
            let rel: Vec<LatticePoint6> =
                (0..4).filter(|&i| i != base).map(|i| self.lift[i] - self.lift[base]).collect();
            for g in icosahedral_group() {
                let mut k = [g.apply(&rel[0]), g.apply(&rel[1]), g.apply(&rel[2])];
                k.sort();
                if best.is_none_or(|b| k < b) {
                    best = Some(k);
                }
            }
        }
        best.expect("group is non-empty")
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// One congruence class found by the search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrototileClass {
    pub name: Prototile,
    pub representative: Tetra,
    pub content: FaceContent,
    /// Number of vertex triples with the origin as fourth vertex in this class.
    pub occurrences: usize,
    /// Orbits of the icosahedral group (acting on placements up to
    /// translation) making up this isometry class.
    pub group_orbits: usize,
}

/// Edge vectors among `π∥(r)` and `τπ∥(r)` of length `Az` or `τAz`, each
/// with its `D6` lift.
pub fn candidate_edges() -> Vec<(ModuleVec3, LatticePoint6)> {
    let mut out: Vec<(ModuleVec3, LatticePoint6)> = roots()
        .iter()
        .flat_map(|r| {
            let long = inflate6(r).expect("roots lie in D6");
            [(project_par(r), *r), (project_par(&long), long)]
        })
        .filter(|(v, _)| matches!(v.norm_sq_scaled(), SHORT_SQ | LONG_SQ))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All tetrahedra with one vertex at the origin whose six edges are
/// candidate vectors, grouped into congruence classes and named by their
/// face/edge content.
pub fn find_prototiles() -> Result<Vec<PrototileClass>, TileError> {
    let cand = candidate_edges();
    let lookup: HashMap<ModuleVec3, LatticePoint6> = cand.iter().copied().collect();
    let n = cand.len();
    let found: Vec<Tetra> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut local = Vec::new();
            for j in i + 1..n {
                if !lookup.contains_key(&(cand[j].0 - cand[i].0)) {
                    continue;
                }
                for k in j + 1..n {
                    if !lookup.contains_key(&(cand[k].0 - cand[i].0))
                        || !lookup.contains_key(&(cand[k].0 - cand[j].0))
                    {
                        continue;
                    }
                    let t = Tetra {
                        vertices: [ModuleVec3::ZERO, cand[i].0, cand[j].0, cand[k].0],
                        lift: [LatticePoint6::ORIGIN, cand[i].1, cand[j].1, cand[k].1],
                    };
                    if !t.det_scaled().is_zero() {
                        local.push(t);
                    }
                }
            }
            local
        })
        .collect();

    type Class = (Tetra, usize, BTreeSet<[LatticePoint6; 3]>);
    let mut classes: BTreeMap<[(i64, i64); 6], Class> = BTreeMap::new();
    for t in found {
        let key = t.metric_key().map(|g| (g.a, g.b));
        let entry = classes.entry(key).or_insert_with(|| (t.clone(), 0, BTreeSet::new()));
        entry.1 += 1;
        entry.2.insert(t.group_key());
    }
    if classes.len() != 6 {
        return Err(TileError::SearchMismatch(format!("{} congruence classes, expected 6", classes.len())));
    }
    let mut out = Vec::new();
    for (_, (t, occurrences, orbits)) in classes {
        let content = t.content()?;
        let name = Prototile::ALL
            .into_iter()
            .find(|&p| face_content(p) == content)
            .ok_or_else(|| TileError::SearchMismatch(format!("no content row matches {content:?}")))?;
        out.push(PrototileClass { name, representative: t, content, occurrences, group_orbits: orbits.len() });
    }
    out.sort_by_key(|c| c.name);
    for w in out.windows(2) {
        if w[0].name == w[1].name {
            return Err(TileError::SearchMismatch(format!("two classes match row {:?}", w[0].name)));
        }
    }
    Ok(out)
}

/// `ν³·Vol` of each decorated tile; colour variants share their shape's volume.
pub fn tile_volumes(classes: &[PrototileClass]) -> Result<[GoldenRat; 8], TileError> {
    let by_name: BTreeMap<Prototile, GoldenRat> =
        classes.iter().map(|c| (c.name, c.representative.volume_scaled())).collect();
    let mut out = [GoldenRat::ZERO; 8];
    for t in TileKind::ALL {
        out[t.index()] = *by_name
            .get(&t.shape())
            .ok_or_else(|| TileError::SearchMismatch(format!("missing shape {:?}", t.shape())))?;
    }
    Ok(out)
}

/// Face normals must point along 3-fold (`Σ₁`, `Σ₄`) or 5-fold (`Σ₂`, `Σ₃`) axes,
/// and every edge along a 2-fold axis.
pub fn verify_axes(classes: &[PrototileClass]) -> Check {
    let mut bad = Vec::new();
    for c in classes {
        let t = &c.representative;
        for (face, ty) in t.faces().iter().zip(t.face_types().into_iter().flatten()) {
            let normal = (face[1] - face[0]).cross(&(face[2] - face[0]));
            if axis_fold(&normal) != Some(ty.normal_fold()) {
                bad.push(format!("{:?} face {ty:?}", c.name));
            }
        }
        for e in t.edge_vectors() {
            if axis_fold(&e) != Some(2) {
                bad.push(format!("{:?} edge", c.name));
            }
        }
    }
    Check::new(
        "tile_axes",
        bad.is_empty(),
        if bad.is_empty() { "edges on 2-fold axes, face normals on 3/5-fold axes".into() } else { bad.join(", ") },
    )
}

pub fn verify_tiles(m: &VolMatrix) -> Vec<Check> {
    let classes = match find_prototiles() {
        Ok(c) => c,
        Err(e) => return vec![Check::new("prototile_search", false, e.to_string())],
    };
    let mut out = vec![Check::new(
        "prototile_search",
        true,
        classes
            .iter()
            .map(|c| format!("{:?}: faces {:?} edges {:?}", c.name, c.content.faces, c.content.edges))
            .collect::<Vec<_>>()
            .join("; "),
    )];
    out.push(verify_axes(&classes));
    match tile_volumes(&classes) {
        Ok(vol) => {
            let mut c = crate::substitution::verify_volume_eigenvector(m, &vol);
            c.name = "geometric_volumes_eigenvector".into();
            out.push(c);
        }
        Err(e) => out.push(Check::new("geometric_volumes_eigenvector", false, e.to_string())),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> ModuleVec3 {
        candidate_edges()[i].0
    }

    #[test]
    fn candidates() {
        let c = candidate_edges();
        // τ times a short root projection is a long root projection
        assert_eq!(c.len(), 60);
        assert!(c.iter().all(|(_, l)| roots().contains(l)));
        assert!(c.iter().all(|(v, l)| project_par(l) == *v));
    }

    #[test]
    fn degenerate_face_is_unknown() {
        let v = p(0);
        let r = classify_face(&[ModuleVec3::ZERO, v, v.scale(GoldenInt::from(2))]);
        assert!(matches!(r, Err(TileError::UnknownFace(_))));
    }

    #[test]
    fn small_tile_faces() {
        let lift = [[0, 0, 0, 0, 0, 0], [0, -1, 1, 0, 0, 0], [0, -1, 0, 0, 0, -1], [0, -1, 0, 0, -1, 0]]
            .map(LatticePoint6);
        let t = Tetra { vertices: lift.map(|l| project_par(&l)), lift };
        let mut types = t.face_types().unwrap();
        types.sort();
        assert_eq!(types, [FaceType::Sigma2, FaceType::Sigma2, FaceType::Sigma4, FaceType::Sigma4]);
        assert_eq!(t.content().unwrap(), face_content(Prototile::B));
        assert!(t.volume() > 0.0);
    }
}
