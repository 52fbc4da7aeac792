//! The hypercubic lattice `Z⁶`, its root sublattice `D6`, the icosahedral
//! projection onto parallel and perpendicular 3-space, the inflation map, and
//! the icosahedral group realised as signed permutations of coordinates.
//!
//! Projected vectors are kept exact by carrying the global factor
//! `1/ν`, `ν = √(2(τ+2))`, symbolically: a [`ModuleVec3`] with golden
//! integer components `(x, y, z)` stands for the real vector `(x, y, z)/ν`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{GoldenInt, GoldenRat, TAU};
use crate::check::Check;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} is not a D6 point (odd coordinate sum)")]
    NotD6(LatticePoint6),
    #[error("vector is not a Z[tau] combination of the module basis")]
    NotInModule,
}

/// `ν = √(2(τ+2))`
pub fn nu() -> f64 {
    (2.0 * (TAU + 2.0)).sqrt()
}

/// `ν² = 2(τ+2)` as a golden integer.
pub const NU_SQ: GoldenInt = GoldenInt::new(4, 2);

/// A point of `Z⁶`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint6(pub [i64; 6]);

impl LatticePoint6 {
    pub const ORIGIN: LatticePoint6 = LatticePoint6([0; 6]);

    pub fn unit(i: usize) -> Self {
        let mut v = [0; 6];
        v[i] = 1;
        LatticePoint6(v)
    }

    pub fn is_d6(&self) -> bool {
        self.0.iter().sum::<i64>().rem_euclid(2) == 0
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticePoint6(self.0.map(|x| x * k))
    }
}

impl fmt::Debug for LatticePoint6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for LatticePoint6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for LatticePoint6 {
    type Output = LatticePoint6;
    fn add(self, o: Self) -> Self {
        LatticePoint6(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for LatticePoint6 {
    type Output = LatticePoint6;
    fn sub(self, o: Self) -> Self {
        LatticePoint6(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for LatticePoint6 {
    type Output = LatticePoint6;
    fn neg(self) -> Self {
        LatticePoint6(self.0.map(|x| -x))
    }
}

/// A 3-vector `(x, y, z)/ν` with golden integer components.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleVec3(pub [GoldenInt; 3]);

impl ModuleVec3 {
    pub const ZERO: ModuleVec3 = ModuleVec3([GoldenInt::ZERO; 3]);

    /// Dot product of the component vectors; the real dot product is this
    /// divided by `ν²`.
    pub fn dot(&self, o: &Self) -> GoldenInt {
        (0..3).map(|i| self.0[i] * o.0[i]).sum()
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        ModuleVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// `|x|²·ν²`, i.e. the squared length of the component vector.
    pub fn norm_sq_scaled(&self) -> GoldenInt {
        self.dot(self)
    }

    /// Exact squared real length `(x²+y²+z²)/(2(τ+2))`.
    pub fn length_sq(&self) -> GoldenRat {
        GoldenRat::from(self.norm_sq_scaled()) / GoldenRat::from(NU_SQ)
    }

    pub fn scale(&self, k: GoldenInt) -> Self {
        ModuleVec3(self.0.map(|x| x * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Real coordinates.
    pub fn to_f64(&self) -> [f64; 3] {
        let n = nu();
        self.0.map(|x| x.to_f64() / n)
    }

    pub fn is_parallel(&self, o: &Self) -> bool {
        self.cross(o).is_zero()
    }
}

impl fmt::Debug for ModuleVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})/nu", self.0[0], self.0[1], self.0[2])
    }
}

impl Add for ModuleVec3 {
    type Output = ModuleVec3;
    fn add(self, o: Self) -> Self {
        ModuleVec3(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for ModuleVec3 {
    type Output = ModuleVec3;
    fn sub(self, o: Self) -> Self {
        ModuleVec3(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for ModuleVec3 {
    type Output = ModuleVec3;
    fn neg(self) -> Self {
        ModuleVec3(self.0.map(|x| -x))
    }
}

const fn g(a: i64, b: i64) -> GoldenInt {
    GoldenInt::new(a, b)
}

const O: GoldenInt = g(0, 0);
const P1: GoldenInt = g(1, 0);
const M1: GoldenInt = g(-1, 0);
const PT: GoldenInt = g(0, 1);
const MT: GoldenInt = g(0, -1);

/// `ν·B`: rows 0..3 project to parallel space, rows 3..6 to perpendicular
/// space. Its columns are the images of the unit vectors `eᵢ`.
pub const PROJECTION: [[GoldenInt; 6]; 6] = [
    [O, P1, M1, MT, O, PT],
    [P1, PT, PT, O, M1, O],
    [PT, O, O, P1, PT, P1],
    [O, PT, MT, P1, O, M1],
    [PT, M1, M1, O, MT, O],
    [M1, O, O, PT, M1, PT],
];

/// `2·I_D6`, the inflation map written in the `Z⁶` basis, doubled so that it
/// has integer entries.
pub const INFLATION_DOUBLED: [[i64; 6]; 6] = [
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, -1, -1, 1],
    [1, 1, 1, 1, -1, -1],
    [1, -1, 1, 1, 1, -1],
    [1, -1, -1, 1, 1, 1],
    [1, 1, -1, -1, 1, 1],
];

fn project_rows(v: &[i64; 6], rows: std::ops::Range<usize>) -> ModuleVec3 {
    let mut out = [GoldenInt::ZERO; 3];
    for (k, r) in rows.enumerate() {
        out[k] = (0..6)
            .filter(|&i| v[i] != 0)
            .map(|i| PROJECTION[r][i] * v[i])
            .sum();
    }
    ModuleVec3(out)
}

/// `ν·π∥(v)` for an arbitrary integer 6-vector.
pub fn project_par_raw(v: &[i64; 6]) -> ModuleVec3 {
    project_rows(v, 0..3)
}

/// `ν·π⊥(v)` for an arbitrary integer 6-vector.
pub fn project_perp_raw(v: &[i64; 6]) -> ModuleVec3 {
    project_rows(v, 3..6)
}

pub fn project_par(v: &LatticePoint6) -> ModuleVec3 {
    project_par_raw(&v.0)
}

pub fn project_perp(v: &LatticePoint6) -> ModuleVec3 {
    project_perp_raw(&v.0)
}

/// Float projection matrix `B` (rows scaled by `1/ν`).
pub fn projection_f64() -> [[f64; 6]; 6] {
    let n = nu();
    PROJECTION.map(|row| row.map(|x| x.to_f64() / n))
}

/// Apply `I_D6`. The result is integral exactly on `D6`.
pub fn inflate6(v: &LatticePoint6) -> Result<LatticePoint6, LatticeError> {
    if !v.is_d6() {
        return Err(LatticeError::NotD6(*v));
    }
    let mut out = [0i64; 6];
    for (r, row) in INFLATION_DOUBLED.iter().enumerate() {
        let s: i64 = row.iter().zip(&v.0).map(|(a, b)| a * b).sum();
        debug_assert!(s % 2 == 0);
        out[r] = s / 2;
    }
    Ok(LatticePoint6(out))
}

/// Inverse of [`inflate6`] on `D6`. Both `τ` and `−1/τ` satisfy
/// `x² = x + 1`, so `I_D6² = I_D6 + 1` and `I_D6⁻¹ = I_D6 − 1`.
pub fn deflate6(v: &LatticePoint6) -> Result<LatticePoint6, LatticeError> {
    Ok(inflate6(v)? - *v)
}

/// `(νB)(νB)ᵀ`, which equals `ν²·Id` when `B` is orthogonal.
pub fn gram_scaled() -> [[GoldenInt; 6]; 6] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..6).map(|k| PROJECTION[i][k] * PROJECTION[j][k]).sum())
    })
}

/// `(νB)(2·I_D6)(νB)ᵀ = 2ν²·B·I_D6·Bᵀ`.
pub fn inflation_conjugated_scaled() -> [[GoldenInt; 6]; 6] {
    let mut left = [[GoldenInt::ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            left[i][j] = (0..6).map(|k| PROJECTION[i][k] * INFLATION_DOUBLED[k][j]).sum();
        }
    }
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..6).map(|k| left[i][k] * PROJECTION[j][k]).sum())
    })
}

/// `B·Bᵀ = Id` and `|eᵢ∥|² = |eᵢ⊥|² = 1/2`.
pub fn verify_projection() -> Check {
    let gram = gram_scaled();
    let mut res = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let want = if i == j { NU_SQ } else { GoldenInt::ZERO };
            res.push(GoldenRat::from(x - want) / GoldenRat::from(NU_SQ));
        }
    }
    let half = GoldenRat::from_parts(1, 0, 2);
    for i in 0..6 {
        let e = LatticePoint6::unit(i);
        res.push(project_par(&e).length_sq() - half);
        res.push(project_perp(&e).length_sq() - half);
    }
    Check::residual("projection_orthogonal", &res, "B B^T = Id, |e_i par|^2 = |e_i perp|^2 = 1/2")
}

/// `B·I_D6·Bᵀ = diag(τ, τ, τ, −1/τ, −1/τ, −1/τ)`.
pub fn verify_inflation_reduction() -> Check {
    let conj = inflation_conjugated_scaled();
    let scale = GoldenRat::from(NU_SQ * GoldenInt::from(2));
    let tau = GoldenRat::from(GoldenInt::TAU);
    let minus_inv = GoldenRat::from(GoldenInt::TAU_BAR);
    let mut res = Vec::new();
    for (i, row) in conj.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let want = match (i == j, i < 3) {
                (false, _) => GoldenRat::ZERO,
                (true, true) => tau,
                (true, false) => minus_inv,
            };
            res.push(GoldenRat::from(x) / scale - want);
        }
    }
    Check::residual("inflation_block_diagonal", &res, "B I_D6 B^T = diag(tau x3, -1/tau x3)")
}

/// The 60 roots `±eᵢ ± eⱼ` of `D6`, in a fixed order.
pub fn roots() -> &'static [LatticePoint6] {
    static ROOTS: OnceLock<Vec<LatticePoint6>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let mut out = Vec::with_capacity(60);
        for i in 0..6 {
            for j in i + 1..6 {
                for si in [1, -1] {
                    for sj in [1, -1] {
                        let mut v = [0; 6];
                        v[i] = si;
                        v[j] = sj;
                        out.push(LatticePoint6(v));
                    }
                }
            }
        }
        out
    })
}

/// The module basis `{e₃∥+e₆∥, e₂∥+e₅∥, e₁∥−e₄∥}`.
pub fn module_basis() -> [ModuleVec3; 3] {
    [
        project_par_raw(&[0, 0, 1, 0, 0, 1]),
        project_par_raw(&[0, 1, 0, 0, 1, 0]),
        project_par_raw(&[1, 0, 0, -1, 0, 0]),
    ]
}

fn det3(a: &ModuleVec3, b: &ModuleVec3, c: &ModuleVec3) -> GoldenInt {
    a.dot(&b.cross(c))
}

/// Coordinates of a parallel-space vector in the module basis, by Cramer's
/// rule with exact division in `Z[τ]`.
pub fn module_coords(p: &ModuleVec3) -> Result<[GoldenInt; 3], LatticeError> {
    let [b1, b2, b3] = module_basis();
    let d = det3(&b1, &b2, &b3);
    let nums = [det3(p, &b2, &b3), det3(&b1, p, &b3), det3(&b1, &b2, p)];
    let mut out = [GoldenInt::ZERO; 3];
    for (o, n) in out.iter_mut().zip(nums) {
        *o = n.checked_div_exact(d).map_err(|_| LatticeError::NotInModule)?;
    }
    Ok(out)
}

/// A signed permutation of the six coordinates: `(g·v)[perm[i]] = signs[i]·v[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "([u8; 6], [i8; 6])", into = "([u8; 6], [i8; 6])")]
pub struct SignedPerm6 {
    pub perm: [u8; 6],
    pub signs: [i8; 6],
}

impl From<([u8; 6], [i8; 6])> for SignedPerm6 {
    fn from((perm, signs): ([u8; 6], [i8; 6])) -> Self {
        SignedPerm6 { perm, signs }
    }
}

impl From<SignedPerm6> for ([u8; 6], [i8; 6]) {
    fn from(g: SignedPerm6) -> Self {
        (g.perm, g.signs)
    }
}

impl SignedPerm6 {
    pub const IDENTITY: SignedPerm6 = SignedPerm6 { perm: [0, 1, 2, 3, 4, 5], signs: [1; 6] };
    pub const CENTRAL_INVERSION: SignedPerm6 =
        SignedPerm6 { perm: [0, 1, 2, 3, 4, 5], signs: [-1; 6] };

    pub fn apply(&self, v: &LatticePoint6) -> LatticePoint6 {
        let mut out = [0i64; 6];
        for i in 0..6 {
            out[self.perm[i] as usize] = self.signs[i] as i64 * v.0[i];
        }
        LatticePoint6(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm6) -> SignedPerm6 {
        let mut perm = [0u8; 6];
        let mut signs = [0i8; 6];
        for i in 0..6 {
            let j = other.perm[i] as usize;
            perm[i] = self.perm[j];
            signs[i] = self.signs[j] * other.signs[i];
        }
        SignedPerm6 { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm6 {
        let mut perm = [0u8; 6];
        let mut signs = [0i8; 6];
        for i in 0..6 {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            signs[j] = self.signs[i];
        }
        SignedPerm6 { perm, signs }
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut n = 1;
        while g != SignedPerm6::IDENTITY {
            g = g.compose(self);
            n += 1;
        }
        n
    }

    /// `ν²·(B P Bᵀ)`, the conjugated 6×6 matrix scaled to golden integers.
    pub fn conjugated_scaled(&self) -> [[GoldenInt; 6]; 6] {
        // (B P)[r][i] = B[r][perm[i]]·signs[i]
        let bp: [[GoldenInt; 6]; 6] = std::array::from_fn(|r| {
            std::array::from_fn(|i| PROJECTION[r][self.perm[i] as usize] * self.signs[i] as i64)
        });
        std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..6).map(|i| bp[r][i] * PROJECTION[c][i]).sum())
        })
    }

    /// Whether `B P Bᵀ` splits into parallel and perpendicular 3×3 blocks.
    pub fn is_block_diagonal(&self) -> bool {
        let m = self.conjugated_scaled();
        (0..3).all(|r| (3..6).all(|c| m[r][c].is_zero() && m[c][r].is_zero()))
    }

    /// Parallel block scaled by `ν²`.
    pub fn par_block_scaled(&self) -> [[GoldenInt; 3]; 3] {
        let m = self.conjugated_scaled();
        std::array::from_fn(|r| std::array::from_fn(|c| m[r][c]))
    }

    /// Whether the parallel action of `self` fixes the vector `n`.
    pub fn par_fixes(&self, n: &ModuleVec3) -> bool {
        let m = self.par_block_scaled();
        (0..3).all(|r| {
            let s: GoldenInt = (0..3).map(|c| m[r][c] * n.0[c]).sum();
            s == n.0[r] * NU_SQ
        })
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}

/// All signed permutations commuting with the parallel/perpendicular split,
/// found by filtering the full hyperoctahedral group (46080 elements). This is
/// the full icosahedral group including the central inversion (order 120).
pub fn icosahedral_group() -> &'static [SignedPerm6] {
    static GROUP: OnceLock<Vec<SignedPerm6>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let mut out = Vec::new();
        for p in permutations(6) {
            let perm: [u8; 6] = p.try_into().unwrap();
            for mask in 0u32..64 {
                let signs = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                let g = SignedPerm6 { perm, signs };
                if g.is_block_diagonal() {
                    out.push(g);
                }
            }
        }
        out.sort_by_key(|g| (g.perm, g.signs));
        out
    })
}

/// Rotational order of the symmetry axis along `n`, read off from the size of
/// its stabiliser in the icosahedral group: 10 for 5-fold axes (C5v), 6 for
/// 3-fold (C3v), 4 for 2-fold (C2v). `None` for any other direction.
pub fn axis_fold(n: &ModuleVec3) -> Option<u8> {
    if n.is_zero() {
        return None;
    }
    let stab = icosahedral_group().iter().filter(|g| g.par_fixes(n)).count();
    match stab {
        10 => Some(5),
        6 => Some(3),
        4 => Some(2),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> LatticePoint6 {
        LatticePoint6::unit(i)
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_par(&e(0)), ModuleVec3([g(0, 0), g(1, 0), g(0, 1)]));
        assert_eq!(project_perp(&e(0)), ModuleVec3([g(0, 0), g(0, 1), g(-1, 0)]));
        assert!(project_par(&LatticePoint6::ORIGIN).is_zero());
        let half = GoldenRat::from_parts(1, 0, 2);
        assert_eq!(project_par(&e(0)).length_sq(), half);
        assert_eq!(project_perp(&e(0)).length_sq(), half);
        let ones = LatticePoint6([1; 6]);
        assert_eq!(
            project_par(&ones).length_sq() + project_perp(&ones).length_sq(),
            GoldenRat::from(6)
        );
    }

    #[test]
    fn explicit_projection_formulas() {
        let v = LatticePoint6([3, -1, 4, 1, -5, 9]);
        let [v1, v2, v3, v4, v5, v6] = v.0.map(GoldenInt::from);
        let t = GoldenInt::TAU;
        let par = ModuleVec3([v2 - v3 - t * v4 + t * v6, v1 + t * v2 + t * v3 - v5, t * v1 + v4 + t * v5 + v6]);
        let perp = ModuleVec3([t * v2 - t * v3 + v4 - v6, t * v1 - v2 - v3 - t * v5, -v1 + t * v4 - v5 + t * v6]);
        assert_eq!(project_par(&v), par);
        assert_eq!(project_perp(&v), perp);
    }

    #[test]
    fn inflation_examples() {
        let v = e(0) + e(1);
        let w = inflate6(&v).unwrap();
        assert_eq!(w, LatticePoint6([1, 1, 1, 0, 0, 1]));
        assert_eq!(inflate6(&LatticePoint6::ORIGIN).unwrap(), LatticePoint6::ORIGIN);
        assert_eq!(project_par(&w), project_par(&v).scale(GoldenInt::TAU));
        assert_eq!(project_perp(&w), project_perp(&v).scale(GoldenInt::TAU_BAR));
        assert!(matches!(inflate6(&e(0)), Err(LatticeError::NotD6(_))));
    }

    #[test]
    fn module_coordinate_examples() {
        let one = GoldenInt::ONE;
        let z = GoldenInt::ZERO;
        assert_eq!(module_coords(&project_par_raw(&[0, 0, 1, 0, 0, 1])).unwrap(), [one, z, z]);
        assert_eq!(module_coords(&project_par_raw(&[1, 0, 0, -1, 0, 0])).unwrap(), [z, z, one]);
        // |b₁|² = 2/(τ+2)
        let b1 = module_basis()[0];
        assert_eq!(b1.length_sq(), GoldenRat::from(2) / GoldenRat::from(g(2, 1)));
    }

    #[test]
    fn group_examples() {
        let grp = icosahedral_group();
        assert_eq!(grp.len(), 120);
        assert!(grp.contains(&SignedPerm6::IDENTITY));
        assert!(grp.contains(&SignedPerm6::CENTRAL_INVERSION));
    }

    #[test]
    fn compose_and_inverse() {
        let g = SignedPerm6 { perm: [2, 0, 1, 5, 3, 4], signs: [1, -1, 1, -1, -1, 1] };
        let h = SignedPerm6 { perm: [1, 2, 0, 4, 5, 3], signs: [-1, 1, 1, 1, -1, 1] };
        let v = LatticePoint6([1, 2, 3, 4, 5, 6]);
        assert_eq!(g.compose(&h).apply(&v), g.apply(&h.apply(&v)));
        assert_eq!(g.compose(&g.inverse()), SignedPerm6::IDENTITY);
        assert_eq!(SignedPerm6::CENTRAL_INVERSION.order(), 2);
    }

    #[test]
    fn roots_are_sixty() {
        assert_eq!(roots().len(), 60);
        assert!(roots().iter().all(|r| r.is_d6() && r.norm_sq() == 2));
    }

    #[test]
    fn axis_orders() {
        // eᵢ∥ are 5-fold axes, root projections 2-fold axes
        assert_eq!(axis_fold(&project_par(&e(0))), Some(5));
        assert_eq!(axis_fold(&project_par(&(e(0) + e(1)))), Some(2));
        assert_eq!(axis_fold(&ModuleVec3::ZERO), None);
    }

    #[test]
    fn group_json_form() {
        let s = serde_json::to_string(&SignedPerm6::IDENTITY).unwrap();
        assert_eq!(s, "[[0,1,2,3,4,5],[1,1,1,1,1,1]]");
        assert_eq!(serde_json::to_string(&e(2)).unwrap(), "[0,0,1,0,0,0]");
    }
}
