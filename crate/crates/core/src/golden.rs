//! Exact arithmetic in the ring of golden integers `Z[τ]`, `τ² = τ + 1`,
//! and in its fraction field restricted to rational denominators.
//!
//! All comparisons are decided with integer arithmetic only. Every
//! operation has a `checked_*` form returning [`GoldenError::Overflow`];
//! the operator impls panic on overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `(1 + √5) / 2`
pub const TAU: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("golden integer overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not divisible by {1} in Z[tau]")]
    NotDivisible(GoldenInt, GoldenInt),
    #[error("cannot parse golden number from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GoldenError>;

fn ovf<T>(x: Option<T>) -> Result<T> {
    x.ok_or(GoldenError::Overflow)
}

/// A golden integer `a + bτ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl From<(i64, i64)> for GoldenInt {
    fn from((a, b): (i64, i64)) -> Self {
        GoldenInt { a, b }
    }
}

impl From<GoldenInt> for (i64, i64) {
    fn from(x: GoldenInt) -> Self {
        (x.a, x.b)
    }
}

impl From<i64> for GoldenInt {
    fn from(a: i64) -> Self {
        GoldenInt { a, b: 0 }
    }
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };
    /// `τ̄ = 1 − τ = −1/τ`
    pub const TAU_BAR: GoldenInt = GoldenInt { a: 1, b: -1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }

    /// `τⁿ` for any integer `n`, using `τⁿ = F(n−1) + F(n)τ`.
    pub fn tau_pow(n: i32) -> GoldenInt {
        // extend Fibonacci to negative indices: F(-k) = (-1)^(k+1) F(k)
        fn fib(n: i32) -> i64 {
            let k = n.unsigned_abs();
            let (mut x, mut y) = (0i64, 1i64);
            for _ in 0..k {
                let z = x + y;
                x = y;
                y = z;
            }
            if n < 0 && k.is_multiple_of(2) {
                -x
            } else {
                x
            }
        }
        GoldenInt::new(fib(n - 1), fib(n))
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(GoldenInt::new(
            ovf(self.a.checked_add(o.a))?,
            ovf(self.b.checked_add(o.b))?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(GoldenInt::new(
            ovf(self.a.checked_sub(o.a))?,
            ovf(self.b.checked_sub(o.b))?,
        ))
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(GoldenInt::new(ovf(self.a.checked_neg())?, ovf(self.b.checked_neg())?))
    }

    /// `(a₁+b₁τ)(a₂+b₂τ) = (a₁a₂+b₁b₂) + (a₁b₂+a₂b₁+b₁b₂)τ`
    pub fn checked_mul(self, o: Self) -> Result<Self> {
        let (a1, b1, a2, b2) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let bb = b1 * b2;
        let a = ovf((a1 * a2).checked_add(bb))?;
        let b = ovf((a1 * b2).checked_add(a2 * b1).and_then(|x| x.checked_add(bb)))?;
        Ok(GoldenInt::new(
            ovf(i64::try_from(a).ok())?,
            ovf(i64::try_from(b).ok())?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Result<Self> {
        Ok(GoldenInt::new(
            ovf(self.a.checked_mul(k))?,
            ovf(self.b.checked_mul(k))?,
        ))
    }

    /// Galois conjugate `τ ↦ 1 − τ`: `(a + b) − bτ`.
    pub fn checked_conj(self) -> Result<Self> {
        Ok(GoldenInt::new(
            ovf(self.a.checked_add(self.b))?,
            ovf(self.b.checked_neg())?,
        ))
    }

    pub fn conj(self) -> Self {
        self.checked_conj().expect("golden integer overflow")
    }

    /// Field norm `x·conj(x) = a² + ab − b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b - b * b
    }

    /// Exact sign of `a + bτ` as a real number.
    pub fn signum(self) -> i32 {
        sign_of(self.a as i128, self.b as i128)
    }

    pub fn cmp_real(self, other: Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(d) => d.signum().cmp(&0),
            // fall back to a wider representation
            Err(_) => sign_of(
                self.a as i128 - other.a as i128,
                self.b as i128 - other.b as i128,
            )
            .cmp(&0),
        }
    }

    pub fn abs(self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU
    }

    /// Exact quotient in `Z[τ]`, if it exists.
    pub fn checked_div_exact(self, d: Self) -> Result<Self> {
        let n = d.norm();
        if n == 0 {
            return Err(GoldenError::DivisionByZero);
        }
        // x / d = x·conj(d) / norm(d)
        let c = d.checked_conj()?;
        let (x1, y1, x2, y2) = (self.a as i128, self.b as i128, c.a as i128, c.b as i128);
        let yy = y1 * y2;
        let a = ovf((x1 * x2).checked_add(yy))?;
        let b = ovf((x1 * y2).checked_add(x2 * y1).and_then(|x| x.checked_add(yy)))?;
        if a % n != 0 || b % n != 0 {
            return Err(GoldenError::NotDivisible(self, d));
        }
        Ok(GoldenInt::new(
            ovf(i64::try_from(a / n).ok())?,
            ovf(i64::try_from(b / n).ok())?,
        ))
    }

    /// Compare the real value of `self` with an `f64`, exactly.
    pub fn cmp_f64(self, q: f64) -> Ordering {
        let approx = self.to_f64() - q;
        let scale = 1.0 + q.abs() + (self.a as f64).abs() + (self.b as f64).abs();
        if approx.abs() > 1e-9 * scale {
            return approx.partial_cmp(&0.0).unwrap();
        }
        exact_cmp_dyadic(self, q)
    }
}

/// Sign of `a + bτ` for wide integers. Same-sign cases are immediate; in the
/// mixed case `sign(x) = −sign(b)·sign(a² + ab − b²)`.
fn sign_of(a: i128, b: i128) -> i32 {
    if b == 0 {
        return a.signum() as i32;
    }
    if a == 0 || a.signum() == b.signum() {
        return b.signum() as i32;
    }
    // opposite signs: ab ≤ 0, so the norm stays in range for i64-sized inputs
    let n = match a
        .checked_mul(a)
        .and_then(|aa| a.checked_mul(b).and_then(|ab| aa.checked_add(ab)))
        .and_then(|s| b.checked_mul(b).and_then(|bb| s.checked_sub(bb)))
    {
        Some(n) => n,
        None => return sign_big(a, b),
    };
    -(b.signum() as i32) * n.signum() as i32
}

fn sign_big(a: i128, b: i128) -> i32 {
    use num_bigint::BigInt;
    let (ba, bb) = (BigInt::from(a), BigInt::from(b));
    let n = &ba * &ba + &ba * &bb - &bb * &bb;
    let ns = match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    };
    -(b.signum() as i32) * ns
}

fn exact_cmp_dyadic(x: GoldenInt, q: f64) -> Ordering {
    use num_bigint::BigInt;
    assert!(q.is_finite(), "comparison against non-finite value");
    // q = m · 2^e exactly
    let bits = q.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 {
        (frac as i64, -1074)
    } else {
        ((frac | (1u64 << 52)) as i64, exp - 1075)
    };
    let m = BigInt::from(sign * m);
    // x − q compared as (a·2^k − m·2^(e+k)) + b·2^k·τ with k = max(0, −e)
    let k = (-e).max(0) as usize;
    let (qa, scale) = if e >= 0 {
        (m << (e as usize), BigInt::from(1))
    } else {
        (m, BigInt::from(1) << k)
    };
    let a = BigInt::from(x.a) * &scale - qa;
    let b = BigInt::from(x.b) * &scale;
    let zero = BigInt::from(0);
    if b == zero {
        a.cmp(&zero)
    } else if a == zero || (a > zero) == (b > zero) {
        b.cmp(&zero)
    } else {
        let n = &a * &a + &a * &b - &b * &b;
        let s = n.cmp(&zero);
        if b > zero {
            s.reverse()
        } else {
            s
        }
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "tau"),
            (0, -1) => write!(f, "-tau"),
            (0, b) => write!(f, "{b}*tau"),
            (a, b) if b < 0 => write!(f, "{a}-{}*tau", b.unsigned_abs()),
            (a, b) => write!(f, "{a}+{b}*tau"),
        }
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GoldenInt {
    type Err = GoldenError;

    /// Accepts `a+b*tau`, `a-b*tau`, `b*tau`, `tau`, `-tau` or a plain integer.
    fn from_str(s: &str) -> Result<Self> {
        let err = || GoldenError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix("tau") else {
            return t.parse::<i64>().map(GoldenInt::from).map_err(|_| err());
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let a = a_str.parse::<i64>().map_err(|_| err())?;
        let b = match b_str {
            "" | "+" => 1,
            "-" => -1,
            x => x.parse::<i64>().map_err(|_| err())?,
        };
        Ok(GoldenInt::new(a, b))
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("golden integer overflow")
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("golden integer overflow")
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> Self {
        self.checked_neg().expect("golden integer overflow")
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("golden integer overflow")
    }
}

impl Mul<i64> for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, k: i64) -> Self {
        self.checked_scale(k).expect("golden integer overflow")
    }
}

impl AddAssign for GoldenInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for GoldenInt {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl std::iter::Sum for GoldenInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GoldenInt::ZERO, |s, x| s + x)
    }
}

/// An element `(a + bτ) / d` of `Q(τ)` with a positive integer denominator,
/// kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64, i64)", into = "(i64, i64, i64)")]
pub struct GoldenRat {
    num: GoldenInt,
    den: i64,
}

impl TryFrom<(i64, i64, i64)> for GoldenRat {
    type Error = GoldenError;
    fn try_from((a, b, d): (i64, i64, i64)) -> Result<Self> {
        GoldenRat::new(GoldenInt::new(a, b), d)
    }
}

impl From<GoldenRat> for (i64, i64, i64) {
    fn from(x: GoldenRat) -> Self {
        (x.num.a, x.num.b, x.den)
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(num: GoldenInt) -> Self {
        GoldenRat { num, den: 1 }
    }
}

impl From<i64> for GoldenRat {
    fn from(a: i64) -> Self {
        GoldenRat::from(GoldenInt::from(a))
    }
}

impl GoldenRat {
    pub const ZERO: GoldenRat = GoldenRat { num: GoldenInt::ZERO, den: 1 };
    pub const ONE: GoldenRat = GoldenRat { num: GoldenInt::ONE, den: 1 };

    pub fn new(num: GoldenInt, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(GoldenError::DivisionByZero);
        }
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = num.checked_neg()?;
            den = ovf(den.checked_neg())?;
        }
        let g = num.a.gcd(&num.b).gcd(&den);
        if g > 1 {
            num = GoldenInt::new(num.a / g, num.b / g);
            den /= g;
        }
        Ok(GoldenRat { num, den })
    }

    /// `(a + bτ) / d`; panics on a zero denominator.
    pub fn from_parts(a: i64, b: i64, d: i64) -> Self {
        GoldenRat::new(GoldenInt::new(a, b), d).expect("zero denominator")
    }

    pub fn numer(self) -> GoldenInt {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(self) -> bool {
        self.den == 1
    }

    pub fn as_golden_int(self) -> Option<GoldenInt> {
        self.is_integral().then_some(self.num)
    }

    pub fn signum(self) -> i32 {
        self.num.signum()
    }

    pub fn cmp_real(self, o: Self) -> Ordering {
        match self.checked_sub(o) {
            Ok(d) => d.signum().cmp(&0),
            Err(_) => self.to_f64().partial_cmp(&o.to_f64()).unwrap(),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num.to_f64() / self.den as f64
    }

    pub fn conj(self) -> Self {
        GoldenRat { num: self.num.conj(), den: self.den }
    }

    /// Rational norm `norm(num) / den²`, returned as (numerator, denominator).
    pub fn norm(self) -> (i128, i128) {
        (self.num.norm(), self.den as i128 * self.den as i128)
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        let l = ovf(self.den.checked_mul(o.den / self.den.gcd(&o.den)))?;
        let x = self.num.checked_scale(l / self.den)?;
        let y = o.num.checked_scale(l / o.den)?;
        GoldenRat::new(x.checked_add(y)?, l)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(GoldenRat { num: self.num.checked_neg()?, den: self.den })
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        self.checked_add(o.checked_neg()?)
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        // cross-cancel rational parts first to keep intermediates small
        let g1 = self.num.a.gcd(&self.num.b).gcd(&o.den).max(1);
        let g2 = o.num.a.gcd(&o.num.b).gcd(&self.den).max(1);
        let n1 = GoldenInt::new(self.num.a / g1, self.num.b / g1);
        let n2 = GoldenInt::new(o.num.a / g2, o.num.b / g2);
        let den = ovf((self.den / g2).checked_mul(o.den / g1))?;
        GoldenRat::new(n1.checked_mul(n2)?, den)
    }

    pub fn checked_recip(self) -> Result<Self> {
        let n = self.num.norm();
        if n == 0 {
            return Err(GoldenError::DivisionByZero);
        }
        // d / (a+bτ) = d·conj(a+bτ) / norm
        let c = self.num.checked_conj()?.checked_scale(self.den)?;
        let n = ovf(i64::try_from(n).ok())?;
        GoldenRat::new(c, n)
    }

    pub fn checked_div(self, o: Self) -> Result<Self> {
        self.checked_mul(o.checked_recip()?)
    }

    pub fn recip(self) -> Self {
        self.checked_recip().expect("reciprocal of zero")
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else if self.num.b == 0 {
            write!(f, "{}/{}", self.num.a, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GoldenRat {
    type Err = GoldenError;

    /// Accepts the `Display` forms `a+b*tau`, `(a+b*tau)/d` and `a/d`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || GoldenError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (n, d) = match t.rfind('/') {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| err())?),
            None => (t.as_str(), 1),
        };
        let n = n.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(n);
        GoldenRat::new(n.parse()?, d)
    }
}

impl Add for GoldenRat {
    type Output = GoldenRat;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("golden rational overflow")
    }
}

impl Sub for GoldenRat {
    type Output = GoldenRat;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("golden rational overflow")
    }
}

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> Self {
        self.checked_neg().expect("golden rational overflow")
    }
}

impl Mul for GoldenRat {
    type Output = GoldenRat;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("golden rational overflow")
    }
}

impl Div for GoldenRat {
    type Output = GoldenRat;
    fn div(self, o: Self) -> Self {
        self.checked_div(o).expect("golden rational division failed")
    }
}

impl std::iter::Sum for GoldenRat {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GoldenRat::ZERO, |s, x| s + x)
    }
}
