//! Exact dense linear algebra and polynomials over `Q(τ)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;

use crate::golden::{GoldenInt, GoldenRat};

/// Dense matrix over `Q(τ)`, row-major.
pub type Matrix = Vec<Vec<GoldenRat>>;

pub fn from_golden<const N: usize>(m: &[[GoldenInt; N]; N]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| GoldenRat::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { GoldenRat::ONE } else { GoldenRat::ZERO }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[GoldenRat]) -> Vec<GoldenRat> {
    a.iter().map(|r| r.iter().zip(v).map(|(&x, &y)| x * y).sum()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn trace(a: &Matrix) -> GoldenRat {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot = a[r].clone();
                for (x, &y) in a[i].iter_mut().zip(&pivot) {
                    *x = *x - f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(a: &Matrix) -> usize {
    rref(&mut a.clone()).len()
}

/// Basis of the right null space, one vector per free column.
pub fn kernel(a: &Matrix) -> Vec<Vec<GoldenRat>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = a.clone();
    let pivots = rref(&mut r);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![GoldenRat::ZERO; cols];
            v[free] = GoldenRat::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][free];
            }
            v
        })
        .collect()
}

/// Polynomial with coefficients in increasing degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<GoldenRat>);

impl Poly {
    pub fn new(mut c: Vec<GoldenRat>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    /// From golden integer coefficients, increasing degree.
    pub fn from_golden(c: &[GoldenInt]) -> Poly {
        Poly::new(c.iter().map(|&x| x.into()).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> GoldenRat {
        self.0.get(i).copied().unwrap_or(GoldenRat::ZERO)
    }

    pub fn eval(&self, x: GoldenRat) -> GoldenRat {
        self.0.iter().rev().fold(GoldenRat::ZERO, |acc, &c| acc * x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64()).collect()
    }

    /// Numeric roots by Durand–Kerner iteration, sorted by real then imaginary part.
    pub fn roots_f64(&self) -> Vec<Complex64> {
        let c = self.to_f64();
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return Vec::new(),
        };
        let lead = c[n];
        let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
        let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let den: Complex64 =
                    (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
                let step = eval(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![GoldenRat::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let coeff = if i > 0 && *c == GoldenRat::ONE {
                    String::new()
                } else if c.numer().a != 0 && c.numer().b != 0 || c.denom() != 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `det(λ·Id − A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &Matrix) -> Poly {
    let n = a.len();
    let mut c = vec![GoldenRat::ZERO; n + 1];
    c[n] = GoldenRat::ONE;
    let mut mk = vec![vec![GoldenRat::ZERO; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·Id
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i] + c[n - k + 1];
        }
        mk = next;
        let t = trace(&mat_mul(a, &mk));
        c[n - k] = -t / GoldenRat::from(k as i64);
    }
    Poly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GoldenRat {
        GoldenInt::new(a, b).into()
    }

    #[test]
    fn charpoly_of_companion() {
        // companion matrix of x² − x − 1 has charpoly x² − x − 1
        let a = vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(1, 0)]];
        assert_eq!(charpoly(&a), Poly::new(vec![g(-1, 0), g(-1, 0), g(1, 0)]));
        let p = charpoly(&a);
        assert!(p.eval(g(0, 1)).is_zero());
        assert!(p.eval(g(1, -1)).is_zero());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(1, 1)]];
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(rank(&identity(3)), 3);
    }

    #[test]
    fn numeric_roots_of_golden_quadratic() {
        let p = Poly::new(vec![g(-1, 0), g(-1, 0), g(1, 0)]);
        let r = p.roots_f64();
        assert!((r[0].re - (1.0 - crate::golden::TAU)).abs() < 1e-12);
        assert!((r[1].re - crate::golden::TAU).abs() < 1e-12);
    }

    #[test]
    fn poly_product() {
        let a = Poly::new(vec![g(1, 0), g(1, 0)]);
        let b = Poly::new(vec![g(-1, 0), g(1, 0)]);
        assert_eq!(&a * &b, Poly::new(vec![g(-1, 0), g(0, 0), g(1, 0)]));
        assert_eq!(&(&a * &b) - &(&a * &b), Poly::new(vec![]));
    }
}
