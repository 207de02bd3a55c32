//! Dense complex polynomials in one and two variables.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Univariate polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Poly::new(vec![ONE]), |p, &r| p.mul(&Poly::new(vec![-r, ONE])))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops leading coefficients below `rel * scale`.
    pub fn trimmed(&self, rel: f64) -> Poly {
        let cut = rel * self.scale();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// Degree after trimming exact zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    /// All roots with multiplicity: eigenvalues of the companion matrix
    /// (complex Schur form), then a few Newton steps on simple roots.
    /// Leading coefficients below `1e-14 * scale` are treated as zero.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let p = self.trimmed(1e-14);
        let n = match p.degree() {
            None => return Err(Error::InvalidPolynomial("zero polynomial has no finite root set".into())),
            Some(n) => n,
        };
        let lead = p.coeffs[n];
        let mut roots = match n {
            0 => Vec::new(),
            1 => vec![-p.coeffs[0] / lead],
            _ => {
                let mut comp = DMatrix::<Complex64>::zeros(n, n);
                for i in 1..n {
                    comp[(i, i - 1)] = ONE;
                }
                for i in 0..n {
                    comp[(i, n - 1)] = -p.coeffs[i] / lead;
                }
                let schur = Schur::try_new(comp, f64::EPSILON, 10_000)
                    .ok_or_else(|| Error::RootFinding { residuals: vec![f64::INFINITY] })?;
                let (_, t) = schur.unpack();
                (0..n).map(|i| t[(i, i)]).collect()
            }
        };
        let dp = p.derivative();
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let (f, df) = (p.eval(*r), dp.eval(*r));
                if df.norm() <= 1e-8 * p.scale() {
                    break;
                }
                let step = f / df;
                let cand = *r - step;
                if p.eval(cand).norm() < f.norm() {
                    *r = cand;
                } else {
                    break;
                }
            }
        }
        let residuals: Vec<f64> = roots.iter().map(|&r| p.eval(r).norm()).collect();
        if residuals.iter().any(|x| !x.is_finite()) {
            return Err(Error::RootFinding { residuals });
        }
        sort_lex(&mut roots);
        Ok(roots)
    }
}

/// Sorts by `(re, im)`, treating real parts within `1e-9` as tied.
pub fn sort_lex(v: &mut [Complex64]) {
    v.sort_by(|a, b| {
        if (a.re - b.re).abs() <= 1e-9 {
            a.im.total_cmp(&b.im)
        } else {
            a.re.total_cmp(&b.re)
        }
    });
}

/// Bivariate polynomial `Σ c[i][j] z^i w^j`.
///
/// Serialized as the coefficient matrix (row = power of `z`, column = power
/// of `w`), complex entries as `[re, im]`. Ragged rows are zero-padded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<Complex64>>", into = "Vec<Vec<Complex64>>")]
pub struct BiPoly {
    coeffs: Vec<Vec<Complex64>>,
}

impl From<Vec<Vec<Complex64>>> for BiPoly {
    fn from(rows: Vec<Vec<Complex64>>) -> Self {
        BiPoly::new(rows)
    }
}

impl From<BiPoly> for Vec<Vec<Complex64>> {
    fn from(p: BiPoly) -> Self {
        p.coeffs
    }
}

impl BiPoly {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Self {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut coeffs: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|mut r| {
                r.resize(width, ZERO);
                r
            })
            .collect();
        if coeffs.is_empty() {
            coeffs.push(vec![ZERO; width]);
        }
        BiPoly { coeffs }
    }

    pub fn from_real(rows: &[&[f64]]) -> Self {
        BiPoly::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| Complex64::new(c, 0.0)).collect())
                .collect(),
        )
    }

    pub fn constant(c: Complex64) -> Self {
        BiPoly::new(vec![vec![c]])
    }

    /// `z - w`.
    pub fn diagonal() -> Self {
        BiPoly::from_real(&[&[0.0, -1.0], &[1.0]])
    }

    /// `w - φ(z)` for a univariate `φ`.
    pub fn graph(phi: &Poly) -> Self {
        let mut rows: Vec<Vec<Complex64>> = phi.coeffs.iter().map(|&c| vec![-c, ZERO]).collect();
        if rows.is_empty() {
            rows.push(vec![ZERO, ZERO]);
        }
        rows[0][1] = ONE;
        BiPoly::new(rows)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs.get(i).and_then(|r| r.get(j)).copied().unwrap_or(ZERO)
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }

    /// Storage bounds `(max z power, max w power)`.
    pub fn degrees(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn scale(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| *c == ZERO)
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(ZERO, |acc, row| acc * z + row.iter().rev().fold(ZERO, |a, &c| a * w + c))
    }

    /// `w ↦ P(z, w)`.
    pub fn slice_w(&self, z: Complex64) -> Poly {
        let (_, dw) = self.degrees();
        Poly::new((0..=dw).map(|j| Poly::new(self.column(j)).eval(z)).collect())
    }

    /// `z ↦ P(z, w)`.
    pub fn slice_z(&self, w: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|row| Poly::new(row.clone()).eval(w)).collect())
    }

    /// Coefficient of `w^j` as a polynomial in `z`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.coeffs.iter().map(|r| r[j]).collect()
    }

    /// `P(w, z)`.
    pub fn swapped(&self) -> BiPoly {
        let (dz, dw) = self.degrees();
        BiPoly::new((0..=dw).map(|j| (0..=dz).map(|i| self.coeffs[i][j]).collect()).collect())
    }

    pub fn d_dw(&self) -> BiPoly {
        let (_, dw) = self.degrees();
        if dw == 0 {
            return BiPoly::constant(ZERO);
        }
        BiPoly::new(
            self.coeffs
                .iter()
                .map(|r| (1..=dw).map(|j| r[j] * j as f64).collect())
                .collect(),
        )
    }

    pub fn d_dz(&self) -> BiPoly {
        self.swapped().d_dw().swapped()
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let (az, aw) = self.degrees();
        let (bz, bw) = other.degrees();
        let mut out = vec![vec![ZERO; aw + bw + 1]; az + bz + 1];
        for (i, ra) in self.coeffs.iter().enumerate() {
            for (j, &a) in ra.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (k, rb) in other.coeffs.iter().enumerate() {
                    for (l, &b) in rb.iter().enumerate() {
                        out[i + k][j + l] += a * b;
                    }
                }
            }
        }
        BiPoly::new(out)
    }

    pub fn pow(&self, m: u32) -> BiPoly {
        (0..m).fold(BiPoly::constant(ONE), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let (az, aw) = self.degrees();
        let (bz, bw) = other.degrees();
        let mut out = vec![vec![ZERO; aw.max(bw) + 1]; az.max(bz) + 1];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.coeff(i, j) + other.coeff(i, j);
            }
        }
        BiPoly::new(out)
    }

    pub fn scaled(&self, s: Complex64) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|r| r.iter().map(|&c| c * s).collect()).collect())
    }

    /// Upper bound on `|∂P/∂z|` and `|∂P/∂w|` over the bidisc of radii
    /// `(rz, rw)` centred at the origin.
    pub fn gradient_bound(&self, rz: f64, rw: f64) -> (f64, f64) {
        let bound = |p: &BiPoly| {
            p.coeffs
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| (i, j, c.norm())))
                .map(|(i, j, a)| a * rz.powi(i as i32) * rw.powi(j as i32))
                .sum::<f64>()
        };
        (bound(&self.d_dz()), bound(&self.d_dw()))
    }
}
