//! Clock, shift and Fourier operators and the two operator forms of the
//! Cardano family: the diagonal `W = pZ + qZ⁻¹` and the circulant
//! `X = F⁺ W F = p X_n + q X_n⁻¹`.
//!
//! The Fourier matrix uses `F[i][j] = ω^(ij)/√n` with `ω = e^(2πi/n)`.
//! Under that convention `F⁺ Z F` is the shift `|j⟩ → |j+1⟩`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

use crate::cardano::{
    build_polynomial, closed_form_roots, compute_pq, CardanoError, CardanoParams,
};
use crate::ferrari::{solve_quartic_depressed, FerrariError};
use crate::poly::{unit_root, Complex, Polynomial, RootSet};

/// Dense matrices are for desk-scale checks only.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("matrix dimension must be between 2 and {MAX_DIM}, got {0}")]
    Dimension(usize),
    #[error(transparent)]
    Cardano(#[from] CardanoError),
    #[error(transparent)]
    Ferrari(#[from] FerrariError),
}

fn check_dim(n: usize) -> Result<(), OperatorError> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(OperatorError::Dimension(n))
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Complex::new(1.0, 0.0); n])
    }

    pub fn diagonal(values: &[Complex]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diag(&self) -> Vec<Complex> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

fn omega_pow(k: i64, n: usize) -> Complex {
    unit_root(k, n)
}

/// `Z_n = diag(1, ω, …, ω^(n−1))`.
pub fn clock(n: usize) -> Result<CMatrix, OperatorError> {
    check_dim(n)?;
    let values: Vec<Complex> = (0..n as i64).map(|j| omega_pow(j, n)).collect();
    Ok(CMatrix::diagonal(&values))
}

/// `X_n |j⟩ = |j+1 mod n⟩`.
pub fn shift(n: usize) -> Result<CMatrix, OperatorError> {
    check_dim(n)?;
    Ok(CMatrix::from_fn(n, |i, j| {
        if i == (j + 1) % n {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    }))
}

/// `F[i][j] = ω^(ij) / √n`.
pub fn dft(n: usize) -> Result<CMatrix, OperatorError> {
    check_dim(n)?;
    let norm = 1.0 / (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, |i, j| {
        omega_pow((i * j) as i64, n) * norm
    }))
}

/// `W = pZ + qZ⁻¹ = diag(pω^j + qω^(−j))`.
pub fn fujii_w(params: &CardanoParams) -> Result<CMatrix, OperatorError> {
    let n = params.n();
    check_dim(n)?;
    let pq = compute_pq(params);
    let values: Vec<Complex> = (0..n as i64)
        .map(|j| pq.p * omega_pow(j, n) + pq.q * omega_pow(-j, n))
        .collect();
    Ok(CMatrix::diagonal(&values))
}

/// `X = F⁺ W F`, computed by explicit conjugation.
pub fn cardano_x(params: &CardanoParams) -> Result<CMatrix, OperatorError> {
    let w = fujii_w(params)?;
    let f = dft(params.n())?;
    Ok(&(&f.adjoint() * &w) * &f)
}

/// `p X_n + q X_n⁻¹`, the circulant `circ(0, q, 0, …, 0, p)`.
pub fn cardano_x_circulant_form(params: &CardanoParams) -> Result<CMatrix, OperatorError> {
    let s = shift(params.n())?;
    let pq = compute_pq(params);
    Ok(&s.scale(pq.p) + &s.adjoint().scale(pq.q))
}

/// Returns the first row when every row `i` is the first row cyclically
/// shifted right by `i`, entrywise within `tol`.
pub fn is_circulant(m: &CMatrix, tol: f64) -> Option<Vec<Complex>> {
    let n = m.dim();
    let first = m.row(0).to_vec();
    for i in 1..n {
        for j in 0..n {
            if (m[(i, j)] - first[(j + n - i) % n]).norm() > tol {
                return None;
            }
        }
    }
    Some(first)
}

/// Eigenvalues `λ_j = Σ_b r_b ω^(−jb)` of the circulant with first row `r`.
pub fn circulant_eigenvalues(first_row: &[Complex]) -> RootSet {
    let n = first_row.len();
    (0..n as i64)
        .map(|j| {
            first_row
                .iter()
                .enumerate()
                .map(|(b, &r)| r * omega_pow(-j * b as i64, n))
                .sum()
        })
        .collect()
}

/// Horner evaluation `p(M)` with the constant term scaled by the identity.
pub fn mat_poly_eval(p: &Polynomial, m: &CMatrix) -> CMatrix {
    let n = m.dim();
    let mut acc = CMatrix::identity(n).scale(p.leading());
    for &a in p.coeffs().iter().rev().skip(1) {
        acc = &(&acc * m) + &CMatrix::identity(n).scale(a);
    }
    acc
}

/// `(1 + max|λ|)ⁿ`, the rounding scale of a degree-`n` polynomial at
/// eigenvalues `λ`.
pub fn residual_scale(eigenvalues: &RootSet, degree: usize) -> f64 {
    (1.0 + eigenvalues.max_abs()).powi(degree as i32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorReport {
    /// `‖C_{n,c,d}(W)‖_F`.
    pub identity_residual: f64,
    /// `‖C_{n,c,d}(X)‖_F`.
    pub x_residual: f64,
    /// `(1 + max|λ|)ⁿ`.
    pub scale: f64,
    /// First row of `X` when it is circulant.
    pub circulant_first_row: Option<Vec<Complex>>,
    /// Eigenvalues of `X` read off its first row.
    pub spectrum: RootSet,
}

/// Tolerance for reading `X` as a circulant.
pub const CIRCULANT_TOL: f64 = 1e-10;

/// Evaluates the Cardano polynomial at both `W` and `X` and reads the
/// spectrum of `X` from its first row.
pub fn verify_cardano_identity(params: &CardanoParams) -> Result<OperatorReport, OperatorError> {
    let poly = build_polynomial(params)?;
    let w = fujii_w(params)?;
    let x = cardano_x(params)?;
    let first_row = is_circulant(&x, CIRCULANT_TOL);
    let spectrum = first_row
        .as_deref()
        .map(circulant_eigenvalues)
        .unwrap_or_default();
    Ok(OperatorReport {
        identity_residual: mat_poly_eval(&poly, &w).frobenius_norm(),
        x_residual: mat_poly_eval(&poly, &x).frobenius_norm(),
        scale: residual_scale(&RootSet::new(w.diag()), params.n()),
        circulant_first_row: first_row,
        spectrum,
    })
}

/// `‖Z X − ω X Z‖_F`.
pub fn commutation_check(n: usize) -> Result<f64, OperatorError> {
    let z = clock(n)?;
    let x = shift(n)?;
    let lhs = &z * &x;
    let rhs = (&x * &z).scale(omega_pow(1, n));
    Ok((&lhs - &rhs).frobenius_norm())
}

/// The roots as `(first row of X) · √n F⁺`.
pub fn fourier_root_recovery(params: &CardanoParams) -> Result<RootSet, OperatorError> {
    let n = params.n();
    let x = cardano_x(params)?;
    let f_adj = dft(n)?.adjoint();
    let root_n = (n as f64).sqrt();
    let row = x.row(0);
    Ok((0..n)
        .map(|j| (0..n).map(|b| row[b] * f_adj[(b, j)]).sum::<Complex>() * root_n)
        .collect())
}

/// `‖R⁴ + aR² + bR + cI‖_F` for the diagonal operator `R` of the Ferrari
/// roots of `x⁴ + ax² + bx + c`.
pub fn ferrari_operator_check(a: f64, b: f64, c: f64) -> Result<f64, OperatorError> {
    let sol = solve_quartic_depressed(a, b, c)?;
    let r = CMatrix::diagonal(sol.roots.as_slice());
    let quartic = Polynomial::from_real(&[c, b, a, 0.0, 1.0]).expect("finite coefficients");
    Ok(mat_poly_eval(&quartic, &r).frobenius_norm())
}

/// True when `closed_form_roots` and the diagonal of `W` agree as multisets.
pub fn diagonal_matches_roots(params: &CardanoParams, tol: f64) -> Result<bool, OperatorError> {
    let w = fujii_w(params)?;
    Ok(RootSet::new(w.diag()).multiset_eq(&closed_form_roots(params), tol))
}
