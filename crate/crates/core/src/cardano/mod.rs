//! Generalized Cardano polynomials `C_{n,c,d}` of odd degree `n = 2m+1`.
//!
//! `C_{n,c,d}(x) = x^n − Σ_{j<m} B(m,j) c^(m−j) x^(2j+1) − 2d` has the roots
//! `x[j] = p ω^j + q ω^(−j)` where `pq = c`, `p^n + q^n = 2d` and
//! `ω = e^(2πi/n)`. Roots are always listed in branch order
//! `j = 0, +1, −1, +2, −2, …, +m, −m`.

mod coeffs;

pub use coeffs::{b_coeff, b_coeff_oracle, b_coeff_truncated, binomial, s_sum, CoeffError};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{unit_root, Complex, PolyError, Polynomial, RootSet};

/// Largest supported order; keeps every `B(m, j)` inside `i128`.
pub const MAX_ORDER: usize = 129;

/// Relative width of the `D = 0` band that is routed to the radical branch.
pub const DISCRIMINANT_ZERO_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CardanoError {
    #[error("order must be odd and between 3 and {MAX_ORDER}, got {0}")]
    InvalidOrder(usize),
    #[error("parameters must be finite (c={c}, d={d})")]
    NonFinite { c: f64, d: f64 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(n, c, d)` with `n` odd; `m = (n−1)/2` and `D = d² − cⁿ` are derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CardanoParams {
    n: usize,
    c: f64,
    d: f64,
}

impl CardanoParams {
    pub fn new(n: usize, c: f64, d: f64) -> Result<Self, CardanoError> {
        if n < 3 || n.is_multiple_of(2) || n > MAX_ORDER {
            return Err(CardanoError::InvalidOrder(n));
        }
        let params = Self { n, c, d };
        if !(c.is_finite() && d.is_finite() && params.discriminant().is_finite()) {
            return Err(CardanoError::NonFinite { c, d });
        }
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `cⁿ` by repeated multiplication.
    pub fn c_pow_n(&self) -> f64 {
        int_pow(self.c, self.n)
    }

    /// `D = d² − cⁿ`.
    pub fn discriminant(&self) -> f64 {
        self.d * self.d - self.c_pow_n()
    }

    /// True when `D` is within the zero band.
    pub fn is_degenerate(&self) -> bool {
        let d = self.discriminant();
        d.abs() <= DISCRIMINANT_ZERO_REL * (self.d * self.d).max(self.c_pow_n().abs())
    }
}

fn int_pow(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, _| acc * x)
}

/// Real `n`-th root that keeps the sign of its argument (odd `n`).
pub fn signed_root(v: f64, n: usize) -> f64 {
    if n == 3 {
        v.cbrt()
    } else {
        v.signum() * v.abs().powf(1.0 / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PQForm {
    /// `D ≥ 0`: `p` and `q` are real.
    RealRadical,
    /// `D < 0`: `q = conj(p)`, both of modulus `√c`.
    ConjugatePair,
}

/// The radical pair with `pq = c` and `pⁿ + qⁿ = 2d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQPair {
    pub p: Complex,
    pub q: Complex,
    pub form: PQForm,
    /// `arccos(d / c^(n/2))`, only for [`PQForm::ConjugatePair`].
    pub alpha: Option<f64>,
}

/// Solves `pq = c`, `pⁿ + qⁿ = 2d`.
pub fn compute_pq(params: &CardanoParams) -> PQPair {
    let (n, c, d) = (params.n, params.c, params.d);
    let disc = params.discriminant();
    if params.is_degenerate() {
        let r = signed_root(d, n);
        return PQPair {
            p: Complex::new(r, 0.0),
            q: Complex::new(r, 0.0),
            form: PQForm::RealRadical,
            alpha: None,
        };
    }
    if disc > 0.0 {
        let root_disc = disc.sqrt();
        // take the radicand without cancellation, recover the other from pq = c
        let (p, q) = if d >= 0.0 {
            let p = signed_root(d + root_disc, n);
            let q = if p != 0.0 {
                c / p
            } else {
                signed_root(d - root_disc, n)
            };
            (p, q)
        } else {
            let q = signed_root(d - root_disc, n);
            let p = if q != 0.0 {
                c / q
            } else {
                signed_root(d + root_disc, n)
            };
            (p, q)
        };
        return PQPair {
            p: Complex::new(p, 0.0),
            q: Complex::new(q, 0.0),
            form: PQForm::RealRadical,
            alpha: None,
        };
    }
    // D < 0 forces c > 0
    let alpha = trig_angle(params);
    let p = Complex::from_polar(c.sqrt(), alpha / n as f64);
    PQPair {
        p,
        q: p.conj(),
        form: PQForm::ConjugatePair,
        alpha: Some(alpha),
    }
}

fn trig_angle(params: &CardanoParams) -> f64 {
    let scale = int_pow(params.c.sqrt(), params.n);
    (params.d / scale).clamp(-1.0, 1.0).acos()
}

/// Branch indices in output order: `0, 1, −1, 2, −2, …, m, −m`.
pub fn branch_order(n: usize) -> Vec<i64> {
    let m = ((n - 1) / 2) as i64;
    std::iter::once(0)
        .chain((1..=m).flat_map(|j| [j, -j]))
        .collect()
}

fn branch_value(params: &CardanoParams, pq: &PQPair, j: i64) -> Complex {
    match pq.form {
        PQForm::RealRadical => pq.p * unit_root(j, params.n) + pq.q * unit_root(-j, params.n),
        PQForm::ConjugatePair => {
            let alpha = pq.alpha.unwrap_or_else(|| trig_angle(params));
            let k = j.rem_euclid(params.n as i64) as f64;
            let value = 2.0 * params.c.sqrt() * ((alpha + 2.0 * PI * k) / params.n as f64).cos();
            Complex::new(value, 0.0)
        }
    }
}

/// The builder: `xⁿ − Σ B(m,j) c^(m−j) x^(2j+1) − 2d`, ascending coefficients.
pub fn build_polynomial(params: &CardanoParams) -> Result<Polynomial, CardanoError> {
    let n = params.n;
    let m = params.m() as i64;
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    coeffs[0] = -2.0 * params.d;
    for j in 0..m {
        let c_pow = int_pow(params.c, (m - j) as usize);
        coeffs[(2 * j + 1) as usize] = -(b_coeff(m, j)? as f64) * c_pow;
    }
    Ok(Polynomial::from_real(&coeffs)?)
}

/// All `n` roots `x[j]` in branch order; the trigonometric form is used
/// when `D < 0`.
pub fn closed_form_roots(params: &CardanoParams) -> RootSet {
    branch_roots(params, 0)
}

/// `2√c · cos((α + 2πj)/n)` for every branch; only valid when `D < 0`.
pub fn trig_roots(params: &CardanoParams) -> Result<RootSet, CardanoError> {
    if params.discriminant() >= 0.0 {
        return Err(CardanoError::Domain(format!(
            "trigonometric roots need a negative discriminant, got D={}",
            params.discriminant()
        )));
    }
    let alpha = trig_angle(params);
    let scale = 2.0 * params.c.sqrt();
    let n = params.n as f64;
    Ok(branch_order(params.n)
        .into_iter()
        .map(|j| Complex::new(scale * ((alpha + 2.0 * PI * j as f64) / n).cos(), 0.0))
        .collect())
}

/// The roots relabelled `x[j + k mod n]`; the same multiset for every `k`.
pub fn branch_roots(params: &CardanoParams, k: i64) -> RootSet {
    let pq = compute_pq(params);
    branch_order(params.n)
        .into_iter()
        .map(|j| branch_value(params, &pq, j + k))
        .collect()
}

/// Recovers `(n, c, d)` when `p` is (a scalar multiple of) some `C_{n,c,d}`.
///
/// `c` is read from the `x^(n−2)` coefficient (which is `−nc`), `d` from the
/// constant term, and the candidate is accepted only if rebuilding it matches
/// every coefficient within `tol · (1 + max|coeff|)`. The even powers, which
/// vanish identically in the family, must also be small on their own
/// homogeneous scale: `|a_k| ≤ tol · (1 + |c|^((n−k)/2))`.
pub fn recognize(p: &Polynomial, tol: f64) -> Option<CardanoParams> {
    let n = p.degree();
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let monic = p.monic().ok()?;
    let scale = 1.0 + monic.max_abs_coeff();
    if !monic.is_real(tol * scale) {
        return None;
    }
    let c = -monic.coeff(n - 2).re / n as f64 + 0.0;
    let d = -monic.coeff(0).re / 2.0 + 0.0;
    let structural_zero = (2..n).step_by(2).all(|k| {
        let weight = c.abs().powf((n - k) as f64 / 2.0);
        monic.coeff(k).norm() <= tol * (1.0 + weight)
    });
    if !structural_zero {
        return None;
    }
    let params = CardanoParams::new(n, c, d).ok()?;
    let rebuilt = build_polynomial(&params).ok()?;
    let matches = (0..=n).all(|k| (monic.coeff(k) - rebuilt.coeff(k)).norm() <= tol * scale);
    matches.then_some(params)
}

/// `x³ + 3s x + t` obtained from `x³ + a x² + b x + c` by `x → x − a/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedCubic {
    pub s: f64,
    pub t: f64,
    /// The substitution offset `a/3`.
    pub shift: f64,
}

impl DepressedCubic {
    pub fn from_coefficients(a: f64, b: f64, c: f64) -> Self {
        Self {
            s: b / 3.0 - a * a / 9.0,
            t: c - a * b / 3.0 + 2.0 * a * a * a / 27.0,
            shift: a / 3.0,
        }
    }

    /// `Δ = t² + 4s³`, which is `4D` of the equivalent Cardano parameters.
    pub fn delta(&self) -> f64 {
        self.t * self.t + 4.0 * self.s * self.s * self.s
    }

    /// `x³ + 3sx + t = C_{3,−s,−t/2}(x)`.
    pub fn to_params(&self) -> Result<CardanoParams, CardanoError> {
        CardanoParams::new(3, -self.s, -self.t / 2.0)
    }
}

/// Roots of `x³ + a x² + b x + c` through the depressed cubic.
pub fn solve_general_cubic(a: f64, b: f64, c: f64) -> Result<RootSet, CardanoError> {
    let depressed = DepressedCubic::from_coefficients(a, b, c);
    let params = depressed.to_params()?;
    Ok(closed_form_roots(&params).shifted(Complex::new(-depressed.shift, 0.0)))
}
