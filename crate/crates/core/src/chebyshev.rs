//! Vieta–Lucas (modified Chebyshev) polynomials `Ω_n(x) = 2 T_n(x/2)` and
//! their link to the Cardano family:
//! `C_{n,c,d}(x) = c^(n/2) Ω_n(x/√c) − 2d`.

use crate::cardano::{binomial, CardanoError, CardanoParams};
use crate::poly::{Complex, Polynomial};

/// `Ω_n` with exact integer coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPoly {
    n: usize,
    coeffs: Vec<i128>,
}

impl OmegaPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let coeffs: Vec<f64> = self.coeffs.iter().map(|&c| c as f64).collect();
        Polynomial::from_real(&coeffs).expect("integer coefficients are finite")
    }

    /// Evaluates at a real point with compensated Horner, which behaves as
    /// if run in twice the working precision.
    pub fn eval(&self, x: f64) -> f64 {
        let coeffs: Vec<f64> = self.coeffs.iter().map(|&c| c as f64).collect();
        compensated_horner(&coeffs, x)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner scheme for real ascending coefficients.
pub fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    let mut s = 0.0;
    let mut err = 0.0;
    for &a in coeffs.iter().rev() {
        let (p, pi) = two_prod(s, x);
        let (sum, sigma) = two_sum(p, a);
        s = sum;
        err = err * x + (pi + sigma);
    }
    s + err
}

/// Largest order for which the closed sum stays inside `i128`.
pub const MAX_OMEGA_ORDER: usize = crate::cardano::MAX_ORDER;

/// `Ω_n(x) = Σ_{k ≤ n/2} (−1)^k · n/(n−k) · C(n−k, k) · x^(n−2k)`.
pub fn omega_closed(n: usize) -> OmegaPoly {
    assert!((1..=MAX_OMEGA_ORDER).contains(&n), "order {n} out of range");
    let mut coeffs = vec![0i128; n + 1];
    let ni = n as i64;
    for k in 0..=(ni / 2) {
        let numerator = binomial(ni - k, k).expect("fits in i128") * ni as i128;
        let divisor = (ni - k) as i128;
        assert_eq!(
            numerator % divisor,
            0,
            "non-integral Vieta-Lucas coefficient"
        );
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[(ni - 2 * k) as usize] = sign * numerator / divisor;
    }
    OmegaPoly { n, coeffs }
}

/// `Ω_{k+2} = x Ω_{k+1} − Ω_k` from `Ω_1 = x`, `Ω_2 = x² − 2`.
pub fn omega_recurrence(n: usize) -> OmegaPoly {
    assert!((1..=MAX_OMEGA_ORDER).contains(&n), "order {n} out of range");
    let mut prev = vec![0, 1];
    if n == 1 {
        return OmegaPoly { n, coeffs: prev };
    }
    let mut cur = vec![-2, 0, 1];
    for _ in 3..=n {
        let mut next = vec![0i128; cur.len() + 1];
        for (k, &a) in cur.iter().enumerate() {
            next[k + 1] += a;
        }
        for (k, &a) in prev.iter().enumerate() {
            next[k] -= a;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    OmegaPoly { n, coeffs: cur }
}

/// `max_θ |Ω_n(2 cos θ) − 2 cos(nθ)|` over `samples` evenly spaced angles
/// in `[0, π]`.
pub fn chebyshev_t_check(n: usize, samples: usize) -> f64 {
    let omega = omega_closed(n);
    let samples = samples.max(1);
    (0..samples)
        .map(|i| {
            let theta = if samples == 1 {
                0.0
            } else {
                std::f64::consts::PI * i as f64 / (samples - 1) as f64
            };
            (omega.eval(2.0 * theta.cos()) - 2.0 * (n as f64 * theta).cos()).abs()
        })
        .fold(0.0, f64::max)
}

/// `c^(n/2) Ω_n(x/√c) − 2d`, which coincides with `C_{n,c,d}`. Needs `c > 0`.
pub fn cardano_from_omega(params: &CardanoParams) -> Result<Polynomial, CardanoError> {
    if params.c() <= 0.0 {
        return Err(CardanoError::Domain(format!(
            "the Chebyshev form needs c > 0, got c={}",
            params.c()
        )));
    }
    let n = params.n();
    let root_c = params.c().sqrt();
    let outer = root_c.powi(n as i32);
    let omega = omega_closed(n);
    let mut coeffs: Vec<f64> = omega
        .coeffs()
        .iter()
        .enumerate()
        .map(|(e, &w)| outer * w as f64 / root_c.powi(e as i32))
        .collect();
    coeffs[0] -= 2.0 * params.d();
    Ok(Polynomial::from_real(&coeffs)?)
}

/// `C_1 … C_maxN` from `C_{k+2} = x C_{k+1} − c C_k + 2d(x − c − 1)` with
/// `C_1 = x − 2d` and `C_2 = x² − 2c − 2d`. Entry `i` holds `C_{i+1}`.
///
/// Even orders are produced as coefficients only.
pub fn cardano_recurrence_sequence(c: f64, d: f64, max_n: usize) -> Vec<Polynomial> {
    let max_n = max_n.max(2);
    let mut seq: Vec<Vec<f64>> = vec![vec![-2.0 * d, 1.0], vec![-2.0 * c - 2.0 * d, 0.0, 1.0]];
    while seq.len() < max_n {
        let cur = &seq[seq.len() - 1];
        let prev = &seq[seq.len() - 2];
        let mut next = vec![0.0; cur.len() + 1];
        for (k, &a) in cur.iter().enumerate() {
            next[k + 1] += a;
        }
        for (k, &a) in prev.iter().enumerate() {
            next[k] -= c * a;
        }
        next[1] += 2.0 * d;
        next[0] -= 2.0 * d * (c + 1.0);
        seq.push(next);
    }
    seq.truncate(max_n);
    seq.into_iter()
        .map(|coeffs| Polynomial::from_real(&coeffs).expect("finite recurrence coefficients"))
        .collect()
}

/// `‖C_{k+2} − x C_{k+1} + c C_k − 2d(x − c − 1)‖₁` for one consecutive triple.
pub fn recurrence_residual(
    c: f64,
    d: f64,
    ck: &Polynomial,
    ck1: &Polynomial,
    ck2: &Polynomial,
) -> f64 {
    let rhs = Polynomial::from_real(&[-2.0 * d * (c + 1.0), 2.0 * d]).expect("finite");
    ck2.sub(&Polynomial::x().mul(ck1))
        .add(&ck.scale(Complex::new(c, 0.0)))
        .sub(&rhs)
        .norm1()
}
