//! Quartics by Ferrari's method.
//!
//! `x⁴ + a x² + b x + c = (x² + y)² − (αx + β)²` once `y` solves the
//! resolvent `4(y² − c)(2y − a) − b² = 0`; the quartic then splits into
//! `(x² − αx + (y − β)) (x² + αx + (y + β))`.

use thiserror::Error;

use crate::cardano::{solve_general_cubic, CardanoError};
use crate::poly::{Complex, Polynomial, RootSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FerrariError {
    #[error("no real resolvent root with 2y - a > 0 although b = {b}")]
    InconsistentInput { b: f64 },
    #[error("coefficients must be finite")]
    NonFinite,
    #[error(transparent)]
    Cardano(#[from] CardanoError),
}

/// `y`, `α`, `β` of the difference-of-squares split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerrariAux {
    pub y: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuarticSolution {
    pub roots: RootSet,
    pub aux: FerrariAux,
    /// Monic resolvent cubic in `y`.
    pub resolvent: Polynomial,
    /// `(a, b, c)` of the depressed quartic that was actually split.
    pub depressed: (f64, f64, f64),
    /// True when `α ≈ 0` and the quartic was solved as a quadratic in `x²`.
    pub biquadratic: bool,
}

/// `(8y³ − 4a y² − 8c y + 4ac − b²) / 8`.
pub fn resolvent_cubic(a: f64, b: f64, c: f64) -> Polynomial {
    let coeffs = resolvent_coeffs(a, b, c);
    Polynomial::from_real(&[coeffs[0], coeffs[1], coeffs[2], 1.0]).expect("finite resolvent")
}

fn resolvent_coeffs(a: f64, b: f64, c: f64) -> [f64; 3] {
    [(4.0 * a * c - b * b) / 8.0, -c, -a / 2.0]
}

/// Both roots of `x² + bx + c`, computed without cancellation.
pub fn quadratic_roots(b: Complex, c: Complex) -> [Complex; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    let plus = -b + disc;
    let minus = -b - disc;
    let big = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    } / 2.0;
    if big.norm() == 0.0 {
        return [Complex::new(0.0, 0.0); 2];
    }
    [big, c / big]
}

/// Roots of `x⁴ + a x² + b x + c`.
pub fn solve_quartic_depressed(a: f64, b: f64, c: f64) -> Result<QuarticSolution, FerrariError> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(FerrariError::NonFinite);
    }
    let [r0, r1, r2] = resolvent_coeffs(a, b, c);
    let resolvent = resolvent_cubic(a, b, c);
    let ys = solve_general_cubic(r2, r1, r0)?;
    // the largest real root; one is always exactly real
    let y = ys
        .iter()
        .filter(|y| y.im.abs() <= 1e-8 * (1.0 + y.re.abs()))
        .map(|y| y.re)
        .fold(f64::NEG_INFINITY, f64::max);

    let zero_band = 1e-10 * (1.0 + a.abs());
    let two_y_minus_a = 2.0 * y - a;
    if two_y_minus_a <= zero_band {
        if b.abs() > zero_band {
            return Err(FerrariError::InconsistentInput { b });
        }
        // x⁴ + a x² + c as a quadratic in u = x²
        let [u0, u1] = quadratic_roots(Complex::new(a, 0.0), Complex::new(c, 0.0));
        let (s0, s1) = (u0.sqrt(), u1.sqrt());
        return Ok(QuarticSolution {
            roots: RootSet::new(vec![s0, -s0, s1, -s1]),
            aux: FerrariAux {
                y,
                alpha: 0.0,
                beta: (y * y - c).max(0.0).sqrt(),
            },
            resolvent,
            depressed: (a, b, c),
            biquadratic: true,
        });
    }

    let alpha = two_y_minus_a.sqrt();
    let beta = -b / (2.0 * alpha);
    let [x0, x1] = quadratic_roots(Complex::new(-alpha, 0.0), Complex::new(y - beta, 0.0));
    let [x2, x3] = quadratic_roots(Complex::new(alpha, 0.0), Complex::new(y + beta, 0.0));
    Ok(QuarticSolution {
        roots: RootSet::new(vec![x0, x1, x2, x3]),
        aux: FerrariAux { y, alpha, beta },
        resolvent,
        depressed: (a, b, c),
        biquadratic: false,
    })
}

/// Roots of `x⁴ + a3 x³ + a2 x² + a1 x + a0` via `x → x − a3/4`.
pub fn solve_quartic_general(
    a3: f64,
    a2: f64,
    a1: f64,
    a0: f64,
) -> Result<QuarticSolution, FerrariError> {
    let h = a3 / 4.0;
    let a3_sq = a3 * a3;
    let p = a2 - 3.0 * a3_sq / 8.0;
    let q = a1 - a2 * a3 / 2.0 + a3_sq * a3 / 8.0;
    let r = a0 - a1 * a3 / 4.0 + a2 * a3_sq / 16.0 - 3.0 * a3_sq * a3_sq / 256.0;
    let mut sol = solve_quartic_depressed(p, q, r)?;
    sol.roots = sol.roots.shifted(Complex::new(-h, 0.0));
    Ok(sol)
}

/// The two quadratic factors `x² − αx + (y − β)` and `x² + αx + (y + β)`.
pub fn quadratic_factors(aux: &FerrariAux) -> (Polynomial, Polynomial) {
    let FerrariAux { y, alpha, beta } = *aux;
    (
        Polynomial::from_real(&[y - beta, -alpha, 1.0]).expect("finite"),
        Polynomial::from_real(&[y + beta, alpha, 1.0]).expect("finite"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cardano::{closed_form_roots, CardanoParams};
    use crate::poly::{oracle_roots, root_multiset_equal};

    fn quartic(a: f64, b: f64, c: f64) -> Polynomial {
        Polynomial::from_real(&[c, b, a, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(
            resolvent_cubic(6.0, 8.0, 3.0).real_coeffs(),
            vec![1.0, -3.0, -3.0, 1.0]
        );
        assert_eq!(
            resolvent_cubic(0.0, 0.0, 0.0).real_coeffs(),
            vec![0.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(
            resolvent_cubic(0.0, 0.0, -1.0).real_coeffs(),
            vec![0.0, 1.0, 0.0, 1.0]
        );
    }

    #[test]
    fn quartic_with_complex_roots() {
        let sol = solve_quartic_depressed(6.0, 8.0, 3.0).unwrap();
        assert!(!sol.biquadratic);
        // resolvent roots are 1 + z[j] with z from C_{3,2,2}
        let z = closed_form_roots(&CardanoParams::new(3, 2.0, 2.0).unwrap());
        assert!((sol.aux.y - (1.0 + z.as_slice()[0].re)).abs() < 1e-12);
        assert!((sol.aux.y - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        let p = quartic(6.0, 8.0, 3.0);
        assert!(p.max_residual(&sol.roots) <= 1e-8);
        assert!(root_multiset_equal(
            &sol.roots,
            &oracle_roots(&p).unwrap(),
            1e-9
        ));

        let FerrariAux { y, alpha, beta } = sol.aux;
        assert!((alpha * alpha - (2.0 * y - 6.0)).abs() < 1e-9);
        assert!((-2.0 * alpha * beta - 8.0).abs() < 1e-9);
        assert!((y * y - beta * beta - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let sol = solve_quartic_depressed(0.0, 0.0, -1.0).unwrap();
        let want = RootSet::new(vec![
            Complex::new(1.0, 0.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
        ]);
        assert!(root_multiset_equal(&sol.roots, &want, 1e-12));
    }

    #[test]
    fn biquadratic_path() {
        let sol = solve_quartic_depressed(-5.0, 0.0, 4.0).unwrap();
        assert!(root_multiset_equal(
            &sol.roots,
            &RootSet::from_real(&[1.0, -1.0, 2.0, -2.0]),
            1e-12
        ));
    }

    #[test]
    fn general_examples() {
        let sol = solve_quartic_general(0.0, 6.0, 8.0, 3.0).unwrap();
        let dep = solve_quartic_depressed(6.0, 8.0, 3.0).unwrap();
        assert!(root_multiset_equal(&sol.roots, &dep.roots, 1e-14));

        let sol = solve_quartic_general(-4.0, 6.0, -4.0, 1.0).unwrap();
        let p = Polynomial::from_real(&[1.0, -4.0, 6.0, -4.0, 1.0]).unwrap();
        assert!(p.max_residual(&sol.roots) <= 1e-6);
        assert!(sol
            .roots
            .iter()
            .all(|r| (r - Complex::new(1.0, 0.0)).norm() < 1e-3));

        let sol = solve_quartic_general(2.0, -1.0, -2.0, 1.0).unwrap();
        let p = Polynomial::from_real(&[1.0, -2.0, -1.0, 2.0, 1.0]).unwrap();
        assert!(root_multiset_equal(
            &sol.roots,
            &oracle_roots(&p).unwrap(),
            1e-6
        ));
    }

    #[test]
    fn factors_reproduce_quartic() {
        let sol = solve_quartic_depressed(6.0, 8.0, 3.0).unwrap();
        let (f, g) = quadratic_factors(&sol.aux);
        let prod = f.mul(&g);
        let want = quartic(6.0, 8.0, 3.0);
        for k in 0..=4 {
            assert!((prod.coeff(k) - want.coeff(k)).norm() < 1e-9 * 9.0, "k={k}");
        }
    }

    #[test]
    fn quadratic_roots_are_stable() {
        let [r0, r1] = quadratic_roots(Complex::new(-1e8, 0.0), Complex::new(1.0, 0.0));
        let small = if r0.norm() < r1.norm() { r0 } else { r1 };
        assert!((small.re - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            solve_quartic_depressed(f64::NAN, 0.0, 0.0),
            Err(FerrariError::NonFinite)
        );
    }
}
