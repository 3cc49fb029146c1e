//! Dense complex polynomials, root multisets and the Durand–Kerner oracle.
//!
//! Coefficients are stored in ascending powers: `coeffs[k]` multiplies `x^k`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub type Complex = Complex64;

/// `ω^k` with `ω = e^(2πi/n)`; quarter turns are returned exactly.
pub fn unit_root(k: i64, n: usize) -> Complex {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    match 4 * k {
        0 => Complex::new(1.0, 0.0),
        q if q == n_i => Complex::new(0.0, 1.0),
        q if q == 2 * n_i => Complex::new(-1.0, 0.0),
        q if q == 3 * n_i => Complex::new(0.0, -1.0),
        _ => Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64),
    }
}

/// High-order sums in `add` below this fraction of their operands are cancellation noise.
const NORMALIZE_REL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("root list is empty")]
    NoRoots,
    #[error("polynomial of degree 0 has no roots")]
    Constant,
    #[error("root iteration did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
}

/// A polynomial with complex coefficients in ascending powers.
///
/// The zero polynomial is represented as `[0]`; every other value has a
/// nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>) -> Result<Self, PolyError> {
        if coeffs.is_empty() {
            return Err(PolyError::Empty);
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(PolyError::NonFinite { index });
        }
        let mut p = Self { coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self {
            coeffs: vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        }
    }

    pub fn constant(c: Complex) -> Self {
        Self { coeffs: vec![c] }
    }

    /// Builds `leading · Π (x − r)` over the given roots.
    pub fn from_roots(roots: &RootSet, leading: Complex) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::NoRoots);
        }
        if leading.norm() == 0.0 {
            return Err(PolyError::ZeroLeading);
        }
        let mut coeffs = vec![leading];
        for &r in roots.iter() {
            // multiply by (x - r) in place
            coeffs.push(Complex::new(0.0, 0.0));
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 {
                    coeffs[k - 1]
                } else {
                    Complex::new(0.0, 0.0)
                };
                coeffs[k] = lower - r * coeffs[k];
            }
        }
        Self::new(coeffs)
    }

    /// Drops exactly-zero high-order coefficients.
    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == 0.0
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ |a_k| |z|^k`, the magnitude scale of the evaluation at `z`.
    pub fn eval_abs(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![Complex::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = Polynomial { coeffs: out };
        p.normalize();
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs: Vec<Complex> = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        // high-order terms that cancelled down to rounding noise
        while coeffs.len() > 1 {
            let k = coeffs.len() - 1;
            let operands = self.coeff(k).norm() + other.coeff(k).norm();
            if coeffs[k].norm() > NORMALIZE_REL * operands {
                break;
            }
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn scale(&self, s: Complex) -> Polynomial {
        let mut p = Polynomial {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        };
        p.normalize();
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial, PolyError> {
        let lead = self.leading();
        if lead.norm() == 0.0 {
            return Err(PolyError::ZeroLeading);
        }
        Ok(Polynomial {
            coeffs: self.coeffs.iter().map(|&c| c / lead).collect(),
        })
    }

    /// True when every imaginary part is at most `tol` in magnitude.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol)
    }

    /// Real parts of the coefficients.
    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    /// Largest `|p(r)|` over the given roots.
    pub fn max_residual(&self, roots: &RootSet) -> f64 {
        roots
            .iter()
            .map(|&r| self.eval(r).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 && !(self.is_zero()) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A multiset of complex roots; multiplicity is carried by repetition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    roots: Vec<Complex>,
}

impl RootSet {
    pub fn new(roots: Vec<Complex>) -> Self {
        Self { roots }
    }

    pub fn from_real(roots: &[f64]) -> Self {
        Self::new(roots.iter().map(|&r| Complex::new(r, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex> {
        self.roots.iter()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.roots
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.roots
    }

    pub fn max_abs(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    pub fn sum(&self) -> Complex {
        self.roots.iter().sum()
    }

    pub fn product(&self) -> Complex {
        self.roots.iter().product()
    }

    /// Sorts by real part, then imaginary part.
    pub fn sorted(mut self) -> Self {
        self.roots
            .sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        self
    }

    /// Shifts every root by `delta`.
    pub fn shifted(self, delta: Complex) -> Self {
        Self::new(self.roots.into_iter().map(|r| r + delta).collect())
    }

    /// Tolerance-aware multiset comparison, see [`root_multiset_equal`].
    pub fn multiset_eq(&self, other: &RootSet, tol: f64) -> bool {
        root_multiset_equal(self, other, tol)
    }
}

impl FromIterator<Complex> for RootSet {
    fn from_iter<I: IntoIterator<Item = Complex>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a RootSet {
    type Item = &'a Complex;
    type IntoIter = std::slice::Iter<'a, Complex>;

    fn into_iter(self) -> Self::IntoIter {
        self.roots.iter()
    }
}

/// Greedy minimum-distance matching: the globally closest unmatched pair is
/// matched first. Returns false on a size mismatch or when some pair in the
/// matching is farther apart than `tol`.
pub fn root_multiset_equal(a: &RootSet, b: &RootSet, tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    for _ in 0..n {
        let mut best = (f64::INFINITY, 0, 0);
        for (i, ra) in a.iter().enumerate().filter(|(i, _)| !used_a[*i]) {
            for (j, rb) in b.iter().enumerate().filter(|(j, _)| !used_b[*j]) {
                let dist = (ra - rb).norm();
                if dist < best.0 {
                    best = (dist, i, j);
                }
            }
        }
        if best.0 > tol {
            return false;
        }
        used_a[best.1] = true;
        used_b[best.2] = true;
    }
    true
}

/// Settings for [`oracle_roots_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_iterations: usize,
    /// Accepted residual, relative to the coefficient 1-norm (or to the
    /// evaluation magnitude `Σ|a_k||r|^k` where that is larger).
    pub residual_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            residual_tol: 1e-10,
        }
    }
}

/// All complex roots by Durand–Kerner iteration with default settings.
pub fn oracle_roots(p: &Polynomial) -> Result<RootSet, PolyError> {
    oracle_roots_with(p, OracleConfig::default())
}

/// `max_k |a_k|^{1/(n−k)}` of a monic polynomial, a scale comparable to the
/// largest root modulus (the root bound is twice this).
fn root_radius(monic: &Polynomial) -> f64 {
    let n = monic.degree();
    let r = (0..n)
        .map(|k| monic.coeff(k).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max);
    if r > 0.0 && r.is_finite() {
        r
    } else {
        1.0
    }
}

/// Durand–Kerner (Weierstrass) simultaneous iteration.
///
/// Seeds are `R·(0.4 + 0.9i)^k` with `R` the coefficient root radius.
/// Iteration stops once every root meets the residual tolerance and the
/// corrections have either vanished or stopped shrinking (the noise floor
/// reached around multiple roots).
pub fn oracle_roots_with(p: &Polynomial, config: OracleConfig) -> Result<RootSet, PolyError> {
    let deg = p.degree();
    if deg == 0 {
        return Err(PolyError::Constant);
    }
    let monic = p.monic()?;
    let seed = Complex::new(0.4, 0.9);
    let radius = root_radius(&monic);
    let mut z: Vec<Complex> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();

    let norm1 = monic.norm1();
    let worst_residual = |z: &[Complex]| {
        z.iter()
            .map(|&r| monic.eval(r).norm() / norm1.max(monic.eval_abs(r)))
            .fold(0.0, f64::max)
    };

    let mut prev_step = f64::INFINITY;
    for _ in 0..config.max_iterations {
        let mut step = 0.0_f64;
        for i in 0..deg {
            let zi = z[i];
            let mut denom = Complex::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates: nudge apart
                denom = Complex::new(f64::EPSILON, f64::EPSILON);
            }
            let delta = monic.eval(zi) / denom;
            if delta.re.is_finite() && delta.im.is_finite() {
                z[i] = zi - delta;
                step = step.max(delta.norm() / (1.0 + zi.norm()));
            }
        }
        if worst_residual(&z) <= config.residual_tol && (step <= 1e-14 || step >= prev_step) {
            return Ok(RootSet::new(z));
        }
        prev_step = step;
    }
    let residual = worst_residual(&z);
    if residual <= config.residual_tol {
        Ok(RootSet::new(z))
    } else {
        Err(PolyError::NonConvergence {
            iterations: config.max_iterations,
            residual,
        })
    }
}
