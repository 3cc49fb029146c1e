//! Exact integer coefficients of the power-reduction identity
//! `x^(2m+1) = 2d + Σ_j B(m,j) c^(m-j) x^(2j+1)`.
//!
//! Everything here is checked `i128` arithmetic; every division is verified
//! to be exact before it is performed.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("index out of range: need m >= 1 and 0 <= j <= m-1, got m={m}, j={j}")]
    Domain { m: i64, j: i64 },
    #[error("integer overflow while evaluating coefficients for m={m}")]
    Overflow { m: i64 },
    #[error("{numerator} is not divisible by {divisor}")]
    NotIntegral { numerator: i128, divisor: i128 },
}

fn check_domain(m: i64, j: i64) -> Result<(), CoeffError> {
    if m < 1 || j < 0 || j > m - 1 {
        return Err(CoeffError::Domain { m, j });
    }
    Ok(())
}

fn exact_div(numerator: i128, divisor: i128) -> Result<i128, CoeffError> {
    if divisor == 0 || numerator % divisor != 0 {
        return Err(CoeffError::NotIntegral { numerator, divisor });
    }
    Ok(numerator / divisor)
}

fn sign(power: i64) -> i128 {
    if power.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Returns `None` on overflow.
pub fn binomial(n: i64, k: i64) -> Option<i128> {
    if k < 0 || n < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) since acc = C(n, i)
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

/// `B(m, j) = (-1)^(m-1-j) · (2m+1)/(2j+1) · C(m+j, 2j)`.
pub fn b_coeff(m: i64, j: i64) -> Result<i128, CoeffError> {
    check_domain(m, j)?;
    let overflow = CoeffError::Overflow { m };
    let binom = binomial(m + j, 2 * j).ok_or(overflow.clone())?;
    let numerator = binom.checked_mul(2 * m as i128 + 1).ok_or(overflow)?;
    Ok(sign(m - 1 - j) * exact_div(numerator, 2 * j as i128 + 1)?)
}

/// Lucas-type coefficient `r/(r-i) · C(r-i, i)` of `(pq)^i (p+q)^(r-2i)` in
/// the expansion of `p^r + q^r`.
fn power_sum_coeff(r: i64, i: i64, m: i64) -> Result<i128, CoeffError> {
    let overflow = CoeffError::Overflow { m };
    let binom = binomial(r - i, i).ok_or(overflow.clone())?;
    let numerator = binom.checked_mul(r as i128).ok_or(overflow)?;
    exact_div(numerator, (r - i) as i128)
}

/// `B(m, j)` from the binomial expansion of `(p+q)^(2m+1)` with every odd
/// power sum `p^r + q^r` rewritten in `p+q` and `pq`.
///
/// This walks the full double sum over the binomial index `k` and the
/// power-sum index `i`, keeping the terms that land on `c^(m-j) x^(2j+1)`.
/// It shares no code path with [`b_coeff`] beyond [`binomial`].
pub fn b_coeff_oracle(m: i64, j: i64) -> Result<i128, CoeffError> {
    check_domain(m, j)?;
    let overflow = || CoeffError::Overflow { m };
    let mut total: i128 = 0;
    for k in 1..=m {
        let r = 2 * (m - k) + 1;
        let outer = binomial(2 * m + 1, k).ok_or_else(overflow)?;
        for i in 0..=(m - k) {
            let power = r - 2 * i;
            if power != 2 * j + 1 {
                continue;
            }
            debug_assert_eq!(i + k, m - j);
            let term = outer
                .checked_mul(power_sum_coeff(r, i, m)?)
                .ok_or_else(overflow)?;
            total = total.checked_add(sign(i) * term).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// The completed sum `(2j+1) · S(m, j)`, i.e.
/// `Σ_{t=0}^{m-j} (-1)^t C(2m+1, m-j-t) (2(j+t)+1) C(2j+t, t)`.
///
/// It vanishes identically; the `t = m-j` term alone accounts for the
/// closed form of `B(m, j)`.
pub fn s_sum(m: i64, j: i64) -> Result<i128, CoeffError> {
    check_domain(m, j)?;
    let overflow = || CoeffError::Overflow { m };
    let mut total: i128 = 0;
    for t in 0..=(m - j) {
        let a = binomial(2 * m + 1, m - j - t).ok_or_else(overflow)?;
        let b = binomial(2 * j + t, t).ok_or_else(overflow)?;
        let term = a
            .checked_mul(b)
            .and_then(|v| v.checked_mul((2 * (j + t) + 1) as i128))
            .ok_or_else(overflow)?;
        total = total.checked_add(sign(t) * term).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Truncated sum up to `t = m-j-1` divided by `2j+1`, which equals `B(m, j)`.
pub fn b_coeff_truncated(m: i64, j: i64) -> Result<i128, CoeffError> {
    check_domain(m, j)?;
    let overflow = || CoeffError::Overflow { m };
    let mut total: i128 = 0;
    for t in 0..(m - j) {
        let a = binomial(2 * m + 1, m - j - t).ok_or_else(overflow)?;
        let b = binomial(2 * j + t, t).ok_or_else(overflow)?;
        let term = a
            .checked_mul(b)
            .and_then(|v| v.checked_mul((2 * (j + t) + 1) as i128))
            .ok_or_else(overflow)?;
        total = total.checked_add(sign(t) * term).ok_or_else(overflow)?;
    }
    exact_div(total, 2 * j as i128 + 1)
}
