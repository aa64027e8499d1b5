//! Exact arithmetic in the field `ℚ(q)` and the q-analogues built on it:
//! Gaussian binomials `[n, m]`, `[∞, m]` and scalar q-Pochhammer symbols.

mod laurent;
mod parse;
mod ratq;

use num_bigint::BigInt;
use thiserror::Error;

pub use laurent::LaurentZ;
pub use ratq::RatQ;

pub(crate) use ratq::one_minus_q_powers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("adams index 0 is not a field map")]
    ZeroAdamsIndex,
    #[error("pole at q={at}: denominator {factor} vanishes")]
    Pole { at: String, factor: String },
    #[error("negative exponent at q=0")]
    NegativeExponentAtZero,
    #[error("vanishing factor 1-{a}*q^{k} in q-Pochhammer symbol")]
    VanishingFactor { a: String, k: i64 },
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}

/// Gaussian binomial `G(N, m) = (q;q)_N / ((q;q)_m (q;q)_{N-m})` for
/// `0 ≤ m ≤ N`, as a dense polynomial.
fn gaussian(n: u64, m: u64) -> LaurentZ {
    let m = m.min(n - m);
    // G(N-m+j, j) is a polynomial for every j, so each division is exact.
    let mut acc = LaurentZ::one();
    for j in 1..=m as i64 {
        let numer = &acc * &one_minus_q_powers([(n - m) as i64 + j]);
        acc = exact_div_one_minus(&numer, j);
    }
    acc
}

/// Divides a polynomial known to be a multiple of `1 - q^k` (`k > 0`).
fn exact_div_one_minus(p: &LaurentZ, k: i64) -> LaurentZ {
    // p = (1 - q^k) r  <=>  r_j = p_j + r_{j-k}
    let low = p.low_exp().unwrap_or(0);
    let dense = p.dense();
    let len = dense.len().saturating_sub(k as usize);
    let mut r: Vec<BigInt> = Vec::with_capacity(len);
    for j in 0..len {
        let mut c = dense[j].clone();
        if j >= k as usize {
            c += &r[j - k as usize];
        }
        r.push(c);
    }
    LaurentZ::from_coeffs(low, r)
}

/// `[n, m] = ∏_{k=1}^m (1 - q^{n+k}) / (1 - q^k)`, for any integer `n`.
///
/// Vanishes exactly for `-m ≤ n ≤ -1`; a polynomial with nonnegative
/// coefficients for `n ≥ 0`; `(-1)^m q^{nm + m(m+1)/2} G(-n-1, m)` below the
/// vanishing band.
pub fn qbinomial(n: i64, m: u64) -> RatQ {
    RatQ::from_laurent(qbinomial_laurent(n, m))
}

pub(crate) fn qbinomial_laurent(n: i64, m: u64) -> LaurentZ {
    if m == 0 {
        return LaurentZ::one();
    }
    let mi = m as i64;
    if n >= 0 {
        gaussian((n + mi) as u64, m)
    } else if n >= -mi {
        LaurentZ::zero()
    } else {
        let g = gaussian((-n - 1) as u64, m);
        let g = if m % 2 == 1 { -&g } else { g };
        g.shift(n * mi + mi * (mi + 1) / 2)
    }
}

/// `[∞, m] = 1 / (q;q)_m`.
pub fn qbinomial_inf(m: u64) -> RatQ {
    let den = one_minus_q_powers(1..=m as i64);
    RatQ::from_parts(LaurentZ::one(), den).expect("(q;q)_m is nonzero")
}

/// Scalar q-Pochhammer symbol `(a;q)_n` for the monomial `a = c q^e`:
/// `∏_{k=0}^{n-1}(1 - a q^k)` for `n ≥ 0` and `∏_{k=n}^{-1}(1 - a q^k)^{-1}`
/// for `n < 0`.
pub fn pochhammer(c: i64, e: i64, n: i64) -> Result<RatQ, QFieldError> {
    let factor = |k: i64| -> Result<LaurentZ, QFieldError> {
        let f = &LaurentZ::one() - &LaurentZ::monomial(c, e + k);
        if f.is_zero() {
            Err(QFieldError::VanishingFactor { a: LaurentZ::monomial(c, e).to_string(), k })
        } else {
            Ok(f)
        }
    };
    let mut acc = LaurentZ::one();
    if n >= 0 {
        for k in 0..n {
            acc = &acc * &factor(k)?;
        }
        Ok(RatQ::from_laurent(acc))
    } else {
        for k in n..0 {
            acc = &acc * &factor(k)?;
        }
        RatQ::from_parts(LaurentZ::one(), acc)
    }
}

#[cfg(test)]
mod tests;
