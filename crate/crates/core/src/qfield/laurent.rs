//! Integer Laurent polynomials in `q`, stored densely from the lowest
//! nonzero exponent upwards.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finitely supported sum `Σ c_e q^e` with `c_e ∈ ℤ` and `e ∈ ℤ`.
///
/// The coefficient vector is trimmed at both ends, so the first and last
/// stored coefficients are nonzero and the zero polynomial has no
/// coefficients at all. Two values are equal iff they have the same terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentZ {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentZ {
    pub fn zero() -> Self {
        LaurentZ { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c q^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_coeffs(e, vec![c.into()])
    }

    /// Builds `Σ_j coeffs[j] q^{low+j}`, trimming zeros at both ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        LaurentZ { low: low + first as i64, coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for a single term `c q^e`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Dense coefficients starting at [`low_exp`](Self::low_exp).
    pub fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.low + j as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentZ { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentZ { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        LaurentZ {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes `q ↦ q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "q -> q^0 is not a substitution on Laurent polynomials");
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// Exact value at a rational point. `None` when `q0 = 0` and a negative
    /// exponent is present.
    pub fn eval(&self, q0: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if q0.is_zero() {
            return match self.low.cmp(&0) {
                Ordering::Less => None,
                Ordering::Equal => Some(BigRational::from_integer(self.coeffs[0].clone())),
                Ordering::Greater => Some(BigRational::zero()),
            };
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + BigRational::from_integer(c.clone());
        }
        Some(acc * pow_rational(q0, self.low))
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().unwrap().max(other.high_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + j] += c;
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + j];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_coeffs(low, coeffs)
    }
}

pub(crate) fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl std::ops::Add for &LaurentZ {
    type Output = LaurentZ;
    fn add(self, rhs: &LaurentZ) -> LaurentZ {
        self.add_signed(rhs, false)
    }
}

impl std::ops::Sub for &LaurentZ {
    type Output = LaurentZ;
    fn sub(self, rhs: &LaurentZ) -> LaurentZ {
        self.add_signed(rhs, true)
    }
}

impl std::ops::Neg for &LaurentZ {
    type Output = LaurentZ;
    fn neg(self) -> LaurentZ {
        LaurentZ { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Mul for &LaurentZ {
    type Output = LaurentZ;
    fn mul(self, rhs: &LaurentZ) -> LaurentZ {
        if self.is_zero() || rhs.is_zero() {
            return LaurentZ::zero();
        }
        LaurentZ::from_coeffs(self.low + rhs.low, dense_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if n > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    match e {
                        1 => f.write_str("q")?,
                        _ => write!(f, "q^{e}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Dense univariate helpers. A slice `p` stands for `Σ p[j] q^j`; slices
// handed in are trimmed (nonzero last entry) unless they are empty.

pub(crate) fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn trim_top(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
fn dense_primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    trim_top(&mut a);
    let Some(lc) = a.last() else { return a };
    let mut c = dense_content(&a);
    if lc.is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for x in a.iter_mut() {
            *x = &*x / &c;
        }
    }
    a
}

/// Pseudo-remainder of `a` by `b` (up to a unit), `deg b ≥ 0`.
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim_top(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let g = lr.gcd(lb);
        let mul_r = lb / &g;
        let mul_b = &lr / &g;
        if !mul_r.is_one() {
            for x in r.iter_mut() {
                *x *= &mul_r;
            }
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &mul_b * y;
        }
        trim_top(&mut r);
    }
    r
}

/// Primitive gcd over `ℚ[q]`, normalized to integer content 1 and positive
/// leading coefficient.
pub(crate) fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return dense_primitive(b.to_vec());
    }
    if b.is_empty() {
        return dense_primitive(a.to_vec());
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (dense_primitive(a.to_vec()), dense_primitive(b.to_vec()))
    } else {
        (dense_primitive(b.to_vec()), dense_primitive(a.to_vec()))
    };
    if x == y {
        return x;
    }
    loop {
        let r = dense_prem(&x, &y);
        if r.is_empty() {
            return y;
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        x = y;
        y = dense_primitive(r);
    }
}

/// Exact quotient `a / b` in `ℤ[q]`; `b` must divide `a` over `ℚ[q]` and be
/// primitive, so the quotient has integer coefficients.
pub(crate) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if b.len() == 1 && b[0].is_one() {
        return a.to_vec();
    }
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        debug_assert!((top % lb).is_zero(), "inexact polynomial division");
        let c = top / lb;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "nonzero remainder in exact division");
    trim_top(&mut quot);
    quot
}
