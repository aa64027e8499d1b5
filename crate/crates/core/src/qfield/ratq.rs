use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{dense_div_exact, dense_gcd, dense_mul, LaurentZ};
use super::QFieldError;

/// An element of `ℚ(q)` in canonical form.
///
/// `num / den` with `den` an ordinary polynomial (`den(0) ≠ 0`) with
/// positive leading coefficient, `num` and `den` coprime in `ℚ[q]`, and the
/// integer coefficients of `num` and `den` jointly coprime. Every value has
/// exactly one such representation, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQ {
    num: LaurentZ,
    den: LaurentZ,
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { num: LaurentZ::zero(), den: LaurentZ::one() }
    }

    pub fn one() -> Self {
        RatQ { num: LaurentZ::one(), den: LaurentZ::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        RatQ { num: LaurentZ::constant(n), den: LaurentZ::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(LaurentZ::constant(r.numer().clone()), LaurentZ::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    /// `c q^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        RatQ { num: LaurentZ::monomial(c, e), den: LaurentZ::one() }
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_laurent(p: LaurentZ) -> Self {
        RatQ { num: p, den: LaurentZ::one() }
    }

    /// Canonicalizes `num / den`.
    pub fn from_parts(num: LaurentZ, den: LaurentZ) -> Result<Self, QFieldError> {
        if den.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &LaurentZ {
        &self.num
    }

    pub fn denom(&self) -> &LaurentZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Denominator is 1, i.e. the value lies in `ℤ[q, q⁻¹]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Lies in `ℤ[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one() && self.num.low_exp().unwrap_or(0) >= 0
    }

    pub fn as_laurent(&self) -> Option<&LaurentZ> {
        self.den.is_one().then_some(&self.num)
    }

    /// Full canonicalization including the gcd step.
    fn reduce(num: LaurentZ, den: LaurentZ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low_exp().unwrap();
        let num = num.shift(-shift);
        let den = den.shift(-shift);
        let g = dense_gcd(num.dense(), den.dense());
        if g.len() > 1 {
            let n = LaurentZ::from_coeffs(num.low_exp().unwrap(), dense_div_exact(num.dense(), &g));
            let d = LaurentZ::from_coeffs(0, dense_div_exact(den.dense(), &g));
            Self::normalize_units(n, d)
        } else {
            Self::normalize_units(num, den)
        }
    }

    /// Fixes the q-power, sign and integer content of an already coprime pair.
    fn normalize_units(num: LaurentZ, den: LaurentZ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low_exp().unwrap();
        let (num, den) = if shift != 0 { (num.shift(-shift), den.shift(-shift)) } else { (num, den) };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            RatQ { num, den }
        } else {
            RatQ { num: num.div_scalar_exact(&c), den: den.div_scalar_exact(&c) }
        }
    }

    pub fn recip(&self) -> Result<Self, QFieldError> {
        if self.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatQ) -> Result<Self, QFieldError> {
        Ok(self * &rhs.recip()?)
    }

    /// Multiplies by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> Self {
        RatQ { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalize_units(self.num.scale(c), self.den.clone())
    }

    pub fn div_int(&self, c: &BigInt) -> Result<Self, QFieldError> {
        if c.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::normalize_units(self.num.clone(), self.den.scale(c)))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::normalize_units(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    /// Substitutes `q ↦ q^k` (the Adams operation on scalars; `k = -1` is the
    /// conjugation `f(q) ↦ f(q⁻¹)`).
    pub fn adams(&self, k: i64) -> Result<Self, QFieldError> {
        if k == 0 {
            return Err(QFieldError::ZeroAdamsIndex);
        }
        if k == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        // Substitution is an injective ring map on ℚ[q], so coprimality survives.
        Ok(Self::normalize_units(self.num.substitute_power(k), self.den.substitute_power(k)))
    }

    /// `f(q) ↦ f(q⁻¹)`
    pub fn conj(&self) -> Self {
        self.adams(-1).expect("nonzero index")
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational, QFieldError> {
        let den = self.den.eval(q0).expect("denominator is an ordinary polynomial");
        if den.is_zero() {
            return Err(QFieldError::Pole { at: q0.to_string(), factor: self.den.to_string() });
        }
        let num = self.num.eval(q0).ok_or(QFieldError::NegativeExponentAtZero)?;
        Ok(num / den)
    }

    pub fn eval_at_int(&self, q0: i64) -> Result<BigRational, QFieldError> {
        self.eval_at(&BigRational::from_integer(q0.into()))
    }

    fn add_impl(&self, rhs: &RatQ, negate: bool) -> RatQ {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let combine = |x: &LaurentZ, y: &LaurentZ| if negate { x - y } else { x + y };
        if self.den.is_one() && rhs.den.is_one() {
            return RatQ { num: combine(&self.num, &rhs.num), den: LaurentZ::one() };
        }
        if self.den == rhs.den {
            return Self::reduce(combine(&self.num, &rhs.num), self.den.clone());
        }
        // Henrici: with g = gcd(b, d), gcd(a d/g + c b/g, b d/g) = gcd(that, g).
        let g = dense_gcd(self.den.dense(), rhs.den.dense());
        if g.len() == 1 {
            let num = combine(&(&self.num * &rhs.den), &(&rhs.num * &self.den));
            let den = &self.den * &rhs.den;
            return Self::normalize_units(num, den);
        }
        let b1 = LaurentZ::from_coeffs(0, dense_div_exact(self.den.dense(), &g));
        let d1 = LaurentZ::from_coeffs(0, dense_div_exact(rhs.den.dense(), &g));
        let num = combine(&(&self.num * &d1), &(&rhs.num * &b1));
        if num.is_zero() {
            return Self::zero();
        }
        let den_rest = &b1 * &rhs.den;
        let h = dense_gcd(num.dense(), &g);
        if h.len() > 1 {
            let n = LaurentZ::from_coeffs(num.low_exp().unwrap(), dense_div_exact(num.dense(), &h));
            let d = LaurentZ::from_coeffs(0, dense_div_exact(den_rest.dense(), &h));
            Self::normalize_units(n, d)
        } else {
            Self::normalize_units(num, den_rest)
        }
    }

    fn mul_impl(&self, rhs: &RatQ) -> RatQ {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatQ { num: &self.num * &rhs.num, den: LaurentZ::one() };
        }
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::normalize_units(&a * &c, &b * &d)
    }
}

/// Removes the common polynomial factor of a numerator and a denominator.
fn cancel(num: &LaurentZ, den: &LaurentZ) -> (LaurentZ, LaurentZ) {
    if den.is_one() || num.is_monomial() && den.low_exp() == Some(0) {
        return (num.clone(), den.clone());
    }
    let g = dense_gcd(num.dense(), den.dense());
    if g.len() == 1 {
        return (num.clone(), den.clone());
    }
    (
        LaurentZ::from_coeffs(num.low_exp().unwrap(), dense_div_exact(num.dense(), &g)),
        LaurentZ::from_coeffs(den.low_exp().unwrap(), dense_div_exact(den.dense(), &g)),
    )
}

/// Product of factors `(1 - q^k)` over the listed exponents, as a dense
/// polynomial helper for constructors elsewhere in the crate.
pub(crate) fn one_minus_q_powers(exps: impl IntoIterator<Item = i64>) -> LaurentZ {
    let mut acc = vec![BigInt::one()];
    let mut low = 0i64;
    for k in exps {
        assert!(k != 0);
        // 1 - q^k = -q^k (1 - q^{-k}) for k < 0
        if k > 0 {
            let mut f = vec![BigInt::zero(); k as usize + 1];
            f[0] = BigInt::one();
            f[k as usize] = -BigInt::one();
            acc = dense_mul(&acc, &f);
        } else {
            let m = (-k) as usize;
            let mut f = vec![BigInt::zero(); m + 1];
            f[0] = -BigInt::one();
            f[m] = BigInt::one();
            acc = dense_mul(&acc, &f);
            low += k;
        }
    }
    LaurentZ::from_coeffs(low, acc)
}

impl Default for RatQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RatQ {
    fn from(n: i64) -> Self {
        RatQ::from_int(n)
    }
}

impl From<LaurentZ> for RatQ {
    fn from(p: LaurentZ) -> Self {
        RatQ::from_laurent(p)
    }
}

impl Zero for RatQ {
    fn zero() -> Self {
        RatQ::zero()
    }
    fn is_zero(&self) -> bool {
        RatQ::is_zero(self)
    }
}

impl One for RatQ {
    fn one() -> Self {
        RatQ::one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:expr) => {
        impl $tr<&RatQ> for &RatQ {
            type Output = RatQ;
            fn $method(self, rhs: &RatQ) -> RatQ {
                $imp(self, rhs)
            }
        }
        impl $tr<RatQ> for RatQ {
            type Output = RatQ;
            fn $method(self, rhs: RatQ) -> RatQ {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&RatQ> for RatQ {
            type Output = RatQ;
            fn $method(self, rhs: &RatQ) -> RatQ {
                $imp(&self, rhs)
            }
        }
        impl $tr<RatQ> for &RatQ {
            type Output = RatQ;
            fn $method(self, rhs: RatQ) -> RatQ {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatQ, b: &RatQ| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &RatQ, b: &RatQ| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &RatQ, b: &RatQ| a.mul_impl(b));
forward_binop!(Div, div, |a: &RatQ, b: &RatQ| a.checked_div(b).expect("division by zero in Q(q)"));

impl AddAssign<&RatQ> for RatQ {
    fn add_assign(&mut self, rhs: &RatQ) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&RatQ> for RatQ {
    fn sub_assign(&mut self, rhs: &RatQ) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&RatQ> for RatQ {
    fn mul_assign(&mut self, rhs: &RatQ) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

impl std::iter::Sum for RatQ {
    fn sum<I: Iterator<Item = RatQ>>(iter: I) -> RatQ {
        iter.fold(RatQ::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for RatQ {
    fn product<I: Iterator<Item = RatQ>>(iter: I) -> RatQ {
        iter.fold(RatQ::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &LaurentZ| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
