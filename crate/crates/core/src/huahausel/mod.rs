//! Hua's r-series, Kac polynomials, the Hausel generating function and the
//! identity checks that tie them to the fermionic forms.

mod checks;

use thiserror::Error;

use crate::fermion::{Bracket, FermionError, TupleSum};
use crate::gseries::{DegreeBox, GradedSeries, SeriesError};
use crate::qfield::{QFieldError, RatQ};
use crate::rootdata::{RootData, RootDataError, RootVector, WeightVector};

pub use checks::{
    kac_conjecture_check, main_identity_check, mn_conjecture_probe, star_consistency, verma_expansion_check,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HuaError {
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("degree {alpha:?} is outside the box")]
    OutsideBox { alpha: Vec<u32> },
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] QFieldError),
    #[error(transparent)]
    Fermion(#[from] FermionError),
}

/// Which index the `[∞, ·]` bracket of the r-series uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BracketReading {
    /// `[∞, τ_k - τ_{k+1}]`
    #[default]
    Forward,
    /// `[∞, τ_k - τ_{k-1}]` with `τ_0 = 0`: the misprinted variant, kept so
    /// that its inconsistency can be demonstrated.
    Backward,
}

fn x_box(rd: &RootData, xbox: &[u32]) -> DegreeBox {
    assert_eq!(rd.rank(), xbox.len(), "box rank must match the quiver");
    DegreeBox::x_only(xbox.to_vec())
}

/// `r(ν, q)`, where
/// `r(ν, q⁻¹) = Σ_τ x^{|τ|} q^{-(ν,τ_1)} ∏_k q^{T(τ_k)} [∞, τ_k - τ_{k+1}]`.
pub fn r_series(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> GradedSeries {
    r_series_with(rd, nu, xbox, BracketReading::Forward)
}

pub fn r_series_with(rd: &RootData, nu: &WeightVector, xbox: &[u32], reading: BracketReading) -> GradedSeries {
    let bracket = match reading {
        BracketReading::Forward => Bracket::Infinite,
        BracketReading::Backward => Bracket::InfiniteBackward,
    };
    let sum = TupleSum { rd, bracket, twist: Some(nu.clone()), dominant_only: false };
    let terms = sum.run(xbox).into_iter().map(|((x, _), v)| (x, v.conj()));
    GradedSeries::from_terms(x_box(rd, xbox), terms)
}

/// Kac polynomials `a_α` and representation counts `m_α` on a box.
#[derive(Clone, Debug)]
pub struct KacTable {
    a: GradedSeries,
    m: GradedSeries,
}

impl KacTable {
    pub fn bounds(&self) -> &DegreeBox {
        self.a.bounds()
    }

    /// `a_α`; zero at `α = 0`.
    pub fn a(&self, alpha: &[u32]) -> Result<RatQ, HuaError> {
        self.a.coefficient(alpha).map_err(|_| HuaError::OutsideBox { alpha: alpha.to_vec() })
    }

    /// `m_α`; one at `α = 0`.
    pub fn m(&self, alpha: &[u32]) -> Result<RatQ, HuaError> {
        self.m.coefficient(alpha).map_err(|_| HuaError::OutsideBox { alpha: alpha.to_vec() })
    }

    pub fn a_series(&self) -> &GradedSeries {
        &self.a
    }

    pub fn m_series(&self) -> &GradedSeries {
        &self.m
    }
}

/// `a = (q - 1) Log r(0, q)`, inverting Hua's `Exp(a/(q-1)) = r(0, q)`, and
/// `m = Exp(a)`. Fails if some `a_α` is not an integer polynomial.
pub fn kac_a_series(rd: &RootData, xbox: &[u32]) -> Result<KacTable, HuaError> {
    kac_table_with(rd, xbox, BracketReading::Forward)
}

pub(crate) fn kac_table_with(rd: &RootData, xbox: &[u32], reading: BracketReading) -> Result<KacTable, HuaError> {
    let r = r_series_with(rd, &WeightVector::zero(rd.rank()), xbox, reading);
    let q_minus_one = RatQ::q_pow(1) - RatQ::one();
    let a = r.plethystic_log()?.scale(&q_minus_one);
    for (alpha, c) in a.terms() {
        if !c.is_polynomial() {
            return Err(HuaError::Consistency(format!("a_{alpha:?} = {c} is not a polynomial")));
        }
    }
    let m = a.plethystic_exp()?;
    Ok(KacTable { a, m })
}

/// The `m` block of [`kac_a_series`].
pub fn rep_count_series(rd: &RootData, xbox: &[u32]) -> Result<GradedSeries, HuaError> {
    Ok(kac_a_series(rd, xbox)?.m)
}

fn require_dominant(nu: &WeightVector) -> Result<(), HuaError> {
    if nu.is_dominant() {
        Ok(())
    } else {
        Err(HuaError::NotDominant(nu.to_string()))
    }
}

/// `r(ν, q) / r(0, q) = Σ_α q^{-d(α,ν)} P(𝓜(α,ν), q) x^α`.
pub fn hausel_ratio(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> Result<GradedSeries, HuaError> {
    require_dominant(nu)?;
    let r0 = r_series(rd, &WeightVector::zero(rd.rank()), xbox);
    Ok(r_series(rd, nu, xbox).mul(&r0.invert_unit()?)?)
}

/// Counting polynomial of the quiver variety `𝓜(α, ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareEntry {
    pub alpha: RootVector,
    pub d: i64,
    pub poly: RatQ,
}

/// Checks that `poly` is a polynomial with nonnegative integer coefficients
/// and degree at most `2d`.
fn check_poincare(entry: &PoincareEntry) -> Result<(), HuaError> {
    let p = &entry.poly;
    if p.is_zero() {
        return Ok(());
    }
    let bad = |why: &str| Err(HuaError::Consistency(format!("P at alpha={} is {p}: {why}", entry.alpha)));
    if !p.is_polynomial() {
        return bad("not a polynomial");
    }
    if p.numer().terms().any(|(_, c)| c.sign() == num_bigint::Sign::Minus) {
        return bad("negative coefficient");
    }
    if p.numer().high_exp().unwrap_or(0) > 2 * entry.d {
        return bad("degree exceeds 2d");
    }
    Ok(())
}

/// `P = q^{d(α,ν)} · (r(ν)/r(0))_α`, validated as a counting polynomial.
pub fn poincare_polynomial(
    rd: &RootData,
    alpha: &RootVector,
    nu: &WeightVector,
    xbox: &[u32],
) -> Result<PoincareEntry, HuaError> {
    let ratio = hausel_ratio(rd, nu, xbox)?;
    poincare_from_ratio(rd, &ratio, alpha, nu)
}

/// [`poincare_polynomial`] for every `α` in the box, sharing one ratio.
pub fn poincare_table(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> Result<Vec<PoincareEntry>, HuaError> {
    let ratio = hausel_ratio(rd, nu, xbox)?;
    ratio
        .bounds()
        .degrees()
        .into_iter()
        .map(|d| poincare_from_ratio(rd, &ratio, &RootVector(d.iter().map(|&x| x as i64).collect()), nu))
        .collect()
}

fn poincare_from_ratio(
    rd: &RootData,
    ratio: &GradedSeries,
    alpha: &RootVector,
    nu: &WeightVector,
) -> Result<PoincareEntry, HuaError> {
    let deg: Vec<u32> = alpha.0.iter().map(|&a| u32::try_from(a).unwrap_or(u32::MAX)).collect();
    let c = ratio.coefficient(&deg).map_err(|_| HuaError::OutsideBox { alpha: deg.clone() })?;
    let d = rd.d_exponent(alpha, nu);
    let entry = PoincareEntry { alpha: alpha.clone(), d, poly: c.mul_q_pow(d) };
    check_poincare(&entry)?;
    Ok(entry)
}

/// `∏_{α∈Δ+} (1 - x^α)` on the box (finite type only).
pub fn positive_root_product(rd: &RootData, xbox: &[u32]) -> Result<GradedSeries, HuaError> {
    let bounds = x_box(rd, xbox);
    let mut acc = GradedSeries::one(bounds.clone());
    for root in rd.positive_roots()? {
        let deg: Option<Vec<u32>> = root.0.iter().map(|&a| u32::try_from(a).ok()).collect();
        let deg = deg.expect("positive roots are nonnegative");
        let factor = GradedSeries::from_terms(bounds.clone(), [(vec![0; xbox.len()], RatQ::one()), (deg, -RatQ::one())]);
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}
