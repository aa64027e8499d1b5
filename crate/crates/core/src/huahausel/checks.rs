//! Identity sweeps producing [`VerificationReport`]s.

use super::{
    hausel_ratio, kac_a_series, kac_table_with, positive_root_product, r_series, r_series_with, BracketReading,
    HuaError,
};
use crate::fermion::{fermionic_m, fermionic_n, gen_n};
use crate::gseries::GradedSeries;
use crate::qfield::RatQ;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rootdata::{RootData, RootVector, WeightVector};

fn base(identity: &str, nu: Option<&WeightVector>, xbox: &[u32]) -> ReportBuilder {
    let b = ReportBuilder::new(identity).param("box", xbox.to_vec());
    match nu {
        Some(nu) => b.param("nu", nu.0.clone()),
        None => b,
    }
}

/// Compares two series over every degree of the left-hand box.
fn sweep(b: &mut ReportBuilder, lhs: &GradedSeries, rhs: &GradedSeries) -> Result<(), HuaError> {
    for d in lhs.bounds().degrees() {
        b.compare(&d, &lhs.coefficient(&d)?, &rhs.coefficient(&d)?);
    }
    Ok(())
}

fn finish(b: ReportBuilder, run: impl FnOnce(&mut ReportBuilder) -> Result<(), HuaError>) -> VerificationReport {
    let mut b = b;
    match run(&mut b) {
        Ok(()) => b.finish(),
        Err(e) => b.fail(e),
    }
}

/// `n(ν, q⁻¹) = r(ν, q) r(0, q⁻¹)` on the box; `ν` may be any weight.
pub fn main_identity_check(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> VerificationReport {
    finish(base("main-identity", Some(nu), xbox), |b| {
        let lhs = gen_n(rd, nu, xbox).conj();
        let r0 = r_series(rd, &WeightVector::zero(rd.rank()), xbox);
        let rhs = r_series(rd, nu, xbox).mul(&r0.conj())?;
        sweep(b, &lhs, &rhs)
    })
}

/// Framed-quiver consistency of the Hausel formula:
/// (i) `a_{(α,1)}(Γ*) = (r(ν)/r(0))_α` and
/// (ii) `r_{(α,1)}(Γ*) = (r(ν)/(q-1))_α`, with Γ* the quiver framed by `ν`.
pub fn star_consistency(rd: &RootData, nu: &WeightVector, xbox: &[u32], reading: BracketReading) -> VerificationReport {
    let reading_name = match reading {
        BracketReading::Forward => "forward",
        BracketReading::Backward => "backward",
    };
    let b = base("star", Some(nu), xbox).param("bracket", reading_name);
    finish(b, |b| {
        if !nu.is_dominant() {
            return Err(HuaError::NotDominant(nu.to_string()));
        }
        let star = RootData::new(rd.quiver().enlarge(nu)?);
        let mut star_box = xbox.to_vec();
        star_box.push(1);
        let n = rd.rank();

        let r_nu = r_series_with(rd, nu, xbox, reading);
        let r_0 = r_series_with(rd, &WeightVector::zero(n), xbox, reading);
        let ratio = r_nu.mul(&r_0.invert_unit()?)?;
        let kac_star = kac_table_with(&star, &star_box, reading)?;
        let r_star = r_series_with(&star, &WeightVector::zero(n + 1), &star_box, reading);
        let inv_q_minus_one = (RatQ::q_pow(1) - RatQ::one()).recip()?;

        for alpha in r_nu.bounds().degrees() {
            let mut framed = alpha.clone();
            framed.push(1);
            b.compare(&framed, &kac_star.a(&framed)?, &ratio.coefficient(&alpha)?);
        }
        for alpha in r_nu.bounds().degrees() {
            let mut framed = alpha.clone();
            framed.push(1);
            b.compare(&framed, &r_star.coefficient(&framed)?, &(r_nu.coefficient(&alpha)? * &inv_q_minus_one));
        }
        Ok(())
    })
}

/// ADE only: (i) `r(0,q) r(0,q⁻¹) ∏_{Δ+}(1 - x^α)⁻¹ = 1` and
/// (ii) `r(ν)/r(0) = n(ν, q⁻¹) ∏_{Δ+}(1 - x^α)⁻¹`.
pub fn verma_expansion_check(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> VerificationReport {
    finish(base("verma", Some(nu), xbox), |b| {
        if !rd.is_finite_type() {
            return Err(HuaError::Root(crate::rootdata::RootDataError::NotFiniteType));
        }
        if !nu.is_dominant() {
            return Err(HuaError::NotDominant(nu.to_string()));
        }
        let verma = positive_root_product(rd, xbox)?.invert_unit()?;
        let r0 = r_series(rd, &WeightVector::zero(rd.rank()), xbox);
        let part1 = r0.mul(&r0.conj())?.mul(&verma)?;
        sweep(b, &part1, &GradedSeries::one(part1.bounds().clone()))?;
        let lhs = hausel_ratio(rd, nu, xbox)?;
        let rhs = gen_n(rd, nu, xbox).conj().mul(&verma)?;
        sweep(b, &lhs, &rhs)
    })
}

fn eval_series_at_zero(f: &GradedSeries) -> Result<GradedSeries, HuaError> {
    let mut terms = Vec::new();
    for (d, c) in f.terms() {
        terms.push((d.clone(), RatQ::from_rational(&c.eval_at_int(0)?)));
    }
    Ok(GradedSeries::from_terms(f.bounds().clone(), terms))
}

/// First Kac conjecture at the level of the Hausel formula, with
/// `ν = ν_scale·(1,…,1)`: `r(ν,0)_β = 0` for `0 < β`,
/// `(r(ν,0)·m(0))_α = m_α(0)`, and `m_α(0) = dim U(n₋)_α` read off
/// `∏_{Δ+}(1 - x^α)⁻¹`. Finite type only.
pub fn kac_conjecture_check(rd: &RootData, xbox: &[u32], nu_scale: i64) -> VerificationReport {
    finish(base("kac-conjecture", None, xbox).param("nu_scale", nu_scale), |b| {
        if !rd.is_finite_type() {
            return Err(HuaError::Root(crate::rootdata::RootDataError::NotFiniteType));
        }
        let nu = WeightVector(vec![nu_scale; rd.rank()]);
        b.set_param("nu", nu.0.clone());
        let m0 = eval_series_at_zero(&kac_a_series(rd, xbox)?.m)?;
        let r_nu0 = eval_series_at_zero(&r_series(rd, &nu, xbox))?;
        let pbw = positive_root_product(rd, xbox)?.invert_unit()?;
        let product = r_nu0.mul(&m0)?;
        for alpha in m0.bounds().degrees() {
            if alpha.iter().all(|&a| a == 0) {
                b.compare(&alpha, &r_nu0.coefficient(&alpha)?, &RatQ::one());
                continue;
            }
            b.compare(&alpha, &r_nu0.coefficient(&alpha)?, &RatQ::zero());
            b.compare(&alpha, &product.coefficient(&alpha)?, &m0.coefficient(&alpha)?);
            b.compare(&alpha, &m0.coefficient(&alpha)?, &pbw.coefficient(&alpha)?);
        }
        Ok(())
    })
}

/// Tabulates `m(ν,λ,q)` against `n(ν,λ,q)` for every dominant `λ = ν - Cβ`
/// with `β` in the box. Exploratory: the status records agreement, nothing
/// is asserted.
pub fn mn_conjecture_probe(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> VerificationReport {
    finish(base("mn-probe", Some(nu), xbox).keep_table(), |b| {
        if !nu.is_dominant() {
            return Err(HuaError::NotDominant(nu.to_string()));
        }
        let bounds = crate::gseries::DegreeBox::x_only(xbox.to_vec());
        for beta in bounds.degrees() {
            let root = RootVector(beta.iter().map(|&x| x as i64).collect());
            if !rd.weight_sub_root(nu, &root).is_dominant() {
                continue;
            }
            let m = fermionic_m(rd, nu, &root)?;
            let n = fermionic_n(rd, nu, &root);
            b.compare(&beta, &m, &n);
        }
        Ok(())
    })
}
