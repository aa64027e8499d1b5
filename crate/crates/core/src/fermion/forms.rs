use super::{require_dominant, Bracket, FermionError, TupleSum};
use crate::gseries::{DegreeBox, GradedSeries};
use crate::qfield::{qbinomial, qbinomial_inf, RatQ};
use crate::rootdata::{RootData, RootVector, WeightVector};

/// A weight, or the limit `ν → ∞` in which `[ν, m]` becomes `[∞, m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(WeightVector),
    Infinity,
}

impl Level {
    fn bracket(&self) -> Bracket {
        match self {
            Level::Finite(nu) => Bracket::Weight(nu.clone()),
            Level::Infinity => Bracket::Infinite,
        }
    }
}

/// The box `x ≤ N, y ≤ N` on which the two-block series live.
pub fn two_block_box(xbox: &[u32]) -> DegreeBox {
    DegreeBox::with_y(xbox.to_vec(), xbox.to_vec())
}

fn as_box(beta: &RootVector) -> Option<Vec<u32>> {
    beta.0.iter().map(|&b| u32::try_from(b).ok()).collect()
}

fn single_coefficient(sum: &TupleSum<'_>, beta: &RootVector) -> RatQ {
    let Some(target) = as_box(beta) else { return RatQ::zero() };
    sum.run(&target).into_iter().filter(|((x, _), _)| *x == target).map(|(_, v)| v).sum()
}

/// `n(ν, λ, q)` for `β = ν - λ` in root coordinates: the sum over all `τ`
/// with `|τ| = β` of `q^{-(ν,τ_1)} ∏_k q^{T(τ_k)} [ν - Σ_{l≤k} τ_l, τ_k - τ_{k+1}]`.
pub fn fermionic_n(rd: &RootData, nu: &WeightVector, beta: &RootVector) -> RatQ {
    let sum = TupleSum { rd, bracket: Bracket::Weight(nu.clone()), twist: Some(nu.clone()), dominant_only: false };
    single_coefficient(&sum, beta)
}

/// `m(ν, λ, q)`: as [`fermionic_n`] restricted to tuples whose partial
/// weights `ν - Σ_{l≤k} τ_l` are all dominant.
pub fn fermionic_m(rd: &RootData, nu: &WeightVector, beta: &RootVector) -> Result<RatQ, FermionError> {
    require_dominant("nu", nu)?;
    let sum = TupleSum { rd, bracket: Bracket::Weight(nu.clone()), twist: Some(nu.clone()), dominant_only: true };
    Ok(single_coefficient(&sum, beta))
}

/// [`fermionic_n`] addressed by `λ`; `ν - λ` must lie in `C·ℕ^I`.
pub fn fermionic_n_at(rd: &RootData, nu: &WeightVector, lambda: &WeightVector) -> Result<RatQ, FermionError> {
    let beta = rd.beta_from_weights(nu, lambda)?;
    Ok(fermionic_n(rd, nu, &beta))
}

/// [`fermionic_m`] addressed by `λ`.
pub fn fermionic_m_at(rd: &RootData, nu: &WeightVector, lambda: &WeightVector) -> Result<RatQ, FermionError> {
    let beta = rd.beta_from_weights(nu, lambda)?;
    fermionic_m(rd, nu, &beta)
}

/// `n(ν, q) = Σ_β n(ν, ν - Cβ, q) x^β` on the box.
pub fn gen_n(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> GradedSeries {
    let sum = TupleSum { rd, bracket: Bracket::Weight(nu.clone()), twist: Some(nu.clone()), dominant_only: false };
    let terms = sum.run(xbox).into_iter().map(|((x, _), v)| (x, v));
    GradedSeries::from_terms(DegreeBox::x_only(xbox.to_vec()), terms)
}

/// `s(ν)` (or `s` for [`Level::Infinity`]):
/// `Σ_τ x^{|τ|} y^{τ_1} ∏_k q^{T(τ_k)} [ν - Σ_{l≤k} τ_l, τ_k - τ_{k+1}]`.
/// No `q^{-(ν,τ_1)}` prefactor; that twist is applied by `Φ_ν`.
pub fn gen_s(rd: &RootData, level: &Level, xbox: &[u32]) -> GradedSeries {
    let sum = TupleSum { rd, bracket: level.bracket(), twist: None, dominant_only: false };
    let terms = sum.run(xbox).into_iter().map(|((mut x, y), v)| {
        x.extend(y);
        (x, v)
    });
    GradedSeries::from_terms(two_block_box(xbox), terms)
}

/// `p(ν) = Σ_α [ν, α] y^α` (or `p = Σ_α [∞, α] y^α`), in the two-block box.
pub fn gen_p(rd: &RootData, level: &Level, xbox: &[u32]) -> GradedSeries {
    let n = rd.rank();
    let bounds = two_block_box(xbox);
    let terms = DegreeBox::x_only(xbox.to_vec()).degrees().into_iter().map(|alpha| {
        let c: RatQ = (0..n)
            .map(|i| match level {
                Level::Finite(nu) => qbinomial(nu.0[i], alpha[i] as u64),
                Level::Infinity => qbinomial_inf(alpha[i] as u64),
            })
            .product();
        let mut d = vec![0; n];
        d.extend(alpha);
        (d, c)
    });
    GradedSeries::from_terms(bounds, terms)
}
