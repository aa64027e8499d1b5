//! The y-block operators `S_ν`, `T^{±1}`, `X`, the specialization `Φ_ν`
//! and coefficientwise conjugation.

use super::{GradedSeries, SeriesError};
use crate::rootdata::{pairing, RootData, RootVector, WeightVector};

impl GradedSeries {
    fn y_root(&self, d: &[u32]) -> RootVector {
        RootVector(d[self.bounds.rank()..].iter().map(|&x| x as i64).collect())
    }

    fn require_y(&self) -> Result<(), SeriesError> {
        if self.bounds.has_y() {
            Ok(())
        } else {
            Err(SeriesError::NoYBlock)
        }
    }

    /// `f(q) ↦ f(q⁻¹)` on every coefficient.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    /// `S_ν`: the coefficient at y-degree `α` gains `q^{(ν,α)}`.
    pub fn scale_by_pairing(&self, nu: &WeightVector) -> Result<Self, SeriesError> {
        self.require_y()?;
        assert_eq!(nu.len(), self.bounds.rank());
        Ok(self.map_terms(|d, c| Some((d.clone(), c.mul_q_pow(pairing(nu, &self.y_root(d)))))))
    }

    /// `T` (`sign = 1`) or `T⁻¹` (`sign = -1`): the coefficient at y-degree
    /// `α` gains `q^{±T(α)}`.
    pub fn tits_twist(&self, rd: &RootData, sign: i64) -> Result<Self, SeriesError> {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        self.require_y()?;
        Ok(self.map_terms(|d, c| Some((d.clone(), c.mul_q_pow(sign * rd.tits_form(&self.y_root(d)))))))
    }

    /// `X`: each term `x^β y^α` becomes `x^{α+β} y^α`.
    pub fn x_mark(&self) -> Result<Self, SeriesError> {
        self.require_y()?;
        let n = self.bounds.rank();
        Ok(self.map_terms(|d, c| {
            let mut e = d.clone();
            for i in 0..n {
                e[i] += d[n + i];
            }
            Some((e, c.clone()))
        }))
    }

    /// `Φ_ν`: forgets the y-grading, twisting by `q^{-(ν,β)}` where `β` was
    /// the y-degree. The result lives in the x-only box.
    pub fn specialize_phi(&self, nu: &WeightVector) -> Result<Self, SeriesError> {
        self.require_y()?;
        let n = self.bounds.rank();
        let terms: Vec<_> =
            self.terms.iter().map(|(d, c)| (d[..n].to_vec(), c.mul_q_pow(-pairing(nu, &self.y_root(d))))).collect();
        Ok(Self::from_terms(self.bounds.x_part(), terms))
    }

    /// Terms with y-degree exactly `alpha`, as an x-only series.
    pub fn y_slice(&self, alpha: &[u32]) -> Result<Self, SeriesError> {
        self.require_y()?;
        let n = self.bounds.rank();
        let terms: Vec<_> =
            self.terms.iter().filter(|(d, _)| d[n..] == *alpha).map(|(d, c)| (d[..n].to_vec(), c.clone())).collect();
        Ok(Self::from_terms(self.bounds.x_part(), terms))
    }

    /// Embeds an x-only series into a two-block box (y-degree 0).
    pub fn lift_to(&self, bounds: &super::DegreeBox) -> Self {
        assert_eq!(bounds.rank(), self.bounds.rank());
        let pad = bounds.width() - self.bounds.width();
        let terms = self.terms.iter().map(|(d, c)| {
            let mut e = d.clone();
            e.extend(std::iter::repeat_n(0, pad));
            (e, c.clone())
        });
        Self::from_terms(bounds.clone(), terms)
    }
}
