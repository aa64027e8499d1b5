//! `s(ν)` from the recursion
//! `s(ν)_α = q^{T(α)} x^α Σ_{β≤α} [ν - Cα, α - β] s(ν - Cα)_β`
//! with `s(μ)_0 = 1`, i.e. stripping the first column of `τ`.

use std::collections::HashMap;

use super::forms::two_block_box;
use crate::gseries::{DegreeBox, GradedSeries};
use crate::qfield::{qbinomial, RatQ};
use crate::rootdata::{RootData, RootVector, WeightVector};

type Key = (Vec<i64>, Vec<u32>, Vec<u32>);

struct Kleber<'a> {
    rd: &'a RootData,
    memo: HashMap<Key, GradedSeries>,
}

fn below(v: &[u32]) -> Vec<Vec<u32>> {
    DegreeBox::x_only(v.to_vec()).degrees()
}

impl Kleber<'_> {
    /// `s(ν)_α` as an x-series on the box `xbox`.
    fn coefficient(&mut self, nu: &WeightVector, alpha: &[u32], xbox: &[u32]) -> GradedSeries {
        let bounds = DegreeBox::x_only(xbox.to_vec());
        if alpha.iter().all(|&a| a == 0) {
            return GradedSeries::one(bounds);
        }
        if alpha.iter().zip(xbox).any(|(a, b)| a > b) {
            return GradedSeries::zero(bounds);
        }
        let key = (nu.0.clone(), alpha.to_vec(), xbox.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let a_root = RootVector(alpha.iter().map(|&a| a as i64).collect());
        let shifted = self.rd.weight_sub_root(nu, &a_root);
        let rest: Vec<u32> = xbox.iter().zip(alpha).map(|(b, a)| b - a).collect();
        let mut inner = GradedSeries::zero(DegreeBox::x_only(rest.clone()));
        for beta in below(alpha) {
            let c: RatQ =
                shifted.0.iter().zip(alpha.iter().zip(&beta)).map(|(&w, (&a, &b))| qbinomial(w, (a - b) as u64)).product();
            if c.is_zero() {
                continue;
            }
            let s = self.coefficient(&shifted, &beta, &rest);
            inner = inner.add(&s.scale(&c)).expect("same box");
        }
        let t = self.rd.tits_form(&a_root);
        let terms = inner.terms().map(|(d, c)| (d.iter().zip(alpha).map(|(x, a)| x + a).collect(), c.mul_q_pow(t)));
        let out = GradedSeries::from_terms(bounds, terms.collect::<Vec<_>>());
        self.memo.insert(key, out.clone());
        out
    }
}

/// All `y^α` coefficients of `s(ν)` on the two-block box, computed by the
/// first-column recursion rather than by enumerating partition tuples.
pub fn kleber_recursion(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> GradedSeries {
    let mut k = Kleber { rd, memo: HashMap::new() };
    let mut terms = Vec::new();
    for alpha in below(xbox) {
        for (x, c) in k.coefficient(nu, &alpha, xbox).terms() {
            let mut d = x.clone();
            d.extend(&alpha);
            terms.push((d, c.clone()));
        }
    }
    GradedSeries::from_terms(two_block_box(xbox), terms)
}
