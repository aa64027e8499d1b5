//! Adams operations, exp/log and the plethystic Exp/Log pair.

use num_bigint::BigInt;

use super::{diff, leq, total, DegreeBox, GradedSeries, SeriesError};
use crate::qfield::{qbinomial, qbinomial_inf, RatQ};

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl GradedSeries {
    /// `ψ_k`: `q ↦ q^k` in every coefficient and `x ↦ x^k` (also `y ↦ y^k`).
    pub fn adams(&self, k: u32) -> Result<Self, SeriesError> {
        assert!(k >= 1, "series Adams operations need k >= 1");
        let mut out = Vec::new();
        for (d, c) in &self.terms {
            let kd: Vec<u32> = d.iter().map(|x| x * k).collect();
            if self.bounds.contains(&kd) {
                out.push((kd, c.adams(k as i64)?));
            }
        }
        Ok(Self::from_terms(self.bounds.clone(), out))
    }

    fn require_constant(&self, want_one: bool) -> Result<(), SeriesError> {
        let c0 = self.constant_term();
        if want_one && !c0.is_one() {
            return Err(SeriesError::ConstantNotOne(c0.to_string()));
        }
        if !want_one && !c0.is_zero() {
            return Err(SeriesError::NonzeroConstant(c0.to_string()));
        }
        Ok(())
    }

    /// Ordinary exponential of a series without constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.require_constant(false)?;
        // Euler operator: |d| E_d = Σ_{0<a≤d} |a| g_a E_{d-a}
        self.triangular(RatQ::one(), |d, known| {
            let mut acc = RatQ::zero();
            for (a, ga) in &self.terms {
                if !leq(a, d) {
                    continue;
                }
                if let Some(e) = known.get(&diff(d, a)) {
                    acc += &(ga * e).mul_int(&BigInt::from(total(a)));
                }
            }
            acc.div_int(&BigInt::from(total(d))).expect("positive degree")
        })
    }

    /// Ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.require_constant(true)?;
        // |d| L_d = |d| f_d - Σ_{0<b<d} |d-b| L_{d-b} f_b
        let zero = vec![0; self.bounds.width()];
        self.triangular(RatQ::zero(), |d, known| {
            let n = BigInt::from(total(d));
            let mut acc = self.get(d).map(|f| f.mul_int(&n)).unwrap_or_else(RatQ::zero);
            for (b, fb) in &self.terms {
                if *b == zero || b == d || !leq(b, d) {
                    continue;
                }
                let rest = diff(d, b);
                if let Some(l) = known.get(&rest) {
                    acc -= &(l * fb).mul_int(&BigInt::from(total(&rest)));
                }
            }
            acc.div_int(&n).expect("positive degree")
        })
    }

    /// Plethystic exponential `Exp(f) = exp(Σ_k ψ_k(f)/k)`, `f_0 = 0`.
    pub fn plethystic_exp(&self) -> Result<Self, SeriesError> {
        self.require_constant(false)?;
        let mut sum = Self::zero(self.bounds.clone());
        for k in 1..=self.bounds.max_component().max(1) {
            let term = self.adams(k)?.map_coeffs(|c| c.div_int(&BigInt::from(k)).expect("k > 0"));
            sum = sum.add(&term)?;
        }
        sum.exp()
    }

    /// Plethystic logarithm `Log(f) = Σ_k μ(k)/k ψ_k(log f)`, `f_0 = 1`.
    pub fn plethystic_log(&self) -> Result<Self, SeriesError> {
        let l = self.log()?;
        let mut sum = Self::zero(self.bounds.clone());
        for k in 1..=self.bounds.max_component().max(1) {
            let mu = mobius(k);
            if mu == 0 {
                continue;
            }
            let k_big = BigInt::from(k);
            let term = l.adams(k)?.map_coeffs(|c| c.mul_int(&BigInt::from(mu)).div_int(&k_big).expect("k > 0"));
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }
}

/// One-variable series `Σ_{k≤N} [n,k] x^k`, or `Σ_{k≤N} [∞,k] x^k` when `n`
/// is `None`. These are the specializations `t = q^{n+1}` and `t = 0` of
/// Heine's `Exp((1-t)/(1-q) x)`.
pub fn heine_series(n: Option<i64>, max_degree: u32) -> GradedSeries {
    let bounds = DegreeBox::x_only(vec![max_degree]);
    let terms = (0..=max_degree).map(|k| {
        let c = match n {
            Some(n) => qbinomial(n, k as u64),
            None => qbinomial_inf(k as u64),
        };
        (vec![k], c)
    });
    GradedSeries::from_terms(bounds, terms)
}

/// One-variable q-Pochhammer series `(x;q)_n`: `∏_{k<n}(1-q^k x)` for
/// `n ≥ 0` and `∏_{k=n}^{-1}(1-q^k x)^{-1}` for `n < 0`.
pub fn pochhammer_series(n: i64, max_degree: u32) -> Result<GradedSeries, SeriesError> {
    let bounds = DegreeBox::x_only(vec![max_degree]);
    let factor = |k: i64| {
        GradedSeries::from_terms(bounds.clone(), [(vec![0], RatQ::one()), (vec![1], -RatQ::q_pow(k))])
    };
    let mut acc = GradedSeries::one(bounds.clone());
    if n >= 0 {
        for k in 0..n {
            acc = acc.mul(&factor(k))?;
        }
        Ok(acc)
    } else {
        for k in n..0 {
            acc = acc.mul(&factor(k))?;
        }
        acc.invert_unit()
    }
}
