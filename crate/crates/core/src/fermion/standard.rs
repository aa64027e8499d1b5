//! The fermionic form in its configuration ("standard") presentation:
//! a sum over `m = (m_k ∈ Q_+)` with vacancy numbers
//! `p_k(m) = Σ_l min(k,l)(ν_l - C m_l)`.

use num_bigint::BigInt;

use super::{require_dominant, FermionError};
use crate::qfield::{qbinomial, RatQ};
use crate::rootdata::{pairing, RootData, RootDataError, RootVector, WeightVector};

fn min_kl(k: usize, l: usize) -> i64 {
    k.min(l) as i64 + 1
}

/// Configurations `(m_1, …, m_K)` with `Σ_k k m_k = β`.
fn configurations(beta: &[i64]) -> Vec<Vec<RootVector>> {
    let kmax = beta.iter().copied().max().unwrap_or(0).max(0) as usize;
    let n = beta.len();
    let mut out = Vec::new();
    fn go(k: usize, rem: Vec<i64>, acc: &mut Vec<RootVector>, out: &mut Vec<Vec<RootVector>>, n: usize) {
        if k == 0 {
            if rem.iter().all(|&r| r == 0) {
                let mut m = acc.clone();
                m.reverse();
                out.push(m);
            }
            return;
        }
        // m_k ranges over the box rem / k
        let bounds: Vec<i64> = rem.iter().map(|&r| r / k as i64).collect();
        let mut choice = vec![0i64; n];
        loop {
            let next: Vec<i64> = rem.iter().zip(&choice).map(|(r, c)| r - c * k as i64).collect();
            acc.push(RootVector(choice.clone()));
            go(k - 1, next, acc, out, n);
            acc.pop();
            let mut i = 0;
            while i < n && choice[i] == bounds[i] {
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            choice[i] += 1;
        }
    }
    go(kmax, beta.to_vec(), &mut Vec::new(), &mut out, n);
    out
}

/// `m(ν, λ, q) = Σ_m q^{c(m)} ∏_k [p_k(m), m_k]` over configurations with
/// `Σ_k k(ν_k - C m_k) = λ` and every `p_k(m)` dominant, where
/// `c(m) = Σ_{k,l} min(k,l) ½(m_k, m_l) - Σ_{k,l} min(k,l)(ν_k, m_l)`.
///
/// `nu_seq[k-1]` is `ν_k`. Returns 0 when `Σ_k k ν_k - λ` is not in
/// `C·ℕ^I`.
pub fn standard_form_m(rd: &RootData, nu_seq: &[WeightVector], lambda: &WeightVector) -> Result<RatQ, FermionError> {
    for nu in nu_seq {
        require_dominant("nu_k", nu)?;
    }
    require_dominant("lambda", lambda)?;
    let n = rd.rank();
    let mut target = WeightVector::zero(n);
    for (k, nu) in nu_seq.iter().enumerate() {
        target = target.add(&nu.scale(k as i64 + 1));
    }
    let target = target.sub(lambda);
    let beta = match rd.solve_root(&target) {
        Ok(b) if b.is_nonnegative() => b,
        Ok(_) | Err(RootDataError::NotInPositiveCone(_)) => return Ok(RatQ::zero()),
        Err(e) => return Err(e.into()),
    };
    let zero_w = WeightVector::zero(n);
    let mut total = RatQ::zero();
    for m in configurations(&beta.0) {
        let len = m.len().max(nu_seq.len());
        let nu_at = |l: usize| nu_seq.get(l).unwrap_or(&zero_w);
        let m_at = |l: usize| m.get(l).cloned().unwrap_or_else(|| RootVector::zero(n));
        let vacancies: Vec<WeightVector> = (0..len.max(1))
            .map(|k| {
                let mut p = WeightVector::zero(n);
                for l in 0..len {
                    p = p.add(&rd.weight_sub_root(nu_at(l), &m_at(l)).scale(min_kl(k, l)));
                }
                p
            })
            .collect();
        if !vacancies.iter().all(WeightVector::is_dominant) {
            continue;
        }
        let mut twice_c = 0i64;
        for k in 0..len {
            for l in 0..len {
                let w = min_kl(k, l);
                twice_c += w * rd.bilinear(&m_at(k), &m_at(l));
                twice_c -= 2 * w * pairing(nu_at(k), &m_at(l));
            }
        }
        debug_assert_eq!(twice_c % 2, 0);
        let mut term = RatQ::q_pow(twice_c / 2);
        for (k, mk) in m.iter().enumerate() {
            for i in 0..n {
                term = term * qbinomial(vacancies[k].0[i], mk.0[i] as u64);
            }
        }
        total += &term;
    }
    Ok(total)
}

/// `Σ_{k,l≥1} min(k,l) n_k m_l` with `n_k = π_k - π_{k+1}` and
/// `m_k = τ_k - τ_{k+1}`; equals `Σ_k π_k τ_k`.
pub fn min_pairing_sum(pi: &[u32], tau: &[u32]) -> BigInt {
    let diffs = |p: &[u32]| -> Vec<i64> {
        (0..p.len()).map(|k| p[k] as i64 - p.get(k + 1).copied().unwrap_or(0) as i64).collect()
    };
    let (n, m) = (diffs(pi), diffs(tau));
    let mut s = BigInt::from(0);
    for (k, nk) in n.iter().enumerate() {
        for (l, ml) in m.iter().enumerate() {
            s += min_kl(k, l) * nk * ml;
        }
    }
    s
}
