//! Depth-first enumeration of column sequences `τ_1 ≥ τ_2 ≥ … > 0` with
//! `|τ|` inside a box, accumulating the product of brackets along the way.

use std::collections::BTreeMap;

use crate::par;
use crate::qfield::{qbinomial_inf, qbinomial_laurent, RatQ};
use crate::rootdata::{pairing, RootData, RootVector, WeightVector};

/// Which bracket the summand uses.
#[derive(Clone, Debug)]
pub(crate) enum Bracket {
    /// `[ν - Σ_{l≤k} τ_l, τ_k - τ_{k+1}]`
    Weight(WeightVector),
    /// `[∞, τ_k - τ_{k+1}]`
    Infinite,
    /// `[∞, τ_k - τ_{k-1}]` with `τ_0 = 0`; a negative entry gives 0, as
    /// `1/(q;q)_m` does for `m < 0`.
    InfiniteBackward,
}

/// Sum over partition tuples of
/// `q^{-(μ,τ_1)} ∏_k q^{T(τ_k)} bracket_k`, keyed by `(|τ|, τ_1)`.
pub(crate) struct TupleSum<'a> {
    pub rd: &'a RootData,
    pub bracket: Bracket,
    /// `μ` in the prefactor `q^{-(μ,τ_1)}`, if present.
    pub twist: Option<WeightVector>,
    /// Keep only tuples whose partial weights `ν - Σ_{l≤k} τ_l` are all
    /// dominant (only meaningful for [`Bracket::Weight`]).
    pub dominant_only: bool,
}

pub(crate) type TermMap = BTreeMap<(Vec<u32>, Vec<u32>), RatQ>;

fn root(v: &[u32]) -> RootVector {
    RootVector(v.iter().map(|&x| x as i64).collect())
}

/// Every vector `0 ≤ c ≤ bound` except zero.
fn nonzero_below(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |k| {
                    let mut p = p.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out.retain(|c| c.iter().any(|&x| x > 0));
    out
}

fn weight_bracket(w: &WeightVector, m: &[u32]) -> RatQ {
    let mut acc = RatQ::one();
    for (&wi, &mi) in w.0.iter().zip(m) {
        if mi == 0 {
            continue;
        }
        let b = qbinomial_laurent(wi, mi as u64);
        if b.is_zero() {
            return RatQ::zero();
        }
        acc = acc * RatQ::from_laurent(b);
    }
    acc
}

fn inf_bracket(m: &[i64]) -> RatQ {
    if m.iter().any(|&x| x < 0) {
        return RatQ::zero();
    }
    m.iter().filter(|&&x| x > 0).map(|&x| qbinomial_inf(x as u64)).product()
}

fn signed_diff(a: &[u32], b: &[u32]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect()
}

struct Node<'s> {
    prev: &'s [u32],
    weight: Option<WeightVector>,
    size: Vec<u32>,
    acc: RatQ,
}

impl TupleSum<'_> {
    /// Bracket for the step from column `prev` to column `next`, where
    /// `weight` is the partial weight including `prev`.
    fn step(&self, weight: Option<&WeightVector>, prev: &[u32], next: &[u32]) -> RatQ {
        match &self.bracket {
            Bracket::Weight(_) => {
                let m: Vec<u32> = prev.iter().zip(next).map(|(a, b)| a - b).collect();
                weight_bracket(weight.expect("weight tracked"), &m)
            }
            Bracket::Infinite => inf_bracket(&signed_diff(prev, next)),
            Bracket::InfiniteBackward => inf_bracket(&signed_diff(next, prev)),
        }
    }

    fn advance(&self, weight: Option<&WeightVector>, c: &[u32]) -> Option<Option<WeightVector>> {
        match weight {
            None => Some(None),
            Some(w) => {
                let w = self.rd.weight_sub_root(w, &root(c));
                if self.dominant_only && !w.is_dominant() {
                    None
                } else {
                    Some(Some(w))
                }
            }
        }
    }

    fn visit(&self, node: Node<'_>, tau1: &[u32], xbox: &[u32], out: &mut TermMap) {
        let zero = vec![0; node.prev.len()];
        let closing = self.step(node.weight.as_ref(), node.prev, &zero);
        if !closing.is_zero() {
            let key = (node.size.clone(), tau1.to_vec());
            let v = &node.acc * &closing;
            match out.get_mut(&key) {
                Some(x) => *x += &v,
                None => {
                    out.insert(key, v);
                }
            }
        }
        let room: Vec<u32> = node.prev.iter().zip(xbox.iter().zip(&node.size)).map(|(&p, (&b, &s))| p.min(b - s)).collect();
        for c in nonzero_below(&room) {
            let trans = self.step(node.weight.as_ref(), node.prev, &c);
            if trans.is_zero() {
                continue;
            }
            let Some(weight) = self.advance(node.weight.as_ref(), &c) else { continue };
            let acc = (&node.acc * &trans).mul_q_pow(self.rd.tits_form(&root(&c)));
            let size = node.size.iter().zip(&c).map(|(a, b)| a + b).collect();
            self.visit(Node { prev: &c, weight, size, acc }, tau1, xbox, out);
        }
    }

    fn first_column(&self, c: &[u32], xbox: &[u32]) -> TermMap {
        let mut out = TermMap::new();
        let start = match &self.bracket {
            Bracket::Weight(nu) => Some(nu.clone()),
            _ => None,
        };
        let Some(weight) = self.advance(start.as_ref(), c) else { return out };
        let mut e = self.rd.tits_form(&root(c));
        if let Some(mu) = &self.twist {
            e -= pairing(mu, &root(c));
        }
        let mut acc = RatQ::q_pow(e);
        if let Bracket::InfiniteBackward = self.bracket {
            acc = acc * inf_bracket(&signed_diff(c, &vec![0; c.len()]));
        }
        self.visit(Node { prev: c, weight, size: c.to_vec(), acc }, c, xbox, &mut out);
        out
    }

    /// All terms with `|τ| ≤ xbox`, keyed by `(|τ|, τ_1)`. First columns are
    /// processed in parallel.
    pub(crate) fn run(&self, xbox: &[u32]) -> TermMap {
        let zero = vec![0; xbox.len()];
        let mut out = TermMap::new();
        out.insert((zero.clone(), zero), RatQ::one());
        let firsts = nonzero_below(xbox);
        for part in par::map(&firsts, |c| self.first_column(c, xbox)) {
            for (k, v) in part {
                match out.get_mut(&k) {
                    Some(x) => *x += &v,
                    None => {
                        out.insert(k, v);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}
