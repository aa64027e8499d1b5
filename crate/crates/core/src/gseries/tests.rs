use proptest::prelude::*;

use super::*;
use crate::qfield::{qbinomial, qbinomial_inf, LaurentZ};
use crate::rootdata::{RootData, WeightVector};

fn r(s: &str) -> RatQ {
    s.parse().unwrap()
}

fn bx(n: u32) -> DegreeBox {
    DegreeBox::x_only(vec![n])
}

/// One-variable series from a coefficient list.
fn uni(n: u32, cs: &[&str]) -> GradedSeries {
    GradedSeries::from_terms(bx(n), cs.iter().enumerate().map(|(k, c)| (vec![k as u32], r(c))))
}

fn geometric(n: u32, ratio: &str) -> GradedSeries {
    let q = r(ratio);
    let mut c = RatQ::one();
    let mut terms = Vec::new();
    for k in 0..=n {
        terms.push((vec![k], c.clone()));
        c = &c * &q;
    }
    GradedSeries::from_terms(bx(n), terms)
}

#[test]
fn ring_examples() {
    let a = uni(2, &["1", "1"]);
    let b = uni(2, &["1", "-1"]);
    assert_eq!(a.mul(&b).unwrap(), uni(2, &["1", "0", "-1"]));

    let g = geometric(5, "1");
    assert_eq!(g.mul(&b.truncate(bx(2)).lift_box(bx(5))).unwrap(), GradedSeries::one(bx(5)));

    let c = uni(2, &["1", "q"]);
    let d = uni(2, &["1", "q^-1"]);
    assert_eq!(c.mul(&d).unwrap(), uni(2, &["1", "q+q^-1", "1"]));
}

impl GradedSeries {
    fn lift_box(&self, b: DegreeBox) -> Self {
        GradedSeries::from_terms(b, self.terms().map(|(d, c)| (d.clone(), c.clone())))
    }
}

#[test]
fn box_mismatch_is_an_error() {
    let a = GradedSeries::one(bx(2));
    let b = GradedSeries::one(bx(3));
    assert!(matches!(a.add(&b), Err(SeriesError::BoxMismatch(..))));
    assert!(matches!(a.mul(&b), Err(SeriesError::BoxMismatch(..))));
}

#[test]
fn coefficient_examples() {
    let f = uni(3, &["1", "2"]);
    assert_eq!(f.coefficient(&[1]).unwrap(), r("2"));
    assert_eq!(GradedSeries::one(bx(3)).coefficient(&[2]).unwrap(), RatQ::zero());
    assert!(matches!(f.coefficient(&[4]), Err(SeriesError::OutsideBox { .. })));
}

#[test]
fn invert_unit_examples() {
    assert_eq!(uni(6, &["1", "-1"]).invert_unit().unwrap(), geometric(6, "1"));
    assert_eq!(uni(6, &["1", "-q"]).invert_unit().unwrap(), geometric(6, "q"));
    assert_eq!(uni(6, &["2"]).invert_unit().unwrap(), uni(6, &["1/2"]));
    assert_eq!(uni(6, &["0", "1"]).invert_unit(), Err(SeriesError::NotUnit));
}

#[test]
fn adams_examples() {
    let f = uni(4, &["0", "q/(1-q)"]);
    assert_eq!(f.adams(2).unwrap(), uni(4, &["0", "0", "q^2/(1-q^2)"]));

    let b = DegreeBox::with_y(vec![4], vec![4]);
    let g = GradedSeries::from_terms(b.clone(), [(vec![0, 0], RatQ::one()), (vec![1, 0], RatQ::one()), (vec![0, 1], RatQ::one())]);
    let g3 = GradedSeries::from_terms(b, [(vec![0, 0], RatQ::one()), (vec![3, 0], RatQ::one()), (vec![0, 3], RatQ::one())]);
    assert_eq!(g.adams(3).unwrap(), g3);
}

#[test]
fn plethystic_exp_examples() {
    let x = uni(6, &["0", "1"]);
    assert_eq!(x.plethystic_exp().unwrap(), uni(6, &["1", "-1"]).invert_unit().unwrap());

    let f = uni(6, &["0", "1/(1-q)"]);
    let expect = GradedSeries::from_terms(bx(6), (0..=6).map(|k| (vec![k], qbinomial_inf(k as u64))));
    assert_eq!(f.plethystic_exp().unwrap(), expect);

    assert_eq!(uni(6, &["0", "1", "-1"]).plethystic_exp().unwrap(), uni(6, &["1", "1"]));
    assert!(matches!(uni(6, &["1", "1"]).plethystic_exp(), Err(SeriesError::NonzeroConstant(_))));
}

#[test]
fn plethystic_log_examples() {
    assert_eq!(geometric(6, "1").plethystic_log().unwrap(), uni(6, &["0", "1"]));
    assert_eq!(uni(6, &["1", "1"]).plethystic_log().unwrap(), uni(6, &["0", "1", "-1"]));
    assert!(matches!(uni(6, &["2", "1"]).plethystic_log(), Err(SeriesError::ConstantNotOne(_))));
}

#[test]
fn exp_log_are_inverse_on_one_variable() {
    let f = uni(5, &["0", "3", "-1/2", "q"]);
    assert_eq!(f.exp().unwrap().log().unwrap(), f);
}

#[test]
fn heine_examples() {
    let h = heine_series(None, 4);
    assert_eq!(h.coefficient(&[2]).unwrap(), r("1/(1-q)") * r("1/(1-q^2)"));
    assert_eq!(heine_series(Some(1), 4).coefficient(&[1]).unwrap(), r("1+q"));
    assert_eq!(heine_series(Some(-1), 4), GradedSeries::one(bx(4)));
}

#[test]
fn heine_identity() {
    for n in -2..=3 {
        let t = RatQ::one() - RatQ::q_pow(n + 1);
        let arg = GradedSeries::monomial(bx(6), vec![1], t * r("1/(1-q)"));
        assert_eq!(heine_series(Some(n), 6), arg.plethystic_exp().unwrap(), "n = {n}");
    }
    let arg = uni(6, &["0", "1/(1-q)"]);
    assert_eq!(heine_series(None, 6), arg.plethystic_exp().unwrap());
}

#[test]
fn pochhammer_series_examples() {
    assert_eq!(pochhammer_series(0, 4).unwrap(), GradedSeries::one(bx(4)));
    assert_eq!(pochhammer_series(2, 4).unwrap(), uni(4, &["1", "-1-q", "q"]));
    // (x;q)_{-1} = 1/(1 - q^{-1} x)
    assert_eq!(pochhammer_series(-1, 4).unwrap(), geometric(4, "q^-1"));
}

/// Euler: `(x;q)_∞ = Σ_k (-1)^k q^{k(k-1)/2} x^k / (q;q)_k`.
#[test]
fn exp_of_x_over_q_minus_one_is_infinite_pochhammer() {
    let f = uni(6, &["0", "1/(q-1)"]).plethystic_exp().unwrap();
    for k in 0..=6u64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let expect = RatQ::monomial(sign, (k * (k - k.min(1)) / 2) as i64) * qbinomial_inf(k);
        assert_eq!(f.coefficient(&[k as u32]).unwrap(), expect, "x^{k}");
    }
}

/// `Exp(x/(1-q)) · ∏_{k≤K}(1 - q^k x) ≡ 1` up to q-adic order `K`.
#[test]
fn pochhammer_coherence_in_a_q_window() {
    let n = 5;
    let big_k = 7;
    let e = uni(n, &["0", "1/(1-q)"]).plethystic_exp().unwrap();
    let prod = pochhammer_series(big_k + 1, n).unwrap();
    let check = e.mul(&prod).unwrap().sub(&GradedSeries::one(bx(n))).unwrap();
    for (d, c) in check.terms() {
        let val = c.numer().low_exp().unwrap() - c.denom().low_exp().unwrap();
        assert!(val > big_k, "x^{d:?}: {c} has q-order {val}");
    }
}

#[test]
fn pairing_and_twist_examples() {
    let b = DegreeBox::with_y(vec![3], vec![3]);
    let c = r("1/(1-q)");
    let y = GradedSeries::y_var(b.clone(), 0).scale(&c);
    let nu = WeightVector(vec![2]);
    assert_eq!(y.scale_by_pairing(&nu).unwrap(), y.scale(&RatQ::q_pow(2)));
    assert_eq!(y.scale_by_pairing(&WeightVector(vec![0])).unwrap(), y);

    let a1 = RootData::type_a(1);
    let y2 = GradedSeries::monomial(b.clone(), vec![0, 2], c.clone());
    assert_eq!(y2.tits_twist(&a1, 1).unwrap(), y2.scale(&RatQ::q_pow(4)));
    assert_eq!(y2.tits_twist(&a1, 1).unwrap().tits_twist(&a1, -1).unwrap(), y2);

    let a2 = RootData::type_a(2);
    let b2 = DegreeBox::with_y(vec![2, 2], vec![2, 2]);
    let m = GradedSeries::monomial(b2, vec![0, 0, 1, 1], RatQ::one());
    assert_eq!(m.tits_twist(&a2, 1).unwrap(), m.scale(&RatQ::q_pow(1)));
}

#[test]
fn x_mark_examples() {
    let b = DegreeBox::with_y(vec![3], vec![3]);
    let y = GradedSeries::y_var(b.clone(), 0);
    let xy = GradedSeries::monomial(b.clone(), vec![1, 1], RatQ::one());
    assert_eq!(y.x_mark().unwrap(), xy);
    assert_eq!(GradedSeries::one(b.clone()).x_mark().unwrap(), GradedSeries::one(b));
}

#[test]
fn conj_examples() {
    let f = uni(3, &["0", "q"]);
    assert_eq!(f.conj(), uni(3, &["0", "q^-1"]));
    let h = heine_series(None, 3);
    assert_eq!(h.conj().coefficient(&[1]).unwrap(), r("-q/(1-q)"));
    assert_eq!(h.conj().conj(), h);
}

#[test]
fn specialize_phi_examples() {
    let b = DegreeBox::with_y(vec![3], vec![3]);
    let xy = GradedSeries::monomial(b.clone(), vec![1, 1], RatQ::one());
    assert_eq!(xy.specialize_phi(&WeightVector(vec![2])).unwrap(), GradedSeries::monomial(bx(3), vec![1], RatQ::q_pow(-2)));
    assert_eq!(xy.specialize_phi(&WeightVector(vec![0])).unwrap(), GradedSeries::x_var(bx(3), 0));
}

#[test]
fn operators_need_the_y_block() {
    let f = GradedSeries::one(bx(2));
    assert_eq!(f.x_mark(), Err(SeriesError::NoYBlock));
    assert_eq!(f.scale_by_pairing(&WeightVector(vec![1])), Err(SeriesError::NoYBlock));
}

#[test]
fn text_form_is_lexicographic() {
    let b = DegreeBox::with_y(vec![1, 1], vec![1, 1]);
    let f = GradedSeries::from_terms(
        b,
        [(vec![1, 0, 1, 0], r("q")), (vec![0, 0, 0, 0], r("1")), (vec![0, 1, 0, 0], r("1/(1-q)"))],
    );
    assert_eq!(f.to_text(), "x^[0,0] y^[0,0] : 1\nx^[0,1] y^[0,0] : -1/(-1+q)\nx^[1,0] y^[1,0] : q\n");
}

#[test]
fn parallel_and_sequential_levels_agree_with_naive_product() {
    // naive O(n²) product over all degree pairs as an oracle for `mul`
    let b = DegreeBox::x_only(vec![3, 2]);
    let f = GradedSeries::from_terms(b.clone(), b.degrees().into_iter().map(|d| {
        let c = RatQ::from_laurent(LaurentZ::from_terms([(d[0] as i64, 1), (0, d[1] as i64 + 1)]));
        (d, c)
    }));
    let g = f.conj().add(&GradedSeries::one(b.clone())).unwrap();
    let mut naive = Vec::new();
    for (a, ca) in f.terms() {
        for (c, cc) in g.terms() {
            naive.push((a.iter().zip(c).map(|(x, y)| x + y).collect(), ca * cc));
        }
    }
    assert_eq!(f.mul(&g).unwrap(), GradedSeries::from_terms(b, naive));
}

const RANK: usize = 2;

fn arb_series(bound: u32, zero_constant: bool) -> impl Strategy<Value = GradedSeries> {
    let b = DegreeBox::x_only(vec![bound; RANK]);
    prop::collection::vec(((0..=bound, 0..=bound), -3i64..=3, -1i64..=1), 1..6).prop_map(move |ts| {
        let terms = ts.into_iter().filter_map(|((i, j), c, e)| {
            if zero_constant && i == 0 && j == 0 {
                return None;
            }
            Some((vec![i, j], RatQ::monomial(c, e)))
        });
        GradedSeries::from_terms(b.clone(), terms)
    })
}

fn arb_two_block() -> impl Strategy<Value = GradedSeries> {
    let b = DegreeBox::with_y(vec![2, 2], vec![2, 2]);
    prop::collection::vec((prop::collection::vec(0u32..=2, 4), -3i64..=3, -1i64..=1), 0..6).prop_map(move |ts| {
        GradedSeries::from_terms(b.clone(), ts.into_iter().map(|(d, c, e)| (d, RatQ::monomial(c, e))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn log_exp_round_trip(f in arb_series(3, true)) {
        let e = f.plethystic_exp().unwrap();
        prop_assert_eq!(e.plethystic_log().unwrap(), f.clone());
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn exp_log_round_trip(f in arb_series(3, true)) {
        let g = f.exp().unwrap();
        prop_assert_eq!(g.plethystic_log().unwrap().plethystic_exp().unwrap(), g);
    }

    #[test]
    fn exp_is_additive(f in arb_series(3, true), g in arb_series(3, true)) {
        let lhs = f.add(&g).unwrap().plethystic_exp().unwrap();
        let rhs = f.plethystic_exp().unwrap().mul(&g.plethystic_exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(f in arb_series(2, false), g in arb_series(2, false), h in arb_series(2, false)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn inverse_of_unit(f in arb_series(3, true)) {
        let u = f.add(&GradedSeries::one(f.bounds().clone())).unwrap();
        prop_assert_eq!(u.mul(&u.invert_unit().unwrap()).unwrap(), GradedSeries::one(f.bounds().clone()));
    }

    #[test]
    fn adams_semigroup(f in arb_series(6, false)) {
        prop_assert_eq!(f.adams(2).unwrap().adams(3).unwrap(), f.adams(6).unwrap());
        prop_assert_eq!(f.adams(1).unwrap(), f.clone());
        prop_assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn operator_laws(f in arb_two_block(), g in arb_two_block(), a in -2i64..=2, b in -2i64..=2) {
        let rd = RootData::type_a(2);
        let nu = WeightVector(vec![a, b]);
        let mu = WeightVector(vec![b, -a]);
        let snu = |s: &GradedSeries| s.scale_by_pairing(&nu).unwrap();
        prop_assert_eq!(snu(&f).scale_by_pairing(&mu).unwrap(), f.scale_by_pairing(&nu.add(&mu)).unwrap());
        prop_assert_eq!(snu(&f).scale_by_pairing(&nu.scale(-1)).unwrap(), f.clone());
        prop_assert_eq!(snu(&f.tits_twist(&rd, 1).unwrap()), snu(&f).tits_twist(&rd, 1).unwrap());
        prop_assert_eq!(snu(&f.x_mark().unwrap()), snu(&f).x_mark().unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().x_mark().unwrap(), f.x_mark().unwrap().mul(&g.x_mark().unwrap()).unwrap());
        prop_assert_eq!(snu(&f).specialize_phi(&nu).unwrap(), f.specialize_phi(&WeightVector(vec![0, 0])).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().scale_by_pairing(&nu).unwrap(), snu(&f).mul(&snu(&g)).unwrap());
    }
}

#[test]
fn qbinomial_series_matches_product() {
    // Σ_k [n,k] x^k = Exp((1-q^{n+1})/(1-q) x) = ∏_{k=0}^{n} (1 - q^k x)^{-1}
    let n = 3;
    let prod = pochhammer_series(n + 1, 5).unwrap().invert_unit().unwrap();
    for k in 0..=5u32 {
        assert_eq!(prod.coefficient(&[k]).unwrap(), qbinomial(n, k as u64));
    }
}
