use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn r(s: &str) -> RatQ {
    s.parse().unwrap()
}

/// Independent route to `[n, m]`: build the defining fraction and let the
/// generic gcd canonicalization reduce it.
fn qbinomial_by_fraction(n: i64, m: u64) -> RatQ {
    let num = one_minus_q_powers((1..=m as i64).map(|k| n + k).filter(|&e| e != 0));
    let vanishes = (1..=m as i64).any(|k| n + k == 0);
    if vanishes {
        return RatQ::zero();
    }
    RatQ::from_parts(num, one_minus_q_powers(1..=m as i64)).unwrap()
}

#[test]
fn telescoping_sum() {
    let a = r("1/(1-q)");
    let b = r("q/(1-q)");
    assert_eq!(&a - &b, RatQ::one());
    // q/(q-1) written with a negative leading denominator coefficient
    let c = RatQ::from_parts(LaurentZ::monomial(1, 1), LaurentZ::from_terms([(1, 1), (0, -1)])).unwrap();
    assert_eq!(&a + &c, RatQ::one());
}

#[test]
fn laurent_inverse_monomial() {
    assert_eq!(RatQ::q_pow(1) * RatQ::q_pow(-1), RatQ::one());
}

#[test]
fn gcd_cancellation() {
    let x = r("(1-q^2)/(1-q)");
    assert_eq!(x, r("1+q"));
    assert!(x.is_polynomial());
    // cross-multiplication agrees
    assert_eq!(r("1-q^2"), &x * &r("1-q"));
}

#[test]
fn canonical_denominator_shape() {
    let x = RatQ::from_parts(LaurentZ::from_terms([(0, 2)]), LaurentZ::from_terms([(-3, -4), (-1, 6)])).unwrap();
    // 2 / (-4 q^-3 + 6 q^-1) = -q^3 / (2 - 3 q^2)  ->  q^3/(-2+3q^2)
    assert_eq!(x.denom().low_exp(), Some(0));
    assert!(x.denom().leading_coeff().unwrap() > &0.into());
    assert_eq!(x.to_string(), "q^3/(-2+3*q^2)");
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(RatQ::one().checked_div(&RatQ::zero()), Err(QFieldError::DivisionByZero));
    assert_eq!(RatQ::zero().recip(), Err(QFieldError::DivisionByZero));
    assert!(RatQ::from_parts(LaurentZ::one(), LaurentZ::zero()).is_err());
}

#[test]
fn adams_examples() {
    assert_eq!(r("1/(1-q)").adams(-1).unwrap(), r("-q/(1-q)"));
    assert_eq!(RatQ::q_pow(2).adams(3).unwrap(), RatQ::q_pow(6));
    assert_eq!(r("1+q").adams(2).unwrap(), r("1+q^2"));
    assert_eq!(r("1+q").adams(0), Err(QFieldError::ZeroAdamsIndex));
}

#[test]
fn eval_examples() {
    assert_eq!(r("1/(1-q)").eval_at_int(0).unwrap(), BigRational::from_integer(1.into()));
    assert_eq!(r("q+1").eval_at_int(2).unwrap(), BigRational::from_integer(3.into()));
    assert_eq!(r("q^-1").eval_at_int(0), Err(QFieldError::NegativeExponentAtZero));
    assert!(matches!(r("1/(1-q)").eval_at_int(1), Err(QFieldError::Pole { .. })));
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(r("1/(1-q)").eval_at(&half).unwrap(), BigRational::from_integer(2.into()));
}

#[test]
fn qbinomial_examples() {
    assert_eq!(qbinomial(1, 1), r("1+q"));
    assert_eq!(qbinomial(-1, 1), RatQ::zero());
    assert_eq!(qbinomial(2, 2), r("1+q+2*q^2+q^3+q^4"));
    assert_eq!(qbinomial(-2, 1), r("-q^-1"));
    assert_eq!(qbinomial(7, 0), RatQ::one());
}

#[test]
fn qbinomial_matches_fraction_route() {
    for n in -9..=9 {
        for m in 0..=5 {
            assert_eq!(qbinomial(n, m), qbinomial_by_fraction(n, m), "[{n},{m}]");
        }
    }
}

#[test]
fn qbinomial_inf_examples() {
    assert_eq!(qbinomial_inf(0), RatQ::one());
    assert_eq!(qbinomial_inf(1), r("1/(1-q)"));
    assert_eq!(qbinomial_inf(2), r("1/(1-q)") * r("1/(1-q^2)"));
}

#[test]
fn qbinomial_inf_two_is_reciprocal_pochhammer() {
    let expect = RatQ::from_parts(LaurentZ::one(), one_minus_q_powers([1, 2])).unwrap();
    assert_eq!(qbinomial_inf(2), expect);
    assert_eq!(qbinomial_inf(2).to_string(), "1/(1-q-q^2+q^3)");
}

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(1, 1, 2).unwrap(), RatQ::from_laurent(one_minus_q_powers([1, 2])));
    assert_eq!(pochhammer(1, 1, 0).unwrap(), RatQ::one());
    assert!(matches!(pochhammer(1, 1, -1), Err(QFieldError::VanishingFactor { k: -1, .. })));
    // (q^3;q)_{-2} = 1/((1-q)(1-q^2))
    assert_eq!(pochhammer(1, 3, -2).unwrap(), qbinomial_inf(2));
}

#[test]
fn parse_display_round_trip_examples() {
    for s in ["0", "1", "-q^-1", "2*q^3", "(1+q)/(1-q^2)", "q^-1/(1-q)", "1/2", "-3*q/(2+q^5)"] {
        let x = r(s);
        assert_eq!(r(&x.to_string()), x, "{s}");
    }
    assert_eq!(r("2q^3"), r("2*q^3"));
    assert!("q^".parse::<RatQ>().is_err());
    assert!("(1+q".parse::<RatQ>().is_err());
    assert!("1/0".parse::<RatQ>().is_err());
}

fn arb_laurent() -> impl Strategy<Value = LaurentZ> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 0..5))
        .prop_map(|(low, cs)| LaurentZ::from_coeffs(low, cs.into_iter().map(Into::into).collect()))
}

fn arb_ratq() -> impl Strategy<Value = RatQ> {
    (arb_laurent(), arb_laurent())
        .prop_filter_map("nonzero denominator", |(n, d)| RatQ::from_parts(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent(a in arb_ratq()) {
        let again = RatQ::from_parts(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(&a.to_string().parse::<RatQ>().unwrap(), &a);
    }

    #[test]
    fn field_laws(a in arb_ratq(), b in arb_ratq(), c in arb_ratq()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), RatQ::one());
        }
    }

    #[test]
    fn equality_agrees_with_cross_multiplication(a in arb_ratq(), b in arb_ratq()) {
        let cross = a.numer() * b.denom() == b.numer() * a.denom();
        prop_assert_eq!(cross, a == b);
    }

    #[test]
    fn adams_is_a_homomorphism(a in arb_ratq(), b in arb_ratq(), j in 1i64..4, k in -3i64..4) {
        prop_assume!(k != 0);
        prop_assert_eq!((&a * &b).adams(k).unwrap(), a.adams(k).unwrap() * b.adams(k).unwrap());
        prop_assert_eq!((&a + &b).adams(k).unwrap(), a.adams(k).unwrap() + b.adams(k).unwrap());
        prop_assert_eq!(a.adams(1).unwrap(), a.clone());
        prop_assert_eq!(a.adams(k).unwrap().adams(j).unwrap(), a.adams(j * k).unwrap());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn qbinomial_symmetry(n in 0i64..8, m in 0u64..8) {
        prop_assert_eq!(qbinomial(n, m), qbinomial(m as i64, n as u64));
    }

    #[test]
    fn qbinomial_pascal_step(n in 1i64..9, m in 0u64..6) {
        let ratio = RatQ::from_parts(one_minus_q_powers([n + m as i64]), one_minus_q_powers([n])).unwrap();
        prop_assert_eq!(qbinomial(n, m), qbinomial(n - 1, m) * ratio);
    }

    #[test]
    fn qbinomial_vanishing_band(n in -10i64..10, m in 0u64..6) {
        let band = -(m as i64) <= n && n <= -1;
        prop_assert_eq!(qbinomial(n, m).is_zero(), band);
        if n >= 0 {
            let x = qbinomial(n, m);
            prop_assert!(x.is_polynomial());
            prop_assert!(x.numer().terms().all(|(_, c)| c > &0.into()));
        }
    }
}
