//! End-to-end runs through the public API: quiver file to verified report.

use proptest::prelude::*;
use qferm::fermion::{gen_n, gen_s, Level};
use qferm::fforacle::{burnside_iso_classes, verify_m_polynomial};
use qferm::huahausel::{kac_a_series, main_identity_check, r_series, star_consistency, BracketReading};
use qferm::qfield::RatQ;
use qferm::rootdata::{RootData, RootVector, WeightVector};

fn load(name: &str) -> RootData {
    let path = format!("{}/../../quivers/{name}.json", env!("CARGO_MANIFEST_DIR"));
    RootData::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn shipped_quivers_match_builtins() {
    assert_eq!(load("a1").cartan(), RootData::type_a(1).cartan());
    assert_eq!(load("a3").cartan(), RootData::type_a(3).cartan());
    assert_eq!(load("d4").cartan(), RootData::type_d4().cartan());
    assert_eq!(load("kronecker").cartan(), RootData::kronecker(2).cartan());
    assert_eq!(load("kronecker3").cartan(), RootData::kronecker(3).cartan());
    for name in ["a1", "a2", "a3", "d4", "kronecker", "kronecker3"] {
        let rd = load(name);
        assert_eq!(RootData::from_json(&rd.quiver().to_json()).unwrap().quiver(), rd.quiver());
    }
}

#[test]
fn main_identity_on_d4() {
    let d4 = load("d4");
    for nu in [[0, 0, 0, 0], [1, 0, 1, 0], [0, -1, 1, 1]] {
        let rep = main_identity_check(&d4, &WeightVector(nu.to_vec()), &[1, 2, 1, 1]);
        assert!(rep.is_verified(), "{rep:?}");
    }
}

/// Kac polynomials of A3 and D4 detect roots, and the m-counts agree with
/// orbit counts where the oracle is within budget.
#[test]
fn a3_counts_match_the_oracle() {
    let a3 = load("a3");
    let m = kac_a_series(&a3, &[1, 2, 1]).unwrap();
    assert_eq!(m.a(&[1, 1, 1]).unwrap(), RatQ::one());
    assert_eq!(m.a(&[1, 2, 1]).unwrap(), RatQ::zero());
    let count = burnside_iso_classes(a3.quiver(), &RootVector(vec![1, 2, 1]), 2).unwrap();
    let value = m.m(&[1, 2, 1]).unwrap().eval_at_int(2).unwrap();
    assert_eq!(value, num_rational::BigRational::from_integer(count));
    assert!(verify_m_polynomial(&load("kronecker3"), &RootVector(vec![1, 1]), &[2, 3, 5]).is_verified());
}

#[test]
fn star_consistency_beyond_a1() {
    let a2 = load("a2");
    for nu in [[1, 0], [1, 1], [0, 2]] {
        let rep = star_consistency(&a2, &WeightVector(nu.to_vec()), &[2, 2], BracketReading::Forward);
        assert!(rep.is_verified(), "{rep:?}");
    }
    let rep = star_consistency(&load("kronecker"), &WeightVector(vec![1, 0]), &[2, 2], BracketReading::Forward);
    assert!(rep.is_verified(), "{rep:?}");
}

/// `n(ν) = Φ_ν(s(ν))` through the public series API.
#[test]
fn n_is_phi_of_s_nu() {
    let rd = load("kronecker");
    for nu in [[1, 1], [2, -1]] {
        let nu = WeightVector(nu.to_vec());
        let s_nu = gen_s(&rd, &Level::Finite(nu.clone()), &[3, 3]);
        assert_eq!(s_nu.specialize_phi(&nu).unwrap(), gen_n(&rd, &nu, &[3, 3]));
    }
}

#[test]
fn reports_are_deterministic() {
    let rd = load("a2");
    let nu = WeightVector(vec![1, -1]);
    let a = main_identity_check(&rd, &nu, &[3, 3]).without_timing().to_json();
    let b = main_identity_check(&rd, &nu, &[3, 3]).without_timing().to_json();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn main_identity_random_weights(a in -3i64..=3, b in -3i64..=3, m in 1usize..=3) {
        let rd = RootData::kronecker(m);
        let rep = main_identity_check(&rd, &WeightVector(vec![a, b]), &[3, 3]);
        prop_assert!(rep.is_verified(), "{:?}", rep);
    }

    #[test]
    fn r_series_constant_term_is_one(a in -3i64..=3, b in -3i64..=3) {
        let r = r_series(&RootData::type_a(2), &WeightVector(vec![a, b]), &[2, 2]);
        prop_assert_eq!(r.constant_term(), RatQ::one());
    }
}
