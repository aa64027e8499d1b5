//! Identity sweeps over the fermionic forms.

use super::{gen_n, gen_s, kleber_recursion, FermionError, Level};
use crate::qfield::RatQ;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rootdata::{RootData, RootDataError, WeightVector};

fn run(b: ReportBuilder, body: impl FnOnce(&mut ReportBuilder) -> Result<(), FermionError>) -> VerificationReport {
    let mut b = b;
    match body(&mut b) {
        Ok(()) => b.finish(),
        Err(e) => b.fail(e),
    }
}

fn base(identity: &str, nu: &WeightVector, xbox: &[u32]) -> ReportBuilder {
    ReportBuilder::new(identity).param("box", xbox.to_vec()).param("nu", nu.0.clone())
}

/// The first-column recursion against direct enumeration of `s(ν)`.
pub fn kleber_check(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> VerificationReport {
    run(base("kleber", nu, xbox), |b| {
        let lhs = kleber_recursion(rd, nu, xbox);
        let rhs = gen_s(rd, &Level::Finite(nu.clone()), xbox);
        for d in lhs.bounds().degrees() {
            b.compare(&d, &lhs.coefficient(&d)?, &rhs.coefficient(&d)?);
        }
        Ok(())
    })
}

/// `n(ν, w·λ) = (-1)^{l(w)} n(ν, λ)` for every `λ = ν - Cβ` with `β` in the
/// box and every Weyl group element `w`. Images with `ν - w·λ ∉ Q_+` must
/// give zero; images outside the box are skipped. Finite type only.
pub fn weyl_antisymmetry_check(rd: &RootData, nu: &WeightVector, xbox: &[u32]) -> VerificationReport {
    run(base("weyl", nu, xbox), |b| {
        let group = rd.weyl_group()?;
        let n = gen_n(rd, nu, xbox);
        for beta in n.bounds().degrees() {
            let root = crate::rootdata::RootVector(beta.iter().map(|&x| x as i64).collect());
            let lambda = rd.weight_sub_root(nu, &root);
            let base = n.coefficient(&beta)?;
            for word in &group {
                let (image, sign) = rd.weyl_dot(word, &lambda)?;
                let value = match rd.beta_from_weights(nu, &image) {
                    Ok(b2) => {
                        let Ok(d) = b2.0.iter().map(|&x| u32::try_from(x)).collect::<Result<Vec<u32>, _>>() else {
                            continue;
                        };
                        if !n.bounds().contains(&d) {
                            continue;
                        }
                        n.coefficient(&d)?
                    }
                    Err(RootDataError::NotInPositiveCone(_)) => RatQ::zero(),
                    Err(e) => return Err(e.into()),
                };
                b.compare(&beta, &value, &base.mul_int(&sign.into()));
            }
        }
        Ok(())
    })
}
