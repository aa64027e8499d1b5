//! Brute-force counts of quiver representations over prime fields.
//!
//! The number of `GL_α(F_p)`-orbits on `Rep_α(F_p)` is computed by Burnside
//! averaging: `#orbits = |G|⁻¹ Σ_g ∏_h p^{dim ker(x ↦ g_t x − x g_s)}`.
//! A naive orbit partition is kept as a cross-check for tiny cases.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::huahausel::{rep_count_series, HuaError};
use crate::par;
use crate::qfield::RatQ;
use crate::report::{ReportBuilder, VerificationReport};
use crate::rootdata::{Quiver, RootData, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unsupported prime {0}; expected 2, 3 or 5")]
    UnsupportedPrime(u64),
    #[error("dimension vector {0} does not match the quiver")]
    BadDimension(String),
    #[error("state space p^{exponent} = {size} exceeds budget {budget}")]
    StateSpace { exponent: u64, size: String, budget: u64 },
    #[error("group order {order} exceeds budget {budget}")]
    GroupOrder { order: String, budget: u64 },
    #[error(transparent)]
    Hua(#[from] HuaError),
}

/// The prime field `F_p` for `p ∈ {2, 3, 5}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, OracleError> {
        match p {
            2 | 3 | 5 => Ok(PrimeField { p }),
            _ => Err(OracleError::UnsupportedPrime(p)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Rank of a row-major `rows × cols` matrix over `F_p`.
    fn rank(&self, mut m: Vec<u64>, rows: usize, cols: usize) -> usize {
        let p = self.p;
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else { continue };
            for k in 0..cols {
                m.swap(rank * cols + k, piv * cols + k);
            }
            let inv = self.inverse(m[rank * cols + c]);
            for k in 0..cols {
                m[rank * cols + k] = m[rank * cols + k] * inv % p;
            }
            for r in 0..rows {
                let f = m[r * cols + c];
                if r != rank && f != 0 {
                    for k in 0..cols {
                        m[r * cols + k] = (m[r * cols + k] + (p - f) * m[rank * cols + k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn inverse(&self, a: u64) -> u64 {
        (1..self.p).find(|&b| a * b % self.p == 1).expect("nonzero element of a field")
    }
}

/// Limits on the work the oracle is willing to do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub state_budget: u64,
    pub group_budget: u64,
    /// Also partition the state space into orbits directly and require
    /// agreement with the Burnside count.
    pub naive_check: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { state_budget: 1_000_000, group_budget: 100_000, naive_check: false }
    }
}

/// `|GL_α(F_p)| = ∏_i ∏_{k<α_i} (p^{α_i} − p^k)`.
pub fn gl_order(alpha: &RootVector, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut acc = BigInt::one();
    for &a in alpha.as_slice() {
        let a = a.max(0) as u32;
        let top = p.pow(a);
        for k in 0..a {
            acc *= &top - p.pow(k);
        }
    }
    acc
}

/// All invertible `n × n` matrices over `F_p`, row-major.
fn general_linear(field: PrimeField, n: usize) -> Vec<Vec<u64>> {
    let p = field.p;
    let total = p.pow((n * n) as u32);
    (0..total)
        .map(|mut code| {
            (0..n * n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d
                })
                .collect::<Vec<u64>>()
        })
        .filter(|m| field.rank(m.clone(), n, n) == n)
        .collect()
}

fn mat_mul(p: u64, a: &[u64], b: &[u64], n: usize, k: usize, m: usize) -> Vec<u64> {
    let mut out = vec![0; n * m];
    for i in 0..n {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i * m + j] = (out[i * m + j] + x * b[l * m + j]) % p;
            }
        }
    }
    out
}

struct Setup {
    field: PrimeField,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    groups: Vec<Vec<Vec<u64>>>,
    order: usize,
}

impl Setup {
    fn new(quiver: &Quiver, alpha: &RootVector, p: u64, config: &OracleConfig) -> Result<Self, OracleError> {
        let field = PrimeField::new(p)?;
        if alpha.len() != quiver.rank() || !alpha.is_nonnegative() {
            return Err(OracleError::BadDimension(alpha.to_string()));
        }
        let dims: Vec<usize> = alpha.as_slice().iter().map(|&a| a as usize).collect();
        let arrows = quiver.arrows().to_vec();
        let exponent: u64 = arrows.iter().map(|&(s, t)| (dims[s] * dims[t]) as u64).sum();
        let size = BigInt::from(p).pow(exponent as u32);
        if size > BigInt::from(config.state_budget) {
            return Err(OracleError::StateSpace { exponent, size: size.to_string(), budget: config.state_budget });
        }
        let order = gl_order(alpha, p);
        if order > BigInt::from(config.group_budget) {
            return Err(OracleError::GroupOrder { order: order.to_string(), budget: config.group_budget });
        }
        let groups: Vec<_> = dims.iter().map(|&n| general_linear(field, n)).collect();
        let order = groups.iter().map(Vec::len).product();
        Ok(Setup { field, dims, arrows, groups, order })
    }

    /// The group element with mixed-radix index `code`, one matrix per vertex.
    fn element(&self, mut code: usize) -> Vec<&[u64]> {
        self.groups
            .iter()
            .map(|g| {
                let m = &g[code % g.len()];
                code /= g.len();
                m.as_slice()
            })
            .collect()
    }

    /// `log_p #Fix(g)`: kernel dimensions of `x ↦ g_t x − x g_s` summed over arrows.
    fn fixed_exponent(&self, g: &[&[u64]]) -> usize {
        let p = self.field.p;
        self.arrows
            .iter()
            .map(|&(s, t)| {
                let (a, b) = (self.dims[t], self.dims[s]);
                let n = a * b;
                if n == 0 {
                    return 0;
                }
                // Column `(i, j)` is the image of the elementary matrix E_ij.
                let mut m = vec![0u64; n * n];
                for i in 0..a {
                    for j in 0..b {
                        let col = i * b + j;
                        for r in 0..a {
                            m[(r * b + j) * n + col] = (m[(r * b + j) * n + col] + g[t][r * a + i]) % p;
                        }
                        for c in 0..b {
                            m[(i * b + c) * n + col] = (m[(i * b + c) * n + col] + p - g[s][j * b + c]) % p;
                        }
                    }
                }
                n - self.field.rank(m, n, n)
            })
            .sum()
    }

    fn burnside(&self) -> BigInt {
        let codes: Vec<usize> = (0..self.order).collect();
        let exps = par::map(&codes, |&c| self.fixed_exponent(&self.element(c)));
        let p = BigInt::from(self.field.p);
        let total: BigInt = exps.into_iter().map(|e| p.pow(e as u32)).sum();
        let order = BigInt::from(self.order);
        debug_assert!((&total % &order).is_zero());
        total / order
    }

    /// Direct orbit partition of the representation space.
    fn naive(&self) -> BigInt {
        let p = self.field.p;
        let shapes: Vec<(usize, usize)> = self.arrows.iter().map(|&(s, t)| (self.dims[t], self.dims[s])).collect();
        let entries: usize = shapes.iter().map(|&(a, b)| a * b).sum();
        let size = p.pow(entries as u32) as usize;
        let decode = |mut code: usize| -> Vec<Vec<u64>> {
            shapes
                .iter()
                .map(|&(a, b)| {
                    (0..a * b)
                        .map(|_| {
                            let d = (code % p as usize) as u64;
                            code /= p as usize;
                            d
                        })
                        .collect()
                })
                .collect()
        };
        let encode = |point: &[Vec<u64>]| -> usize {
            point.iter().flatten().rev().fold(0, |acc, &d| acc * p as usize + d as usize)
        };
        let inverses: Vec<Vec<Vec<u64>>> = self
            .groups
            .iter()
            .zip(&self.dims)
            .map(|(g, &n)| {
                g.iter()
                    .map(|m| {
                        g.iter().find(|h| mat_mul(p, m, h, n, n, n) == identity(n)).expect("group element").clone()
                    })
                    .collect()
            })
            .collect();
        let mut seen = vec![false; size];
        let mut orbits = 0u64;
        for start in 0..size {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let x = decode(start);
            for code in 0..self.order {
                let mut c = code;
                let idx: Vec<usize> = self
                    .groups
                    .iter()
                    .map(|g| {
                        let i = c % g.len();
                        c /= g.len();
                        i
                    })
                    .collect();
                let y: Vec<Vec<u64>> = self
                    .arrows
                    .iter()
                    .zip(&x)
                    .map(|(&(s, t), m)| {
                        let (a, b) = (self.dims[t], self.dims[s]);
                        let gx = mat_mul(p, &self.groups[t][idx[t]], m, a, a, b);
                        mat_mul(p, &gx, &inverses[s][idx[s]], a, b, b)
                    })
                    .collect();
                seen[encode(&y)] = true;
            }
        }
        BigInt::from(orbits)
    }
}

fn identity(n: usize) -> Vec<u64> {
    (0..n * n).map(|k| u64::from(k / n == k % n)).collect()
}

/// Number of isomorphism classes of `α`-dimensional representations of the
/// quiver over `F_p`, with the default budgets.
pub fn burnside_iso_classes(quiver: &Quiver, alpha: &RootVector, p: u64) -> Result<BigInt, OracleError> {
    count_iso_classes(quiver, alpha, p, &OracleConfig::default())
}

pub fn count_iso_classes(
    quiver: &Quiver,
    alpha: &RootVector,
    p: u64,
    config: &OracleConfig,
) -> Result<BigInt, OracleError> {
    let setup = Setup::new(quiver, alpha, p, config)?;
    let count = setup.burnside();
    if config.naive_check {
        let direct = setup.naive();
        assert_eq!(count, direct, "Burnside and direct orbit counts disagree");
    }
    Ok(count)
}

/// Direct orbit partition only; for cross-checking the Burnside count.
pub fn naive_iso_classes(
    quiver: &Quiver,
    alpha: &RootVector,
    p: u64,
    config: &OracleConfig,
) -> Result<BigInt, OracleError> {
    Ok(Setup::new(quiver, alpha, p, config)?.naive())
}

/// `m_α(p)` from the Hua/Exp stack against the orbit count, for each prime.
pub fn verify_m_polynomial(rd: &RootData, alpha: &RootVector, primes: &[u64]) -> VerificationReport {
    let mut b = ReportBuilder::new("oracle")
        .keep_table()
        .param("dim", alpha.0.clone())
        .param("primes", primes.to_vec());
    let run = |b: &mut ReportBuilder| -> Result<(), OracleError> {
        let xbox: Vec<u32> = alpha
            .as_slice()
            .iter()
            .map(|&a| u32::try_from(a).map_err(|_| OracleError::BadDimension(alpha.to_string())))
            .collect::<Result<_, _>>()?;
        if xbox.len() != rd.rank() {
            return Err(OracleError::BadDimension(alpha.to_string()));
        }
        let m = rep_count_series(rd, &xbox)?.coefficient(&xbox).map_err(HuaError::from)?;
        for &p in primes {
            let count = burnside_iso_classes(rd.quiver(), alpha, p)?;
            let value = m.eval_at_int(p as i64).map_err(HuaError::from)?;
            b.compare_at_prime(&alpha.0, p, &RatQ::from_rational(&value), &RatQ::from_int(count));
        }
        Ok(())
    };
    match run(&mut b) {
        Ok(()) => b.finish(),
        Err(e) => b.fail(e),
    }
}
