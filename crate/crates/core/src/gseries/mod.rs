//! Multivariate power series over `ℚ(q)` truncated to a box of degrees.
//!
//! Variables are `x_i` for each vertex `i` and optionally a second block
//! `y_i` over the same index set. A degree is stored as one vector: the
//! x-exponents followed by the y-exponents. All operations discard terms
//! outside the box, so results are exact modulo the ideal of monomials not
//! below the box.

mod lambda;
mod operators;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::par;
use crate::qfield::{QFieldError, RatQ};

pub use lambda::{heine_series, pochhammer_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("box mismatch: {0} vs {1}")]
    BoxMismatch(String, String),
    #[error("degree {degree} lies outside the box {bounds}")]
    OutsideBox { degree: String, bounds: String },
    #[error("constant term is zero, series is not a unit")]
    NotUnit,
    #[error("constant term must vanish, found {0}")]
    NonzeroConstant(String),
    #[error("constant term must be 1, found {0}")]
    ConstantNotOne(String),
    #[error("operator needs the y-block")]
    NoYBlock,
    #[error(transparent)]
    Field(#[from] QFieldError),
}

/// Per-vertex upper bounds for x-degrees and, when the y-block is active,
/// for y-degrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegreeBox {
    x: Vec<u32>,
    y: Option<Vec<u32>>,
}

impl DegreeBox {
    pub fn x_only(x: Vec<u32>) -> Self {
        DegreeBox { x, y: None }
    }

    pub fn with_y(x: Vec<u32>, y: Vec<u32>) -> Self {
        assert_eq!(x.len(), y.len(), "x and y blocks share the vertex set");
        DegreeBox { x, y: Some(y) }
    }

    /// Same bound on every vertex.
    pub fn uniform(rank: usize, n: u32) -> Self {
        Self::x_only(vec![n; rank])
    }

    /// Number of vertices.
    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn has_y(&self) -> bool {
        self.y.is_some()
    }

    pub fn x_bounds(&self) -> &[u32] {
        &self.x
    }

    pub fn y_bounds(&self) -> Option<&[u32]> {
        self.y.as_deref()
    }

    /// Length of a degree vector in this box.
    pub fn width(&self) -> usize {
        self.x.len() + self.y.as_ref().map_or(0, Vec::len)
    }

    fn flat(&self) -> impl Iterator<Item = u32> + '_ {
        self.x.iter().chain(self.y.iter().flatten()).copied()
    }

    pub fn contains(&self, d: &[u32]) -> bool {
        d.len() == self.width() && d.iter().zip(self.flat()).all(|(a, b)| a <= &b)
    }

    pub fn max_component(&self) -> u32 {
        self.flat().max().unwrap_or(0)
    }

    /// The box with the y-block removed.
    pub fn x_part(&self) -> DegreeBox {
        DegreeBox::x_only(self.x.clone())
    }

    /// Every degree in the box, in lexicographic order.
    pub fn degrees(&self) -> Vec<Vec<u32>> {
        let bounds: Vec<u32> = self.flat().collect();
        let mut out = vec![Vec::new()];
        for b in bounds {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=b).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Degrees grouped by total degree (all variables), each group in
    /// lexicographic order. Entries of one group depend only on lower
    /// groups in the triangular recursions below.
    pub(crate) fn levels(&self) -> Vec<Vec<Vec<u32>>> {
        let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
        for d in self.degrees() {
            let t = total(&d) as usize;
            if levels.len() <= t {
                levels.resize(t + 1, Vec::new());
            }
            levels[t].push(d);
        }
        levels
    }
}

impl fmt::Display for DegreeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x<={:?}", self.x)?;
        if let Some(y) = &self.y {
            write!(f, " y<={y:?}")?;
        }
        Ok(())
    }
}

pub(crate) fn total(d: &[u32]) -> u64 {
    d.iter().map(|&x| x as u64).sum()
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Truncated series: sparse map from degree to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    bounds: DegreeBox,
    terms: BTreeMap<Vec<u32>, RatQ>,
}

impl GradedSeries {
    pub fn zero(bounds: DegreeBox) -> Self {
        GradedSeries { bounds, terms: BTreeMap::new() }
    }

    pub fn one(bounds: DegreeBox) -> Self {
        Self::constant(bounds, RatQ::one())
    }

    pub fn constant(bounds: DegreeBox, c: RatQ) -> Self {
        let zero = vec![0; bounds.width()];
        Self::from_terms(bounds, [(zero, c)])
    }

    /// Collects terms, summing repeated degrees and dropping terms outside
    /// the box.
    pub fn from_terms(bounds: DegreeBox, terms: impl IntoIterator<Item = (Vec<u32>, RatQ)>) -> Self {
        let mut map: BTreeMap<Vec<u32>, RatQ> = BTreeMap::new();
        for (d, c) in terms {
            assert_eq!(d.len(), bounds.width(), "degree vector has wrong length");
            if !bounds.contains(&d) || c.is_zero() {
                continue;
            }
            match map.get_mut(&d) {
                Some(v) => *v += &c,
                None => {
                    map.insert(d, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        GradedSeries { bounds, terms: map }
    }

    /// `c · x^a y^b` (dropped when outside the box).
    pub fn monomial(bounds: DegreeBox, degree: Vec<u32>, c: RatQ) -> Self {
        Self::from_terms(bounds, [(degree, c)])
    }

    /// The variable `x_i`.
    pub fn x_var(bounds: DegreeBox, i: usize) -> Self {
        let mut d = vec![0; bounds.width()];
        d[i] = 1;
        Self::monomial(bounds, d, RatQ::one())
    }

    /// The variable `y_i`.
    pub fn y_var(bounds: DegreeBox, i: usize) -> Self {
        let mut d = vec![0; bounds.width()];
        d[bounds.rank() + i] = 1;
        Self::monomial(bounds, d, RatQ::one())
    }

    pub fn bounds(&self) -> &DegreeBox {
        &self.bounds
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatQ)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored coefficient, `None` meaning zero; no box check.
    pub fn get(&self, d: &[u32]) -> Option<&RatQ> {
        self.terms.get(d)
    }

    /// Coefficient of a degree inside the box. Outside the box the value is
    /// unknown, which is an error rather than zero.
    pub fn coefficient(&self, d: &[u32]) -> Result<RatQ, SeriesError> {
        if !self.bounds.contains(d) {
            return Err(SeriesError::OutsideBox { degree: format!("{d:?}"), bounds: self.bounds.to_string() });
        }
        Ok(self.terms.get(d).cloned().unwrap_or_else(RatQ::zero))
    }

    pub fn constant_term(&self) -> RatQ {
        self.terms.get(&vec![0; self.bounds.width()]).cloned().unwrap_or_else(RatQ::zero)
    }

    fn same_box(&self, other: &Self) -> Result<(), SeriesError> {
        if self.bounds == other.bounds {
            Ok(())
        } else {
            Err(SeriesError::BoxMismatch(self.bounds.to_string(), other.bounds.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_box(other)?;
        let mut terms = self.terms.clone();
        for (d, c) in &other.terms {
            match terms.get_mut(d) {
                Some(v) => *v += c,
                None => {
                    terms.insert(d.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GradedSeries { bounds: self.bounds.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        self.map_coeffs(|x| x * c)
    }


    /// Applies `f` to every coefficient (zero results are dropped).
    pub fn map_coeffs(&self, f: impl Fn(&RatQ) -> RatQ) -> Self {
        self.map_terms(|d, c| Some((d.clone(), f(c))))
    }

    /// Rewrites terms; images outside the box are dropped and collisions
    /// summed.
    pub(crate) fn map_terms(&self, f: impl Fn(&Vec<u32>, &RatQ) -> Option<(Vec<u32>, RatQ)>) -> Self {
        Self::from_terms(self.bounds.clone(), self.terms.iter().filter_map(|(d, c)| f(d, c)))
    }

    /// Cauchy product modulo the box. Output coefficients are computed
    /// independently of each other (in parallel with the `parallel`
    /// feature).
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_box(other)?;
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut targets: Vec<Vec<u32>> = Vec::new();
        {
            let mut seen = std::collections::BTreeSet::new();
            for a in small.terms.keys() {
                for b in big.terms.keys() {
                    let d: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    if self.bounds.contains(&d) {
                        seen.insert(d);
                    }
                }
            }
            targets.extend(seen);
        }
        let coeffs = par::map(&targets, |d| {
            let mut acc = RatQ::zero();
            for (a, ca) in &small.terms {
                if !leq(a, d) {
                    continue;
                }
                if let Some(cb) = big.terms.get(&diff(d, a)) {
                    acc += &(ca * cb);
                }
            }
            acc
        });
        let terms = targets.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
        Ok(GradedSeries { bounds: self.bounds.clone(), terms })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        let inv0 = c0.recip().map_err(|_| SeriesError::NotUnit)?;
        let zero = vec![0; self.bounds.width()];
        let minus_inv0 = -&inv0;
        // h_d = -c0⁻¹ Σ_{0<a≤d} f_a h_{d-a}
        self.triangular(inv0, |d, known| {
            let mut acc = RatQ::zero();
            for (a, fa) in &self.terms {
                if *a == zero || !leq(a, d) {
                    continue;
                }
                if let Some(h) = known.get(&diff(d, a)) {
                    acc += &(fa * h);
                }
            }
            acc * &minus_inv0
        })
    }

    /// Solves a triangular recursion level by level in total degree. `step`
    /// sees all coefficients of strictly lower total degree.
    pub(crate) fn triangular<F>(&self, constant: RatQ, step: F) -> Result<Self, SeriesError>
    where
        F: Fn(&Vec<u32>, &BTreeMap<Vec<u32>, RatQ>) -> RatQ + Sync + Send,
    {
        let mut known: BTreeMap<Vec<u32>, RatQ> = BTreeMap::new();
        let levels = self.bounds.levels();
        if !constant.is_zero() {
            known.insert(levels[0][0].clone(), constant);
        }
        for level in levels.iter().skip(1) {
            let values = par::map(level, |d| step(d, &known));
            for (d, v) in level.iter().zip(values) {
                if !v.is_zero() {
                    known.insert(d.clone(), v);
                }
            }
        }
        Ok(GradedSeries { bounds: self.bounds.clone(), terms: known })
    }

    /// Restricts to a smaller box of the same shape.
    pub fn truncate(&self, bounds: DegreeBox) -> Self {
        assert_eq!(bounds.width(), self.bounds.width());
        Self::from_terms(bounds, self.terms.iter().map(|(d, c)| (d.clone(), c.clone())))
    }

    /// Deterministic text form: one line per term,
    /// `x^[a1,a2] y^[b1,b2] : <coefficient>`, in lexicographic degree order.
    pub fn to_text(&self) -> String {
        let n = self.bounds.rank();
        let mut out = String::new();
        for (d, c) in &self.terms {
            let fmt_block = |b: &[u32]| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            out.push_str(&format!("x^[{}]", fmt_block(&d[..n])));
            if self.bounds.has_y() {
                out.push_str(&format!(" y^[{}]", fmt_block(&d[n..])));
            }
            out.push_str(&format!(" : {c}\n"));
        }
        out
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries[{}]\n{}", self.bounds, self.to_text())
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests;
