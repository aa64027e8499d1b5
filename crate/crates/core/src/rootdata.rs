//! Quivers and their root data: Cartan matrix, Tits form, the
//! weight/root coordinate dictionary, framed quivers, positive roots and the
//! Weyl group of finite-type quivers.
//!
//! Root vectors carry coordinates in the basis of simple roots; weight
//! vectors carry the coordinates `ν_i = (ν, α_i)`. The only way from one to
//! the other is through the Cartan matrix (`α ↦ Cα`).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid quiver file: {0}")]
    Json(String),
    #[error("negative framing {value} at vertex {vertex}")]
    NegativeFraming { vertex: String, value: i64 },
    #[error("vertex name {0} is reserved for the framing vertex")]
    ReservedVertex(String),
    #[error("not finite type")]
    NotFiniteType,
    #[error("root closure did not stabilize below coordinate bound {0}")]
    ClosureNotStable(i64),
    #[error("expected a vector with {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("Cartan matrix is singular")]
    Singular,
    #[error("weight difference {0} is not in the positive root cone")]
    NotInPositiveCone(String),
    #[error("invalid vector {0:?}: expected comma-separated integers")]
    BadVector(String),
}

/// Name of the vertex adjoined by [`Quiver::enlarge`].
pub const STAR: &str = "*";

macro_rules! int_vector {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                $name(v)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn as_slice(&self) -> &[i64] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, k: i64) -> Self {
                $name(self.0.iter().map(|a| a * k).collect())
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                $name(v)
            }
        }

        impl std::ops::Index<usize> for $name {
            type Output = i64;
            fn index(&self, i: usize) -> &i64 {
                &self.0[i]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self)
            }
        }

        impl FromStr for $name {
            type Err = RootDataError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                s.split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map($name)
                    .map_err(|_| RootDataError::BadVector(s.to_string()))
            }
        }
    };
}

int_vector!(RootVector);
int_vector!(WeightVector);

impl RootVector {
    /// Componentwise `≥ 0`, i.e. membership in `Q_+`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl WeightVector {
    /// Membership in `P_+`.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

/// `(ν, α) = Σ ν_i α^i`
pub fn pairing(nu: &WeightVector, alpha: &RootVector) -> i64 {
    nu.0.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()
}

/// A finite quiver without loops. Parallel arrows are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VertexName {
    Text(String),
    Int(i64),
}

impl VertexName {
    fn into_string(self) -> String {
        match self {
            VertexName::Text(s) => s,
            VertexName::Int(i) => i.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: Vec<VertexName>,
    #[serde(default)]
    arrows: Vec<(VertexName, VertexName)>,
}

#[derive(Serialize)]
struct QuiverFileOut<'a> {
    vertices: &'a [String],
    arrows: Vec<[&'a str; 2]>,
}

impl Quiver {
    /// Vertices are deduplicated keeping first occurrences; arrows keep
    /// their multiplicity.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self, RootDataError> {
        let mut names: Vec<String> = Vec::new();
        for v in vertices {
            if !names.iter().any(|n| n == v.as_ref()) {
                names.push(v.as_ref().to_string());
            }
        }
        let index = |v: &str| {
            names.iter().position(|n| n == v).ok_or_else(|| RootDataError::UnknownVertex(v.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            let (s, t) = (index(s.as_ref())?, index(t.as_ref())?);
            if s == t {
                return Err(RootDataError::Loop(names[s].clone()));
            }
            out.push((s, t));
        }
        Ok(Quiver { vertices: names, arrows: out })
    }

    /// Parses `{"vertices": [...], "arrows": [[src, dst], ...]}`; vertex
    /// names may be strings or integers.
    pub fn from_json(text: &str) -> Result<Self, RootDataError> {
        let file: QuiverFile = serde_json::from_str(text).map_err(|e| RootDataError::Json(e.to_string()))?;
        let vertices: Vec<String> = file.vertices.into_iter().map(VertexName::into_string).collect();
        let arrows: Vec<(String, String)> =
            file.arrows.into_iter().map(|(s, t)| (s.into_string(), t.into_string())).collect();
        Self::new(&vertices, &arrows)
    }

    /// Canonical JSON form (vertex order preserved, names as strings).
    pub fn to_json(&self) -> String {
        let out = QuiverFileOut {
            vertices: &self.vertices,
            arrows: self.arrows.iter().map(|&(s, t)| [self.vertices[s].as_str(), self.vertices[t].as_str()]).collect(),
        };
        serde_json::to_string(&out).expect("quiver serializes")
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Arrows as `(source, target)` vertex indices.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Adjoins a framing vertex `*` (last) with `ν_i` arrows `* → i`.
    pub fn enlarge(&self, nu: &WeightVector) -> Result<Quiver, RootDataError> {
        check_len(self.rank(), nu.len())?;
        if self.vertices.iter().any(|v| v == STAR) {
            return Err(RootDataError::ReservedVertex(STAR.into()));
        }
        let star = self.rank();
        let mut arrows = self.arrows.clone();
        for (i, &n) in nu.0.iter().enumerate() {
            if n < 0 {
                return Err(RootDataError::NegativeFraming { vertex: self.vertices[i].clone(), value: n });
            }
            arrows.extend(std::iter::repeat_n((star, i), n as usize));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(STAR.into());
        Ok(Quiver { vertices, arrows })
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), RootDataError> {
    if expected == got {
        Ok(())
    } else {
        Err(RootDataError::Dimension { expected, got })
    }
}

/// A quiver together with its symmetric generalized Cartan matrix
/// `C = 2·Id - B`, `b_ij` the number of arrows between `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    quiver: Quiver,
    cartan: Vec<Vec<i64>>,
}

impl RootData {
    pub fn new(quiver: Quiver) -> Self {
        let n = quiver.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &quiver.arrows {
            cartan[s][t] -= 1;
            cartan[t][s] -= 1;
        }
        RootData { quiver, cartan }
    }

    pub fn from_json(text: &str) -> Result<Self, RootDataError> {
        Quiver::from_json(text).map(Self::new)
    }

    /// Dynkin quiver of type `A_n` oriented `1 → 2 → … → n`.
    pub fn type_a(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Self::new(Quiver::new(&names, &arrows).expect("valid"))
    }

    /// `D_4` with central vertex `2`.
    pub fn type_d4() -> Self {
        let arrows = [("1", "2"), ("3", "2"), ("4", "2")];
        Self::new(Quiver::new(&["1", "2", "3", "4"], &arrows).expect("valid"))
    }

    /// Two vertices joined by `m` parallel arrows (`m = 2`: Kronecker quiver).
    pub fn kronecker(m: usize) -> Self {
        let arrows = vec![("1", "2"); m];
        Self::new(Quiver::new(&["1", "2"], &arrows).expect("valid"))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetric form `(α, β) = αᵀ C β`.
    pub fn bilinear(&self, a: &RootVector, b: &RootVector) -> i64 {
        let mut s = 0;
        for (i, row) in self.cartan.iter().enumerate() {
            if a.0[i] == 0 {
                continue;
            }
            s += a.0[i] * row.iter().zip(&b.0).map(|(c, x)| c * x).sum::<i64>();
        }
        s
    }

    /// `T(α) = ½(α, α) = Σ (α^i)² - Σ_{h} α^{h'} α^{h''}`.
    pub fn tits_form(&self, a: &RootVector) -> i64 {
        let sq: i64 = a.0.iter().map(|x| x * x).sum();
        let cross: i64 = self.quiver.arrows.iter().map(|&(s, t)| a.0[s] * a.0[t]).sum();
        sq - cross
    }

    /// Weight coordinates of a root: `Cα`.
    pub fn root_as_weight(&self, a: &RootVector) -> WeightVector {
        WeightVector(self.cartan.iter().map(|row| row.iter().zip(&a.0).map(|(c, x)| c * x).sum()).collect())
    }

    /// `ν - α` in weight coordinates, i.e. `ν - Cα`.
    pub fn weight_sub_root(&self, nu: &WeightVector, a: &RootVector) -> WeightVector {
        nu.sub(&self.root_as_weight(a))
    }

    /// `d(α, ν) = (ν, α) - T(α)`, half the dimension of the quiver variety.
    pub fn d_exponent(&self, a: &RootVector, nu: &WeightVector) -> i64 {
        pairing(nu, a) - self.tits_form(a)
    }

    /// Solves `Cβ = w` for an integral root vector `β`.
    pub fn solve_root(&self, w: &WeightVector) -> Result<RootVector, RootDataError> {
        check_len(self.rank(), w.len())?;
        let n = self.rank();
        // Fraction-free Gaussian elimination on the augmented matrix.
        let mut m: Vec<Vec<i128>> = self
            .cartan
            .iter()
            .zip(&w.0)
            .map(|(row, &rhs)| row.iter().map(|&c| c as i128).chain([rhs as i128]).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0).ok_or(RootDataError::Singular)?;
            m.swap(col, piv);
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let (a, b) = (m[col][col], m[r][col]);
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                        *x = *x * a - p * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &x| gcd_i128(g, x));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for (r, row) in m.iter().enumerate() {
            if row[n] % row[r] != 0 {
                return Err(RootDataError::NotInPositiveCone(w.to_string()));
            }
            out.push((row[n] / row[r]) as i64);
        }
        Ok(RootVector(out))
    }

    /// `β` with `Cβ = ν - λ`, required to lie in `Q_+`.
    pub fn beta_from_weights(&self, nu: &WeightVector, lambda: &WeightVector) -> Result<RootVector, RootDataError> {
        let beta = self.solve_root(&nu.sub(lambda))?;
        if beta.is_nonnegative() {
            Ok(beta)
        } else {
            Err(RootDataError::NotInPositiveCone(nu.sub(lambda).to_string()))
        }
    }

    /// Positive definiteness of `C`, tested through its leading principal
    /// minors.
    pub fn is_finite_type(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let minor: Vec<Vec<i64>> = self.cartan[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&minor) > 0
        })
    }

    fn require_finite(&self) -> Result<(), RootDataError> {
        if self.is_finite_type() {
            Ok(())
        } else {
            Err(RootDataError::NotFiniteType)
        }
    }

    /// All positive roots of a finite-type quiver, sorted by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<RootVector>, RootDataError> {
        // Highest root coefficients never exceed 6 in types ADE.
        self.positive_roots_bounded(6)
    }

    pub fn positive_roots_bounded(&self, bound: i64) -> Result<Vec<RootVector>, RootDataError> {
        self.require_finite()?;
        let n = self.rank();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue: VecDeque<RootVector> = (0..n).map(|i| RootVector::unit(n, i)).collect();
        seen.extend(queue.iter().cloned());
        while let Some(a) = queue.pop_front() {
            for i in 0..n {
                let b = a.add(&RootVector::unit(n, i));
                if self.tits_form(&b) != 1 || seen.contains(&b) {
                    continue;
                }
                if b.0[i] > bound {
                    return Err(RootDataError::ClosureNotStable(bound));
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    /// Simple reflection on weight coordinates: `(s_i λ)_j = λ_j - λ_i c_ij`.
    pub fn reflect(&self, i: usize, lambda: &WeightVector) -> WeightVector {
        let li = lambda.0[i];
        WeightVector(lambda.0.iter().enumerate().map(|(j, &x)| x - li * self.cartan[i][j]).collect())
    }

    /// Dot action `w·λ = w(λ+ρ) - ρ` with `ρ_i = 1`, for `w = s_{i_1} ⋯ s_{i_k}`
    /// (rightmost reflection first). Returns the image and `(-1)^k`.
    pub fn weyl_dot(&self, word: &[usize], lambda: &WeightVector) -> Result<(WeightVector, i64), RootDataError> {
        self.require_finite()?;
        check_len(self.rank(), lambda.len())?;
        let rho = WeightVector(vec![1; self.rank()]);
        let mut v = lambda.add(&rho);
        for &i in word.iter().rev() {
            if i >= self.rank() {
                return Err(RootDataError::Dimension { expected: self.rank(), got: i + 1 });
            }
            v = self.reflect(i, &v);
        }
        let sign = if word.len().is_multiple_of(2) { 1 } else { -1 };
        Ok((v.sub(&rho), sign))
    }

    /// One reduced word per element of the Weyl group, in order of length.
    pub fn weyl_group(&self) -> Result<Vec<Vec<usize>>, RootDataError> {
        self.require_finite()?;
        let n = self.rank();
        // ρ is regular, so w ↦ w(ρ) is injective.
        let rho = WeightVector(vec![1; n]);
        let mut seen: HashSet<WeightVector> = HashSet::from([rho.clone()]);
        let mut queue: VecDeque<(WeightVector, Vec<usize>)> = VecDeque::from([(rho, Vec::new())]);
        let mut words = Vec::new();
        while let Some((v, word)) = queue.pop_front() {
            for i in 0..n {
                let u = self.reflect(i, &v);
                if seen.insert(u.clone()) {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(i);
                    w.extend_from_slice(&word);
                    queue.push_back((u, w));
                }
            }
            words.push(word);
        }
        Ok(words)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Bareiss determinant of a small integer matrix.
fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
