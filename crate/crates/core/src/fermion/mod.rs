//! Partition tuples and the fermionic forms built from them.
//!
//! A partition tuple `τ` assigns a partition to every vertex; its columns
//! `τ_k = (τ^i_k)_i` form a componentwise weakly decreasing sequence in
//! `ℕ^I`, and `|τ| = Σ_k τ_k`. All sums here run over such column sequences.

mod checks;
mod enumerate;
mod forms;
mod kleber;
mod standard;

use thiserror::Error;

use crate::gseries::SeriesError;
use crate::rootdata::{RootDataError, WeightVector};

pub use checks::{kleber_check, weyl_antisymmetry_check};
pub(crate) use enumerate::{Bracket, TupleSum};
pub use forms::{
    fermionic_m, fermionic_m_at, fermionic_n, fermionic_n_at, gen_n, gen_p, gen_s, two_block_box, Level,
};
pub use kleber::kleber_recursion;
pub use standard::{min_pairing_sum, standard_form_m};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FermionError {
    #[error("{what} weight {weight} is not dominant")]
    NotDominant { what: &'static str, weight: String },
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub(crate) fn require_dominant(what: &'static str, w: &WeightVector) -> Result<(), FermionError> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(FermionError::NotDominant { what, weight: w.to_string() })
    }
}

/// One partition per vertex, parts in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartitionTuple {
    parts: Vec<Vec<u32>>,
}

impl PartitionTuple {
    pub fn new(parts: Vec<Vec<u32>>) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                assert!(p.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
                while p.last() == Some(&0) {
                    p.pop();
                }
                p
            })
            .collect();
        PartitionTuple { parts }
    }

    /// Rebuilds the tuple from its column sequence.
    pub fn from_columns(rank: usize, columns: &[Vec<u32>]) -> Self {
        let parts = (0..rank).map(|i| columns.iter().map(|c| c[i]).filter(|&x| x > 0).collect()).collect();
        PartitionTuple { parts }
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    /// Number of nonzero columns.
    pub fn length(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `τ_k` for `k = 1..=length`.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.length()).map(|k| self.parts.iter().map(|p| p.get(k).copied().unwrap_or(0)).collect()).collect()
    }

    /// `|τ|`: the sizes of the partitions.
    pub fn size(&self) -> Vec<u32> {
        self.parts.iter().map(|p| p.iter().sum()).collect()
    }
}

/// Partitions of `n`, parts decreasing, in reverse lexicographic order
/// (`(n)` first, `(1,…,1)` last).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All tuples with `|τ| = β`, ordered lexicographically by vertex with each
/// vertex in the order of [`partitions`].
pub fn partition_tuples(beta: &[u32]) -> Vec<PartitionTuple> {
    let mut acc: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for &b in beta {
        let ps = partitions(b);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                ps.iter().map(move |p| {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    acc.into_iter().map(|parts| PartitionTuple { parts }).collect()
}
