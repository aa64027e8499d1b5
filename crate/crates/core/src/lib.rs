//! Exact q-series, plethystic calculus, fermionic forms and quiver counting.

pub mod fermion;
pub mod fforacle;
pub mod gseries;
pub mod huahausel;
mod par;
pub mod qfield;
pub mod report;
pub mod rootdata;

pub use par::is_parallel;
