//! Executable tools for studying reducible specializations of polynomials
//! and covers: permutation groups, Riemann–Hurwitz genera, group-theoretic
//! instance checks, reducible-value candidates, and exact rational
//! polynomial scans.

pub mod config;
pub mod error;
pub mod genus;
pub mod perm;
pub mod permcore;
pub mod redset;
pub mod speclab;
pub mod structure;

pub use config::Caps;
pub use error::{Error, Result};
pub use perm::Permutation;
pub use permcore::PermGroup;
