//! Exact rational polynomials: arithmetic, factorization over `Q`,
//! functional decomposition and windowed specialization scans.

mod decompose;
mod factor;
mod modp;
mod poly;
mod scan;

pub use decompose::{decompose, is_indecomposable, DecompositionSplit};
pub use factor::{
    factor_q, factor_q_with, Certificate, Factor, FactorOptions, FactorStatus,
    FactorizationResult,
};
pub use poly::{chebyshev, compose, RatPoly};
pub use scan::{
    parse_chain, parse_rational, scan_window, value_set_member, Reducibility, ScanRecord,
    ScanReport, ScanSummary, Window,
};
