//! Independent checks for the pipeline: circulant graphs, a brute-force
//! automorphism search, spectra, Schurity, isomorphism of rational
//! circulants and exhaustive verification.

mod graph;
mod search;
mod spectrum;
mod verify;

pub use graph::CirculantGraph;
pub use search::{brute_force_aut, DEFAULT_ORACLE_BOUND};
pub use spectrum::{ramanujan_sum, spectrum, Spectrum, FLOAT_TOLERANCE};
pub use verify::{
    count_rational_circulants, divisor_subsets, full_verify, rational_iso_test, schurity_check,
    SchurityReport, VerifyRecord, VerifyReport,
};
