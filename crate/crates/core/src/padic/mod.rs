//! Truncated p-adic matrices: topological Jordan decomposition and the
//! quasi-logarithm at finite precision; Hilbert symbols and Hasse invariants
//! of diagonal quadratic forms over `Q`.

mod hilbert;
mod jordan;
mod quasi_log;
mod truncated;

pub use hilbert::{hasse_invariant, hilbert_product, hilbert_symbol, parse_rational, relevant_places, DiagQuadForm, Place};
pub use jordan::{cyclic_decompositions, element_order, topological_jordan, TopologicalJordan};
pub use quasi_log::{quasi_log_bijection_check, QuasiLogReport, QUASI_LOG_BUDGET};
pub use truncated::{TruncatedMatrix, MAX_PRECISION};
