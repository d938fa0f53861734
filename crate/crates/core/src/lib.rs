//! Exact computations around dual groups and endoscopy: root data and
//! extended Dynkin diagrams, split elliptic endoscopic triples, unramified
//! tori and Tate–Nakayama duality, finite groups of Lie type with their
//! Deligne–Lusztig characters, and truncated p-adic matrix arithmetic.

pub mod dl_spectra;
pub mod endoscopy;
pub mod error;
pub mod exact_math;
pub mod finite_lie;
pub mod galois_tori;
pub mod padic;
pub mod root_datum;

pub use error::{Error, Result};
