//! Conjugacy classes, exact character tables, Deligne–Lusztig characters of
//! the rank-one groups and the two finite-field identities checked against
//! them.

mod classes;
mod classical;
mod deligne_lusztig;
mod dixon;
mod group;

pub use classes::{conjugacy_classes, CharacterTable, ClassFunction, ClassInfo, Classes};
pub use classical::{classical_table_oracle, ClassicalTable, RankOne, Shape};
pub use dixon::{character_table_dixon, DIXON_ORDER_BUDGET};
pub use group::{CyclicGroup, FiniteGroup, MatrixGroup, MATRIX_GROUP_BUDGET};
pub use deligne_lusztig::{DlCharacter, DlContext, JordanCase, JordanReport, SpringerCase, SpringerReport};
