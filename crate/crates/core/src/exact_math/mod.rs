//! Exact arithmetic substrate: integer matrices and Smith normal form,
//! finitely generated abelian groups, cyclotomic numbers, finite fields.

pub mod abelian;
pub mod cyclotomic;
pub mod field;
pub mod intmat;
pub mod snf;

pub use abelian::{cokernel_group, image_basis, kernel_basis, solve_in_basis, Cokernel, FinAbGroup};
pub use cyclotomic::Cyclotomic;
pub use field::{FiniteField, Fq};
pub use intmat::IntMatrix;
pub use snf::{smith_normal_form, Snf};
