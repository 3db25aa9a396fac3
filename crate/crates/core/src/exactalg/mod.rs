//! Exact linear algebra and polynomial arithmetic over `Q`, `F_p` and `F_{p^k}`.

pub mod arith;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, Subspace};
pub use poly::Poly;
