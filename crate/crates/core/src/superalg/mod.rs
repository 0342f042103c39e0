//! Exact scalars and normal-form arithmetic in free supercommutative
//! superalgebras and in Grassmann test algebras.

pub mod gens;
pub mod grassmann;
pub mod poly;
pub mod scalar;

pub use gens::{Generator, GeneratorSet, Parity, Slot, Symbol};
pub use grassmann::GrassmannElement;
pub use poly::{SuperMonomial, SuperPoly};
pub use scalar::{Field, Scalar};
