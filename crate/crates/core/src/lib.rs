//! Exact verification of supercotruss presentations, their functor of points
//! over Grassmann test algebras, and Yang–Baxter maps built from them.

pub mod cli;
pub mod cotruss;
pub mod error;
pub mod exec;
pub mod homs;
pub mod points;
pub mod stx;
pub mod superalg;
pub mod tensor;
pub mod ybe;

pub use error::{Error, Result};
pub use exec::Exec;
