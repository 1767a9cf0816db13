//! Exact coefficient arithmetic: rationals and cyclotomic fields.

pub mod cyclotomic;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
