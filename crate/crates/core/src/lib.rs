//! Pre-canonical bases of the spherical Hecke algebra of a simply-laced root
//! system, computed in exact arithmetic over `ℤ[q]`.

pub mod error;
pub mod qpoly;
pub mod rootsys;
pub mod weyl;
pub mod kostka;
pub mod spherical;
pub mod theorems;

pub use error::Error;
pub use qpoly::QPoly;
