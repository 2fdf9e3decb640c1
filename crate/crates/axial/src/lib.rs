//! Exact symbolic engine for 2-generated primitive axial algebras.
//!
//! Constructs the classified algebras over parametric rational-function
//! fields, verifies fusion laws, gradings, ideals, quotients and Miyamoto
//! automorphisms, and evaluates the universal-algebra relators in concrete
//! algebras.

pub mod algebra;
pub mod catalog;
pub mod field;
pub mod fusion;
pub mod linalg;
pub mod relators;
pub mod sweep;
