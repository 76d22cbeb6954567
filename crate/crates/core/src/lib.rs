//! Exact computation of the Redei-Berge symmetric function `U_X` of digraphs,
//! posets and permutations, the combinatorial Hopf algebras they live in, and
//! a small lab for checking identities and searching for collisions.

pub mod combinatorics;
pub mod digraph;
pub mod error;
pub mod hopf;
pub mod lab;
pub mod order;
pub mod qsym;
pub mod redei;

pub use error::{Error, Result};
