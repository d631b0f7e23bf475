//! Nonsymmetric operads of moduli spaces of brick manifolds: Gröbner bases,
//! Koszul duality, brick manifold strata, Loday polytopes and normal fans,
//! intersection numbers of psi classes and multilinear algebra structures.

pub mod acceptance;
pub mod brick;
pub mod cli;
pub mod error;
pub mod free;
pub mod givental;
pub mod groebner;
pub mod intersection;
pub mod linalg;
pub mod lp;
pub mod ordinal;
pub mod tree;
pub mod zoo;

pub use error::{Error, Result};
