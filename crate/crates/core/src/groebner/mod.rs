//! Presented ns operads: rewriting, completion, normal monomials, dimension
//! oracles, Koszul duality and distributive laws.

mod basis;
mod brute;
mod distributive;
mod koszul;
mod normal;
mod presentation;

pub use basis::{complete, GroebnerBasis, Rule};
pub use brute::{component_dimension_bruteforce, content_slice_dimension, quotient_dimensions, DimTable};
pub use distributive::{composite_dimensions, distributive_law_check, DistributiveReport};
pub use koszul::{annihilator_check, koszul_dual, pairing_matrix, quadratic_monomials, same_relation_space};
pub use normal::hilbert_json;
pub use presentation::{Homogeneity, Presentation};
