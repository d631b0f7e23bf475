//! Multilinear structures on graded spaces: Börjeson products, the
//! Givental–Lee action on ncHyperCom structures, associative ncBV∞ data and
//! the noncommutative Weyl star product.

mod action;
mod borjeson;
mod fixtures;
mod multilinear;
mod tensor;
mod weyl;

pub use action::{
    assoc_ncbv_check, associative_family, check_ncwdvv, conjugation_action, direct_deformation_vanishes, families_equal, family_is_zero,
    givental_direct, givental_step, givental_tau, givental_tau0, preserves_associative, NcbvReport, OpFamily, PreservationReport,
};
pub use borjeson::{borjeson, borjeson_closed, commutator_check, commutator_rhs, nc_order, order_expansion_holds, CommutatorReport};
pub use fixtures::{ainfty_bar_fixture, builtin_fixture, builtin_fixture_names, random_operator, random_symbol, AlgebraFixture, SparseTriple};
pub use multilinear::{commutator, Algebra, GradedSpace, LengthFilter, MultilinearOp};
pub use tensor::{bar_construction, TensorAlgebraTrunc};
pub use weyl::{jacobiator, random_word_map, star_bracket, star_series, weyl_partial, weyl_star, Dropped, HbarSeries, WeylSpace, WordMap};

#[cfg(test)]
mod tests;
