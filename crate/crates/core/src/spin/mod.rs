//! Spin geometry of homogeneous spaces `G/H`: Clifford modules, the isotropy
//! spin action, Parthasarathy's formula and the Vafa–Witten comparison.

mod clifford;
mod dirac;
mod lambda1;
mod pair;
mod space;
mod vafa_witten;

pub use clifford::{casimir_sigma, clifford_module, pauli_generators, CliffordModule};
pub use dirac::{dirac_block, hom_space, DiracBlock, HomSpace, TKey, TVec};
pub use lambda1::{lambda1, ComponentValue, Lambda1Result, SearchOptions, DEFAULT_BUDGET};
pub use pair::{metric, SymmetricPair};
pub use space::{HomStrategy, SpinorDecomposition, SymmetricSpace};
pub use vafa_witten::{
    random_mu, vafa_witten_batch, vafa_witten_operator, TwistData, VafaWittenReport, EXACT_DIM_LIMIT, TOLERANCE,
};
