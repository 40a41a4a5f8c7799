//! Groebner bases over `Q[a_1, ..., a_n]` and the membership questions built on them.

mod buchberger;
pub mod cache;
mod membership;
mod order;
mod sorted;
mod verify;

pub use buchberger::{buchberger, buchberger_with, BuchbergerOptions, Division, GroebnerBasis, GroebnerStats};
pub use cache::BasisCache;
pub use membership::{
    ideal_membership, membership_in_basis, rabinowitsch_basis, rabinowitsch_generators, radical_exponent,
    radical_membership, radical_membership_with_exponent, MembershipCertificate, Witness, DEFAULT_EXPONENT_BOUND,
};
pub use order::{MonomialOrder, OrderKind};
pub use verify::{
    check_regular_sequence, krull_dimension, main_theorem_indices, verify_conjecture, verify_main_theorem,
    ConjectureReport, Context, MainTheoremReport, RegularSequenceReport, TheoremCheck, VariableCheck,
    MAX_SUPPORTED_DEGREE,
};
