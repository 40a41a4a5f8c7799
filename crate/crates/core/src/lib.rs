//! Exact and numerical tools around the Casas-Alvero conjecture.
//!
//! The exact side builds the resultants `R_i = Res(f, H_i(f))` of the generic
//! polynomial `f = x^d + a_1 x^(d-1) + ... + a_(d-1) x` against its Hasse
//! derivatives and decides ideal and radical membership questions about them
//! with Groebner bases. The numerical side works with real-rooted polynomials:
//! root interlacing of Hasse derivatives and a search for almost
//! counterexamples.

pub mod budget;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod multipoly;
pub mod realroots;
pub mod resultant;
pub mod text;
pub mod unipoly;
pub mod univariate;

pub use budget::Budget;
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use resultant::{casas_resultants, resultant, sylvester_matrix, ResultantFamily, SylvesterMatrix};
pub use unipoly::{generic_casas_polynomial, UniPoly};
pub use univariate::QPoly;

/// Exact rational scalar; always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
