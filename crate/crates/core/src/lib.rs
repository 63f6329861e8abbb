//! Star-continuous Kleene ω-algebras of energy functions.
//!
//! The semiring is [`EnergyFn`]: exact piecewise-affine energy functions
//! under pointwise join and diagrammatic composition, with a closed-form
//! star. The semimodule is [`Threshold`]: `⊤`-continuous maps from energy
//! levels to `2`, with infinite products of lasso-shaped sequences. On top
//! sit generic matrix star/omega ([`matrix`]), energy Büchi automata with
//! algebraic and combinatorial decision procedures ([`automaton`]), a
//! regular-language model ([`wordmodel`]) and executable law checkers
//! ([`laws`]).
//!
//! Everything numeric is generic over an exact [`Scalar`]; the aliases at
//! the crate root fix it to arbitrary-precision rationals.

pub mod automaton;
pub mod energyfn;
pub mod extlat;
pub mod laws;
pub mod matrix;
pub mod omegaval;
pub mod scalar;
pub mod wordmodel;

pub use energyfn::{Cut, EnergyFn, EnergyFnError, Piece, Witness};
pub use extlat::Ext;
pub use matrix::{ColumnVector, EnergyAlgebra, Matrix, OmegaAlgebra, StarSemiring};
pub use omegaval::Threshold;
pub use scalar::Scalar;

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;
/// A level of `[0, ⊤]_⊥` over [`Rational`].
pub type ExtValue = Ext<Rational>;
pub type EnergyFunction = EnergyFn<Rational>;
pub type ThresholdPredicate = Threshold<Rational>;
pub type EnergyAutomaton = automaton::Automaton<Rational>;
pub type EnergyMatrix = Matrix<EnergyFunction>;
