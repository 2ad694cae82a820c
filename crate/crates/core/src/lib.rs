//! Exact computation of bi-periodic Jacobsthal scalar and matrix sequences.
//!
//! The matrix sequence is `J₀ = I`, `J₁ = [[b, 2b/a], [1, 0]]` and
//! `Jₙ = a·Jₙ₋₁ + 2·Jₙ₋₂` for even `n`, `Jₙ = b·Jₙ₋₁ + 2·Jₙ₋₂` for odd `n`.
//! [`matrix`] evaluates it four ways (recurrence, closed form over the scalar
//! sequence, Binet form in Q(√D), logarithmic-time doubling), [`genfunc`]
//! expands its rational generating function, and [`verifier`] checks the
//! known identities pointwise with exact counterexamples.

pub mod arith;
pub mod bench;
pub mod error;
pub mod genfunc;
pub mod matrix;
pub mod scalar;
pub mod verifier;

pub use arith::{parity, Mat2, Parity, QuadNum, Rational};
pub use error::{Error, Result};
pub use scalar::{BiParams, SeqKind};
