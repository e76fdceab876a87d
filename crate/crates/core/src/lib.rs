//! Computes at least one point in each connected component of a smooth real
//! algebraic set V(f₁,…,f_p) ⊂ ℝⁿ, entirely in exact rational arithmetic.
//!
//! The pipeline follows the polar-variety approach: for each level i the
//! critical locus of the projection onto the first i coordinates is encoded
//! as a Lagrange system, sliced down to dimension zero by generic hyperplane
//! sections, solved to a univariate parameterization, and finally realized
//! as certified real points. Randomness enters only through the choice of a
//! linear change of variables A, the slice values σ, and the Lagrange
//! normalization u; everything downstream is deterministic and verified.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod polycore;
pub mod sysbuild;
pub mod zdsolve;
pub mod realize;
pub mod driver;
