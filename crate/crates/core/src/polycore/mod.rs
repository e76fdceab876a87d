//! Exact polynomial arithmetic over ℚ: sparse multivariate polynomials in a
//! fixed ring of X- and Lagrange variables, dense univariate polynomials,
//! rational matrices, formal calculus, and the height measure.

mod matrix;
mod mpoly;
mod scalar;
mod upoly;

pub use matrix::{combinations, PolyMatrix, RatMatrix};
pub use mpoly::{jacobian, jacobian_wrt, truncated_jacobian, MPoly, Monomial};
pub use scalar::{int, ln_int, rat, rat_f64, ratio, Height, Int, Rat};
pub use upoly::UPoly;

use alloc::format;
use alloc::string::String;

/// Variable context: n_x ambient variables x1..xn followed by n_l Lagrange
/// multipliers L1..Ln_l. Polynomials carry their ring and operations insist
/// on matching rings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ring {
    pub n_x: usize,
    pub n_l: usize,
}

impl Ring {
    pub const fn x_only(n_x: usize) -> Self {
        Ring { n_x, n_l: 0 }
    }

    pub const fn with_lagrange(n_x: usize, n_l: usize) -> Self {
        Ring { n_x, n_l }
    }

    pub const fn nvars(&self) -> usize {
        self.n_x + self.n_l
    }

    pub fn var_name(&self, j: usize) -> String {
        if j < self.n_x {
            format!("x{}", j + 1)
        } else {
            format!("L{}", j - self.n_x + 1)
        }
    }
}
