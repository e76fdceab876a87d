//! Exact zero-dimensional solving and the ideal-theoretic utilities the
//! genericity checks rely on: Groebner bases over ℚ, normal forms, quotient
//! and Krull dimension, and univariate parameterizations with a separating
//! linear form.

mod groebner;
mod solve;

pub use groebner::{
    groebner, groebner_capped, krull_dimension, normal_form, quotient_dimension,
    standard_monomials, GroebnerBasis, GroebnerError, GroebnerTrace, MonomialOrder, QuotientDim,
};
pub use solve::{
    characteristic_polynomial, eval_cleared_mod, lambda_min_poly_capped, project_param,
    solve_zero_dim, solve_zero_dim_capped, verify_param, Certificate, LambdaPolicy, LinearForm,
    MinPolyOutcome, ProjectError, SolveDiagnostics, SolveOutcome, SolveStatus, ZeroDimParam,
};
