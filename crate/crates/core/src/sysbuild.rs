//! Constructs the three system families the pipeline works with: minor
//! systems (F plus the maximal minors of the truncated Jacobian, cutting out
//! the polar variety W(i, F)), Lagrange systems (the rank deficiency
//! expressed through a left kernel row L with normalization u·L = 1), and
//! the sliced Lagrange fiber systems that are actually solved per level.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::polycore::{truncated_jacobian, Height, MPoly, Monomial, Rat, RatMatrix, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BuildError {
    EmptySystem,
    RingMismatch,
    HasLagrangeVars,
    NonIntegerCoefficients,
    ZeroPolynomial,
    TooManyEquations { p: usize, n: usize },
    LevelOutOfRange { level: usize, max: usize },
    SingularMatrix,
    ZeroNormalizer,
    WrongParameterCount,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::EmptySystem => write!(f, "input system has no polynomials"),
            BuildError::RingMismatch => write!(f, "input polynomials live in different rings"),
            BuildError::HasLagrangeVars => write!(f, "input polynomials must not use Lagrange variables"),
            BuildError::NonIntegerCoefficients => write!(f, "input coefficients must be integers"),
            BuildError::ZeroPolynomial => write!(f, "input contains the zero polynomial"),
            BuildError::TooManyEquations { p, n } => {
                write!(f, "{} equations in {} variables: p must satisfy 1 <= p <= n", p, n)
            }
            BuildError::LevelOutOfRange { level, max } => {
                write!(f, "level {} out of range 1..={}", level, max)
            }
            BuildError::SingularMatrix => write!(f, "change-of-variables matrix is singular"),
            BuildError::ZeroNormalizer => write!(f, "normalizer u must be nonzero"),
            BuildError::WrongParameterCount => write!(f, "parameter vector has the wrong length"),
        }
    }
}

/// The input data F = (f₁,…,f_p) ⊂ ℤ[x₁,…,x_n] together with its derived
/// quantities: codimension p, degree bound d, height bound b, and the
/// expected variety dimension δ = n − p.
#[derive(Clone, Debug)]
pub struct InputSystem {
    pub f: Vec<MPoly>,
    pub n: usize,
    pub p: usize,
    pub d: u64,
    pub b: Height,
}

impl InputSystem {
    /// Validates and derives metadata. d and b are always computed from the
    /// polynomials, never trusted from elsewhere.
    pub fn new(f: Vec<MPoly>) -> Result<Self, BuildError> {
        if f.is_empty() {
            return Err(BuildError::EmptySystem);
        }
        let ring = f[0].ring();
        if f.iter().any(|g| g.ring() != ring) {
            return Err(BuildError::RingMismatch);
        }
        if ring.n_l != 0 {
            return Err(BuildError::HasLagrangeVars);
        }
        if f.iter().any(MPoly::is_zero) {
            return Err(BuildError::ZeroPolynomial);
        }
        for g in &f {
            for (_, c) in g.terms() {
                if !c.is_integer() {
                    return Err(BuildError::NonIntegerCoefficients);
                }
            }
        }
        let n = ring.n_x;
        let p = f.len();
        if p > n || n == 0 {
            return Err(BuildError::TooManyEquations { p, n });
        }
        let d = f.iter().map(MPoly::total_degree).max().unwrap_or(0);
        let b = f
            .iter()
            .map(MPoly::height)
            .fold(Height::zero(), |acc, h| acc.join(&h));
        Ok(InputSystem { f, n, p, d, b })
    }

    pub fn ring(&self) -> Ring {
        Ring::x_only(self.n)
    }

    /// δ = n − p, the expected dimension of V(F); levels run 1..=δ+1.
    pub fn delta(&self) -> usize {
        self.n - self.p
    }

    pub fn joint_ring(&self) -> Ring {
        Ring::with_lagrange(self.n, self.p)
    }
}

/// F followed by the p-minors M_{i,1},…,M_{i,P_i} of jac(F, i), in the ring
/// of the X-variables. Its zero set is the polar variety W(i, F).
#[derive(Clone, Debug)]
pub struct MinorSystem {
    pub level: usize,
    pub polys: Vec<MPoly>,
}

/// Checks 1 ≤ level ≤ δ+1.
fn check_level(sys: &InputSystem, level: usize) -> Result<(), BuildError> {
    let max = sys.delta() + 1;
    if level < 1 || level > max {
        return Err(BuildError::LevelOutOfRange { level, max });
    }
    Ok(())
}

/// The minor system at a level: (f₁,…,f_p, M_{i,1},…,M_{i,P_i}) with
/// P_i = C(n−i, p). At level δ+1 there are no minors and the system is F
/// itself, whose zero set is all of V.
pub fn build_minor_system(sys: &InputSystem, level: usize) -> Result<MinorSystem, BuildError> {
    check_level(sys, level)?;
    let tj = truncated_jacobian(&sys.f, level);
    let mut polys = sys.f.clone();
    polys.extend(tj.p_minors());
    Ok(MinorSystem { level, polys })
}

/// The Lagrange system 𝔏(i, F, u) = (F, [L₁…L_p]·jac(F, i), u₁L₁+⋯+u_pL_p−1)
/// in the joint ring of X- and L-variables: p + (n−i) + 1 polynomials.
pub fn build_lagrange_system(
    sys: &InputSystem,
    level: usize,
    u: &[Rat],
) -> Result<Vec<MPoly>, BuildError> {
    check_level(sys, level)?;
    if u.len() != sys.p {
        return Err(BuildError::WrongParameterCount);
    }
    if u.iter().all(Rat::is_zero) {
        return Err(BuildError::ZeroNormalizer);
    }
    let joint = sys.joint_ring();
    let mut polys: Vec<MPoly> = sys.f.iter().map(|g| g.extend_ring(joint)).collect();
    polys.extend(lagrange_rows(&sys.f, level, joint));
    polys.push(normalizer(joint, u));
    Ok(polys)
}

/// The row vector [L₁ … L_p]·jac(F, i) as n−i polynomials in the joint ring.
fn lagrange_rows(f: &[MPoly], level: usize, joint: Ring) -> Vec<MPoly> {
    let tj = truncated_jacobian(f, level);
    let p = tj.rows();
    (0..tj.cols())
        .map(|j| {
            let mut acc = MPoly::zero(joint);
            for r in 0..p {
                let entry = tj.get(r, j).extend_ring(joint);
                let l_var = Monomial::var(joint.nvars(), joint.n_x + r);
                acc = &acc + &entry.mul_term(&l_var, &crate::polycore::rat(1));
            }
            acc
        })
        .collect()
}

/// u₁L₁ + ⋯ + u_pL_p − 1.
fn normalizer(joint: Ring, u: &[Rat]) -> MPoly {
    let mut acc = MPoly::constant(joint, crate::polycore::rat(-1));
    for (r, c) in u.iter().enumerate() {
        acc = &acc + &MPoly::var(joint, joint.n_x + r).scale(c);
    }
    acc
}

/// The square system solved at each level: the slice equations
/// x₁−σ₁,…,x_{i−1}−σ_{i−1} first, then F^A, then [L]·jac(F^A, i), then the
/// normalizer. n+p equations in the n+p unknowns (x, L).
#[derive(Clone, Debug)]
pub struct LagrangeFiberSystem {
    pub level: usize,
    pub a: RatMatrix,
    /// The slice prefix σ₁..σ_{i−1} actually used at this level.
    pub sigma: Vec<Rat>,
    pub u: Vec<Rat>,
    pub polys: Vec<MPoly>,
    pub ring: Ring,
    /// F^A, kept for audits (membership of projections, regularity).
    pub fa: Vec<MPoly>,
}

pub fn build_fiber_system(
    sys: &InputSystem,
    level: usize,
    a: &RatMatrix,
    sigma: &[Rat],
    u: &[Rat],
) -> Result<LagrangeFiberSystem, BuildError> {
    check_level(sys, level)?;
    if a.rows() != sys.n || a.cols() != sys.n {
        return Err(BuildError::WrongParameterCount);
    }
    if !a.is_invertible() {
        return Err(BuildError::SingularMatrix);
    }
    if sigma.len() < level - 1 || u.len() != sys.p {
        return Err(BuildError::WrongParameterCount);
    }
    if u.iter().all(Rat::is_zero) {
        return Err(BuildError::ZeroNormalizer);
    }
    let joint = sys.joint_ring();
    // F^A is expanded fully before differentiation; the chain rule identity
    // jac(F^A) = jac(F)^A·A is checked separately in tests, not relied on.
    let fa: Vec<MPoly> = sys.f.iter().map(|g| g.change_of_vars(a)).collect();
    let mut polys: Vec<MPoly> = Vec::with_capacity(sys.n + sys.p);
    for (k, s) in sigma.iter().take(level - 1).enumerate() {
        let slice = &MPoly::var(joint, k) - &MPoly::constant(joint, s.clone());
        polys.push(slice);
    }
    polys.extend(fa.iter().map(|g| g.extend_ring(joint)));
    polys.extend(lagrange_rows(&fa, level, joint));
    polys.push(normalizer(joint, u));
    Ok(LagrangeFiberSystem {
        level,
        a: a.clone(),
        sigma: sigma[..level - 1].to_vec(),
        u: u.to_vec(),
        polys,
        ring: joint,
        fa,
    })
}

/// The sliced minor system at a level: x₁−σ₁,…,x_{i−1}−σ_{i−1}, F^A, then
/// the p-minors of jac(F^A, i), all in the X-ring. Used as the independent
/// oracle for the projection of the Lagrange fiber solutions.
pub fn build_minor_fiber_system(
    sys: &InputSystem,
    level: usize,
    a: &RatMatrix,
    sigma: &[Rat],
) -> Result<Vec<MPoly>, BuildError> {
    check_level(sys, level)?;
    if a.rows() != sys.n || a.cols() != sys.n {
        return Err(BuildError::WrongParameterCount);
    }
    if !a.is_invertible() {
        return Err(BuildError::SingularMatrix);
    }
    if sigma.len() < level - 1 {
        return Err(BuildError::WrongParameterCount);
    }
    let ring = sys.ring();
    let fa: Vec<MPoly> = sys.f.iter().map(|g| g.change_of_vars(a)).collect();
    let mut polys: Vec<MPoly> = Vec::new();
    for (k, s) in sigma.iter().take(level - 1).enumerate() {
        polys.push(&MPoly::var(ring, k) - &MPoly::constant(ring, s.clone()));
    }
    polys.extend(fa.iter().cloned());
    polys.extend(truncated_jacobian(&fa, level).p_minors());
    Ok(polys)
}
