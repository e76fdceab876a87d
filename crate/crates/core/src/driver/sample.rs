//! Step-1 sampling: exact evaluation of the set-size formulas, the
//! repetition count, the DeMillo–Lipton–Schwartz–Zippel budget identities,
//! and the seeded uniform draw of (A, σ, u).

use alloc::vec::Vec;

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::polycore::{int, rat, Int, Rat, RatMatrix};

use super::DriverError;

/// Sizes of the integer ranges S, T, R that A, σ and u are drawn from, and
/// the repetition count k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SampleSets {
    pub s_size: Int,
    pub t_size: Int,
    pub r_size: Int,
    pub k: u32,
}

fn pow(base: &Int, e: u32) -> Int {
    num_traits::pow::pow(base.clone(), e as usize)
}

fn ceil_to_int(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// The three polynomial-degree bounds behind the sizes: 5n³(2d)^{5n} for A,
/// n·d^{4n} for σ, n·d^{2n} for u.
pub fn dlsz_degree_bounds(n: usize, d: u64) -> [Int; 3] {
    let n_int = int(n as i64);
    let d_int = Int::from(d);
    let nn = n as u32;
    [
        int(5) * &n_int * &n_int * &n_int * pow(&(int(2) * &d_int), 5 * nn),
        &n_int * pow(&d_int, 4 * nn),
        &n_int * pow(&d_int, 2 * nn),
    ]
}

/// k = ⌈log₂(4n/ε)⌉ computed by exact comparison, no floating point.
pub fn repetition_count(n: usize, epsilon: &Rat) -> u32 {
    let target = rat(4 * n as i64) / epsilon;
    let mut k = 0u32;
    let mut power = Rat::one();
    while power < target {
        power = power * rat(2);
        k += 1;
        assert!(k <= 512, "epsilon is implausibly tiny");
    }
    k
}

fn check_epsilon(epsilon: &Rat) -> Result<(), DriverError> {
    if epsilon <= &Rat::zero() || epsilon >= &Rat::one() {
        return Err(DriverError::InvalidEpsilon);
    }
    Ok(())
}

/// The exact Step-1 sizes: each is ⌈4ε⁻¹ · bound⌉ for its degree bound.
/// Demands d ≥ 2, the standing assumption the probability analysis needs.
pub fn sample_sizes(n: usize, d: u64, epsilon: &Rat) -> Result<SampleSets, DriverError> {
    check_epsilon(epsilon)?;
    if d < 2 {
        return Err(DriverError::DegreeTooSmall { d });
    }
    assert!(n >= 1);
    let four_inv_eps = rat(4) / epsilon;
    let [bs, bt, br] = dlsz_degree_bounds(n, d);
    Ok(SampleSets {
        s_size: ceil_to_int(&(&four_inv_eps * Rat::from(bs))),
        t_size: ceil_to_int(&(&four_inv_eps * Rat::from(bt))),
        r_size: ceil_to_int(&(&four_inv_eps * Rat::from(br))),
        k: repetition_count(n, epsilon),
    })
}

/// Small ranges for everyday runs: {1..997} for every set. The probability
/// guarantee is not claimed at these sizes; k keeps its formula value.
pub fn practical_sizes(n: usize, epsilon: &Rat) -> Result<SampleSets, DriverError> {
    check_epsilon(epsilon)?;
    let size = int(997);
    Ok(SampleSets {
        s_size: size.clone(),
        t_size: size.clone(),
        r_size: size,
        k: repetition_count(n, epsilon),
    })
}

/// The zero-test budgets deg/|set| for the three draws; in certified mode
/// each is at most ε/4 by construction of the sizes.
pub fn dlsz_ratios(n: usize, d: u64, sets: &SampleSets) -> [Rat; 3] {
    let [bs, bt, br] = dlsz_degree_bounds(n, d);
    [
        Rat::new(bs, sets.s_size.clone()),
        Rat::new(bt, sets.t_size.clone()),
        Rat::new(br, sets.r_size.clone()),
    ]
}

/// The random data of a run: an invertible change of variables, the slice
/// values, and the normalizer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Drawn {
    pub a: RatMatrix,
    pub a_inv: RatMatrix,
    pub sigma: Vec<Rat>,
    pub u: Vec<Rat>,
}

fn draw_in(rng: &mut ChaCha12Rng, size: &Int) -> Rat {
    let bound = size.to_biguint().expect("sizes are positive");
    let x = rng.gen_biguint_below(&bound) + 1u32;
    Rat::from(Int::from(x))
}

/// Uniform draw of A ∈ {1..S}ⁿˣⁿ (redrawn while singular), σ ∈ {1..T}^δ and
/// u ∈ {1..R}^p. All randomness comes from stream 0 of a ChaCha12 generator
/// seeded with the run seed; redraws continue the stream, so the result is
/// a pure function of (sizes, seed).
pub fn draw_parameters(
    n: usize,
    delta: usize,
    p: usize,
    sets: &SampleSets,
    seed: u64,
) -> Result<Drawn, DriverError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(0);
    let mut found: Option<(RatMatrix, RatMatrix)> = None;
    for _ in 0..32 {
        let entries: Vec<Rat> = (0..n * n).map(|_| draw_in(&mut rng, &sets.s_size)).collect();
        let a = RatMatrix::new(n, n, entries);
        if let Some(a_inv) = a.inverse() {
            found = Some((a, a_inv));
            break;
        }
    }
    let (a, a_inv) = found.ok_or(DriverError::SingularDraws)?;
    let sigma: Vec<Rat> = (0..delta).map(|_| draw_in(&mut rng, &sets.t_size)).collect();
    let u: Vec<Rat> = (0..p).map(|_| draw_in(&mut rng, &sets.r_size)).collect();
    Ok(Drawn { a, a_inv, sigma, u })
}

/// Natural log of the largest drawn entry, for height telemetry.
pub fn drawn_height_log(drawn: &Drawn) -> f64 {
    let mut biggest = Int::one();
    let mut consider = |r: &Rat| {
        let n = r.numer();
        if n > &biggest {
            biggest = n.clone();
        }
    };
    for i in 0..drawn.a.rows() {
        for j in 0..drawn.a.cols() {
            consider(drawn.a.get(i, j));
        }
    }
    drawn.sigma.iter().for_each(&mut consider);
    drawn.u.iter().for_each(&mut consider);
    crate::polycore::ln_int(&biggest)
}
