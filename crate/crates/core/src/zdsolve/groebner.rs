//! Buchberger's algorithm over ℚ with graded-reverse-lex order, plus the
//! ideal-theoretic queries built on reduced bases: normal forms, quotient
//! dimension (count of standard monomials) and Krull dimension.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::polycore::{MPoly, Monomial, Ring};

/// Tag for the monomial order a basis was computed under. Only one order is
/// implemented; the tag travels with the artifact so readers never guess.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    GradedReverseLex,
}

/// Work counters from a basis computation, reported under verbose output.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroebnerTrace {
    /// S-pairs that survived the criteria and were actually reduced.
    pub pairs_reduced: usize,
    /// How many of those reduced to zero.
    pub zero_reductions: usize,
    /// High-water mark of coefficient size, in bits of the largest integer
    /// seen in any primitive intermediate polynomial.
    pub max_coeff_bits: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroebnerError {
    /// The S-pair budget was exhausted before the basis stabilized.
    PairLimitExceeded { limit: usize },
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::PairLimitExceeded { limit } => {
                write!(f, "Groebner pair budget of {} exceeded", limit)
            }
        }
    }
}

/// A reduced Groebner basis: monic generators, no leading term divides
/// another, every tail fully reduced, sorted ascending by leading monomial.
/// Uniqueness of the reduced basis makes equality checks meaningful.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    pub ring: Ring,
    pub order: MonomialOrder,
    pub generators: Vec<MPoly>,
}

impl GroebnerBasis {
    /// True when 1 lies in the ideal, i.e. the variety is empty.
    pub fn is_trivial(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading().map_or(false, |(m, _)| m.is_one()))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading().expect("basis members are nonzero").0.clone())
            .collect()
    }
}

/// Fully reduces f modulo the given (not necessarily complete) basis: no
/// monomial of the result is divisible by any leading monomial.
pub fn normal_form(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let ring = f.ring();
    let mut r = f.clone();
    let mut out = MPoly::zero(ring);
    'term: while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (gm, gc) = g.leading().expect("reducers are nonzero");
            if gm.divides(&m) {
                let qm = m.checked_div(gm).expect("divisibility just checked");
                let qc = &c / gc;
                r.sub_scaled_term(&qc, &qm, g);
                continue 'term;
            }
        }
        let (pm, pc) = r.pop_leading().expect("leading term exists");
        out.add_term(&pm, &pc);
    }
    out
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = l.checked_div(fm).expect("lcm is divisible");
    let b = l.checked_div(gm).expect("lcm is divisible");
    &f.mul_term(&a, gc) - &g.mul_term(&b, fc)
}

fn coeff_bits(f: &MPoly) -> u64 {
    f.terms()
        .map(|(_, c)| c.numer().abs().bits().max(c.denom().abs().bits()))
        .max()
        .unwrap_or(0)
}

fn pair_key(gens: &[MPoly], i: usize, j: usize) -> (Monomial, usize, usize) {
    let li = gens[i].leading().expect("nonzero").0;
    let lj = gens[j].leading().expect("nonzero").0;
    (li.lcm(lj), i, j)
}

/// Buchberger with the product and chain criteria and the normal selection
/// strategy (smallest lcm in the monomial order first, ties by generator
/// indices). Intermediate polynomials are kept primitive over ℤ to contain
/// coefficient growth. The pair budget bounds reduction work for callers
/// that prefer "don't know" over unbounded computation.
pub fn groebner_capped(
    system: &[MPoly],
    limit: usize,
) -> Result<(GroebnerBasis, GroebnerTrace), GroebnerError> {
    let ring = system.first().expect("non-empty system").ring();
    let mut trace = GroebnerTrace::default();
    let mut gens: Vec<MPoly> = system
        .iter()
        .filter(|f| !f.is_zero())
        .map(MPoly::primitive)
        .collect();

    // pending pairs keyed by (lcm, i, j); BTreeSet iteration order realizes
    // the selection strategy, and membership probes drive the chain criterion
    let mut pending: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 1..gens.len() {
        for i in 0..j {
            pending.insert(pair_key(&gens, i, j));
        }
    }

    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        let (lcm_ij, i, j) = key;
        let (li, _) = gens[i].leading().expect("nonzero");
        let (lj, _) = gens[j].leading().expect("nonzero");
        if li.disjoint(lj) {
            continue;
        }
        let chain_skip = (0..gens.len()).any(|k| {
            k != i
                && k != j
                && gens[k].leading().expect("nonzero").0.divides(&lcm_ij)
                && !pending.contains(&pair_key(&gens, i.min(k), i.max(k)))
                && !pending.contains(&pair_key(&gens, j.min(k), j.max(k)))
        });
        if chain_skip {
            continue;
        }
        if trace.pairs_reduced >= limit {
            return Err(GroebnerError::PairLimitExceeded { limit });
        }
        trace.pairs_reduced += 1;
        let h = normal_form(&s_poly(&gens[i], &gens[j]), &gens);
        if h.is_zero() {
            trace.zero_reductions += 1;
            continue;
        }
        let h = h.primitive();
        trace.max_coeff_bits = trace.max_coeff_bits.max(coeff_bits(&h));
        let t = gens.len();
        gens.push(h);
        for i in 0..t {
            pending.insert(pair_key(&gens, i, t));
        }
    }

    Ok((reduce_basis(ring, gens), trace))
}

/// Uncapped variant: always succeeds (an inconsistent system yields {1}).
pub fn groebner(system: &[MPoly]) -> (GroebnerBasis, GroebnerTrace) {
    groebner_capped(system, usize::MAX).expect("no budget in effect")
}

/// Minimalizes and inter-reduces, producing the unique reduced monic basis.
fn reduce_basis(ring: Ring, gens: Vec<MPoly>) -> GroebnerBasis {
    // minimal: drop any generator whose leading monomial is divisible by the
    // leading monomial of another kept one (earlier index wins on duplicates)
    let mut keep: Vec<MPoly> = Vec::new();
    for (t, g) in gens.iter().enumerate() {
        let lg = g.leading().expect("nonzero").0;
        let dominated = gens.iter().enumerate().any(|(s, h)| {
            if s == t {
                return false;
            }
            let lh = h.leading().expect("nonzero").0;
            lh.divides(lg) && (lh != lg || s < t)
        });
        if !dominated {
            keep.push(g.clone());
        }
    }
    // tails reduce against the fixed set of heads, so one pass suffices
    let snapshot = keep.clone();
    for t in 0..keep.len() {
        let others: Vec<MPoly> = snapshot
            .iter()
            .enumerate()
            .filter(|(s, _)| *s != t)
            .map(|(_, h)| h.clone())
            .collect();
        keep[t] = normal_form(&keep[t], &others).make_monic();
    }
    keep.sort_by(|a, b| {
        a.leading()
            .expect("nonzero")
            .0
            .cmp(b.leading().expect("nonzero").0)
    });
    GroebnerBasis {
        ring,
        order: MonomialOrder::GradedReverseLex,
        generators: keep,
    }
}

/// Dimension of the quotient algebra read off the leading-term ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuotientDim {
    /// 1 ∈ ideal: the variety is empty (reported as −1 where a number is needed).
    Empty,
    /// Zero-dimensional with this many standard monomials.
    Finite(usize),
    /// Positive-dimensional: infinitely many standard monomials.
    Infinite,
}

impl QuotientDim {
    /// −1 / count / None rendering for reports.
    pub fn as_signed(&self) -> Option<i64> {
        match self {
            QuotientDim::Empty => Some(-1),
            QuotientDim::Finite(k) => Some(*k as i64),
            QuotientDim::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Empty => write!(f, "-1"),
            QuotientDim::Finite(k) => write!(f, "{}", k),
            QuotientDim::Infinite => write!(f, "infinite"),
        }
    }
}

/// The monomials outside the leading-term ideal, ascending in the order, or
/// None when there are infinitely many. An empty list means 1 ∈ ideal.
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let nvars = gb.ring.nvars();
    let leads = gb.leading_monomials();
    if leads.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    if gb.generators.is_empty() {
        // zero ideal: every monomial is standard
        return if nvars == 0 { Some(alloc::vec![Monomial::one(0)]) } else { None };
    }
    // finiteness: each variable must appear as a pure power among the leads
    for j in 0..nvars {
        let has_pure_power = leads
            .iter()
            .any(|m| m.exp(j) > 0 && (0..nvars).all(|k| k == j || m.exp(k) == 0));
        if !has_pure_power {
            return None;
        }
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: Vec<Monomial> = alloc::vec![Monomial::one(nvars)];
    seen.insert(Monomial::one(nvars));
    while let Some(m) = queue.pop() {
        for j in 0..nvars {
            let next = m.mul(&Monomial::var(nvars, j));
            if seen.contains(&next) || leads.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next.clone());
            queue.push(next);
        }
    }
    Some(seen.into_iter().collect())
}

pub fn quotient_dimension(gb: &GroebnerBasis) -> QuotientDim {
    if gb.is_trivial() {
        return QuotientDim::Empty;
    }
    match standard_monomials(gb) {
        Some(b) => QuotientDim::Finite(b.len()),
        None => QuotientDim::Infinite,
    }
}

/// Krull dimension of the ideal: the largest cardinality of a variable
/// subset S such that no leading monomial is supported inside S. Returns −1
/// for the unit ideal. Subset search is fine at the variable counts the
/// pipeline produces.
pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    if gb.is_trivial() {
        return -1;
    }
    let nvars = gb.ring.nvars();
    let leads = gb.leading_monomials();
    if leads.is_empty() {
        return nvars as i64;
    }
    assert!(nvars <= 24, "subset enumeration needs a small variable count");
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| {
            (0..nvars)
                .filter(|&j| m.exp(j) > 0)
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    let mut best = 0i64;
    for s in 0u32..(1 << nvars) {
        if supports.iter().all(|sup| sup & !s != 0) {
            best = best.max(s.count_ones() as i64);
        }
    }
    best
}

/// Coordinates of a fully reduced polynomial in the standard-monomial basis.
pub(crate) fn coords(
    f: &MPoly,
    index: &BTreeMap<Monomial, usize>,
    dim: usize,
) -> Vec<crate::polycore::Rat> {
    let mut v = alloc::vec![crate::polycore::Rat::zero(); dim];
    for (m, c) in f.terms() {
        let k = *index
            .get(m)
            .expect("normal form lies in the span of standard monomials");
        v[k] = c.clone();
    }
    v
}
