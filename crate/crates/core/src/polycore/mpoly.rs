//! Sparse multivariate polynomials over ℚ with graded reverse lexicographic
//! term order, formal calculus, and linear changes of variables.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{PolyMatrix, RatMatrix};
use super::scalar::{Height, Int, Rat};
use super::Ring;

/// Exponent vector in a fixed ring. The `Ord` implementation is graded
/// reverse lexicographic, so a `BTreeMap` keyed by monomials iterates from
/// the smallest term up and the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index {} out of range", j);
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// self / other, if other divides self.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Monomial {
                exps: self
                    .exps
                    .iter()
                    .zip(&other.exps)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the two monomials share no variable.
    pub fn disjoint(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse lexicographic tie-break: of two monomials with equal total
        // degree, the larger is the one with the smaller exponent on the
        // last variable where they differ.
        for j in (0..self.exps.len()).rev() {
            match self.exps[j].cmp(&other.exps[j]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial: a map from monomials to nonzero rational
/// coefficients, tagged with its ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(ring: Ring) -> Self {
        MPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        MPoly { ring, terms }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rat::one())
    }

    /// The variable with ring index j as a polynomial.
    pub fn var(ring: Ring, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), j), Rat::one());
        MPoly { ring, terms }
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut out = MPoly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match ring");
            out.add_term(&m, &c);
        }
        out
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading (grevlex-largest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: &Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m.clone()) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.ring);
        }
        MPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// self · c·m for a single term c·m.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.ring);
        }
        MPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    /// In-place self -= c · m · g, the workhorse of polynomial reduction.
    pub fn sub_scaled_term(&mut self, c: &Rat, m: &Monomial, g: &MPoly) {
        assert_eq!(self.ring, g.ring, "ring mismatch");
        for (gm, gc) in &g.terms {
            let key = gm.mul(m);
            let delta = c * gc;
            match self.terms.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
                Entry::Occupied(mut e) => {
                    let nv = e.get() - &delta;
                    if nv.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = nv;
                    }
                }
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, Rat)> {
        self.terms.pop_last()
    }

    /// Formal partial derivative with respect to the variable with ring
    /// index j.
    pub fn partial_derivative(&self, j: usize) -> MPoly {
        assert!(j < self.ring.nvars(), "variable index out of range");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[j] -= 1;
            terms.insert(Monomial::from_exps(exps), c * Rat::from_integer(Int::from(e)));
        }
        MPoly {
            ring: self.ring,
            terms,
        }
    }

    /// Exact value at a rational point covering every ring variable.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.nvars(), "point length does not match ring");
        let mut powers: Vec<Vec<Rat>> = point.iter().map(|x| vec![Rat::one(), x.clone()]).collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for j in 0..point.len() {
                let e = m.exp(j) as usize;
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap() * &point[j];
                    powers[j].push(next);
                }
                if e > 0 {
                    t *= &powers[j][e];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitution X ← A·X on the X-variables: f^A(X) = f(A X). Lagrange
    /// variables are untouched. A must be n×n for n the ring's X count.
    pub fn change_of_vars(&self, a: &RatMatrix) -> MPoly {
        let n = self.ring.n_x;
        assert_eq!((a.rows(), a.cols()), (n, n), "change of variables needs an n_x by n_x matrix");
        let images: Vec<MPoly> = (0..n)
            .map(|j| {
                let mut s = MPoly::zero(self.ring);
                for k in 0..n {
                    s.add_term(&Monomial::var(self.ring.nvars(), k), a.get(j, k));
                }
                s
            })
            .collect();
        let mut powers: Vec<Vec<MPoly>> = (0..n).map(|_| vec![MPoly::one(self.ring)]).collect();
        let mut acc = MPoly::zero(self.ring);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(self.ring, c.clone());
            for (j, item) in images.iter().enumerate() {
                let e = m.exp(j) as usize;
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap() * item;
                    powers[j].push(next);
                }
                if e > 0 {
                    t = &t * &powers[j][e];
                }
            }
            // carry over the untouched Lagrange part of the monomial
            let mut lexps = vec![0; self.ring.nvars()];
            for j in n..self.ring.nvars() {
                lexps[j] = m.exp(j);
            }
            let lpart = Monomial::from_exps(lexps);
            if !lpart.is_one() {
                t = t.mul_term(&lpart, &Rat::one());
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-tags the polynomial in a larger ring with the same X-prefix,
    /// padding exponents for the new variables with zeros.
    pub fn extend_ring(&self, new_ring: Ring) -> MPoly {
        assert!(new_ring.n_x >= self.ring.n_x && new_ring.n_l >= self.ring.n_l);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; new_ring.nvars()];
                for j in 0..self.ring.n_x {
                    exps[j] = m.exp(j);
                }
                for t in 0..self.ring.n_l {
                    exps[new_ring.n_x + t] = m.exp(self.ring.n_x + t);
                }
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        MPoly {
            ring: new_ring,
            terms,
        }
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rat::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Scales by a positive rational so that all coefficients become coprime
    /// integers. Used to keep Buchberger intermediates small.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom = Int::one();
        for c in self.terms.values() {
            denom = denom.lcm(c.denom());
        }
        let mut num_gcd = Int::zero();
        for c in self.terms.values() {
            let scaled = (c.numer() * &denom / c.denom()).abs();
            num_gcd = num_gcd.gcd(&scaled);
        }
        let factor = Rat::new(denom, num_gcd);
        self.scale(&factor)
    }

    pub fn height(&self) -> Height {
        if self.is_zero() {
            return Height::zero();
        }
        Height::of_coeffs(self.terms.values())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, &-c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = MPoly::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = monomial_string(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

fn monomial_string(ring: &Ring, m: &Monomial) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for j in 0..m.nvars() {
        let e = m.exp(j);
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "{}", ring.var_name(j));
        if e > 1 {
            let _ = write!(s, "^{}", e);
        }
    }
    s
}

/// Jacobian with respect to an explicit list of variable indices: entry
/// (i, j) is ∂f_i/∂x_{indices[j]}.
pub fn jacobian_wrt(polys: &[MPoly], indices: &[usize]) -> PolyMatrix {
    assert!(!polys.is_empty(), "jacobian of an empty system");
    let ring = polys[0].ring();
    let entries = polys
        .iter()
        .flat_map(|f| {
            assert_eq!(f.ring(), ring, "ring mismatch");
            indices.iter().map(move |&j| f.partial_derivative(j))
        })
        .collect();
    PolyMatrix::new(ring, polys.len(), indices.len(), entries)
}

/// Jacobian with respect to all X-variables of the ring.
pub fn jacobian(polys: &[MPoly]) -> PolyMatrix {
    assert!(!polys.is_empty(), "jacobian of an empty system");
    let n = polys[0].ring().n_x;
    let indices: Vec<usize> = (0..n).collect();
    jacobian_wrt(polys, &indices)
}

/// Truncated Jacobian jac(F, i): derivatives with respect to X_{i+1},…,X_n
/// only (level i is 1-based). For a system of p polynomials in n variables
/// the result is p×(n−i); at the top level i = n−p+1 it is p×(p−1).
pub fn truncated_jacobian(polys: &[MPoly], level: usize) -> PolyMatrix {
    assert!(!polys.is_empty(), "jacobian of an empty system");
    let n = polys[0].ring().n_x;
    assert!(level >= 1 && level <= n, "level {} out of range 1..={}", level, n);
    let indices: Vec<usize> = (level..n).collect();
    jacobian_wrt(polys, &indices)
}
