//! Real-point extraction from a zero-dimensional parameterization: Sturm
//! isolation of the real roots of q, bisection refinement until the exact
//! interval images of the coordinate functions v_j/q′ reach a requested
//! width.
//! Everything on the certified path is rational arithmetic; floating point
//! appears only in user-facing approximations produced elsewhere.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::polycore::{ratio, MPoly, Rat, RatMatrix, UPoly};
use crate::zdsolve::ZeroDimParam;

/// A closed rational interval.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / crate::polycore::rat(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Interval) -> Interval {
        assert!(!other.contains_zero(), "interval division requires a zero-free divisor");
        let recip = Interval::new(
            Rat::one() / &other.hi,
            Rat::one() / &other.lo,
        );
        self.mul(&recip)
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exact interval extension of a univariate polynomial by Horner steps.
pub fn eval_interval(q: &UPoly, iv: &Interval) -> Interval {
    let coeffs = q.coeffs();
    if coeffs.is_empty() {
        return Interval::point(Rat::zero());
    }
    let mut acc = Interval::point(coeffs.last().expect("nonempty").clone());
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(iv).add(&Interval::point(c.clone()));
    }
    acc
}

/// The Sturm chain of a squarefree polynomial, with elements kept primitive
/// over ℤ by positive scalings so that sign evaluations stay honest.
pub struct SturmChain {
    seq: Vec<UPoly>,
}

impl SturmChain {
    pub fn new(q: &UPoly) -> Self {
        let s0 = q.primitive_signed();
        let s1 = s0.derivative().primitive_signed();
        let mut seq = alloc::vec![s0];
        if !s1.is_zero() {
            seq.push(s1);
        }
        while seq.last().map_or(false, |s| !s.is_zero()) && seq.len() >= 2 {
            let r = seq[seq.len() - 2].rem(&seq[seq.len() - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-&r).primitive_signed());
        }
        SturmChain { seq }
    }

    /// Sign variations of the chain at x, zeros skipped.
    pub fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for s in &self.seq {
            let val = s.eval(x);
            if val.is_zero() {
                continue;
            }
            let pos = val.is_positive();
            if let Some(prev) = last {
                if prev != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of roots in the half-open interval (a, b].
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a < b, "count needs an ordered interval");
        self.variations(a) - self.variations(b)
    }
}

/// A strict bound on the magnitude of every complex root.
pub fn cauchy_bound(q: &UPoly) -> Rat {
    let lead = q.leading().expect("nonzero polynomial").abs();
    let coeffs = q.coeffs();
    let biggest = coeffs[..coeffs.len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + biggest / lead
}

/// Walks from `anchor` toward `from` in halving steps until the open gap to
/// `anchor` holds exactly `want` roots and the endpoint itself is not a
/// root. Used to detach exact roots hit during subdivision.
fn nudge(chain: &SturmChain, q: &UPoly, from: &Rat, anchor: &Rat, want: usize) -> Rat {
    let mut delta = (anchor - from) / crate::polycore::rat(2);
    loop {
        let x = anchor - &delta;
        let hit = if &x < anchor {
            chain.count(&x, anchor)
        } else {
            chain.count(anchor, &x)
        };
        if hit == want && !q.eval(&x).is_zero() {
            return x;
        }
        delta = &delta / crate::polycore::rat(2);
    }
}

/// Shrinks an open isolating interval (with a sign change and non-root
/// endpoints) until the closed result lies strictly inside it, so outputs
/// for distinct roots can never touch.
fn tighten(q: &UPoly, lo0: Rat, hi0: Rat) -> Interval {
    let mut lo = lo0.clone();
    let mut hi = hi0.clone();
    let mut sign_lo = q.eval(&lo).is_positive();
    debug_assert_ne!(sign_lo, q.eval(&hi).is_positive(), "single simple root flips the sign");
    loop {
        if lo > lo0 && hi < hi0 {
            return Interval::new(lo, hi);
        }
        let m = (&lo + &hi) / crate::polycore::rat(2);
        let qm = q.eval(&m);
        if qm.is_zero() {
            return Interval::point(m);
        }
        if qm.is_positive() == sign_lo {
            lo = m;
            sign_lo = qm.is_positive();
        } else {
            hi = m;
        }
    }
}

/// Isolates every real root of a squarefree polynomial into pairwise
/// disjoint closed rational intervals, one root each, ordered left to right.
/// Exact rational roots come back as point intervals.
pub fn sturm_isolate(q: &UPoly) -> Vec<Interval> {
    assert!(!q.is_zero(), "cannot isolate roots of the zero polynomial");
    assert!(q.is_squarefree(), "isolation requires a squarefree polynomial");
    let qs = q.primitive_signed();
    if qs.degree() == Some(0) {
        return Vec::new();
    }
    let chain = SturmChain::new(&qs);
    let bound = cauchy_bound(&qs);
    let neg = -bound.clone();
    let mut out: Vec<Interval> = Vec::new();
    let mut stack: Vec<(Rat, Rat, usize)> = Vec::new();
    // the bound is strict, so ±bound are never roots and every interval on
    // the stack has non-root endpoints with count = roots strictly inside
    let total = chain.count(&neg, &bound);
    if total > 0 {
        stack.push((neg, bound, total));
    }
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 1 {
            out.push(tighten(&qs, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / crate::polycore::rat(2);
        if qs.eval(&mid).is_zero() {
            // detach the exact root and resume on nudged, root-free endpoints
            let ml = nudge(&chain, &qs, &lo, &mid, 1);
            let mr = nudge(&chain, &qs, &hi, &mid, 0);
            let left = chain.count(&lo, &ml);
            let right = chain.count(&mr, &hi);
            out.push(Interval::point(mid));
            if left > 0 {
                stack.push((lo, ml, left));
            }
            if right > 0 {
                stack.push((mr, hi, right));
            }
        } else {
            let left = chain.count(&lo, &mid);
            let right = count - left;
            if left > 0 {
                stack.push((lo, mid.clone(), left));
            }
            if right > 0 {
                stack.push((mid, hi, right));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Bisects an isolating interval down to the requested width. Point inputs
/// pass through; hitting the root exactly returns a point interval.
pub fn refine(q: &UPoly, iv: &Interval, width: &Rat) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let qs = q.primitive_signed();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let sign_lo = qs.eval(&lo).is_positive();
    assert_ne!(
        sign_lo,
        qs.eval(&hi).is_positive(),
        "refinement needs a bracketing interval"
    );
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / crate::polycore::rat(2);
        let qm = qs.eval(&m);
        if qm.is_zero() {
            return Interval::point(m);
        }
        if qm.is_positive() == sign_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Interval::new(lo, hi)
}

/// A certified real solution point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealPoint {
    /// Rational approximations, evaluated at the root enclosure midpoint.
    pub coordinates: Vec<Rat>,
    /// Exact interval enclosures; each coordinate lies in its enclosure.
    pub enclosures: Vec<Interval>,
    /// Which polar-variety level produced the point.
    pub level: usize,
    /// Index of the root of q, in increasing root order.
    pub root_index: usize,
    /// Exact values of the system polynomials at `coordinates`.
    pub residuals: Vec<Rat>,
}

/// One RealPoint per real root of q. The root enclosure is refined until
/// the interval extension of q′ excludes zero (squarefree q guarantees it
/// can) and until every coordinate enclosure v_j/q′ is at most `width`
/// wide: the coordinate functions amplify the root interval by the size of
/// their coefficients, and the caller's tolerance is about coordinates,
/// not about the internal root variable. Coordinates are v_j(m)/q′(m) at
/// the midpoint. Residuals start empty: they are filled against a chosen
/// system once the points are in their final frame.
pub fn extract_points(p: &ZeroDimParam, width: &Rat, level: usize) -> Vec<RealPoint> {
    let qp = p.q.derivative();
    let half = ratio(1, 2);
    sturm_isolate(&p.q)
        .into_iter()
        .enumerate()
        .map(|(root_index, iv)| {
            let mut enc = refine(&p.q, &iv, width);
            let mut w = width.clone();
            while eval_interval(&qp, &enc).contains_zero() {
                debug_assert!(!enc.is_point(), "point enclosures of simple roots exclude zero");
                w = &w * &half;
                enc = refine(&p.q, &enc, &w);
            }
            let enclosures = loop {
                let dq = eval_interval(&qp, &enc);
                let encs: Vec<Interval> =
                    p.v.iter().map(|vj| eval_interval(vj, &enc).div(&dq)).collect();
                if encs.iter().all(|e| &e.width() <= width) {
                    break encs;
                }
                w = &w * &half;
                enc = refine(&p.q, &enc, &w);
            };
            let m = enc.midpoint();
            let qpm = qp.eval(&m);
            let coordinates = p.v.iter().map(|vj| vj.eval(&m) / &qpm).collect();
            RealPoint {
                coordinates,
                enclosures,
                level,
                root_index,
                residuals: Vec::new(),
            }
        })
        .collect()
}

/// Exact residuals of the system at each point's rational approximation.
pub fn fill_residuals(points: &mut [RealPoint], system: &[MPoly]) {
    for pt in points {
        pt.residuals = system.iter().map(|f| f.evaluate(&pt.coordinates)).collect();
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RealizeError {
    SingularMatrix,
}

impl fmt::Display for RealizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizeError::SingularMatrix => write!(f, "change of frame must be invertible"),
        }
    }
}

/// Maps points found in substituted coordinates y back to the original
/// frame via x = A·y. Residuals are cleared; they refer to a system in the
/// old frame and must be recomputed.
pub fn map_back_points(points: &[RealPoint], a: &RatMatrix) -> Result<Vec<RealPoint>, RealizeError> {
    if !a.is_invertible() {
        return Err(RealizeError::SingularMatrix);
    }
    Ok(points
        .iter()
        .map(|pt| {
            let n = a.rows();
            assert_eq!(pt.coordinates.len(), n, "frame dimension mismatch");
            let coordinates = a.mul_vec(&pt.coordinates);
            let enclosures = (0..n)
                .map(|i| {
                    let mut acc = Interval::point(Rat::zero());
                    for (k, enc) in pt.enclosures.iter().enumerate() {
                        acc = acc.add(&enc.scale(a.get(i, k)));
                    }
                    acc
                })
                .collect();
            RealPoint {
                coordinates,
                enclosures,
                level: pt.level,
                root_index: pt.root_index,
                residuals: Vec::new(),
            }
        })
        .collect())
}

/// Transports a parameterization to the original frame: v′ = A·v acting on
/// the coordinate vector, λ′ = λ∘A⁻¹. Roots of q are untouched, so the λ
/// identity and the point set transform together and all invariants hold
/// in the new frame.
pub fn map_back_param(p: &ZeroDimParam, a: &RatMatrix) -> Result<ZeroDimParam, RealizeError> {
    let a_inv = a.inverse().ok_or(RealizeError::SingularMatrix)?;
    assert_eq!(p.ring.n_l, 0, "map back after projecting away Lagrange coordinates");
    assert_eq!(a.rows(), p.ring.nvars(), "frame dimension mismatch");
    let n = a.rows();
    let v: Vec<UPoly> = (0..n)
        .map(|i| {
            let mut acc = UPoly::zero();
            for (k, vk) in p.v.iter().enumerate() {
                acc = &acc + &vk.scale(a.get(i, k));
            }
            acc
        })
        .collect();
    Ok(ZeroDimParam {
        ring: p.ring,
        q: p.q.clone(),
        v,
        lambda: p.lambda.transform(&a_inv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, MPoly, Ring};
    use crate::zdsolve::{solve_zero_dim, verify_param, LambdaPolicy, LinearForm, SolveStatus};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn pow2_width(k: u32) -> Rat {
        ratio(1, 1i64 << k)
    }

    #[test]
    fn isolates_plus_minus_one() {
        let q = UPoly::from_ints(&[-1, 0, 1]);
        let ivs = sturm_isolate(&q);
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].contains(&rat(-1)));
        assert!(ivs[1].contains(&rat(1)));
        assert!(!ivs[0].intersects(&ivs[1]));
    }

    #[test]
    fn no_real_roots() {
        let q = UPoly::from_ints(&[1, 0, 1]);
        assert!(sturm_isolate(&q).is_empty());
    }

    #[test]
    fn sqrt_three_over_two_enclosure() {
        // T² − 3/4 has roots ±√3/2 ≈ ±0.8660254037844386
        let q = UPoly::from_coeffs(alloc::vec![ratio(-3, 4), Rat::zero(), rat(1)]);
        let ivs = sturm_isolate(&q);
        assert_eq!(ivs.len(), 2);
        let enc = refine(&q, &ivs[1], &pow2_width(30));
        assert!(enc.width() <= pow2_width(30));
        // frozen decimal bracket for √3/2
        let below = ratio(8_660_254_037, 10_000_000_000);
        let above = ratio(8_660_254_038, 10_000_000_000);
        assert!(enc.lo() < &above && enc.hi() > &below);
    }

    #[test]
    fn exact_rational_root_becomes_a_point() {
        let q = UPoly::from_ints(&[-3, 1]);
        let ivs = sturm_isolate(&q);
        assert_eq!(ivs, alloc::vec![Interval::point(rat(3))]);
        assert_eq!(refine(&q, &ivs[0], &pow2_width(20)), Interval::point(rat(3)));
    }

    #[test]
    fn refinement_reaches_requested_width() {
        let q = UPoly::from_ints(&[-2, 0, 1]);
        let ivs = sturm_isolate(&q);
        let enc = refine(&q, &ivs[1], &pow2_width(20));
        assert!(enc.width() <= pow2_width(20));
        let tighter = refine(&q, &enc, &pow2_width(40));
        assert!(tighter.width() <= pow2_width(40));
        assert!(enc.lo() <= tighter.lo() && tighter.hi() <= enc.hi());
    }

    #[test]
    fn clustered_roots_still_separate() {
        // roots at 0, 1/1024 and 1: subdivision must split the tight pair
        let a = UPoly::from_ints(&[0, 1]);
        let b = UPoly::from_coeffs(alloc::vec![ratio(-1, 1024), rat(1)]);
        let c = UPoly::from_ints(&[-1, 1]);
        let q = &(&a * &b) * &c;
        let ivs = sturm_isolate(&q);
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(!w[0].intersects(&w[1]));
        }
        assert!(ivs[0].contains(&rat(0)));
        assert!(ivs[1].contains(&ratio(1, 1024)));
        assert!(ivs[2].contains(&rat(1)));
    }

    #[test]
    fn circle_fixture_points_are_exact() {
        let r = Ring::x_only(2);
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        let circle = &(&(&x1 * &x1) + &(&x2 * &x2)) - &MPoly::one(r);
        let system = [circle, x2];
        let policy = LambdaPolicy { x_only: true, budget: 8, expect_radical: true };
        let out = solve_zero_dim(&system, &policy, &mut ChaCha12Rng::seed_from_u64(1));
        assert_eq!(out.status, SolveStatus::Parameterization);
        let p = out.param.unwrap();
        let mut pts = extract_points(&p, &pow2_width(20), 1);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].coordinates, alloc::vec![rat(-1), rat(0)]);
        assert_eq!(pts[1].coordinates, alloc::vec![rat(1), rat(0)]);
        for (pt, idx) in pts.iter().zip([0usize, 1]) {
            assert_eq!(pt.root_index, idx);
            assert_eq!(pt.level, 1);
            for (c, e) in pt.coordinates.iter().zip(&pt.enclosures) {
                assert!(e.contains(c));
            }
        }
        fill_residuals(&mut pts, &system);
        assert!(pts.iter().all(|pt| pt.residuals.iter().all(Rat::is_zero)));
    }

    #[test]
    fn empty_parameterization_gives_no_points() {
        let r = Ring::x_only(1);
        let p = crate::zdsolve::ZeroDimParam {
            ring: r,
            q: UPoly::from_ints(&[1, 0, 1]),
            v: alloc::vec![UPoly::zero()],
            lambda: LinearForm::coordinate(r, 0),
        };
        assert!(extract_points(&p, &pow2_width(10), 3).is_empty());
    }

    #[test]
    fn map_back_recovers_hyperbola_branches() {
        // level-2 fixture of the rotated hyperbola with σ₁ = 0: points
        // (0, ±1) in rotated coordinates, λ = x₂
        let r = Ring::x_only(2);
        let p = crate::zdsolve::ZeroDimParam {
            ring: r,
            q: UPoly::from_ints(&[-1, 0, 1]),
            v: alloc::vec![UPoly::zero(), UPoly::from_ints(&[2])],
            lambda: LinearForm::coordinate(r, 1),
        };
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        let rotated = &(&(&x2 * &x2) - &(&x1 * &x1)) - &MPoly::one(r);
        assert!(verify_param(&p, &[x1.clone(), rotated]).is_ok());

        let a = RatMatrix::from_int_rows(&[&[1, 1], &[-1, 1]]);
        let mapped = map_back_param(&p, &a).unwrap();
        let hyperbola = &(&x1 * &x2) - &MPoly::one(r);
        assert!(verify_param(&mapped, &[hyperbola]).is_ok());

        let pts = extract_points(&mapped, &pow2_width(20), 2);
        let coords: Vec<_> = pts.iter().map(|pt| pt.coordinates.clone()).collect();
        // one point per branch of x₁x₂ = 1
        assert_eq!(coords, alloc::vec![
            alloc::vec![rat(-1), rat(-1)],
            alloc::vec![rat(1), rat(1)],
        ]);

        let raw = extract_points(&p, &pow2_width(20), 2);
        let moved = map_back_points(&raw, &a).unwrap();
        let moved_coords: Vec<_> = moved.iter().map(|pt| pt.coordinates.clone()).collect();
        assert_eq!(moved_coords, coords);
    }

    #[test]
    fn map_back_round_trip_and_singular_rejection() {
        let r = Ring::x_only(2);
        let p = crate::zdsolve::ZeroDimParam {
            ring: r,
            q: UPoly::from_ints(&[-1, 0, 1]),
            v: alloc::vec![UPoly::from_ints(&[0, 4]), UPoly::from_ints(&[2])],
            lambda: LinearForm::coordinate(r, 0),
        };
        let a = RatMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let back = map_back_param(&map_back_param(&p, &a).unwrap(), &a.inverse().unwrap()).unwrap();
        assert_eq!(back, p);
        let identity = map_back_param(&p, &RatMatrix::identity(2)).unwrap();
        assert_eq!(identity, p);

        let singular = RatMatrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(map_back_param(&p, &singular), Err(RealizeError::SingularMatrix));
        assert_eq!(map_back_points(&[], &singular), Err(RealizeError::SingularMatrix));
    }

    #[test]
    fn interval_arithmetic_signs() {
        let neg = Interval::new(rat(-4), rat(-2));
        let pos = Interval::new(rat(1), rat(2));
        assert_eq!(neg.div(&pos), Interval::new(rat(-4), rat(-1)));
        assert_eq!(neg.mul(&neg), Interval::new(rat(4), rat(16)));
        assert_eq!(pos.scale(&rat(-3)), Interval::new(rat(-6), rat(-3)));
        assert!(Interval::new(rat(-1), rat(1)).contains_zero());
        assert!(!pos.contains_zero());
        // interval Horner: (T² + 1) over [−1, 2] stays within [1, 6] bounds
        let q = UPoly::from_ints(&[1, 0, 1]);
        let img = eval_interval(&q, &Interval::new(rat(-1), rat(2)));
        assert!(img.contains(&rat(1)) && img.contains(&rat(5)));
    }
}
