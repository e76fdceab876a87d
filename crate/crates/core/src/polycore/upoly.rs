//! Dense univariate polynomials over ℚ in the parameter T: division, gcd,
//! squarefree parts, and modular arithmetic for work in ℚ[T]/(q).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Height, Int, Rat};

/// Coefficients lowest degree first; the top coefficient is nonzero, and the
/// zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Rat::one()] }
    }

    pub fn constant(v: Rat) -> Self {
        UPoly::from_coeffs(vec![v])
    }

    /// The variable T.
    pub fn t() -> Self {
        UPoly {
            c: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Rat::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::from_coeffs(c.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
    }

    /// c·T^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        UPoly { c: v }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rat::is_one)
    }

    pub fn scale(&self, f: &Rat) -> UPoly {
        if f.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            c: self.c.iter().map(|v| v * f).collect(),
        }
    }

    pub fn make_monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&(Rat::one() / lc)),
        }
    }

    pub fn derivative(&self) -> UPoly {
        if self.c.len() <= 1 {
            return UPoly::zero();
        }
        UPoly {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v * Rat::from_integer(Int::from(k as u64)))
                .collect(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let dlc = d.leading().unwrap().clone();
        let mut rem = self.c.clone();
        if rem.len() < dd + 1 {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] / &dlc;
            quot[k - dd] = f.clone();
            for (i, dc) in d.c.iter().enumerate() {
                let t = dc * &f;
                rem[k - dd + i] = &rem[k - dd + i] - &t;
            }
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// self / gcd(self, self'), made monic: the radical of a univariate
    /// polynomial.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.make_monic();
        }
        self.div_rem(&g).0.make_monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn mul_mod(&self, other: &UPoly, q: &UPoly) -> UPoly {
        (self * other).rem(q)
    }

    /// Scales by a positive rational so that the coefficients become coprime
    /// integers; the sign pattern is preserved. Used in Sturm chains.
    pub fn primitive_signed(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut denom = Int::one();
        for v in &self.c {
            denom = denom.lcm(v.denom());
        }
        let mut num_gcd = Int::zero();
        for v in &self.c {
            let scaled = (v.numer() * &denom / v.denom()).abs();
            num_gcd = num_gcd.gcd(&scaled);
        }
        self.scale(&Rat::new(denom, num_gcd))
    }

    pub fn height(&self) -> Height {
        if self.is_zero() {
            return Height::zero();
        }
        Height::of_coeffs(self.c.iter())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UPoly::from_coeffs(c)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UPoly::from_coeffs(c)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                let t = a * b;
                c[i + j] = &c[i + j] + &t;
            }
        }
        UPoly::from_coeffs(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|v| -v.clone()).collect(),
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let abs = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                if k == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{}", k)?;
                }
            }
        }
        Ok(())
    }
}
