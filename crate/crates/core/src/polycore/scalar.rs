//! Scalar layer: arbitrary-precision integers and rationals, plus the exact
//! height measure (minimal common denominator and largest cleared integer
//! coefficient, with a logarithmic view for display only).

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Integer constant.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Integer rational constant.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// The rational num/den. Panics if den is zero.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Lossy conversion for display and advisory decimal output only.
pub fn rat_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Natural logarithm of |x|, with |x| in {0, 1} mapped to 0. Stays accurate
/// for integers far beyond f64 range by splitting off the bit length.
pub fn ln_int(x: &Int) -> f64 {
    let mag = x.abs();
    if mag.is_zero() || mag.is_one() {
        return 0.0;
    }
    let bits = mag.bits();
    if bits <= 53 {
        return libm::log(mag.to_f64().unwrap());
    }
    let top: Int = &mag >> ((bits - 53) as usize);
    libm::log(top.to_f64().unwrap()) + (bits - 53) as f64 * core::f64::consts::LN_2
}

/// Exact height data of a polynomial with rational coefficients: `denom` is
/// the minimal common denominator v, `max_abs` the largest absolute value
/// among the integer coefficients of v·f. The logarithmic height is
/// max(ln v, ln max_abs), which equals ln(max(v, max_abs)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Height {
    pub denom: Int,
    pub max_abs: Int,
}

impl Height {
    /// Height of the zero polynomial, defined as (1, 0) with log 0.
    pub fn zero() -> Self {
        Height {
            denom: Int::one(),
            max_abs: Int::zero(),
        }
    }

    pub fn of_coeffs<'a>(coeffs: impl Iterator<Item = &'a Rat> + Clone) -> Self {
        let mut denom = Int::one();
        for c in coeffs.clone() {
            denom = denom.lcm(c.denom());
        }
        let mut max_abs = Int::zero();
        for c in coeffs {
            let scaled = (c.numer() * &denom / c.denom()).abs();
            if scaled > max_abs {
                max_abs = scaled;
            }
        }
        Height { denom, max_abs }
    }

    /// max(ln denom, ln max_abs), the logarithmic height.
    pub fn log(&self) -> f64 {
        let largest = (&self.denom).max(&self.max_abs);
        ln_int(largest)
    }

    /// The larger of two heights in the logarithmic order, compared exactly.
    pub fn join(&self, other: &Height) -> Height {
        let a = (&self.denom).max(&self.max_abs);
        let b = (&other.denom).max(&other.max_abs);
        if b > a {
            other.clone()
        } else {
            self.clone()
        }
    }
}
