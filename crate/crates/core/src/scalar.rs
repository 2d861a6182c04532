//! Exact rational scalars.
//!
//! Every coordinate that enters a geometric predicate is a `Scalar`. Floating
//! point never touches membership, feasibility, or counting.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use alloc::string::String;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An arbitrary-precision rational number in canonical (reduced) form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Scalar(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Scalar {
        Scalar(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        Scalar((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Bit length of the denominator; used to decide when endpoints need rounding.
    pub fn denom_bits(&self) -> u64 {
        self.0.denom().bits()
    }

    /// Largest multiple of `2^-bits` that is `<= self`.
    pub fn floor_dyadic(&self, bits: u32) -> Scalar {
        let scale = BigInt::one() << bits;
        let scaled = self.0.numer() * &scale;
        let q = scaled.div_floor(self.0.denom());
        Scalar(BigRational::new(q, scale))
    }

    /// Smallest multiple of `2^-bits` that is `>= self`.
    pub fn ceil_dyadic(&self, bits: u32) -> Scalar {
        let scale = BigInt::one() << bits;
        let scaled = self.0.numer() * &scale;
        let q = scaled.div_ceil(self.0.denom());
        Scalar(BigRational::new(q, scale))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.0.numer(), self.0.denom())
    }

    pub fn to_literal(&self) -> String {
        alloc::format!("{}", self)
    }
}

/// Converts `numer/denom` to the nearest-ish `f64` without overflowing on huge operands.
pub(crate) fn ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    if nb < 1000 && db < 1000 {
        return numer.to_f64().unwrap_or(0.0) / denom.to_f64().unwrap_or(1.0);
    }
    // keep ~64 significant bits of each operand
    let ns = (nb - 64).max(0) as usize;
    let ds = (db - 64).max(0) as usize;
    let n = (numer >> ns).to_f64().unwrap_or(0.0);
    let d = (denom >> ds).to_f64().unwrap_or(1.0);
    n / d * libm::exp2((ns as f64) - (ds as f64))
}

/// Natural logarithm of a big nonnegative integer; `-inf` for zero.
pub fn ln_biguint(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 1000 {
        return libm::log(value.to_f64().unwrap_or(f64::MAX));
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().unwrap_or(1.0);
    libm::log(top) + (shift as f64) * core::f64::consts::LN_2
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Sign of a scalar as an `Ordering` against zero.
pub fn sign(value: &Scalar) -> Ordering {
    match value.0.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Shorthand for `Scalar::new`.
pub fn q(numer: i64, denom: i64) -> Scalar {
    Scalar::new(numer, denom)
}
