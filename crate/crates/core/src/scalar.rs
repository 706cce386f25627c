//! The scalar abstraction shared by the linear algebra, the tower and the
//! angle computations.
//!
//! Three scalars are provided: [`CycNumber`] (exact cyclotomic, the default
//! everywhere), [`BigRational`] (exact rational, used for polynomials over
//! the rationals) and [`Float64`] (complex floating point, used to cross-check
//! exact results against a fast approximate run).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::CycNumber;

/// A field with complex conjugation.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic is exact and `is_zero` is a decision, not a guess.
    const EXACT: bool;

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn conj(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Image of a cyclotomic number; `None` when the scalar cannot hold it.
    fn from_cyclotomic(c: &CycNumber) -> Option<Self>;

    fn to_complex(&self) -> Complex64;

    /// Pivot preference for elimination; larger is better.
    fn pivot_weight(&self) -> f64 {
        if Self::EXACT {
            1.0
        } else {
            self.to_complex().norm()
        }
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_cyclotomic(c: &CycNumber) -> Option<Self> {
        c.to_rational()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Complex double precision scalar. Values with modulus below
/// [`Float64::TOLERANCE`] count as zero and equality is tolerance based.
#[derive(Debug, Clone, Copy, Default)]
pub struct Float64(pub Complex64);

impl Float64 {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn real(x: f64) -> Self {
        Float64(Complex64::new(x, 0.0))
    }
}

impl PartialEq for Float64 {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).norm() <= Self::TOLERANCE * (1.0 + self.0.norm().max(other.0.norm()))
    }
}

macro_rules! float64_binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Float64 {
            type Output = Float64;
            fn $f(self, rhs: Float64) -> Float64 {
                Float64(self.0 $op rhs.0)
            }
        }
    };
}

float64_binop!(Add, add, +);
float64_binop!(Sub, sub, -);
float64_binop!(Mul, mul, *);
float64_binop!(Div, div, /);

impl Neg for Float64 {
    type Output = Float64;
    fn neg(self) -> Float64 {
        Float64(-self.0)
    }
}

impl Zero for Float64 {
    fn zero() -> Self {
        Float64(Complex64::new(0.0, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= Self::TOLERANCE
    }
}

impl One for Float64 {
    fn one() -> Self {
        Float64(Complex64::new(1.0, 0.0))
    }
}

impl Scalar for Float64 {
    const EXACT: bool = false;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Float64(self.0.inv()))
        }
    }

    fn conj(&self) -> Self {
        Float64(self.0.conj())
    }

    fn from_i64(n: i64) -> Self {
        Float64::real(n as f64)
    }

    fn from_rational(q: &BigRational) -> Self {
        Float64::real(q.to_f64().unwrap_or(f64::NAN))
    }

    fn from_cyclotomic(c: &CycNumber) -> Option<Self> {
        Some(Float64(c.to_complex()))
    }

    fn to_complex(&self) -> Complex64 {
        self.0
    }
}
