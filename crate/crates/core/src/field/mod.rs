//! Exact arithmetic in cyclotomic fields and the handful of special values
//! the rest of the library needs.

pub mod algebraic;
pub mod approx;
mod cyclotomic;
pub mod poly;
pub mod radical;
mod serde_impl;

pub use algebraic::{
    four_cos_squared, match_four_cos_squared, real_roots, sqrt_rational, AlgebraicReal,
};
pub use approx::{approximate, compare, sign};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycNumber};
pub use poly::Poly;
pub use radical::radical_form;
pub use serde_impl::SERIAL_DIGITS;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest Coxeter number accepted by the graph catalogue.
pub const MAX_COXETER_NUMBER: u32 = 60;

/// `ζ_m^k`.
pub fn make_root_of_unity(m: u32, k: i64) -> Result<CycNumber> {
    CycNumber::root_of_unity(m, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Number(CycNumber),
    Bool(bool),
}

/// One field operation; `Conj` ignores `b`.
pub fn field_arith(a: &CycNumber, b: &CycNumber, op: FieldOp) -> Result<FieldValue> {
    Ok(match op {
        FieldOp::Add => FieldValue::Number(a + b),
        FieldOp::Sub => FieldValue::Number(a - b),
        FieldOp::Mul => FieldValue::Number(a * b),
        FieldOp::Div => FieldValue::Number(a.checked_div(b)?),
        FieldOp::Conj => FieldValue::Number(a.conj()),
        FieldOp::Eq => FieldValue::Bool(a == b),
    })
}

/// Loop parameter data for Coxeter number `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaIndex {
    /// `2cos(π/ℓ)`.
    pub delta: CycNumber,
    /// `δ²`.
    pub index: CycNumber,
    /// `δ⁻²`.
    pub tau: CycNumber,
}

pub fn delta_and_index(l: u32) -> Result<DeltaIndex> {
    if l < 3 {
        return Err(Error::CoxeterNumberTooSmall(l));
    }
    let delta = CycNumber::two_cos(2 * l);
    let index = &delta * &delta;
    let tau = index.inverse()?;
    Ok(DeltaIndex { delta, index, tau })
}

/// `T_k(x)` with `T_0 = 0`, `T_1 = 1`, `T_{k+2} = T_{k+1} - x T_k`.
pub fn t_poly<F: Scalar>(k: usize, x: &F) -> F {
    let (mut a, mut b) = (F::zero(), F::one());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = b.sub_ref(&x.mul_ref(&a));
        a = b;
        b = c;
    }
    b
}

/// The same recursion as a polynomial in `x`.
pub fn t_polynomial(k: usize) -> Poly<num_rational::BigRational> {
    let (mut a, mut b) = (Poly::zero(), Poly::one());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = b.sub(&Poly::x().mul(&a));
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_integer(n)
    }

    #[test]
    fn delta_at_three_is_one() {
        assert_eq!(delta_and_index(3).unwrap().delta, int(1));
        assert!(delta_and_index(2).is_err());
    }

    #[test]
    fn index_at_eight() {
        let d = delta_and_index(8).unwrap();
        assert_eq!(d.index, int(2) + CycNumber::sqrt2());
        assert!(d.delta.is_real() && d.index.is_real() && d.tau.is_real());
        assert_eq!(&d.tau * &d.index, int(1));
    }

    #[test]
    fn index_at_twelve() {
        // (2cos π/12)² = 2 + 2cos π/6 = 2 + √3
        assert_eq!(
            delta_and_index(12).unwrap().index,
            int(2) + CycNumber::sqrt3()
        );
    }

    #[test]
    fn chebyshev_values() {
        let g = int(7);
        let x = CycNumber::from_ratio(1, 7);
        assert_eq!(t_poly(2, &x), int(1));
        assert_eq!(&g * &t_poly(3, &x), int(6));
        assert_eq!(g.pow(2) * t_poly(5, &x), int(49 - 21 + 1));
        assert_eq!(t_polynomial(7), Poly::from_i64s(&[1, -5, 6, -1]));
    }

    #[test]
    fn field_arith_division() {
        let s2 = CycNumber::sqrt2();
        let r = field_arith(&int(1), &(int(2) + s2.clone()), FieldOp::Div).unwrap();
        assert_eq!(
            r,
            FieldValue::Number((int(2) - s2) * CycNumber::from_ratio(1, 2))
        );
        assert!(field_arith(&int(1), &int(0), FieldOp::Div).is_err());
    }
}
