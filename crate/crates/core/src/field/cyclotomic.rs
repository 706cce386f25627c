//! Exact elements of cyclotomic fields.
//!
//! A [`CycNumber`] of order `m` is stored as an integer coefficient vector over
//! the power basis `1, ζ, ..., ζ^{φ(m)-1}` (reduced modulo the `m`-th
//! cyclotomic polynomial) together with one positive common denominator.
//! Values of different orders are lifted to the least common multiple before
//! combining. Rational values are always stored with order 1.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct CycTable {
    phi: usize,
    /// Monic cyclotomic polynomial, lowest degree first, length `phi + 1`.
    cyclo: Vec<i64>,
    /// `x^e mod Φ_m` for `e` in `0..m`.
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<CycTable>>> = RefCell::new(HashMap::new());
    static CYCLO: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(m: u32) -> Rc<Vec<i64>> {
    if let Some(p) = CYCLO.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let q = cyclotomic_polynomial(d);
        p = exact_div(&p, &q);
    }
    let p = Rc::new(p);
    CYCLO.with(|c| c.borrow_mut().insert(m, p.clone()));
    p
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = rem[top];
        quot[top - dd] = c;
        if c != 0 {
            for (k, d) in den.iter().enumerate() {
                rem[top - dd + k] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn table(m: u32) -> Rc<CycTable> {
    if let Some(t) = TABLES.with(|t| t.borrow().get(&m).cloned()) {
        return t;
    }
    let cyclo = cyclotomic_polynomial(m).as_ref().clone();
    let phi = cyclo.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for k in (1..phi).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..phi {
                cur[k] -= top * cyclo[k];
            }
        }
    }
    let t = Rc::new(CycTable { phi, cyclo, powers });
    TABLES.with(|tb| tb.borrow_mut().insert(m, t.clone()));
    t
}

/// Reduces a raw exponent-indexed coefficient list (any length, exponents
/// read modulo `m`) to the power basis of `ℚ(ζ_m)`.
fn reduce_raw(m: u32, raw: &[BigInt]) -> Vec<BigInt> {
    let t = table(m);
    let mut out = vec![BigInt::zero(); t.phi];
    for (e, c) in raw.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = e % m as usize;
        if e < t.phi {
            out[e] += c;
        } else {
            for (k, &p) in t.powers[e].iter().enumerate() {
                if p != 0 {
                    out[k] += c * p;
                }
            }
        }
    }
    out
}

/// Exact element of `ℚ(ζ_m)`.
#[derive(Clone)]
pub struct CycNumber {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    fn normalize(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return CycNumber::zero();
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        let g = if den.is_negative() { -g } else { g };
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        let order = if num.len() <= 1 { 1 } else { order };
        CycNumber { order, num, den }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        CycNumber::normalize(1, vec![n.into()], BigInt::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        CycNumber::normalize(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        CycNumber::from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// `ζ_m^k` in canonical form.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroOrder);
        }
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigInt::zero(); e + 1];
        raw[e] = BigInt::one();
        Ok(CycNumber::normalize(m, reduce_raw(m, &raw), BigInt::one()))
    }

    /// Builds `Σ c_k ζ_m^k / den` from exponent-indexed integer coefficients.
    pub fn from_power_coeffs(m: u32, coeffs: &[BigInt], den: BigInt) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroOrder);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycNumber::normalize(m, reduce_raw(m, coeffs), den))
    }

    /// Builds a value from rational coefficients over the power basis.
    pub fn from_rational_coeffs(m: u32, coeffs: &[BigRational]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroOrder);
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let raw: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        CycNumber::from_power_coeffs(m, &raw, den)
    }

    /// `√2 = ζ_8 + ζ_8^{-1}`.
    pub fn sqrt2() -> Self {
        Self::two_cos(8)
    }

    /// `√3 = ζ_12 + ζ_12^{-1}`.
    pub fn sqrt3() -> Self {
        Self::two_cos(12)
    }

    /// `√5 = 2(ζ_5 + ζ_5^{-1}) + 1`.
    pub fn sqrt5() -> Self {
        Self::two_cos(5) * CycNumber::from_integer(2) + CycNumber::one()
    }

    /// `2cos(2π/m) = ζ_m + ζ_m^{-1}`.
    pub fn two_cos(m: u32) -> Self {
        let z = CycNumber::root_of_unity(m, 1).expect("positive order");
        let zi = CycNumber::root_of_unity(m, -1).expect("positive order");
        z + zi
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Numerator coefficients over the power basis (trailing zeros trimmed).
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Rational coefficients padded to length `φ(order)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let phi = table(self.order).phi;
        (0..phi)
            .map(|k| {
                let c = self.num.get(k).cloned().unwrap_or_default();
                BigRational::new(c, self.den.clone())
            })
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn lifted(&self, target: u32) -> Vec<BigInt> {
        if target == self.order || self.is_rational() {
            return self.num.clone();
        }
        let factor = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); (self.num.len() - 1) * factor + 1];
        for (k, c) in self.num.iter().enumerate() {
            raw[k * factor] = c.clone();
        }
        reduce_raw(target, &raw)
    }

    fn common_order(&self, other: &Self) -> u32 {
        self.order.lcm(&other.order)
    }

    /// Lifts to `ℚ(ζ_target)`; `target` must be a multiple of the order.
    pub fn lift_to(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::Inconsistent(format!(
                "cannot lift order {} to {}",
                self.order, target
            )));
        }
        let mut v = CycNumber::normalize(target, self.lifted(target), self.den.clone());
        if !v.is_rational() {
            v.order = target;
        }
        Ok(v)
    }

    fn scale_rational(&self, n: &BigInt, d: &BigInt) -> Self {
        CycNumber::normalize(
            self.order,
            self.num.iter().map(|c| c * n).collect(),
            &self.den * d,
        )
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate {
                -other.clone()
            } else {
                other.clone()
            };
        }
        let m = self.common_order(other);
        let a = self.lifted(m);
        let b = other.lifted(m);
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        let num = (0..n)
            .map(|k| {
                let x = a.get(k).unwrap_or(&zero) * &other.den;
                let y = b.get(k).unwrap_or(&zero) * &self.den;
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        CycNumber::normalize(m, num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycNumber::zero();
        }
        if self.is_rational() {
            return other.scale_rational(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale_rational(&other.num[0], &other.den);
        }
        let m = self.common_order(other);
        let a = self.lifted(m);
        let b = other.lifted(m);
        let mut raw = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CycNumber::normalize(m, reduce_raw(m, &raw), &self.den * &other.den)
    }

    /// Complex conjugate, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let m = self.order as usize;
        let mut raw = vec![BigInt::zero(); m];
        for (k, c) in self.num.iter().enumerate() {
            raw[(m - k) % m] = c.clone();
        }
        CycNumber::normalize(self.order, reduce_raw(self.order, &raw), self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || self.conj() == *self
    }

    pub fn real_part(&self) -> Self {
        (self.clone() + self.conj()) * CycNumber::from_ratio(1, 2)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycNumber::normalize(
                1,
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        let t = table(self.order);
        let a: Poly<BigRational> = Poly::from_integers(&self.num);
        let cyclo: Vec<BigInt> = t.cyclo.iter().map(|&c| BigInt::from(c)).collect();
        let phi_poly = Poly::from_integers(&cyclo);
        let (g, s, _) = a.ext_gcd(&phi_poly);
        debug_assert_eq!(g, Poly::one());
        // (num/den)^{-1} = den * s
        let s = s.scale(&BigRational::from_integer(self.den.clone()));
        CycNumber::from_rational_coeffs(self.order, s.coeffs())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_impl(&other.inverse()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNumber::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        acc
    }

    /// Floating point value.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
            acc += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc / den
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.num == other.num && self.den == other.den;
        }
        if self.is_rational() || other.is_rational() {
            // a rational never equals a stored non-rational value
            return self.is_rational()
                && other.is_rational()
                && self.num == other.num
                && self.den == other.den;
        }
        let m = self.common_order(other);
        let a = self.lifted(m);
        let b = other.lifted(m);
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        (0..n).all(|k| {
            a.get(k).unwrap_or(&zero) * &other.den == b.get(k).unwrap_or(&zero) * &self.den
        })
    }
}

impl Eq for CycNumber {}

impl Zero for CycNumber {
    fn zero() -> Self {
        CycNumber {
            order: 1,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for CycNumber {
    fn one() -> Self {
        CycNumber::from_integer(1)
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.into_iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $f(self, rhs: &CycNumber) -> CycNumber {
                let g: fn(&CycNumber, &CycNumber) -> CycNumber = $body;
                g(self, rhs)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, rhs: CycNumber) -> CycNumber {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, rhs: &CycNumber) -> CycNumber {
                (&self).$f(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on division by zero, like the primitive numeric types; use
// `checked_div` for a fallible version.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Scalar for CycNumber {
    const EXACT: bool = true;

    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }

    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn conj(&self) -> Self {
        CycNumber::conj(self)
    }

    fn from_i64(n: i64) -> Self {
        CycNumber::from_integer(n)
    }

    fn from_rational(q: &BigRational) -> Self {
        CycNumber::from_rational(q)
    }

    fn from_cyclotomic(c: &CycNumber) -> Option<Self> {
        Some(c.clone())
    }

    fn to_complex(&self) -> Complex64 {
        CycNumber::to_complex(self)
    }

    fn pivot_weight(&self) -> f64 {
        // prefer sparse pivots: rationals first
        1.0 / self.num.len() as f64
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("{c}"),
                1 => format!("{c}·ζ{}", self.order),
                _ => format!("{c}·ζ{}^{k}", self.order),
            };
            terms.push(term);
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else if terms.len() == 1 {
            write!(f, "{body}/{}", self.den)
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k).unwrap()
    }

    fn int(n: i64) -> CycNumber {
        CycNumber::from_integer(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(16), 8);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 1).pow(2), int(-1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = z(8, 1) + z(8, -1);
        assert_eq!(s.pow(2), int(2));
        assert_eq!(CycNumber::sqrt3().pow(2), int(3));
        assert_eq!(CycNumber::sqrt5().pow(2), int(5));
    }

    #[test]
    fn unit_modulus() {
        for l in 3..20 {
            assert_eq!(z(2 * l, 1) * z(2 * l, -1), int(1));
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(
            CycNumber::root_of_unity(0, 1).unwrap_err(),
            Error::ZeroOrder
        );
    }

    #[test]
    fn conjugation_of_zeta8() {
        assert_eq!(z(8, 1).conj(), z(8, 7));
    }

    #[test]
    fn cyclotomic_relation_vanishes() {
        assert!((int(1) + z(3, 1) + z(3, 2)).is_zero());
    }

    #[test]
    fn rationalizing_division() {
        let s2 = CycNumber::sqrt2();
        let q = int(1).checked_div(&(int(2) + s2.clone())).unwrap();
        let expected = (int(2) - s2.clone()) * CycNumber::from_ratio(1, 2);
        assert_eq!(q, expected);
        assert_eq!(q * (int(2) + s2), int(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            int(1).checked_div(&CycNumber::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn mixed_orders_lift() {
        // ζ_4 = ζ_8^2
        assert_eq!(z(4, 1), z(8, 2));
        let a = z(3, 1) + z(4, 1);
        let b = z(12, 4) + z(12, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn rational_values_have_order_one() {
        let v = z(16, 3) * z(16, -3);
        assert_eq!(v.order(), 1);
        assert!(v.is_rational());
    }

    #[test]
    fn real_predicate() {
        assert!(CycNumber::sqrt2().is_real());
        assert!(!z(8, 1).is_real());
        let a = z(16, 3) + CycNumber::from_ratio(2, 7);
        assert!((a.clone() * a.conj()).is_real());
    }
}
