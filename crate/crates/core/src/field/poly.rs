//! Dense univariate polynomials over any [`Scalar`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// `x - root`.
    pub fn linear(root: F) -> Self {
        Poly::new(vec![-root, F::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).add_ref(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).sub_ref(&other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor
            .leading()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].mul_ref(&lead_inv);
            let shift = top - dd;
            if !c.is_zero() {
                for (k, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = rem[shift + k].sub_ref(&c.mul_ref(d));
                }
            }
            quot[shift] = c;
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().inv() {
            Some(inv) if !r0.is_zero() => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            _ => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Substitutes `x -> g(x)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            acc.mul(g).add(&Poly::constant(c.clone()))
        })
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<BigRational> {
    /// Clears denominators and content, giving a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in ints.iter_mut() {
            *c = &*c / &g * &sign;
        }
        ints
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        Poly::new(
            cs.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for Poly<F> {
    /// `2x^2 - 2x - 2`; compound coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-', ' ']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if body.contains(['+', '-', ' ']) {
                format!("({body})")
            } else {
                body
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if k > 0 && body == "1" {
                ""
            } else {
                body.as_str()
            };
            match k {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p: Poly<BigRational> = Poly::from_i64s(&[-2, -2, 2]);
        assert_eq!(p.to_string(), "2x^2 - 2x - 2");
        assert_eq!(
            Poly::<BigRational>::from_i64s(&[1, 0, -1]).to_string(),
            "-x^2 + 1"
        );
    }

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn division_round_trips() {
        let a = Poly::<Q>::from_i64s(&[1, 0, -3, 2, 5]);
        let b = Poly::<Q>::from_i64s(&[2, 1, 1]);
        let (qt, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(qt.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_finds_common_factor() {
        let f = Poly::<Q>::from_i64s(&[-1, 1]); // x - 1
        let a = f.mul(&Poly::from_i64s(&[2, 0, 1]));
        let b = f.mul(&Poly::from_i64s(&[3, 1]));
        assert_eq!(a.gcd(&b), f);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn compose_and_eval_agree() {
        let p = Poly::<Q>::from_i64s(&[1, 2, 3]);
        let g = Poly::<Q>::from_i64s(&[0, 0, 1]);
        assert_eq!(p.compose(&g).eval(&q(2)), p.eval(&q(4)));
    }

    #[test]
    fn primitive_integer_clears_denominators() {
        let p = Poly::new(vec![
            Q::new(1.into(), 2.into()),
            Q::new((-3).into(), 4.into()),
        ]);
        assert_eq!(
            p.primitive_integer(),
            vec![BigInt::from(-2), BigInt::from(3)]
        );
    }
}
