//! Certified enclosures and correctly rounded decimals for cyclotomic numbers.
//!
//! Cosines and sines of rational multiples of 2π are evaluated in binary
//! fixed point with an explicit error bound counted in units of the last
//! place; precision doubles until the enclosure decides the question asked.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CycNumber;

/// Precision ceiling in bits. Any nonzero cyclotomic number of the sizes used
/// here separates from zero long before this.
const MAX_BITS: u64 = 1 << 16;

/// Fixed-point value `value / 2^bits` with absolute error at most `err` ulps.
struct Fixed {
    value: BigInt,
    err: BigInt,
}

fn atan_inv(n: u64, bits: u64) -> Fixed {
    // atan(1/n) = Σ (-1)^j / ((2j+1) n^{2j+1})
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << bits) / n;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        j += 1;
        terms += 1;
    }
    Fixed {
        value: sum,
        err: BigInt::from(2 * terms + 2),
    }
}

fn pi(bits: u64) -> Fixed {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Fixed {
        value: a.value * 16 - b.value * 4,
        err: a.err * 16 + b.err * 4,
    }
}

/// `(cos 2πf, sin 2πf)` for rational `f` in `[0, 1/8]`.
fn cos_sin_small(f: &BigRational, pi: &Fixed, bits: u64) -> (Fixed, Fixed) {
    let one = BigInt::one() << bits;
    let theta = (&pi.value * f.numer() * 2) / f.denom();
    // 2f ≤ 1/4, so the error of π shrinks; one more ulp for the division
    let theta_err = &pi.err + 1;
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut term = one.clone();
    let mut n = 0u64;
    let mut terms = 0u64;
    while !term.is_zero() {
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        n += 1;
        term = ((&term * &theta) >> bits) / n;
        terms += 1;
    }
    let err: BigInt = theta_err + BigInt::from(4 * terms + 2);
    (
        Fixed {
            value: cos,
            err: err.clone(),
        },
        Fixed { value: sin, err },
    )
}

/// `(cos 2πr, sin 2πr)` for rational `r`, using exact quadrant reduction.
fn cos_sin(r: &BigRational, pi: &Fixed, bits: u64) -> (Fixed, Fixed) {
    let r = r - BigRational::from_integer(r.floor().to_integer());
    let four = BigRational::from_integer(4.into());
    let quadrant = (&r * &four).floor().to_integer();
    let g = &r - BigRational::from_integer(quadrant.clone()) / &four;
    let eighth = BigRational::new(1.into(), 8.into());
    let (c, s) = if g <= eighth {
        cos_sin_small(&g, pi, bits)
    } else {
        let h = BigRational::new(1.into(), 4.into()) - g;
        let (c, s) = cos_sin_small(&h, pi, bits);
        (s, c)
    };
    let neg = |x: Fixed| Fixed {
        value: -x.value,
        err: x.err,
    };
    let q: i64 = quadrant.try_into().unwrap_or(0);
    match q {
        0 => (c, s),
        1 => (neg(s), c),
        2 => (neg(c), neg(s)),
        _ => (s, neg(c)),
    }
}

/// Rational enclosure `[lo, hi]` of the real part (`imag = false`) or the
/// imaginary part of `x`, of width about `2^-bits`.
pub fn enclose(x: &CycNumber, imag: bool, bits: u64) -> (BigRational, BigRational) {
    if let Some(q) = x.to_rational() {
        return if imag {
            (BigRational::zero(), BigRational::zero())
        } else {
            (q.clone(), q)
        };
    }
    let w = bits + 16;
    let p = pi(w);
    let m = x.order();
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let r = BigRational::new(BigInt::from(k), BigInt::from(m));
        let (cs, sn) = cos_sin(&r, &p, w);
        let part = if imag { sn } else { cs };
        sum += c * part.value;
        err += c.abs() * part.err;
    }
    let scale = (BigInt::one() << w) * x.denominator();
    (
        BigRational::new(&sum - &err, scale.clone()),
        BigRational::new(&sum + &err, scale),
    )
}

/// Sign of a real-valued cyclotomic number, decided exactly.
pub fn sign(x: &CycNumber) -> Ordering {
    sign_part(x, false)
}

fn sign_part(x: &CycNumber, imag: bool) -> Ordering {
    if let Some(q) = x.to_rational() {
        return if imag {
            Ordering::Equal
        } else {
            q.cmp(&BigRational::zero())
        };
    }
    let zero = BigRational::zero();
    let mut bits = 64;
    loop {
        let (lo, hi) = enclose(x, imag, bits);
        if lo > zero {
            return Ordering::Greater;
        }
        if hi < zero {
            return Ordering::Less;
        }
        if bits >= MAX_BITS {
            // Only reachable for an exact zero that is not canonically zero,
            // which the representation rules out.
            return Ordering::Equal;
        }
        bits *= 2;
    }
}

/// Order of two real values.
pub fn compare(a: &CycNumber, b: &CycNumber) -> Ordering {
    sign(&(a - b))
}

fn round_half_away(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (q.numer(), q.denom());
    let t = (n.abs() * &two + d).div_floor(&(d * &two));
    if n.is_negative() {
        -t
    } else {
        t
    }
}

fn format_scaled(n: &BigInt, digits: usize) -> String {
    let neg = n.sign() == Sign::Minus;
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Correctly rounded decimal of a rational, rounding half away from zero.
pub fn round_rational(q: &BigRational, digits: usize) -> String {
    let scale = BigRational::from_integer(BigInt::from(10).pow(digits as u32));
    format_scaled(&round_half_away(&(q * scale)), digits)
}

fn round_part(x: &CycNumber, imag: bool, digits: usize) -> String {
    let part = if imag { imag_part(x) } else { x.real_part() };
    if let Some(q) = part.to_rational() {
        return round_rational(&q, digits);
    }
    let scale = BigRational::from_integer(BigInt::from(10).pow(digits as u32));
    let mut bits = 4 * digits as u64 + 64;
    loop {
        let (lo, hi) = enclose(&part, false, bits);
        let a = round_half_away(&(lo * &scale));
        let b = round_half_away(&(hi * &scale));
        if a == b || bits >= MAX_BITS {
            return format_scaled(&a, digits);
        }
        bits *= 2;
    }
}

/// `Im(x)` as a real cyclotomic number.
pub fn imag_part(x: &CycNumber) -> CycNumber {
    if x.is_rational() {
        return CycNumber::zero();
    }
    let i = CycNumber::root_of_unity(4, 1).expect("positive order");
    (x - &x.conj()) * (-i) * CycNumber::from_ratio(1, 2)
}

/// Decimal approximation correctly rounded to `digits` places. Non-real
/// values are written `re+imi`.
pub fn approximate(x: &CycNumber, digits: usize) -> String {
    let re = round_part(x, false, digits);
    if x.is_real() {
        return re;
    }
    let im = round_part(x, true, digits);
    match im.strip_prefix('-') {
        Some(abs) => format!("{re}-{abs}i"),
        None => format!("{re}+{im}i"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_integer(n)
    }

    #[test]
    fn sqrt2_minus_one() {
        let x = CycNumber::sqrt2() - int(1);
        assert_eq!(approximate(&x, 6), "0.414214");
        assert_eq!(approximate(&x, 30), "0.414213562373095048801688724210");
    }

    #[test]
    fn zero_and_rationals() {
        assert_eq!(approximate(&CycNumber::zero(), 6), "0.000000");
        assert_eq!(approximate(&CycNumber::from_ratio(-1, 8), 2), "-0.13");
        assert_eq!(approximate(&CycNumber::from_ratio(1, 3), 3), "0.333");
    }

    #[test]
    fn six_plus_four_sqrt2() {
        let x = int(6) + CycNumber::sqrt2() * int(4);
        assert_eq!(approximate(&x, 6), "11.656854");
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        let scaled = (p.value * BigInt::from(10).pow(40)) >> 200u32;
        assert_eq!(
            scaled.to_string(),
            "31415926535897932384626433832795028841971"
        );
    }

    #[test]
    fn complex_values() {
        let z = CycNumber::root_of_unity(8, 3).unwrap();
        assert_eq!(approximate(&z, 4), "-0.7071+0.7071i");
        let i = CycNumber::root_of_unity(4, -1).unwrap();
        assert_eq!(approximate(&i, 2), "0.00-1.00i");
    }

    #[test]
    fn signs() {
        let s2 = CycNumber::sqrt2();
        assert_eq!(sign(&(s2.clone() - int(1))), Ordering::Greater);
        assert_eq!(
            compare(&s2, &CycNumber::from_ratio(141422, 100000)),
            Ordering::Less
        );
        let c = CycNumber::two_cos(240);
        assert_eq!(sign(&(c - int(2))), Ordering::Less);
    }

    #[test]
    fn many_angles_match_floats() {
        for m in [5u32, 7, 9, 16, 24, 60] {
            for k in 0..m as i64 {
                let z = CycNumber::root_of_unity(m, k).unwrap();
                let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                let (lo, hi) = enclose(&z, false, 80);
                let lo: f64 = num_traits::ToPrimitive::to_f64(&lo).unwrap();
                let hi: f64 = num_traits::ToPrimitive::to_f64(&hi).unwrap();
                assert!(lo - 1e-12 <= t.cos() && t.cos() <= hi + 1e-12, "{m} {k}");
            }
        }
    }
}
