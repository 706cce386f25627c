//! Human readable radical forms for real values in `ℚ(√2, √3, √5)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CycNumber;
use crate::linalg::Matrix;

/// Radicands of the basis `1, √2, √3, √5, √6, √10, √15, √30`.
const RADICANDS: [u32; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

fn basis() -> Vec<CycNumber> {
    let (s2, s3, s5) = (CycNumber::sqrt2(), CycNumber::sqrt3(), CycNumber::sqrt5());
    vec![
        CycNumber::one(),
        s2.clone(),
        s3.clone(),
        s5.clone(),
        &s2 * &s3,
        &s2 * &s5,
        &s3 * &s5,
        &(&s2 * &s3) * &s5,
    ]
}

/// Rational coordinates of `x` over the basis, when `x` lies in the field.
pub fn radical_coordinates(x: &CycNumber) -> Option<Vec<BigRational>> {
    if let Some(q) = x.to_rational() {
        let mut v = vec![BigRational::zero(); RADICANDS.len()];
        v[0] = q;
        return Some(v);
    }
    if !x.is_real() {
        return None;
    }
    // ℚ(√2,√3,√5) ⊂ ℚ(ζ_120)
    let order = x.order().lcm(&120);
    let target = x.lift_to(order).ok()?;
    let cols: Vec<Vec<BigRational>> = basis()
        .iter()
        .map(|b| b.lift_to(order).expect("divides").coeffs())
        .collect();
    let rhs = padded(&target.coeffs(), cols[0].len());
    let cols: Vec<Vec<BigRational>> = cols.iter().map(|c| padded(c, rhs.len())).collect();
    let a = Matrix::from_fn(rhs.len(), cols.len(), |i, j| cols[j][i].clone());
    a.solve(&rhs)
}

fn padded(v: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = v.to_vec();
    out.resize(n.max(v.len()), BigRational::zero());
    out
}

/// Formats `x` as e.g. `6+4√2`, `√2−1`, `(2−√2)/2`; `None` outside the field.
pub fn radical_form(x: &CycNumber) -> Option<String> {
    let coords = radical_coordinates(x)?;
    if coords.iter().all(|c| c.is_zero()) {
        return Some("0".into());
    }
    let den = coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let term = |k: usize, n: &BigInt| -> String {
        let mag = n.abs();
        if k == 0 {
            mag.to_string()
        } else if mag.is_one() {
            format!("√{}", RADICANDS[k])
        } else {
            format!("{mag}√{}", RADICANDS[k])
        }
    };
    let mut order: Vec<usize> = (1..RADICANDS.len())
        .filter(|&k| !ints[k].is_zero())
        .collect();
    if ints[0].is_positive() {
        order.insert(0, 0);
    } else if ints[0].is_negative() {
        order.push(0);
    }
    let mut body = String::new();
    for (pos, &k) in order.iter().enumerate() {
        let neg = ints[k].is_negative();
        if pos == 0 {
            if neg {
                body.push('−');
            }
        } else {
            body.push(if neg { '−' } else { '+' });
        }
        body.push_str(&term(k, &ints[k]));
    }
    Some(if den.is_one() {
        body
    } else if order.len() == 1 {
        format!("{body}/{den}")
    } else {
        format!("({body})/{den}")
    })
}
