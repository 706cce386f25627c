//! Real roots of rational polynomials, held exactly as a defining polynomial
//! plus an isolating rational interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::enclose;
use super::{CycNumber, Poly};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// A real algebraic number. `poly` is squarefree with exactly one root in
/// `[lo, hi]`; for rational values `lo == hi`.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: Poly<Q>,
    lo: Q,
    hi: Q,
    irreducible: bool,
}

impl AlgebraicReal {
    pub fn rational(value: Q) -> Self {
        AlgebraicReal {
            poly: Poly::linear(value.clone()),
            lo: value.clone(),
            hi: value,
            irreducible: true,
        }
    }

    /// The defining polynomial, monic.
    pub fn poly(&self) -> &Poly<Q> {
        &self.poly
    }

    /// True when the defining polynomial is known to be the minimal polynomial.
    pub fn is_minimal(&self) -> bool {
        self.irreducible
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }

    /// Halves the isolating interval `steps` times.
    pub fn refine(&mut self, steps: usize) {
        if self.lo == self.hi {
            return;
        }
        let s_lo = sign_at(&self.poly, &self.lo);
        for _ in 0..steps {
            let mid = (&self.lo + &self.hi) / q(2);
            let s = sign_at(&self.poly, &mid);
            if s == Ordering::Equal {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if s == s_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut c = self.clone();
        c.refine(60);
        ((&c.lo + &c.hi) / q(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(x);
        }
        if *x <= self.lo {
            return Ordering::Greater;
        }
        if *x >= self.hi {
            return Ordering::Less;
        }
        // x inside the open interval: the sign of poly at x tells the side
        let s = sign_at(&self.poly, x);
        if s == Ordering::Equal {
            return Ordering::Equal;
        }
        if s == sign_at(&self.poly, &self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// True when `c` (real) is this number.
    pub fn equals_cyclotomic(&self, c: &CycNumber) -> bool {
        if let Some(v) = self.as_rational() {
            return c.to_rational() == Some(v);
        }
        if !c.is_real() {
            return false;
        }
        let value = self.poly.map(CycNumber::from_rational).eval(c);
        if !value.is_zero() {
            return false;
        }
        // c is a root of poly; it is ours iff it lies in the isolating interval
        let (lo, hi) = enclose(c, false, 128);
        if lo > self.lo && hi < self.hi {
            return true;
        }
        super::compare(c, &CycNumber::from_rational(&self.lo)) == Ordering::Greater
            && super::compare(c, &CycNumber::from_rational(&self.hi)) == Ordering::Less
    }

    /// Exact comparison with a real cyclotomic number.
    pub fn cmp_cyclotomic(&self, c: &CycNumber) -> Ordering {
        if let Some(v) = self.as_rational() {
            return super::compare(&CycNumber::from_rational(&v), c);
        }
        if self.equals_cyclotomic(c) {
            return Ordering::Equal;
        }
        let mut me = self.clone();
        let mut bits = 64;
        loop {
            let (lo, hi) = enclose(c, false, bits);
            if hi < me.lo {
                return Ordering::Greater;
            }
            if lo > me.hi {
                return Ordering::Less;
            }
            me.refine(bits as usize);
            bits *= 2;
        }
    }

    /// Exact sign of `q` evaluated at this number.
    pub fn sign_of(&self, q: &Poly<Q>) -> Ordering {
        if let Some(v) = self.as_rational() {
            return sign_at(q, &v);
        }
        let r = q.div_rem(&self.poly).1;
        if r.is_zero() {
            return Ordering::Equal;
        }
        // a common factor of poly and r vanishes here iff it changes sign on the isolating interval
        let g = self.poly.gcd(&r);
        if g.degree().unwrap_or(0) > 0 && sign_at(&g, &self.lo) != sign_at(&g, &self.hi) {
            return Ordering::Equal;
        }
        let mut me = self.clone();
        let mut others = real_roots(&r);
        loop {
            let mut clear = true;
            for z in others.iter_mut() {
                if z.lo <= me.hi && me.lo <= z.hi {
                    clear = false;
                    z.refine(4);
                }
            }
            if clear {
                return sign_at(&r, &me.lo);
            }
            me.refine(4);
        }
    }

    /// The same number as an element of a cyclotomic field, when it is
    /// rational or a quadratic irrationality.
    pub fn to_cyclotomic(&self) -> Option<CycNumber> {
        if let Some(v) = self.as_rational() {
            return Some(CycNumber::from_rational(&v));
        }
        if self.degree() != 2 {
            return None;
        }
        // x² + bx + c: roots (-b ± √(b²-4c))/2
        let b = self.poly.coeff(1);
        let c = self.poly.coeff(0);
        let disc = &b * &b - q(4) * &c;
        let root = sqrt_rational(&disc)?;
        let half = CycNumber::from_ratio(1, 2);
        let base = CycNumber::from_rational(&-b) * half.clone();
        [
            &base + &(root.clone() * half.clone()),
            &base - &(root * half),
        ]
        .into_iter()
        .find(|cand| self.equals_cyclotomic(cand))
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi),
        }
    }
}

fn sign_at(p: &Poly<Q>, x: &Q) -> Ordering {
    p.eval(x).cmp(&Q::zero())
}

fn sturm_chain(p: &Poly<Q>) -> Vec<Poly<Q>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn variations(chain: &[Poly<Q>], x: &Q) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|p| sign_at(p, x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Bound on the absolute value of every root.
fn cauchy_bound(p: &Poly<Q>) -> Q {
    let lead = p.leading().abs();
    let n = p.degree().unwrap_or(0);
    let m = (0..n)
        .map(|k| p.coeff(k).abs() / &lead)
        .max()
        .unwrap_or_else(Q::zero);
    m + q(1)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n
        .abs()
        .to_u64()
        .expect("coefficient small enough for trial division");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

fn rational_roots(ints: &[BigInt]) -> Vec<Q> {
    let p = Poly::from_integers(ints);
    let mut roots = Vec::new();
    let a0 = &ints[0];
    if a0.is_zero() {
        roots.push(Q::zero());
        let rest: Vec<BigInt> = ints.iter().skip_while(|c| c.is_zero()).cloned().collect();
        roots.extend(rational_roots(&rest).into_iter().filter(|r| !r.is_zero()));
        return roots;
    }
    let an = ints.last().expect("nonzero polynomial");
    for num in divisors(a0) {
        for den in divisors(an) {
            if num.gcd(&den) != BigInt::one() {
                continue;
            }
            for cand in [
                Q::new(num.clone(), den.clone()),
                Q::new(-num.clone(), den.clone()),
            ] {
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// All real roots of a nonzero polynomial, ascending and without repetition.
pub fn real_roots(p: &Poly<Q>) -> Vec<AlgebraicReal> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqfree = p.div_rem(&p.gcd(&p.derivative())).0.monic();
    let ints = sqfree.primitive_integer();
    let rats = rational_roots(&ints);
    let mut rest = sqfree.clone();
    for r in &rats {
        rest = rest.div_rem(&Poly::linear(r.clone())).0;
    }
    let mut out: Vec<AlgebraicReal> = rats.into_iter().map(AlgebraicReal::rational).collect();
    let deg = rest.degree().unwrap_or(0);
    if deg > 0 {
        let irreducible = deg <= 3;
        let rest = rest.monic();
        let chain = sturm_chain(&rest);
        let b = cauchy_bound(&rest);
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let count = variations(&chain, &lo) - variations(&chain, &hi);
            match count {
                0 => {}
                1 => out.push(AlgebraicReal {
                    poly: rest.clone(),
                    lo,
                    hi,
                    irreducible,
                }),
                _ => {
                    let mid = (&lo + &hi) / q(2);
                    // rest has no rational roots, so mid is never a root
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    // distinct roots: refine until the intervals are pairwise disjoint
    loop {
        let mut overlapping = vec![false; out.len()];
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                if out[i].lo <= out[j].hi && out[j].lo <= out[i].hi {
                    overlapping[i] = true;
                    overlapping[j] = true;
                }
            }
        }
        if !overlapping.contains(&true) {
            break;
        }
        for (r, o) in out.iter_mut().zip(overlapping) {
            if o {
                r.refine(1);
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = s² · r with r squarefree
    let (mut s, mut r, mut m, mut p) = (1u64, 1u64, n, 2u64);
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (s, r * m)
}

fn sqrt_prime(p: u64) -> CycNumber {
    if p == 2 {
        return CycNumber::sqrt2();
    }
    // quadratic Gauss sum: √p for p ≡ 1 (mod 4), i√p for p ≡ 3 (mod 4)
    let pi = p as i64;
    let mut g = CycNumber::zero();
    for k in 1..pi {
        let chi = if (1..pi).any(|x| (x * x) % pi == k) {
            1
        } else {
            -1
        };
        let z = CycNumber::root_of_unity(p as u32, k).expect("positive order");
        g = g + z * CycNumber::from_integer(chi);
    }
    if p % 4 == 1 {
        g
    } else {
        g * -CycNumber::root_of_unity(4, 1).expect("positive order")
    }
}

/// Square root of a rational as a cyclotomic number: the positive root for
/// positive input, `i` times the positive root of `-x` for negative input.
pub fn sqrt_rational(x: &Q) -> Option<CycNumber> {
    if x.is_zero() {
        return Some(CycNumber::zero());
    }
    let neg = x.is_negative();
    // √(n/d) = √(n d) / d
    let nd = (x.numer() * x.denom()).abs().to_u64()?;
    let (s, r) = squarefree_split(nd);
    let mut root = CycNumber::from_integer(s as i64);
    let mut m = r;
    let mut p = 2u64;
    while m > 1 {
        if m % p == 0 {
            root = root * sqrt_prime(p);
            m /= p;
        }
        p += 1;
    }
    root = root * CycNumber::from_rational(&Q::new(BigInt::one(), x.denom().clone()));
    if neg {
        root = root * CycNumber::root_of_unity(4, 1).expect("positive order");
    }
    Some(root)
}

/// Certified comparison of a real algebraic number with `4` and the values
/// `4cos²(π/n)`, `3 ≤ n ≤ n_max`.
pub fn match_four_cos_squared(x: &AlgebraicReal, n_max: u32) -> Option<u32> {
    let approx = x.to_f64();
    (3..=n_max).find(|&n| {
        let t = 4.0 * (std::f64::consts::PI / n as f64).cos().powi(2);
        if (t - approx).abs() > 1e-6 {
            return false;
        }
        if x.is_minimal() && x.degree() != super::euler_phi(n) / 2 {
            return false;
        }
        x.equals_cyclotomic(&four_cos_squared(n))
    })
}

/// `4cos²(π/n) = 2 + ζ_n + ζ_n⁻¹`.
pub fn four_cos_squared(n: u32) -> CycNumber {
    CycNumber::from_integer(2) + CycNumber::two_cos(n)
}
