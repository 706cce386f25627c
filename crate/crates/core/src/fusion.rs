//! The supertransitive fusion ring with `A_n`-type rules.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{t_polynomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "n")]
pub enum FusionMode {
    /// `V_i ⊗ V_j = V_{|i-j|} ⊕ … ⊕ V_{i+j}`.
    Generic,
    /// Index `4cos²(π/n)`: labels stop at `floor((n-2)/2)`.
    Truncated(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionParams {
    pub mode: FusionMode,
    /// Products `V_i ⊗ V_j` are only trusted while `i + j` stays within this bound.
    pub depth_valid: Option<usize>,
}

impl FusionParams {
    pub fn generic() -> Self {
        FusionParams {
            mode: FusionMode::Generic,
            depth_valid: None,
        }
    }

    pub fn truncated(n: usize) -> Self {
        FusionParams {
            mode: FusionMode::Truncated(n),
            depth_valid: None,
        }
    }

    pub fn with_window(self, window: usize) -> Self {
        FusionParams {
            depth_valid: Some(window),
            ..self
        }
    }

    /// Largest label, if the ring is finite.
    pub fn top_label(&self) -> Option<usize> {
        match self.mode {
            FusionMode::Generic => None,
            FusionMode::Truncated(n) => Some(n.saturating_sub(2) / 2),
        }
    }

    fn check_label(&self, label: usize) -> Result<()> {
        match self.top_label() {
            Some(max) if label > max => Err(Error::LabelOutOfRange { label, max }),
            _ => Ok(()),
        }
    }
}

impl FromStr for FusionParams {
    type Err = Error;

    /// `generic` or `truncated:N`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(FusionParams::generic());
        }
        let n = s
            .strip_prefix("truncated:")
            .ok_or_else(|| Error::Parse(format!("unknown fusion mode '{s}'")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad truncation '{n}'")))?;
        if n < 3 {
            return Err(Error::Parse(format!("truncation {n} is below 3")));
        }
        Ok(FusionParams::truncated(n))
    }
}

/// Multiplicities of `V_0, V_1, …`; trailing zeros are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FusionVector {
    mults: Vec<u128>,
}

impl FusionVector {
    pub fn new(mut mults: Vec<u128>) -> Self {
        while mults.last() == Some(&0) {
            mults.pop();
        }
        FusionVector { mults }
    }

    pub fn irrep(k: usize) -> Self {
        let mut mults = vec![0; k + 1];
        mults[k] = 1;
        FusionVector { mults }
    }

    pub fn unit() -> Self {
        Self::irrep(0)
    }

    pub fn mults(&self) -> &[u128] {
        &self.mults
    }

    pub fn mult(&self, k: usize) -> u128 {
        self.mults.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Largest label with nonzero multiplicity.
    pub fn top(&self) -> Option<usize> {
        self.mults.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.mults.len().max(other.mults.len());
        FusionVector::new((0..len).map(|k| self.mult(k) + other.mult(k)).collect())
    }

    fn add_scaled_into(&mut self, other: &Self, c: u128) {
        if self.mults.len() < other.mults.len() {
            self.mults.resize(other.mults.len(), 0);
        }
        for (k, m) in other.mults.iter().enumerate() {
            self.mults[k] += c * m;
        }
    }

    /// Number of irreducible summands counted with multiplicity.
    pub fn total(&self) -> u128 {
        self.mults.iter().sum()
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .mults
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(k, m)| {
                if *m == 1 {
                    format!("V_{k}")
                } else {
                    format!("{m}V_{k}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FromStr for FusionVector {
    type Err = Error;

    /// Comma separated multiplicities, e.g. `1,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let mults = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u128>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FusionVector::new(mults))
    }
}

pub fn fuse(i: usize, j: usize, params: &FusionParams) -> Result<FusionVector> {
    params.check_label(i)?;
    params.check_label(j)?;
    if let Some(window) = params.depth_valid {
        if i + j > window {
            return Err(Error::BeyondSupertransitivity { i, j, window });
        }
    }
    let lo = i.abs_diff(j);
    let hi = match params.mode {
        FusionMode::Generic => i + j,
        FusionMode::Truncated(n) => (i + j).min((n - 2).saturating_sub(i + j)),
    };
    let mut mults = vec![0; hi + 1];
    for m in mults.iter_mut().take(hi + 1).skip(lo) {
        *m = 1;
    }
    Ok(FusionVector::new(mults))
}

pub fn fuse_vectors(
    u: &FusionVector,
    v: &FusionVector,
    params: &FusionParams,
) -> Result<FusionVector> {
    let mut out = FusionVector::default();
    for (i, a) in u.mults.iter().enumerate().filter(|(_, a)| **a > 0) {
        for (j, b) in v.mults.iter().enumerate().filter(|(_, b)| **b > 0) {
            out.add_scaled_into(&fuse(i, j, params)?, a * b);
        }
    }
    Ok(FusionVector::new(out.mults))
}

/// `v^{⊗k}`, with `v^{⊗0} = V_0`.
pub fn fusion_power(v: &FusionVector, k: u32, params: &FusionParams) -> Result<FusionVector> {
    let mut acc = FusionVector::unit();
    for _ in 0..k {
        acc = fuse_vectors(&acc, v, params)?;
    }
    Ok(acc)
}

/// `γ^k T_{2k+1}(1/γ)` as a polynomial of degree `k` in `γ`.
pub fn dim_polynomial(k: usize) -> Poly<BigRational> {
    let t = t_polynomial(2 * k + 1);
    let mut coeffs: Vec<BigRational> = (0..=k).map(|i| t.coeff(i)).collect();
    coeffs.reverse();
    Poly::new(coeffs)
}

/// Dimension of `V_k` over the index `γ`.
pub fn dim_irrep<F: Scalar>(k: usize, gamma: &F) -> F {
    dim_polynomial(k).map(F::from_rational).eval(gamma)
}

pub fn dim_vector<F: Scalar>(v: &FusionVector, gamma: &F) -> F {
    let mut acc = F::zero();
    for (k, m) in v.mults.iter().enumerate().filter(|(_, m)| **m > 0) {
        let m = F::from_rational(&BigRational::from_integer((*m).into()));
        acc = acc.add_ref(&m.mul_ref(&dim_irrep(k, gamma)));
    }
    acc
}

/// `Σ m_k²`: the dimension of the endomorphism algebra of the module.
pub fn hom_dimension_count(v: &FusionVector) -> u128 {
    v.mults.iter().map(|m| m * m).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoarseVector {
    pub a: u128,
    pub b: u128,
}

impl CoarseVector {
    pub fn new(a: u128, b: u128) -> Self {
        CoarseVector { a, b }
    }
}

impl fmt::Display for CoarseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}V_a + {}V_b", self.a, self.b)
    }
}

/// The two-label ring `V_a ⊗ V_a = 2V_a`, `V_a ⊗ V_b = 2V_b`, `V_b ⊗ V_b = 2V_a + 4V_b`.
pub fn fuse_coarse(u: &CoarseVector, v: &CoarseVector) -> CoarseVector {
    let aa = u.a * v.a;
    let ab = u.a * v.b + u.b * v.a;
    let bb = u.b * v.b;
    CoarseVector {
        a: 2 * aa + 2 * bb,
        b: 2 * ab + 4 * bb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycNumber;

    fn fv(m: &[u128]) -> FusionVector {
        FusionVector::new(m.to_vec())
    }

    #[test]
    fn small_products() {
        let g = FusionParams::generic();
        assert_eq!(fuse(1, 1, &g).unwrap(), fv(&[1, 1, 1]));
        assert_eq!(fuse(0, 4, &g).unwrap(), FusionVector::irrep(4));
        assert_eq!(
            fuse(3, 3, &FusionParams::truncated(12)).unwrap(),
            fv(&[1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn truncated_labels() {
        let t = FusionParams::truncated(12);
        assert_eq!(t.top_label(), Some(5));
        assert_eq!(
            fuse(6, 0, &t),
            Err(Error::LabelOutOfRange { label: 6, max: 5 })
        );
        assert_eq!(fuse(5, 5, &t).unwrap(), FusionVector::unit());
        assert_eq!(FusionParams::truncated(7).top_label(), Some(2));
        assert_eq!(
            fuse(2, 2, &FusionParams::truncated(7)).unwrap(),
            fv(&[1, 1])
        );
    }

    #[test]
    fn window_is_enforced() {
        let p = FusionParams::generic().with_window(3);
        assert!(fuse(1, 2, &p).is_ok());
        assert_eq!(
            fuse(2, 2, &p),
            Err(Error::BeyondSupertransitivity {
                i: 2,
                j: 2,
                window: 3
            })
        );
    }

    #[test]
    fn dimension_polynomials() {
        assert_eq!(dim_polynomial(0), Poly::from_i64s(&[1]));
        assert_eq!(dim_polynomial(1), Poly::from_i64s(&[-1, 1]));
        assert_eq!(dim_polynomial(2), Poly::from_i64s(&[1, -3, 1]));
    }

    #[test]
    fn parse_and_print() {
        let v: FusionVector = "1, 2,2,0".parse().unwrap();
        assert_eq!(v, fv(&[1, 2, 2]));
        assert_eq!(v.to_string(), "V_0 + 2V_1 + 2V_2");
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,2,2]");
        assert_eq!(
            "truncated:12".parse::<FusionParams>().unwrap(),
            FusionParams::truncated(12)
        );
        assert!("truncated:x".parse::<FusionParams>().is_err());
    }

    #[test]
    fn unit_dimension() {
        let g = CycNumber::from_integer(5);
        assert_eq!(dim_vector(&fv(&[1, 1]), &g), g);
    }
}
