use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{real_roots, Poly};
use crate::fusion::{dim_vector, FusionVector};
use crate::scalar::Scalar;
use crate::CycNumber;

use super::q;

fn div<F: Scalar>(a: &F, b: &F) -> Result<F> {
    Ok(a.mul_ref(&b.inv().ok_or(Error::DivisionByZero)?))
}

/// `tr(e_{PQ}) = tr(e_P) tr(e_Q) / tr(e_P e_Q)`.
pub fn trace_multiplication_formula<F: Scalar>(tr_p: &F, tr_q: &F, tr_product: &F) -> Result<F> {
    div(&tr_p.mul_ref(tr_q), tr_product)
}

/// The coefficient `λ` in `e_P e_Q e_P = e_N + λ(e_P - e_N)`, from
/// `α = [P:N]` and the trace of the dual product projection.
pub fn lambda_angle<F: Scalar>(alpha: &F, tr_dual: &F) -> Result<F> {
    let inv = tr_dual.inv().ok_or(Error::DivisionByZero)?;
    div(&inv.sub_ref(&F::one()), &alpha.sub_ref(&F::one()))
}

/// `dim_M L²(P̄Q̄ + Q̄P̄)` for a cocommuting quadrilateral whose dual product
/// projections commute.
pub fn cocommuting_dim_formula<F: Scalar>(alpha: &F, beta: &F, gamma: &F) -> Result<F> {
    let one = F::one();
    let ratio = div(&alpha.sub_ref(beta), &gamma.sub_ref(beta))?;
    let inner = one.add_ref(&ratio.mul_ref(&ratio).mul_ref(&alpha.sub_ref(&one)));
    let two = one.add_ref(&one);
    let bracket = two.sub_ref(&div(beta, alpha)?.mul_ref(&inner));
    Ok(beta.mul_ref(beta).mul_ref(&bracket))
}

/// Indices and traces of a quadrilateral `N ⊂ P, Q ⊂ M` with `[P:N] = [Q:N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadData {
    pub alpha: CycNumber,
    pub beta: CycNumber,
    pub gamma: CycNumber,
    pub tr_p: CycNumber,
    pub tr_q: CycNumber,
    pub tr_product: CycNumber,
    pub tr_pq: CycNumber,
}

impl QuadData {
    /// From the indices and `dim_N L²(PQ)`.
    pub fn from_pq_dimension(
        alpha: CycNumber,
        beta: CycNumber,
        dim_pq: &CycNumber,
    ) -> Result<Self> {
        let gamma = &alpha * &beta;
        let tr_p = alpha.clone() * gamma.inverse()?;
        let tr_pq = dim_pq.clone() * gamma.inverse()?;
        let tr_product = div(&(&tr_p * &tr_p), &tr_pq)?;
        Ok(QuadData {
            tr_q: tr_p.clone(),
            alpha,
            beta,
            gamma,
            tr_p,
            tr_product,
            tr_pq,
        })
    }

    /// `e_P e_Q = e_N`.
    pub fn is_commuting(&self) -> bool {
        &self.tr_product * &self.gamma == CycNumber::one()
    }

    /// `e_{PQ} = 1`.
    pub fn is_cocommuting(&self) -> bool {
        self.tr_pq.is_one()
    }

    /// `tr(e_P e_Q e_P) = (1 + λ(α - 1))/γ` solved for `λ`, the squared cosine
    /// of the angle between `P` and `Q`.
    pub fn lambda(&self) -> Result<CycNumber> {
        let one = CycNumber::one();
        div(
            &(&(&self.tr_product * &self.gamma) - &one),
            &(&self.alpha - &one),
        )
    }
}

/// The invariants of the surviving noncommuting, noncocommuting case with
/// `α = β` and `L²(PQ) ≅ V_0 ⊕ 2V_1 ⊕ V_2`.
pub fn noncocommuting_traces(alpha: &CycNumber) -> Result<QuadData> {
    let dim_pq = dim_vector(&FusionVector::new(vec![1, 2, 1]), alpha);
    QuadData::from_pq_dimension(alpha.clone(), alpha.clone(), &dim_pq)
}

/// Squared cosine of the common angle between four distinct equiangular lines
/// in `ℂ²`.
///
/// With `P = diag(1, 0)` the other three are determined by `a` and phases
/// `ω`; equal angles force `Re(ω_i ω̄_j) = (2a - 1)/(2a)` for each pair.
/// Three phases with pairwise equal differences `d` need `cos 2d = cos d`.
pub fn four_equiangular_projections() -> CycNumber {
    // 2u² - u - 1 = 0 for u = cos d; u = 1 makes two lines coincide
    let phase = real_roots(&Poly::from_i64s(&[-1, -1, 2]))
        .into_iter()
        .filter_map(|r| r.as_rational())
        .find(|u| !u.is_one())
        .expect("cos d = -1/2");
    // 2a(1 - a)c = -(2a - 1)(a - 1): (2 - 2c)a² + (2c - 3)a + 1 = 0
    let two = q(2);
    let eq = Poly::new(vec![
        BigRational::one(),
        &two * &phase - q(3),
        &two - &two * &phase,
    ]);
    let a = real_roots(&eq)
        .into_iter()
        .filter_map(|r| r.as_rational())
        .find(|a| !a.is_one() && !a.is_zero())
        .expect("a rational root besides 1");
    CycNumber::from_rational(&a)
}
