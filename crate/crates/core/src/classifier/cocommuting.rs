use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{compare, four_cos_squared, real_roots, Poly};
use crate::fusion::{dim_polynomial, hom_dimension_count, FusionVector};
use crate::CycNumber;

use super::admissible::{admissible_cyclotomic, Admissibility};
use super::traces::cocommuting_dim_formula;
use super::{
    poly, q, Branch, CaseCertificate, CaseHypothesis, Check, ClassificationReport, Outcome, Reason,
    Survivor,
};

/// `dim_N` of a multiplicity vector as a polynomial in the index.
fn dimension_polynomial(v: &FusionVector) -> Poly<BigRational> {
    let mut acc = Poly::zero();
    for (k, m) in v.mults().iter().enumerate() {
        acc = acc.add(&dim_polynomial(k).scale(&q(*m as i64)));
    }
    acc
}

fn int(n: i64) -> CycNumber {
    CycNumber::from_integer(n)
}

fn is_integer(x: &CycNumber) -> bool {
    x.to_rational().is_some_and(|r| r.is_integer())
}

/// `L²(M) ≅ V_0 ⊕ 3V_1 ⊕ V_2`: `β = α - 1/α` leaves a complement of dimension `1 - 1/α²`.
fn case_one() -> CaseCertificate {
    let hyp = CaseHypothesis { a: 3, b: 1, c: 0 };
    let mut cert = CaseCertificate::new("V0+3V1+V2", Some(hyp));
    let n = dimension_polynomial(&hyp.vector());
    cert.checks.push(Check::computed(
        "beta",
        n == poly(&[-1, 0, 1]),
        format!("γ = {n}, so β = γ/α = α - 1/α"),
    ));
    // dim L²(M_1) - dim L²(P̄Q̄) = γ - β² = (α²γ - γ²)/α²
    let x2 = poly(&[0, 0, 1]);
    let numerator = x2.mul(&n).sub(&n.mul(&n));
    let excess = numerator.sub(&x2);
    let below_one = excess.degree() == Some(0) && excess.coeff(0) < BigRational::zero();
    cert.polynomial = Some(numerator.clone());
    cert.checks.push(Check::computed(
        "complement_below_one",
        below_one,
        format!("complement = ({numerator})/α², minus 1 gives ({excess})/α²"),
    ));
    cert.checks.push(Check::axiom(
        "pimsner_popa",
        "a nonzero M-M submodule of L²(M_1) has M-dimension at least 1",
    ));
    cert.outcome = if below_one {
        Outcome::Eliminated(vec![Reason::PimsnerPopa])
    } else {
        Outcome::Survives
    };
    cert
}

/// `L²(M) ≅ V_0 ⊕ 3V_1`: `β = 3 - 2/α`, which must be `4cos²(π/5)`.
fn case_two(n_max: u32) -> CaseCertificate {
    let hyp = CaseHypothesis { a: 3, b: 0, c: 0 };
    let mut cert = CaseCertificate::new("V0+3V1", Some(hyp));
    let n = dimension_polynomial(&hyp.vector());
    cert.checks.push(Check::computed(
        "beta",
        n == poly(&[-2, 3]),
        format!("γ = {n}, so β = 3 - 2/α < 3"),
    ));
    let three = int(3);
    let mut remaining = Vec::new();
    for m in 3..=n_max {
        let beta = four_cos_squared(m);
        if compare(&beta, &three) != Ordering::Less {
            break;
        }
        if compare(&beta, &CycNumber::one()) != Ordering::Greater {
            continue;
        }
        let alpha = int(2) * (&three - &beta).inverse().expect("β < 3");
        if beta == int(2) {
            cert.checks.push(Check::computed(
                "beta_two",
                &alpha * &beta == int(4),
                "β = 2 gives α = 2 and total index 4",
            ));
            cert.checks.push(Check::axiom(
                "index_four_commutes",
                "total index 4 with β = 2 forces a commuting square",
            ));
            continue;
        }
        remaining.push((m, alpha, beta));
    }
    let mut eliminated = !remaining.is_empty();
    for (m, alpha, beta) in &remaining {
        let tag = format!("[n={m}]");
        let one = CycNumber::one();
        let gamma = alpha * beta;
        cert.checks.push(Check::computed(
            &format!("alpha_is_twice_beta{tag}"),
            *alpha == beta * &int(2) && beta * beta == beta * &three - one.clone(),
            format!("β = 4cos²(π/{m}): α = 2β, β² = 3β - 1"),
        ));
        let adm = admissible_cyclotomic(alpha, n_max);
        cert.checks.push(Check::computed(
            &format!("alpha_admissible{tag}"),
            adm.is_admissible(),
            format!("{adm:?}"),
        ));
        let dim_t = beta * beta - (beta * &int(2) - one.clone());
        cert.checks.push(Check::computed(
            &format!("dim_T{tag}"),
            &dim_t == beta,
            "β² - (2β - 1) = β < 3",
        ));
        let dim_s = &gamma - &(beta * beta * int(2) - (beta * &int(2) - one.clone()));
        cert.checks.push(Check::computed(
            &format!("dim_S{tag}"),
            dim_s == beta * &int(2) - one.clone(),
            "γ - (2β² - (2β - 1)) = 2β - 1",
        ));
        let rc = hom_dimension_count(&hyp.vector());
        cert.checks.push(Check::computed(
            "relative_commutant",
            rc == 10,
            format!("dim N'∩M_1 = {rc}"),
        ));
        cert.checks.push(Check::axiom(
            "dimension_one_submodule",
            "T, T' or S has an irreducible component of M-dimension 1, giving an intermediate subfactor of integer index",
        ));
        let mut none_integer = true;
        for k in 1..=2 {
            let num = one.clone() + (alpha - &one) * int(3);
            let den = one.clone() + (alpha - &one) * int(k);
            let value = num * den.inverse().expect("positive");
            let integral = is_integer(&value);
            none_integer &= !integral;
            cert.checks.push(Check::computed(
                &format!("intermediate_index_k{k}{tag}"),
                !integral,
                format!(
                    "(1 + 3(α-1))/(1 + {k}(α-1)) ≈ {:.6} is not an integer",
                    value.to_f64()
                ),
            ));
        }
        eliminated &= none_integer;
    }
    cert.outcome = if eliminated {
        Outcome::Eliminated(vec![Reason::InadmissibleIndex])
    } else {
        Outcome::Survives
    };
    cert
}

/// `L²(M) ≅ V_0 ⊕ 2V_1 ⊕ V_2`: `β = α - 1`, ending at index 6.
fn case_three(n_max: u32) -> (CaseCertificate, Option<Survivor>) {
    let hyp = CaseHypothesis { a: 2, b: 1, c: 0 };
    let mut cert = CaseCertificate::new("V0+2V1+V2", Some(hyp));
    let n = dimension_polynomial(&hyp.vector());
    cert.checks.push(Check::computed(
        "beta",
        n == poly(&[0, -1, 1]),
        format!("γ = {n}, so β = α - 1"),
    ));
    let rc = hom_dimension_count(&hyp.vector());
    cert.checks.push(Check::computed(
        "relative_commutant",
        rc == 6,
        format!("dim N'∩M_1 = dim M'∩M_2 = {rc}"),
    ));
    // with x = β: α = x + 1, γ = x² + x; both sides are rational functions of
    // degree at most 8, so 19 sample points decide the identity
    let identity = (2..=20).all(|x| {
        let x = q(x);
        let alpha = &x + q(1);
        let gamma = &x * &x + &x;
        cocommuting_dim_formula(&alpha, &x, &gamma).ok() == Some(&x * &x + &x - q(1))
    });
    cert.checks.push(Check::computed(
        "product_span_dimension",
        identity,
        "dim_M L²(P̄Q̄ + Q̄P̄) = x² + x - 1, complement of dimension 1",
    ));
    let target = poly(&[0, 1, 1]);
    let printed = [
        poly(&[1]),
        poly(&[-1, 1]),
        poly(&[-1, 1]),
        poly(&[-1, -2, 1]),
        poly(&[-1, -2, 1]),
        poly(&[1]),
    ];
    let printed_sum = printed.iter().fold(Poly::zero(), |a, p| a.add(p));
    let printed_eq = printed_sum.sub(&target);
    let printed_roots: Vec<String> = real_roots(&printed_eq)
        .iter()
        .map(|r| format!("{:.6}", r.to_f64()))
        .collect();
    let two_solves_printed = printed_eq.eval(&q(2)).is_zero();
    cert.checks.push(Check::computed(
        "printed_dimension_sum",
        two_solves_printed,
        format!("Σ = {printed_sum}; Σ = x² + x has roots {printed_roots:?}"),
    ));
    cert.flags.push(format!(
        "printed dimensions 1, x-1, x-1, x²-2x-1, x²-2x-1, 1 sum to {printed_sum}, and {printed_sum} = x² + x gives x ∈ {printed_roots:?}, not x = 2; reading x²-2x-1 as (x-1)² gives x² - 3x + 2 = 0"
    ));
    let corrected = [
        poly(&[1]),
        poly(&[-1, 1]),
        poly(&[-1, 1]),
        poly(&[1, -2, 1]),
        poly(&[1, -2, 1]),
        poly(&[1]),
    ];
    let corrected_eq = corrected
        .iter()
        .fold(Poly::zero(), |a, p| a.add(p))
        .sub(&target);
    cert.polynomial = Some(corrected_eq.clone());
    let x = real_roots(&corrected_eq)
        .into_iter()
        .filter_map(|r| r.as_rational())
        .find(|r| *r > q(1));
    let Some(x) = x else {
        cert.outcome = Outcome::Eliminated(vec![Reason::InadmissibleIndex]);
        return (cert, None);
    };
    let all_positive = corrected.iter().all(|p| p.eval(&x) >= q(1));
    cert.checks.push(Check::computed(
        "corrected_dimension_sum",
        x == q(2) && all_positive,
        format!("Σ - (x² + x) = {corrected_eq}, root x = {x} > 1, every summand of dimension ≥ 1"),
    ));
    let beta = CycNumber::from_rational(&x);
    let alpha = &beta + &CycNumber::one();
    let gamma = &alpha * &beta;
    let (adm_a, adm_b) = (
        admissible_cyclotomic(&alpha, n_max),
        admissible_cyclotomic(&beta, n_max),
    );
    cert.checks.push(Check::computed(
        "indices_admissible",
        adm_a == Admissibility::Discrete(6) && adm_b == Admissibility::Discrete(4),
        format!("α = {alpha}: {adm_a:?}, β = {beta}: {adm_b:?}"),
    ));
    cert.checks.push(Check::axiom(
        "goldman",
        "[P̄:M] = [Q̄:M] = 2 and [M_1:M] = 6 make M_1 a crossed product of M by S_3",
    ));
    let survivor = Survivor {
        case: cert.label.clone(),
        alpha,
        beta,
        gamma,
        description: "N is the fixed point algebra of an outer S_3 action on M".to_string(),
        invariants: Default::default(),
    };
    (cert, Some(survivor))
}

/// The three decompositions of `L²(M) = L²(PQ)` for a cocommuting, noncommuting quadrilateral.
pub fn cocommuting_branch(n_max: u32) -> ClassificationReport {
    let (three, survivor) = case_three(n_max);
    ClassificationReport {
        branch: Branch::Cocommuting,
        cases: vec![case_one(), case_two(n_max), three],
        survivors: survivor.into_iter().collect(),
        supporting: vec![Check::axiom(
            "product_decompositions",
            "L²(PQ) is one of V0+2V1+V2, V0+3V1+V2, V0+3V1",
        )],
    }
}
