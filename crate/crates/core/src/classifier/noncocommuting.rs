use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::coxeter::Kind;
use crate::field::{four_cos_squared, real_roots, Poly};
use crate::fusion::{
    dim_polynomial, dim_vector, fuse, fusion_power, hom_dimension_count, FusionParams, FusionVector,
};
use crate::CycNumber;

use super::admissible::{admissible_index, candidate_graphs, max_supertransitivity, Admissibility};
use super::traces::noncocommuting_traces;
use super::{
    poly, q, Branch, CaseCertificate, CaseHypothesis, Check, ClassificationReport, Outcome, Reason,
    RootReport, Survivor,
};

/// Supertransitivity assumed for the elementary subfactors.
const REQUIRED_SUPERTRANSITIVITY: usize = 6;

/// `x·(f_{b,c}(x) - x)` with `f_{b,c}(x) = dim(V_0 ⊕ 2V_1 ⊕ bV_2 ⊕ cV_3)/x`:
/// `c x³ + (b - 5c - 1)x² + (2 - 3b + 6c)x + (b - c - 1)`.
pub fn fixed_point_polynomial(b: u32, c: u32) -> Poly<BigRational> {
    let (b, c) = (b as i64, c as i64);
    poly(&[b - c - 1, 2 - 3 * b + 6 * c, b - 5 * c - 1, c])
}

/// `x² g'(x)` for `g = f_{b,c} - x`: `2c x³ + (b - 5c - 1)x² - (b - c - 1)`.
pub fn monotonicity_numerator(b: u32, c: u32) -> Poly<BigRational> {
    let (b, c) = (b as i64, c as i64);
    poly(&[-(b - c - 1), 0, b - 5 * c - 1, 2 * c])
}

/// Positive for every `x > 2`: positive leading coefficient and no real root above 2.
fn positive_beyond_two(p: &Poly<BigRational>) -> bool {
    p.leading() > q(0)
        && real_roots(p)
            .iter()
            .all(|r| r.cmp_rational(&q(2)) != Ordering::Greater)
}

/// Solutions of `a² + b² + c² = l²` with `2 ≤ a ≤ 8`, `0 ≤ b ≤ 5`, `0 ≤ c ≤ 1`,
/// `(b, c) ≠ (0, 0)` and `4 ≤ l ≤ 7`, as `(a, b, c, l)`.
pub fn two_summands_search() -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 2..=8u32 {
        for b in 0..=5u32 {
            for c in 0..=1u32 {
                if b == 0 && c == 0 {
                    continue;
                }
                for l in 4..=7u32 {
                    if a * a + b * b + c * c == l * l {
                        out.push((a, b, c, l));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A11Certificate {
    /// Bonds from the two copies of `V_2` into the `V_3` vertex: `m + n`.
    pub total: u128,
    pub base: u128,
    pub step: u128,
    pub bound: u128,
    /// Pairs `(m, n)` with `base(m+n) + step(m² + n²) ≤ bound`.
    pub feasible: Vec<(u128, u128)>,
    pub minimizer: (u128, u128),
    pub min_value: u128,
}

impl A11Certificate {
    pub fn infeasible(&self) -> bool {
        self.feasible.is_empty()
    }
}

/// Constants of the Bratteli-diagram count for `L²(M) ≅ V_0 ⊕ 2V_1 ⊕ 2V_2`
/// with `A_11` fusion, read off the tensor powers.
fn a11_constants() -> (u128, u128, u128, u128) {
    let t = FusionParams::truncated(12);
    let v = FusionVector::new(vec![1, 2, 2]);
    let sq = fusion_power(&v, 2, &t).expect("labels within A11");
    let cube = fusion_power(&v, 3, &t).expect("labels within A11");
    (sq.mult(3) / v.mult(2), sq.mult(2), sq.mult(3), cube.mult(3))
}

pub fn a11_obstruction() -> A11Certificate {
    a11_obstruction_with_bound(a11_constants().3)
}

pub fn a11_obstruction_with_bound(bound: u128) -> A11Certificate {
    let (total, base, step, _) = a11_constants();
    let value = |m: u128, n: u128| base * (m + n) + step * (m * m + n * n);
    let pairs: Vec<(u128, u128)> = (0..=total).map(|m| (m, total - m)).collect();
    let minimizer = *pairs
        .iter()
        .min_by_key(|(m, n)| value(*m, *n))
        .expect("nonempty");
    A11Certificate {
        total,
        base,
        step,
        bound,
        feasible: pairs
            .iter()
            .copied()
            .filter(|(m, n)| value(*m, *n) <= bound)
            .collect(),
        minimizer,
        min_value: value(minimizer.0, minimizer.1),
    }
}

/// `v ⊗ v` in the generic ring, leaving out the `V_i ⊗ V_j` with `i + j > window`.
fn square_within(v: &FusionVector, window: usize) -> FusionVector {
    let g = FusionParams::generic();
    let mut out = FusionVector::default();
    for (i, a) in v.mults().iter().enumerate() {
        for (j, b) in v.mults().iter().enumerate() {
            if i + j <= window && a * b > 0 {
                let term = fuse(i, j, &g).expect("generic");
                out = out.add(&FusionVector::new(
                    term.mults().iter().map(|m| m * a * b).collect(),
                ));
            }
        }
    }
    out
}

fn supporting_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let sols = two_summands_search();
    out.push(Check::computed(
        "two_summands_search",
        sols == [(3, 4, 0, 5), (4, 3, 0, 5)],
        format!("a²+b²+c²=l² solutions (a,b,c,l): {sols:?}"),
    ));
    out.push(Check::axiom(
        "two_summands_a_is_3",
        "l = 5 gives α < 5, so a ≤ dim V_1 < 4 by Pimsner-Popa",
    ));
    let lower = square_within(&FusionVector::new(vec![1, 3, 4]), 3);
    let mm =
        fusion_power(&FusionVector::new(vec![1, 5]), 2, &FusionParams::generic()).expect("generic");
    let (n_count, m_count) = (hom_dimension_count(&lower), hom_dimension_count(&mm));
    let printed = hom_dimension_count(&FusionVector::new(vec![10, 39, 41, 12]));
    out.push(Check::computed(
        "two_summands_dimension_mismatch",
        n_count > m_count && printed > m_count,
        format!(
            "dim N'∩M_3 ≥ {n_count} from {lower} (printed vector gives {printed}); dim M'∩M_4 = {m_count} from {mm}"
        ),
    ));
    out.push(Check::axiom(
        "indices_below_four",
        "α ≥ 4 forces β > α and, dually, α > β",
    ));
    for b in 2..=4 {
        for c in 0..=1 {
            let p = monotonicity_numerator(b, c);
            out.push(Check::computed(
                &format!("monotone_g_{b}_{c}"),
                positive_beyond_two(&p),
                format!("x²g'(x) = {p} > 0 for x > 2"),
            ));
        }
    }
    out.push(Check::axiom(
        "indices_equal",
        "b = b', c = c' from equal relative commutant dimensions; g increasing forces α = β",
    ));
    let cert = a11_obstruction();
    out.push(Check::computed(
        "a11_obstruction",
        cert.infeasible(),
        format!(
            "m+n = {}: min {}(m+n)+{}(m²+n²) = {} at {:?} > {}",
            cert.total, cert.base, cert.step, cert.min_value, cert.minimizer, cert.bound
        ),
    ));
    out
}

fn describe(x: &crate::field::AlgebraicReal) -> String {
    format!("{:.6}", x.to_f64())
}

fn candidate_checks(
    hyp: &CaseHypothesis,
    root: &RootReport,
    cert: &mut CaseCertificate,
) -> Vec<Reason> {
    let x = &root.value;
    let tag = describe(x);
    let mut reasons = Vec::new();
    let adm_detail = match root.admissible {
        Admissibility::Discrete(n) => format!("x = 4cos²(π/{n})"),
        Admissibility::AtLeastFour => "x ≥ 4".to_string(),
        Admissibility::NotAdmissible => "x < 4 and not 4cos²(π/n)".to_string(),
    };
    cert.checks.push(Check::computed(
        &format!("admissible[{tag}]"),
        root.admissible.is_admissible(),
        adm_detail,
    ));
    if !root.admissible.is_admissible() {
        reasons.push(Reason::InadmissibleIndex);
    }
    if root.admissible == Admissibility::AtLeastFour {
        cert.checks.push(Check::computed(
            &format!("below_four[{tag}]"),
            false,
            "contradicts α < 4",
        ));
        reasons.push(Reason::DualityContradiction);
    }
    let v = hyp.vector();
    for k in 1..v.mults().len() {
        let m = v.mult(k);
        if m == 0 {
            continue;
        }
        let diff = dim_polynomial(k).sub(&Poly::constant(q(m as i64)));
        let ok = x.sign_of(&diff) != Ordering::Less;
        cert.checks.push(Check::computed(
            &format!("pimsner_popa_V{k}[{tag}]"),
            ok,
            format!(
                "{m} copies of V_{k}: dim V_{k} - {m} = ({diff})(x) {}",
                if ok { "≥ 0" } else { "< 0" }
            ),
        ));
        if !ok && !reasons.contains(&Reason::PimsnerPopa) {
            reasons.push(Reason::PimsnerPopa);
        }
    }
    if let Admissibility::Discrete(n) = root.admissible {
        let top = FusionParams::truncated(n as usize).top_label().unwrap_or(0);
        let needed = v.top().unwrap_or(0);
        cert.checks.push(Check::computed(
            &format!("labels_exist[{tag}]"),
            needed <= top,
            format!("A_{} fusion stops at V_{top}; L²(M) uses V_{needed}", n - 1),
        ));
        if needed > top {
            reasons.push(Reason::PimsnerPopa);
        }
        let mut remaining = 0;
        let mut excluded_by_a11 = false;
        for g in candidate_graphs(n) {
            let st = max_supertransitivity(&g);
            let ok = st.is_none_or(|k| k >= REQUIRED_SUPERTRANSITIVITY);
            cert.checks.push(Check::computed(
                &format!("supertransitive_{}[{tag}]", g.name()),
                ok,
                match st {
                    None => "supertransitive".to_string(),
                    Some(k) => {
                        format!("at most {k}-supertransitive, need {REQUIRED_SUPERTRANSITIVITY}")
                    }
                },
            ));
            if !ok {
                continue;
            }
            if g.kind() == Kind::A && g.rank() == 11 && v == FusionVector::new(vec![1, 2, 2]) {
                let a11 = a11_obstruction();
                cert.checks.push(Check::computed(
                    &format!("a11_obstruction[{tag}]"),
                    !a11.infeasible(),
                    format!(
                        "min {} at {:?} exceeds {}",
                        a11.min_value, a11.minimizer, a11.bound
                    ),
                ));
                if a11.infeasible() {
                    excluded_by_a11 = true;
                    continue;
                }
            }
            remaining += 1;
        }
        if remaining == 0 {
            reasons.push(if excluded_by_a11 {
                Reason::BratteliObstruction
            } else {
                Reason::InadmissibleIndex
            });
        }
    }
    reasons
}

fn noncocommuting_case(b: u32, c: u32, n_max: u32) -> (CaseCertificate, Option<Survivor>) {
    let hyp = CaseHypothesis { a: 2, b, c };
    let mut cert = CaseCertificate::new(&format!("b={b},c={c}"), Some(hyp));
    let p = fixed_point_polynomial(b, c);
    for r in real_roots(&p) {
        let admissible = admissible_index(&r, n_max);
        let exact = match admissible {
            Admissibility::Discrete(n) => Some(four_cos_squared(n)),
            _ => r.to_cyclotomic(),
        };
        cert.roots.push(RootReport {
            value: r,
            exact,
            admissible,
        });
    }
    cert.polynomial = Some(p);
    let mut reasons: Vec<Reason> = Vec::new();
    let mut survivor = None;
    let roots = cert.roots.clone();
    let mut candidates = 0;
    for root in &roots {
        let above_one = root.value.cmp_rational(&q(1)) == Ordering::Greater;
        if !above_one {
            cert.checks.push(Check::computed(
                &format!("index_above_one[{}]", describe(&root.value)),
                false,
                "an index of a proper subfactor exceeds 1",
            ));
            continue;
        }
        candidates += 1;
        let r = candidate_checks(&hyp, root, &mut cert);
        if r.is_empty() {
            let alpha = root
                .exact
                .clone()
                .expect("admissible survivor has an exact value");
            survivor = Some(build_survivor(&cert.label.clone(), &hyp, alpha, &mut cert));
        }
        reasons.extend(r);
    }
    if candidates == 0 {
        reasons.push(Reason::InadmissibleIndex);
    }
    reasons.sort();
    reasons.dedup();
    cert.outcome = if survivor.is_some() {
        Outcome::Survives
    } else {
        Outcome::Eliminated(reasons)
    };
    (cert, survivor)
}

fn build_survivor(
    label: &str,
    hyp: &CaseHypothesis,
    alpha: CycNumber,
    cert: &mut CaseCertificate,
) -> Survivor {
    // f_{b,c}(α) = β and f_{b,c}(β) = α with α = β
    let f = dim_vector(&hyp.vector(), &alpha) * alpha.inverse().expect("nonzero index");
    cert.checks.push(Check::computed(
        "involution",
        f == alpha,
        format!("f_{{b,c}}(α) = {f}"),
    ));
    let data = noncocommuting_traces(&alpha).expect("nonzero traces");
    let lambda = data.lambda().expect("α > 1");
    cert.checks.push(Check::computed(
        "noncommuting",
        !data.is_commuting(),
        "e_P e_Q ≠ e_N",
    ));
    cert.checks.push(Check::computed(
        "noncocommuting",
        !data.is_cocommuting(),
        "e_{PQ} ≠ 1",
    ));
    let mut invariants = BTreeMap::new();
    invariants.insert("tr_e_P".to_string(), data.tr_p.clone());
    invariants.insert("tr_e_PQ".to_string(), data.tr_pq.clone());
    invariants.insert("tr_e_P_e_Q".to_string(), data.tr_product.clone());
    invariants.insert("cos_squared".to_string(), lambda);
    Survivor {
        case: label.to_string(),
        beta: alpha.clone(),
        gamma: data.gamma.clone(),
        alpha,
        description: format!("L²(M) ≅ {}", hyp.vector()),
        invariants,
    }
}

/// Runs the six cases `b ∈ {2,3,4}`, `c ∈ {0,1}`.
pub fn enumerate_noncocommuting(n_max: u32) -> ClassificationReport {
    let mut cases = Vec::new();
    let mut survivors = Vec::new();
    for b in 2..=4 {
        for c in 0..=1 {
            let (cert, s) = noncocommuting_case(b, c, n_max);
            cases.push(cert);
            survivors.extend(s);
        }
    }
    ClassificationReport {
        branch: Branch::Noncocommuting,
        cases,
        survivors,
        supporting: supporting_checks(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_polynomials() {
        assert_eq!(fixed_point_polynomial(2, 1), poly(&[0, 2, -4, 1]));
        assert_eq!(fixed_point_polynomial(3, 0), poly(&[2, -7, 2]));
        assert_eq!(fixed_point_polynomial(4, 0), poly(&[3, -10, 3]));
        assert_eq!(fixed_point_polynomial(3, 1), poly(&[1, -1, -3, 1]));
        assert_eq!(fixed_point_polynomial(4, 1), poly(&[2, -4, -2, 1]));
        assert_eq!(fixed_point_polynomial(2, 0), poly(&[1, -4, 1]));
    }

    #[test]
    fn a11_constants_come_from_the_fusion_ring() {
        assert_eq!(a11_constants(), (6, 20, 12, 196));
    }

    #[test]
    fn square_within_window() {
        assert_eq!(
            square_within(&FusionVector::new(vec![1, 3, 4]), 3),
            FusionVector::new(vec![10, 39, 41, 24])
        );
    }
}
