use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde_json::json;
use subfactor::angle::{
    angle_closed_form, angle_path_oracle, angle_spectrum_finite, cos_ratio, ghj_floors,
    simpler_floors, simpler_quadrilateral, SpectralValue,
};
use subfactor::classifier::{
    a11_obstruction, cocommuting_branch, enumerate_noncocommuting, Outcome, Reason,
};
use subfactor::coxeter::{build_graph, pointed_by_name, pointed_catalogue, Kind};
use subfactor::fusion::{
    fuse_coarse, fusion_power, hom_dimension_count, CoarseVector, FusionParams, FusionVector,
};
use subfactor::ghj::{
    conjugated_towers, ghj_principal_graph, is_commuting_square, GhjPolicy, Node,
    DEFAULT_GHJ_LEVEL_CAP,
};
use subfactor::tower::{ExactTower, Tower};
use subfactor::{CycNumber, Error, Result};

use crate::report::Report;

type ItemResult = Result<(bool, String)>;

fn int(n: i64) -> CycNumber {
    CycNumber::from_integer(n)
}

fn sqrt2_minus_1() -> CycNumber {
    CycNumber::sqrt2() - int(1)
}

fn angle_golden() -> ItemResult {
    let start = Instant::now();
    let p = pointed_by_name("D5,2")?;
    let closed = angle_closed_form(&p)?.cos_value;
    let oracle = angle_path_oracle(&p)?.cos_value;
    let elapsed = start.elapsed();
    let ok = closed == sqrt2_minus_1() && oracle == closed && elapsed < Duration::from_secs(10);
    Ok((
        ok,
        format!(
            "D5,2: both methods give cos θ = √2−1 in {:.2}s",
            elapsed.as_secs_f64()
        ),
    ))
}

fn path_oracle_identity() -> ItemResult {
    let mut ran = Vec::new();
    let mut mismatched = Vec::new();
    for p in pointed_catalogue(0, 8) {
        let Some(d) = p.d() else { continue };
        if d + 2 > 5 {
            continue;
        }
        match angle_path_oracle(&p) {
            Ok(r) => {
                let expected = cos_ratio(p.graph().coxeter_number(), 2 * d as u32 + 3);
                let signed = &r.witnesses["signed_ratio"];
                if signed != &expected && signed != &(-expected.clone()) {
                    mismatched.push(p.name());
                }
                ran.push(p.name());
            }
            Err(Error::HypothesisFailure(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let ok = mismatched.is_empty() && !ran.is_empty();
    Ok((
        ok,
        format!("identity holds on {ran:?}; mismatches {mismatched:?}"),
    ))
}

fn simpler_construction() -> ItemResult {
    let r = simpler_quadrilateral(&pointed_by_name("D5,2")?)?;
    let tau = &r.witnesses["tau"];
    let one_minus = int(1) - tau.clone();
    let cos = tau.checked_div(&one_minus)?;
    let norm = tau * tau * tau.clone();
    let norm = norm.checked_div(&one_minus)?;
    let ok = r.cos_value == cos
        && cos == sqrt2_minus_1()
        && r.witnesses["projection_norm_squared"] == norm;
    Ok((ok, "D5,2: τ/(1−τ) = √2−1 and ‖E(x)‖² = τ³/(1−τ)".into()))
}

fn principal_graph(cap: usize) -> ItemResult {
    let policy = GhjPolicy {
        level_cap: cap,
        ..GhjPolicy::default()
    };
    let d5 = match ghj_principal_graph(&pointed_by_name("D5,2")?, policy) {
        Ok(r) => r,
        Err(Error::NotStabilized { cap }) => {
            return Ok((false, format!("not stabilized up to level {cap}")))
        }
        Err(e) => return Err(e),
    };
    let target = int(2) + CycNumber::sqrt2();
    let mut ok = d5.depth == 3 && d5.star == Node::Label(0) && d5.norm_squared == &target * &target;
    let mut a_ok = true;
    for n in 2..=7 {
        match ghj_principal_graph(&pointed_by_name(&format!("A{n}"))?, policy) {
            Ok(r) => {
                a_ok &= r.node_count() == n
                    && r.edges.len() == n - 1
                    && r.edges.iter().all(|e| e.2 == 1)
            }
            Err(Error::NotStabilized { cap }) => {
                return Ok((false, format!("A{n} not stabilized up to level {cap}")))
            }
            Err(e) => return Err(e),
        }
    }
    ok &= a_ok;
    Ok((
        ok,
        format!(
            "D5,2: depth {}, ‖Γ‖² = (2+√2)², stable at level {}; A2..A7 end stars give A_n: {a_ok}",
            d5.depth, d5.stable_level
        ),
    ))
}

fn tower_invariants() -> ItemResult {
    let g = build_graph(Kind::D, 5)?;
    let mut t: ExactTower = Tower::full(&g)?;
    let top = 6;
    t.ensure_level(top)?;
    let tau = t.tau().clone();
    let e: Vec<_> = (1..top).map(|i| t.jones(i, top)).collect::<Result<_>>()?;
    let mut tl = true;
    for i in 0..e.len() {
        tl &= e[i].mul(&e[i]) == e[i] && t.adjoint(&e[i])? == e[i];
        for j in 0..e.len() {
            if i.abs_diff(j) == 1 {
                tl &= e[i].mul(&e[j]).mul(&e[i]) == e[i].scale(&tau);
            } else if i.abs_diff(j) >= 2 {
                tl &= e[i].mul(&e[j]) == e[j].mul(&e[i]);
            }
        }
    }
    let mut markov = true;
    let mut compatible = true;
    for n in 1..top {
        let en = t.jones(n, n + 1)?;
        for (a, b) in t.matrix_units(n)? {
            let x = t.unit(n, a, b)?;
            let up = t.include(&x, n + 1)?;
            let tr = t.trace(&x)?;
            markov &= t.trace(&up.mul(&en))? == &tau * &tr;
            compatible &= t.trace(&up)? == tr;
        }
    }
    let towers = conjugated_towers(&t, 1)?;
    let square = is_commuting_square(&t, &towers, 1, false)?;
    let ok = tl && markov && compatible && square;
    Ok((
        ok,
        format!("D5 to level {top}: TL {tl}, Markov {markov}, trace compatibility {compatible}, B1 = g1A1g1* commuting square {square}"),
    ))
}

fn fusion_golden() -> ItemResult {
    let params = FusionParams::truncated(12);
    let v: FusionVector = "1,2,2".parse()?;
    let square = fusion_power(&v, 2, &params)?;
    let cube = fusion_power(&v, 3, &params)?;
    let coarse = fuse_coarse(&CoarseVector::new(1, 2), &CoarseVector::new(1, 2));
    let n_side = hom_dimension_count(&"10,39,41,12".parse()?);
    let m_side = hom_dimension_count(&fusion_power(&"1,5".parse()?, 2, &FusionParams::generic())?);
    let ok = square == FusionVector::new(vec![9, 20, 20, 12, 4])
        && cube == FusionVector::new(vec![89, 222, 254, 196, 108, 32])
        && coarse == CoarseVector::new(10, 24)
        && n_side == 3446
        && m_side == 2526;
    Ok((
        ok,
        format!("(1,2,2)^2 = {square}; (1,2,2)^3 = {cube}; coarse square {coarse}; hom counts {n_side} and {m_side}"),
    ))
}

fn classifier_golden() -> ItemResult {
    let nc = enumerate_noncocommuting(subfactor::classifier::DEFAULT_N_MAX);
    let alpha = int(2) + CycNumber::sqrt2();
    let survivor_ok = nc.survivors.len() == 1
        && nc.survivors[0].case == "b=2,c=1"
        && nc.survivors[0].alpha == alpha
        && nc.survivors[0].beta == alpha;
    let eliminated = |label: &str, reason: Reason| {
        nc.case(label)
            .is_some_and(|c| matches!(&c.outcome, Outcome::Eliminated(r) if r.contains(&reason)))
    };
    let cases_ok = eliminated("b=3,c=0", Reason::InadmissibleIndex)
        && eliminated("b=4,c=0", Reason::PimsnerPopa)
        && eliminated("b=3,c=1", Reason::PimsnerPopa)
        && eliminated("b=4,c=1", Reason::InadmissibleIndex)
        && eliminated("b=2,c=0", Reason::BratteliObstruction);
    let a11 = a11_obstruction();
    let a11_ok = a11.infeasible() && a11.min_value == 336 && a11.bound == 196;
    let co = cocommuting_branch(subfactor::classifier::DEFAULT_N_MAX);
    let co_ok = co.survivors.len() == 1
        && co.survivors[0].gamma == int(6)
        && co.case("V0+2V1+V2").is_some_and(|c| !c.flags.is_empty());
    let ok = survivor_ok && cases_ok && a11_ok && co_ok && nc.all_certificates_hold();
    Ok((
        ok,
        format!("one survivor α = β = 2+√2: {survivor_ok}; eliminations {cases_ok}; A11 {} > {}: {a11_ok}; cocommuting ends at index 6 with flag: {co_ok}", a11.min_value, a11.bound),
    ))
}

fn trace_identities() -> ItemResult {
    use subfactor::classifier::{
        four_equiangular_projections, lambda_angle, noncocommuting_traces,
        trace_multiplication_formula,
    };
    let alpha = int(2) + CycNumber::sqrt2();
    let half = CycNumber::from_ratio(1, 2);
    let data = noncocommuting_traces(&alpha)?;
    let tr_pq = trace_multiplication_formula(&data.tr_p, &data.tr_q, &data.tr_product)?;
    let lambda = lambda_angle(&alpha, &(int(2) * alpha.inverse()?))?;
    let ok = tr_pq == data.tr_pq
        && tr_pq == CycNumber::sqrt2() * half.clone()
        && data.tr_product == (int(4) + CycNumber::sqrt2() * int(3)).inverse()?
        && lambda == int(1) - CycNumber::sqrt2() * half
        && four_equiangular_projections() == CycNumber::from_ratio(1, 3);
    Ok((
        ok,
        "tr(e_PQ) = 1/√2, tr(e_Pe_Q) = 1/(4+3√2), λ(P,R) = 1−1/√2, four lines 1/3".into(),
    ))
}

fn spectrum() -> ItemResult {
    let p = pointed_by_name("D5,2")?;
    let mut t: ExactTower = Tower::pointed(&p, 12)?;
    t.ensure_level(3)?;
    let cos2 = int(3) - CycNumber::sqrt2() * int(2);
    let (pp, qq) = ghj_floors(&t, 3)?;
    let spec = angle_spectrum_finite(&t, &pp, &qq, 3, std::slice::from_ref(&cos2))?;
    let found = spec
        .iter()
        .any(|e| matches!(&e.value, SpectralValue::Exact(v) if v == &cos2));
    let (p_tilde, _) = simpler_floors(&t, 3)?;
    let spec = angle_spectrum_finite(&t, &pp, &p_tilde, 3, &[])?;
    let zero_one = spec
        .iter()
        .all(|e| matches!(&e.value, SpectralValue::Exact(v) if *v == int(0) || *v == int(1)));
    Ok((
        found && zero_one,
        format!(
            "3−2√2 is an eigenvalue: {found}; P against P̃ has spectrum in {{0, 1}}: {zero_one}"
        ),
    ))
}

type Item = (&'static str, fn() -> ItemResult);

const ITEMS: [Item; 8] = [
    ("angle_golden_value", angle_golden),
    ("path_oracle_identity", path_oracle_identity),
    ("simpler_construction", simpler_construction),
    ("tower_invariants", tower_invariants),
    ("fusion_golden_values", fusion_golden),
    ("classifier", classifier_golden),
    ("trace_identities", trace_identities),
    ("angle_spectrum", spectrum),
];

/// Runs every item on its own thread; results are reported in a fixed order.
pub fn run(cap: Option<usize>) -> Report {
    let cap = cap.unwrap_or(DEFAULT_GHJ_LEVEL_CAP);
    let mut results: Vec<(usize, &str, ItemResult)> = std::thread::scope(|s| {
        let mut handles = vec![(4, "principal_graph", s.spawn(move || principal_graph(cap)))];
        for (k, (name, f)) in ITEMS.iter().enumerate() {
            let id = if k < 3 { k + 1 } else { k + 2 };
            handles.push((id, *name, s.spawn(*f)));
        }
        handles
            .into_iter()
            .map(|(id, name, h)| {
                (
                    id,
                    name,
                    h.join()
                        .unwrap_or_else(|_| Err(Error::Inconsistent("panicked".into()))),
                )
            })
            .collect()
    });
    results.sort_by_key(|r| r.0);
    let mut items = Vec::new();
    let mut text = String::new();
    let mut passed = 0;
    for (id, name, outcome) in &results {
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (*ok, detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        passed += ok as usize;
        let status = if ok { "pass" } else { "fail" };
        items.push(json!({"id": id, "name": name, "status": status, "detail": detail}));
        let _ = writeln!(text, "{} {id} {name}: {detail}", status.to_uppercase());
    }
    let _ = writeln!(text, "{passed}/{} passed", results.len());
    let doc = json!({"level_cap": cap, "items": items, "passed": passed, "total": results.len()});
    let report = Report::new(doc, text);
    if passed == results.len() {
        report
    } else {
        report.failed()
    }
}
