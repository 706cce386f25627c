use std::fmt::Write as _;

use serde_json::{json, Value};
use subfactor::angle::{angle_closed_form, angle_path_oracle, simpler_quadrilateral, AngleResult};
use subfactor::classifier::{
    cocommuting_branch, enumerate_noncocommuting, ClassificationReport, Outcome,
};
use subfactor::coxeter::{exact_json, graph_by_name, pointed_by_name, pointed_catalogue};
use subfactor::field::four_cos_squared;
use subfactor::fusion::{
    dim_irrep, dim_polynomial, fuse_vectors, fusion_power, hom_dimension_count, FusionMode,
    FusionParams, FusionVector,
};
use subfactor::ghj::{self, GhjPolicy, Parity, DEFAULT_GHJ_LEVEL_CAP};
use subfactor::tower::{ExactTower, Tower, DEFAULT_LEVEL_CAP};
use subfactor::{CycNumber, Error, Result};

use crate::report::{error_kind, exact_text, Report};
use crate::{AngleChoice, BranchChoice};

pub fn graphs_list(max_a: usize, max_d: usize) -> Result<Report> {
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut dot = String::new();
    for p in pointed_catalogue(max_a, max_d) {
        let g = p.graph();
        entries.push(json!({
            "name": p.name(),
            "kind": g.kind(),
            "rank": g.rank(),
            "star": p.star(),
            "d": p.d(),
            "coxeter_number": g.coxeter_number(),
            "delta": exact_json(g.delta()),
        }));
        let d = p.d().map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(
            text,
            "{:<6} h={:<3} d={:<2} δ = {}",
            p.name(),
            g.coxeter_number(),
            d,
            exact_text(g.delta())
        );
        dot.push_str(&p.to_dot());
    }
    Ok(Report::new(json!({ "graphs": entries }), text).with_dot(dot))
}

pub fn graphs_show(name: &str) -> Result<Report> {
    let (doc, dot, graph) = match pointed_by_name(name) {
        Ok(p) => (p.to_json(), p.to_dot(), p.graph().clone()),
        Err(Error::UnknownGraph(_)) => {
            let g = graph_by_name(name)?;
            (g.to_json(None), g.to_dot(None), g)
        }
        Err(e) => return Err(e),
    };
    let mut text = format!(
        "{}: h = {}, δ = {}\n",
        graph.name(),
        graph.coxeter_number(),
        exact_text(graph.delta())
    );
    for v in 0..graph.vertex_count() {
        let _ = writeln!(
            text,
            "  {v}: neighbours {:?}, weight {}",
            graph.neighbors(v),
            exact_text(graph.pf_weight(v))
        );
    }
    Ok(Report::new(doc, text).with_dot(dot))
}

pub fn tower_build(
    graph: Option<&str>,
    pointed: Option<&str>,
    corner: Option<usize>,
    levels: usize,
    cap: Option<usize>,
) -> Result<Report> {
    let cap = cap.unwrap_or(DEFAULT_LEVEL_CAP);
    let (source, mut t): (String, ExactTower) = match (graph, pointed) {
        (_, Some(name)) => {
            let p = pointed_by_name(name)?;
            (p.name(), Tower::pointed(&p, cap)?)
        }
        (Some(name), None) => {
            let g = graph_by_name(name)?;
            let t = match corner {
                Some(v) => Tower::corner(&g, v, cap)?,
                None => Tower::new(&g, g.default_end(), cap)?,
            };
            (g.name(), t)
        }
        (None, None) => return Err(Error::Parse("one of --graph, --pointed is required".into())),
    };
    t.ensure_level(levels)?;
    let info = (0..=levels)
        .map(|n| t.level_info(n))
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!(
        "{source}: starts {:?}, δ = {}, τ = {}\n",
        t.starts(),
        exact_text(t.delta()),
        exact_text(t.tau())
    );
    for l in &info {
        let _ = writeln!(
            text,
            "  A_{}: dim {}, blocks {:?}",
            l.level, l.dimension, l.end_dims
        );
    }
    let doc = json!({
        "graph": source,
        "starts": t.starts(),
        "corner": corner,
        "level_cap": cap,
        "delta": exact_json(t.delta()),
        "tau": exact_json(t.tau()),
        "levels": info,
    });
    Ok(Report::new(doc, text).with_dot(t.bratteli_dot()))
}

fn policy(odd: bool, cap: Option<usize>) -> GhjPolicy {
    GhjPolicy {
        parity: if odd { Parity::Odd } else { Parity::Even },
        level_cap: cap.unwrap_or(DEFAULT_GHJ_LEVEL_CAP),
    }
}

pub fn ghj_principal_graph(name: &str, odd: bool, cap: Option<usize>) -> Result<Report> {
    let p = pointed_by_name(name)?;
    let r = ghj::ghj_principal_graph(&p, policy(odd, cap))?;
    let mut doc = r.to_json();
    doc["status"] = json!("stabilized");
    let mut text = format!(
        "{}: stabilized at level {}, depth {}, ‖Γ‖² = {}\n",
        r.source,
        r.stable_level,
        r.depth,
        exact_text(&r.norm_squared)
    );
    for (j, v, m) in &r.edges {
        let _ = writeln!(
            text,
            "  t{j} -- v{v}{}",
            if *m > 1 {
                format!(" ×{m}")
            } else {
                String::new()
            }
        );
    }
    Ok(Report::new(doc, text).with_dot(r.to_dot()))
}

pub fn ghj_index(name: &str, odd: bool, cap: Option<usize>) -> Result<Report> {
    let p = pointed_by_name(name)?;
    let r = ghj::ghj_principal_graph(&p, policy(odd, cap))?;
    let doc = json!({
        "pointed": r.source,
        "index": exact_json(&r.norm_squared),
        "norm_polynomial": r.norm_polynomial.to_string(),
        "stable_level": r.stable_level,
    });
    let text = format!("{}: index {}\n", r.source, exact_text(&r.norm_squared));
    Ok(Report::new(doc, text))
}

pub fn angle(name: &str, choice: AngleChoice) -> Result<Report> {
    let p = pointed_by_name(name)?;
    type Method = fn(&subfactor::coxeter::PointedCoxeterGraph) -> Result<AngleResult>;
    let methods: Vec<(&str, Method)> = match choice {
        AngleChoice::Closed => vec![("closed-form", angle_closed_form)],
        AngleChoice::Oracle => vec![("path-oracle", angle_path_oracle)],
        AngleChoice::Simpler => vec![("simpler-quadrilateral", simpler_quadrilateral)],
        AngleChoice::Both => vec![
            ("closed-form", angle_closed_form),
            ("path-oracle", angle_path_oracle),
        ],
        AngleChoice::All => vec![
            ("closed-form", angle_closed_form),
            ("path-oracle", angle_path_oracle),
            ("simpler-quadrilateral", simpler_quadrilateral),
        ],
    };
    let outcomes: Vec<(&str, Result<AngleResult>)> = std::thread::scope(|s| {
        let handles: Vec<_> = methods
            .iter()
            .map(|&(label, f)| {
                let p = &p;
                (label, s.spawn(move || f(p)))
            })
            .collect();
        handles
            .into_iter()
            .map(|(label, h)| (label, h.join().expect("angle worker panicked")))
            .collect()
    });
    let mut results = Vec::new();
    let mut values: Vec<CycNumber> = Vec::new();
    let mut text = String::new();
    for (label, outcome) in &outcomes {
        match outcome {
            Ok(r) => {
                results.push(r.to_json());
                values.push(r.cos_value.clone());
                let _ = writeln!(
                    text,
                    "{label}: cos θ = {}, θ ≈ {:.6}°",
                    exact_text(&r.cos_value),
                    r.degrees()
                );
            }
            Err(e) => {
                results.push(json!({
                    "method": label,
                    "status": "failed",
                    "error": {"kind": error_kind(e), "message": e.to_string()},
                }));
                let _ = writeln!(text, "{label}: failed: {e}");
            }
        }
    }
    let all_ran = values.len() == outcomes.len();
    let agreement = all_ran && values.windows(2).all(|w| w[0] == w[1]);
    let _ = writeln!(text, "agreement: {agreement}");
    let mut doc = json!({
        "graph": p.name(),
        "results": results,
        "agreement": agreement,
    });
    if agreement {
        doc["cos"] = exact_json(&values[0]);
    }
    let report = Report::new(doc, text);
    Ok(if agreement { report } else { report.failed() })
}

fn mode_json(params: &FusionParams) -> Value {
    let mode = match params.mode {
        FusionMode::Generic => "generic".to_string(),
        FusionMode::Truncated(n) => format!("truncated:{n}"),
    };
    json!({"mode": mode, "window": params.depth_valid})
}

pub fn fusion_fuse(params: &FusionParams, vectors: &[FusionVector]) -> Result<Report> {
    let mut acc = FusionVector::unit();
    for v in vectors {
        acc = fuse_vectors(&acc, v, params)?;
    }
    let doc = json!({
        "ring": mode_json(params),
        "factors": vectors,
        "product": acc,
        "display": acc.to_string(),
    });
    let factors: Vec<String> = vectors.iter().map(|v| format!("({v})")).collect();
    let text = format!("{} = {acc}\n", factors.join(" ⊗ "));
    Ok(Report::new(doc, text))
}

pub fn fusion_pow(params: &FusionParams, v: &FusionVector, power: u32) -> Result<Report> {
    let result = fusion_power(v, power, params)?;
    let doc = json!({
        "ring": mode_json(params),
        "vector": v,
        "power": power,
        "result": result,
        "display": result.to_string(),
        "hom_dimension": hom_dimension_count(&result) as u64,
    });
    let text = format!("({v})^{power} = {result}\n");
    Ok(Report::new(doc, text))
}

pub fn fusion_dims(params: &FusionParams, v: &FusionVector) -> Result<Report> {
    let mut summands = Vec::new();
    let mut text = String::new();
    let labels = v.mults().iter().enumerate().filter(|(_, m)| **m > 0);
    let doc = match params.mode {
        FusionMode::Truncated(n) => {
            if let Some(top) = v.top() {
                let max = params.top_label().unwrap_or(top);
                if top > max {
                    return Err(Error::LabelOutOfRange { label: top, max });
                }
            }
            let gamma = four_cos_squared(n as u32);
            let mut total = CycNumber::from_integer(0);
            for (k, m) in labels {
                let d = dim_irrep(k, &gamma);
                total = &total + &(&d * &CycNumber::from_integer(*m as i64));
                summands
                    .push(json!({"label": k, "multiplicity": *m as u64, "dim": exact_json(&d)}));
                let _ = writeln!(text, "{m} × V_{k}, dim {}", exact_text(&d));
            }
            let _ = writeln!(text, "total {}", exact_text(&total));
            json!({
                "ring": mode_json(params),
                "index": exact_json(&gamma),
                "summands": summands,
                "total": exact_json(&total),
            })
        }
        FusionMode::Generic => {
            let mut total = subfactor::field::Poly::zero();
            for (k, m) in labels {
                let d = dim_polynomial(k);
                total = total.add(&subfactor::field::Poly::from_i64s(&[*m as i64]).mul(&d));
                summands.push(json!({"label": k, "multiplicity": *m as u64, "dim": d.to_string()}));
                let _ = writeln!(text, "{m} × V_{k}, dim {d}");
            }
            let _ = writeln!(text, "total {total}");
            json!({
                "ring": mode_json(params),
                "variable": "x, the index",
                "summands": summands,
                "total": total.to_string(),
            })
        }
    };
    Ok(Report::new(doc, text))
}

fn classification_text(r: &ClassificationReport, out: &mut String) {
    let _ = writeln!(out, "{} branch", r.branch.as_str());
    for c in &r.cases {
        let outcome = match &c.outcome {
            Outcome::Survives => "survives".to_string(),
            Outcome::Eliminated(reasons) => format!("eliminated {reasons:?}"),
        };
        let _ = writeln!(out, "  {}: {outcome}", c.label);
        for f in &c.flags {
            let _ = writeln!(out, "    flag: {f}");
        }
    }
    for s in &r.survivors {
        let _ = writeln!(
            out,
            "  survivor {}: α = {}, β = {}, [M:N] = {}",
            s.case,
            exact_text(&s.alpha),
            exact_text(&s.beta),
            exact_text(&s.gamma)
        );
    }
    let failed: Vec<&str> = r
        .supporting
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.as_str())
        .collect();
    if !failed.is_empty() {
        let _ = writeln!(out, "  failed supporting checks: {}", failed.join(", "));
    }
}

pub fn classify(branch: BranchChoice, n_max: u32) -> Result<Report> {
    let reports: Vec<ClassificationReport> = match branch {
        BranchChoice::Noncocommuting => vec![enumerate_noncocommuting(n_max)],
        BranchChoice::Cocommuting => vec![cocommuting_branch(n_max)],
        BranchChoice::All => std::thread::scope(|s| {
            let nc = s.spawn(|| enumerate_noncocommuting(n_max));
            let co = s.spawn(|| cocommuting_branch(n_max));
            vec![
                nc.join().expect("classifier worker panicked"),
                co.join().expect("classifier worker panicked"),
            ]
        }),
    };
    let mut text = String::new();
    for r in &reports {
        classification_text(r, &mut text);
    }
    let ok = reports.iter().all(|r| r.all_certificates_hold());
    let doc = match reports.as_slice() {
        [one] => one.to_json(),
        many => json!({ "branches": many.iter().map(|r| r.to_json()).collect::<Vec<_>>() }),
    };
    let report = Report::new(doc, text);
    Ok(if ok { report } else { report.failed() })
}
