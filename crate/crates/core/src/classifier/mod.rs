//! The case analysis for quadrilaterals whose elementary subfactors are
//! supertransitive, with a certificate for every eliminated case.

mod admissible;
mod cocommuting;
mod noncocommuting;
mod traces;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::exact_json;
use crate::field::{AlgebraicReal, Poly};
use crate::CycNumber;

pub use admissible::{
    admissible_cyclotomic, admissible_index, candidate_graphs, max_supertransitivity,
    Admissibility, DEFAULT_N_MAX,
};
pub use cocommuting::cocommuting_branch;
pub use noncocommuting::{
    a11_obstruction, a11_obstruction_with_bound, enumerate_noncocommuting, fixed_point_polynomial,
    monotonicity_numerator, two_summands_search, A11Certificate,
};
pub use traces::{
    cocommuting_dim_formula, four_equiangular_projections, lambda_angle, noncocommuting_traces,
    trace_multiplication_formula, QuadData,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Noncocommuting,
    Cocommuting,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Noncocommuting => "noncocommuting",
            Branch::Cocommuting => "cocommuting",
        }
    }
}

/// Whether a check was computed here or taken as a step of the published argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Axiom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    pub provenance: Provenance,
}

impl Check {
    pub fn computed(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            holds,
            detail: detail.into(),
            provenance: Provenance::Computed,
        }
    }

    pub fn axiom(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            holds: true,
            detail: detail.into(),
            provenance: Provenance::Axiom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    InadmissibleIndex,
    PimsnerPopa,
    BratteliObstruction,
    DualityContradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Survives,
    Eliminated(Vec<Reason>),
}

/// `L²(M) ≅ V_0 ⊕ aV_1 ⊕ bV_2 ⊕ cV_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseHypothesis {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl CaseHypothesis {
    pub fn vector(&self) -> crate::fusion::FusionVector {
        crate::fusion::FusionVector::new(vec![1, self.a as u128, self.b as u128, self.c as u128])
    }
}

#[derive(Debug, Clone)]
pub struct RootReport {
    pub value: AlgebraicReal,
    pub exact: Option<CycNumber>,
    pub admissible: Admissibility,
}

#[derive(Debug, Clone)]
pub struct CaseCertificate {
    pub label: String,
    pub hypothesis: Option<CaseHypothesis>,
    pub polynomial: Option<Poly<BigRational>>,
    pub roots: Vec<RootReport>,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
    pub outcome: Outcome,
}

impl CaseCertificate {
    fn new(label: &str, hypothesis: Option<CaseHypothesis>) -> Self {
        CaseCertificate {
            label: label.to_string(),
            hypothesis,
            polynomial: None,
            roots: Vec::new(),
            checks: Vec::new(),
            flags: Vec::new(),
            outcome: Outcome::Survives,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn is_eliminated(&self) -> bool {
        matches!(self.outcome, Outcome::Eliminated(_))
    }

    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            Outcome::Survives => json!({"status": "survives"}),
            Outcome::Eliminated(r) => json!({"status": "eliminated", "reasons": r}),
        };
        json!({
            "case": self.label,
            "hypothesis": self.hypothesis,
            "polynomial": self.polynomial.as_ref().map(|p| p.to_string()),
            "roots": self.roots.iter().map(root_json).collect::<Vec<_>>(),
            "checks": self.checks,
            "flags": self.flags,
            "outcome": outcome,
        })
    }
}

fn root_json(r: &RootReport) -> Value {
    let (lo, hi) = r.value.interval();
    let mut v = json!({
        "approx": format!("{:.12}", r.value.to_f64()),
        "interval": [lo.to_string(), hi.to_string()],
        "admissible": r.admissible.to_json(),
    });
    if let Some(e) = &r.exact {
        v["exact"] = exact_json(e);
    }
    v
}

#[derive(Debug, Clone)]
pub struct Survivor {
    pub case: String,
    pub alpha: CycNumber,
    pub beta: CycNumber,
    pub gamma: CycNumber,
    pub description: String,
    pub invariants: BTreeMap<String, CycNumber>,
}

impl Survivor {
    pub fn to_json(&self) -> Value {
        let inv: serde_json::Map<String, Value> = self
            .invariants
            .iter()
            .map(|(k, v)| (k.clone(), exact_json(v)))
            .collect();
        json!({
            "case": self.case,
            "alpha": exact_json(&self.alpha),
            "beta": exact_json(&self.beta),
            "gamma": exact_json(&self.gamma),
            "description": self.description,
            "invariants": inv,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub branch: Branch,
    pub cases: Vec<CaseCertificate>,
    pub survivors: Vec<Survivor>,
    /// Lemma-level certificates the case analysis relies on.
    pub supporting: Vec<Check>,
}

impl ClassificationReport {
    pub fn case(&self, label: &str) -> Option<&CaseCertificate> {
        self.cases.iter().find(|c| c.label == label)
    }

    /// Every computed check holds except those flagged as discrepancies.
    pub fn all_certificates_hold(&self) -> bool {
        self.supporting.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch.as_str(),
            "cases": self.cases.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "survivors": self.survivors.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "supporting": self.supporting,
        })
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn poly(cs: &[i64]) -> Poly<BigRational> {
    Poly::from_i64s(cs)
}
