use clap::ValueEnum;
use serde_json::{json, Value};
use subfactor::field::approximate;
use subfactor::{CycNumber, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// A finished command: one document per format and whether it succeeded.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            dot: None,
            ok: true,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn failed(mut self) -> Self {
        self.ok = false;
        self
    }

    /// Structured report for an error that is a legitimate outcome of the
    /// computation, such as a failed hypothesis or an exhausted level cap.
    pub fn failure(e: &Error) -> Self {
        let json = json!({
            "status": "failed",
            "error": {"kind": error_kind(e), "message": e.to_string()},
        });
        Report::new(json, format!("failed: {e}\n")).failed()
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Json => {
                let mut v = self.json.clone();
                if precision != subfactor::field::SERIAL_DIGITS {
                    set_precision(&mut v, precision);
                }
                let mut s = serde_json::to_string_pretty(&v).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Dot => self.dot.clone().unwrap_or_else(|| {
                let mut s = String::from("// no DOT form for this command\n");
                for line in self.text.lines() {
                    s.push_str(&format!("// {line}\n"));
                }
                s
            }),
        }
    }
}

/// Rewrites the decimal approximation of every serialized exact value.
fn set_precision(v: &mut Value, digits: usize) {
    match v {
        Value::Object(map) => {
            if map.contains_key("order") && map.contains_key("coeffs") {
                let raw = json!({"order": map["order"], "coeffs": map["coeffs"]});
                if let Ok(x) = serde_json::from_value::<CycNumber>(raw) {
                    map.insert("approx".into(), json!(approximate(&x, digits)));
                }
            }
            for child in map.values_mut() {
                set_precision(child, digits);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|c| set_precision(c, digits)),
        _ => {}
    }
}

pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownGraph(_)
            | Error::InvalidRank { .. }
            | Error::InvalidVertex(..)
            | Error::Parse(_)
            | Error::LabelOutOfRange { .. }
            | Error::CoxeterNumberTooSmall(_)
    )
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroOrder => "zero_order",
        Error::DivisionByZero => "division_by_zero",
        Error::CoxeterNumberTooSmall(_) => "coxeter_number_too_small",
        Error::InvalidRank { .. } => "invalid_rank",
        Error::NoTrivalentVertex(_) => "no_trivalent_vertex",
        Error::InvalidVertex(..) => "invalid_vertex",
        Error::LevelMismatch(..) => "level_mismatch",
        Error::LevelCapExceeded { .. } => "level_cap_exceeded",
        Error::SingularGram => "singular_gram",
        Error::NotIdempotent => "not_idempotent",
        Error::OutOfRange { .. } => "out_of_range",
        Error::NotStabilized { .. } => "not_stabilized",
        Error::HypothesisFailure(_) => "hypothesis_failure",
        Error::LabelOutOfRange { .. } => "label_out_of_range",
        Error::BeyondSupertransitivity { .. } => "beyond_supertransitivity",
        Error::NeedsHigherPrecision => "needs_higher_precision",
        Error::UnknownGraph(_) => "unknown_graph",
        Error::Parse(_) => "parse",
        Error::Inconsistent(_) => "inconsistent",
    }
}

/// `√2−1 ≈ 0.414213562373`, `3`, or just the decimal outside ℚ(√2, √3, √5).
pub fn exact_text(x: &CycNumber) -> String {
    let approx = approximate(x, subfactor::field::SERIAL_DIGITS);
    match subfactor::field::radical_form(x) {
        Some(r) if r.contains('√') => format!("{r} ≈ {approx}"),
        Some(r) => r,
        _ => approx,
    }
}
