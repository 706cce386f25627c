use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::coxeter::{build_graph, pointed_variants, CoxeterGraph, Kind};
use crate::field::{compare, four_cos_squared, match_four_cos_squared, AlgebraicReal};
use crate::CycNumber;

use super::q;

/// Largest `n` tried when matching `4cos²(π/n)`.
pub const DEFAULT_N_MAX: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    /// Equals `4cos²(π/n)`.
    Discrete(u32),
    AtLeastFour,
    NotAdmissible,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        !matches!(self, Admissibility::NotAdmissible)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Admissibility::Discrete(n) => json!({"admissible": true, "n": n}),
            Admissibility::AtLeastFour => json!({"admissible": true, "witness": ">=4"}),
            Admissibility::NotAdmissible => json!({"admissible": false}),
        }
    }
}

/// Whether `x` is a possible subfactor index: `x ≥ 4` or `x = 4cos²(π/n)`
/// with `3 ≤ n ≤ n_max`.
pub fn admissible_index(x: &AlgebraicReal, n_max: u32) -> Admissibility {
    if x.cmp_rational(&q(4)) != Ordering::Less {
        return Admissibility::AtLeastFour;
    }
    match_four_cos_squared(x, n_max).map_or(Admissibility::NotAdmissible, Admissibility::Discrete)
}

pub fn admissible_cyclotomic(x: &CycNumber, n_max: u32) -> Admissibility {
    if !x.is_real() {
        return Admissibility::NotAdmissible;
    }
    if compare(x, &CycNumber::from_integer(4)) != Ordering::Less {
        return Admissibility::AtLeastFour;
    }
    let approx = x.to_f64();
    (3..=n_max)
        .find(|&n| {
            let t = 4.0 * (std::f64::consts::PI / n as f64).cos().powi(2);
            (t - approx).abs() < 1e-6 && four_cos_squared(n) == *x
        })
        .map_or(Admissibility::NotAdmissible, Admissibility::Discrete)
}

/// The ADE graphs with Coxeter number `h`, i.e. the possible principal
/// graphs at index `4cos²(π/h)`.
pub fn candidate_graphs(h: u32) -> Vec<CoxeterGraph> {
    let h = h as usize;
    let mut out = Vec::new();
    if h >= 3 {
        out.extend(build_graph(Kind::A, h - 1).ok());
    }
    if h.is_multiple_of(2) && h / 2 + 1 >= 4 {
        out.extend(build_graph(Kind::D, h / 2 + 1).ok());
    }
    for (hh, n) in [(12, 6), (18, 7), (30, 8)] {
        if h == hh {
            out.extend(build_graph(Kind::E, n).ok());
        }
    }
    out
}

/// Largest `k` such that the graph, read as a principal graph from some end
/// vertex, is `k`-supertransitive. `None` means every `k` (type A).
pub fn max_supertransitivity(g: &CoxeterGraph) -> Option<usize> {
    if g.kind() == Kind::A {
        return None;
    }
    pointed_variants(g).iter().filter_map(|p| p.d()).max()
}
