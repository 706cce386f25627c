//! A, D and E Coxeter-Dynkin diagrams with exact Perron-Frobenius weights,
//! and their pointed variants (a chosen univalent vertex).
//!
//! Vertex ids: `A_n` is the path `0..n`. `D_n` has its trivalent vertex at 0,
//! the long arm `1..=n-3` and the two short arms `n-2`, `n-1`. `E_n` has its
//! trivalent vertex at 0, the short arm `1`, the arm `2, 3` and the long arm
//! `4..n`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{self, approximate, radical_form, CycNumber, MAX_COXETER_NUMBER};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Kind::A => 'A',
            Kind::D => 'D',
            Kind::E => 'E',
        };
        write!(f, "{c}")
    }
}

impl Kind {
    fn letter(self) -> char {
        self.to_string().chars().next().expect("one letter")
    }
}

#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    kind: Kind,
    rank: usize,
    neighbors: Vec<Vec<usize>>,
    /// Two-colouring with vertex 0 coloured 0.
    color: Vec<u8>,
    coxeter_number: u32,
    delta: CycNumber,
    pf_weights: Vec<CycNumber>,
}

fn edges_for(kind: Kind, n: usize) -> Vec<(usize, usize)> {
    match kind {
        Kind::A => (1..n).map(|v| (v - 1, v)).collect(),
        Kind::D => {
            let mut e: Vec<(usize, usize)> = (1..=n - 3).map(|v| (v - 1, v)).collect();
            e.push((0, n - 2));
            e.push((0, n - 1));
            e
        }
        Kind::E => {
            let mut e = vec![(0, 1), (0, 2), (2, 3), (0, 4)];
            e.extend((5..n).map(|v| (v - 1, v)));
            e
        }
    }
}

/// Builds `A_n` (n ≥ 2), `D_n` (n ≥ 4) or `E_n` (n ∈ {6, 7, 8}).
pub fn build_graph(kind: Kind, n: usize) -> Result<CoxeterGraph> {
    let coxeter_number = match kind {
        Kind::A if n >= 2 => n as u32 + 1,
        Kind::D if n >= 4 => 2 * n as u32 - 2,
        Kind::E if n == 6 => 12,
        Kind::E if n == 7 => 18,
        Kind::E if n == 8 => 30,
        _ => {
            return Err(Error::InvalidRank {
                kind: kind.letter(),
                rank: n,
            })
        }
    };
    if coxeter_number > MAX_COXETER_NUMBER {
        return Err(Error::InvalidRank {
            kind: kind.letter(),
            rank: n,
        });
    }
    let mut neighbors = vec![Vec::new(); n];
    for (u, v) in edges_for(kind, n) {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }
    for l in neighbors.iter_mut() {
        l.sort_unstable();
    }
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &neighbors[u] {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                queue.push_back(v);
            }
        }
    }
    let delta = field::delta_and_index(coxeter_number)?.delta;
    let mut g = CoxeterGraph {
        kind,
        rank: n,
        neighbors,
        color,
        coxeter_number,
        delta,
        pf_weights: Vec::new(),
    };
    g.pf_weights = g.solve_pf_weights(g.default_end())?;
    Ok(g)
}

impl CoxeterGraph {
    fn solve_pf_weights(&self, normalize_at: usize) -> Result<Vec<CycNumber>> {
        let n = self.rank;
        let m = Matrix::from_fn(n, n, |i, j| {
            let a = CycNumber::from_integer(self.neighbors[i].contains(&j) as i64);
            if i == j {
                a - self.delta.clone()
            } else {
                a
            }
        });
        let ns = m.nullspace();
        if ns.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "Perron-Frobenius eigenspace of {} has dimension {}",
                self.name(),
                ns.len()
            )));
        }
        let scale = ns[0][normalize_at].inverse()?;
        Ok(ns[0].iter().map(|w| w * &scale).collect())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn vertex_count(&self) -> usize {
        self.rank
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (u, l) in self.neighbors.iter().enumerate() {
            e.extend(l.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        e
    }

    pub fn adjacency(&self) -> Matrix<CycNumber> {
        Matrix::from_fn(self.rank, self.rank, |i, j| {
            CycNumber::from_integer(self.neighbors[i].contains(&j) as i64)
        })
    }

    /// Colour (0 or 1) of a vertex in the fixed two-colouring.
    pub fn color(&self, v: usize) -> u8 {
        self.color[v]
    }

    /// The colour class containing `v`.
    pub fn class_of(&self, v: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&u| self.color[u] == self.color[v])
            .collect()
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    /// `2cos(π/ℓ)`, the norm of the graph.
    pub fn delta(&self) -> &CycNumber {
        &self.delta
    }

    pub fn pf_weights(&self) -> &[CycNumber] {
        &self.pf_weights
    }

    pub fn pf_weight(&self, v: usize) -> &CycNumber {
        &self.pf_weights[v]
    }

    /// The end vertex used to normalize weights of an unpointed graph.
    pub fn default_end(&self) -> usize {
        match self.kind {
            Kind::A => 0,
            Kind::D => self.rank - 1,
            Kind::E => 1,
        }
    }

    pub fn trivalent_vertex(&self) -> Option<usize> {
        (0..self.rank).find(|&v| self.degree(v) == 3)
    }

    pub fn distance(&self, from: usize, to: usize) -> usize {
        let mut dist = vec![usize::MAX; self.rank];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist[to]
    }

    /// Copy with Perron-Frobenius weights rescaled to 1 at `v`.
    pub fn normalized_at(&self, v: usize) -> Result<CoxeterGraph> {
        if v >= self.rank {
            return Err(Error::InvalidVertex(
                v,
                format!("{} has {} vertices", self.name(), self.rank),
            ));
        }
        let scale = self.pf_weights[v].inverse()?;
        let mut g = self.clone();
        g.pf_weights = self.pf_weights.iter().map(|w| w * &scale).collect();
        Ok(g)
    }

    /// Stars (univalent vertices) of the pointed variants, with variant labels.
    fn variant_stars(&self) -> Vec<(Option<u8>, usize)> {
        let n = self.rank;
        match self.kind {
            Kind::A => vec![(None, 0)],
            Kind::D if n == 4 => vec![(Some(1), 1)],
            Kind::D => vec![(Some(1), n - 3), (Some(2), n - 1)],
            Kind::E if n == 6 => vec![(Some(1), 3), (Some(2), 1)],
            Kind::E => vec![(Some(1), 3), (Some(2), 1), (Some(3), n - 1)],
        }
    }

    pub fn to_dot(&self, star: Option<usize>) -> String {
        let mut s = format!("graph {} {{\n", self.name());
        for v in 0..self.rank {
            let shape = if self.color[v] == 0 { "circle" } else { "box" };
            let label = if Some(v) == star {
                format!("{v}*")
            } else {
                v.to_string()
            };
            s.push_str(&format!(
                "  {v} [label=\"{label}\", shape={shape}, weight=\"{}\"];\n",
                approximate(&self.pf_weights[v], 6)
            ));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, star: Option<usize>) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = (0..self.rank)
            .map(|v| {
                serde_json::json!({
                    "id": v,
                    "class": self.color[v],
                    "degree": self.degree(v),
                    "weight": exact_json(&self.pf_weights[v]),
                })
            })
            .collect();
        let mut doc = serde_json::json!({
            "name": self.name(),
            "kind": self.kind,
            "rank": self.rank,
            "coxeter_number": self.coxeter_number,
            "delta": exact_json(&self.delta),
            "vertices": vertices,
            "edges": self.edges(),
        });
        if let Some(s) = star {
            doc["star"] = serde_json::json!(s);
        }
        doc
    }
}

/// JSON for an exact value: cyclotomic coefficients, radical form when one
/// exists, and a 12-digit decimal.
pub fn exact_json(x: &CycNumber) -> serde_json::Value {
    let mut v = serde_json::to_value(x).expect("serializable");
    if let Some(r) = radical_form(x) {
        v["radical"] = serde_json::json!(r);
    }
    v
}

#[derive(Debug, Clone)]
pub struct PointedCoxeterGraph {
    graph: CoxeterGraph,
    star: usize,
    variant: Option<u8>,
}

impl PointedCoxeterGraph {
    /// Points `graph` at a univalent vertex; weights are renormalized to 1 there.
    pub fn new(graph: &CoxeterGraph, star: usize) -> Result<Self> {
        if star >= graph.rank || graph.degree(star) != 1 {
            return Err(Error::InvalidVertex(
                star,
                "star must be a univalent vertex".into(),
            ));
        }
        let variant = graph
            .variant_stars()
            .into_iter()
            .find(|&(_, s)| s == star)
            .and_then(|(v, _)| v);
        Ok(PointedCoxeterGraph {
            graph: graph.normalized_at(star)?,
            star,
            variant,
        })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn variant(&self) -> Option<u8> {
        self.variant
    }

    pub fn name(&self) -> String {
        match self.variant {
            Some(v) => format!("{},{}", self.graph.name(), v),
            None => self.graph.name(),
        }
    }

    /// Distance from the star to the trivalent vertex (`None` for type A).
    pub fn d(&self) -> Option<usize> {
        self.graph
            .trivalent_vertex()
            .map(|t| self.graph.distance(self.star, t))
    }

    /// The unique neighbour of the star.
    pub fn star_neighbor(&self) -> usize {
        self.graph.neighbors(self.star)[0]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = self.graph.to_json(Some(self.star));
        doc["name"] = serde_json::json!(self.name());
        if let Some(d) = self.d() {
            doc["d"] = serde_json::json!(d);
        }
        doc
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(Some(self.star))
    }
}

/// One pointed graph per orbit of univalent vertices under the graph's
/// symmetries.
pub fn pointed_variants(g: &CoxeterGraph) -> Vec<PointedCoxeterGraph> {
    g.variant_stars()
        .into_iter()
        .map(|(_, s)| PointedCoxeterGraph::new(g, s).expect("catalogue stars are univalent"))
        .collect()
}

pub fn distance_to_trivalent(p: &PointedCoxeterGraph) -> Result<usize> {
    p.d().ok_or_else(|| Error::NoTrivalentVertex(p.name()))
}

/// A parsed graph name `<Kind><rank>[,variant]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphName {
    pub kind: Kind,
    pub rank: usize,
    pub variant: Option<u8>,
}

impl FromStr for GraphName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownGraph(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Kind::A,
            Some('D') => Kind::D,
            Some('E') => Kind::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (rank, variant) = match rest.split_once(',') {
            Some((r, v)) => (r, Some(v.trim().parse::<u8>().map_err(|_| bad())?)),
            None => (rest, None),
        };
        let rank = rank.trim().parse::<usize>().map_err(|_| bad())?;
        Ok(GraphName {
            kind,
            rank,
            variant,
        })
    }
}

pub fn graph_by_name(name: &str) -> Result<CoxeterGraph> {
    let n: GraphName = name.parse()?;
    build_graph(n.kind, n.rank)
}

/// Resolves a pointed name such as `D5,2`, `E6,1` or `A7`.
pub fn pointed_by_name(name: &str) -> Result<PointedCoxeterGraph> {
    let n: GraphName = name.parse()?;
    let g = build_graph(n.kind, n.rank)?;
    pointed_variants(&g)
        .into_iter()
        .find(|p| p.variant() == n.variant)
        .ok_or_else(|| Error::UnknownGraph(name.to_string()))
}

/// The pointed catalogue: every variant of `A_2..=A_{max_a}`,
/// `D_4..=D_{max_d}` and `E_6, E_7, E_8`.
pub fn pointed_catalogue(max_a: usize, max_d: usize) -> Vec<PointedCoxeterGraph> {
    let mut out = Vec::new();
    for n in 2..=max_a {
        out.extend(pointed_variants(
            &build_graph(Kind::A, n).expect("valid rank"),
        ));
    }
    for n in 4..=max_d {
        out.extend(pointed_variants(
            &build_graph(Kind::D, n).expect("valid rank"),
        ));
    }
    for n in 6..=8 {
        out.extend(pointed_variants(
            &build_graph(Kind::E, n).expect("valid rank"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sign;
    use std::cmp::Ordering;

    #[test]
    fn a3_weights() {
        let g = build_graph(Kind::A, 3).unwrap();
        assert_eq!(g.coxeter_number(), 4);
        let w = g.pf_weights();
        assert_eq!(w[0], CycNumber::from_integer(1));
        assert_eq!(w[1], CycNumber::sqrt2());
        assert_eq!(w[2], CycNumber::from_integer(1));
    }

    #[test]
    fn a2_has_delta_one() {
        let g = build_graph(Kind::A, 2).unwrap();
        assert_eq!(g.coxeter_number(), 3);
        assert_eq!(*g.delta(), CycNumber::from_integer(1));
    }

    #[test]
    fn d5_coxeter_number() {
        let g = build_graph(Kind::D, 5).unwrap();
        assert_eq!(g.coxeter_number(), 8);
        assert_eq!(g.class_of(g.default_end()).len(), 3);
    }

    #[test]
    fn invalid_ranks() {
        assert!(build_graph(Kind::A, 1).is_err());
        assert!(build_graph(Kind::D, 3).is_err());
        assert!(build_graph(Kind::E, 9).is_err());
        assert!(build_graph(Kind::D, 40).is_err());
    }

    #[test]
    fn eigen_equation_and_positivity() {
        for (k, n) in [
            (Kind::A, 6),
            (Kind::D, 6),
            (Kind::E, 6),
            (Kind::E, 7),
            (Kind::E, 8),
        ] {
            let g = build_graph(k, n).unwrap();
            let aw = g.adjacency().mul_vec(g.pf_weights());
            for (a, w) in aw.iter().zip(g.pf_weights()) {
                assert_eq!(*a, w * g.delta());
                assert!(w.is_real());
                assert_eq!(sign(w), Ordering::Greater);
            }
        }
    }

    #[test]
    fn variant_counts_and_distances() {
        let e6 = build_graph(Kind::E, 6).unwrap();
        assert_eq!(pointed_variants(&e6).len(), 2);
        assert_eq!(pointed_variants(&build_graph(Kind::E, 8).unwrap()).len(), 3);
        assert_eq!(pointed_variants(&build_graph(Kind::A, 5).unwrap()).len(), 1);
        assert_eq!(
            distance_to_trivalent(&pointed_by_name("E6,1").unwrap()).unwrap(),
            2
        );
        assert_eq!(
            distance_to_trivalent(&pointed_by_name("D5,2").unwrap()).unwrap(),
            1
        );
        assert_eq!(
            distance_to_trivalent(&pointed_by_name("D7,1").unwrap()).unwrap(),
            4
        );
        assert!(distance_to_trivalent(&pointed_by_name("A4").unwrap()).is_err());
        for p in pointed_catalogue(6, 8) {
            assert_eq!(p.graph().degree(p.star()), 1);
            assert_eq!(*p.graph().pf_weight(p.star()), CycNumber::from_integer(1));
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!(pointed_by_name("D5,2").unwrap().name(), "D5,2");
        assert_eq!(pointed_by_name("A7").unwrap().name(), "A7");
        assert!(matches!(pointed_by_name("X3"), Err(Error::UnknownGraph(_))));
        assert!(matches!(
            pointed_by_name("E6,3"),
            Err(Error::UnknownGraph(_))
        ));
    }
}
