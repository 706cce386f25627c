//! Principal graphs of GHJ subfactors `pTL ⊆ pA_∞p`.
//!
//! The inclusion `pTL_n ⊆ pA_np` is tracked level by level with integer
//! counts only. Minimal central projections of `pA_np` are the vertices
//! reached by paths of length `n` from `p`, with block size the number of
//! such paths; those of `pTL_n` are the Temperley-Lieb labels `j ≡ n (mod 2)`,
//! `j ≤ min(n, ℓ−2)`, with block size the number of restricted TL paths.
//! Multiplicities of old labels are inherited from level `n−2` (a minimal
//! projection `q` of `pTL_n` and `e_{n+1}q` have the same edges), and the
//! new label `n` takes whatever block dimension is left over.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coxeter::{exact_json, CoxeterGraph, PointedCoxeterGraph};
use crate::error::{Error, Result};
use crate::field::{approximate, real_roots, CycNumber, Poly};
use crate::linalg::Matrix;

/// Default level cap for the stabilization search.
pub const DEFAULT_GHJ_LEVEL_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn first_level(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GhjPolicy {
    pub parity: Parity,
    pub level_cap: usize,
}

impl Default for GhjPolicy {
    fn default() -> Self {
        GhjPolicy {
            parity: Parity::Even,
            level_cap: DEFAULT_GHJ_LEVEL_CAP,
        }
    }
}

/// The inclusion matrix of `pTL_n ⊆ pA_np`: `edges[(j, v)]` is the number of
/// edges between TL label `j` and graph vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionLevel {
    pub level: usize,
    /// TL labels with their block sizes.
    pub labels: BTreeMap<usize, u128>,
    /// Graph vertices with their block sizes.
    pub vertices: BTreeMap<usize, u128>,
    pub edges: BTreeMap<(usize, usize), u128>,
}

impl InclusionLevel {
    fn same_graph(&self, other: &InclusionLevel) -> bool {
        self.edges == other.edges
    }
}

/// Sizes of the blocks of the restricted Temperley-Lieb algebra `TL_n` at
/// `δ = 2cos(π/ℓ)`: paths of length `n` on `0..=ℓ−2` starting at 0.
pub fn tl_block_sizes(l: u32, n: usize) -> BTreeMap<usize, u128> {
    let top = l as usize - 2;
    let mut counts = vec![0u128; top + 1];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; top + 1];
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if j > 0 {
                next[j - 1] += c;
            }
            if j < top {
                next[j + 1] += c;
            }
        }
        counts = next;
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// Inclusion matrices of `pTL_n ⊆ pA_np` for `n = 0..=max_level`, where `p`
/// is the vertex projection of `vertex`.
pub fn inclusion_levels(
    graph: &CoxeterGraph,
    vertex: usize,
    max_level: usize,
) -> Result<Vec<InclusionLevel>> {
    if vertex >= graph.vertex_count() {
        return Err(Error::InvalidVertex(
            vertex,
            format!("{} has {} vertices", graph.name(), graph.vertex_count()),
        ));
    }
    let l = graph.coxeter_number();
    let mut paths = vec![0u128; graph.vertex_count()];
    paths[vertex] = 1;
    let mut out: Vec<InclusionLevel> = Vec::new();
    for n in 0..=max_level {
        if n > 0 {
            let mut next = vec![0u128; paths.len()];
            for (v, &c) in paths.iter().enumerate() {
                for &w in graph.neighbors(v) {
                    next[w] += c;
                }
            }
            paths = next;
        }
        let vertices: BTreeMap<usize, u128> = paths
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
            .collect();
        let labels = tl_block_sizes(l, n);
        let mut edges = BTreeMap::new();
        if n >= 2 {
            for (&(j, v), &m) in &out[n - 2].edges {
                edges.insert((j, v), m);
            }
        }
        for (&v, &size) in &vertices {
            let used: u128 = edges
                .iter()
                .filter(|(&(_, w), _)| w == v)
                .map(|(&(j, _), &m)| m * labels[&j])
                .sum();
            let rest = size.checked_sub(used).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "inherited multiplicities overfill vertex {v} at level {n}"
                ))
            })?;
            if rest == 0 {
                continue;
            }
            if labels.get(&n) != Some(&1) {
                return Err(Error::Inconsistent(format!(
                    "vertex {v} at level {n} is not covered by the Temperley-Lieb blocks"
                )));
            }
            edges.insert((n, v), rest);
        }
        out.push(InclusionLevel {
            level: n,
            labels,
            vertices,
            edges,
        });
    }
    Ok(out)
}

/// A node of a principal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "side", content = "index", rename_all = "lowercase")]
pub enum Node {
    /// A Temperley-Lieb label.
    Label(usize),
    /// A vertex of the Coxeter graph.
    Vertex(usize),
}

impl Node {
    fn id(&self) -> String {
        match self {
            Node::Label(j) => format!("t{j}"),
            Node::Vertex(v) => format!("v{v}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PrincipalGraphResult {
    /// Name of the Coxeter graph and the vertex `p` used.
    pub source: String,
    pub vertex: usize,
    pub parity: Parity,
    /// Edges `(label, vertex, multiplicity)` of the stable inclusion.
    pub edges: Vec<(usize, usize, u128)>,
    pub star: Node,
    pub depth: usize,
    /// First level `n` with the inclusion for `n` equal to that for `n+2`.
    pub stable_level: usize,
    pub norm_squared: CycNumber,
    /// Squarefree factor of the characteristic polynomial of `MᵀM` whose
    /// largest root is `norm_squared`.
    pub norm_polynomial: Poly<BigRational>,
}

impl PrincipalGraphResult {
    pub fn labels(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| e.0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| e.1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.labels().len() + self.vertices().len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .labels()
            .into_iter()
            .map(Node::Label)
            .chain(self.vertices().into_iter().map(Node::Vertex))
            .map(|n| serde_json::json!({"id": n.id(), "node": n}))
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|&(j, v, m)| {
                serde_json::json!([Node::Label(j).id(), Node::Vertex(v).id(), m as u64])
            })
            .collect();
        serde_json::json!({
            "source": self.source,
            "vertex": self.vertex,
            "parity": self.parity,
            "nodes": nodes,
            "edges": edges,
            "star": self.star.id(),
            "depth": self.depth,
            "stable_level": self.stable_level,
            "norm_squared": exact_json(&self.norm_squared),
            "norm_polynomial": self.norm_polynomial.to_string(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph principal_{} {{\n", self.source.replace(',', "_"));
        for j in self.labels() {
            let extra = if Node::Label(j) == self.star {
                ", style=filled"
            } else {
                ""
            };
            s.push_str(&format!("  t{j} [label=\"{j}\", shape=circle{extra}];\n"));
        }
        for v in self.vertices() {
            s.push_str(&format!("  v{v} [label=\"{v}\", shape=box];\n"));
        }
        for &(j, v, m) in &self.edges {
            for _ in 0..m {
                s.push_str(&format!("  t{j} -- v{v};\n"));
            }
        }
        s.push_str(&format!(
            "  label=\"depth {} stable at level {}\";\n}}\n",
            self.depth, self.stable_level
        ));
        s
    }
}

fn depth_from(star: Node, edges: &[(usize, usize, u128)]) -> usize {
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for &(j, v, _) in edges {
        adj.entry(Node::Label(j)).or_default().push(Node::Vertex(v));
        adj.entry(Node::Vertex(v)).or_default().push(Node::Label(j));
    }
    let mut dist = BTreeMap::from([(star, 0usize)]);
    let mut queue = VecDeque::from([star]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &w in adj.get(&u).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist.values().copied().max().unwrap_or(0)
}

/// Quantum integers `[1], [2], …, [count]` at `δ = [2]`.
fn quantum_integers(delta: &CycNumber, count: usize) -> Vec<CycNumber> {
    let mut q = vec![CycNumber::one(), delta.clone()];
    while q.len() < count {
        let k = q.len();
        q.push(delta * &q[k - 1] - q[k - 2].clone());
    }
    q.truncate(count);
    q
}

/// `‖M‖²` exactly: the Perron-Frobenius vector is `[j+1]` on labels and
/// `μ(v)` on vertices, which gives a candidate checked against the largest
/// root of the characteristic polynomial of `MᵀM`.
fn norm_squared(
    graph: &CoxeterGraph,
    edges: &[(usize, usize, u128)],
) -> Result<(CycNumber, Poly<BigRational>)> {
    let labels: Vec<usize> = edges
        .iter()
        .map(|e| e.0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices: Vec<usize> = edges
        .iter()
        .map(|e| e.1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let li: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let vi: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = Matrix::<BigRational>::zeros(labels.len(), vertices.len());
    for &(j, v, k) in edges {
        m.set(li[&j], vi[&v], BigRational::from_integer((k as u64).into()));
    }
    let gram = m.transpose().mul(&m);
    let chi = gram.charpoly();
    let roots = real_roots(&chi);
    let top = roots
        .last()
        .ok_or_else(|| Error::Inconsistent("inclusion matrix has no real spectrum".into()))?;

    let x = quantum_integers(graph.delta(), labels.iter().max().map_or(1, |j| j + 1));
    let y: Vec<&CycNumber> = vertices.iter().map(|&v| graph.pf_weight(v)).collect();
    // Mᵀx = c·y and My = c'·x, so MᵀM y = cc'·y
    let mut mt_x = vec![CycNumber::zero(); vertices.len()];
    let mut m_y = vec![CycNumber::zero(); labels.len()];
    for &(j, v, k) in edges {
        let k = CycNumber::from_integer(k as i64);
        mt_x[vi[&v]] = &mt_x[vi[&v]] + &(&k * &x[j]);
        m_y[li[&j]] = &m_y[li[&j]] + &(&k * y[vi[&v]]);
    }
    let c = &mt_x[0] / y[0];
    let c2 = &m_y[0] / &x[labels[0]];
    let proportional = (0..vertices.len()).all(|i| mt_x[i] == &c * y[i])
        && (0..labels.len()).all(|i| m_y[i] == &c2 * &x[labels[i]]);
    let lambda = &c * &c2;
    if !proportional || !top.equals_cyclotomic(&lambda) {
        return Err(Error::Inconsistent(format!(
            "Perron-Frobenius candidate {} does not match the spectral radius",
            approximate(&lambda, 12)
        )));
    }
    Ok((lambda, top.poly().clone()))
}

/// Principal graph of the GHJ subfactor `pTL ⊆ pA_∞p` for the vertex
/// projection `p` of `vertex`.
pub fn ghj_principal_graph_at(
    graph: &CoxeterGraph,
    vertex: usize,
    policy: GhjPolicy,
) -> Result<PrincipalGraphResult> {
    let levels = inclusion_levels(graph, vertex, policy.level_cap)?;
    let mut n = policy.parity.first_level();
    while n + 2 <= policy.level_cap {
        if levels[n].same_graph(&levels[n + 2]) {
            let edges: Vec<(usize, usize, u128)> = levels[n]
                .edges
                .iter()
                .filter(|&(_, &m)| m > 0)
                .map(|(&(j, v), &m)| (j, v, m))
                .collect();
            let star = Node::Label(edges.iter().map(|e| e.0).min().unwrap_or(0));
            let (norm_squared, norm_polynomial) = norm_squared(graph, &edges)?;
            return Ok(PrincipalGraphResult {
                source: graph.name(),
                vertex,
                parity: policy.parity,
                depth: depth_from(star, &edges),
                edges,
                star,
                stable_level: n,
                norm_squared,
                norm_polynomial,
            });
        }
        n += 2;
    }
    Err(Error::NotStabilized {
        cap: policy.level_cap,
    })
}

/// Principal graph of the GHJ subfactor `pTL2 ⊆ pA_∞p` of a pointed graph,
/// which is the GHJ subfactor at the unique neighbour of the star.
pub fn ghj_principal_graph(
    p: &PointedCoxeterGraph,
    policy: GhjPolicy,
) -> Result<PrincipalGraphResult> {
    let mut r = ghj_principal_graph_at(p.graph(), p.star_neighbor(), policy)?;
    r.source = p.name();
    Ok(r)
}

/// Index of the GHJ subfactor of a pointed graph: the squared norm of its
/// stable principal graph.
pub fn ghj_index(p: &PointedCoxeterGraph, policy: GhjPolicy) -> Result<CycNumber> {
    Ok(ghj_principal_graph(p, policy)?.norm_squared)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_tl_sizes() {
        // ℓ = 8: labels 0..=6; level 8 loses the paths through 7
        let s = tl_block_sizes(8, 8);
        assert_eq!(s, BTreeMap::from([(0, 14), (2, 28), (4, 20), (6, 6)]));
        let s = tl_block_sizes(8, 6);
        assert_eq!(s, BTreeMap::from([(0, 5), (2, 9), (4, 5), (6, 1)]));
    }

    #[test]
    fn quantum_integer_symmetry() {
        let delta = CycNumber::two_cos(16);
        let q = quantum_integers(&delta, 7);
        assert_eq!(q[2], q[4]);
        assert_eq!(q[6], CycNumber::one());
    }
}
