//! The tower `A_0 ⊂ A_1 ⊂ A_2 ⊂ …` of multi-matrix algebras built from a
//! Coxeter graph by iterating the basic construction, in the path model.
//!
//! Level `n` has a basis of matrix units `(ξ, η)` indexed by pairs of graph
//! paths of length `n` with a common end vertex; paths start in a chosen set
//! of vertices of one colour class (all of it for the full tower, a single
//! vertex `p` for the corner tower `pA_np`).
//!
//! The Jones projection `e_i` lives in `A_{i+1}` and implements the
//! conditional expectation of `A_i` onto `A_{i-1}`. Its entries are written
//! in a similarity-normalized form, `μ(η_i) / (δ μ(ξ_{i-1}))`, so that all
//! entries stay in the field of the Perron-Frobenius weights `μ`; the
//! adjoint is taken in the matching weighted inner product.

mod element;
mod subalgebra;

pub use element::AlgElement;
pub use subalgebra::Subalgebra;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::coxeter::{CoxeterGraph, PointedCoxeterGraph};
use crate::error::{Error, Result};
use crate::field::{self, approximate, CycNumber};
use crate::scalar::Scalar;

/// Default number of levels a tower may be extended to.
pub const DEFAULT_LEVEL_CAP: usize = 12;

pub(crate) struct Level<F> {
    pub(crate) paths: Vec<Vec<u8>>,
    pub(crate) index: HashMap<Vec<u8>, u32>,
    pub(crate) by_end: BTreeMap<usize, Vec<u32>>,
    /// Extensions of each path to the next level, ordered by the new vertex.
    pub(crate) children: Vec<Vec<u32>>,
    /// The path with its last step removed (empty at level 0).
    pub(crate) parent: Vec<u32>,
    /// Trace of a minimal projection in the block of each end vertex.
    pub(crate) trace_weight: Vec<F>,
    /// `∏_k μ(ξ_k)` and its inverse, for the adjoint.
    pub(crate) path_weight: Vec<F>,
    pub(crate) path_weight_inv: Vec<F>,
}

impl<F> Level<F> {
    pub(crate) fn end(&self, id: u32) -> usize {
        *self.paths[id as usize].last().expect("nonempty path") as usize
    }

    pub(crate) fn start(&self, id: u32) -> usize {
        self.paths[id as usize][0] as usize
    }
}

pub struct Tower<F: Scalar> {
    graph: CoxeterGraph,
    starts: Vec<usize>,
    cap: usize,
    mu: Vec<F>,
    delta: F,
    tau: F,
    norm: F,
    levels: Vec<Level<F>>,
}

/// Summary of one floor of the tower.
#[derive(Debug, Clone, Serialize)]
pub struct TowerLevel {
    pub level: usize,
    pub vertices: Vec<usize>,
    /// Number of paths from each start vertex to each end vertex.
    pub block_dims: BTreeMap<String, usize>,
    /// Size of the matrix block of each end vertex.
    pub end_dims: BTreeMap<usize, usize>,
    pub dimension: usize,
    pub trace_weights: BTreeMap<usize, String>,
}

fn lift<F: Scalar>(x: &CycNumber) -> Result<F> {
    F::from_cyclotomic(x)
        .ok_or_else(|| Error::Inconsistent(format!("scalar type cannot represent {x}")))
}

impl<F: Scalar> Tower<F> {
    /// The full tower with `A_0` spanned by the colour class of `even_vertex`.
    pub fn new(graph: &CoxeterGraph, even_vertex: usize, cap: usize) -> Result<Self> {
        if even_vertex >= graph.vertex_count() {
            return Err(Error::InvalidVertex(
                even_vertex,
                format!("{} has {} vertices", graph.name(), graph.vertex_count()),
            ));
        }
        Self::with_starts(graph, graph.class_of(even_vertex), cap)
    }

    /// The full tower for the default bipartition (the class of the end
    /// vertex used for weight normalization).
    pub fn full(graph: &CoxeterGraph) -> Result<Self> {
        Self::new(graph, graph.default_end(), DEFAULT_LEVEL_CAP)
    }

    /// The corner tower `pA_np` for the vertex projection `p` of `vertex`.
    pub fn corner(graph: &CoxeterGraph, vertex: usize, cap: usize) -> Result<Self> {
        if vertex >= graph.vertex_count() {
            return Err(Error::InvalidVertex(
                vertex,
                format!("{} has {} vertices", graph.name(), graph.vertex_count()),
            ));
        }
        Self::with_starts(graph, vec![vertex], cap)
    }

    /// The corner tower at the star of a pointed graph.
    pub fn pointed(p: &PointedCoxeterGraph, cap: usize) -> Result<Self> {
        Self::corner(p.graph(), p.star(), cap)
    }

    fn with_starts(graph: &CoxeterGraph, starts: Vec<usize>, cap: usize) -> Result<Self> {
        let mu = graph
            .pf_weights()
            .iter()
            .map(lift::<F>)
            .collect::<Result<Vec<F>>>()?;
        let d = field::delta_and_index(graph.coxeter_number())?;
        let delta = lift::<F>(&d.delta)?;
        let tau = lift::<F>(&d.tau)?;
        let norm = starts.iter().fold(F::zero(), |acc, &v| acc.add_ref(&mu[v]));
        let mut t = Tower {
            graph: graph.clone(),
            starts,
            cap: cap.max(1),
            mu,
            delta,
            tau,
            norm,
            levels: Vec::new(),
        };
        let paths: Vec<Vec<u8>> = t.starts.iter().map(|&v| vec![v as u8]).collect();
        let level0 = t.make_level(0, paths, Vec::new());
        t.levels.push(level0);
        t.extend()?;
        Ok(t)
    }

    fn make_level(&self, n: usize, paths: Vec<Vec<u8>>, parent: Vec<u32>) -> Level<F> {
        let mut index = HashMap::with_capacity(paths.len());
        let mut by_end: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut path_weight = Vec::with_capacity(paths.len());
        let mut path_weight_inv = Vec::with_capacity(paths.len());
        for (id, p) in paths.iter().enumerate() {
            index.insert(p.clone(), id as u32);
            by_end
                .entry(*p.last().expect("nonempty") as usize)
                .or_default()
                .push(id as u32);
            let w = p
                .iter()
                .fold(F::one(), |acc, &v| acc.mul_ref(&self.mu[v as usize]));
            path_weight_inv.push(w.inv().expect("positive weights"));
            path_weight.push(w);
        }
        // t_n(v) = μ(v) / (δ^n Σ_{u ∈ starts} μ(u))
        let mut denom = self.norm.clone();
        for _ in 0..n {
            denom = denom.mul_ref(&self.delta);
        }
        let denom_inv = denom.inv().expect("positive trace normalization");
        let trace_weight = self.mu.iter().map(|m| m.mul_ref(&denom_inv)).collect();
        Level {
            paths,
            index,
            by_end,
            children: Vec::new(),
            parent,
            trace_weight,
            path_weight,
            path_weight_inv,
        }
    }

    /// Adds the next floor.
    pub fn extend(&mut self) -> Result<()> {
        let n = self.levels.len();
        if n > self.cap {
            return Err(Error::LevelCapExceeded {
                requested: n,
                cap: self.cap,
            });
        }
        let prev = self.levels.last_mut().expect("level 0 exists");
        let mut paths = Vec::new();
        let mut children = Vec::with_capacity(prev.paths.len());
        let mut parent = Vec::new();
        for (pid, p) in prev.paths.iter().enumerate() {
            let end = *p.last().expect("nonempty") as usize;
            let mut kids = Vec::new();
            for &w in self.graph.neighbors(end) {
                let mut q = p.clone();
                q.push(w as u8);
                kids.push(paths.len() as u32);
                paths.push(q);
                parent.push(pid as u32);
            }
            children.push(kids);
        }
        prev.children = children;
        let level = self.make_level(n, paths, parent);
        self.levels.push(level);
        Ok(())
    }

    /// Extends until level `n` exists.
    pub fn ensure_level(&mut self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::LevelCapExceeded {
                requested: n,
                cap: self.cap,
            });
        }
        while self.top() < n {
            self.extend()?;
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn delta(&self) -> &F {
        &self.delta
    }

    /// `δ⁻²`.
    pub fn tau(&self) -> &F {
        &self.tau
    }

    pub fn mu(&self, v: usize) -> &F {
        &self.mu[v]
    }

    pub(crate) fn level(&self, n: usize) -> Result<&Level<F>> {
        self.levels.get(n).ok_or(Error::LevelCapExceeded {
            requested: n,
            cap: self.top(),
        })
    }

    /// Number of paths at level `n`.
    pub fn path_count(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.paths.len())
    }

    pub fn path(&self, n: usize, id: u32) -> &[u8] {
        &self.levels[n].paths[id as usize]
    }

    /// Vector space dimension of `A_n`.
    pub fn dim(&self, n: usize) -> usize {
        self.levels
            .get(n)
            .map_or(0, |l| l.by_end.values().map(|v| v.len() * v.len()).sum())
    }

    /// End vertices at level `n` (the Bratteli floor).
    pub fn vertices(&self, n: usize) -> Vec<usize> {
        self.levels
            .get(n)
            .map_or(Vec::new(), |l| l.by_end.keys().copied().collect())
    }

    /// Trace of a minimal projection in the block of `v` at level `n`.
    pub fn trace_weight(&self, n: usize, v: usize) -> &F {
        &self.levels[n].trace_weight[v]
    }

    /// Summary of level `n`, formatting trace weights with `fmt`.
    pub fn level_summary(&self, n: usize, fmt: impl Fn(&F) -> String) -> Result<TowerLevel> {
        let l = self.level(n)?;
        let mut block_dims = BTreeMap::new();
        for (&end, ids) in &l.by_end {
            for &id in ids {
                *block_dims
                    .entry(format!("{}->{}", l.start(id), end))
                    .or_insert(0) += 1;
            }
        }
        Ok(TowerLevel {
            level: n,
            vertices: l.by_end.keys().copied().collect(),
            block_dims,
            end_dims: l.by_end.iter().map(|(&v, ids)| (v, ids.len())).collect(),
            dimension: self.dim(n),
            trace_weights: l
                .by_end
                .keys()
                .map(|&v| (v, fmt(&l.trace_weight[v])))
                .collect(),
        })
    }

    /// Bratteli diagram of levels `0..=top` in DOT, annotated with block sizes.
    pub fn bratteli_dot(&self) -> String {
        let mut s = format!("digraph bratteli_{} {{\n  rankdir=BT;\n", self.graph.name());
        for (n, l) in self.levels.iter().enumerate() {
            for (v, ids) in &l.by_end {
                s.push_str(&format!("  \"{n}:{v}\" [label=\"{v} ({})\"];\n", ids.len()));
            }
        }
        for n in 0..self.top() {
            for v in self.levels[n].by_end.keys() {
                for &w in self.graph.neighbors(*v) {
                    s.push_str(&format!("  \"{n}:{v}\" -> \"{}:{w}\";\n", n + 1));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

impl Tower<CycNumber> {
    pub fn level_info(&self, n: usize) -> Result<TowerLevel> {
        self.level_summary(n, |w| approximate(w, 12))
    }
}

/// Exact tower over the cyclotomic field.
pub type ExactTower = Tower<CycNumber>;
/// Floating point tower, for fast cross-checks.
pub type FloatTower = Tower<crate::scalar::Float64>;
