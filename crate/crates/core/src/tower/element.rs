use std::collections::BTreeMap;

use super::Tower;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// An element of `A_n`: sparse coefficients on matrix units `(ξ, η)`, where
/// `ξ` and `η` are path ids at level `n` with the same end vertex. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement<F> {
    level: usize,
    entries: BTreeMap<(u32, u32), F>,
}

fn accumulate<F: Scalar>(map: &mut BTreeMap<(u32, u32), F>, key: (u32, u32), v: F) {
    match map.get_mut(&key) {
        Some(e) => *e = e.add_ref(&v),
        None => {
            map.insert(key, v);
        }
    }
}

impl<F: Scalar> AlgElement<F> {
    pub fn zero(level: usize) -> Self {
        AlgElement {
            level,
            entries: BTreeMap::new(),
        }
    }

    fn from_map(level: usize, mut entries: BTreeMap<(u32, u32), F>) -> Self {
        entries.retain(|_, v| !v.is_zero());
        AlgElement { level, entries }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), F> {
        &self.entries
    }

    pub fn get(&self, xi: u32, eta: u32) -> F {
        self.entries
            .get(&(xi, eta))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of stored coefficients.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch(self.level, other.level))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut m = self.entries.clone();
        for (k, v) in &other.entries {
            accumulate(&mut m, *k, v.clone());
        }
        Ok(Self::from_map(self.level, m))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut m = BTreeMap::new();
        for (&(a, b), x) in &self.entries {
            for (&(_, c), y) in other.entries.range((b, 0)..=(b, u32::MAX)) {
                accumulate(&mut m, (a, c), x.mul_ref(y));
            }
        }
        Ok(Self::from_map(self.level, m))
    }

    /// Sum; panics on a level mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same level")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same level")
    }

    /// Product; panics on a level mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same level")
    }

    pub fn neg(&self) -> Self {
        AlgElement {
            level: self.level,
            entries: self.entries.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_map(
            self.level,
            self.entries
                .iter()
                .map(|(k, v)| (*k, v.mul_ref(c)))
                .collect(),
        )
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> AlgElement<G> {
        AlgElement::from_map(
            self.level,
            self.entries.iter().map(|(k, v)| (*k, f(v))).collect(),
        )
    }
}

impl<F: Scalar> Tower<F> {
    fn check_level(&self, n: usize) -> Result<()> {
        self.level(n).map(|_| ())
    }

    pub fn identity(&self, n: usize) -> Result<AlgElement<F>> {
        let l = self.level(n)?;
        Ok(AlgElement {
            level: n,
            entries: (0..l.paths.len() as u32)
                .map(|i| ((i, i), F::one()))
                .collect(),
        })
    }

    pub fn scalar(&self, n: usize, c: &F) -> Result<AlgElement<F>> {
        Ok(self.identity(n)?.scale(c))
    }

    /// Matrix unit `(ξ, η)`; both paths must end at the same vertex.
    pub fn unit(&self, n: usize, xi: u32, eta: u32) -> Result<AlgElement<F>> {
        let l = self.level(n)?;
        let count = l.paths.len();
        if xi as usize >= count || eta as usize >= count {
            return Err(Error::OutOfRange {
                index: xi.max(eta) as usize,
                valid: format!("0..{count}"),
            });
        }
        if l.end(xi) != l.end(eta) {
            return Err(Error::InvalidVertex(
                l.end(eta),
                "matrix unit paths must share an end".into(),
            ));
        }
        let mut entries = BTreeMap::new();
        entries.insert((xi, eta), F::one());
        Ok(AlgElement { level: n, entries })
    }

    /// All matrix units `(ξ, η)` of level `n`, grouped by end vertex.
    pub fn matrix_units(&self, n: usize) -> Result<Vec<(u32, u32)>> {
        let l = self.level(n)?;
        let mut out = Vec::with_capacity(self.dim(n));
        for ids in l.by_end.values() {
            for &a in ids {
                for &b in ids {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    /// The minimal central projection of `A_0` for a start vertex, at level `n`.
    pub fn vertex_projection(&self, v: usize, n: usize) -> Result<AlgElement<F>> {
        if !self.starts().contains(&v) {
            return Err(Error::InvalidVertex(v, "not a vertex of A_0".into()));
        }
        let l = self.level(n)?;
        Ok(AlgElement {
            level: n,
            entries: (0..l.paths.len() as u32)
                .filter(|&i| l.start(i) == v)
                .map(|i| ((i, i), F::one()))
                .collect(),
        })
    }

    /// The minimal central projection of `A_n` for the block of end vertex `v`.
    pub fn central_projection(&self, v: usize, n: usize) -> Result<AlgElement<F>> {
        let l = self.level(n)?;
        let ids = l
            .by_end
            .get(&v)
            .ok_or_else(|| Error::InvalidVertex(v, format!("not a vertex of level {n}")))?;
        Ok(AlgElement {
            level: n,
            entries: ids.iter().map(|&i| ((i, i), F::one())).collect(),
        })
    }

    /// The Jones projection `e_i ∈ A_{i+1}`, written at level `n ≥ i + 1`.
    pub fn jones(&self, i: usize, n: usize) -> Result<AlgElement<F>> {
        if i == 0 || n < i + 1 {
            return Err(Error::OutOfRange {
                index: i,
                valid: format!("1..={}", n.saturating_sub(1)),
            });
        }
        let l = self.level(n)?;
        let mut entries = BTreeMap::new();
        for (a, p) in l.paths.iter().enumerate() {
            if p[i - 1] != p[i + 1] {
                continue;
            }
            let base = p[i - 1] as usize;
            let denom = self
                .delta()
                .mul_ref(self.mu(base))
                .inv()
                .expect("positive weight");
            let mut q = p.clone();
            for &w in self.graph().neighbors(base) {
                q[i] = w as u8;
                let b = l.index[&q];
                entries.insert((a as u32, b), self.mu(w).mul_ref(&denom));
            }
        }
        Ok(AlgElement { level: n, entries })
    }

    /// The Markov trace.
    pub fn trace(&self, x: &AlgElement<F>) -> Result<F> {
        let l = self.level(x.level)?;
        Ok(x.entries
            .iter()
            .filter(|((a, b), _)| a == b)
            .fold(F::zero(), |acc, ((a, _), v)| {
                acc.add_ref(&v.mul_ref(&l.trace_weight[l.end(*a)]))
            }))
    }

    /// `tr(x y)` without forming the product.
    pub fn trace_product(&self, x: &AlgElement<F>, y: &AlgElement<F>) -> Result<F> {
        x.check(y)?;
        let l = self.level(x.level)?;
        let mut acc = F::zero();
        for (&(a, b), v) in &x.entries {
            if let Some(w) = y.entries.get(&(b, a)) {
                acc = acc.add_ref(&v.mul_ref(w).mul_ref(&l.trace_weight[l.end(a)]));
            }
        }
        Ok(acc)
    }

    /// The adjoint for the weighted inner product in which `e_i` is
    /// self-adjoint: `x*(ξ,η) = conj(x(η,ξ)) W(η)/W(ξ)`.
    pub fn adjoint(&self, x: &AlgElement<F>) -> Result<AlgElement<F>> {
        let l = self.level(x.level)?;
        Ok(AlgElement {
            level: x.level,
            entries: x
                .entries
                .iter()
                .map(|(&(a, b), v)| {
                    let w = l.path_weight[a as usize].mul_ref(&l.path_weight_inv[b as usize]);
                    ((b, a), v.conj().mul_ref(&w))
                })
                .collect(),
        })
    }

    /// The image of `x` under the inclusion `A_n ⊂ A_m`.
    pub fn include(&self, x: &AlgElement<F>, m: usize) -> Result<AlgElement<F>> {
        if m < x.level {
            return Err(Error::LevelMismatch(x.level, m));
        }
        self.check_level(m)?;
        let mut cur = x.clone();
        while cur.level < m {
            let l = self.level(cur.level)?;
            let mut entries = BTreeMap::new();
            for (&(a, b), v) in &cur.entries {
                for (ka, kb) in l.children[a as usize].iter().zip(&l.children[b as usize]) {
                    entries.insert((*ka, *kb), v.clone());
                }
            }
            cur = AlgElement {
                level: cur.level + 1,
                entries,
            };
        }
        Ok(cur)
    }

    /// Brings two elements to the higher of their levels.
    pub fn align(
        &self,
        x: &AlgElement<F>,
        y: &AlgElement<F>,
    ) -> Result<(AlgElement<F>, AlgElement<F>)> {
        let m = x.level.max(y.level);
        Ok((self.include(x, m)?, self.include(y, m)?))
    }

    /// `E_{A_{m}}(x)` as an element of level `m ≤ x.level`.
    pub fn expect_floor(&self, x: &AlgElement<F>, m: usize) -> Result<AlgElement<F>> {
        if m > x.level {
            return Err(Error::LevelMismatch(x.level, m));
        }
        let mut cur = x.clone();
        while cur.level > m {
            let n = cur.level;
            let l = self.level(n)?;
            let lp = self.level(n - 1)?;
            let mut entries = BTreeMap::new();
            for (&(a, b), v) in &cur.entries {
                let (pa, pb) = (l.parent[a as usize], l.parent[b as usize]);
                if lp.end(pa) != lp.end(pb) {
                    continue;
                }
                let ratio = l.trace_weight[l.end(a)]
                    .mul_ref(&lp.trace_weight[lp.end(pa)].inv().expect("positive weight"));
                accumulate(&mut entries, (pa, pb), v.mul_ref(&ratio));
            }
            cur = AlgElement::from_map(n - 1, entries);
        }
        Ok(cur)
    }

    /// Coordinates of `x` as a sparse vector indexed by `ξ · P + η`.
    pub fn to_sparse(&self, x: &AlgElement<F>) -> SparseVec<F> {
        let p = self.path_count(x.level);
        x.entries
            .iter()
            .map(|(&(a, b), v)| (a as usize * p + b as usize, v.clone()))
            .collect()
    }

    pub fn from_sparse(&self, n: usize, v: &SparseVec<F>) -> AlgElement<F> {
        let p = self.path_count(n);
        AlgElement::from_map(
            n,
            v.iter()
                .map(|(&k, c)| (((k / p) as u32, (k % p) as u32), c.clone()))
                .collect(),
        )
    }

    /// `pxp` for a vertex selector `p` of `A_0` (a sum of minimal central
    /// projections of `A_0`, given at any level).
    pub fn cut_down(&self, p: &AlgElement<F>, x: &AlgElement<F>) -> Result<AlgElement<F>> {
        let support = self.selector_support(p)?;
        let (_, x) = self.align(p, x)?;
        let l = self.level(x.level)?;
        Ok(AlgElement {
            level: x.level,
            entries: x
                .entries
                .iter()
                .filter(|((a, b), _)| {
                    support.contains(&l.start(*a)) && support.contains(&l.start(*b))
                })
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        })
    }

    /// The start vertices selected by `p`; errors unless `p` is a projection
    /// of `A_0` of that form.
    fn selector_support(&self, p: &AlgElement<F>) -> Result<Vec<usize>> {
        let l = self.level(p.level)?;
        let one = F::one();
        let mut chosen: BTreeMap<usize, bool> = BTreeMap::new();
        for (&(a, b), v) in &p.entries {
            if a != b || *v != one {
                return Err(Error::NotIdempotent);
            }
            chosen.insert(l.start(a), true);
        }
        for id in 0..l.paths.len() as u32 {
            let on = p.entries.contains_key(&(id, id));
            if chosen.contains_key(&l.start(id)) != on {
                return Err(Error::NotIdempotent);
            }
        }
        Ok(chosen.into_keys().collect())
    }

    /// Re-expresses an element supported on paths from `corner`'s start
    /// vertex as an element of the corner tower.
    pub fn restrict_to_corner(
        &self,
        corner: &Tower<F>,
        x: &AlgElement<F>,
    ) -> Result<AlgElement<F>> {
        let l = self.level(x.level)?;
        let c = corner.level(x.level)?;
        let mut entries = BTreeMap::new();
        for (&(a, b), v) in &x.entries {
            let (Some(&ca), Some(&cb)) = (
                c.index.get(&l.paths[a as usize]),
                c.index.get(&l.paths[b as usize]),
            ) else {
                return Err(Error::InvalidVertex(
                    l.start(a),
                    "element is not supported on the corner".into(),
                ));
            };
            entries.insert((ca, cb), v.clone());
        }
        Ok(AlgElement {
            level: x.level,
            entries,
        })
    }
}
