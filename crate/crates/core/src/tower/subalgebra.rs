use super::{AlgElement, Tower};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::scalar::Scalar;

/// A unital *-subalgebra of some floor of the tower, carried so that the
/// trace-preserving conditional expectation onto it can be computed.
#[derive(Clone, Debug)]
pub enum Subalgebra<F: Scalar> {
    /// The floor `A_m`.
    Floor(usize),
    /// `u A_m u⁻¹` for an invertible `u`.
    Conjugated {
        floor: usize,
        u: AlgElement<F>,
        u_inv: AlgElement<F>,
    },
    /// An explicit basis, with the inverse of its trace Gram matrix
    /// `tr(b_i b_j)`.
    Span {
        level: usize,
        basis: Vec<AlgElement<F>>,
        gram_inv: Matrix<F>,
    },
}

impl<F: Scalar> Subalgebra<F> {
    /// Smallest floor containing the subalgebra.
    pub fn level(&self) -> usize {
        match self {
            Subalgebra::Floor(m) => *m,
            Subalgebra::Conjugated { floor, u, .. } => (*floor).max(u.level()),
            Subalgebra::Span { level, .. } => *level,
        }
    }

    pub fn span(tower: &Tower<F>, basis: Vec<AlgElement<F>>) -> Result<Self> {
        let level = basis.iter().map(|b| b.level()).max().unwrap_or(0);
        let basis = basis
            .iter()
            .map(|b| tower.include(b, level))
            .collect::<Result<Vec<_>>>()?;
        let n = basis.len();
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let g = tower.trace_product(&basis[i], &basis[j])?;
                gram.set(j, i, g.clone());
                gram.set(i, j, g);
            }
        }
        let gram_inv = gram.inverse().ok_or(Error::SingularGram)?;
        Ok(Subalgebra::Span {
            level,
            basis,
            gram_inv,
        })
    }

    pub fn conjugated(floor: usize, u: AlgElement<F>, u_inv: AlgElement<F>) -> Result<Self> {
        if u.level() != u_inv.level() {
            return Err(Error::LevelMismatch(u.level(), u_inv.level()));
        }
        Ok(Subalgebra::Conjugated { floor, u, u_inv })
    }

    /// The explicit basis, for `Span` handles.
    pub fn basis(&self) -> Option<&[AlgElement<F>]> {
        match self {
            Subalgebra::Span { basis, .. } => Some(basis),
            _ => None,
        }
    }
}

impl<F: Scalar> Tower<F> {
    /// Trace-preserving conditional expectation of `x` onto `sub`, returned
    /// at the level of `x`.
    pub fn conditional_expectation(
        &self,
        x: &AlgElement<F>,
        sub: &Subalgebra<F>,
    ) -> Result<AlgElement<F>> {
        let n = x.level();
        if sub.level() > n {
            return Err(Error::LevelMismatch(n, sub.level()));
        }
        match sub {
            Subalgebra::Floor(m) => self.include(&self.expect_floor(x, *m)?, n),
            Subalgebra::Conjugated { floor, u, u_inv } => {
                let u = self.include(u, n)?;
                let u_inv = self.include(u_inv, n)?;
                let y = u_inv.mul(x).mul(&u);
                let e = self.include(&self.expect_floor(&y, *floor)?, n)?;
                Ok(u.mul(&e).mul(&u_inv))
            }
            Subalgebra::Span {
                level,
                basis,
                gram_inv,
            } => {
                let y = self.expect_floor(x, *level)?;
                let rhs = basis
                    .iter()
                    .map(|b| self.trace_product(&y, b))
                    .collect::<Result<Vec<F>>>()?;
                let coeffs = gram_inv.mul_vec(&rhs);
                let mut acc = AlgElement::zero(*level);
                for (c, b) in coeffs.iter().zip(basis) {
                    if !c.is_zero() {
                        acc = acc.add(&b.scale(c));
                    }
                }
                self.include(&acc, n)
            }
        }
    }

    /// Basis of `{x ∈ A_level : xg = gx for every generator g}`.
    pub fn commutant(
        &self,
        generators: &[AlgElement<F>],
        level: usize,
    ) -> Result<Vec<AlgElement<F>>> {
        let units = self.matrix_units(level)?;
        let gens = generators
            .iter()
            .map(|g| self.include(g, level))
            .collect::<Result<Vec<_>>>()?;
        let p = self.path_count(level);
        let mut echelon = Echelon::new();
        for g in &gens {
            let mut by_col: std::collections::HashMap<u32, Vec<(u32, F)>> = Default::default();
            for (&(r, c), v) in g.entries() {
                by_col.entry(c).or_default().push((r, v.clone()));
            }
            // equation (α,β): Σ_η x(α,η) g(η,β) − Σ_η g(α,η) x(η,β) = 0
            let mut eqs: std::collections::BTreeMap<usize, SparseVec<F>> = Default::default();
            let mut add = |row: usize, k: usize, v: F| {
                let e = eqs.entry(row).or_default();
                let cur = e.remove(&k).unwrap_or_else(F::zero).add_ref(&v);
                if !cur.is_zero() {
                    e.insert(k, cur);
                }
            };
            for (k, &(a, b)) in units.iter().enumerate() {
                for (&(_, beta), v) in g.entries().range((b, 0)..=(b, u32::MAX)) {
                    add(a as usize * p + beta as usize, k, v.clone());
                }
                for (alpha, v) in by_col.get(&a).into_iter().flatten() {
                    add(*alpha as usize * p + b as usize, k, -v.clone());
                }
            }
            for (_, e) in eqs {
                echelon.insert(e);
            }
        }
        Ok(echelon
            .nullspace(units.len())
            .into_iter()
            .map(|v| {
                let mut x = AlgElement::zero(level);
                for (k, c) in v {
                    let (a, b) = units[k];
                    x = x.add(&self.unit(level, a, b).expect("valid unit").scale(&c));
                }
                x
            })
            .collect())
    }

    /// Basis of the unital algebra generated by `generators` inside
    /// `A_level`: words are built by left multiplication starting from 1.
    pub fn generated_subalgebra(
        &self,
        generators: &[AlgElement<F>],
        level: usize,
    ) -> Result<Vec<AlgElement<F>>> {
        let gens = generators
            .iter()
            .map(|g| self.include(g, level))
            .collect::<Result<Vec<_>>>()?;
        let one = self.identity(level)?;
        let mut echelon = Echelon::new();
        echelon.insert(self.to_sparse(&one));
        let mut basis = vec![one];
        let mut next = 0;
        while next < basis.len() {
            let b = basis[next].clone();
            next += 1;
            for g in &gens {
                let w = g.mul(&b);
                if echelon.insert(self.to_sparse(&w)) {
                    basis.push(w);
                }
            }
        }
        Ok(basis)
    }

    /// Whether `x` lies in the span of `basis` (all at the level of `x`).
    pub fn in_span(&self, basis: &[AlgElement<F>], x: &AlgElement<F>) -> Result<bool> {
        let mut echelon = Echelon::new();
        for b in basis {
            echelon.insert(self.to_sparse(&self.include(b, x.level())?));
        }
        Ok(echelon.contains(&self.to_sparse(x)))
    }
}
