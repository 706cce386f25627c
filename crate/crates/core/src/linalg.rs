//! Exact (or tolerance based, for floats) linear algebra over a [`Scalar`]:
//! a small dense matrix type and an incremental sparse row echelon form.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub_ref(other.get(i, j))
        })
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Row with the best pivot in column `col` among rows `from..`.
    fn choose_pivot(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let v = self.get(r, col);
            if v.is_zero() {
                continue;
            }
            let w = v.pivot_weight();
            if best.is_none_or(|(_, bw)| w > bw) {
                best = Some((r, w));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.choose_pivot(c, r) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = self.get(r, j).mul_ref(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let pv = self.get(r, j);
                    if !pv.is_zero() {
                        let v = self.get(i, j).sub_ref(&f.mul_ref(pv));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Characteristic polynomial `det(x - A)`, via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly<F> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = h.choose_pivot(c, c + 1) else {
                continue;
            };
            h.swap_rows(c + 1, p);
            h.swap_cols(c + 1, p);
            let inv = h.get(c + 1, c).inv().expect("nonzero pivot");
            for i in c + 2..n {
                let f = h.get(i, c).mul_ref(&inv);
                if f.is_zero() {
                    continue;
                }
                // row_i -= f row_{c+1}; col_{c+1} += f col_i
                for j in 0..n {
                    let v = h.get(i, j).sub_ref(&f.mul_ref(h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, c + 1).add_ref(&f.mul_ref(h.get(r, i)));
                    h.set(r, c + 1, v);
                }
            }
        }
        let mut p: Vec<Poly<F>> = vec![Poly::one()];
        for m in 0..n {
            let mut next = Poly::x()
                .sub(&Poly::constant(h.get(m, m).clone()))
                .mul(&p[m]);
            let mut prod = F::one();
            for i in (0..m).rev() {
                prod = prod.mul_ref(h.get(i + 1, i));
                let coef = prod.mul_ref(h.get(i, m));
                next = next.sub(&p[i].scale(&coef));
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub type SparseVec<F> = BTreeMap<usize, F>;

/// `y += a x`, dropping entries that cancel.
pub fn axpy<F: Scalar>(y: &mut SparseVec<F>, a: &F, x: &SparseVec<F>) {
    for (k, v) in x {
        let add = a.mul_ref(v);
        match y.get_mut(k) {
            Some(e) => {
                *e = e.add_ref(&add);
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    y.insert(*k, add);
                }
            }
        }
    }
}

/// Incremental row echelon form of sparse vectors. Every stored row has a
/// leading entry 1 in its pivot column and no entries to the left of it.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Scalar> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<F: Scalar> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0;
        while let Some((&k, _)) = v.range(cursor..).next() {
            if let Some(row) = self.rows.get(&k) {
                let f = -v[&k].clone();
                axpy(&mut v, &f, row);
                v.remove(&k);
            }
            cursor = k + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, lv)) = r.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero leading entry");
        for x in r.values_mut() {
            *x = x.mul_ref(&inv);
        }
        r.insert(lead, F::one());
        self.rows.insert(lead, r);
        true
    }

    /// Back-substitutes to reduced row echelon form.
    pub fn into_reduced(mut self) -> Vec<(usize, SparseVec<F>)> {
        let keys: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &k in &keys {
            let row = self.rows[&k].clone();
            for (&other, orow) in self.rows.iter_mut() {
                if other >= k {
                    break;
                }
                if let Some(f) = orow.get(&k).cloned() {
                    let f = -f;
                    axpy(orow, &f, &row);
                    orow.remove(&k);
                }
            }
        }
        self.rows.into_iter().collect()
    }

    /// Basis of the solutions `x ∈ F^ncols` of the homogeneous system whose
    /// equations are the stored rows.
    pub fn nullspace(self, ncols: usize) -> Vec<SparseVec<F>> {
        let reduced = self.into_reduced();
        let pivot_set: std::collections::BTreeSet<usize> =
            reduced.iter().map(|(k, _)| *k).collect();
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v = SparseVec::new();
            v.insert(f, F::one());
            for (p, row) in &reduced {
                if let Some(c) = row.get(&f) {
                    v.insert(*p, -c.clone());
                }
            }
            out.push(v);
        }
        out
    }
}
