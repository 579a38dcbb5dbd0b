//! Dense exact linear algebra over ℚ.
//!
//! Everything is built on one routine, [`RatMatrix::rref`], whose pivot rule
//! (leftmost nonzero column, topmost row) makes every derived basis canonical.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        RatMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rational) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = vec![Rational::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * xj);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// Two-sided inverse, or `None` if the matrix is singular or not square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return (n == 0).then(|| self.clone());
        }
        Some(RatMatrix::from_rows(
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    fn to_row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut rows = self.to_row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        let data = rows.into_iter().flatten().collect();
        (
            RatMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_row_vecs();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let a = r.get(i, free);
                if !a.is_zero() {
                    v[p] = -a;
                }
            }
            vectors.push(v);
        }
        SubspaceBasis::span(self.cols, vectors)
    }

    /// Echelon basis of the column space.
    pub fn image(&self) -> SubspaceBasis {
        let t = self.transpose();
        SubspaceBasis::span(self.rows, t.to_row_vecs())
    }
}

/// Gauss-Jordan elimination on a list of rows of width `cols`; returns pivots.
/// Rows are left in RREF with zero rows at the bottom.
fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        let mut nz = Vec::new();
        for (j, x) in rows[r].iter_mut().enumerate().take(cols).skip(c) {
            if !x.is_zero() {
                if !inv.is_one() {
                    *x = &*x * &inv;
                }
                nz.push(j);
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                let delta = &factor * &prow[j];
                row[j] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of ℚⁿ stored as the nonzero rows of a reduced row-echelon matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
    pivot_cols: Vec<usize>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = RatMatrix::identity(ambient_dim);
        SubspaceBasis::span(ambient_dim, id.to_row_vecs())
    }

    /// Canonical basis of the span of arbitrary vectors.
    pub fn span(ambient_dim: usize, mut vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(
                v.len(),
                ambient_dim,
                "vector length must equal ambient dimension"
            );
        }
        let pivot_cols = rref_in_place(&mut vectors, ambient_dim);
        vectors.truncate(pivot_cols.len());
        SubspaceBasis {
            ambient_dim,
            vectors,
            pivot_cols,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Coordinates of `v` in this basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Rational> = self.pivot_cols.iter().map(|&p| v[p].clone()).collect();
        let mut rem = v.to_vec();
        for (c, b) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= &(c * x);
                }
            }
        }
        rem.iter().all(Rational::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.ambient_dim == self.ambient_dim && other.vectors.iter().all(|v| self.contains(v))
    }
}

/// `sup / sub` with explicit representatives and a coordinate map.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    ambient_dim: usize,
    sub_dim: usize,
    representatives: Vec<Vec<Rational>>,
    // RREF of [sub vectors; representatives] and the row operations producing it
    reduced: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    transform: RatMatrix,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.representatives
    }

    /// Quotient coordinates of a vector of the larger subspace.
    pub fn coords_of(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        // v = w * reduced with w_i = v[pivot_i]; combination coefficients are w * transform
        let w: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rem = v.to_vec();
        for (wi, row) in w.iter().zip(&self.reduced) {
            if wi.is_zero() {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r -= &(wi * x);
                }
            }
        }
        if !rem.iter().all(Rational::is_zero) {
            return Err(Error::SubspaceNotContained);
        }
        let k = self.transform.rows();
        let mut coords = vec![Rational::zero(); k - self.sub_dim];
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            for (j, c) in coords.iter_mut().enumerate() {
                let t = self.transform.get(i, self.sub_dim + j);
                if !t.is_zero() {
                    *c += &(wi * t);
                }
            }
        }
        Ok(coords)
    }
}

/// Completes `sub` to a basis of `sup`; representatives are the vectors of
/// `sup` (in echelon order) that are independent of what came before.
pub fn quotient_basis(sub: &SubspaceBasis, sup: &SubspaceBasis) -> Result<QuotientBasis> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(Error::LengthMismatch {
            expected: sup.ambient_dim,
            found: sub.ambient_dim,
        });
    }
    if !sup.contains_subspace(sub) {
        return Err(Error::SubspaceNotContained);
    }
    let mut running = sub.clone();
    let mut representatives = Vec::new();
    for v in &sup.vectors {
        if !running.contains(v) {
            representatives.push(v.clone());
            let mut vs = running.vectors.clone();
            vs.push(v.clone());
            running = SubspaceBasis::span(sup.ambient_dim, vs);
        }
    }
    let basis: Vec<Vec<Rational>> = sub
        .vectors
        .iter()
        .chain(&representatives)
        .cloned()
        .collect();
    let k = basis.len();
    // augment with identity to record the row operations
    let width = sup.ambient_dim + k;
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = v.clone();
            row.extend((0..k).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let all_pivots = rref_in_place(&mut aug, width);
    let pivots: Vec<usize> = all_pivots
        .into_iter()
        .filter(|&p| p < sup.ambient_dim)
        .collect();
    debug_assert_eq!(pivots.len(), k);
    let reduced = aug.iter().map(|r| r[..sup.ambient_dim].to_vec()).collect();
    let transform = RatMatrix::from_rows(
        aug.into_iter()
            .map(|r| r[sup.ambient_dim..].to_vec())
            .collect(),
    );
    Ok(QuotientBasis {
        ambient_dim: sup.ambient_dim,
        sub_dim: sub.dim(),
        representatives,
        reduced,
        pivots,
        transform,
    })
}

/// Some `x` with `m x = b`, zero in every non-pivot coordinate, or `None`.
pub fn solve_particular(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(
        b.len(),
        m.rows(),
        "right-hand side length must equal row count"
    );
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, m.cols() + 1);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][m.cols()].clone();
    }
    Some(x)
}
