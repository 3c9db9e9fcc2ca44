use std::fmt;
use std::hash::{Hash, Hasher};

use super::Field;
use crate::error::{Error, Result};

/// A dense row-major matrix over an exact field.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.one(); rows * cols],
        }
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Build from integer rows, reducing into the field.
    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j])))
    }

    /// The 0-1 matrix of a predicate.
    pub fn indicator(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        Self::from_fn(field, rows, cols, |i, j| if f(i, j) { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[l * other.cols + j];
                    f.mul_add_assign(&mut out.data[i * other.cols + j], a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sum")?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "difference")?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    /// Entrywise (Schur-Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "Hadamard product")?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.mul(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
            ..self.clone_shape()
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rref(&self.field, &mut rows, self.cols).len()
    }

    /// A basis of `{x : A x = 0}`, each vector of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&self.field, &mut rows, self.cols);
        nullspace_from_rref(&self.field, &rows, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = rref(f, &mut rows, n);
        if pivots.len() < n {
            return None;
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(Matrix {
            field: f.clone(),
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `Σ c_j B_j`
    pub fn linear_combination(field: &F, rows: usize, cols: usize, terms: &[(F::Elem, &Matrix<F>)]) -> Self {
        let mut out = Self::zeros(field, rows, cols);
        for (c, m) in terms {
            if field.is_zero(c) {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                field.mul_add_assign(o, c, x);
            }
        }
        out
    }
}

/// In-place reduced row echelon form over the first `cols` columns (extra
/// columns are carried along). Zero rows are dropped; returns pivot columns.
pub(crate) fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn nullspace_from_rref<F: Field>(
    f: &F,
    rows: &[Vec<F::Elem>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (row, &p) in rows.iter().zip(pivots) {
                v[p] = f.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// An incrementally built echelon basis of a subspace of `F^dim`.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
        v
    }

    pub fn into_parts(self) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
        (self.rows, self.pivots)
    }

    pub fn contains(&self, v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Add `v`; returns whether it was independent of the current basis.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Keep rows fully reduced so that `reduce` is a single pass.
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows).unwrap()
    }

    #[test]
    fn products() {
        let a = q(&[vec![1, 2], vec![3, 4]]);
        let i = Matrix::identity(&Rationals, 2);
        assert_eq!(i.mul(&a).unwrap(), a);
        let j = Matrix::ones(&Rationals, 2, 2);
        assert_eq!(i.hadamard(&j).unwrap(), i);
        let gf2 = PrimeField::new(2).unwrap();
        let j2 = Matrix::ones(&gf2, 2, 2);
        assert!(j2.mul(&j2).unwrap().is_zero());
        assert!(a.mul(&q(&[vec![1, 2, 3]])).is_err());
        assert!(a.add(&q(&[vec![1, 2, 3]])).is_err());
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(Matrix::identity(&Rationals, 4).rank(), 4);
        assert_eq!(Matrix::zeros(&Rationals, 3, 3).rank(), 0);
        let a = q(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = Matrix::from_vec(&Rationals, 2, 1, k[0].clone()).unwrap();
        assert!(a.mul(&v).unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let a = q(&[vec![2, 1], vec![7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&Rationals, 2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
        let f = PrimeField::new(5).unwrap();
        let b = Matrix::from_i64_rows(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), Matrix::identity(&f, 2));
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let f = Rationals;
        let mut e = EchelonBasis::new(&f, 3);
        let v = |x: &[i64]| x.iter().map(|&a| f.from_i64(a)).collect::<Vec<_>>();
        assert!(e.insert(v(&[1, 2, 3])));
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(!e.insert(v(&[1, 3, 4])));
        assert!(e.contains(v(&[2, 5, 7])));
        assert!(!e.contains(v(&[0, 0, 1])));
        assert!(e.insert(v(&[0, 0, 1])));
        assert!(e.is_full());
    }
}
