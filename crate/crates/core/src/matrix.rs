//! Dense and column-sparse matrices over a [`Ring`].

use std::fmt::Write as _;

use crate::ring::Ring;

/// A sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + coef * b` for sorted sparse vectors.
pub fn sparse_axpy<R: Ring>(ring: &R, a: &[(usize, R::Elem)], coef: &R::Elem, b: &[(usize, R::Elem)]) -> SparseVec<R::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = ring.mul(coef, &b[j].1);
            if !ring.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            ring.add_mul_assign(&mut v, coef, &b[j].1);
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sort by index and merge duplicate indices, dropping zeros.
pub fn normalize_sparse<R: Ring>(ring: &R, mut terms: Vec<(usize, R::Elem)>) -> SparseVec<R::Elem> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec<R::Elem> = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = ring.add(&last.1, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !ring.is_zero(v));
    out
}

/// Column-major sparse matrix. Columns are kept in canonical form, so
/// structural equality is matrix equality.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, E)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec<E>> {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        let col = &self.cols[j];
        col.binary_search_by_key(&i, |t| t.0).ok().map(|k| &col[k].1)
    }

    /// `(row, col, value)` triples in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static> SparseMatrix<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, ring.one())]).collect() }
    }

    /// Columns are normalized (sorted, merged, zeros dropped).
    pub fn from_columns<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: Vec<Vec<(usize, E)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                debug_assert!(c.iter().all(|t| t.0 < rows), "row index out of range");
                normalize_sparse(ring, c)
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn from_triplets<R: Ring<Elem = E>>(ring: &R, rows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, E)>) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        for (i, j, v) in triplets {
            cols[j].push((i, v));
        }
        Self::from_columns(ring, rows, cols)
    }

    /// `self * v` for a sparse column vector.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[(usize, E)]) -> SparseVec<E> {
        let mut terms = Vec::new();
        for (k, c) in v {
            for (i, a) in &self.cols[*k] {
                terms.push((*i, ring.mul(a, c)));
            }
        }
        normalize_sparse(ring, terms)
    }

    /// Matrix product `self * other`.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch in product");
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(ring, c)).collect() }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> SparseMatrix<E> {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(i, v)| {
                        let w = ring.mul(c, v);
                        (!ring.is_zero(&w)).then_some((*i, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> SparseMatrix<E> {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols }
    }

    pub fn map<R2: Ring>(&self, f: impl Fn(&E) -> R2::Elem, ring: &R2) -> SparseMatrix<R2::Elem> {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !ring.is_zero(v)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let mut m = Matrix::zeros(ring, self.rows, self.ncols());
        for (i, j, v) in self.triplets() {
            m.set(i, j, v.clone());
        }
        m
    }

    /// Coordinate-triple dump, one `label row col value` line per nonzero.
    pub fn dump<R: Ring<Elem = E>>(&self, ring: &R, label: &str) -> String {
        let mut out = String::new();
        for (i, j, v) in self.triplets() {
            let _ = writeln!(out, "{label} {i} {j} {}", ring.format(v));
        }
        out
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows<R: Ring<Elem = E>>(ring: &R, rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vec(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !ring.is_zero(b) {
                        let idx = i * other.cols + j;
                        ring.add_mul_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !ring.is_zero(a) && !ring.is_zero(b) {
                        ring.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix<E> {
        let mut data = Vec::with_capacity(self.rows * range.len());
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[range.clone()]);
        }
        Matrix { rows: self.rows, cols: range.len(), data }
    }

    /// Rows `range` as a new matrix.
    pub fn rows_range(&self, range: std::ops::Range<usize>) -> Matrix<E> {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        Matrix { rows: range.len(), cols: self.cols, data }
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|v| ring.is_zero(v))
    }

    pub fn to_sparse<R: Ring<Elem = E>>(&self, ring: &R) -> SparseMatrix<E> {
        let cols = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !ring.is_zero(self.get(i, j)))
                    .map(|i| (i, self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row_multiple<R: Ring<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, c: &E) {
        if ring.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !ring.is_zero(&s) {
                ring.add_mul_assign(&mut self.data[dst * self.cols + j], c, &s);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col_multiple<R: Ring<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, c: &E) {
        if ring.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !ring.is_zero(&s) {
                ring.add_mul_assign(&mut self.data[i * self.cols + dst], c, &s);
            }
        }
    }

    pub fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, c: &E) {
        for j in 0..self.cols {
            let v = ring.mul(c, &self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn scale_col<R: Ring<Elem = E>>(&mut self, ring: &R, j: usize, c: &E) {
        for i in 0..self.rows {
            let v = ring.mul(c, &self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}
