use std::fmt;

use super::{Fe, Field, GfError};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Reduced row echelon form together with its pivot columns.
///
/// Pivoting scans rows top to bottom and picks the leftmost nonzero entry, so
/// the result is a deterministic function of the input.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Fe>>) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(GfError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { field, rows: nrows, cols, data })
    }

    /// Builds a matrix from raw residues, reducing each entry mod `q`.
    pub fn from_u64_rows(field: Field, rows: &[&[u64]]) -> Result<Self, GfError> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| field.elem(v)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Fe>]) -> Result<Self, GfError> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(GfError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Fe>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, GfError> {
        if self.cols != rhs.rows {
            return Err(GfError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)] + a * rhs[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, GfError> {
        if v.len() != self.cols {
            return Err(GfError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (&a, &b)| acc + a * b))
            .collect())
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)];
                    m.sub_row_multiple(i, r, factor, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : A·v = 0}`, one vector per free column in
    /// ascending column order. Each vector has a 1 in its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Fe>> {
        let Echelon { rref, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = self.field.zeros(self.cols);
                v[free] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref[(r, free)];
                }
                v
            })
            .collect()
    }

    /// One solution of `A·x = b` with every free variable set to zero.
    pub fn solve(&self, b: &[Fe]) -> Result<Vec<Fe>, GfError> {
        if b.len() != self.rows {
            return Err(GfError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(GfError::NoSolution);
        }
        let mut x = self.field.zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rref[(r, self.cols)];
        }
        Ok(x)
    }

    /// A matrix `R` with `A·R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Result<Matrix, GfError> {
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, self.cols + n);
        for i in 0..n {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols + i)] = self.field.one();
        }
        let Echelon { rref, pivots } = aug.echelon();
        let rank = pivots.iter().take_while(|&&p| p < self.cols).count();
        if rank < n {
            return Err(GfError::RankDeficient { rank, rows: n });
        }
        let mut r = Matrix::zeros(self.field, self.cols, n);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..n {
                r[(p, j)] = rref[(row, self.cols + j)];
            }
        }
        Ok(r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: Fe) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v *= s;
        }
    }

    // row[target] -= factor * row[source], for columns >= from.
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: Fe, from: usize) {
        let cols = self.cols;
        for j in from..cols {
            let s = self.data[source * cols + j];
            if !s.is_zero() {
                self.data[target * cols + j] -= factor * s;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Incrementally maintained basis of a subspace of `F_q^n`.
///
/// Vectors are kept fully reduced against each other, so membership and
/// insertion are single passes. Inserting the columns of `E_0, E_1, …` in order
/// reproduces the rank sequence of the nested evaluation matrices without
/// ever re-eliminating the earlier columns.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: Field,
    len: usize,
    // (pivot position, vector normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<Fe>)>,
}

impl SpanBasis {
    pub fn new(field: Field, len: usize) -> Self {
        Self { field, len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &mut [Fe]) {
        for (p, row) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x -= c * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        for x in &mut w {
            *x *= inv;
        }
        for (_, row) in &mut self.rows {
            let c = row[p];
            if !c.is_zero() {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x -= c * r;
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}
