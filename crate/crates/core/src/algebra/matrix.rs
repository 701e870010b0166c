//! Dense matrices over GF(q) and exact row-space solving.

use crate::gf::{Elem, FieldTable};

use super::AlgebraError;

/// Row-major matrix over GF(q). Vectors are rows; products are `u * M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from explicit rows; all rows must share one width.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(AlgebraError::LengthMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::LengthMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Copies `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    /// Stacks matrices of equal width top to bottom.
    pub fn vstack(parts: &[&Matrix]) -> Result<Self, AlgebraError> {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.cols != cols {
                return Err(AlgebraError::LengthMismatch { expected: cols, found: m.cols });
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, field: &FieldTable, u: &[Elem]) -> Vec<Elem> {
        assert_eq!(u.len(), self.rows, "row vector length must equal row count");
        let mut out = vec![0; self.cols];
        for (r, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(c, m));
            }
        }
        out
    }

    pub fn mul(&self, field: &FieldTable, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::LengthMismatch { expected: self.cols, found: other.rows });
        }
        let data = self.row_iter().flat_map(|r| other.vec_mul(field, r)).collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn rank(&self, field: &FieldTable) -> usize {
        Echelon::reduce(field, self).pivots.len()
    }
}

/// Reduced row echelon form `R = T * M` with the transformation `T` kept.
struct Echelon {
    reduced: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Gauss-Jordan elimination, pivoting on the first nonzero entry of
    /// each column scanned left to right.
    fn reduce(field: &FieldTable, m: &Matrix) -> Self {
        let mut a = m.clone();
        let mut t = Matrix::identity(m.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            swap_rows(&mut a, r, pr);
            swap_rows(&mut t, r, pr);
            let inv = field.inv(a.get(r, c)).unwrap();
            scale_row(field, &mut a, r, inv);
            scale_row(field, &mut t, r, inv);
            for i in 0..a.rows {
                let f = a.get(i, c);
                if i != r && f != 0 {
                    axpy_row(field, &mut a, i, r, f);
                    axpy_row(field, &mut t, i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, transform: t, pivots }
    }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn scale_row(field: &FieldTable, m: &mut Matrix, r: usize, s: Elem) {
    for c in 0..m.cols {
        let v = m.get(r, c);
        m.set(r, c, field.mul(v, s));
    }
}

/// `row[dst] -= f * row[src]`.
fn axpy_row(field: &FieldTable, m: &mut Matrix, dst: usize, src: usize, f: Elem) {
    for c in 0..m.cols {
        let v = field.sub(m.get(dst, c), field.mul(f, m.get(src, c)));
        m.set(dst, c, v);
    }
}

/// Precomputed solver for `u * M = target` with `M` of full row rank.
#[derive(Debug, Clone)]
pub struct RowSolver {
    reduced: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
}

impl RowSolver {
    pub fn new(field: &FieldTable, m: &Matrix) -> Result<Self, AlgebraError> {
        let ech = Echelon::reduce(field, m);
        if ech.pivots.len() != m.rows {
            return Err(AlgebraError::RankDeficient { rank: ech.pivots.len(), rows: m.rows });
        }
        Ok(RowSolver { reduced: ech.reduced, transform: ech.transform, pivots: ech.pivots })
    }

    pub fn rows(&self) -> usize {
        self.reduced.rows
    }

    pub fn cols(&self) -> usize {
        self.reduced.cols
    }

    /// Unique preimage of `target`, or `None` when it is outside the row space.
    pub fn solve(&self, field: &FieldTable, target: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(target.len(), self.reduced.cols);
        let coords: Vec<Elem> = self.pivots.iter().map(|&c| target[c]).collect();
        let image = self.reduced.vec_mul(field, &coords);
        if image != target {
            return None;
        }
        Some(self.transform.vec_mul(field, &coords))
    }
}

/// One-shot `u * M = target`.
pub fn solve_right(field: &FieldTable, m: &Matrix, target: &[Elem]) -> Result<Vec<Elem>, AlgebraError> {
    if target.len() != m.cols {
        return Err(AlgebraError::LengthMismatch { expected: m.cols, found: target.len() });
    }
    RowSolver::new(field, m)?.solve(field, target).ok_or(AlgebraError::NoSolution)
}
