//! Dense matrices with exact rational entries.
//!
//! All maps in the library are carried by `Matrix`. Entries are exact
//! `BigRational` values; over the ring Z every entry is an integer (checked
//! by the callers that enforce a ring). Empty matrices (zero rows and/or
//! zero columns) are legal and behave as the corresponding zero/identity
//! conventions demand: a 0xN matrix is the unique map from N generators to
//! the zero module, and the product of compatible empty matrices is the
//! zero matrix of the resulting shape.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Scalar = BigRational;

/// The two ground rings of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Ring {
    /// The integers.
    Z,
    /// The rationals.
    Q,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
        }
    }
}

pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Build from integer rows; panics if the row lengths are inconsistent.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Matrix::from_fn(r, c, |i, j| {
            assert_eq!(rows[i].len(), c, "ragged rows");
            scalar_int(rows[i][j])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let v = out.at(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "col mismatch in vstack");
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        })
    }

    /// Block matrix from a grid of blocks. Row heights/column widths are
    /// taken from the blocks, which must be consistent.
    pub fn block(blocks: &[Vec<&Matrix>]) -> Matrix {
        let row_heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut out = Matrix::zero(rows, cols);
        let mut r0 = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            assert_eq!(brow.len(), col_widths.len(), "ragged block grid");
            let mut c0 = 0;
            for (bj, b) in brow.iter().enumerate() {
                assert_eq!(b.rows, row_heights[bi], "block height mismatch");
                assert_eq!(b.cols, col_widths[bj], "block width mismatch");
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.at(i, j).clone());
                    }
                }
                c0 += b.cols;
            }
            r0 += row_heights[bi];
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self.at(i, j).clone())
    }

    pub fn columns(&self, js: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, js.len(), |i, j| self.at(i, js[j]).clone())
    }

    /// Column-stacking vectorization: entry (i, j) lands at index j*rows + i.
    pub fn vectorize(&self) -> Matrix {
        Matrix::from_fn(self.rows * self.cols, 1, |k, _| {
            let j = k / self.rows;
            let i = k % self.rows;
            self.at(i, j).clone()
        })
    }

    /// Inverse of `vectorize` for a rows x cols target shape.
    pub fn unvectorize(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols, "vector length mismatch");
        Matrix::from_fn(rows, cols, |i, j| v.at(j * rows + i, 0).clone())
    }

    /// Kronecker product, chosen so that vec(A X B) = (B^T kron A) vec(X)
    /// with column-stacking `vectorize`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (ia, ib) = (i / other.rows, i % other.rows);
            let (ja, jb) = (j / other.cols, j % other.cols);
            self.at(ia, ja) * other.at(ib, jb)
        })
    }

    /// Determinant by fraction-free expansion; exact, used for unimodularity
    /// checks in tests and validators.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        // Bareiss-style elimination on a rational copy.
        let mut m = self.clone();
        let mut det = Scalar::one();
        for t in 0..n {
            // find pivot
            let mut piv = None;
            for i in t..n {
                if !m.at(i, t).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { return Scalar::zero() };
            if p != t {
                for j in 0..n {
                    let a = m.at(t, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(t, j, b);
                    m.set(p, j, a);
                }
                det = -det;
            }
            let pv = m.at(t, t).clone();
            det *= pv.clone();
            for i in t + 1..n {
                let f = m.at(i, t) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in t..n {
                    let v = m.at(i, j) - &f * m.at(t, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn max_abs_num_bits(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.numer().abs().bits().max(e.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}
