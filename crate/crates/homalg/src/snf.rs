//! Exact diagonalization and linear solving over Z and Q.
//!
//! Over Z this is Smith normal form: U*M*V = D with U, V unimodular and D
//! diagonal with a divisibility chain d1 | d2 | ... and di >= 0. Over Q it
//! is plain diagonalization to diag(1,...,1,0,...,0) with U, V invertible.
//! Pivoting over Z picks the smallest-absolute-value nonzero entry, ties
//! broken by lowest row then column index, so outputs are deterministic.
//!
//! The integer path runs on i128 with overflow checks and falls back to
//! BigInt when a product or sum would overflow; results are exact either
//! way.

use crate::matrix::{Matrix, Ring, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Result of `diagonalize`: u * m * v = d.
#[derive(Debug, Clone)]
pub struct Diag {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

trait SnfInt: Clone + PartialEq + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn neg(&self) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// Quotient q minimizing |self - q*other|; other != 0. None on overflow.
    fn div_nearest(&self, other: &Self) -> Option<Self>;
    /// self | other, or None if the check would overflow.
    fn rem_exactly_divides(&self, other: &Self) -> Option<bool>;
}

impl SnfInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn div_nearest(&self, other: &Self) -> Option<Self> {
        let q = self.checked_div_euclid(*other)?;
        let r = self.checked_rem_euclid(*other)?;
        if r.checked_mul(2)? > other.checked_abs()? {
            if *other > 0 { q.checked_add(1) } else { q.checked_sub(1) }
        } else {
            Some(q)
        }
    }
    fn rem_exactly_divides(&self, other: &Self) -> Option<bool> {
        Some(other.checked_rem(*self)? == 0)
    }
}

impl SnfInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_nearest(&self, other: &Self) -> Option<Self> {
        use num_integer::Integer;
        let (q, r) = self.div_mod_floor(other);
        if BigInt::from(2) * r > Signed::abs(other) {
            if other.is_positive() { Some(q + 1) } else { Some(q - 1) }
        } else {
            Some(q)
        }
    }
    fn rem_exactly_divides(&self, other: &Self) -> Option<bool> {
        Some(Zero::is_zero(&(other % self)))
    }
}

struct Grid<T> {
    rows: usize,
    cols: usize,
    e: Vec<T>,
}

impl<T: SnfInt> Grid<T> {
    fn identity(n: usize) -> Self {
        let mut e = vec![T::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = T::one();
        }
        Grid { rows: n, cols: n, e }
    }
    fn at(&self, i: usize, j: usize) -> &T {
        &self.e[i * self.cols + j]
    }
    fn set(&mut self, i: usize, j: usize, v: T) {
        self.e[i * self.cols + j] = v;
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.e.swap(a * self.cols + j, b * self.cols + j);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.e.swap(i * self.cols + a, i * self.cols + b);
        }
    }
    /// row a -= q * row b; None on overflow.
    fn row_sub(&mut self, a: usize, q: &T, b: usize) -> Option<()> {
        for j in 0..self.cols {
            let p = q.checked_mul(self.at(b, j))?;
            let v = self.at(a, j).checked_add(&p.neg())?;
            self.set(a, j, v);
        }
        Some(())
    }
    fn col_sub(&mut self, a: usize, q: &T, b: usize) -> Option<()> {
        for i in 0..self.rows {
            let p = q.checked_mul(self.at(i, b))?;
            let v = self.at(i, a).checked_add(&p.neg())?;
            self.set(i, a, v);
        }
        Some(())
    }
    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = self.at(a, j).neg();
            self.set(a, j, v);
        }
    }
    fn row_add(&mut self, a: usize, b: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.at(a, j).checked_add(self.at(b, j))?;
            self.set(a, j, v);
        }
        Some(())
    }
}

/// Smallest-absolute-value nonzero pivot in the trailing submatrix,
/// ties broken by lowest row then column index.
fn find_pivot<T: SnfInt>(m: &Grid<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let v = m.at(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((ba, _, _)) if *ba <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn snf_generic<T: SnfInt>(m0: Grid<T>) -> Option<(Grid<T>, Grid<T>, Grid<T>, usize)> {
    let mut m = m0;
    let mut u = Grid::<T>::identity(m.rows);
    let mut v = Grid::<T>::identity(m.cols);
    let steps = m.rows.min(m.cols);
    let mut rank = 0;
    for t in 0..steps {
        let Some((pi, pj)) = find_pivot(&m, t) else { break };
        m.swap_rows(t, pi);
        u.swap_rows(t, pi);
        m.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // clear column below the pivot
            let mut dirty = false;
            for i in t + 1..m.rows {
                if m.at(i, t).is_zero() {
                    continue;
                }
                let q = m.at(i, t).div_nearest(m.at(t, t))?;
                if !q.is_zero() {
                    m.row_sub(i, &q, t)?;
                    u.row_sub(i, &q, t)?;
                }
                if !m.at(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..m.cols {
                if m.at(t, j).is_zero() {
                    continue;
                }
                let q = m.at(t, j).div_nearest(m.at(t, t))?;
                if !q.is_zero() {
                    m.col_sub(j, &q, t)?;
                    v.col_sub(j, &q, t)?;
                }
                if !m.at(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a nonzero remainder is strictly smaller than the pivot;
                // re-pick and continue
                let (pi, pj) = find_pivot(&m, t).expect("remainder implies nonzero entry");
                m.swap_rows(t, pi);
                u.swap_rows(t, pi);
                m.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility fix-up: pivot must divide the trailing block
            let mut bad = None;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !m.at(i, j).is_zero() && !m.at(t, t).rem_exactly_divides(m.at(i, j))? {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    m.row_add(t, i)?;
                    u.row_add(t, i)?;
                }
                None => break,
            }
        }
        if m.at(t, t) < &T::zero() {
            m.negate_row(t);
            u.negate_row(t);
        }
        rank = t + 1;
    }
    Some((u, m, v, rank))
}

fn to_i128_grid(m: &Matrix) -> Option<Grid<i128>> {
    let mut e = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = m.at(i, j);
            if !s.is_integer() {
                return None;
            }
            e.push(i128::try_from(s.numer().clone()).ok()?);
        }
    }
    Some(Grid { rows: m.rows(), cols: m.cols(), e })
}

fn to_bigint_grid(m: &Matrix) -> Grid<BigInt> {
    let mut e = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = m.at(i, j);
            assert!(s.is_integer(), "non-integer entry in integer diagonalization");
            e.push(s.numer().clone());
        }
    }
    Grid { rows: m.rows(), cols: m.cols(), e }
}

fn from_i128_grid(g: &Grid<i128>) -> Matrix {
    Matrix::from_fn(g.rows, g.cols, |i, j| BigRational::from_integer(BigInt::from(*g.at(i, j))))
}

fn from_bigint_grid(g: &Grid<BigInt>) -> Matrix {
    Matrix::from_fn(g.rows, g.cols, |i, j| BigRational::from_integer(g.at(i, j).clone()))
}

fn snf_int(m: &Matrix) -> Diag {
    if let Some(g) = to_i128_grid(m) {
        if let Some((u, d, v, rank)) = snf_generic(g) {
            return Diag {
                u: from_i128_grid(&u),
                d: from_i128_grid(&d),
                v: from_i128_grid(&v),
                rank,
            };
        }
    }
    let g = to_bigint_grid(m);
    let (u, d, v, rank) = snf_generic(g).expect("BigInt path cannot overflow");
    Diag { u: from_bigint_grid(&u), d: from_bigint_grid(&d), v: from_bigint_grid(&v), rank }
}

fn diag_rat(m: &Matrix) -> Diag {
    let mut d = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut v = Matrix::identity(m.cols());
    let steps = m.rows().min(m.cols());
    let mut rank = 0;
    for t in 0..steps {
        // first nonzero entry scanning rows then columns
        let mut piv = None;
        'find: for i in t..d.rows() {
            for j in t..d.cols() {
                if !d.at(i, j).is_zero() {
                    piv = Some((i, j));
                    break 'find;
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let p = d.at(t, t).clone();
        scale_row(&mut d, t, &(Scalar::one() / &p));
        scale_row(&mut u, t, &(Scalar::one() / &p));
        for i in 0..d.rows() {
            if i == t || d.at(i, t).is_zero() {
                continue;
            }
            let f = d.at(i, t).clone();
            row_axpy(&mut d, i, &f, t);
            row_axpy(&mut u, i, &f, t);
        }
        for j in 0..d.cols() {
            if j == t || d.at(t, j).is_zero() {
                continue;
            }
            let f = d.at(t, j).clone();
            col_axpy(&mut d, j, &f, t);
            col_axpy(&mut v, j, &f, t);
        }
        rank = t + 1;
    }
    Diag { u, d, v, rank }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn scale_row(m: &mut Matrix, a: usize, s: &Scalar) {
    for j in 0..m.cols() {
        let v = m.at(a, j) * s;
        m.set(a, j, v);
    }
}

/// row a -= f * row b
fn row_axpy(m: &mut Matrix, a: usize, f: &Scalar, b: usize) {
    for j in 0..m.cols() {
        let v = m.at(a, j) - f * m.at(b, j);
        m.set(a, j, v);
    }
}

/// col a -= f * col b
fn col_axpy(m: &mut Matrix, a: usize, f: &Scalar, b: usize) {
    for i in 0..m.rows() {
        let v = m.at(i, a) - f * m.at(i, b);
        m.set(i, a, v);
    }
}

/// Diagonalize over the given ring; see the module docs for the contract.
pub fn diagonalize(m: &Matrix, ring: Ring) -> Diag {
    match ring {
        Ring::Z => snf_int(m),
        Ring::Q => diag_rat(m),
    }
}

/// Solve A X = B over the ring; None means provably no solution.
pub fn solve(a: &Matrix, b: &Matrix, ring: Ring) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve: rhs height mismatch");
    let dg = diagonalize(a, ring);
    let ub = dg.u.mul(b);
    let mut y = Matrix::zero(a.cols(), b.cols());
    for i in 0..ub.rows() {
        for j in 0..ub.cols() {
            let v = ub.at(i, j);
            if i < dg.rank {
                let d = dg.d.at(i, i);
                let q = v / d;
                if ring == Ring::Z && !q.is_integer() {
                    return None;
                }
                y.set(i, j, q);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(dg.v.mul(&y))
}

/// Columns generating {x : A x = 0}. Over Z this is a basis of the full
/// kernel lattice (saturated), since V is unimodular.
pub fn kernel(a: &Matrix, ring: Ring) -> Matrix {
    let dg = diagonalize(a, ring);
    let idx: Vec<usize> = (dg.rank..a.cols()).collect();
    dg.v.columns(&idx)
}

/// Columns generating {x : A x lies in the column span/lattice of L}.
pub fn preimage_gens(a: &Matrix, l: &Matrix, ring: Ring) -> Matrix {
    assert_eq!(a.rows(), l.rows(), "preimage: ambient mismatch");
    let k = kernel(&a.hstack(l), ring);
    let rows: Vec<usize> = (0..a.cols()).collect();
    let cols: Vec<usize> = (0..k.cols()).collect();
    k.submatrix(&rows, &cols)
}

/// Does v lie in the column lattice/span of L?
pub fn lattice_contains(l: &Matrix, v: &Matrix, ring: Ring) -> bool {
    solve(l, v, ring).is_some()
}

/// A basis (as columns) of the column lattice/span of m: over Z a
/// Z-basis of the subgroup generated by the columns, over Q a basis of
/// the column space.
pub fn lattice_basis(m: &Matrix, ring: Ring) -> Matrix {
    let dg = diagonalize(m, ring);
    let uinv = inverse(&dg.u, ring);
    let mut out = Matrix::zero(m.rows(), dg.rank);
    for j in 0..dg.rank {
        let d = dg.d.at(j, j);
        for i in 0..m.rows() {
            out.set(i, j, uinv.at(i, j) * d);
        }
    }
    out
}

/// Exact inverse of a square invertible matrix (unimodular over Z).
pub fn inverse(m: &Matrix, ring: Ring) -> Matrix {
    solve(m, &Matrix::identity(m.rows()), ring).expect("matrix not invertible")
}
