//! Builder for linear systems with matrix-valued unknowns.
//!
//! Systems have the shape Σ_t L_t · U_{v(t)} · R_t = C per equation, with
//! an optional "modulo lattice" relaxation that works column-by-column
//! (used for equality of maps modulo target relations). Everything is
//! assembled into one big matrix via vec(L·U·R) = (Rᵀ ⊗ L)·vec(U) and
//! solved by exact diagonalization, so infeasibility is a proof.

use crate::matrix::{Matrix, Ring};
use crate::snf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarId(usize);

struct Term {
    left: Matrix,
    var: VarId,
    right: Matrix,
}

struct Equation {
    terms: Vec<Term>,
    rhs: Matrix,
}

pub struct LinSys {
    ring: Ring,
    shapes: Vec<(usize, usize)>,
    /// vars beyond this count are internal slack and not reported
    public: usize,
    eqs: Vec<Equation>,
}

impl LinSys {
    pub fn new(ring: Ring) -> Self {
        LinSys { ring, shapes: Vec::new(), public: 0, eqs: Vec::new() }
    }

    pub fn var(&mut self, rows: usize, cols: usize) -> VarId {
        assert_eq!(self.public, self.shapes.len(), "declare all vars before equations");
        self.shapes.push((rows, cols));
        self.public += 1;
        VarId(self.shapes.len() - 1)
    }

    fn slack(&mut self, rows: usize, cols: usize) -> VarId {
        self.shapes.push((rows, cols));
        VarId(self.shapes.len() - 1)
    }

    /// Σ left·U·right = rhs (exact equality).
    pub fn eq(&mut self, terms: Vec<(Matrix, VarId, Matrix)>, rhs: Matrix) {
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|(left, var, right)| {
                let (vr, vc) = self.shapes[var.0];
                assert_eq!(left.cols(), vr, "term left width != var rows");
                assert_eq!(right.rows(), vc, "term right height != var cols");
                assert_eq!(left.rows(), rhs.rows(), "term height mismatch");
                assert_eq!(right.cols(), rhs.cols(), "term width mismatch");
                Term { left, var, right }
            })
            .collect();
        self.eqs.push(Equation { terms, rhs });
    }

    /// Σ left·U·right ≡ rhs modulo the column lattice (per column of the
    /// equation): realized by a fresh slack unknown S and the extra term
    /// lattice·S.
    pub fn eq_mod(
        &mut self,
        terms: Vec<(Matrix, VarId, Matrix)>,
        rhs: Matrix,
        lattice: &Matrix,
    ) {
        assert_eq!(lattice.rows(), rhs.rows(), "lattice ambient mismatch");
        let mut terms = terms;
        if lattice.cols() > 0 {
            let s = self.slack(lattice.cols(), rhs.cols());
            terms.push((lattice.clone(), s, Matrix::identity(rhs.cols())));
        }
        self.eq(terms, rhs);
    }

    fn offsets(&self) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.shapes.len());
        let mut total = 0;
        for &(r, c) in &self.shapes {
            offs.push(total);
            total += r * c;
        }
        (offs, total)
    }

    fn assemble(&self) -> (Matrix, Matrix) {
        let (offs, total) = self.offsets();
        let m: usize = self.eqs.iter().map(|e| e.rhs.rows() * e.rhs.cols()).sum();
        let mut a = Matrix::zero(m, total);
        let mut b = Matrix::zero(m, 1);
        let mut row0 = 0;
        for eq in &self.eqs {
            let h = eq.rhs.rows() * eq.rhs.cols();
            let vr = eq.rhs.vectorize();
            for i in 0..h {
                b.set(row0 + i, 0, vr.at(i, 0).clone());
            }
            for t in &eq.terms {
                let block = t.right.transpose().kronecker(&t.left);
                let c0 = offs[t.var.0];
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        let v = a.at(row0 + i, c0 + j) + block.at(i, j);
                        a.set(row0 + i, c0 + j, v);
                    }
                }
            }
            row0 += h;
        }
        (a, b)
    }

    fn unpack(&self, x: &Matrix, col: usize) -> Vec<Matrix> {
        let (offs, _) = self.offsets();
        (0..self.public)
            .map(|v| {
                let (r, c) = self.shapes[v];
                let mut vm = Matrix::zero(r * c, 1);
                for i in 0..r * c {
                    vm.set(i, 0, x.at(offs[v] + i, col).clone());
                }
                Matrix::unvectorize(&vm, r, c)
            })
            .collect()
    }

    /// One solution (values of the public vars), or a proven None.
    pub fn solve(&self) -> Option<Vec<Matrix>> {
        let (a, b) = self.assemble();
        let x = snf::solve(&a, &b, self.ring)?;
        Some(self.unpack(&x, 0))
    }

    /// Basis of the homogeneous solution space, one assignment per element.
    pub fn kernel_basis(&self) -> Vec<Vec<Matrix>> {
        let (a, _) = self.assemble();
        let k = snf::kernel(&a, self.ring);
        (0..k.cols()).map(|j| self.unpack(&k, j)).collect()
    }
}
