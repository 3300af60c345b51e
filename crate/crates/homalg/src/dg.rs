//! Finite-dimensional dg algebras over ℚ, dg modules, duality, and the
//! free-module Yoneda isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::complex::{cohomology, hom_complex, Complex};
use crate::fpmodule::FPModule;
use crate::matrix::{Matrix, Ring, Scalar};
use crate::snf::diagonalize;

/// A dg algebra presented by a graded basis, structure constants, and
/// differential matrices. An optional object set turns it into a dg
/// category (an algebra with several objects): each basis element then
/// carries a (source, target) pair and non-composable products vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct DGAlgebra {
    pub lo: i64,
    pub hi: i64,
    /// basis dimension per degree in lo..=hi
    pub dims: BTreeMap<i64, usize>,
    /// coefficients of 1 in the degree-0 basis
    pub unit: Matrix,
    /// column i + j·dim(p) of mult[(p,q)] holds the coefficients of
    /// eᵢ·eⱼ in the degree p+q basis; absent entries are zero
    pub mult: BTreeMap<(i64, i64), Matrix>,
    /// diff[n]: degree n → degree n+1
    pub diff: BTreeMap<i64, Matrix>,
    /// object names plus (source, target) per basis element, if this is
    /// a dg category rather than a one-object algebra
    pub objects: Option<DgObjects>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DgObjects {
    pub names: Vec<String>,
    /// per degree, per basis element: (source object, target object)
    pub endpoints: BTreeMap<i64, Vec<(usize, usize)>>,
}

impl DGAlgebra {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn mult_matrix(&self, p: i64, q: i64) -> Matrix {
        self.mult
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim(p + q), self.dim(p) * self.dim(q)))
    }

    pub fn diff_matrix(&self, n: i64) -> Matrix {
        self.diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim(n + 1), self.dim(n)))
    }

    /// Coefficients of x·y, for x of degree p and y of degree q.
    pub fn product(&self, p: i64, x: &Matrix, q: i64, y: &Matrix) -> Matrix {
        self.mult_matrix(p, q).mul(&y.kronecker(x))
    }

    fn basis_vec(&self, n: i64, i: usize) -> Matrix {
        let mut v = Matrix::zero(self.dim(n), 1);
        v.set(i, 0, Scalar::one());
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DgViolation {
    Shape { description: String },
    UnitLeft { degree: i64, index: usize },
    UnitRight { degree: i64, index: usize },
    Associativity { degrees: (i64, i64, i64), indices: (usize, usize, usize) },
    DiffSquare { degree: i64, index: usize },
    Leibniz { degrees: (i64, i64), indices: (usize, usize) },
    Composability { degrees: (i64, i64), indices: (usize, usize) },
}

impl fmt::Display for DgViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgViolation::Shape { description } => write!(f, "shape: {}", description),
            DgViolation::UnitLeft { degree, index } => {
                write!(f, "unit law fails on the left of basis element {} in degree {}", index, degree)
            }
            DgViolation::UnitRight { degree, index } => {
                write!(f, "unit law fails on the right of basis element {} in degree {}", index, degree)
            }
            DgViolation::Associativity { degrees, indices } => write!(
                f,
                "associativity fails on triple {:?} in degrees {:?}",
                indices, degrees
            ),
            DgViolation::DiffSquare { degree, index } => {
                write!(f, "d² ≠ 0 on basis element {} in degree {}", index, degree)
            }
            DgViolation::Leibniz { degrees, indices } => {
                write!(f, "Leibniz fails on pair {:?} in degrees {:?}", indices, degrees)
            }
            DgViolation::Composability { degrees, indices } => write!(
                f,
                "non-composable pair {:?} in degrees {:?} has nonzero product",
                indices, degrees
            ),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct DgReport {
    pub violations: Vec<DgViolation>,
}

impl DgReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_dg_algebra(a: &DGAlgebra) -> DgReport {
    let mut out = Vec::new();
    let degrees: Vec<i64> = (a.lo..=a.hi).collect();
    if a.unit.rows() != a.dim(0) || a.unit.cols() != 1 {
        out.push(DgViolation::Shape { description: "unit vector has wrong shape".into() });
    }
    for ((p, q), m) in &a.mult {
        if m.rows() != a.dim(p + q) || m.cols() != a.dim(*p) * a.dim(*q) {
            out.push(DgViolation::Shape {
                description: format!("multiplication table ({}, {}) has wrong shape", p, q),
            });
        }
    }
    for (n, m) in &a.diff {
        if m.rows() != a.dim(n + 1) || m.cols() != a.dim(*n) {
            out.push(DgViolation::Shape {
                description: format!("differential in degree {} has wrong shape", n),
            });
        }
    }
    if !out.is_empty() {
        return DgReport { violations: out };
    }
    // unit laws
    for &n in &degrees {
        for i in 0..a.dim(n) {
            let x = a.basis_vec(n, i);
            if a.product(0, &a.unit, n, &x) != x {
                out.push(DgViolation::UnitLeft { degree: n, index: i });
            }
            if a.product(n, &x, 0, &a.unit) != x {
                out.push(DgViolation::UnitRight { degree: n, index: i });
            }
        }
    }
    // associativity on basis triples
    for &p in &degrees {
        for &q in &degrees {
            for &r in &degrees {
                if a.dim(p + q + r) == 0 && a.dim(p + q) == 0 && a.dim(q + r) == 0 {
                    continue;
                }
                for i in 0..a.dim(p) {
                    for j in 0..a.dim(q) {
                        let xy = a.product(p, &a.basis_vec(p, i), q, &a.basis_vec(q, j));
                        for k in 0..a.dim(r) {
                            let z = a.basis_vec(r, k);
                            let yz = a.product(q, &a.basis_vec(q, j), r, &z);
                            let lhs = a.product(p + q, &xy, r, &z);
                            let rhs = a.product(p, &a.basis_vec(p, i), q + r, &yz);
                            if lhs != rhs {
                                out.push(DgViolation::Associativity {
                                    degrees: (p, q, r),
                                    indices: (i, j, k),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // d² = 0
    for &n in &degrees {
        let dd = a.diff_matrix(n + 1).mul(&a.diff_matrix(n));
        for i in 0..a.dim(n) {
            if !dd.column(i).is_zero() {
                out.push(DgViolation::DiffSquare { degree: n, index: i });
            }
        }
    }
    // Leibniz on basis pairs: d(xy) = d(x)y + (−1)ᵖ x d(y)
    for &p in &degrees {
        for &q in &degrees {
            for i in 0..a.dim(p) {
                let x = a.basis_vec(p, i);
                let dx = a.diff_matrix(p).mul(&x);
                for j in 0..a.dim(q) {
                    let y = a.basis_vec(q, j);
                    let dy = a.diff_matrix(q).mul(&y);
                    let lhs = a.diff_matrix(p + q).mul(&a.product(p, &x, q, &y));
                    let mut rhs = a.product(p + 1, &dx, q, &y);
                    let t = a.product(p, &x, q + 1, &dy);
                    rhs = if p % 2 == 0 { rhs.add(&t) } else { rhs.sub(&t) };
                    if lhs != rhs {
                        out.push(DgViolation::Leibniz { degrees: (p, q), indices: (i, j) });
                    }
                }
            }
        }
    }
    // dg category: products of non-composable basis elements vanish
    if let Some(obj) = &a.objects {
        for &p in &degrees {
            for &q in &degrees {
                let ep = obj.endpoints.get(&p).cloned().unwrap_or_default();
                let eq = obj.endpoints.get(&q).cloned().unwrap_or_default();
                for (i, &(si, ti)) in ep.iter().enumerate() {
                    for (j, &(sj, tj)) in eq.iter().enumerate() {
                        // x·y composes x after y when target(y) = source(x)
                        let _ = (ti, sj);
                        if tj != si {
                            let prod =
                                a.product(p, &a.basis_vec(p, i), q, &a.basis_vec(q, j));
                            if !prod.is_zero() {
                                out.push(DgViolation::Composability {
                                    degrees: (p, q),
                                    indices: (i, j),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    DgReport { violations: out }
}

/// (−1)^{pq}-twisted multiplication with the arguments swapped.
pub fn opposite_algebra(a: &DGAlgebra) -> DGAlgebra {
    let mut mult = BTreeMap::new();
    for p in a.lo..=a.hi {
        for q in a.lo..=a.hi {
            let dp = a.dim(p);
            let dq = a.dim(q);
            if dp == 0 || dq == 0 || a.dim(p + q) == 0 {
                continue;
            }
            let base = a.mult_matrix(q, p);
            let mut m = Matrix::zero(a.dim(p + q), dp * dq);
            let sign = if (p * q) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for i in 0..dp {
                for j in 0..dq {
                    let src = base.column(j + i * dq).scale(&sign);
                    for r in 0..m.rows() {
                        m.set(r, i + j * dp, src.at(r, 0).clone());
                    }
                }
            }
            mult.insert((p, q), m);
        }
    }
    let objects = a.objects.as_ref().map(|o| DgObjects {
        names: o.names.clone(),
        endpoints: o
            .endpoints
            .iter()
            .map(|(n, v)| (*n, v.iter().map(|&(s, t)| (t, s)).collect()))
            .collect(),
    });
    DGAlgebra {
        lo: a.lo,
        hi: a.hi,
        dims: a.dims.clone(),
        unit: a.unit.clone(),
        mult,
        diff: a.diff.clone(),
        objects,
    }
}

/// End(X) as a dg algebra, X a complex of free ℚ-modules.
pub fn end_complex_as_dga(x: &Complex) -> DGAlgebra {
    assert_eq!(x.ring(), Ring::Q, "End-complex algebras live over Q");
    let x = if (x.lo()..=x.hi()).all(|n| x.component(n).is_free_presentation()) {
        x.clone()
    } else {
        crate::derived::proj_resolve(x).complex
    };
    let hc = hom_complex(&x, &x);
    let lo = hc.complex.lo();
    let hi = hc.complex.hi();
    let dims: BTreeMap<i64, usize> = (lo..=hi).map(|n| (n, hc.complex.gens(n))).collect();
    let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
    // blocks of the graded map with coordinates v in degree deg
    let blocks = |deg: i64, v: &Matrix| -> BTreeMap<i64, Matrix> {
        hc.decode(deg, v).into_iter().collect()
    };
    let mut mult = BTreeMap::new();
    for p in lo..=hi {
        for q in lo..=hi {
            if dim(p) == 0 || dim(q) == 0 || dim(p + q) == 0 {
                continue;
            }
            let mut m = Matrix::zero(dim(p + q), dim(p) * dim(q));
            for i in 0..dim(p) {
                let fb = blocks(p, &Matrix::identity(dim(p)).column(i));
                for j in 0..dim(q) {
                    let gb = blocks(q, &Matrix::identity(dim(q)).column(j));
                    // (f∘g) over X^r is f at r+q after g at r
                    let comp = hc.encode(p + q, &|r| match (fb.get(&(r + q)), gb.get(&r)) {
                        (Some(fr), Some(gr)) => fr.mul(gr),
                        _ => Matrix::zero(x.gens(r + p + q), x.gens(r)),
                    });
                    for r in 0..comp.rows() {
                        m.set(r, i + j * dim(p), comp.at(r, 0).clone());
                    }
                }
            }
            mult.insert((p, q), m);
        }
    }
    let unit = hc.encode(0, &|r| Matrix::identity(x.gens(r)));
    let diff: BTreeMap<i64, Matrix> = (lo..hi).map(|n| (n, hc.complex.diff_action(n))).collect();
    DGAlgebra { lo, hi, dims, unit, mult, diff, objects: None }
}

/// A right dg module over a one-object dg algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct DGModule {
    pub algebra: DGAlgebra,
    pub lo: i64,
    pub hi: i64,
    pub dims: BTreeMap<i64, usize>,
    pub diff: BTreeMap<i64, Matrix>,
    /// action[(n, p)]: Xⁿ ⊗ Aᵖ → Xⁿ⁺ᵖ, column i + j·dim(n)
    pub action: BTreeMap<(i64, i64), Matrix>,
}

impl DGModule {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn diff_matrix(&self, n: i64) -> Matrix {
        self.diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim(n + 1), self.dim(n)))
    }

    pub fn action_matrix(&self, n: i64, p: i64) -> Matrix {
        self.action
            .get(&(n, p))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim(n + p), self.dim(n) * self.algebra.dim(p)))
    }

    /// Action of the j-th degree-p basis element, as a matrix Xⁿ → Xⁿ⁺ᵖ.
    pub fn basis_action(&self, n: i64, p: i64, j: usize) -> Matrix {
        let act = self.action_matrix(n, p);
        let d = self.dim(n);
        let cols: Vec<usize> = (0..d).map(|i| i + j * d).collect();
        let rows: Vec<usize> = (0..act.rows()).collect();
        act.submatrix(&rows, &cols)
    }

    /// The complex of underlying graded components.
    pub fn underlying_complex(&self) -> Complex {
        if self.lo > self.hi {
            return Complex::zero_complex(Ring::Q);
        }
        let comps = (self.lo..=self.hi).map(|n| FPModule::free(Ring::Q, self.dim(n))).collect();
        let diffs = (self.lo..self.hi).map(|n| self.diff_matrix(n)).collect();
        Complex::new(Ring::Q, self.lo, comps, diffs)
    }
}

/// A as a right module over itself.
pub fn free_module(a: &DGAlgebra) -> DGModule {
    DGModule {
        algebra: a.clone(),
        lo: a.lo,
        hi: a.hi,
        dims: a.dims.clone(),
        diff: a.diff.clone(),
        action: a.mult.clone(),
    }
}

pub fn check_dg_module(x: &DGModule) -> DgReport {
    let mut out = Vec::new();
    let a = &x.algebra;
    let mdeg: Vec<i64> = (x.lo..=x.hi).collect();
    let adeg: Vec<i64> = (a.lo..=a.hi).collect();
    // unit acts as the identity
    for &n in &mdeg {
        let mut act_unit = Matrix::zero(x.dim(n), x.dim(n));
        for j in 0..a.dim(0) {
            act_unit = act_unit.add(&x.basis_action(n, 0, j).scale(a.unit.at(j, 0)));
        }
        for i in 0..x.dim(n) {
            if act_unit.column(i) != Matrix::identity(x.dim(n)).column(i) {
                out.push(DgViolation::UnitRight { degree: n, index: i });
            }
        }
    }
    // (x·a)·b = x·(a·b)
    for &n in &mdeg {
        for &p in &adeg {
            for &q in &adeg {
                for j in 0..a.dim(p) {
                    for k in 0..a.dim(q) {
                        let lhs = x.basis_action(n + p, q, k).mul(&x.basis_action(n, p, j));
                        let prod = a.product(p, &a.basis_vec(p, j), q, &a.basis_vec(q, k));
                        let mut rhs = Matrix::zero(x.dim(n + p + q), x.dim(n));
                        for l in 0..a.dim(p + q) {
                            rhs = rhs.add(&x.basis_action(n, p + q, l).scale(prod.at(l, 0)));
                        }
                        if lhs != rhs {
                            out.push(DgViolation::Associativity {
                                degrees: (n, p, q),
                                indices: (0, j, k),
                            });
                        }
                    }
                }
            }
        }
    }
    // d² = 0
    for &n in &mdeg {
        let dd = x.diff_matrix(n + 1).mul(&x.diff_matrix(n));
        for i in 0..x.dim(n) {
            if !dd.column(i).is_zero() {
                out.push(DgViolation::DiffSquare { degree: n, index: i });
            }
        }
    }
    // d(x·a) = d(x)·a + (−1)ⁿ x·d(a)
    for &n in &mdeg {
        for &p in &adeg {
            for j in 0..a.dim(p) {
                let lhs = x.diff_matrix(n + p).mul(&x.basis_action(n, p, j));
                let mut rhs = x.basis_action(n + 1, p, j).mul(&x.diff_matrix(n));
                let da = a.diff_matrix(p).column(j);
                let mut xd = Matrix::zero(x.dim(n + p + 1), x.dim(n));
                for l in 0..a.dim(p + 1) {
                    xd = xd.add(&x.basis_action(n, p + 1, l).scale(da.at(l, 0)));
                }
                rhs = if n % 2 == 0 { rhs.add(&xd) } else { rhs.sub(&xd) };
                if lhs != rhs {
                    out.push(DgViolation::Leibniz { degrees: (n, p), indices: (0, j) });
                }
            }
        }
    }
    DgReport { violations: out }
}

/// Degree-0 components of a map of dg modules; `check_dg_map` verifies
/// commutation with differentials and the action.
#[derive(Debug, Clone)]
pub struct DGMap {
    pub comps: BTreeMap<i64, Matrix>,
}

impl DGMap {
    pub fn component(&self, x: &DGModule, y: &DGModule, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(y.dim(n), x.dim(n)))
    }
}

pub fn check_dg_map(f: &DGMap, x: &DGModule, y: &DGModule) -> bool {
    let lo = x.lo.min(y.lo);
    let hi = x.hi.max(y.hi);
    for n in lo..=hi {
        let left = y.diff_matrix(n).mul(&f.component(x, y, n));
        let right = f.component(x, y, n + 1).mul(&x.diff_matrix(n));
        if left != right {
            return false;
        }
        for p in x.algebra.lo..=x.algebra.hi {
            for j in 0..x.algebra.dim(p) {
                let l = f.component(x, y, n + p).mul(&x.basis_action(n, p, j));
                let r = y.basis_action(n, p, j).mul(&f.component(x, y, n));
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// The dual module over the opposite algebra:
/// (DX)ⁿ = (X⁻ⁿ)* with dⁿ = (−1)ⁿ⁺¹ (d_X⁻ⁿ⁻¹)ᵀ.
pub fn dg_dual(x: &DGModule) -> DGModule {
    let algebra = opposite_algebra(&x.algebra);
    let lo = -x.hi;
    let hi = -x.lo;
    let dims: BTreeMap<i64, usize> = (lo..=hi).map(|n| (n, x.dim(-n))).collect();
    let mut diff = BTreeMap::new();
    for n in lo..hi {
        let d = x.diff_matrix(-n - 1).transpose();
        diff.insert(n, if n % 2 == 0 { d.neg() } else { d });
    }
    let mut action = BTreeMap::new();
    for n in lo..=hi {
        for p in algebra.lo..=algebra.hi {
            let dn = x.dim(-n);
            let da = algebra.dim(p);
            if dn == 0 || da == 0 || x.dim(-n - p) == 0 {
                continue;
            }
            let mut m = Matrix::zero(x.dim(-n - p), dn * da);
            let sign = if ((n + 1) * p) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for j in 0..da {
                let blk = x.basis_action(-n - p, p, j).transpose().scale(&sign);
                for i in 0..dn {
                    for r in 0..blk.rows() {
                        m.set(r, i + j * dn, blk.at(r, i).clone());
                    }
                }
            }
            action.insert((n, p), m);
        }
    }
    DGModule { algebra, lo, hi, dims, diff, action }
}

/// The evaluation map X → DDX, with components (−1)ⁿ·id; returns the
/// double dual and whether evaluation is an isomorphism of dg modules.
pub fn biduality(x: &DGModule) -> (DGModule, bool) {
    let ddx = dg_dual(&dg_dual(x));
    if ddx.algebra != x.algebra {
        return (ddx, false);
    }
    let comps: BTreeMap<i64, Matrix> = (x.lo..=x.hi)
        .map(|n| {
            let id = Matrix::identity(x.dim(n));
            (n, if n % 2 == 0 { id } else { id.neg() })
        })
        .collect();
    let eps = DGMap { comps };
    let ok = (x.lo..=x.hi).all(|n| ddx.dim(n) == x.dim(n)) && check_dg_map(&eps, x, &ddx);
    (ddx, ok)
}

fn dg_map_space(x: &DGModule, y: &DGModule, degree: i64, with_diff: bool) -> (Matrix, Vec<(i64, usize, usize)>) {
    // graded A-linear maps X → Y homogeneous of the given degree as the
    // kernel of a constraint matrix; returns (constraints, var layout)
    let lo = x.lo.min(y.lo - degree);
    let hi = x.hi.max(y.hi - degree);
    let layout: Vec<(i64, usize, usize)> =
        (lo..=hi).map(|n| (n, y.dim(n + degree), x.dim(n))).collect();
    let offsets: BTreeMap<i64, usize> = {
        let mut m = BTreeMap::new();
        let mut t = 0;
        for &(n, r, c) in &layout {
            m.insert(n, t);
            t += r * c;
        }
        m
    };
    let total: usize = layout.iter().map(|&(_, r, c)| r * c).sum();
    let mut rows: Vec<Matrix> = Vec::new();
    let mut add_constraint = |terms: Vec<(i64, Matrix, Matrix)>, height: usize, width: usize| {
        // Σ left·f_n·right = 0 vectorized
        if height * width == 0 {
            return;
        }
        let mut row = Matrix::zero(height * width, total);
        for (n, left, right) in terms {
            let block = right.transpose().kronecker(&left);
            let off = offsets[&n];
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = row.at(i, off + j) + block.at(i, j);
                    row.set(i, off + j, v);
                }
            }
        }
        rows.push(row);
    };
    for n in lo..=hi {
        if with_diff {
            // d_Y f_n − (−1)^degree? maps of dg modules commute strictly
            add_constraint(
                vec![
                    (n, y.diff_matrix(n + degree), Matrix::identity(x.dim(n))),
                    (n + 1, Matrix::identity(y.dim(n + degree + 1)).neg(), x.diff_matrix(n)),
                ],
                y.dim(n + degree + 1),
                x.dim(n),
            );
        }
        for p in x.algebra.lo..=x.algebra.hi {
            for j in 0..x.algebra.dim(p) {
                add_constraint(
                    vec![
                        (n + p, Matrix::identity(y.dim(n + p + degree)), x.basis_action(n, p, j)),
                        (n, y.basis_action(n + degree, p, j).neg(), Matrix::identity(x.dim(n))),
                    ],
                    y.dim(n + p + degree),
                    x.dim(n),
                );
            }
        }
    }
    let constraints = if rows.is_empty() {
        Matrix::zero(0, total)
    } else {
        let mut acc = rows[0].clone();
        for r in &rows[1..] {
            acc = acc.vstack(r);
        }
        acc
    };
    (constraints, layout)
}

/// dim Hom_{C_dg}(X, Y): degree-0 A-linear chain maps.
pub fn dg_hom_dimension(x: &DGModule, y: &DGModule) -> usize {
    let (c, layout) = dg_map_space(x, y, 0, true);
    let total: usize = layout.iter().map(|&(_, r, cc)| r * cc).sum();
    total - diagonalize(&c, Ring::Q).rank
}

/// dim Hom_{K_dg}(X, Y): chain maps modulo A-linear null-homotopies.
pub fn dg_hom_k_dimension(x: &DGModule, y: &DGModule) -> usize {
    let (c, layout) = dg_map_space(x, y, 0, true);
    let cycles = crate::snf::kernel(&c, Ring::Q);
    let (cr, rlayout) = dg_map_space(x, y, -1, false);
    let rhos = crate::snf::kernel(&cr, Ring::Q);
    // boundary of each homotopy basis vector, in the chain-map layout
    let offsets = |layout: &Vec<(i64, usize, usize)>| -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        let mut t = 0;
        for &(n, r, cc) in layout {
            m.insert(n, t);
            t += r * cc;
        }
        m
    };
    let f_off = offsets(&layout);
    let r_off = offsets(&rlayout);
    let f_total: usize = layout.iter().map(|&(_, r, cc)| r * cc).sum();
    let mut boundaries = Matrix::zero(f_total, rhos.cols());
    for col in 0..rhos.cols() {
        // unpack ρ
        let mut rho: BTreeMap<i64, Matrix> = BTreeMap::new();
        for &(n, r, cc) in &rlayout {
            let mut v = Matrix::zero(r * cc, 1);
            for i in 0..r * cc {
                v.set(i, 0, rhos.at(r_off[&n] + i, col).clone());
            }
            rho.insert(n, Matrix::unvectorize(&v, r, cc));
        }
        let rho_at = |n: i64| {
            rho.get(&n).cloned().unwrap_or_else(|| Matrix::zero(y.dim(n - 1), x.dim(n)))
        };
        for &(n, r, cc) in &layout {
            if r * cc == 0 {
                continue;
            }
            let phi = y.diff_matrix(n - 1).mul(&rho_at(n)).add(&rho_at(n + 1).mul(&x.diff_matrix(n)));
            let v = phi.vectorize();
            for i in 0..r * cc {
                boundaries.set(f_off[&n] + i, col, v.at(i, 0).clone());
            }
        }
    }
    cycles.cols() - diagonalize(&boundaries, Ring::Q).rank
}

/// Lemma 6.4 in the one-object case: Hom_{K_dg}(A^∧, X) ≅ H⁰(X), the
/// isomorphism realized by evaluation at the unit.
pub struct YonedaReport {
    pub hom_k_dimension: usize,
    pub h0_dimension: usize,
    pub evaluation_is_isomorphism: bool,
}

impl YonedaReport {
    pub fn holds(&self) -> bool {
        self.hom_k_dimension == self.h0_dimension && self.evaluation_is_isomorphism
    }
}

pub fn yoneda_h0(a: &DGAlgebra, x: &DGModule) -> YonedaReport {
    assert!(x.algebra == *a, "module is not over the given algebra");
    let free = free_module(a);
    let under = x.underlying_complex();
    let h0 = cohomology(&under, 0);
    let h0_dim = h0.group.canonical().free_rank;
    let (c, layout) = dg_map_space(&free, x, 0, true);
    let cycles = crate::snf::kernel(&c, Ring::Q);
    let hom_k_dim = dg_hom_k_dimension(&free, x);
    // evaluation at the unit: f ↦ [f⁰(1)] ∈ H⁰(X)
    let offsets = {
        let mut m = BTreeMap::new();
        let mut t = 0;
        for &(n, r, cc) in &layout {
            m.insert(n, t);
            t += r * cc;
        }
        m
    };
    let mut classes = Matrix::zero(h0.group.generators(), cycles.cols());
    let mut all_cocycles = true;
    for col in 0..cycles.cols() {
        let (r, cc) = (x.dim(0), free.dim(0));
        let mut v = Matrix::zero(r * cc, 1);
        for i in 0..r * cc {
            v.set(i, 0, cycles.at(offsets[&0] + i, col).clone());
        }
        let f0 = Matrix::unvectorize(&v, r, cc);
        let value = f0.mul(&a.unit);
        match h0.class_of(&value) {
            Some(cl) => {
                for i in 0..cl.rows() {
                    classes.set(i, col, cl.at(i, 0).clone());
                }
            }
            None => all_cocycles = false,
        }
    }
    // spans H⁰ iff classes together with the presentation's relations
    // span the whole generator space
    let surjective = diagonalize(&classes.hstack(&h0.group.relations()), Ring::Q).rank
        == h0.group.generators();
    YonedaReport {
        hom_k_dimension: hom_k_dim,
        h0_dimension: h0_dim,
        evaluation_is_isomorphism: all_cocycles && surjective && hom_k_dim == h0_dim,
    }
}

/// The §6.3 adjoint of χ: X → DY, as a map Y → DX over the opposite
/// algebra: components (−1)ⁿ(χ⁻ⁿ)ᵀ.
pub fn adjoint_map(x: &DGModule, y: &DGModule, chi: &DGMap) -> DGMap {
    let dy = dg_dual(y);
    let comps: BTreeMap<i64, Matrix> = (y.lo..=y.hi)
        .map(|n| {
            let c = chi.component(x, &dy, -n).transpose();
            (n, if n % 2 == 0 { c } else { c.neg() })
        })
        .collect();
    DGMap { comps }
}
