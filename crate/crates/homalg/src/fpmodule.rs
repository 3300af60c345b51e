//! Finitely presented modules over Z or Q and maps between them.
//!
//! A module is the cokernel of its relation matrix (columns are relations
//! on the generators). The canonical form — free rank plus invariant
//! factors > 1 — is computed once at construction and is a complete
//! isomorphism invariant. Over Q the canonical form degenerates to a
//! dimension.
//!
//! Maps are matrices on generators; validity means relations map into the
//! target relation lattice, and equality is decided modulo that lattice,
//! never by raw matrix comparison.

use crate::matrix::{Matrix, Ring, Scalar};
use crate::snf;
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Isomorphism-invariant form: rank of the free part plus the invariant
/// factor chain d1 | d2 | ... with di > 1 (empty over Q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl Canonical {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn describe(&self, ring: Ring) -> String {
        let mut parts = Vec::new();
        match ring {
            Ring::Q => {
                return if self.free_rank == 0 {
                    "0".to_string()
                } else {
                    format!("Q^{}", self.free_rank)
                };
            }
            Ring::Z => {
                if self.free_rank > 0 {
                    parts.push(if self.free_rank == 1 {
                        "Z".to_string()
                    } else {
                        format!("Z^{}", self.free_rank)
                    });
                }
                for d in &self.invariant_factors {
                    parts.push(format!("Z/{}", d));
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct FPModule {
    ring: Ring,
    generators: usize,
    /// generators x k; columns are relations.
    relations: Matrix,
    canonical: Canonical,
}

impl PartialEq for FPModule {
    /// Presentation equality (same generators and relation matrix) — used
    /// for plumbing checks like "same complex component", not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.generators == other.generators
            && self.relations == other.relations
    }
}

impl FPModule {
    pub fn new(ring: Ring, generators: usize, relations: Matrix) -> Self {
        assert_eq!(relations.rows(), generators, "relation matrix height != generator count");
        if ring == Ring::Z {
            assert!(relations.is_integral(), "non-integer relations over Z");
        }
        let canonical = canonical_of(ring, generators, &relations);
        FPModule { ring, generators, relations, canonical }
    }

    pub fn zero(ring: Ring) -> Self {
        FPModule::new(ring, 0, Matrix::zero(0, 0))
    }

    pub fn free(ring: Ring, n: usize) -> Self {
        FPModule::new(ring, n, Matrix::zero(n, 0))
    }

    /// Z/d (or 0 when d = 1); panics over Q unless d = 1.
    pub fn cyclic(ring: Ring, d: i64) -> Self {
        FPModule::new(ring, 1, Matrix::from_int_rows(&[&[d]]))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn canonical(&self) -> &Canonical {
        &self.canonical
    }

    pub fn is_zero_module(&self) -> bool {
        self.canonical.is_zero()
    }

    /// Generator-free presentations of the same module compare equal here.
    pub fn isomorphic(&self, other: &FPModule) -> bool {
        self.ring == other.ring && self.canonical == other.canonical
    }

    /// Is the component free (no torsion)? Over Q always true.
    pub fn is_free_presentation(&self) -> bool {
        self.relations.cols() == 0
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        assert_eq!(self.ring, other.ring);
        FPModule::new(
            self.ring,
            self.generators + other.generators,
            Matrix::block_diag(&[&self.relations, &other.relations]),
        )
    }

    /// Does the element (generator coordinates) represent zero?
    pub fn element_is_zero(&self, v: &Matrix) -> bool {
        assert_eq!(v.rows(), self.generators, "element length mismatch");
        assert_eq!(v.cols(), 1);
        snf::lattice_contains(&self.relations, v, self.ring)
    }
}

fn canonical_of(ring: Ring, generators: usize, relations: &Matrix) -> Canonical {
    let dg = snf::diagonalize(relations, ring);
    match ring {
        Ring::Q => Canonical { free_rank: generators - dg.rank, invariant_factors: vec![] },
        Ring::Z => {
            let mut invariant_factors = Vec::new();
            for i in 0..dg.rank {
                let d = dg.d.at(i, i).numer().abs();
                if d > BigInt::one() {
                    invariant_factors.push(d);
                }
            }
            Canonical { free_rank: generators - dg.rank, invariant_factors }
        }
    }
}

/// A subquotient of a free ambient module Z^ambient (or Q^ambient): the
/// lattice spanned by `gens` modulo the lattice spanned by `trivial`. Used
/// for everything of the shape "cycles modulo boundaries".
///
/// Requires trivial ⊆ lattice(gens); constructors in this crate satisfy it
/// because `gens` is always a saturated solution lattice containing the
/// trivial vectors.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ring: Ring,
    ambient: usize,
    gens: Matrix,
    trivial: Matrix,
    module: FPModule,
}

impl Subquotient {
    pub fn new(ring: Ring, gens: Matrix, trivial: Matrix) -> Self {
        assert_eq!(gens.rows(), trivial.rows(), "ambient mismatch");
        let ambient = gens.rows();
        // relations: coordinate vectors w with gens*w in the trivial lattice
        let rels = snf::preimage_gens(&gens, &trivial, ring);
        let module = FPModule::new(ring, gens.cols(), rels);
        Subquotient { ring, ambient, gens, trivial, module }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn gens(&self) -> &Matrix {
        &self.gens
    }

    /// Ambient representatives of the module generators (one per column).
    pub fn lift(&self, coords: &Matrix) -> Matrix {
        self.gens.mul(coords)
    }

    /// Coordinates of an ambient element, or None if it is not in the
    /// generated lattice. Columns are treated independently.
    pub fn express(&self, v: &Matrix) -> Option<Matrix> {
        assert_eq!(v.rows(), self.ambient, "ambient length mismatch");
        if self.gens.cols() == 0 {
            // only the zero class exists
            let stacked = self.trivial.clone();
            for j in 0..v.cols() {
                if !snf::lattice_contains(&stacked, &v.column(j), self.ring) {
                    return None;
                }
            }
            return Some(Matrix::zero(0, v.cols()));
        }
        let sol = snf::solve(&self.gens.hstack(&self.trivial), v, self.ring)?;
        let rows: Vec<usize> = (0..self.gens.cols()).collect();
        let cols: Vec<usize> = (0..sol.cols()).collect();
        Some(sol.submatrix(&rows, &cols))
    }

    /// Is the ambient element in the trivial lattice (the zero class)?
    pub fn is_trivial(&self, v: &Matrix) -> bool {
        snf::lattice_contains(&self.trivial, v, self.ring)
    }
}

/// A map of finitely presented modules, carried by its action on
/// generators. Construction verifies the lifting certificate: every source
/// relation lands in the target relation lattice.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: FPModule,
    target: FPModule,
    action: Matrix,
}

impl ModuleMap {
    pub fn new(source: FPModule, target: FPModule, action: Matrix) -> Self {
        assert_eq!(source.ring, target.ring, "ring mismatch");
        assert_eq!(action.rows(), target.generators, "action height != target generators");
        assert_eq!(action.cols(), source.generators, "action width != source generators");
        if source.ring == Ring::Z {
            assert!(action.is_integral(), "non-integer action over Z");
        }
        let image_of_rels = action.mul(&source.relations);
        assert!(
            snf::lattice_contains(&target.relations, &image_of_rels, source.ring),
            "map does not respect relations"
        );
        ModuleMap { source, target, action }
    }

    pub fn zero(source: FPModule, target: FPModule) -> Self {
        let action = Matrix::zero(target.generators, source.generators);
        ModuleMap::new(source, target, action)
    }

    pub fn identity(m: &FPModule) -> Self {
        ModuleMap::new(m.clone(), m.clone(), Matrix::identity(m.generators))
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    /// g after f: (g.compose_after(f))(x) = g(f(x)).
    pub fn compose_after(&self, f: &ModuleMap) -> ModuleMap {
        assert!(self.source == f.target, "composition mismatch");
        ModuleMap::new(f.source.clone(), self.target.clone(), self.action.mul(&f.action))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert!(self.source == other.source && self.target == other.target);
        ModuleMap::new(self.source.clone(), self.target.clone(), self.action.add(&other.action))
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap::new(self.source.clone(), self.target.clone(), self.action.neg())
    }

    /// Equality modulo target relations.
    pub fn eq_map(&self, other: &ModuleMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && snf::lattice_contains(
                &self.target.relations,
                &self.action.sub(&other.action),
                self.ring(),
            )
    }

    pub fn is_zero_map(&self) -> bool {
        snf::lattice_contains(&self.target.relations, &self.action, self.ring())
    }

    pub fn apply(&self, v: &Matrix) -> Matrix {
        self.action.mul(v)
    }

    pub fn is_isomorphism(&self) -> bool {
        let kic = kernel_image_cokernel(self);
        kic.kernel.module().is_zero_module() && kic.cokernel.is_zero_module()
    }
}

/// Kernel (as a subquotient of the source with its inclusion), image (as a
/// quotient of the source with its inclusion into the target), and
/// cokernel (with the projection from the target).
#[derive(Debug, Clone)]
pub struct KernelImageCokernel {
    pub kernel: Subquotient,
    pub kernel_inclusion: ModuleMap,
    pub image: FPModule,
    pub image_inclusion: ModuleMap,
    pub image_projection: ModuleMap,
    pub cokernel: FPModule,
    pub cokernel_projection: ModuleMap,
}

pub fn kernel_image_cokernel(f: &ModuleMap) -> KernelImageCokernel {
    let ring = f.ring();
    let m = f.source();
    let n = f.target();
    // x in Z^{gens(M)} with f(x) = 0 in N, i.e. action*x in rel(N)
    let pre = snf::preimage_gens(&f.action, &n.relations, ring);
    // kernel = pre / rel(M); rel(M) is contained in the solution lattice
    let kernel = Subquotient::new(ring, pre.clone(), m.relations.clone());
    let kernel_inclusion =
        ModuleMap::new(kernel.module().clone(), m.clone(), kernel.gens().clone());
    // image = M / kernel-lattice, included into N by the action
    let image = FPModule::new(ring, m.generators, pre);
    let image_inclusion = ModuleMap::new(image.clone(), n.clone(), f.action.clone());
    let image_projection = ModuleMap::new(m.clone(), image.clone(), Matrix::identity(m.generators));
    // cokernel = N / (im f + rel N)
    let cokernel = FPModule::new(ring, n.generators, f.action.hstack(&n.relations));
    let cokernel_projection =
        ModuleMap::new(n.clone(), cokernel.clone(), Matrix::identity(n.generators));
    KernelImageCokernel {
        kernel,
        kernel_inclusion,
        image,
        image_inclusion,
        image_projection,
        cokernel,
        cokernel_projection,
    }
}

/// Hom(M, N) as a finitely presented module with concrete basis maps.
#[derive(Debug, Clone)]
pub struct HomModule {
    source: FPModule,
    target: FPModule,
    /// subquotient of the vectorized map space Z^{gens(N)*gens(M)}
    sub: Subquotient,
}

impl HomModule {
    pub fn module(&self) -> &FPModule {
        self.sub.module()
    }

    pub fn sub(&self) -> &Subquotient {
        &self.sub
    }

    /// The map realizing generator/coordinate column `coords`.
    pub fn eval(&self, coords: &Matrix) -> ModuleMap {
        let v = self.sub.lift(coords);
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            Matrix::unvectorize(&v, self.target.generators, self.source.generators),
        )
    }

    pub fn basis_map(&self, i: usize) -> ModuleMap {
        let mut e = Matrix::zero(self.sub.module().generators(), 1);
        e.set(i, 0, Scalar::one());
        self.eval(&e)
    }

    pub fn basis_maps(&self) -> Vec<ModuleMap> {
        (0..self.sub.module().generators()).map(|i| self.basis_map(i)).collect()
    }

    /// Coordinates of a concrete map (always succeeds for valid maps).
    pub fn express(&self, f: &ModuleMap) -> Matrix {
        assert!(f.source == self.source && f.target == self.target, "wrong hom-space");
        self.sub.express(&f.action.vectorize()).expect("valid map must lie in the hom lattice")
    }
}

/// Hom(M, N): matrices Φ with Φ·rel(M) in the column lattice of rel(N),
/// modulo maps of the form rel(N)·Ψ, all via vectorization.
pub fn hom_module(m: &FPModule, n: &FPModule) -> HomModule {
    assert_eq!(m.ring, n.ring, "ring mismatch");
    let ring = m.ring;
    let (gm, gn) = (m.generators, n.generators);
    // vec(Φ·R_M) = (R_M^T ⊗ I_gn)·vecΦ must lie in vec(R_N·Λ) = (I_km ⊗ R_N)·vecΛ
    let constraint = m.relations.transpose().kronecker(&Matrix::identity(gn));
    let lattice = Matrix::identity(m.relations.cols()).kronecker(&n.relations);
    let gens = snf::preimage_gens(&constraint, &lattice, ring);
    // trivial maps: Φ = R_N·Ψ, vecΦ = (I_gm ⊗ R_N)·vecΨ
    let trivial = Matrix::identity(gm).kronecker(&n.relations);
    let sub = Subquotient::new(ring, gens, trivial);
    HomModule { source: m.clone(), target: n.clone(), sub }
}

/// M ⊗ N with generator (i, j) at index i + j*gens(M).
pub fn tensor_module(m: &FPModule, n: &FPModule) -> FPModule {
    assert_eq!(m.ring, n.ring, "ring mismatch");
    let rel_from_m = Matrix::identity(n.generators).kronecker(&m.relations);
    let rel_from_n = n.relations.kronecker(&Matrix::identity(m.generators));
    FPModule::new(m.ring, m.generators * n.generators, rel_from_m.hstack(&rel_from_n))
}

/// The map f ⊗ g on tensor products.
pub fn tensor_map(f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
    let src = tensor_module(f.source(), g.source());
    let tgt = tensor_module(f.target(), g.target());
    ModuleMap::new(src, tgt, g.action.kronecker(&f.action))
}

/// Solve f(x) = y modulo target relations; None is a proven infeasibility.
pub fn solve_linear(f: &ModuleMap, y: &Matrix) -> Option<Matrix> {
    assert_eq!(y.rows(), f.target.generators, "coordinate length mismatch");
    let sol = snf::solve(&f.action.hstack(&f.target.relations), y, f.ring())?;
    let rows: Vec<usize> = (0..f.source.generators).collect();
    let cols: Vec<usize> = (0..y.cols()).collect();
    Some(sol.submatrix(&rows, &cols))
}
