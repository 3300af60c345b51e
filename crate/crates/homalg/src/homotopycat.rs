//! Hom-groups of the homotopy category, weak kernels, and coherent
//! functors evaluated on test objects.

use crate::complex::{
    cohomology, hom_complex, homotopic, shift, ChainMap, CohomologyResult, Complex,
    HomComplexData, Homotopy,
};
use crate::fpmodule::{kernel_image_cokernel, FPModule, ModuleMap};
use crate::matrix::Matrix;
use crate::triangle::cone;

/// Hom_K(X, Y) as a finitely presented group with chain-map
/// representatives for its generators.
#[derive(Debug, Clone)]
pub struct HomKGroup {
    pub x: Complex,
    pub y: Complex,
    data: HomComplexData,
    coh: CohomologyResult,
}

pub fn hom_k(x: &Complex, y: &Complex) -> HomKGroup {
    let data = hom_complex(x, y);
    let coh = cohomology(&data.complex, 0);
    HomKGroup { x: x.clone(), y: y.clone(), data, coh }
}

impl HomKGroup {
    pub fn group(&self) -> &FPModule {
        &self.coh.group
    }

    /// One genuine chain map per generator of the group.
    pub fn basis_maps(&self) -> Vec<ChainMap> {
        let lifts = self.coh.cocycle_lift();
        (0..lifts.cols())
            .map(|j| {
                let m = self.data.cocycle_as_chain_map(0, &lifts.column(j));
                // Σ⁰Y has the same presentation as Y
                ChainMap::from_fn(self.x.clone(), self.y.clone(), |n| m.component_action(n))
            })
            .collect()
    }

    /// Coordinates of the homotopy class of φ.
    pub fn class_of(&self, phi: &ChainMap) -> Matrix {
        let v = self.data.encode_chain_map(0, phi);
        self.coh.class_of(&v).expect("chain maps are cocycles of the hom-complex")
    }

    pub fn class_is_zero(&self, phi: &ChainMap) -> bool {
        self.group().element_is_zero(&self.class_of(phi))
    }

    /// The chain map realizing a coordinate vector.
    pub fn eval(&self, coords: &Matrix) -> ChainMap {
        let v = self.coh.sub().lift(coords);
        let m = self.data.cocycle_as_chain_map(0, &v);
        ChainMap::from_fn(self.x.clone(), self.y.clone(), |n| m.component_action(n))
    }
}

/// homK(T, −) applied to g: Y → Z.
pub fn induced_post(g: &ChainMap, src: &HomKGroup, tgt: &HomKGroup) -> ModuleMap {
    assert!(src.x.same_presentation(&tgt.x), "test object mismatch");
    assert!(g.source().same_presentation(&src.y) && g.target().same_presentation(&tgt.y));
    let n = src.group().generators();
    let mut action = Matrix::zero(tgt.group().generators(), n);
    for (j, phi) in src.basis_maps().into_iter().enumerate() {
        let c = tgt.class_of(&g.compose_after(&phi));
        for i in 0..c.rows() {
            action.set(i, j, c.at(i, 0).clone());
        }
    }
    ModuleMap::new(src.group().clone(), tgt.group().clone(), action)
}

/// homK(−, Y) applied to g: S → T (contravariant).
pub fn induced_pre(g: &ChainMap, src: &HomKGroup, tgt: &HomKGroup) -> ModuleMap {
    assert!(src.y.same_presentation(&tgt.y));
    assert!(g.source().same_presentation(&tgt.x) && g.target().same_presentation(&src.x));
    let n = src.group().generators();
    let mut action = Matrix::zero(tgt.group().generators(), n);
    for (j, phi) in src.basis_maps().into_iter().enumerate() {
        let c = tgt.class_of(&phi.compose_after(g));
        for i in 0..c.rows() {
            action.set(i, j, c.at(i, 0).clone());
        }
    }
    ModuleMap::new(src.group().clone(), tgt.group().clone(), action)
}

/// Σ⁻¹cone(f) → Y, the weak kernel of f: Y → Z (rotated cone triangle).
pub fn weak_kernel(f: &ChainMap) -> ChainMap {
    let cn = cone(f);
    // (−Σ⁻¹π, f, ι) is exact when (f, ι, π) is
    cn.pi.shift_map(-1).neg()
}

/// Exactness of homK(T, W) → homK(T, Y) → homK(T, Z) for each test T.
pub fn weak_kernel_exact(f: &ChainMap, w: &ChainMap, tests: &[Complex]) -> bool {
    tests.iter().all(|t| {
        let hw = hom_k(t, w.source());
        let hy = hom_k(t, f.source());
        let hz = hom_k(t, f.target());
        let m1 = induced_post(w, &hw, &hy);
        let m2 = induced_post(f, &hy, &hz);
        if !m2.compose_after(&m1).is_zero_map() {
            return false;
        }
        let kic = kernel_image_cokernel(&m2);
        // ker m2 ⊆ im m1
        let gens = kic.kernel.gens();
        let im = m1.action().hstack(m1.target().relations());
        crate::snf::lattice_contains(&im, gens, m1.ring())
    })
}

/// A coherent functor, presented as coker Hom(−,X) → Hom(−,Y).
#[derive(Debug, Clone)]
pub struct CoherentPresentation {
    pub x: Complex,
    pub y: Complex,
    pub f: ChainMap,
}

impl CoherentPresentation {
    pub fn new(f: ChainMap) -> Self {
        CoherentPresentation { x: f.source().clone(), y: f.target().clone(), f }
    }

    /// The representable functor Hom(−, Y).
    pub fn representable(y: &Complex) -> Self {
        let zero = Complex::zero_complex(y.ring());
        CoherentPresentation::new(ChainMap::zero(&zero, y))
    }
}

/// F(T) = coker( homK(T,X) → homK(T,Y) ).
pub fn evaluate_coherent(p: &CoherentPresentation, t: &Complex) -> FPModule {
    let hx = hom_k(t, &p.x);
    let hy = hom_k(t, &p.y);
    let m = induced_post(&p.f, &hx, &hy);
    kernel_image_cokernel(&m).cokernel
}

/// A map of coherent functors, given on the presentation level with a
/// homotopy witnessing that the square commutes in K.
#[derive(Debug, Clone)]
pub struct CoherentMorphism {
    pub source: CoherentPresentation,
    pub target: CoherentPresentation,
    pub on_x: ChainMap,
    pub on_y: ChainMap,
    pub square: Homotopy,
}

impl CoherentMorphism {
    pub fn new(
        source: CoherentPresentation,
        target: CoherentPresentation,
        on_x: ChainMap,
        on_y: ChainMap,
    ) -> Self {
        let square = homotopic(
            &target.f.compose_after(&on_x),
            &on_y.compose_after(&source.f),
        )
        .expect("presentation square must commute in K");
        CoherentMorphism { source, target, on_x, on_y, square }
    }

    pub fn identity(p: &CoherentPresentation) -> Self {
        CoherentMorphism::new(
            p.clone(),
            p.clone(),
            ChainMap::identity(&p.x),
            ChainMap::identity(&p.y),
        )
    }

    /// The induced map F(T) → G(T).
    pub fn evaluate(&self, t: &Complex) -> ModuleMap {
        let hy1 = hom_k(t, &self.source.y);
        let hy2 = hom_k(t, &self.target.y);
        let post = induced_post(&self.on_y, &hy1, &hy2);
        let f1 = evaluate_coherent(&self.source, t);
        let f2 = evaluate_coherent(&self.target, t);
        // cokernel projections are the identity on generators
        ModuleMap::new(f1, f2, post.action().clone())
    }
}

fn sum_inclusions(a: &Complex, b: &Complex) -> (Complex, ChainMap, ChainMap) {
    let s = a.direct_sum(b);
    let i1 = ChainMap::from_fn(a.clone(), s.clone(), |n| {
        Matrix::identity(a.gens(n)).vstack(&Matrix::zero(b.gens(n), a.gens(n)))
    });
    let i2 = ChainMap::from_fn(b.clone(), s.clone(), |n| {
        Matrix::zero(a.gens(n), b.gens(n)).vstack(&Matrix::identity(b.gens(n)))
    });
    (s, i1, i2)
}

fn sum_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    // (f g): A ⊕ B → C
    assert!(f.target().same_presentation(g.target()));
    let (s, _, _) = sum_inclusions(f.source(), g.source());
    ChainMap::from_fn(s, f.target().clone(), |n| {
        f.component_action(n).hstack(&g.component_action(n))
    })
}

/// The kernel of a map of coherent functors, by the two weak-kernel steps
/// Y₀ → X₂ ⊕ Y₁ → Y₂ and X₀ → X₁ ⊕ Y₀ → Y₁.
pub fn coherent_kernel(m: &CoherentMorphism) -> (CoherentPresentation, CoherentMorphism) {
    let f2 = &m.target.f; // X₂ → Y₂
    let ups = &m.on_y; // Y₁ → Y₂
    // step 1: Y₀ = weak kernel of (f₂ −υ): X₂ ⊕ Y₁ → Y₂
    let step1 = sum_map(f2, &ups.neg());
    let w1 = weak_kernel(&step1); // Y₀ → X₂ ⊕ Y₁
    let y0 = w1.source().clone();
    let x2 = &m.target.x;
    let y1 = &m.source.y;
    let q = ChainMap::from_fn(y0.clone(), y1.clone(), |n| {
        // Y₁-component of w1
        let full = w1.component_action(n);
        let rows: Vec<usize> = (x2.gens(n)..x2.gens(n) + y1.gens(n)).collect();
        let cols: Vec<usize> = (0..full.cols()).collect();
        full.submatrix(&rows, &cols)
    });
    // step 2: X₀ = weak kernel of (f₁ −q): X₁ ⊕ Y₀ → Y₁
    let f1 = &m.source.f;
    let step2 = sum_map(f1, &q.neg());
    let w2 = weak_kernel(&step2); // X₀ → X₁ ⊕ Y₀
    let x0 = w2.source().clone();
    let x1 = &m.source.x;
    let to_x1 = ChainMap::from_fn(x0.clone(), x1.clone(), |n| {
        let full = w2.component_action(n);
        let rows: Vec<usize> = (0..x1.gens(n)).collect();
        let cols: Vec<usize> = (0..full.cols()).collect();
        full.submatrix(&rows, &cols)
    });
    let g0 = ChainMap::from_fn(x0.clone(), y0.clone(), |n| {
        let full = w2.component_action(n);
        let rows: Vec<usize> = (x1.gens(n)..x1.gens(n) + y0.gens(n)).collect();
        let cols: Vec<usize> = (0..full.cols()).collect();
        full.submatrix(&rows, &cols)
    });
    let kernel = CoherentPresentation::new(g0);
    let into = CoherentMorphism::new(kernel.clone(), m.source.clone(), to_x1, q);
    (kernel, into)
}

/// A small default pool of test objects over the given ring.
pub fn default_test_pool(ring: crate::matrix::Ring) -> Vec<Complex> {
    use crate::matrix::Ring;
    let mut pool = vec![Complex::concentrated(FPModule::free(ring, 1), 0)];
    if ring == Ring::Z {
        pool.push(Complex::concentrated(FPModule::cyclic(ring, 2), 0));
    }
    pool.push(shift(&pool[0].clone(), 1));
    pool
}
