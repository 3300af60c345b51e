//! The derived category: projective resolutions, roofs, derived Hom,
//! Ext/Tor, decomposition into stalk complexes, and the triangle of a
//! short exact sequence.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use crate::complex::{
    cohomology, hom_complex, homotopic, is_quasi_iso, null_homotopy_witness, shift, ChainMap,
    Complex, Homotopy,
};
use crate::fpmodule::{kernel_image_cokernel, tensor_map, tensor_module, FPModule, ModuleMap};
use crate::homotopycat::{hom_k, HomKGroup};
use crate::linsys::LinSys;
use crate::matrix::{Matrix, Scalar};
use crate::snf::{diagonalize, inverse, lattice_basis, solve};
use crate::triangle::{cone, homotopy_pushout, Triangle};

/// A complex of free modules with a certified quasi-isomorphism onto X.
#[derive(Debug, Clone)]
pub struct ProjectiveResolution {
    pub complex: Complex,
    /// π: P → X
    pub map: ChainMap,
}

/// Replace X by a quasi-isomorphic bounded complex of free modules.
///
/// Pⁿ = Fⁿ ⊕ Kⁿ⁺¹ where Fⁿ is free on the generators of Xⁿ and Kⁿ⁺¹ is
/// free on a basis of the relation lattice of Xⁿ⁺¹; the kernel of the
/// generator projection is contractible.
pub fn proj_resolve(x: &Complex) -> ProjectiveResolution {
    let ring = x.ring();
    if x.is_empty_window() {
        let p = Complex::zero_complex(ring);
        let map = ChainMap::zero(&p, x);
        return ProjectiveResolution { complex: p, map };
    }
    let lo = x.lo();
    let hi = x.hi();
    // basis of the relation lattice per degree
    let rel_basis = |m: i64| -> Matrix {
        if m < lo || m > hi {
            Matrix::zero(x.gens(m), 0)
        } else {
            lattice_basis(x.component(m).relations(), ring)
        }
    };
    let b: BTreeMap<i64, Matrix> = (lo..=hi + 1).map(|m| (m, rel_basis(m))).collect();
    // d restricted to relation lattices: Dᵐ·Bₘ = Bₘ₊₁·DKᵐ
    let dk = |m: i64| -> Matrix {
        solve(&b[&(m + 1)], &x.diff_action(m).mul(&b[&m]), ring)
            .expect("differential preserves relation lattices")
    };
    let plo = if b[&lo].cols() > 0 { lo - 1 } else { lo };
    let mut comps = Vec::new();
    let mut diffs = Vec::new();
    let gens_p = |n: i64| -> usize {
        let k = if n + 1 >= lo && n + 1 <= hi { b[&(n + 1)].cols() } else { 0 };
        x.gens(n) + k
    };
    for n in plo..=hi {
        comps.push(FPModule::free(ring, gens_p(n)));
        if n < hi {
            let d = x.diff_action(n);
            let bn1 = &b[&(n + 1)];
            let bn2 = b[&(n + 2)].clone();
            // d² lands in the relation lattice two degrees up
            let c = solve(&bn2, &x.diff_action(n + 1).mul(&d), ring)
                .expect("d∘d lies in the relation lattice")
                .neg();
            let dk1 = if n + 1 <= hi && bn1.cols() > 0 {
                dk(n + 1)
            } else {
                Matrix::zero(bn2.cols(), bn1.cols())
            };
            let top = d.hstack(bn1);
            let bot = c.hstack(&dk1.neg());
            diffs.push(top.vstack(&bot));
        }
    }
    let p = Complex::new(ring, plo, comps, diffs);
    let map = ChainMap::from_fn(p.clone(), x.clone(), |n| {
        let g = x.gens(n);
        Matrix::identity(g).hstack(&Matrix::zero(g, gens_p(n) - g))
    });
    assert!(is_quasi_iso(&map), "resolution projection must be a quasi-isomorphism");
    ProjectiveResolution { complex: p, map }
}

/// A right fraction X → M ← Y with the wrong-way leg a quasi-isomorphism.
#[derive(Debug, Clone)]
pub struct Roof {
    pub alpha: ChainMap,
    pub sigma: ChainMap,
}

impl Roof {
    pub fn new(alpha: ChainMap, sigma: ChainMap) -> Self {
        assert!(
            alpha.target().same_presentation(sigma.target()),
            "roof legs must share their apex"
        );
        assert!(is_quasi_iso(&sigma), "denominator must be a quasi-isomorphism");
        Roof { alpha, sigma }
    }

    pub fn from_map(f: &ChainMap) -> Self {
        Roof::new(f.clone(), ChainMap::identity(f.target()))
    }

    pub fn source(&self) -> &Complex {
        self.alpha.source()
    }

    pub fn dest(&self) -> &Complex {
        self.sigma.source()
    }
}

/// Composite of X → M₁ ← Y and Y → M₂ ← Z through the homotopy pushout
/// of M₁ ← Y → M₂.
pub fn compose_roofs(r1: &Roof, r2: &Roof) -> Roof {
    assert!(r1.dest().same_presentation(r2.source()), "roofs not composable");
    let sq = homotopy_pushout(&r1.sigma, &r2.alpha);
    let alpha = sq.leg_p.compose_after(&r1.alpha);
    let sigma = sq.leg_pp.compose_after(&r2.sigma);
    Roof::new(alpha, sigma)
}

/// Roof for the span X ←π— P —ψ→ Y (π a quasi-isomorphism).
pub fn lift_to_roof(pi: &ChainMap, psi: &ChainMap) -> Roof {
    let sq = homotopy_pushout(psi, pi);
    Roof::new(sq.leg_pp, sq.leg_p)
}

/// The normal form of a roof: a genuine chain map out of the free
/// resolution of the source, in the same class after inverting σ.
#[derive(Debug)]
pub struct NormalForm {
    pub resolution: ProjectiveResolution,
    /// ψ: P → Y with σ∘ψ ≃ α∘π
    pub psi: ChainMap,
    pub group: HomKGroup,
    pub class: Matrix,
    pub witness: Homotopy,
}

pub fn normal_form(r: &Roof) -> NormalForm {
    let res = proj_resolve(r.source());
    normal_form_with(res, r)
}

fn normal_form_with(res: ProjectiveResolution, r: &Roof) -> NormalForm {
    let ring = r.alpha.ring();
    let p = &res.complex;
    let y = r.dest();
    let m = r.sigma.target();
    let plo = p.lo();
    let phi = p.hi();
    let mut sys = LinSys::new(ring);
    let psi_vars: Vec<_> = (plo..=phi).map(|n| sys.var(y.gens(n), p.gens(n))).collect();
    let rho_vars: Vec<_> = (plo..=phi + 1).map(|n| sys.var(m.gens(n - 1), p.gens(n))).collect();
    let pv = |n: i64| psi_vars[(n - plo) as usize];
    let rv = |n: i64| rho_vars[(n - plo) as usize];
    for n in plo..=phi {
        // chain map: d_Y ψⁿ − ψⁿ⁺¹ d_P = 0 mod relations of Yⁿ⁺¹
        let mut terms = vec![(y.diff_action(n), pv(n), Matrix::identity(p.gens(n)))];
        if n < phi {
            terms.push((Matrix::identity(y.gens(n + 1)).neg(), pv(n + 1), p.diff_action(n)));
        }
        sys.eq_mod(
            terms,
            Matrix::zero(y.gens(n + 1), p.gens(n)),
            y.component(n + 1).relations(),
        );
        // homotopy: σψ − d_M ρⁿ − ρⁿ⁺¹ d_P = απ mod relations of Mⁿ
        let terms = vec![
            (r.sigma.component_action(n), pv(n), Matrix::identity(p.gens(n))),
            (m.diff_action(n - 1).neg(), rv(n), Matrix::identity(p.gens(n))),
            (Matrix::identity(m.gens(n)).neg(), rv(n + 1), p.diff_action(n)),
        ];
        let rhs = r.alpha.component_action(n).mul(&res.map.component_action(n));
        sys.eq_mod(terms, rhs, m.component(n).relations());
    }
    let sol = sys.solve().expect("roof normal form always exists over a free source");
    let psi = ChainMap::from_fn(p.clone(), y.clone(), |n| {
        if (plo..=phi).contains(&n) {
            sol[(n - plo) as usize].clone()
        } else {
            Matrix::zero(y.gens(n), p.gens(n))
        }
    });
    let witness = homotopic(
        &r.sigma.compose_after(&psi),
        &r.alpha.compose_after(&res.map),
    )
    .expect("solved homotopy must certify");
    let group = hom_k(p, y);
    let class = group.class_of(&psi);
    NormalForm { resolution: res, psi, group, class, witness }
}

/// Equality of roofs as morphisms of the derived category.
pub fn roof_eq(r1: &Roof, r2: &Roof) -> bool {
    assert!(r1.source().same_presentation(r2.source()), "source mismatch");
    assert!(r1.dest().same_presentation(r2.dest()), "target mismatch");
    let n1 = normal_form(r1);
    let n2 = normal_form(r2);
    let diff = n1.class.sub(&n2.class);
    n1.group.group().element_is_zero(&diff)
}

/// hom_D(X, Y), presented via homK(P, Y) for the resolution P of X.
#[derive(Debug)]
pub struct DerivedHomGroup {
    pub x: Complex,
    pub y: Complex,
    pub resolution: ProjectiveResolution,
    pub hk: HomKGroup,
}

pub fn hom_d(x: &Complex, y: &Complex) -> DerivedHomGroup {
    let resolution = proj_resolve(x);
    let hk = hom_k(&resolution.complex, y);
    DerivedHomGroup { x: x.clone(), y: y.clone(), resolution, hk }
}

impl DerivedHomGroup {
    pub fn group(&self) -> &FPModule {
        self.hk.group()
    }

    pub fn class_of_roof(&self, r: &Roof) -> Matrix {
        assert!(r.source().same_presentation(&self.x) && r.dest().same_presentation(&self.y));
        normal_form_with(self.resolution.clone(), r).class
    }

    pub fn class_of_map(&self, f: &ChainMap) -> Matrix {
        self.hk.class_of(&f.compose_after(&self.resolution.map))
    }

    /// A roof realizing a coordinate vector.
    pub fn roof_for(&self, coords: &Matrix) -> Roof {
        let psi = self.hk.eval(coords);
        lift_to_roof(&self.resolution.map, &psi)
    }
}

/// Extⁿ(M, N), with a cross-check against hom_D(M, ΣⁿN).
pub fn ext(m: &FPModule, n: &FPModule, deg: i64) -> FPModule {
    assert_eq!(m.ring(), n.ring());
    if deg < 0 {
        return FPModule::zero(m.ring());
    }
    let a = Complex::concentrated(m.clone(), 0);
    let b = Complex::concentrated(n.clone(), 0);
    let res = proj_resolve(&a);
    let hc = hom_complex(&res.complex, &b);
    let e = cohomology(&hc.complex, deg).group;
    let alt = hom_d(&a, &shift(&b, deg));
    assert_eq!(
        e.canonical(),
        alt.group().canonical(),
        "Ext via the hom-complex and via derived Hom must agree"
    );
    e
}

/// Torₙ(M, N) = H⁻ⁿ(P ⊗ N).
pub fn tor(m: &FPModule, n: &FPModule, deg: i64) -> FPModule {
    assert_eq!(m.ring(), n.ring());
    if deg < 0 {
        return FPModule::zero(m.ring());
    }
    let a = Complex::concentrated(m.clone(), 0);
    let res = proj_resolve(&a);
    let p = &res.complex;
    let idn = ModuleMap::identity(n);
    let comps: Vec<FPModule> =
        (p.lo()..=p.hi()).map(|k| tensor_module(&p.component(k), n)).collect();
    let diffs: Vec<Matrix> = (p.lo()..p.hi())
        .map(|k| tensor_map(&p.diff(k), &idn).action().clone())
        .collect();
    let tp = Complex::new(p.ring(), p.lo(), comps, diffs);
    cohomology(&tp, -deg).group
}

/// Is φ zero as a morphism of D? If so, return the null-homotopy of its
/// composite with the resolution projection.
#[derive(Debug)]
pub struct DerivedZeroCertificate {
    pub is_zero: bool,
    pub resolution: ProjectiveResolution,
    /// φ∘π: P → Y
    pub composite: ChainMap,
    pub witness: Option<Homotopy>,
}

pub fn is_zero_in_d(phi: &ChainMap) -> DerivedZeroCertificate {
    let resolution = proj_resolve(phi.source());
    let composite = phi.compose_after(&resolution.map);
    let hk = hom_k(&resolution.complex, phi.target());
    let is_zero = hk.class_is_zero(&composite);
    let witness = if is_zero {
        Some(null_homotopy_witness(&composite).expect("zero class must be null-homotopic"))
    } else {
        None
    };
    DerivedZeroCertificate { is_zero, resolution, composite, witness }
}

/// X decomposed as a direct sum of stalk complexes, with the roof
/// realizing the isomorphism in D.
#[derive(Debug)]
pub struct HereditaryDecomposition {
    pub h: Complex,
    /// the summands: (degree, module) with zero differentials
    pub summands: Vec<(i64, FPModule)>,
    /// X → H, both legs quasi-isomorphisms
    pub roof: Roof,
    pub resolution: ProjectiveResolution,
}

pub fn hereditary_decompose(x: &Complex) -> HereditaryDecomposition {
    let ring = x.ring();
    let res = proj_resolve(x);
    let p = &res.complex;
    if p.is_empty_window() {
        let h = Complex::zero_complex(ring);
        let roof = Roof::new(ChainMap::zero(x, &h), ChainMap::identity(&h));
        return HereditaryDecomposition { h, summands: vec![], roof, resolution: res };
    }
    let plo = p.lo();
    let phi = p.hi();
    let mut d: BTreeMap<i64, Matrix> = (plo..phi).map(|n| (n, p.diff_action(n))).collect();
    let mut basis: BTreeMap<i64, Matrix> =
        (plo..=phi).map(|n| (n, Matrix::identity(p.gens(n)))).collect();
    let mut source_paired: BTreeMap<i64, BTreeSet<usize>> = BTreeMap::new();
    // (target index in Pⁿ⁺¹, source index in Pⁿ, elementary divisor)
    let mut pairs: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for n in (plo..phi).rev() {
        let g_src = p.gens(n);
        let g_tgt = p.gens(n + 1);
        let blocked = source_paired.get(&(n + 1)).cloned().unwrap_or_default();
        let active: Vec<usize> = (0..g_tgt).filter(|i| !blocked.contains(i)).collect();
        let all_cols: Vec<usize> = (0..g_src).collect();
        let sub = d[&n].submatrix(&active, &all_cols);
        let dg = diagonalize(&sub, ring);
        let u_inv = inverse(&dg.u, ring);
        // expand the row transform by the identity on blocked indices
        let expand = |m: &Matrix| -> Matrix {
            let mut e = Matrix::identity(g_tgt);
            for (bi, &i) in active.iter().enumerate() {
                for (bj, &j) in active.iter().enumerate() {
                    e.set(i, j, m.at(bi, bj).clone());
                }
            }
            e
        };
        let u_exp = expand(&dg.u);
        let u_exp_inv = expand(&u_inv);
        let v_inv = inverse(&dg.v, ring);
        let nd = u_exp.mul(&d[&n]).mul(&dg.v);
        d.insert(n, nd);
        if n + 1 < phi {
            let upd = d[&(n + 1)].mul(&u_exp_inv);
            d.insert(n + 1, upd);
        }
        if n - 1 >= plo {
            let dwn = v_inv.mul(&d[&(n - 1)]);
            d.insert(n - 1, dwn);
        }
        let b_up = basis[&(n + 1)].mul(&u_exp_inv);
        basis.insert(n + 1, b_up);
        let b_here = basis[&n].mul(&dg.v);
        basis.insert(n, b_here);
        let mut pr = Vec::new();
        for k in 0..dg.rank {
            pr.push((active[k], k, dg.d.at(k, k).clone()));
        }
        pairs.insert(n, pr);
        source_paired.insert(n, (0..dg.rank).collect());
    }
    // rebuild the decomposed complex and the change-of-basis map back to P
    let comps: Vec<FPModule> = (plo..=phi).map(|n| FPModule::free(ring, p.gens(n))).collect();
    let diffs: Vec<Matrix> = (plo..phi).map(|n| d[&n].clone()).collect();
    let p2 = Complex::new(ring, plo, comps, diffs);
    let t = ChainMap::from_fn(p2.clone(), p.clone(), |n| {
        if (plo..=phi).contains(&n) {
            basis[&n].clone()
        } else {
            Matrix::zero(0, 0)
        }
    });
    // assemble the stalks: unpaired indices are free, a pair with
    // elementary divisor d contributes Z/d at the target degree
    let mut h_comps = Vec::new();
    let mut proj_comps = Vec::new();
    let mut summands = Vec::new();
    for n in plo..=phi {
        let g = p.gens(n);
        let src: BTreeSet<usize> = source_paired.get(&n).cloned().unwrap_or_default();
        let tgt: BTreeMap<usize, Scalar> = pairs
            .get(&(n - 1))
            .map(|pr| pr.iter().map(|(i, _, dv)| (*i, dv.clone())).collect())
            .unwrap_or_default();
        let mut kept = Vec::new(); // (index, torsion divisor or None)
        for i in 0..g {
            if src.contains(&i) {
                continue;
            }
            match tgt.get(&i) {
                Some(dv) => {
                    if !dv.abs().is_one() {
                        kept.push((i, Some(dv.abs())));
                    }
                }
                None => kept.push((i, None)),
            }
        }
        let torsion: Vec<&Scalar> = kept.iter().filter_map(|(_, t)| t.as_ref()).collect();
        let mut rel = Matrix::zero(kept.len(), torsion.len());
        let mut tj = 0;
        for (row, (_, t)) in kept.iter().enumerate() {
            if let Some(dv) = t {
                rel.set(row, tj, dv.clone());
                tj += 1;
            }
        }
        let module = FPModule::new(ring, kept.len(), rel);
        if !module.is_zero_module() {
            summands.push((n, module.clone()));
        }
        let mut proj = Matrix::zero(kept.len(), g);
        for (row, (i, _)) in kept.iter().enumerate() {
            proj.set(row, *i, Scalar::one());
        }
        h_comps.push(module);
        proj_comps.push(proj);
    }
    let h = Complex::new(
        ring,
        plo,
        h_comps.clone(),
        (0..h_comps.len().saturating_sub(1))
            .map(|k| Matrix::zero(h_comps[k + 1].generators(), h_comps[k].generators()))
            .collect(),
    )
    .trimmed();
    let pprime = ChainMap::from_fn(p2.clone(), h.clone(), |n| {
        if (plo..=phi).contains(&n) {
            let m = &proj_comps[(n - plo) as usize];
            if h.gens(n) == m.rows() {
                m.clone()
            } else {
                Matrix::zero(h.gens(n), p2.gens(n))
            }
        } else {
            Matrix::zero(h.gens(n), p2.gens(n))
        }
    });
    assert!(is_quasi_iso(&pprime), "stalk projection must be a quasi-isomorphism");
    let pi2 = res.map.compose_after(&t);
    let roof = lift_to_roof(&pi2, &pprime);
    assert!(is_quasi_iso(&roof.alpha), "decomposition roof must be invertible");
    HereditaryDecomposition { h, summands, roof, resolution: res }
}

/// The distinguished triangle A → B → C → ΣA of a short exact sequence,
/// with its class in Ext¹(C, A).
#[derive(Debug)]
pub struct SesTriangle {
    pub alpha: ChainMap,
    pub beta: ChainMap,
    pub gamma: Roof,
    /// the strict triangle A → B → cone(α) → ΣA it comes from
    pub cone_triangle: Triangle,
    /// the comparison cone(α) → C inverted by γ
    pub comparison: ChainMap,
    pub ext_group: FPModule,
    pub gamma_class: Matrix,
}

impl SesTriangle {
    pub fn is_split(&self) -> bool {
        self.ext_group.element_is_zero(&self.gamma_class)
    }
}

pub fn triangle_from_ses(f: &ModuleMap, g: &ModuleMap) -> SesTriangle {
    assert!(f.target() == g.source(), "maps not composable");
    assert!(g.compose_after(f).is_zero_map(), "composite must vanish");
    let kf = kernel_image_cokernel(f);
    assert!(kf.kernel.module().is_zero_module(), "first map must be injective");
    let kg = kernel_image_cokernel(g);
    assert!(kg.cokernel.is_zero_module(), "second map must be surjective");
    let a0 = Complex::concentrated(f.source().clone(), 0);
    let b0 = Complex::concentrated(f.target().clone(), 0);
    let c0 = Complex::concentrated(g.target().clone(), 0);
    let alpha = ChainMap::from_fn(a0.clone(), b0.clone(), |n| {
        if n == 0 { f.action().clone() } else { Matrix::zero(0, 0) }
    });
    let beta = ChainMap::from_fn(b0.clone(), c0.clone(), |n| {
        if n == 0 { g.action().clone() } else { Matrix::zero(0, 0) }
    });
    let cn = cone(&alpha);
    let q = ChainMap::from_fn(cn.complex.clone(), c0.clone(), |n| {
        if n == 0 {
            g.action().clone()
        } else {
            Matrix::zero(c0.gens(n), cn.complex.gens(n))
        }
    });
    assert!(is_quasi_iso(&q), "middle-to-cokernel comparison fails: sequence not exact");
    let gamma = lift_to_roof(&q, &cn.pi);
    // the class of γ in Ext¹(C, A), through the hom-complex of the
    // resolution of C
    let nf = normal_form(&gamma);
    let hc = hom_complex(&nf.resolution.complex, &a0);
    let v = hc.encode(1, &|p| nf.psi.component_action(p));
    let coh1 = cohomology(&hc.complex, 1);
    let gamma_class = coh1.class_of(&v).expect("the connecting map is a degree-one cocycle");
    let ext_group = coh1.group.clone();
    let cone_triangle = cn.triangle();
    SesTriangle { alpha, beta, gamma, cone_triangle, comparison: q, ext_group, gamma_class }
}
