//! Bounded cochain complexes, chain maps, homotopies, cohomology, shift,
//! truncation, null-homotopy solving, quasi-isomorphism tests, and the
//! Hom-complex.

use crate::fpmodule::{hom_module, FPModule, HomModule, ModuleMap, Subquotient};
use crate::linsys::LinSys;
use crate::matrix::{scalar_int, Matrix, Ring};
use crate::snf;

/// A bounded cochain complex: components in the window [lo, hi] and
/// differentials dⁿ: Xⁿ → Xⁿ⁺¹ with d∘d = 0 (validated at construction).
/// Everything outside the window is the zero module.
#[derive(Debug, Clone)]
pub struct Complex {
    ring: Ring,
    lo: i64,
    components: Vec<FPModule>,
    /// diffs[i] is the action matrix of d at degree lo+i; length is
    /// components.len()-1 (empty when the window has at most one degree).
    diffs: Vec<Matrix>,
}

impl Complex {
    pub fn new(ring: Ring, lo: i64, components: Vec<FPModule>, diffs: Vec<Matrix>) -> Self {
        if components.is_empty() {
            assert!(diffs.is_empty());
            return Complex { ring, lo: 0, components, diffs };
        }
        assert_eq!(diffs.len() + 1, components.len(), "need one differential per adjacent pair");
        for c in &components {
            assert_eq!(c.ring(), ring);
        }
        let cx = Complex { ring, lo, components, diffs };
        for i in 0..cx.diffs.len() {
            let n = lo + i as i64;
            // validates shape and that relations are respected
            let d = cx.diff(n);
            if i + 1 < cx.diffs.len() {
                let dd = cx.diff(n + 1).compose_after(&d);
                assert!(dd.is_zero_map(), "d∘d != 0 at degree {}", n);
            }
        }
        cx
    }

    pub fn zero_complex(ring: Ring) -> Self {
        Complex::new(ring, 0, vec![], vec![])
    }

    /// A single module concentrated in one degree.
    pub fn concentrated(m: FPModule, degree: i64) -> Self {
        Complex::new(m.ring(), degree, vec![m], vec![])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn is_empty_window(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, n: i64) -> FPModule {
        if self.components.is_empty() || n < self.lo || n > self.hi() {
            FPModule::zero(self.ring)
        } else {
            self.components[(n - self.lo) as usize].clone()
        }
    }

    pub fn gens(&self, n: i64) -> usize {
        if self.components.is_empty() || n < self.lo || n > self.hi() {
            0
        } else {
            self.components[(n - self.lo) as usize].generators()
        }
    }

    /// The differential at degree n as a ModuleMap (zero outside the window).
    pub fn diff(&self, n: i64) -> ModuleMap {
        let src = self.component(n);
        let tgt = self.component(n + 1);
        let action = self.diff_action(n);
        ModuleMap::new(src, tgt, action)
    }

    pub fn diff_action(&self, n: i64) -> Matrix {
        if !self.components.is_empty() && n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zero(self.gens(n + 1), self.gens(n))
        }
    }

    /// Same window, components (as presentations) and differentials.
    pub fn same_presentation(&self, other: &Complex) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        a.ring == b.ring
            && a.lo == b.lo
            && a.components == b.components
            && a.diffs == b.diffs
    }

    /// Drop zero-generator components at the window ends.
    pub fn trimmed(&self) -> Complex {
        let mut start = 0;
        let mut end = self.components.len();
        while start < end && self.components[start].generators() == 0 {
            start += 1;
        }
        while end > start && self.components[end - 1].generators() == 0 {
            end -= 1;
        }
        if start == end {
            return Complex::zero_complex(self.ring);
        }
        Complex {
            ring: self.ring,
            lo: self.lo + start as i64,
            components: self.components[start..end].to_vec(),
            diffs: self.diffs[start..end - 1].to_vec(),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        assert_eq!(self.ring, other.ring);
        if self.is_empty_window() {
            return other.clone();
        }
        if other.is_empty_window() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let components: Vec<FPModule> =
            (lo..=hi).map(|n| self.component(n).direct_sum(&other.component(n))).collect();
        let diffs: Vec<Matrix> = (lo..hi)
            .map(|n| Matrix::block_diag(&[&self.diff_action(n), &other.diff_action(n)]))
            .collect();
        Complex::new(self.ring, lo, components, diffs)
    }

    /// Total number of generators across the window.
    pub fn total_gens(&self) -> usize {
        self.components.iter().map(|c| c.generators()).sum()
    }
}

/// Shift: (Σᵏ X)ⁿ = Xⁿ⁺ᵏ with differential (−1)ᵏ·d.
pub fn shift(x: &Complex, k: i64) -> Complex {
    if x.is_empty_window() {
        return x.clone();
    }
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let components: Vec<FPModule> = (0..x.components.len()).map(|i| x.components[i].clone()).collect();
    let diffs: Vec<Matrix> = x
        .diffs
        .iter()
        .map(|d| if sign == 1 { d.clone() } else { d.neg() })
        .collect();
    Complex::new(x.ring, x.lo - k, components, diffs)
}

/// A degreewise map of complexes with commuting squares (validated).
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    /// action matrices aligned to the source window
    comps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, comps: Vec<Matrix>) -> Self {
        assert_eq!(source.ring, target.ring);
        assert_eq!(comps.len(), source.components.len(), "one component per source degree");
        let cm = ChainMap { source, target, comps };
        for n in cm.source.lo..=cm.source.hi().max(cm.source.lo) {
            if cm.source.is_empty_window() {
                break;
            }
            // validates shapes and relation-respect
            let f = cm.component(n);
            // square: d_Y ∘ φⁿ = φⁿ⁺¹ ∘ d_X modulo relations of Yⁿ⁺¹
            let lhs = cm.target.diff(n).compose_after(&f);
            let rhs_action = cm.component_action(n + 1).mul(&cm.source.diff_action(n));
            let rhs = ModuleMap::new(cm.source.component(n), cm.target.component(n + 1), rhs_action);
            assert!(lhs.eq_map(&rhs), "chain map square fails at degree {}", n);
        }
        cm
    }

    /// Build from a function giving the action at each degree of the
    /// source window.
    pub fn from_fn(source: Complex, target: Complex, f: impl Fn(i64) -> Matrix) -> Self {
        let comps: Vec<Matrix> = if source.is_empty_window() {
            vec![]
        } else {
            (source.lo..=source.hi()).map(f).collect()
        };
        ChainMap::new(source, target, comps)
    }

    pub fn identity(x: &Complex) -> Self {
        ChainMap::from_fn(x.clone(), x.clone(), |n| Matrix::identity(x.gens(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap::from_fn(source.clone(), target.clone(), |n| {
            Matrix::zero(target.gens(n), source.gens(n))
        })
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn component_action(&self, n: i64) -> Matrix {
        if !self.source.is_empty_window() && n >= self.source.lo && n <= self.source.hi() {
            self.comps[(n - self.source.lo) as usize].clone()
        } else {
            Matrix::zero(self.target.gens(n), self.source.gens(n))
        }
    }

    pub fn component(&self, n: i64) -> ModuleMap {
        ModuleMap::new(self.source.component(n), self.target.component(n), self.component_action(n))
    }

    /// g ∘ f where self = g.
    pub fn compose_after(&self, f: &ChainMap) -> ChainMap {
        assert!(self.source.same_presentation(&f.target), "composition mismatch");
        ChainMap::from_fn(f.source.clone(), self.target.clone(), |n| {
            self.component_action(n).mul(&f.component_action(n))
        })
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert!(self.source.same_presentation(&other.source));
        assert!(self.target.same_presentation(&other.target));
        ChainMap::from_fn(self.source.clone(), self.target.clone(), |n| {
            self.component_action(n).add(&other.component_action(n))
        })
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::from_fn(self.source.clone(), self.target.clone(), |n| {
            self.component_action(n).neg()
        })
    }

    /// Σᵏ φ: componentwise, no sign.
    pub fn shift_map(&self, k: i64) -> ChainMap {
        let src = shift(&self.source, k);
        let tgt = shift(&self.target, k);
        ChainMap::from_fn(src, tgt, |n| self.component_action(n + k))
    }

    /// Degreewise equality modulo target relations (equality in C(A)).
    pub fn eq_strict(&self, other: &ChainMap) -> bool {
        let lo = self.source.lo.min(other.source.lo);
        let hi = self.source.hi().max(other.source.hi());
        (lo..=hi).all(|n| self.component(n).eq_map(&other.component(n)))
    }

    pub fn is_zero_map(&self) -> bool {
        (self.source.lo..=self.source.hi()).all(|n| self.component(n).is_zero_map())
            || self.source.is_empty_window()
    }
}

/// A homotopy between two parallel chain maps: ρⁿ: Xⁿ → Yⁿ⁻¹ with
/// (from − to)ⁿ = dⁿ⁻¹ρⁿ + ρⁿ⁺¹dⁿ (validated).
#[derive(Debug, Clone)]
pub struct Homotopy {
    from: ChainMap,
    to: ChainMap,
    /// ρ at degree n, keyed by n − lo where lo = source.lo
    comps: Vec<Matrix>,
    lo: i64,
}

impl Homotopy {
    pub fn new(from: ChainMap, to: ChainMap, lo: i64, comps: Vec<Matrix>) -> Self {
        assert!(from.source.same_presentation(&to.source));
        assert!(from.target.same_presentation(&to.target));
        let h = Homotopy { from, to, comps, lo };
        let x = &h.from.source;
        let y = &h.from.target;
        let n_lo = x.lo.min(y.lo) - 1;
        let n_hi = x.hi().max(y.hi()) + 1;
        for n in n_lo..=n_hi {
            // each ρⁿ must itself be a module map Xⁿ → Yⁿ⁻¹
            let carried = h.component_action(n).mul(x.component(n).relations());
            assert!(
                snf::lattice_contains(&y.component(n - 1).relations(), &carried, x.ring),
                "homotopy component at degree {} does not respect relations",
                n
            );
            let want = h.from.component_action(n).sub(&h.to.component_action(n));
            let got = y
                .diff_action(n - 1)
                .mul(&h.component_action(n))
                .add(&h.component_action(n + 1).mul(&x.diff_action(n)));
            let diff = want.sub(&got);
            assert!(
                snf::lattice_contains(&y.component(n).relations(), &diff, x.ring),
                "homotopy identity fails at degree {}",
                n
            );
        }
        h
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to
    }

    /// ρⁿ: Xⁿ → Yⁿ⁻¹ (zero outside the stored range).
    pub fn component_action(&self, n: i64) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            Matrix::zero(self.from.target.gens(n - 1), self.from.source.gens(n))
        }
    }

    pub fn zero(from: ChainMap, to: ChainMap) -> Self {
        Homotopy::new(from, to, 0, vec![])
    }
}

/// HⁿX together with lifts of its generators to cocycles and the class
/// map from cocycles back to coordinates.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub degree: i64,
    pub group: FPModule,
    sub: Subquotient,
}

impl CohomologyResult {
    /// Ambient cocycle representatives of the group generators.
    pub fn cocycle_lift(&self) -> Matrix {
        self.sub.gens().clone()
    }

    /// Coordinates of a cocycle (None if the element is not a cocycle).
    pub fn class_of(&self, v: &Matrix) -> Option<Matrix> {
        self.sub.express(v)
    }

    pub fn sub(&self) -> &Subquotient {
        &self.sub
    }
}

/// Ker dⁿ / Im dⁿ⁻¹ with explicit lifts.
pub fn cohomology(x: &Complex, n: i64) -> CohomologyResult {
    let ring = x.ring();
    // cocycles: v with dⁿv ≡ 0 modulo relations of Xⁿ⁺¹
    let cocycles = snf::preimage_gens(
        &x.diff_action(n),
        x.component(n + 1).relations(),
        ring,
    );
    // trivial: image of dⁿ⁻¹ plus relations of Xⁿ
    let trivial = x.diff_action(n - 1).hstack(x.component(n).relations());
    let sub = Subquotient::new(ring, cocycles, trivial);
    CohomologyResult { degree: n, group: sub.module().clone(), sub }
}

/// The induced map Hⁿφ, as a ModuleMap between the two cohomology groups.
pub fn induced_map(phi: &ChainMap, hx: &CohomologyResult, hy: &CohomologyResult) -> ModuleMap {
    assert_eq!(hx.degree, hy.degree);
    let n = hx.degree;
    let images = phi.component_action(n).mul(&hx.cocycle_lift());
    let coords = hy.class_of(&images).expect("chain maps carry cocycles to cocycles");
    ModuleMap::new(hx.group.clone(), hy.group.clone(), coords)
}

/// A null-homotopy of φ, or a proven None (the stacked linear system over
/// the ring is infeasible).
pub fn null_homotopy_witness(phi: &ChainMap) -> Option<Homotopy> {
    let x = phi.source();
    let y = phi.target();
    let ring = phi.ring();
    let lo = x.lo.min(y.lo);
    let hi = x.hi().max(y.hi()) + 1;
    if x.is_empty_window() || y.is_empty_window() {
        return Some(Homotopy::zero(phi.clone(), ChainMap::zero(x, y)));
    }
    let mut sys = LinSys::new(ring);
    let vars: Vec<_> = (lo..=hi).map(|n| sys.var(y.gens(n - 1), x.gens(n))).collect();
    for n in lo..=hi {
        // ρⁿ must be a module map Xⁿ → Yⁿ⁻¹
        let rel_x = x.component(n).relations().clone();
        if rel_x.cols() > 0 && y.gens(n - 1) > 0 {
            sys.eq_mod(
                vec![(Matrix::identity(y.gens(n - 1)), vars[(n - lo) as usize], rel_x.clone())],
                Matrix::zero(y.gens(n - 1), rel_x.cols()),
                y.component(n - 1).relations(),
            );
        }
        let rows = y.gens(n);
        let cols = x.gens(n);
        if rows == 0 && cols == 0 {
            continue;
        }
        let mut terms = vec![(
            y.diff_action(n - 1),
            vars[(n - lo) as usize],
            Matrix::identity(cols),
        )];
        if n + 1 <= hi {
            terms.push((Matrix::identity(rows), vars[(n + 1 - lo) as usize], x.diff_action(n)));
        }
        sys.eq_mod(terms, phi.component_action(n), y.component(n).relations());
    }
    let sol = sys.solve()?;
    Some(Homotopy::new(
        phi.clone(),
        ChainMap::zero(x, y),
        lo,
        sol,
    ))
}

/// Are φ and ψ equal in the homotopy category?
pub fn homotopic(phi: &ChainMap, psi: &ChainMap) -> Option<Homotopy> {
    let h = null_homotopy_witness(&phi.sub(psi))?;
    Some(Homotopy::new(phi.clone(), psi.clone(), h.lo, h.comps))
}

/// Per-degree picture of a quasi-isomorphism test.
#[derive(Debug, Clone)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    /// (degree, kernel canonical is zero, cokernel canonical is zero)
    pub per_degree: Vec<(i64, bool, bool)>,
}

pub fn quasi_iso_report(phi: &ChainMap) -> QuasiIsoReport {
    let x = phi.source();
    let y = phi.target();
    let lo = x.lo.min(y.lo) - 1;
    let hi = x.hi().max(y.hi()) + 1;
    let mut per_degree = Vec::new();
    let mut ok = true;
    for n in lo..=hi {
        let hx = cohomology(x, n);
        let hy = cohomology(y, n);
        let h = induced_map(phi, &hx, &hy);
        let kic = crate::fpmodule::kernel_image_cokernel(&h);
        let kz = kic.kernel.module().is_zero_module();
        let cz = kic.cokernel.is_zero_module();
        ok &= kz && cz;
        per_degree.push((n, kz, cz));
    }
    QuasiIsoReport { is_quasi_iso: ok, per_degree }
}

pub fn is_quasi_iso(phi: &ChainMap) -> bool {
    quasi_iso_report(phi).is_quasi_iso
}

/// τ≥n truncation (components zero below n) with its inclusion into X.
pub fn truncate(x: &Complex, n: i64) -> (Complex, ChainMap) {
    if x.is_empty_window() || n <= x.lo {
        let t = x.clone();
        let inc = ChainMap::identity(&t);
        return (t, inc);
    }
    if n > x.hi() {
        let t = Complex::zero_complex(x.ring());
        return (t.clone(), ChainMap::zero(&t, x));
    }
    let components: Vec<FPModule> = (n..=x.hi()).map(|m| x.component(m)).collect();
    let diffs: Vec<Matrix> = (n..x.hi()).map(|m| x.diff_action(m)).collect();
    let t = Complex::new(x.ring(), n, components, diffs);
    let inc = ChainMap::from_fn(t.clone(), x.clone(), |m| Matrix::identity(x.gens(m)));
    (t, inc)
}

/// Hom-complex bookkeeping: at each degree n the component is the direct
/// sum over p of Hom(Xᵖ, Yᵖ⁺ⁿ); this records the summands so degree-n
/// elements decode to graded maps and chain maps encode to elements.
#[derive(Debug, Clone)]
pub struct HomComplexData {
    pub x: Complex,
    pub y: Complex,
    pub complex: Complex,
    lo: i64,
    degrees: Vec<DegreeData>,
}

#[derive(Debug, Clone)]
struct DegreeData {
    /// source degrees p with both Xᵖ and Yᵖ⁺ⁿ possibly nonzero
    ps: Vec<i64>,
    homs: Vec<HomModule>,
    offsets: Vec<usize>,
}

impl HomComplexData {
    fn degree_data(&self, n: i64) -> Option<&DegreeData> {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.degrees.len() {
            Some(&self.degrees[i as usize])
        } else {
            None
        }
    }

    /// Decode an element of the degree-n component into per-degree actions
    /// Xᵖ → Yᵖ⁺ⁿ (components not listed are zero).
    pub fn decode(&self, n: i64, coords: &Matrix) -> Vec<(i64, Matrix)> {
        let Some(dd) = self.degree_data(n) else {
            assert!(coords.rows() == 0);
            return vec![];
        };
        let mut out = Vec::new();
        for (k, &p) in dd.ps.iter().enumerate() {
            let g = dd.homs[k].module().generators();
            let rows: Vec<usize> = (dd.offsets[k]..dd.offsets[k] + g).collect();
            let cols: Vec<usize> = (0..coords.cols()).collect();
            let slice = coords.submatrix(&rows, &cols);
            out.push((p, dd.homs[k].eval(&slice).action().clone()));
        }
        out
    }

    /// Encode per-degree actions as an element of the degree-n component.
    pub fn encode(&self, n: i64, comps: &dyn Fn(i64) -> Matrix) -> Matrix {
        let Some(dd) = self.degree_data(n) else {
            return Matrix::zero(0, 1);
        };
        let total: usize = dd.homs.iter().map(|h| h.module().generators()).sum();
        let mut out = Matrix::zero(total, 1);
        for (k, &p) in dd.ps.iter().enumerate() {
            let action = comps(p);
            let map = ModuleMap::new(self.x.component(p), self.y.component(p + n), action);
            let c = dd.homs[k].express(&map);
            for i in 0..c.rows() {
                out.set(dd.offsets[k] + i, 0, c.at(i, 0).clone());
            }
        }
        out
    }

    /// Interpret a degree-n cocycle as a chain map X → ΣⁿY.
    pub fn cocycle_as_chain_map(&self, n: i64, coords: &Matrix) -> ChainMap {
        let sy = shift(&self.y, n);
        let parts = self.decode(n, coords);
        ChainMap::from_fn(self.x.clone(), sy, |p| {
            parts
                .iter()
                .find(|(q, _)| *q == p)
                .map(|(_, a)| a.clone())
                .unwrap_or_else(|| Matrix::zero(self.y.gens(p + n), self.x.gens(p)))
        })
    }

    /// Encode a chain map X → ΣⁿY as a degree-n element.
    pub fn encode_chain_map(&self, n: i64, phi: &ChainMap) -> Matrix {
        self.encode(n, &|p| phi.component_action(p))
    }
}

/// The complex Hom(X, Y) with differential d(φ) = d_Y∘φ − (−1)ⁿ φ∘d_X.
pub fn hom_complex(x: &Complex, y: &Complex) -> HomComplexData {
    assert_eq!(x.ring(), y.ring());
    let ring = x.ring();
    if x.is_empty_window() || y.is_empty_window() {
        let c = Complex::zero_complex(ring);
        return HomComplexData { x: x.clone(), y: y.clone(), complex: c, lo: 0, degrees: vec![] };
    }
    let lo = y.lo - x.hi();
    let hi = y.hi() - x.lo;
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let mut ps = Vec::new();
        let mut homs = Vec::new();
        let mut offsets = Vec::new();
        let mut off = 0;
        for p in x.lo..=x.hi() {
            let q = p + n;
            if q < y.lo || q > y.hi() {
                continue;
            }
            let h = hom_module(&x.component(p), &y.component(q));
            ps.push(p);
            offsets.push(off);
            off += h.module().generators();
            homs.push(h);
        }
        degrees.push(DegreeData { ps, homs, offsets });
    }
    // components as direct sums
    let components: Vec<FPModule> = degrees
        .iter()
        .map(|dd| {
            dd.homs
                .iter()
                .fold(FPModule::zero(ring), |acc, h| acc.direct_sum(h.module()))
        })
        .collect();
    // differential blocks
    let mut diffs = Vec::new();
    for (i, n) in (lo..hi).enumerate() {
        let src = &degrees[i];
        let tgt = &degrees[i + 1];
        let rows: usize = tgt.homs.iter().map(|h| h.module().generators()).sum();
        let cols: usize = src.homs.iter().map(|h| h.module().generators()).sum();
        let sign = if n.rem_euclid(2) == 0 { scalar_int(1) } else { scalar_int(-1) };
        let mut d = Matrix::zero(rows, cols);
        for (k, &p) in src.ps.iter().enumerate() {
            for bi in 0..src.homs[k].module().generators() {
                let phi = src.homs[k].basis_map(bi);
                // target summand p: d_Y^{p+n} ∘ φ
                if let Some(tk) = tgt.ps.iter().position(|&q| q == p) {
                    let img = y.diff(p + n).compose_after(&phi);
                    let c = tgt.homs[tk].express(&img);
                    for r in 0..c.rows() {
                        let v = d.at(tgt.offsets[tk] + r, src.offsets[k] + bi) + c.at(r, 0);
                        d.set(tgt.offsets[tk] + r, src.offsets[k] + bi, v);
                    }
                }
                // target summand p−1: −(−1)ⁿ φ ∘ d_X^{p−1}
                if let Some(tk) = tgt.ps.iter().position(|&q| q == p - 1) {
                    let img = phi.compose_after(&x.diff(p - 1));
                    let img = ModuleMap::new(
                        img.source().clone(),
                        img.target().clone(),
                        img.action().scale(&(-sign.clone())),
                    );
                    let c = tgt.homs[tk].express(&img);
                    for r in 0..c.rows() {
                        let v = d.at(tgt.offsets[tk] + r, src.offsets[k] + bi) + c.at(r, 0);
                        d.set(tgt.offsets[tk] + r, src.offsets[k] + bi, v);
                    }
                }
            }
        }
        diffs.push(d);
    }
    let complex = Complex::new(ring, lo, components, diffs);
    HomComplexData { x: x.clone(), y: y.clone(), complex, lo, degrees }
}
