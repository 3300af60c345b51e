use std::collections::BTreeMap;

use homalg::complex::{cohomology, Complex};
use homalg::dg::{
    adjoint_map, biduality, check_dg_algebra, check_dg_map, check_dg_module, dg_dual,
    dg_hom_dimension, end_complex_as_dga, free_module, opposite_algebra, yoneda_h0, DGAlgebra,
    DGMap, DGModule, DgViolation,
};
use homalg::fpmodule::FPModule;
use homalg::homotopycat::hom_k;
use homalg::matrix::{Matrix, Ring};

/// Exterior algebra on one generator x in degree −1; optionally d(x) = 1.
fn exterior(dx_is_unit: bool) -> DGAlgebra {
    let mut dims = BTreeMap::new();
    dims.insert(-1, 1);
    dims.insert(0, 1);
    let mut mult = BTreeMap::new();
    mult.insert((0, 0), Matrix::identity(1));
    mult.insert((0, -1), Matrix::identity(1));
    mult.insert((-1, 0), Matrix::identity(1));
    // x² = 0 lands in degree −2 which is empty; omitted
    let mut diff = BTreeMap::new();
    if dx_is_unit {
        diff.insert(-1, Matrix::identity(1));
    }
    DGAlgebra {
        lo: -1,
        hi: 0,
        dims,
        unit: Matrix::identity(1),
        mult,
        diff,
        objects: None,
    }
}

#[test]
fn exterior_algebra_is_valid() {
    assert!(check_dg_algebra(&exterior(false)).is_valid());
    // d(x) = 1 gives the contractible dg algebra; Leibniz on (x,x): 0 = x − x
    assert!(check_dg_algebra(&exterior(true)).is_valid());
}

#[test]
fn mutations_are_located() {
    // break associativity/unit: e·x ↦ 2x
    let mut a = exterior(false);
    a.mult.insert((0, -1), Matrix::from_int_rows(&[&[2]]));
    let rep = check_dg_algebra(&a);
    assert!(!rep.is_valid());
    assert!(rep
        .violations
        .iter()
        .any(|v| matches!(v, DgViolation::UnitLeft { degree: -1, index: 0 })));

    // break Leibniz: keep d(x)=1 but also set x·x... instead scale d
    let mut b = exterior(true);
    b.mult.insert((-1, 0), Matrix::from_int_rows(&[&[3]]));
    let rep = check_dg_algebra(&b);
    assert!(!rep.is_valid());
    assert!(rep
        .violations
        .iter()
        .any(|v| matches!(v, DgViolation::UnitRight { degree: -1, index: 0 })));
}

#[test]
fn opposite_preserves_validity() {
    for flag in [false, true] {
        let a = exterior(flag);
        assert!(check_dg_algebra(&opposite_algebra(&a)).is_valid());
    }
}

#[test]
fn end_algebra_of_point() {
    let x = Complex::concentrated(FPModule::free(Ring::Q, 1), 0);
    let a = end_complex_as_dga(&x);
    assert_eq!(a.dim(0), 1);
    assert!((a.lo..=a.hi).filter(|&n| n != 0).all(|n| a.dim(n) == 0));
    assert!(check_dg_algebra(&a).is_valid());
}

#[test]
fn end_algebra_of_contractible_interval() {
    // X = (Q —id→ Q) is contractible, so End(X) is acyclic: the identity
    // chain map is a coboundary (it is null-homotopic), and every Hⁿ = 0.
    let x = Complex::new(
        Ring::Q,
        0,
        vec![FPModule::free(Ring::Q, 1), FPModule::free(Ring::Q, 1)],
        vec![Matrix::identity(1)],
    );
    let a = end_complex_as_dga(&x);
    assert_eq!(a.dim(0), 2);
    assert!(check_dg_algebra(&a).is_valid());
    let under = free_module(&a).underlying_complex();
    for n in -1i64..=1 {
        assert_eq!(cohomology(&under, n).group.canonical().free_rank, 0);
    }
    // consistency with the homotopy category side
    let hk = hom_k(&x, &x);
    assert_eq!(hk.group().canonical().describe(Ring::Q), "0");
}

#[test]
fn end_algebra_bridge_to_hom_k() {
    // Hⁿ(End X) ≅ homK(X, ΣⁿX)
    let x = Complex::new(
        Ring::Q,
        0,
        vec![FPModule::free(Ring::Q, 2), FPModule::free(Ring::Q, 1)],
        vec![Matrix::from_int_rows(&[&[1, 0]])],
    );
    let a = end_complex_as_dga(&x);
    assert!(check_dg_algebra(&a).is_valid());
    let under = free_module(&a).underlying_complex();
    for n in -1..=1 {
        let lhs = cohomology(&under, n).group.canonical().free_rank;
        let rhs = hom_k(&x, &homalg::complex::shift(&x, n)).group().canonical().free_rank;
        assert_eq!(lhs, rhs, "bridge fails in degree {}", n);
    }
}

#[test]
fn free_module_is_valid_and_dual_roundtrips() {
    for flag in [false, true] {
        let a = exterior(flag);
        let m = free_module(&a);
        assert!(check_dg_module(&m).is_valid());
        let d = dg_dual(&m);
        assert!(check_dg_module(&d).is_valid());
        let (_ddx, ok) = biduality(&m);
        assert!(ok, "biduality fails for dx_is_unit={}", flag);
    }
}

#[test]
fn dual_of_rank_one_point() {
    // the one-dimensional algebra; free module is Q in degree 0
    let x = Complex::concentrated(FPModule::free(Ring::Q, 1), 0);
    let a = end_complex_as_dga(&x);
    let m = free_module(&a);
    let d = dg_dual(&m);
    assert_eq!(d.dim(0), 1);
    assert_eq!((d.lo, d.hi), (0, 0));
}

#[test]
fn adjunction_dimension_equality() {
    let a = exterior(false);
    let x = free_module(&a);
    let y = free_module(&opposite_algebra(&a));
    let lhs = dg_hom_dimension(&x, &dg_dual(&y));
    let rhs = dg_hom_dimension(&y, &dg_dual(&x));
    assert_eq!(lhs, rhs);
    // and the adjoint of an actual map is a dg map
    let dy = dg_dual(&y);
    let mut comps = BTreeMap::new();
    comps.insert(0i64, Matrix::identity(1));
    comps.insert(1i64, Matrix::identity(x.dim(1).min(dy.dim(1))));
    let chi = DGMap { comps };
    if check_dg_map(&chi, &x, &dy) {
        let adj = adjoint_map(&x, &y, &chi);
        assert!(check_dg_map(&adj, &y, &dg_dual(&x)));
    }
}

#[test]
fn yoneda_h0_on_free_and_simple_modules() {
    // d = 0: H⁰(A) = Q
    let a = exterior(false);
    let rep = yoneda_h0(&a, &free_module(&a));
    assert_eq!(rep.h0_dimension, 1);
    assert!(rep.holds());
    // contractible algebra: H⁰ = 0
    let a = exterior(true);
    let rep = yoneda_h0(&a, &free_module(&a));
    assert_eq!(rep.h0_dimension, 0);
    assert!(rep.holds());
    // the simple module Q in degree 0 with x acting by zero
    let a = exterior(false);
    let mut dims = BTreeMap::new();
    dims.insert(0i64, 1usize);
    let mut action = BTreeMap::new();
    action.insert((0i64, 0i64), Matrix::identity(1));
    let simple = DGModule {
        algebra: a.clone(),
        lo: 0,
        hi: 0,
        dims,
        diff: BTreeMap::new(),
        action,
    };
    assert!(check_dg_module(&simple).is_valid());
    let rep = yoneda_h0(&a, &simple);
    assert_eq!(rep.h0_dimension, 1);
    assert!(rep.holds());
}

