use homalg::complex::{
    cohomology, hom_complex, is_quasi_iso, null_homotopy_witness, shift, ChainMap, Complex,
};
use homalg::fpmodule::{hom_module, kernel_image_cokernel, tensor_module, FPModule, ModuleMap};
use homalg::matrix::{Matrix, Ring};
use homalg::snf::diagonalize;
use homalg::triangle::{certify_exact, cone, long_exact_sequence, octahedron, rotate};
use num_traits::Signed;

fn zmod(d: i64) -> FPModule {
    FPModule::cyclic(Ring::Z, d)
}

fn two_term(ring: Ring, d: i64) -> Complex {
    // ring —d→ ring in degrees 0,1
    Complex::new(
        ring,
        0,
        vec![FPModule::free(ring, 1), FPModule::free(ring, 1)],
        vec![Matrix::from_int_rows(&[&[d]])],
    )
}

#[test]
fn snf_diag_2_3() {
    let m = Matrix::from_int_rows(&[&[2, 0], &[0, 3]]);
    let dg = diagonalize(&m, Ring::Z);
    assert_eq!(dg.rank, 2);
    assert_eq!(*dg.d.at(0, 0), homalg::matrix::scalar_int(1));
    assert_eq!(*dg.d.at(1, 1), homalg::matrix::scalar_int(6));
    assert_eq!(dg.u.mul(&m).mul(&dg.v), dg.d);
    assert!(dg.u.determinant().numer().abs() == 1.into());
    assert!(dg.v.determinant().numer().abs() == 1.into());
}

#[test]
fn hom_and_tensor_cyclic() {
    let h = hom_module(&zmod(4), &zmod(6));
    assert_eq!(h.module().canonical().describe(Ring::Z), "Z/2");
    let t = tensor_module(&zmod(4), &zmod(6));
    assert_eq!(t.canonical().describe(Ring::Z), "Z/2");
    // Hom(Z, M) ≅ M
    let h2 = hom_module(&FPModule::free(Ring::Z, 1), &zmod(6));
    assert_eq!(h2.module().canonical().describe(Ring::Z), "Z/6");
}

#[test]
fn kic_times_two() {
    let z = FPModule::free(Ring::Z, 1);
    let f = ModuleMap::new(z.clone(), z.clone(), Matrix::from_int_rows(&[&[2]]));
    let kic = kernel_image_cokernel(&f);
    assert!(kic.kernel.module().is_zero_module());
    assert_eq!(kic.cokernel.canonical().describe(Ring::Z), "Z/2");
    assert_eq!(kic.image.canonical().describe(Ring::Z), "Z");
}

#[test]
fn cohomology_two_term() {
    let x = two_term(Ring::Z, 2);
    assert!(cohomology(&x, 0).group.is_zero_module());
    assert_eq!(cohomology(&x, 1).group.canonical().describe(Ring::Z), "Z/2");
}

#[test]
fn nonsplit_acyclic_witness() {
    // Z —2→ Z —π→ Z/2 in degrees 0..2: acyclic but id not null-homotopic
    let x = Complex::new(
        Ring::Z,
        0,
        vec![FPModule::free(Ring::Z, 1), FPModule::free(Ring::Z, 1), zmod(2)],
        vec![Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[1]])],
    );
    for n in -1..=3 {
        assert!(cohomology(&x, n).group.is_zero_module(), "H^{} != 0", n);
    }
    assert!(null_homotopy_witness(&ChainMap::identity(&x)).is_none());
}

#[test]
fn contractible_two_term() {
    let x = two_term(Ring::Z, 1);
    assert!(null_homotopy_witness(&ChainMap::identity(&x)).is_some());
}

#[test]
fn quasi_iso_projection() {
    // degree-1 projection (Z—2→Z) → (Z/2 at 1)
    let x = two_term(Ring::Z, 2);
    let y = Complex::concentrated(zmod(2), 1);
    let phi = ChainMap::new(
        x.clone(),
        y.clone(),
        vec![Matrix::zero(0, 1), Matrix::from_int_rows(&[&[1]])],
    );
    assert!(is_quasi_iso(&phi));
    assert!(null_homotopy_witness(&phi).is_none());
}

#[test]
fn cone_of_times_two() {
    let z = Complex::concentrated(FPModule::free(Ring::Z, 1), 0);
    let f = ChainMap::new(z.clone(), z.clone(), vec![Matrix::from_int_rows(&[&[2]])]);
    let cn = cone(&f);
    assert_eq!(cn.complex.lo(), -1);
    assert_eq!(cohomology(&cn.complex, 0).group.canonical().describe(Ring::Z), "Z/2");
    let cert = certify_exact(&cn.triangle()).expect("cone certifies");
    assert!(cert.theta.eq_strict(&ChainMap::identity(&cn.complex)));
    // rotation re-certifies
    let rot = rotate(&cn.triangle());
    assert!(certify_exact(&rot).is_some());
    // LES
    let les = long_exact_sequence(&cn.triangle(), &cert);
    assert!(les.all_exact);
    assert_eq!(les.delta_identity, Some(true));
}

#[test]
fn hom_complex_bridge_small() {
    // H⁰ homComplex((Z—2→Z), Z at 0) ≅ Z/2
    let x = two_term(Ring::Z, 2);
    let y = Complex::concentrated(FPModule::free(Ring::Z, 1), 0);
    let hc = hom_complex(&x, &y);
    assert_eq!(cohomology(&hc.complex, 0).group.canonical().describe(Ring::Z), "Z/2");
    // homComplex(Z at 0, X) ≅ X cohomologically
    let unit = Complex::concentrated(FPModule::free(Ring::Z, 1), 0);
    let hc2 = hom_complex(&unit, &x);
    for n in -1..=2 {
        assert!(cohomology(&hc2.complex, n)
            .group
            .isomorphic(&cohomology(&x, n).group));
    }
}

#[test]
fn shift_signs() {
    let x = two_term(Ring::Z, 2);
    let s1 = shift(&x, 1);
    assert_eq!(*s1.diff_action(-1).at(0, 0), homalg::matrix::scalar_int(-2));
    let s2 = shift(&x, 2);
    assert_eq!(*s2.diff_action(-2).at(0, 0), homalg::matrix::scalar_int(2));
    // shift(shift(X,a),b) = shift(X,a+b)
    assert!(shift(&s1, 1).same_presentation(&s2));
}

#[test]
fn octahedron_2_3() {
    let z = Complex::concentrated(FPModule::free(Ring::Z, 1), 0);
    let a1 = ChainMap::new(z.clone(), z.clone(), vec![Matrix::from_int_rows(&[&[2]])]);
    let b1 = ChainMap::new(z.clone(), z.clone(), vec![Matrix::from_int_rows(&[&[3]])]);
    let oct = octahedron(&a1, &b1);
    assert!(oct.faces.iter().all(|(_, ok)| *ok), "faces: {:?}", oct.faces);
    // H⁰ of the delta triangle gives 0→Z/2→Z/6→Z/3→0
    assert_eq!(cohomology(&oct.tri_delta.x, 0).group.canonical().describe(Ring::Z), "Z/2");
    assert_eq!(cohomology(&oct.tri_delta.y, 0).group.canonical().describe(Ring::Z), "Z/6");
    assert_eq!(cohomology(&oct.tri_delta.z, 0).group.canonical().describe(Ring::Z), "Z/3");
    let les = long_exact_sequence(&oct.tri_delta, &oct.cert_delta);
    assert!(les.all_exact);
}
