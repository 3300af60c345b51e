//! End-to-end acceptance gate. Each criterion prints one pass/fail line
//! with its runtime; the test fails if any criterion fails or overruns
//! its budget.

use homalg::complex::{
    cohomology, hom_complex, induced_map, is_quasi_iso, null_homotopy_witness, shift, ChainMap,
    Complex,
};
use homalg::derived::{
    compose_roofs, ext, hereditary_decompose, hom_d, is_zero_in_d, roof_eq, tor, Roof,
};
use homalg::dg::{
    biduality, check_dg_algebra, dg_hom_dimension, dg_dual, end_complex_as_dga, free_module,
    opposite_algebra, yoneda_h0, DGAlgebra,
};
use homalg::fpmodule::{kernel_image_cokernel, FPModule};
use homalg::homotopycat::hom_k;
use homalg::laws::{
    generate_one, roof_triple, run_law_suite, Instance, InstanceGenSpec, Kind, Suite,
};
use homalg::matrix::{Matrix, Ring, Scalar};
use homalg::triangle::{certify_exact, cone, long_exact_sequence, octahedron};
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::time::{Duration, Instant};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn desc(m: &FPModule) -> String {
    m.canonical().describe(m.ring()).to_string()
}

fn criterion_1() -> Result<(), String> {
    for m in 1..=12i64 {
        for n in 1..=12i64 {
            let a = FPModule::cyclic(Ring::Z, m);
            let b = FPModule::cyclic(Ring::Z, n);
            let g = gcd(m, n);
            let want = if g == 1 { "0".to_string() } else { format!("Z/{}", g) };
            // ext() cross-checks the resolution route against hom_D itself
            for (label, got) in [
                ("Hom", desc(&ext(&a, &b, 0))),
                ("Ext^1", desc(&ext(&a, &b, 1))),
                ("Tor_1", desc(&tor(&a, &b, 1))),
            ] {
                if got != want {
                    return Err(format!("{}({},{}) = {} ≠ {}", label, m, n, got, want));
                }
            }
            for k in 2..=3 {
                if !ext(&a, &b, k).is_zero_module() {
                    return Err(format!("Ext^{}({},{}) ≠ 0", k, m, n));
                }
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    [Ring::Z, Ring::Q].into_par_iter().try_for_each(|ring| {
        let spec = InstanceGenSpec::new(ring, 0xB21D_6E, 100);
        (0..100usize).into_par_iter().try_for_each(|i| {
            let Instance::Map(f) = generate_one(&spec, Kind::ChainMap, i) else {
                unreachable!()
            };
            let (x, y) = (f.source(), f.target());
            let hc = hom_complex(x, y);
            for n in -1..=1i64 {
                let lhs = cohomology(&hc.complex, n).group;
                let rhs = hom_k(x, &shift(y, n));
                if lhs.canonical() != rhs.group().canonical() {
                    return Err(format!(
                        "bridge fails at case {} degree {}: {} ≠ {}",
                        i,
                        n,
                        desc(&lhs),
                        desc(rhs.group())
                    ));
                }
            }
            Ok(())
        })
    })
}

fn criterion_3() -> Result<(), String> {
    [Ring::Z, Ring::Q].into_par_iter().try_for_each(|ring| {
        let mut spec = InstanceGenSpec::new(ring, 0x1E5, 100);
        spec.max_gens = 2;
        spec.max_torsion = 8;
        (0..100usize).into_par_iter().try_for_each(|i| {
            let Instance::Map(f) = generate_one(&spec, Kind::ChainMap, i) else {
                unreachable!()
            };
            let t = cone(&f).triangle();
            let cert = certify_exact(&t).ok_or("cone triangle failed to certify")?;
            let rep = long_exact_sequence(&t, &cert);
            if !rep.all_exact {
                return Err(format!("LES not exact on case {} over {:?}", i, ring));
            }
            if rep.delta_identity != Some(true) {
                return Err(format!("δ ≠ H(α) on case {} over {:?}", i, ring));
            }
            Ok(())
        })
    })
}

fn criterion_4() -> Result<(), String> {
    let mut spec = InstanceGenSpec::new(Ring::Z, 0x0C7A, 100);
    spec.max_gens = 2;
    spec.max_torsion = 8;
    (0..100usize).into_par_iter().try_for_each(|i| {
        let Instance::Pair(f, g) = generate_one(&spec, Kind::ComposablePair, i) else {
            unreachable!()
        };
        let oct = octahedron(&f, &g);
        if let Some((face, _)) = oct.faces.iter().find(|(_, ok)| !ok) {
            return Err(format!("face {} fails on case {}", face, i));
        }
        Ok(())
    })?;
    // the (×2, ×3) instance: 0 → Z/2 → Z/6 → Z/3 → 0
    let u = Complex::concentrated(FPModule::free(Ring::Z, 1), 0);
    let two = ChainMap::from_fn(u.clone(), u.clone(), |_| Matrix::from_int_rows(&[&[2]]));
    let three = ChainMap::from_fn(u.clone(), u.clone(), |_| Matrix::from_int_rows(&[&[3]]));
    let oct = octahedron(&two, &three);
    if let Some((face, _)) = oct.faces.iter().find(|(_, ok)| !ok) {
        return Err(format!("face {} fails on the (×2,×3) instance", face));
    }
    let h2 = cohomology(&oct.tri_alpha.z, 0).group;
    let h6 = cohomology(&oct.tri_gamma.z, 0).group;
    let h3 = cohomology(&oct.tri_beta.z, 0).group;
    if desc(&h2) != "Z/2" || desc(&h6) != "Z/6" || desc(&h3) != "Z/3" {
        return Err(format!("cones are {}, {}, {}", desc(&h2), desc(&h6), desc(&h3)));
    }
    // H⁰δ₁ injective, H⁰δ₂ surjective, exact in the middle
    let d1 = induced_map(
        &oct.delta1,
        &cohomology(&oct.tri_alpha.z, 0),
        &cohomology(&oct.tri_gamma.z, 0),
    );
    let d2 = induced_map(
        &oct.delta2,
        &cohomology(&oct.tri_gamma.z, 0),
        &cohomology(&oct.tri_beta.z, 0),
    );
    let k1 = kernel_image_cokernel(&d1);
    let k2 = kernel_image_cokernel(&d2);
    let mid = kernel_image_cokernel(&d2.compose_after(&d1));
    if !k1.kernel.module().is_zero_module()
        || !k2.cokernel.is_zero_module()
        || !mid.image.is_zero_module()
        || desc(k2.kernel.module()) != "Z/2"
    {
        return Err("Z/2 → Z/6 → Z/3 is not short exact".to_string());
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let mut spec = InstanceGenSpec::new(Ring::Z, 0x600F5, 100);
    spec.max_gens = 2;
    spec.max_torsion = 8;
    (0..100usize).into_par_iter().try_for_each(|i| {
        let (r1, r2, r3) = roof_triple(&spec, i);
        // unit
        let id_src = Roof::from_map(&ChainMap::identity(r1.source()));
        let id_dst = Roof::from_map(&ChainMap::identity(r1.dest()));
        if !roof_eq(&compose_roofs(&id_src, &r1), &r1)
            || !roof_eq(&compose_roofs(&r1, &id_dst), &r1)
        {
            return Err(format!("unit law fails on case {}", i));
        }
        // associativity
        let left = compose_roofs(&compose_roofs(&r1, &r2), &r3);
        let right = compose_roofs(&r1, &compose_roofs(&r2, &r3));
        if !roof_eq(&left, &right) {
            return Err(format!("associativity fails on case {}", i));
        }
        // congruence: composing equal representatives stays equal
        let r1_alt = compose_roofs(&id_src, &r1);
        if !roof_eq(&compose_roofs(&r1_alt, &r2), &compose_roofs(&r1, &r2)) {
            return Err(format!("congruence fails on case {}", i));
        }
        // class → roof → class round-trip
        let hd = hom_d(r1.source(), r1.dest());
        let c = hd.class_of_roof(&r1);
        let back = hd.class_of_roof(&hd.roof_for(&c));
        if !hd.group().element_is_zero(&c.sub(&back)) {
            return Err(format!("normal-form round-trip fails on case {}", i));
        }
        Ok(())
    })
}

fn criterion_6() -> Result<(), String> {
    let spec = InstanceGenSpec::new(Ring::Z, 0xDEC0, 100);
    (0..100usize).into_par_iter().try_for_each(|i| {
        let Instance::Complex(x) = generate_one(&spec, Kind::Complex, i) else {
            unreachable!()
        };
        let dec = hereditary_decompose(&x);
        if !is_quasi_iso(&dec.roof.alpha) || !is_quasi_iso(&dec.roof.sigma) {
            return Err(format!("roof legs not qis on case {}", i));
        }
        let h = &dec.h;
        if !h.is_empty_window() {
            for n in h.lo()..h.hi() {
                if !h.diff_action(n).is_zero() {
                    return Err(format!("nonzero differential in target on case {}", i));
                }
            }
        }
        for n in x.lo() - 1..=x.hi() + 1 {
            let want = cohomology(&x, n).group;
            if h.component(n).canonical() != want.canonical() {
                return Err(format!(
                    "degree {} of case {}: {} ≠ H = {}",
                    n,
                    i,
                    desc(&h.component(n)),
                    desc(&want)
                ));
            }
        }
        Ok(())
    })
}

fn criterion_7() -> Result<(), String> {
    let z = FPModule::free(Ring::Z, 1);
    let a = Complex::new(
        Ring::Z,
        0,
        vec![z.clone(), z, FPModule::cyclic(Ring::Z, 2)],
        vec![Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[1]])],
    );
    for n in -1..=3i64 {
        if !cohomology(&a, n).group.is_zero_module() {
            return Err(format!("H^{} ≠ 0", n));
        }
    }
    let id = ChainMap::identity(&a);
    if null_homotopy_witness(&id).is_some() {
        return Err("identity is null-homotopic".to_string());
    }
    if !is_zero_in_d(&id).is_zero {
        return Err("identity is not zero in D".to_string());
    }
    Ok(())
}

/// Independent axiom evaluation on basis elements, used as the oracle for
/// mutations that check_dg_algebra does not flag.
fn axioms_hold(a: &DGAlgebra) -> bool {
    let basis = |dim: usize, j: usize| {
        Matrix::from_fn(dim, 1, |i, _| if i == j { Scalar::one() } else { Scalar::zero() })
    };
    let degs: Vec<i64> = (a.lo..=a.hi).collect();
    for &n in &degs {
        if !a.diff_matrix(n + 1).mul(&a.diff_matrix(n)).is_zero() {
            return false;
        }
        for j in 0..a.dim(n) {
            let e = basis(a.dim(n), j);
            if !a.product(0, &a.unit, n, &e).sub(&e).is_zero()
                || !a.product(n, &e, 0, &a.unit).sub(&e).is_zero()
            {
                return false;
            }
        }
    }
    for &p in &degs {
        for &q in &degs {
            for jp in 0..a.dim(p) {
                for jq in 0..a.dim(q) {
                    let x = basis(a.dim(p), jp);
                    let y = basis(a.dim(q), jq);
                    let xy = a.product(p, &x, q, &y);
                    let lhs = a.diff_matrix(p + q).mul(&xy);
                    let sign = if p % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    let rhs = a
                        .product(p + 1, &a.diff_matrix(p).mul(&x), q, &y)
                        .add(&a.product(p, &x, q + 1, &a.diff_matrix(q).mul(&y)).scale(&sign));
                    if !lhs.sub(&rhs).is_zero() {
                        return false;
                    }
                    for &r in &degs {
                        for jr in 0..a.dim(r) {
                            let z = basis(a.dim(r), jr);
                            let l = a.product(p + q, &xy, r, &z);
                            let rgt = a.product(p, &x, q + r, &a.product(q, &y, r, &z));
                            if !l.sub(&rgt).is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn criterion_8() -> Result<(), String> {
    let mut spec = InstanceGenSpec::new(Ring::Q, 0xD6A, 50);
    spec.max_gens = 2;
    spec.degree_span = 2;
    (0..50usize).into_par_iter().try_for_each(|i| {
        let Instance::Complex(x) = generate_one(&spec, Kind::Complex, i) else {
            unreachable!()
        };
        let a = end_complex_as_dga(&x);
        if !check_dg_algebra(&a).is_valid() {
            return Err(format!("end algebra of case {} flagged as invalid", i));
        }
        // every single-entry mutation is either flagged or axiom-preserving
        let mut mutants: Vec<DGAlgebra> = Vec::new();
        for (&(p, q), m) in &a.mult {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let mut b = a.clone();
                    let mm = b.mult.get_mut(&(p, q)).unwrap();
                    let bumped = mm.at(r, c).clone() + Scalar::one();
                    mm.set(r, c, bumped);
                    mutants.push(b);
                }
            }
        }
        for (&n, m) in &a.diff {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let mut b = a.clone();
                    let mm = b.diff.get_mut(&n).unwrap();
                    let bumped = mm.at(r, c).clone() + Scalar::one();
                    mm.set(r, c, bumped);
                    mutants.push(b);
                }
            }
        }
        for b in &mutants {
            let rep = check_dg_algebra(b);
            if rep.is_valid() {
                if !axioms_hold(b) {
                    return Err(format!("unflagged broken mutant of case {}", i));
                }
            } else if rep.violations.is_empty() {
                return Err(format!("flag without location on case {}", i));
            }
        }
        // biduality and the adjunction dimension equality
        let m = free_module(&a);
        let (_, bid) = biduality(&m);
        if !bid {
            return Err(format!("biduality fails on case {}", i));
        }
        let mo = free_module(&opposite_algebra(&a));
        if dg_hom_dimension(&m, &dg_dual(&mo)) != dg_hom_dimension(&mo, &dg_dual(&m)) {
            return Err(format!("adjunction dimensions differ on case {}", i));
        }
        // H⁰ Yoneda comparison
        if !yoneda_h0(&a, &m).holds() {
            return Err(format!("H⁰ comparison fails on case {}", i));
        }
        Ok(())
    })
}

fn criterion_9() -> Result<(), String> {
    let spec = InstanceGenSpec::new(Ring::Z, 42, 10);
    let base = run_law_suite(Suite::Tr2, &spec)?.canonical_text();
    let again = run_law_suite(Suite::Tr2, &spec)?.canonical_text();
    if base != again {
        return Err("reports differ between runs".to_string());
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?
        .install(|| run_law_suite(Suite::Tr2, &spec))?
        .canonical_text();
    if base != single {
        return Err("reports differ across thread counts".to_string());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let gate: Vec<(&str, fn() -> Result<(), String>, u64)> = vec![
        ("1 ext/tor tables", criterion_1, 10),
        ("2 hom-complex bridge", criterion_2, 60),
        ("3 long exact sequence", criterion_3, 60),
        ("4 octahedron", criterion_4, 120),
        ("5 roof calculus", criterion_5, 60),
        ("6 hereditary decomposition", criterion_6, 60),
        ("7 K-vs-D witness", criterion_7, 1),
        ("8 dg axioms", criterion_8, 60),
        ("9 determinism", criterion_9, 300),
    ];
    let total = Instant::now();
    let mut failed = false;
    for (name, run, budget) in gate {
        let start = Instant::now();
        let outcome = run();
        let dt = start.elapsed();
        let within = dt <= Duration::from_secs(budget);
        match (&outcome, within) {
            (Ok(()), true) => println!("criterion {}: PASS ({:.2?})", name, dt),
            (Ok(()), false) => {
                failed = true;
                println!("criterion {}: FAIL (over budget, {:.2?} > {}s)", name, dt, budget);
            }
            (Err(e), _) => {
                failed = true;
                println!("criterion {}: FAIL ({:.2?}) — {}", name, dt, e);
            }
        }
    }
    let dt = total.elapsed();
    println!("total: {:.2?}", dt);
    assert!(!failed, "acceptance criteria failed");
    assert!(dt <= Duration::from_secs(300), "full run exceeded five minutes");
}
