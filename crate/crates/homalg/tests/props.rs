//! Randomized invariants of the arithmetic core.

use homalg::complex::{shift, Complex};
use homalg::fpmodule::FPModule;
use homalg::matrix::{scalar_int, Matrix, Ring};
use homalg::snf;
use num_traits::Zero;
use proptest::prelude::*;

prop_compose! {
    fn arb_matrix()(rows in 1usize..5, cols in 1usize..5)
        (entries in prop::collection::vec(-6i64..=6, rows * cols),
         rows in Just(rows), cols in Just(cols)) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| scalar_int(entries[i * cols + j]))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_postconditions(m in arb_matrix(), over_q in any::<bool>()) {
        let ring = if over_q { Ring::Q } else { Ring::Z };
        let d = snf::diagonalize(&m, ring);
        // u m v = d
        prop_assert!(d.u.mul(&m).mul(&d.v).sub(&d.d).is_zero());
        // diagonal, rank-prefixed, divisibility chain over Z
        for i in 0..d.d.rows() {
            for j in 0..d.d.cols() {
                if i != j {
                    prop_assert!(d.d.at(i, j).is_zero());
                }
            }
        }
        for i in 0..d.d.rows().min(d.d.cols()) {
            prop_assert_eq!(i < d.rank, !d.d.at(i, i).is_zero());
        }
        if ring == Ring::Z {
            for i in 1..d.rank {
                let a = d.d.at(i - 1, i - 1).numer().clone();
                let b = d.d.at(i, i).numer().clone();
                prop_assert!((&b % &a).is_zero(), "divisibility chain broken");
            }
        }
        // transforms invertible
        prop_assert!(snf::inverse(&d.u, ring).mul(&d.u).is_identity());
        prop_assert!(snf::inverse(&d.v, ring).mul(&d.v).is_identity());
    }

    #[test]
    fn kernel_and_solve_agree(m in arb_matrix()) {
        let k = snf::kernel(&m, Ring::Z);
        prop_assert!(m.mul(&k).is_zero());
        // anything the kernel spans really solves mx = 0
        if k.cols() > 0 {
            let v = k.column(0);
            prop_assert!(snf::lattice_contains(&k, &v, Ring::Z));
        }
        // a solvable system round-trips
        let rhs = m.column(0);
        let x = snf::solve(&m, &rhs, Ring::Z).expect("first column is in the image");
        prop_assert!(m.mul(&x).sub(&rhs).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(rel in arb_matrix()) {
        let m = FPModule::new(Ring::Z, rel.rows(), rel);
        let c = m.canonical().clone();
        // rebuilding from the canonical presentation is a fixed point
        let n = c.free_rank + c.invariant_factors.len();
        let rel = Matrix::from_fn(n, c.invariant_factors.len(), |i, j| {
            if i == c.free_rank + j {
                homalg::matrix::Scalar::from_integer(c.invariant_factors[j].clone())
            } else {
                scalar_int(0)
            }
        });
        let again = FPModule::new(Ring::Z, n, rel);
        prop_assert_eq!(again.canonical(), &c);
        prop_assert!(again.isomorphic(&m));
    }

    #[test]
    fn shifts_compose(gens in 1usize..3, a in -3i64..=3, b in -3i64..=3) {
        let m = FPModule::free(Ring::Z, gens);
        let x = Complex::new(
            Ring::Z,
            0,
            vec![m.clone(), m.clone()],
            vec![Matrix::zero(gens, gens)],
        );
        let lhs = shift(&shift(&x, a), b);
        let rhs = shift(&x, a + b);
        prop_assert!(lhs.same_presentation(&rhs));
    }
}
