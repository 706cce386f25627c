use num_rational::BigRational;
use proptest::prelude::*;
use subfactor::field::four_cos_squared;
use subfactor::fusion::{
    dim_irrep, dim_vector, fuse, fuse_coarse, fuse_vectors, fusion_power, hom_dimension_count,
    CoarseVector, FusionParams, FusionVector,
};
use subfactor::{CycNumber, Error, Float64, Scalar};

fn fv(m: &[u128]) -> FusionVector {
    FusionVector::new(m.to_vec())
}

fn alpha() -> CycNumber {
    CycNumber::from_integer(2) + CycNumber::sqrt2()
}

#[test]
fn a11_tensor_powers() {
    let t = FusionParams::truncated(12);
    let sq = fusion_power(&fv(&[1, 2, 2]), 2, &t).unwrap();
    assert_eq!(sq, fv(&[9, 20, 20, 12, 4]));
    // L²(M_2) = L²(M_1) ⊗_M L²(M_1) has three factors of L²(M) over N
    let cube = fuse_vectors(&sq, &fv(&[1, 2, 2]), &t).unwrap();
    assert_eq!(cube, fv(&[89, 222, 254, 196, 108, 32]));
    assert_eq!(fusion_power(&fv(&[1, 2, 2]), 3, &t).unwrap(), cube);
    assert_ne!(fuse_vectors(&sq, &sq, &t).unwrap(), cube);
}

#[test]
fn coarse_d5_ring() {
    let v = CoarseVector::new(1, 2);
    assert_eq!(fuse_coarse(&v, &v), CoarseVector::new(10, 24));
    let a = CoarseVector::new(1, 0);
    let b = CoarseVector::new(0, 1);
    assert_eq!(fuse_coarse(&a, &a), CoarseVector::new(2, 0));
    assert_eq!(fuse_coarse(&a, &b), CoarseVector::new(0, 2));
    assert_eq!(fuse_coarse(&b, &b), CoarseVector::new(2, 4));
}

#[test]
fn hom_dimension_counts() {
    assert_eq!(hom_dimension_count(&fv(&[10, 39, 41, 12])), 3446);
    assert_eq!(hom_dimension_count(&fv(&[26, 35, 25])), 2526);
    assert_eq!(hom_dimension_count(&FusionVector::unit()), 1);
}

#[test]
fn bimodule_squares_behind_the_counts() {
    // M-M side: L²(M_1) = U_0 ⊕ 5U_1
    let g = FusionParams::generic();
    assert_eq!(
        fusion_power(&fv(&[1, 5]), 2, &g).unwrap(),
        fv(&[26, 35, 25])
    );
    // N-N side with V_2 ⊗ V_2 outside the window
    let w = FusionParams::generic().with_window(3);
    assert_eq!(
        fusion_power(&fv(&[1, 3, 4]), 2, &w),
        Err(Error::BeyondSupertransitivity {
            i: 2,
            j: 2,
            window: 3
        })
    );
    let known = fv(&[1, 6, 8])
        .add(&fusion_power(&fv(&[0, 3]), 2, &g).unwrap())
        .add(&fuse_vectors(&fv(&[0, 3]), &fv(&[0, 0, 4]), &g).unwrap())
        .add(&fuse_vectors(&fv(&[0, 0, 4]), &fv(&[0, 3]), &g).unwrap());
    assert_eq!(known, fv(&[10, 39, 41, 24]));
    assert!(hom_dimension_count(&known) > 2526);
}

#[test]
fn generic_products_from_the_case_analysis() {
    let g = FusionParams::generic();
    assert_eq!(
        fuse_vectors(&fv(&[1, 2, 1]), &fv(&[1, 1]), &g).unwrap(),
        fv(&[3, 6, 4, 1])
    );
    assert_eq!(
        fuse_vectors(&fv(&[1, 3, 1]), &fv(&[1, 1]), &g).unwrap(),
        fv(&[4, 8, 5, 1])
    );
    assert_eq!(fuse(1, 2, &g).unwrap(), fv(&[0, 1, 1, 1]));
}

#[test]
fn dimensions_at_two_plus_root_two() {
    let a = alpha();
    assert_eq!(dim_irrep(0, &a), CycNumber::from_integer(1));
    assert_eq!(
        dim_irrep(1, &a),
        CycNumber::from_integer(1) + CycNumber::sqrt2()
    );
    // (1,2,2,1) at the intermediate index has total dimension α² = 6 + 4√2
    let total = dim_vector(&fv(&[1, 2, 2, 1]), &a);
    assert_eq!(total, &a * &a);
    assert_eq!(
        total,
        CycNumber::from_integer(6) + CycNumber::sqrt2() * CycNumber::from_integer(4)
    );
    // (1,3,1): 1 + 3(α−1) + (α² − 3α + 1)
    let one = CycNumber::from_integer(1);
    let expected = one.clone()
        + (&a - &one) * CycNumber::from_integer(3)
        + (&a * &a - &a * &CycNumber::from_integer(3) + one);
    assert_eq!(dim_vector(&fv(&[1, 3, 1]), &a), expected);
}

#[test]
fn truncated_dimensions_are_quantum_integers() {
    for n in 4..=16usize {
        let gamma = four_cos_squared(n as u32);
        let top = FusionParams::truncated(n).top_label().unwrap();
        for k in 0..=top {
            let d = dim_irrep(k, &gamma).to_f64();
            let pi = std::f64::consts::PI;
            let q = ((2 * k + 1) as f64 * pi / n as f64).sin() / (pi / n as f64).sin();
            assert!((d - q).abs() < 1e-9, "n={n} k={k}");
            assert!(d > 0.0, "n={n} k={k}");
        }
    }
}

#[test]
fn truncated_dimension_homomorphism() {
    for n in [5usize, 8, 12] {
        let t = FusionParams::truncated(n);
        let gamma = four_cos_squared(n as u32);
        let top = t.top_label().unwrap();
        for i in 0..=top {
            for j in 0..=top {
                let prod = dim_irrep(i, &gamma) * dim_irrep(j, &gamma);
                assert_eq!(
                    dim_vector(&fuse(i, j, &t).unwrap(), &gamma),
                    prod,
                    "n={n} {i}x{j}"
                );
            }
        }
    }
}

#[test]
fn float_and_exact_dimensions_agree() {
    let a = alpha();
    let af = Float64::real(a.to_f64());
    for k in 0..6 {
        assert!((dim_irrep(k, &af).to_complex().re - dim_irrep(k, &a).to_f64()).abs() < 1e-9);
    }
}

fn vector(max_label: usize) -> impl Strategy<Value = FusionVector> {
    prop::collection::vec(0u128..4, 1..=max_label + 1).prop_map(FusionVector::new)
}

fn mode() -> impl Strategy<Value = FusionParams> {
    prop_oneof![
        Just(FusionParams::generic()),
        (8usize..16).prop_map(FusionParams::truncated)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutative(u in vector(2), v in vector(2), p in mode()) {
        prop_assert_eq!(fuse_vectors(&u, &v, &p).unwrap(), fuse_vectors(&v, &u, &p).unwrap());
    }

    #[test]
    fn associative(u in vector(2), v in vector(2), w in vector(2), p in mode()) {
        let left = fuse_vectors(&fuse_vectors(&u, &v, &p).unwrap(), &w, &p).unwrap();
        let right = fuse_vectors(&u, &fuse_vectors(&v, &w, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dimension_is_multiplicative(u in vector(3), v in vector(3), num in 4i64..40, den in 1i64..5) {
        let g = FusionParams::generic().with_window(6);
        let gamma = BigRational::new(num.into(), den.into());
        let prod = fuse_vectors(&u, &v, &g).unwrap();
        prop_assert_eq!(dim_vector(&prod, &gamma), dim_vector(&u, &gamma) * dim_vector(&v, &gamma));
    }

    #[test]
    fn square_count_ignores_factor_order(u in vector(3), v in vector(3), p in mode()) {
        let uv = fuse_vectors(&u, &v, &p).unwrap();
        let vu = fuse_vectors(&v, &u, &p).unwrap();
        prop_assert_eq!(
            hom_dimension_count(&fuse_vectors(&uv, &uv, &p).unwrap()),
            hom_dimension_count(&fuse_vectors(&vu, &vu, &p).unwrap())
        );
    }
}
