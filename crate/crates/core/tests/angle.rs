use num_traits::{One, Zero};
use subfactor::angle::{
    angle_closed_form, angle_path_oracle, angle_spectrum_finite, cos_ratio, ghj_floors,
    simpler_floors, simpler_quadrilateral, SpectralValue,
};
use subfactor::coxeter::{pointed_by_name, pointed_catalogue, Kind};
use subfactor::tower::{ExactTower, Tower};
use subfactor::{CycNumber, Error};

fn root2_minus_1() -> CycNumber {
    CycNumber::sqrt2() - CycNumber::one()
}

fn corner(name: &str, levels: usize) -> ExactTower {
    let p = pointed_by_name(name).unwrap();
    let mut t = Tower::pointed(&p, 12).unwrap();
    t.ensure_level(levels).unwrap();
    t
}

#[test]
fn closed_form_values() {
    let d52 = angle_closed_form(&pointed_by_name("D5,2").unwrap()).unwrap();
    assert_eq!(d52.cos_value, root2_minus_1());
    let e61 = angle_closed_form(&pointed_by_name("E6,1").unwrap()).unwrap();
    assert_eq!(
        e61.cos_value,
        CycNumber::from_integer(2) - CycNumber::sqrt3()
    );
    // 2d + 3 = ℓ/2 for D6,2
    let d62 = angle_closed_form(&pointed_by_name("D6,2").unwrap()).unwrap();
    assert!(d62.cos_value.is_zero());
}

#[test]
fn closed_form_matches_floating_point() {
    for p in pointed_catalogue(0, 10) {
        if p.graph().kind() == Kind::A || p.d().is_none() {
            continue;
        }
        let l = p.graph().coxeter_number() as f64;
        let d = p.d().unwrap() as f64;
        let expected = ((2.0 * d + 3.0) * std::f64::consts::PI / l).cos().abs()
            / (std::f64::consts::PI / l).cos();
        let got = angle_closed_form(&p).unwrap().cos_value.to_f64();
        assert!((got - expected).abs() < 1e-12, "{}", p.name());
    }
}

#[test]
fn type_a_has_no_angle() {
    let p = pointed_by_name("A5").unwrap();
    assert!(matches!(
        angle_closed_form(&p),
        Err(Error::NoTrivalentVertex(_))
    ));
    assert!(matches!(
        angle_path_oracle(&p),
        Err(Error::NoTrivalentVertex(_))
    ));
}

#[test]
fn path_oracle_on_d5() {
    let p = pointed_by_name("D5,2").unwrap();
    let r = angle_path_oracle(&p).unwrap();
    assert_eq!(r.cos_value, root2_minus_1());
    assert_eq!(r.cos_value, angle_closed_form(&p).unwrap().cos_value);
}

#[test]
fn path_oracle_matches_closed_form_on_the_catalogue() {
    let mut agreed = 0;
    for p in pointed_catalogue(0, 7)
        .into_iter()
        .chain([pointed_by_name("E7,2").unwrap()])
    {
        if p.d().is_none() {
            continue;
        }
        match angle_path_oracle(&p) {
            Ok(r) => {
                let closed = angle_closed_form(&p).unwrap();
                assert_eq!(r.cos_value, closed.cos_value, "{}", p.name());
                // the signed values agree up to sign
                let d = p.d().unwrap() as u32;
                let s = cos_ratio(p.graph().coxeter_number(), 2 * d + 3);
                let signed = &r.witnesses["signed_ratio"];
                assert!(signed == &s || signed == &(-s.clone()), "{}", p.name());
                agreed += 1;
            }
            Err(Error::HypothesisFailure(_)) => {}
            Err(e) => panic!("{}: {e}", p.name()),
        }
    }
    assert!(agreed >= 4, "only {agreed} cases ran");
}

#[test]
fn e6_both_variants() {
    for name in ["E6,1", "E6,2"] {
        let p = pointed_by_name(name).unwrap();
        assert_eq!(
            angle_path_oracle(&p).unwrap().cos_value,
            angle_closed_form(&p).unwrap().cos_value
        );
    }
}

#[test]
fn d5_spectrum_contains_the_angle() {
    let t = corner("D5,2", 3);
    let (p, q) = ghj_floors(&t, 3).unwrap();
    let cos2 = CycNumber::from_integer(3) - CycNumber::sqrt2() * CycNumber::from_integer(2);
    let spec = angle_spectrum_finite(&t, &p, &q, 3, std::slice::from_ref(&cos2)).unwrap();
    let exact: Vec<(CycNumber, usize)> = spec
        .iter()
        .filter_map(|e| match &e.value {
            SpectralValue::Exact(v) => Some((v.clone(), e.multiplicity)),
            SpectralValue::Factor { .. } => None,
        })
        .collect();
    assert!(exact.iter().any(|(v, _)| v == &cos2));
    assert!(exact.iter().any(|(v, _)| v.is_one()));
    assert_eq!(exact.iter().map(|e| e.1).sum::<usize>(), t.dim(3));
    for (v, _) in &exact {
        let f = v.to_f64();
        assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }
}

#[test]
fn spectral_eigenvalue_is_the_closed_form_square() {
    let p = pointed_by_name("D5,2").unwrap();
    let c = angle_closed_form(&p).unwrap().cos_value;
    let t = corner("D5,2", 3);
    let (pp, qq) = ghj_floors(&t, 3).unwrap();
    let spec = angle_spectrum_finite(&t, &pp, &qq, 3, &[&c * &c]).unwrap();
    assert!(spec
        .iter()
        .any(|e| matches!(&e.value, SpectralValue::Exact(v) if v == &(&c * &c))));
}

#[test]
fn ghj_and_real_floors_commute() {
    let t = corner("D5,2", 3);
    let (p, _) = ghj_floors(&t, 3).unwrap();
    let (p_tilde, _) = simpler_floors(&t, 3).unwrap();
    let spec = angle_spectrum_finite(&t, &p, &p_tilde, 3, &[]).unwrap();
    for e in &spec {
        match &e.value {
            SpectralValue::Exact(v) => assert!(v.is_zero() || v.is_one()),
            SpectralValue::Factor { .. } => panic!("unexpected eigenvalue"),
        }
    }
}

#[test]
fn simpler_quadrilateral_at_l8() {
    let p = pointed_by_name("D5,2").unwrap();
    let r = simpler_quadrilateral(&p).unwrap();
    assert_eq!(r.cos_value, root2_minus_1());
    let tau = &r.witnesses["tau"];
    let expected = tau * tau * tau / (CycNumber::one() - tau.clone());
    assert_eq!(r.witnesses["projection_norm_squared"], expected);
    assert_eq!(
        r.witnesses["x_norm_squared"],
        tau * &(CycNumber::one() - tau.clone())
    );
}

#[test]
fn simpler_quadrilateral_on_longer_d_graphs() {
    for n in [6, 7] {
        let p = pointed_by_name(&format!("D{n},2")).unwrap();
        let r = simpler_quadrilateral(&p).unwrap();
        let tau = &r.witnesses["tau"];
        assert_eq!(r.cos_value, tau / &(CycNumber::one() - tau.clone()));
        let t = corner(&format!("D{n},2"), 3);
        let (a, b) = simpler_floors(&t, 3).unwrap();
        let c2 = &r.cos_value * &r.cos_value;
        let spec = angle_spectrum_finite(&t, &a, &b, 3, std::slice::from_ref(&c2)).unwrap();
        assert!(
            spec.iter()
                .any(|e| matches!(&e.value, SpectralValue::Exact(v) if v == &c2)),
            "D{n},2"
        );
    }
}

#[test]
fn e6_short_arm_has_no_f_projection() {
    // pA_2p is commutative with blocks at the three neighbours of the
    // trivalent vertex; only pe_1 has trace τ
    let p = pointed_by_name("E6,2").unwrap();
    assert!(matches!(
        simpler_quadrilateral(&p),
        Err(Error::HypothesisFailure(_))
    ));
}

#[test]
fn simpler_quadrilateral_needs_the_short_arm() {
    for name in ["D5,1", "E7,2", "A4"] {
        let p = pointed_by_name(name).unwrap();
        assert!(
            matches!(simpler_quadrilateral(&p), Err(Error::HypothesisFailure(_))),
            "{name}"
        );
    }
}
