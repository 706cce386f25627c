use std::cmp::Ordering;

use num_traits::One;
use subfactor::coxeter::{build_graph, pointed_by_name, CoxeterGraph, Kind};
use subfactor::field::sign;
use subfactor::tower::{AlgElement, ExactTower, Subalgebra, Tower};
use subfactor::{CycNumber, Scalar};

/// Path counts from the adjacency matrix, independent of the tower's own
/// path enumeration: dim A_n = Σ_v (Σ_{u ∈ starts} (Aⁿ)_{uv})².
fn dim_by_matrix_powers(g: &CoxeterGraph, starts: &[usize], n: usize) -> usize {
    let size = g.vertex_count();
    let mut counts = vec![0usize; size];
    for &u in starts {
        counts[u] += 1;
    }
    for _ in 0..n {
        let mut next = vec![0usize; size];
        for (v, c) in counts.iter().enumerate() {
            for &w in g.neighbors(v) {
                next[w] += c;
            }
        }
        counts = next;
    }
    counts.iter().map(|c| c * c).sum()
}

fn d5_tower(levels: usize) -> ExactTower {
    let g = build_graph(Kind::D, 5).unwrap();
    let mut t = Tower::full(&g).unwrap();
    t.ensure_level(levels).unwrap();
    t
}

#[test]
fn dimensions_match_path_counts() {
    for (kind, n) in [(Kind::A, 3), (Kind::D, 5), (Kind::E, 6)] {
        let g = build_graph(kind, n).unwrap();
        let mut t: ExactTower = Tower::full(&g).unwrap();
        t.ensure_level(6).unwrap();
        for level in 0..=6 {
            assert_eq!(
                t.dim(level),
                dim_by_matrix_powers(&g, t.starts(), level),
                "{kind}{n} level {level}"
            );
        }
    }
}

#[test]
fn a3_and_d5_initial_floors() {
    let a3 = build_graph(Kind::A, 3).unwrap();
    let t: ExactTower = Tower::full(&a3).unwrap();
    assert_eq!(t.dim(0), 2);
    assert_eq!(t.dim(1), 4);
    let d5 = build_graph(Kind::D, 5).unwrap();
    let t: ExactTower = Tower::full(&d5).unwrap();
    assert_eq!(t.vertices(0).len(), 3);
    assert_eq!(t.dim(0), 3);
}

#[test]
fn trace_of_identity_is_one() {
    let t = d5_tower(4);
    for n in 0..=4 {
        assert_eq!(t.trace(&t.identity(n).unwrap()).unwrap(), CycNumber::one());
    }
}

#[test]
fn temperley_lieb_relations_on_d5() {
    let t = d5_tower(6);
    let n = 6;
    let tau = t.tau().clone();
    let e: Vec<AlgElement<CycNumber>> = (1..n).map(|i| t.jones(i, n).unwrap()).collect();
    for i in 0..e.len() {
        assert_eq!(e[i].mul(&e[i]), e[i], "e_{} idempotent", i + 1);
        assert_eq!(t.adjoint(&e[i]).unwrap(), e[i]);
        for j in 0..e.len() {
            if i.abs_diff(j) == 1 {
                assert_eq!(e[i].mul(&e[j]).mul(&e[i]), e[i].scale(&tau));
            } else if i.abs_diff(j) >= 2 {
                assert_eq!(e[i].mul(&e[j]), e[j].mul(&e[i]));
            }
        }
    }
}

#[test]
fn jones_projection_implements_expectation() {
    let t = d5_tower(4);
    for i in 1..=3 {
        let e = t.jones(i, i + 1).unwrap();
        for (a, b) in t.matrix_units(i).unwrap() {
            let x = t.include(&t.unit(i, a, b).unwrap(), i + 1).unwrap();
            let lhs = e.mul(&x).mul(&e);
            let ex = t
                .conditional_expectation(&x, &Subalgebra::Floor(i - 1))
                .unwrap();
            assert_eq!(lhs, ex.mul(&e));
        }
    }
}

#[test]
fn markov_property_on_spanning_sets() {
    let t = d5_tower(6);
    let tau = t.tau().clone();
    for n in 1..=5 {
        let e = t.jones(n, n + 1).unwrap();
        for (a, b) in t.matrix_units(n).unwrap() {
            let x = t.unit(n, a, b).unwrap();
            let lhs = t.trace(&t.include(&x, n + 1).unwrap().mul(&e)).unwrap();
            assert_eq!(lhs, &tau * &t.trace(&x).unwrap());
        }
    }
}

#[test]
fn trace_is_compatible_with_inclusion() {
    let t = d5_tower(5);
    for n in 0..5 {
        for (a, b) in t.matrix_units(n).unwrap() {
            let x = t.unit(n, a, b).unwrap();
            assert_eq!(
                t.trace(&x).unwrap(),
                t.trace(&t.include(&x, n + 1).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn trace_of_adjacent_projections() {
    let t = d5_tower(3);
    let (e1, e2) = (t.jones(1, 3).unwrap(), t.jones(2, 3).unwrap());
    let tau = t.tau().clone();
    assert_eq!(t.trace(&e1.mul(&e2)).unwrap(), &tau * &tau);
    assert_eq!(t.trace(&e1).unwrap(), tau);
}

#[test]
fn expectation_onto_a0_of_e1_is_tau() {
    let t = d5_tower(2);
    let e1 = t.jones(1, 2).unwrap();
    let ex = t
        .conditional_expectation(&e1, &Subalgebra::Floor(0))
        .unwrap();
    assert_eq!(ex, t.scalar(2, t.tau()).unwrap());
}

#[test]
fn expectation_fixes_subalgebra_elements() {
    let t = d5_tower(3);
    let tl = t
        .generated_subalgebra(&[t.jones(1, 3).unwrap(), t.jones(2, 3).unwrap()], 3)
        .unwrap();
    let sub = Subalgebra::span(&t, tl.clone()).unwrap();
    for b in &tl {
        assert_eq!(&t.conditional_expectation(b, &sub).unwrap(), b);
    }
    // TL_3 has dimension 5 when δ > 1
    assert_eq!(tl.len(), 5);
}

#[test]
fn singular_gram_is_reported() {
    let t = d5_tower(2);
    let e1 = t.jones(1, 2).unwrap();
    let err = Subalgebra::span(&t, vec![e1.clone(), e1]).unwrap_err();
    assert_eq!(err, subfactor::Error::SingularGram);
}

#[test]
fn commutant_of_everything_is_the_center() {
    let t = d5_tower(3);
    let units: Vec<_> = t
        .matrix_units(3)
        .unwrap()
        .into_iter()
        .map(|(a, b)| t.unit(3, a, b).unwrap())
        .collect();
    assert_eq!(t.commutant(&units, 3).unwrap().len(), t.vertices(3).len());
    assert_eq!(t.commutant(&[], 2).unwrap().len(), t.dim(2));
}

#[test]
fn positivity_of_the_trace() {
    let t = d5_tower(3);
    // a fixed pseudo-random element with small cyclotomic coefficients
    let mut x = AlgElement::zero(3);
    for (k, (a, b)) in t.matrix_units(3).unwrap().into_iter().enumerate() {
        if k % 3 == 0 {
            let c = CycNumber::root_of_unity(8, k as i64).unwrap()
                + CycNumber::from_integer((k % 5) as i64 - 2);
            x = x.add(&t.unit(3, a, b).unwrap().scale(&c));
        }
    }
    let q = t.trace(&t.adjoint(&x).unwrap().mul(&x)).unwrap();
    assert!(q.is_real());
    assert_eq!(sign(&q), Ordering::Greater);
}

#[test]
fn cut_down_matches_corner_tower() {
    let p = pointed_by_name("D5,2").unwrap();
    let g = p.graph();
    let mut full: ExactTower = Tower::new(g, p.star(), 12).unwrap();
    full.ensure_level(4).unwrap();
    let mut corner: ExactTower = Tower::pointed(&p, 12).unwrap();
    corner.ensure_level(4).unwrap();
    let proj = full.vertex_projection(p.star(), 0).unwrap();
    for i in 1..=3 {
        let e = full.jones(i, 4).unwrap();
        let cut = full.cut_down(&proj, &e).unwrap();
        assert_eq!(
            full.restrict_to_corner(&corner, &cut).unwrap(),
            corner.jones(i, 4).unwrap()
        );
    }
    // the corner trace is renormalized so that tr(p) = 1
    assert_eq!(
        corner.trace(&corner.identity(4).unwrap()).unwrap(),
        CycNumber::one()
    );
    let one = full.cut_down(&proj, &full.identity(4).unwrap()).unwrap();
    assert_eq!(one, full.include(&proj, 4).unwrap());
    // cut-down Temperley-Lieb relations
    let tau = corner.tau().clone();
    let (e1, e2) = (corner.jones(1, 4).unwrap(), corner.jones(2, 4).unwrap());
    assert_eq!(e1.mul(&e2).mul(&e1), e1.scale(&tau));
    assert_eq!(e2.mul(&e1).mul(&e2), e2.scale(&tau));
}

#[test]
fn cut_down_rejects_non_projections() {
    let t = d5_tower(2);
    let e1 = t.jones(1, 2).unwrap();
    assert_eq!(
        t.cut_down(&e1, &e1).unwrap_err(),
        subfactor::Error::NotIdempotent
    );
}

#[test]
fn level_cap_is_enforced() {
    let g = build_graph(Kind::D, 5).unwrap();
    let mut t: ExactTower = Tower::new(&g, 4, 3).unwrap();
    assert!(t.ensure_level(3).is_ok());
    assert!(matches!(
        t.ensure_level(4),
        Err(subfactor::Error::LevelCapExceeded { .. })
    ));
}

#[test]
fn float_tower_agrees_with_exact_traces() {
    let g = build_graph(Kind::E, 6).unwrap();
    let mut exact: ExactTower = Tower::full(&g).unwrap();
    let mut float: subfactor::tower::FloatTower = Tower::full(&g).unwrap();
    exact.ensure_level(3).unwrap();
    float.ensure_level(3).unwrap();
    let x = exact.jones(1, 3).unwrap().mul(&exact.jones(2, 3).unwrap());
    let y = float.jones(1, 3).unwrap().mul(&float.jones(2, 3).unwrap());
    let a = exact.trace(&x).unwrap().to_complex();
    let b = float.trace(&y).unwrap().to_complex();
    assert!((a - b).norm() < 1e-12);
}
