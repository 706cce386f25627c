use std::cmp::Ordering;
use std::collections::BTreeMap;

use subfactor::coxeter::{build_graph, pointed_by_name, pointed_catalogue, Kind};
use subfactor::field::{four_cos_squared, sign};
use subfactor::ghj::{
    conjugated_towers, ghj_index, ghj_principal_graph, inclusion_levels, is_commuting_square,
    tl_block_sizes, GhjPolicy, Node, Parity,
};
use subfactor::tower::{ExactTower, Subalgebra, Tower};
use subfactor::{CycNumber, Error};

fn six_plus_four_root_two() -> CycNumber {
    CycNumber::from_integer(6) + CycNumber::sqrt2() * CycNumber::from_integer(4)
}

#[test]
fn d5_pointed_principal_graph() {
    let p = pointed_by_name("D5,2").unwrap();
    let r = ghj_principal_graph(&p, GhjPolicy::default()).unwrap();
    assert_eq!(r.norm_squared, six_plus_four_root_two());
    assert_eq!(r.depth, 3);
    assert_eq!(r.star, Node::Label(0));
    // labels 0, 2, 4, 6 against the trivalent vertex 0 and the long-arm end 2
    let edges: Vec<(usize, usize, u128)> = vec![
        (0, 0, 1),
        (2, 0, 2),
        (2, 2, 1),
        (4, 0, 2),
        (4, 2, 1),
        (6, 0, 1),
    ];
    assert_eq!(r.edges, edges);
    assert_eq!(r.stable_level, 6);
    // (2+√2)² is the largest root of x² − 12x + 4
    assert_eq!(r.norm_polynomial.degree(), Some(2));
}

#[test]
fn d5_index_is_the_square_of_the_intermediate_index() {
    let p = pointed_by_name("D5,2").unwrap();
    let idx = ghj_index(&p, GhjPolicy::default()).unwrap();
    let inter = CycNumber::from_integer(2) + CycNumber::sqrt2();
    assert_eq!(idx, &inter * &inter);
}

#[test]
fn d5_low_levels_by_hand() {
    let g = build_graph(Kind::D, 5).unwrap();
    let levels = inclusion_levels(&g, 0, 4).unwrap();
    let as_map = |n: usize| levels[n].edges.clone();
    assert_eq!(as_map(0), BTreeMap::from([((0, 0), 1)]));
    assert_eq!(
        as_map(1),
        BTreeMap::from([((1, 1), 1), ((1, 3), 1), ((1, 4), 1)])
    );
    assert_eq!(
        as_map(2),
        BTreeMap::from([((0, 0), 1), ((2, 0), 2), ((2, 2), 1)])
    );
    assert_eq!(
        as_map(4),
        BTreeMap::from([
            ((0, 0), 1),
            ((2, 0), 2),
            ((2, 2), 1),
            ((4, 0), 2),
            ((4, 2), 1)
        ])
    );
    assert_eq!(levels[4].vertices, BTreeMap::from([(0, 10), (2, 4)]));
}

#[test]
fn a_n_end_star_gives_a_n() {
    for n in 2..=9 {
        let p = pointed_by_name(&format!("A{n}")).unwrap();
        let r = ghj_principal_graph(&p, GhjPolicy::default()).unwrap();
        assert_eq!(r.node_count(), n, "A{n}");
        assert!(r.edges.iter().all(|e| e.2 == 1));
        assert_eq!(r.edges.len(), n - 1);
        assert_eq!(r.depth, n - 1);
        assert_eq!(r.norm_squared, four_cos_squared(n as u32 + 1));
    }
}

#[test]
fn inclusion_counts_agree_with_the_generated_algebra() {
    // pTL_n inside the corner tower at the trivalent vertex of D5
    let g = build_graph(Kind::D, 5).unwrap();
    let mut corner: ExactTower = Tower::corner(&g, 0, 8).unwrap();
    corner.ensure_level(5).unwrap();
    let levels = inclusion_levels(&g, 0, 5).unwrap();
    for (n, level) in levels.iter().enumerate().take(6).skip(1) {
        let gens: Vec<_> = (1..n).map(|i| corner.jones(i, n).unwrap()).collect();
        let tl = corner.generated_subalgebra(&gens, n).unwrap();
        let sizes = tl_block_sizes(8, n);
        let expected: u128 = level
            .edges
            .keys()
            .map(|k| k.0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|j| sizes[&j] * sizes[&j])
            .sum();
        assert_eq!(tl.len() as u128, expected, "level {n}");
        assert_eq!(
            corner.dim(n) as u128,
            level.vertices.values().map(|c| c * c).sum::<u128>()
        );
    }
}

#[test]
fn e7_and_e8_need_a_higher_cap() {
    for name in ["E7,1", "E8,2"] {
        let p = pointed_by_name(name).unwrap();
        let err = ghj_principal_graph(&p, GhjPolicy::default()).unwrap_err();
        assert_eq!(err, Error::NotStabilized { cap: 14 });
        let policy = GhjPolicy {
            level_cap: 40,
            ..GhjPolicy::default()
        };
        assert!(ghj_principal_graph(&p, policy).is_ok());
    }
}

#[test]
fn index_rigidity_over_the_catalogue() {
    let policy = GhjPolicy {
        level_cap: 40,
        ..GhjPolicy::default()
    };
    let four = CycNumber::from_integer(4);
    for p in pointed_catalogue(8, 8) {
        let r = ghj_principal_graph(&p, policy).unwrap();
        let above = sign(&(&r.norm_squared - &four)) != Ordering::Less;
        let discrete = (3..=60).any(|m| four_cos_squared(m) == r.norm_squared);
        assert!(above || discrete, "{}", p.name());
    }
}

#[test]
fn odd_parity_gives_another_graph() {
    let p = pointed_by_name("D5,2").unwrap();
    let odd = GhjPolicy {
        parity: Parity::Odd,
        ..GhjPolicy::default()
    };
    let r = ghj_principal_graph(&p, odd).unwrap();
    assert_eq!(r.star, Node::Label(1));
    assert_eq!(r.stable_level % 2, 1);
}

fn d52_corner(levels: usize) -> ExactTower {
    let p = pointed_by_name("D5,2").unwrap();
    let mut t = Tower::pointed(&p, 12).unwrap();
    t.ensure_level(levels).unwrap();
    t
}

#[test]
fn shift_identity_and_commuting_squares() {
    let t = d52_corner(4);
    let towers = conjugated_towers(&t, 3).unwrap();
    for n in 1..=2 {
        assert!(
            is_commuting_square(&t, &towers, n, false).unwrap(),
            "P at {n}"
        );
        assert!(
            is_commuting_square(&t, &towers, n, true).unwrap(),
            "Q at {n}"
        );
    }
}

#[test]
fn full_tower_first_commuting_square() {
    let g = build_graph(Kind::D, 5).unwrap();
    let mut t: ExactTower = Tower::full(&g).unwrap();
    t.ensure_level(2).unwrap();
    let towers = conjugated_towers(&t, 1).unwrap();
    assert!(is_commuting_square(&t, &towers, 1, false).unwrap());
}

#[test]
fn conjugated_floors_contain_the_shifted_projections() {
    let t = d52_corner(4);
    let towers = conjugated_towers(&t, 3).unwrap();
    for n in 2..=3 {
        for i in 2..=n {
            let e = t.jones(i, n + 1).unwrap();
            for sub in [towers.p(n + 1), towers.q(n + 1)] {
                assert_eq!(t.conditional_expectation(&e, sub).unwrap(), e);
            }
        }
    }
    // e_1 itself is moved
    let e1 = t.jones(1, 2).unwrap();
    assert_ne!(t.conditional_expectation(&e1, towers.p(2)).unwrap(), e1);
    assert!(matches!(
        towers.p(1),
        Subalgebra::Conjugated { floor: 0, .. }
    ));
}
