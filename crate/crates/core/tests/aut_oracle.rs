mod common;

use std::collections::BTreeSet;

use cohcfg_core::algo::{find_isomorphism, list_isomorphisms, recognize_schurity, test_config_group};
use cohcfg_core::catalog;
use cohcfg_core::constructions::{glue_disjoint_union, wreath_product};
use cohcfg_core::permgrp::color_aut_backtrack;
use cohcfg_core::wl::{coherent_closure, inv_of_group, AlgebraicIsomorphism, Relation, RelationSet};
use cohcfg_core::{CoherentConfiguration, Permutation, PermutationGroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tournament_closure(n: usize, rng: &mut ChaCha8Rng) -> CoherentConfiguration {
    let m = common::random_tournament(n, rng);
    let arcs = (0..n * n)
        .filter(|&i| m[i] == 1)
        .map(|i| ((i / n) as u32, (i % n) as u32))
        .collect();
    coherent_closure(&RelationSet {
        n,
        relations: vec![Relation {
            name: "arc".into(),
            pairs: arcs,
        }],
    })
    .unwrap()
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

#[test]
fn backtrack_order_matches_count() {
    for g in catalog::groups().into_iter().filter(|g| g.group.degree() <= 15) {
        let x = inv_of_group(&g.group);
        let aut = color_aut_backtrack(x.matrix(), None).unwrap();
        let oracle = common::count_automorphisms(x.n(), x.matrix().as_slice());
        assert_eq!(aut.order(), oracle.into(), "{}", g.name);
    }
}

#[test]
fn isomorphisms_between_relabeled_copies() {
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=9usize);
        let x = tournament_closure(n, &mut rng);
        let pi = random_permutation(n, &mut rng);
        let y = x.relabeled(&pi);
        let phi = AlgebraicIsomorphism::identity(x.rank());
        let listed: BTreeSet<Vec<u32>> = list_isomorphisms(&x, &y, &phi)
            .unwrap()
            .into_iter()
            .map(Permutation::into_images)
            .collect();
        let oracle: BTreeSet<Vec<u32>> = common::isomorphisms(n, x.matrix().as_slice(), y.matrix().as_slice(), usize::MAX)
            .into_iter()
            .collect();
        assert_eq!(listed, oracle, "seed {seed}");
        assert!(listed.contains(pi.images()), "seed {seed}");
        assert!(find_isomorphism(&x, &y, &phi).unwrap().is_some());
    }
}

#[test]
fn schurity_verdicts_match_brute_force() {
    for seed in 0..150u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=9usize);
        let x = tournament_closure(n, &mut rng);
        let (schurian, order) = common::is_schurian(n, x.matrix().as_slice());
        let verdict = recognize_schurity(&x).unwrap();
        assert_eq!(verdict.is_schurian(), schurian, "seed {seed}");
        if let Some(h) = verdict.group() {
            assert_eq!(h.order(), order.into(), "seed {seed}");
            assert_eq!(test_config_group(&x, h).unwrap(), None);
        }
    }
}

/// Small tournaments all close to schurian configurations, so the negative
/// side is exercised with the doubly regular tournament on 15 vertices.
#[test]
fn non_schurian_instances_are_rejected() {
    let drt = catalog::drt15_scheme();
    let z3 = inv_of_group(&catalog::cyclic(3));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = vec![
        ("drt15 wr z3", wreath_product(&drt, &z3)),
        (
            "drt15 + z3",
            glue_disjoint_union(
                &[drt.clone(), z3.clone()],
                &[vec![Some(AlgebraicIsomorphism::identity(3)), None], vec![None, Some(AlgebraicIsomorphism::identity(3))]],
                &PermutationGroup::trivial(2),
            )
            .unwrap()
            .config,
        ),
    ];
    for _ in 0..3 {
        cases.push(("relabeled drt15", drt.relabeled(&random_permutation(15, &mut rng))));
    }
    for (name, x) in cases {
        assert!(!recognize_schurity(&x).unwrap().is_schurian(), "{name}");
        // Plain backtracking without refinement is too slow on 45 points.
        if x.n() <= 18 {
            assert!(!common::is_schurian(x.n(), x.matrix().as_slice()).0, "{name}");
        }
    }
}

#[test]
fn schurity_of_relabeled_catalog_schemes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [7, 11, 19] {
        let x = catalog::paley_scheme(q);
        let y = x.relabeled(&random_permutation(x.n(), &mut rng));
        let h = recognize_schurity(&y).unwrap();
        assert_eq!(h.group().unwrap().order(), (q * (q - 1) / 2).into());
    }
}
