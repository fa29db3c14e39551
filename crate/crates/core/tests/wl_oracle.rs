mod common;

use cohcfg_core::catalog;
use cohcfg_core::wl::{
    coherent_closure, fission, inv_of_group, simultaneous_stabilization, Relation, RelationSet, Stabilization,
};
use cohcfg_core::Permutation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn relations_of(n: usize, m: &[u32], k: u32) -> RelationSet {
    RelationSet {
        n,
        relations: (1..k)
            .map(|c| Relation {
                name: format!("c{c}"),
                pairs: (0..n * n)
                    .filter(|&i| m[i] == c)
                    .map(|i| ((i / n) as u32, (i % n) as u32))
                    .collect(),
            })
            .collect(),
    }
}

#[test]
fn closure_of_random_digraphs_matches_naive_stabilization() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8usize);
        // Arbitrary colored digraphs: three colors on off-diagonal pairs.
        let m: Vec<u32> = (0..n * n)
            .map(|i| if i / n == i % n { 0 } else { rng.gen_range(1..4) })
            .collect();
        let x = coherent_closure(&relations_of(n, &m, 4)).unwrap();
        let oracle = common::naive_stabilize(n, &m);
        assert!(
            common::same_partition(x.matrix().as_slice(), &oracle),
            "seed {seed}"
        );
        assert!(common::satisfies_axioms(n, x.matrix().as_slice()), "seed {seed}");
    }
}

#[test]
fn fission_matches_naive_fission() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8usize);
        let m = common::random_tournament(n, &mut rng);
        let x = coherent_closure(&relations_of(n, &m, 3)).unwrap();
        let pi: Vec<Vec<u32>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..n as u32).filter(|_| rng.gen_bool(0.4)).collect())
            .collect();
        let y = fission(&x, &pi);
        let oracle = common::naive_fission(n, x.matrix().as_slice(), &pi);
        assert!(common::same_partition(y.matrix().as_slice(), &oracle), "seed {seed}");
    }
}

#[test]
fn pair_orbits_match_breadth_first_orbits() {
    for g in catalog::groups() {
        let x = inv_of_group(&g.group);
        let gens: Vec<Vec<u32>> = g.group.generators().iter().map(|p| p.images().to_vec()).collect();
        let oracle = common::pair_orbits(x.n(), &gens);
        assert!(common::same_partition(x.matrix().as_slice(), &oracle), "{}", g.name);
    }
}

#[test]
fn paley_scheme_is_already_coherent() {
    let t = catalog::paley_tournament(7);
    let x = coherent_closure(&t.color_classes()).unwrap();
    assert_eq!(x.rank(), 3);
    let n = 7;
    let mut m = vec![0u32; n * n];
    for (i, j, _) in t.arcs() {
        m[i as usize * n + j as usize] = 1;
        m[j as usize * n + i as usize] = 2;
    }
    assert!(common::satisfies_axioms(n, &m));
}

#[test]
fn reversed_paley_is_algebraically_isomorphic() {
    let t = catalog::paley_tournament(7);
    let negate = Permutation::from_images((0..7).map(|x| (7 - x) % 7).collect()).unwrap();
    let reversed = t.relabeled(&negate);
    // x -> -x reverses every arc of the Paley tournament.
    assert!(t.arcs().iter().all(|&(i, j, _)| reversed.has_arc(j, i)));
    match simultaneous_stabilization(&t.color_classes(), &reversed.color_classes(), &[0]).unwrap() {
        Stabilization::Matched { source, target, .. } => assert_eq!(source.rank(), target.rank()),
        Stabilization::Refused { .. } => panic!("refused"),
    }
}

#[test]
fn drt15_fixture_is_doubly_regular() {
    let t = catalog::drt15();
    let n = t.n() as u32;
    for i in 0..n {
        assert_eq!(t.out_degree(i), 7);
        for j in 0..n {
            if i != j {
                let common_out = (0..n).filter(|&k| t.has_arc(i, k) && t.has_arc(j, k)).count();
                assert_eq!(common_out, 3);
            }
        }
    }
    // 15 is not a prime power, so this is not a Paley tournament.
    assert!(!common::is_schurian(15, catalog::drt15_scheme().matrix().as_slice()).0);
}
