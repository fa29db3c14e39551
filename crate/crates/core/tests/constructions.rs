mod common;

use cohcfg_core::algo::recognize_schurity;
use cohcfg_core::catalog;
use cohcfg_core::constructions::{exponentiation, glue_disjoint_union, wreath_product};
use cohcfg_core::permgrp::color_aut_backtrack;
use cohcfg_core::wl::{inv_of_group, AlgebraicIsomorphism};
use cohcfg_core::{CoherentConfiguration, PermutationGroup};

fn z(n: usize) -> CoherentConfiguration {
    inv_of_group(&catalog::cyclic(n))
}

fn elements(g: &PermutationGroup) -> Vec<Vec<u32>> {
    let gens: Vec<Vec<u32>> = g.generators().iter().map(|p| p.images().to_vec()).collect();
    common::group_elements(g.degree(), &gens)
}

#[test]
fn exponentiation_rank_is_a_burnside_count() {
    let frob = catalog::frobenius(7, 3);
    for (y, l) in [
        (z(3), catalog::cyclic(3)),
        (z(5), catalog::cyclic(3)),
        (z(3), catalog::cyclic(5)),
        (inv_of_group(&frob), catalog::cyclic(3)),
    ] {
        let x = exponentiation(&y, &l);
        let expected = common::burnside_count(&elements(&l), y.rank() as u64);
        assert_eq!(x.rank() as u64, expected);
        assert!(common::satisfies_axioms(x.n(), x.matrix().as_slice()));
        // Antisymmetric Y and odd |L| give an antisymmetric result.
        assert!(x.is_antisymmetric());
    }
}

#[test]
fn wreath_automorphisms_contain_the_group_wreath_product() {
    let x = wreath_product(&z(3), &z(3));
    let aut = color_aut_backtrack(x.matrix(), None).unwrap();
    let w = catalog::wreath(&catalog::cyclic(3), &catalog::cyclic(3));
    assert!(aut.contains_group(&w));
    assert_eq!(aut.order(), 81u32.into());
    let oracle = common::count_automorphisms(9, x.matrix().as_slice());
    assert_eq!(oracle, 81);
}

#[test]
fn wreath_preserves_antisymmetry_and_rank() {
    let p7 = catalog::paley_scheme(7);
    for (a, b) in [(z(3), z(5)), (p7.clone(), z(3)), (z(3), p7)] {
        let x = wreath_product(&a, &b);
        assert!(x.is_antisymmetric());
        assert_eq!(x.rank(), a.rank() + b.rank() - 1);
        assert!(common::satisfies_axioms(x.n(), x.matrix().as_slice()));
    }
}

#[test]
fn exponentiation_of_cyclic_scheme() {
    let x = exponentiation(&z(3), &catalog::cyclic(3));
    assert_eq!((x.n(), x.rank()), (27, 11));
    // Distance 1 in the Hamming metric generates a proper equivalence.
    assert!(!x.is_primitive());
    let h = recognize_schurity(&x).unwrap();
    let h = h.group().expect("the exponentiation of a schurian scheme is schurian");
    assert!(h.contains_group(&catalog::z3_exp_z3()));
    assert_eq!(h.order(), 81u32.into());
}

#[test]
fn glued_copies_of_paley_seven() {
    let p = catalog::paley_scheme(7);
    let id = Some(AlgebraicIsomorphism::identity(p.rank()));
    let psi = vec![vec![id.clone(); 3]; 3];
    let g = glue_disjoint_union(&[p.clone(), p.clone(), p], &psi, &catalog::cyclic(3)).unwrap();
    let aut = recognize_schurity(&g.config).unwrap();
    let aut = aut.group().expect("copies of a schurian scheme glue to a schurian one");
    let orbits = aut.all_orbits();
    assert_eq!(orbits.len(), 1, "Aut moves the parts around");
}

#[test]
fn glued_copies_of_drt15_are_not_schurian() {
    let d = catalog::drt15_scheme();
    let id = Some(AlgebraicIsomorphism::identity(d.rank()));
    let psi = vec![vec![id.clone(); 3]; 3];
    let g = glue_disjoint_union(&[d.clone(), d.clone(), d], &psi, &catalog::cyclic(3)).unwrap();
    assert!(!recognize_schurity(&g.config).unwrap().is_schurian());
}
