//! Named fixtures: Paley tournaments, odd-order groups and a doubly regular
//! tournament on 15 vertices that is not a Paley tournament.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algo::Tournament;
use crate::ccfg::CoherentConfiguration;
use crate::constructions::{act_on_tuple, ProductPointMap};
use crate::io::parse_trn;
use crate::permgrp::{Permutation, PermutationGroup};
use crate::wl::coherent_closure;

const DRT15: &str = include_str!("../fixtures/drt15.trn");

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermutationGroup,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Tournament on `Z_q` with `i -> j` when `j - i` is a nonzero square, for
/// a prime `q ≡ 3 (mod 4)`.
pub fn paley_tournament(q: u32) -> Tournament {
    assert!(is_prime(q) && q % 4 == 3, "{q} is not a prime congruent to 3 mod 4");
    let squares: Vec<bool> = {
        let mut s = vec![false; q as usize];
        for x in 1..q {
            s[(x * x % q) as usize] = true;
        }
        s
    };
    Tournament::from_orientation(q as usize, |i, j| squares[((j + q - i) % q) as usize])
}

/// `X(T)` for the Paley tournament: a rank-3 antisymmetric scheme.
pub fn paley_scheme(q: u32) -> CoherentConfiguration {
    coherent_closure(&paley_tournament(q).color_classes()).expect("points are in range")
}

/// The doubly regular tournament on 15 vertices shipped as a fixture.
pub fn drt15() -> Tournament {
    parse_trn(DRT15).expect("fixture is a tournament")
}

pub fn drt15_scheme() -> CoherentConfiguration {
    coherent_closure(&drt15().color_classes()).expect("points are in range")
}

pub fn cyclic(n: usize) -> PermutationGroup {
    let shift = Permutation::from_images((0..n as u32).map(|x| (x + 1) % n as u32).collect())
        .expect("a shift is a bijection");
    PermutationGroup::new(n, vec![shift]).expect("degrees agree")
}

/// `{x ↦ ax + b}` over `Z_p` with `a` in the subgroup of order `k` of the
/// multiplicative group.
pub fn frobenius(p: u32, k: u32) -> PermutationGroup {
    assert!(is_prime(p) && (p - 1) % k == 0);
    let pow = |mut b: u64, mut e: u32| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r
    };
    let a = (1..p as u64)
        .map(|g| pow(g, (p - 1) / k))
        .find(|&a| (1..k).all(|e| pow(a, e) != 1))
        .expect("Z_p^* is cyclic");
    let affine = |a: u64, b: u64| {
        Permutation::from_images((0..p as u64).map(|x| ((a * x + b) % p as u64) as u32).collect())
            .expect("an affine map of Z_p is a bijection")
    };
    PermutationGroup::new(p as usize, vec![affine(1, 1), affine(a, 0)]).expect("degrees agree")
}

/// `G1 ≀ G2` in imprimitive action on `(x1, x2) ↦ x1 * n2 + x2`, the block
/// of a point being its second coordinate.
pub fn wreath(g1: &PermutationGroup, g2: &PermutationGroup) -> PermutationGroup {
    let (n1, n2) = (g1.degree(), g2.degree());
    let map = ProductPointMap::new(vec![n1, n2]);
    let n = n1 * n2;
    let mut gens = Vec::new();
    let build = |f: &dyn Fn(Vec<u32>) -> Vec<u32>| {
        let images = (0..n as u32).map(|p| map.encode(&f(map.decode(p)))).collect();
        Permutation::from_images(images).expect("acts on coordinates")
    };
    for g in g1.generators() {
        for block in 0..n2 as u32 {
            gens.push(build(&|c| if c[1] == block { vec![g.image(c[0]), c[1]] } else { c }));
        }
    }
    for g in g2.generators() {
        gens.push(build(&|c| vec![c[0], g.image(c[1])]));
    }
    PermutationGroup::new(n, gens).expect("degrees agree")
}

/// `G ≀ L` in product action on `Γ^m`: `G` on each coordinate, `L` moving
/// coordinates.
pub fn product_action(g: &PermutationGroup, l: &PermutationGroup) -> PermutationGroup {
    let m = l.degree();
    let map = ProductPointMap::power(g.degree(), m);
    let n = map.size();
    let mut gens = Vec::new();
    for h in g.generators() {
        for i in 0..m {
            let images = (0..n as u32)
                .map(|p| {
                    let mut t = map.decode(p);
                    t[i] = h.image(t[i]);
                    map.encode(&t)
                })
                .collect();
            gens.push(Permutation::from_images(images).expect("acts on one coordinate"));
        }
    }
    for h in l.generators() {
        let images = (0..n as u32)
            .map(|p| map.encode(&act_on_tuple(&map.decode(p), h)))
            .collect();
        gens.push(Permutation::from_images(images).expect("moves coordinates"));
    }
    PermutationGroup::new(n, gens).expect("degrees agree")
}

/// `Z3 ≀ Z3 ≀ Z3` on 27 points.
pub fn z3_wr_z3_wr_z3() -> PermutationGroup {
    wreath(&wreath(&cyclic(3), &cyclic(3)), &cyclic(3))
}

/// The automorphism group of the cyclic scheme of order 3 raised to the
/// cyclic group of degree 3: `Z3 ≀ Z3` in product action on 27 points.
pub fn z3_exp_z3() -> PermutationGroup {
    product_action(&cyclic(3), &cyclic(3))
}

fn named(name: &str, group: PermutationGroup) -> NamedGroup {
    NamedGroup {
        name: name.to_string(),
        group,
    }
}

/// Every named odd-order group, smallest degree first.
pub fn groups() -> Vec<NamedGroup> {
    let z3 = cyclic(3);
    let z5 = cyclic(5);
    let mut out = vec![
        named("cyclic-3", cyclic(3)),
        named("cyclic-5", cyclic(5)),
        named("cyclic-7", cyclic(7)),
        named("frobenius-21", frobenius(7, 3)),
        named("z3-x-z5", z3.direct_product(&z5)),
        named("cyclic-9", cyclic(9)),
        named("z3-wr-z3", wreath(&z3, &z3)),
        named("cyclic-11", cyclic(11)),
        named("frobenius-55", frobenius(11, 5)),
        named("cyclic-13", cyclic(13)),
        named("frobenius-39", frobenius(13, 3)),
        named("cyclic-15", cyclic(15)),
        named("z5-wr-z3", wreath(&z5, &z3)),
        named("z3-wr-z5", wreath(&z3, &z5)),
        named("frobenius-57", frobenius(19, 3)),
        named("frobenius-253", frobenius(23, 11)),
        named("z3-wr-z3-wr-z3", z3_wr_z3_wr_z3()),
        named("z3-exp-z3", z3_exp_z3()),
    ];
    out.sort_by_key(|g| g.group.degree());
    out
}

pub fn group(name: &str) -> Option<PermutationGroup> {
    groups().into_iter().find(|g| g.name == name).map(|g| g.group)
}

/// Named tournaments: Paley 7, 11, 19, 23 and the 15-vertex fixture.
pub fn tournaments() -> Vec<(String, Tournament)> {
    let mut out: Vec<(String, Tournament)> = [7, 11, 19, 23]
        .into_iter()
        .map(|q| (format!("paley-{q}"), paley_tournament(q)))
        .collect();
    out.push(("drt-15".to_string(), drt15()));
    out
}

/// A random odd-order group of degree at most `max_degree`: a direct
/// product of up to three catalog groups, cut down to a random nonempty
/// subset of generators and relabeled. The seed is kept in the name.
pub fn random_odd_group(seed: u64, max_degree: usize) -> NamedGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = groups();
    let mut group: Option<PermutationGroup> = None;
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let room = max_degree - group.as_ref().map_or(0, |g| g.degree());
        let fits: Vec<&NamedGroup> = pool.iter().filter(|g| g.group.degree() <= room).collect();
        let Some(pick) = fits.choose(&mut rng) else { break };
        parts.push(pick.name.clone());
        group = Some(match group {
            None => pick.group.clone(),
            Some(g) => g.direct_product(&pick.group),
        });
    }
    let g = group.expect("the smallest catalog group fits");
    let n = g.degree();
    let mut gens: Vec<Permutation> = g
        .generators()
        .iter()
        .filter(|_| rng.gen_bool(0.8))
        .cloned()
        .collect();
    if gens.is_empty() {
        gens.push(g.generators()[0].clone());
    }
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(&mut rng);
    let relabel = Permutation::from_images(images).expect("a shuffle is a bijection");
    let group = PermutationGroup::new(n, gens).expect("degrees agree").relabeled(&relabel);
    NamedGroup {
        name: format!("random(seed={seed}: {})", parts.join(" x ")),
        group,
    }
}
