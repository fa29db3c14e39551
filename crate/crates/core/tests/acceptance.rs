//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so every verdict is printed; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cohcfg_core::algo::{list_isomorphisms, recognize_schurity, tournament_pipeline, Tournament};
use cohcfg_core::bases::{
    base_number_search, bounded_base_search, build_exponentiation_base, build_thin_generalized_base,
    build_wreath_generalized_base, is_generalized_base, is_thin, sufficient_base2_checks, BaseKind,
    DEFAULT_BUDGET,
};
use cohcfg_core::catalog;
use cohcfg_core::ccfg::build_config;
use cohcfg_core::constructions::{exponentiation, wreath_product};
use cohcfg_core::wl::{coherent_closure, inv_of_group, AlgebraicIsomorphism, Relation, RelationSet};
use cohcfg_core::{CoherentConfiguration, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, format!("took {t:.1?}, limit {limit:?}"))
}

fn colors(x: &CoherentConfiguration) -> Vec<u32> {
    x.matrix().as_slice().to_vec()
}

fn z3() -> CoherentConfiguration {
    inv_of_group(&catalog::cyclic(3))
}

/// Configurations on at most 15 points used by the consistency criteria.
fn small_instances() -> Vec<(String, CoherentConfiguration)> {
    let mut out: Vec<(String, CoherentConfiguration)> = catalog::groups()
        .into_iter()
        .filter(|g| g.group.degree() <= 15)
        .map(|g| (format!("inv({})", g.name), inv_of_group(&g.group)))
        .collect();
    out.push(("paley-7".into(), catalog::paley_scheme(7)));
    out.push(("paley-11".into(), catalog::paley_scheme(11)));
    out.push(("drt-15".into(), catalog::drt15_scheme()));
    out.push(("z3 wr z3".into(), wreath_product(&z3(), &z3())));
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for seed in 0..200u64 {
        let g = catalog::random_odd_group(seed, 27);
        check(g.group.is_odd_order(), format!("{} has even order", g.name))?;
        let x = build_config(g.group.pair_orbits()).map_err(|e| format!("{}: {e}", g.name))?;
        x.verify_identities().map_err(|e| format!("{}: {e}", g.name))?;
        check(common::satisfies_axioms(x.n(), &colors(&x)), format!("{}: oracle axiom check", g.name))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("200 groups validated in {:.1?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let mut by_size = [0usize; 8];
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=7usize);
        let m = common::random_tournament(n, &mut rng);
        let arcs: Vec<(u32, u32)> = (0..n * n)
            .filter(|&i| m[i] == 1)
            .map(|i| ((i / n) as u32, (i % n) as u32))
            .collect();
        let seeds = RelationSet {
            n,
            relations: vec![Relation {
                name: "arc".into(),
                pairs: arcs,
            }],
        };
        let x = coherent_closure(&seeds).map_err(|e| e.to_string())?;
        let oracle = common::naive_stabilize(n, &m);
        check(
            common::same_partition(&colors(&x), &oracle),
            format!("seed {seed} (n = {n}): partitions differ"),
        )?;
        by_size[n] += 1;
    }
    Ok(format!("500 tournaments agree exactly, by size {:?}", &by_size[1..]))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut instances: Vec<(String, CoherentConfiguration)> = [7, 11, 19, 23]
        .into_iter()
        .map(|q| (format!("paley-{q}"), catalog::paley_scheme(q)))
        .collect();
    instances.push(("z3 exp z3".into(), exponentiation(&z3(), &catalog::cyclic(3))));
    let mut found = Vec::new();
    for (name, x) in &instances {
        let cert = bounded_base_search(x, BaseKind::Base, 3, DEFAULT_BUDGET)
            .map_err(|e| format!("{name}: {e}"))?
            .ok_or(format!("{name}: no base of size at most 3"))?;
        let pi: Vec<Vec<u32>> = cert.points().iter().map(|&p| vec![p]).collect();
        check(
            common::is_discrete(&common::naive_fission(x.n(), &colors(x), &pi)),
            format!("{name}: witness rejected by the oracle"),
        )?;
        found.push(format!("{name} b={}", cert.size()));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} in {:.1?}", found.join(", "), start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for g in catalog::groups().into_iter().filter(|g| g.group.degree() <= 15) {
        let x = inv_of_group(&g.group);
        let cert = bounded_base_search(&x, BaseKind::Generalized, 1, DEFAULT_BUDGET)
            .map_err(|e| format!("{}: {e}", g.name))?
            .ok_or(format!("{}: no generalized base of size at most 1", g.name))?;
        check(
            common::is_discrete(&common::naive_fission(x.n(), &colors(&x), &cert.sets)),
            format!("{}: witness rejected by the oracle", g.name),
        )?;
        count += 1;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("gb <= 1 for {count} groups in {:.1?}", start.elapsed()))
}

fn criterion_5() -> Outcome {
    let mut found = Vec::new();
    for q in [7, 11] {
        let x = catalog::paley_scheme(q);
        let gb = bounded_base_search(&x, BaseKind::Generalized, 1, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .ok_or(format!("paley-{q}: gb > 1"))?;
        let b = bounded_base_search(&x, BaseKind::Base, 3, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .ok_or(format!("paley-{q}: b > 3"))?;
        let points: Vec<Vec<u32>> = b.points().iter().map(|&p| vec![p]).collect();
        for (what, pi) in [("gb", &gb.sets), ("b", &points)] {
            check(
                common::is_discrete(&common::naive_fission(x.n(), &colors(&x), pi)),
                format!("paley-{q}: {what} witness {pi:?} rejected by the oracle"),
            )?;
        }
        found.push(format!("paley-{q} gb witness {:?}, b witness {:?}", gb.sets, b.points()));
    }
    Ok(found.join("; "))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut paley7 = 0;
    for (name, x) in small_instances() {
        let listed: BTreeSet<Vec<u32>> = list_isomorphisms(&x, &x, &AlgebraicIsomorphism::identity(x.rank()))
            .map_err(|e| format!("{name}: {e}"))?
            .into_iter()
            .map(Permutation::into_images)
            .collect();
        let oracle: BTreeSet<Vec<u32>> = common::automorphisms(x.n(), &colors(&x)).into_iter().collect();
        check(
            listed == oracle,
            format!("{name}: {} listed, {} by backtrack", listed.len(), oracle.len()),
        )?;
        if name == "paley-7" {
            paley7 = listed.len();
        }
        checked += 1;
    }
    check(paley7 == 21, format!("paley-7 has {paley7} automorphisms"))?;
    Ok(format!("{checked} instances agree; paley-7 has 21 automorphisms"))
}

fn criterion_7() -> Outcome {
    let mut accepted = 0;
    for g in catalog::groups() {
        let x = inv_of_group(&g.group);
        let verdict = recognize_schurity(&x).map_err(|e| format!("{}: {e}", g.name))?;
        let h = verdict.group().ok_or(format!("{} rejected", g.name))?;
        let gens: Vec<Vec<u32>> = h.generators().iter().map(|p| p.images().to_vec()).collect();
        check(
            common::same_partition(&colors(&x), &common::pair_orbits(x.n(), &gens)),
            format!("{}: 2-orbits of H differ from the colors", g.name),
        )?;
        check(
            gens.iter().all(|p| {
                let c = colors(&x);
                let n = x.n();
                (0..n * n).all(|i| c[i] == c[p[i / n] as usize * n + p[i % n] as usize])
            }),
            format!("{}: H does not preserve colors", g.name),
        )?;
        let oracle = common::count_automorphisms(x.n(), &colors(&x));
        check(
            h.order() == oracle.into() && h.contains_group(&g.group),
            format!("{}: |H| = {}, oracle |Aut| = {oracle}", g.name, h.order()),
        )?;
        accepted += 1;
    }
    let drt = catalog::drt15_scheme();
    let verdict = recognize_schurity(&drt).map_err(|e| e.to_string())?;
    check(!verdict.is_schurian(), "drt-15 accepted")?;
    let (schurian, order) = common::is_schurian(drt.n(), &colors(&drt));
    check(!schurian, "oracle finds drt-15 schurian")?;
    Ok(format!("{accepted} catalog groups accepted with |H| = |Aut| by oracle; drt-15 rejected (|Aut| = {order})"))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let z = z3();
    let wr = wreath_product(&z, &z);
    let gb = |x: &CoherentConfiguration| base_number_search(x, BaseKind::Generalized, DEFAULT_BUDGET).map(|c| c.sets);
    let b = |x: &CoherentConfiguration| base_number_search(x, BaseKind::Base, DEFAULT_BUDGET).map(|c| c.points());
    let pi1 = gb(&z).map_err(|e| e.to_string())?;
    let pi2 = pi1.clone();
    let b1 = b(&z).map_err(|e| e.to_string())?;
    let oracle_ok = |x: &CoherentConfiguration, sets: &[Vec<u32>]| {
        is_generalized_base(x, sets).0 && common::is_discrete(&common::naive_fission(x.n(), &colors(x), sets))
    };

    let built = build_wreath_generalized_base(&z, &z, &pi1, &pi2).map_err(|e| e.to_string())?;
    let bound = pi1.len().max(pi2.len());
    let ok = oracle_ok(&wr, &built.sets) && built.size() <= bound;
    lines.push(format!("wreath on z3 wr z3: size {} bound {bound} {}", built.size(), if ok { "ok" } else { "FAIL" }));
    if !ok {
        failures.push("wreath");
    }

    let built = build_thin_generalized_base(&z, &z, &b1, &pi2).map_err(|e| e.to_string())?;
    let bound = b1.len() + pi2.len().saturating_sub(b1.len().div_ceil(2));
    let valid = oracle_ok(&wr, &built.sets) && is_thin(3, &built.sets);
    let ok = valid && built.size() <= bound;
    lines.push(format!(
        "thin on z3 wr z3: size {} bound {bound}, valid thin generalized base {valid} {}",
        built.size(),
        if ok { "ok" } else { "FAIL" }
    ));
    if !ok {
        failures.push("thin");
    }

    let l = catalog::cyclic(3);
    let pi_l = gb(&inv_of_group(&l)).map_err(|e| e.to_string())?;
    let exp = exponentiation(&z, &l);
    let built = build_exponentiation_base(&z, &l, &b1, &pi_l).map_err(|e| e.to_string())?;
    let by = b1.len();
    let bound = by + pi_l.len().saturating_sub((by - 1).div_ceil(2));
    let ok = oracle_ok(&exp, &built.sets) && built.sets.iter().all(|s| s.len() == 1) && built.size() <= bound;
    lines.push(format!("exponentiation on z3 exp z3: size {} bound {bound} {}", built.size(), if ok { "ok" } else { "FAIL" }));
    if !ok {
        failures.push("exponentiation");
    }

    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(format!("{} [failed: {}]", lines.join("; "), failures.join(", ")))
    }
}

fn criterion_9() -> Outcome {
    let mut confirmed = Vec::new();
    let mut skipped = 0;
    for (name, x) in small_instances() {
        if !x.is_homogeneous() {
            continue;
        }
        let verdicts = sufficient_base2_checks(&x).map_err(|e| format!("{name}: {e}"))?;
        if !verdicts.any() {
            skipped += 1;
            continue;
        }
        let b = common::base_number(x.n(), &colors(&x), 2);
        check(b.is_some(), format!("{name}: a verdict holds but b > 2"))?;
        confirmed.push(format!("{name} b={}", b.unwrap()));
    }
    Ok(format!("confirmed {}; {skipped} with no verdict", confirmed.join(", ")))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let t = catalog::paley_tournament(7);
    let arcs = |t: &Tournament| t.arcs().into_iter().map(|(i, j, _)| (i, j)).collect::<BTreeSet<_>>();
    let mut rng = ChaCha8Rng::seed_from_u64(20110511);
    for round in 0..50 {
        let mut images: Vec<u32> = (0..7).collect();
        images.shuffle(&mut rng);
        let pi = Permutation::from_images(images).unwrap();
        let other = t.relabeled(&pi);
        let report = tournament_pipeline(&t, Some(&other)).map_err(|e| e.to_string())?;
        let iso = report.iso.ok_or("no comparison")?;
        check(iso.direct.len() == 21, format!("relabeling {round}: {} isomorphisms", iso.direct.len()))?;
        check(iso.routes_agree && iso.direct == iso.glued, format!("relabeling {round}: routes differ"))?;
        let target = arcs(&other);
        check(
            iso.direct.iter().all(|f| {
                arcs(&t).into_iter().all(|(i, j)| target.contains(&(f.image(i), f.image(j))))
            }),
            format!("relabeling {round}: a listed map is not an isomorphism"),
        )?;
        check(iso.direct.contains(&pi), format!("relabeling {round}: the relabeling is missing"))?;
    }
    let reversed = t.with_arc_reversed(0, 1);
    let report = tournament_pipeline(&t, Some(&reversed)).map_err(|e| e.to_string())?;
    let iso = report.iso.ok_or("no comparison")?;
    check(!iso.isomorphic && iso.direct.is_empty() && iso.glued.is_empty(), "reversed arc: isomorphisms found")?;
    check(
        common::isomorphisms(7, &tournament_colors(&t), &tournament_colors(&reversed), 1).is_empty(),
        "oracle finds the reversed tournament isomorphic",
    )?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("50 relabelings, 21 isomorphisms each, routes agree; reversed arc gives none; {:.1?}", start.elapsed()))
}

fn tournament_colors(t: &Tournament) -> Vec<u32> {
    let n = t.n();
    let mut m = vec![0u32; n * n];
    for (i, j, _) in t.arcs() {
        m[i as usize * n + j as usize] = 1;
        m[j as usize * n + i as usize] = 2;
    }
    m
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axioms of inv(G) for random odd-order groups", criterion_1),
        ("closure equals naive stabilization", criterion_2),
        ("b <= 3 for primitive catalog schemes", criterion_3),
        ("gb <= 1 for odd-order groups of degree <= 15", criterion_4),
        ("Paley 7 and 11 base witnesses", criterion_5),
        ("isomorphism listing equals backtrack", criterion_6),
        ("schurity recognition", criterion_7),
        ("constructive base builders", criterion_8),
        ("sufficient conditions imply b <= 2", criterion_9),
        ("tournament pipeline end to end", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
