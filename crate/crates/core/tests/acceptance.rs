//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use igwreath::biorder::{all_squares, enumerate_idempotents, is_rectangular_band, singular_witness, WitnessKind, DEFAULT_MAX_MONOID};
use igwreath::cli::{expected_order, pipeline, verify, Caps};
use igwreath::endo::Endo;
use igwreath::fpgroup::{abelianization, eliminate_short_relators, todd_coxeter, word_equal, DEFAULT_MAX_COSETS};
use igwreath::presentation::{
    build_gr_presentation, build_quotient_presentation, evaluate, gen, gen_inv, schreier_build, GrIndex, RelTag,
};
use igwreath::reduction::{connectivity, decompose, is_simple_form, rising_point};
use igwreath::rees::{build_sandwich, q_of, DEFAULT_MAX_ENTRIES};
use igwreath::{Group, Presentation, WreathElem};
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn groups(names: &[&str]) -> Vec<Group> {
    names
        .iter()
        .map(|s| igwreath::make_group(&s.parse().unwrap()).unwrap())
        .collect()
}

fn group(name: &str) -> Group {
    groups(&[name]).remove(0)
}

/// `⟨x_a : x_a x_b = x_{ab}⟩`, the multiplication table as a presentation.
fn table_presentation(g: &Group) -> Presentation {
    let m = g.order() as u32;
    let mut p = Presentation::new((0..m).map(|a| format!("x{a}")).collect());
    for a in 0..m {
        for b in 0..m {
            p.push(&[gen(a), gen(b), gen_inv(g.mul(a, b))], RelTag::Derived);
        }
    }
    p
}

const DESK: [(usize, &str, usize); 10] = [
    (4, "trivial", 1),
    (4, "trivial", 2),
    (5, "trivial", 2),
    (5, "trivial", 3),
    (6, "trivial", 4),
    (4, "Z2", 1),
    (4, "Z2", 2),
    (5, "Z2", 2),
    (5, "Z3", 2),
    (5, "Z2", 3),
];

fn desk_orders() -> Check {
    let mut worst = Duration::ZERO;
    for (n, name, r) in DESK {
        let g = group(name);
        let start = Instant::now();
        let rep = verify(&g, n, r, Caps::default()).map_err(|e| format!("n={n} r={r} {name}: {e}"))?;
        let took = start.elapsed();
        worst = worst.max(took);
        let want = expected_order(&g, r).unwrap();
        ensure(rep.order == Some(want), || format!("n={n} r={r} {name}: order {:?}, expected {want}", rep.order))?;
        ensure(took < Duration::from_secs(300), || format!("n={n} r={r} {name}: took {took:?}"))?;
    }
    Ok(format!("10 instances, slowest {:.2}s", worst.as_secs_f64()))
}

fn rank_one() -> Check {
    for g in groups(&["Z2", "Z3", "S3"]) {
        let p = pipeline(&g, 4, 1, Caps::default()).map_err(|e| e.to_string())?;
        let pres = p.simplified.presentation();
        let order = todd_coxeter(pres, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?.order();
        ensure(order == g.order(), || format!("{}: order {order}", g.label()))?;
        let ab = abelianization(pres).map_err(|e| e.to_string())?;
        let want = abelianization(&table_presentation(&g)).map_err(|e| e.to_string())?;
        ensure(ab == want, || format!("{}: abelianization {ab}, group has {want}", g.label()))?;
    }
    Ok("Z2, Z3, S3 recovered with matching abelianizations".into())
}

fn rank_n_minus_one() -> Check {
    let mut seen = Vec::new();
    for g in groups(&["trivial", "Z2"]) {
        let m = build_sandwich(&g, 4, 3, DEFAULT_MAX_ENTRIES).map_err(|e| e.to_string())?;
        let s = schreier_build(4, 3).unwrap();
        let (p, _) = build_gr_presentation(&m, &s, usize::MAX).map_err(|e| e.to_string())?;
        let r3 = p.count_tag(RelTag::R3);
        ensure(r3 == 0, || format!("{}: {r3} R3 relators", g.label()))?;
        let ab = abelianization(&eliminate_short_relators(&p).pres).map_err(|e| e.to_string())?;
        ensure(ab.torsion.is_empty(), || format!("{}: abelianization {ab}", g.label()))?;
        seen.push(format!("{}: {ab}", g.label()));
    }
    Ok(seen.join(", "))
}

fn rank_n() -> Check {
    for g in groups(&["trivial", "Z2", "Z3", "S3"]) {
        let rep = verify(&g, 4, 4, Caps::default()).map_err(|e| e.to_string())?;
        ensure(rep.order == Some(1), || format!("{}: order {:?}", g.label(), rep.order))?;
    }
    Ok("order 1 for trivial, Z2, Z3, S3".into())
}

fn counterexample() -> Check {
    let g = group("Z2");
    let diag = WreathElem::parse(&g, "1:1;2:1").unwrap();
    let p = pipeline(&g, 4, 2, Caps::default()).map_err(|e| e.to_string())?;
    let m = &p.matrix;
    let occ = m.occurrences(&diag);
    ensure(occ.len() == 2, || format!("{} occurrences", occ.len()))?;
    let pg = connectivity(m);
    let v = m.value_id(&diag).unwrap() as usize;
    let line = &pg.report(m)[v];
    ensure(line.components == 2, || format!("{} components", line.components))?;
    let merge = p
        .simplified
        .merges
        .iter()
        .find(|x| x.value == diag)
        .ok_or("no consistency merge for diag(a,a)")?;
    ensure(!merge.witnesses.is_empty(), || "merge has no witness".into())?;
    let idx = GrIndex::new(m);
    let nodes: Vec<u32> = occ.iter().map(|&(i, l)| idx.gen(i, l).unwrap()).collect();
    let table = todd_coxeter(p.simplified.presentation(), &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    let (a, b) = (p.simplified.image(nodes[0]), p.simplified.image(nodes[1]));
    ensure(word_equal(&table, &a, &b).unwrap(), || "generators differ in the simplified group".into())?;
    // Also in the presentation before any merging.
    let plain = eliminate_short_relators(&p.gr);
    let table = todd_coxeter(&plain.pres, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    let (a, b) = (plain.map_word(&[gen(nodes[0])]), plain.map_word(&[gen(nodes[1])]));
    ensure(word_equal(&table, &a, &b).unwrap(), || "generators differ in the unmerged group".into())?;
    Ok(format!("2 positions, 2 components, merged via {}", merge.describe(m)))
}

fn global_connectivity() -> Check {
    let mut cases = 0;
    for g in groups(&["trivial", "Z2"]) {
        for n in 3..=6 {
            for r in (1..=n).filter(|&r| n > 2 * r) {
                let m = build_sandwich(&g, n, r, DEFAULT_MAX_ENTRIES).map_err(|e| e.to_string())?;
                let bad: Vec<_> = connectivity(&m).report(&m).into_iter().filter(|l| l.components != 1).collect();
                ensure(bad.is_empty(), || format!("n={n} r={r} {}: {}", g.label(), bad[0]))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, r, G) cases, one component per value"))
}

fn coverage() -> Check {
    let mut cases = 0;
    for g in groups(&["trivial", "Z2"]) {
        let nontrivial = g.order() > 1;
        for n in 3..=6 {
            for r in 1..=n {
                let m = build_sandwich(&g, n, r, DEFAULT_MAX_ENTRIES).map_err(|e| e.to_string())?;
                let all = WreathElem::enumerate_all(&g, r);
                let present: HashSet<&WreathElem> = m.values.iter().collect();
                let full = all.iter().all(|v| present.contains(v));
                let threshold = if nontrivial { 2 * r <= n } else { 2 * r <= n + 1 };
                ensure(full == threshold, || format!("n={n} r={r} {}: full={full}", g.label()))?;
                if !threshold {
                    let mut rev = WreathElem::identity(r);
                    for j in 0..r {
                        rev.perm[j] = (r - 1 - j) as u32;
                    }
                    if nontrivial {
                        rev.weights[0] = 1;
                    }
                    ensure(!present.contains(&rev), || format!("n={n} r={r} {}: {rev} occurs", g.label()))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, r, G) cases match the thresholds"))
}

fn singularity() -> Check {
    let mut squares = 0;
    let mut singular = 0;
    for g in groups(&["trivial", "Z2"]) {
        let all = enumerate_idempotents(&g, 3, None, DEFAULT_MAX_MONOID).map_err(|e| e.to_string())?;
        for r in 1..=3 {
            let es: Vec<Endo> = all.iter().filter(|e| e.rank() == r).cloned().collect();
            for sq in all_squares(&g, &es) {
                squares += 1;
                let band = is_rectangular_band(&g, &sq);
                let w = singular_witness(&g, &sq, &all);
                ensure(band == w.is_some(), || format!("{}: band={band} witness={}", g.label(), w.is_some()))?;
                if band {
                    singular += 1;
                    ensure(matches!(w, Some((_, WitnessKind::UpDown))), || "singular square without up-down witness".into())?;
                }
            }
        }
    }
    Ok(format!("{squares} squares, {singular} singular, all with up-down witnesses"))
}

fn decomposition() -> Check {
    let check = |g: &Group, phi: &WreathElem| -> Result<bool, String> {
        let rp = rising_point(phi);
        if rp <= 2 {
            return Ok(false);
        }
        let d = decompose(g, phi).map_err(|e| e.to_string())?;
        ensure(d.beta.mul(g, &d.gamma) == *phi, || format!("{phi}: β·γ ≠ φ"))?;
        ensure(is_simple_form(&d.gamma).is_some(), || format!("{phi}: γ={} not simple", d.gamma))?;
        ensure(rising_point(&d.beta) < rp, || format!("{phi}: β={} does not drop", d.beta))?;
        Ok(true)
    };
    let mut done = 0;
    for g in groups(&["trivial", "Z2", "Z3"]) {
        for r in 1..=3 {
            for phi in WreathElem::enumerate_all(&g, r) {
                done += check(&g, &phi)? as usize;
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut sampled = 0;
    for g in groups(&["Z2", "Z3", "S3"]) {
        let all = WreathElem::enumerate_all(&g, 4);
        let mut k = 0;
        while k < 10_000 {
            let phi = &all[rng.gen_range(0..all.len())];
            if check(&g, phi)? {
                k += 1;
            }
        }
        sampled += k;
    }
    Ok(format!("{done} exhaustive and {sampled} sampled rank-4 splits"))
}

fn schreier() -> Check {
    let g = Group::trivial();
    let mut cols = 0;
    for n in 3..=6 {
        for r in 1..=n.min(4) {
            let s = schreier_build(n, r).map_err(|e| e.to_string())?;
            let words: HashSet<&[usize]> = s.words.iter().map(|w| w.as_slice()).collect();
            let eps = Endo::from_wreath(&WreathElem::identity(r), n).unwrap();
            for (k, lambda) in s.lambdas.iter().enumerate() {
                let w = &s.words[k];
                ensure((0..w.len()).all(|c| words.contains(&w[..c])), || format!("n={n} r={r} {lambda}: not prefix closed"))?;
                let acted = s.word(k).iter().fold(eps.clone(), |acc, a| acc.then(&g, a));
                ensure(acted == q_of(n, lambda), || format!("n={n} r={r} {lambda}: ε·h ≠ q"))?;
                cols += 1;
            }
        }
    }
    Ok(format!("{cols} columns checked"))
}

fn soundness() -> Check {
    let mut total = 0;
    for (n, name, r) in DESK {
        let g = group(name);
        let m = build_sandwich(&g, n, r, DEFAULT_MAX_ENTRIES).map_err(|e| e.to_string())?;
        let s = schreier_build(n, r).unwrap();
        let (p, idx) = build_gr_presentation(&m, &s, usize::MAX).map_err(|e| e.to_string())?;
        let q = build_quotient_presentation(&m, usize::MAX).map_err(|e| e.to_string())?;
        let id = WreathElem::identity(r);
        let gr_images = idx.images(&m);
        let q_images: Vec<WreathElem> = m.values.iter().map(|v| v.inv(&g)).collect();
        for (pres, images) in [(&p, &gr_images), (&q, &q_images)] {
            for (w, tag) in pres.relators.iter().zip(&pres.tags) {
                let v = evaluate(w, images, id.clone(), |a, b| a.mul(&g, b), |a| a.inv(&g));
                ensure(v.is_identity(), || format!("n={n} r={r} {name}: {tag} relator {} ≠ 1", pres.word_to_string(w)))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} R1/R2/R3/P1/P2 relators evaluate to the identity"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("orders at desk scale", desk_orders),
        ("rank 1 recovers G", rank_one),
        ("rank n-1 has no R3 relators and free abelianization", rank_n_minus_one),
        ("rank n gives the trivial group", rank_n),
        ("non-connected diag(a,a) merged with a witness", counterexample),
        ("global connectivity for n >= 2r+1", global_connectivity),
        ("coverage thresholds", coverage),
        ("singularity oracle", singularity),
        ("decomposition", decomposition),
        ("Schreier invariants", schreier),
        ("relator soundness", soundness),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({:.2}s)", k + 1, start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
