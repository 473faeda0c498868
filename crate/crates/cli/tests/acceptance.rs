//! Exit criteria. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero when any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiwb::avoid::{find_square, is_unavoidable, squarefree_prefix};
use semiwb::catalog;
use semiwb::free::{free_nilpotent, fully_invariant_quotient, prop133_f_construction, rees_product_generated};
use semiwb::lattice::{atoms, atoms_correspondence, check_adjunction, counterexample_fixture};
use semiwb::model::{enumerate_models, find_model, OrderStatus, SearchSpec};
use semiwb::rewrite::{canonical_form_yxy, consequence_padded, normal_form_xyy, padded_axiom, AxiomTag};
use semiwb::semigroup::{check_lifts, check_projective, direct_product, is_isomorphic, rees_quotient};
use semiwb::words::{evaluate, find_counterexample, satisfies, satisfies_zero_law};
use semiwb::{FiniteSemigroup, Identity, Letter, Word};
use semiwb_verify::{verify, Options, Status};

type Outcome = Result<String, String>;

fn id(s: &str) -> Identity {
    s.parse().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Values of `w` under every assignment of `letters` into `s`.
fn values(s: &FiniteSemigroup, w: &Word, letters: &[Letter]) -> Vec<usize> {
    let n = s.order();
    (0..n.pow(letters.len() as u32))
        .map(|mut code| {
            let mut assign = BTreeMap::new();
            for &l in letters {
                assign.insert(l, code % n);
                code /= n;
            }
            w.letters().iter().map(|l| assign[l]).reduce(|a, b| s.mul(a, b)).unwrap()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let b = catalog::table_b();
    let c = catalog::table_c();
    ensure(b.order() == 11 && c.order() == 11, "B and C have 11 elements")?;
    for (name, s) in [("B", &b), ("C", &c)] {
        let n = s.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(s.mul(s.mul(x, y), z) == s.mul(x, s.mul(y, z)), format!("{name} not associative at {x},{y},{z}"))?;
                }
            }
        }
    }
    ensure(find_counterexample(&b, &id("xyx=xyy")).unwrap().is_none(), "B fails xyx=xyy")?;
    ensure(find_counterexample(&c, &id("xyx=yxy")).unwrap().is_none(), "C fails xyx=yxy")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("associative, laws hold, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let options = Options::quick();
    let b = verify("thm-B-generates", &options).unwrap();
    ensure(b.status == Status::Pass, format!("thm-B-generates: {}", b.witnesses))?;
    ensure(b.witnesses["normal_form_pairs"] == serde_json::json!([6, 36, 153]), "pair counts 6 + 36 + 153")?;
    ensure(b.witnesses["cross_alphabet_pairs"].as_u64().unwrap_or(0) > 0, "cross-alphabet pairs in {8,3,10}")?;
    let c = verify("thm-C-generates", &options).unwrap();
    ensure(c.status == Status::Pass, format!("thm-C-generates: {}", c.witnesses))?;
    ensure(c.witnesses["canonical_word_pairs"].as_array().map(|a| a.len()) == Some(4), "canonical words on 1..=4 letters")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!(
        "B: {} normal form pairs, {} cross pairs; C: {} canonical pairs, {} cross pairs; {elapsed:?}",
        b.witnesses["normal_form_pairs"], b.witnesses["cross_alphabet_pairs"], c.witnesses["canonical_word_pairs"], c.witnesses["cross_alphabet_pairs"]
    ))
}

fn criterion_3() -> Outcome {
    let n4 = free_nilpotent(2, 3).unwrap();
    ensure(n4.order() == 15, format!("|N4(2)| = {}", n4.order()))?;
    let s = fully_invariant_quotient(&n4, &[id("x^2y=xy^2")]).unwrap();
    ensure(s.order() == 13, format!("quotient has {} elements", s.order()))?;
    let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for label in n4.labels.iter().flatten() {
        classes.entry(s.evaluate_generators(label).unwrap()).or_default().push(label.to_string());
    }
    let mut merged: Vec<Vec<String>> = classes.into_values().filter(|c| c.len() > 1).collect();
    for c in &mut merged {
        c.sort();
    }
    merged.sort();
    let expected = vec![vec!["a^2b".to_string(), "ab^2".to_string()], vec!["b^2a".to_string(), "ba^2".to_string()]];
    ensure(merged == expected, format!("merged classes {merged:?}"))?;
    Ok(format!("15 and 13 elements, merged {merged:?}"))
}

fn criterion_4() -> Outcome {
    let b = catalog::table_b();
    let c = catalog::table_c();
    let xyz: Vec<Letter> = vec![23, 24, 25];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=8);
        let word = Word::new((0..len).map(|_| 23 + rng.gen_range(0..3u8)).collect()).unwrap();
        let nf = normal_form_xyy(&word).word;
        ensure(values(&b, &word, &xyz) == values(&b, &nf, &xyz), format!("{word} vs XYY form {nf} in B"))?;
        let cf = canonical_form_yxy(&word).word;
        ensure(values(&c, &word, &xyz) == values(&c, &cf, &xyz), format!("{word} vs YXY form {cf} in C"))?;
    }
    Ok("1000 seeded words agree with their forms under all assignments".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let spec = SearchSpec::new(vec![id("xyx=xyy"), id("x^3y^4=x^4y^4")], Some(id("x^4yz^4=x^4y^4z^4")), 1..=5)
        .with_time(Some(Duration::from_secs(60)));
    let report = find_model(&spec).unwrap();
    let elapsed = start.elapsed();
    let model = report.model.ok_or("no model of order at most 5")?;
    let s = &model.semigroup;
    ensure(s.order() == 5, format!("model has order {}", s.order()))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    ensure(s.is_associative(), "model not associative")?;
    ensure(satisfies(s, &id("xyx=xyy")).unwrap() && satisfies(s, &id("x^3y^4=x^4y^4")).unwrap(), "model misses an axiom")?;
    let goal = id("x^4yz^4=x^4y^4z^4");
    let theta = model.witness.ok_or("no witness")?;
    ensure(evaluate(s, &goal.lhs, &theta).unwrap() != evaluate(s, &goal.rhs, &theta).unwrap(), "witness does not separate")?;
    ensure(report.outcomes[..4].iter().all(|o| o.status == OrderStatus::Absent), "smaller orders not exhausted")?;

    // the larger witnesses, under the full profile with a short per-case budget
    let options = Options { case_time: Duration::from_secs(5), ..Options::full() };
    let mut larger = Vec::new();
    for check in ["rem-maximal-xyy", "rem-maximal-yxy"] {
        let r = verify(check, &options).unwrap();
        ensure(r.status != Status::Fail, format!("{check}: {}", r.witnesses))?;
        larger.push(format!("{check} {}", r.status));
    }
    Ok(format!("5-element model in {elapsed:?}; {}", larger.join(", ")))
}

fn criterion_6() -> Outcome {
    let found = enumerate_models(2, &[]).unwrap();
    let mut naive: Vec<FiniteSemigroup> = Vec::new();
    for code in 0..16usize {
        let cell = |i: usize| (code >> i) & 1;
        let rows = vec![vec![cell(0), cell(1)], vec![cell(2), cell(3)]];
        let Ok(s) = FiniteSemigroup::from_rows(&rows) else { continue };
        let swap = s.relabel(&[1, 0]);
        if !naive.iter().any(|t| *t == s || *t == swap) {
            naive.push(s);
        }
    }
    ensure(naive.len() == 5, format!("naive filter gives {}", naive.len()))?;
    ensure(found.len() == 5, format!("enumeration gives {}", found.len()))?;
    for s in &naive {
        ensure(found.iter().filter(|f| is_isomorphic(f, s).unwrap()).count() == 1, format!("{s} matched once"))?;
    }
    Ok("5 classes, matching the naive filter".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let universe = catalog::lifting_universe().unwrap();
    let mono = catalog::mono_2_2();
    let y = (0..mono.order()).find(|&x| mono.monogenic_type(x) == (2, 2)).ok_or("no generator of index 2, period 2")?;
    ensure(semiwb::semigroup::subsemigroup_generated(&mono, &[y]).unwrap().elements.len() == 3, "y generates y, y^2, y^3")?;
    let n2 = check_lifts(&catalog::n2(), &universe).unwrap();
    let witness = n2.counterexample.ok_or("N2 lifts over the universe")?;
    ensure(witness.source == "MONO_2_2", format!("witness from {}", witness.source))?;
    ensure(witness.surjection.is_homomorphism(&mono, &catalog::n2()), "witness is not a morphism")?;
    for (name, t) in [("2^l", catalog::l2()), ("2^r", catalog::r2()), ("U1", catalog::u1())] {
        ensure(check_projective(&t, &universe).unwrap().holds, format!("{name} not projective"))?;
    }
    ensure(check_lifts(&catalog::z(2), &universe).unwrap().holds, "Z2 does not lift")?;
    let z2 = check_projective(&catalog::z(2), &universe).unwrap();
    ensure(!z2.holds, "Z2 projective")?;
    ensure(z2.counterexample.as_ref().map(|w| w.source.as_str()) == Some("Z4"), "Z2 witness not from Z4")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("universe of {} semigroups, {elapsed:?}", universe.len()))
}

fn criterion_8() -> Outcome {
    let product = direct_product(&catalog::nil3(), &catalog::r2());
    let quotient = rees_quotient(&product, &[0, 1]).unwrap().semigroup;
    ensure(!satisfies(&quotient, &id("xy=yx")).unwrap(), "quotient commutes")?;
    ensure(satisfies_zero_law(&quotient, &w("abcd")).unwrap(), "quotient fails abcd=0")?;
    // without a zero the law fails; with one it would need every product to hit it
    let product_fails = match product.zero() {
        None => true,
        Some(_) => !satisfies_zero_law(&product, &w("abcd")).unwrap(),
    };
    ensure(product_fails, "product satisfies abcd=0")?;

    let n4 = free_nilpotent(2, 3).unwrap();
    let s = fully_invariant_quotient(&n4, &[id("x^2y=xy^2")]).unwrap();
    let (a, b) = (s.element_of(&w("a")).unwrap(), s.element_of(&w("b")).unwrap());
    for p in [2, 3] {
        let (elements, gen) = rees_product_generated(&s.semigroup, &catalog::z(p), &[(a, 1), (b, 2 % p)]).unwrap();
        let at = |e: (usize, usize)| elements.iter().position(|x| *x == Some((e.0, vec![e.1]))).unwrap();
        let (x, y) = (at((a, 1)), at((b, 2 % p)));
        let lhs = elements[gen.product([x, x, y]).unwrap()].clone().ok_or("x^2y is zero")?;
        let rhs = elements[gen.product([x, y, y]).unwrap()].clone().ok_or("xy^2 is zero")?;
        ensure(lhs.0 == rhs.0, "S components differ")?;
        ensure(lhs.1 == vec![4 % p] && rhs.1 == vec![5 % p], format!("p={p}: g components {:?} {:?}", lhs.1, rhs.1))?;
        ensure(gen.order() == 15 && is_isomorphic(&gen, &n4.semigroup).unwrap(), format!("p={p}: generated copy"))?;
    }
    Ok("2^r witnesses and Sapir witnesses g^4 != g^5 for p = 2, 3".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for (law, n) in [("xy=yx", 2), ("xyx=xyy", 3)] {
        let fc = prop133_f_construction(&id(law), 2, n, &catalog::r2()).unwrap();
        let phi = fc.surjection.ok_or(format!("{law}: no surjection"))?;
        let flat = &fc.cover.n_flat;
        ensure(phi.is_homomorphism(&fc.f, &flat.semigroup) && phi.is_surjective(flat.order()), format!("{law}: bad map"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("surjections found, {elapsed:?}"))
}

fn criterion_10() -> Outcome {
    let (l1, l2, q, m) = counterexample_fixture();
    ensure(atoms(&l1) == [1] && atoms(&l2) == [1], "fixture atoms")?;
    let report = check_adjunction(&l1, &l2, &q, &m).unwrap();
    ensure(report.hypothesis_1 && !report.hypothesis_2, "fixture hypotheses")?;
    ensure(atoms_correspondence(&l1, &l2, &q, &m).unwrap() == (false, false), "fixture conclusions")?;
    let r = verify("ex-adjunction-counterexample", &Options::quick()).unwrap();
    ensure(r.status == Status::Pass, format!("{}", r.witnesses))?;
    ensure(r.witnesses["random_adjunctions"]["checked"] == 200, "200 random adjunctions")?;
    ensure(r.witnesses["interval_lattices"] == 22, "interval identity on fixtures and 20 random lattices")?;
    Ok("fixture fails (a) and (b); 200 random adjunctions and 22 interval lattices agree".into())
}

fn criterion_11() -> Outcome {
    let mut wrong = Vec::new();
    for (p, expected) in [("xyx", true), ("xyy", true), ("yyx", true), ("yxy", true), ("x^2y", false), ("yx^2", false)] {
        let got = is_unavoidable(&w(p)).unwrap();
        if got != expected {
            wrong.push(format!("{p}: expected unavoidable={expected}, got {got}"));
        }
    }
    let prefix = squarefree_prefix(10_000).unwrap();
    if let Some(sq) = find_square(&prefix) {
        wrong.push(format!("square at {sq:?}"));
    }
    ensure(wrong.is_empty(), wrong.join("; "))?;
    Ok("avoidability classification and square-free prefix".into())
}

fn criterion_12() -> Outcome {
    let mut wrong = Vec::new();
    for l in 1..=3 {
        for lp in l + 1..=3 {
            for i in 0..=l {
                for ip in 0..=lp {
                    let short = padded_axiom(AxiomTag::Xyy, i, l).unwrap();
                    let long = padded_axiom(AxiomTag::Xyy, ip, lp).unwrap();
                    if consequence_padded(AxiomTag::Xyy, ip, lp, &short).unwrap() {
                        wrong.push(format!("{short} follows from {long}"));
                    }
                    if consequence_padded(AxiomTag::Xyy, i, l, &long).unwrap() {
                        wrong.push(format!("{long} follows from {short}"));
                    }
                }
            }
        }
    }
    ensure(wrong.is_empty(), format!("{} consequences, first: {}", wrong.len(), wrong.first().cloned().unwrap_or_default()))?;
    Ok("padded laws mutually independent".into())
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 12] = [
        (1, "table fidelity and axioms", criterion_1),
        (2, "generator theorems", criterion_2),
        (3, "free object counts", criterion_3),
        (4, "normal form soundness", criterion_4),
        (5, "separating model search", criterion_5),
        (6, "order-2 catalog", criterion_6),
        (7, "lifting and projectivity", criterion_7),
        (8, "not-very-small witnesses", criterion_8),
        (9, "F construction surjections", criterion_9),
        (10, "lattice suite", criterion_10),
        (11, "avoidability", criterion_11),
        (12, "padded-axiom distinctness", criterion_12),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {detail}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
