//! The registered checks.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiwb::catalog::{self, a0_identity_oracle, presentation_of_c, verify_presentation};
use semiwb::free::{free_nilpotent, fully_invariant_quotient, prop133_f_construction, rees_product_generated, LabeledSemigroup};
use semiwb::lattice::{
    atoms, atoms_correspondence, check_adjunction, counterexample_fixture, interval, random_adjunction, random_lattice,
    FiniteLattice,
};
use semiwb::rewrite::{
    consequence_padded, enumerate_normal_forms, is_normal_form, normal_form, padded_axiom, standard_letters, AxiomTag,
};
use semiwb::semigroup::{check_lifts, check_projective, find_embedding, find_isomorphism, rees_quotient, subsemigroup_generated};
use semiwb::words::{find_counterexample, satisfies, satisfies_zero_law};
use semiwb::{FiniteSemigroup, Identity, Letter, Word};
use serde_json::{json, Value};

use crate::search::{run_case, CaseResult};
use crate::sweep::{arrangements, assignment, collision, rename, separating_index, value_vector, zero_law_failure};
use crate::{Check, Findings, Options, Profile, VerifyError};

type Outcome = Result<Findings, VerifyError>;

pub(crate) static REGISTRY: [Check; 12] = [
    Check {
        id: "thm-B-generates",
        claim: "the 11-element semigroup B generates the variety defined by xyx=xyy",
        heavy: false,
        run: thm_b_generates,
    },
    Check {
        id: "thm-C-generates",
        claim: "the 11-element semigroup C generates the variety defined by xyx=yxy",
        heavy: false,
        run: thm_c_generates,
    },
    Check {
        id: "rem-maximal-xyy",
        claim: "x^3y^4=x^4y^4 and x^4yz^4=x^4y^4z^4 each cut out a proper subvariety of xyx=xyy, and finite models tell the two apart",
        heavy: false,
        run: rem_maximal_xyy,
    },
    Check {
        id: "rem-maximal-yxy",
        claim: "modulo xyx=yxy the laws x^4y^4=y^4x^4, x^4y^2z^4=x^4y^3z^4, x^4y^2z^4=x^4y^4z^4, x^4y^3z^4=x^4y^4z^4 are pairwise independent, with models of order at most 10",
        heavy: true,
        run: rem_maximal_yxy,
    },
    Check {
        id: "thm-132-lifts",
        claim: "over all semigroups of order at most 4: N2 does not lift, Z2 and Z3 lift, 2^l, 2^r and U1 are projective, Z2 is not projective",
        heavy: false,
        run: thm_132_lifts,
    },
    Check {
        id: "thm-132-notverysmall",
        claim: "2^r and Z_p fail to be very small, as shown by the nilpotent and Sapir witness semigroups",
        heavy: false,
        run: thm_132_notverysmall,
    },
    Check {
        id: "thm-132-sapir",
        claim: "N4(2) modulo x^2y=xy^2 has 13 elements, and a two-generated subsemigroup of its Rees product with Z_p is a copy of N4(2)",
        heavy: false,
        run: thm_132_sapir,
    },
    Check {
        id: "prop-133-com",
        claim: "for xy=yx on two letters the F construction over 2^r maps onto the flat cover",
        heavy: false,
        run: prop_133_com,
    },
    Check {
        id: "prop-133-xyy",
        claim: "for xyx=xyy on two letters the F construction over 2^r maps onto the flat cover",
        heavy: false,
        run: prop_133_xyy,
    },
    Check {
        id: "lem-extralength",
        claim: "xyx=xyy padded with l fresh letters and with l' fresh letters are not consequences of one another for distinct l, l' <= 3",
        heavy: false,
        run: lem_extralength,
    },
    Check {
        id: "ex-adjunction-counterexample",
        claim: "the chain fixture meets the first adjunction hypothesis, misses the second, and both atom conclusions fail; with both hypotheses they hold",
        heavy: false,
        run: ex_adjunction_counterexample,
    },
    Check {
        id: "lem-A0-oracle",
        claim: "A0 is the subsemigroup {0,1,3,5} of C and satisfies u=v exactly when the connected decompositions agree",
        heavy: false,
        run: lem_a0_oracle,
    },
];

fn law(s: &str) -> Identity {
    s.parse().expect("literal law")
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

/// Associativity and the defining law, with witnesses on failure.
fn table_fidelity(f: &mut Findings, name: &str, s: &FiniteSemigroup, axiom: &Identity) -> Result<(), VerifyError> {
    f.require(s.is_associative(), || json!({ "table": name, "property": "associativity" }));
    if let Some(theta) = find_counterexample(s, axiom)? {
        f.fail(json!({ "table": name, "law": axiom, "assignment": theta }));
    }
    f.record(&format!("{name}_order"), s.order());
    Ok(())
}

/// Checks that distinct forms over one ordered alphabet get distinct value
/// vectors; returns the number of pairs covered.
fn separate_forms(f: &mut Findings, s: &FiniteSemigroup, forms: &[Word], letters: &[Letter], n: usize) -> usize {
    let vectors: Vec<Vec<usize>> = forms.iter().map(|w| value_vector(s, w, letters)).collect();
    if let Some((i, j)) = collision(&vectors, |_, _| true) {
        f.fail(json!({ "letters": n, "unseparated": [forms[i].to_string(), forms[j].to_string()] }));
    }
    forms.len() * forms.len().saturating_sub(1) / 2
}

/// Every form over at most `max_letters` letters drawn from x, y, z, in any
/// first-occurrence order.
fn cross_forms(axiom: AxiomTag, max_letters: usize) -> Result<Vec<Word>, VerifyError> {
    let pool = standard_letters(3);
    let mut set = BTreeSet::new();
    for n in 1..=max_letters {
        let from = standard_letters(n);
        for nf in enumerate_normal_forms(axiom, n)? {
            for to in arrangements(&pool, n) {
                set.insert(normal_form(axiom, &rename(&nf.word, &from, &to)).word);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Pairs of cross forms with different first-occurrence order must be told
/// apart by `sub`; pairs with the same order by `whole`.
fn cross_alphabet(f: &mut Findings, axiom: AxiomTag, whole: &FiniteSemigroup, sub: &FiniteSemigroup, sub_name: &str) -> Result<(), VerifyError> {
    let forms = cross_forms(axiom, 3)?;
    let xyz = standard_letters(3);
    let groups: Vec<Vec<Letter>> = forms.iter().map(|w| w.content_in_order()).collect();
    let sub_vectors: Vec<Vec<usize>> = forms.iter().map(|w| value_vector(sub, w, &xyz)).collect();
    if let Some((i, j)) = collision(&sub_vectors, |i, j| groups[i] != groups[j]) {
        f.fail(json!({ "cross_alphabet_unseparated_in": sub_name, "pair": [forms[i].to_string(), forms[j].to_string()] }));
    }
    let whole_vectors: Vec<Vec<usize>> = forms.iter().map(|w| value_vector(whole, w, &xyz)).collect();
    if let Some((i, j)) = collision(&whole_vectors, |i, j| groups[i] == groups[j]) {
        f.fail(json!({ "same_alphabet_unseparated": [forms[i].to_string(), forms[j].to_string()] }));
    }
    let mut sizes: BTreeMap<&[Letter], usize> = BTreeMap::new();
    for g in &groups {
        *sizes.entry(g.as_slice()).or_default() += 1;
    }
    let total = forms.len() * (forms.len() - 1) / 2;
    let same: usize = sizes.values().map(|k| k * (k - 1) / 2).sum();
    f.record("cross_forms", forms.len());
    f.record("cross_alphabet_pairs", total - same);
    Ok(())
}

fn thm_b_generates(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let b = catalog::table_b();
    table_fidelity(&mut f, "B", &b, &law("xyx=xyy"))?;
    let mut pairs = Vec::new();
    for n in 1..=3 {
        let forms: Vec<Word> = enumerate_normal_forms(AxiomTag::Xyy, n)?.into_iter().map(|nf| nf.word).collect();
        pairs.push(separate_forms(&mut f, &b, &forms, &standard_letters(n), n));
    }
    f.require(pairs == [6, 36, 153], || json!({ "normal_form_pairs": pairs }));
    f.record("normal_form_pairs", &pairs);

    let sub = subsemigroup_generated(&b, &[8, 3, 10])?;
    f.require(sub.elements == [3, 8, 10], || json!({ "subsemigroup_8_3_10": sub.elements }));
    let monoid = FiniteSemigroup::from_rows(&[vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2]])?;
    match find_isomorphism(&sub.semigroup, &monoid)? {
        Some(iso) => f.record("isomorphism_onto_2l_with_identity", iso.images),
        None => f.fail(json!({ "subsemigroup_8_3_10": sub.semigroup, "expected": monoid })),
    }
    cross_alphabet(&mut f, AxiomTag::Xyy, &b, &sub.semigroup, "{8,3,10}")?;
    Ok(f)
}

fn thm_c_generates(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let c = catalog::table_c();
    table_fidelity(&mut f, "C", &c, &law("xyx=yxy"))?;
    let presentation = verify_presentation(&c, &[1, 2, 3], &presentation_of_c())?;
    f.require(presentation.passes(), || json!({ "presentation": presentation }));
    let mut pairs = Vec::new();
    for n in 1..=4 {
        let forms: Vec<Word> = enumerate_normal_forms(AxiomTag::Yxy, n)?.into_iter().map(|nf| nf.word).collect();
        pairs.push(separate_forms(&mut f, &c, &forms, &standard_letters(n), n));
    }
    f.record("canonical_word_pairs", &pairs);

    let sub = subsemigroup_generated(&c, &[1, 3])?;
    f.require(sub.elements == [0, 1, 3, 5], || json!({ "subsemigroup_1_3": sub.elements }));
    if find_isomorphism(&sub.semigroup, &catalog::a0())?.is_none() {
        f.fail(json!({ "subsemigroup_1_3": sub.semigroup, "expected": catalog::a0() }));
    }
    cross_alphabet(&mut f, AxiomTag::Yxy, &c, &sub.semigroup, "A0")?;
    Ok(f)
}

fn case_json(case: &crate::search::Case) -> Value {
    serde_json::to_value(case).expect("cases serialise")
}

/// Folds a search case into the findings: a verified model passes, proven
/// absence or a bad model fails, running out of time is reported as such.
fn judge_case(f: &mut Findings, case: &crate::search::Case) {
    match &case.result {
        CaseResult::Found { verified: true, .. } => {}
        CaseResult::Found { verified: false, .. } | CaseResult::Absent => f.fail(case_json(case)),
        CaseResult::BudgetExhausted => f.exhausted(json!({ "satisfy": case.satisfy, "falsify": case.falsify })),
    }
}

fn proper_law(f: &mut Findings, axiom: AxiomTag, generator: &FiniteSemigroup, l: &Identity) -> Result<(), VerifyError> {
    let distinct_forms = l.lhs != l.rhs && is_normal_form(axiom, &l.lhs) && is_normal_form(axiom, &l.rhs);
    f.require(distinct_forms, || json!({ "not_distinct_forms": l }));
    match find_counterexample(generator, l)? {
        Some(theta) => f.record(&format!("generator_fails {l}"), theta),
        None => f.fail(json!({ "generator_satisfies": l })),
    }
    Ok(())
}

fn rem_maximal_xyy(options: &Options) -> Outcome {
    let mut f = Findings::default();
    let base = law("xyx=xyy");
    let (l1, l2) = (law("x^3y^4=x^4y^4"), law("x^4yz^4=x^4y^4z^4"));
    let b = catalog::table_b();
    for l in [&l1, &l2] {
        proper_law(&mut f, AxiomTag::Xyy, &b, l)?;
    }
    // the small separation is cheap enough for every profile
    let small_budget = Options { case_time: options.case_time.max(Duration::from_secs(60)), ..options.clone() };
    let first = run_case(vec![base.clone(), l1.clone()], l2.clone(), 1..=5, &small_budget)?;
    judge_case(&mut f, &first);
    if let CaseResult::Found { model, .. } = &first.result {
        f.require(model.semigroup.order() == 5, || json!({ "expected_order": 5, "case": case_json(&first) }));
    }
    f.record("five_element_separation", case_json(&first));
    if options.profile == Profile::Full {
        let second = run_case(vec![base, l2], l1, 1..=8, options)?;
        judge_case(&mut f, &second);
        f.record("eight_element_separation", case_json(&second));
    } else {
        f.record("eight_element_separation", "not attempted under the quick profile");
    }
    Ok(f)
}

fn rem_maximal_yxy(options: &Options) -> Outcome {
    let mut f = Findings::default();
    let base = law("xyx=yxy");
    let laws = ["x^4y^4=y^4x^4", "x^4y^2z^4=x^4y^3z^4", "x^4y^2z^4=x^4y^4z^4", "x^4y^3z^4=x^4y^4z^4"].map(law);
    let c = catalog::table_c();
    for l in &laws {
        proper_law(&mut f, AxiomTag::Yxy, &c, l)?;
    }
    let mut cases = Vec::new();
    for (i, li) in laws.iter().enumerate() {
        for (j, lj) in laws.iter().enumerate() {
            if i == j {
                continue;
            }
            let case = run_case(vec![base.clone(), li.clone()], lj.clone(), 1..=10, options)?;
            judge_case(&mut f, &case);
            cases.push(case_json(&case));
        }
    }
    f.record("cases", cases);
    Ok(f)
}

fn lift_summary(out: &semiwb::semigroup::LiftOutcome) -> Value {
    json!({ "holds": out.holds, "surjections": out.surjections, "counterexample": out.counterexample })
}

fn thm_132_lifts(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let universe = catalog::lifting_universe()?;
    f.record("universe_size", universe.len());

    let n2 = catalog::n2();
    let out = check_lifts(&n2, &universe)?;
    f.record("N2_lifts", lift_summary(&out));
    match &out.counterexample {
        Some(w) => {
            let source = &universe[w.universe_index];
            let genuine = w.surjection.is_homomorphism(source, &n2)
                && w.surjection.is_surjective(n2.order())
                && find_embedding(&n2, source)?.is_none();
            f.require(genuine && w.source == "MONO_2_2", || json!({ "unexpected_N2_witness": w }));
        }
        None => f.fail(json!({ "N2_lifts_over_universe": lift_summary(&out) })),
    }
    for (name, t) in [("Z2", catalog::z(2)), ("Z3", catalog::z(3))] {
        let out = check_lifts(&t, &universe)?;
        f.require(out.holds, || json!({ "does_not_lift": name, "witness": out.counterexample }));
        f.record(&format!("{name}_lifts"), lift_summary(&out));
    }
    for (name, t) in [("2^l", catalog::l2()), ("2^r", catalog::r2()), ("U1", catalog::u1())] {
        let out = check_projective(&t, &universe)?;
        f.require(out.holds, || json!({ "not_projective": name, "witness": out.counterexample }));
        f.record(&format!("{name}_projective"), lift_summary(&out));
    }
    let z2 = check_projective(&catalog::z(2), &universe)?;
    f.record("Z2_projective", lift_summary(&z2));
    let via_z4 = z2.counterexample.as_ref().is_some_and(|w| w.source == "Z4");
    f.require(!z2.holds && via_z4, || json!({ "Z2_projective": lift_summary(&z2) }));
    Ok(f)
}

fn sapir_semigroup() -> Result<(LabeledSemigroup, LabeledSemigroup), VerifyError> {
    let n4 = free_nilpotent(2, 3)?;
    let s = fully_invariant_quotient(&n4, &[law("x^2y=xy^2")])?;
    Ok((n4, s))
}

/// `x ↦ (a, g)`, `y ↦ (b, g²)` in the subsemigroup of `(S × Z_p)/(0 × Z_p)`
/// they generate: the values of `x²y` and `xy²`, and that subsemigroup.
fn sapir_product(s: &LabeledSemigroup, p: usize) -> Result<(Value, bool, FiniteSemigroup), VerifyError> {
    let a = s.element_of(&word("a")).expect("generator a");
    let b = s.element_of(&word("b")).expect("generator b");
    let z = catalog::z(p);
    let (elements, generated) = rees_product_generated(&s.semigroup, &z, &[(a, 1 % p), (b, 2 % p)])?;
    let ia = elements.iter().position(|e| *e == Some((a, vec![1 % p]))).expect("generator present");
    let ib = elements.iter().position(|e| *e == Some((b, vec![2 % p]))).expect("generator present");
    let lhs = generated.product([ia, ia, ib]).expect("nonempty");
    let rhs = generated.product([ia, ib, ib]).expect("nonempty");
    let show = |x: usize| match &elements[x] {
        Some((el, g)) => json!({ "s": s.labels[*el].as_ref().map(|w| w.to_string()), "g": g[0] }),
        None => json!("0"),
    };
    let expected = |x: usize, k: usize| matches!(&elements[x], Some((_, g)) if g[0] == k % p);
    let same_s = matches!((&elements[lhs], &elements[rhs]), (Some((u, _)), Some((v, _))) if u == v);
    let ok = lhs != rhs && same_s && expected(lhs, 4) && expected(rhs, 5);
    let witness = json!({ "p": p, "x": "(a,g)", "y": "(b,g^2)", "x^2y": show(lhs), "xy^2": show(rhs) });
    Ok((witness, ok, generated))
}

fn thm_132_notverysmall(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let nil3 = catalog::nil3();
    let product = semiwb::semigroup::direct_product(&nil3, &catalog::r2());
    // pairs (s, t) are s * 2 + t, so 0 × 2^r is {0, 1}
    let quotient = rees_quotient(&product, &[0, 1])?.semigroup;
    let four = word("abcd");
    match find_counterexample(&quotient, &law("xy=yx"))? {
        Some(theta) => f.record("quotient_fails_xy=yx", theta),
        None => f.fail(json!({ "quotient_commutes": quotient })),
    }
    f.require(satisfies_zero_law(&quotient, &four)?, || json!({ "quotient_fails_abcd=0": zero_law_failure(&quotient, &four) }));
    match zero_law_failure(&product, &four) {
        Some(w) => f.record("product_fails_abcd=0", w),
        None => f.fail(json!({ "product_satisfies_abcd=0": product })),
    }
    f.record("quotient_order", quotient.order());

    let (_, s) = sapir_semigroup()?;
    f.require(satisfies(&s.semigroup, &law("x^2y=xy^2"))?, || json!({ "sapir_fails_x^2y=xy^2": s.semigroup }));
    for p in [2, 3] {
        let (witness, ok, _) = sapir_product(&s, p)?;
        f.require(ok, || witness.clone());
        f.record(&format!("Z{p}_witness"), witness);
    }
    Ok(f)
}

fn thm_132_sapir(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let (n4, s) = sapir_semigroup()?;
    f.require(n4.order() == 15, || json!({ "N4(2)_order": n4.order() }));
    f.require(s.order() == 13, || json!({ "sapir_order": s.order(), "labels": s.label_strings() }));
    f.record("sapir_labels", s.label_strings());
    for (class, other) in [("a^2b", "abb"), ("ba^2", "bba")] {
        let merged = s.element_of(&word(class)).is_some() && s.element_of(&word(class)) == s.evaluate_generators(&word(other));
        f.require(merged, || json!({ "classes_not_merged": [class, other] }));
    }
    for p in [2, 3] {
        let (witness, ok, generated) = sapir_product(&s, p)?;
        f.require(ok, || witness.clone());
        f.record(&format!("Z{p}_witness"), witness);
        f.require(generated.order() == 15, || json!({ "p": p, "generated_order": generated.order() }));
        match find_isomorphism(&generated, &n4.semigroup)? {
            Some(iso) => f.record(&format!("Z{p}_copy_of_N4(2)"), iso.images),
            None => f.fail(json!({ "p": p, "generated": generated })),
        }
    }
    Ok(f)
}

fn prop133(l: &str, n: usize, sizes: (usize, usize)) -> Outcome {
    let mut f = Findings::default();
    let id = law(l);
    let fc = prop133_f_construction(&id, 2, n, &catalog::r2())?;
    let (s, flat) = (&fc.cover.s, &fc.cover.n_flat);
    f.require((s.order(), flat.order()) == sizes, || json!({ "cover_orders": [s.order(), flat.order()], "expected": [sizes.0, sizes.1] }));
    f.record("S_order", s.order());
    f.record("N_flat_order", flat.order());
    f.record("T_identifications", &fc.cover.tw);
    f.record("separating_tuple_in_2r", &fc.separating);
    f.record("S_tilde_order", fc.s_tilde_order.to_string());
    f.record("F_order", fc.f.order());
    f.record("natural_map", fc.natural_map);
    match &fc.surjection {
        Some(phi) => {
            let ok = phi.is_homomorphism(&fc.f, &flat.semigroup) && phi.is_surjective(flat.order());
            f.require(ok, || json!({ "bad_surjection": phi }));
            f.record("surjection", &phi.images);
        }
        None => f.fail(json!({ "no_surjection_from": fc.f, "onto": flat.semigroup })),
    }
    Ok(f)
}

fn prop_133_com(_: &Options) -> Outcome {
    let mut f = prop133("xy=yx", 2, (6, 7))?;
    let cover = semiwb::free::prop133_cover_objects(&law("xy=yx"), 2, 2)?;
    f.require(cover.s.semigroup.is_commutative(), || json!({ "S_not_commutative": cover.s.semigroup }));
    Ok(f)
}

fn prop_133_xyy(_: &Options) -> Outcome {
    prop133("xyx=xyy", 3, (13, 15))
}

fn lem_extralength(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for l in 1..=3 {
        for lp in (1..=3).filter(|&lp| lp != l) {
            let direction = if l < lp { "shorter_from_longer" } else { "longer_from_shorter" };
            for i in 0..=l {
                for ip in 0..=lp {
                    let target = padded_axiom(AxiomTag::Xyy, i, l)?;
                    let follows = consequence_padded(AxiomTag::Xyy, ip, lp, &target)?;
                    let entry = counts.entry(direction).or_default();
                    entry.0 += 1;
                    if follows {
                        entry.1 += 1;
                        f.fail(json!({
                            "direction": direction,
                            "premise": padded_axiom(AxiomTag::Xyy, ip, lp)?,
                            "consequence": target,
                        }));
                    }
                }
            }
        }
    }
    let summary: BTreeMap<&str, Value> =
        counts.into_iter().map(|(k, (checked, follows))| (k, json!({ "checked": checked, "consequences": follows }))).collect();
    f.record("placements", summary);
    Ok(f)
}

fn lattice_json(l: &FiniteLattice) -> Value {
    serde_json::to_value(l).expect("lattices serialise")
}

fn ex_adjunction_counterexample(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let (l1, l2, q, m) = counterexample_fixture();
    let (a1, a2) = (atoms(&l1), atoms(&l2));
    f.require(a1 == [1] && a2 == [1], || json!({ "atoms_l1": a1, "atoms_l2": a2 }));
    let report = check_adjunction(&l1, &l2, &q, &m)?;
    f.record("fixture_report", report);
    f.require(report.hypothesis_1 && !report.hypothesis_2, || json!({ "fixture_report": report }));
    let conclusions = atoms_correspondence(&l1, &l2, &q, &m)?;
    f.record("fixture_conclusions", conclusions);
    f.require(conclusions == (false, false), || json!({ "fixture_conclusions": conclusions }));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut checked, mut attempts) = (0, 0);
    while checked < 200 && attempts < 100_000 {
        attempts += 1;
        let n = rng.gen_range(2..=6);
        let target = random_lattice(&mut rng, n, 0.4);
        let (source, q, m) = random_adjunction(&mut rng, &target, 0.9);
        let report = check_adjunction(&source, &target, &q, &m)?;
        if !report.hypothesis_1 || !report.hypothesis_2 {
            continue;
        }
        checked += 1;
        let conclusions = atoms_correspondence(&source, &target, &q, &m)?;
        f.require(conclusions == (true, true), || {
            json!({ "l1": lattice_json(&source), "l2": lattice_json(&target), "q": q, "m": m, "conclusions": conclusions })
        });
    }
    f.require(checked == 200, || json!({ "random_adjunctions_found": checked, "attempts": attempts }));
    f.record("random_adjunctions", json!({ "checked": checked, "attempts": attempts, "seed": 2024 }));

    let mut lattices = vec![l1, l2];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    lattices.extend((0..20).map(|_| {
        let n = rng.gen_range(2..=7);
        random_lattice(&mut rng, n, 0.35)
    }));
    for l in &lattices {
        for b in 0..l.order() {
            let (sub, elements) = interval(l, l.bottom(), b)?;
            let lifted: Vec<usize> = atoms(&sub).into_iter().map(|i| elements[i]).collect();
            let expected: Vec<usize> = atoms(l).into_iter().filter(|&a| l.leq(a, b)).collect();
            f.require(lifted == expected, || json!({ "lattice": lattice_json(l), "top_of_interval": b }));
        }
    }
    f.record("interval_lattices", lattices.len());
    Ok(f)
}

fn all_words(k: u8, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Vec<Letter>> = (0..k).map(|l| vec![l]).collect();
    let mut frontier = out.clone();
    for _ in 1..max_len {
        frontier = frontier.iter().flat_map(|w| (0..k).map(move |l| [w.as_slice(), &[l]].concat())).collect();
        out.extend(frontier.iter().cloned());
    }
    out.into_iter().map(|v| Word::new(v).expect("short word")).collect()
}

fn lem_a0_oracle(_: &Options) -> Outcome {
    let mut f = Findings::default();
    let c = catalog::table_c();
    let a0 = catalog::a0();
    let sub = subsemigroup_generated(&c, &[1, 3])?;
    f.require(sub.elements == [0, 1, 3, 5], || json!({ "subsemigroup_1_3": sub.elements }));
    match find_isomorphism(&sub.semigroup, &a0)? {
        Some(iso) => f.record("isomorphism_onto_A0", iso.images),
        None => f.fail(json!({ "subsemigroup_1_3": sub.semigroup, "expected": a0 })),
    }
    let (e, g) = (1, 2);
    let shape = a0.is_idempotent(e) && a0.is_idempotent(g) && a0.mul(g, e) == 0 && a0.mul(e, g) == 3;
    f.require(shape, || json!({ "A0": a0 }));

    let letters: Vec<Letter> = vec![0, 1, 2];
    let words = all_words(3, 6);
    let vectors: Vec<Vec<usize>> = words.iter().map(|w| value_vector(&a0, w, &letters)).collect();
    let mut mismatches = 0usize;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let brute = vectors[i] == vectors[j];
            if a0_identity_oracle(&words[i], &words[j]) != brute {
                mismatches += 1;
                if mismatches <= 10 {
                    let theta = separating_index(&vectors[i], &vectors[j]).map(|k| assignment(k, a0.order(), &letters));
                    f.fail(json!({ "u": words[i], "v": words[j], "holds_in_A0": brute, "assignment": theta }));
                }
            }
        }
    }
    f.record("words", words.len());
    f.record("pairs", words.len() * (words.len() - 1) / 2);
    f.record("mismatches", mismatches);
    Ok(f)
}
