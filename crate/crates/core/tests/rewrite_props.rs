mod support;

use proptest::prelude::*;
use semiwb::catalog;
use semiwb::rewrite::{self, AxiomTag};
use semiwb::words::connected_decomposition;
use semiwb::{Identity, Word};
use support::{all_words, rewrite_closure, value_vector};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn normal_forms_are_sound_in_b_and_c() {
    let (b, c) = (catalog::table_b(), catalog::table_c());
    for word in all_words(3, 8) {
        let nf = rewrite::normal_form_xyy(&word).word;
        assert_eq!(value_vector(&b, &word, 3), value_vector(&b, &nf, 3), "{word} vs {nf}");
        let cf = rewrite::canonical_form_yxy(&word).word;
        assert_eq!(value_vector(&c, &word, 3), value_vector(&c, &cf, 3), "{word} vs {cf}");
    }
}

#[test]
fn normal_forms_are_reachable_by_rewriting() {
    // the closure only confirms equalities; it can never refute one
    let xyy = AxiomTag::Xyy.identity();
    let yxy = AxiomTag::Yxy.identity();
    for word in all_words(2, 5) {
        let nf = rewrite::normal_form_xyy(&word).word;
        if nf.len() <= 8 {
            let class = rewrite_closure(&xyy, &word, 9, 100_000);
            assert!(class.contains(nf.letters()), "{word} -> {nf} not reached");
        }
        let cf = rewrite::canonical_form_yxy(&word).word;
        let class = rewrite_closure(&yxy, &word, 9, 100_000);
        assert!(class.contains(cf.letters()), "{word} -> {cf} not reached");
    }
}

#[test]
fn rewriting_classes_share_a_normal_form() {
    let xyy = AxiomTag::Xyy.identity();
    for word in all_words(2, 4) {
        let nf = rewrite::normal_form_xyy(&word);
        for other in rewrite_closure(&xyy, &word, 8, 100_000) {
            let other = Word::new(other).unwrap();
            assert_eq!(rewrite::normal_form_xyy(&other), nf, "{word} ~ {other}");
        }
    }
}

#[test]
fn outputs_are_well_formed() {
    for word in all_words(3, 7) {
        let nf = rewrite::normal_form_xyy(&word).word;
        assert!(rewrite::is_normal_form(AxiomTag::Xyy, &nf), "{nf}");
        check_xyy_shape(&nf);
        let cf = rewrite::canonical_form_yxy(&word).word;
        assert!(rewrite::is_normal_form(AxiomTag::Yxy, &cf), "{cf}");
        check_yxy_shape(&cf);
    }
}

fn check_xyy_shape(nf: &Word) {
    let runs = nf.runs();
    let distinct: std::collections::BTreeSet<_> = runs.iter().map(|r| r.0).collect();
    assert_eq!(distinct.len(), runs.len(), "{nf}: letters must be gathered");
    let e: Vec<usize> = runs.iter().map(|r| r.1).collect();
    assert!((1..=4).contains(&e[0]));
    if let Some(&i2) = e.get(1) {
        assert!([1, 2, 4].contains(&i2));
        if e[0] > 1 {
            assert!([1, 4].contains(&i2));
        }
    }
    for &i in e.iter().skip(2) {
        assert!([1, 4].contains(&i));
    }
}

fn check_yxy_shape(cf: &Word) {
    for block in connected_decomposition(cf) {
        let l = block.word.letters();
        if !block.connected {
            continue;
        }
        let content = block.word.content();
        match content.len() {
            1 => assert!((2..=4).contains(&l.len()), "{cf}"),
            2 => assert!(l.len() == 3 && l[0] == l[2] || l.len() == 4 && l[0] == l[3] && l[1] == l[2], "{cf}"),
            n => {
                assert_eq!(l.len(), n + 1, "{cf}");
                assert_eq!(l[0], l[n], "{cf}");
            }
        }
    }
}

#[test]
fn derived_examples() {
    assert_eq!(rewrite::normal_form_xyy(&w("xyxy")).word, w("xy^4"));
    assert_eq!(rewrite::normal_form_xyy(&w("x^5")).word, w("x^4"));
    assert_eq!(rewrite::canonical_form_yxy(&w("xyxy")).word, w("xy^2x"));
    assert_eq!(rewrite::canonical_form_yxy(&w("xyxzyz")).word, w("xyzx"));
    assert_eq!(rewrite::canonical_form_yxy(&w("xuvu")).word, w("xuvu"));
    let id = |s: &str| s.parse::<Identity>().unwrap();
    assert!(rewrite::consequence(AxiomTag::Xyy, &id("xyxy=xy^4")));
    assert!(!rewrite::consequence(AxiomTag::Xyy, &id("x^3y^4=x^4y^4")));
    assert!(rewrite::consequence(AxiomTag::Yxy, &id("xyx=yxy")));
    assert!(rewrite::consequence_padded(AxiomTag::Xyy, 1, 1, &id("zxyxy=zxy^4")).unwrap());
    assert!(!rewrite::consequence_padded(AxiomTag::Xyy, 1, 1, &id("xyx=xyy")).unwrap());
    assert!(rewrite::consequence_padded(AxiomTag::Xyy, 1, 1, &id("xyz=xyz")).unwrap());
}

#[test]
fn enumeration_counts() {
    let count = |a, n| rewrite::enumerate_normal_forms(a, n).unwrap().len();
    assert_eq!([count(AxiomTag::Xyy, 1), count(AxiomTag::Xyy, 2), count(AxiomTag::Xyy, 3)], [4, 9, 18]);
    assert_eq!(count(AxiomTag::Yyx, 3), 18);
    let connected_one: Vec<Word> = rewrite::enumerate_normal_forms(AxiomTag::Yxy, 1)
        .unwrap()
        .into_iter()
        .map(|f| f.word)
        .filter(|x| x.len() > 1)
        .collect();
    assert_eq!(connected_one, vec![w("x^2"), w("x^3"), w("x^4")]);
    for axiom in AxiomTag::ALL {
        for f in rewrite::enumerate_normal_forms(axiom, 3).unwrap() {
            assert_eq!(rewrite::normal_form(axiom, &f.word), f, "{axiom:?}");
        }
    }
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 1..=max_len).prop_map(|v| Word::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn idempotent(word in word_strategy(12)) {
        for axiom in AxiomTag::ALL {
            let once = rewrite::normal_form(axiom, &word);
            prop_assert_eq!(rewrite::normal_form(axiom, &once.word), once);
        }
    }

    #[test]
    fn mirror_coherence(word in word_strategy(12)) {
        let mirrored = rewrite::normal_form_xyy(&word.reversed()).word.reversed();
        prop_assert_eq!(rewrite::normal_form_yyx(&word).word, mirrored);
    }

    #[test]
    fn consequence_is_an_equivalence(u in word_strategy(8), v in word_strategy(8)) {
        for axiom in AxiomTag::ALL {
            let uv = rewrite::consequence(axiom, &Identity::new(u.clone(), v.clone()));
            let vu = rewrite::consequence(axiom, &Identity::new(v.clone(), u.clone()));
            prop_assert_eq!(uv, vu);
            prop_assert!(rewrite::consequence(axiom, &Identity::new(u.clone(), u.clone())));
        }
    }

    #[test]
    fn normal_forms_survive_concatenation(u in word_strategy(6), v in word_strategy(6)) {
        // NF is a congruence: replacing a factor by its normal form keeps the class
        let nf_u = rewrite::normal_form_xyy(&u).word;
        prop_assert_eq!(rewrite::normal_form_xyy(&u.concat(&v)), rewrite::normal_form_xyy(&nf_u.concat(&v)));
        let cf_v = rewrite::canonical_form_yxy(&v).word;
        prop_assert_eq!(rewrite::canonical_form_yxy(&u.concat(&v)), rewrite::canonical_form_yxy(&u.concat(&cf_v)));
    }
}
