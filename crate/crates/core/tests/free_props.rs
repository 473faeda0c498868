mod support;

use semiwb::catalog;
use semiwb::free::{
    free_in_generated_pseudovariety, free_nilpotent, fully_invariant_quotient, prop133_cover_objects,
    prop133_f_construction, pseudovariety_member, rees_product_generated,
};
use semiwb::semigroup::{direct_product, is_isomorphic};
use semiwb::words::{satisfies, satisfies_zero_law};
use semiwb::{Identity, Word};

fn id(s: &str) -> Identity {
    s.parse().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn nilpotent_free_semigroups() {
    for (k, n, size) in [(1, 3, 4), (2, 3, 15), (3, 3, 40), (2, 2, 7)] {
        let f = free_nilpotent(k, n).unwrap();
        assert_eq!(f.order(), size);
        assert!(f.semigroup.is_associative());
        let long = Word::new((0..=n as u8).collect()).unwrap();
        assert!(satisfies_zero_law(&f.semigroup, &long).unwrap());
        let shorter = Word::new((0..n as u8).collect()).unwrap();
        assert!(!satisfies(&f.semigroup, &Identity::new(shorter, long)).unwrap());
    }
}

#[test]
fn quotients_satisfy_their_identities() {
    let f = free_nilpotent(2, 3).unwrap();
    for e in ["x^2y=xy^2", "xy=yx", "xyx=xyy", "xyx=yxy", "x^2=x^3"] {
        let q = fully_invariant_quotient(&f, &[id(e)]).unwrap();
        assert!(support::holds(&q.semigroup, &id(e)), "{e}");
        assert!(q.semigroup.is_associative());
    }
}

#[test]
fn sapir_semigroup() {
    let f = free_nilpotent(2, 3).unwrap();
    let s = fully_invariant_quotient(&f, &[id("x^2y=xy^2")]).unwrap();
    assert_eq!(s.order(), 13);
    assert!(satisfies_zero_law(&s.semigroup, &w("abcd")).unwrap());
    assert!(satisfies(&s.semigroup, &id("x^2y=xy^2")).unwrap());
    let labels = s.label_strings();
    for expected in ["0", "a", "b", "a^2", "ab", "ba", "b^2", "a^2b", "ba^2"] {
        assert!(labels.iter().any(|l| l == expected), "{expected} in {labels:?}");
    }
    // merged classes
    assert_eq!(s.element_of(&w("a^2b")), s.evaluate_generators(&w("abb")));
    assert_eq!(s.element_of(&w("ba^2")), s.evaluate_generators(&w("bba")));
}

#[test]
fn sapir_quotient_generates_a_copy_of_n4() {
    let f = free_nilpotent(2, 3).unwrap();
    let s = fully_invariant_quotient(&f, &[id("x^2y=xy^2")]).unwrap();
    let (a, b) = (s.element_of(&w("a")).unwrap(), s.element_of(&w("b")).unwrap());
    for p in [2, 3] {
        let (_, gen) = rees_product_generated(&s.semigroup, &catalog::z(p), &[(a, 1), (b, 2 % p)]).unwrap();
        assert_eq!(gen.order(), 15);
        assert!(is_isomorphic(&gen, &f.semigroup).unwrap(), "p = {p}");
    }
}

#[test]
fn cover_objects() {
    let xyy = prop133_cover_objects(&id("xyx=xyy"), 2, 3).unwrap();
    assert_eq!(xyy.n_flat.order(), 15);
    assert_eq!(xyy.s.order(), 13);
    let com = prop133_cover_objects(&id("xy=yx"), 2, 2).unwrap();
    assert_eq!(com.s.order(), 6);
    assert!(com.s.semigroup.is_commutative());
    assert!(prop133_cover_objects(&id("xyx=xy"), 2, 3).is_err());
}

#[test]
fn f_construction_surjects() {
    for (e, n) in [("xyx=xyy", 3), ("xy=yx", 2)] {
        let fc = prop133_f_construction(&id(e), 2, n, &catalog::r2()).unwrap();
        let phi = fc.surjection.expect("surjection onto the flat cover");
        assert!(phi.is_homomorphism(&fc.f, &fc.cover.n_flat.semigroup));
        assert!(phi.is_surjective(fc.cover.n_flat.order()));
    }
    assert!(prop133_f_construction(&id("xy=yx"), 2, 2, &catalog::z(1)).is_err());
}

#[test]
fn pseudovariety_membership() {
    let l2 = catalog::l2();
    assert_eq!(free_in_generated_pseudovariety(&l2, 2).unwrap().order(), 2);
    assert!(pseudovariety_member(&l2, &direct_product(&l2, &l2)).unwrap());
    assert!(!pseudovariety_member(&catalog::n2(), &catalog::u1()).unwrap());
    assert!(pseudovariety_member(&catalog::z(2), &catalog::z(4)).unwrap());
    assert!(!pseudovariety_member(&catalog::z(3), &catalog::z(4)).unwrap());
}
