use super::*;
use crate::diagram::parse_tangle;

fn build(src: &str) -> TypeA {
    TypeA::new(parse_tangle(src).unwrap(), 20).unwrap()
}

fn find(a: &TypeA, rho: u32, signs: &[bool]) -> usize {
    (0..a.len())
        .find(|&x| {
            let s = a.state(x);
            let k = a.space().circles_of(s).keys.len();
            s.rho == rho && k == signs.len() && (0..k).all(|i| s.sign(i) == signs[i])
        })
        .unwrap_or_else(|| panic!("no state rho={rho:b} {signs:?}"))
}

fn one(x: usize) -> Chain {
    Chain::from_term(x, Coeff::from(1))
}

const KINK: &str = "inside n=1: cross(1,+), cap(1)";
const HOPF: &str = "inside n=1: cup(2), cross(1), cross(1), cap(2), cap(1)";

#[test]
fn kink_differential_and_action() {
    let a = build(KINK);
    assert_eq!(a.len(), 6);
    let z = |c, f| find(&a, 0, &[c, f]);
    let t = |c| find(&a, 1, &[c]);
    assert_eq!(a.m1(z(true, true)), &one(t(true)));
    assert_eq!(a.m1(z(false, true)), &one(t(false)));
    assert!(a.m1(z(true, false)).is_zero());
    assert!(a.m1(z(false, false)).is_zero());
    let alg = a.algebra().clone();
    let plus = a.idem(z(true, false));
    let el = alg.only(plus, GenKind::DecLeft(0)).unwrap();
    assert_eq!(a.act_word(z(true, false), alg.gen_word(el)), one(t(false)));
    assert_eq!(a.grading(z(true, true)), Grading::new(0, 5));
    assert_eq!(a.grading(t(true)), Grading::new(1, 5));
}

#[test]
fn unknot_half_right_decoration() {
    let a = build("inside n=1: cap(1)");
    let plus = find(&a, 0, &[true]);
    let minus = find(&a, 0, &[false]);
    assert_eq!(a.grading(plus), Grading::new(0, 1));
    assert_eq!(a.grading(minus), Grading::new(0, -1));
    let alg = a.algebra().clone();
    let er = alg.only(a.idem(plus), GenKind::DecRight(0)).unwrap();
    assert_eq!(a.act_word(plus, alg.gen_word(er)), one(minus));
    assert!(a.m1(plus).is_zero());
}

#[test]
fn hopf_differential_and_action() {
    let a = build(HOPF);
    assert_eq!(a.len(), 12);
    assert_eq!(a.space().tangle.n_plus(), 2);
    // crossing 0 resolved 0, crossing 1 resolved 1
    let s01 = find(&a, 0b10, &[true]);
    let s11_pm = find(&a, 0b11, &[true, false]);
    let s11_mp = find(&a, 0b11, &[false, true]);
    assert_eq!(a.m1(s01), &one(s11_pm).neg());
    let alg = a.algebra().clone();
    let el = alg.only(a.idem(s01), GenKind::DecLeft(0)).unwrap();
    assert_eq!(a.act_word(s01, alg.gen_word(el)), one(s11_mp).neg());
}

#[test]
fn structure_identities_hold() {
    for src in [
        KINK,
        HOPF,
        "inside n=1: cap(1)",
        "inside n=2: cross(1), crossneg(3), cap(2), cap(1)",
        "inside n=2: cross(1), cross(2), cross(1), cap(3), cap(1)",
        "inside n=2: cross(2), cross(2), cap(1), cap(1)",
    ] {
        for c in build(src).verify() {
            assert!(c.passed(), "{src}: {} {:?}", c.name, c.failures);
        }
    }
}

#[test]
fn flipped_sign_is_detected() {
    let mut a = build(HOPF);
    // an entry x → y where y itself has a nonzero differential
    let (x, y) = (0..a.len())
        .flat_map(|x| a.m1[x].keys().map(move |&y| (x, y)).collect::<Vec<_>>())
        .find(|&(_, y)| !a.m1[y].is_zero())
        .expect("a composable pair of differential entries");
    let c = a.m1[x].coeff(&y);
    a.m1[x].add_term(y, -c.clone() - c);
    assert!(!a.verify()[0].passed());
}
