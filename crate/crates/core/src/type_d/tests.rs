use super::*;
use crate::diagram::parse_tangle;

fn build(src: &str) -> TypeD {
    TypeD::new(parse_tangle(src).unwrap(), 20).unwrap()
}

const UNKNOT_RIGHT: &str = "outside n=1: cap(1)";
const LEFT_TREFOIL: &str = "outside n=1: cup(3), crossneg(2), crossneg(2), crossneg(2), cap(3), cap(1)";

#[test]
fn crossingless_right_half() {
    let d = build(UNKNOT_RIGHT);
    assert_eq!(d.len(), 2);
    let plus = (0..2).find(|&y| d.state(y).sign(0)).unwrap();
    let minus = 1 - plus;
    let alg = d.algebra().clone();
    let el = alg.only(d.idem(plus), GenKind::DecLeft(0)).unwrap();
    assert_eq!(d.delta(plus), &DChain::from_term((alg.gen_word(el), minus), Coeff::from(1)));
    assert!(d.delta(minus).is_zero());
    assert_eq!(d.depth().unwrap(), 2);
    assert_eq!(d.iterate(plus, 0), PathChain::from_term((vec![], plus), Coeff::from(1)));
}

#[test]
fn structure_equation_holds() {
    for src in [
        UNKNOT_RIGHT,
        LEFT_TREFOIL,
        "outside n=1: cup(3), cross(2), cross(2), cross(2), cap(3), cap(1)",
        "outside n=1: cross(1), cap(1)",
        "outside n=2: cap(1), cap(1)",
        "outside n=2: cap(2), cap(1)",
        "outside n=2: cross(2), cap(1), cap(1)",
        "outside n=2: cross(1), crossneg(3), cap(2), cap(1)",
        "outside n=2: cross(2), cross(2), cap(1), cap(1)",
        "outside n=2: cross(1), cross(2), cross(1), cap(3), cap(1)",
    ] {
        let d = build(src);
        for c in d.verify() {
            assert!(c.passed(), "{src}: {} {:?}", c.name, c.failures);
        }
        d.depth().unwrap();
    }
}

#[test]
fn flipped_sign_leaves_a_residual() {
    let mut d = build("outside n=2: cross(2), cap(1), cap(1)");
    let y = (0..d.len()).find(|&y| d.delta(y).len() >= 2).unwrap();
    let (&k, c) = d.delta(y).iter().next().map(|(k, c)| (k, c.clone())).unwrap();
    d.delta_mut(y).add_term(k, -c.clone() - c);
    assert!(!d.verify()[2].passed());
}
