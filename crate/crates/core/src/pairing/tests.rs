use super::*;
use crate::diagram::parse_tangle;

fn t(src: &str) -> TangleDiagram {
    parse_tangle(src).unwrap()
}

const UNKNOT_LEFT: &str = "inside n=1: cap(1)";
const LEFT_TREFOIL_D: &str = "outside n=1: cup(3), crossneg(2), crossneg(2), crossneg(2), cap(3), cap(1)";
const RIGHT_TREFOIL_D: &str = "outside n=1: cup(3), cross(2), cross(2), cross(2), cap(3), cap(1)";
const HOPF_A: &str = "inside n=1: cup(2), cross(1,+), cross(1,+), cap(2), cap(1)";

fn left_trefoil() -> HomologyTable {
    HomologyTable::from_rows(&[(-3, -18, 1, &[]), (-2, -10, 1, &[]), (-2, -14, 0, &[2]), (0, -2, 1, &[]), (0, -6, 1, &[])])
}

#[test]
fn unknot_against_left_trefoil() {
    for simplify in [false, true] {
        let p = pair(t(UNKNOT_LEFT), t(LEFT_TREFOIL_D), simplify, 20).unwrap();
        assert_eq!(p.homology, left_trefoil(), "simplify={simplify}");
    }
    let p = pair(t(UNKNOT_LEFT), t(LEFT_TREFOIL_D), true, 20).unwrap();
    assert_eq!(p.box_complex.complex.len(), 6);
    let twos: usize = p.box_complex.complex.d.iter().flat_map(|c| c.iter()).filter(|(_, v)| v.magnitude() == &2u32.into()).count();
    assert_eq!(twos, 1);
}

#[test]
fn oracle_matches_the_left_trefoil() {
    let o = oracle_homology(&t(UNKNOT_LEFT), &t(LEFT_TREFOIL_D), 20).unwrap();
    assert_eq!(o, left_trefoil());
}

#[test]
fn unsimplified_box_is_the_khovanov_complex() {
    let cases = [
        (UNKNOT_LEFT, LEFT_TREFOIL_D),
        (UNKNOT_LEFT, RIGHT_TREFOIL_D),
        (HOPF_A, "outside n=1: cap(1)"),
        (HOPF_A, LEFT_TREFOIL_D),
        ("inside n=1: cross(1,+), cap(1)", "outside n=1: cross(1), cap(1)"),
        ("inside n=2: cross(1), crossneg(3), cap(2), cap(1)", "outside n=2: cap(2), cap(1)"),
        ("inside n=2: cap(2), cap(1)", "outside n=2: cross(2), cross(2), cap(1), cap(1)"),
    ];
    for (l, r) in cases {
        let (ti, to) = (t(l), t(r));
        let g = glue(&ti, &to).unwrap_or_else(|e| panic!("{l} | {r}: {e}"));
        let o = Oracle::new(g, 20).unwrap();
        o.complex.check().unwrap();
        let a = ReducedA::identity(Arc::new(TypeA::new(ti, 20).unwrap()));
        let d = TypeD::new(to, 20).unwrap();
        let bx = box_tensor(&a, &d).unwrap();
        let c = chain_isomorphism(&o, &a, &d, &bx);
        assert!(c.passed(), "{l} | {r}: {:?}", c.failures);
    }
}

#[test]
fn simplified_pairs_agree_with_the_oracle() {
    for (l, r) in [(HOPF_A, LEFT_TREFOIL_D), (HOPF_A, RIGHT_TREFOIL_D), ("inside n=1: cup(3), crossneg(2), crossneg(2), crossneg(2), cap(3), cap(1)", RIGHT_TREFOIL_D)] {
        let (ti, to) = (t(l), t(r));
        let expected = oracle_homology(&ti, &to, 20).unwrap_or_else(|e| panic!("{l} | {r}: {e}"));
        let p = pair(ti, to, true, 20).unwrap();
        p.box_complex.complex.check().unwrap();
        assert_eq!(p.homology, expected, "{l} | {r}");
    }
}

#[test]
fn strand_counts_must_agree() {
    let a = ReducedA::identity(Arc::new(TypeA::new(t("inside n=2: cap(2), cap(1)"), 20).unwrap()));
    let d = TypeD::new(t("outside n=1: cap(1)"), 20).unwrap();
    assert!(matches!(box_tensor(&a, &d), Err(Error::Mismatch(_))));
}

fn doubles(c: &Complex) -> usize {
    c.d.iter().flat_map(|c| c.iter()).filter(|(_, v)| v.magnitude() == &2u32.into()).count()
}

#[test]
fn hopf_against_left_trefoil() {
    let p = pair(t(HOPF_A), t(LEFT_TREFOIL_D), true, 20).unwrap();
    assert_eq!(p.box_complex.complex.len(), 12);
    assert_eq!(doubles(&p.box_complex.complex), 2);
    let expected = HomologyTable::from_rows(&[
        (-3, -16, 1, &[]),
        (-2, -8, 1, &[]),
        (-1, -8, 1, &[]),
        (0, 0, 2, &[]),
        (0, -4, 1, &[]),
        (2, 4, 1, &[]),
        (2, 8, 1, &[]),
        (-2, -12, 0, &[2]),
        (0, -4, 0, &[2]),
    ]);
    assert_eq!(p.homology, expected);
}

#[test]
fn right_trefoil_against_left_trefoil() {
    let a = "inside n=1: cup(3), crossneg(2), crossneg(2), crossneg(2), cap(3), cap(1)";
    let p = pair(t(a), t(LEFT_TREFOIL_D), true, 20).unwrap();
    let expected = HomologyTable::from_rows(&[
        (-3, -14, 1, &[]),
        (-2, -6, 1, &[]),
        (-1, -6, 1, &[]),
        (0, -2, 2, &[]),
        (0, 2, 2, &[]),
        (1, 6, 1, &[]),
        (2, 6, 1, &[]),
        (3, 14, 1, &[]),
        (-2, -10, 0, &[2]),
        (0, -2, 0, &[2]),
        (1, 2, 0, &[2]),
        (3, 10, 0, &[2]),
    ]);
    assert_eq!(p.homology, expected);
}

