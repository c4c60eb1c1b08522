use super::*;

fn alg(n: usize) -> Arc<Algebra> {
    algebra(n).unwrap()
}

#[test]
fn empty_link_algebra() {
    let a = alg(0);
    assert_eq!(a.idempotents().len(), 1);
    assert!(a.generators().is_empty());
}

#[test]
fn n1_matches_the_hand_computation() {
    let a = alg(1);
    assert_eq!(a.idempotents().len(), 2);
    let mut gradings: Vec<(GenKind, Grading)> = a.generators().iter().map(|g| (g.kind, g.kind.grading())).collect();
    gradings.sort();
    assert_eq!(gradings, vec![(GenKind::DecRight(0), Grading::new(0, -2)), (GenKind::DecLeft(0), Grading::new(1, 2))]);
    for g in a.generators() {
        assert!(a.idempotent(g.src).signs[0]);
        assert!(!a.idempotent(g.tgt).signs[0]);
    }
    let b = a.basis();
    assert_eq!(b.len(), 4);
    for &x in &b {
        assert!(a.d_word(x).is_zero());
        for &y in &b {
            let (wx, wy) = (a.word(x), a.word(y));
            if !wx.gens.is_empty() && !wy.gens.is_empty() {
                assert!(a.mul_words(x, y).is_zero());
            }
        }
    }
    let plus = a.idempotents().iter().position(|d| d.signs[0]).unwrap();
    let el = a.only(plus, GenKind::DecLeft(0)).unwrap();
    let w = a.gen_word(el);
    assert_eq!(a.mul_words(a.unit(plus), w), Element::from_term(w, 1.into()));
}

/// Independent count: pairs of planar matchings on four points, circles by
/// union-find on the arcs, `2^circles` decorations each.
#[test]
fn n2_idempotent_count() {
    let matchings: [[(usize, usize); 2]; 2] = [[(0, 1), (2, 3)], [(0, 3), (1, 2)]];
    let mut total = 0;
    for l in &matchings {
        for r in &matchings {
            let mut p: Vec<usize> = (0..4).collect();
            fn root(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] == x { x } else { let r = root(p, p[x]); p[x] = r; r }
            }
            for &(a, b) in l.iter().chain(r.iter()) {
                let (ra, rb) = (root(&mut p, a), root(&mut p, b));
                p[ra] = rb;
            }
            let circles = (0..4).filter(|&x| root(&mut p, x) == x).count();
            total += 1 << circles;
        }
    }
    assert_eq!(alg(2).idempotents().len(), total);
}

#[test]
fn n2_negative_fission_only_to_double_negative() {
    let a = alg(2);
    for g in a.generators() {
        let GenKind::Bridge(b) = g.kind else { continue };
        let src = a.idempotent(g.src);
        if let crate::diagram::BridgeKind::Fission { from, to } = src.link.bridge_kind(&b) {
            if !src.signs[from] {
                let t = a.idempotent(g.tgt);
                assert!(!t.signs[to[0]] && !t.signs[to[1]]);
            }
        }
    }
}

#[test]
fn consistency_up_to_n2() {
    for n in 0..=2 {
        for c in alg(n).consistency() {
            assert!(c.passed(), "n={n} {}: {:?}", c.name, c.failures);
        }
    }
}

#[test]
fn active_circle_product() {
    let a = alg(2);
    let r = a.relations().iter().find(|r| r.family == Family::ActiveCircle).expect("right fission/merge pair at n=2");
    let (two, one): (Vec<usize>, Vec<usize>) = r.elt.keys().partition(|&&w| a.word(w).gens.len() == 2);
    assert_eq!(a.mul_words(a.gen_word(a.word(two[0]).gens[0]), a.gen_word(a.word(two[0]).gens[1])), a.reduce(&Element::from_term(one[0], 1.into())));
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(algebra(MAX_N + 1), Err(Error::Cap(_))));
}
