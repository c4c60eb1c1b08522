//! Randomized and exhaustive checks of structural invariants.

use cleaved::corpus::{splits, LINKS};
use cleaved::diagram::{parse_tangle, Bridge, BridgeRelation, CleavedLink, Side, Slice, TangleDiagram, TangleSide};
use cleaved::homology::{homology, Complex};
use cleaved::linalg::{smith_normal_form, Matrix};
use cleaved::pairing::{box_tensor, chain_isomorphism, glue, Oracle};
use cleaved::simplify::{simplify_type_a, simplify_type_d, ReducedA};
use cleaved::type_a::TypeA;
use cleaved::type_d::TypeD;
use cleaved::{BigInt, Chain, Grading};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Slice word built from arbitrary moves: each move is read modulo the moves
/// valid at the current width.
#[derive(Default)]
struct Word {
    slices: Vec<Slice>,
    width: usize,
    crossings: usize,
}

impl Word {
    fn push(&mut self, moves: &[(u8, u8, bool)], max_crossings: usize) {
        for &(kind, pos, over) in moves {
            let (pos, w) = (pos as usize, self.width);
            match kind % 3 {
                0 if w <= 4 => {
                    self.slices.push(Slice::Cup(pos % (w + 1)));
                    self.width += 2;
                }
                1 if w >= 2 => {
                    self.slices.push(Slice::Cap(pos % (w - 1)));
                    self.width -= 2;
                }
                2 if w >= 2 && self.crossings < max_crossings => self.cross(pos % (w - 1), over),
                _ => {}
            }
        }
    }

    fn cross(&mut self, at: usize, over_high: bool) {
        self.slices.push(Slice::Cross { at, over_high });
        self.crossings += 1;
    }

    /// Caps leftover strands.
    fn close(mut self) -> TangleDiagram {
        while self.width > 0 {
            self.slices.push(Slice::Cap(0));
            self.width -= 2;
        }
        TangleDiagram::new(TangleSide::Outside, 0, self.slices, None, &vec![None; self.crossings], None).unwrap()
    }
}

fn closed_diagram(moves: &[(u8, u8, bool)], max_crossings: usize) -> TangleDiagram {
    let mut w = Word::default();
    w.push(moves, max_crossings);
    w.close()
}

fn moves() -> impl Strategy<Value = Vec<(u8, u8, bool)>> {
    prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), 0..14)
}

fn euler(c: &Complex) -> BTreeMap<i32, i64> {
    let mut out = BTreeMap::new();
    for g in &c.gradings {
        *out.entry(g.q2).or_insert(0) += if g.h % 2 == 0 { 1 } else { -1 };
    }
    out.retain(|_, v| *v != 0);
    out
}

fn state_census(t: &TangleDiagram) -> BTreeMap<Grading, usize> {
    let o = Oracle::new(t.clone(), 12).unwrap();
    let mut out = BTreeMap::new();
    for g in &o.complex.gradings {
        *out.entry(*g).or_insert(0) += 1;
    }
    out
}

fn with_order(t: &TangleDiagram, order: Vec<usize>) -> TangleDiagram {
    let asserted: Vec<Option<i8>> = t.signs.iter().map(|&s| Some(s)).collect();
    TangleDiagram::new(t.side, t.n, t.slices.clone(), None, &asserted, Some(order)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn snf_transforms_are_unimodular(rows in prop::collection::vec(prop::collection::vec(-12i64..12, 4), 1..5)) {
        let a = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let s = smith_normal_form(&a);
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        for (i, f) in s.factors.iter().enumerate() {
            prop_assert_eq!(s.d.get(i, i), f);
            prop_assert!(f.is_positive());
            if i > 0 {
                prop_assert!((f % &s.factors[i - 1]).is_zero());
            }
        }
    }

    #[test]
    fn homology_ignores_basis_order(link in 0..LINKS.len(), seed in prop::collection::vec(any::<u32>(), 64)) {
        let c = Oracle::new(parse_tangle(LINKS[link].text).unwrap(), 12).unwrap().complex;
        let n = c.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, seed[i % seed.len()] as usize % (i + 1));
        }
        let mut keys = vec![String::new(); n];
        let mut gradings = vec![Grading::default(); n];
        let mut d = vec![Chain::new(); n];
        for x in 0..n {
            keys[perm[x]] = c.keys[x].clone();
            gradings[perm[x]] = c.gradings[x];
            d[perm[x]] = c.d[x].map_keys(|y| perm[*y]);
        }
        let shuffled = Complex::new(keys, gradings, d);
        prop_assert_eq!(homology(&shuffled).unwrap(), homology(&c).unwrap());
    }

    #[test]
    fn euler_characteristic_survives_homology(m in moves()) {
        let t = closed_diagram(&m, 6);
        let c = Oracle::new(t, 12).unwrap().complex;
        let h = homology(&c).unwrap();
        let mut he = h.euler();
        he.retain(|_, v| *v != 0);
        prop_assert_eq!(he, euler(&c));
    }

    #[test]
    fn crossing_order_changes_nothing_graded(m in moves(), seed in prop::collection::vec(any::<u32>(), 8)) {
        let t = closed_diagram(&m, 6);
        let k = t.crossing_count();
        let mut order: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            order.swap(i, seed[i % seed.len()] as usize % (i + 1));
        }
        let u = with_order(&t, order);
        prop_assert_eq!(state_census(&t), state_census(&u));
        let (ct, cu) = (Oracle::new(t, 12).unwrap().complex, Oracle::new(u, 12).unwrap().complex);
        prop_assert_eq!(homology(&ct).unwrap(), homology(&cu).unwrap());
    }

    #[test]
    fn distant_slices_commute(before in moves(), after in moves(), pick in any::<(u8, u8)>(), overs in any::<(bool, bool)>()) {
        let mut w = Word::default();
        w.push(&before, 3);
        while w.width < 4 {
            w.slices.push(Slice::Cup(0));
            w.width += 2;
        }
        let k = w.slices.len();
        let lo = pick.0 as usize % (w.width - 3);
        let hi = lo + 2 + pick.1 as usize % (w.width - 3 - lo);
        w.cross(lo, overs.0);
        w.cross(hi, overs.1);
        w.push(&after, 6);
        let t = w.close();
        let mut slices = t.slices.clone();
        slices.swap(k, k + 1);
        let ci = t.crossings.iter().position(|&s| s == k).unwrap();
        let mut signs: Vec<Option<i8>> = t.signs.iter().map(|&s| Some(s)).collect();
        signs.swap(ci, ci + 1);
        let u = TangleDiagram::new(TangleSide::Outside, 0, slices, None, &signs, None).unwrap();
        prop_assert_eq!(state_census(&t), state_census(&u));
    }

    #[test]
    fn random_cuts_match_the_oracle(m in moves()) {
        let link = closed_diagram(&m, 5);
        let expected = homology(&Oracle::new(link.clone(), 12).unwrap().complex).unwrap();
        for s in splits(&link, 2).unwrap() {
            let oracle = Oracle::new(glue(&s.inside, &s.outside).unwrap(), 12).unwrap();
            let a = Arc::new(TypeA::new(s.inside.clone(), 12).unwrap());
            let d = TypeD::new(s.outside.clone(), 12).unwrap();
            let plain = ReducedA::identity(a.clone());
            let bx = box_tensor(&plain, &d).unwrap();
            let iso = chain_isomorphism(&oracle, &plain, &d, &bx);
            prop_assert!(iso.passed(), "level {}: {:?}", s.level, iso.failures);
            let ra = simplify_type_a(a);
            let rd = simplify_type_d(&d).structure;
            prop_assert!(d.depth().unwrap() <= d.len() + 1);
            for (x, y) in [(&ra, &d), (&plain, &rd), (&ra, &rd)] {
                let c = box_tensor(x, y).unwrap().complex;
                c.check().unwrap();
                prop_assert_eq!(&homology(&c).unwrap(), &expected, "level {}", s.level);
            }
        }
    }
}

#[test]
fn surgery_is_an_involution() {
    for n in 1..=3 {
        for l in CleavedLink::all(n) {
            for b in l.all_bridges() {
                let (l2, dag) = l.surgery(&b);
                assert!(l2.is_bridge(&dag));
                let (l3, back) = l2.surgery(&dag);
                assert_eq!(l3, l);
                assert_eq!(back, b);
            }
        }
    }
}

/// A same-side bridge `(a, b)` of `γ` becomes the bridge from `b` to whichever
/// new arc of `L_γ` borders it. This map is two to one onto the opposite-side
/// bridges of `γ†`, and disjoint bridges survive unchanged.
#[test]
fn surgery_maps_same_side_bridges_two_to_one() {
    let mut checked = 0;
    for n in 1..=3 {
        for l in CleavedLink::all(n) {
            for side in [Side::Left, Side::Right] {
                for g in l.bridges(side) {
                    let (lg, dag) = l.surgery(&g);
                    let fresh: Vec<_> = lg.matching(side).arcs().into_iter().filter(|x| !l.matching(side).contains(*x)).collect();
                    let mut hits: BTreeMap<Bridge, usize> = BTreeMap::new();
                    for h in l.bridges(side) {
                        match l.relation(&g, &h) {
                            BridgeRelation::SameSide => {
                                let b = if g.touches(h.arcs.0) { h.arcs.1 } else { h.arcs.0 };
                                let images: Vec<Bridge> = fresh
                                    .iter()
                                    .map(|&x| Bridge::new(side, x, b))
                                    .filter(|e| lg.is_bridge(e))
                                    .collect();
                                assert_eq!(images.len(), 1, "{l:?} {g:?} {h:?}");
                                assert_eq!(lg.relation(&dag, &images[0]), BridgeRelation::Opposite);
                                *hits.entry(images[0]).or_insert(0) += 1;
                            }
                            BridgeRelation::Disjoint => {
                                assert!(lg.is_bridge(&h));
                                assert_eq!(lg.relation(&dag, &h), BridgeRelation::Disjoint);
                            }
                            _ => {}
                        }
                    }
                    let mut opposite: Vec<Bridge> =
                        lg.bridges(side).into_iter().filter(|e| lg.relation(&dag, e) == BridgeRelation::Opposite).collect();
                    opposite.sort();
                    assert_eq!(hits.keys().copied().collect::<Vec<_>>(), opposite, "{l:?} {g:?}");
                    assert!(hits.values().all(|&k| k == 2), "{l:?} {g:?} {hits:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}
