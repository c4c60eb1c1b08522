use super::{Algebra, Element, GenKind};
use crate::diagram::{Bridge, BridgeKind, BridgeRelation, CleavedLink, Side};
use crate::Coeff;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Decoration elements on two distinct `+` circles.
    DecorationsCommute,
    /// Bridge and a decoration element away from its support.
    BridgeDecorationCommute,
    /// Bridges with disjoint, non-interleaved ends.
    DisjointBridgesCommute,
    /// Two right-bridge paths to the same idempotent.
    RightSquare,
    /// Left bridges sharing an arc from opposite sides.
    LeftOpposite,
    Pitchfork,
    ActiveCircle,
    TripleSlide,
    RightDecorationMerge,
    RightDecorationFission,
    LeftDecorationRightMerge,
    LeftDecorationRightFission,
    LeftDecorationLeftMerge,
    LeftDecorationLeftFission,
}

/// A relation `elt = 0` between words with common endpoints.
#[derive(Clone, Debug)]
pub struct Relation {
    pub family: Family,
    pub src: usize,
    pub tgt: usize,
    pub elt: Element,
}

struct Builder<'a> {
    a: &'a Algebra,
    out: Vec<Relation>,
}

impl Builder<'_> {
    fn push(&mut self, family: Family, src: usize, terms: &[(i64, &[u32])]) {
        let mut elt = Element::new();
        for &(c, gs) in terms {
            elt.add_term(self.a.word_id(src, gs), Coeff::from(c));
        }
        if elt.is_zero() {
            return;
        }
        let tgt = self.a.word(*elt.keys().next().unwrap()).tgt;
        debug_assert!(elt.keys().all(|&w| self.a.word(w).tgt == tgt));
        debug_assert!(elt.keys().all(|&w| self.a.grading(w) == self.a.grading(*elt.keys().next().unwrap())));
        self.out.push(Relation { family, src, tgt, elt });
    }

    fn tgt(&self, g: u32) -> usize {
        self.a.generator(g).tgt
    }

    fn bridge_gens(&self, i: usize) -> Vec<(u32, Bridge)> {
        self.a.outgoing(i).iter().filter_map(|&g| self.a.generator(g).kind.bridge().map(|b| (g, b))).collect()
    }

    fn plus_circles(&self, i: usize) -> Vec<usize> {
        let d = self.a.idempotent(i);
        (0..d.signs.len()).filter(|&c| d.signs[c]).collect()
    }
}

/// Index of the circle of `to` with the same points as circle `c` of `from`.
fn carry(from: &[Vec<usize>], c: usize, to: &[Vec<usize>]) -> Option<usize> {
    to.iter().position(|x| *x == from[c])
}

fn graded_sign(x: GenKind, y: GenKind) -> i64 {
    if x.odd() && y.odd() {
        -1
    } else {
        1
    }
}

pub(super) fn generate(a: &Algebra) -> Vec<Relation> {
    let mut b = Builder { a, out: Vec::new() };
    for i in 0..a.idempotents().len() {
        decorations_commute(&mut b, i);
        bridge_decoration_commute(&mut b, i);
        disjoint_bridges_commute(&mut b, i);
        same_target_squares(&mut b, i);
        pitchfork(&mut b, i);
        active_circle(&mut b, i);
        triple_slide(&mut b, i);
        decoration_edges(&mut b, i);
    }
    b.out
}

fn decorations_commute(b: &mut Builder, i: usize) {
    let plus = b.plus_circles(i);
    for (x, &c) in plus.iter().enumerate() {
        for &d in &plus[x + 1..] {
            for ka in [GenKind::DecRight(c), GenKind::DecLeft(c)] {
                for kb in [GenKind::DecRight(d), GenKind::DecLeft(d)] {
                    let g1 = b.a.only(i, ka).unwrap();
                    let g2 = b.a.only(b.tgt(g1), kb).unwrap();
                    let h1 = b.a.only(i, kb).unwrap();
                    let h2 = b.a.only(b.tgt(h1), ka).unwrap();
                    let s = graded_sign(ka, kb);
                    b.push(Family::DecorationsCommute, i, &[(1, &[g1, g2]), (-s, &[h1, h2])]);
                }
            }
        }
    }
}

fn bridge_decoration_commute(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    for (g, gamma) in b.bridge_gens(i) {
        let support = link.support(&gamma);
        let j = b.tgt(g);
        for c in b.plus_circles(i).into_iter().filter(|c| !support.contains(c)) {
            let c2 = carry(b.a.circles(i), c, b.a.circles(j)).expect("circle away from the bridge survives");
            for (ka, kb) in [(GenKind::DecRight(c), GenKind::DecRight(c2)), (GenKind::DecLeft(c), GenKind::DecLeft(c2))] {
                let g2 = b.a.only(j, kb).unwrap();
                let h1 = b.a.only(i, ka).unwrap();
                let Some(h2) = b.a.gen_between(b.tgt(h1), GenKind::Bridge(gamma), b.tgt(g2)) else {
                    debug_assert!(false, "disjoint support gives a matching pair");
                    continue;
                };
                let s = graded_sign(GenKind::Bridge(gamma), ka);
                b.push(Family::BridgeDecorationCommute, i, &[(1, &[g, g2]), (-s, &[h1, h2])]);
            }
        }
    }
}

fn disjoint_bridges_commute(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    for (g1, gamma) in b.bridge_gens(i) {
        for eta in link.all_bridges() {
            if eta <= gamma || link.relation(&gamma, &eta) != BridgeRelation::Disjoint {
                continue;
            }
            let s = graded_sign(GenKind::Bridge(gamma), GenKind::Bridge(eta));
            for g2 in b.a.gens_from(b.tgt(g1), GenKind::Bridge(eta)) {
                let k = b.tgt(g2);
                for h1 in b.a.gens_from(i, GenKind::Bridge(eta)) {
                    if let Some(h2) = b.a.gen_between(b.tgt(h1), GenKind::Bridge(gamma), k) {
                        b.push(Family::DisjointBridgesCommute, i, &[(1, &[g1, g2]), (-s, &[h1, h2])]);
                    }
                }
            }
        }
    }
}

/// Two-bridge paths on one side with the same endpoints. Right paths with
/// distinct first bridges agree; left paths starting on bridges that share an
/// arc from opposite sides anticommute, excluding returns along the dagger.
fn same_target_squares(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    for side in [Side::Left, Side::Right] {
        let mut by_target: BTreeMap<usize, Vec<(Bridge, [u32; 2])>> = BTreeMap::new();
        for (g1, gamma) in b.bridge_gens(i) {
            if gamma.side != side {
                continue;
            }
            let (_, dag) = link.surgery(&gamma);
            for (g2, delta) in b.bridge_gens(b.tgt(g1)) {
                if delta.side != side || (side == Side::Left && delta == dag) {
                    continue;
                }
                by_target.entry(b.tgt(g2)).or_default().push((gamma, [g1, g2]));
            }
        }
        for paths in by_target.values() {
            for (x, (gamma, w1)) in paths.iter().enumerate() {
                for (eta, w2) in &paths[x + 1..] {
                    if gamma == eta {
                        continue;
                    }
                    match side {
                        Side::Right => b.push(Family::RightSquare, i, &[(1, w1), (-1, w2)]),
                        Side::Left => {
                            if link.relation(gamma, eta) == BridgeRelation::Opposite {
                                b.push(Family::LeftOpposite, i, &[(1, w1), (1, w2)]);
                            }
                        }
                    }
                }
            }
        }
    }
}

fn pitchfork(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    for (g1, gamma) in b.bridge_gens(i) {
        if gamma.side != Side::Left {
            continue;
        }
        let (after, dag) = link.surgery(&gamma);
        for (g2, eta) in b.bridge_gens(b.tgt(g1)) {
            if eta.side == Side::Left && after.relation(&dag, &eta) == BridgeRelation::Pitchfork {
                b.push(Family::Pitchfork, i, &[(1, &[g1, g2])]);
            }
        }
    }
}

fn active_circle(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    let sigma = &b.a.idempotent(i).signs;
    for (g1, gamma) in b.bridge_gens(i) {
        if gamma.side != Side::Right {
            continue;
        }
        let (_, dag) = link.surgery(&gamma);
        for g2 in b.a.gens_from(b.tgt(g1), GenKind::Bridge(dag)) {
            let end = b.a.idempotent(b.tgt(g2));
            debug_assert_eq!(end.link, link);
            let changed: Vec<usize> = (0..sigma.len()).filter(|&c| sigma[c] != end.signs[c]).collect();
            if let [c] = changed[..] {
                if sigma[c] {
                    let e = b.a.only(i, GenKind::DecRight(c)).unwrap();
                    b.push(Family::ActiveCircle, i, &[(1, &[g1, g2]), (-1, &[e])]);
                }
            }
        }
    }
}

/// Three left arcs around one region: `e_α e_η + e_β e_ζ + e_γ e_δ = 0`,
/// summed over decorations for each common endpoint.
fn triple_slide(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    let m = &link.left;
    let mut regions = vec![None];
    regions.extend(m.arcs().into_iter().map(Some));
    for region in regions {
        let border = m.border(region);
        for x in 0..border.len() {
            for y in x + 1..border.len() {
                for z in y + 1..border.len() {
                    let (p, q, r) = (border[x], border[y], border[z]);
                    let firsts = [(Bridge::new(Side::Left, p, q), r), (Bridge::new(Side::Left, q, r), p), (Bridge::new(Side::Left, p, r), q)];
                    slide_terms(b, i, &link, &firsts);
                }
            }
        }
    }
}

fn slide_terms(b: &mut Builder, i: usize, link: &CleavedLink, firsts: &[(Bridge, (usize, usize)); 3]) {
    // per first bridge: second bridges from the third arc to a new arc
    let mut seconds: Vec<Vec<(Bridge, CleavedLink)>> = Vec::new();
    for &(first, third) in firsts {
        let (after, dag) = link.surgery(&first);
        let mut v = Vec::new();
        for eta in after.bridges(Side::Left) {
            if eta != dag && eta.touches(third) && (eta.touches(dag.arcs.0) || eta.touches(dag.arcs.1)) {
                v.push((eta, after.surgery(&eta).0));
            }
        }
        seconds.push(v);
    }
    let mut finals: Vec<&CleavedLink> = seconds[0].iter().map(|(_, l)| l).collect();
    finals.retain(|l| seconds[1..].iter().all(|s| s.iter().any(|(_, m)| m == *l)));
    finals.sort();
    finals.dedup();
    for fin in finals {
        let mut by_target: BTreeMap<usize, Vec<[u32; 2]>> = BTreeMap::new();
        let mut reached: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, &(first, _)) in firsts.iter().enumerate() {
            for (eta, l) in &seconds[k] {
                if l != fin {
                    continue;
                }
                for g1 in b.a.gens_from(i, GenKind::Bridge(first)) {
                    for g2 in b.a.gens_from(b.tgt(g1), GenKind::Bridge(*eta)) {
                        let t = b.tgt(g2);
                        by_target.entry(t).or_default().push([g1, g2]);
                        *reached.entry(t).or_default() |= 1 << k;
                    }
                }
            }
        }
        for (t, words) in by_target {
            if reached[&t] == 0b111 {
                let terms: Vec<(i64, &[u32])> = words.iter().map(|w| (1, &w[..])).collect();
                b.push(Family::TripleSlide, i, &terms);
            }
        }
    }
}

/// Relations between decoration elements and bridges sharing their support.
fn decoration_edges(b: &mut Builder, i: usize) {
    let link = b.a.link(i).clone();
    let sigma = b.a.idempotent(i).signs.clone();
    for gamma in link.all_bridges() {
        let kb = GenKind::Bridge(gamma);
        let left = gamma.side == Side::Left;
        match link.bridge_kind(&gamma) {
            BridgeKind::Merge { from: [c1, c2], to } => {
                if !(sigma[c1] && sigma[c2]) {
                    continue;
                }
                let m0 = b.a.only(i, kb).unwrap();
                let j = b.tgt(m0);
                let goal = b.a.flip(j, to);
                let (i1, i2) = (b.a.flip(i, c1), b.a.flip(i, c2));
                let m1 = b.a.gen_between(i1, kb, goal).unwrap();
                let m2 = b.a.gen_between(i2, kb, goal).unwrap();
                let r = |k: usize| b.a.only(i, GenKind::DecRight(k)).unwrap();
                let l = |k: usize| b.a.only(i, GenKind::DecLeft(k)).unwrap();
                let (r1, r2, l1, l2) = (r(c1), r(c2), l(c1), l(c2));
                let rc = b.a.only(j, GenKind::DecRight(to)).unwrap();
                let lc = b.a.only(j, GenKind::DecLeft(to)).unwrap();
                b.push(Family::RightDecorationMerge, i, &[(1, &[r1, m1]), (-1, &[r2, m2])]);
                b.push(Family::RightDecorationMerge, i, &[(1, &[r1, m1]), (-1, &[m0, rc])]);
                let (fam, s) = if left {
                    (Family::LeftDecorationLeftMerge, 1)
                } else {
                    (Family::LeftDecorationRightMerge, -1)
                };
                b.push(fam, i, &[(1, &[l1, m1]), (1, &[l2, m2]), (s, &[m0, lc])]);
            }
            BridgeKind::Fission { from: c, to: [ca, cb] } => {
                if !sigma[c] {
                    continue;
                }
                let ic = b.a.flip(i, c);
                let f0 = b.a.only(ic, kb).unwrap();
                let plus_on = |k: usize| {
                    b.a.gens_from(i, kb).into_iter().find(|&g| b.a.idempotent(b.tgt(g)).signs[k]).unwrap()
                };
                let (f1, f2) = (plus_on(ca), plus_on(cb));
                let (j1, j2) = (b.tgt(f1), b.tgt(f2));
                let r0 = b.a.only(i, GenKind::DecRight(c)).unwrap();
                let l0 = b.a.only(i, GenKind::DecLeft(c)).unwrap();
                let ra = b.a.only(j1, GenKind::DecRight(ca)).unwrap();
                let rb = b.a.only(j2, GenKind::DecRight(cb)).unwrap();
                let la = b.a.only(j1, GenKind::DecLeft(ca)).unwrap();
                let lb = b.a.only(j2, GenKind::DecLeft(cb)).unwrap();
                b.push(Family::RightDecorationFission, i, &[(1, &[r0, f0]), (-1, &[f1, ra])]);
                b.push(Family::RightDecorationFission, i, &[(1, &[r0, f0]), (-1, &[f2, rb])]);
                let (fam, s) = if left {
                    (Family::LeftDecorationLeftFission, 1)
                } else {
                    (Family::LeftDecorationRightFission, -1)
                };
                b.push(fam, i, &[(1, &[l0, f0]), (s, &[f1, la]), (s, &[f2, lb])]);
            }
        }
    }
}
