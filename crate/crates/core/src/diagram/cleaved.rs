use super::matching::{Arc, Matching};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Union of a left and a right planar matching on the same `2n` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CleavedLink {
    pub left: Matching,
    pub right: Matching,
}

/// Surgery arc between two arcs of one side. The arc pair is canonical:
/// two arcs border at most one common region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bridge {
    pub side: Side,
    pub arcs: (Arc, Arc),
}

impl Bridge {
    pub fn new(side: Side, a: Arc, b: Arc) -> Self {
        Bridge { side, arcs: (a.min(b), a.max(b)) }
    }

    pub fn touches(&self, a: Arc) -> bool {
        self.arcs.0 == a || self.arcs.1 == a
    }
}

/// Effect of a bridge on circles, by circle index before/after surgery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeKind {
    Merge { from: [usize; 2], to: usize },
    Fission { from: usize, to: [usize; 2] },
}

/// How a second bridge sits relative to a first one on the same link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeRelation {
    Equal,
    /// Other side, or no shared arc and not interleaved.
    Disjoint,
    /// Same region, ends interleaved around it.
    Pitchfork,
    /// One shared arc, approached from the same region.
    SameSide,
    /// One shared arc, approached from the opposite region.
    Opposite,
}

impl CleavedLink {
    pub fn new(left: Matching, right: Matching) -> Self {
        assert_eq!(left.points(), right.points());
        CleavedLink { left, right }
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn matching(&self, side: Side) -> &Matching {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn all(n: usize) -> Vec<CleavedLink> {
        let ms = Matching::all(n);
        let mut out = Vec::new();
        for l in &ms {
            for r in &ms {
                out.push(CleavedLink::new(l.clone(), r.clone()));
            }
        }
        out
    }

    /// Circles as sorted point lists, ordered by smallest point.
    pub fn circles(&self) -> Vec<Vec<usize>> {
        let pts = self.left.points();
        let mut seen = vec![false; pts];
        let mut out = Vec::new();
        for s in 0..pts {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            loop {
                seen[p] = true;
                c.push(p);
                let q = self.left.partner(p);
                seen[q] = true;
                c.push(q);
                p = self.right.partner(q);
                if p == s {
                    break;
                }
            }
            c.sort_unstable();
            out.push(c);
        }
        out
    }

    /// Circle index of every point.
    pub fn circle_of(&self) -> Vec<usize> {
        let mut v = vec![0; self.left.points()];
        for (i, c) in self.circles().iter().enumerate() {
            for &p in c {
                v[p] = i;
            }
        }
        v
    }

    pub fn bridges(&self, side: Side) -> Vec<Bridge> {
        self.matching(side).bridges().into_iter().map(|(a, b)| Bridge::new(side, a, b)).collect()
    }

    pub fn all_bridges(&self) -> Vec<Bridge> {
        let mut v = self.bridges(Side::Left);
        v.extend(self.bridges(Side::Right));
        v
    }

    pub fn is_bridge(&self, b: &Bridge) -> bool {
        let m = self.matching(b.side);
        m.contains(b.arcs.0) && m.contains(b.arcs.1) && m.shared_region(b.arcs.0, b.arcs.1).is_some()
    }

    /// `(L_γ, γ†)`.
    pub fn surgery(&self, b: &Bridge) -> (CleavedLink, Bridge) {
        let (m, (c, d)) = self.matching(b.side).surgery(b.arcs.0, b.arcs.1);
        let link = match b.side {
            Side::Left => CleavedLink::new(m, self.right.clone()),
            Side::Right => CleavedLink::new(self.left.clone(), m),
        };
        (link, Bridge::new(b.side, c, d))
    }

    pub fn bridge_kind(&self, b: &Bridge) -> BridgeKind {
        let before = self.circle_of();
        let (after_link, dag) = self.surgery(b);
        let after = after_link.circle_of();
        let (c1, c2) = (before[b.arcs.0 .0], before[b.arcs.1 .0]);
        let (d1, d2) = (after[dag.arcs.0 .0], after[dag.arcs.1 .0]);
        if c1 != c2 {
            debug_assert_eq!(d1, d2);
            BridgeKind::Merge { from: [c1, c2], to: d1 }
        } else {
            debug_assert_ne!(d1, d2);
            BridgeKind::Fission { from: c1, to: [d1, d2] }
        }
    }

    /// Circles of `self` touched by `b`.
    pub fn support(&self, b: &Bridge) -> Vec<usize> {
        match self.bridge_kind(b) {
            BridgeKind::Merge { from, .. } => from.to_vec(),
            BridgeKind::Fission { from, .. } => vec![from],
        }
    }

    fn region(&self, b: &Bridge) -> Option<Arc> {
        self.matching(b.side).shared_region(b.arcs.0, b.arcs.1).expect("bridge of this link")
    }

    /// Classifies `h` relative to `g`.
    pub fn relation(&self, g: &Bridge, h: &Bridge) -> BridgeRelation {
        if g == h {
            return BridgeRelation::Equal;
        }
        if g.side != h.side {
            return BridgeRelation::Disjoint;
        }
        let shared = [h.arcs.0, h.arcs.1].iter().filter(|&&a| g.touches(a)).count();
        let (rg, rh) = (self.region(g), self.region(h));
        if shared == 1 {
            return if rg == rh { BridgeRelation::SameSide } else { BridgeRelation::Opposite };
        }
        if rg != rh {
            return BridgeRelation::Disjoint;
        }
        let border = self.matching(g.side).border(rg);
        let pos = |a: Arc| border.iter().position(|&x| x == a).unwrap();
        let (p1, p2) = (pos(g.arcs.0).min(pos(g.arcs.1)), pos(g.arcs.0).max(pos(g.arcs.1)));
        let inside = |a: Arc| (p1 + 1..p2).contains(&pos(a));
        if inside(h.arcs.0) != inside(h.arcs.1) {
            BridgeRelation::Pitchfork
        } else {
            BridgeRelation::Disjoint
        }
    }
}

impl fmt::Display for CleavedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left, self.right)
    }
}

/// Cleaved link with a sign per circle (`true` is `+`), circles in the order
/// of [`CleavedLink::circles`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decorated {
    pub link: CleavedLink,
    pub signs: Vec<bool>,
}

impl Decorated {
    pub fn all(n: usize) -> Vec<Decorated> {
        let mut out = Vec::new();
        for link in CleavedLink::all(n) {
            let k = link.circles().len();
            for bits in 0..1u32 << k {
                let signs = (0..k).map(|i| bits >> i & 1 == 1).collect();
                out.push(Decorated { link: link.clone(), signs });
            }
        }
        out
    }

    /// `#(+) − #(−)` over circles.
    pub fn iota(&self) -> i32 {
        self.signs.iter().map(|&s| if s { 1 } else { -1 }).sum()
    }

    pub fn flipped(&self, c: usize) -> Decorated {
        let mut d = self.clone();
        d.signs[c] = !d.signs[c];
        d
    }

    /// Decorations on `L_γ` allowed for a bridge element starting here.
    pub fn bridge_targets(&self, b: &Bridge) -> Vec<Decorated> {
        let circles = self.link.circles();
        let (link2, _) = self.link.surgery(b);
        let circles2 = link2.circles();
        let by_points: HashMap<&Vec<usize>, bool> =
            circles.iter().zip(&self.signs).map(|(c, &s)| (c, s)).collect();
        let kind = self.link.bridge_kind(b);
        let base: Vec<Option<bool>> = circles2.iter().map(|c| by_points.get(c).copied()).collect();
        let mut options: Vec<Vec<(usize, bool)>> = Vec::new();
        match kind {
            BridgeKind::Merge { from: [c1, c2], to } => match (self.signs[c1], self.signs[c2]) {
                (true, true) => options.push(vec![(to, true)]),
                (false, true) | (true, false) => options.push(vec![(to, false)]),
                (false, false) => {}
            },
            BridgeKind::Fission { from, to: [a, b] } => {
                if self.signs[from] {
                    options.push(vec![(a, true), (b, false)]);
                    options.push(vec![(a, false), (b, true)]);
                } else {
                    options.push(vec![(a, false), (b, false)]);
                }
            }
        }
        options
            .into_iter()
            .map(|opt| {
                let mut signs = base.clone();
                for (c, s) in opt {
                    signs[c] = Some(s);
                }
                Decorated { link: link2.clone(), signs: signs.into_iter().map(|s| s.unwrap()).collect() }
            })
            .collect()
    }
}

impl fmt::Display for Decorated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.link)?;
        for &s in &self.signs {
            write!(f, "{}", if s { '+' } else { '-' })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(arcs: &[Arc]) -> Matching {
        Matching::from_arcs(arcs.len() * 2, arcs).unwrap()
    }

    #[test]
    fn two_circle_merge() {
        let l = CleavedLink::new(m(&[(0, 1), (2, 3)]), m(&[(0, 1), (2, 3)]));
        assert_eq!(l.circles().len(), 2);
        let b = l.bridges(Side::Left)[0];
        let (l2, dag) = l.surgery(&b);
        assert_eq!(l2.circles().len(), 1);
        assert!(matches!(l.bridge_kind(&b), BridgeKind::Merge { .. }));
        assert!(matches!(l2.bridge_kind(&dag), BridgeKind::Fission { .. }));
        assert_eq!(l2.surgery(&dag).0, l);
    }

    #[test]
    fn fission_targets_by_sign() {
        let l = CleavedLink::new(m(&[(0, 1), (2, 3)]), m(&[(0, 3), (1, 2)]));
        let b = l.bridges(Side::Left)[0];
        let plus = Decorated { link: l.clone(), signs: vec![true] };
        let minus = Decorated { link: l, signs: vec![false] };
        assert_eq!(plus.bridge_targets(&b).len(), 2);
        let t = minus.bridge_targets(&b);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].signs, vec![false, false]);
    }

    #[test]
    fn relations_in_one_region() {
        // three top-level arcs on the left
        let l = CleavedLink::new(m(&[(0, 1), (2, 3), (4, 5)]), m(&[(0, 1), (2, 3), (4, 5)]));
        let bs = l.bridges(Side::Left);
        assert_eq!(bs.len(), 3);
        let ab = Bridge::new(Side::Left, (0, 1), (2, 3));
        let bc = Bridge::new(Side::Left, (2, 3), (4, 5));
        assert_eq!(l.relation(&ab, &bc), BridgeRelation::SameSide);
        let r = Bridge::new(Side::Right, (0, 1), (2, 3));
        assert_eq!(l.relation(&ab, &r), BridgeRelation::Disjoint);
    }
}
