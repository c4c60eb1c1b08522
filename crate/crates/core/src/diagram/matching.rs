use serde::{Deserialize, Serialize};
use std::fmt;

/// An arc `(i, j)` with `i < j`, points numbered from 0.
pub type Arc = (usize, usize);

/// Non-crossing perfect matching on `2n` points of the axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    partner: Vec<u8>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching { partner: Vec::new() }
    }

    /// Builds a matching from its arcs; `None` if not perfect or not planar.
    pub fn from_arcs(points: usize, arcs: &[Arc]) -> Option<Self> {
        let mut partner = vec![u8::MAX; points];
        for &(a, b) in arcs {
            let (a, b) = (a.min(b), a.max(b));
            if a == b || b >= points || partner[a] != u8::MAX || partner[b] != u8::MAX {
                return None;
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let m = Matching { partner };
        (m.partner.iter().all(|&p| p != u8::MAX) && m.is_noncrossing()).then_some(m)
    }

    fn is_noncrossing(&self) -> bool {
        let mut stack = Vec::new();
        for p in 0..self.points() {
            let q = self.partner(p);
            if q > p {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    /// Arcs ordered by left endpoint.
    pub fn arcs(&self) -> Vec<Arc> {
        (0..self.points()).filter(|&p| self.partner(p) > p).map(|p| (p, self.partner(p))).collect()
    }

    pub fn contains(&self, a: Arc) -> bool {
        a.1 < self.points() && self.partner(a.0) == a.1
    }

    /// Every non-crossing matching on `2n` points, in a fixed order.
    pub fn all(n: usize) -> Vec<Matching> {
        fn rec(lo: usize, hi: usize) -> Vec<Vec<Arc>> {
            if lo >= hi {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            let mut j = lo + 1;
            while j < hi {
                for inner in rec(lo + 1, j) {
                    for outer in rec(j + 1, hi) {
                        let mut v = vec![(lo, j)];
                        v.extend(inner.iter().copied());
                        v.extend(outer.iter().copied());
                        out.push(v);
                    }
                }
                j += 2;
            }
            out
        }
        let mut all: Vec<Matching> =
            rec(0, 2 * n).iter().map(|arcs| Matching::from_arcs(2 * n, arcs).unwrap()).collect();
        all.sort();
        all
    }

    /// Innermost arc enclosing `a`, or `None` for a top-level arc.
    pub fn parent(&self, a: Arc) -> Option<Arc> {
        let mut k = a.0;
        while k > 0 {
            k -= 1;
            let q = self.partner(k);
            if q > a.1 {
                return Some((k, q));
            }
            // skip a closed sibling
            k = q.min(k);
        }
        None
    }

    /// Children of a region (`None` is the unbounded region), by left endpoint.
    pub fn children(&self, region: Option<Arc>) -> Vec<Arc> {
        let (mut p, end) = match region {
            Some((i, j)) => (i + 1, j),
            None => (0, self.points()),
        };
        let mut out = Vec::new();
        while p < end {
            let q = self.partner(p);
            out.push((p, q));
            p = q + 1;
        }
        out
    }

    /// Arcs on the boundary of a region in cyclic order: the enclosing arc
    /// first, then the children left to right.
    pub fn border(&self, region: Option<Arc>) -> Vec<Arc> {
        let mut v: Vec<Arc> = region.into_iter().collect();
        v.extend(self.children(region));
        v
    }

    /// Region shared by two distinct arcs, if any.
    pub fn shared_region(&self, a: Arc, b: Arc) -> Option<Option<Arc>> {
        if a == b {
            return None;
        }
        if a.0 < b.0 && b.1 < a.1 {
            return (self.parent(b) == Some(a)).then_some(Some(a));
        }
        if b.0 < a.0 && a.1 < b.1 {
            return (self.parent(a) == Some(b)).then_some(Some(b));
        }
        let pa = self.parent(a);
        (pa == self.parent(b)).then_some(pa)
    }

    /// All unordered pairs of arcs bordering a common region, each as `(a, b)`
    /// with `a < b`, sorted.
    pub fn bridges(&self) -> Vec<(Arc, Arc)> {
        let mut regions: Vec<Option<Arc>> = vec![None];
        regions.extend(self.arcs().into_iter().map(Some));
        let mut out = Vec::new();
        for r in regions {
            let border = self.border(r);
            for i in 0..border.len() {
                for j in i + 1..border.len() {
                    let (a, b) = (border[i], border[j]);
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out.sort();
        out
    }

    /// Surgery along the bridge joining arcs `a` and `b`; returns the new
    /// matching and the two new arcs (the dagger bridge).
    pub fn surgery(&self, a: Arc, b: Arc) -> (Matching, (Arc, Arc)) {
        assert!(self.shared_region(a, b).is_some(), "not a bridge: {a:?} {b:?}");
        let (x, y) = (a.min(b), a.max(b));
        let (n1, n2) = if x.0 < y.0 && y.1 < x.1 {
            // y nested directly inside x: side-by-side result
            ((x.0, y.0), (y.1, x.1))
        } else {
            // siblings x left of y: nested result
            ((x.0, y.1), (x.1, y.0))
        };
        let mut arcs: Vec<Arc> = self.arcs().into_iter().filter(|&c| c != a && c != b).collect();
        arcs.push(n1);
        arcs.push(n2);
        let m = Matching::from_arcs(self.points(), &arcs).expect("surgery keeps planarity");
        (m, (n1.min(n2), n1.max(n2)))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.arcs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", a + 1, b + 1)?;
        }
        write!(f, "}}")
    }
}
