use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleSide {
    /// Left of the axis; slices move away from the axis towards −x.
    Inside,
    /// Right of the axis; slices move towards +x.
    Outside,
}

/// Elementary slice acting on strands numbered from 0 at the bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    /// Joins strands `i` and `i+1`.
    Cap(usize),
    /// Creates a new pair of strands at positions `i`, `i+1`.
    Cup(usize),
    /// Crossing of strands `i`, `i+1`. With `over_high` the strand starting at
    /// `i+1` passes over, ending at `i` one level further out.
    Cross { at: usize, over_high: bool },
}

/// Validated slice-word diagram with orientation and crossing data.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    pub side: TangleSide,
    pub n: usize,
    pub slices: Vec<Slice>,
    /// Per endpoint: `true` when the strand enters the tangle there.
    pub orient: Vec<bool>,
    /// Slice index of each crossing, in slice order.
    pub crossings: Vec<usize>,
    /// Sign of each crossing.
    pub signs: Vec<i8>,
    /// Crossings from first to last in the chosen order.
    pub order: Vec<usize>,
    rank: Vec<usize>,
    widths: Vec<usize>,
    offsets: Vec<usize>,
}

/// One edge of the unsmoothed strand graph, stored near-to-far for crossings.
struct StrandEdge {
    a: usize,
    b: usize,
}

impl TangleDiagram {
    /// Validates a slice word and fixes orientations.
    ///
    /// `orient` pins the boundary strands; `asserted` (per crossing, slice
    /// order) pins signs. Remaining freedom is resolved by the first
    /// orientation, in a fixed search order, matching every assertion.
    pub fn new(
        side: TangleSide,
        n: usize,
        slices: Vec<Slice>,
        orient: Option<Vec<bool>>,
        asserted: &[Option<i8>],
        order: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut widths = vec![2 * n];
        for (k, s) in slices.iter().enumerate() {
            let w = *widths.last().unwrap();
            let next = match *s {
                Slice::Cap(i) => {
                    if i + 1 >= w {
                        return Err(Error::Index(format!("cap({}) at slice {} with {} strands", i + 1, k + 1, w)));
                    }
                    w - 2
                }
                Slice::Cup(i) => {
                    if i > w {
                        return Err(Error::Index(format!("cup({}) at slice {} with {} strands", i + 1, k + 1, w)));
                    }
                    w + 2
                }
                Slice::Cross { at, .. } => {
                    if at + 1 >= w {
                        return Err(Error::Index(format!("cross({}) at slice {} with {} strands", at + 1, k + 1, w)));
                    }
                    w
                }
            };
            widths.push(next);
        }
        if *widths.last().unwrap() != 0 {
            return Err(Error::StrandCount(format!("{} strands left open after the last slice", widths.last().unwrap())));
        }
        let mut offsets = Vec::with_capacity(widths.len());
        let mut acc = 0;
        for &w in &widths {
            offsets.push(acc);
            acc += w;
        }
        let crossings: Vec<usize> =
            slices.iter().enumerate().filter(|(_, s)| matches!(s, Slice::Cross { .. })).map(|(k, _)| k).collect();
        let order = order.unwrap_or_else(|| (0..crossings.len()).collect());
        let mut rank = vec![usize::MAX; crossings.len()];
        for (r, &c) in order.iter().enumerate() {
            if c >= crossings.len() || rank[c] != usize::MAX {
                return Err(Error::Parse("crossing order is not a permutation".into()));
            }
            rank[c] = r;
        }
        if order.len() != crossings.len() {
            return Err(Error::Parse("crossing order is not a permutation".into()));
        }
        if asserted.len() != crossings.len() {
            return Err(Error::Parse("sign assertions do not match crossings".into()));
        }
        if let Some(o) = &orient {
            if o.len() != 2 * n {
                return Err(Error::Parse(format!("orient has {} entries, expected {}", o.len(), 2 * n)));
            }
        }
        let mut t = TangleDiagram {
            side,
            n,
            slices,
            orient: Vec::new(),
            crossings,
            signs: Vec::new(),
            order,
            rank,
            widths,
            offsets,
        };
        t.orient_strands(orient, asserted)?;
        Ok(t)
    }

    pub fn levels(&self) -> usize {
        self.widths.len()
    }

    pub fn width(&self, level: usize) -> usize {
        self.widths[level]
    }

    pub fn num_points(&self) -> usize {
        self.offsets.last().unwrap() + self.widths.last().unwrap()
    }

    pub fn point(&self, level: usize, pos: usize) -> usize {
        debug_assert!(pos < self.widths[level]);
        self.offsets[level] + pos
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_plus(&self) -> i32 {
        self.signs.iter().filter(|&&s| s > 0).count() as i32
    }

    pub fn n_minus(&self) -> i32 {
        self.signs.iter().filter(|&&s| s < 0).count() as i32
    }

    /// Position of crossing `c` in the crossing order.
    pub fn rank(&self, c: usize) -> usize {
        self.rank[c]
    }

    /// Whether the 0-smoothing of crossing `c` is the turnback (both near
    /// ends joined) rather than the horizontal one.
    pub fn zero_is_turnback(&self, c: usize) -> bool {
        let Slice::Cross { over_high, .. } = self.slices[self.crossings[c]] else { unreachable!() };
        (self.side == TangleSide::Inside) == over_high
    }

    /// Points `[near low, near high, far low, far high]` around crossing `c`.
    pub fn crossing_points(&self, c: usize) -> [usize; 4] {
        let k = self.crossings[c];
        let Slice::Cross { at, .. } = self.slices[k] else { unreachable!() };
        [self.point(k, at), self.point(k, at + 1), self.point(k + 1, at), self.point(k + 1, at + 1)]
    }

    /// Connections made by slice `k` between level `k` and `k+1`; for a
    /// crossing, `smoothing` selects `None` (strands pass through),
    /// `Some(true)` (turnback) or `Some(false)` (horizontal).
    pub(crate) fn slice_edges(&self, k: usize, smoothing: Option<bool>, mut f: impl FnMut(usize, usize)) {
        let w = self.widths[k];
        let (near, far) = (|p| self.point(k, p), |p| self.point(k + 1, p));
        match self.slices[k] {
            Slice::Cap(i) => {
                f(near(i), near(i + 1));
                for j in 0..w {
                    if j < i {
                        f(near(j), far(j));
                    } else if j > i + 1 {
                        f(near(j), far(j - 2));
                    }
                }
            }
            Slice::Cup(i) => {
                f(far(i), far(i + 1));
                for j in 0..w {
                    f(near(j), far(if j < i { j } else { j + 2 }));
                }
            }
            Slice::Cross { at, .. } => {
                match smoothing {
                    None => {
                        f(near(at), far(at + 1));
                        f(near(at + 1), far(at));
                    }
                    Some(true) => {
                        f(near(at), near(at + 1));
                        f(far(at), far(at + 1));
                    }
                    Some(false) => {
                        f(near(at), far(at));
                        f(near(at + 1), far(at + 1));
                    }
                }
                for j in 0..w {
                    if j != at && j != at + 1 {
                        f(near(j), far(j));
                    }
                }
            }
        }
    }

    fn orient_strands(&mut self, orient: Option<Vec<bool>>, asserted: &[Option<i8>]) -> Result<()> {
        let np = self.num_points();
        let mut edges: Vec<StrandEdge> = Vec::new();
        let mut over_edge = vec![0; self.crossings.len()];
        let mut under_edge = vec![0; self.crossings.len()];
        let mut ci = 0;
        for k in 0..self.slices.len() {
            let first = edges.len();
            self.slice_edges(k, None, |a, b| edges.push(StrandEdge { a, b }));
            if let Slice::Cross { over_high, .. } = self.slices[k] {
                // first edge runs near-low to far-high, second near-high to far-low
                let (lo_up, hi_down) = (first, first + 1);
                (over_edge[ci], under_edge[ci]) = if over_high { (hi_down, lo_up) } else { (lo_up, hi_down) };
                ci += 1;
            }
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
        for (e, se) in edges.iter().enumerate() {
            adj[se.a].push((se.b, e));
            adj[se.b].push((se.a, e));
        }
        // walk every component once, recording the default direction per edge
        let mut forward = vec![true; edges.len()];
        let mut comp_of_edge = vec![usize::MAX; edges.len()];
        let mut comps: Vec<Option<(usize, usize)>> = Vec::new();
        let walk = |start: usize,
                    first: (usize, usize),
                    comp: usize,
                    forward: &mut Vec<bool>,
                    comp_of_edge: &mut Vec<usize>|
         -> usize {
            let (mut p, mut step) = (start, first);
            loop {
                let (q, e) = step;
                comp_of_edge[e] = comp;
                forward[e] = edges[e].a == p;
                p = q;
                match adj[p].iter().find(|&&(_, e2)| comp_of_edge[e2] == usize::MAX) {
                    Some(&next) => step = next,
                    None => return p,
                }
            }
        };
        for pos in 0..2 * self.n {
            let e0 = adj[pos][0].1;
            if comp_of_edge[e0] != usize::MAX {
                continue;
            }
            let comp = comps.len();
            let end = walk(pos, adj[pos][0], comp, &mut forward, &mut comp_of_edge);
            comps.push(Some((pos, end)));
        }
        for p in 0..np {
            let mut free: Vec<(usize, usize)> =
                adj[p].iter().copied().filter(|&(_, e)| comp_of_edge[e] == usize::MAX).collect();
            if free.is_empty() {
                continue;
            }
            free.sort();
            let comp = comps.len();
            walk(p, free[0], comp, &mut forward, &mut comp_of_edge);
            comps.push(None);
        }
        if comps.len() > 24 {
            return Err(Error::Cap(format!("{} link components", comps.len())));
        }
        let dx = if self.side == TangleSide::Inside { -1i64 } else { 1 };
        let vector = |e: usize, high_to_low: bool| -> (i64, i64) {
            let dy = if high_to_low { -1 } else { 1 };
            let s = if forward[e] { 1 } else { -1 };
            (s * dx, s * dy)
        };
        let base: Vec<i8> = (0..self.crossings.len())
            .map(|c| {
                let Slice::Cross { over_high, .. } = self.slices[self.crossings[c]] else { unreachable!() };
                let o = vector(over_edge[c], over_high);
                let u = vector(under_edge[c], !over_high);
                if o.0 * u.1 - o.1 * u.0 > 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        // fixed flips from the orient string
        let mut fixed: Vec<Option<bool>> = vec![None; comps.len()];
        if let Some(o) = &orient {
            for (comp, ends) in comps.iter().enumerate() {
                if let Some((s, e)) = *ends {
                    if o[s] == o[e] {
                        return Err(Error::Orientation(format!(
                            "endpoints {} and {} of one strand are both marked {}",
                            s + 1,
                            e + 1,
                            if o[s] { '+' } else { '-' }
                        )));
                    }
                    fixed[comp] = Some(!o[s]);
                }
            }
        }
        let free: Vec<usize> = (0..comps.len()).filter(|&c| fixed[c].is_none()).collect();
        let comp_cross: Vec<(usize, usize)> =
            (0..self.crossings.len()).map(|c| (comp_of_edge[over_edge[c]], comp_of_edge[under_edge[c]])).collect();
        let mut chosen = None;
        for mask in 0u64..1 << free.len() {
            let mut flip: Vec<bool> = fixed.iter().map(|f| f.unwrap_or(false)).collect();
            for (i, &c) in free.iter().enumerate() {
                flip[c] = mask >> i & 1 == 1;
            }
            let signs: Vec<i8> = (0..self.crossings.len())
                .map(|c| {
                    let (a, b) = comp_cross[c];
                    if flip[a] != flip[b] {
                        -base[c]
                    } else {
                        base[c]
                    }
                })
                .collect();
            if asserted.iter().zip(&signs).all(|(a, s)| a.map_or(true, |a| a == *s)) {
                chosen = Some((flip, signs));
                break;
            }
        }
        let Some((flip, signs)) = chosen else {
            return Err(Error::Orientation("no orientation matches the asserted crossing signs".into()));
        };
        let mut orient_out = vec![false; 2 * self.n];
        for (comp, ends) in comps.iter().enumerate() {
            if let Some((s, e)) = *ends {
                orient_out[s] = !flip[comp];
                orient_out[e] = flip[comp];
            }
        }
        self.orient = orient_out;
        self.signs = signs;
        Ok(())
    }

    /// Serializes back to the slice-word grammar, pinning every sign.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(match self.side {
            TangleSide::Inside => "inside",
            TangleSide::Outside => "outside",
        });
        write!(s, " n={}", self.n).unwrap();
        if self.n > 0 {
            s.push_str(" orient=");
            for &o in &self.orient {
                s.push(if o { '+' } else { '-' });
            }
        }
        if self.order.iter().enumerate().any(|(i, &c)| i != c) {
            let o: Vec<String> = self.order.iter().map(|c| (c + 1).to_string()).collect();
            write!(s, " order={}", o.join(",")).unwrap();
        }
        s.push(':');
        let mut ci = 0;
        for (k, sl) in self.slices.iter().enumerate() {
            s.push_str(if k == 0 { " " } else { ", " });
            match *sl {
                Slice::Cap(i) => write!(s, "cap({})", i + 1).unwrap(),
                Slice::Cup(i) => write!(s, "cup({})", i + 1).unwrap(),
                Slice::Cross { at, over_high } => {
                    let name = if over_high { "cross" } else { "crossneg" };
                    let sg = if self.signs[ci] > 0 { '+' } else { '-' };
                    write!(s, "{}({},{})", name, at + 1, sg).unwrap();
                    ci += 1;
                }
            }
        }
        s
    }
}

/// Parses `inside|outside|link [n=<int>] [orient=<+->] [order=<list>] : slices`.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let (head, body) = cleaned.split_once(':').ok_or_else(|| Error::Parse("missing ':' after header".into()))?;
    let mut words = head.split_whitespace();
    let kind = words.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let (side, mut n) = match kind {
        "inside" => (TangleSide::Inside, None),
        "outside" => (TangleSide::Outside, None),
        "link" => (TangleSide::Outside, Some(0)),
        other => return Err(Error::Parse(format!("expected inside, outside or link, found '{other}'"))),
    };
    let mut orient = None;
    let mut order = None;
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, found '{w}'")))?;
        match k {
            "n" => {
                let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad n '{v}'")))?;
                if kind == "link" && v != 0 {
                    return Err(Error::Parse("a link has n=0".into()));
                }
                n = Some(v);
            }
            "orient" => {
                let o: Result<Vec<bool>> = v
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(true),
                        '-' => Ok(false),
                        _ => Err(Error::Parse(format!("bad orientation character '{c}'"))),
                    })
                    .collect();
                orient = Some(o?);
            }
            "order" => {
                let o: Result<Vec<usize>> = v
                    .split(',')
                    .map(|x| match x.trim().parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(Error::Parse(format!("bad crossing index '{x}'"))),
                    })
                    .collect();
                order = Some(o?);
            }
            _ => return Err(Error::Parse(format!("unknown key '{k}'"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing n=<int>".into()))?;
    let mut slices = Vec::new();
    let mut asserted = Vec::new();
    for tok in split_top_level(body)? {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let (name, args) = tok
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(|| Error::Parse(format!("malformed slice '{tok}'")))?;
        let mut args = args.split(',').map(str::trim);
        let idx: usize = match args.next().map(str::parse::<usize>) {
            Some(Ok(i)) if i >= 1 => i - 1,
            _ => return Err(Error::Parse(format!("bad index in '{tok}'"))),
        };
        let sign = match args.next() {
            None => None,
            Some("+") => Some(1i8),
            Some("-") => Some(-1i8),
            Some(x) => return Err(Error::Parse(format!("bad sign '{x}' in '{tok}'"))),
        };
        if args.next().is_some() {
            return Err(Error::Parse(format!("too many arguments in '{tok}'")));
        }
        let slice = match name.trim() {
            "cap" => Slice::Cap(idx),
            "cup" => Slice::Cup(idx),
            "cross" => Slice::Cross { at: idx, over_high: true },
            "crossneg" => Slice::Cross { at: idx, over_high: false },
            other => return Err(Error::Parse(format!("unknown slice '{other}'"))),
        };
        if sign.is_some() && !matches!(slice, Slice::Cross { .. }) {
            return Err(Error::Parse(format!("only crossings take a sign: '{tok}'")));
        }
        if matches!(slice, Slice::Cross { .. }) {
            asserted.push(sign);
        }
        slices.push(slice);
    }
    TangleDiagram::new(side, n, slices, orient, &asserted, order)
}

fn split_top_level(body: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced ')'".into()));
                }
            }
            ',' if depth == 0 => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '('".into()));
    }
    out.push(&body[start..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_half() {
        let t = parse_tangle("inside n=1: cap(1)").unwrap();
        assert_eq!((t.n_plus(), t.n_minus()), (0, 0));
        assert_eq!(t.orient, vec![true, false]);
    }

    #[test]
    fn kink_is_positive_either_way() {
        let t = parse_tangle("inside n=1: cross(1), cap(1)").unwrap();
        assert_eq!(t.signs, vec![1]);
        let t = parse_tangle("inside n=1 orient=-+: cross(1,+), cap(1)").unwrap();
        assert_eq!(t.signs, vec![1]);
        assert!(parse_tangle("inside n=1: cross(1,-), cap(1)").is_err());
    }

    #[test]
    fn clasp_signs_follow_orientation() {
        let pos = parse_tangle("inside n=2 orient=+-+-: cross(2), cross(2), cap(1), cap(1)").unwrap();
        let neg = parse_tangle("inside n=2 orient=+--+: cross(2), cross(2), cap(1), cap(1)").unwrap();
        assert_eq!(pos.n_plus() + neg.n_plus(), 2);
        assert_eq!(pos.n_minus() + neg.n_minus(), 2);
        assert_eq!(pos.signs[0], pos.signs[1]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_tangle("inside n=1: cap(2)"), Err(Error::Index(_))));
        assert!(matches!(parse_tangle("inside n=2: cap(1)"), Err(Error::StrandCount(_))));
        assert!(matches!(parse_tangle("sideways n=1: cap(1)"), Err(Error::Parse(_))));
        assert!(matches!(parse_tangle("inside n=1 orient=++: cap(1)"), Err(Error::Orientation(_))));
    }

    #[test]
    fn text_round_trip() {
        let t = parse_tangle("outside n=1: cup(2), crossneg(1), crossneg(1), crossneg(1), cap(1), cap(1)").unwrap();
        let u = parse_tangle(&t.to_text()).unwrap();
        assert_eq!(u.signs, t.signs);
        assert_eq!(u.orient, t.orient);
        assert_eq!(u.slices, t.slices);
    }
}
