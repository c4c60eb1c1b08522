use super::cleaved::{Bridge, CleavedLink, Decorated, Side};
use super::matching::{Arc, Matching};
use super::tangle::{TangleDiagram, TangleSide};
use crate::error::{Error, Result};
use crate::Grading;
use std::fmt::Write as _;

/// A crossingless picture: the tangle with every crossing smoothed.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub rho: u32,
    /// Matching of the boundary points realised by the tangle arcs.
    pub arcs: Matching,
    comp_of_point: Vec<u32>,
    /// Smallest point of each component, ascending.
    pub comp_keys: Vec<usize>,
    /// Boundary arc carried by a component, `None` for a free circle.
    pub comp_arc: Vec<Option<Arc>>,
    /// 0-smoothed crossings and the components their surgery arcs touch.
    pub active: Vec<(usize, [usize; 2])>,
}

impl Resolved {
    fn new(t: &TangleDiagram, rho: u32) -> Self {
        let np = t.num_points();
        let mut dsu: Vec<usize> = (0..np).collect();
        fn find(d: &mut [usize], mut x: usize) -> usize {
            while d[x] != x {
                d[x] = d[d[x]];
                x = d[x];
            }
            x
        }
        let mut ci = 0;
        for k in 0..t.slices.len() {
            let smoothing = if matches!(t.slices[k], super::Slice::Cross { .. }) {
                let one = rho >> ci & 1 == 1;
                let s = t.zero_is_turnback(ci) != one;
                ci += 1;
                Some(s)
            } else {
                None
            };
            t.slice_edges(k, smoothing, |a, b| {
                let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
                if ra != rb {
                    dsu[ra.max(rb)] = ra.min(rb);
                }
            });
        }
        // roots are minimal points, so sorting roots sorts components by key
        let roots: Vec<usize> = (0..np).map(|p| find(&mut dsu, p)).collect();
        let mut comp_keys: Vec<usize> = roots.iter().copied().filter(|&r| r == roots[r]).collect();
        comp_keys.sort_unstable();
        comp_keys.dedup();
        let mut index = vec![u32::MAX; np];
        for (i, &k) in comp_keys.iter().enumerate() {
            index[k] = i as u32;
        }
        let comp_of_point: Vec<u32> = roots.iter().map(|&r| index[r]).collect();
        let mut comp_arc: Vec<Option<Arc>> = vec![None; comp_keys.len()];
        let mut pairs = Vec::new();
        for p in 0..2 * t.n {
            let c = comp_of_point[p] as usize;
            match comp_arc[c] {
                None => comp_arc[c] = Some((p, usize::MAX)),
                Some((a, _)) => {
                    comp_arc[c] = Some((a, p));
                    pairs.push((a, p));
                }
            }
        }
        let arcs = Matching::from_arcs(2 * t.n, &pairs).expect("tangle arcs are planar");
        let mut active = Vec::new();
        for c in 0..t.crossing_count() {
            if rho >> c & 1 == 1 {
                continue;
            }
            let [nl, nh, fl, _] = t.crossing_points(c);
            let feet = if t.zero_is_turnback(c) { [nl, fl] } else { [nl, nh] };
            active.push((c, feet.map(|p| comp_of_point[p] as usize)));
        }
        Resolved { rho, arcs, comp_of_point, comp_keys, comp_arc, active }
    }

    pub fn comp_of(&self, point: usize) -> usize {
        self.comp_of_point[point] as usize
    }
}

/// Circles of a resolution closed off by a matching on the other side.
#[derive(Clone, Debug)]
pub struct Circles {
    pub link: CleavedLink,
    /// Smallest point of each circle; cleaved circles come first.
    pub keys: Vec<usize>,
    pub n_cleaved: usize,
    pub comp_circle: Vec<usize>,
}

/// Resolution, closure index and one sign bit per circle (bit set is `+`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub rho: u32,
    pub closure: u16,
    pub dec: u64,
}

impl State {
    pub fn sign(&self, circle: usize) -> bool {
        self.dec >> circle & 1 == 1
    }
}

/// Outcome of surgery along one active arc of a state.
#[derive(Clone, Debug, Default)]
pub struct ArcTerms {
    /// Terms keeping the boundary fixed.
    pub internal: Vec<State>,
    /// Term flipping cleaved circle `.0` of the source to `−`.
    pub dec: Option<(usize, State)>,
    /// The arc joins two distinct tangle arcs.
    pub bridge: Option<Bridge>,
}

/// All resolutions of a tangle together with their closures.
#[derive(Clone, Debug)]
pub struct StateSpace {
    pub tangle: TangleDiagram,
    pub closures: Vec<Matching>,
    pub resolved: Vec<Resolved>,
    circles: Vec<Circles>,
}

impl StateSpace {
    pub fn new(tangle: TangleDiagram, crossing_cap: usize) -> Result<Self> {
        let c = tangle.crossing_count();
        if c > crossing_cap || c > 31 {
            return Err(Error::Cap(format!("{c} crossings exceeds the cap of {crossing_cap}")));
        }
        let closures = Matching::all(tangle.n);
        let resolved: Vec<Resolved> = (0..1u32 << c).map(|rho| Resolved::new(&tangle, rho)).collect();
        let mut circles = Vec::with_capacity(resolved.len() * closures.len());
        for r in &resolved {
            for m in &closures {
                circles.push(Self::close(&tangle, r, m)?);
            }
        }
        Ok(StateSpace { tangle, closures, resolved, circles })
    }

    fn close(t: &TangleDiagram, r: &Resolved, m: &Matching) -> Result<Circles> {
        let link = match t.side {
            TangleSide::Inside => CleavedLink::new(r.arcs.clone(), m.clone()),
            TangleSide::Outside => CleavedLink::new(m.clone(), r.arcs.clone()),
        };
        let cl = link.circles();
        let of = link.circle_of();
        let n_cleaved = cl.len();
        let mut keys: Vec<usize> = cl.iter().map(|c| c[0]).collect();
        let mut comp_circle = Vec::with_capacity(r.comp_keys.len());
        for (i, arc) in r.comp_arc.iter().enumerate() {
            match arc {
                Some((a, _)) => comp_circle.push(of[*a]),
                None => {
                    comp_circle.push(keys.len());
                    keys.push(r.comp_keys[i]);
                }
            }
        }
        if keys.len() > 64 {
            return Err(Error::Cap(format!("{} circles in one resolution", keys.len())));
        }
        Ok(Circles { link, keys, n_cleaved, comp_circle })
    }

    pub fn side(&self) -> Side {
        match self.tangle.side {
            TangleSide::Inside => Side::Left,
            TangleSide::Outside => Side::Right,
        }
    }

    pub fn circles(&self, rho: u32, closure: usize) -> &Circles {
        &self.circles[rho as usize * self.closures.len() + closure]
    }

    pub fn circles_of(&self, s: State) -> &Circles {
        self.circles(s.rho, s.closure as usize)
    }

    /// Every state, sorted.
    pub fn states(&self) -> Vec<State> {
        let mut out = Vec::new();
        for rho in 0..self.resolved.len() as u32 {
            for m in 0..self.closures.len() {
                let k = self.circles(rho, m).keys.len();
                for dec in 0..1u64 << k {
                    out.push(State { rho, closure: m as u16, dec });
                }
            }
        }
        out
    }

    pub fn h_raw(&self, s: State) -> i32 {
        s.rho.count_ones() as i32
    }

    pub fn grading(&self, s: State) -> Grading {
        let c = self.circles_of(s);
        let pm = |i: usize| if s.sign(i) { 1 } else { -1 };
        let iota: i32 = (0..c.n_cleaved).map(pm).sum();
        let q: i32 = (c.n_cleaved..c.keys.len()).map(pm).sum();
        let h = self.h_raw(s);
        let (np, nm) = (self.tangle.n_plus(), self.tangle.n_minus());
        Grading::new(h - nm, 2 * (h + q + np - 2 * nm) + iota)
    }

    pub fn boundary(&self, s: State) -> Decorated {
        let c = self.circles_of(s);
        Decorated { link: c.link.clone(), signs: (0..c.n_cleaved).map(|i| s.sign(i)).collect() }
    }

    /// Number of 1-smoothed crossings after `c` in the crossing order.
    pub fn ones_after(&self, rho: u32, c: usize) -> usize {
        let r = self.tangle.rank(c);
        (0..self.tangle.crossing_count()).filter(|&d| rho >> d & 1 == 1 && self.tangle.rank(d) > r).count()
    }

    /// New state on `(rho, closure)`: circles listed in `set` get the given
    /// signs, every other circle copies the sign of the circle with the same
    /// key in `from`.
    pub fn transfer(&self, from: State, rho: u32, closure: usize, set: &[(usize, bool)]) -> State {
        let src = self.circles_of(from);
        let dst = self.circles(rho, closure);
        let mut dec = 0u64;
        for (i, key) in dst.keys.iter().enumerate() {
            let s = match set.iter().find(|(j, _)| *j == i) {
                Some(&(_, s)) => s,
                None => {
                    let j = src.keys.binary_search(key).expect("untouched circle keeps its key");
                    from.sign(j)
                }
            };
            if s {
                dec |= 1 << i;
            }
        }
        State { rho, closure: closure as u16, dec }
    }

    /// Same resolution, boundary decoration replaced, free circles kept.
    pub fn with_boundary(&self, from: State, rho: u32, closure: usize, cleaved: &[bool]) -> State {
        let set: Vec<(usize, bool)> = cleaved.iter().copied().enumerate().collect();
        self.transfer(from, rho, closure, &set)
    }

    /// Circles of the target resolution that meet crossing `c`.
    fn touched(&self, rho: u32, closure: usize, c: usize) -> Vec<usize> {
        let r = &self.resolved[rho as usize];
        let cs = self.circles(rho, closure);
        let mut v: Vec<usize> =
            self.tangle.crossing_points(c).iter().map(|&p| cs.comp_circle[r.comp_of(p)]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Surgery along the active arc at crossing `c` with feet on components
    /// `feet`, split by how it interacts with the boundary.
    pub fn arc_terms(&self, s: State, c: usize, feet: [usize; 2]) -> ArcTerms {
        let r = &self.resolved[s.rho as usize];
        let m = s.closure as usize;
        let cs = self.circles_of(s);
        let rho2 = s.rho | 1 << c;
        let touched = self.touched(rho2, m, c);
        let [f0, f1] = feet;
        let (a0, a1) = (r.comp_arc[f0], r.comp_arc[f1]);
        let (c0, c1) = (cs.comp_circle[f0], cs.comp_circle[f1]);
        let mut out = ArcTerms::default();
        let mk = |set: &[(usize, bool)]| self.transfer(s, rho2, m, set);
        match (a0, a1) {
            (None, None) if f0 != f1 => {
                let [n] = touched[..] else { unreachable!("merge gives one circle") };
                match (s.sign(c0), s.sign(c1)) {
                    (true, true) => out.internal.push(mk(&[(n, true)])),
                    (false, false) => {}
                    _ => out.internal.push(mk(&[(n, false)])),
                }
            }
            (None, None) => {
                let [n1, n2] = touched[..] else { unreachable!("split gives two circles") };
                if s.sign(c0) {
                    out.internal.push(mk(&[(n1, true), (n2, false)]));
                    out.internal.push(mk(&[(n1, false), (n2, true)]));
                } else {
                    out.internal.push(mk(&[(n1, false), (n2, false)]));
                }
            }
            (None, Some(_)) | (Some(_), None) => {
                let (free, cleaved) = if a0.is_none() { (c0, c1) } else { (c1, c0) };
                let [n] = touched[..] else { unreachable!("absorbing a free circle") };
                if s.sign(free) {
                    out.internal.push(mk(&[(n, s.sign(cleaved))]));
                } else if s.sign(cleaved) {
                    out.dec = Some((cleaved, mk(&[(n, false)])));
                }
            }
            (Some(x), Some(y)) if f0 == f1 => {
                debug_assert_eq!(x, y);
                let n_cl = self.circles(rho2, m).n_cleaved;
                let (cl, fr): (Vec<usize>, Vec<usize>) = touched.iter().partition(|&&i| i < n_cl);
                let ([k], [f]) = (&cl[..], &fr[..]) else { unreachable!("same-arc split") };
                out.internal.push(mk(&[(*k, s.sign(c0)), (*f, false)]));
                if s.sign(c0) {
                    out.dec = Some((c0, mk(&[(*k, false), (*f, true)])));
                }
            }
            (Some(x), Some(y)) => out.bridge = Some(Bridge::new(self.side(), x, y)),
        }
        out
    }

    /// Readable key: resolution bits in crossing order, closure, signs.
    pub fn label(&self, s: State) -> String {
        let mut out = String::new();
        for c in 0..self.tangle.crossing_count() {
            out.push(if s.rho >> c & 1 == 1 { '1' } else { '0' });
        }
        let cs = self.circles_of(s);
        write!(out, "|{}|", self.closures[s.closure as usize]).unwrap();
        for i in 0..cs.keys.len() {
            if i == cs.n_cleaved {
                out.push('/');
            }
            out.push(if s.sign(i) { '+' } else { '-' });
        }
        out
    }
}
