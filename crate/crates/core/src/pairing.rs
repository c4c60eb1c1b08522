//! Box tensor product of a type A and a type D structure, and the direct
//! Khovanov cube of the glued diagram used as ground truth.

use crate::check::Check;
use crate::diagram::{Slice, State, TangleDiagram, TangleSide};
use crate::error::{Error, Result};
use crate::homology::{homology, Complex, HomologyTable};
use crate::simplify::{simplify_type_a, simplify_type_d, ReducedA};
use crate::type_a::TypeA;
use crate::type_d::TypeD;
use crate::{sign, Chain, Grading};
use std::collections::HashMap;
use std::sync::Arc;

/// Box complex with the `(type A generator, type D generator)` pair behind
/// each generator.
pub struct BoxComplex {
    pub complex: Complex,
    pub pairs: Vec<(usize, usize)>,
}

/// `∂(x⊗y) = (−1)^{|y|} m̄₁(x)⊗y + Σ (−1)^{|y₁|+…+|yₖ₋₁|} m̄ₖ₊₁(x; a₁,…,aₖ)⊗yₖ`
/// over paths `y → a₁⊗y₁ → … → aₖ⊗yₖ` of `δ`, with `|y|` the number of
/// 1-resolutions of the outside state.
pub fn box_tensor(a: &ReducedA, d: &TypeD) -> Result<BoxComplex> {
    if a.algebra().idempotents().len() != d.algebra().idempotents().len()
        || a.base().space().tangle.n != d.space().tangle.n
    {
        return Err(Error::Mismatch(format!(
            "type A over n={} and type D over n={}",
            a.base().space().tangle.n,
            d.space().tangle.n
        )));
    }
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for s in 0..a.len() {
        for y in 0..d.len() {
            if a.idem(s) == d.idem(y) {
                index.insert((s, y), pairs.len());
                pairs.push((s, y));
            }
        }
    }
    let cap = 2 * d.len() + 1;
    let mut diff = Vec::with_capacity(pairs.len());
    for &(s, y) in &pairs {
        let mut out = Chain::new();
        let first = if d.odd(y) { a.m1(s).neg() } else { a.m1(s).clone() };
        for (t, c) in first.iter() {
            out.add_term(index[&(*t, y)], c.clone());
        }
        walk(a, d, &index, a.iota(s).clone(), y, 1, cap, &mut out)?;
        diff.push(out);
    }
    let keys = pairs.iter().map(|&(s, y)| format!("{} ⊗ {}", a.label(s), d.label(y))).collect();
    let gradings = pairs.iter().map(|&(s, y)| a.grading(s) + d.grading(y)).collect();
    Ok(BoxComplex { complex: Complex::new(keys, gradings, diff), pairs })
}

#[allow(clippy::too_many_arguments)]
fn walk(
    a: &ReducedA,
    d: &TypeD,
    index: &HashMap<(usize, usize), usize>,
    c: Chain,
    y: usize,
    depth: usize,
    cap: usize,
    out: &mut Chain,
) -> Result<()> {
    if depth > cap {
        return Err(Error::Verification("type D structure is not bounded".into()));
    }
    for ((w, y1), k) in d.delta(y).iter() {
        let p = a.base().act_chain(&c, *w).scaled(k);
        if p.is_zero() {
            continue;
        }
        for (t, v) in a.pi(&p).iter() {
            out.add_term(index[&(*t, *y1)], v.clone());
        }
        let mut next = a.h(&p);
        if !next.is_zero() {
            if d.odd(*y1) {
                next = next.neg();
            }
            walk(a, d, index, next, *y1, depth + 1, cap, out)?;
        }
    }
    Ok(())
}

/// Closed diagram of the inside tangle followed by the outside tangle, with
/// the inside crossings first in the crossing order.
pub fn glue(inside: &TangleDiagram, outside: &TangleDiagram) -> Result<TangleDiagram> {
    if inside.side != TangleSide::Inside || outside.side != TangleSide::Outside {
        return Err(Error::Mismatch("glue needs an inside and an outside tangle".into()));
    }
    if inside.n != outside.n {
        return Err(Error::Mismatch(format!("inside has n={}, outside has n={}", inside.n, outside.n)));
    }
    let mut slices: Vec<Slice> = inside
        .slices
        .iter()
        .rev()
        .map(|s| match *s {
            Slice::Cap(i) => Slice::Cup(i),
            Slice::Cup(i) => Slice::Cap(i),
            Slice::Cross { at, over_high } => Slice::Cross { at, over_high: !over_high },
        })
        .collect();
    slices.extend(outside.slices.iter().copied());
    let k = inside.crossing_count();
    let mut asserted: Vec<Option<i8>> = inside.signs.iter().rev().map(|&s| Some(s)).collect();
    asserted.extend(outside.signs.iter().map(|&s| Some(s)));
    let mut order: Vec<usize> = inside.order.iter().map(|&c| k - 1 - c).collect();
    order.extend(outside.order.iter().map(|&c| k + c));
    TangleDiagram::new(TangleSide::Outside, 0, slices, None, &asserted, Some(order)).map_err(|e| match e {
        Error::Orientation(m) => Error::Mismatch(format!("the halves' orientations do not glue: {m}")),
        e => e,
    })
}

/// Khovanov cube of a closed diagram, built directly from circle merges and
/// splits.
pub struct Oracle {
    pub diagram: TangleDiagram,
    pub complex: Complex,
    comps: Vec<Vec<usize>>,
    n_circles: Vec<usize>,
    index: HashMap<(u32, u64), usize>,
}

impl Oracle {
    pub fn new(diagram: TangleDiagram, crossing_cap: usize) -> Result<Self> {
        if diagram.n != 0 {
            return Err(Error::Mismatch("the oracle needs a closed diagram".into()));
        }
        let m = diagram.crossing_count();
        if m > crossing_cap || m > 31 {
            return Err(Error::Cap(format!("{m} crossings exceed the cap of {}", crossing_cap.min(31))));
        }
        let mut comps = Vec::with_capacity(1 << m);
        let mut n_circles = Vec::with_capacity(1 << m);
        for rho in 0..1u32 << m {
            let (c, k) = circles(&diagram, rho);
            if k > 63 {
                return Err(Error::Cap(format!("{k} circles")));
            }
            comps.push(c);
            n_circles.push(k);
        }
        let mut keys = Vec::new();
        let mut gradings = Vec::new();
        let mut gens = Vec::new();
        let mut index = HashMap::new();
        let (np, nm) = (diagram.n_plus(), diagram.n_minus());
        for rho in 0..1u32 << m {
            let k = n_circles[rho as usize];
            let ones = rho.count_ones() as i32;
            for dec in 0..1u64 << k {
                let plus = dec.count_ones() as i32;
                let q = ones + plus - (k as i32 - plus) + np - 2 * nm;
                index.insert((rho, dec), gens.len());
                gens.push((rho, dec));
                gradings.push(Grading::new(ones - nm, 2 * q));
                let bits: String = (0..m).map(|c| if rho >> c & 1 == 1 { '1' } else { '0' }).collect();
                let signs: String = (0..k).map(|i| if dec >> i & 1 == 1 { '+' } else { '-' }).collect();
                keys.push(format!("{bits}|{signs}"));
            }
        }
        let mut o = Oracle { diagram, complex: Complex::new(vec![], vec![], vec![]), comps, n_circles, index };
        let d = gens.iter().map(|&(rho, dec)| o.differential(rho, dec)).collect();
        o.complex = Complex::new(keys, gradings, d);
        Ok(o)
    }

    fn differential(&self, rho: u32, dec: u64) -> Chain {
        let t = &self.diagram;
        let mut out = Chain::new();
        for c in 0..t.crossing_count() {
            if rho >> c & 1 == 1 {
                continue;
            }
            let later = (0..t.crossing_count()).filter(|&e| rho >> e & 1 == 1 && t.rank(e) > t.rank(c)).count();
            let sg = sign(later as i64);
            let r2 = rho | 1 << c;
            let (old, new) = (&self.comps[rho as usize], &self.comps[r2 as usize]);
            let pts = t.crossing_points(c);
            let mut a: Vec<usize> = pts.iter().map(|&p| old[p]).collect();
            a.sort_unstable();
            a.dedup();
            let mut b: Vec<usize> = pts.iter().map(|&p| new[p]).collect();
            b.sort_unstable();
            b.dedup();
            // untouched circles keep their labels
            let k2 = self.n_circles[r2 as usize];
            let mut base = 0u64;
            let mut rep = vec![usize::MAX; k2];
            for p in 0..old.len() {
                if rep[new[p]] == usize::MAX {
                    rep[new[p]] = p;
                }
            }
            for (j, &p) in rep.iter().enumerate() {
                if !b.contains(&j) && dec >> old[p] & 1 == 1 {
                    base |= 1 << j;
                }
            }
            let plus = |i: usize| dec >> i & 1 == 1;
            let mut emit = |bits: &[(usize, bool)]| {
                let mut d2 = base;
                for &(j, s) in bits {
                    if s {
                        d2 |= 1 << j;
                    }
                }
                out.add_term(self.index[&(r2, d2)], sg.clone());
            };
            match (a.len(), b.len()) {
                (2, 1) => match (plus(a[0]), plus(a[1])) {
                    (true, true) => emit(&[(b[0], true)]),
                    (true, false) | (false, true) => emit(&[(b[0], false)]),
                    (false, false) => {}
                },
                (1, 2) => {
                    if plus(a[0]) {
                        emit(&[(b[0], true), (b[1], false)]);
                        emit(&[(b[0], false), (b[1], true)]);
                    } else {
                        emit(&[(b[0], false), (b[1], false)]);
                    }
                }
                _ => unreachable!("a smoothing change merges or splits"),
            }
        }
        out
    }

    /// Generator for a resolution and a sign per circle, circles numbered by
    /// their smallest point.
    pub fn generator(&self, rho: u32, dec: u64) -> Option<usize> {
        self.index.get(&(rho, dec)).copied()
    }

    /// Circle of point `p` in resolution `rho`.
    pub fn circle_of(&self, rho: u32, p: usize) -> usize {
        self.comps[rho as usize][p]
    }

    pub fn circle_count(&self, rho: u32) -> usize {
        self.n_circles[rho as usize]
    }
}

/// Circle index of every point, circles numbered by smallest point.
fn circles(t: &TangleDiagram, rho: u32) -> (Vec<usize>, usize) {
    let np = t.num_points();
    let mut parent: Vec<usize> = (0..np).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut ci = 0;
    for k in 0..t.slices.len() {
        let smoothing = match t.slices[k] {
            Slice::Cross { .. } => {
                let s = t.zero_is_turnback(ci) != (rho >> ci & 1 == 1);
                ci += 1;
                Some(s)
            }
            _ => None,
        };
        t.slice_edges(k, smoothing, |a, b| {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        });
    }
    let mut id = vec![usize::MAX; np];
    let mut k = 0;
    let mut out = vec![0; np];
    for p in 0..np {
        let r = root(&mut parent, p);
        if id[r] == usize::MAX {
            id[r] = k;
            k += 1;
        }
        out[p] = id[r];
    }
    (out, k)
}

/// The glued state of an inside state and an outside state, as an oracle
/// generator.
pub fn glued_generator(oracle: &Oracle, a: &TypeA, x: State, d: &TypeD, y: State) -> Option<usize> {
    let (ti, to) = (&a.space().tangle, &d.space().tangle);
    let k = ti.crossing_count();
    let mut rho = 0u32;
    for c in 0..k {
        if x.rho >> c & 1 == 1 {
            rho |= 1 << (k - 1 - c);
        }
    }
    rho |= y.rho << k;
    let li = ti.levels() - 1;
    let g = &oracle.diagram;
    let mut dec = 0u64;
    let mut seen = vec![false; oracle.circle_count(rho)];
    for level in 0..g.levels() {
        for pos in 0..g.width(level) {
            let circle = oracle.circle_of(rho, g.point(level, pos));
            if seen[circle] {
                continue;
            }
            seen[circle] = true;
            let plus = if level <= li {
                let p = ti.point(li - level, pos);
                let sp = a.space();
                let comp = sp.resolved[x.rho as usize].comp_of(p);
                x.sign(sp.circles_of(x).comp_circle[comp])
            } else {
                let p = to.point(level - li, pos);
                let sp = d.space();
                let comp = sp.resolved[y.rho as usize].comp_of(p);
                y.sign(sp.circles_of(y).comp_circle[comp])
            };
            if plus {
                dec |= 1 << circle;
            }
        }
    }
    oracle.generator(rho, dec)
}

/// Compares an unsimplified box complex with the oracle under the state
/// bijection: generators, gradings and every differential entry.
pub fn chain_isomorphism(oracle: &Oracle, a: &ReducedA, d: &TypeD, bx: &BoxComplex) -> Check {
    let mut check = Check::new("box complex ≅ Khovanov complex");
    let mut map = Vec::with_capacity(bx.pairs.len());
    for &(s, y) in &bx.pairs {
        map.push(glued_generator(oracle, a.base(), a.state(s), d, d.state(y)));
    }
    check.expect(map.iter().all(Option::is_some), || "a box generator has no glued state".into());
    let map: Vec<usize> = map.into_iter().flatten().collect();
    if map.len() != bx.pairs.len() {
        return check;
    }
    let mut hit = vec![false; oracle.complex.len()];
    for &g in &map {
        hit[g] = true;
    }
    check.expect(map.len() == oracle.complex.len() && hit.iter().all(|&h| h), || {
        format!("{} box generators, {} Khovanov generators", map.len(), oracle.complex.len())
    });
    for (i, &g) in map.iter().enumerate() {
        check.expect(bx.complex.gradings[i] == oracle.complex.gradings[g], || {
            format!("grading of {}: {} vs {}", bx.complex.keys[i], bx.complex.gradings[i], oracle.complex.gradings[g])
        });
        let mapped = bx.complex.d[i].map_keys(|j| map[*j]);
        check.expect(mapped == oracle.complex.d[g], || format!("differential of {}", bx.complex.keys[i]));
    }
    check
}

/// Everything computed for one inside/outside pair.
pub struct Pairing {
    pub box_complex: BoxComplex,
    pub homology: HomologyTable,
}

/// Builds both structures, optionally simplifies them, pairs and takes
/// homology.
pub fn pair(inside: TangleDiagram, outside: TangleDiagram, simplify: bool, crossing_cap: usize) -> Result<Pairing> {
    let a = Arc::new(TypeA::new(inside, crossing_cap)?);
    let d = TypeD::new(outside, crossing_cap)?;
    let (ra, d) = if simplify {
        (simplify_type_a(a), simplify_type_d(&d).structure)
    } else {
        (ReducedA::identity(a), d)
    };
    let box_complex = box_tensor(&ra, &d)?;
    let homology = homology(&box_complex.complex)?;
    Ok(Pairing { box_complex, homology })
}

/// Homology of the glued diagram computed directly.
pub fn oracle_homology(inside: &TangleDiagram, outside: &TangleDiagram, crossing_cap: usize) -> Result<HomologyTable> {
    let o = Oracle::new(glue(inside, outside)?, crossing_cap)?;
    homology(&o.complex)
}

#[cfg(test)]
mod tests;
