//! Type D structure of an outside tangle, `δ: N → BΓₙ ⊗ N`.

use crate::algebra::{algebra, Algebra, GenKind};
use crate::check::Check;
use crate::diagram::{Matching, Side, State, StateSpace, TangleDiagram, TangleSide};
use crate::error::{Error, Result};
use crate::linalg::Chain as GenericChain;
use crate::{sign, Coeff, Grading};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Arc;

/// Combination of `(word id, generator)` pairs.
pub type DChain = GenericChain<(usize, usize), Coeff>;

/// Sequences of algebra words followed by a generator.
pub type PathChain = GenericChain<(Vec<usize>, usize), Coeff>;

#[derive(Clone)]
pub struct TypeD {
    alg: Arc<Algebra>,
    space: Arc<StateSpace>,
    states: Vec<State>,
    gradings: Vec<Grading>,
    idems: Vec<usize>,
    delta: Vec<DChain>,
}

impl TypeD {
    pub fn new(tangle: TangleDiagram, crossing_cap: usize) -> Result<Self> {
        if tangle.side != TangleSide::Outside {
            return Err(Error::Mismatch("a type D structure needs an outside tangle".into()));
        }
        let alg = algebra(tangle.n)?;
        let space = Arc::new(StateSpace::new(tangle, crossing_cap)?);
        let states = space.states();
        let index: HashMap<State, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let closures: HashMap<Matching, usize> =
            space.closures.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let delta = states.iter().map(|&s| Self::delta_of(&alg, &space, &index, &closures, s)).collect();
        Ok(Self::from_parts(alg, space, states, delta))
    }

    /// Structure on a subset of states of `space` with a given `δ`.
    pub(crate) fn from_parts(alg: Arc<Algebra>, space: Arc<StateSpace>, states: Vec<State>, delta: Vec<DChain>) -> Self {
        let gradings = states.iter().map(|&s| space.grading(s)).collect();
        let idems = states.iter().map(|&s| alg.idempotent_index(&space.boundary(s)).unwrap()).collect();
        TypeD { alg, space, states, gradings, idems, delta }
    }

    fn delta_of(
        alg: &Algebra,
        sp: &StateSpace,
        index: &HashMap<State, usize>,
        closures: &HashMap<Matching, usize>,
        s: State,
    ) -> DChain {
        let here = alg.idempotent_index(&sp.boundary(s)).unwrap();
        let mut out = DChain::new();
        let r = &sp.resolved[s.rho as usize];
        for &(c, feet) in &r.active {
            let sg = sign(sp.ones_after(s.rho, c) as i64);
            let t = sp.arc_terms(s, c, feet);
            for y in t.internal {
                out.add_term((alg.unit(here), index[&y]), sg.clone());
            }
            if let Some((circle, y)) = t.dec {
                let g = alg.only(here, GenKind::DecRight(circle)).unwrap();
                out.add_term((alg.gen_word(g), index[&y]), sg.clone());
            }
            if let Some(b) = t.bridge {
                for g in alg.gens_from(here, GenKind::Bridge(b)) {
                    let tgt = alg.idempotent(alg.generator(g).tgt);
                    let rho = s.rho | 1 << c;
                    debug_assert_eq!(sp.circles(rho, s.closure as usize).link, tgt.link);
                    let y = sp.with_boundary(s, rho, s.closure as usize, &tgt.signs);
                    out.add_term((alg.gen_word(g), index[&y]), sg.clone());
                }
            }
        }
        let hs = sign(sp.h_raw(s) as i64);
        let link = alg.link(here);
        for gamma in link.bridges(Side::Left) {
            for g in alg.gens_from(here, GenKind::Bridge(gamma)) {
                let tgt = alg.idempotent(alg.generator(g).tgt);
                let y = sp.with_boundary(s, s.rho, closures[&tgt.link.left], &tgt.signs);
                out.add_term((alg.gen_word(g), index[&y]), hs.clone());
            }
        }
        let sigma = &alg.idempotent(here).signs;
        for c in (0..sigma.len()).filter(|&c| sigma[c]) {
            let g = alg.only(here, GenKind::DecLeft(c)).unwrap();
            out.add_term((alg.gen_word(g), index[&State { dec: s.dec ^ 1 << c, ..s }]), hs.clone());
        }
        out
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, y: usize) -> State {
        self.states[y]
    }

    pub fn grading(&self, y: usize) -> Grading {
        self.gradings[y]
    }

    pub fn idem(&self, y: usize) -> usize {
        self.idems[y]
    }

    /// Parity used for the `|I|` signs: raw count of 1-resolutions.
    pub fn odd(&self, y: usize) -> bool {
        self.space.h_raw(self.states[y]) % 2 != 0
    }

    pub fn delta(&self, y: usize) -> &DChain {
        &self.delta[y]
    }

    pub fn label(&self, y: usize) -> String {
        self.space.label(self.states[y])
    }

    #[cfg(test)]
    pub(crate) fn delta_mut(&mut self, y: usize) -> &mut DChain {
        &mut self.delta[y]
    }

    /// `Δ_k(y)`; `Δ₀` is the identity.
    pub fn iterate(&self, y: usize, k: usize) -> PathChain {
        let mut cur = PathChain::from_term((Vec::new(), y), Coeff::from(1));
        for _ in 0..k {
            let mut next = PathChain::new();
            for ((ws, z), c) in cur.iter() {
                for ((w, t), d) in self.delta[*z].iter() {
                    let mut ws2 = ws.clone();
                    ws2.push(*w);
                    next.add_term((ws2, *t), c * d);
                }
            }
            cur = next;
        }
        cur
    }

    /// Smallest `k` with `Δ_k = 0` on every generator.
    pub fn depth(&self) -> Result<usize> {
        let cap = 2 * self.len() + 1;
        let mut frontier: Vec<usize> = (0..self.len()).collect();
        for k in 0..=cap {
            if frontier.is_empty() {
                return Ok(k);
            }
            let mut next: Vec<usize> = frontier.iter().flat_map(|&z| self.delta[z].keys().map(|&(_, t)| t)).collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        Err(Error::Verification(format!("δ iterates do not terminate within {cap} steps")))
    }

    /// Gradings, idempotents and `(μ ⊗ I)(I ⊗ δ)δ + (d ⊗ |I|)δ = 0`.
    pub fn verify(&self) -> Vec<Check> {
        let alg = &self.alg;
        let mut grad = Check::new("type D gradings");
        let mut idem = Check::new("type D idempotents");
        let mut eq = Check::new("type D structure equation");
        for y in 0..self.len() {
            let up = self.gradings[y] + Grading::new(1, 0);
            let mut res = DChain::new();
            for ((a, y1), c1) in self.delta[y].iter() {
                grad.expect(alg.grading(*a) + self.gradings[*y1] == up, || format!("{} → {}", self.label(y), self.label(*y1)));
                let w = alg.word(*a);
                idem.expect(w.src == self.idems[y] && w.tgt == self.idems[*y1], || self.label(y));
                for ((b, y2), c2) in self.delta[*y1].iter() {
                    for (p, c3) in alg.mul_words(*a, *b).iter() {
                        res.add_term((*p, *y2), c1 * c2 * c3);
                    }
                }
                let s = if self.odd(*y1) { -c1.clone() } else { c1.clone() };
                for (p, c3) in alg.d_word(*a).iter() {
                    res.add_term((*p, *y1), &s * c3);
                }
            }
            eq.expect(res.is_zero(), || {
                let terms: Vec<String> =
                    res.iter().map(|((w, t), c)| format!("{c}·{}⊗{}", alg.word_label(*w), self.label(*t))).collect();
                format!("{}: {}", self.label(y), terms.join(" + "))
            });
        }
        vec![grad, idem, eq]
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = (0..self.len())
            .map(|y| {
                let g = self.gradings[y];
                json!({"id": y, "key": self.label(y), "h": g.h, "q2": g.q2, "q": g.to_string(), "idempotent": self.idems[y]})
            })
            .collect();
        let mut delta = Vec::new();
        for y in 0..self.len() {
            for ((w, t), c) in self.delta[y].iter() {
                delta.push(json!({"from": y, "word": self.alg.word_label(*w), "to": t, "coeff": c.to_string()}));
            }
        }
        json!({
            "schema": "cleaved.type-d/1",
            "tangle": self.space.tangle.to_text(),
            "n": self.space.tangle.n,
            "generators": gens,
            "delta": delta,
        })
    }
}

#[cfg(test)]
mod tests;
