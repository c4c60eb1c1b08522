//! Type A structure of an inside tangle: states with `m₁ = d_APS` and the
//! right action `m₂` of algebra generators.

use crate::algebra::{algebra, Algebra, Element, GenKind};
use crate::check::Check;
use crate::diagram::{Matching, Side, State, StateSpace, TangleDiagram, TangleSide};
use crate::error::{Error, Result};
use crate::{sign, Chain, Coeff, Grading};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Arc;

pub struct TypeA {
    alg: Arc<Algebra>,
    space: StateSpace,
    states: Vec<State>,
    index: HashMap<State, usize>,
    gradings: Vec<Grading>,
    idems: Vec<usize>,
    m1: Vec<Chain>,
    /// Nonzero `m₂(x, g)` per state and generator.
    act: Vec<HashMap<u32, Chain>>,
}

impl TypeA {
    pub fn new(tangle: TangleDiagram, crossing_cap: usize) -> Result<Self> {
        if tangle.side != TangleSide::Inside {
            return Err(Error::Mismatch("a type A structure needs an inside tangle".into()));
        }
        let alg = algebra(tangle.n)?;
        let space = StateSpace::new(tangle, crossing_cap)?;
        let states = space.states();
        let index: HashMap<State, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let gradings = states.iter().map(|&s| space.grading(s)).collect();
        let idems = states
            .iter()
            .map(|&s| alg.idempotent_index(&space.boundary(s)).expect("boundary is an idempotent"))
            .collect();
        let mut a = TypeA { alg, space, states, index, gradings, idems, m1: Vec::new(), act: Vec::new() };
        let closures: HashMap<Matching, usize> =
            a.space.closures.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        for x in 0..a.states.len() {
            let (m1, act) = a.structure_maps(x, &closures);
            a.m1.push(m1);
            a.act.push(act);
        }
        Ok(a)
    }

    fn structure_maps(&self, x: usize, closures: &HashMap<Matching, usize>) -> (Chain, HashMap<u32, Chain>) {
        let s = self.states[x];
        let sp = &self.space;
        let r = &sp.resolved[s.rho as usize];
        let mut m1 = Chain::new();
        let mut dec: HashMap<usize, Chain> = HashMap::new();
        let mut bridge: Vec<(crate::diagram::Bridge, usize, Coeff)> = Vec::new();
        for &(c, feet) in &r.active {
            let sg = sign(sp.ones_after(s.rho, c) as i64);
            let t = sp.arc_terms(s, c, feet);
            for y in t.internal {
                m1.add_term(self.index[&y], sg.clone());
            }
            if let Some((circle, y)) = t.dec {
                dec.entry(circle).or_default().add_term(self.index[&y], sg.clone());
            }
            if let Some(b) = t.bridge {
                bridge.push((b, c, sg));
            }
        }
        let mut act = HashMap::new();
        let here = self.idems[x];
        for &g in self.alg.outgoing(here) {
            let gen = self.alg.generator(g);
            let tgt = self.alg.idempotent(gen.tgt);
            let out = match gen.kind {
                GenKind::DecRight(c) => {
                    Chain::from_term(self.index[&State { dec: s.dec ^ 1 << c, ..s }], Coeff::from(1))
                }
                GenKind::DecLeft(c) => dec.get(&c).cloned().unwrap_or_default(),
                GenKind::Bridge(b) if b.side == Side::Left => {
                    let mut out = Chain::new();
                    for (bb, c, sg) in &bridge {
                        if *bb == b {
                            let rho = s.rho | 1 << c;
                            debug_assert_eq!(sp.circles(rho, s.closure as usize).link, tgt.link);
                            let y = sp.with_boundary(s, rho, s.closure as usize, &tgt.signs);
                            out.add_term(self.index[&y], sg.clone());
                        }
                    }
                    out
                }
                GenKind::Bridge(_) => {
                    let m = closures[&tgt.link.right];
                    let y = sp.with_boundary(s, s.rho, m, &tgt.signs);
                    Chain::from_term(self.index[&y], Coeff::from(1))
                }
            };
            if !out.is_zero() {
                act.insert(g, out);
            }
        }
        (m1, act)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, x: usize) -> State {
        self.states[x]
    }

    pub fn index_of(&self, s: State) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn grading(&self, x: usize) -> Grading {
        self.gradings[x]
    }

    pub fn idem(&self, x: usize) -> usize {
        self.idems[x]
    }

    pub fn label(&self, x: usize) -> String {
        self.space.label(self.states[x])
    }

    pub fn m1(&self, x: usize) -> &Chain {
        &self.m1[x]
    }

    pub fn m1_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for (x, k) in c.iter() {
            out.add_scaled(&self.m1[*x], k);
        }
        out
    }

    pub fn act_gen(&self, x: usize, g: u32) -> Chain {
        self.act[x].get(&g).cloned().unwrap_or_default()
    }

    /// `m₂` with a word, one generator at a time; the empty word acts as its
    /// idempotent.
    pub fn act_chain(&self, c: &Chain, w: usize) -> Chain {
        let word = self.alg.word(w);
        let mut cur: Chain = c.filtered(|&x| self.idems[x] == word.src);
        for &g in &word.gens {
            let mut next = Chain::new();
            for (x, k) in cur.iter() {
                if let Some(v) = self.act[*x].get(&g) {
                    next.add_scaled(v, k);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn act_word(&self, x: usize, w: usize) -> Chain {
        self.act_chain(&Chain::from_term(x, Coeff::from(1)), w)
    }

    pub fn act_element(&self, c: &Chain, e: &Element) -> Chain {
        let mut out = Chain::new();
        for (w, k) in e.iter() {
            out.add_scaled(&self.act_chain(c, *w), k);
        }
        out
    }

    /// `m₁² = 0`, gradings, unit, `m₁`/`m₂` Leibniz rule, relations and
    /// associativity of the action.
    pub fn verify(&self) -> Vec<Check> {
        let alg = &self.alg;
        let mut sq = Check::new("m1∘m1 = 0");
        let mut grad = Check::new("type A gradings");
        let mut unit = Check::new("strict unit");
        let mut leib = Check::new("m1/m2 Leibniz rule");
        let mut rel = Check::new("m2 respects relations");
        let mut assoc = Check::new("m2 associativity");
        for x in 0..self.len() {
            let one = Chain::from_term(x, Coeff::from(1));
            sq.expect(self.m1_chain(&self.m1[x]).is_zero(), || self.label(x));
            let up = self.gradings[x] + Grading::new(1, 0);
            grad.expect(self.m1[x].keys().all(|&y| self.gradings[y] == up), || format!("m1 {}", self.label(x)));
            for i in 0..alg.idempotents().len() {
                let want = if i == self.idems[x] { one.clone() } else { Chain::new() };
                unit.expect(self.act_word(x, alg.unit(i)) == want, || format!("{}·I{i}", self.label(x)));
            }
            for &g in alg.outgoing(self.idems[x]) {
                let w = alg.gen_word(g);
                let a = self.act_word(x, w);
                let ga = self.gradings[x] + alg.grading(w);
                grad.expect(a.keys().all(|&y| self.gradings[y] == ga), || format!("m2 {} {}", self.label(x), alg.gen_label(g)));
                let lhs = self.m1_chain(&a);
                let mut rhs = self.act_chain(&self.m1[x], w);
                if alg.grading(w).h % 2 != 0 {
                    rhs = rhs.neg();
                }
                rhs.add_chain(&self.act_element(&one, &alg.d_word(w)));
                leib.expect(lhs == rhs, || format!("{} ⊗ {}", self.label(x), alg.gen_label(g)));
                for &g2 in alg.outgoing(alg.generator(g).tgt) {
                    let w2 = alg.gen_word(g2);
                    let l = self.act_word(x, w);
                    let l = self.act_chain(&l, w2);
                    let r = self.act_element(&one, &alg.mul_words(w, w2));
                    assoc.expect(l == r, || format!("{} ⊗ {} ⊗ {}", self.label(x), alg.gen_label(g), alg.gen_label(g2)));
                }
            }
        }
        for r in alg.relations() {
            for x in (0..self.len()).filter(|&x| self.idems[x] == r.src) {
                let v = self.act_element(&Chain::from_term(x, Coeff::from(1)), &r.elt);
                rel.expect(v.is_zero(), || format!("{:?} on {}: {}", r.family, self.label(x), alg.elt_label(&r.elt)));
            }
        }
        vec![sq, grad, unit, leib, rel, assoc]
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = (0..self.len())
            .map(|x| {
                let g = self.gradings[x];
                json!({"id": x, "key": self.label(x), "h": g.h, "q2": g.q2, "q": g.to_string(), "idempotent": self.idems[x]})
            })
            .collect();
        let mut m1 = Vec::new();
        for x in 0..self.len() {
            for (y, c) in self.m1[x].iter() {
                m1.push(json!([x, y, c.to_string()]));
            }
        }
        let mut m2 = Vec::new();
        for x in 0..self.len() {
            let mut gs: Vec<&u32> = self.act[x].keys().collect();
            gs.sort();
            for g in gs {
                for (y, c) in self.act[x][g].iter() {
                    m2.push(json!({"from": x, "generator": self.alg.gen_label(*g), "to": y, "coeff": c.to_string()}));
                }
            }
        }
        json!({
            "schema": "cleaved.type-a/1",
            "tangle": self.space.tangle.to_text(),
            "n": self.space.tangle.n,
            "generators": gens,
            "m1": m1,
            "m2": m2,
        })
    }
}

#[cfg(test)]
mod tests;
