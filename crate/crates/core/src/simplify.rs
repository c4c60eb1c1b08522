//! Homotopy reduction of type A and type D structures by cancelling unit
//! differential components.
//!
//! On the A side every cancellation updates the inclusion `ι`, the projection
//! `π` (stored transposed, one covector per survivor) and the homotopy `H`.
//! The reduced actions are the transferred ones,
//! `m̄ₖ₊₁(x; a₁,…,aₖ) = π(H(…H(ιx·a₁)·a₂…)·aₖ)`.

use crate::algebra::{Algebra, Element};
use crate::check::Check;
use crate::diagram::State;
use crate::error::{Error, Result};
use crate::type_a::TypeA;
use crate::type_d::{DChain, TypeD};
use crate::{sign, Chain, Coeff, Grading};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// One cancelled pair, recorded for reproducibility.
#[derive(Clone, Debug, Serialize)]
pub struct Pivot {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

struct Step {
    coeff: Coeff,
    iota_x: Chain,
    pit_y: Chain,
}

/// Cancellation in progress on a type A structure.
#[derive(Clone)]
pub struct Reducer {
    base: Arc<TypeA>,
    alive: Vec<bool>,
    d: Vec<Chain>,
    rev: Vec<BTreeSet<usize>>,
    iota: Vec<Chain>,
    pit: Vec<Chain>,
    steps: Vec<Arc<Step>>,
    log: Vec<Pivot>,
}

impl Reducer {
    pub fn new(base: Arc<TypeA>) -> Self {
        let n = base.len();
        let d: Vec<Chain> = (0..n).map(|x| base.m1(x).clone()).collect();
        let mut rev = vec![BTreeSet::new(); n];
        for (x, row) in d.iter().enumerate() {
            for &y in row.keys() {
                rev[y].insert(x);
            }
        }
        let unit = |x| Chain::from_term(x, Coeff::one());
        Reducer {
            alive: vec![true; n],
            iota: (0..n).map(unit).collect(),
            pit: (0..n).map(unit).collect(),
            d,
            rev,
            steps: Vec::new(),
            log: Vec::new(),
            base,
        }
    }

    /// Lowest `(h, q2, x)` with a unit entry, paired with the lowest such `y`.
    pub fn pivot(&self) -> Option<(usize, usize)> {
        (0..self.base.len())
            .filter(|&x| self.alive[x])
            .filter_map(|x| self.d[x].iter().find(|(_, c)| c.abs().is_one()).map(|(&y, _)| (x, y)))
            .min_by_key(|&(x, _)| (self.base.grading(x), x))
    }

    /// Cancels `x → y`, which must be a unit entry of the current differential.
    pub fn cancel(&mut self, x: usize, y: usize) -> Result<()> {
        let u = self.d[x].coeff(&y);
        if !self.alive[x] || !self.alive[y] || !u.abs().is_one() {
            return Err(Error::Verification(format!(
                "{} → {} is not a unit entry (coefficient {u})",
                self.base.label(x),
                self.base.label(y)
            )));
        }
        let uinv = u.clone();
        let dx = self.d[x].clone();
        let iota_x = self.iota[x].clone();
        let pit_y = self.pit[y].clone();
        self.steps.push(Arc::new(Step { coeff: -&uinv, iota_x: iota_x.clone(), pit_y: pit_y.clone() }));
        self.log.push(Pivot { from: self.base.label(x), to: self.base.label(y), coeff: u.to_string() });
        for p in self.rev[y].clone() {
            if p == x || !self.alive[p] {
                continue;
            }
            let f = -(self.d[p].coeff(&y) * &uinv);
            for &t in dx.keys() {
                self.rev[t].insert(p);
            }
            self.d[p].add_scaled(&dx, &f);
            self.iota[p].add_scaled(&iota_x, &f);
        }
        for (&j, b) in dx.iter() {
            if j != y {
                let f = -(b * &uinv);
                self.pit[j].add_scaled(&pit_y, &f);
            }
        }
        for p in self.rev[x].clone() {
            self.d[p].remove(&x);
        }
        for z in [x, y] {
            for p in std::mem::take(&mut self.rev[z]) {
                self.d[p].remove(&z);
            }
            for t in std::mem::take(&mut self.d[z]).keys() {
                self.rev[*t].remove(&z);
            }
            self.alive[z] = false;
            self.iota[z] = Chain::new();
            self.pit[z] = Chain::new();
        }
        for p in 0..self.base.len() {
            debug_assert!(!self.alive[p] || !self.d[p].keys().any(|&t| !self.alive[t]));
        }
        Ok(())
    }

    /// Cancels unit pivots until none remain.
    pub fn run(&mut self) {
        while let Some((x, y)) = self.pivot() {
            self.cancel(x, y).expect("pivot is a unit");
        }
    }

    pub fn finish(&self) -> ReducedA {
        let n = self.base.len();
        let survivors: Vec<usize> = (0..n).filter(|&x| self.alive[x]).collect();
        let mut pos = vec![None; n];
        for (s, &x) in survivors.iter().enumerate() {
            pos[x] = Some(s);
        }
        let m1 = survivors.iter().map(|&x| self.d[x].map_keys(|t| pos[*t].unwrap())).collect();
        let mut pi_of = vec![Chain::new(); n];
        for (s, &x) in survivors.iter().enumerate() {
            for (z, c) in self.pit[x].iter() {
                pi_of[*z].add_term(s, c.clone());
            }
        }
        let mut h_inv: Vec<Vec<(usize, Coeff)>> = vec![Vec::new(); n];
        for (t, st) in self.steps.iter().enumerate() {
            for (z, c) in st.pit_y.iter() {
                h_inv[*z].push((t, c.clone()));
            }
        }
        ReducedA {
            iota: survivors.iter().map(|&x| self.iota[x].clone()).collect(),
            base: self.base.clone(),
            survivors,
            m1,
            pi_of,
            h_inv,
            steps: self.steps.clone(),
            log: self.log.clone(),
        }
    }
}

/// A type A structure up to homotopy: survivors of a sequence of
/// cancellations together with the data needed for the transferred actions.
#[derive(Clone)]
pub struct ReducedA {
    base: Arc<TypeA>,
    survivors: Vec<usize>,
    iota: Vec<Chain>,
    m1: Vec<Chain>,
    pi_of: Vec<Chain>,
    h_inv: Vec<Vec<(usize, Coeff)>>,
    steps: Vec<Arc<Step>>,
    log: Vec<Pivot>,
}

/// Cancels every unit pivot, lowest grading first.
pub fn simplify_type_a(a: Arc<TypeA>) -> ReducedA {
    let mut r = Reducer::new(a);
    r.run();
    r.finish()
}

impl ReducedA {
    /// The structure itself, with no cancellations.
    pub fn identity(a: Arc<TypeA>) -> Self {
        Reducer::new(a).finish()
    }

    pub fn base(&self) -> &Arc<TypeA> {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.base.algebra()
    }

    pub fn len(&self) -> usize {
        self.survivors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.survivors.is_empty()
    }

    pub fn original(&self, s: usize) -> usize {
        self.survivors[s]
    }

    pub fn state(&self, s: usize) -> State {
        self.base.state(self.survivors[s])
    }

    pub fn grading(&self, s: usize) -> Grading {
        self.base.grading(self.survivors[s])
    }

    pub fn idem(&self, s: usize) -> usize {
        self.base.idem(self.survivors[s])
    }

    pub fn label(&self, s: usize) -> String {
        self.base.label(self.survivors[s])
    }

    pub fn log(&self) -> &[Pivot] {
        &self.log
    }

    pub fn cancellations(&self) -> usize {
        self.steps.len()
    }

    /// Reduced differential `m̄₁`.
    pub fn m1(&self, s: usize) -> &Chain {
        &self.m1[s]
    }

    pub fn iota(&self, s: usize) -> &Chain {
        &self.iota[s]
    }

    pub fn iota_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for (s, k) in c.iter() {
            out.add_scaled(&self.iota[*s], k);
        }
        out
    }

    /// `π` of a chain of original generators.
    pub fn pi(&self, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for (z, k) in c.iter() {
            out.add_scaled(&self.pi_of[*z], k);
        }
        out
    }

    /// The homotopy `H` on a chain of original generators.
    pub fn h(&self, c: &Chain) -> Chain {
        let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
        for (z, k) in c.iter() {
            for (t, p) in &self.h_inv[*z] {
                *acc.entry(*t).or_insert_with(Coeff::zero) += k * p;
            }
        }
        let mut out = Chain::new();
        for (t, v) in acc {
            if !v.is_zero() {
                let st = &self.steps[t];
                out.add_scaled(&st.iota_x, &(v * &st.coeff));
            }
        }
        out
    }

    /// `m̄ₖ₊₁(s; w₁,…,wₖ)` for algebra words; `k = 0` gives `m̄₁`.
    pub fn m(&self, s: usize, words: &[usize]) -> Chain {
        self.m_from(self.iota[s].clone(), words)
    }

    fn m_from(&self, mut c: Chain, words: &[usize]) -> Chain {
        if words.is_empty() {
            return self.pi(&self.base.m1_chain(&c));
        }
        for (i, &w) in words.iter().enumerate() {
            let p = self.base.act_chain(&c, w);
            if i + 1 == words.len() {
                return self.pi(&p);
            }
            c = self.h(&p);
            if c.is_zero() {
                break;
            }
        }
        Chain::new()
    }

    /// `m̄` on a chain of survivors and a sequence of algebra elements.
    pub fn m_chain(&self, c: &Chain, elts: &[Element]) -> Chain {
        let mut out = Chain::new();
        let mut words = Vec::with_capacity(elts.len());
        self.expand(c, elts, &mut words, &Coeff::one(), &mut out);
        out
    }

    fn expand(&self, c: &Chain, elts: &[Element], words: &mut Vec<usize>, k: &Coeff, out: &mut Chain) {
        if words.len() == elts.len() {
            for (s, v) in c.iter() {
                out.add_scaled(&self.m(*s, words), &(k * v));
            }
            return;
        }
        for (w, v) in elts[words.len()].iter() {
            words.push(*w);
            self.expand(c, elts, words, &(k * v), out);
            words.pop();
        }
    }

    /// Nonzero `m̄ₖ₊₁(s; g₁,…,gₖ)` on composable generator sequences with
    /// `1 ≤ k ≤ max_len`, found by a pruned search.
    pub fn action_table(&self, max_len: usize) -> Vec<(usize, Vec<u32>, Chain)> {
        let mut out = Vec::new();
        for s in 0..self.len() {
            let mut gens = Vec::new();
            self.search(s, self.iota[s].clone(), self.idem(s), max_len, &mut gens, &mut out);
        }
        out
    }

    fn search(
        &self,
        s: usize,
        c: Chain,
        idem: usize,
        max_len: usize,
        gens: &mut Vec<u32>,
        out: &mut Vec<(usize, Vec<u32>, Chain)>,
    ) {
        if gens.len() == max_len {
            return;
        }
        let alg = self.algebra().clone();
        for &g in alg.outgoing(idem) {
            let p = self.base.act_chain(&c, alg.gen_word(g));
            if p.is_zero() {
                continue;
            }
            gens.push(g);
            let v = self.pi(&p);
            if !v.is_zero() {
                out.push((s, gens.clone(), v));
            }
            let next = self.h(&p);
            if !next.is_zero() {
                self.search(s, next, alg.generator(g).tgt, max_len, gens, out);
            }
            gens.pop();
        }
    }

    /// Longest generator sequence with a nonzero higher action, searching
    /// up to `cap`; `None` if the search reaches the cap.
    pub fn action_depth(&self, cap: usize) -> Option<usize> {
        let t = self.action_table(cap + 1);
        let depth = t.iter().map(|(_, g, _)| g.len()).max().unwrap_or(0);
        (depth <= cap).then_some(depth)
    }

    /// Side conditions of the cancellation data and the chain-map property
    /// of `ι` and `π`, as matrix identities on every generator.
    pub fn verify_homotopy(&self) -> Vec<Check> {
        let b = &self.base;
        let mut pi_iota = Check::new("πι = I");
        let mut h_iota = Check::new("Hι = 0");
        let mut pi_h = Check::new("πH = 0");
        let mut hh = Check::new("H² = 0");
        let mut htpy = Check::new("ιπ − I = dH + Hd");
        let mut chain = Check::new("ι, π are chain maps");
        for s in 0..self.len() {
            pi_iota.expect(self.pi(&self.iota[s]) == Chain::from_term(s, Coeff::one()), || self.label(s));
            h_iota.expect(self.h(&self.iota[s]).is_zero(), || self.label(s));
            let lhs = b.m1_chain(&self.iota[s]);
            chain.expect(lhs == self.iota_chain(&self.m1[s]), || format!("dι {}", self.label(s)));
        }
        for z in 0..b.len() {
            let e = Chain::from_term(z, Coeff::one());
            let hz = self.h(&e);
            pi_h.expect(self.pi(&hz).is_zero(), || b.label(z));
            hh.expect(self.h(&hz).is_zero(), || b.label(z));
            let mut lhs = self.iota_chain(&self.pi_of[z]);
            lhs.add_term(z, -Coeff::one());
            let mut rhs = b.m1_chain(&hz);
            rhs.add_chain(&self.h(b.m1(z)));
            htpy.expect(lhs == rhs, || b.label(z));
            let mut dpi = Chain::new();
            for (s, k) in self.pi_of[z].iter() {
                dpi.add_scaled(&self.m1[*s], k);
            }
            chain.expect(self.pi(b.m1(z)) == dpi, || format!("πd {}", b.label(z)));
        }
        vec![pi_iota, h_iota, pi_h, hh, htpy, chain]
    }

    /// A∞ relations of the reduced module on every composable sequence of
    /// algebra generators of length at most `max_len`, plus `m̄₁ = πdι`,
    /// strict unitality and gradings.
    ///
    /// With `εᵢ` the parity of `|aᵢ|`, the relation checked for `k ≥ 1` is
    /// `Σⱼ (−1)^{k−j+Σ_{i≥j}εᵢ} m̄(m̄(x;a<ⱼ);a≥ⱼ)
    ///  − Σⱼ (−1)^{k−j+Σ_{i≥j}εᵢ} m̄(x;…,aⱼ₋₁aⱼ,…)
    ///  + Σⱼ (−1)^{k−j+Σ_{i>j}εᵢ} m̄(x;…,daⱼ,…) = 0`.
    pub fn verify(&self, max_len: usize) -> Vec<Check> {
        let alg = self.algebra().clone();
        let mut m1 = Check::new("m̄1 = πdι");
        let mut sq = Check::new("m̄1∘m̄1 = 0");
        let mut unit = Check::new("strict unit");
        let mut grad = Check::new("reduced gradings");
        let mut rel = Check::new("A∞ relations");
        for s in 0..self.len() {
            m1.expect(self.m(s, &[]) == self.m1[s], || self.label(s));
            let mut dd = Chain::new();
            for (t, k) in self.m1[s].iter() {
                dd.add_scaled(&self.m1[*t], k);
            }
            sq.expect(dd.is_zero(), || self.label(s));
            let i = alg.unit(self.idem(s));
            unit.expect(self.m(s, &[i]) == Chain::from_term(s, Coeff::one()), || self.label(s));
            for &g in alg.outgoing(self.idem(s)) {
                let w = alg.gen_word(g);
                unit.expect(self.m(s, &[i, w]).is_zero() && self.m(s, &[w, alg.unit(alg.generator(g).tgt)]).is_zero(), || {
                    format!("{} with {}", self.label(s), alg.gen_label(g))
                });
            }
        }
        for (s, gens, v) in self.action_table(max_len) {
            let want = gens.iter().fold(self.grading(s), |acc, &g| acc + alg.grading(alg.gen_word(g)))
                + Grading::new(1 - gens.len() as i32, 0);
            grad.expect(v.keys().all(|&t| self.grading(t) == want), || self.label(s));
        }
        for s in 0..self.len() {
            let mut seq = Vec::new();
            self.relations_from(s, self.idem(s), max_len, &mut seq, &mut rel);
        }
        vec![m1, sq, unit, grad, rel]
    }

    fn relations_from(&self, s: usize, idem: usize, max_len: usize, seq: &mut Vec<usize>, rel: &mut Check) {
        if seq.len() == max_len {
            return;
        }
        let alg = self.algebra().clone();
        for &g in alg.outgoing(idem) {
            seq.push(alg.gen_word(g));
            let r = self.relation(s, seq);
            rel.expect(r.is_zero(), || {
                let names: Vec<String> = seq.iter().map(|&w| alg.word_label(w)).collect();
                format!("{}; {}", self.label(s), names.join(", "))
            });
            self.relations_from(s, alg.generator(g).tgt, max_len, seq, rel);
            seq.pop();
        }
    }

    fn relation(&self, s: usize, a: &[usize]) -> Chain {
        let alg = self.algebra();
        let k = a.len();
        let eps: Vec<i64> = a.iter().map(|&w| alg.grading(w).h as i64).collect();
        let tail = |j: usize| -> i64 { eps[j - 1..].iter().sum() };
        let elt = |w: usize| Element::from_term(w, Coeff::one());
        let x = Chain::from_term(s, Coeff::one());
        let mut out = Chain::new();
        for j in 1..=k + 1 {
            let inner = self.m_chain(&x, &a[..j - 1].iter().map(|&w| elt(w)).collect::<Vec<_>>());
            let outer = self.m_chain(&inner, &a[j - 1..].iter().map(|&w| elt(w)).collect::<Vec<_>>());
            let e = if j <= k { tail(j) } else { 0 };
            out.add_scaled(&outer, &sign((k as i64 - j as i64) + e));
        }
        for j in 2..=k {
            let mut elts: Vec<Element> = a.iter().map(|&w| elt(w)).collect();
            elts[j - 2] = alg.mul_words(a[j - 2], a[j - 1]);
            elts.remove(j - 1);
            out.add_scaled(&self.m_chain(&x, &elts), &-sign(k as i64 - j as i64 + tail(j)));
        }
        for j in 1..=k {
            let mut elts: Vec<Element> = a.iter().map(|&w| elt(w)).collect();
            elts[j - 1] = alg.d_word(a[j - 1]);
            out.add_scaled(&self.m_chain(&x, &elts), &sign(k as i64 - j as i64 + tail(j) - eps[j - 1]));
        }
        out
    }

    pub fn to_json(&self, max_len: usize) -> Value {
        let alg = self.algebra();
        let gens: Vec<Value> = (0..self.len())
            .map(|s| {
                let g = self.grading(s);
                json!({"id": s, "key": self.label(s), "h": g.h, "q2": g.q2, "q": g.to_string(), "idempotent": self.idem(s)})
            })
            .collect();
        let mut m1 = Vec::new();
        for s in 0..self.len() {
            for (t, c) in self.m1[s].iter() {
                m1.push(json!([s, t, c.to_string()]));
            }
        }
        let actions: Vec<Value> = self
            .action_table(max_len)
            .into_iter()
            .flat_map(|(s, gs, v)| {
                let names: Vec<String> = gs.iter().map(|&g| alg.gen_label(g)).collect();
                v.iter()
                    .map(|(t, c)| json!({"from": s, "word": names, "to": t, "coeff": c.to_string()}))
                    .collect::<Vec<_>>()
            })
            .collect();
        json!({
            "schema": "cleaved.type-a/1",
            "tangle": self.base.space().tangle.to_text(),
            "n": self.base.space().tangle.n,
            "reduced": true,
            "generators": gens,
            "m1": m1,
            "actions": actions,
            "reduction": self.log,
        })
    }
}

/// A reduced type D structure together with its pivot sequence.
pub struct ReducedD {
    pub structure: TypeD,
    pub log: Vec<Pivot>,
}

/// Eliminates idempotent unit components of `δ`, lowest `(h, q2, y)` first.
/// Each step replaces `δ(y)` by `δ(y) − a·u⁻¹·δ(y₁)` for every term
/// `a ⊗ y₂` of `δ(y)`, where `δ(y₁) ∋ u·I ⊗ y₂`.
pub fn simplify_type_d(d: &TypeD) -> ReducedD {
    let alg = d.algebra().clone();
    let n = d.len();
    let n_idem = alg.idempotents().len();
    let mut rows: Vec<BTreeMap<usize, Element>> = (0..n)
        .map(|y| {
            let mut m: BTreeMap<usize, Element> = BTreeMap::new();
            for ((w, t), c) in d.delta(y).iter() {
                m.entry(*t).or_default().add_scaled(alg.normal_form(*w), c);
            }
            m.retain(|_, e| !e.is_zero());
            m
        })
        .collect();
    let mut rev: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (y, row) in rows.iter().enumerate() {
        for &t in row.keys() {
            rev[t].insert(y);
        }
    }
    let mut alive = vec![true; n];
    let mut log = Vec::new();
    let unit_of = |e: &Element| -> Option<Coeff> {
        match e.iter().next() {
            Some((w, c)) if e.len() == 1 && *w < n_idem && c.abs().is_one() => Some(c.clone()),
            _ => None,
        }
    };
    loop {
        let pivot = (0..n)
            .filter(|&y| alive[y])
            .filter_map(|y| rows[y].iter().find_map(|(&t, e)| unit_of(e).map(|u| (y, t, u))))
            .min_by_key(|(y, _, _)| (d.grading(*y), *y));
        let Some((y1, y2, u)) = pivot else { break };
        log.push(Pivot { from: d.label(y1), to: d.label(y2), coeff: u.to_string() });
        let row1 = rows[y1].clone();
        for y in rev[y2].clone() {
            if y == y1 || !alive[y] {
                continue;
            }
            // rev may keep predecessors whose entry cancelled to zero
            let Some(a) = rows[y].get(&y2).cloned() else { continue };
            for (&z, b) in &row1 {
                let mut p = alg.mul(&a, b);
                if p.is_zero() {
                    continue;
                }
                p = p.scaled(&-u.clone());
                let e = rows[y].entry(z).or_default();
                e.add_chain(&p);
                rev[z].insert(y);
            }
            rows[y].retain(|_, e| !e.is_zero());
        }
        for z in [y1, y2] {
            for p in std::mem::take(&mut rev[z]) {
                rows[p].remove(&z);
            }
            for t in std::mem::take(&mut rows[z]).into_keys() {
                rev[t].remove(&z);
            }
            alive[z] = false;
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&y| alive[y]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &y) in survivors.iter().enumerate() {
        pos[y] = i;
    }
    let states = survivors.iter().map(|&y| d.state(y)).collect();
    let delta = survivors
        .iter()
        .map(|&y| {
            let mut out = DChain::new();
            for (t, e) in &rows[y] {
                for (w, c) in e.iter() {
                    out.add_term((*w, pos[*t]), c.clone());
                }
            }
            out
        })
        .collect();
    ReducedD { structure: TypeD::from_parts(alg, d.space().clone(), states, delta), log }
}

/// Whether `a` and `b` agree up to a sign change of basis: generators are
/// matched by idempotent and grading, and some signs `ε` give
/// `a(s → t) = ε_s ε_t b(s → t)` on `m̄₁` and every action up to six
/// generators.
pub fn isomorphic_up_to_signs(a: &ReducedA, b: &ReducedA) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let key = |r: &ReducedA, s: usize| (r.idem(s), r.grading(s));
    let bmap: HashMap<_, usize> = (0..b.len()).map(|s| (key(b, s), s)).collect();
    if bmap.len() != b.len() {
        return false;
    }
    let Some(to_b): Option<Vec<usize>> = (0..a.len()).map(|s| bmap.get(&key(a, s)).copied()).collect() else {
        return false;
    };
    let entries = |r: &ReducedA, map: &dyn Fn(usize) -> usize| {
        let mut out: BTreeMap<(usize, Vec<u32>, usize), Coeff> = BTreeMap::new();
        for s in 0..r.len() {
            for (t, c) in r.m1(s).iter() {
                out.insert((map(s), vec![], map(*t)), c.clone());
            }
        }
        for (s, g, v) in r.action_table(6) {
            for (t, c) in v.iter() {
                out.insert((map(s), g.clone(), map(*t)), c.clone());
            }
        }
        out
    };
    let ea = entries(a, &|s| to_b[s]);
    let eb = entries(b, &|s| s);
    if ea.keys().ne(eb.keys()) {
        return false;
    }
    let mut eps: Vec<Option<i8>> = vec![None; b.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for ((s, g, t), ca) in &ea {
            let cb = &eb[&(*s, g.clone(), *t)];
            let rel: i8 = if ca == cb {
                1
            } else if *ca == -cb.clone() {
                -1
            } else {
                return false;
            };
            match (eps[*s], eps[*t]) {
                (Some(x), Some(y)) if x * y != rel => return false,
                (Some(x), None) => {
                    eps[*t] = Some(x * rel);
                    changed = true;
                }
                (None, Some(y)) => {
                    eps[*s] = Some(y * rel);
                    changed = true;
                }
                (None, None) if !changed => {
                    eps[*s] = Some(1);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    true
}
