use super::{Algebra, Element, GenKind};
use crate::Grading;
use crate::check::Check;
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn chain_json(a: &Algebra, x: &Element) -> Value {
    Value::Array(x.iter().map(|(w, c)| json!([w, c.to_string(), a.word_label(*w)])).collect())
}

impl Algebra {
    /// Exhaustive consistency checks on basis words.
    pub fn consistency(&self) -> Vec<Check> {
        let basis = self.basis();
        let mut orth = Check::new("idempotent orthogonality");
        for i in 0..self.idempotents().len() {
            for j in 0..self.idempotents().len() {
                let p = self.mul_words(self.unit(i), self.unit(j));
                let want = if i == j { Element::from_term(self.unit(i), 1.into()) } else { Element::new() };
                orth.expect(p == want, || format!("I{i}·I{j}"));
            }
        }

        let mut rel = Check::new("relation instances vanish");
        let mut drel = Check::new("d preserves the relation ideal");
        for r in self.relations() {
            rel.expect(self.reduce(&r.elt).is_zero(), || format!("{:?}: {}", r.family, self.elt_label(&r.elt)));
            drel.expect(self.d(&r.elt).is_zero(), || format!("d of {:?}: {}", r.family, self.elt_label(&r.elt)));
        }

        let mut assoc = Check::new("associativity");
        let mut by_src: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &w in &basis {
            by_src.entry(self.word(w).src).or_default().push(w);
        }
        let empty = Vec::new();
        for &x in &basis {
            for &y in by_src.get(&self.word(x).tgt).unwrap_or(&empty) {
                for &z in by_src.get(&self.word(y).tgt).unwrap_or(&empty) {
                    let ex = Element::from_term(x, 1.into());
                    let ez = Element::from_term(z, 1.into());
                    let l = self.mul(&self.mul_words(x, y), &ez);
                    let r = self.mul(&ex, &self.mul_words(y, z));
                    assoc.expect(l == r, || format!("({}, {}, {})", x, y, z));
                }
            }
        }

        let mut dd = Check::new("d∘d = 0");
        let mut grad = Check::new("grading additivity");
        for &w in &basis {
            let d1 = self.d_word(w);
            dd.expect(self.d(&d1).is_zero(), || self.word_label(w));
            let g = self.grading(w) + Grading::new(1, 0);
            grad.expect(d1.keys().all(|&v| self.grading(v) == g), || format!("d({})", self.word_label(w)));
        }

        let mut leib = Check::new("Leibniz on generator pairs");
        for g1 in 0..self.generators().len() as u32 {
            let x = self.generator(g1);
            for &g2 in self.outgoing(x.tgt) {
                let (w1, w2) = (self.gen_word(g1), self.gen_word(g2));
                let e1 = Element::from_term(w1, 1.into());
                let e2 = Element::from_term(w2, 1.into());
                let lhs = self.d(&self.mul_words(w1, w2));
                let mut rhs = self.mul(&self.d_word(w1), &e2);
                if self.generator(g2).kind.odd() {
                    rhs = rhs.neg();
                }
                rhs.add_chain(&self.mul(&e1, &self.d_word(w2)));
                leib.expect(lhs == rhs, || format!("{}·{}", self.gen_label(g1), self.gen_label(g2)));
                let p = self.mul_words(w1, w2);
                let g = self.grading(w1) + self.grading(w2);
                grad.expect(p.keys().all(|&v| self.grading(v) == g), || format!("{}·{}", g1, g2));
            }
        }
        vec![orth, rel, drel, assoc, dd, leib, grad]
    }

    pub fn elt_label(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = x.iter().map(|(w, c)| format!("{c}·{}", self.word_label(*w))).collect();
        terms.join(" + ")
    }

    /// Block dimensions of the quotient keyed by `(source, target, grading)`.
    pub fn block_dims(&self) -> BTreeMap<(usize, usize, Grading), usize> {
        let mut out = BTreeMap::new();
        for w in self.basis() {
            let x = self.word(w);
            *out.entry((x.src, x.tgt, x.grading)).or_default() += 1;
        }
        out
    }

    /// Basis, block dimensions, multiplication and differential tables.
    pub fn to_json(&self) -> Value {
        let basis = self.basis();
        let gens: Vec<Value> = self
            .generators()
            .iter()
            .enumerate()
            .map(|(g, x)| {
                let gr = x.kind.grading();
                let kind = match x.kind {
                    GenKind::DecRight(_) => "dec-right",
                    GenKind::DecLeft(_) => "dec-left",
                    GenKind::Bridge(b) if b.side == crate::diagram::Side::Left => "bridge-left",
                    GenKind::Bridge(_) => "bridge-right",
                };
                json!({"id": g, "kind": kind, "label": self.gen_label(g as u32), "src": x.src, "tgt": x.tgt,
                       "h": gr.h, "q": gr.to_string()})
            })
            .collect();
        let words: Vec<Value> = basis
            .iter()
            .map(|&w| {
                let x = self.word(w);
                json!({"id": w, "label": self.word_label(w), "src": x.src, "tgt": x.tgt, "gens": x.gens,
                       "h": x.grading.h, "q2": x.grading.q2})
            })
            .collect();
        let blocks: Vec<Value> = self
            .block_dims()
            .iter()
            .map(|((s, t, g), d)| json!({"src": s, "tgt": t, "h": g.h, "q2": g.q2, "dim": d}))
            .collect();
        let mut products = Vec::new();
        for &x in &basis {
            for &y in &basis {
                if self.word(x).tgt == self.word(y).src && !self.word(x).gens.is_empty() && !self.word(y).gens.is_empty() {
                    let p = self.mul_words(x, y);
                    if !p.is_zero() {
                        products.push(json!({"left": x, "right": y, "product": chain_json(self, &p)}));
                    }
                }
            }
        }
        let diff: Vec<Value> = basis
            .iter()
            .filter_map(|&w| {
                let d = self.d_word(w);
                (!d.is_zero()).then(|| json!({"word": w, "d": chain_json(self, &d)}))
            })
            .collect();
        json!({
            "schema": "cleaved.algebra/1",
            "n": self.n,
            "idempotents": self.idempotents().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "generators": gens,
            "basis": words,
            "blocks": blocks,
            "products": products,
            "differential": diff,
        })
    }

    /// Counts behind the small-`n` audit: idempotents, generators with
    /// gradings, nonzero products of non-idempotent basis words and nonzero
    /// differentials. `e_C→` is listed with both gradings in circulation,
    /// `(0,−1)` from the generator table (used) and `(0,−1/2)`.
    pub fn audit(&self) -> Value {
        let basis = self.basis();
        let gens: Vec<Value> = self
            .generators()
            .iter()
            .enumerate()
            .map(|(g, x)| {
                let gr = x.kind.grading();
                let mut v = json!({"label": self.gen_label(g as u32), "src": x.src, "tgt": x.tgt,
                                   "h": gr.h, "q": gr.to_string()});
                if let GenKind::DecRight(_) = x.kind {
                    v["q_readings"] = json!({"used": Grading::new(0, -2).to_string(), "alternative": Grading::new(0, -1).to_string()});
                }
                v
            })
            .collect();
        let nontrivial: Vec<usize> = basis.iter().copied().filter(|&w| !self.word(w).gens.is_empty()).collect();
        let mut products = 0;
        for &x in &nontrivial {
            for &y in &nontrivial {
                if self.word(x).tgt == self.word(y).src && !self.mul_words(x, y).is_zero() {
                    products += 1;
                }
            }
        }
        let differentials = basis.iter().filter(|&&w| !self.d_word(w).is_zero()).count();
        json!({
            "schema": "cleaved.algebra-audit/1",
            "n": self.n,
            "idempotents": self.idempotents().len(),
            "generators": gens,
            "basis_size": basis.len(),
            "nonzero_products": products,
            "nonzero_differentials": differentials,
        })
    }
}
