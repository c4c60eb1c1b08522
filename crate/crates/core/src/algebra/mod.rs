//! The cleaved-link algebra `BΓₙ` for small `n`.
//!
//! Elements are integer combinations of generator words. Every generator
//! lowers `ι` strictly, so the set of composable words is finite; the
//! relations are expanded into their two-sided ideal inside each
//! `(source, target, grading)` block and reduced to a normal form.

mod audit;
mod quotient;
mod relations;

pub use relations::{Family, Relation};

use crate::diagram::{Bridge, CleavedLink, Decorated, Side};
use crate::error::{Error, Result};
use crate::{sign, Chain, Coeff, Grading};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest `n` the algebra is built for.
pub const MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    /// `e_C→` on circle `C` of the source link.
    DecRight(usize),
    /// `e_C←` on circle `C` of the source link.
    DecLeft(usize),
    Bridge(Bridge),
}

impl GenKind {
    pub fn grading(&self) -> Grading {
        match self {
            GenKind::DecRight(_) => Grading::new(0, -2),
            GenKind::DecLeft(_) => Grading::new(1, 2),
            GenKind::Bridge(b) if b.side == Side::Right => Grading::new(0, -1),
            GenKind::Bridge(_) => Grading::new(1, 1),
        }
    }

    pub fn odd(&self) -> bool {
        self.grading().h % 2 != 0
    }

    pub fn bridge(&self) -> Option<Bridge> {
        match self {
            GenKind::Bridge(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GenKind,
    pub src: usize,
    pub tgt: usize,
}

/// Composable word of generators from idempotent `src` to `tgt`; the empty
/// word is the idempotent itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub src: usize,
    pub tgt: usize,
    pub gens: Vec<u32>,
    pub grading: Grading,
}

/// Integer combination of word ids.
pub type Element = Chain<usize>;

pub struct Algebra {
    pub n: usize,
    idempotents: Vec<Decorated>,
    idem_index: HashMap<Decorated, usize>,
    circles: Vec<Vec<Vec<usize>>>,
    gens: Vec<Generator>,
    gen_index: HashMap<(usize, GenKind, usize), u32>,
    outgoing: Vec<Vec<u32>>,
    words: Vec<Word>,
    word_index: HashMap<(usize, Vec<u32>), usize>,
    starting: Vec<Vec<usize>>,
    ending: Vec<Vec<usize>>,
    dgen: Vec<Element>,
    relations: Vec<Relation>,
    nf: Vec<Element>,
}

/// The algebra for `n`, built once per process.
pub fn algebra(n: usize) -> Result<Arc<Algebra>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, std::result::Result<Arc<Algebra>, String>>>> = OnceLock::new();
    if n > MAX_N {
        return Err(Error::Cap(format!("algebra for n={n} exceeds the cap of {MAX_N}")));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone().map_err(Error::Torsion);
    }
    // built outside the lock; a concurrent duplicate build is harmless
    let built = Algebra::build(n).map(Arc::new).map_err(|e| e.to_string());
    cache.lock().unwrap().entry(n).or_insert(built).clone().map_err(Error::Torsion)
}

impl Algebra {
    pub fn build(n: usize) -> Result<Self> {
        let idempotents = Decorated::all(n);
        let idem_index: HashMap<Decorated, usize> =
            idempotents.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let circles: Vec<Vec<Vec<usize>>> = idempotents.iter().map(|d| d.link.circles()).collect();
        let mut gens = Vec::new();
        for (i, d) in idempotents.iter().enumerate() {
            for c in (0..d.signs.len()).filter(|&c| d.signs[c]) {
                let j = idem_index[&d.flipped(c)];
                gens.push(Generator { kind: GenKind::DecRight(c), src: i, tgt: j });
                gens.push(Generator { kind: GenKind::DecLeft(c), src: i, tgt: j });
            }
            for b in d.link.all_bridges() {
                for t in d.bridge_targets(&b) {
                    gens.push(Generator { kind: GenKind::Bridge(b), src: i, tgt: idem_index[&t] });
                }
            }
        }
        let gen_index = gens.iter().enumerate().map(|(g, x)| ((x.src, x.kind, x.tgt), g as u32)).collect();
        let mut outgoing = vec![Vec::new(); idempotents.len()];
        for (g, x) in gens.iter().enumerate() {
            outgoing[x.src].push(g as u32);
        }

        // words by length: idempotents, then generators, then longer words
        let mut words: Vec<Word> = (0..idempotents.len())
            .map(|i| Word { src: i, tgt: i, gens: Vec::new(), grading: Grading::default() })
            .collect();
        let mut frontier: Vec<usize> = Vec::new();
        for (g, x) in gens.iter().enumerate() {
            frontier.push(words.len());
            words.push(Word { src: x.src, tgt: x.tgt, gens: vec![g as u32], grading: x.kind.grading() });
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                for &g in &outgoing[words[w].tgt] {
                    let x = gens[g as usize];
                    let mut gs = words[w].gens.clone();
                    gs.push(g);
                    next.push(words.len());
                    let grading = words[w].grading + x.kind.grading();
                    words.push(Word { src: words[w].src, tgt: x.tgt, gens: gs, grading });
                }
            }
            frontier = next;
        }
        let word_index = words.iter().enumerate().map(|(k, w)| ((w.src, w.gens.clone()), k)).collect();
        let mut starting = vec![Vec::new(); idempotents.len()];
        let mut ending = vec![Vec::new(); idempotents.len()];
        for (k, w) in words.iter().enumerate() {
            starting[w.src].push(k);
            ending[w.tgt].push(k);
        }
        let nf = (0..words.len()).map(|k| Element::from_term(k, Coeff::from(1))).collect();
        let mut alg = Algebra {
            n,
            idempotents,
            idem_index,
            circles,
            gens,
            gen_index,
            outgoing,
            words,
            word_index,
            starting,
            ending,
            dgen: Vec::new(),
            relations: Vec::new(),
            nf,
        };
        alg.dgen = (0..alg.gens.len()).map(|g| alg.d_generator(g)).collect();
        alg.relations = relations::generate(&alg);
        alg.nf = quotient::normal_forms(&alg)?;
        Ok(alg)
    }

    /// `d(e_C←) = −Σ e_γ e_γ†` over left bridges with `C` active.
    fn d_generator(&self, g: usize) -> Element {
        let mut out = Element::new();
        let GenKind::DecLeft(_) = self.gens[g].kind else { return out };
        let i = self.gens[g].src;
        let goal = self.gens[g].tgt;
        let link = self.link(i);
        for gamma in link.bridges(Side::Left) {
            let (_, dag) = link.surgery(&gamma);
            for g1 in self.gens_from(i, GenKind::Bridge(gamma)) {
                let mid = self.gens[g1 as usize].tgt;
                if let Some(g2) = self.gen_between(mid, GenKind::Bridge(dag), goal) {
                    out.add_term(self.word_id(i, &[g1, g2]), Coeff::from(-1));
                }
            }
        }
        out
    }

    pub fn idempotents(&self) -> &[Decorated] {
        &self.idempotents
    }

    pub fn idempotent(&self, i: usize) -> &Decorated {
        &self.idempotents[i]
    }

    pub fn idempotent_index(&self, d: &Decorated) -> Option<usize> {
        self.idem_index.get(d).copied()
    }

    pub fn link(&self, i: usize) -> &CleavedLink {
        &self.idempotents[i].link
    }

    pub fn circles(&self, i: usize) -> &[Vec<usize>] {
        &self.circles[i]
    }

    /// Idempotent with circle `c` flipped.
    pub fn flip(&self, i: usize, c: usize) -> usize {
        self.idem_index[&self.idempotents[i].flipped(c)]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: u32) -> &Generator {
        &self.gens[g as usize]
    }

    pub fn outgoing(&self, i: usize) -> &[u32] {
        &self.outgoing[i]
    }

    pub fn gen_between(&self, src: usize, kind: GenKind, tgt: usize) -> Option<u32> {
        self.gen_index.get(&(src, kind, tgt)).copied()
    }

    pub fn gens_from(&self, src: usize, kind: GenKind) -> Vec<u32> {
        self.outgoing[src].iter().copied().filter(|&g| self.gens[g as usize].kind == kind).collect()
    }

    /// The generator of a kind with a unique target (decoration elements).
    pub fn only(&self, src: usize, kind: GenKind) -> Option<u32> {
        let v = self.gens_from(src, kind);
        debug_assert!(v.len() <= 1);
        v.first().copied()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, w: usize) -> &Word {
        &self.words[w]
    }

    pub fn unit(&self, i: usize) -> usize {
        i
    }

    pub fn gen_word(&self, g: u32) -> usize {
        self.idempotents.len() + g as usize
    }

    /// Id of a composable word; panics on a non-composable sequence.
    pub fn word_id(&self, src: usize, gens: &[u32]) -> usize {
        self.find_word(src, gens).expect("composable word")
    }

    pub fn find_word(&self, src: usize, gens: &[u32]) -> Option<usize> {
        if gens.is_empty() {
            return Some(src);
        }
        self.word_index.get(&(src, gens.to_vec())).copied()
    }

    pub(crate) fn words_starting(&self, i: usize) -> &[usize] {
        &self.starting[i]
    }

    pub(crate) fn words_ending(&self, i: usize) -> &[usize] {
        &self.ending[i]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_basis(&self, w: usize) -> bool {
        self.nf[w].len() == 1 && self.nf[w].get(&w).is_some()
    }

    pub fn basis(&self) -> Vec<usize> {
        (0..self.words.len()).filter(|&w| self.is_basis(w)).collect()
    }

    pub fn normal_form(&self, w: usize) -> &Element {
        &self.nf[w]
    }

    pub fn reduce(&self, x: &Element) -> Element {
        let mut out = Element::new();
        for (w, c) in x.iter() {
            out.add_scaled(&self.nf[*w], c);
        }
        out
    }

    /// Concatenation of two words, `None` when not composable.
    pub fn concat(&self, a: usize, b: usize) -> Option<usize> {
        let (wa, wb) = (&self.words[a], &self.words[b]);
        if wa.tgt != wb.src {
            return None;
        }
        if wa.gens.is_empty() {
            return Some(b);
        }
        if wb.gens.is_empty() {
            return Some(a);
        }
        let mut gs = wa.gens.clone();
        gs.extend_from_slice(&wb.gens);
        Some(self.word_id(wa.src, &gs))
    }

    pub fn mul_words(&self, a: usize, b: usize) -> Element {
        match self.concat(a, b) {
            Some(w) => self.nf[w].clone(),
            None => Element::new(),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut raw = Element::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some(w) = self.concat(*a, *b) {
                    raw.add_term(w, ca * cb);
                }
            }
        }
        self.reduce(&raw)
    }

    /// `d` of a word by the Leibniz rule, before reduction.
    fn d_word_raw(&self, w: usize) -> Element {
        let word = &self.words[w];
        let mut out = Element::new();
        let mut tail_odd = 0i64;
        for i in (0..word.gens.len()).rev() {
            let g = word.gens[i] as usize;
            for (dw, c) in self.dgen[g].iter() {
                let mut gs = word.gens[..i].to_vec();
                gs.extend_from_slice(&self.words[*dw].gens);
                gs.extend_from_slice(&word.gens[i + 1..]);
                out.add_term(self.word_id(word.src, &gs), sign(tail_odd) * c);
            }
            if self.gens[g].kind.odd() {
                tail_odd += 1;
            }
        }
        out
    }

    pub fn d_word(&self, w: usize) -> Element {
        self.reduce(&self.d_word_raw(w))
    }

    pub fn d(&self, x: &Element) -> Element {
        let mut raw = Element::new();
        for (w, c) in x.iter() {
            raw.add_scaled(&self.d_word_raw(*w), c);
        }
        self.reduce(&raw)
    }

    pub fn grading(&self, w: usize) -> Grading {
        self.words[w].grading
    }

    pub fn gen_label(&self, g: u32) -> String {
        let x = &self.gens[g as usize];
        let kind = match x.kind {
            GenKind::DecRight(c) => format!("e→C{c}"),
            GenKind::DecLeft(c) => format!("e←C{c}"),
            GenKind::Bridge(b) => {
                let arrow = if b.side == Side::Left { '←' } else { '→' };
                let ((a, bb), (c, d)) = b.arcs;
                format!("b{arrow}({},{})({},{})", a + 1, bb + 1, c + 1, d + 1)
            }
        };
        format!("{kind}[{}>{}]", self.idempotents[x.src], self.idempotents[x.tgt])
    }

    pub fn word_label(&self, w: usize) -> String {
        let word = &self.words[w];
        if word.gens.is_empty() {
            return format!("I[{}]", self.idempotents[word.src]);
        }
        let mut s = String::new();
        for (k, &g) in word.gens.iter().enumerate() {
            if k > 0 {
                s.push('·');
            }
            write!(s, "{}", self.gen_label(g)).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests;
