use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::{Coeff, Grading};
use num_traits::{One, Signed};
use std::collections::{BTreeMap, HashMap};

type BlockKey = (usize, usize, Grading);

/// Reduced row echelon form over ℤ restricted to unit pivots.
struct Echelon {
    /// pivot word → row with coefficient 1 on the pivot
    rows: BTreeMap<usize, Element>,
}

impl Echelon {
    fn reduce(&self, row: &mut Element) {
        let hits: Vec<usize> = row.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in hits {
            if let Some(c) = row.get(&p).cloned() {
                row.add_scaled(&self.rows[&p], &-c);
            }
        }
    }

    /// Adds a reduced row if it has a unit coefficient; returns whether it did.
    fn insert(&mut self, mut row: Element, rank: &impl Fn(usize) -> (usize, usize)) -> bool {
        let Some(p) = row.iter().filter(|(_, c)| c.abs().is_one()).map(|(k, _)| *k).max_by_key(|&k| rank(k)) else {
            return false;
        };
        if row.coeff(&p).is_negative() {
            row = row.neg();
        }
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&p).cloned() {
                other.add_scaled(&row, &-c);
            }
        }
        self.rows.insert(p, row);
        true
    }
}

/// Normal form of every word: basis words map to themselves, pivot words to
/// minus the rest of their row.
pub(super) fn normal_forms(a: &Algebra) -> Result<Vec<Element>> {
    let words = a.words();
    let key = |w: usize| (words[w].src, words[w].tgt, words[w].grading);
    // larger words are eliminated first so short words survive as the basis
    let rank = |w: usize| (words[w].gens.len(), w);

    let mut blocks: HashMap<BlockKey, Vec<Element>> = HashMap::new();
    for r in a.relations() {
        for &u in a.words_ending(r.src) {
            for &v in a.words_starting(r.tgt) {
                let mut row = Element::new();
                for (w, c) in r.elt.iter() {
                    let uw = a.concat(u, *w).unwrap();
                    row.add_term(a.concat(uw, v).unwrap(), c.clone());
                }
                if !row.is_zero() {
                    let k = key(*row.keys().next().unwrap());
                    blocks.entry(k).or_default().push(row);
                }
            }
        }
    }

    let mut nf: Vec<Element> = (0..words.len()).map(|w| Element::from_term(w, Coeff::one())).collect();
    let mut keys: Vec<&BlockKey> = blocks.keys().collect();
    keys.sort();
    for k in keys {
        let mut ech = Echelon { rows: BTreeMap::new() };
        let mut deferred = Vec::new();
        for row in &blocks[k] {
            let mut row = row.clone();
            ech.reduce(&mut row);
            if !row.is_zero() && !ech.insert(row.clone(), &rank) {
                deferred.push(row);
            }
        }
        loop {
            let before = deferred.len();
            let mut still = Vec::new();
            for mut row in deferred {
                ech.reduce(&mut row);
                if !row.is_zero() && !ech.insert(row.clone(), &rank) {
                    still.push(row);
                }
            }
            deferred = still;
            if deferred.is_empty() || deferred.len() == before {
                break;
            }
        }
        if let Some(row) = deferred.first() {
            let terms: Vec<String> = row.iter().map(|(w, c)| format!("{c}·{}", a.word_label(*w))).collect();
            return Err(Error::Torsion(format!("relation {} has no unit coefficient", terms.join(" + "))));
        }
        for (p, row) in ech.rows {
            let mut rest = row;
            rest.remove(&p);
            nf[p] = rest.neg();
        }
    }
    Ok(nf)
}
