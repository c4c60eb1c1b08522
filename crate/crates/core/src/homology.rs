//! Bigraded integer chain complexes and their homology.

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, Matrix};
use crate::{Chain, Coeff, Grading};
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Free complex on keyed generators with a `(1, 0)` differential.
#[derive(Clone, Debug)]
pub struct Complex {
    pub keys: Vec<String>,
    pub gradings: Vec<Grading>,
    pub d: Vec<Chain>,
}

impl Complex {
    pub fn new(keys: Vec<String>, gradings: Vec<Grading>, d: Vec<Chain>) -> Self {
        assert!(keys.len() == gradings.len() && keys.len() == d.len());
        Complex { keys, gradings, d }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Degree and `∂² = 0`.
    pub fn check(&self) -> Result<()> {
        for (x, row) in self.d.iter().enumerate() {
            for &y in row.keys() {
                if self.gradings[y] != self.gradings[x] + Grading::new(1, 0) {
                    return Err(Error::NotComplex(format!("{} → {} is not of degree (1,0)", self.keys[x], self.keys[y])));
                }
            }
            let mut dd = Chain::new();
            for (y, c) in row.iter() {
                dd.add_scaled(&self.d[*y], c);
            }
            if !dd.is_zero() {
                return Err(Error::NotComplex(format!("∂² ≠ 0 on {}", self.keys[x])));
            }
        }
        Ok(())
    }

    /// Ranks per bidegree.
    pub fn ranks(&self) -> BTreeMap<Grading, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gradings {
            *out.entry(*g).or_insert(0) += 1;
        }
        out
    }

    /// Homotopy-equivalent complex after cancelling every `±1` entry.
    pub fn reduce_units(&self) -> Complex {
        let n = self.len();
        let mut d = self.d.clone();
        let mut rev: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (x, row) in d.iter().enumerate() {
            for &y in row.keys() {
                rev[y].insert(x);
            }
        }
        let mut alive = vec![true; n];
        for x in 0..n {
            while alive[x] {
                let Some((y, u)) = d[x].iter().find(|(_, c)| c.abs().is_one()).map(|(y, c)| (*y, c.clone())) else {
                    break;
                };
                let dx = d[x].clone();
                for p in rev[y].clone() {
                    if p == x || !alive[p] {
                        continue;
                    }
                    let f = -(d[p].coeff(&y) * &u);
                    for &t in dx.keys() {
                        rev[t].insert(p);
                    }
                    d[p].add_scaled(&dx, &f);
                }
                for z in [x, y] {
                    for p in std::mem::take(&mut rev[z]) {
                        d[p].remove(&z);
                    }
                    for t in std::mem::take(&mut d[z]).keys() {
                        rev[*t].remove(&z);
                    }
                    alive[z] = false;
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in keep.iter().enumerate() {
            pos[x] = i;
        }
        Complex {
            keys: keep.iter().map(|&x| self.keys[x].clone()).collect(),
            gradings: keep.iter().map(|&x| self.gradings[x]).collect(),
            d: keep.iter().map(|&x| d[x].map_keys(|y| pos[*y])).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = (0..self.len())
            .map(|x| {
                let g = self.gradings[x];
                json!({"key": self.keys[x], "h": g.h, "q2": g.q2, "q": q_json(g.q2)})
            })
            .collect();
        let mut d = Vec::new();
        for (x, row) in self.d.iter().enumerate() {
            for (y, c) in row.iter() {
                d.push(json!([x, y, c.to_string()]));
            }
        }
        json!({"schema": "cleaved.complex/1", "generators": gens, "differential": d})
    }
}

/// `q` as an exact number: an integer, or a string like `"-5/2"`.
pub fn q_json(q2: i32) -> Value {
    if q2 % 2 == 0 {
        json!(q2 / 2)
    } else {
        json!(format!("{q2}/2"))
    }
}

/// Homology in one bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Group {
    pub free: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<Coeff>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// Nonzero homology groups by bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub groups: BTreeMap<Grading, Group>,
}

impl HomologyTable {
    /// Builds a table from `(h, q2, free, torsion)` rows; rows at the same
    /// bidegree are summed.
    pub fn from_rows(rows: &[(i32, i32, usize, &[i64])]) -> Self {
        let mut groups: BTreeMap<Grading, Group> = BTreeMap::new();
        for &(h, q2, free, torsion) in rows {
            let g = groups.entry(Grading::new(h, q2)).or_default();
            g.free += free;
            g.torsion.extend(torsion.iter().map(|&t| Coeff::from(t)));
            g.torsion.sort();
        }
        groups.retain(|_, g| !g.is_zero());
        HomologyTable { groups }
    }

    /// Euler characteristic per `q2` line.
    pub fn euler(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (g, grp) in &self.groups {
            *out.entry(g.q2).or_insert(0) += if g.h % 2 == 0 { grp.free as i64 } else { -(grp.free as i64) };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .groups
            .iter()
            .map(|(g, grp)| {
                let t: Vec<Value> =
                    grp.torsion.iter().map(|f| f.to_i64().map_or_else(|| json!(f.to_string()), |v| json!(v))).collect();
                json!({"h": g.h, "q2": g.q2, "q": q_json(g.q2), "free_rank": grp.free, "torsion": t})
            })
            .collect();
        json!({"schema": "cleaved.homology/1", "groups": rows})
    }

    /// Reads the `groups` list written by [`HomologyTable::to_json`]; `q2`
    /// may be omitted when `q` is present.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("homology table: {m}"));
        let rows = v.get("groups").and_then(Value::as_array).ok_or_else(|| bad("missing groups"))?;
        let mut groups = BTreeMap::new();
        for r in rows {
            let h = r.get("h").and_then(Value::as_i64).ok_or_else(|| bad("missing h"))? as i32;
            let q2 = match (r.get("q2").and_then(Value::as_i64), r.get("q")) {
                (Some(q2), _) => q2 as i32,
                (None, Some(Value::Number(q))) => 2 * q.as_i64().ok_or_else(|| bad("bad q"))? as i32,
                (None, Some(Value::String(s))) => {
                    let num = s.strip_suffix("/2").ok_or_else(|| bad("bad q"))?;
                    num.parse().map_err(|_| bad("bad q"))?
                }
                _ => return Err(bad("missing q")),
            };
            let free = r.get("free_rank").and_then(Value::as_u64).unwrap_or(0) as usize;
            let torsion = match r.get("torsion").and_then(Value::as_array) {
                Some(ts) => ts
                    .iter()
                    .map(|t| match t {
                        Value::Number(n) => n.as_i64().map(Coeff::from).ok_or_else(|| bad("bad factor")),
                        Value::String(s) => s.parse::<Coeff>().map_err(|_| bad("bad factor")),
                        _ => Err(bad("bad factor")),
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let g = Group { free, torsion };
            if !g.is_zero() {
                groups.insert(Grading::new(h, q2), g);
            }
        }
        Ok(HomologyTable { groups })
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return writeln!(f, "0");
        }
        for (g, grp) in &self.groups {
            writeln!(f, "{g}  {grp}")?;
        }
        Ok(())
    }
}

/// Homology of a complex via unit cancellation and Smith normal form.
pub fn homology(c: &Complex) -> Result<HomologyTable> {
    c.check()?;
    let r = c.reduce_units();
    let mut by_deg: BTreeMap<Grading, Vec<usize>> = BTreeMap::new();
    for (x, g) in r.gradings.iter().enumerate() {
        by_deg.entry(*g).or_default().push(x);
    }
    let mut pos = vec![0; r.len()];
    for xs in by_deg.values() {
        for (i, &x) in xs.iter().enumerate() {
            pos[x] = i;
        }
    }
    // invariant factors of the differential leaving each bidegree
    let mut out_factors: BTreeMap<Grading, Vec<Coeff>> = BTreeMap::new();
    for (g, xs) in &by_deg {
        let Some(ys) = by_deg.get(&(*g + Grading::new(1, 0))) else { continue };
        let mut m: Matrix<Coeff> = Matrix::zeros(ys.len(), xs.len());
        for (j, &x) in xs.iter().enumerate() {
            for (y, c) in r.d[x].iter() {
                m.set(pos[*y], j, c.clone());
            }
        }
        out_factors.insert(*g, invariant_factors(&m));
    }
    let mut groups = BTreeMap::new();
    for (g, xs) in &by_deg {
        let rank_out = out_factors.get(g).map_or(0, Vec::len);
        let incoming = out_factors.get(&(*g - Grading::new(1, 0)));
        let rank_in = incoming.map_or(0, Vec::len);
        let torsion: Vec<Coeff> = incoming.into_iter().flatten().filter(|f| !f.is_one()).cloned().collect();
        let grp = Group { free: xs.len() - rank_out - rank_in, torsion };
        if !grp.is_zero() {
            groups.insert(*g, grp);
        }
    }
    Ok(HomologyTable { groups })
}
