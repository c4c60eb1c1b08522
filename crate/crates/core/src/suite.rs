//! Full invariant suite over algebras, tangle halves and closed diagrams.

use crate::algebra::algebra;
use crate::check::Check;
use crate::corpus::splits;
use crate::diagram::{TangleDiagram, TangleSide};
use crate::error::Result;
use crate::homology::{homology, Complex};
use crate::pairing::{box_tensor, chain_isomorphism, glue, Oracle};
use crate::simplify::{simplify_type_a, simplify_type_d, ReducedA, Reducer};
use crate::type_a::TypeA;
use crate::type_d::TypeD;
use std::sync::Arc;

/// Limits for one suite run.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub crossing_cap: usize,
    /// Longest generator sequence used for the reduced A∞ relations.
    pub max_len: usize,
    /// Widest cut, in strand pairs, used when splitting closed diagrams.
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { crossing_cap: 20, max_len: 5, max_n: 2 }
    }
}

/// Accumulates checks, merging those with the same name.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn add(&mut self, c: Check) {
        match self.checks.iter_mut().find(|x| x.name == c.name) {
            Some(x) => x.absorb(c),
            None => self.checks.push(c),
        }
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.add(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Relation, associativity, `d² = 0` and Leibniz checks of `BΓₙ`.
pub fn verify_algebra(n: usize, report: &mut Report) -> Result<()> {
    report.extend(algebra(n)?.consistency());
    Ok(())
}

/// Type A checks, the cancellation identities after every reduction step
/// and the A∞ relations of the reduced module.
pub fn verify_inside(t: &TangleDiagram, limits: Limits, report: &mut Report) -> Result<()> {
    let a = Arc::new(TypeA::new(t.clone(), limits.crossing_cap)?);
    report.extend(a.verify());
    let mut r = Reducer::new(a);
    while let Some((x, y)) = r.pivot() {
        r.cancel(x, y)?;
        report.extend(r.finish().verify_homotopy());
    }
    report.extend(r.finish().verify(limits.max_len));
    Ok(())
}

/// Structure equation before and after reduction.
pub fn verify_outside(t: &TangleDiagram, limits: Limits, report: &mut Report) -> Result<()> {
    let d = TypeD::new(t.clone(), limits.crossing_cap)?;
    report.extend(d.verify());
    report.extend(simplify_type_d(&d).structure.verify());
    Ok(())
}

fn complex_check(name: &'static str, c: &Complex, what: &str) -> Check {
    let mut k = Check::new(name);
    let r = c.check();
    k.expect(r.is_ok(), || format!("{what}: {}", r.err().map(|e| e.to_string()).unwrap_or_default()));
    k
}

/// Oracle `∂² = 0`, and for every cut of width at most `2·max_n`: both halves'
/// suites, the chain isomorphism of the unsimplified box complex, `∂⊠² = 0`
/// with and without reduction, and equality of homology with the oracle.
pub fn verify_link(name: &str, link: &TangleDiagram, limits: Limits, report: &mut Report) -> Result<()> {
    let oracle = Oracle::new(link.clone(), limits.crossing_cap)?;
    report.add(complex_check("Khovanov ∂² = 0", &oracle.complex, name));
    let expected = homology(&oracle.complex)?;
    for s in splits(link, limits.max_n)? {
        let at = format!("{name} cut at level {}", s.level);
        verify_inside(&s.inside, limits, report)?;
        verify_outside(&s.outside, limits, report)?;
        let glued = Oracle::new(glue(&s.inside, &s.outside)?, limits.crossing_cap)?;
        let a = Arc::new(TypeA::new(s.inside.clone(), limits.crossing_cap)?);
        let d = TypeD::new(s.outside.clone(), limits.crossing_cap)?;
        let plain = ReducedA::identity(a.clone());
        let bx = box_tensor(&plain, &d)?;
        report.add(complex_check("box ∂² = 0", &bx.complex, &at));
        let mut iso = chain_isomorphism(&glued, &plain, &d, &bx);
        iso.failures.iter_mut().for_each(|f| *f = format!("{at}: {f}"));
        report.add(iso);
        let ra = simplify_type_a(a);
        let rd = simplify_type_d(&d).structure;
        let small = box_tensor(&ra, &rd)?;
        report.add(complex_check("box ∂² = 0", &small.complex, &at));
        let mut eq = Check::new("reduced pairing homology = Khovanov homology");
        match homology(&small.complex) {
            Ok(h) => eq.expect(h == expected, || format!("{at}:\n{h}\nexpected\n{expected}")),
            Err(e) => eq.expect(false, || format!("{at}: {e}")),
        }
        report.add(eq);
    }
    Ok(())
}

/// Runs the suite for a named diagram of any kind.
pub fn verify_diagram(name: &str, t: &TangleDiagram, limits: Limits, report: &mut Report) -> Result<()> {
    match (t.side, t.n) {
        (_, 0) => verify_link(name, t, limits, report),
        (TangleSide::Inside, _) => verify_inside(t, limits, report),
        (TangleSide::Outside, _) => verify_outside(t, limits, report),
    }
}
