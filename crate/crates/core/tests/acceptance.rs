//! Acceptance criteria 1–9, one line each. Exits nonzero if any criterion fails.

use cleaved::algebra::{algebra, GenKind};
use cleaved::corpus::{self, splits, LINKS, TANGLES};
use cleaved::diagram::{parse_tangle, Slice, TangleDiagram, TangleSide};
use cleaved::homology::{homology, HomologyTable};
use cleaved::pairing::{box_tensor, chain_isomorphism, glue, pair, Oracle};
use cleaved::simplify::{isomorphic_up_to_signs, simplify_type_a, simplify_type_d, ReducedA};
use cleaved::suite::{verify_algebra, verify_diagram, Limits, Report};
use cleaved::type_a::TypeA;
use cleaved::type_d::TypeD;
use cleaved::{Chain, Grading};
use num_traits::{One, Signed};
use std::sync::Arc;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn reduced(name: &str) -> Result<ReducedA, String> {
    Ok(simplify_type_a(Arc::new(TypeA::new(corpus::diagram(name).map_err(err)?, 20).map_err(err)?)))
}

fn kind(r: &ReducedA, g: u32) -> GenKind {
    r.algebra().generator(g).kind
}

fn sorted_gradings(r: &ReducedA) -> Vec<Grading> {
    let mut g: Vec<Grading> = (0..r.len()).map(|s| r.grading(s)).collect();
    g.sort();
    g
}

fn algebra_audit() -> Outcome {
    let a = algebra(1).map_err(err)?;
    ensure(a.idempotents().len() == 2, || format!("{} idempotents", a.idempotents().len()))?;
    let mut gens: Vec<(String, Grading)> = a
        .generators()
        .iter()
        .map(|g| {
            let k = match g.kind {
                GenKind::DecLeft(_) => "e←",
                GenKind::DecRight(_) => "e→",
                GenKind::Bridge(_) => "bridge",
            };
            (k.to_string(), g.kind.grading())
        })
        .collect();
    gens.sort();
    let want = vec![("e←".to_string(), Grading::new(1, 2)), ("e→".to_string(), Grading::new(0, -2))];
    ensure(gens == want, || format!("generators {gens:?}"))?;
    let audit = a.audit();
    ensure(audit["nonzero_products"] == 0, || format!("{} nonzero products", audit["nonzero_products"]))?;
    ensure(audit["nonzero_differentials"] == 0, || format!("{} nonzero differentials", audit["nonzero_differentials"]))?;
    let readings = audit["generators"].as_array().and_then(|g| g.iter().find_map(|x| x.get("q_readings"))).cloned();
    ensure(readings.is_some(), || "audit does not list both e→ gradings".into())?;
    Ok("2 idempotents, e← at (1,1), e→ at (0,-1), no products, d = 0".into())
}

fn algebra_consistency() -> Outcome {
    let mut r = Report::default();
    for n in 1..=2 {
        verify_algebra(n, &mut r).map_err(err)?;
    }
    let cases: usize = r.checks.iter().map(|c| c.cases).sum();
    for c in &r.checks {
        ensure(c.passed(), || format!("{}: {:?}", c.name, c.failures))?;
    }
    Ok(format!("{} families, {cases} cases at n = 1, 2", r.checks.len()))
}

/// Outside tangles on four strands: up to two crossings, then one of the two
/// crossingless closures.
fn outside_closures() -> Vec<Vec<Slice>> {
    let crossings: Vec<Slice> =
        (0..3).flat_map(|at| [true, false].map(|over_high| Slice::Cross { at, over_high })).collect();
    let mut prefixes: Vec<Vec<Slice>> = vec![vec![]];
    for &a in &crossings {
        prefixes.push(vec![a]);
        for &b in &crossings {
            prefixes.push(vec![a, b]);
        }
    }
    let mut out = Vec::new();
    for p in prefixes {
        for close in [[Slice::Cap(0), Slice::Cap(0)], [Slice::Cap(1), Slice::Cap(0)]] {
            let mut w = p.clone();
            w.extend(close);
            out.push(w);
        }
    }
    out
}

/// Pairs the reduced inside structure with an outside tangle, oriented to
/// match at the axis when the closure allows it. The flag says whether it did.
fn pair_closure(a: &ReducedA, slices: &[Slice]) -> Result<(HomologyTable, bool), String> {
    let inside = &a.base().space().tangle;
    let orient: Vec<bool> = inside.orient.iter().map(|o| !o).collect();
    let k = slices.iter().filter(|s| matches!(s, Slice::Cross { .. })).count();
    let build = |o| TangleDiagram::new(TangleSide::Outside, inside.n, slices.to_vec(), o, &vec![None; k], None);
    let (t, matched) = match build(Some(orient)) {
        Ok(t) => (t, true),
        Err(_) => (build(None).map_err(err)?, false),
    };
    let d = simplify_type_d(&TypeD::new(t, 20).map_err(err)?).structure;
    Ok((homology(&box_tensor(a, &d).map_err(err)?.complex).map_err(err)?, matched))
}

fn reidemeister() -> Outcome {
    let r1 = reduced("kink-inside")?;
    ensure(r1.len() == 2, || format!("kink reduces to {} generators", r1.len()))?;
    ensure(sorted_gradings(&r1) == vec![Grading::new(0, -1), Grading::new(0, 1)], || {
        format!("kink gradings {:?}", sorted_gradings(&r1))
    })?;
    let plus = (0..2).find(|&s| r1.grading(s) == Grading::new(0, 1)).unwrap();
    let minus = 1 - plus;
    let table = r1.action_table(6);
    ensure(table.len() == 1, || format!("{} kink actions", table.len()))?;
    let (s, gens, v) = &table[0];
    ensure(
        *s == plus
            && gens.len() == 1
            && matches!(kind(&r1, gens[0]), GenKind::DecRight(_))
            && *v == Chain::from_term(minus, One::one()),
        || "kink action is not α₊·e→ = α₋".into(),
    )?;
    ensure(r1.m1(plus).is_zero() && r1.m1(minus).is_zero(), || "kink has a differential".into())?;

    let r2 = reduced("second-move-inside")?;
    let flat = ReducedA::identity(Arc::new(TypeA::new(corpus::diagram("flat-inside").map_err(err)?, 20).map_err(err)?));
    ensure(isomorphic_up_to_signs(&r2, &flat), || "second move is not the crossingless structure".into())?;
    ensure(sorted_gradings(&r2) == sorted_gradings(&flat), || "second move has a grading shift".into())?;

    let before = reduced("third-move-before-inside")?;
    let after = reduced("third-move-after-inside")?;
    let counts = |r: &ReducedA| {
        let mut g: Vec<(usize, Grading)> = (0..r.len()).map(|s| (r.idem(s), r.grading(s))).collect();
        g.sort();
        g
    };
    ensure(counts(&before) == counts(&after), || "third move changes graded generator counts".into())?;
    let (ob, oa) = (&before.base().space().tangle.orient, &after.base().space().tangle.orient);
    ensure(ob == oa, || "third move sides orient the axis differently".into())?;
    let closures = outside_closures();
    let mut matched = 0;
    for w in &closures {
        let ((hb, m), (ha, _)) = (pair_closure(&before, w)?, pair_closure(&after, w)?);
        ensure(hb == ha, || format!("third move pairing differs against {w:?}"))?;
        matched += m as usize;
    }
    Ok(format!(
        "kink → 2 generators, second move ≅ flat, third move equal on {} generators and {} closures ({matched} orientation-matched)",
        before.len(),
        closures.len()
    ))
}

fn hopf() -> Outcome {
    let r = reduced("hopf-inside")?;
    let want = vec![Grading::new(0, 1), Grading::new(0, 3), Grading::new(2, 9), Grading::new(2, 11)];
    ensure(sorted_gradings(&r) == want, || format!("gradings {:?}", sorted_gradings(&r)))?;
    ensure((0..r.len()).all(|s| r.m1(s).is_zero()), || "reduced differential is nonzero".into())?;
    let table = r.action_table(6);
    ensure(table.len() == 2, || format!("{} actions", table.len()))?;
    for (s, gens, v) in &table {
        ensure(gens.len() == 1 && matches!(kind(&r, gens[0]), GenKind::DecRight(_)), || "action is not e→".into())?;
        ensure(v.len() == 1 && v.iter().all(|(_, c)| c.abs().is_one()), || format!("action {v:?}"))?;
        let t = *v.iter().next().unwrap().0;
        ensure(r.grading(*s) - r.grading(t) == Grading::new(0, 2), || "arrow grading".into())?;
    }
    Ok("4 generators at (0,1/2),(0,3/2),(2,9/2),(2,11/2), two e→ arrows".into())
}

fn golden_pair(link: &str) -> Outcome {
    let g = corpus::golden(link).map_err(err)?;
    let (i, o) = (g.inside.clone().unwrap(), g.outside.clone().unwrap());
    let p = pair(corpus::diagram(&i).map_err(err)?, corpus::diagram(&o).map_err(err)?, true, 20).map_err(err)?;
    ensure(p.homology == g.table, || format!("got\n{}expected\n{}", p.homology, g.table))?;
    let rows: Vec<String> = g.table.groups.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!("{i} ⊠ {o}: {}", rows.join(", ")))
}

fn oracle_equivalence() -> Outcome {
    let (mut cuts, mut gens) = (0, 0);
    for e in LINKS {
        let link = parse_tangle(e.text).map_err(err)?;
        let expected = homology(&Oracle::new(link.clone(), 20).map_err(err)?.complex).map_err(err)?;
        for s in splits(&link, 2).map_err(err)? {
            let at = format!("{} cut at level {}", e.name, s.level);
            let oracle = Oracle::new(glue(&s.inside, &s.outside).map_err(err)?, 20).map_err(err)?;
            let a = ReducedA::identity(Arc::new(TypeA::new(s.inside.clone(), 20).map_err(err)?));
            let d = TypeD::new(s.outside.clone(), 20).map_err(err)?;
            let bx = box_tensor(&a, &d).map_err(err)?;
            let iso = chain_isomorphism(&oracle, &a, &d, &bx);
            ensure(iso.passed(), || format!("{at}: {:?}", iso.failures))?;
            let p = pair(s.inside, s.outside, true, 20).map_err(err)?;
            ensure(p.homology == expected, || format!("{at}: reduced pairing homology differs"))?;
            cuts += 1;
            gens += bx.pairs.len();
        }
    }
    Ok(format!("{} links, {cuts} cuts, {gens} generators matched", LINKS.len()))
}

fn structural_suites() -> Outcome {
    let mut r = Report::default();
    for e in LINKS.iter().chain(TANGLES) {
        verify_diagram(e.name, &parse_tangle(e.text).map_err(err)?, Limits::default(), &mut r).map_err(err)?;
    }
    let required = [
        "m1∘m1 = 0",
        "m2 respects relations",
        "A∞ relations",
        "type D structure equation",
        "box ∂² = 0",
        "πι = I",
        "H² = 0",
        "ιπ − I = dH + Hd",
    ];
    for name in required {
        let c = r.get(name).ok_or_else(|| format!("suite '{name}' did not run"))?;
        ensure(c.cases > 0 && c.passed(), || format!("{name}: {:?}", c.failures))?;
    }
    for c in &r.checks {
        ensure(c.passed(), || format!("{}: {:?}", c.name, c.failures))?;
    }
    let cases: usize = r.checks.iter().map(|c| c.cases).sum();
    Ok(format!("{} families, {cases} cases", r.checks.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 9] = [
        (1, "algebra audit n=1", algebra_audit, Duration::from_secs(1)),
        (2, "algebra consistency n≤2", algebra_consistency, Duration::from_secs(60)),
        (3, "Reidemeister reductions", reidemeister, Duration::MAX),
        (4, "Hopf tangle reduction", hopf, Duration::MAX),
        (5, "left trefoil by pairing", || golden_pair("left-trefoil"), Duration::from_secs(5)),
        (6, "Hopf # left trefoil", || golden_pair("hopf-sum-left-trefoil"), Duration::MAX),
        (7, "left # right trefoil", || golden_pair("left-trefoil-sum-right-trefoil"), Duration::MAX),
        (8, "oracle equivalence", oracle_equivalence, Duration::from_secs(120)),
        (9, "structural suites", structural_suites, Duration::MAX),
    ];
    let mut failed = 0;
    for (n, name, f, limit) in criteria {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = match r {
            Ok(m) if dt > limit => Err(format!("{m}; took {dt:.2?}, limit {limit:?}")),
            r => r,
        };
        match r {
            Ok(m) => println!("criterion {n} PASS  {name} [{dt:.2?}]: {m}"),
            Err(m) => {
                failed += 1;
                println!("criterion {n} FAIL  {name} [{dt:.2?}]: {m}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
