use cleaved::corpus::{splits, LINKS};
use cleaved::diagram::parse_tangle;
use cleaved::homology::homology;
use cleaved::pairing::{box_tensor, chain_isomorphism, glue, pair, Oracle};
use cleaved::simplify::ReducedA;
use cleaved::type_a::TypeA;
use cleaved::type_d::TypeD;
use std::sync::Arc;

#[test]
fn every_split_of_every_link_matches_the_oracle() {
    let mut count = 0;
    for e in LINKS {
        let link = parse_tangle(e.text).unwrap();
        let expected = homology(&Oracle::new(link.clone(), 20).unwrap().complex).unwrap();
        for s in splits(&link, 2).unwrap() {
            let at = format!("{} cut at level {}", e.name, s.level);
            let oracle = Oracle::new(glue(&s.inside, &s.outside).unwrap(), 20).unwrap();
            let a = ReducedA::identity(Arc::new(TypeA::new(s.inside.clone(), 20).unwrap()));
            let d = TypeD::new(s.outside.clone(), 20).unwrap();
            let bx = box_tensor(&a, &d).unwrap();
            let iso = chain_isomorphism(&oracle, &a, &d, &bx);
            assert!(iso.passed(), "{at}: {:?}", iso.failures);
            let p = pair(s.inside, s.outside, true, 20).unwrap();
            assert_eq!(p.homology, expected, "{at}");
            count += 1;
        }
    }
    assert!(count > 40, "{count} splits");
}
