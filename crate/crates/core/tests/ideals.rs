use std::collections::{BTreeSet, HashSet};

use ringlab_core::catalog::{ring_catalog, CatalogRing};
use ringlab_core::ideal::{all_ideals, annihilator_ideal, is_arithmetical, is_valuation_ring, Ideal};
use ringlab_core::FiniteRing;

/// Closure of `seed` under addition and multiplication by ring elements.
fn close(r: &FiniteRing, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([r.zero()]);
    let mut frontier: Vec<usize> = seed.to_vec();
    while let Some(x) = frontier.pop() {
        if set.contains(&x) {
            continue;
        }
        let current: Vec<usize> = set.iter().copied().collect();
        set.insert(x);
        for y in current {
            frontier.push(r.add(x, y));
        }
        for s in 0..r.order() {
            frontier.push(r.mul(s, x));
        }
        frontier.push(r.add(x, x));
    }
    set
}

/// Every ideal of a ring of order ≤ 16 is generated additively by at most
/// four elements, so closing every subset of size ≤ 4 finds them all.
fn oracle_ideals(r: &FiniteRing) -> HashSet<BTreeSet<usize>> {
    let n = r.order();
    let mut out = HashSet::new();
    out.insert(close(r, &[]));
    for a in 0..n {
        out.insert(close(r, &[a]));
        for b in a + 1..n {
            out.insert(close(r, &[a, b]));
            for c in b + 1..n {
                out.insert(close(r, &[a, b, c]));
                for d in c + 1..n {
                    out.insert(close(r, &[a, b, c, d]));
                }
            }
        }
    }
    out
}

#[test]
fn ideal_enumeration_matches_subset_closure() {
    for c in ring_catalog(16) {
        let r = c.ring();
        let ours: HashSet<BTreeSet<usize>> =
            all_ideals(&r, 64).unwrap().iter().map(|i| i.elements().into_iter().collect()).collect();
        assert_eq!(ours, oracle_ideals(&r), "{}", c.expr);
    }
}

#[test]
fn ideals_are_closed_and_sorted() {
    for c in ring_catalog(64) {
        let r = c.ring();
        let list = all_ideals(&r, 64).unwrap();
        assert!(list.iter().all(Ideal::is_closed), "{}", c.expr);
        assert!(list.windows(2).all(|w| w[0].order() <= w[1].order()));
        assert_eq!(list.first().unwrap().order(), 1);
        assert_eq!(list.last().unwrap().order(), r.order());
    }
}

#[test]
fn annihilators_match_scans() {
    for c in ring_catalog(32) {
        let r = c.ring();
        for a in 0..r.order() {
            let scan: Vec<usize> = (0..r.order()).filter(|&s| r.mul(a, s) == r.zero()).collect();
            assert_eq!(annihilator_ideal(&r, a).elements(), scan, "{}", c.expr);
        }
    }
}

#[test]
fn valuation_methods_agree_on_catalog() {
    for c in ring_catalog(64) {
        let v = is_valuation_ring(&c.ring(), 64);
        assert!(v.agree, "{}", c.expr);
        assert_eq!(v.verdict, v.witness.is_none(), "{}", c.expr);
    }
}

#[test]
fn named_verdicts() {
    let get = |s: &str| CatalogRing::parse(s).unwrap().ring();
    let z12 = is_arithmetical(&get("Z/12"), 64).unwrap();
    assert!(z12.verdict && z12.agree);
    assert!(!is_valuation_ring(&get("Z/12"), 64).verdict);
    let mono = get("F2[x,y]/(x^2,x*y,y^2)");
    let a = is_arithmetical(&mono, 64).unwrap();
    assert!(!a.verdict && a.agree);
    let [i, j, k] = a.witness.unwrap();
    assert_ne!(i.sum(&j).unwrap().intersect(&k).unwrap(), i.intersect(&k).unwrap().sum(&j.intersect(&k).unwrap()).unwrap());
    let (x, y) = is_valuation_ring(&mono, 64).witness.unwrap();
    assert!(mono.divides(x, y).is_none() && mono.divides(y, x).is_none());
    assert!(is_valuation_ring(&get("Z/8"), 64).verdict);
    assert!(is_valuation_ring(&get("triv(Z/2, Z/2)"), 64).verdict);
    assert!(!is_valuation_ring(&get("triv(Z/4, Z/4/(2))"), 64).verdict);
}
