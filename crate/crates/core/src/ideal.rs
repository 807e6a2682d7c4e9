//! Ideals of finite rings, the ideal lattice, and the valuation / arithmetical
//! checkers.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;

/// Default cap on the ring order for full ideal enumeration.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: BitSet,
    generators: Vec<usize>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.members.to_vec())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// All `A`-linear combinations of `gens`.
    pub fn from_generators(ring: &Arc<FiniteRing>, gens: &[usize]) -> Ideal {
        let mut members = BitSet::new(ring.order());
        members.insert(ring.zero());
        let mut list = vec![ring.zero()];
        for &g in gens {
            let multiples: Vec<usize> = ring.principal(g).iter().collect();
            let old = list.clone();
            for &m in &multiples {
                for &x in &old {
                    let y = ring.add(x, m);
                    if members.insert(y) {
                        list.push(y);
                    }
                }
            }
        }
        Ideal { ring: ring.clone(), members, generators: gens.to_vec() }
    }

    /// Wraps a member set already known to be an ideal.
    pub fn from_members(ring: &Arc<FiniteRing>, members: BitSet, generators: Vec<usize>) -> Ideal {
        Ideal { ring: ring.clone(), members, generators }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Self::from_generators(ring, &[])
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Ideal {
        Self::from_generators(ring, &[ring.one()])
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Least `g` with `(g) = I`.
    pub fn principal_generator(&self) -> Option<usize> {
        self.ring.least_generator(&self.members)
    }

    pub fn is_principal(&self) -> bool {
        self.principal_generator().is_some()
    }

    /// Ideals of a finite ring are always finitely generated.
    pub fn is_finitely_generated(&self) -> bool {
        true
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Usage("ideals belong to different rings".into()))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let members = sum_sets(&self.ring, &self.members, &other.members);
        let mut generators = self.generators.clone();
        generators.extend(&other.generators);
        Ok(Ideal { ring: self.ring.clone(), members, generators })
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let members = self.members.intersection(&other.members);
        let generators = self.ring.least_generator(&members).into_iter().collect();
        Ok(Ideal { ring: self.ring.clone(), members, generators })
    }

    /// Closure under addition and multiplication by every ring element.
    pub fn is_closed(&self) -> bool {
        let r = &self.ring;
        let m: Vec<usize> = self.members.iter().collect();
        m.iter().all(|&x| m.iter().all(|&y| self.contains(r.add(x, y))))
            && m.iter().all(|&x| (0..r.order()).all(|a| self.contains(r.mul(a, x))))
    }

    pub fn format(&self) -> String {
        let gens: Vec<usize> = match self.principal_generator() {
            Some(g) => vec![g],
            None if !self.generators.is_empty() => self.generators.clone(),
            None => minimal_generators(&self.ring, &self.members),
        };
        let parts: Vec<String> = gens.iter().map(|&g| self.ring.format(g)).collect();
        format!("({})", parts.join(", "))
    }
}

fn sum_sets(r: &FiniteRing, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = BitSet::new(r.order());
    let bs: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(r.add(x, y));
        }
    }
    out
}

/// A short generating set, grown greedily in element order.
pub fn minimal_generators(r: &Arc<FiniteRing>, members: &BitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Ideal::zero(r);
    for x in members.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = Ideal::from_generators(r, &gens);
        }
    }
    gens
}

/// `(0:a) = {b : ab = 0}`.
pub fn annihilator_ideal(r: &Arc<FiniteRing>, a: usize) -> Ideal {
    let members = r.annihilator(a);
    let generators = r.least_generator(&members).into_iter().collect();
    Ideal { ring: r.clone(), members, generators }
}

fn check_bound(r: &FiniteRing, max_order: usize) -> Result<()> {
    if r.order() > max_order {
        Err(Error::capability(format!(
            "ideal enumeration is limited to rings of order ≤ {max_order} (this ring has {})",
            r.order()
        )))
    } else {
        Ok(())
    }
}

/// Every ideal exactly once, sorted by size then member set.
pub fn all_ideals(r: &Arc<FiniteRing>, max_order: usize) -> Result<Vec<Ideal>> {
    check_bound(r, max_order)?;
    let mut principal: Vec<(BitSet, usize)> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for a in 0..r.order() {
        let p = r.principal(a);
        if seen.insert(p.clone()) {
            principal.push((p, a));
        }
    }
    let mut found: HashMap<BitSet, Vec<usize>> = principal.iter().map(|(p, a)| (p.clone(), vec![*a])).collect();
    let mut frontier: Vec<BitSet> = principal.iter().map(|(p, _)| p.clone()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in &frontier {
            for (p, a) in &principal {
                if p.is_subset(i) {
                    continue;
                }
                let s = sum_sets(r, i, p);
                if !found.contains_key(&s) {
                    let mut gens = found[i].clone();
                    gens.push(*a);
                    found.insert(s.clone(), gens);
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut ideals: Vec<Ideal> = found
        .into_iter()
        .map(|(members, generators)| Ideal { ring: r.clone(), members, generators })
        .collect();
    ideals.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(ideals)
}

/// Least `(a, b)` with `a < b` whose principal ideals are incomparable.
pub fn incomparable_principal_pair(r: &FiniteRing) -> Option<(usize, usize)> {
    let principal: Vec<BitSet> = (0..r.order()).map(|a| r.principal(a)).collect();
    let mut distinct: Vec<&BitSet> = principal.iter().collect::<HashSet<_>>().into_iter().collect();
    distinct.sort_by_key(|s| s.count());
    if distinct.windows(2).all(|w| w[0].is_subset(w[1])) {
        return None;
    }
    for a in 0..r.order() {
        for b in a + 1..r.order() {
            if !principal[a].contains(b) && !principal[b].contains(a) {
                return Some((a, b));
            }
        }
    }
    unreachable!("principal ideals are not a chain, so some pair is incomparable")
}

#[derive(Debug, Clone)]
pub struct ValuationCheck {
    pub verdict: bool,
    /// The two methods returned the same answer.
    pub agree: bool,
    /// Ideals totally ordered by inclusion.
    pub chain_method: bool,
    /// Local, and every two-generated ideal principal.
    pub local_principal_method: bool,
    /// Whether the chain method enumerated every ideal (otherwise principal ideals only).
    pub full_enumeration: bool,
    /// Two elements generating incomparable principal ideals.
    pub witness: Option<(usize, usize)>,
}

/// Decides whether a finite ring is a valuation ring, two ways.
///
/// Every ideal of a finite ring is a sum of principal ideals, so when the
/// ring is larger than `max_order` the chain method compares principal
/// ideals only.
pub fn is_valuation_ring(r: &Arc<FiniteRing>, max_order: usize) -> ValuationCheck {
    let full_enumeration = r.order() <= max_order;
    let chain_method = if full_enumeration {
        let ideals = all_ideals(r, max_order).expect("within bound");
        ideals.windows(2).all(|w| w[0].is_subset(&w[1]))
    } else {
        incomparable_principal_pair(r).is_none()
    };
    let local_principal_method = r.is_local() && two_generated_principal(r);
    let witness = incomparable_principal_pair(r);
    ValuationCheck {
        verdict: chain_method && local_principal_method,
        agree: chain_method == local_principal_method,
        chain_method,
        local_principal_method,
        full_enumeration,
        witness,
    }
}

fn two_generated_principal(r: &FiniteRing) -> bool {
    let principal: Vec<BitSet> = (0..r.order()).map(|a| r.principal(a)).collect();
    let set: HashSet<&BitSet> = principal.iter().collect();
    for a in 0..r.order() {
        for b in a + 1..r.order() {
            if principal[a].contains(b) || principal[b].contains(a) {
                continue;
            }
            if !set.contains(&sum_sets(r, &principal[a], &principal[b])) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct ArithmeticalCheck {
    pub verdict: bool,
    pub agree: bool,
    /// `(a+b)∩c = (a∩c)+(b∩c)` for every ideal triple.
    pub distributive: bool,
    /// Every local factor is a valuation ring.
    pub local_factors_valuation: bool,
    pub factor_verdicts: Vec<bool>,
    /// Least failing triple `(a, b, c)` in the sorted ideal list.
    pub witness: Option<[Ideal; 3]>,
    pub ideal_count: usize,
}

pub fn is_arithmetical(r: &Arc<FiniteRing>, max_order: usize) -> Result<ArithmeticalCheck> {
    let ideals = all_ideals(r, max_order)?;
    let n = ideals.len();
    let index: HashMap<&BitSet, usize> = ideals.iter().enumerate().map(|(i, x)| (&x.members, i)).collect();
    let mut sum = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in i..n {
            let s = index[&sum_sets(r, &ideals[i].members, &ideals[j].members)];
            let m = index[&ideals[i].members.intersection(&ideals[j].members)];
            sum[i * n + j] = s;
            sum[j * n + i] = s;
            meet[i * n + j] = m;
            meet[j * n + i] = m;
        }
    }
    let mut witness = None;
    'scan: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = meet[sum[a * n + b] * n + c];
                let rhs = sum[meet[a * n + c] * n + meet[b * n + c]];
                if lhs != rhs {
                    witness = Some([ideals[a].clone(), ideals[b].clone(), ideals[c].clone()]);
                    break 'scan;
                }
            }
        }
    }
    let distributive = witness.is_none();
    let decomposition = r.local_decomposition();
    let factor_verdicts: Vec<bool> =
        decomposition.factors.iter().map(|f| is_valuation_ring(&f.ring, max_order).verdict).collect();
    let local_factors_valuation = factor_verdicts.iter().all(|&v| v);
    Ok(ArithmeticalCheck {
        verdict: distributive && local_factors_valuation,
        agree: distributive == local_factors_valuation,
        distributive,
        local_factors_valuation,
        factor_verdicts,
        witness,
        ideal_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::DEFAULT_MAX_ELEMENTS;

    fn zmod(n: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n, DEFAULT_MAX_ELEMENTS).unwrap())
    }

    fn mono() -> Arc<FiniteRing> {
        let vars = vec!["x".to_string(), "y".to_string()];
        Arc::new(FiniteRing::monomial_quotient(2, &vars, &[vec![2, 0], vec![1, 1], vec![0, 2]], 4096).unwrap())
    }

    #[test]
    fn generated_ideals() {
        let r = zmod(8);
        assert_eq!(Ideal::from_generators(&r, &[6]).elements(), vec![0, 2, 4, 6]);
        assert_eq!(Ideal::from_generators(&r, &[]).elements(), vec![0]);
        let r12 = zmod(12);
        assert_eq!(Ideal::from_generators(&r12, &[8]).elements(), vec![0, 4, 8]);
    }

    #[test]
    fn lattice_operations() {
        let r = zmod(12);
        let two = Ideal::from_generators(&r, &[2]);
        let three = Ideal::from_generators(&r, &[3]);
        assert_eq!(two.intersect(&three).unwrap().principal_generator(), Some(6));
        assert_eq!(two.sum(&three).unwrap().principal_generator(), Some(1));
        assert_eq!(two.sum(&Ideal::zero(&r)).unwrap(), two);
        assert!(two.sum(&Ideal::zero(&zmod(12))).is_err());
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(all_ideals(&zmod(8), 64).unwrap().len(), 4);
        assert_eq!(all_ideals(&zmod(12), 64).unwrap().len(), 6);
        assert!(all_ideals(&zmod(65), 64).is_err());
    }

    #[test]
    fn annihilators() {
        let r = zmod(8);
        assert_eq!(annihilator_ideal(&r, 2).elements(), vec![0, 4]);
        assert_eq!(annihilator_ideal(&r, 3).elements(), vec![0]);
    }

    #[test]
    fn valuation_checks() {
        let v = is_valuation_ring(&zmod(8), 64);
        assert!(v.verdict && v.agree);
        let v = is_valuation_ring(&zmod(12), 64);
        assert!(!v.verdict && v.agree);
        assert_eq!(v.witness, Some((2, 3)));
        let m = mono();
        let v = is_valuation_ring(&m, 64);
        assert!(!v.verdict && v.agree);
        let (a, b) = v.witness.unwrap();
        let mut names = [m.format(a), m.format(b)];
        names.sort();
        assert_eq!(names, ["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn maximal_ideal_of_monomial_ring_is_not_principal() {
        let m = mono();
        let x = m.variable("x").unwrap();
        let y = m.variable("y").unwrap();
        let ideal = Ideal::from_generators(&m, &[x, y]);
        assert_eq!(ideal.order(), 4);
        assert!(!ideal.is_principal());
    }

    #[test]
    fn arithmetical_checks() {
        let a = is_arithmetical(&zmod(12), 64).unwrap();
        assert!(a.verdict && a.agree);
        let m = mono();
        let a = is_arithmetical(&m, 64).unwrap();
        assert!(!a.verdict && a.agree);
        let [i, j, k] = a.witness.unwrap();
        let lhs = i.sum(&j).unwrap().intersect(&k).unwrap();
        let rhs = i.intersect(&k).unwrap().sum(&j.intersect(&k).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!(k.format(), "(y+x)");
    }
}
