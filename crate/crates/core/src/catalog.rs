//! Instance catalogs for sweeps and benchmarks.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::expr::ring_from_str;
use crate::finite::FiniteRing;
use crate::ideal::is_valuation_ring;
use crate::module::{FiniteModule, ModuleDescriptor};
use crate::ring::{Order, Ring, RingDescriptor};

/// A named catalog ring.
#[derive(Debug, Clone)]
pub struct CatalogRing {
    pub expr: String,
    pub desc: RingDescriptor,
    pub order: usize,
}

impl CatalogRing {
    pub fn parse(expr: &str) -> Result<CatalogRing> {
        let desc = ring_from_str(expr)?;
        let order = match Ring::new(&desc)?.order() {
            Order::Finite(n) => n,
            Order::Infinite => unreachable!("catalog rings are finite"),
        };
        Ok(CatalogRing { expr: expr.to_string(), desc, order })
    }

    pub fn ring(&self) -> Arc<FiniteRing> {
        Ring::new(&self.desc).expect("catalog rings construct").finite().expect("finite").clone()
    }
}

const EXTRA: &[&str] = &[
    "F4", "F8", "F9", "F16", "F25", "F27", "F32", "F49", "F64",
    "F2[x]/(x^2)", "F2[x]/(x^3)", "F2[x]/(x^4)", "F2[x]/(x^5)", "F2[x]/(x^6)",
    "F3[x]/(x^2)", "F3[x]/(x^3)", "F5[x]/(x^2)", "F7[x]/(x^2)",
    "F2[x]/(x^2+x)", "F2[x]/(x^3+1)", "F3[x]/(x^2-1)",
    "Z/2 x Z/2", "Z/4 x Z/3", "Z/2 x Z/4", "Z/2 x Z/2 x Z/2", "F4 x Z/2", "Z/3 x Z/3",
    "F2[x]/(x^2) x Z/3", "Z/4 x Z/4", "Z/2 x F2[x]/(x^3)", "Z/4 x F4", "Z/8 x Z/8",
    "F2[x,y]/(x^2,x*y,y^2)", "F2[x,y]/(x^2,y^2)", "F2[x,y]/(x^3,x*y,y^2)",
    "F3[x,y]/(x^2,x*y,y^2)", "F2[x,y,z]/(x^2,y^2,z^2,x*y,x*z,y*z)", "Z/2 x F2[x,y]/(x^2,x*y,y^2)",
    "triv(Z/2, Z/2)", "triv(Z/2, free(2))", "triv(Z/4, Z/4/(2))", "triv(Z/3, Z/3)",
    "triv(Z/4, Z/4)", "triv(F4, F4)", "triv(Z/2, free(3))", "triv(Z/2 x Z/2, Z/2 x Z/2)",
];

/// Residue rings, Galois fields, truncated polynomial rings, products,
/// monomial quotients and small trivial extensions, up to `max_order`
/// elements, sorted by order then expression.
pub fn ring_catalog(max_order: usize) -> Vec<CatalogRing> {
    let mut out: Vec<CatalogRing> = (2..=max_order as u64).map(|n| CatalogRing::parse(&format!("Z/{n}")).unwrap()).collect();
    for e in EXTRA {
        let c = CatalogRing::parse(e).unwrap();
        if c.order <= max_order {
            out.push(c);
        }
    }
    out.sort_by(|a, b| (a.order, &a.expr).cmp(&(b.order, &b.expr)));
    out
}

/// The rings checked by the field criterion sweep: `A ∝ A` is a valuation
/// ring exactly when `A` is a field.
pub fn field_criterion_catalog() -> Vec<CatalogRing> {
    let mut out: Vec<CatalogRing> = (2..=32).map(|n| CatalogRing::parse(&format!("Z/{n}")).unwrap()).collect();
    for e in ["F4", "F8", "F9", "F2[x]/(x^2)", "F2[x]/(x^3)", "F3[x]/(x^2)", "Z/4 x Z/3", "F2[x,y]/(x^2,x*y,y^2)"] {
        out.push(CatalogRing::parse(e).unwrap());
    }
    out
}

/// Catalog rings that are chain rings but not fields.
pub fn chain_ring_catalog(max_order: usize) -> Vec<CatalogRing> {
    ring_catalog(max_order)
        .into_iter()
        .filter(|c| {
            let r = c.ring();
            !r.is_field() && is_valuation_ring(&r, max_order).verdict
        })
        .collect()
}

/// A catalog module with a short human label.
#[derive(Debug, Clone)]
pub struct CatalogModule {
    pub label: String,
    pub desc: ModuleDescriptor,
    pub order: usize,
}

/// Nonzero modules over `a`: every cyclic quotient `A/(a)` (one per
/// principal ideal) and every rank-two quotient `A^2/N` with `N` generated
/// by at most two vectors and `|A^2/N| ≤ max_order`.
pub fn module_catalog(base: &CatalogRing, max_order: usize) -> Vec<CatalogModule> {
    let r = base.ring();
    let mut out = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for a in 0..r.order() {
        let p = r.principal(a);
        if p.count() == r.order() || !seen.insert(p.clone()) {
            continue;
        }
        let order = r.order() / p.count();
        if order > max_order {
            continue;
        }
        out.push(CatalogModule {
            label: format!("A/({})", r.format(a)),
            desc: ModuleDescriptor::cyclic_quotient(base.desc.clone(), vec![r.label(a).clone()]),
            order,
        });
    }
    let free = match FiniteModule::free(r.clone(), 2) {
        Ok(m) => m,
        Err(_) => return out,
    };
    let mut cyclic: Vec<(usize, BitSet)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for v in 0..free.order() {
        let s = free.cyclic(v);
        if seen_cyclic.insert(s.clone()) {
            cyclic.push((v, s));
        }
    }
    let mut seen_sub: HashSet<BitSet> = HashSet::new();
    for i in 0..cyclic.len() {
        for j in i..cyclic.len() {
            let (v, w) = (cyclic[i].0, cyclic[j].0);
            let n = if i == j { cyclic[i].1.clone() } else { free.span(&[v, w]) };
            let order = free.order() / n.count();
            if order == 1 || order > max_order || !seen_sub.insert(n) {
                continue;
            }
            let mut relations = Vec::new();
            for g in [v, w] {
                if g != free.zero() && !relations.contains(&free.label(g)) {
                    relations.push(free.label(g));
                }
            }
            let rows: Vec<String> = relations.iter().map(|row| free.format_components(row)).collect();
            out.push(CatalogModule {
                label: format!("A^2/<{}>", rows.join(", ")),
                desc: ModuleDescriptor::FinitePresentation { base: base.desc.clone(), rank: 2, relations },
                order,
            });
        }
    }
    out
}
