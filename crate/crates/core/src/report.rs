//! Property reports: every structural flag of a ring, each negative answer
//! backed by a witness that is replayed before the report is returned.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::finite::FiniteRing;
use crate::ideal::{is_arithmetical, is_valuation_ring, Ideal};
use crate::module::Module;
use crate::ring::{DivisibilityVerdict, LocalVerdict, Order, Ring, RingDescriptor};
use crate::trivext::predict_valuation;

pub const SCHEMA: &str = "ringlab-report/1";

/// A decided flag, or `value: None` when the question was out of reach.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Flag {
    pub value: Option<bool>,
    pub method: String,
}

impl Flag {
    fn known(value: bool, method: impl Into<String>) -> Flag {
        Flag { value: Some(value), method: method.into() }
    }

    fn not_computed(reason: impl Into<String>) -> Flag {
        Flag { value: None, method: format!("not computed: {}", reason.into()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub finite: bool,
    pub field: Flag,
    pub local: Flag,
    pub valuation: Flag,
    pub arithmetical: Flag,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorSummary {
    pub idempotent: String,
    pub order: usize,
    pub recognized: Option<String>,
    pub valuation: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivisorCensus {
    pub units: usize,
    pub zero_divisors: usize,
    pub nilpotents: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub property: String,
    pub claim: String,
    pub elements: Vec<String>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub expression: String,
    pub family: String,
    pub order: String,
    pub flags: Flags,
    pub local_factors: Option<Vec<FactorSummary>>,
    pub ideal_count: Option<usize>,
    pub zero_divisors: Option<ZeroDivisorCensus>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    /// Every false flag has a witness and every witness replayed.
    pub fn is_consistent(&self) -> bool {
        let f = &self.flags;
        let covered = [("field", &f.field), ("local", &f.local), ("valuation", &f.valuation), ("arithmetical", &f.arithmetical)]
            .iter()
            .all(|(name, flag)| flag.value != Some(false) || self.witnesses.iter().any(|w| w.property == *name));
        covered && self.witnesses.iter().all(|w| w.verified)
    }
}

pub fn order_string(o: Order) -> String {
    match o {
        Order::Finite(n) => n.to_string(),
        Order::Infinite => "infinite".into(),
    }
}

fn neither_divides(ring: &Ring, a: &crate::elem::Elem, b: &crate::elem::Elem) -> bool {
    matches!(ring.divides(a, b), Ok(DivisibilityVerdict::NotDivides))
        && matches!(ring.divides(b, a), Ok(DivisibilityVerdict::NotDivides))
}

/// Builds the report for `ring`; `max_order` bounds full ideal enumeration.
pub fn property_report(ring: &Ring, max_order: usize) -> Result<PropertyReport> {
    let desc = ring.descriptor();
    let mut report = PropertyReport {
        expression: desc.to_string(),
        family: ring.family().to_string(),
        order: order_string(ring.order()),
        flags: Flags {
            finite: ring.is_finite(),
            field: Flag::not_computed("unsupported family"),
            local: Flag::not_computed("unsupported family"),
            valuation: Flag::not_computed("unsupported family"),
            arithmetical: Flag::not_computed("unsupported family"),
        },
        local_factors: None,
        ideal_count: None,
        zero_divisors: None,
        witnesses: Vec::new(),
        notes: Vec::new(),
    };
    if let Some(r) = ring.finite() {
        finite_report(ring, r, max_order, &mut report)?;
    } else if let Some(d) = ring.dvr() {
        let pi = d.uniformizer();
        report.flags.field = Flag::known(false, "the uniformizer is a nonzero non-unit");
        report.witnesses.push(Witness {
            property: "field".into(),
            claim: "nonzero non-unit".into(),
            elements: vec![d.format(&pi)],
            verified: !d.is_zero(&pi) && !d.is_unit(&pi),
        });
        report.flags.local = Flag::known(true, "closed form: maximal ideal generated by the uniformizer");
        report.flags.valuation = Flag::known(true, "closed form: every element is a unit times a power of the uniformizer");
        report.flags.arithmetical = Flag::known(true, "valuation rings are arithmetical");
    } else if ring.fraction_dvr().is_some() {
        report.flags.field = Flag::known(true, "fraction field");
        report.flags.local = Flag::known(true, "fields are local");
        report.flags.valuation = Flag::known(true, "fields are valuation rings");
        report.flags.arithmetical = Flag::known(true, "fields are arithmetical");
    } else if let Some(t) = ring.dvr_triv() {
        let (base_desc, module_desc) = match desc {
            RingDescriptor::TrivialExtension { base, module } => (base, module),
            _ => unreachable!("closed-form trivial extension has a trivial-extension descriptor"),
        };
        let base = Ring::new(base_desc)?;
        let module = Module::new(&base, module_desc)?;
        let e = t.module().unit_vector(0);
        let x = t.vector(e);
        report.flags.field = Flag::known(false, "(0, e) is a nonzero zero divisor");
        report.witnesses.push(Witness {
            property: "field".into(),
            claim: "nonzero zero divisor".into(),
            elements: vec![t.format(&x)],
            verified: !t.is_zero(&x) && t.zero_divisor_witness(&x).is_some_and(|w| t.is_zero(&t.mul(&x, &w))),
        });
        report.flags.local = Flag::known(true, "closed form: non-units are m x E for the maximal ideal m of the base");
        let p = predict_valuation(&base, &module)?;
        let method = format!("closed form: {:?}", p.reason);
        report.flags.valuation = Flag::known(p.verdict, method.clone());
        report.flags.arithmetical = Flag::known(p.verdict, "local ring: arithmetical exactly when valuation");
        if let Some((a, b)) = &p.witness {
            let ok = matches!(t.divides(a, b), DivisibilityVerdict::NotDivides)
                && matches!(t.divides(b, a), DivisibilityVerdict::NotDivides);
            for property in ["valuation", "arithmetical"] {
                report.witnesses.push(Witness {
                    property: property.into(),
                    claim: "neither element divides the other".into(),
                    elements: vec![t.format(a), t.format(b)],
                    verified: ok,
                });
            }
        }
    }
    Ok(report)
}

fn finite_report(ring: &Ring, r: &Arc<FiniteRing>, max_order: usize, report: &mut PropertyReport) -> Result<()> {
    let n = r.order();
    let units = (0..n).filter(|&a| r.is_unit(a)).count();
    let zero_divisors = (0..n).filter(|&a| r.zero_divisor_witness(a).is_some()).count();
    let nilpotents = (0..n).filter(|&a| r.is_nilpotent(a)).count();
    report.zero_divisors = Some(ZeroDivisorCensus { units, zero_divisors, nilpotents });

    report.flags.field = Flag::known(r.is_field(), "every nonzero element is a unit");
    if !r.is_field() {
        let x = (0..n).find(|&a| a != r.zero() && !r.is_unit(a)).expect("a non-field has a nonzero non-unit");
        report.witnesses.push(Witness {
            property: "field".into(),
            claim: "nonzero non-unit".into(),
            elements: vec![r.format(x)],
            verified: r.inverse(x).is_none() && x != r.zero(),
        });
    }

    match ring.local_verdict()? {
        LocalVerdict::Local { .. } => report.flags.local = Flag::known(true, "non-units are closed under addition"),
        LocalVerdict::NotLocal { x, y } => {
            report.flags.local = Flag::known(false, "non-units are closed under addition");
            let s = ring.add(&x, &y)?;
            report.witnesses.push(Witness {
                property: "local".into(),
                claim: "two non-units with a unit sum".into(),
                elements: vec![ring.format(&x), ring.format(&y)],
                verified: !ring.is_unit(&x)? && !ring.is_unit(&y)? && ring.is_unit(&s)?,
            });
        }
    }

    let v = is_valuation_ring(r, max_order);
    let method = if v.full_enumeration { "ideal chain and local two-generated principal" } else { "principal ideal chain and local two-generated principal" };
    report.flags.valuation = Flag::known(v.verdict, method);
    if !v.agree {
        report.notes.push("valuation methods disagree".into());
    }
    if let Some((a, b)) = v.witness {
        let (x, y) = (r.label(a).clone(), r.label(b).clone());
        report.witnesses.push(Witness {
            property: "valuation".into(),
            claim: "neither element divides the other".into(),
            elements: vec![r.format(a), r.format(b)],
            verified: neither_divides(ring, &x, &y),
        });
    }

    let decomposition = r.local_decomposition();
    let mut factors = Vec::new();
    for f in &decomposition.factors {
        factors.push(FactorSummary {
            idempotent: r.format(f.idempotent),
            order: f.ring.order(),
            recognized: f.recognized.as_ref().map(|d| d.to_string()),
            valuation: is_valuation_ring(&f.ring, max_order).verdict,
        });
    }

    match is_arithmetical(r, max_order) {
        Ok(a) => {
            report.ideal_count = Some(a.ideal_count);
            report.flags.arithmetical = Flag::known(a.verdict, "distributive ideal lattice and local factors valuation");
            if !a.agree {
                report.notes.push("arithmetical methods disagree".into());
            }
            if let Some([i, j, k]) = &a.witness {
                let lhs = i.sum(j)?.intersect(k)?;
                let rhs = i.intersect(k)?.sum(&j.intersect(k)?)?;
                report.witnesses.push(Witness {
                    property: "arithmetical".into(),
                    claim: "(I+J)∩K ≠ (I∩K)+(J∩K)".into(),
                    elements: vec![i.format(), j.format(), k.format()],
                    verified: lhs != rhs,
                });
            }
        }
        Err(_) => {
            let ok = factors.iter().all(|f| f.valuation);
            report.flags.arithmetical = Flag::known(ok, "local factors valuation (ideal lattice above the enumeration bound)");
            if let Some(f) = decomposition.factors.iter().find(|f| !is_valuation_ring(&f.ring, max_order).verdict) {
                let (a, b) = is_valuation_ring(&f.ring, max_order).witness.expect("non-valuation factor has a witness");
                let verified = f.ring.divides(a, b).is_none() && f.ring.divides(b, a).is_none();
                report.witnesses.push(Witness {
                    property: "arithmetical".into(),
                    claim: format!("incomparable pair in the local factor at idempotent {}", r.format(f.idempotent)),
                    elements: vec![f.ring.format(a), f.ring.format(b)],
                    verified,
                });
            }
        }
    }
    report.local_factors = Some(factors);
    Ok(())
}

/// Ideals of a finite ring rendered by their generators.
pub fn format_ideals(ideals: &[Ideal]) -> Vec<String> {
    ideals.iter().map(|i| i.format()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ring_from_str;

    fn report(src: &str) -> PropertyReport {
        property_report(&Ring::new(&ring_from_str(src).unwrap()).unwrap(), 64).unwrap()
    }

    #[test]
    fn z12() {
        let r = report("Z/12");
        assert_eq!(r.flags.local.value, Some(false));
        assert_eq!(r.flags.valuation.value, Some(false));
        assert_eq!(r.flags.arithmetical.value, Some(true));
        let orders: Vec<usize> = r.local_factors.as_ref().unwrap().iter().map(|f| f.order).collect();
        assert_eq!(orders, vec![3, 4]);
        assert!(r.is_consistent());
    }

    #[test]
    fn monomial_ring() {
        let r = report("F2[x,y]/(x^2,x*y,y^2)");
        assert_eq!(r.flags.local.value, Some(true));
        assert_eq!(r.flags.valuation.value, Some(false));
        assert_eq!(r.flags.arithmetical.value, Some(false));
        assert!(r.is_consistent());
    }

    #[test]
    fn closed_form_valuation() {
        let r = report("triv(Zloc(2), Frac)");
        assert_eq!(r.order, "infinite");
        assert_eq!(r.flags.local.value, Some(true));
        assert_eq!(r.flags.valuation.value, Some(true));
        assert!(r.is_consistent());
        let r = report("triv(Zloc(2), free(1) + Zloc(2)/(2))");
        assert_eq!(r.flags.valuation.value, Some(false));
        assert!(r.is_consistent());
    }
}
