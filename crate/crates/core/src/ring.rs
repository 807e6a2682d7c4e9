//! Ring descriptors and the uniform element-level interface shared by every
//! ring family.

use std::fmt;
use std::sync::Arc;

use crate::dvr::{Dvr, DvrKind};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finite::{self, FiniteRing, DEFAULT_MAX_ELEMENTS};
use crate::fp_poly;
use crate::module::{format_components, FiniteModule, ModuleDescriptor, Summand};
use crate::trivext::DvrTrivExt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    ZMod(u64),
    /// `F_p[var]/(modulus)`, modulus monic and stored constant-first.
    PolyQuotient { p: u64, modulus: Vec<u32>, var: String },
    /// `F_p[vars]/(monomials)`, each relation an exponent vector.
    MonomialQuotient { p: u64, vars: Vec<String>, relations: Vec<Vec<u32>> },
    Product(Vec<RingDescriptor>),
    TrivialExtension { base: Box<RingDescriptor>, module: Box<ModuleDescriptor> },
    LocalizedIntegers(u64),
    LocalizedPolynomials(u64),
    FractionFieldOf(Box<RingDescriptor>),
}

impl RingDescriptor {
    /// `GF(p^d)` as `F_p[x]/(f)` with `f` the first monic irreducible of degree `d`.
    pub fn galois_field(p: u64, d: usize) -> Result<Self> {
        if !crate::dvr::is_prime(p) {
            return Err(Error::construction(format!("{p} is not prime")));
        }
        if d == 1 {
            return Ok(RingDescriptor::ZMod(p));
        }
        let modulus = fp_poly::first_irreducible(d, p);
        Ok(RingDescriptor::PolyQuotient { p, modulus, var: "x".into() })
    }

    /// `F_p[x]/(x^k)`.
    pub fn truncated_poly(p: u64, k: usize) -> Self {
        let mut modulus = vec![0; k + 1];
        modulus[k] = 1;
        RingDescriptor::PolyQuotient { p, modulus, var: "x".into() }
    }

    pub fn trivial_extension(base: RingDescriptor, module: ModuleDescriptor) -> Self {
        RingDescriptor::TrivialExtension { base: Box::new(base), module: Box::new(module) }
    }

    pub fn is_dvr(&self) -> bool {
        matches!(self, RingDescriptor::LocalizedIntegers(_) | RingDescriptor::LocalizedPolynomials(_))
    }

    /// Formats an element payload in this ring's surface syntax.
    pub fn format_elem(&self, e: &Elem) -> String {
        match (self, e) {
            (RingDescriptor::ZMod(_), Elem::Int(n)) => n.to_string(),
            (RingDescriptor::PolyQuotient { var, .. }, Elem::Coeffs(c)) => fp_poly::format(&fp_poly::trim(c.clone()), var),
            (RingDescriptor::MonomialQuotient { vars, relations, .. }, Elem::Coeffs(c)) => {
                match finite::monomial_basis(vars, relations) {
                    Ok(m) if m.len() == c.len() => finite::format_monomial_elem(vars, &m, c),
                    _ => format!("{e:?}"),
                }
            }
            (RingDescriptor::Product(fs), Elem::Tuple(xs)) if fs.len() == xs.len() => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.format_elem(x)).collect();
                format!("({})", parts.join(", "))
            }
            (RingDescriptor::TrivialExtension { base, module }, Elem::Pair(a, x)) => {
                let inner = module.base();
                format!("({}, {})", base.format_elem(a), format_components(x, |c| inner.format_elem(c)))
            }
            (RingDescriptor::LocalizedIntegers(_) | RingDescriptor::LocalizedPolynomials(_), _) => match self.dvr() {
                Some(d) => d.format(e),
                None => format!("{e:?}"),
            },
            (RingDescriptor::FractionFieldOf(inner), _) => inner.format_elem(e),
            _ => format!("{e:?}"),
        }
    }

    fn dvr(&self) -> Option<Dvr> {
        match self {
            RingDescriptor::LocalizedIntegers(p) => Dvr::integers(*p).ok(),
            RingDescriptor::LocalizedPolynomials(p) => Dvr::polynomials(*p).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::ZMod(n) => write!(f, "Z/{n}"),
            RingDescriptor::PolyQuotient { p, modulus, var } => {
                write!(f, "F{p}[{var}]/({})", fp_poly::format(modulus, var))
            }
            RingDescriptor::MonomialQuotient { p, vars, relations } => {
                let rels: Vec<String> = relations.iter().map(|r| finite::format_monomial(vars, r)).collect();
                write!(f, "F{p}[{}]/({})", vars.join(","), rels.join(","))
            }
            RingDescriptor::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|d| match d {
                        RingDescriptor::Product(_) => format!("({d})"),
                        _ => d.to_string(),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
            RingDescriptor::TrivialExtension { base, module } => write!(f, "triv({base}, {module})"),
            RingDescriptor::LocalizedIntegers(p) => write!(f, "Zloc({p})"),
            RingDescriptor::LocalizedPolynomials(p) => write!(f, "Floc({p})"),
            RingDescriptor::FractionFieldOf(d) => write!(f, "Frac({d})"),
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::FinitePresentation { rank, relations, .. } if relations.is_empty() => {
                write!(f, "free({rank})")
            }
            ModuleDescriptor::FinitePresentation { base, rank: 1, relations } => {
                let gens: Vec<String> = relations.iter().map(|r| base.format_elem(&r[0])).collect();
                write!(f, "{}/({})", paren_if_product(base), gens.join(", "))
            }
            ModuleDescriptor::FinitePresentation { base, rank, relations } => {
                let rows: Vec<String> = relations
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|e| base.format_elem(e)).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                write!(f, "free({rank})/rel [{}]", rows.join(", "))
            }
            ModuleDescriptor::DvrFormalSum { summands, .. } if summands.is_empty() => write!(f, "free(0)"),
            ModuleDescriptor::DvrFormalSum { base, summands } => {
                let pi = base.dvr().map(|d| d.format(&d.pi_pow(1))).unwrap_or_else(|| "p".into());
                let parts: Vec<String> = summands
                    .iter()
                    .map(|s| match s {
                        Summand::Free => "free(1)".to_string(),
                        Summand::FractionField => "Frac".to_string(),
                        Summand::CyclicTorsion(k) => match base.dvr() {
                            Some(d) => format!("{base}/({})", d.format(&d.pi_pow(*k))),
                            None => format!("{base}/({pi}^{k})"),
                        },
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

fn paren_if_product(d: &RingDescriptor) -> String {
    match d {
        RingDescriptor::Product(_) => format!("({d})"),
        _ => d.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityVerdict {
    Divides(Elem),
    NotDivides,
}

impl DivisibilityVerdict {
    pub fn witness(&self) -> Option<&Elem> {
        match self {
            DivisibilityVerdict::Divides(w) => Some(w),
            DivisibilityVerdict::NotDivides => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalVerdict {
    /// `maximal` lists the non-units when the ring is finite.
    Local { maximal: Option<Vec<Elem>>, description: String },
    /// Two non-units whose sum is a unit.
    NotLocal { x: Elem, y: Elem },
}

#[derive(Clone)]
pub(crate) enum Imp {
    Finite(Arc<FiniteRing>),
    Dvr(Dvr),
    Field(Dvr),
    DvrTriv(Arc<DvrTrivExt>),
}

/// A constructed ring of any supported family.
#[derive(Clone)]
pub struct Ring {
    desc: RingDescriptor,
    imp: Imp,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.desc)
    }
}

impl Ring {
    pub fn new(desc: &RingDescriptor) -> Result<Ring> {
        Self::with_limit(desc, DEFAULT_MAX_ELEMENTS)
    }

    /// Builds a ring, refusing finite rings with more than `limit` elements.
    pub fn with_limit(desc: &RingDescriptor, limit: usize) -> Result<Ring> {
        let imp = match desc {
            RingDescriptor::ZMod(n) => Imp::Finite(Arc::new(FiniteRing::zmod(*n, limit)?)),
            RingDescriptor::PolyQuotient { p, modulus, var } => {
                Imp::Finite(Arc::new(FiniteRing::poly_quotient(*p, modulus, var, limit)?))
            }
            RingDescriptor::MonomialQuotient { p, vars, relations } => {
                Imp::Finite(Arc::new(FiniteRing::monomial_quotient(*p, vars, relations, limit)?))
            }
            RingDescriptor::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::construction("empty product"));
                }
                let mut parts = Vec::new();
                for f in fs {
                    match Ring::with_limit(f, limit)?.imp {
                        Imp::Finite(r) => parts.push(r),
                        _ => return Err(Error::capability("products are supported for finite factors only")),
                    }
                }
                Imp::Finite(Arc::new(FiniteRing::product(parts, limit)?))
            }
            RingDescriptor::TrivialExtension { base, module } => {
                let a = Ring::with_limit(base, limit)?;
                if module.base() != base.as_ref() {
                    return Err(Error::construction(format!(
                        "module is over {} but the base ring is {}",
                        module.base(),
                        base
                    )));
                }
                match &a.imp {
                    Imp::Finite(r) => {
                        let e = finite_module(r, module)?;
                        Imp::Finite(Arc::new(FiniteRing::trivial_extension(r.clone(), Arc::new(e), limit)?))
                    }
                    Imp::Dvr(d) => {
                        let e = dvr_module(d, module)?;
                        if e.is_zero_module() {
                            return Err(Error::construction("trivial extension by the zero module"));
                        }
                        Imp::DvrTriv(Arc::new(DvrTrivExt::new(d.clone(), e)))
                    }
                    _ => return Err(Error::capability("trivial extensions need a finite or DVR base")),
                }
            }
            RingDescriptor::LocalizedIntegers(p) => Imp::Dvr(Dvr::integers(*p)?),
            RingDescriptor::LocalizedPolynomials(q) => {
                if !crate::dvr::is_prime(*q) {
                    return Err(Error::capability(format!("Floc({q}): only prime fields are supported")));
                }
                Imp::Dvr(Dvr::polynomials(*q)?)
            }
            RingDescriptor::FractionFieldOf(inner) => match Ring::with_limit(inner, limit)?.imp {
                Imp::Dvr(d) => Imp::Field(d),
                _ => return Err(Error::capability("fraction fields are supported for DVRs only")),
            },
        };
        Ok(Ring { desc: desc.clone(), imp })
    }

    pub fn from_finite(desc: RingDescriptor, r: Arc<FiniteRing>) -> Ring {
        Ring { desc, imp: Imp::Finite(r) }
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub(crate) fn imp(&self) -> &Imp {
        &self.imp
    }

    pub fn finite(&self) -> Option<&Arc<FiniteRing>> {
        match &self.imp {
            Imp::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn dvr(&self) -> Option<&Dvr> {
        match &self.imp {
            Imp::Dvr(d) => Some(d),
            _ => None,
        }
    }

    /// The DVR whose fraction field this ring is.
    pub fn fraction_dvr(&self) -> Option<&Dvr> {
        match &self.imp {
            Imp::Field(d) => Some(d),
            _ => None,
        }
    }

    pub fn dvr_triv(&self) -> Option<&Arc<DvrTrivExt>> {
        match &self.imp {
            Imp::DvrTriv(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.imp, Imp::Finite(_))
    }

    pub fn order(&self) -> Order {
        match &self.imp {
            Imp::Finite(r) => Order::Finite(r.order()),
            _ => Order::Infinite,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.imp {
            Imp::Finite(r) => r.label(r.zero()).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.zero(),
            Imp::DvrTriv(t) => t.zero(),
        }
    }

    pub fn one(&self) -> Elem {
        match &self.imp {
            Imp::Finite(r) => r.label(r.one()).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.one(),
            Imp::DvrTriv(t) => t.one(),
        }
    }

    /// Index of a canonical element of a finite ring.
    pub fn index(&self, e: &Elem) -> Result<usize> {
        match &self.imp {
            Imp::Finite(r) => r
                .index_of(e)
                .ok_or_else(|| Error::repr(format!("{} is not a canonical element of {}", self.describe(e), self.desc))),
            _ => Err(Error::capability("element indices exist for finite rings only")),
        }
    }

    fn describe(&self, e: &Elem) -> String {
        match e {
            Elem::Int(n) => n.to_string(),
            _ => format!("{e:?}"),
        }
    }

    pub fn is_canonical(&self, e: &Elem) -> bool {
        match &self.imp {
            Imp::Finite(r) => r.index_of(e).is_some(),
            Imp::Dvr(d) => d.is_canonical_ring(e),
            Imp::Field(d) => d.is_canonical_field(e),
            Imp::DvrTriv(t) => t.is_canonical(e),
        }
    }

    pub fn check(&self, e: &Elem) -> Result<()> {
        if self.is_canonical(e) {
            Ok(())
        } else {
            Err(Error::repr(format!("{} is not a canonical element of {}", self.describe(e), self.desc)))
        }
    }

    fn binary(&self, a: &Elem, b: &Elem, op: fn(&FiniteRing, usize, usize) -> usize) -> Result<usize> {
        let r = self.finite().unwrap();
        Ok(op(r, self.index(a)?, self.index(b)?))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.imp {
            Imp::Finite(r) => r.label(self.binary(a, b, FiniteRing::add)?).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.add(a, b),
            Imp::DvrTriv(t) => t.add(a, b),
        })
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.imp {
            Imp::Finite(r) => r.label(self.binary(a, b, FiniteRing::mul)?).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.mul(a, b),
            Imp::DvrTriv(t) => t.mul(a, b),
        })
    }

    pub fn neg(&self, a: &Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(match &self.imp {
            Imp::Finite(r) => r.label(r.neg(self.index(a)?)).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.neg(a),
            Imp::DvrTriv(t) => t.neg(a),
        })
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn pow(&self, a: &Elem, k: u32) -> Result<Elem> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// The image of an integer.
    pub fn from_int(&self, n: i64) -> Elem {
        match &self.imp {
            Imp::Finite(r) => r.label(r.from_int(n)).clone(),
            Imp::Dvr(d) | Imp::Field(d) => d.from_int(n),
            Imp::DvrTriv(t) => t.from_int(n),
        }
    }

    /// `Some(inverse)` when `a` is a unit.
    pub fn unit_inverse(&self, a: &Elem) -> Result<Option<Elem>> {
        self.check(a)?;
        Ok(match &self.imp {
            Imp::Finite(r) => r.inverse(self.index(a)?).map(|i| r.label(i).clone()),
            Imp::Dvr(d) => d.is_unit(a).then(|| d.inv(a).unwrap()),
            Imp::Field(d) => d.inv(a),
            Imp::DvrTriv(t) => t.inverse(a),
        })
    }

    pub fn is_unit(&self, a: &Elem) -> Result<bool> {
        Ok(self.unit_inverse(a)?.is_some())
    }

    /// `Some(b)` with `b ≠ 0` and `ab = 0`. Zero is not reported as a zero divisor.
    pub fn zero_divisor_witness(&self, a: &Elem) -> Result<Option<Elem>> {
        self.check(a)?;
        Ok(match &self.imp {
            Imp::Finite(r) => r.zero_divisor_witness(self.index(a)?).map(|i| r.label(i).clone()),
            Imp::Dvr(_) | Imp::Field(_) => None,
            Imp::DvrTriv(t) => t.zero_divisor_witness(a),
        })
    }

    /// Some `w` with `a·w = b`. `0 | 0` holds with witness `0`.
    pub fn divides(&self, a: &Elem, b: &Elem) -> Result<DivisibilityVerdict> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.imp {
            Imp::Finite(r) => match r.divides(self.index(a)?, self.index(b)?) {
                Some(w) => DivisibilityVerdict::Divides(r.label(w).clone()),
                None => DivisibilityVerdict::NotDivides,
            },
            Imp::Dvr(d) => d.divides(a, b),
            Imp::Field(d) => {
                if d.is_zero(b) {
                    DivisibilityVerdict::Divides(d.zero())
                } else {
                    match d.div(b, a) {
                        Some(w) => DivisibilityVerdict::Divides(w),
                        None => DivisibilityVerdict::NotDivides,
                    }
                }
            }
            Imp::DvrTriv(t) => t.divides(a, b),
        })
    }

    pub fn elements(&self) -> Result<Vec<Elem>> {
        match &self.imp {
            Imp::Finite(r) => Ok(r.labels().to_vec()),
            _ => Err(Error::capability(format!("{} is infinite; its elements cannot be listed", self.desc))),
        }
    }

    pub fn local_verdict(&self) -> Result<LocalVerdict> {
        Ok(match &self.imp {
            Imp::Finite(r) => match r.local_verdict() {
                Ok(m) => LocalVerdict::Local {
                    maximal: Some(m.iter().map(|i| r.label(i).clone()).collect()),
                    description: format!("non-units, {} elements", m.count()),
                },
                Err((x, y)) => LocalVerdict::NotLocal { x: r.label(x).clone(), y: r.label(y).clone() },
            },
            Imp::Dvr(d) => LocalVerdict::Local { maximal: None, description: format!("({})", d.format(&d.uniformizer())) },
            Imp::Field(_) => LocalVerdict::Local { maximal: None, description: "(0)".into() },
            Imp::DvrTriv(t) => LocalVerdict::Local {
                maximal: None,
                description: format!("({}) x E", t.base().format(&t.base().uniformizer())),
            },
        })
    }

    pub fn is_local(&self) -> Result<bool> {
        Ok(matches!(self.local_verdict()?, LocalVerdict::Local { .. }))
    }

    pub fn format(&self, e: &Elem) -> String {
        match &self.imp {
            Imp::Finite(r) => r.format_label(e),
            Imp::Dvr(d) | Imp::Field(d) => d.format(e),
            Imp::DvrTriv(t) => t.format(e),
        }
    }

    pub fn family(&self) -> &'static str {
        match &self.imp {
            Imp::Finite(_) => "finite",
            Imp::Dvr(d) => match d.kind() {
                DvrKind::Integers { .. } => "dvr-integers",
                DvrKind::Polynomials { .. } => "dvr-polynomials",
            },
            Imp::Field(_) => "fraction-field",
            Imp::DvrTriv(_) => "dvr-trivial-extension",
        }
    }
}

/// Materializes a finite presentation over a finite base.
pub fn finite_module(r: &Arc<FiniteRing>, desc: &ModuleDescriptor) -> Result<FiniteModule> {
    match desc {
        ModuleDescriptor::FinitePresentation { rank, relations, .. } => {
            let mut rows = Vec::new();
            for row in relations {
                if row.len() != *rank {
                    return Err(Error::construction("relation row length differs from module rank"));
                }
                let idx: Option<Vec<usize>> = row.iter().map(|e| r.index_of(e)).collect();
                rows.push(idx.ok_or_else(|| Error::repr("relation entry is not a canonical base element"))?);
            }
            FiniteModule::new(r.clone(), *rank, rows)
        }
        ModuleDescriptor::DvrFormalSum { .. } => {
            Err(Error::construction("formal sums of A, A/π^k and K need a DVR base"))
        }
    }
}

/// Builds the closed-form module over a DVR base.
pub fn dvr_module(d: &Dvr, desc: &ModuleDescriptor) -> Result<crate::module::DvrModule> {
    use crate::module::DvrModule;
    match desc {
        ModuleDescriptor::DvrFormalSum { summands, .. } => DvrModule::new(d.clone(), summands.clone()),
        ModuleDescriptor::FinitePresentation { rank, relations, .. } => {
            DvrModule::from_presentation(d.clone(), relations, *rank)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn zmod_arithmetic() {
        let r = Ring::new(&RingDescriptor::ZMod(8)).unwrap();
        assert_eq!(r.add(&Elem::Int(5), &Elem::Int(6)).unwrap(), Elem::Int(3));
        assert_eq!(r.unit_inverse(&Elem::Int(3)).unwrap(), Some(Elem::Int(3)));
        assert_eq!(r.zero_divisor_witness(&Elem::Int(6)).unwrap(), Some(Elem::Int(4)));
        assert_eq!(r.divides(&Elem::Int(2), &Elem::Int(6)).unwrap(), DivisibilityVerdict::Divides(Elem::Int(3)));
        assert!(matches!(r.add(&Elem::Int(8), &Elem::Int(1)), Err(Error::Representation(_))));
    }

    #[test]
    fn zero_divides_zero() {
        let r = Ring::new(&RingDescriptor::ZMod(12)).unwrap();
        assert_eq!(r.divides(&Elem::Int(0), &Elem::Int(0)).unwrap(), DivisibilityVerdict::Divides(Elem::Int(0)));
        assert_eq!(r.divides(&Elem::Int(2), &Elem::Int(3)).unwrap(), DivisibilityVerdict::NotDivides);
    }

    #[test]
    fn descriptor_display() {
        let gf4 = RingDescriptor::galois_field(2, 2).unwrap();
        assert_eq!(gf4.to_string(), "F2[x]/(x^2+x+1)");
        let t = RingDescriptor::trivial_extension(
            RingDescriptor::ZMod(4),
            ModuleDescriptor::cyclic_quotient(RingDescriptor::ZMod(4), vec![Elem::Int(2)]),
        );
        assert_eq!(t.to_string(), "triv(Z/4, Z/4/(2))");
        let p = RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::ZMod(3)]);
        assert_eq!(p.to_string(), "Z/4 x Z/3");
    }

    #[test]
    fn localized_product() {
        let r = Ring::new(&RingDescriptor::LocalizedIntegers(3)).unwrap();
        let d = r.dvr().unwrap().clone();
        let a = d.fraction_of_ints(BigInt::from(2), BigInt::from(5)).unwrap();
        let b = d.fraction_of_ints(BigInt::from(3), BigInt::from(4)).unwrap();
        assert_eq!(r.format(&r.mul(&a, &b).unwrap()), "3/10");
        assert!(r.is_unit(&a).unwrap());
        assert!(!r.is_unit(&b).unwrap());
    }

    #[test]
    fn module_over_wrong_base_is_rejected() {
        let t = RingDescriptor::trivial_extension(
            RingDescriptor::ZMod(4),
            ModuleDescriptor::cyclic_quotient(RingDescriptor::ZMod(8), vec![Elem::Int(2)]),
        );
        assert!(matches!(Ring::new(&t), Err(Error::Construction(_))));
    }
}
