//! The trivial extension `A ∝ E`: closed forms over a DVR base, the
//! valuation-ring prediction, and annihilators of elements.

use rand::Rng;

use crate::dvr::{Dvr, SampleBounds, ValuationValue};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::module::{DvrIdeal, DvrModule, Module, Summand, TorsionClass};
use crate::ring::{DivisibilityVerdict, Imp, Ring};

/// `A ∝ E` for `A` a DVR and `E` a formal sum of `A`, `A/π^k` and `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DvrTrivExt {
    base: Dvr,
    module: DvrModule,
}

fn split(x: &Elem) -> (&Elem, &[Elem]) {
    match x {
        Elem::Pair(a, e) => (a, e),
        _ => panic!("trivial-extension element must be a pair"),
    }
}

impl DvrTrivExt {
    pub fn new(base: Dvr, module: DvrModule) -> Self {
        DvrTrivExt { base, module }
    }

    pub fn base(&self) -> &Dvr {
        &self.base
    }

    pub fn module(&self) -> &DvrModule {
        &self.module
    }

    pub fn zero(&self) -> Elem {
        Elem::pair(self.base.zero(), self.module.zero())
    }

    pub fn one(&self) -> Elem {
        Elem::pair(self.base.one(), self.module.zero())
    }

    pub fn from_int(&self, n: i64) -> Elem {
        Elem::pair(self.base.from_int(n), self.module.zero())
    }

    /// `(a, 0)`.
    pub fn scalar(&self, a: Elem) -> Elem {
        Elem::pair(a, self.module.zero())
    }

    /// `(0, e)`.
    pub fn vector(&self, e: Vec<Elem>) -> Elem {
        Elem::pair(self.base.zero(), e)
    }

    pub fn is_canonical(&self, x: &Elem) -> bool {
        match x {
            Elem::Pair(a, e) => self.base.is_canonical_ring(a) && self.module.is_canonical(e),
            _ => false,
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        let ((a, e), (b, f)) = (split(x), split(y));
        Elem::pair(self.base.add(a, b), self.module.add(e, f))
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        let (a, e) = split(x);
        Elem::pair(self.base.neg(a), self.module.neg(e))
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let ((a, e), (b, f)) = (split(x), split(y));
        Elem::pair(self.base.mul(a, b), self.module.add(&self.module.smul(a, f), &self.module.smul(b, e)))
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        let (a, e) = split(x);
        self.base.is_zero(a) && self.module.is_zero(e)
    }

    /// `(a,e)^{-1} = (a^{-1}, -a^{-2} e)` when `a` is a unit.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        let (a, e) = split(x);
        if !self.base.is_unit(a) {
            return None;
        }
        let ai = self.base.inv(a).unwrap();
        let s = self.base.neg(&self.base.mul(&ai, &ai));
        Some(Elem::pair(ai, self.module.smul(&s, e)))
    }

    pub fn zero_divisor_witness(&self, x: &Elem) -> Option<Elem> {
        let (a, e) = split(x);
        if self.base.is_zero(a) {
            return (!self.module.is_zero(e)).then(|| self.vector(e.to_vec()));
        }
        if self.base.is_unit(a) {
            return None;
        }
        let v = self.base.valuation(a).finite().unwrap() as u32;
        let (i, k) = self.module.summands().iter().enumerate().find_map(|(i, s)| match s {
            Summand::CyclicTorsion(k) => Some((i, *k)),
            _ => None,
        })?;
        let mut f = self.module.zero();
        f[i] = self.base.pi_pow(k - v.min(k));
        Some(self.vector(f))
    }

    /// Some `(c, z)` with `(a, x)(c, z) = (b, y)`.
    pub fn divides(&self, lhs: &Elem, rhs: &Elem) -> DivisibilityVerdict {
        let ((a, x), (b, y)) = (split(lhs), split(rhs));
        let m = &self.module;
        if !self.base.is_zero(a) {
            let c = match self.base.divides(a, b) {
                DivisibilityVerdict::Divides(c) => c,
                DivisibilityVerdict::NotDivides => return DivisibilityVerdict::NotDivides,
            };
            let t = m.add(y, &m.neg(&m.smul(&c, x)));
            return match m.divide_by_scalar(a, &t) {
                Some(z) => DivisibilityVerdict::Divides(Elem::pair(c, z)),
                None => DivisibilityVerdict::NotDivides,
            };
        }
        if !self.base.is_zero(b) {
            return DivisibilityVerdict::NotDivides;
        }
        match m.scalar_solve(x, y) {
            Some(c) => DivisibilityVerdict::Divides(Elem::pair(c, m.zero())),
            None => DivisibilityVerdict::NotDivides,
        }
    }

    /// Seeded element; the scalar or vector part is zero a quarter of the time
    /// each so that the square-zero ideal is well represented.
    pub fn sample(&self, rng: &mut impl Rng, bounds: SampleBounds) -> Elem {
        let a = if rng.gen_ratio(1, 4) { self.base.zero() } else { self.base.sample(rng, bounds, true) };
        let e = if rng.gen_ratio(1, 4) {
            self.module.zero()
        } else {
            self.module
                .summands()
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let raw = self.base.sample(rng, bounds, *s != Summand::FractionField);
                    self.module.canonical_component(i, raw).unwrap()
                })
                .collect()
        };
        Elem::pair(a, e)
    }

    pub fn format(&self, x: &Elem) -> String {
        let (a, e) = split(x);
        format!("({}, {})", self.base.format(a), self.module.format_components(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ValuationReason {
    BaseNotField,
    ModuleNotIsoBase,
    BaseFieldModuleIsoBase,
    BaseValuationDomainModuleIsK,
    MixedModule,
    NonTorsionNotK,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationPrediction {
    pub verdict: bool,
    pub reason: ValuationReason,
    /// Two elements of `A ∝ E`, neither dividing the other (closed-form families only).
    pub witness: Option<(Elem, Elem)>,
}

/// Decides whether `A ∝ E` is a valuation ring from the structure of `A` and `E` alone.
pub fn predict_valuation(a: &Ring, e: &Module) -> Result<ValuationPrediction> {
    match (a.imp(), e) {
        (Imp::Finite(r), Module::Finite(m)) => {
            if !r.is_field() {
                return Ok(ValuationPrediction { verdict: false, reason: ValuationReason::BaseNotField, witness: None });
            }
            let iso = m.order() == r.order()
                && (0..m.order()).any(|g| m.cyclic(g).count() == m.order() && m.annihilator(g).count() == 1);
            let reason = if iso { ValuationReason::BaseFieldModuleIsoBase } else { ValuationReason::ModuleNotIsoBase };
            Ok(ValuationPrediction { verdict: iso, reason, witness: None })
        }
        (Imp::Dvr(d), Module::Dvr(m)) => {
            let t = DvrTrivExt::new(d.clone(), m.clone());
            let sums = m.summands();
            let pair_witness = || {
                if sums.len() >= 2 {
                    Some((t.vector(m.unit_vector(0)), t.vector(m.unit_vector(1))))
                } else {
                    Some((t.scalar(d.uniformizer()), t.vector(m.unit_vector(0))))
                }
            };
            if sums.is_empty() {
                return Err(Error::construction("trivial extension by the zero module"));
            }
            let (verdict, reason) = if m.torsion_class() == TorsionClass::Mixed {
                (false, ValuationReason::MixedModule)
            } else if m.is_finitely_generated() {
                (false, ValuationReason::BaseNotField)
            } else if sums == [Summand::FractionField] {
                (true, ValuationReason::BaseValuationDomainModuleIsK)
            } else {
                (false, ValuationReason::NonTorsionNotK)
            };
            let witness = if verdict { None } else { pair_witness() };
            Ok(ValuationPrediction { verdict, reason, witness })
        }
        _ => Err(Error::capability(
            "valuation prediction needs a finite base with a finite module, or a DVR base with a formal sum",
        )),
    }
}

/// Certificate that `0 ∝ E` is not finitely generated when `E` has a `K`
/// summand: for any proposed generators the `K`-component of their span lies
/// in `π^v A`, and `π^(v-1)` in that component escapes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonFgCertificate {
    pub component: usize,
    pub generators: Vec<Vec<Elem>>,
    pub min_valuation: ValuationValue,
    pub escape: Vec<Elem>,
}

impl NonFgCertificate {
    /// Re-checks the escape element against the stated valuation bound.
    pub fn verify(&self, m: &DvrModule) -> bool {
        let d = m.base();
        let bound = self
            .generators
            .iter()
            .map(|g| d.valuation(&g[self.component]))
            .min()
            .unwrap_or(ValuationValue::Infinite);
        bound == self.min_valuation
            && self.escape.iter().enumerate().all(|(i, c)| i == self.component || d.is_zero(c))
            && d.valuation(&self.escape[self.component]) < bound
            && self.generators.iter().all(|g| m.scalar_solve(g, &self.escape).is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivAnnihilatorShape {
    /// Every element, listed (finite rings).
    Listed(Vec<Elem>),
    /// `I ∝ E` with `I = (0:x)` in `A`.
    BaseIdealTimesModule(DvrIdeal),
    /// `0 ∝ E[a]` with `E[a] = {f : a f = 0}`; `a` is stored.
    ZeroTimesKernel(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivAnnihilator {
    pub shape: TrivAnnihilatorShape,
    pub finitely_generated: bool,
    pub description: String,
}

impl TrivAnnihilator {
    /// Membership in the closed-form ideal.
    pub fn contains(&self, t: &DvrTrivExt, r: &Elem) -> bool {
        let (b, f) = split(r);
        let m = t.module();
        match &self.shape {
            TrivAnnihilatorShape::Listed(xs) => xs.contains(r),
            TrivAnnihilatorShape::BaseIdealTimesModule(i) => m.ideal_contains(*i, b),
            TrivAnnihilatorShape::ZeroTimesKernel(a) => t.base().is_zero(b) && m.is_zero(&m.smul(a, f)),
        }
    }

    /// For a non-finitely-generated `0 ∝ E`, the escape from a proposed generator list.
    pub fn certificate(&self, t: &DvrTrivExt, generators: &[Vec<Elem>]) -> Option<NonFgCertificate> {
        if self.finitely_generated {
            return None;
        }
        escape(t.module(), generators)
    }
}

fn escape(m: &DvrModule, generators: &[Vec<Elem>]) -> Option<NonFgCertificate> {
    let d = m.base();
    let component = m.summands().iter().position(|s| *s == Summand::FractionField)?;
    let min_valuation =
        generators.iter().map(|g| d.valuation(&g[component])).min().unwrap_or(ValuationValue::Infinite);
    let e = match min_valuation {
        ValuationValue::Finite(v) => pi_power_signed(d, v - 1),
        ValuationValue::Infinite => d.one(),
    };
    let mut esc = m.zero();
    esc[component] = e;
    Some(NonFgCertificate { component, generators: generators.to_vec(), min_valuation, escape: esc })
}

/// `π^k` for any integer `k`, in the fraction field.
pub fn pi_power_signed(d: &Dvr, k: i64) -> Elem {
    if k >= 0 {
        d.pi_pow(k as u32)
    } else {
        d.inv(&d.pi_pow((-k) as u32)).unwrap()
    }
}

/// `(0 : r)` in `R = A ∝ E`.
pub fn annihilator_in_triv_ext(ring: &Ring, r: &Elem) -> Result<TrivAnnihilator> {
    ring.check(r)?;
    if let Some(f) = ring.finite() {
        let i = ring.index(r)?;
        let ann = f.annihilator(i);
        let els: Vec<Elem> = ann.iter().map(|j| f.label(j).clone()).collect();
        let description = format!("{} elements", els.len());
        return Ok(TrivAnnihilator { shape: TrivAnnihilatorShape::Listed(els), finitely_generated: true, description });
    }
    let t = ring.dvr_triv().ok_or_else(|| Error::capability("annihilators need a finite ring or A ∝ E over a DVR"))?;
    let (a, x) = split(r);
    let m = t.module();
    let d = t.base();
    if !d.is_zero(a) {
        return Ok(TrivAnnihilator {
            shape: TrivAnnihilatorShape::ZeroTimesKernel(a.clone()),
            finitely_generated: true,
            description: format!("0 x E[{}]", d.format(a)),
        });
    }
    let i = m.annihilator(x);
    let fg = i != DvrIdeal::Zero || m.is_finitely_generated();
    let base_part = match i {
        DvrIdeal::Zero => "0".to_string(),
        DvrIdeal::PiPower(0) => "A".to_string(),
        DvrIdeal::PiPower(k) => format!("({})", d.format(&d.pi_pow(k))),
    };
    let module_part = if m.summands() == [Summand::FractionField] { "K" } else { "E" };
    Ok(TrivAnnihilator {
        shape: TrivAnnihilatorShape::BaseIdealTimesModule(i),
        finitely_generated: fg,
        description: format!("{base_part} x {module_part}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z2_q() -> DvrTrivExt {
        let d = Dvr::integers(2).unwrap();
        DvrTrivExt::new(d.clone(), DvrModule::new(d, vec![Summand::FractionField]).unwrap())
    }

    fn q(d: &Dvr, n: i64, m: i64) -> Elem {
        d.fraction_of_ints(BigInt::from(n), BigInt::from(m)).unwrap()
    }

    #[test]
    fn divides_into_fraction_field() {
        let t = z2_q();
        let d = t.base().clone();
        let lhs = t.scalar(d.from_int(4));
        let rhs = t.vector(vec![q(&d, 1, 3)]);
        let w = t.divides(&lhs, &rhs);
        assert_eq!(w, DivisibilityVerdict::Divides(Elem::pair(d.zero(), vec![q(&d, 1, 12)])));
    }

    #[test]
    fn zero_divisors_in_a_times_k() {
        let t = z2_q();
        let d = t.base().clone();
        assert!(t.zero_divisor_witness(&t.vector(vec![d.from_int(5)])).is_some());
        assert!(t.zero_divisor_witness(&Elem::pair(d.from_int(2), vec![d.from_int(5)])).is_none());
    }

    #[test]
    fn inverse_law() {
        let t = z2_q();
        let d = t.base().clone();
        let x = Elem::pair(q(&d, 3, 5), vec![q(&d, 7, 4)]);
        let y = t.inverse(&x).unwrap();
        assert_eq!(t.mul(&x, &y), t.one());
        assert!(t.inverse(&Elem::pair(d.from_int(2), vec![d.zero()])).is_none());
    }

    #[test]
    fn torsion_zero_divisor_witness() {
        let d = Dvr::integers(3).unwrap();
        let m = DvrModule::new(d.clone(), vec![Summand::Free, Summand::CyclicTorsion(2)]).unwrap();
        let t = DvrTrivExt::new(d.clone(), m);
        let x = Elem::pair(d.from_int(3), vec![d.zero(), d.zero()]);
        let w = t.zero_divisor_witness(&x).unwrap();
        assert!(!t.is_zero(&w));
        assert!(t.is_zero(&t.mul(&x, &w)));
    }
}
