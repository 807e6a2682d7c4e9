//! Exact discrete valuation rings: the integers localized at a prime `p` and
//! `F_p[x]` localized at `(x)`, together with their fraction fields `Q` and
//! `F_p(x)`.
//!
//! Elements of both the ring and its fraction field share one payload type
//! (`Elem::Rat` / `Elem::RatFn`); the ring is the subset of non-negative
//! valuation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::fp_poly;
use crate::ring::DivisibilityVerdict;

/// `v(a)`; zero has infinite valuation. Fraction-field elements may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum ValuationValue {
    Finite(i64),
    Infinite,
}

impl ValuationValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            ValuationValue::Finite(v) => Some(v),
            ValuationValue::Infinite => None,
        }
    }
}

impl std::ops::Add for ValuationValue {
    type Output = ValuationValue;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ValuationValue::Finite(a), ValuationValue::Finite(b)) => ValuationValue::Finite(a + b),
            _ => ValuationValue::Infinite,
        }
    }
}

impl std::fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValuationValue::Finite(v) => write!(f, "{v}"),
            ValuationValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DvrKind {
    /// `Z_(p)`: fractions with denominator prime to `p`.
    Integers { p: u64 },
    /// `F_p[x]_(x)`: rational functions whose denominator has nonzero constant term.
    Polynomials { p: u64 },
}

/// Bounds for [`Dvr::sample`].
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    /// Maximum |numerator| and denominator for `Z_(p)`/`Q`.
    pub max_abs: u64,
    /// Maximum degree of numerator and denominator for `F_p[x]_(x)`/`F_p(x)`.
    pub max_degree: usize,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds { max_abs: 100, max_degree: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dvr {
    kind: DvrKind,
}

impl Dvr {
    pub fn integers(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Dvr { kind: DvrKind::Integers { p } })
    }

    pub fn polynomials(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Dvr { kind: DvrKind::Polynomials { p } })
    }

    pub fn kind(&self) -> DvrKind {
        self.kind
    }

    pub fn prime(&self) -> u64 {
        match self.kind {
            DvrKind::Integers { p } | DvrKind::Polynomials { p } => p,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind {
            DvrKind::Integers { .. } => Elem::Rat(BigRational::zero()),
            DvrKind::Polynomials { .. } => Elem::RatFn(Vec::new(), vec![1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match self.kind {
            DvrKind::Integers { .. } => Elem::Rat(BigRational::from_integer(n.into())),
            DvrKind::Polynomials { p } => Elem::RatFn(fp_poly::from_signed(&[n], p), vec![1]),
        }
    }

    /// The uniformizer `p` or `x`.
    pub fn uniformizer(&self) -> Elem {
        match self.kind {
            DvrKind::Integers { p } => Elem::Rat(BigRational::from_integer(p.into())),
            DvrKind::Polynomials { .. } => Elem::RatFn(vec![0, 1], vec![1]),
        }
    }

    pub fn pi_pow(&self, k: u32) -> Elem {
        match self.kind {
            DvrKind::Integers { p } => {
                Elem::Rat(BigRational::from_integer(num_traits::pow(BigInt::from(p), k as usize)))
            }
            DvrKind::Polynomials { .. } => Elem::RatFn(fp_poly::monomial(k as usize), vec![1]),
        }
    }

    /// The variable `x` of the polynomial family.
    pub fn variable(&self) -> Option<Elem> {
        match self.kind {
            DvrKind::Integers { .. } => None,
            DvrKind::Polynomials { .. } => Some(self.uniformizer()),
        }
    }

    /// Builds a reduced fraction; `den` must be nonzero.
    pub fn fraction_of_ints(&self, num: BigInt, den: BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::repr("zero denominator"));
        }
        match self.kind {
            DvrKind::Integers { .. } => Ok(Elem::Rat(BigRational::new(num, den))),
            DvrKind::Polynomials { p } => {
                let m = |x: &BigInt| {
                    let r = x.mod_floor(&BigInt::from(p));
                    fp_poly::constant(r.to_u64().unwrap(), p)
                };
                self.fraction_of_polys(m(&num), m(&den))
            }
        }
    }

    pub fn fraction_of_polys(&self, num: Vec<u32>, den: Vec<u32>) -> Result<Elem> {
        let p = self.prime();
        let (num, den) = (fp_poly::trim(num), fp_poly::trim(den));
        if den.is_empty() {
            return Err(Error::repr("zero denominator"));
        }
        if num.is_empty() {
            return Ok(self.zero());
        }
        let g = fp_poly::gcd(&num, &den, p);
        let (mut n, _) = fp_poly::divrem(&num, &g, p);
        let (mut d, _) = fp_poly::divrem(&den, &g, p);
        let lead = *d.last().unwrap() as u64;
        let inv = fp_poly::inv_mod_p(lead, p);
        n = fp_poly::scale(&n, inv, p);
        d = fp_poly::scale(&d, inv, p);
        Ok(Elem::RatFn(n, d))
    }

    /// True if `a` is a well-formed reduced fraction-field element.
    pub fn is_canonical_field(&self, a: &Elem) -> bool {
        match (self.kind, a) {
            (DvrKind::Integers { .. }, Elem::Rat(q)) => {
                q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
            }
            (DvrKind::Polynomials { p }, Elem::RatFn(n, d)) => {
                let trimmed = fp_poly::trim(n.clone()) == *n && fp_poly::trim(d.clone()) == *d;
                let digits_ok = n.iter().chain(d.iter()).all(|&c| (c as u64) < p);
                if !trimmed || !digits_ok || d.last() != Some(&1) {
                    return false;
                }
                if n.is_empty() {
                    return d == &[1];
                }
                fp_poly::gcd(n, d, p) == [1]
            }
            _ => false,
        }
    }

    /// True if `a` is a canonical element of the ring (denominator constraint).
    pub fn is_canonical_ring(&self, a: &Elem) -> bool {
        self.is_canonical_field(a) && self.valuation(a) >= ValuationValue::Finite(0) && self.den_is_unit(a)
    }

    fn den_is_unit(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => !q.denom().is_multiple_of(&BigInt::from(self.prime())),
            Elem::RatFn(_, d) => d.first().is_some_and(|&c| c != 0),
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::RatFn(an, ad), Elem::RatFn(bn, bd)) => {
                let p = self.prime();
                let n = fp_poly::add(&fp_poly::mul(an, bd, p), &fp_poly::mul(bn, ad, p), p);
                self.fraction_of_polys(n, fp_poly::mul(ad, bd, p)).unwrap()
            }
            _ => panic!("mismatched DVR payloads"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::RatFn(n, d) => Elem::RatFn(fp_poly::neg(n, self.prime()), d.clone()),
            _ => panic!("mismatched DVR payload"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::RatFn(an, ad), Elem::RatFn(bn, bd)) => {
                let p = self.prime();
                self.fraction_of_polys(fp_poly::mul(an, bn, p), fp_poly::mul(ad, bd, p)).unwrap()
            }
            _ => panic!("mismatched DVR payloads"),
        }
    }

    /// Inverse in the fraction field.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match a {
            Elem::Rat(x) if !x.is_zero() => Some(Elem::Rat(x.recip())),
            Elem::RatFn(n, d) if !n.is_empty() => Some(self.fraction_of_polys(d.clone(), n.clone()).unwrap()),
            _ => None,
        }
    }

    /// `b / a` in the fraction field.
    pub fn div(&self, b: &Elem, a: &Elem) -> Option<Elem> {
        self.inv(a).map(|ia| self.mul(b, &ia))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(x) => x.is_zero(),
            Elem::RatFn(n, _) => n.is_empty(),
            _ => false,
        }
    }

    pub fn valuation(&self, a: &Elem) -> ValuationValue {
        match a {
            Elem::Rat(x) => {
                if x.is_zero() {
                    return ValuationValue::Infinite;
                }
                let p = BigInt::from(self.prime());
                ValuationValue::Finite(int_valuation(x.numer(), &p) - int_valuation(x.denom(), &p))
            }
            Elem::RatFn(n, d) => match (fp_poly::x_adic_order(n), fp_poly::x_adic_order(d)) {
                (None, _) => ValuationValue::Infinite,
                (Some(vn), Some(vd)) => ValuationValue::Finite(vn as i64 - vd as i64),
                (Some(_), None) => unreachable!("zero denominator"),
            },
            _ => panic!("valuation of non-DVR payload"),
        }
    }

    pub fn in_ring(&self, a: &Elem) -> bool {
        self.valuation(a) >= ValuationValue::Finite(0)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.valuation(a) == ValuationValue::Finite(0)
    }

    /// Divisibility inside the ring, decided by comparing valuations.
    pub fn divides(&self, a: &Elem, b: &Elem) -> DivisibilityVerdict {
        if self.is_zero(b) {
            return DivisibilityVerdict::Divides(self.zero());
        }
        if self.is_zero(a) {
            return DivisibilityVerdict::NotDivides;
        }
        if self.valuation(a) <= self.valuation(b) {
            DivisibilityVerdict::Divides(self.div(b, a).unwrap())
        } else {
            DivisibilityVerdict::NotDivides
        }
    }

    /// Canonical representative of `a mod π^k` for a ring element `a`:
    /// an integer in `[0, p^k)` or a polynomial of degree `< k`.
    pub fn reduce_mod_pi_pow(&self, a: &Elem, k: u32) -> Elem {
        debug_assert!(self.in_ring(a));
        match (self.kind, a) {
            (DvrKind::Integers { p }, Elem::Rat(x)) => {
                let m = num_traits::pow(BigInt::from(p), k as usize);
                let d_inv = mod_inverse(x.denom(), &m);
                let r = (x.numer() * d_inv).mod_floor(&m);
                Elem::Rat(BigRational::from_integer(r))
            }
            (DvrKind::Polynomials { p }, Elem::RatFn(n, d)) => {
                let inv = fp_poly::inv_series(d, k as usize, p);
                Elem::RatFn(fp_poly::truncate(&fp_poly::mul(n, &inv, p), k as usize), vec![1])
            }
            _ => panic!("mismatched DVR payload"),
        }
    }

    /// Draws an element deterministically from `rng`. With `in_ring` the
    /// denominator constraint is enforced; otherwise any fraction-field
    /// element may be produced.
    pub fn sample(&self, rng: &mut impl Rng, bounds: SampleBounds, in_ring: bool) -> Elem {
        if rng.gen_ratio(1, 16) {
            return self.zero();
        }
        match self.kind {
            DvrKind::Integers { p } => {
                let b = bounds.max_abs.max(1);
                let max_k = ilog(b, p);
                let k = rng.gen_range(0..=max_k);
                let pk = p.pow(k);
                let u = rng.gen_range(1..=(b / pk).max(1));
                let mut num = BigInt::from(pk) * BigInt::from(u);
                if rng.gen_bool(0.5) {
                    num = -num;
                }
                let den = loop {
                    let d = rng.gen_range(1..=b);
                    if !in_ring || d % p != 0 {
                        break d;
                    }
                };
                Elem::Rat(BigRational::new(num, den.into()))
            }
            DvrKind::Polynomials { p } => {
                let dmax = bounds.max_degree;
                let k = rng.gen_range(0..=dmax);
                let mut unit = random_poly(rng, p, dmax);
                if unit.is_empty() || unit[0] == 0 {
                    if unit.is_empty() {
                        unit.push(0);
                    }
                    unit[0] = rng.gen_range(1..p as u32);
                }
                let num = fp_poly::mul(&fp_poly::monomial(k), &unit, p);
                let den = loop {
                    let d = random_poly(rng, p, dmax);
                    if d.is_empty() {
                        continue;
                    }
                    if !in_ring || d[0] != 0 {
                        break d;
                    }
                };
                self.fraction_of_polys(num, den).unwrap()
            }
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(x) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Elem::RatFn(n, d) => {
                let ns = fp_poly::format(n, "x");
                if d == &[1] {
                    ns
                } else {
                    format!("({ns})/({})", fp_poly::format(d, "x"))
                }
            }
            other => format!("{other:?}"),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::construction(format!("{p} is not prime")))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one() || m.is_one());
    e.x.mod_floor(m)
}

fn ilog(b: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut acc = p;
    while acc <= b {
        k += 1;
        acc = acc.saturating_mul(p);
    }
    k
}

fn random_poly(rng: &mut impl Rng, p: u64, max_deg: usize) -> Vec<u32> {
    let d = rng.gen_range(0..=max_deg);
    fp_poly::trim((0..=d).map(|_| rng.gen_range(0..p as u32)).collect())
}
