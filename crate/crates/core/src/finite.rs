//! Finite commutative rings as fully tabulated structures over element indices.
//!
//! Every finite ring is materialized as its sorted list of canonical element
//! payloads plus addition and multiplication tables. Index order equals the
//! lexicographic order of the payloads, so witnesses chosen as "least index"
//! are reproducible across runs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::fp_poly;
use crate::module::FiniteModule;
use crate::ring::RingDescriptor;

/// Default cap on the number of elements of a tabulated ring.
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

pub(crate) enum Shape {
    ZMod,
    Poly { p: u64, modulus: Vec<u32>, var: String },
    Monomial { p: u64, vars: Vec<String>, monomials: Vec<Vec<u32>> },
    Product(Vec<Arc<FiniteRing>>),
    Triv { base: Arc<FiniteRing>, module: Arc<FiniteModule> },
    /// A local factor `eR` living inside a parent ring.
    Factor(Arc<FiniteRing>),
}

pub struct FiniteRing {
    labels: Vec<Elem>,
    index: HashMap<Elem, u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    inverse: Vec<Option<u16>>,
    shape: Shape,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing").field("order", &self.order()).finish_non_exhaustive()
    }
}

fn check_order(n: usize, limit: usize) -> Result<()> {
    if n > limit || n > u16::MAX as usize {
        Err(Error::capability(format!("ring of order {n} exceeds the element bound {limit}")))
    } else {
        Ok(())
    }
}

impl FiniteRing {
    fn build(
        labels: Vec<Elem>,
        zero: usize,
        one: usize,
        shape: Shape,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> FiniteRing {
        let n = labels.len();
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must be strictly sorted");
        let mut add_t = vec![0u16; n * n];
        let mut mul_t = vec![0u16; n * n];
        for i in 0..n {
            for j in i..n {
                let s = add(i, j) as u16;
                let m = mul(i, j) as u16;
                add_t[i * n + j] = s;
                add_t[j * n + i] = s;
                mul_t[i * n + j] = m;
                mul_t[j * n + i] = m;
            }
        }
        let neg = (0..n)
            .map(|i| (0..n).find(|&j| add_t[i * n + j] as usize == zero).expect("additive inverse") as u16)
            .collect();
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| mul_t[i * n + j] as usize == one).map(|j| j as u16))
            .collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        FiniteRing { labels, index, add: add_t, mul: mul_t, neg, zero, one, inverse, shape }
    }

    pub fn zmod(n: u64, limit: usize) -> Result<FiniteRing> {
        if n < 2 {
            return Err(Error::construction("modulus must be ≥ 2"));
        }
        check_order(n as usize, limit)?;
        let labels = (0..n).map(Elem::Int).collect();
        let m = n as usize;
        Ok(Self::build(labels, 0, 1 % m, Shape::ZMod, |i, j| (i + j) % m, |i, j| i * j % m))
    }

    /// `F_p[x]/(f)` for monic `f` of positive degree.
    pub fn poly_quotient(p: u64, modulus: &[u32], var: &str, limit: usize) -> Result<FiniteRing> {
        let d = validate_monic(p, modulus)?;
        let n = (p as usize).checked_pow(d as u32).filter(|&n| n <= limit);
        let n = n.ok_or_else(|| Error::capability(format!("ring of order {p}^{d} exceeds the element bound {limit}")))?;
        check_order(n, limit)?;
        let labels: Vec<Elem> = (0..n).map(|i| Elem::Coeffs(digits(i, p, d))).collect();
        let vecs: Vec<Vec<u32>> = (0..n).map(|i| digits(i, p, d)).collect();
        let encode = |c: &[u32]| -> usize {
            let mut padded = c.to_vec();
            padded.resize(d, 0);
            padded.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
        };
        let one = encode(&[1]);
        let shape = Shape::Poly { p, modulus: modulus.to_vec(), var: var.to_string() };
        Ok(Self::build(
            labels,
            0,
            one,
            shape,
            |i, j| encode(&fp_poly::add(&vecs[i], &vecs[j], p)),
            |i, j| encode(&fp_poly::rem(&fp_poly::mul(&vecs[i], &vecs[j], p), modulus, p)),
        ))
    }

    /// `F_p[vars]/(monomials)`; finite only when a pure power of every
    /// variable lies in the ideal.
    pub fn monomial_quotient(p: u64, vars: &[String], relations: &[Vec<u32>], limit: usize) -> Result<FiniteRing> {
        if !crate::dvr::is_prime(p) {
            return Err(Error::construction(format!("{p} is not prime")));
        }
        let monomials = monomial_basis(vars, relations)?;
        let d = monomials.len();
        if d == 0 {
            return Err(Error::construction("quotient by the unit ideal is the zero ring"));
        }
        let n = (p as usize).checked_pow(d as u32).filter(|&n| n <= limit);
        let n = n.ok_or_else(|| Error::capability(format!("ring of order {p}^{d} exceeds the element bound {limit}")))?;
        check_order(n, limit)?;
        let pos: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let vecs: Vec<Vec<u32>> = (0..n).map(|i| digits(i, p, d)).collect();
        let encode = |c: &[u32]| c.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize);
        let mul = |i: usize, j: usize| {
            let mut out = vec![0u64; d];
            for (a, &ca) in vecs[i].iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (b, &cb) in vecs[j].iter().enumerate() {
                    if cb == 0 {
                        continue;
                    }
                    let m: Vec<u32> = monomials[a].iter().zip(&monomials[b]).map(|(x, y)| x + y).collect();
                    if let Some(&t) = pos.get(&m) {
                        out[t] = (out[t] + ca as u64 * cb as u64) % p;
                    }
                }
            }
            encode(&out.into_iter().map(|x| x as u32).collect::<Vec<_>>())
        };
        let add = |i: usize, j: usize| {
            let s: Vec<u32> = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| ((a + b) as u64 % p) as u32).collect();
            encode(&s)
        };
        let mut one_v = vec![0u32; d];
        one_v[0] = 1;
        let one = encode(&one_v);
        let labels = vecs.iter().map(|v| Elem::Coeffs(v.clone())).collect();
        let shape = Shape::Monomial { p, vars: vars.to_vec(), monomials: monomials.clone() };
        Ok(Self::build(labels, 0, one, shape, add, mul))
    }

    pub fn product(factors: Vec<Arc<FiniteRing>>, limit: usize) -> Result<FiniteRing> {
        if factors.is_empty() {
            return Err(Error::construction("empty product"));
        }
        let n = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()).filter(|&n| n <= limit));
        let n = n.ok_or_else(|| Error::capability(format!("product ring exceeds the element bound {limit}")))?;
        let sizes: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let split = |mut i: usize| -> Vec<usize> {
            let mut out = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                out[k] = i % sizes[k];
                i /= sizes[k];
            }
            out
        };
        let join = |c: &[usize]| c.iter().zip(&sizes).fold(0, |acc, (&x, &s)| acc * s + x);
        let comps: Vec<Vec<usize>> = (0..n).map(split).collect();
        let labels = comps
            .iter()
            .map(|c| Elem::Tuple(c.iter().zip(&factors).map(|(&x, f)| f.label(x).clone()).collect()))
            .collect();
        let one = join(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
        let add = |i: usize, j: usize| {
            let c: Vec<usize> = factors.iter().enumerate().map(|(k, f)| f.add(comps[i][k], comps[j][k])).collect();
            join(&c)
        };
        let mul = |i: usize, j: usize| {
            let c: Vec<usize> = factors.iter().enumerate().map(|(k, f)| f.mul(comps[i][k], comps[j][k])).collect();
            join(&c)
        };
        let r = Self::build(labels, 0, one, Shape::Product(factors.clone()), add, mul);
        Ok(r)
    }

    /// `A ∝ E` with `(a,e)(b,f) = (ab, af + be)`.
    pub fn trivial_extension(base: Arc<FiniteRing>, module: Arc<FiniteModule>, limit: usize) -> Result<FiniteRing> {
        if module.order() <= 1 {
            return Err(Error::construction("trivial extension by the zero module"));
        }
        let m = module.order();
        let n = base.order().checked_mul(m).filter(|&n| n <= limit);
        let n = n.ok_or_else(|| Error::capability(format!("trivial extension exceeds the element bound {limit}")))?;
        let labels = (0..n)
            .map(|i| Elem::pair(base.label(i / m).clone(), module.label(i % m)))
            .collect();
        let add = |i: usize, j: usize| base.add(i / m, j / m) * m + module.add(i % m, j % m);
        let mul = |i: usize, j: usize| {
            let (a, e) = (i / m, i % m);
            let (b, f) = (j / m, j % m);
            base.mul(a, b) * m + module.add(module.smul(a, f), module.smul(b, e))
        };
        let one = base.one() * m + module.zero();
        let shape = Shape::Triv { base: base.clone(), module: module.clone() };
        Ok(Self::build(labels, 0, one, shape, add, mul))
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.order() + j] as usize
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order() + j] as usize
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i] as usize
    }

    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self, i: usize) -> &Elem {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        self.inverse[i].map(|x| x as usize)
    }

    pub fn is_unit(&self, i: usize) -> bool {
        self.inverse[i].is_some()
    }

    pub fn is_field(&self) -> bool {
        (0..self.order()).all(|i| i == self.zero || self.is_unit(i))
    }

    pub fn pow(&self, i: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, i))
    }

    /// `n · 1`.
    pub fn from_int(&self, n: i64) -> usize {
        let mut acc = self.zero;
        let mut base = if n < 0 { self.neg(self.one) } else { self.one };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least nonzero `b` with `ab = 0`; `None` for `a = 0` by convention.
    pub fn zero_divisor_witness(&self, a: usize) -> Option<usize> {
        if a == self.zero {
            return None;
        }
        (0..self.order()).find(|&b| b != self.zero && self.mul(a, b) == self.zero)
    }

    /// Least `w` with `a·w = b`.
    pub fn divides(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order()).find(|&w| self.mul(a, w) == b)
    }

    /// The principal ideal `aR` as a member set.
    pub fn principal(&self, a: usize) -> BitSet {
        BitSet::from_indices(self.order(), (0..self.order()).map(|r| self.mul(a, r)))
    }

    /// `(0:a) = {b : ab = 0}`.
    pub fn annihilator(&self, a: usize) -> BitSet {
        BitSet::from_indices(self.order(), (0..self.order()).filter(|&b| self.mul(a, b) == self.zero))
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        let mut x = a;
        for _ in 0..=self.order() {
            if x == self.zero {
                return true;
            }
            x = self.mul(x, a);
        }
        false
    }

    /// Nilradical, which equals the Jacobson radical of a finite ring.
    pub fn nilradical(&self) -> BitSet {
        BitSet::from_indices(self.order(), (0..self.order()).filter(|&a| self.is_nilpotent(a)))
    }

    pub fn additive_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// `Ok(maximal ideal)` when the non-units are closed under addition,
    /// otherwise the least pair of non-units whose sum is a unit.
    pub fn local_verdict(&self) -> std::result::Result<BitSet, (usize, usize)> {
        let nonunits: Vec<usize> = (0..self.order()).filter(|&a| !self.is_unit(a)).collect();
        for (k, &x) in nonunits.iter().enumerate() {
            for &y in &nonunits[k..] {
                if self.is_unit(self.add(x, y)) {
                    return Err((x, y));
                }
            }
        }
        Ok(BitSet::from_indices(self.order(), nonunits))
    }

    pub fn is_local(&self) -> bool {
        self.local_verdict().is_ok()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Splits the ring along its primitive idempotents.
    pub fn local_decomposition(self: &Arc<Self>) -> LocalDecomposition {
        let idem = self.idempotents();
        let primitive: Vec<usize> = idem
            .iter()
            .copied()
            .filter(|&e| e != self.zero)
            .filter(|&e| idem.iter().all(|&f| {
                let ef = self.mul(e, f);
                ef == self.zero || ef == e
            }))
            .collect();
        let factors = primitive
            .iter()
            .map(|&e| {
                let members = self.principal(e).to_vec();
                let mut local_of = vec![usize::MAX; self.order()];
                for (k, &m) in members.iter().enumerate() {
                    local_of[m] = k;
                }
                let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
                let ring = FiniteRing::build(
                    labels,
                    local_of[self.zero],
                    local_of[e],
                    Shape::Factor(self.clone()),
                    |i, j| local_of[self.add(members[i], members[j])],
                    |i, j| local_of[self.mul(members[i], members[j])],
                );
                let recognized = recognize(&ring);
                LocalFactor { idempotent: e, ring: Arc::new(ring), embedding: members, local_of, recognized }
            })
            .collect();
        LocalDecomposition { factors }
    }

    /// Factors of a product ring.
    pub fn product_factors(&self) -> Option<&[Arc<FiniteRing>]> {
        match &self.shape {
            Shape::Product(fs) => Some(fs),
            _ => None,
        }
    }

    /// Base ring and module of a trivial extension.
    pub fn triv_parts(&self) -> Option<(&Arc<FiniteRing>, &Arc<FiniteModule>)> {
        match &self.shape {
            Shape::Triv { base, module } => Some((base, module)),
            _ => None,
        }
    }

    /// Characteristic prime and modulus of `F_p[x]/(f)`.
    pub fn poly_modulus(&self) -> Option<(u64, &[u32])> {
        match &self.shape {
            Shape::Poly { p, modulus, .. } => Some((*p, modulus)),
            Shape::Monomial { p, .. } => Some((*p, &[])),
            _ => None,
        }
    }

    /// Element named by a polynomial variable, if the ring has one.
    pub fn variable(&self, name: &str) -> Option<usize> {
        match &self.shape {
            Shape::Poly { p, modulus, var } if var == name => {
                let d = modulus.len() - 1;
                let mut r = fp_poly::rem(&[0, 1], modulus, *p);
                r.resize(d, 0);
                self.index_of(&Elem::Coeffs(r))
            }
            Shape::Monomial { vars, monomials, .. } => {
                let v = vars.iter().position(|x| x == name)?;
                let mut m = vec![0u32; vars.len()];
                m[v] = 1;
                let mut c = vec![0u32; monomials.len()];
                if let Some(t) = monomials.iter().position(|x| *x == m) {
                    c[t] = 1;
                }
                self.index_of(&Elem::Coeffs(c))
            }
            Shape::Factor(parent) => parent.variable(name),
            _ => None,
        }
    }

    pub fn format(&self, i: usize) -> String {
        self.format_label(&self.labels[i])
    }

    pub fn format_label(&self, e: &Elem) -> String {
        match (&self.shape, e) {
            (Shape::ZMod, Elem::Int(n)) => n.to_string(),
            (Shape::Poly { var, .. }, Elem::Coeffs(c)) => fp_poly::format(&fp_poly::trim(c.clone()), var),
            (Shape::Monomial { vars, monomials, .. }, Elem::Coeffs(c)) => format_monomial_elem(vars, monomials, c),
            (Shape::Product(fs), Elem::Tuple(xs)) => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.format_label(x)).collect();
                format!("({})", parts.join(", "))
            }
            (Shape::Triv { base, module }, Elem::Pair(a, e)) => {
                format!("({}, {})", base.format_label(a), module.format_components(e))
            }
            (Shape::Factor(parent), _) => parent.format_label(e),
            (_, other) => format!("{other:?}"),
        }
    }

    /// Subset scan: `(0:a) = bA` with `b` the least generator, if principal.
    pub fn least_generator(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&g| self.principal(g) == *set)
    }
}

/// A primitive idempotent `e` together with the local ring `eR`.
pub struct LocalFactor {
    pub idempotent: usize,
    pub ring: Arc<FiniteRing>,
    /// Factor index → parent index.
    pub embedding: Vec<usize>,
    local_of: Vec<usize>,
    /// A canonical descriptor isomorphic to the factor, when one was found.
    pub recognized: Option<RingDescriptor>,
}

impl LocalFactor {
    /// Image of a parent element under `a ↦ e·a`, as a factor index.
    pub fn project(&self, parent: &FiniteRing, a: usize) -> usize {
        self.local_of[parent.mul(self.idempotent, a)]
    }
}

pub struct LocalDecomposition {
    pub factors: Vec<LocalFactor>,
}

impl LocalDecomposition {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.ring.order()).collect()
    }
}

/// Matches a local factor against `Z/n` (characteristic equals order) or a
/// monogenic `F_p[x]/(f)`.
pub fn recognize(r: &FiniteRing) -> Option<RingDescriptor> {
    let n = r.order();
    let ch = r.additive_order(r.one());
    if ch == n {
        return Some(RingDescriptor::ZMod(n as u64));
    }
    if !crate::dvr::is_prime(ch as u64) || n > 1024 {
        return None;
    }
    let p = ch;
    let mut d = 0;
    let mut q = 1;
    while q < n {
        q *= p;
        d += 1;
    }
    if q != n {
        return None;
    }
    for t in 0..n {
        let powers: Vec<usize> = (0..=d).map(|k| r.pow(t, k as u32)).collect();
        // Map coefficient vectors c (length d) to sum c_i t^i.
        let mut image = vec![usize::MAX; n];
        let mut hit = BitSet::new(n);
        for code in 0..n {
            let c = digits(code, p as u64, d);
            let mut acc = r.zero();
            for (i, &ci) in c.iter().enumerate() {
                let term = r.mul(r.from_int(ci as i64), powers[d - 1 - i]);
                acc = r.add(acc, term);
            }
            image[code] = acc;
            hit.insert(acc);
        }
        if hit.count() != n {
            continue;
        }
        let code = image.iter().position(|&x| x == powers[d]).unwrap();
        // digits are most-significant first: c[0] pairs with t^(d-1).
        let c = digits(code, p as u64, d);
        let mut modulus = vec![0u32; d + 1];
        modulus[d] = 1;
        for i in 0..d {
            let coef = c[d - 1 - i] as u64;
            modulus[i] = ((p as u64 - coef) % p as u64) as u32;
        }
        return Some(RingDescriptor::PolyQuotient { p: p as u64, modulus, var: "x".to_string() });
    }
    None
}

/// Standard monomials of `F_p[vars]/(relations)` in graded order, larger
/// exponents on earlier variables first: `1, x, y, x^2, x*y, …`.
pub(crate) fn monomial_basis(vars: &[String], relations: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let k = vars.len();
    if relations.iter().any(|r| r.len() != k) {
        return Err(Error::construction("relation exponent vector has the wrong length"));
    }
    let in_ideal = |m: &[u32]| relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b));
    let mut bounds = vec![0u32; k];
    for (v, bound) in bounds.iter_mut().enumerate() {
        let pure = relations
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|r| r[v])
            .min();
        *bound = pure.filter(|&e| e > 0).ok_or_else(|| {
            Error::construction(format!("quotient is infinite: no pure power of {} among the relations", vars[v]))
        })?;
    }
    let mut monomials = Vec::new();
    let mut cur = vec![0u32; k];
    'outer: loop {
        if !in_ideal(&cur) {
            monomials.push(cur.clone());
        }
        for i in 0..=k {
            if i == k {
                break 'outer;
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    monomials.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    Ok(monomials)
}

pub(crate) fn format_monomial(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

pub(crate) fn format_monomial_elem(vars: &[String], monomials: &[Vec<u32>], c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (t, &coef) in c.iter().enumerate().rev() {
        if coef == 0 {
            continue;
        }
        let mono = format_monomial(vars, &monomials[t]);
        terms.push(match (coef, mono.is_empty()) {
            (_, true) => coef.to_string(),
            (1, false) => mono,
            (_, false) => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub(crate) fn validate_monic(p: u64, modulus: &[u32]) -> Result<usize> {
    if !crate::dvr::is_prime(p) {
        return Err(Error::construction(format!("{p} is not prime")));
    }
    if modulus.iter().any(|&c| c as u64 >= p) || fp_poly::trim(modulus.to_vec()) != modulus {
        return Err(Error::construction("modulus coefficients must be reduced mod p"));
    }
    match modulus.len() {
        0 | 1 => Err(Error::construction("modulus polynomial must have degree ≥ 1")),
        d if modulus[d - 1] != 1 => Err(Error::construction("modulus polynomial must be monic")),
        d => Ok(d - 1),
    }
}

/// Base-`p` digits of `i`, most significant first, padded to `d`.
pub(crate) fn digits(mut i: usize, p: u64, d: usize) -> Vec<u32> {
    let mut out = vec![0u32; d];
    for k in (0..d).rev() {
        out[k] = (i % p as usize) as u32;
        i /= p as usize;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n, DEFAULT_MAX_ELEMENTS).unwrap())
    }

    #[test]
    fn zmod_basics() {
        let r = zmod(8);
        assert_eq!(r.add(5, 6), 3);
        assert_eq!(r.inverse(3), Some(3));
        assert_eq!(r.zero_divisor_witness(6), Some(4));
        assert_eq!(r.divides(2, 6), Some(3));
        assert_eq!(zmod(12).divides(2, 3), None);
        assert_eq!(r.zero_divisor_witness(0), None);
    }

    #[test]
    fn locality() {
        assert_eq!(zmod(8).local_verdict().unwrap().to_vec(), vec![0, 2, 4, 6]);
        let (x, y) = zmod(12).local_verdict().unwrap_err();
        let r = zmod(12);
        assert!(!r.is_unit(x) && !r.is_unit(y) && r.is_unit(r.add(x, y)));
    }

    #[test]
    fn gf4_is_field() {
        let r = FiniteRing::poly_quotient(2, &[1, 1, 1], "x", 4096).unwrap();
        assert_eq!(r.order(), 4);
        assert!(r.is_field());
    }

    #[test]
    fn monomial_quotient_square_zero_maximal_ideal() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let r = FiniteRing::monomial_quotient(2, &vars, &[vec![2, 0], vec![1, 1], vec![0, 2]], 4096).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.local_verdict().unwrap().count(), 4);
        let x = r.variable("x").unwrap();
        let y = r.variable("y").unwrap();
        assert_eq!(r.mul(x, y), r.zero());
        assert_eq!(r.format(r.add(x, y)), "y+x");
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FiniteRing::zmod(1, 10).is_err());
        assert!(FiniteRing::poly_quotient(2, &[1], "x", 10).is_err());
        assert!(FiniteRing::poly_quotient(3, &[1, 2], "x", 10).is_err());
        assert!(FiniteRing::product(vec![], 10).is_err());
    }

    #[test]
    fn decomposition_of_z12() {
        let r = zmod(12);
        let d = r.local_decomposition();
        let idem: Vec<usize> = d.factors.iter().map(|f| f.idempotent).collect();
        assert_eq!(idem, vec![4, 9]);
        assert_eq!(d.factor_orders(), vec![3, 4]);
        assert_eq!(d.factors[0].recognized, Some(RingDescriptor::ZMod(3)));
        assert_eq!(d.factors[1].recognized, Some(RingDescriptor::ZMod(4)));
    }

    #[test]
    fn recognizes_gf8() {
        let r = FiniteRing::poly_quotient(2, &[1, 0, 1, 1], "x", 4096).unwrap();
        match recognize(&r) {
            Some(RingDescriptor::PolyQuotient { p: 2, modulus, .. }) => {
                assert_eq!(modulus.len(), 4);
                assert!(fp_poly::is_irreducible(&modulus, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
