//! Modules over catalog rings.
//!
//! Over a finite base a module is a finite presentation `R^n / N` whose
//! elements are the cosets of the relation span `N`, each named by its
//! lexicographically least representative. Over a DVR the supported modules
//! are formal direct sums of `A`, `A/π^k` and the fraction field `K`, all
//! handled in closed form.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::dvr::{Dvr, ValuationValue};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::ring::RingDescriptor;

/// Cap on `|R|^rank` for materialized presentations.
pub const MAX_AMBIENT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Summand {
    Free,
    /// `A / π^k A`, `k ≥ 1`.
    CyclicTorsion(u32),
    FractionField,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleDescriptor {
    FinitePresentation { base: RingDescriptor, rank: usize, relations: Vec<Vec<Elem>> },
    DvrFormalSum { base: RingDescriptor, summands: Vec<Summand> },
}

impl ModuleDescriptor {
    pub fn base(&self) -> &RingDescriptor {
        match self {
            ModuleDescriptor::FinitePresentation { base, .. } | ModuleDescriptor::DvrFormalSum { base, .. } => base,
        }
    }

    /// `A/(a_1, …, a_k)` as a rank-one presentation.
    pub fn cyclic_quotient(base: RingDescriptor, gens: Vec<Elem>) -> Self {
        let relations = gens.into_iter().map(|g| vec![g]).collect();
        ModuleDescriptor::FinitePresentation { base, rank: 1, relations }
    }

    pub fn free(base: RingDescriptor, rank: usize) -> Self {
        ModuleDescriptor::FinitePresentation { base, rank, relations: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TorsionClass {
    Zero,
    Torsion,
    TorsionFree,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniserialVerdict {
    Uniserial,
    /// `x ∉ Ay` and `y ∉ Ax`.
    NotUniserial { x: Vec<Elem>, y: Vec<Elem> },
}

/// A constructed module over a finite or DVR base.
#[derive(Debug, Clone)]
pub enum Module {
    Finite(Arc<FiniteModule>),
    Dvr(DvrModule),
}

impl Module {
    pub fn new(base: &crate::ring::Ring, desc: &ModuleDescriptor) -> Result<Module> {
        if desc.base() != base.descriptor() {
            return Err(Error::construction(format!(
                "module is over {} but the base ring is {}",
                desc.base(),
                base.descriptor()
            )));
        }
        if let Some(r) = base.finite() {
            Ok(Module::Finite(Arc::new(crate::ring::finite_module(r, desc)?)))
        } else if let Some(d) = base.dvr() {
            Ok(Module::Dvr(crate::ring::dvr_module(d, desc)?))
        } else {
            Err(Error::capability("modules need a finite or DVR base"))
        }
    }

    pub fn is_zero_module(&self) -> bool {
        match self {
            Module::Finite(m) => m.order() == 1,
            Module::Dvr(m) => m.is_zero_module(),
        }
    }

    pub fn torsion_class(&self) -> TorsionClass {
        match self {
            Module::Finite(m) => m.torsion_class(),
            Module::Dvr(m) => m.torsion_class(),
        }
    }

    pub fn is_uniserial(&self) -> UniserialVerdict {
        match self {
            Module::Finite(m) => match m.uniserial_witness() {
                None => UniserialVerdict::Uniserial,
                Some((x, y)) => UniserialVerdict::NotUniserial { x: m.label(x), y: m.label(y) },
            },
            Module::Dvr(m) => match m.uniserial_witness() {
                None => UniserialVerdict::Uniserial,
                Some((x, y)) => UniserialVerdict::NotUniserial { x, y },
            },
        }
    }

    pub fn format(&self, x: &[Elem]) -> String {
        match self {
            Module::Finite(m) => m.format_components(x),
            Module::Dvr(m) => m.format_components(x),
        }
    }
}

/// `(0:x)` for a module element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementAnnihilator {
    /// Full element set of the ideal, in ring order.
    Finite(Vec<Elem>),
    Dvr(DvrIdeal),
}

pub fn annihilator_of_element(m: &Module, x: &[Elem]) -> Result<ElementAnnihilator> {
    match m {
        Module::Finite(fm) => {
            let i = fm.index_of_label(x).ok_or_else(|| Error::repr("not a canonical module element"))?;
            let r = fm.ring();
            Ok(ElementAnnihilator::Finite(fm.annihilator(i).iter().map(|a| r.label(a).clone()).collect()))
        }
        Module::Dvr(dm) => {
            if !dm.is_canonical(x) {
                return Err(Error::repr("not a canonical module element"));
            }
            Ok(ElementAnnihilator::Dvr(dm.annihilator(x)))
        }
    }
}

// ---------------------------------------------------------------------------
// Finite presentations

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    rank: usize,
    relations: Vec<Vec<usize>>,
    radix: usize,
    ambient: usize,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
    relation_span: usize,
    add_table: Option<Vec<u32>>,
    smul_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteModule")
            .field("rank", &self.rank)
            .field("order", &self.order())
            .finish_non_exhaustive()
    }
}

const TABULATE_BELOW: usize = 1024;

impl FiniteModule {
    /// `R^rank / (row span of relations)`.
    pub fn new(ring: Arc<FiniteRing>, rank: usize, relations: Vec<Vec<usize>>) -> Result<FiniteModule> {
        if relations.iter().any(|r| r.len() != rank) {
            return Err(Error::construction("relation row length differs from module rank"));
        }
        let radix = ring.order();
        let ambient = (0..rank)
            .try_fold(1usize, |acc, _| acc.checked_mul(radix).filter(|&n| n <= MAX_AMBIENT))
            .ok_or_else(|| Error::capability(format!("ambient free module of rank {rank} is too large")))?;
        let mut m = FiniteModule {
            ring,
            rank,
            relations,
            radix,
            ambient,
            coset_of: Vec::new(),
            reps: Vec::new(),
            relation_span: 1,
            add_table: None,
            smul_table: None,
        };
        let span = m.ambient_span(&m.relations.clone());
        m.relation_span = span.len();
        let mut coset_of = vec![u32::MAX; ambient];
        let mut reps = Vec::new();
        for v in 0..ambient {
            if coset_of[v] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(v);
            for &w in &span {
                coset_of[m.ambient_add(v, w)] = id;
            }
        }
        m.coset_of = coset_of;
        m.reps = reps;
        let n = m.reps.len();
        if n <= TABULATE_BELOW {
            let mut add = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    add[i * n + j] = m.coset_of[m.ambient_add(m.reps[i], m.reps[j])];
                }
            }
            let mut smul = vec![0u32; radix * n];
            for r in 0..radix {
                for i in 0..n {
                    smul[r * n + i] = m.coset_of[m.ambient_smul(r, m.reps[i])];
                }
            }
            m.add_table = Some(add);
            m.smul_table = Some(smul);
        }
        Ok(m)
    }

    pub fn free(ring: Arc<FiniteRing>, rank: usize) -> Result<FiniteModule> {
        Self::new(ring, rank, Vec::new())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// Size of the relation submodule `N ⊆ R^rank`.
    pub fn relation_span_order(&self) -> usize {
        self.relation_span
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Number of vectors in the ambient free module `R^rank`.
    pub fn ambient_order(&self) -> usize {
        self.ambient
    }

    pub fn decode(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![0; self.rank];
        for k in (0..self.rank).rev() {
            out[k] = v % self.radix;
            v /= self.radix;
        }
        out
    }

    pub fn encode(&self, c: &[usize]) -> usize {
        c.iter().fold(0, |acc, &x| acc * self.radix + x)
    }

    fn ambient_add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(&p, &q)| self.ring.add(p, q)).collect();
        self.encode(&s)
    }

    fn ambient_smul(&self, r: usize, a: usize) -> usize {
        let s: Vec<usize> = self.decode(a).iter().map(|&x| self.ring.mul(r, x)).collect();
        self.encode(&s)
    }

    /// Submodule of `R^rank` spanned by the given vectors, as encoded members.
    fn ambient_span(&self, gens: &[Vec<usize>]) -> Vec<usize> {
        let mut seen = BitSet::new(self.ambient);
        seen.insert(0);
        let mut members = vec![0usize];
        for g in gens {
            let ge = self.encode(g);
            let old = members.clone();
            for r in 0..self.radix {
                let rg = self.ambient_smul(r, ge);
                for &x in &old {
                    let y = self.ambient_add(x, rg);
                    if seen.insert(y) {
                        members.push(y);
                    }
                }
            }
        }
        members
    }

    /// Module element represented by an ambient vector.
    pub fn element_of(&self, v: &[usize]) -> usize {
        self.coset_of[self.encode(v)] as usize
    }

    /// Canonical representative vector of an element.
    pub fn components(&self, i: usize) -> Vec<usize> {
        self.decode(self.reps[i])
    }

    pub fn label(&self, i: usize) -> Vec<Elem> {
        self.components(i).into_iter().map(|c| self.ring.label(c).clone()).collect()
    }

    /// Index of a canonical label; `None` if the payload is not a canonical representative.
    pub fn index_of_label(&self, label: &[Elem]) -> Option<usize> {
        if label.len() != self.rank {
            return None;
        }
        let v: Option<Vec<usize>> = label.iter().map(|e| self.ring.index_of(e)).collect();
        let enc = self.encode(&v?);
        let id = self.coset_of[enc] as usize;
        (self.reps[id] == enc).then_some(id)
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        match &self.add_table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.coset_of[self.ambient_add(self.reps[i], self.reps[j])] as usize,
        }
    }

    #[inline]
    pub fn smul(&self, r: usize, i: usize) -> usize {
        match &self.smul_table {
            Some(t) => t[r * self.order() + i] as usize,
            None => self.coset_of[self.ambient_smul(r, self.reps[i])] as usize,
        }
    }

    pub fn neg(&self, i: usize) -> usize {
        self.smul(self.ring.neg(self.ring.one()), i)
    }

    /// Cyclic submodule `R·x`.
    pub fn cyclic(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.order(), (0..self.radix).map(|r| self.smul(r, x)))
    }

    /// Submodule generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> BitSet {
        let mut b = SpanBuilder::new(self);
        for &g in gens {
            b.push(g);
        }
        b.into_set()
    }

    /// `(0:x) = {a : a·x = 0}` as a set of ring indices.
    pub fn annihilator(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.radix, (0..self.radix).filter(|&a| self.smul(a, x) == self.zero()))
    }

    /// Classification by scanning every nonzero element for a nonzero annihilator.
    pub fn torsion_class(&self) -> TorsionClass {
        if self.order() == 1 {
            return TorsionClass::Zero;
        }
        let (mut tors, mut free) = (false, false);
        for x in 1..self.order() {
            if self.annihilator(x).count() > 1 {
                tors = true;
            } else {
                free = true;
            }
        }
        match (tors, free) {
            (true, false) => TorsionClass::Torsion,
            (false, true) => TorsionClass::TorsionFree,
            _ => TorsionClass::Mixed,
        }
    }

    /// Least scalar `a` with `a·y = x`.
    pub fn scalar_divides(&self, y: usize, x: usize) -> Option<usize> {
        (0..self.radix).find(|&a| self.smul(a, y) == x)
    }

    /// Exhaustive pair scan; on failure returns the least incomparable pair.
    pub fn uniserial_witness(&self) -> Option<(usize, usize)> {
        let cyc: Vec<BitSet> = (0..self.order()).map(|x| self.cyclic(x)).collect();
        for x in 0..self.order() {
            for y in x + 1..self.order() {
                if !cyc[y].contains(x) && !cyc[x].contains(y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Some `g` with `R·g = M`, preferring the least index.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.cyclic(g).count() == self.order())
    }

    pub fn format_components(&self, e: &[Elem]) -> String {
        format_components(e, |x| self.ring.format_label(x))
    }

    pub fn format(&self, i: usize) -> String {
        self.format_components(&self.label(i))
    }
}

pub(crate) fn format_components(e: &[Elem], f: impl Fn(&Elem) -> String) -> String {
    if e.len() == 1 {
        f(&e[0])
    } else {
        let parts: Vec<String> = e.iter().map(f).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Incrementally grown submodule of a finite module.
pub struct SpanBuilder<'a> {
    module: &'a FiniteModule,
    set: BitSet,
    members: Vec<usize>,
}

impl<'a> SpanBuilder<'a> {
    pub fn new(module: &'a FiniteModule) -> Self {
        let mut set = BitSet::new(module.order());
        set.insert(module.zero());
        SpanBuilder { module, set, members: vec![module.zero()] }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Adds `R·g`; returns false if `g` was already in the span.
    pub fn push(&mut self, g: usize) -> bool {
        if self.set.contains(g) {
            return false;
        }
        let m = self.module;
        let multiples: Vec<usize> = m.cyclic(g).iter().collect();
        let old = self.members.clone();
        for &rg in &multiples {
            for &x in &old {
                let y = m.add(x, rg);
                if self.set.insert(y) {
                    self.members.push(y);
                }
            }
        }
        true
    }

    pub fn into_set(self) -> BitSet {
        self.set
    }

    pub fn set(&self) -> &BitSet {
        &self.set
    }
}

// ---------------------------------------------------------------------------
// Chain rings and Warfield diagonalization

/// A finite local ring whose maximal ideal is principal, with uniformizer `π`.
pub struct ChainRing<'a> {
    ring: &'a FiniteRing,
    pi: usize,
    length: u32,
    powers: Vec<BitSet>,
}

impl<'a> ChainRing<'a> {
    pub fn new(ring: &'a FiniteRing) -> Result<Self> {
        let m = ring
            .local_verdict()
            .map_err(|_| Error::precondition("ring is not local, hence not a chain ring"))?;
        let pi = ring
            .least_generator(&m)
            .ok_or_else(|| Error::precondition("maximal ideal is not principal; not a chain ring"))?;
        // Ideals of a chain ring are exactly the powers of the maximal ideal.
        let mut powers = vec![BitSet::from_indices(ring.order(), 0..ring.order())];
        let mut x = ring.one();
        loop {
            x = ring.mul(x, pi);
            powers.push(ring.principal(x));
            if x == ring.zero() {
                break;
            }
        }
        let length = powers.len() as u32 - 1;
        Ok(ChainRing { ring, pi, length, powers })
    }

    pub fn uniformizer(&self) -> usize {
        self.pi
    }

    /// Nilpotency index `n` with `π^n = 0 ≠ π^(n-1)`.
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn pi_pow(&self, k: u32) -> usize {
        self.ring.pow(self.pi, k)
    }

    /// Largest `k` with `a ∈ π^k R`; `length` for zero.
    pub fn valuation(&self, a: usize) -> u32 {
        (0..=self.length).rev().find(|&k| self.powers[k as usize].contains(a)).unwrap()
    }

    /// `|π^k R|`.
    pub fn power_order(&self, k: u32) -> usize {
        self.powers[k.min(self.length) as usize].count()
    }

    /// `|R / π^k R|`.
    pub fn cyclic_order(&self, k: u32) -> usize {
        self.ring.order() / self.power_order(k)
    }

    /// `|{m ∈ R/π^k R : π^j m = 0}|`.
    pub fn cyclic_torsion_count(&self, k: u32, j: u32) -> usize {
        if j >= k {
            self.cyclic_order(k)
        } else {
            self.power_order(k - j) / self.power_order(k)
        }
    }
}

/// Exact arithmetic needed to diagonalize over a ring whose elements are
/// `unit · π^k`.
pub(crate) trait ValuedArith {
    type E: Clone;
    /// `None` for zero.
    fn val(&self, a: &Self::E) -> Option<u32>;
    /// `q` with `q·den = num`, given `val(den) ≤ val(num)`.
    fn exact_quotient(&self, num: &Self::E, den: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

impl ValuedArith for ChainRing<'_> {
    type E = usize;
    fn val(&self, a: &usize) -> Option<u32> {
        (*a != self.ring.zero()).then(|| self.valuation(*a))
    }
    fn exact_quotient(&self, num: &usize, den: &usize) -> usize {
        self.ring.divides(*den, *num).expect("valuation order guarantees divisibility")
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.ring.mul(*a, *b)
    }
    fn sub(&self, a: &usize, b: &usize) -> usize {
        self.ring.sub(*a, *b)
    }
}

impl ValuedArith for Dvr {
    type E = Elem;
    fn val(&self, a: &Elem) -> Option<u32> {
        self.valuation(a).finite().map(|v| v as u32)
    }
    fn exact_quotient(&self, num: &Elem, den: &Elem) -> Elem {
        self.div(num, den).expect("nonzero pivot")
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Dvr::mul(self, a, b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Dvr::sub(self, a, b)
    }
}

/// Pivot on a minimal-valuation entry (ties: lowest row, then column), clear
/// its row and column, recurse. Returns one exponent per surviving cyclic
/// summand: `Some(k)` for `R/π^k` (k ≥ 1), `None` for a free summand. Unit
/// pivots contribute nothing.
pub(crate) fn diagonalize<R: ValuedArith>(arith: &R, matrix: &[Vec<R::E>], cols: usize) -> Vec<Option<u32>> {
    let mut m: Vec<Vec<R::E>> = matrix.to_vec();
    let mut rows_alive: Vec<bool> = vec![true; m.len()];
    let mut cols_alive: Vec<bool> = vec![true; cols];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in m.iter().enumerate() {
            if !rows_alive[i] {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                if !cols_alive[j] {
                    continue;
                }
                if let Some(v) = arith.val(e) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        let pivot = m[pi][pj].clone();
        for r in 0..m.len() {
            if r == pi || !rows_alive[r] || arith.val(&m[r][pj]).is_none() {
                continue;
            }
            let f = arith.exact_quotient(&m[r][pj], &pivot);
            for c in 0..cols {
                let t = arith.mul(&f, &m[pi][c]);
                m[r][c] = arith.sub(&m[r][c], &t);
            }
        }
        for c in 0..cols {
            if c == pj || !cols_alive[c] || arith.val(&m[pi][c]).is_none() {
                continue;
            }
            let f = arith.exact_quotient(&m[pi][c], &pivot);
            for row in m.iter_mut() {
                let t = arith.mul(&f, &row[pj]);
                row[c] = arith.sub(&row[c], &t);
            }
        }
        rows_alive[pi] = false;
        cols_alive[pj] = false;
        if v > 0 {
            out.push(Some(v));
        }
    }
    out.extend(cols_alive.iter().filter(|&&a| a).map(|_| None));
    out
}

/// `M ≅ ⊕ R/a_i R` over a finite chain ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarfieldDecomposition {
    /// `a_i = π^(k_i)`, or 0 for a free summand; sorted by exponent.
    pub generators: Vec<usize>,
    /// Exponents `k_i`, with the chain length standing for a free summand.
    pub exponents: Vec<u32>,
}

impl WarfieldDecomposition {
    pub fn module_order(&self, chain: &ChainRing) -> usize {
        self.exponents.iter().map(|&k| chain.cyclic_order(k)).product()
    }

    /// `h(j) = |{m : π^j m = 0}|` of the direct sum.
    pub fn torsion_histogram(&self, chain: &ChainRing, j: u32) -> usize {
        self.exponents.iter().map(|&k| chain.cyclic_torsion_count(k, j)).product()
    }

    /// Number of module elements `m` with `|(0:m)| = n`, keyed by `n`.
    ///
    /// An element killed by `π^t` but not `π^(t-1)` has annihilator `π^t R`.
    pub fn annihilator_histogram(&self, chain: &ChainRing) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        let mut below = 0;
        for t in 0..=chain.length() {
            let h = self.torsion_histogram(chain, t);
            if h > below {
                *out.entry(chain.power_order(t)).or_insert(0) += h - below;
            }
            below = h;
        }
        out
    }
}

/// Decomposes `R^cols / rowspan(matrix)` over a finite chain ring.
pub fn warfield_decompose(ring: &FiniteRing, matrix: &[Vec<usize>], cols: usize) -> Result<WarfieldDecomposition> {
    let chain = ChainRing::new(ring)?;
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::Usage("ragged presentation matrix".into()));
    }
    let mut exponents: Vec<u32> =
        diagonalize(&chain, matrix, cols).into_iter().map(|k| k.unwrap_or(chain.length())).collect();
    exponents.sort_unstable();
    let generators = exponents.iter().map(|&k| chain.pi_pow(k)).collect();
    Ok(WarfieldDecomposition { generators, exponents })
}

// ---------------------------------------------------------------------------
// DVR formal sums

/// Ideal of a DVR: `0` or `π^k A` (k = 0 is the whole ring).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DvrIdeal {
    Zero,
    PiPower(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DvrModule {
    base: Dvr,
    summands: Vec<Summand>,
}

impl DvrModule {
    pub fn new(base: Dvr, summands: Vec<Summand>) -> Result<Self> {
        if summands.iter().any(|s| matches!(s, Summand::CyclicTorsion(0))) {
            return Err(Error::construction("torsion summand A/π^0 is zero; omit it"));
        }
        Ok(DvrModule { base, summands })
    }

    /// Lowers `A^cols / rowspan(matrix)` to its formal-sum shape.
    pub fn from_presentation(base: Dvr, matrix: &[Vec<Elem>], cols: usize) -> Result<Self> {
        if matrix.iter().flatten().any(|e| !base.is_canonical_ring(e)) {
            return Err(Error::repr("relation entries must lie in the DVR"));
        }
        let mut summands: Vec<Summand> = diagonalize(&base, matrix, cols)
            .into_iter()
            .map(|k| k.map_or(Summand::Free, Summand::CyclicTorsion))
            .collect();
        summands.sort_by_key(|s| match s {
            Summand::Free => (0, 0),
            Summand::CyclicTorsion(k) => (1, *k),
            Summand::FractionField => (2, 0),
        });
        Self::new(base, summands)
    }

    pub fn base(&self) -> &Dvr {
        &self.base
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_zero_module(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![self.base.zero(); self.summands.len()]
    }

    /// The element with `1` in component `i`.
    pub fn unit_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero();
        v[i] = self.base.one();
        v
    }

    pub fn is_zero(&self, x: &[Elem]) -> bool {
        x.iter().all(|c| self.base.is_zero(c))
    }

    pub fn is_canonical(&self, x: &[Elem]) -> bool {
        x.len() == self.summands.len()
            && x.iter().zip(&self.summands).all(|(c, s)| match s {
                Summand::Free => self.base.is_canonical_ring(c),
                Summand::FractionField => self.base.is_canonical_field(c),
                Summand::CyclicTorsion(k) => {
                    self.base.is_canonical_ring(c) && self.base.reduce_mod_pi_pow(c, *k) == *c
                }
            })
    }

    /// Canonical form of a raw component value (torsion components reduced mod `π^k`).
    pub fn canonical_component(&self, i: usize, c: Elem) -> Result<Elem> {
        match self.summands[i] {
            Summand::FractionField => Ok(c),
            Summand::Free if self.base.in_ring(&c) => Ok(c),
            Summand::CyclicTorsion(k) if self.base.in_ring(&c) => Ok(self.base.reduce_mod_pi_pow(&c, k)),
            _ => Err(Error::repr("component does not lie in the base ring")),
        }
    }

    fn fix(&self, i: usize, c: Elem) -> Elem {
        match self.summands[i] {
            Summand::CyclicTorsion(k) => self.base.reduce_mod_pi_pow(&c, k),
            _ => c,
        }
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).enumerate().map(|(i, (a, b))| self.fix(i, self.base.add(a, b))).collect()
    }

    pub fn neg(&self, x: &[Elem]) -> Vec<Elem> {
        x.iter().enumerate().map(|(i, a)| self.fix(i, self.base.neg(a))).collect()
    }

    pub fn smul(&self, a: &Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().enumerate().map(|(i, c)| self.fix(i, self.base.mul(a, c))).collect()
    }

    /// Some `z` with `a·z = t`, for `a ≠ 0`.
    pub fn divide_by_scalar(&self, a: &Elem, t: &[Elem]) -> Option<Vec<Elem>> {
        let b = &self.base;
        let va = b.valuation(a);
        t.iter()
            .zip(&self.summands)
            .map(|(c, s)| {
                if b.is_zero(c) {
                    return Some(b.zero());
                }
                match s {
                    Summand::FractionField => b.div(c, a),
                    Summand::Free => (b.valuation(c) >= va).then(|| b.div(c, a).unwrap()),
                    Summand::CyclicTorsion(k) => {
                        (b.valuation(c) >= va).then(|| b.reduce_mod_pi_pow(&b.div(c, a).unwrap(), *k))
                    }
                }
            })
            .collect()
    }

    /// Some scalar `c ∈ A` with `c·x = y`.
    pub fn scalar_solve(&self, x: &[Elem], y: &[Elem]) -> Option<Elem> {
        let b = &self.base;
        let mut fixed: Option<Elem> = None;
        let mut best: Option<(u32, Elem)> = None;
        for ((xi, yi), s) in x.iter().zip(y).zip(&self.summands) {
            if b.is_zero(xi) {
                if !b.is_zero(yi) {
                    return None;
                }
                continue;
            }
            let r = b.div(yi, xi).unwrap();
            if !b.in_ring(&r) {
                return None;
            }
            match s {
                Summand::Free | Summand::FractionField => {
                    fixed.get_or_insert(r);
                }
                Summand::CyclicTorsion(k) => {
                    let m = b.valuation(xi).finite().unwrap() as u32;
                    let modulus = k - m;
                    if best.as_ref().is_none_or(|(e, _)| modulus > *e) {
                        best = Some((modulus, r));
                    }
                }
            }
        }
        let c = fixed.or(best.map(|(_, r)| r)).unwrap_or_else(|| b.zero());
        (self.smul(&c, x) == y).then_some(c)
    }

    /// `(0:x)` in closed form.
    pub fn annihilator(&self, x: &[Elem]) -> DvrIdeal {
        let b = &self.base;
        let mut need = 0u32;
        for (c, s) in x.iter().zip(&self.summands) {
            if b.is_zero(c) {
                continue;
            }
            match s {
                Summand::Free | Summand::FractionField => return DvrIdeal::Zero,
                Summand::CyclicTorsion(k) => {
                    let m = b.valuation(c).finite().unwrap() as u32;
                    need = need.max(k - m);
                }
            }
        }
        DvrIdeal::PiPower(need)
    }

    pub fn ideal_contains(&self, ideal: DvrIdeal, a: &Elem) -> bool {
        match ideal {
            DvrIdeal::Zero => self.base.is_zero(a),
            DvrIdeal::PiPower(k) => self.base.valuation(a) >= ValuationValue::Finite(k as i64),
        }
    }

    pub fn torsion_class(&self) -> TorsionClass {
        if self.summands.is_empty() {
            return TorsionClass::Zero;
        }
        let tors = self.summands.iter().any(|s| matches!(s, Summand::CyclicTorsion(_)));
        let free = self.summands.iter().any(|s| !matches!(s, Summand::CyclicTorsion(_)));
        match (tors, free) {
            (true, false) => TorsionClass::Torsion,
            (false, true) => TorsionClass::TorsionFree,
            _ => TorsionClass::Mixed,
        }
    }

    /// A module with at most one summand is uniserial (its submodules are
    /// determined by valuation). Two or more summands over a domain never are;
    /// the witness is a pair of unit vectors.
    pub fn uniserial_witness(&self) -> Option<(Vec<Elem>, Vec<Elem>)> {
        (self.summands.len() >= 2).then(|| (self.unit_vector(0), self.unit_vector(1)))
    }

    /// True when no summand is the fraction field.
    pub fn is_finitely_generated(&self) -> bool {
        !self.summands.contains(&Summand::FractionField)
    }

    pub fn format_components(&self, e: &[Elem]) -> String {
        format_components(e, |x| self.base.format(x))
    }
}
