//! Syzygies, free resolutions and projective-dimension verdicts over finite
//! rings.
//!
//! Kernels are found by enumerating the ambient free module, so every step is
//! bounded by [`MAX_AMBIENT`](crate::module::MAX_AMBIENT).

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::ideal::minimal_generators;
use crate::module::{ChainRing, FiniteModule, SpanBuilder};

/// Default number of resolution steps.
pub const DEFAULT_MAX_STEPS: usize = 8;

/// Rows index the target, columns the source; entries are ring indices.
pub type Matrix = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syzygy {
    /// Kernel generators as vectors of the source free module.
    pub generators: Vec<Vec<usize>>,
    pub kernel_order: usize,
}

/// Generators of `{v : Mv = 0}` for `M : R^cols → R^rows`.
pub fn syzygy_generators(r: &Arc<FiniteRing>, matrix: &Matrix, cols: usize) -> Result<Syzygy> {
    if matrix.iter().any(|row| row.len() != cols) {
        return Err(Error::Usage("ragged matrix".into()));
    }
    let source = FiniteModule::free(r.clone(), cols)?;
    let target = FiniteModule::free(r.clone(), matrix.len())?;
    let kernel = kernel_of(&source, |v| target.encode(&apply(r, matrix, v)));
    let gens = generators_of(&source, &kernel);
    Ok(Syzygy { generators: gens.iter().map(|&g| source.components(g)).collect(), kernel_order: kernel.len() })
}

fn apply(r: &FiniteRing, m: &Matrix, v: &[usize]) -> Vec<usize> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(r.zero(), |acc, (&a, &x)| r.add(acc, r.mul(a, x))))
        .collect()
}

/// Members of the free module (as element indices) that `f` sends to zero.
fn kernel_of(source: &FiniteModule, f: impl Fn(&[usize]) -> usize) -> Vec<usize> {
    (0..source.order()).filter(|&i| f(&source.components(i)) == 0).collect()
}

/// Greedy generators of a submodule `K` given by its sorted members: take
/// each member not yet in `span(chosen) + J·K` (J the nilradical, which is
/// the Jacobson radical of a finite ring), then drop any generator spanned by
/// the others.
fn generators_of(ambient: &FiniteModule, members: &[usize]) -> Vec<usize> {
    let r = ambient.ring();
    let set = BitSet::from_indices(ambient.order(), members.iter().copied());
    let radical_gens = minimal_generators(r, &r.nilradical());
    let mut span = SpanBuilder::new(ambient);
    for &j in &radical_gens {
        for &x in members {
            span.push(ambient.smul(j, x));
        }
    }
    let mut chosen = Vec::new();
    for &x in members {
        if span.len() == members.len() {
            break;
        }
        if !span.contains(x) {
            chosen.push(x);
            span.push(x);
        }
    }
    debug_assert!(span.set().is_subset(&set));
    let mut k = 0;
    while k < chosen.len() {
        let others: Vec<usize> = chosen.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &g)| g).collect();
        if ambient.span(&others).contains(chosen[k]) {
            chosen.remove(k);
        } else {
            k += 1;
        }
    }
    chosen
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StepCertificate {
    /// Exactness is certified at `F_step` (with `F_0 → M` for step 0).
    pub step: usize,
    pub composition_zero: bool,
    pub kernel_order: usize,
    pub image_order: usize,
}

impl StepCertificate {
    pub fn exact(&self) -> bool {
        self.composition_zero && self.kernel_order == self.image_order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Recurrence {
    /// First step whose kernel state was seen before.
    pub offset: usize,
    pub period: usize,
}

#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub ring: Arc<FiniteRing>,
    /// `D_1, D_2, …`; `D_i` has `betti[i-1]` rows and `betti[i]` columns.
    pub maps: Vec<Matrix>,
    pub betti: Vec<usize>,
    pub certificates: Vec<StepCertificate>,
    /// Kernel-state recurrence `(rank, kernel members)`, if any.
    pub recurrence: Option<Recurrence>,
    /// Set when a kernel vanished, ending the resolution.
    pub terminated: bool,
    pub max_steps: usize,
    /// Generators are minimal only over a local ring.
    pub minimal: bool,
}

impl FreeResolution {
    pub fn is_exact(&self) -> bool {
        self.certificates.iter().all(StepCertificate::exact)
    }

    /// Checks `D_i · D_{i+1} = 0` entrywise by direct multiplication.
    pub fn compositions_vanish(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.iter().all(|row| {
                (0..b.first().map_or(0, |r| r.len())).all(|j| {
                    row.iter()
                        .zip(b)
                        .fold(self.ring.zero(), |acc, (&x, brow)| self.ring.add(acc, self.ring.mul(x, brow[j])))
                        == self.ring.zero()
                })
            })
        })
    }

    pub fn format_matrix(&self, m: &Matrix) -> Vec<Vec<String>> {
        m.iter().map(|row| row.iter().map(|&x| self.ring.format(x)).collect()).collect()
    }
}

/// Iterated syzygies of `M` for up to `max_steps` maps.
pub fn minimal_free_resolution(module: &FiniteModule, max_steps: usize) -> Result<FreeResolution> {
    let r = module.ring().clone();
    let local = r.is_local();
    let m_gens = {
        let all: Vec<usize> = (0..module.order()).collect();
        generators_of(module, &all)
    };
    let b0 = m_gens.len();
    let mut betti = vec![b0];
    let mut maps = Vec::new();
    let mut certificates = Vec::new();
    let mut seen: HashMap<(usize, BitSet), usize> = HashMap::new();
    let mut recurrence = None;
    let mut terminated = false;

    let mut source = FiniteModule::free(r.clone(), b0)?;
    let eval = |v: &[usize]| {
        v.iter().zip(&m_gens).fold(module.zero(), |acc, (&c, &g)| module.add(acc, module.smul(c, g)))
    };
    let mut kernel = kernel_of(&source, eval);
    let mut previous: Option<Matrix> = None;
    for step in 0..=max_steps {
        if kernel.len() == 1 {
            terminated = true;
            certificates.push(StepCertificate {
                step,
                composition_zero: true,
                kernel_order: 1,
                image_order: 1,
            });
            betti.push(0);
            break;
        }
        if step == max_steps {
            break;
        }
        let state = (source.rank(), BitSet::from_indices(source.order(), kernel.iter().copied()));
        if recurrence.is_none() {
            if let Some(&first) = seen.get(&state) {
                recurrence = Some(Recurrence { offset: first, period: step - first });
            } else {
                seen.insert(state, step);
            }
        }
        let gens = generators_of(&source, &kernel);
        let cols: Vec<Vec<usize>> = gens.iter().map(|&g| source.components(g)).collect();
        let rows = source.rank();
        let d: Matrix = (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let image = source.span(&gens).count();
        let composition_zero = match (&previous, step) {
            (_, 0) => cols.iter().all(|c| eval(c) == module.zero()),
            (Some(p), _) => cols.iter().all(|c| apply(&r, p, c).iter().all(|&x| x == r.zero())),
            (None, _) => unreachable!(),
        };
        certificates.push(StepCertificate { step, composition_zero, kernel_order: kernel.len(), image_order: image });
        let next = FiniteModule::free(r.clone(), gens.len())?;
        let target = &source;
        kernel = kernel_of(&next, |v| target.encode(&apply(&r, &d, v)));
        betti.push(gens.len());
        maps.push(d.clone());
        previous = Some(d);
        source = next;
    }
    Ok(FreeResolution {
        ring: r,
        maps,
        betti,
        certificates,
        recurrence,
        terminated,
        max_steps,
        minimal: local,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdVerdict {
    /// `A/aA = 0`.
    ZeroModule,
    Projective,
    AtMostOne,
    /// `(0:a) = bA`, `(0:b) = cA`, `(0:c) = bA`.
    InfiniteByCycle { b: Elem, c: Elem },
    InfiniteByPeriodicity { period: usize, offset: usize },
    UnknownAfter(usize),
}

impl PdVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, PdVerdict::InfiniteByCycle { .. } | PdVerdict::InfiniteByPeriodicity { .. })
    }

    fn rank(&self) -> u8 {
        match self {
            PdVerdict::ZeroModule => 0,
            PdVerdict::Projective => 1,
            PdVerdict::AtMostOne => 2,
            PdVerdict::UnknownAfter(_) => 3,
            PdVerdict::InfiniteByCycle { .. } | PdVerdict::InfiniteByPeriodicity { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPd {
    pub idempotent: Elem,
    pub order: usize,
    pub element: Elem,
    pub verdict: PdVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPd {
    pub verdict: PdVerdict,
    /// Per local factor, when the ring is not local.
    pub factors: Vec<FactorPd>,
}

/// `pd(A/aA)`. Over a non-local ring the module splits along the local
/// factors and the verdict is the worst factor verdict.
pub fn projective_dimension_cyclic(r: &Arc<FiniteRing>, a: usize, max_steps: usize) -> Result<CyclicPd> {
    if r.is_local() {
        return Ok(CyclicPd { verdict: pd_cyclic_local(r, a, max_steps)?, factors: Vec::new() });
    }
    let dec = r.local_decomposition();
    let mut factors = Vec::new();
    for f in &dec.factors {
        let af = f.project(r, a);
        let verdict = pd_cyclic_local(&f.ring, af, max_steps)?;
        factors.push(FactorPd {
            idempotent: r.label(f.idempotent).clone(),
            order: f.ring.order(),
            element: f.ring.label(af).clone(),
            verdict,
        });
    }
    let all_zero = factors.iter().all(|f| f.verdict == PdVerdict::ZeroModule);
    let verdict = if all_zero {
        PdVerdict::ZeroModule
    } else {
        let worst = factors.iter().max_by_key(|f| f.verdict.rank()).unwrap();
        match worst.verdict {
            PdVerdict::ZeroModule => PdVerdict::Projective,
            ref v => v.clone(),
        }
    };
    Ok(CyclicPd { verdict, factors })
}

fn pd_cyclic_local(r: &Arc<FiniteRing>, a: usize, max_steps: usize) -> Result<PdVerdict> {
    if a == r.zero() {
        return Ok(PdVerdict::Projective);
    }
    if r.is_unit(a) {
        return Ok(PdVerdict::ZeroModule);
    }
    let ann_a = r.annihilator(a);
    if ann_a.count() == 1 {
        return Ok(PdVerdict::AtMostOne);
    }
    if let Some((b, c)) = annihilator_cycle(r, a) {
        return Ok(PdVerdict::InfiniteByCycle { b: r.label(b).clone(), c: r.label(c).clone() });
    }
    let m = FiniteModule::new(r.clone(), 1, vec![vec![a]])?;
    let res = minimal_free_resolution(&m, max_steps)?;
    Ok(match res.recurrence {
        Some(rec) => PdVerdict::InfiniteByPeriodicity { period: rec.period, offset: rec.offset },
        None if res.terminated && res.betti.len() == 2 => PdVerdict::Projective,
        None => PdVerdict::UnknownAfter(max_steps),
    })
}

/// Least generators `b`, `c` with `(0:a) = bA`, `(0:b) = cA`, `(0:c) = bA`.
pub fn annihilator_cycle(r: &FiniteRing, a: usize) -> Option<(usize, usize)> {
    let ann_a = r.annihilator(a);
    let b = r.least_generator(&ann_a)?;
    let ann_b = r.annihilator(b);
    let c = r.least_generator(&ann_b)?;
    (r.annihilator(c) == r.principal(b)).then_some((b, c))
}

/// Over a finite local ring, `aA` is free exactly when `(0:a) = 0`.
pub fn is_free_principal_ideal(r: &FiniteRing, a: usize) -> Result<bool> {
    if !r.is_local() {
        return Err(Error::precondition("freeness of aA is decided over local rings only"));
    }
    Ok(r.annihilator(a).count() == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoDClass {
    FieldHenceProjectiveWorld,
    NotA2dRingForAnyD { witness: Elem, annihilator_generator: Elem, verdict: PdVerdict },
}

/// Field, or not a (2,d)-ring for any d with `π` as the witness.
pub fn classify_2d(r: &Arc<FiniteRing>, max_steps: usize) -> Result<TwoDClass> {
    let chain = ChainRing::new(r)?;
    if r.is_field() {
        return Ok(TwoDClass::FieldHenceProjectiveWorld);
    }
    let pi = chain.uniformizer();
    let ann = r.annihilator(pi);
    let gen = r
        .least_generator(&ann)
        .ok_or_else(|| Error::precondition("annihilator of the uniformizer is not principal"))?;
    let verdict = pd_cyclic_local(r, pi, max_steps)?;
    Ok(TwoDClass::NotA2dRingForAnyD {
        witness: r.label(pi).clone(),
        annihilator_generator: r.label(gen).clone(),
        verdict,
    })
}
