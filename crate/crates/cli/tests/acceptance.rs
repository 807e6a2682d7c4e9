//! Acceptance sweep. Every expected value is recomputed here by brute force
//! or by a closed-form rule written independently of the library.

use std::collections::{BTreeMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringlab_core::catalog::{chain_ring_catalog, module_catalog, CatalogRing};
use ringlab_core::expr::{module_from_str, ring_from_str, BinOp, Loc};
use ringlab_core::trivext::TrivAnnihilatorShape;
use ringlab_core::{
    annihilator_ideal, annihilator_in_triv_ext, classify_2d, derive_seed, is_arithmetical, is_free_principal_ideal,
    is_valuation_ring, minimal_free_resolution, parse_elem, parse_module, parse_ring, predict_valuation,
    projective_dimension_cyclic, ring_catalog, warfield_decompose, ChainRing, DivisibilityVerdict, DvrIdeal,
    DvrTrivExt, ElemExpr, FiniteModule, FiniteRing, Module, ModuleExpr, PdVerdict, Ring, RingExpr, SampleBounds,
    Span, TwoDClass,
};
use ringlab_core::Elem;

const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn rng(key: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(SEED, key))
}

fn finite(expr: &str) -> Arc<FiniteRing> {
    CatalogRing::parse(expr).unwrap().ring()
}

// ---------------------------------------------------------------------------
// Brute-force oracles over element tables

/// Fixed-width bitset over `n` indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// Whether the principal ideals `Rx` of a ring given by its multiplication
/// are totally ordered by inclusion. For a finite ring this is the same as
/// every ideal being comparable, since each ideal is a finite sum of
/// principal ones.
fn principal_chain(n: usize, mul: impl Fn(usize, usize) -> usize) -> bool {
    let mut ps: Vec<Bits> = (0..n)
        .map(|x| {
            let mut b = Bits::new(n);
            for r in 0..n {
                b.set(mul(r, x));
            }
            b
        })
        .collect();
    ps.sort_by_key(Bits::count);
    ps.dedup();
    ps.windows(2).all(|w| w[0].subset_of(&w[1]))
}

fn brute_is_field(r: &FiniteRing) -> bool {
    (0..r.order()).filter(|&a| a != r.zero()).all(|a| (0..r.order()).any(|b| r.mul(a, b) == r.one()))
}

/// `A ∝ E` multiplication on indices `a * |E| + e`: `(a,e)(b,f) = (ab, af + be)`.
fn triv_mul<'a>(a: &'a FiniteRing, e: &'a FiniteModule) -> impl Fn(usize, usize) -> usize + 'a {
    let m = e.order();
    move |x, y| {
        let (xa, xe) = (x / m, x % m);
        let (ya, ye) = (y / m, y % m);
        a.mul(xa, ya) * m + e.add(e.smul(xa, ye), e.smul(ya, xe))
    }
}

/// Ideal lattice of a ring of order ≤ 64 as bitmasks, by closing the
/// principal ideals under sums.
fn ideal_masks(r: &FiniteRing) -> Vec<u64> {
    let n = r.order();
    assert!(n <= 64);
    let principal = |x: usize| (0..n).fold(0u64, |m, c| m | 1 << r.mul(c, x));
    let mut ideals: Vec<u64> = (0..n).map(principal).collect::<HashSet<_>>().into_iter().collect();
    loop {
        let known: HashSet<u64> = ideals.iter().copied().collect();
        let mut fresh = HashSet::new();
        for &i in &ideals {
            for &j in &ideals {
                let s = mask_sum(r, i, j);
                if !known.contains(&s) {
                    fresh.insert(s);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        ideals.extend(fresh);
    }
    ideals.sort_by_key(|m| (m.count_ones(), *m));
    ideals
}

fn mask_sum(r: &FiniteRing, i: u64, j: u64) -> u64 {
    let mut s = 0u64;
    for x in (0..r.order()).filter(|&x| i >> x & 1 == 1) {
        for y in (0..r.order()).filter(|&y| j >> y & 1 == 1) {
            s |= 1 << r.add(x, y);
        }
    }
    s
}

fn vectors(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn row_span(r: &FiniteRing, rows: &[Vec<usize>], cols: usize) -> HashSet<Vec<usize>> {
    let mut span: HashSet<Vec<usize>> = HashSet::from([vec![r.zero(); cols]]);
    for row in rows {
        let mut next = HashSet::new();
        for v in &span {
            for c in 0..r.order() {
                next.insert(v.iter().zip(row).map(|(&x, &y)| r.add(x, r.mul(c, y))).collect::<Vec<_>>());
            }
        }
        span = next;
    }
    span
}

/// `|R^cols / rowspan|` and the number of cosets with each annihilator size.
fn coset_census(r: &FiniteRing, rows: &[Vec<usize>], cols: usize) -> (usize, BTreeMap<usize, usize>) {
    let n = row_span(r, rows, cols);
    let all = vectors(r.order(), cols);
    let mut hist = BTreeMap::new();
    for v in &all {
        let ann = (0..r.order()).filter(|&c| n.contains(&v.iter().map(|&x| r.mul(c, x)).collect::<Vec<_>>())).count();
        *hist.entry(ann).or_insert(0) += 1;
    }
    for c in hist.values_mut() {
        *c /= n.len();
    }
    (all.len() / n.len(), hist)
}

// ---------------------------------------------------------------------------
// Residue-ring helpers working on plain integers

fn int_of(r: &FiniteRing, i: usize) -> u64 {
    match r.label(i) {
        Elem::Int(v) => *v,
        other => panic!("expected a residue, got {other:?}"),
    }
}

fn residue_matrix(r: &FiniteRing, m: &[Vec<usize>]) -> Vec<Vec<u64>> {
    m.iter().map(|row| row.iter().map(|&i| int_of(r, i)).collect()).collect()
}

fn apply_mod(m: &[Vec<u64>], v: &[u64], n: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % n).collect()
}

fn residue_vectors(n: u64, len: usize) -> Vec<Vec<u64>> {
    vectors(n as usize, len).into_iter().map(|v| v.into_iter().map(|x| x as u64).collect()).collect()
}

/// Checks `F_k → F_{k-1} → … → F_0 → M → 0` over `Z/n` by enumerating
/// kernels and images, with `D_i` of shape `betti[i-1] × betti[i]`.
fn check_exact_mod(maps: &[Vec<Vec<u64>>], betti: &[usize], n: u64, module_order: usize) -> Result<(), String> {
    let image0: HashSet<Vec<u64>> = residue_vectors(n, betti[1]).iter().map(|v| apply_mod(&maps[0], v, n)).collect();
    ensure((n as usize).pow(betti[0] as u32) / image0.len() == module_order, || "F_0 → M has the wrong cokernel".into())?;
    for i in 0..maps.len() - 1 {
        let (d, e) = (&maps[i], &maps[i + 1]);
        let src = residue_vectors(n, betti[i + 1]);
        let kernel = src.iter().filter(|v| apply_mod(d, v, n).iter().all(|&x| x == 0)).count();
        let image: HashSet<Vec<u64>> = residue_vectors(n, betti[i + 2]).iter().map(|v| apply_mod(e, v, n)).collect();
        ensure(image.iter().all(|v| apply_mod(d, v, n).iter().all(|&x| x == 0)), || format!("D_{}·D_{} ≠ 0", i + 1, i + 2))?;
        ensure(kernel == image.len(), || format!("not exact at F_{}: |ker| {kernel}, |im| {}", i + 1, image.len()))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Valuations computed from the raw payload

fn v_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

/// `None` for zero.
fn val(e: &Elem, p: u64) -> Option<i64> {
    match e {
        Elem::Rat(q) if q.is_zero() => None,
        Elem::Rat(q) => Some(v_int(q.numer(), p) - v_int(q.denom(), p)),
        Elem::RatFn(num, den) => {
            let low = |c: &[u32]| c.iter().position(|&x| x != 0);
            Some(low(num)? as i64 - low(den).expect("nonzero denominator") as i64)
        }
        other => panic!("not a fraction: {other:?}"),
    }
}

fn split(x: &Elem) -> (&Elem, &[Elem]) {
    match x {
        Elem::Pair(a, e) => (a, e),
        other => panic!("not a pair: {other:?}"),
    }
}

/// Divisibility in `A ∝ K`: `(a,x) | (b,y)` iff some `(c,z)` has
/// `ac = b` and `az + cx = y`. With `a ≠ 0` pick `c = b/a`, which needs
/// `v(a) ≤ v(b)`, and solve for `z` in `K`. With `a = 0` need `b = 0` and
/// `y = cx` for some `c` in `A`.
fn divides_in_a_k(p: u64, l: &Elem, r: &Elem) -> bool {
    let ((a, x), (b, y)) = (split(l), split(r));
    let (x, y) = (&x[0], &y[0]);
    match val(a, p) {
        Some(va) => val(b, p).is_none_or(|vb| va <= vb),
        None => match (val(b, p), val(x, p), val(y, p)) {
            (Some(_), _, _) => false,
            (None, _, None) => true,
            (None, None, Some(_)) => false,
            (None, Some(vx), Some(vy)) => vx <= vy,
        },
    }
}

// ---------------------------------------------------------------------------
// Criteria

const FIELD_SWEEP_EXTRA: &[&str] =
    &["F4", "F8", "F9", "F2[x]/(x^2)", "F2[x]/(x^3)", "F3[x]/(x^2)", "Z/4 x Z/3", "F2[x,y]/(x^2,x*y,y^2)"];

fn field_criterion() -> Outcome {
    let started = Instant::now();
    let exprs: Vec<String> =
        (2..=32).map(|n| format!("Z/{n}")).chain(FIELD_SWEEP_EXTRA.iter().map(|s| s.to_string())).collect();
    for expr in &exprs {
        let a = finite(expr);
        let diag = FiniteModule::free(a.clone(), 1).unwrap();
        let oracle = principal_chain(a.order() * a.order(), triv_mul(&a, &diag));
        let field = brute_is_field(&a);
        let ext = Ring::new(&ring_from_str(&format!("triv({expr}, {expr})")).unwrap()).unwrap();
        let direct = is_valuation_ring(ext.finite().unwrap(), 64).verdict;
        ensure(oracle == field && direct == field, || {
            format!("{expr}: field {field}, brute-force chain {oracle}, library {direct}")
        })?;
    }
    within(started, Duration::from_secs(60))?;
    Ok(format!("{} rings, {:.1?}", exprs.len(), started.elapsed()))
}

fn finite_extension_prediction() -> Outcome {
    let started = Instant::now();
    let mut pairs = 0;
    for base in ring_catalog(16) {
        let a = Ring::new(&base.desc).unwrap();
        let ar = a.finite().unwrap().clone();
        for m in module_catalog(&base, 16) {
            let e = Module::new(&a, &m.desc).unwrap();
            let Module::Finite(fm) = &e else { unreachable!() };
            let predicted = predict_valuation(&a, &e).unwrap().verdict;
            let oracle = principal_chain(ar.order() * fm.order(), triv_mul(&ar, fm));
            let ext = Ring::new(&ringlab_core::RingDescriptor::trivial_extension(base.desc.clone(), m.desc.clone())).unwrap();
            let direct = is_valuation_ring(ext.finite().unwrap(), 64).verdict;
            ensure(predicted == oracle && direct == oracle, || {
                format!("{} with E = {}: predicted {predicted}, brute-force {oracle}, library {direct}", base.expr, m.label)
            })?;
            pairs += 1;
        }
    }
    within(started, Duration::from_secs(300))?;
    Ok(format!("{pairs} pairs, {:.1?}", started.elapsed()))
}

fn fraction_field_extension() -> Outcome {
    let bounds = SampleBounds::default();
    let mut summary = Vec::new();
    for (src, p) in [("triv(Zloc(2), Frac)", 2), ("triv(Zloc(3), Frac)", 3), ("triv(Floc(2), Frac)", 2)] {
        let ring = Ring::new(&ring_from_str(src).unwrap()).unwrap();
        let t: &DvrTrivExt = ring.dvr_triv().unwrap();
        let d = t.base();
        let mut g = rng(&format!("acceptance/order/{src}"));
        for _ in 0..10_000 {
            let (x, y) = (t.sample(&mut g, bounds), t.sample(&mut g, bounds));
            let (xy, yx) = (divides_in_a_k(p, &x, &y), divides_in_a_k(p, &y, &x));
            ensure(xy || yx, || format!("{src}: {} and {} incomparable", t.format(&x), t.format(&y)))?;
            for (l, r, expect) in [(&x, &y, xy), (&y, &x, yx)] {
                match t.divides(l, r) {
                    DivisibilityVerdict::Divides(w) => ensure(expect && t.is_canonical(&w) && t.mul(l, &w) == *r, || {
                        format!("{src}: bad quotient {} for {} | {}", t.format(&w), t.format(l), t.format(r))
                    })?,
                    DivisibilityVerdict::NotDivides => {
                        ensure(!expect, || format!("{src}: missed {} | {}", t.format(l), t.format(r)))?
                    }
                }
            }
        }
        let mut g = rng(&format!("acceptance/ann/{src}"));
        let mut hits = 0;
        for _ in 0..1_000 {
            let r = if g.gen_bool(0.5) { t.vector(vec![d.sample(&mut g, bounds, false)]) } else { t.sample(&mut g, bounds) };
            let s = if g.gen_bool(0.5) { t.vector(vec![d.sample(&mut g, bounds, false)]) } else { t.sample(&mut g, bounds) };
            let ann = annihilator_in_triv_ext(&ring, &r).map_err(|e| e.to_string())?;
            let ((a, x), (b, y)) = (split(&r), split(&s));
            let product_zero =
                d.is_zero(&d.mul(a, b)) && d.is_zero(&d.add(&d.mul(a, &y[0]), &d.mul(b, &x[0])));
            hits += product_zero as usize;
            ensure(ann.contains(t, &s) == product_zero, || {
                format!("{src}: {} ∈ (0:{}) is {product_zero}", t.format(&s), t.format(&r))
            })?;
        }
        summary.push(format!("{src}: {hits} annihilating probes"));
    }
    Ok(summary.join("; "))
}

fn prime_power_cycles() -> Outcome {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let modulus = p.pow(n);
        let r = finite(&format!("Z/{modulus}"));
        let a = r.index_of(&Elem::Int(p)).unwrap();
        let (b, c) = (p.pow(n - 1), p);
        let scan = |x: u64| -> Vec<u64> { (0..modulus).filter(|y| (x * y).is_multiple_of(modulus)).collect() };
        let multiples = |x: u64| -> Vec<u64> {
            let mut v: Vec<u64> = (0..modulus).map(|y| x * y % modulus).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        ensure(scan(p) == multiples(b) && scan(b) == multiples(c) && scan(c) == multiples(b), || {
            format!("Z/{modulus}: annihilator scans do not cycle")
        })?;
        match projective_dimension_cyclic(&r, a, 8).map_err(|e| e.to_string())?.verdict {
            PdVerdict::InfiniteByCycle { b: vb, c: vc } if vb == Elem::Int(b) && vc == Elem::Int(c) => {}
            other => return Err(format!("Z/{modulus}: verdict {other:?}")),
        }
        let m = FiniteModule::new(r.clone(), 1, vec![vec![a]]).unwrap();
        let res = minimal_free_resolution(&m, 8).map_err(|e| e.to_string())?;
        ensure(res.betti == vec![1; 9], || format!("Z/{modulus}: betti {:?}", res.betti))?;
        let maps: Vec<_> = res.maps.iter().map(|d| residue_matrix(&r, d)).collect();
        check_exact_mod(&maps, &res.betti, modulus, p as usize).map_err(|e| format!("Z/{modulus}: {e}"))?;
    }
    Ok("Z/4, Z/8, Z/9: 8 steps, betti all 1".into())
}

fn truncated_polynomial() -> Outcome {
    let r = finite("F2[x]/(x^3)");
    let x = r.variable("x").unwrap();
    let x2 = r.mul(x, x);
    let scan: HashSet<usize> = (0..r.order()).filter(|&b| r.mul(b, x2) == r.zero()).collect();
    let xa: HashSet<usize> = (0..r.order()).map(|c| r.mul(c, x)).collect();
    let ann: HashSet<usize> = annihilator_ideal(&r, x2).elements().into_iter().collect();
    ensure(scan == xa && ann == xa, || "(0:x^2) differs from (x)".into())?;
    match classify_2d(&r, 8).map_err(|e| e.to_string())? {
        TwoDClass::NotA2dRingForAnyD { witness, .. } if witness == *r.label(x) => Ok("(0:x^2) = (x); witness x".into()),
        other => Err(format!("classification {other:?}")),
    }
}

fn warfield_oracle() -> Outcome {
    let started = Instant::now();
    for expr in ["Z/8", "F2[x]/(x^3)"] {
        let r = finite(expr);
        let chain = ChainRing::new(&r).unwrap();
        let mut g = rng(&format!("acceptance/warfield/{expr}"));
        for i in 0..200 {
            let (rows, cols) = [(2, 2), (2, 3), (3, 3)][i % 3];
            let mat: Vec<Vec<usize>> =
                (0..rows).map(|_| (0..cols).map(|_| g.gen_range(0..r.order())).collect()).collect();
            let w = warfield_decompose(&r, &mat, cols).map_err(|e| e.to_string())?;
            let (order, hist) = coset_census(&r, &mat, cols);
            ensure(w.module_order(&chain) == order && w.annihilator_histogram(&chain) == hist, || {
                format!("{expr} {mat:?}: {:?} vs order {order}, {hist:?}", w.exponents)
            })?;
        }
    }
    within(started, Duration::from_secs(60))?;
    Ok(format!("400 matrices, {:.1?}", started.elapsed()))
}

fn arithmetical_agreement() -> Outcome {
    let catalog = ring_catalog(64);
    for c in &catalog {
        let r = c.ring();
        let ideals = ideal_masks(&r);
        let n = ideals.len();
        let index: BTreeMap<u64, usize> = ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut sum = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                sum[i * n + j] = mask_sum(&r, ideals[i], ideals[j]);
            }
        }
        let s = |a: u64, b: u64| sum[index[&a] * n + index[&b]];
        let distributive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| {
                let (a, b, cc) = (ideals[i], ideals[j], ideals[k]);
                s(a, b) & cc == s(a & cc, b & cc)
            }))
        });
        let factors = r.local_decomposition().factors.iter().all(|f| is_valuation_ring(&f.ring, 64).verdict);
        let check = is_arithmetical(&r, 64).map_err(|e| e.to_string())?;
        ensure(distributive == factors && check.verdict == distributive && check.agree, || {
            format!("{}: distributive {distributive}, factors {factors}, library {}", c.expr, check.verdict)
        })?;
        if let Some([a, b, cc]) = &check.witness {
            let m = |i: &ringlab_core::Ideal| i.elements().iter().fold(0u64, |acc, &x| acc | 1 << x);
            let (a, b, cc) = (m(a), m(b), m(cc));
            ensure(mask_sum(&r, a, b) & cc != mask_sum(&r, a & cc, b & cc), || format!("{}: witness holds", c.expr))?;
        }
        match c.expr.as_str() {
            "Z/12" => ensure(check.verdict, || "Z/12 not arithmetical".into())?,
            "F2[x,y]/(x^2,x*y,y^2)" => {
                ensure(!check.verdict && check.witness.is_some(), || "monomial ring lacks a witness".into())?
            }
            _ => {}
        }
    }
    Ok(format!("{} rings", catalog.len()))
}

fn mixed_module() -> Outcome {
    let base = ring_from_str("Zloc(2)").unwrap();
    let a = Ring::new(&base).unwrap();
    let e = Module::new(&a, &module_from_str(&base, "free(1) + Zloc(2)/(2)").unwrap()).unwrap();
    let pred = predict_valuation(&a, &e).map_err(|e| e.to_string())?;
    let (x, y) = pred.witness.clone().ok_or("no witness pair")?;
    ensure(!pred.verdict, || "predicted a valuation ring".into())?;
    let ring = Ring::new(&ring_from_str("triv(Zloc(2), free(1) + Zloc(2)/(2))").unwrap()).unwrap();
    let t = ring.dvr_triv().unwrap();
    // (0,u) | (0,w) iff w = c·u for some c in Z_(2), with the second
    // component read mod 2.
    let divides = |l: &Elem, r: &Elem| -> bool {
        let ((la, u), (ra, w)) = (split(l), split(r));
        assert!(val(la, 2).is_none() && val(ra, 2).is_none(), "witness outside 0 ∝ E");
        let rat = |e: &Elem| match e {
            Elem::Rat(q) => q.clone(),
            other => panic!("{other:?}"),
        };
        let even = |q: &num_rational::BigRational| q.is_zero() || v_int(q.numer(), 2) > v_int(q.denom(), 2);
        let candidates: Vec<num_rational::BigRational> = if !rat(&u[0]).is_zero() {
            vec![rat(&w[0]) / rat(&u[0])]
        } else if rat(&w[0]).is_zero() {
            vec![Zero::zero(), num_traits::One::one()]
        } else {
            vec![]
        };
        candidates.iter().any(|c| {
            (c.is_zero() || v_int(c.numer(), 2) >= v_int(c.denom(), 2)) && even(&(c * rat(&u[1]) - rat(&w[1])))
        })
    };
    ensure(!divides(&x, &y) && !divides(&y, &x), || "witness pair is comparable".into())?;
    ensure(t.divides(&x, &y) == DivisibilityVerdict::NotDivides && t.divides(&y, &x) == DivisibilityVerdict::NotDivides, || {
        "library finds a quotient for the witness".into()
    })?;
    Ok(format!("incomparable {} and {}", t.format(&x), t.format(&y)))
}

fn non_fg_annihilators() -> Outcome {
    let ring = Ring::new(&ring_from_str("triv(Zloc(2), Frac)").unwrap()).unwrap();
    let t = ring.dvr_triv().unwrap();
    let d = t.base();
    let bounds = SampleBounds::default();
    let mut g = rng("acceptance/non-fg");
    let mut checked = 0;
    while checked < 1_000 {
        let x = d.sample(&mut g, bounds, false);
        if d.is_zero(&x) {
            continue;
        }
        let r = t.vector(vec![x]);
        let ann = annihilator_in_triv_ext(&ring, &r).map_err(|e| e.to_string())?;
        ensure(!ann.finitely_generated && ann.shape == TrivAnnihilatorShape::BaseIdealTimesModule(DvrIdeal::Zero), || {
            format!("(0:{}) = {}", t.format(&r), ann.description)
        })?;
        let k = g.gen_range(1..=3);
        let gens: Vec<Vec<Elem>> = (0..k).map(|_| vec![d.sample(&mut g, bounds, false)]).collect();
        let cert = ann.certificate(t, &gens).ok_or("no certificate")?;
        // Every A-combination of the generators has valuation at least the
        // least generator valuation; the escape sits strictly below it.
        let least = gens.iter().filter_map(|v| val(&v[0], 2)).min();
        let escape = val(&cert.escape[0], 2).ok_or("zero escape element")?;
        ensure(least.is_none_or(|m| escape < m), || format!("escape valuation {escape} not below {least:?}"))?;
        ensure(ann.contains(t, &t.vector(cert.escape.clone())) && cert.verify(t.module()), || "certificate rejected".into())?;
        checked += 1;
    }
    Ok(format!("{checked} sampled (0, x)"))
}

fn decomposable_resolution() -> Outcome {
    let r = finite("Z/12");
    let a = r.index_of(&Elem::Int(2)).unwrap();
    let m = FiniteModule::new(r.clone(), 1, vec![vec![a]]).unwrap();
    let res = minimal_free_resolution(&m, 8).map_err(|e| e.to_string())?;
    let rec = res.recurrence.ok_or("no recurrence within 8 steps")?;
    ensure(rec.offset + rec.period <= 8, || format!("recurrence {rec:?} beyond 8 steps"))?;
    let maps: Vec<_> = res.maps.iter().map(|d| residue_matrix(&r, d)).collect();
    check_exact_mod(&maps, &res.betti, 12, 2)?;
    let verdict = projective_dimension_cyclic(&r, a, 8).map_err(|e| e.to_string())?.verdict;
    ensure(verdict.is_infinite(), || format!("verdict {verdict:?}"))?;
    Ok(format!("offset {}, period {}, betti {:?}", rec.offset, rec.period, res.betti))
}

fn chain_rings_not_flat() -> Outcome {
    let oracle: Vec<String> = ring_catalog(64)
        .into_iter()
        .filter(|c| {
            let r = c.ring();
            !brute_is_field(&r) && principal_chain(r.order(), |x, y| r.mul(x, y))
        })
        .map(|c| c.expr)
        .collect();
    let listed: Vec<String> = chain_ring_catalog(64).into_iter().map(|c| c.expr).collect();
    ensure(oracle == listed, || format!("chain rings {oracle:?} vs catalog {listed:?}"))?;
    for expr in &listed {
        let r = finite(expr);
        let pi = ChainRing::new(&r).unwrap().uniformizer();
        let torsion = (0..r.order()).any(|b| b != r.zero() && r.mul(b, pi) == r.zero());
        ensure(torsion && !is_free_principal_ideal(&r, pi).unwrap(), || format!("{expr}: (π) looks free"))?;
        ensure(matches!(classify_2d(&r, 8).unwrap(), TwoDClass::NotA2dRingForAnyD { .. }), || {
            format!("{expr}: classified as a field")
        })?;
    }
    Ok(format!("{} chain rings", listed.len()))
}

// ---------------------------------------------------------------------------
// Parser

fn loc() -> Loc {
    Loc(Span::default())
}

fn gen_elem(g: &mut ChaCha8Rng, depth: u32) -> ElemExpr {
    let leaf = depth == 0 || g.gen_ratio(1, 3);
    if leaf {
        return if g.gen_bool(0.5) {
            ElemExpr::Int(g.gen_range(0..50), loc())
        } else {
            ElemExpr::Var(["x", "y", "z"][g.gen_range(0..3)].into(), loc())
        };
    }
    let sub = |g: &mut ChaCha8Rng| Box::new(gen_elem(g, depth - 1));
    match g.gen_range(0..5) {
        0 => ElemExpr::Neg(sub(g), loc()),
        1 => {
            let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][g.gen_range(0..4)];
            ElemExpr::Bin(op, sub(g), sub(g), loc())
        }
        2 => ElemExpr::Pow(sub(g), g.gen_range(0..5), loc()),
        3 => ElemExpr::Tuple((0..g.gen_range(2..=3)).map(|_| gen_elem(g, depth - 1)).collect(), loc()),
        _ => ElemExpr::Bracket((0..g.gen_range(1..=3)).map(|_| gen_elem(g, depth - 1)).collect(), loc()),
    }
}

fn gen_ring(g: &mut ChaCha8Rng, depth: u32) -> RingExpr {
    let choice = if depth == 0 { g.gen_range(0..5) } else { g.gen_range(0..8) };
    match choice {
        0 => RingExpr::ZMod(g.gen_range(0..100), loc()),
        1 => RingExpr::Galois(g.gen_range(0..100), loc()),
        2 => RingExpr::Zloc(g.gen_range(0..20), loc()),
        3 => RingExpr::Floc(g.gen_range(0..20), loc()),
        4 => {
            let vars: Vec<String> = ["x", "y", "z"][..g.gen_range(1..=3)].iter().map(|s| s.to_string()).collect();
            let relations = (0..g.gen_range(1..=3)).map(|_| gen_elem(g, 2)).collect();
            RingExpr::PolyRing { p: g.gen_range(0..10), vars, relations, loc: loc() }
        }
        5 => RingExpr::Product((0..g.gen_range(2..=3)).map(|_| gen_ring(g, depth - 1)).collect(), loc()),
        6 => RingExpr::Frac(Box::new(gen_ring(g, depth - 1)), loc()),
        _ => RingExpr::Triv(Box::new(gen_ring(g, depth - 1)), Box::new(gen_module(g, depth - 1)), loc()),
    }
}

fn gen_term(g: &mut ChaCha8Rng, depth: u32) -> ModuleExpr {
    match g.gen_range(0..3) {
        0 => {
            let relations = g.gen_bool(0.5).then(|| {
                let cols = g.gen_range(1..=3);
                (0..g.gen_range(0..=2)).map(|_| (0..cols).map(|_| gen_elem(g, 1)).collect()).collect()
            });
            ModuleExpr::Free { rank: g.gen_range(0..5), relations, loc: loc() }
        }
        1 => ModuleExpr::Frac(loc()),
        _ => {
            let ring = gen_ring(g, depth);
            let gens = g.gen_bool(0.5).then(|| (0..g.gen_range(1..=2)).map(|_| gen_elem(g, 1)).collect());
            ModuleExpr::Quotient { ring, gens, loc: loc() }
        }
    }
}

fn gen_module(g: &mut ChaCha8Rng, depth: u32) -> ModuleExpr {
    if g.gen_bool(0.3) {
        ModuleExpr::Sum((0..g.gen_range(2..=3)).map(|_| gen_term(g, depth)).collect(), loc())
    } else {
        gen_term(g, depth)
    }
}

fn round_trip<T: PartialEq + std::fmt::Display + std::fmt::Debug>(
    ast: &T,
    parse: impl Fn(&str) -> ringlab_core::Result<T>,
) -> Result<(), String> {
    let printed = ast.to_string();
    match parse(&printed) {
        Ok(back) if back == *ast => Ok(()),
        Ok(back) => Err(format!("{printed:?} reparsed as {back}")),
        Err(e) => Err(format!("{printed:?}: {e}")),
    }
}

fn parser() -> Outcome {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let golden = std::fs::read_to_string(format!("{fixtures}/golden.txt")).map_err(|e| e.to_string())?;
    let mut golden_count = 0;
    for line in golden.lines().filter(|l| !l.trim().is_empty()) {
        let (kind, src) = line.split_once('\t').ok_or("golden line without a tab")?;
        let printed = match kind {
            "ring" => parse_ring(src).map(|a| a.to_string()),
            "module" => parse_module(src).map(|a| a.to_string()),
            "elem" => parse_elem(src).map(|a| a.to_string()),
            other => return Err(format!("unknown golden kind {other}")),
        }
        .map_err(|e| format!("{src}: {e}"))?;
        ensure(printed == src, || format!("{src:?} printed as {printed:?}"))?;
        match kind {
            "ring" => round_trip(&parse_ring(src).unwrap(), parse_ring)?,
            "module" => round_trip(&parse_module(src).unwrap(), parse_module)?,
            _ => round_trip(&parse_elem(src).unwrap(), parse_elem)?,
        }
        golden_count += 1;
    }
    ensure(golden_count == 20, || format!("golden corpus has {golden_count} entries"))?;

    let mut g = rng("acceptance/parser");
    for i in 0..500 {
        match i % 3 {
            0 => round_trip(&gen_ring(&mut g, 3), parse_ring)?,
            1 => round_trip(&gen_module(&mut g, 2), parse_module)?,
            _ => round_trip(&gen_elem(&mut g, 4), parse_elem)?,
        }
    }

    let malformed = std::fs::read_to_string(format!("{fixtures}/malformed.txt")).map_err(|e| e.to_string())?;
    let mut bad = 0;
    for line in malformed.lines().filter(|l| !l.trim().is_empty()) {
        let args: Vec<&str> = line.split('\t').collect();
        let out = Command::new(env!("CARGO_BIN_EXE_ringlab")).args(&args).output().map_err(|e| e.to_string())?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        let spanned = stderr.split_whitespace().any(|w| {
            let w = w.trim_end_matches(':');
            matches!(w.split_once(".."), Some((a, b)) if !a.is_empty() && a.chars().all(|c| c.is_ascii_digit()) && !b.is_empty() && b.chars().all(|c| c.is_ascii_digit()))
        });
        let caret = stderr.lines().any(|l| l.trim_start().starts_with('^'));
        ensure(out.status.code() == Some(2) && spanned && caret, || {
            format!("{args:?}: exit {:?}, stderr {stderr:?}", out.status.code())
        })?;
        bad += 1;
    }
    Ok(format!("{golden_count} golden, 500 random ASTs, {bad} malformed inputs"))
}

fn main() -> ExitCode {
    let criteria: [Check; 12] = [
        ("field criterion for A ∝ A", field_criterion),
        ("finite extension prediction", finite_extension_prediction),
        ("A ∝ K divisibility and annihilators", fraction_field_extension),
        ("prime-power residue rings", prime_power_cycles),
        ("truncated polynomial ring", truncated_polynomial),
        ("chain-ring decomposition", warfield_oracle),
        ("arithmetical agreement", arithmetical_agreement),
        ("mixed module witness", mixed_module),
        ("non-finitely-generated annihilators", non_fg_annihilators),
        ("periodic resolution over Z/12", decomposable_resolution),
        ("maximal ideal of chain rings", chain_rings_not_flat),
        ("parser", parser),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
