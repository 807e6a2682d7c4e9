use serde_json::{json, Value};

use ringlab_core::expr::{eval_elem, lower_module, parse_elem, parse_matrix, parse_module, parse_ring, lower_ring};
use ringlab_core::homology::{minimal_free_resolution, projective_dimension_cyclic, PdVerdict};
use ringlab_core::ideal::{all_ideals, annihilator_ideal};
use ringlab_core::module::{warfield_decompose, ChainRing, DvrModule, Summand};
use ringlab_core::report::{property_report, PropertyReport};
use ringlab_core::trivext::annihilator_in_triv_ext;
use ringlab_core::verify::{verify, TheoremReport, VerifyConfig, SUITE};
use ringlab_core::{DivisibilityVerdict, Elem, Error, Ring};

/// A failure tied to one named input, so spans can be rendered against it.
#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub input: Option<(String, String)>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, input: None }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

/// Command output: the JSON result, a human rendering, and whether a
/// property or check failed.
pub struct Outcome {
    pub result: Value,
    pub human: String,
    pub violation: bool,
}

fn at<T>(name: &str, src: &str, r: ringlab_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|error| Failure { error, input: Some((name.to_string(), src.to_string())) })
}

pub fn build_ring(src: &str) -> Result<Ring, Failure> {
    let ast = at("EXPR", src, parse_ring(src))?;
    let desc = at("EXPR", src, lower_ring(&ast))?;
    Ok(Ring::new(&desc)?)
}

fn elem(ring: &Ring, name: &str, src: &str) -> Result<Elem, Failure> {
    let ast = at(name, src, parse_elem(src))?;
    at(name, src, eval_elem(ring, &ast))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not computed",
    }
}

pub fn props(expr: &str, max_order: usize) -> CmdResult {
    let ring = build_ring(expr)?;
    let rep = property_report(&ring, max_order)?;
    let human = render_props(&rep);
    Ok(Outcome { violation: !rep.is_consistent(), result: serde_json::to_value(&rep).unwrap(), human })
}

fn render_props(rep: &PropertyReport) -> String {
    let mut s = String::new();
    let f = &rep.flags;
    s += &format!("ring          {}\n", rep.expression);
    s += &format!("family        {}\n", rep.family);
    s += &format!("order         {}\n", rep.order);
    s += &format!("finite        {}\n", yes(f.finite));
    for (name, fl) in [("field", &f.field), ("local", &f.local), ("valuation", &f.valuation), ("arithmetical", &f.arithmetical)] {
        s += &format!("{name:<13} {:<13} [{}]\n", flag(fl.value), fl.method);
    }
    if let Some(n) = rep.ideal_count {
        s += &format!("ideals        {n}\n");
    }
    if let Some(z) = &rep.zero_divisors {
        s += &format!("units         {}\nzero divisors {}\nnilpotents    {}\n", z.units, z.zero_divisors, z.nilpotents);
    }
    if let Some(fs) = &rep.local_factors {
        s += "local factors\n";
        for x in fs {
            let name = x.recognized.clone().unwrap_or_else(|| "unrecognized".into());
            s += &format!("  e = {:<8} order {:<4} {:<20} valuation {}\n", x.idempotent, x.order, name, yes(x.valuation));
        }
    }
    for w in &rep.witnesses {
        s += &format!(
            "witness       {}: {} [{}] {}\n",
            w.property,
            w.claim,
            w.elements.join(", "),
            if w.verified { "verified" } else { "NOT VERIFIED" }
        );
    }
    for n in &rep.notes {
        s += &format!("note          {n}\n");
    }
    s
}

pub fn ideals(expr: &str, max_order: usize) -> CmdResult {
    let ring = build_ring(expr)?;
    let r = ring
        .finite()
        .ok_or_else(|| Error::Capability(format!("{} is infinite; its ideals cannot be enumerated", ring.descriptor())))?;
    let list = all_ideals(r, max_order)?;
    let mut human = format!("{} ideals of {}\n", list.len(), ring.descriptor());
    let mut items = Vec::new();
    for i in &list {
        human += &format!("  {:<20} order {}\n", i.format(), i.order());
        items.push(json!({ "generators": i.format(), "order": i.order(), "principal": i.is_principal() }));
    }
    Ok(Outcome { result: json!({ "ring": ring.descriptor().to_string(), "count": list.len(), "ideals": items }), human, violation: false })
}

pub fn ann(expr: &str, element: &str) -> CmdResult {
    let ring = build_ring(expr)?;
    let a = elem(&ring, "ELEM", element)?;
    let shown = ring.format(&a);
    let (desc, fg, extra) = if let Some(r) = ring.finite() {
        let i = annihilator_ideal(r, ring.index(&a)?);
        let members: Vec<String> = i.elements().iter().map(|&x| r.format(x)).collect();
        (i.format(), true, json!({ "order": i.order(), "members": members }))
    } else if ring.dvr_triv().is_some() {
        let t = annihilator_in_triv_ext(&ring, &a)?;
        (t.description.clone(), t.finitely_generated, Value::Null)
    } else {
        let zero = ring.zero() == a;
        ((if zero { "whole ring" } else { "(0)" }).to_string(), true, Value::Null)
    };
    let human = format!("(0:{shown}) = {desc}\nfinitely generated: {}\n", yes(fg));
    Ok(Outcome {
        result: json!({ "element": shown, "annihilator": desc, "finitely_generated": fg, "details": extra }),
        human,
        violation: false,
    })
}

pub fn divides(expr: &str, a: &str, b: &str) -> CmdResult {
    let ring = build_ring(expr)?;
    let x = elem(&ring, "A", a)?;
    let y = elem(&ring, "B", b)?;
    let v = ring.divides(&x, &y)?;
    let (fx, fy) = (ring.format(&x), ring.format(&y));
    Ok(match v {
        DivisibilityVerdict::Divides(w) => {
            let fw = ring.format(&w);
            let verified = ring.mul(&x, &w)? == y;
            Outcome {
                human: format!("{fx} divides {fy}: {fx} * {fw} = {fy}\n"),
                result: json!({ "a": fx, "b": fy, "divides": true, "witness": fw, "verified": verified }),
                violation: !verified,
            }
        }
        DivisibilityVerdict::NotDivides => Outcome {
            human: format!("{fx} does not divide {fy}\n"),
            result: json!({ "a": fx, "b": fy, "divides": false }),
            violation: false,
        },
    })
}

fn verdict_json(ring: &ringlab_core::FiniteRing, v: &PdVerdict) -> (String, Value) {
    match v {
        PdVerdict::ZeroModule => ("zero module".into(), json!({ "kind": "zero-module" })),
        PdVerdict::Projective => ("0 (projective)".into(), json!({ "kind": "projective" })),
        PdVerdict::AtMostOne => ("at most 1".into(), json!({ "kind": "at-most-one" })),
        PdVerdict::InfiniteByCycle { b, c } => {
            let (b, c) = (ring.format_label(b), ring.format_label(c));
            (format!("infinite: (0:a) = ({b}), (0:{b}) = ({c}), (0:{c}) = ({b})"), json!({ "kind": "infinite-by-cycle", "b": b, "c": c }))
        }
        PdVerdict::InfiniteByPeriodicity { period, offset } => (
            format!("infinite: kernels repeat with period {period} from step {offset}"),
            json!({ "kind": "infinite-by-periodicity", "period": period, "offset": offset }),
        ),
        PdVerdict::UnknownAfter(n) => (format!("unknown after {n} steps"), json!({ "kind": "unknown", "steps": n })),
    }
}

pub fn pd(expr: &str, element: &str, max_steps: usize) -> CmdResult {
    let ring = build_ring(expr)?;
    let r = ring
        .finite()
        .ok_or_else(|| Error::Capability("projective dimension is computed over finite rings only".into()))?
        .clone();
    let a = elem(&ring, "ELEM", element)?;
    let pd = projective_dimension_cyclic(&r, ring.index(&a)?, max_steps)?;
    let (text, v) = verdict_json(&r, &pd.verdict);
    let mut human = if pd.factors.is_empty() {
        format!("pd(A/{}A) = {text}\n", ring.format(&a))
    } else {
        format!("pd(A/{}A) = {} (worst local factor)\n", ring.format(&a), short_verdict(&pd.verdict))
    };
    let mut factors = Vec::new();
    for f in &pd.factors {
        let (ft, fv) = verdict_json(&r, &f.verdict);
        human += &format!("  factor e = {:<6} order {:<4} {ft}\n", r.format_label(&f.idempotent), f.order);
        factors.push(json!({ "idempotent": r.format_label(&f.idempotent), "order": f.order, "verdict": fv }));
    }
    Ok(Outcome { result: json!({ "element": ring.format(&a), "verdict": v, "factors": factors }), human, violation: false })
}

fn short_verdict(v: &PdVerdict) -> String {
    match v {
        PdVerdict::ZeroModule => "0 (zero module)".into(),
        PdVerdict::Projective => "0".into(),
        PdVerdict::AtMostOne => "≤ 1".into(),
        PdVerdict::UnknownAfter(n) => format!("unknown after {n} steps"),
        _ => "infinite".into(),
    }
}

pub fn resolve(expr: &str, module: &str, max_steps: usize) -> CmdResult {
    let ring = build_ring(expr)?;
    let r = ring
        .finite()
        .ok_or_else(|| Error::Capability("free resolutions are computed over finite rings only".into()))?
        .clone();
    let ast = at("MODULE", module, parse_module(module))?;
    let lowered = at("MODULE", module, lower_module(ring.descriptor(), &ast))?;
    let m = ringlab_core::ring::finite_module(&r, &lowered.into_descriptor())?;
    let res = minimal_free_resolution(&m, max_steps)?;
    let mut human = format!("betti {:?}\n", res.betti);
    if !res.minimal {
        human += "warning: the ring is not local; this is a free resolution, not necessarily minimal\n";
    }
    let mut maps = Vec::new();
    for (i, d) in res.maps.iter().enumerate() {
        let f = res.format_matrix(d);
        let c = &res.certificates[i];
        human += &format!(
            "d{} = {}  [d∘d = 0: {}, |ker| = {}, |im next| = {}]\n",
            i + 1,
            serde_json::to_string(&f).unwrap(),
            yes(c.composition_zero),
            c.kernel_order,
            c.image_order
        );
        maps.push(json!({
            "matrix": f,
            "composition_zero": c.composition_zero,
            "kernel_order": c.kernel_order,
            "image_order": c.image_order,
        }));
    }
    if let Some(rec) = &res.recurrence {
        human += &format!("kernel recurrence: period {} from step {}\n", rec.period, rec.offset);
    }
    let exact = res.is_exact() && res.compositions_vanish();
    human += &format!("exact: {}\n", yes(exact));
    let rec = res.recurrence.map(|r| json!({ "period": r.period, "offset": r.offset }));
    Ok(Outcome {
        result: json!({
            "betti": res.betti,
            "maps": maps,
            "minimal": res.minimal,
            "terminated": res.terminated,
            "recurrence": rec,
            "exact": exact,
        }),
        human,
        violation: !exact,
    })
}

pub fn warfield(expr: &str, matrix: &str) -> CmdResult {
    let ring = build_ring(expr)?;
    let rows = at("--matrix", matrix, parse_matrix(matrix))?;
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure { error: Error::Usage("matrix rows have different lengths".into()), input: None });
    }
    let entries: Vec<Vec<Elem>> = rows
        .iter()
        .map(|row| row.iter().map(|e| at("--matrix", matrix, eval_elem(&ring, e))).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    if let Some(r) = ring.finite() {
        let idx: Vec<Vec<usize>> =
            entries.iter().map(|row| row.iter().map(|e| ring.index(e)).collect::<ringlab_core::Result<_>>()).collect::<ringlab_core::Result<_>>()?;
        let dec = warfield_decompose(r, &idx, cols)?;
        let chain = ChainRing::new(r)?;
        let summands: Vec<String> = dec
            .exponents
            .iter()
            .map(|&k| if k == chain.length() { "A".to_string() } else { format!("A/({})", r.format(chain.pi_pow(k))) })
            .collect();
        let human = format!(
            "{} = {}\norder {}\n",
            if cols == 0 { "0".into() } else { format!("A^{cols}/rows") },
            if summands.is_empty() { "0".into() } else { summands.join(" + ") },
            dec.module_order(&chain)
        );
        return Ok(Outcome {
            result: json!({
                "uniformizer": r.format(chain.uniformizer()),
                "exponents": dec.exponents,
                "summands": summands,
                "order": dec.module_order(&chain),
            }),
            human,
            violation: false,
        });
    }
    let d = ring.dvr().ok_or_else(|| Error::Capability("presentations are decomposed over chain rings and DVRs".into()))?;
    let m = DvrModule::from_presentation(d.clone(), &entries, cols)?;
    let summands: Vec<String> = m
        .summands()
        .iter()
        .map(|s| match s {
            Summand::Free => "A".to_string(),
            Summand::CyclicTorsion(k) => format!("A/({})", d.format(&d.pi_pow(*k))),
            Summand::FractionField => "K".to_string(),
        })
        .collect();
    Ok(Outcome {
        human: format!("{}\n", if summands.is_empty() { "0".into() } else { summands.join(" + ") }),
        result: json!({ "summands": summands }),
        violation: false,
    })
}

pub fn decompose(expr: &str) -> CmdResult {
    let ring = build_ring(expr)?;
    let r = ring
        .finite()
        .ok_or_else(|| Error::Capability("local decomposition is computed for finite rings only".into()))?;
    let dec = r.local_decomposition();
    let mut human = format!("{} = product of {} local factor(s)\n", ring.descriptor(), dec.factors.len());
    let mut items = Vec::new();
    for f in &dec.factors {
        let name = f.recognized.as_ref().map(|d| d.to_string());
        human += &format!("  e = {:<8} order {:<4} {}\n", r.format(f.idempotent), f.ring.order(), name.clone().unwrap_or_else(|| "unrecognized".into()));
        items.push(json!({ "idempotent": r.format(f.idempotent), "order": f.ring.order(), "recognized": name }));
    }
    Ok(Outcome { result: json!({ "factors": items }), human, violation: false })
}

fn render_theorem(rep: &TheoremReport) -> String {
    let mut s = format!(
        "{:<11} {}  checked {}, passed {}  ({:.2?})\n  {}\n  catalog: {}\n",
        rep.id,
        if rep.pass() { "PASS" } else { "FAIL" },
        rep.checked,
        rep.passed,
        rep.elapsed,
        rep.claim,
        rep.catalog
    );
    for c in rep.counterexamples.iter().take(10) {
        s += &format!("  counterexample: {c}\n");
    }
    s
}

pub fn verify_cmd(id: &str, config: &VerifyConfig) -> CmdResult {
    let ids: Vec<&str> = if id == "all" { SUITE.to_vec() } else { vec![id] };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(verify(id, config)?);
    }
    let human: String = reports.iter().map(render_theorem).collect();
    let violation = reports.iter().any(|r| !r.pass());
    let result = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).unwrap()
    } else {
        json!({ "reports": reports })
    };
    Ok(Outcome { result, human, violation })
}

