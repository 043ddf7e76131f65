use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use obstruction_core::cohomology::{cohomology, degree, relative_homology, CochainSpace, HomologyGroup};
use obstruction_core::corpus::{self, CorpusKind};
use obstruction_core::defect::{verify, Provenance, VerificationReport};
use obstruction_core::exec::Execution;
use obstruction_core::io::{ComplexRecord, MapRecord};
use obstruction_core::operations::{cup, hopf_invariant, steenrod_sq};
use obstruction_core::simplicial::SimplicialPair;
use obstruction_core::{Error, Result};
use serde_json::{json, Value};

use crate::input::{class, Source};
use crate::{Command, CorpusAction, Output};

fn num(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn nums(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(num).collect())
}

fn ok(text: String, structured: Value) -> Result<Output> {
    Ok(Output { text, structured, code: 0 })
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Homology { input, degree, coeff } => groups(input, *degree, coeff.ring(), false),
        Command::Cohomology { input, degree, coeff } => groups(input, *degree, coeff.ring(), true),
        Command::Cup { input, left, right, degree, coeff } => {
            let src = Source::parse(input)?;
            let space = CochainSpace::new(src.pair()?, coeff.ring());
            let x = class(&src, &space, left, *degree)?;
            let y = class(&src, &space, right, *degree)?;
            let z = cup(&x, &y)?;
            let text = format!(
                "{} cup {} in H^{}({}; {}) = {} (coordinates {})",
                left,
                right,
                z.degree(),
                src.label(),
                space.coefficient(),
                if z.is_zero() { "zero" } else { "nonzero" },
                strings(z.coordinates())
            );
            ok(
                text,
                json!({"command": "cup", "input": src.label(), "coefficient": space.coefficient().to_string(),
                       "degree": z.degree(), "zero": z.is_zero(), "coordinates": nums(z.coordinates())}),
            )
        }
        Command::Sq { k, input, class: spec, degree, mod2, coeff } => {
            let src = Source::parse(input)?;
            let x = if *mod2 {
                let space = CochainSpace::new(src.pair()?, obstruction_core::linalg::Coefficient::Z);
                class(&src, &space, spec, *degree)?.mod2()
            } else {
                let space = CochainSpace::new(src.pair()?, coeff.ring());
                class(&src, &space, spec, *degree)?
            };
            let y = steenrod_sq(*k, &x)?;
            let text = format!(
                "Sq^{k}({spec}) in H^{}({}; Z2) = {} (coordinates {})",
                y.degree(),
                src.label(),
                if y.is_zero() { "zero" } else { "nonzero" },
                strings(y.coordinates())
            );
            ok(
                text,
                json!({"command": "sq", "k": k, "input": src.label(), "degree": y.degree(),
                       "zero": y.is_zero(), "coordinates": nums(y.coordinates())}),
            )
        }
        Command::Degree { map } => {
            let src = Source::parse(map)?;
            let d = degree(&src.map()?)?;
            ok(format!("degree({}) = {d}", src.label()), json!({"command": "degree", "input": src.label(), "degree": num(&d)}))
        }
        Command::Hopf { map } => {
            let src = Source::parse(map)?;
            let h = hopf_invariant(&src.map()?)?;
            ok(
                format!("H({}) = {h}", src.label()),
                json!({"command": "hopf", "input": src.label(), "hopf_invariant": num(&h)}),
            )
        }
        Command::Form { input } => {
            let src = Source::parse(input)?;
            let (m, basis) = src.manifold()?;
            let classes: Vec<_> = basis.iter().map(|(_, c)| c.clone()).collect();
            let form = m.intersection_form_on(&classes)?;
            let names: Vec<&str> = basis.iter().map(|(n, _)| n.as_str()).collect();
            let mut text = format!("intersection form of {} on basis ({})\n", src.label(), names.join(", "));
            for row in &form.matrix {
                let _ = writeln!(text, "  {row:?}");
            }
            let _ = write!(
                text,
                "signature {}, determinant {}, {}",
                form.signature,
                form.determinant,
                if form.is_unimodular() { "unimodular" } else { "not unimodular" }
            );
            let mut v = serde_json::to_value(&form).expect("forms serialize");
            v["command"] = json!("form");
            v["input"] = json!(src.label());
            v["basis"] = json!(names);
            v["symmetric"] = json!(form.is_symmetric());
            v["unimodular"] = json!(form.is_unimodular());
            ok(text, v)
        }
        Command::Thom { input, n } => {
            let src = Source::parse(input)?;
            let t = src.thom_model()?;
            let mut text = format!("Thom model {}: rank {}", src.label(), t.rank());
            let mut v = json!({"command": "thom", "input": src.label(), "rank": t.rank(),
                               "tau": nums(t.tau().coordinates())});
            if let Some(e) = t.euler_number {
                let _ = write!(text, ", e = <tau^2, [DN]> = {e}");
                v["e"] = json!(e);
            }
            if let Some(w) = t.w2 {
                let _ = write!(text, ", w2 = <Sq^2 tau, [DN]> = {w}");
                v["w2"] = json!(w);
            }
            if let Some(n) = n {
                let s = t.thom_square(*n)?;
                let _ = write!(text, "\n<(n tau)^2, [DN]> at n = {n}: {s}");
                v["n"] = json!(n);
                v["thom_square"] = num(&s);
            }
            ok(text, v)
        }
        Command::Verify { scenario } => {
            let src = Source::parse(scenario)?;
            let config = corpus::resolve_scenario(&src.scenario()?)?;
            let report = verify(&config)?;
            Ok(Output {
                text: render_report(&report),
                structured: serde_json::to_value(&report).expect("reports serialize"),
                code: if report.passed { 0 } else { 1 },
            })
        }
        Command::Corpus { action } => corpus_command(action),
    }
}

fn strings(xs: &[BigInt]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn groups(input: &str, degree: Option<usize>, ring: obstruction_core::linalg::Coefficient, co: bool) -> Result<Output> {
    let src = Source::parse(input)?;
    let pair = src.pair()?;
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..=pair.dimension()).collect(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    for k in degrees {
        let g = if co { cohomology(&pair, k, ring)? } else { relative_homology(&pair, k, ring)? };
        let name = if co { format!("H^{k}") } else { format!("H_{k}") };
        let _ = writeln!(text, "{name}({}; {ring}) = {g}", src.label());
        for (i, z) in g.generators.iter().enumerate() {
            let _ = writeln!(text, "  gen {i}: {}", chain(&pair, k, z));
        }
        out.push(group_value(&g));
    }
    ok(
        text,
        json!({"command": if co { "cohomology" } else { "homology" }, "input": src.label(),
               "coefficient": ring.to_string(), "groups": out}),
    )
}

fn group_value(g: &HomologyGroup) -> Value {
    json!({"degree": g.degree, "group": g.canonical_string(), "free_rank": g.free_rank,
           "torsion": nums(&g.torsion),
           "generators": g.generators.iter().map(|z| nums(z)).collect::<Vec<_>>()})
}

/// `+[0,1,2] -2[0,1,3] ..` over the relative cells of the pair.
fn chain(pair: &SimplicialPair, k: usize, z: &[BigInt]) -> String {
    let cells = pair.relative_cells(k);
    let simplices = pair.total().simplices(k);
    let mut terms = Vec::new();
    for (c, &i) in z.iter().zip(cells) {
        if c.is_zero() {
            continue;
        }
        let s = &simplices[i];
        let coeff = match c.to_i64() {
            Some(1) => "+".to_string(),
            Some(-1) => "-".to_string(),
            _ if c.sign() == num_bigint::Sign::Minus => c.to_string(),
            _ => format!("+{c}"),
        };
        terms.push(format!("{coeff}{s:?}"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

fn render_report(r: &VerificationReport) -> String {
    let mut t = format!("profile {}: {}\nsign: {}\n", r.profile, if r.passed { "PASS" } else { "FAIL" }, r.sign);
    for s in &r.surfaces {
        let _ = writeln!(
            t,
            "  surface {}: lhs {} rhs {} residual {} {}",
            s.id,
            s.lhs,
            s.rhs,
            s.residual,
            if s.passed { "ok" } else { "FAIL" }
        );
    }
    for i in &r.identities {
        let status = match (i.checked, i.passed) {
            (false, _) => "skipped",
            (true, true) => "ok",
            (true, false) => "FAIL",
        };
        let _ = writeln!(t, "  {}: {status} (residual {}) {}", i.name, i.residual, i.detail);
    }
    if !r.failing_surfaces.is_empty() {
        let _ = writeln!(t, "failing surfaces: {}", r.failing_surfaces.join(", "));
    }
    for p in &r.inputs {
        let source = match &p.source {
            Provenance::Supplied => "supplied".to_string(),
            Provenance::Computed(how) => format!("computed ({how})"),
        };
        let _ = writeln!(t, "  input {}: {source}", p.field);
    }
    t
}

fn corpus_command(action: &CorpusAction) -> Result<Output> {
    match action {
        CorpusAction::List => {
            let mut text = String::new();
            for e in corpus::entries() {
                let _ = writeln!(text, "{:<20} {:<11} {}", e.id, kind_name(e.kind), e.provenance);
            }
            ok(text, json!({"command": "corpus list", "entries": corpus::entries()}))
        }
        CorpusAction::Check { sequential } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let results = corpus::check_all(exec);
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut failures = 0;
            for (id, r) in &results {
                match r {
                    Ok(s) => {
                        let _ = writeln!(text, "ok   {id:<20} {s}");
                        rows.push(json!({"id": id, "passed": true, "detail": s}));
                    }
                    Err(e) => {
                        failures += 1;
                        let _ = writeln!(text, "FAIL {id:<20} {e}");
                        rows.push(json!({"id": id, "passed": false, "detail": e.to_string()}));
                    }
                }
            }
            let _ = write!(text, "{} entries, {failures} failures", results.len());
            Ok(Output {
                text,
                structured: json!({"command": "corpus check", "entries": rows, "failures": failures}),
                code: if failures == 0 { 0 } else { 1 },
            })
        }
        CorpusAction::Show { id } => {
            let e = corpus::entry_for(id)?;
            let value = match e.kind {
                CorpusKind::Complex | CorpusKind::Pair => {
                    serde_json::to_value(ComplexRecord::from_pair(&*corpus::space(e.id)?))
                }
                CorpusKind::ThomModel => {
                    let t = corpus::thom_model(e.id)?;
                    let mut r = ComplexRecord::from_pair(t.pair());
                    r.rank = Some(t.rank());
                    r.orientation = Some(t.orientation());
                    r.e = t.euler_number;
                    r.w2 = t.w2;
                    serde_json::to_value(r)
                }
                CorpusKind::Map => serde_json::to_value(MapRecord::from_map(&corpus::map(e.id)?)),
                CorpusKind::Scenario => serde_json::to_value(corpus::scenario(e.id)?),
            }
            .map_err(|err| Error::Parse(err.to_string()))?;
            let text = serde_json::to_string(&value).expect("records serialize");
            ok(text, value)
        }
    }
}

fn kind_name(k: CorpusKind) -> &'static str {
    match k {
        CorpusKind::Complex => "complex",
        CorpusKind::Pair => "pair",
        CorpusKind::Map => "map",
        CorpusKind::ThomModel => "thom_model",
        CorpusKind::Scenario => "scenario",
    }
}
