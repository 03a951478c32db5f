//! Command implementations. Each one produces a machine-readable report, a
//! short human summary for stderr, and a build-breaking flag that decides the
//! exit code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use satnorm::algebra::TensorSquare;
use satnorm::diagram::{
    classify, contraction_check_classified, idempotency_check, is_integral, is_radicial,
    is_surjective, is_unramified, matched_theorems, quotient_check, Mode,
};
use satnorm::field::Field;
use satnorm::groebner::global_stats;
use satnorm::order::MonomialOrder;
use satnorm::poly::Poly;
use satnorm::saturation::{lip_member, wn_member, Verdict};

use crate::corpus::{load_corpus, AnyDoc, CorpusDocument, CorpusError};
use crate::report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Core(#[from] satnorm::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// Result of one command run.
pub struct Outcome {
    pub report: Value,
    pub summary: Vec<String>,
    pub build_breaking: bool,
}

/// Dispatches a closure over whichever field the document declares.
macro_rules! with_doc {
    ($doc:expr, |$d:ident| $body:expr) => {
        match $doc {
            AnyDoc::Q($d) => $body,
            AnyDoc::Fp($d) => $body,
        }
    };
}

pub fn parse_order(name: &str) -> Result<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => Err(CliError::Usage(format!(
            "unknown order `{other}` (expected lex or grevlex)"
        ))),
    }
}

pub fn parse_mode(name: &str) -> Result<Mode> {
    match name {
        "wn" => Ok(Mode::Wn),
        "lip" => Ok(Mode::Lip),
        other => Err(CliError::Usage(format!(
            "unknown mode `{other}` (expected wn or lip)"
        ))),
    }
}

fn base_inputs<F: Field>(doc: &CorpusDocument<F>) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("file".into(), json!(doc.path.display().to_string()));
    map.insert("sha256".into(), json!(doc.sha256));
    map
}

fn parse_testset<F: Field>(
    doc: &CorpusDocument<F>,
    seq: &satnorm::algebra::Sequence<F>,
    name: &str,
) -> Result<Vec<Poly<F>>> {
    let texts = doc.testset(name)?;
    texts
        .iter()
        .map(|t| doc.parse_in_top(seq, t).map_err(CliError::from))
        .collect()
}

pub fn run_gb(input: &Path, ideal_name: &str, order_name: &str) -> Result<Outcome> {
    let order = parse_order(order_name)?;
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let ideal = d.ideal(ideal_name)?;
        let gb = ideal.gb(&order)?;
        let stats = gb.stats();
        let mut inputs = base_inputs(d);
        inputs.insert("ideal".into(), json!(ideal_name));
        inputs.insert("order".into(), json!(order_name));
        let verdicts = json!([{
            "query": "gb",
            "source": report::polys_json(&ideal.total_gens()),
            "reduced_basis": report::polys_json(gb.generators()),
            "is_monomial": ideal.is_monomial()?,
            "stats": {
                "basis_size": stats.basis_size,
                "pairs_considered": stats.pairs_considered,
                "zero_reductions": stats.zero_reductions,
            },
        }]);
        let summary = vec![format!(
            "gb {ideal_name}: {} reduced generators ({} pairs)",
            gb.generators().len(),
            stats.pairs_considered
        )];
        Ok(Outcome {
            report: report::envelope(
                "gb",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking: false,
        })
    })
}

pub fn run_wn_member(input: &Path, seq_name: &str, element: &str, bound: u32) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let seq = d.sequence(seq_name)?;
        let x = d.parse_in_top(seq, element)?;
        let square = TensorSquare::build(seq)?;
        let (member, exponent) = wn_member(&square, &x)?;
        let mut inputs = base_inputs(d);
        inputs.insert("seq".into(), json!(seq_name));
        inputs.insert("element".into(), json!(element));
        inputs.insert("bound".into(), json!(bound));
        let verdicts = json!([{
            "query": "wn-member",
            "element": x.to_string(),
            "member": member,
            "certificate": match exponent {
                Some(n) => json!({"kind": "radical-exponent", "exponent": n}),
                None if member => json!({"kind": "radical-exponent-beyond-bound"}),
                None => json!({"kind": "radical-rejection"}),
            },
        }]);
        let summary = vec![format!(
            "wn-member {element} in {seq_name}: {member}{}",
            exponent
                .map(|n| format!(" (exponent {n})"))
                .unwrap_or_default()
        )];
        Ok(Outcome {
            report: report::envelope(
                "wn-member",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking: false,
        })
    })
}

pub fn run_lip_member(input: &Path, seq_name: &str, element: &str, bound: u32) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let seq = d.sequence(seq_name)?;
        let x = d.parse_in_top(seq, element)?;
        let square = TensorSquare::build(seq)?;
        let verdict = lip_member(&square, &x, bound)?;
        let mut inputs = base_inputs(d);
        inputs.insert("seq".into(), json!(seq_name));
        inputs.insert("element".into(), json!(element));
        inputs.insert("bound".into(), json!(bound));
        let answer = verdict.answer;
        let verdicts = json!([{
            "query": "lip-member",
            "element": x.to_string(),
            "verdict": report::verdict3_json(&verdict),
        }]);
        let summary = vec![format!("lip-member {element} in {seq_name}: {answer}")];
        Ok(Outcome {
            report: report::envelope(
                "lip-member",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking: false,
        })
    })
}

pub fn run_classify(input: &Path, diagram: &str, bound: u32) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let square = d.build_diagram(diagram)?;
        let classification = classify(&square, bound)?;
        let mut inputs = base_inputs(d);
        inputs.insert("diagram".into(), json!(diagram));
        inputs.insert("bound".into(), json!(bound));
        let summary = vec![format!(
            "classify {diagram}: maranesi={} strong_lipman={} lipman={}",
            classification.maranesi,
            classification.strong_lipman,
            report::verdict_str(classification.lipman)
        )];
        let verdicts = json!([{
            "query": "classify",
            "classification": report::classification_json(&classification),
        }]);
        Ok(Outcome {
            report: report::envelope(
                "classify",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking: false,
        })
    })
}

pub fn run_morph(input: &Path, morphism: &str) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let psi = d.morphism(morphism)?;
        let surjective = is_surjective(psi)?;
        let (integral, items) = is_integral(psi)?;
        let radicial = is_radicial(psi)?;
        let (unramified, witness) = is_unramified(psi)?;
        let mut inputs = base_inputs(d);
        inputs.insert("morphism".into(), json!(morphism));
        let verdicts = json!([{
            "query": "morph",
            "from": psi.from_algebra().name(),
            "to": psi.to_algebra().name(),
            "well_defined": true,
            "surjective": surjective,
            "integral": report::verdict_str(integral),
            "integral_generators": report::integrality_json(&items),
            "radicial": radicial,
            "unramified": unramified,
            "idempotent": witness.map(|w| json!({
                "element": w.element.to_string(),
                "verified": w.verified,
            })).unwrap_or(Value::Null),
        }]);
        let summary = vec![format!(
            "morph {morphism}: surjective={surjective} integral={} radicial={radicial} unramified={unramified}",
            report::verdict_str(integral)
        )];
        Ok(Outcome {
            report: report::envelope(
                "morph",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking: false,
        })
    })
}

pub fn run_contraction(
    input: &Path,
    diagram: &str,
    testset: &str,
    mode_name: &str,
    bound: u32,
) -> Result<Outcome> {
    let mode = parse_mode(mode_name)?;
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let square = d.build_diagram(diagram)?;
        let set = parse_testset(d, square.top(), testset)?;
        let classification = classify(&square, bound)?;
        let contraction = contraction_check_classified(&square, classification, mode, &set, bound)?;
        let mut inputs = base_inputs(d);
        inputs.insert("diagram".into(), json!(diagram));
        inputs.insert("testset".into(), json!(testset));
        inputs.insert("mode".into(), json!(mode_name));
        inputs.insert("bound".into(), json!(bound));
        let build_breaking = contraction.build_breaking;
        let summary = vec![format!(
            "contraction {diagram} [{mode_name}] on {testset}: {} elements, {} image-law violations, {} contraction failures{}",
            contraction.transfers.len(),
            contraction.image_law_violations.len(),
            contraction.contraction_failures.len(),
            if build_breaking { " — BUILD-BREAKING" } else { "" }
        )];
        let verdicts = json!([{
            "query": "contraction",
            "result": report::contraction_json(&contraction),
            "classification": report::classification_json(&contraction.classification),
        }]);
        Ok(Outcome {
            report: report::envelope(
                "contraction",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking,
        })
    })
}

pub fn run_quotient_check(
    input: &Path,
    seq_name: &str,
    ideal_name: &str,
    testset: &str,
) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let seq = d.sequence(seq_name)?;
        let ideal = d.ideal(ideal_name)?;
        let set = parse_testset(d, seq, testset)?;
        let result = quotient_check(seq, ideal, &set)?;
        let mut inputs = base_inputs(d);
        inputs.insert("seq".into(), json!(seq_name));
        inputs.insert("ideal".into(), json!(ideal_name));
        inputs.insert("testset".into(), json!(testset));
        let build_breaking = result.build_breaking;
        let summary = vec![format!(
            "quotient-check {seq_name} mod {ideal_name}: {} elements, {} forward / {} reverse failures{}{}",
            result.pairs.len(),
            result.forward_failures.len(),
            result.reverse_failures.len(),
            if result.degenerate { " (degenerate zero ring)" } else { "" },
            if build_breaking { " — BUILD-BREAKING" } else { "" }
        )];
        let verdicts = json!([{
            "query": "quotient-check",
            "result": report::quotient_json(&result),
        }]);
        Ok(Outcome {
            report: report::envelope(
                "quotient-check",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking,
        })
    })
}

pub fn run_idempotency(
    input: &Path,
    seq_name: &str,
    gens_testset: &str,
    testset: &str,
) -> Result<Outcome> {
    let doc = load_corpus(input)?;
    global_stats::reset();
    let start = Instant::now();
    with_doc!(&doc, |d| {
        let seq = d.sequence(seq_name)?;
        let gens = parse_testset(d, seq, gens_testset)?;
        let set = parse_testset(d, seq, testset)?;
        let result = idempotency_check(seq, &gens, &set)?;
        let mut inputs = base_inputs(d);
        inputs.insert("seq".into(), json!(seq_name));
        inputs.insert("gens".into(), json!(gens_testset));
        inputs.insert("testset".into(), json!(testset));
        let build_breaking = result.build_breaking;
        let summary = vec![format!(
            "idempotency {seq_name} + {gens_testset}: {} elements, {} enlargement / {} monotonicity failures{}",
            result.pairs.len(),
            result.enlargement_failures.len(),
            result.monotonicity_failures.len(),
            if build_breaking { " — BUILD-BREAKING" } else { "" }
        )];
        let verdicts = json!([{
            "query": "idempotency",
            "result": report::idempotency_json(&result),
        }]);
        Ok(Outcome {
            report: report::envelope(
                "idempotency",
                Value::Object(inputs),
                verdicts,
                start.elapsed().as_millis(),
            ),
            summary,
            build_breaking,
        })
    })
}

/// All acceptance-style checks over one document: per sequence, kernel data
/// plus membership of every generator image and every parseable test set;
/// per diagram, classification with its internal implications plus a
/// contraction run per parseable test set; per ideal, its reduced basis.
fn suite_doc<F: Field>(
    doc: &CorpusDocument<F>,
    mode: Mode,
    bound: u32,
) -> Result<(Value, Vec<String>, bool)> {
    let mut breaking = false;
    let mut checks: Vec<Value> = Vec::new();
    let mut summary = Vec::new();

    // surjective morphisms must be integral with degree-1 certificates
    for (name, psi) in &doc.morphisms {
        let surjective = is_surjective(psi)?;
        if !surjective {
            continue;
        }
        let (verdict, items) = is_integral(psi)?;
        let degree_one = verdict == Verdict::Yes && items.iter().all(|i| i.degree == Some(1));
        if !degree_one {
            breaking = true;
            summary.push(format!(
                "  morphism {name}: surjective but integral check failed — FAIL"
            ));
        }
        checks.push(json!({
            "kind": "morphism",
            "name": name,
            "surjective": true,
            "integral": report::verdict_str(verdict),
            "degree_one_certificates": degree_one,
        }));
    }

    for (name, seq) in &doc.sequences {
        let square = TensorSquare::build(seq)?;
        let mut image_entries = Vec::new();
        let mut ok = true;
        for img in seq.g().images() {
            let (member, exponent) = wn_member(&square, img)?;
            let lip = lip_member(&square, img, bound)?;
            let entry_ok = member && lip.answer == Verdict::Yes;
            ok &= entry_ok;
            image_entries.push(json!({
                "image": img.to_string(),
                "wn": member,
                "wn_exponent": exponent,
                "lip": report::verdict_str(lip.answer),
                "ok": entry_ok,
            }));
        }
        if !ok {
            breaking = true;
        }
        let mut testset_entries = Vec::new();
        for (tname, texts) in &doc.testsets {
            let parsed: std::result::Result<Vec<Poly<F>>, _> =
                texts.iter().map(|t| doc.parse_in_top(seq, t)).collect();
            let Ok(set) = parsed else { continue };
            let mut members = Vec::new();
            for x in &set {
                let (member, exponent) = wn_member(&square, x)?;
                members.push(json!({
                    "element": x.to_string(),
                    "wn": member,
                    "wn_exponent": exponent,
                }));
            }
            testset_entries.push(json!({ "testset": tname, "members": members }));
        }
        summary.push(format!(
            "  sequence {name}: {} kernel generators, images {}",
            square.phi_kernel().gens().len(),
            if ok { "ok" } else { "FAIL" }
        ));
        checks.push(json!({
            "kind": "sequence",
            "name": name,
            "phi_kernel": report::polys_json(square.phi_kernel().gens()),
            "generator_images": image_entries,
            "memberships": testset_entries,
        }));
    }

    for name in doc.diagrams.keys() {
        let square = doc.build_diagram(name)?;
        let classification = classify(&square, bound)?;
        // the classification implications are theorems; violating them is a bug
        let strong_ok = !classification.strong_lipman
            || (classification.lipman == Verdict::Yes && classification.maranesi);
        let lipman_ok = classification.lipman != Verdict::Yes || classification.maranesi;
        // surjective middle morphism forces a strong Lipman diagram; a
        // radicial middle with surjective connecting morphism forces Maranesi
        let surjective_middle_ok = !classification.f_a.surjective || classification.strong_lipman;
        let radicial_middle_ok = !(classification.f_a.radicial && classification.f.surjective)
            || classification.maranesi;
        let invariant_ok = strong_ok && lipman_ok && surjective_middle_ok && radicial_middle_ok;
        if !invariant_ok {
            breaking = true;
        }
        let theorems = matched_theorems(&classification, mode);
        let mut contraction_entries = Vec::new();
        for (tname, texts) in &doc.testsets {
            let parsed: std::result::Result<Vec<Poly<F>>, _> = texts
                .iter()
                .map(|t| doc.parse_in_top(square.top(), t))
                .collect();
            let Ok(set) = parsed else { continue };
            let result =
                contraction_check_classified(&square, classification.clone(), mode, &set, bound)?;
            breaking |= result.build_breaking;
            contraction_entries.push(json!({
                "testset": tname,
                "result": report::contraction_json(&result),
            }));
        }
        summary.push(format!(
            "  diagram {name}: maranesi={} strong={} lipman={} theorems={} {}",
            classification.maranesi,
            classification.strong_lipman,
            report::verdict_str(classification.lipman),
            theorems.len(),
            if invariant_ok { "ok" } else { "FAIL" }
        ));
        checks.push(json!({
            "kind": "diagram",
            "name": name,
            "classification": report::classification_json(&classification),
            "classification_invariants_ok": invariant_ok,
            "matched_theorems": theorems,
            "contractions": contraction_entries,
        }));
    }

    for (name, ideal) in &doc.ideals {
        let gb = ideal.gb(&MonomialOrder::GrevLex)?;
        checks.push(json!({
            "kind": "ideal",
            "name": name,
            "reduced_basis": report::polys_json(gb.generators()),
            "is_monomial": ideal.is_monomial()?,
            "basis_size": gb.generators().len(),
        }));
    }

    Ok((Value::Array(checks), summary, breaking))
}

pub fn run_suite(input: &Path, mode_name: &str, bound: u32) -> Result<Outcome> {
    let mode = parse_mode(mode_name)?;
    let mut files: Vec<PathBuf> = if input.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(input)
            .map_err(|source| CorpusError::Io {
                path: input.to_path_buf(),
                source,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
            .collect();
        v.sort();
        v
    } else {
        vec![input.to_path_buf()]
    };
    if files.is_empty() {
        return Err(CliError::Usage(format!(
            "no corpus files found under `{}`",
            input.display()
        )));
    }

    global_stats::reset();
    let start = Instant::now();
    let mut file_reports = Vec::new();
    let mut summary = Vec::new();
    let mut breaking = false;
    for path in files.drain(..) {
        let doc = load_corpus(&path)?;
        let (checks, mut lines, file_breaking) = with_doc!(&doc, |d| {
            let (checks, lines, b) = suite_doc(d, mode, bound)?;
            let mut head = vec![format!(
                "{} :: {} algebras, {} morphisms, {} sequences, {} diagrams — {}",
                path.display(),
                d.algebras.len(),
                d.morphisms.len(),
                d.sequences.len(),
                d.diagrams.len(),
                if b { "FAIL" } else { "ok" }
            )];
            head.extend(lines);
            std::result::Result::<_, CliError>::Ok((
                json!({
                    "file": path.display().to_string(),
                    "sha256": d.sha256.clone(),
                    "checks": checks,
                    "build_breaking": b,
                }),
                head,
                b,
            ))
        })?;
        breaking |= file_breaking;
        summary.append(&mut lines);
        file_reports.push(checks);
    }
    let inputs = json!({
        "input": input.display().to_string(),
        "mode": mode_name,
        "bound": bound,
    });
    Ok(Outcome {
        report: report::envelope(
            "suite",
            inputs,
            Value::Array(file_reports),
            start.elapsed().as_millis(),
        ),
        summary,
        build_breaking: breaking,
    })
}
