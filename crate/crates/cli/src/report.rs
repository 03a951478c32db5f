//! Machine-readable reports. Key order is fixed (sorted maps) so re-running
//! a command yields byte-identical output, `wall_ms` excepted.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use satnorm::diagram::{
    ClassificationReport, ContractionReport, GeneratorIntegrality, IdempotencyReport,
    MembershipPair, Mode, MorphismFlags, QuotientReport,
};
use satnorm::field::Field;
use satnorm::groebner::global_stats;
use satnorm::poly::Poly;
use satnorm::saturation::{Certificate, Verdict, Verdict3};

pub const REPORT_SCHEMA: &str = "satnorm-report/1";

/// Assembles the report envelope.
pub fn envelope(command: &str, inputs: Value, verdicts: Value, wall_ms: u128) -> Value {
    let stats = global_stats::snapshot();
    json!({
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": inputs,
        "verdicts": verdicts,
        "gb_stats": {
            "computations": stats.computations,
            "pairs_considered": stats.pairs_considered,
            "max_basis_size": stats.max_basis_size,
        },
        "wall_ms": wall_ms as u64,
    })
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "Yes",
        Verdict::No => "No",
        Verdict::Unknown => "Unknown",
    }
}

pub fn mode_str(mode: Mode) -> &'static str {
    match mode {
        Mode::Wn => "wn",
        Mode::Lip => "lip",
    }
}

fn ratio(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn certificate_json<F: Field>(cert: &Certificate<F>) -> Value {
    match cert {
        Certificate::RadicalExponent { exponent } => json!({
            "kind": "radical-exponent",
            "exponent": exponent,
        }),
        Certificate::ExponentBeyondBound { bound } => json!({
            "kind": "radical-exponent-beyond-bound",
            "bound": bound,
        }),
        Certificate::RadicalRejection => json!({ "kind": "radical-rejection" }),
        Certificate::Dependence(dep) => json!({
            "kind": "dependence",
            "degree": dep.degree,
            "coefficients": dep.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "combinations": dep.combinations.iter().map(|combo| {
                combo.iter().map(|(gen, cof)| json!({
                    "generator": gen.to_string(),
                    "cofactor": cof.to_string(),
                })).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        }),
        Certificate::NewtonWitness { witnesses } => json!({
            "kind": "newton-witness",
            "witnesses": witnesses.iter().map(|(m, lambda)| json!({
                "monomial": m.to_string(),
                "lambda": lambda.iter().map(ratio).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        Certificate::NewtonRejection { monomial, farkas } => json!({
            "kind": "newton-rejection",
            "monomial": monomial.to_string(),
            "farkas": farkas.iter().map(ratio).collect::<Vec<_>>(),
        }),
        Certificate::BoundExhausted { bound } => json!({
            "kind": "bound-exhausted",
            "bound": bound,
        }),
    }
}

pub fn verdict3_json<F: Field>(v: &Verdict3<F>) -> Value {
    json!({
        "answer": verdict_str(v.answer),
        "certificate": certificate_json(&v.certificate),
    })
}

fn flags_json(flags: &MorphismFlags) -> Value {
    let mut map = Map::new();
    map.insert("surjective".into(), json!(flags.surjective));
    map.insert("radicial".into(), json!(flags.radicial));
    map.insert("unramified".into(), json!(flags.unramified));
    map.insert("integral".into(), json!(verdict_str(flags.integral)));
    map.insert(
        "retraction_certified".into(),
        match flags.retraction_certified {
            Some(b) => json!(b),
            None => Value::Null,
        },
    );
    Value::Object(map)
}

pub fn classification_json<F: Field>(report: &ClassificationReport<F>) -> Value {
    json!({
        "commutes": report.commutes,
        "maranesi": report.maranesi,
        "strong_lipman": report.strong_lipman,
        "lipman": verdict_str(report.lipman),
        "lipman_details": report.lipman_details.iter().map(|check| json!({
            "direction": check.direction,
            "generator": check.generator.to_string(),
            "verdict": verdict3_json(&check.verdict),
        })).collect::<Vec<_>>(),
        "fR": flags_json(&report.f_r),
        "fA": flags_json(&report.f_a),
        "f": flags_json(&report.f),
        "ker_p_nil": report.ker_p_nil,
        "idempotent": report.idempotent_witness.as_ref().map(|w| json!({
            "element": w.element.to_string(),
            "verified": w.verified,
        })).unwrap_or(Value::Null),
    })
}

pub fn integrality_json<F: Field>(items: &[GeneratorIntegrality<F>]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|item| {
                json!({
                    "generator": item.generator,
                    "status": verdict_str(item.status),
                    "degree": item.degree,
                    "equation": item.equation.as_ref().map(|p| p.to_string()),
                })
            })
            .collect(),
    )
}

pub fn contraction_json<F: Field>(report: &ContractionReport<F>) -> Value {
    let transfers: Vec<Value> = report
        .transfers
        .iter()
        .map(|t| {
            json!({
                "element": t.element.to_string(),
                "image": t.image.to_string(),
                "top": verdict3_json(&t.top),
                "bottom": verdict3_json(&t.bottom),
            })
        })
        .collect();
    json!({
        "mode": mode_str(report.mode),
        "matched_theorems": report.matched_theorems,
        "transfers": transfers,
        "image_law_violations": report.image_law_violations,
        "contraction_failures": report.contraction_failures,
        "build_breaking": report.build_breaking,
    })
}

fn pairs_json<F: Field>(pairs: &[MembershipPair<F>]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|p| {
                json!({
                    "element": p.element.to_string(),
                    "original": p.original,
                    "derived": p.derived,
                })
            })
            .collect(),
    )
}

pub fn quotient_json<F: Field>(report: &QuotientReport<F>) -> Value {
    json!({
        "pairs": pairs_json(&report.pairs),
        "forward_failures": report.forward_failures,
        "reverse_failures": report.reverse_failures,
        "degenerate": report.degenerate,
        "build_breaking": report.build_breaking,
    })
}

pub fn idempotency_json<F: Field>(report: &IdempotencyReport<F>) -> Value {
    json!({
        "pairs": pairs_json(&report.pairs),
        "enlargement_failures": report.enlargement_failures,
        "monotonicity_failures": report.monotonicity_failures,
        "build_breaking": report.build_breaking,
    })
}

/// Polynomial list as strings.
pub fn polys_json<F: Field>(polys: &[Poly<F>]) -> Value {
    Value::Array(polys.iter().map(|p| json!(p.to_string())).collect())
}
