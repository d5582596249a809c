//! Stable JSON encodings for the CLI: plane-family inputs, verdicts,
//! certificates and probe reports.
//!
//! Rationals serialize as `p/q` strings (plain integers allowed);
//! decimal literals in inputs expand exactly, never through floating
//! point. Output maps are sorted by key, so identical inputs produce
//! byte-identical output.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::certify::Certificate;
use crate::complex::Cplx;
use crate::decide::{PairVerdict, Verdict, Witness};
use crate::mat2::Mat2;
use crate::planes::{
    graph_to_span, to_weinstock_form, GraphPlane, PlaneError, PlaneSpan, WeinstockFamily,
};
use crate::scalar::{rat_from_str, ParseRatError, Rat, Scalar, Sqrt3};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid rational: {0}")]
    Rational(#[from] ParseRatError),
    #[error("invalid plane input: {0}")]
    Plane(#[from] PlaneError),
    #[error("{0}")]
    Schema(String),
}

/// One plane in the input schema: exactly one of `matrix`, `graph`, `span`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneInput {
    #[serde(default)]
    matrix: Option<[[String; 2]; 2]>,
    #[serde(default)]
    graph: Option<GraphInput>,
    #[serde(default)]
    span: Option<[[String; 4]; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphInput {
    a: [String; 2],
    b: [String; 2],
}

/// Top-level family input.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct FamilyInput {
    planes: Vec<PlaneInput>,
    #[serde(default)]
    base_index: usize,
    /// Emitted by `normalize`; carried along but not re-consumed.
    #[serde(default)]
    provenance: Option<Value>,
}

fn parse_rat(s: &str) -> Result<Rat, JsonError> {
    Ok(rat_from_str(s)?)
}

fn parse_mat(m: &[[String; 2]; 2]) -> Result<Mat2<Rat>, JsonError> {
    Ok(Mat2::new(
        parse_rat(&m[0][0])?,
        parse_rat(&m[0][1])?,
        parse_rat(&m[1][0])?,
        parse_rat(&m[1][1])?,
    ))
}

fn parse_cplx(c: &[String; 2]) -> Result<Cplx<Rat>, JsonError> {
    Ok(Cplx::new(parse_rat(&c[0])?, parse_rat(&c[1])?))
}

enum ParsedPlane {
    Matrix(Mat2<Rat>),
    Span(PlaneSpan<Rat>),
    Graph(GraphPlane<Rat>),
}

fn parse_plane(p: &PlaneInput) -> Result<ParsedPlane, JsonError> {
    match (&p.matrix, &p.graph, &p.span) {
        (Some(m), None, None) => Ok(ParsedPlane::Matrix(parse_mat(m)?)),
        (None, Some(g), None) => Ok(ParsedPlane::Graph(GraphPlane::new(
            parse_cplx(&g.a)?,
            parse_cplx(&g.b)?,
        ))),
        (None, None, Some(s)) => {
            let v = |row: &[String; 4]| -> Result<[Cplx<Rat>; 2], JsonError> {
                Ok([
                    Cplx::new(parse_rat(&row[0])?, parse_rat(&row[1])?),
                    Cplx::new(parse_rat(&row[2])?, parse_rat(&row[3])?),
                ])
            };
            Ok(ParsedPlane::Span(PlaneSpan::new(v(&s[0])?, v(&s[1])?)))
        }
        _ => Err(JsonError::Schema(
            "each plane needs exactly one of `matrix`, `graph`, `span`".into(),
        )),
    }
}

/// Parses a family from JSON text.
///
/// All-matrix inputs are already in normal form: the base plane R^2 is
/// implicit and `baseIndex` must be 0. As soon as a span or graph appears,
/// every entry (matrices included, via the columns of A + iI) is treated
/// as a raw plane and `baseIndex` selects the plane mapped to R^2.
pub fn parse_family(text: &str) -> Result<WeinstockFamily<Rat>, JsonError> {
    let input: FamilyInput = serde_json::from_str(text)?;
    let _ = &input.provenance;
    if input.planes.is_empty() {
        return Err(JsonError::Schema("family must list at least one plane".into()));
    }
    let parsed: Vec<ParsedPlane> = input
        .planes
        .iter()
        .map(parse_plane)
        .collect::<Result<_, _>>()?;
    let all_matrices = parsed.iter().all(|p| matches!(p, ParsedPlane::Matrix(_)));
    if all_matrices {
        if input.base_index != 0 {
            return Err(JsonError::Schema(
                "baseIndex must be 0 for matrix-form input (the base plane is implicit)"
                    .into(),
            ));
        }
        let matrices = parsed
            .into_iter()
            .map(|p| match p {
                ParsedPlane::Matrix(m) => m,
                _ => unreachable!(),
            })
            .collect();
        return Ok(WeinstockFamily::new(matrices));
    }
    let spans: Vec<PlaneSpan<Rat>> = parsed
        .iter()
        .map(|p| match p {
            ParsedPlane::Matrix(m) => PlaneSpan::from_matrix(m),
            ParsedPlane::Span(s) => s.clone(),
            ParsedPlane::Graph(g) => graph_to_span(g),
        })
        .collect();
    Ok(to_weinstock_form(&spans, input.base_index)?)
}

pub fn mat_to_json<F: Scalar>(m: &Mat2<F>) -> Value {
    json!([
        [m.e[0][0].to_string(), m.e[0][1].to_string()],
        [m.e[1][0].to_string(), m.e[1][1].to_string()]
    ])
}

/// Family as re-ingestible JSON (the `normalize` output).
pub fn family_to_json(f: &WeinstockFamily<Rat>) -> Value {
    let planes: Vec<Value> = f
        .matrices
        .iter()
        .map(|m| json!({ "matrix": mat_to_json(m) }))
        .collect();
    let mut out = json!({ "planes": planes, "baseIndex": 0 });
    if let Some(ch) = &f.provenance {
        let row = |r: usize| -> Value {
            json!([
                [ch.e[r][0].re.to_string(), ch.e[r][0].im.to_string()],
                [ch.e[r][1].re.to_string(), ch.e[r][1].im.to_string()]
            ])
        };
        out["provenance"] = json!({ "changeOfCoordinates": [row(0), row(1)] });
    }
    out
}

fn witness_to_json<F: Scalar>(w: &Witness<F>) -> Value {
    match w {
        Witness::ColinearPair { l, m } => json!({
            "kind": "colinearPair",
            "planes": [l, m],
        }),
        Witness::PairFailure { j, k, reduced } => json!({
            "kind": "pairFailure",
            "planes": [j, k],
            "reducedMatrix": mat_to_json(reduced),
        }),
    }
}

/// Verdict as JSON; the certificate travels separately (a file written
/// alongside, or inlined under `certificate` when no path was given).
pub fn verdict_to_json<F: Scalar>(v: &Verdict<F>, certificate_id: Option<&str>) -> Value {
    let mut out = json!({
        "outcome": v.outcome,
        "rule": v.rule,
        "trace": v.trace,
    });
    if let Some(w) = &v.witness {
        out["witness"] = witness_to_json(w);
    }
    if let Some(o) = &v.omega {
        out["omega"] = json!(o);
    }
    if let Some(id) = certificate_id {
        out["certificateId"] = json!(id);
    }
    out
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates serialize infallibly")
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, JsonError> {
    let v: Value = serde_json::from_str(text)?;
    // Accept a bare certificate, or a verdict with an inlined one.
    if let Some(embedded) = v.get("certificate") {
        return Ok(serde_json::from_value(embedded.clone())?);
    }
    Ok(serde_json::from_value(v)?)
}

pub fn pairwise_to_json<F: Scalar>(pairs: &[PairVerdict<F>]) -> Value {
    let items: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({
                "planes": [p.i, p.j],
                "outcome": p.verdict.outcome,
            })
        })
        .collect();
    json!(items)
}

/// Conjugation outcome as JSON: conjugator, canonical forms, shape and
/// residual, with exact entries included when the arithmetic stayed in
/// the scalar field.
pub fn conjugation_to_json<F: Scalar>(
    c: &crate::normalform::ConjugationResult<F>,
) -> Value {
    let f64_mat = |m: &Mat2<f64>| json!(m.e);
    let mut out = json!({
        "conjugator": f64_mat(&c.conjugator),
        "canonicalForms": c.canonical_forms.iter().map(f64_mat).collect::<Vec<_>>(),
        "shape": c.shape,
        "residual": c.residual,
    });
    if let Some(s) = &c.exact_conjugator {
        out["exactConjugator"] = mat_to_json(s);
    }
    if let Some(forms) = &c.exact_forms {
        out["exactForms"] = json!(forms.iter().map(mat_to_json).collect::<Vec<_>>());
    }
    out
}

pub fn sqrt3_to_json(x: &Sqrt3) -> Value {
    json!({
        "a": x.a.to_string(),
        "b": x.b.to_string(),
        "approx": x.to_f64(),
    })
}

pub fn sqrt3_mat_to_json(m: &Mat2<Sqrt3>) -> Value {
    json!([
        [sqrt3_to_json(&m.e[0][0]), sqrt3_to_json(&m.e[0][1])],
        [sqrt3_to_json(&m.e[1][0]), sqrt3_to_json(&m.e[1][1])]
    ])
}

/// Pretty printer with a trailing newline; `serde_json` maps are sorted,
/// so the bytes are stable for identical inputs.
pub fn to_stable_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
