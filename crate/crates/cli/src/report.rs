//! Reports are JSON values with insertion-ordered keys; the text form is a
//! rendering of the same tree, so both carry identical content.

use serde_json::{json, Map, Value};
use stratakit_core::fmod::{Certificate, DimResult, HomologyResult, ResolutionStatus};
use stratakit_core::linalg::{Matrix, Scalar};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct Report {
    pub input: Value,
    /// `(command line, result)` in execution order.
    pub analyses: Vec<(String, Value)>,
    pub seed: u64,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut analyses = Map::new();
        for (k, v) in &self.analyses {
            analyses.insert(k.clone(), v.clone());
        }
        json!({ "input": self.input, "analyses": analyses, "version": VERSION, "seed": self.seed })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("stratakit {VERSION}, seed {}\n", self.seed);
        out.push_str("input:\n");
        render(&self.input, 1, &mut out);
        for (k, v) in &self.analyses {
            out.push_str(&format!("\n== {k}\n"));
            render(v, 0, &mut out);
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Arrays of scalars (and of such arrays) print on one line.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar_text(v) {
        return Some(s);
    }
    if v.as_object().is_some_and(|m| m.is_empty()) {
        return Some("{}".into());
    }
    let Value::Array(items) = v else { return None };
    let parts = items.iter().map(inline).collect::<Option<Vec<_>>>()?;
    let s = format!("[{}]", parts.join(", "));
    (s.len() <= 100).then_some(s)
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v).unwrap_or_default())),
    }
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Row-major, entries as exact strings such as `"1/2"`.
pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar).collect())).collect())
}

pub fn dim_result(d: &DimResult) -> Value {
    match d {
        DimResult::Finite(v) => json!({ "status": "finite", "value": v }),
        DimResult::Infinite => json!({ "status": "infinite" }),
        DimResult::Unknown => json!({ "status": "unknown" }),
    }
}

pub fn homology(h: &HomologyResult) -> Value {
    match h.dimension() {
        Some(d) => json!(d),
        None => json!("unknown"),
    }
}

pub fn certificate(c: &Certificate) -> Value {
    let (i, j) = c.indices();
    match c {
        Certificate::Isomorphism { map, .. } => {
            json!({ "kind": c.kind(), "i": i, "j": j, "statement": format!("syzygy {i} is isomorphic to syzygy {j}"), "map": matrix(map) })
        }
        Certificate::SplitSummand { certificate, .. } => json!({
            "kind": c.kind(),
            "i": i,
            "j": j,
            "statement": format!("syzygy {i} is a direct summand of syzygy {j}"),
            "section": matrix(&certificate.section),
            "retraction": matrix(&certificate.retraction),
        }),
    }
}

pub fn status(s: &ResolutionStatus) -> Value {
    match s {
        ResolutionStatus::Finite(d) => json!({ "summary": format!("Finite({d})"), "status": "finite", "proj_dim": d }),
        ResolutionStatus::CertifiedInfinite(c) => {
            let (i, j) = c.indices();
            json!({ "summary": format!("CertifiedInfinite({i},{j})"), "status": "infinite", "certificate": certificate(c) })
        }
        ResolutionStatus::Cutoff(n) => json!({ "summary": format!("Cutoff({n})"), "status": "cutoff", "computed_terms": n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stratakit_core::linalg::Field;

    #[test]
    fn fractions_stay_exact() {
        let q = Field::RATIONALS;
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        let m = Matrix::from_rows(q, 2, vec![vec![half, q.one()]]);
        assert_eq!(serde_json::to_string(&matrix(&m)).unwrap(), r#"[["1/2","1"]]"#);
    }

    #[test]
    fn text_rendering() {
        let r = Report {
            input: json!({ "field": "Q" }),
            analyses: vec![("gldim".into(), json!({ "gldim": dim_result(&DimResult::Finite(0)), "rows": [[1, 2], [3, 4]] }))],
            seed: 0,
        };
        let t = r.to_text();
        assert!(t.contains("== gldim\ngldim:\n  status: finite\n  value: 0\nrows: [[1, 2], [3, 4]]\n"));
        assert!(r.to_json().contains(r#""gldim": {
        "status": "finite",
        "value": 0
      }"#));
    }
}
