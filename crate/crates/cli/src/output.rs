//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write as _;

use circtree::arith::{exact_sqrt, CaseTag, Decomposition};
use circtree::ball::Ball;
use circtree::graph::IntegerMatrix;
use circtree::mahler::{ConvergenceRow, MahlerReport};
use circtree::verify::{ExampleReport, VerifyReport};
use circtree::{CirculantSpec, TauResult};
use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::TauRun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub struct Rendered {
    pub text: String,
}

fn json_text(v: &Value) -> Rendered {
    let mut text = serde_json::to_string_pretty(v).expect("json values always serialize");
    text.push('\n');
    Rendered { text }
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Rendered {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    Rendered { text: String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8") }
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn spec_json(s: &CirculantSpec) -> Value {
    json!({
        "label": s.family_label(),
        "beta": s.beta,
        "s": s.s_jumps,
        "alpha": s.alpha_jumps,
        "n": s.n,
        "order": s.m,
    })
}

fn spec_cells(s: &CirculantSpec) -> Vec<String> {
    vec![s.beta.to_string(), list(&s.s_jumps), list(&s.alpha_jumps), s.n.to_string()]
}

fn tau_json(t: &TauResult) -> Value {
    json!({
        "value": t.value.to_string(),
        "method": t.method.name(),
        "certified": t.certified,
        "precision_bits": t.precision_used,
    })
}

/// The document of one run: the agreed value and, with several methods,
/// each method's own result.
fn run_json(run: &TauRun) -> Value {
    if let [(_, Ok(t))] = run.results.as_slice() {
        let mut doc = tau_json(t);
        doc["spec"] = spec_json(&run.spec);
        return doc;
    }
    let ok: Vec<&TauResult> = run.results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let methods: Vec<Value> = run
        .results
        .iter()
        .map(|(m, r)| match r {
            Ok(t) => tau_json(t),
            Err(e) => json!({ "method": m.name(), "error": e.to_string() }),
        })
        .collect();
    json!({
        "spec": spec_json(&run.spec),
        "value": run.consensus().map(|t| t.value.to_string()),
        "method": "all",
        "certified": run.agree && ok.iter().all(|t| t.certified),
        "precision_bits": ok.iter().map(|t| t.precision_used).max().unwrap_or(0),
        "agree": run.agree,
        "methods": methods,
    })
}

pub fn tau(runs: &[TauRun], format: Format) -> Rendered {
    match format {
        Format::Json => json_text(&Value::Array(runs.iter().map(run_json).collect())),
        Format::Csv => {
            let rows = runs
                .iter()
                .map(|r| {
                    let doc = run_json(r);
                    let mut row = spec_cells(&r.spec);
                    row.push(doc["method"].as_str().unwrap_or_default().to_string());
                    row.push(doc["value"].as_str().unwrap_or_default().to_string());
                    row.push(doc["certified"].to_string());
                    row.push(doc["precision_bits"].to_string());
                    row.push(r.agree.to_string());
                    row
                })
                .collect();
            csv_text(&["beta", "s", "alpha", "n", "method", "value", "certified", "precision_bits", "agree"], rows)
        }
        Format::Human => {
            let mut out = String::new();
            for r in runs {
                let _ = writeln!(out, "{}  ({} vertices)", r.spec, r.spec.m);
                for (m, res) in &r.results {
                    match res {
                        Ok(t) => {
                            let how = if t.precision_used == 0 { "exact".to_string() } else { format!("{} bits", t.precision_used) };
                            let cert = if t.certified { "certified" } else { "uncertified" };
                            let _ = writeln!(out, "  {:<18} {}  [{how}, {cert}]", m.name(), t.value);
                        }
                        Err(e) => {
                            let _ = writeln!(out, "  {:<18} error: {e}", m.name());
                        }
                    }
                }
                if r.results.len() > 1 {
                    let _ = writeln!(out, "  methods {}", if r.agree { "agree" } else { "DISAGREE" });
                }
                let _ = writeln!(out, "  case: {}", CaseTag::of(r.spec.n, r.spec.beta).describe());
            }
            Rendered { text: out }
        }
    }
}

fn tag_name(t: CaseTag) -> &'static str {
    match t {
        CaseTag::OddOdd => "odd-odd",
        CaseTag::EvenN => "even-n",
        CaseTag::OddNEvenBeta => "odd-n-even-beta",
    }
}

/// `a` for the smallest coefficient, i.e. the largest square factor.
fn maximal_a(spec: &CirculantSpec, tau: &BigUint, minimal: u64) -> Option<BigUint> {
    exact_sqrt(&(tau / (BigUint::from(spec.n) * BigUint::from(minimal))))
}

fn decomposition_json(spec: &CirculantSpec, t: &TauResult, d: &Decomposition) -> Value {
    let mut doc = tau_json(t);
    doc["spec"] = spec_json(spec);
    doc["case_tag"] = json!(tag_name(d.case_tag));
    doc["case"] = json!(d.case_tag.describe());
    doc["coefficient"] = json!(d.coefficient);
    doc["a_n"] = json!(d.a_n.to_string());
    doc["minimal_coefficient"] = json!(d.minimal_coefficient);
    doc["maximal_a_n"] = json!(maximal_a(spec, &t.value, d.minimal_coefficient).map(|a| a.to_string()));
    doc["prediction_is_minimal"] = json!(d.coefficient == d.minimal_coefficient);
    doc
}

pub fn decompositions(rows: &[(CirculantSpec, TauResult, Decomposition)], format: Format) -> Rendered {
    match format {
        Format::Json => json_text(&Value::Array(rows.iter().map(|(s, t, d)| decomposition_json(s, t, d)).collect())),
        Format::Csv => {
            let body = rows
                .iter()
                .map(|(s, t, d)| {
                    let mut row = spec_cells(s);
                    row.extend([
                        t.value.to_string(),
                        tag_name(d.case_tag).to_string(),
                        d.coefficient.to_string(),
                        d.a_n.to_string(),
                        d.minimal_coefficient.to_string(),
                        maximal_a(s, &t.value, d.minimal_coefficient).map(|a| a.to_string()).unwrap_or_default(),
                    ]);
                    row
                })
                .collect();
            csv_text(&["beta", "s", "alpha", "n", "value", "case_tag", "coefficient", "a_n", "minimal_coefficient", "maximal_a_n"], body)
        }
        Format::Human => {
            let mut out = String::new();
            for (s, t, d) in rows {
                let _ = writeln!(out, "{s}: tau = {}", t.value);
                let _ = writeln!(out, "  = {} * {} * {}^2", d.coefficient, s.n, d.a_n);
                let _ = writeln!(out, "  case: {}", d.case_tag.describe());
                if d.coefficient != d.minimal_coefficient {
                    if let Some(a) = maximal_a(s, &t.value, d.minimal_coefficient) {
                        let _ = writeln!(out, "  smallest coefficient: {} * {} * {a}^2", d.minimal_coefficient, s.n);
                    }
                }
            }
            Rendered { text: out }
        }
    }
}

fn ball_json(b: &Ball) -> Value {
    json!({ "mid": b.mid_f64(), "radius": b.rad_f64() })
}

fn convergence_json(rows: &[ConvergenceRow]) -> Value {
    serde_json::to_value(rows).expect("rows serialize")
}

pub fn mahler(spec: &CirculantSpec, r: &MahlerReport, table: Option<&[ConvergenceRow]>, format: Format) -> Rendered {
    match format {
        Format::Json => {
            let per_u: Vec<Value> = r
                .per_u
                .iter()
                .map(|t| {
                    json!({
                        "u": t.u,
                        "measure": ball_json(&t.measure),
                        "log_measure": ball_json(&t.log_measure),
                        "quadrature": t.quadrature.value,
                        "quadrature_points": t.quadrature.points,
                    })
                })
                .collect();
            let mut doc = json!({
                "spec": spec_json(spec),
                "reduced": r.reduced.as_ref().map(|s| s.family_label()),
                "per_u": per_u,
                "A": ball_json(&r.a),
                "thermodynamic_limit": ball_json(&r.thermo_limit),
                "quadrature_vs_roots_gap": r.quadrature_vs_roots_gap,
                "prefactor": format!("{}/{}", r.prefactor.numerator, r.prefactor.denominator),
            });
            if let Some(t) = table {
                doc["convergence"] = convergence_json(t);
            }
            json_text(&doc)
        }
        Format::Csv => match table {
            Some(rows) => csv_text(
                &["n", "tau", "asymptote", "ratio", "skipped"],
                rows.iter()
                    .map(|c| {
                        vec![
                            c.n.to_string(),
                            c.tau.as_ref().map(|t| t.to_string()).unwrap_or_default(),
                            c.asymptote.map(|v| v.to_string()).unwrap_or_default(),
                            c.ratio.map(|v| v.to_string()).unwrap_or_default(),
                            c.skipped.clone().unwrap_or_default(),
                        ]
                    })
                    .collect(),
            ),
            None => csv_text(
                &["u", "measure", "log_measure", "quadrature", "quadrature_points"],
                r.per_u
                    .iter()
                    .map(|t| {
                        vec![
                            t.u.to_string(),
                            t.measure.mid_f64().to_string(),
                            t.log_measure.mid_f64().to_string(),
                            t.quadrature.value.to_string(),
                            t.quadrature.points.to_string(),
                        ]
                    })
                    .collect(),
            ),
        },
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "{}", spec.family_label());
            if let Some(red) = &r.reduced {
                let _ = writeln!(out, "  same graphs as {}", red.family_label());
            }
            for t in &r.per_u {
                let _ = writeln!(out, "  M(P_{}) = {:.12}  (quadrature {:.12})", t.u, t.measure.mid_f64(), t.quadrature.value);
            }
            let _ = writeln!(out, "  A = {:.12}", r.a.mid_f64());
            let _ = writeln!(out, "  thermodynamic limit = {:.12}", r.thermo_limit.mid_f64());
            let _ = writeln!(out, "  tau(n) ~ ({}/{}) n A^n", r.prefactor.numerator, r.prefactor.denominator);
            let _ = writeln!(out, "  max |roots - quadrature| = {:.3e}", r.quadrature_vs_roots_gap);
            for c in table.unwrap_or_default() {
                match (&c.tau, c.ratio) {
                    (Some(t), Some(q)) => {
                        let _ = writeln!(out, "  n={:<4} ratio {q:.9}  tau = {t}", c.n);
                    }
                    _ => {
                        let _ = writeln!(out, "  n={:<4} skipped: {}", c.n, c.skipped.as_deref().unwrap_or("-"));
                    }
                }
            }
            Rendered { text: out }
        }
    }
}

pub fn verify(r: &VerifyReport, format: Format) -> Rendered {
    match format {
        Format::Json => json_text(&serde_json::to_value(r).expect("report serializes")),
        Format::Csv => csv_text(
            &["suite", "passed", "failed", "flagged", "skipped"],
            r.suites
                .iter()
                .map(|s| {
                    vec![s.name.clone(), s.passed.to_string(), s.failed.to_string(), s.flagged.to_string(), s.skipped.to_string()]
                })
                .collect(),
        ),
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "{} grid cells, {} valid, {} skipped", r.cells, r.valid_cells, r.skipped.len());
            for s in &r.suites {
                let status = if s.ok() { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "  {:<10} {status:<6} passed {:>4}  failed {:>3}  flagged {:>3}  skipped {:>3}",
                    s.name, s.passed, s.failed, s.flagged, s.skipped
                );
                for f in &s.failures {
                    let _ = writeln!(out, "    {f}");
                }
            }
            let _ = writeln!(out, "  smallest root margin {:.6}", r.min_lemma1_margin);
            let _ = writeln!(out, "  largest quadrature gap {:.3e}", r.max_jensen_gap);
            for (cell, why) in &r.skipped {
                let _ = writeln!(out, "  skipped {cell}: {why}");
            }
            Rendered { text: out }
        }
    }
}

pub fn examples(reports: &[ExampleReport], format: Format) -> Rendered {
    match format {
        Format::Json => json_text(&serde_json::to_value(reports).expect("reports serialize")),
        Format::Csv => {
            let opt = |v: Option<String>| v.unwrap_or_default();
            let rows = reports
                .iter()
                .flat_map(|e| {
                    e.rows.iter().map(move |r| {
                        vec![
                            e.index.to_string(),
                            e.label.clone(),
                            r.n.to_string(),
                            r.tau.to_string(),
                            r.closed_form_ok.to_string(),
                            opt(r.brute_force_ok.map(|b| b.to_string())),
                            opt(r.coefficient.map(|c| c.to_string())),
                            opt(r.stated_constant.map(|c| c.to_string())),
                            opt(r.relation.map(|c| format!("{c:?}"))),
                        ]
                    })
                })
                .collect();
            csv_text(
                &["example", "family", "n", "tau", "closed_form_ok", "brute_force_ok", "coefficient", "stated_constant", "relation"],
                rows,
            )
        }
        Format::Human => {
            let mut out = String::new();
            for e in reports {
                let _ = writeln!(out, "example {}: {}  {}", e.index, e.label, if e.passed { "ok" } else { "FAILED" });
                for r in &e.rows {
                    let rel = r.relation.map(|c| format!("  {c:?}")).unwrap_or_default();
                    let _ = writeln!(out, "  n={:<3} tau = {}{rel}", r.n, r.tau);
                }
                for note in &e.notes {
                    let _ = writeln!(out, "  note: {note}");
                }
            }
            Rendered { text: out }
        }
    }
}

/// The Laplacian as a JSON array of rows.
pub fn laplacian(spec: &CirculantSpec, m: &IntegerMatrix) -> Rendered {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|v| json!(v.to_string().parse::<i64>().expect("entries are bounded by the degree"))).collect())
        .collect();
    json_text(&json!({ "spec": spec_json(spec), "laplacian": rows }))
}
