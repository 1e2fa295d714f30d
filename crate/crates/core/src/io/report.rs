use std::fmt::Write;
use std::str::FromStr;

use crate::consistency::{Verdict, CR_THRESHOLD};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::session::EvaluationSnapshot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!(
                "unknown report format {other:?} (expected text or csv)"
            )),
        }
    }
}

pub fn render_report<T: Scalar>(
    snapshot: &EvaluationSnapshot<T>,
    format: ReportFormat,
) -> Result<String> {
    match format {
        ReportFormat::Text => Ok(render_text(snapshot)),
        ReportFormat::Csv => render_csv(snapshot),
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Consistent => "consistent",
        Verdict::Inconsistent => "inconsistent",
        Verdict::UndefinedForDimension => "undefined",
    }
}

fn render_text<T: Scalar>(snap: &EvaluationSnapshot<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Goal: {}", snap.goal);
    let _ = writeln!(out, "Revision: {}", snap.revision);
    let _ = writeln!(
        out,
        "Judgments entered: {} of {}",
        snap.entered, snap.required
    );
    let _ = writeln!(out);

    let Some(syn) = &snap.synthesis else {
        let _ = writeln!(out, "Model incomplete; no synthesis.");
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<16} {:>9}  pending", "matrix", "complete");
        for m in snap.matrices() {
            let pending: Vec<String> = m.pending.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            let _ = writeln!(
                out,
                "{:<16} {:>8.1}%  {}",
                m.matrix,
                m.completeness * 100.0,
                pending.join(" ")
            );
        }
        return out;
    };

    let crit = syn.criteria_weights.ids();
    let width = crit.iter().map(String::len).max().unwrap_or(0).max(7);
    let label_width = syn
        .alternative_ids
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(8);
    let _ = write!(out, "{:<label_width$}", "");
    for c in crit {
        let _ = write!(out, " {c:>width$}");
    }
    let _ = writeln!(out, " {:>width$} {:>5}", "Result", "Rank");
    let _ = write!(out, "{:<label_width$}", "weight");
    for w in syn.criteria_weights.weights() {
        let _ = write!(out, " {:>width$.4}", w.as_f64());
    }
    let _ = writeln!(out);
    for (a, id) in syn.alternative_ids.iter().enumerate() {
        let _ = write!(out, "{id:<label_width$}");
        for p in &syn.per_criterion_scores[a] {
            let _ = write!(out, " {:>width$.4}", p.as_f64());
        }
        let ranked = syn.ranking.iter().find(|r| &r.id == id).expect("ranked");
        let rank = if ranked.tied {
            format!("{}=", ranked.rank)
        } else {
            ranked.rank.to_string()
        };
        let _ = writeln!(out, " {:>width$.4} {:>5}", syn.scores[a].as_f64(), rank);
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "Consistency (CR threshold {CR_THRESHOLD:.2})");
    let _ = writeln!(
        out,
        "{:<16} {:>3} {:>11} {:>8} {:>8}  verdict",
        "matrix", "n", "lambda_max", "CI", "CR"
    );
    let mut flagged = Vec::new();
    for mc in &syn.consistency {
        let r = &mc.report;
        let _ = writeln!(
            out,
            "{:<16} {:>3} {:>11.4} {:>8.4} {:>8.4}  {}",
            mc.matrix,
            r.dimension,
            r.lambda_max.as_f64(),
            r.ci.as_f64(),
            r.cr.as_f64(),
            verdict_label(r.verdict)
        );
        if r.verdict == Verdict::Inconsistent {
            flagged.push(mc.matrix.as_str());
        }
    }
    let _ = writeln!(out);
    if !flagged.is_empty() {
        let _ = writeln!(out, "Warning: CR above threshold in {}", flagged.join(", "));
    }
    let tied: Vec<&str> = syn
        .ranking
        .iter()
        .filter(|r| r.tied)
        .map(|r| r.id.as_str())
        .collect();
    if !tied.is_empty() {
        let _ = writeln!(out, "Tied: {}", tied.join(", "));
    }
    let _ = writeln!(out, "Best alternative: {}", syn.winner());
    out
}

fn render_csv<T: Scalar>(snap: &EvaluationSnapshot<T>) -> Result<String> {
    let syn = snap.synthesis.as_ref().ok_or_else(|| {
        Error::IncompleteForCsv(format!(
            "{} of {} judgments entered",
            snap.entered, snap.required
        ))
    })?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let render = |e: csv::Error| Error::Render(e.to_string());
    w.write_record(["rank", "alternative", "score", "tied"])
        .map_err(render)?;
    for r in &syn.ranking {
        w.write_record([
            r.rank.to_string(),
            r.id.clone(),
            r.score.as_f64().to_string(),
            r.tied.to_string(),
        ])
        .map_err(render)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Render(e.to_string()))
}
