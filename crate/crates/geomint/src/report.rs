//! Text renderings of evaluation reports.
//!
//! CSV has one row per concept with the columns in [`CSV_COLUMNS`]; the
//! category and overall aggregates are recomputed on parsing. JSON is the
//! report's serde form. The plain-text table adds per-category comparisons
//! with the bundled human and published-model numbers.

use std::fmt::Write as _;
use std::str::FromStr;

use geomint_core::evalkit::{ConceptRow, EvalReport};
use geomint_core::reference::{self, PUBLISHED_MODELS};
use geomint_core::solver::ModelConfig;
use geomint_core::trials::Category;

use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 8] = [
    "concept_id",
    "concept_name",
    "category",
    "n_trials",
    "n_correct",
    "accuracy",
    "reference_human",
    "delta",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn pct(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{:.1}%", 100.0 * x),
        None => "n/a".into(),
    }
}

fn signed_pct(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{:+.1}", 100.0 * x),
        None => "n/a".into(),
    }
}

pub fn render_report(report: &EvalReport, format: Format) -> String {
    match format {
        Format::Csv => render_csv(report),
        Format::Json => render_json(report),
        Format::Table => render_table(report),
    }
}

pub fn render_csv(report: &EvalReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    let deltas = report.reference_deltas.as_ref();
    for (id, s) in &report.per_concept {
        let human = reference::concept_reference(*id).map(|r| r.human);
        let delta = deltas.and_then(|d| d.concept_vs_human.get(id).copied());
        w.write_record([
            id.to_string(),
            s.concept_name.clone(),
            s.category.name().to_string(),
            s.n_trials.to_string(),
            s.n_correct.to_string(),
            opt(s.accuracy),
            opt(human),
            opt(delta),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn field<T: FromStr>(record: &csv::StringRecord, idx: usize, line: usize) -> Result<T> {
    let raw = record.get(idx).unwrap_or("");
    raw.parse()
        .map_err(|_| Error::Report(format!("line {line}: bad {} {raw:?}", CSV_COLUMNS[idx])))
}

/// Parses [`render_csv`] output back into a report for `config`.
///
/// Reference deltas are restored when any row carries a delta.
pub fn parse_csv(text: &str, config: ModelConfig) -> Result<EvalReport> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Report(e.to_string()))?;
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::Report(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    let mut any_delta = false;
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Report(e.to_string()))?;
        let line = i + 2;
        let category: Category = field(&rec, 2, line)?;
        let row = ConceptRow {
            concept_id: field(&rec, 0, line)?,
            concept_name: rec.get(1).unwrap_or("").to_string(),
            category,
            n_trials: field(&rec, 3, line)?,
            n_correct: field(&rec, 4, line)?,
        };
        if row.n_correct > row.n_trials {
            return Err(Error::Report(format!(
                "line {line}: n_correct exceeds n_trials"
            )));
        }
        any_delta |= !rec.get(7).unwrap_or("").is_empty();
        rows.push(row);
    }
    let report = EvalReport::from_concept_rows(rows, config);
    Ok(if any_delta {
        report.with_reference_deltas()
    } else {
        report
    })
}

pub fn render_json(report: &EvalReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<EvalReport> {
    serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))
}

pub fn render_table(report: &EvalReport) -> String {
    let mut out = String::new();
    let preset = report.config.preset_name.as_deref();
    let published = preset.and_then(reference::published_model);
    let _ = writeln!(
        out,
        "features: {}{}  threshold: {}",
        report.config.selection,
        preset.map(|p| format!(" ({p})")).unwrap_or_default(),
        report.config.threshold
    );
    if !report.per_concept.is_empty() {
        let _ = writeln!(
            out,
            "\n{:>5}  {:<40} {:<28} {:>7} {:>8}",
            "id", "concept", "category", "correct", "accuracy"
        );
        for (id, s) in &report.per_concept {
            let _ = writeln!(
                out,
                "{:>5}  {:<40} {:<28} {:>3}/{:<3} {:>8}",
                id,
                s.concept_name,
                s.category.name(),
                s.n_correct,
                s.n_trials,
                pct(s.accuracy)
            );
        }
    }
    let _ = writeln!(
        out,
        "\n{:<28} {:>9} {:>8} {:>8} {:>9} {:>8}",
        "category", "correct", "accuracy", "human", "published", "vs human"
    );
    for cat in Category::ALL {
        let Some(s) = report.per_category.get(&cat) else {
            continue;
        };
        let human = reference::human_category(cat);
        let _ = writeln!(
            out,
            "{:<28} {:>4}/{:<4} {:>8} {:>8} {:>9} {:>8}",
            cat.name(),
            s.n_correct,
            s.n_trials,
            pct(s.accuracy),
            pct(Some(human)),
            pct(published.map(|m| m.category(cat))),
            signed_pct(s.accuracy.map(|a| a - human))
        );
    }
    let _ = writeln!(
        out,
        "{:<28} {:>4}/{:<4} {:>8} {:>8} {:>9}",
        "Overall",
        report.overall.n_correct,
        report.overall.n_trials,
        pct(report.overall.accuracy),
        "",
        pct(published.map(|m| m.overall))
    );
    if report.overall.accuracy.is_none() {
        let _ = writeln!(out, "overall accuracy undefined: no trials were scored");
    }
    if !report.failures.is_empty() {
        let _ = writeln!(
            out,
            "\n{} trial(s) failed and were excluded:",
            report.failures.len()
        );
        for f in &report.failures {
            let _ = writeln!(
                out,
                "  trial {} (concept {}): {}",
                f.index, f.concept_id, f.message
            );
        }
    }
    out
}

/// Side-by-side comparison of several preset runs with the published
/// numbers for the same presets.
pub fn render_comparison(reports: &[EvalReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => comparison_csv(reports),
        Format::Table => comparison_table(reports),
    }
}

fn preset_of(r: &EvalReport) -> String {
    r.config
        .preset_name
        .clone()
        .unwrap_or_else(|| r.config.selection.to_string())
}

fn comparison_csv(reports: &[EvalReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "category",
        "preset",
        "n_trials",
        "n_correct",
        "accuracy",
        "published_model",
        "delta",
    ])
    .expect("in-memory write");
    for r in reports {
        let preset = preset_of(r);
        let published = reference::published_model(&preset);
        let rows = Category::ALL
            .iter()
            .filter_map(|c| {
                r.per_category
                    .get(c)
                    .map(|s| (c.name(), s, published.map(|m| m.category(*c))))
            })
            .chain([("Overall", &r.overall, published.map(|m| m.overall))]);
        for (name, s, reference) in rows {
            let delta = s.accuracy.zip(reference).map(|(a, b)| a - b);
            w.write_record([
                name.to_string(),
                preset.clone(),
                s.n_trials.to_string(),
                s.n_correct.to_string(),
                opt(s.accuracy),
                opt(reference),
                opt(delta),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn comparison_table(reports: &[EvalReport]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<28}", "category");
    for r in reports {
        let _ = write!(out, " {:>22}", format!("{} (published)", preset_of(r)));
    }
    let _ = writeln!(out, " {:>8}", "human");
    let cell =
        |acc: Option<f64>, published: Option<f64>| format!("{} ({})", pct(acc), pct(published));
    for cat in Category::ALL {
        if reports.iter().all(|r| !r.per_category.contains_key(&cat)) {
            continue;
        }
        let _ = write!(out, "{:<28}", cat.name());
        for r in reports {
            let published = reference::published_model(&preset_of(r)).map(|m| m.category(cat));
            let acc = r.per_category.get(&cat).and_then(|s| s.accuracy);
            let _ = write!(out, " {:>22}", cell(acc, published));
        }
        let _ = writeln!(out, " {:>8}", pct(Some(reference::human_category(cat))));
    }
    let _ = write!(out, "{:<28}", "Overall");
    for r in reports {
        let published = reference::published_model(&preset_of(r)).map(|m| m.overall);
        let _ = write!(out, " {:>22}", cell(r.overall.accuracy, published));
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "\npublished figures are transcribed reference values ({}), not targets",
        PUBLISHED_MODELS.map(|m| m.preset).join(", ")
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use geomint_core::evalkit::aggregate;
    use geomint_core::trials::Trial;

    fn trial(concept_id: u32, category: Category, correct_index: usize) -> Trial<()> {
        Trial {
            concept_id,
            concept_name: format!("concept {concept_id}"),
            category,
            target: (),
            choices: [(), ()],
            correct_index,
        }
    }

    fn sample() -> EvalReport {
        let trials: Vec<_> = (0..40)
            .map(|i| {
                trial(
                    [18, 101, 4][i % 3],
                    [
                        Category::MetricProperties,
                        Category::ChiralFigures,
                        Category::Topology,
                    ][i % 3],
                    i % 2,
                )
            })
            .collect();
        let outcomes: Vec<_> = (0..40)
            .map(|i| Ok(if i % 5 == 0 { 1 } else { i % 2 }))
            .collect();
        aggregate(
            &trials,
            &outcomes,
            &ModelConfig::preset("four").unwrap(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let plain = sample();
        assert_eq!(
            parse_csv(&render_csv(&plain), plain.config.clone()).unwrap(),
            plain
        );
        let with = plain.with_reference_deltas();
        let text = render_csv(&with);
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(parse_csv(&text, with.config.clone()).unwrap(), with);
    }

    #[test]
    fn json_round_trip() {
        let r = sample().with_reference_deltas();
        assert_eq!(parse_json(&render_json(&r)).unwrap(), r);
    }

    #[test]
    fn empty_report() {
        let r = aggregate::<()>(&[], &[], &ModelConfig::preset("cs").unwrap(), true).unwrap();
        assert_eq!(render_csv(&r).lines().count(), 1);
        assert!(render_table(&r).contains("undefined"));
        assert!(render_json(&r).contains("\"accuracy\": null"));
        assert_eq!(parse_csv(&render_csv(&r), r.config.clone()).unwrap(), r);
    }

    #[test]
    fn table_lists_categories_in_reference_order() {
        let t = render_table(&sample());
        let chiral = t.rfind("Chiral figures").unwrap();
        let metric = t.rfind("Metric properties").unwrap();
        let topo = t.rfind("Topology").unwrap();
        assert!(chiral < metric && metric < topo);
        assert!(t.contains("84.7%"));
    }

    #[test]
    fn deltas_are_signed_model_minus_reference() {
        let r = sample().with_reference_deltas();
        let d = r.reference_deltas.as_ref().unwrap();
        let human = reference::concept_reference(18).unwrap().human;
        let acc = r.per_concept[&18].accuracy.unwrap();
        assert_eq!(d.concept_vs_human[&18], acc - human);
    }

    #[test]
    fn malformed_csv() {
        let cfg = ModelConfig::preset("cs").unwrap();
        assert!(parse_csv("a,b\n", cfg.clone()).is_err());
        let bad = format!("{}\n1,x,Topology,2,3,,,\n", CSV_COLUMNS.join(","));
        assert!(parse_csv(&bad, cfg.clone()).is_err());
        let bad = format!("{}\n1,x,Nowhere,2,1,,,\n", CSV_COLUMNS.join(","));
        assert!(parse_csv(&bad, cfg).is_err());
    }

    #[test]
    fn comparison_mentions_all_presets() {
        let reports: Vec<_> = ["cs", "cs+sspread", "four"]
            .iter()
            .map(|p| {
                let mut r = sample();
                r.config = ModelConfig::preset(p).unwrap();
                r
            })
            .collect();
        let t = render_comparison(&reports, Format::Table);
        for needle in ["78.4%", "82.8%", "84.7%"] {
            assert!(t.contains(needle), "{needle}");
        }
        let c = render_comparison(&reports, Format::Csv);
        assert_eq!(c.lines().filter(|l| l.starts_with("Overall,")).count(), 3);
    }

    proptest::proptest! {
        #[test]
        fn csv_and_json_round_trip(
            rows in proptest::collection::btree_map(1u32..120, (0usize..7, 0usize..40, 0usize..40), 0..12),
            deltas in proptest::bool::ANY,
        ) {
            let rows = rows.into_iter().map(|(id, (cat, a, b))| ConceptRow {
                concept_id: id,
                concept_name: format!("c{id}, \"quoted\""),
                category: Category::ALL[cat],
                n_trials: a.max(b),
                n_correct: a.min(b),
            });
            let cfg = ModelConfig::preset("cs+sspread").unwrap();
            let mut r = EvalReport::from_concept_rows(rows, cfg.clone());
            if deltas && r.per_concept.keys().any(|id| reference::concept_reference(*id).is_some()) {
                r = r.with_reference_deltas();
            }
            proptest::prop_assert_eq!(&parse_csv(&render_csv(&r), cfg).unwrap(), &r);
            proptest::prop_assert_eq!(&parse_json(&render_json(&r)).unwrap(), &r);
        }
    }
}
