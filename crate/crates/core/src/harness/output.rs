use std::fmt::Write as _;

use clap::ValueEnum;

use super::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Table,
}

/// Renders reports in the requested format; every format ends with a newline.
pub fn render(reports: &[VerificationReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in reports {
                w.serialize(r).expect("reports serialize");
            }
            if reports.is_empty() {
                w.write_record(["check_id", "p", "k", "status", "witness", "ms"])
                    .expect("header");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        OutputFormat::Table => table(reports),
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn table(reports: &[VerificationReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.check_id.clone(),
                opt(r.p),
                opt(r.k),
                serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                r.ms.to_string(),
            ]
        })
        .collect();
    let head = ["check", "p", "k", "status", "ms"];
    let mut width = head.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: [&str; 5], witness: &str| {
        let _ = write!(
            out,
            "{:<w0$}  {:>w1$}  {:>w2$}  {:<w3$}  {:>w4$}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            cells[4],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2],
            w3 = width[3],
            w4 = width[4]
        );
        if !witness.is_empty() {
            let _ = write!(out, "  {witness}");
        }
        out.push('\n');
    };
    line(&mut out, head, "witness");
    for (row, r) in rows.iter().zip(reports) {
        let cells = [
            row[0].as_str(),
            row[1].as_str(),
            row[2].as_str(),
            row[3].as_str(),
            row[4].as_str(),
        ];
        line(&mut out, cells, r.witness.as_deref().unwrap_or(""));
    }
    let fails = reports.iter().filter(|r| !r.passed()).count();
    let skips = reports
        .iter()
        .filter(|r| r.status == super::Status::Skipped)
        .count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {} failed, {} skipped",
        reports.len(),
        reports.len() - fails - skips,
        fails,
        skips
    );
    out
}
