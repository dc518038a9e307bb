//! Report serialization. Renders are deterministic: stable row order,
//! fixed number formats (money 2 decimals, ratios 4, plot coordinates 6),
//! line-feed newlines. Saving goes through the same atomic write as every
//! other output.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fmtnum::{dec2, dec4, dec6};
use crate::model::RiskPoint;
use crate::sim::{SimResult, RNG_ALGORITHM};
use crate::trends::LossTrendReport;

/// Output encodings for [`save_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    /// Human-readable aligned text.
    Table,
    /// Comma-separated rows with a header line.
    Csv,
    /// Bare space-separated numeric columns for external plotters.
    Plotdata,
}

impl ReportFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportFormat::Table => "table",
            ReportFormat::Csv => "csv",
            ReportFormat::Plotdata => "plotdata",
        }
    }
}

impl std::fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            "plotdata" => Ok(ReportFormat::Plotdata),
            other => Err(Error::validation(
                "report format",
                format!("expected table, csv, or plotdata, got {other:?}"),
            )),
        }
    }
}

/// A result type that knows how to render itself in the report formats it
/// supports.
pub trait Render {
    fn render(&self, format: ReportFormat) -> Result<String>;
}

/// Render and write a report; identical reports produce byte-identical
/// files.
pub fn save_report<R: Render + ?Sized>(
    report: &R,
    path: &Path,
    format: ReportFormat,
) -> Result<()> {
    let text = report.render(format)?;
    super::write_atomic(path, text.as_bytes())
}

/// Quote a CSV field when it contains a delimiter, quote, or newline.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

impl Render for LossTrendReport {
    fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Csv => {
                let mut out = String::from("category,prev,curr,delta\n");
                for row in &self.rows {
                    let prev = row.prev.map(|m| dec2(m.amount())).unwrap_or_default();
                    let curr = row.curr.map(|m| dec2(m.amount())).unwrap_or_default();
                    let delta = row.delta.map(dec4).unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        csv_field(&row.category),
                        prev,
                        curr,
                        delta
                    );
                }
                Ok(out)
            }
            ReportFormat::Table => {
                let width = self
                    .rows
                    .iter()
                    .map(|r| r.category.chars().count())
                    .chain(std::iter::once("Total".len()))
                    .max()
                    .unwrap_or(8)
                    .max("category".len());
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>14}  {:>14}  {:>8}",
                    "category", "prev", "curr", "delta"
                );
                for row in &self.rows {
                    let prev = row
                        .prev
                        .map(|m| dec2(m.amount()))
                        .unwrap_or_else(|| "-".to_string());
                    let curr = row
                        .curr
                        .map(|m| dec2(m.amount()))
                        .unwrap_or_else(|| "-".to_string());
                    let delta = row
                        .delta
                        .map(dec2)
                        .unwrap_or_else(|| "-".to_string());
                    let _ = writeln!(
                        out,
                        "{:<width$}  {:>14}  {:>14}  {:>8}",
                        row.category, prev, curr, delta
                    );
                }
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>14}  {:>14}  {:>8}",
                    "Total",
                    dec2(self.total_prev.amount()),
                    dec2(self.total_curr.amount()),
                    dec2(self.total_delta)
                );
                Ok(out)
            }
            ReportFormat::Plotdata => Err(Error::UnsupportedFormat {
                report: "loss trend report",
                format: "plotdata",
            }),
        }
    }
}

impl Render for SimResult {
    fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Table => {
                let mut out = String::new();
                let _ = writeln!(out, "years: {}", self.years());
                let _ = writeln!(out, "seed: {}", self.seed());
                let _ = writeln!(out, "model: {}", self.model().as_str());
                let _ = writeln!(out, "rng: {RNG_ALGORITHM}");
                let _ = writeln!(out, "loss per occurrence: {}", self.loss_per_occurrence());
                let _ = writeln!(out, "mean annual loss: {}", self.mean_annual_loss());
                if self.years() == 1 {
                    let _ = writeln!(out, "std error: n/a (single-year run has no spread estimate)");
                } else {
                    let _ = writeln!(out, "std error: {}", self.std_error());
                }
                let _ = writeln!(out, "max single-year loss: {}", self.max_single_year_loss());
                if !self.exceedance().is_empty() {
                    let _ = writeln!(out, "exceedance:");
                    for (threshold, probability) in self.exceedance() {
                        let _ = writeln!(out, "  >= {}: {}", threshold, dec4(*probability));
                    }
                }
                Ok(out)
            }
            ReportFormat::Csv => {
                let mut out = String::from("metric,value\n");
                let _ = writeln!(out, "years,{}", self.years());
                let _ = writeln!(out, "seed,{}", self.seed());
                let _ = writeln!(out, "model,{}", self.model().as_str());
                let _ = writeln!(out, "rng,{RNG_ALGORITHM}");
                let _ = writeln!(
                    out,
                    "loss_per_occurrence,{}",
                    dec2(self.loss_per_occurrence().amount())
                );
                let _ = writeln!(
                    out,
                    "mean_annual_loss,{}",
                    dec2(self.mean_annual_loss().amount())
                );
                let _ = writeln!(out, "std_error,{}", dec2(self.std_error().amount()));
                let _ = writeln!(
                    out,
                    "max_single_year_loss,{}",
                    dec2(self.max_single_year_loss().amount())
                );
                for (threshold, probability) in self.exceedance() {
                    let _ = writeln!(
                        out,
                        "exceedance>={},{}",
                        dec2(threshold.amount()),
                        dec4(*probability)
                    );
                }
                Ok(out)
            }
            ReportFormat::Plotdata => {
                // loss-exceedance curve: threshold and probability columns
                let mut out = String::new();
                for (threshold, probability) in self.exceedance() {
                    let _ = writeln!(out, "{} {}", dec6(threshold.amount()), dec6(*probability));
                }
                Ok(out)
            }
        }
    }
}

impl Render for [RiskPoint] {
    fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Plotdata => {
                let mut out = String::new();
                for point in self {
                    let _ = writeln!(
                        out,
                        "{} {}",
                        dec6(point.probability().value()),
                        dec6(point.impact().value())
                    );
                }
                Ok(out)
            }
            ReportFormat::Csv => {
                let mut out = String::from("p,i\n");
                for point in self {
                    let _ = writeln!(
                        out,
                        "{},{}",
                        dec6(point.probability().value()),
                        dec6(point.impact().value())
                    );
                }
                Ok(out)
            }
            ReportFormat::Table => Err(Error::UnsupportedFormat {
                report: "risk point list",
                format: "table",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::iso_risk_curve;
    use crate::model::{Currency, Money, RiskScalar};
    use crate::sim::{simulate, OccurrenceModel, SimConfig};
    use crate::trends::build_report;
    use indexmap::IndexMap;

    fn usd(amount: f64) -> Money {
        Money::new(amount, Currency::new("USD").unwrap()).unwrap()
    }

    fn sample_trend() -> LossTrendReport {
        let prev: IndexMap<String, Money> =
            [("Virus".to_string(), usd(100.0)), ("Bots".to_string(), usd(50.0))]
                .into_iter()
                .collect();
        let curr: IndexMap<String, Money> =
            [("Virus".to_string(), usd(150.0)), ("Fraud, wire".to_string(), usd(10.0))]
                .into_iter()
                .collect();
        build_report(&prev, &curr).unwrap()
    }

    #[test]
    fn test_trend_csv_schema() {
        let text = sample_trend().render(ReportFormat::Csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "category,prev,curr,delta");
        assert_eq!(lines.next().unwrap(), "Virus,100.00,150.00,0.5000");
        assert_eq!(lines.next().unwrap(), "Bots,50.00,,");
        assert_eq!(lines.next().unwrap(), "\"Fraud, wire\",,10.00,");
    }

    #[test]
    fn test_trend_table_has_total_row() {
        let text = sample_trend().render(ReportFormat::Table).unwrap();
        let total = text.lines().last().unwrap();
        assert!(total.starts_with("Total"));
        assert!(total.contains("150.00"));
        assert!(total.contains("160.00"));
    }

    #[test]
    fn test_curve_plotdata_pairs() {
        let points = iso_risk_curve(RiskScalar::new(0.25).unwrap(), 3).unwrap();
        let text = points.render(ReportFormat::Plotdata).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "0.250000 1.000000");
        assert_eq!(lines[2], "1.000000 0.250000");
    }

    #[test]
    fn test_sim_render_names_the_rng() {
        let config = SimConfig::new(100, 7, OccurrenceModel::Poisson).unwrap();
        let result = simulate(usd(1000.0), 0.5, 0.2, &config).unwrap();
        for format in [ReportFormat::Table, ReportFormat::Csv] {
            let text = result.render(format).unwrap();
            assert!(text.contains(RNG_ALGORITHM));
        }
    }

    #[test]
    fn test_save_report_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let report = sample_trend();
        let first = dir.path().join("a.csv");
        let second = dir.path().join("b.csv");
        save_report(&report, &first, ReportFormat::Csv).unwrap();
        save_report(&report, &second, ReportFormat::Csv).unwrap();
        assert_eq!(
            std::fs::read(&first).unwrap(),
            std::fs::read(&second).unwrap()
        );
    }

    #[test]
    fn test_unsupported_formats_are_errors() {
        assert!(matches!(
            sample_trend().render(ReportFormat::Plotdata),
            Err(Error::UnsupportedFormat { .. })
        ));
        let points = iso_risk_curve(RiskScalar::new(0.5).unwrap(), 2).unwrap();
        assert!(matches!(
            points.render(ReportFormat::Table),
            Err(Error::UnsupportedFormat { .. })
        ));
    }
}
