//! Year-over-year loss trend arithmetic over two category -> value tables.
//!
//! Change is reported as the fractional ratio `curr/prev - 1`, not a
//! percentage: a value that rises from 100 to 800 has a delta of 7.00.
//! Categories absent from one year get no delta but still count towards
//! that year's total.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::model::Money;

/// One category's year-over-year record.
#[derive(Debug, Clone, PartialEq)]
pub struct LossTrendRow {
    pub category: String,
    pub prev: Option<Money>,
    pub curr: Option<Money>,
    /// Present iff both years are present and the base year is positive.
    pub delta: Option<f64>,
}

/// Full trend report: one row per category in the union of both years,
/// prior-year rows first in input order, then categories new in the
/// current year.
#[derive(Debug, Clone, PartialEq)]
pub struct LossTrendReport {
    pub rows: Vec<LossTrendRow>,
    pub total_prev: Money,
    pub total_curr: Money,
    pub total_delta: f64,
    /// Categories with a defined delta, ranked by delta descending.
    pub top_increases: Vec<(String, f64)>,
}

/// Fractional change from `prev` to `curr`: `curr/prev - 1`.
pub fn trend_delta(prev: Money, curr: Money) -> Result<f64> {
    prev.same_currency(curr)?;
    if prev.amount() <= 0.0 {
        return Err(Error::ZeroBase);
    }
    Ok(curr.amount() / prev.amount() - 1.0)
}

/// Build the report for two loss tables. Both tables must share one
/// currency; the union of categories must be non-empty and the prior-year
/// total positive, since the headline delta is computed against it.
pub fn build_report(
    prev_table: &IndexMap<String, Money>,
    curr_table: &IndexMap<String, Money>,
) -> Result<LossTrendReport> {
    if prev_table.is_empty() && curr_table.is_empty() {
        return Err(Error::EmptyInput("both loss tables are empty"));
    }
    let currency = prev_table
        .values()
        .chain(curr_table.values())
        .next()
        .expect("non-empty union")
        .currency();

    let mut rows = Vec::new();
    for (category, prev) in prev_table {
        let curr = curr_table.get(category).copied();
        rows.push(make_row(category.clone(), Some(*prev), curr)?);
    }
    for (category, curr) in curr_table {
        if !prev_table.contains_key(category) {
            rows.push(make_row(category.clone(), None, Some(*curr))?);
        }
    }

    let mut total_prev = Money::zero(currency);
    let mut total_curr = Money::zero(currency);
    for row in &rows {
        if let Some(prev) = row.prev {
            total_prev = total_prev.try_add(prev)?;
        }
        if let Some(curr) = row.curr {
            total_curr = total_curr.try_add(curr)?;
        }
    }
    let total_delta = trend_delta(total_prev, total_curr)?;

    let mut top_increases: Vec<(String, f64)> = rows
        .iter()
        .filter_map(|row| row.delta.map(|d| (row.category.clone(), d)))
        .collect();
    top_increases.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));

    Ok(LossTrendReport {
        rows,
        total_prev,
        total_curr,
        total_delta,
        top_increases,
    })
}

fn make_row(category: String, prev: Option<Money>, curr: Option<Money>) -> Result<LossTrendRow> {
    let delta = match (prev, curr) {
        (Some(p), Some(c)) if p.amount() > 0.0 => Some(trend_delta(p, c)?),
        _ => None,
    };
    Ok(LossTrendRow {
        category,
        prev,
        curr,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Currency;
    use proptest::prelude::*;

    fn usd(amount: f64) -> Money {
        Money::new(amount, Currency::new("USD").unwrap()).unwrap()
    }

    fn table(entries: &[(&str, f64)]) -> IndexMap<String, Money> {
        entries
            .iter()
            .map(|(k, v)| (k.to_string(), usd(*v)))
            .collect()
    }

    #[test]
    fn test_delta_fraud_row() {
        let delta = trend_delta(usd(2_556_900.0), usd(21_124_750.0)).unwrap();
        assert!((delta - 7.26).abs() <= 0.005);
    }

    #[test]
    fn test_delta_virus_row() {
        let delta = trend_delta(usd(15_691_460.0), usd(8_391_800.0)).unwrap();
        assert!((delta - (-0.47)).abs() <= 0.005);
    }

    #[test]
    fn test_delta_no_change() {
        assert_eq!(trend_delta(usd(42.0), usd(42.0)).unwrap(), 0.0);
    }

    #[test]
    fn test_delta_zero_base_rejected() {
        assert!(matches!(
            trend_delta(usd(0.0), usd(1.0)),
            Err(Error::ZeroBase)
        ));
    }

    #[test]
    fn test_delta_currency_mismatch() {
        let eur = Money::new(1.0, Currency::new("EUR").unwrap()).unwrap();
        assert!(matches!(
            trend_delta(usd(1.0), eur),
            Err(Error::CurrencyMismatch { .. })
        ));
    }

    #[test]
    fn test_report_new_category_has_no_delta() {
        let prev = table(&[("a", 100.0)]);
        let curr = table(&[("a", 150.0), ("b", 5_685_000.0)]);
        let report = build_report(&prev, &curr).unwrap();
        let row_b = report.rows.iter().find(|r| r.category == "b").unwrap();
        assert!(row_b.prev.is_none());
        assert!(row_b.delta.is_none());
        assert_eq!(row_b.curr.unwrap().amount(), 5_685_000.0);
    }

    #[test]
    fn test_report_totals_cover_one_sided_rows() {
        let prev = table(&[("a", 100.0), ("gone", 50.0)]);
        let curr = table(&[("a", 200.0), ("new", 25.0)]);
        let report = build_report(&prev, &curr).unwrap();
        assert_eq!(report.total_prev.amount(), 150.0);
        assert_eq!(report.total_curr.amount(), 225.0);
        assert_eq!(report.total_delta, 0.5);
        assert_eq!(report.rows.len(), 3);
    }

    #[test]
    fn test_report_ranking() {
        let prev = table(&[("slow", 100.0), ("fast", 100.0), ("down", 100.0)]);
        let curr = table(&[("slow", 110.0), ("fast", 900.0), ("down", 10.0)]);
        let report = build_report(&prev, &curr).unwrap();
        let names: Vec<&str> = report
            .top_increases
            .iter()
            .map(|(name, _)| name.as_str())
            .collect();
        assert_eq!(names, ["fast", "slow", "down"]);
    }

    #[test]
    fn test_report_empty_input_rejected() {
        let empty = IndexMap::new();
        assert!(matches!(
            build_report(&empty, &empty),
            Err(Error::EmptyInput(_))
        ));
    }

    proptest! {
        #[test]
        fn prop_delta_antisymmetry(a in 1e-3..=1e9f64, b in 1e-3..=1e9f64) {
            let forward = trend_delta(usd(a), usd(b)).unwrap();
            let backward = trend_delta(usd(b), usd(a)).unwrap();
            prop_assert!((backward - (1.0 / (1.0 + forward) - 1.0)).abs() <= 1e-9);
        }

        #[test]
        fn prop_delta_scale_invariant(
            a in 1e-3..=1e9f64,
            b in 1e-3..=1e9f64,
            factor in 1e-3..=1e3f64,
        ) {
            let base = trend_delta(usd(a), usd(b)).unwrap();
            let scaled = trend_delta(usd(a * factor), usd(b * factor)).unwrap();
            prop_assert!((base - scaled).abs() <= 1e-9 * base.abs().max(1.0));
        }
    }
}
