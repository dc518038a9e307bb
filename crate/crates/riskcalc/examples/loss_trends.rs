//! Year-over-year loss trend report from the shipped survey tables.
//!
//! ```bash
//! cargo run -p riskcalc --example loss_trends
//! ```

use std::path::Path;

use riskcalc::registry::{load_loss_table, Render, ReportFormat};
use riskcalc::trends::build_report;

fn main() -> riskcalc::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let prev = load_loss_table(&data.join("losses_2006.csv"))?;
    let curr = load_loss_table(&data.join("losses_2007.csv"))?;
    println!(
        "loaded {} prior-year and {} current-year categories\n",
        prev.len(),
        curr.len()
    );

    let report = build_report(&prev, &curr)?;
    print!("{}", report.render(ReportFormat::Table)?);

    println!("\nbiggest increases:");
    for (category, delta) in report.top_increases.iter().take(3) {
        println!("  {category}: {delta:+.2}");
    }

    // categories reported in only one of the two years carry no delta
    let one_sided: Vec<&str> = report
        .rows
        .iter()
        .filter(|r| r.delta.is_none())
        .map(|r| r.category.as_str())
        .collect();
    println!("\nno delta (reported in one year only): {}", one_sided.join("; "));
    Ok(())
}
