//! The constant-risk curve separating tolerable from non-tolerable
//! events, and verdicts for points on either side of it.
//!
//! ```bash
//! cargo run -p riskcalc --example iso_risk_curve
//! ```

use riskcalc::engine::{iso_risk_curve, tolerability};
use riskcalc::registry::{save_report, ReportFormat};
use riskcalc::{RiskPoint, RiskScalar};

fn main() -> riskcalc::Result<()> {
    let acceptable = RiskScalar::new(0.1)?;

    // a severe but rare event sits below the curve; a mild but frequent
    // one sits above it
    let rare_severe = RiskPoint::new(0.05, 0.9)?;
    let frequent_mild = RiskPoint::new(0.9, 0.3)?;
    for (label, point) in [("rare/severe", rare_severe), ("frequent/mild", frequent_mild)] {
        println!(
            "{label}: p={:.2}, i={:.2}, risk={:.3} -> {}",
            point.probability().value(),
            point.impact().value(),
            point.risk().value(),
            tolerability(point, acceptable)?
        );
    }

    // sample the curve itself; every point multiplies back to the threshold
    let points = iso_risk_curve(acceptable, 9)?;
    println!("\ncurve at acceptable risk {}:", acceptable.value());
    for point in &points {
        println!(
            "  p={:.6}  i={:.6}  p*i={:.9}",
            point.probability().value(),
            point.impact().value(),
            point.probability().value() * point.impact().value()
        );
    }

    // write plot data for an external plotter
    let out = std::env::temp_dir().join("iso_risk_curve.dat");
    let dense = iso_risk_curve(acceptable, 200)?;
    save_report(dense.as_slice(), &out, ReportFormat::Plotdata)?;
    println!("\nwrote 200 points to {}", out.display());
    Ok(())
}
