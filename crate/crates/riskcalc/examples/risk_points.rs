//! Risk as a probability-impact product, and the two seven-band scales.
//!
//! ```bash
//! cargo run -p riskcalc --example risk_points
//! ```

use riskcalc::engine::{security_level_for, security_scalar, RiskLevelLadder};
use riskcalc::{RiskPoint, RiskScalar};

fn main() -> riskcalc::Result<()> {
    // risk is the product of probability and impact
    let event = RiskPoint::new(0.5, 0.5)?;
    println!(
        "event at p=0.5, i=0.5 carries risk {}",
        event.risk().value()
    );

    // different couples with the same product are equivalent
    let rare_severe = RiskPoint::new(0.1, 0.8)?;
    let frequent_mild = RiskPoint::new(0.8, 0.1)?;
    println!(
        "same-area couples: (0.1, 0.8) -> {}, (0.8, 0.1) -> {}",
        rare_severe.risk().value(),
        frequent_mild.risk().value()
    );

    // the ladder maps a risk scalar to one of seven bands, and each band
    // mirrors to a security level
    let ladder = RiskLevelLadder::default();
    println!("\nladder thresholds: {:?}", ladder.thresholds());
    for r in [0.0, 0.005, 0.02, 0.07, 0.18, 0.3, 0.6, 1.0] {
        let level = ladder.level_for(RiskScalar::new(r)?)?;
        let security = security_level_for(level);
        println!("risk {r:>5}: {level} -> {security}");
    }

    // scalar security is the reciprocal of risk; zero risk is a declared
    // singularity
    let quarter = RiskScalar::new(0.25)?;
    println!("\nsecurity(0.25) = {}", security_scalar(quarter)?);
    let zero = RiskScalar::new(0.0)?;
    println!("security(0): {}", security_scalar(zero).unwrap_err());

    // out-of-range couples never construct
    println!(
        "p=1.2 rejected: {}",
        RiskPoint::new(1.2, 0.5).unwrap_err()
    );
    Ok(())
}
