//! The financial security indicator and its three bands, plus the
//! cost-benefit power curve behind spending decisions.
//!
//! ```bash
//! cargo run -p riskcalc --example security_indicator
//! ```

use riskcalc::financial::{pareto_benefit, sif, OVER_INVESTMENT_CAUSES};
use riskcalc::{Control, Currency, Money};

fn main() -> riskcalc::Result<()> {
    let eur = Currency::new("EUR")?;
    let money = |amount: f64| Money::new(amount, eur).unwrap();
    let control = |weight: f64, cost: f64| Control::new("c", "a", weight, money(cost), None, None);

    // nothing spent on controls: the indicator is zero
    let bare = sif(money(1000.0), &[])?;
    println!("no controls: SI_f = {:.4} ({})", bare.value, bare.band.as_str());

    // a full-weight 400 control and a half-attributed 200 control
    let controls = [control(1.0, 400.0)?, control(0.5, 200.0)?];
    let funded = sif(money(1000.0), &controls)?;
    println!(
        "two controls on 1000 of equipment: SI_f = {:.4} ({}) - {}",
        funded.value,
        funded.band.as_str(),
        funded.band.interpretation()
    );

    // controls costing more than the equipment they protect
    let heavy = [control(1.0, 600.0)?];
    let over = sif(money(500.0), &heavy)?;
    println!(
        "600 of controls on 500 of equipment: SI_f = {:.4} ({})",
        over.value,
        over.band.as_str()
    );
    println!("typical causes:");
    for cause in OVER_INVESTMENT_CAUSES {
        println!("  - {cause}");
    }

    // the 20/80 shape of security spending: early money buys most of the
    // benefit, the last stretch is disproportionately expensive
    println!("\ncost fraction -> benefit fraction:");
    for cost in [0.0, 0.04, 0.1, 0.2, 0.5, 0.8, 1.0] {
        println!("  {cost:>4} -> {:.4}", pareto_benefit(cost)?);
    }
    Ok(())
}
