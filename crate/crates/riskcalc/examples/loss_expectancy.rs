//! Annualized and single-occurrence loss expectancies, and the budget
//! cap a control's residual risk justifies.
//!
//! ```bash
//! cargo run -p riskcalc --example loss_expectancy
//! ```

use riskcalc::financial::{ale, recalculated_ale, sol};
use riskcalc::{Control, Currency, Money, Threat};

fn main() -> riskcalc::Result<()> {
    let eur = Currency::new("EUR")?;

    // a 50000 asset losing half its value once a decade
    let av = Money::new(50000.0, eur)?;
    let annualized = ale(av, 0.50, 0.1)?;
    println!(
        "ALE = 50000 x 0.50 x 0.1 = {} per year",
        annualized.amount
    );

    // the disaster question: one occurrence against a critical asset
    let critical = Money::new(5_000_000.0, eur)?;
    let single = sol(critical, 0.10)?;
    println!("SOL = 5000000 x 0.10 = {} per occurrence", single.amount);

    // a backup control cuts the loss fraction from 0.50 to 0.10; the
    // avoided annual loss bounds what the control is worth paying
    let threat = Threat::new("th-outage", "srv", 0.50, 0.1)?;
    let backup = Control::new(
        "ctl-backup",
        "srv",
        1.0,
        Money::new(400.0, eur)?,
        Some(0.10),
        None,
    )?;
    let recalc = recalculated_ale(av, &threat, &backup)?;
    println!(
        "\nwith the backup control: ALE {} -> {}",
        recalc.before.amount, recalc.after.amount
    );
    println!(
        "annual budget justified by the reduction: {}",
        recalc.budget_cap
    );
    println!(
        "the control costs {} per year, so it pays for itself",
        backup.cost()
    );

    // rates above one event per year are legal and flagged, not rejected
    let busy = ale(Money::new(1000.0, eur)?, 1.0, 3.0)?;
    println!(
        "\naro = 3.0: ALE {} exceeds the asset value: {}",
        busy.amount,
        busy.exceeds_asset_value()
    );
    Ok(())
}
