//! Full workflow over the shipped register: load, validate, classify
//! every asset-threat pair, and save machine-readable reports.
//!
//! ```bash
//! cargo run -p riskcalc --example assess_register
//! ```

use std::path::Path;

use riskcalc::cli::assess_register;
use riskcalc::financial::sif;
use riskcalc::registry::{load_config, load_register, save_report, Render, ReportFormat};

fn main() -> riskcalc::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let register = load_register(&data.join("register.toml"))?;
    let config = load_config(&data.join("config.toml"))?;
    println!(
        "register: {} assets, {} threats, {} controls, default currency {}\n",
        register.assets().len(),
        register.threats().len(),
        register.controls().len(),
        register.currency()
    );

    let report = assess_register(&register, &config)?;
    print!("{}", report.render(ReportFormat::Table)?);

    // per-asset control spend where an equipment cost is on record
    println!();
    for asset in register.assets() {
        if let Some(ce) = asset.equipment_cost() {
            let controls: Vec<_> = register.controls_for(asset.id()).cloned().collect();
            let indicator = sif(ce, &controls)?;
            println!(
                "{}: SI_f {:.4} ({})",
                asset.id(),
                indicator.value,
                indicator.band.as_str()
            );
        }
    }

    let out = std::env::temp_dir().join("assessment.csv");
    save_report(&report, &out, ReportFormat::Csv)?;
    println!("\nsaved csv report to {}", out.display());
    Ok(())
}
