//! Classifying threats through the frequency x loss tolerability grid.
//!
//! ```bash
//! cargo run -p riskcalc --example impact_matrix
//! ```

use riskcalc::engine::{discretize_class, ImpactMatrix};
use riskcalc::registry::{DEFAULT_FREQUENCY_CUTS, DEFAULT_LOSS_CUTS};

fn main() -> riskcalc::Result<()> {
    let matrix = ImpactMatrix::default();

    // print the grid, highest frequency class first
    println!("        loss 0    1    2    3    4");
    for freq in (0..5u8).rev() {
        print!("frequency {freq}");
        for loss in 0..5u8 {
            print!("  {:>3}", matrix.classify(freq, loss)?.as_str());
        }
        println!();
    }

    // continuous threat parameters discretize onto the two axes: the
    // frequency axis reads events per year, the loss axis the
    // single-occurrence loss
    println!("\nfrequency cuts: {DEFAULT_FREQUENCY_CUTS:?} events/year");
    println!("loss cuts: {DEFAULT_LOSS_CUTS:?}");
    let threats = [
        ("rack power outage", 0.1, 25_000.0),
        ("data centre flood", 0.02, 500_000.0),
        ("workstation malware", 0.8, 2_100.0),
        ("daily phishing wave", 200.0, 1_500_000.0),
    ];
    println!();
    for (name, rate, single_loss) in threats {
        let freq = discretize_class(rate, &DEFAULT_FREQUENCY_CUTS)?;
        let loss = discretize_class(single_loss, &DEFAULT_LOSS_CUTS)?;
        println!(
            "{name:<22} rate {rate:>6}/y, loss {single_loss:>10} -> classes ({freq}, {loss}) -> {}",
            matrix.classify(freq, loss)?
        );
    }
    Ok(())
}
