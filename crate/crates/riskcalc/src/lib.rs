//! Quantitative IT security risk toolkit.
//!
//! The library turns a file-based register of assets, threats, and
//! controls into the classical risk calculus: risk as the
//! probability-impact product with iso-risk tolerability curves, the
//! seven-band risk/security level ladder, the financial security
//! indicator over control costs, annualized and single-occurrence loss
//! expectancies, year-over-year loss trend analysis, and a seeded Monte
//! Carlo harness that validates the analytic formulas empirically.
//!
//! ## Modules
//!
//! - [`model`] — validated domain types (probabilities, money, register entities)
//! - [`engine`] — tolerability, level ladders, the frequency x loss matrix
//! - [`financial`] — SI_f, ALE, SOL, recalculated ALE, the cost-benefit curve
//! - [`trends`] — year-over-year loss deltas and report assembly
//! - [`sim`] — deterministic Monte Carlo validation of the loss formulas
//! - [`registry`] — file formats: register/config TOML, loss-table CSV, reports
//! - [`cli`] — command implementations behind the `riskcalc` binary
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p riskcalc --example risk_points
//! cargo run -p riskcalc --example iso_risk_curve
//! cargo run -p riskcalc --example loss_expectancy
//! cargo run -p riskcalc --example security_indicator
//! cargo run -p riskcalc --example impact_matrix
//! cargo run -p riskcalc --example loss_trends
//! cargo run -p riskcalc --example monte_carlo_validation
//! cargo run -p riskcalc --example assess_register
//! ```
//!
//! The same functionality is scriptable through the thin `riskcalc`
//! binary (`assess`, `sif`, `trend`, `simulate`, `curve`, `matrix`).

pub mod cli;
pub mod engine;
pub mod error;
pub mod financial;
mod fmtnum;
pub mod model;
pub mod registry;
pub mod sim;
pub mod trends;

pub use error::{Error, Result};
pub use model::{
    Asset, Control, Currency, Impact, Money, Probability, RiskLevel, RiskPoint, RiskScalar,
    SecurityLevel, Threat,
};
