//! Command layer behind the `riskcalc` binary. Each command returns a
//! [`CommandOutcome`] instead of printing, so the binary stays a thin
//! dispatcher and tests can call commands in-process.
//!
//! Exit codes: 0 success, 1 computation or validation failure, 2 usage
//! error. Diagnostics go to stderr only; stdout carries results.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::engine::{
    discretize_class, iso_risk_curve, security_level_for, tolerability, Tolerability,
};
use crate::error::{Error, Result};
use crate::financial::{ale, sif, sol, SifBand, SifResult, OVER_INVESTMENT_CAUSES};
use crate::fmtnum::{dec2, dec4};
use crate::model::{Money, RiskLevel, RiskPoint, RiskScalar, SecurityLevel};
use crate::registry::{
    load_config, load_loss_table, load_register, save_report, Register, Render, ReportFormat,
    ToolConfig,
};
use crate::sim::{simulate, OccurrenceModel, SimConfig};
use crate::trends::build_report;

/// Environment variable that may name the config file.
pub const CONFIG_ENV_VAR: &str = "RISKCALC_CONFIG";

/// Config filename probed in the working directory when nothing else is
/// given.
pub const CONFIG_DEFAULT_FILENAME: &str = "riskcalc.toml";

/// What a command run produced: exit code, stdout payload, stderr
/// diagnostics. A non-zero exit always comes with a non-empty stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String, stderr: String) -> Self {
        Self {
            exit_code: 0,
            stdout,
            stderr,
        }
    }

    fn failure(err: &Error) -> Self {
        Self {
            exit_code: 1,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }

    fn usage(err: &Error) -> Self {
        Self {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {err}\n"),
        }
    }
}

/// Resolve the active configuration. Discovery order: explicit path,
/// then the `RISKCALC_CONFIG` environment variable, then
/// `riskcalc.toml` in the working directory; the first hit wins with no
/// merging. Built-in defaults apply when nothing is found.
pub fn resolve_config(explicit: Option<&Path>) -> Result<ToolConfig> {
    if let Some(path) = explicit {
        return load_config(path);
    }
    if let Some(path) = std::env::var_os(CONFIG_ENV_VAR) {
        return load_config(Path::new(&path));
    }
    let local = Path::new(CONFIG_DEFAULT_FILENAME);
    if local.exists() {
        return load_config(local);
    }
    Ok(ToolConfig::default())
}

/// One asset-threat pair, fully classified.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentRow {
    pub asset_id: String,
    pub threat_id: String,
    pub ale: Money,
    pub sol: Money,
    pub point: RiskPoint,
    pub risk: RiskScalar,
    pub curve_verdict: Tolerability,
    pub risk_level: RiskLevel,
    pub security_level: SecurityLevel,
    pub frequency_class: u8,
    pub loss_class: u8,
    pub matrix_verdict: Tolerability,
    pub ale_exceeds_av: bool,
}

/// Classification of every asset-threat pair in a register, with verdict
/// tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentReport {
    pub acceptable_risk: f64,
    pub rows: Vec<AssessmentRow>,
    pub tolerable: usize,
    pub non_tolerable: usize,
    pub matrix_tolerable: usize,
    pub matrix_non_tolerable: usize,
}

/// Run the full calculus over a register: loss expectancies, curve
/// tolerability, ladder levels, and the matrix verdict per pair.
///
/// The risk point for a pair reads the threat parameters directly:
/// probability is the annual rate clamped to one, impact is the loss
/// fraction.
pub fn assess_register(register: &Register, config: &ToolConfig) -> Result<AssessmentReport> {
    if register.assets().is_empty() {
        return Err(Error::validation("register", "no assets"));
    }
    let mut rows = Vec::new();
    for threat in register.threats() {
        let asset = register
            .asset(threat.asset_id())
            .ok_or_else(|| Error::UnknownAsset(threat.asset_id().to_string()))?;
        let annualized = ale(asset.av(), threat.pvl(), threat.aro())?;
        let single = sol(asset.av(), threat.pvl())?;
        let point = RiskPoint::new(threat.aro().min(1.0), threat.pvl())?;
        let risk = point.risk();
        let curve_verdict = tolerability(point, config.acceptable_risk)?;
        let risk_level = config.ladder.level_for(risk)?;
        let security_level = security_level_for(risk_level);
        let frequency_class = discretize_class(threat.aro(), &config.frequency_cuts)?;
        let loss_class = discretize_class(single.amount.amount(), &config.loss_cuts)?;
        let matrix_verdict = config.matrix.classify(frequency_class, loss_class)?;
        rows.push(AssessmentRow {
            asset_id: asset.id().to_string(),
            threat_id: threat.id().to_string(),
            ale: annualized.amount,
            sol: single.amount,
            point,
            risk,
            curve_verdict,
            risk_level,
            security_level,
            frequency_class,
            loss_class,
            matrix_verdict,
            ale_exceeds_av: annualized.exceeds_asset_value(),
        });
    }
    let tolerable = rows
        .iter()
        .filter(|r| r.curve_verdict.is_tolerable())
        .count();
    let matrix_tolerable = rows
        .iter()
        .filter(|r| r.matrix_verdict.is_tolerable())
        .count();
    Ok(AssessmentReport {
        acceptable_risk: config.acceptable_risk.value(),
        tolerable,
        non_tolerable: rows.len() - tolerable,
        matrix_tolerable,
        matrix_non_tolerable: rows.len() - matrix_tolerable,
        rows,
    })
}

impl Render for AssessmentReport {
    fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Table => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "assessment against acceptable risk {}",
                    dec4(self.acceptable_risk)
                );
                for row in &self.rows {
                    let _ = writeln!(
                        out,
                        "pair {}/{}: ALE {}, SOL {}, risk {} (p {}, i {}), curve {}, level {} -> {}, matrix {} (freq {}, loss {})",
                        row.asset_id,
                        row.threat_id,
                        row.ale,
                        row.sol,
                        dec4(row.risk.value()),
                        dec4(row.point.probability().value()),
                        dec4(row.point.impact().value()),
                        row.curve_verdict,
                        row.risk_level,
                        row.security_level,
                        row.matrix_verdict,
                        row.frequency_class,
                        row.loss_class,
                    );
                }
                let _ = writeln!(
                    out,
                    "curve verdicts: pairs {}, T: {}, NT: {}",
                    self.rows.len(),
                    self.tolerable,
                    self.non_tolerable
                );
                let _ = writeln!(
                    out,
                    "matrix verdicts: T: {}, NT: {}",
                    self.matrix_tolerable, self.matrix_non_tolerable
                );
                Ok(out)
            }
            ReportFormat::Csv => {
                let mut out = String::from(
                    "asset,threat,ale,sol,p,i,risk,curve,risk_level,security_level,frequency_class,loss_class,matrix\n",
                );
                for row in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},R{},S{},{},{},{}",
                        row.asset_id,
                        row.threat_id,
                        dec2(row.ale.amount()),
                        dec2(row.sol.amount()),
                        dec4(row.point.probability().value()),
                        dec4(row.point.impact().value()),
                        dec4(row.risk.value()),
                        row.curve_verdict,
                        row.risk_level.index(),
                        row.security_level.index(),
                        row.frequency_class,
                        row.loss_class,
                        row.matrix_verdict,
                    );
                }
                Ok(out)
            }
            ReportFormat::Plotdata => Err(Error::UnsupportedFormat {
                report: "assessment report",
                format: "plotdata",
            }),
        }
    }
}

/// `assess`: classify every asset-threat pair in the register.
pub fn cmd_assess(
    register_path: &Path,
    config_path: Option<&Path>,
    format: ReportFormat,
) -> CommandOutcome {
    let run = || -> Result<(String, String)> {
        let register = load_register(register_path)?;
        let config = resolve_config(config_path)?;
        let report = assess_register(&register, &config)?;
        let mut warnings = String::new();
        for row in &report.rows {
            if row.ale_exceeds_av {
                let _ = writeln!(
                    warnings,
                    "warning: ALE for pair {}/{} exceeds the asset value (aro > 1)",
                    row.asset_id, row.threat_id
                );
            }
        }
        Ok((report.render(format)?, warnings))
    };
    match run() {
        Ok((stdout, stderr)) => CommandOutcome::ok(stdout, stderr),
        Err(err) => CommandOutcome::failure(&err),
    }
}

/// `sif`: financial security indicator for one asset.
pub fn cmd_sif(register_path: &Path, asset_id: &str) -> CommandOutcome {
    let run = || -> Result<String> {
        let register = load_register(register_path)?;
        let asset = register
            .asset(asset_id)
            .ok_or_else(|| Error::UnknownAsset(asset_id.to_string()))?;
        let ce = asset
            .equipment_cost()
            .ok_or_else(|| Error::MissingEquipmentCost(asset_id.to_string()))?;
        let controls: Vec<_> = register.controls_for(asset_id).cloned().collect();
        let result = sif(ce, &controls)?;
        Ok(render_sif(&result))
    };
    match run() {
        Ok(stdout) => CommandOutcome::ok(stdout, String::new()),
        Err(err) => CommandOutcome::failure(&err),
    }
}

fn render_sif(result: &SifResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "SI_f {} ({})",
        dec4(result.value),
        result.band.as_str()
    );
    let _ = writeln!(
        out,
        "equipment cost {}, weighted control cost {}",
        result.ce, result.weighted_control_cost
    );
    match result.band {
        SifBand::OverInvested => {
            let _ = writeln!(out, "{}; typical causes:", result.band.interpretation());
            for cause in OVER_INVESTMENT_CAUSES {
                let _ = writeln!(out, "  - {cause}");
            }
        }
        _ => {
            let _ = writeln!(out, "{}", result.band.interpretation());
        }
    }
    out
}

/// `trend`: year-over-year loss report from two loss tables.
pub fn cmd_trend(prev_path: &Path, curr_path: &Path, format: ReportFormat) -> CommandOutcome {
    let run = || -> Result<String> {
        let prev = load_loss_table(prev_path)?;
        let curr = load_loss_table(curr_path)?;
        let report = build_report(&prev, &curr)?;
        match format {
            ReportFormat::Csv => report.render(format),
            _ => {
                let mut out = report.render(ReportFormat::Table)?;
                let _ = writeln!(out, "total delta: {}", dec2(report.total_delta));
                let top: Vec<String> = report
                    .top_increases
                    .iter()
                    .take(3)
                    .map(|(category, delta)| format!("{category} ({})", dec2(*delta)))
                    .collect();
                let _ = writeln!(out, "top increases: {}", top.join(", "));
                Ok(out)
            }
        }
    };
    match run() {
        Ok(stdout) => CommandOutcome::ok(stdout, String::new()),
        Err(err) => CommandOutcome::failure(&err),
    }
}

/// `simulate`: Monte Carlo run for one asset-threat pair, reported next
/// to the analytic expectation. Plotdata output is the bare
/// loss-exceedance curve.
pub fn cmd_simulate(
    register_path: &Path,
    asset_id: &str,
    threat_id: &str,
    years: u64,
    seed: u64,
    model: OccurrenceModel,
    format: ReportFormat,
) -> CommandOutcome {
    let run = || -> Result<String> {
        let register = load_register(register_path)?;
        let asset = register
            .asset(asset_id)
            .ok_or_else(|| Error::UnknownAsset(asset_id.to_string()))?;
        let threat = register
            .threat(threat_id)
            .ok_or_else(|| Error::UnknownThreat(threat_id.to_string()))?;
        if threat.asset_id() != asset.id() {
            return Err(Error::validation(
                format!("threat {threat_id:?}"),
                format!("does not target asset {asset_id:?}"),
            ));
        }
        let config = SimConfig::new(years, seed, model)?;
        let result = simulate(asset.av(), threat.pvl(), threat.aro(), &config)?;
        let analytic = ale(asset.av(), threat.pvl(), threat.aro())?;

        let mut out = result.render(format)?;
        let ratio = if analytic.amount.amount() > 0.0 {
            Some(result.mean_annual_loss().amount() / analytic.amount.amount())
        } else {
            None
        };
        match format {
            ReportFormat::Table => {
                let _ = writeln!(out, "analytic ALE: {}", analytic.amount);
                match ratio {
                    Some(ratio) => {
                        let _ = writeln!(out, "ratio simulated/analytic: {}", dec4(ratio));
                    }
                    None => {
                        let _ =
                            writeln!(out, "ratio simulated/analytic: n/a (analytic ALE is zero)");
                    }
                }
            }
            ReportFormat::Csv => {
                let _ = writeln!(out, "analytic_ale,{}", dec2(analytic.amount.amount()));
                if let Some(ratio) = ratio {
                    let _ = writeln!(out, "ratio,{}", dec4(ratio));
                }
            }
            ReportFormat::Plotdata => {}
        }
        Ok(out)
    };
    match run() {
        Ok(stdout) => CommandOutcome::ok(stdout, String::new()),
        Err(err) => CommandOutcome::failure(&err),
    }
}

/// `curve`: write the iso-risk hyperbola as plot data and print the
/// output path.
pub fn cmd_curve(acceptable_risk: f64, n_points: u64, out_path: &Path) -> CommandOutcome {
    let run = || -> std::result::Result<String, CommandOutcome> {
        let scalar = RiskScalar::new(acceptable_risk)
            .map_err(|e| CommandOutcome::usage(&e))?;
        let points = iso_risk_curve(scalar, n_points).map_err(|e| match e {
            Error::InvalidThreshold(_) | Error::InvalidCount(_) => CommandOutcome::usage(&e),
            other => CommandOutcome::failure(&other),
        })?;
        save_report(points.as_slice(), out_path, ReportFormat::Plotdata)
            .map_err(|e| CommandOutcome::failure(&e))?;
        Ok(format!("{}\n", out_path.display()))
    };
    match run() {
        Ok(stdout) => CommandOutcome::ok(stdout, String::new()),
        Err(outcome) => outcome,
    }
}

/// `matrix`: print the active tolerability grid, frequency class 4 first.
pub fn cmd_matrix(config_path: Option<&Path>) -> CommandOutcome {
    let run = || -> Result<String> {
        let config = resolve_config(config_path)?;
        let mut out = String::new();
        let _ = writeln!(out, "{:<12} {:>4} {:>4} {:>4} {:>4} {:>4}", "loss", 0, 1, 2, 3, 4);
        for freq in (0..5u8).rev() {
            let _ = write!(out, "frequency {freq} ");
            for loss in 0..5u8 {
                let verdict = config.matrix.classify(freq, loss)?;
                let _ = write!(out, " {:>4}", verdict.as_str());
            }
            out.push('\n');
        }
        Ok(out)
    };
    match run() {
        Ok(stdout) => CommandOutcome::ok(stdout, String::new()),
        Err(err) => CommandOutcome::failure(&err),
    }
}

/// Resolve the curve threshold for the binary: an explicit flag wins,
/// otherwise the configured acceptable risk.
pub fn curve_threshold(explicit: Option<f64>, config_path: Option<&PathBuf>) -> Result<f64> {
    match explicit {
        Some(value) => Ok(value),
        None => {
            let config = resolve_config(config_path.map(|p| p.as_path()))?;
            Ok(config.acceptable_risk.value())
        }
    }
}
