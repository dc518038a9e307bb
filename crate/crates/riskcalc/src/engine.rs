//! Classification logic: tolerability against the acceptable-risk curve,
//! the seven-band risk ladder and its security mirror, and the
//! frequency x loss impact matrix.
//!
//! Everything here classifies on the probability-impact product alone.
//! Organizations judge what a risk level means against wider criteria
//! categories — event consequences, associated costs and benefits,
//! socio-economic context, stakeholder perception, incident frequency,
//! cumulative effects of repeated incidents, uncertainty of the
//! determined level, and the residual risk they accept — and weighing
//! those stays with the analyst; no aggregation across them happens in
//! this library.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{RiskLevel, RiskPoint, RiskScalar, SecurityLevel};

/// Two-state impact verdict, serialized as `T` / `NT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tolerability {
    Tolerable,
    NonTolerable,
}

impl Tolerability {
    pub fn as_str(self) -> &'static str {
        match self {
            Tolerability::Tolerable => "T",
            Tolerability::NonTolerable => "NT",
        }
    }

    pub fn is_tolerable(self) -> bool {
        matches!(self, Tolerability::Tolerable)
    }
}

impl fmt::Display for Tolerability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tolerability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Tolerability::Tolerable),
            "NT" => Ok(Tolerability::NonTolerable),
            other => Err(Error::validation(
                "tolerability",
                format!("expected \"T\" or \"NT\", got {other:?}"),
            )),
        }
    }
}

/// Classify a risk point against the constant-risk curve at
/// `acceptable_risk`. Points on or below the curve are tolerable: the
/// curve itself is the last acceptable locus.
pub fn tolerability(point: RiskPoint, acceptable_risk: RiskScalar) -> Result<Tolerability> {
    if acceptable_risk.value() <= 0.0 {
        return Err(Error::InvalidThreshold(acceptable_risk.value()));
    }
    if point.risk().value() <= acceptable_risk.value() {
        Ok(Tolerability::Tolerable)
    } else {
        Ok(Tolerability::NonTolerable)
    }
}

/// Sample the constant-risk hyperbola `p * i = acceptable_risk` on the
/// unit square: `n_points` points with `p` geometrically spaced over
/// `[acceptable_risk, 1]` and `i = acceptable_risk / p`. The endpoints are
/// `(acceptable_risk, 1)` and `(1, acceptable_risk)` exactly.
pub fn iso_risk_curve(acceptable_risk: RiskScalar, n_points: u64) -> Result<Vec<RiskPoint>> {
    let a = acceptable_risk.value();
    if a <= 0.0 || a > 1.0 {
        return Err(Error::InvalidThreshold(a));
    }
    if n_points < 2 {
        return Err(Error::InvalidCount(n_points));
    }
    let ln_a = a.ln();
    let last = n_points - 1;
    let mut points = Vec::with_capacity(n_points as usize);
    for k in 0..n_points {
        let p = if k == 0 {
            a
        } else if k == last {
            1.0
        } else {
            let s = 1.0 - k as f64 / last as f64;
            (s * ln_a).exp()
        };
        // p >= a, so i <= 1 up to rounding; clamp the float noise
        let i = (a / p).min(1.0);
        points.push(RiskPoint::new(p, i)?);
    }
    Ok(points)
}

/// Ascending cut points splitting `[0, 1]` into the seven risk bands.
///
/// The defaults are tool configuration with no external source; override
/// them from the config file when an organization defines its own bands.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskLevelLadder {
    thresholds: [f64; 6],
}

pub const DEFAULT_LADDER_THRESHOLDS: [f64; 6] = [0.01, 0.04, 0.10, 0.25, 0.45, 0.70];

impl Default for RiskLevelLadder {
    fn default() -> Self {
        Self {
            thresholds: DEFAULT_LADDER_THRESHOLDS,
        }
    }
}

impl RiskLevelLadder {
    pub fn new(thresholds: [f64; 6]) -> Result<Self> {
        let ascending = thresholds.windows(2).all(|w| w[0] < w[1]);
        let in_open_unit = thresholds.iter().all(|t| t.is_finite() && *t > 0.0 && *t < 1.0);
        if ascending && in_open_unit {
            Ok(Self { thresholds })
        } else {
            Err(Error::InvalidCutPoints)
        }
    }

    pub fn thresholds(&self) -> &[f64; 6] {
        &self.thresholds
    }

    /// Band lookup for `r` in `[0, 1]`. Band k covers `[t_{k-1}, t_k)`
    /// with `t_0 = 0`; the top band is closed at 1, so every admissible
    /// `r` maps to exactly one level.
    pub fn level_for(&self, r: RiskScalar) -> Result<RiskLevel> {
        let value = r.value();
        if value > 1.0 {
            return Err(Error::OutOfRange {
                what: "risk scalar",
                value,
                min: 0.0,
                max: 1.0,
            });
        }
        let band = self.thresholds.iter().filter(|t| **t <= value).count() as u8;
        RiskLevel::from_index(band + 1)
    }
}

/// Security level for a risk level: the scales mirror each other, so the
/// indices satisfy `security = 8 - risk`.
pub fn security_level_for(risk: RiskLevel) -> SecurityLevel {
    SecurityLevel::from_index(8 - risk.index()).expect("mirror of a valid index is valid")
}

/// Inverse of [`security_level_for`].
pub fn risk_level_for(security: SecurityLevel) -> RiskLevel {
    RiskLevel::from_index(8 - security.index()).expect("mirror of a valid index is valid")
}

/// Scalar security as the reciprocal of risk. Zero risk is a declared
/// singularity: callers wanting a band answer use the ladder instead,
/// where r = 0 lands in the lowest risk band and mirrors to the top
/// security level.
pub fn security_scalar(r: RiskScalar) -> Result<f64> {
    if r.value() == 0.0 {
        return Err(Error::ZeroRisk);
    }
    Ok(1.0 / r.value())
}

/// 5x5 tolerability grid over (frequency class, loss class), both 0..=4.
///
/// The default grid marks a cell non-tolerable when the class sum reaches
/// 4. That rule reproduces all 23 unambiguously printed cells of the
/// reference grid; the two corner cells it leaves open, (frequency 4,
/// loss 0) and (frequency 0, loss 4), come out non-tolerable. Load a full
/// override from the config file to adopt the other reading.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpactMatrix {
    // cells[frequency_class][loss_class]
    cells: [[Tolerability; 5]; 5],
}

impl Default for ImpactMatrix {
    fn default() -> Self {
        let mut cells = [[Tolerability::Tolerable; 5]; 5];
        for (freq, row) in cells.iter_mut().enumerate() {
            for (loss, cell) in row.iter_mut().enumerate() {
                if freq + loss >= 4 {
                    *cell = Tolerability::NonTolerable;
                }
            }
        }
        Self { cells }
    }
}

impl ImpactMatrix {
    /// Build a matrix from explicit cells, `cells[frequency][loss]`.
    /// Rejects grids where raising a class could turn NT back into T.
    pub fn new(cells: [[Tolerability; 5]; 5]) -> Result<Self> {
        for freq in 0..5 {
            for loss in 0..5 {
                if cells[freq][loss] == Tolerability::NonTolerable {
                    if freq + 1 < 5 && cells[freq + 1][loss] == Tolerability::Tolerable {
                        return Err(Error::NonMonotoneMatrix {
                            freq: freq as u8 + 1,
                            loss: loss as u8,
                        });
                    }
                    if loss + 1 < 5 && cells[freq][loss + 1] == Tolerability::Tolerable {
                        return Err(Error::NonMonotoneMatrix {
                            freq: freq as u8,
                            loss: loss as u8 + 1,
                        });
                    }
                }
            }
        }
        Ok(Self { cells })
    }

    pub fn classify(&self, frequency_class: u8, loss_class: u8) -> Result<Tolerability> {
        if frequency_class > 4 {
            return Err(Error::OutOfRange {
                what: "frequency class",
                value: frequency_class as f64,
                min: 0.0,
                max: 4.0,
            });
        }
        if loss_class > 4 {
            return Err(Error::OutOfRange {
                what: "loss class",
                value: loss_class as f64,
                min: 0.0,
                max: 4.0,
            });
        }
        Ok(self.cells[frequency_class as usize][loss_class as usize])
    }

    pub fn cells(&self) -> &[[Tolerability; 5]; 5] {
        &self.cells
    }
}

/// Map a non-negative value to one of five classes 0..=4: the class is
/// the number of cut points at or below the value, so a value sitting
/// exactly on a cut lands in the higher class.
pub fn discretize_class(value: f64, cut_points: &[f64; 4]) -> Result<u8> {
    let ascending = cut_points.windows(2).all(|w| w[0] < w[1]);
    if !ascending || cut_points.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidCutPoints);
    }
    if !value.is_finite() || value < 0.0 {
        return Err(Error::OutOfRange {
            what: "class value",
            value,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(cut_points.iter().filter(|c| **c <= value).count() as u8)
}
