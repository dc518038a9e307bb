//! Money-denominated indicators: the financial security indicator over
//! control costs, annualized and single-occurrence loss expectancies, the
//! post-control recalculation with its investment cap, and the cost-benefit
//! power curve.

use crate::error::{Error, Result};
use crate::model::{Control, Money, Threat};

/// Classification band for the financial security indicator.
///
/// The indicator relates weighted control cost to equipment cost:
/// zero means nothing was invested in security, values up to one mean a
/// minimum but existent security investment, and values above one mean
/// securing the equipment cost more than the equipment itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SifBand {
    NoInvestment,
    Minimum,
    OverInvested,
}

/// Candidate causes printed when the indicator exceeds one, i.e. the
/// controls cost more than the equipment they protect. The CLI prints
/// these lines verbatim.
pub const OVER_INVESTMENT_CAUSES: [&str; 3] = [
    "risks overestimated or control measures oversized",
    "low-grade equipment that needs compensating add-ons",
    "equipment value depreciated while control costs stayed current",
];

impl SifBand {
    pub fn as_str(self) -> &'static str {
        match self {
            SifBand::NoInvestment => "NoInvestment",
            SifBand::Minimum => "Minimum",
            SifBand::OverInvested => "OverInvested",
        }
    }

    /// One-line reading of the band.
    pub fn interpretation(self) -> &'static str {
        match self {
            SifBand::NoInvestment => "no security investment recorded for this equipment",
            SifBand::Minimum => "a minimum but existent security level is funded",
            SifBand::OverInvested => "securing the equipment costs more than the equipment itself",
        }
    }

    fn from_value(value: f64) -> Self {
        if value == 0.0 {
            SifBand::NoInvestment
        } else if value <= 1.0 {
            SifBand::Minimum
        } else {
            SifBand::OverInvested
        }
    }
}

/// Computed financial security indicator with its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SifResult {
    pub value: f64,
    pub band: SifBand,
    pub ce: Money,
    pub weighted_control_cost: Money,
}

/// Financial security indicator: weighted control cost relative to
/// equipment cost,
///
/// ```text
/// SI_f = (Ce + sum(w_i * Cc_i)) / Ce - 1 = sum(w_i * Cc_i) / Ce
/// ```
///
/// The simplified right-hand form is what gets computed; the identity of
/// the two forms is covered by a property test.
pub fn sif(ce: Money, controls: &[Control]) -> Result<SifResult> {
    if ce.amount() <= 0.0 {
        return Err(Error::ZeroEquipmentCost);
    }
    let mut weighted = Money::zero(ce.currency());
    for control in controls {
        weighted = weighted.try_add(control.cost().scale(control.weight())?)?;
    }
    let value = weighted.ratio_to(ce)?;
    Ok(SifResult {
        value,
        band: SifBand::from_value(value),
        ce,
        weighted_control_cost: weighted,
    })
}

/// Which loss expectancy a [`LossExpectancy`] value carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossKind {
    Ale,
    Sol,
    RecalculatedAle,
}

impl LossKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LossKind::Ale => "ALE",
            LossKind::Sol => "SOL",
            LossKind::RecalculatedAle => "recalculated ALE",
        }
    }
}

/// A computed loss expectancy together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct LossExpectancy {
    pub kind: LossKind,
    pub amount: Money,
    pub av: Money,
    pub pvl: f64,
    pub aro: Option<f64>,
}

impl LossExpectancy {
    /// True when the expectancy exceeds the asset value, which can only
    /// happen for annualized figures with more than one expected event
    /// per year. Surfaced as a lint, not an error.
    pub fn exceeds_asset_value(&self) -> bool {
        self.amount.amount() > self.av.amount()
    }
}

fn check_pvl(pvl: f64) -> Result<()> {
    if (0.0..=1.0).contains(&pvl) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "pvl",
            value: pvl,
            min: 0.0,
            max: 1.0,
        })
    }
}

/// Annualized loss expectancy: `AV * PVL * ARO`, the expected loss per
/// year from one threat against one asset.
pub fn ale(av: Money, pvl: f64, aro: f64) -> Result<LossExpectancy> {
    check_pvl(pvl)?;
    if !aro.is_finite() || aro < 0.0 {
        return Err(Error::NegativeRate(aro));
    }
    let amount = av.scale(pvl)?.scale(aro)?;
    Ok(LossExpectancy {
        kind: LossKind::Ale,
        amount,
        av,
        pvl,
        aro: Some(aro),
    })
}

/// Single occurrence loss: `AV * PVL`, the damage from one occurrence —
/// the figure that answers whether the business survives a disaster where
/// the second occurrence no longer counts.
pub fn sol(av: Money, pvl: f64) -> Result<LossExpectancy> {
    check_pvl(pvl)?;
    let amount = av.scale(pvl)?;
    Ok(LossExpectancy {
        kind: LossKind::Sol,
        amount,
        av,
        pvl,
        aro: None,
    })
}

/// Before/after loss expectancies around a control, plus the annual
/// budget the reduction justifies.
#[derive(Debug, Clone, PartialEq)]
pub struct RecalculatedAle {
    pub before: LossExpectancy,
    pub after: LossExpectancy,
    /// `before - after`: the most that is worth spending per year on the
    /// control, since spending more would exceed the avoided loss.
    pub budget_cap: Money,
}

/// Recompute the annualized loss expectancy with a control's residual
/// threat parameters in place of the original ones. The control must
/// declare at least one residual value, and residual values may not be
/// worse than what they replace.
pub fn recalculated_ale(av: Money, threat: &Threat, control: &Control) -> Result<RecalculatedAle> {
    if control.post_pvl().is_none() && control.post_aro().is_none() {
        return Err(Error::MissingPostValues {
            control: control.id().to_string(),
        });
    }
    let post_pvl = control.post_pvl().unwrap_or_else(|| threat.pvl());
    let post_aro = control.post_aro().unwrap_or_else(|| threat.aro());
    if post_pvl > threat.pvl() {
        return Err(Error::WorsenedRisk {
            control: control.id().to_string(),
            field: "pvl",
            pre: threat.pvl(),
            post: post_pvl,
        });
    }
    if post_aro > threat.aro() {
        return Err(Error::WorsenedRisk {
            control: control.id().to_string(),
            field: "aro",
            pre: threat.aro(),
            post: post_aro,
        });
    }
    let before = ale(av, threat.pvl(), threat.aro())?;
    let after = ale(av, post_pvl, post_aro)?;
    let budget_cap = before.amount.try_sub(after.amount)?;
    let after = LossExpectancy {
        kind: LossKind::RecalculatedAle,
        ..after
    };
    Ok(RecalculatedAle {
        before,
        after,
        budget_cap,
    })
}

/// Exponent of the cost-benefit power curve, anchored so that a 0.2 cost
/// fraction yields a 0.8 benefit fraction: `ln(0.8) / ln(0.2)`.
pub fn pareto_exponent() -> f64 {
    0.8f64.ln() / 0.2f64.ln()
}

/// Benefit fraction achieved by a given cost fraction under the anchored
/// power curve `benefit = cost^alpha`. Monotone, concave, equal to the
/// diagonal only at the endpoints.
pub fn pareto_benefit(cost_fraction: f64) -> Result<f64> {
    pareto_benefit_with_exponent(cost_fraction, pareto_exponent())
}

/// [`pareto_benefit`] with an explicit exponent in `(0, 1)`, for
/// organizations that calibrate their own curve.
pub fn pareto_benefit_with_exponent(cost_fraction: f64, exponent: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&cost_fraction) {
        return Err(Error::OutOfRange {
            what: "cost fraction",
            value: cost_fraction,
            min: 0.0,
            max: 1.0,
        });
    }
    if !exponent.is_finite() || exponent <= 0.0 || exponent >= 1.0 {
        return Err(Error::OutOfRange {
            what: "pareto exponent",
            value: exponent,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(cost_fraction.powf(exponent))
}
