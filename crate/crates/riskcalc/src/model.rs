//! Shared domain types: probabilities, impacts, risk points and scalars,
//! the two seven-band level scales, money, and the register entities.
//!
//! Every type validates on construction and is immutable afterwards, so a
//! value that exists is a value that satisfies its invariants. All types
//! here are plain data with no I/O and are safe to share across threads.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fmtnum;

/// Probability of occurrence of an undesired event, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::OutOfRange {
                what: "probability",
                value,
                min: 0.0,
                max: 1.0,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Normalized severity of an event: the fraction of the worst-case
/// consequence, in `[0, 1]`. Monetary impact is handled separately via
/// `PVL x AV` in the financial indicators.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Impact(f64);

impl Impact {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::OutOfRange {
                what: "impact",
                value,
                min: 0.0,
                max: 1.0,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A probability-impact couple locating an event on the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskPoint {
    p: Probability,
    i: Impact,
}

impl RiskPoint {
    pub fn new(p: f64, i: f64) -> Result<Self> {
        Ok(Self {
            p: Probability::new(p)?,
            i: Impact::new(i)?,
        })
    }

    pub fn probability(self) -> Probability {
        self.p
    }

    pub fn impact(self) -> Impact {
        self.i
    }

    /// Risk is the product of probability and impact. Equal products mean
    /// equal risk, so all points on a `p*i = const` hyperbola are
    /// equivalent.
    pub fn risk(self) -> RiskScalar {
        // both factors are in [0, 1], so the product is too
        RiskScalar(self.p.value() * self.i.value())
    }
}

/// Dimensionless non-negative risk magnitude.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RiskScalar(f64);

impl RiskScalar {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::OutOfRange {
                what: "risk scalar",
                value,
                min: 0.0,
                max: f64::INFINITY,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One of the seven ordinal risk bands.
///
/// Index, notation, and label form one row of the level table:
///
/// | index | notation | label             |
/// |-------|----------|-------------------|
/// | 1     | N        | Minimum, Non risk |
/// | 2     | VL       | Very low          |
/// | 3     | L        | Low               |
/// | 4     | M        | Medium            |
/// | 5     | H        | High              |
/// | 6     | VH       | Very high         |
/// | 7     | C        | Critical          |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RiskLevel {
    Minimum = 1,
    VeryLow = 2,
    Low = 3,
    Medium = 4,
    High = 5,
    VeryHigh = 6,
    Critical = 7,
}

impl RiskLevel {
    pub const ALL: [RiskLevel; 7] = [
        RiskLevel::Minimum,
        RiskLevel::VeryLow,
        RiskLevel::Low,
        RiskLevel::Medium,
        RiskLevel::High,
        RiskLevel::VeryHigh,
        RiskLevel::Critical,
    ];

    pub fn from_index(index: u8) -> Result<Self> {
        match index {
            1 => Ok(RiskLevel::Minimum),
            2 => Ok(RiskLevel::VeryLow),
            3 => Ok(RiskLevel::Low),
            4 => Ok(RiskLevel::Medium),
            5 => Ok(RiskLevel::High),
            6 => Ok(RiskLevel::VeryHigh),
            7 => Ok(RiskLevel::Critical),
            _ => Err(Error::OutOfRange {
                what: "risk level index",
                value: index as f64,
                min: 1.0,
                max: 7.0,
            }),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn notation(self) -> &'static str {
        match self {
            RiskLevel::Minimum => "N",
            RiskLevel::VeryLow => "VL",
            RiskLevel::Low => "L",
            RiskLevel::Medium => "M",
            RiskLevel::High => "H",
            RiskLevel::VeryHigh => "VH",
            RiskLevel::Critical => "C",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RiskLevel::Minimum => "Minimum, Non risk",
            RiskLevel::VeryLow => "Very low",
            RiskLevel::Low => "Low",
            RiskLevel::Medium => "Medium",
            RiskLevel::High => "High",
            RiskLevel::VeryHigh => "Very high",
            RiskLevel::Critical => "Critical",
        }
    }
}

impl fmt::Display for RiskLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{} ({})", self.index(), self.label())
    }
}

/// One of the seven ordinal security bands, the mirror scale of
/// [`RiskLevel`]: S1 "Insignificant" up to S7 "Excellent".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SecurityLevel {
    Insignificant = 1,
    VeryLow = 2,
    Low = 3,
    Acceptable = 4,
    Good = 5,
    VeryGood = 6,
    Excellent = 7,
}

impl SecurityLevel {
    pub const ALL: [SecurityLevel; 7] = [
        SecurityLevel::Insignificant,
        SecurityLevel::VeryLow,
        SecurityLevel::Low,
        SecurityLevel::Acceptable,
        SecurityLevel::Good,
        SecurityLevel::VeryGood,
        SecurityLevel::Excellent,
    ];

    pub fn from_index(index: u8) -> Result<Self> {
        match index {
            1 => Ok(SecurityLevel::Insignificant),
            2 => Ok(SecurityLevel::VeryLow),
            3 => Ok(SecurityLevel::Low),
            4 => Ok(SecurityLevel::Acceptable),
            5 => Ok(SecurityLevel::Good),
            6 => Ok(SecurityLevel::VeryGood),
            7 => Ok(SecurityLevel::Excellent),
            _ => Err(Error::OutOfRange {
                what: "security level index",
                value: index as f64,
                min: 1.0,
                max: 7.0,
            }),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn label(self) -> &'static str {
        match self {
            SecurityLevel::Insignificant => "Insignificant",
            SecurityLevel::VeryLow => "Very low",
            SecurityLevel::Low => "Low",
            SecurityLevel::Acceptable => "Acceptable",
            SecurityLevel::Good => "Good",
            SecurityLevel::VeryGood => "Very good",
            SecurityLevel::Excellent => "Excellent",
        }
    }
}

impl fmt::Display for SecurityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{} ({})", self.index(), self.label())
    }
}

/// Three-letter uppercase currency code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Currency([u8; 3]);

impl Currency {
    pub fn new(code: &str) -> Result<Self> {
        let bytes = code.as_bytes();
        if bytes.len() == 3 && bytes.iter().all(|b| b.is_ascii_uppercase()) {
            Ok(Self([bytes[0], bytes[1], bytes[2]]))
        } else {
            Err(Error::InvalidCurrency(code.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        // constructor admits ASCII uppercase only
        std::str::from_utf8(&self.0).unwrap()
    }
}

impl fmt::Display for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Currency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Currency::new(s)
    }
}

/// Non-negative amount of a single currency. Arithmetic across currency
/// codes is an error, never an implicit conversion. Amounts stay at full
/// precision; rounding happens only in display code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Money {
    amount: f64,
    currency: Currency,
}

impl Money {
    pub fn new(amount: f64, currency: Currency) -> Result<Self> {
        if amount.is_finite() && amount >= 0.0 {
            Ok(Self { amount, currency })
        } else {
            Err(Error::OutOfRange {
                what: "money amount",
                value: amount,
                min: 0.0,
                max: f64::INFINITY,
            })
        }
    }

    pub fn zero(currency: Currency) -> Self {
        Self {
            amount: 0.0,
            currency,
        }
    }

    pub fn amount(self) -> f64 {
        self.amount
    }

    pub fn currency(self) -> Currency {
        self.currency
    }

    pub fn same_currency(self, other: Money) -> Result<()> {
        if self.currency == other.currency {
            Ok(())
        } else {
            Err(Error::CurrencyMismatch {
                left: self.currency.to_string(),
                right: other.currency.to_string(),
            })
        }
    }

    pub fn try_add(self, other: Money) -> Result<Money> {
        self.same_currency(other)?;
        Money::new(self.amount + other.amount, self.currency)
    }

    /// Subtraction; a negative result is rejected since amounts are
    /// non-negative by definition.
    pub fn try_sub(self, other: Money) -> Result<Money> {
        self.same_currency(other)?;
        let diff = self.amount - other.amount;
        if diff < 0.0 {
            return Err(Error::NegativeValue {
                value: diff,
                location: "money subtraction".to_string(),
            });
        }
        Money::new(diff, self.currency)
    }

    pub fn scale(self, factor: f64) -> Result<Money> {
        if !factor.is_finite() || factor < 0.0 {
            return Err(Error::OutOfRange {
                what: "scale factor",
                value: factor,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        Money::new(self.amount * factor, self.currency)
    }

    /// `self / base` as a plain ratio; requires the same currency and a
    /// positive base.
    pub fn ratio_to(self, base: Money) -> Result<f64> {
        self.same_currency(base)?;
        if base.amount <= 0.0 {
            return Err(Error::ZeroBase);
        }
        Ok(self.amount / base.amount)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", fmtnum::dec2(self.amount), self.currency)
    }
}

/// A register asset: something whose loss costs money. `av` is the
/// replacement-plus-loss value; `equipment_cost` is the acquisition cost
/// used by the financial security indicator and may be absent.
#[derive(Debug, Clone, PartialEq)]
pub struct Asset {
    id: String,
    name: String,
    av: Money,
    equipment_cost: Option<Money>,
}

impl Asset {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        av: Money,
        equipment_cost: Option<Money>,
    ) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::validation("asset", "empty id"));
        }
        Ok(Self {
            id,
            name: name.into(),
            av,
            equipment_cost,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn av(&self) -> Money {
        self.av
    }

    pub fn equipment_cost(&self) -> Option<Money> {
        self.equipment_cost
    }
}

/// A threat against one asset: `pvl` is the fraction of the asset value
/// lost per occurrence, `aro` the expected occurrences per year. Rates
/// above one per year are legal.
#[derive(Debug, Clone, PartialEq)]
pub struct Threat {
    id: String,
    asset_id: String,
    pvl: f64,
    aro: f64,
}

impl Threat {
    pub fn new(
        id: impl Into<String>,
        asset_id: impl Into<String>,
        pvl: f64,
        aro: f64,
    ) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::validation("threat", "empty id"));
        }
        if !(0.0..=1.0).contains(&pvl) {
            return Err(Error::OutOfRange {
                what: "pvl",
                value: pvl,
                min: 0.0,
                max: 1.0,
            });
        }
        if !aro.is_finite() || aro < 0.0 {
            return Err(Error::NegativeRate(aro));
        }
        Ok(Self {
            id,
            asset_id: asset_id.into(),
            pvl,
            aro,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn asset_id(&self) -> &str {
        &self.asset_id
    }

    pub fn pvl(&self) -> f64 {
        self.pvl
    }

    pub fn aro(&self) -> f64 {
        self.aro
    }
}

/// A security measure applied to one asset. `weight` attributes the
/// fraction of the control's cost that counts towards this asset (a
/// control shared across two assets would carry weight 0.5 on each).
/// `post_pvl` / `post_aro` record the residual threat parameters the
/// control is expected to achieve.
#[derive(Debug, Clone, PartialEq)]
pub struct Control {
    id: String,
    asset_id: String,
    weight: f64,
    cost: Money,
    post_pvl: Option<f64>,
    post_aro: Option<f64>,
}

impl Control {
    pub fn new(
        id: impl Into<String>,
        asset_id: impl Into<String>,
        weight: f64,
        cost: Money,
        post_pvl: Option<f64>,
        post_aro: Option<f64>,
    ) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::validation("control", "empty id"));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::OutOfRange {
                what: "control weight",
                value: weight,
                min: 0.0,
                max: 1.0,
            });
        }
        if let Some(p) = post_pvl {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::OutOfRange {
                    what: "post_pvl",
                    value: p,
                    min: 0.0,
                    max: 1.0,
                });
            }
        }
        if let Some(a) = post_aro {
            if !a.is_finite() || a < 0.0 {
                return Err(Error::NegativeRate(a));
            }
        }
        Ok(Self {
            id,
            asset_id: asset_id.into(),
            weight,
            cost,
            post_pvl,
            post_aro,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn asset_id(&self) -> &str {
        &self.asset_id
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn cost(&self) -> Money {
        self.cost
    }

    pub fn post_pvl(&self) -> Option<f64> {
        self.post_pvl
    }

    pub fn post_aro(&self) -> Option<f64> {
        self.post_aro
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eur() -> Currency {
        Currency::new("EUR").unwrap()
    }

    #[test]
    fn test_risk_point_interior() {
        let point = RiskPoint::new(0.5, 0.5).unwrap();
        assert_eq!(point.probability().value(), 0.5);
        assert_eq!(point.impact().value(), 0.5);
    }

    #[test]
    fn test_risk_point_bound_violation() {
        assert!(matches!(
            RiskPoint::new(1.2, 0.5),
            Err(Error::OutOfRange { what: "probability", .. })
        ));
        assert!(matches!(
            RiskPoint::new(0.5, -0.1),
            Err(Error::OutOfRange { what: "impact", .. })
        ));
        assert!(RiskPoint::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn test_risk_point_boundary_accepted() {
        let point = RiskPoint::new(0.0, 1.0).unwrap();
        assert_eq!(point.risk().value(), 0.0);
    }

    #[test]
    fn test_risk_is_the_product() {
        assert_eq!(RiskPoint::new(0.5, 0.5).unwrap().risk().value(), 0.25);
        assert_eq!(RiskPoint::new(0.0, 1.0).unwrap().risk().value(), 0.0);
    }

    #[test]
    fn test_risk_product_symmetry() {
        let a = RiskPoint::new(0.1, 0.8).unwrap().risk().value();
        let b = RiskPoint::new(0.8, 0.1).unwrap().risk().value();
        assert_eq!(a, b);
        assert_eq!(a, 0.8 * 0.1);
    }

    #[test]
    fn test_level_tables_are_bijections() {
        assert_eq!(RiskLevel::ALL.len(), 7);
        assert_eq!(SecurityLevel::ALL.len(), 7);
        for (ix, level) in RiskLevel::ALL.iter().enumerate() {
            assert_eq!(level.index() as usize, ix + 1);
            assert_eq!(RiskLevel::from_index(level.index()).unwrap(), *level);
        }
        for (ix, level) in SecurityLevel::ALL.iter().enumerate() {
            assert_eq!(level.index() as usize, ix + 1);
            assert_eq!(SecurityLevel::from_index(level.index()).unwrap(), *level);
        }
        let notations: Vec<_> = RiskLevel::ALL.iter().map(|l| l.notation()).collect();
        let mut dedup = notations.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 7, "notations must be pairwise distinct");
        let labels: Vec<_> = RiskLevel::ALL.iter().map(|l| l.label()).collect();
        let mut dedup = labels.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 7, "labels must be pairwise distinct");
    }

    #[test]
    fn test_level_index_bounds() {
        assert!(RiskLevel::from_index(0).is_err());
        assert!(RiskLevel::from_index(8).is_err());
        assert!(SecurityLevel::from_index(0).is_err());
        assert!(SecurityLevel::from_index(8).is_err());
    }

    #[test]
    fn test_currency_codes() {
        assert_eq!(Currency::new("USD").unwrap().as_str(), "USD");
        assert!(Currency::new("usd").is_err());
        assert!(Currency::new("EURO").is_err());
        assert!(Currency::new("E1R").is_err());
    }

    #[test]
    fn test_money_rejects_negative_and_non_finite() {
        assert!(Money::new(-1.0, eur()).is_err());
        assert!(Money::new(f64::NAN, eur()).is_err());
        assert!(Money::new(f64::INFINITY, eur()).is_err());
    }

    #[test]
    fn test_money_cross_currency_arithmetic_rejected() {
        let a = Money::new(10.0, eur()).unwrap();
        let b = Money::new(10.0, Currency::new("USD").unwrap()).unwrap();
        assert!(matches!(a.try_add(b), Err(Error::CurrencyMismatch { .. })));
        assert!(matches!(a.try_sub(b), Err(Error::CurrencyMismatch { .. })));
        assert!(matches!(a.ratio_to(b), Err(Error::CurrencyMismatch { .. })));
    }

    #[test]
    fn test_money_display_two_decimals() {
        let m = Money::new(2500.0, eur()).unwrap();
        assert_eq!(m.to_string(), "2500.00 EUR");
    }

    #[test]
    fn test_threat_validation() {
        assert!(Threat::new("t", "a", 1.5, 0.1).is_err());
        assert!(Threat::new("t", "a", 0.5, -0.1).is_err());
        assert!(Threat::new("", "a", 0.5, 0.1).is_err());
        let t = Threat::new("t", "a", 0.5, 2.5).unwrap();
        assert_eq!(t.aro(), 2.5);
    }

    #[test]
    fn test_control_validation() {
        let cost = Money::new(100.0, eur()).unwrap();
        assert!(Control::new("c", "a", 1.5, cost, None, None).is_err());
        assert!(Control::new("c", "a", 0.5, cost, Some(1.2), None).is_err());
        assert!(Control::new("c", "a", 0.5, cost, None, Some(-1.0)).is_err());
        assert!(Control::new("c", "a", 0.5, cost, Some(0.2), Some(0.05)).is_ok());
    }

    proptest! {
        #[test]
        fn prop_risk_commutes(p in 0.0..=1.0f64, i in 0.0..=1.0f64) {
            let a = RiskPoint::new(p, i).unwrap().risk().value();
            let b = RiskPoint::new(i, p).unwrap().risk().value();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn prop_risk_monotone_in_each_coordinate(
            p1 in 0.0..=1.0f64,
            p2 in 0.0..=1.0f64,
            i in 0.0..=1.0f64,
        ) {
            let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
            let r_lo = RiskPoint::new(lo, i).unwrap().risk().value();
            let r_hi = RiskPoint::new(hi, i).unwrap().risk().value();
            prop_assert!(r_lo <= r_hi);
            // symmetric role of the coordinates covers the impact axis
            let r_lo = RiskPoint::new(i, lo).unwrap().risk().value();
            let r_hi = RiskPoint::new(i, hi).unwrap().risk().value();
            prop_assert!(r_lo <= r_hi);
        }

        #[test]
        fn prop_iso_risk_hyperbola_carries_equal_risk(
            r in 1e-6..=1.0f64,
            t in 0.0..=1.0f64,
        ) {
            // p sweeps [r, 1]; i = r/p stays in [0, 1]
            let p = r + t * (1.0 - r);
            let i = r / p;
            let risk = RiskPoint::new(p, i).unwrap().risk().value();
            prop_assert!((risk - r).abs() < 1e-12);
        }
    }
}
