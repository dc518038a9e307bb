//! File-backed persistence: the asset/threat/control register and the
//! tool configuration live in TOML documents, loss tables in two-column
//! CSV. Everything a loader returns has already passed full validation,
//! and every diagnostic names a line or an entity.
//!
//! The exact grammars, number formats, and newline conventions are frozen
//! in `docs/FORMAT.md` at the repository root.

mod report;

pub use report::{save_report, Render, ReportFormat};

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::engine::{ImpactMatrix, RiskLevelLadder, Tolerability};
use crate::error::{Error, Result};
use crate::financial::pareto_exponent;
use crate::model::{Asset, Control, Currency, Money, RiskScalar, Threat};

/// Schema version this build reads and writes. Documents carrying any
/// other version are rejected outright rather than best-effort parsed.
pub const SCHEMA_VERSION: u64 = 1;

/// Validated in-memory register. Constructible only through paths that
/// enforce id uniqueness and referential integrity, so holding a
/// `Register` means holding consistent data.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    currency: Currency,
    assets: Vec<Asset>,
    threats: Vec<Threat>,
    controls: Vec<Control>,
}

impl Register {
    pub fn new(
        currency: Currency,
        assets: Vec<Asset>,
        threats: Vec<Threat>,
        controls: Vec<Control>,
    ) -> Result<Self> {
        let mut asset_ids = HashSet::new();
        for asset in &assets {
            if !asset_ids.insert(asset.id()) {
                return Err(Error::validation(
                    format!("asset {:?}", asset.id()),
                    "duplicate id",
                ));
            }
        }
        let mut threat_ids = HashSet::new();
        for threat in &threats {
            if !threat_ids.insert(threat.id()) {
                return Err(Error::validation(
                    format!("threat {:?}", threat.id()),
                    "duplicate id",
                ));
            }
            if !asset_ids.contains(threat.asset_id()) {
                return Err(Error::validation(
                    format!("threat {:?}", threat.id()),
                    format!("references missing asset {:?}", threat.asset_id()),
                ));
            }
        }
        let mut control_ids = HashSet::new();
        for control in &controls {
            if !control_ids.insert(control.id()) {
                return Err(Error::validation(
                    format!("control {:?}", control.id()),
                    "duplicate id",
                ));
            }
            if !asset_ids.contains(control.asset_id()) {
                return Err(Error::validation(
                    format!("control {:?}", control.id()),
                    format!("references missing asset {:?}", control.asset_id()),
                ));
            }
        }
        Ok(Self {
            currency,
            assets,
            threats,
            controls,
        })
    }

    pub fn schema_version(&self) -> u64 {
        SCHEMA_VERSION
    }

    /// Default currency for entities without an explicit override.
    pub fn currency(&self) -> Currency {
        self.currency
    }

    pub fn assets(&self) -> &[Asset] {
        &self.assets
    }

    pub fn threats(&self) -> &[Threat] {
        &self.threats
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn asset(&self, id: &str) -> Option<&Asset> {
        self.assets.iter().find(|a| a.id() == id)
    }

    pub fn threat(&self, id: &str) -> Option<&Threat> {
        self.threats.iter().find(|t| t.id() == id)
    }

    pub fn threats_for<'a>(&'a self, asset_id: &'a str) -> impl Iterator<Item = &'a Threat> {
        self.threats.iter().filter(move |t| t.asset_id() == asset_id)
    }

    pub fn controls_for<'a>(&'a self, asset_id: &'a str) -> impl Iterator<Item = &'a Control> {
        self.controls
            .iter()
            .filter(move |c| c.asset_id() == asset_id)
    }
}

/// Knobs that tailor the classification machinery: the acceptable risk
/// threshold, ladder cut points, matrix override, class cuts for the
/// matrix axes, and the cost-benefit exponent. [`ToolConfig::default`]
/// gives the documented defaults; a config file overrides field by field.
#[derive(Debug, Clone, PartialEq)]
pub struct ToolConfig {
    pub acceptable_risk: RiskScalar,
    pub ladder: RiskLevelLadder,
    pub matrix: ImpactMatrix,
    pub frequency_cuts: [f64; 4],
    pub loss_cuts: [f64; 4],
    pub pareto_exponent: f64,
}

pub const DEFAULT_ACCEPTABLE_RISK: f64 = 0.1;
pub const DEFAULT_FREQUENCY_CUTS: [f64; 4] = [0.1, 0.5, 1.0, 10.0];
pub const DEFAULT_LOSS_CUTS: [f64; 4] = [1_000.0, 10_000.0, 100_000.0, 1_000_000.0];

impl Default for ToolConfig {
    fn default() -> Self {
        Self {
            acceptable_risk: RiskScalar::new(DEFAULT_ACCEPTABLE_RISK).expect("valid default"),
            ladder: RiskLevelLadder::default(),
            matrix: ImpactMatrix::default(),
            frequency_cuts: DEFAULT_FREQUENCY_CUTS,
            loss_cuts: DEFAULT_LOSS_CUTS,
            pareto_exponent: pareto_exponent(),
        }
    }
}

// ---------------------------------------------------------------------
// serde document shapes (file layer only; domain types stay serde-free)
// ---------------------------------------------------------------------

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RegisterDoc {
    schema_version: u64,
    currency: String,
    #[serde(default)]
    assets: Vec<AssetRow>,
    #[serde(default)]
    threats: Vec<ThreatRow>,
    #[serde(default)]
    controls: Vec<ControlRow>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct AssetRow {
    id: String,
    name: String,
    av: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    equipment_cost: Option<f64>,
    /// Currency override for this row; the register default otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    currency: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ThreatRow {
    id: String,
    asset_id: String,
    pvl: f64,
    aro: f64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ControlRow {
    id: String,
    asset_id: String,
    weight: f64,
    cost: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    post_pvl: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    post_aro: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    currency: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    schema_version: u64,
    acceptable_risk: Option<f64>,
    ladder_thresholds: Option<Vec<f64>>,
    frequency_cuts: Option<Vec<f64>>,
    loss_cuts: Option<Vec<f64>>,
    pareto_exponent: Option<f64>,
    /// Five rows of five "T"/"NT" cells, frequency class 4 first.
    matrix_override: Option<Vec<Vec<String>>>,
}

// ---------------------------------------------------------------------
// register load/save
// ---------------------------------------------------------------------

/// Load and fully validate a register document.
pub fn load_register(path: &Path) -> Result<Register> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_register(&text, &path.display().to_string())
}

/// Parse a register from TOML text; `origin` names the source in
/// diagnostics.
pub fn parse_register(text: &str, origin: &str) -> Result<Register> {
    let doc: RegisterDoc =
        toml::from_str(text).map_err(|e| Error::parse(origin, e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::UnsupportedVersion {
            found: doc.schema_version,
            supported: SCHEMA_VERSION,
        });
    }
    let default_currency = Currency::new(&doc.currency)?;

    let entity_currency = |code: &Option<String>| -> Result<Currency> {
        match code {
            Some(code) => Currency::new(code),
            None => Ok(default_currency),
        }
    };
    let located = |entity: String, err: Error| -> Error {
        match err {
            Error::Validation { .. } => err,
            other => Error::validation(entity, other.to_string()),
        }
    };

    let mut assets = Vec::with_capacity(doc.assets.len());
    for row in &doc.assets {
        let entity = format!("asset {:?}", row.id);
        let currency = entity_currency(&row.currency).map_err(|e| located(entity.clone(), e))?;
        let av = Money::new(row.av, currency).map_err(|e| located(entity.clone(), e))?;
        let equipment_cost = row
            .equipment_cost
            .map(|c| Money::new(c, currency))
            .transpose()
            .map_err(|e| located(entity.clone(), e))?;
        assets.push(
            Asset::new(&row.id, &row.name, av, equipment_cost)
                .map_err(|e| located(entity.clone(), e))?,
        );
    }

    let mut threats = Vec::with_capacity(doc.threats.len());
    for row in &doc.threats {
        let entity = format!("threat {:?}", row.id);
        threats.push(
            Threat::new(&row.id, &row.asset_id, row.pvl, row.aro)
                .map_err(|e| located(entity.clone(), e))?,
        );
    }

    let mut controls = Vec::with_capacity(doc.controls.len());
    for row in &doc.controls {
        let entity = format!("control {:?}", row.id);
        let currency = entity_currency(&row.currency).map_err(|e| located(entity.clone(), e))?;
        let cost = Money::new(row.cost, currency).map_err(|e| located(entity.clone(), e))?;
        controls.push(
            Control::new(
                &row.id,
                &row.asset_id,
                row.weight,
                cost,
                row.post_pvl,
                row.post_aro,
            )
            .map_err(|e| located(entity.clone(), e))?,
        );
    }

    Register::new(default_currency, assets, threats, controls)
}

/// Serialize a register back to its TOML document form.
pub fn register_to_string(register: &Register) -> Result<String> {
    let default_currency = register.currency();
    let override_for = |money: Money| -> Option<String> {
        if money.currency() == default_currency {
            None
        } else {
            Some(money.currency().to_string())
        }
    };

    let mut assets = Vec::with_capacity(register.assets().len());
    for asset in register.assets() {
        if let Some(cost) = asset.equipment_cost() {
            // one currency column per row
            if cost.currency() != asset.av().currency() {
                return Err(Error::validation(
                    format!("asset {:?}", asset.id()),
                    "av and equipment_cost carry different currencies; not representable",
                ));
            }
        }
        assets.push(AssetRow {
            id: asset.id().to_string(),
            name: asset.name().to_string(),
            av: asset.av().amount(),
            equipment_cost: asset.equipment_cost().map(|c| c.amount()),
            currency: override_for(asset.av()),
        });
    }
    let threats = register
        .threats()
        .iter()
        .map(|t| ThreatRow {
            id: t.id().to_string(),
            asset_id: t.asset_id().to_string(),
            pvl: t.pvl(),
            aro: t.aro(),
        })
        .collect();
    let controls = register
        .controls()
        .iter()
        .map(|c| ControlRow {
            id: c.id().to_string(),
            asset_id: c.asset_id().to_string(),
            weight: c.weight(),
            cost: c.cost().amount(),
            post_pvl: c.post_pvl(),
            post_aro: c.post_aro(),
            currency: override_for(c.cost()),
        })
        .collect();

    let doc = RegisterDoc {
        schema_version: SCHEMA_VERSION,
        currency: default_currency.to_string(),
        assets,
        threats,
        controls,
    };
    toml::to_string_pretty(&doc).map_err(|e| Error::parse("register serialization", e.to_string()))
}

/// Save a register; the write goes through a temp file and a rename.
pub fn save_register(register: &Register, path: &Path) -> Result<()> {
    let text = register_to_string(register)?;
    write_atomic(path, text.as_bytes())
}

// ---------------------------------------------------------------------
// config load
// ---------------------------------------------------------------------

/// Load a tool configuration; absent fields keep their defaults.
pub fn load_config(path: &Path) -> Result<ToolConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}

pub fn parse_config(text: &str, origin: &str) -> Result<ToolConfig> {
    let doc: ConfigDoc = toml::from_str(text).map_err(|e| Error::parse(origin, e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::UnsupportedVersion {
            found: doc.schema_version,
            supported: SCHEMA_VERSION,
        });
    }
    let mut config = ToolConfig::default();
    let located = |field: &str, err: Error| -> Error {
        Error::validation(format!("config {field}"), err.to_string())
    };

    if let Some(value) = doc.acceptable_risk {
        if !(value > 0.0 && value <= 1.0) {
            return Err(located("acceptable_risk", Error::InvalidThreshold(value)));
        }
        config.acceptable_risk =
            RiskScalar::new(value).map_err(|e| located("acceptable_risk", e))?;
    }
    if let Some(values) = doc.ladder_thresholds {
        let fixed: [f64; 6] = values.try_into().map_err(|v: Vec<f64>| {
            Error::validation(
                "config ladder_thresholds",
                format!("expected 6 thresholds, got {}", v.len()),
            )
        })?;
        config.ladder =
            RiskLevelLadder::new(fixed).map_err(|e| located("ladder_thresholds", e))?;
    }
    if let Some(values) = doc.frequency_cuts {
        config.frequency_cuts = four_cuts(values, "frequency_cuts")?;
    }
    if let Some(values) = doc.loss_cuts {
        config.loss_cuts = four_cuts(values, "loss_cuts")?;
    }
    if let Some(value) = doc.pareto_exponent {
        if !value.is_finite() || value <= 0.0 || value >= 1.0 {
            return Err(Error::validation(
                "config pareto_exponent",
                format!("expected a value in (0, 1), got {value}"),
            ));
        }
        config.pareto_exponent = value;
    }
    if let Some(rows) = doc.matrix_override {
        config.matrix = parse_matrix_override(&rows)?;
    }
    Ok(config)
}

fn four_cuts(values: Vec<f64>, field: &str) -> Result<[f64; 4]> {
    let fixed: [f64; 4] = values.try_into().map_err(|v: Vec<f64>| {
        Error::validation(
            format!("config {field}"),
            format!("expected 4 cut points, got {}", v.len()),
        )
    })?;
    let ascending = fixed.windows(2).all(|w| w[0] < w[1]);
    if !ascending || fixed.iter().any(|c| !c.is_finite()) {
        return Err(Error::validation(
            format!("config {field}"),
            Error::InvalidCutPoints.to_string(),
        ));
    }
    Ok(fixed)
}

/// Rows arrive frequency 4 first, mirroring how the grid is printed.
fn parse_matrix_override(rows: &[Vec<String>]) -> Result<ImpactMatrix> {
    if rows.len() != 5 || rows.iter().any(|r| r.len() != 5) {
        return Err(Error::validation(
            "config matrix_override",
            "expected a 5x5 grid of \"T\"/\"NT\" cells",
        ));
    }
    let mut cells = [[Tolerability::Tolerable; 5]; 5];
    for (row_ix, row) in rows.iter().enumerate() {
        let freq = 4 - row_ix; // first file row is frequency class 4
        for (loss, cell) in row.iter().enumerate() {
            cells[freq][loss] = cell.parse().map_err(|e: Error| {
                Error::validation(
                    format!("config matrix_override row {row_ix}"),
                    e.to_string(),
                )
            })?;
        }
    }
    ImpactMatrix::new(cells)
}

// ---------------------------------------------------------------------
// loss tables
// ---------------------------------------------------------------------

/// Load a two-column loss table. Cells reading `not mentioned` (any
/// case) or left empty drop the category from the map; everything else
/// must be a non-negative number.
pub fn load_loss_table(path: &Path) -> Result<IndexMap<String, Money>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_loss_table(&text, &path.display().to_string())
}

pub fn parse_loss_table(text: &str, origin: &str) -> Result<IndexMap<String, Money>> {
    if text.trim().is_empty() {
        return Err(Error::parse(origin, "empty input"));
    }
    // a leading comment block may carry a `# currency: XXX` directive
    let mut currency = Currency::new("USD").expect("static code");
    for line in text.lines() {
        let line = line.trim();
        if !line.starts_with('#') {
            break;
        }
        if let Some(code) = line.trim_start_matches('#').trim().strip_prefix("currency:") {
            currency = Currency::new(code.trim())?;
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| Error::parse(origin, e.to_string()))?;
    if headers.len() != 2 || &headers[0] != "category" || &headers[1] != "value" {
        return Err(Error::parse(
            origin,
            format!("expected header \"category,value\", got {headers:?}"),
        ));
    }

    let mut table = IndexMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse(origin, e.to_string()))?;
        let line = record
            .position()
            .map(|p| p.line())
            .unwrap_or_default();
        let category = normalize_category(&record[0]);
        if category.is_empty() {
            return Err(Error::parse(origin, format!("line {line}: empty category")));
        }
        let cell = record[1].trim();
        if cell.is_empty() || cell.eq_ignore_ascii_case("not mentioned") {
            continue;
        }
        let value: f64 = cell.parse().map_err(|_| {
            Error::parse(origin, format!("line {line}: unreadable value {cell:?}"))
        })?;
        if value < 0.0 {
            return Err(Error::NegativeValue {
                value,
                location: format!("{origin}:{line}"),
            });
        }
        let money = Money::new(value, currency)
            .map_err(|e| Error::parse(origin, format!("line {line}: {e}")))?;
        if table.insert(category.clone(), money).is_some() {
            return Err(Error::parse(
                origin,
                format!("line {line}: duplicate category {category:?}"),
            ));
        }
    }
    Ok(table)
}

/// Trim and collapse internal whitespace so category names compare
/// reliably across years.
fn normalize_category(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------
// atomic writes
// ---------------------------------------------------------------------

/// Write through a temp file in the destination directory, then rename
/// into place, so concurrent writers can race but never corrupt.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
