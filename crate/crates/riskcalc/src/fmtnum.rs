//! Presentation-layer number formatting. Internal values stay at full
//! precision; these helpers round half away from zero and render with a
//! locale-independent decimal point.

/// Round to `decimals` places, ties away from zero.
pub(crate) fn round_to(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let rounded = (value * scale).round() / scale;
    // normalize -0.0 so displays never show "-0.00"
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Money: 2 decimal places.
pub(crate) fn dec2(value: f64) -> String {
    format!("{:.2}", round_to(value, 2))
}

/// Ratios and indicator values: 4 decimal places.
pub(crate) fn dec4(value: f64) -> String {
    format!("{:.4}", round_to(value, 4))
}

/// Plot data coordinates: 6 decimal places.
pub(crate) fn dec6(value: f64) -> String {
    format!("{:.6}", round_to(value, 6))
}
