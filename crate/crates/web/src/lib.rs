//! Browser bindings for a few `tautcalc` commands.

use tautcalc::arith::{HarmonicMode, DEFAULT_MAX_DEGREE};
use tautcalc::commands;
use tautcalc::report::{Format, Report};
use wasm_bindgen::prelude::*;

fn render(report: tautcalc::Result<Report>, format: &str) -> Result<String, String> {
    let format: Format = format.parse().map_err(|e: tautcalc::Error| e.to_string())?;
    report.map(|r| r.render(format)).map_err(|e| e.to_string())
}

/// Top power of ĉ1 with its r_d and φ.
pub fn c1_power_report(d: u32, invert2: bool, format: &str) -> Result<String, String> {
    render(commands::c1_power(d, invert2, DEFAULT_MAX_DEGREE), format)
}

pub fn ring_info_report(d: u32, format: &str) -> Result<String, String> {
    render(
        commands::ring_info(d, DEFAULT_MAX_DEGREE, HarmonicMode::Formal),
        format,
    )
}

pub fn pontrjagin_report(d: u32, k: u32, invert2: bool, format: &str) -> Result<String, String> {
    render(
        commands::pontrjagin(d, k, invert2, DEFAULT_MAX_DEGREE),
        format,
    )
}

#[wasm_bindgen]
pub fn c1_power(d: u32, invert2: bool, format: &str) -> Result<String, JsError> {
    c1_power_report(d, invert2, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ring_info(d: u32, format: &str) -> Result<String, JsError> {
    ring_info_report(d, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pontrjagin(d: u32, k: u32, invert2: bool, format: &str) -> Result<String, JsError> {
    pontrjagin_report(d, k, invert2, format).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_power_d2() {
        let text = c1_power_report(2, false, "text").unwrap();
        assert!(text.contains("r2 = -1 + 8/3*log2 + 24*zeta'(-1)"), "{text}");
    }

    #[test]
    fn ring_info_json() {
        let json = ring_info_report(3, "json").unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["command"], "ring-info --d 3");
    }

    #[test]
    fn errors_are_strings() {
        assert!(pontrjagin_report(2, 3, false, "text")
            .unwrap_err()
            .contains("k = 3"));
        assert!(c1_power_report(2, false, "yaml").is_err());
    }
}
