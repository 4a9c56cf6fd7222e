//! Built-in benchmark scenario presets. Each preset is a JSON data file in
//! `presets/` with generator parameters solved offline to hit the target
//! descriptors (within/cross ratio, per-size edge counts, degree bounds);
//! the files are embedded into the binary.

use crate::bench::ScenarioConfig;
use crate::error::{Error, Result};

static PRESETS: &[(&str, &str)] = &[
    ("ScenA-DCHSBM-A1", include_str!("../presets/ScenA-DCHSBM-A1.json")),
    ("ScenA-DCHSBM-A2", include_str!("../presets/ScenA-DCHSBM-A2.json")),
    ("ScenA-DCHSBM-A3", include_str!("../presets/ScenA-DCHSBM-A3.json")),
    ("ScenA-DCHSBM-A4", include_str!("../presets/ScenA-DCHSBM-A4.json")),
    ("ScenA-DCHSBM-A5", include_str!("../presets/ScenA-DCHSBM-A5.json")),
    ("ScenA-DCHSBM-A6", include_str!("../presets/ScenA-DCHSBM-A6.json")),
    ("ScenA-HSBM-A1", include_str!("../presets/ScenA-HSBM-A1.json")),
    ("ScenA-HSBM-A2", include_str!("../presets/ScenA-HSBM-A2.json")),
    ("ScenA-HSBM-A3", include_str!("../presets/ScenA-HSBM-A3.json")),
    ("ScenA-HSBM-A4", include_str!("../presets/ScenA-HSBM-A4.json")),
    ("ScenA-HSBM-A5", include_str!("../presets/ScenA-HSBM-A5.json")),
    ("ScenA-hABCD-A1", include_str!("../presets/ScenA-hABCD-A1.json")),
    ("ScenA-hABCD-A2", include_str!("../presets/ScenA-hABCD-A2.json")),
    ("ScenA-hABCD-A3", include_str!("../presets/ScenA-hABCD-A3.json")),
    ("ScenA-hABCD-A4", include_str!("../presets/ScenA-hABCD-A4.json")),
    ("ScenA-hABCD-A5", include_str!("../presets/ScenA-hABCD-A5.json")),
    ("ScenA-hABCD-A6", include_str!("../presets/ScenA-hABCD-A6.json")),
    ("ScenB-DCHSBM-B1", include_str!("../presets/ScenB-DCHSBM-B1.json")),
    ("ScenB-DCHSBM-B2", include_str!("../presets/ScenB-DCHSBM-B2.json")),
    ("ScenB-DCHSBM-B3", include_str!("../presets/ScenB-DCHSBM-B3.json")),
    ("ScenB-DCHSBM-B4", include_str!("../presets/ScenB-DCHSBM-B4.json")),
    ("ScenB-DCHSBM-B5", include_str!("../presets/ScenB-DCHSBM-B5.json")),
    ("ScenB-DCHSBM-B6", include_str!("../presets/ScenB-DCHSBM-B6.json")),
    ("ScenC-HSBM-C1", include_str!("../presets/ScenC-HSBM-C1.json")),
    ("ScenC-HSBM-C2", include_str!("../presets/ScenC-HSBM-C2.json")),
    ("ScenC-HSBM-C3", include_str!("../presets/ScenC-HSBM-C3.json")),
    ("ScenC-HSBM-C4", include_str!("../presets/ScenC-HSBM-C4.json")),
    ("ScenC-HSBM-C5", include_str!("../presets/ScenC-HSBM-C5.json")),
    ("ScenD-DCHSBM-D1", include_str!("../presets/ScenD-DCHSBM-D1.json")),
    ("ScenD-DCHSBM-D2", include_str!("../presets/ScenD-DCHSBM-D2.json")),
    ("ScenD-DCHSBM-D3", include_str!("../presets/ScenD-DCHSBM-D3.json")),
    ("ScenD-DCHSBM-D4", include_str!("../presets/ScenD-DCHSBM-D4.json")),
    ("ScenD-DCHSBM-D5", include_str!("../presets/ScenD-DCHSBM-D5.json")),
    ("ScenD-DCHSBM-D6", include_str!("../presets/ScenD-DCHSBM-D6.json")),
    ("ScenE-DCHSBM-E1", include_str!("../presets/ScenE-DCHSBM-E1.json")),
    ("ScenE-DCHSBM-E2", include_str!("../presets/ScenE-DCHSBM-E2.json")),
    ("ScenE-DCHSBM-E3", include_str!("../presets/ScenE-DCHSBM-E3.json")),
    ("ScenE-DCHSBM-E4", include_str!("../presets/ScenE-DCHSBM-E4.json")),
    ("ScenE-DCHSBM-E5", include_str!("../presets/ScenE-DCHSBM-E5.json")),
    ("ScenE-DCHSBM-E6", include_str!("../presets/ScenE-DCHSBM-E6.json")),
    ("ScenF-DCHSBM-F1", include_str!("../presets/ScenF-DCHSBM-F1.json")),
    ("ScenF-DCHSBM-F2", include_str!("../presets/ScenF-DCHSBM-F2.json")),
    ("ScenF-DCHSBM-F3", include_str!("../presets/ScenF-DCHSBM-F3.json")),
    ("ScenF-DCHSBM-F4", include_str!("../presets/ScenF-DCHSBM-F4.json")),
    ("ScenF-DCHSBM-F5", include_str!("../presets/ScenF-DCHSBM-F5.json")),
    ("ScenF-DCHSBM-F6", include_str!("../presets/ScenF-DCHSBM-F6.json")),
    ("ScenZ-hABCD-Z1", include_str!("../presets/ScenZ-hABCD-Z1.json")),
    ("ScenZ-hABCD-Z2", include_str!("../presets/ScenZ-hABCD-Z2.json")),
    ("ScenZ-hABCD-Z3", include_str!("../presets/ScenZ-hABCD-Z3.json")),
    ("ScenZ-hABCD-Z4", include_str!("../presets/ScenZ-hABCD-Z4.json")),
    ("ScenZ-hABCD-Z5", include_str!("../presets/ScenZ-hABCD-Z5.json")),
];

/// Names of all built-in presets, sorted.
pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|&(name, _)| name).collect()
}

/// Loads a built-in preset by name.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let (_, text) = PRESETS
        .iter()
        .find(|&&(n, _)| n == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown preset {name:?}")))?;
    ScenarioConfig::from_json(text)
}
