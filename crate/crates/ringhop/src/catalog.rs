//! Built-in transceiver catalogs and catalog file loading.
//!
//! Four sub-GHz transceivers ship compiled in: CC1100, CC1200, Si4644 and
//! SX1272. Values are embedded verbatim from the published datasheets'
//! power/current and rate/sensitivity tables. Additional catalogs can be
//! loaded from JSON files with the same schema (`name`, `power_levels[]`,
//! `rate_levels[]`, `rx_current_ma`).

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::radio::{PowerLevel, RateLevel, TransceiverModel};

fn model(
    name: &str,
    powers: &[(f64, f64)],
    rates: &[(f64, f64)],
    rx_current_ma: f64,
) -> TransceiverModel {
    TransceiverModel {
        name: name.to_string(),
        power_levels: powers
            .iter()
            .map(|&(p_tx_dbm, i_tx_ma)| PowerLevel { p_tx_dbm, i_tx_ma })
            .collect(),
        rate_levels: rates
            .iter()
            .map(|&(rate_kbps, sensitivity_dbm)| RateLevel {
                rate_bps: rate_kbps * 1000.0,
                sensitivity_dbm,
            })
            .collect(),
        rx_current_ma,
    }
}

/// The four compiled-in transceiver models.
pub fn builtin() -> Vec<TransceiverModel> {
    vec![
        model(
            "CC1100",
            &[
                (10.0, 31.1),
                (7.0, 25.8),
                (5.0, 20.0),
                (0.0, 16.9),
                (-5.0, 14.1),
                (-10.0, 14.5),
                (-15.0, 13.0),
                (-20.0, 12.4),
                (-30.0, 11.9),
            ],
            &[
                (500.0, -88.0),
                (250.0, -93.0),
                (38.4, -103.0),
                (1.2, -110.0),
            ],
            14.4,
        ),
        model(
            "CC1200",
            &[
                (14.0, 45.0),
                (12.0, 42.0),
                (10.0, 34.0),
                (9.0, 33.5),
                (7.5, 31.0),
                (5.0, 29.0),
                (4.0, 27.0),
                (2.0, 26.0),
                (0.0, 25.0),
                (-1.5, 24.0),
                (-3.0, 23.0),
                (-5.0, 22.5),
                (-6.5, 22.0),
                (-8.0, 21.7),
                (-10.0, 21.5),
                (-11.5, 21.0),
            ],
            &[
                (1000.0, -97.0),
                (500.0, -97.0),
                (100.0, -107.0),
                (50.0, -109.0),
                (38.4, -110.0),
                (4.8, -113.0),
                (1.2, -122.0),
            ],
            19.0,
        ),
        model(
            "Si4644",
            &[
                (20.0, 85.0),
                (16.0, 43.0),
                (14.0, 37.0),
                (13.0, 29.0),
                (10.0, 18.0),
            ],
            &[
                (1000.0, -88.0),
                (500.0, -97.0),
                (125.0, -105.0),
                (100.0, -106.0),
                (40.0, -110.0),
                (0.5, -126.0),
            ],
            10.7,
        ),
        model(
            "SX1272",
            &[(20.0, 125.0), (17.0, 90.0), (13.0, 28.0), (7.0, 18.0)],
            &[
                (250.0, -97.0),
                (38.4, -110.0),
                (3.750, -116.0),
                (18.75, -119.0),
                (9.380, -122.0),
                (1.172, -131.0),
                (0.586, -134.0),
                (0.293, -137.0),
            ],
            10.5,
        ),
    ]
}

/// Look up a compiled-in transceiver by name (case-insensitive).
/// "Si4464" is accepted as an alias for the Si4644 entry.
pub fn lookup(name: &str) -> Option<TransceiverModel> {
    let wanted = name.to_ascii_lowercase();
    let wanted = if wanted == "si4464" {
        "si4644"
    } else {
        &wanted
    };
    builtin()
        .into_iter()
        .find(|m| m.name.to_ascii_lowercase() == wanted)
}

/// Load and validate a transceiver catalog from a JSON file.
pub fn load_catalog_file(path: &Path) -> Result<TransceiverModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let tx: TransceiverModel = serde_json::from_str(&text)?;
    tx.validate()?;
    Ok(tx)
}
