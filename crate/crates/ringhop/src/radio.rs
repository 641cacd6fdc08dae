//! Link-budget physics: transceiver models, path loss, feasibility and range.
//!
//! All budget arithmetic stays in the dB domain. A link is feasible when the
//! transmit power plus antenna gains minus path loss meets the receiver
//! sensitivity of the selected rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance applied to link-margin comparisons so that a link sized exactly
/// to the coverage range does not flip infeasible through rounding.
const LINK_MARGIN_EPS_DB: f64 = 1e-9;

/// One programmable transmit power step. Level 1 is the maximum output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLevel {
    pub p_tx_dbm: f64,
    pub i_tx_ma: f64,
}

/// One programmable data-rate step with its receiver sensitivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateLevel {
    pub rate_bps: f64,
    pub sensitivity_dbm: f64,
}

/// Discrete power and rate levels of a radio transceiver.
///
/// Levels are 1-based to match datasheet convention: power level 1 is the
/// maximum output and the sensitivity column is non-increasing down the rate
/// table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransceiverModel {
    pub name: String,
    pub power_levels: Vec<PowerLevel>,
    pub rate_levels: Vec<RateLevel>,
    pub rx_current_ma: f64,
}

impl TransceiverModel {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::validation("transceiver.name", "must not be empty"));
        }
        if self.power_levels.is_empty() {
            return Err(Error::validation(
                "transceiver.power_levels",
                "must not be empty",
            ));
        }
        if self.rate_levels.is_empty() {
            return Err(Error::validation(
                "transceiver.rate_levels",
                "must not be empty",
            ));
        }
        for (i, p) in self.power_levels.iter().enumerate() {
            if !p.i_tx_ma.is_finite() || p.i_tx_ma <= 0.0 || !p.p_tx_dbm.is_finite() {
                return Err(Error::validation(
                    format!("transceiver.power_levels[{i}]"),
                    "output must be finite and current positive",
                ));
            }
        }
        for w in self.power_levels.windows(2) {
            if w[1].p_tx_dbm > w[0].p_tx_dbm {
                return Err(Error::validation(
                    "transceiver.power_levels",
                    "output must be non-increasing with level index",
                ));
            }
        }
        for (i, s) in self.rate_levels.iter().enumerate() {
            if !s.rate_bps.is_finite() || s.rate_bps <= 0.0 || !s.sensitivity_dbm.is_finite() {
                return Err(Error::validation(
                    format!("transceiver.rate_levels[{i}]"),
                    "rate must be positive and sensitivity finite",
                ));
            }
        }
        for w in self.rate_levels.windows(2) {
            if w[1].sensitivity_dbm > w[0].sensitivity_dbm {
                return Err(Error::validation(
                    "transceiver.rate_levels",
                    "sensitivity must be non-increasing with level index",
                ));
            }
        }
        if !self.rx_current_ma.is_finite() || self.rx_current_ma <= 0.0 {
            return Err(Error::validation(
                "transceiver.rx_current_ma",
                "must be positive",
            ));
        }
        Ok(())
    }

    /// Power level `p` (1-based).
    pub fn power(&self, p: usize) -> Result<&PowerLevel> {
        if p == 0 || p > self.power_levels.len() {
            return Err(Error::validation(
                "power_level",
                format!(
                    "level {p} out of range 1..={} for {}",
                    self.power_levels.len(),
                    self.name
                ),
            ));
        }
        Ok(&self.power_levels[p - 1])
    }

    /// Rate level `s` (1-based).
    pub fn rate(&self, s: usize) -> Result<&RateLevel> {
        if s == 0 || s > self.rate_levels.len() {
            return Err(Error::validation(
                "rate_level",
                format!(
                    "level {s} out of range 1..={} for {}",
                    self.rate_levels.len(),
                    self.name
                ),
            ));
        }
        Ok(&self.rate_levels[s - 1])
    }

    /// 1-based index of the slowest rate level (ties broken towards the
    /// better sensitivity). Not necessarily the last level: catalogs are
    /// embedded as published and may order rates unevenly.
    pub fn slowest_rate_level(&self) -> usize {
        let mut best = 0;
        for (i, s) in self.rate_levels.iter().enumerate() {
            let cur = &self.rate_levels[best];
            if s.rate_bps < cur.rate_bps
                || (s.rate_bps == cur.rate_bps && s.sensitivity_dbm < cur.sensitivity_dbm)
            {
                best = i;
            }
        }
        best + 1
    }
}

/// Coefficients of the log-distance path-loss shape
/// `PL(d) = offset + a * log10(d) + b * log10(f / f_ref)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PathLossParams {
    pub offset_db: f64,
    pub log_distance_coeff_db: f64,
    pub log_frequency_coeff_db: f64,
    pub reference_frequency_hz: f64,
}

impl Default for PathLossParams {
    /// Outdoor pico/hot-zone deployment model for the sub-GHz band.
    fn default() -> Self {
        PathLossParams {
            offset_db: 23.3,
            log_distance_coeff_db: 37.6,
            log_frequency_coeff_db: 21.0,
            reference_frequency_hz: 900e6,
        }
    }
}

/// Carrier, antenna gains, supply voltage and path-loss coefficients shared
/// by every link in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RadioEnvironment {
    pub frequency_hz: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub voltage_v: f64,
    pub path_loss: PathLossParams,
}

impl Default for RadioEnvironment {
    fn default() -> Self {
        RadioEnvironment {
            frequency_hz: 868e6,
            tx_gain_dbi: 0.0,
            rx_gain_dbi: 3.0,
            voltage_v: 3.0,
            path_loss: PathLossParams::default(),
        }
    }
}

impl RadioEnvironment {
    pub fn validate(&self) -> Result<()> {
        if !self.frequency_hz.is_finite() || self.frequency_hz <= 0.0 {
            return Err(Error::validation(
                "environment.frequency_hz",
                "must be positive",
            ));
        }
        if !self.voltage_v.is_finite() || self.voltage_v <= 0.0 {
            return Err(Error::validation(
                "environment.voltage_v",
                "must be positive",
            ));
        }
        Ok(())
    }

    /// Path loss in dB at distance `d_m` meters.
    pub fn path_loss_db(&self, d_m: f64) -> Result<f64> {
        if !d_m.is_finite() || d_m <= 0.0 {
            return Err(Error::validation("distance", "must be positive"));
        }
        let pl = &self.path_loss;
        Ok(pl.offset_db
            + pl.log_distance_coeff_db * d_m.log10()
            + pl.log_frequency_coeff_db * (self.frequency_hz / pl.reference_frequency_hz).log10())
    }
}

/// Path loss in dB at `d_m` meters and carrier `f_hz`, default coefficients:
/// `23.3 + 37.6 * log10(d) + 21 * log10(f / 900 MHz)`.
pub fn path_loss(d_m: f64, f_hz: f64) -> Result<f64> {
    let env = RadioEnvironment {
        frequency_hz: f_hz,
        ..RadioEnvironment::default()
    };
    env.path_loss_db(d_m)
}

/// Link margin in dB for power level `p` and rate level `s` at distance `d_m`:
/// `P_tx + G_tx + G_rx - PL(d) - S`.
pub fn link_margin_db(
    tx: &TransceiverModel,
    env: &RadioEnvironment,
    p: usize,
    s: usize,
    d_m: f64,
) -> Result<f64> {
    let power = tx.power(p)?;
    let rate = tx.rate(s)?;
    let pl = env.path_loss_db(d_m)?;
    Ok(power.p_tx_dbm + env.tx_gain_dbi + env.rx_gain_dbi - pl - rate.sensitivity_dbm)
}

/// Whether the receiver at distance `d_m` can decode rate level `s` when the
/// sender transmits at power level `p`.
pub fn is_feasible(
    tx: &TransceiverModel,
    env: &RadioEnvironment,
    p: usize,
    s: usize,
    d_m: f64,
) -> Result<bool> {
    Ok(link_margin_db(tx, env, p, s, d_m)? >= -LINK_MARGIN_EPS_DB)
}

/// Lowest-output power level (highest index) that still closes the link at
/// rate level `s` over `d_m` meters, or `None` when even level 1 cannot.
pub fn min_power_for(
    tx: &TransceiverModel,
    env: &RadioEnvironment,
    s: usize,
    d_m: f64,
) -> Result<Option<usize>> {
    for p in (1..=tx.power_levels.len()).rev() {
        if is_feasible(tx, env, p, s, d_m)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Coverage range: the distance at which maximum power and the slowest rate
/// meet the link budget exactly. Solves the path-loss shape for distance.
pub fn max_range(tx: &TransceiverModel, env: &RadioEnvironment) -> f64 {
    let slowest = tx.slowest_rate_level();
    let budget = tx.power_levels[0].p_tx_dbm + env.tx_gain_dbi + env.rx_gain_dbi
        - tx.rate_levels[slowest - 1].sensitivity_dbm;
    let pl = &env.path_loss;
    let freq_term =
        pl.log_frequency_coeff_db * (env.frequency_hz / pl.reference_frequency_hz).log10();
    10f64.powf((budget - pl.offset_db - freq_term) / pl.log_distance_coeff_db)
}
