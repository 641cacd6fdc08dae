//! CSV and JSON emission.
//!
//! CSV output is the flat-table interface: one row per ring plus a summary
//! row per routing model, fixed column order, floats rendered with six
//! significant digits. JSON mirrors the in-memory bundle at full precision
//! and round-trips losslessly.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{RunBundle, SweepTable};

pub const BUNDLE_CSV_HEADER: &str =
    "scenario_id,model,ring,delta,power_level,rate_level,n_p,n_dp_tx,e_tx_mJ,e_rx_mJ,e_mJ,e_bt_mJ,e_N_mJ";

pub const SWEEP_CSV_HEADER: &str =
    "variable,value,transceiver,rho_sh,rho_nrh,e_bt_sh_mJ,e_bt_nrh_mJ,e_bt_oh_mJ,error";

/// Render with six significant digits, plain notation for moderate
/// magnitudes and scientific otherwise.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs();
    if !(1e-4..1e6).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude.log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn opt_sig6(x: Option<f64>) -> String {
    x.map(format_sig6).unwrap_or_default()
}

/// Flat per-ring table of a run bundle.
pub fn bundle_csv(bundle: &RunBundle) -> String {
    let mut out = String::from(BUNDLE_CSV_HEADER);
    out.push('\n');
    let id = csv_field(&bundle.scenario_id);
    for result in &bundle.results {
        let model = result.model.name();
        for r in 1..=result.hops.len() {
            let ring = &result.report.rings[r - 1];
            let cfg = result.configs.ring(r);
            out.push_str(&format!(
                "{id},{model},{r},{delta},{p},{s},{n_p},{n_dp},{e_tx},{e_rx},{e},,\n",
                delta = result.hops.hop(r),
                p = cfg.power_level,
                s = cfg.rate_level,
                n_p = result.payloads[r - 1],
                n_dp = result.packets[r - 1],
                e_tx = format_sig6(ring.e_tx_j * 1e3),
                e_rx = format_sig6(ring.e_rx_j * 1e3),
                e = format_sig6(ring.e_j() * 1e3),
            ));
        }
        let hops = result
            .hops
            .as_slice()
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join("-");
        out.push_str(&format!(
            "{id},{model},summary,{hops},,,,,,,,{e_bt},{e_n}\n",
            e_bt = format_sig6(result.report.e_bt_j * 1e3),
            e_n = format_sig6(result.report.e_n_j * 1e3),
        ));
    }
    out
}

/// Tidy grid table of a sweep.
pub fn sweep_csv(table: &SweepTable) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format!(
            "{var},{value},{tx},{rho_sh},{rho_nrh},{sh},{nrh},{oh},{err}\n",
            var = table.variable.name(),
            value = row.value,
            tx = csv_field(&row.transceiver),
            rho_sh = opt_sig6(row.rho_sh),
            rho_nrh = opt_sig6(row.rho_nrh),
            sh = opt_sig6(row.e_bt_single_hop_j.map(|e| e * 1e3)),
            nrh = opt_sig6(row.e_bt_next_ring_hop_j.map(|e| e * 1e3)),
            oh = opt_sig6(row.e_bt_optimal_hop_j.map(|e| e * 1e3)),
            err = csv_field(row.error.as_deref().unwrap_or("")),
        ));
    }
    out
}

/// Pretty JSON at full float precision.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Write to the given path, or to stdout when no path is given.
pub fn write_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::io("stdout", e))
        }
    }
}
