//! Scenario files, experiment orchestration and parameter sweeps.
//!
//! A scenario JSON file names the network structure, transceiver, radio
//! environment and packet layout; unspecified fields fall back to the
//! defaults of the bundled base configuration (868 MHz, 0/3 dBi antenna
//! gains, 3 V, 65-byte packets of 15-byte payloads, aggregation on, the
//! maximum distance sized to the transceiver's coverage range).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::radio::{max_range, RadioEnvironment, TransceiverModel};
use crate::routing::{
    solve, ImprovementRatios, RoutingModel, RoutingResult, SearchInput, SearchOpts,
};
use crate::topology::{RingNetwork, Spreading};
use crate::traffic::PacketConfig;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A transceiver referenced by catalog name or defined inline.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum TransceiverSpec {
    Name(String),
    Inline(TransceiverModel),
}

impl TransceiverSpec {
    fn resolve(&self) -> Result<TransceiverModel> {
        let tx = match self {
            TransceiverSpec::Name(name) => catalog::lookup(name).ok_or_else(|| {
                Error::validation(
                    "transceiver",
                    format!(
                        "unknown transceiver `{name}`; compiled-in models: {}",
                        catalog::builtin()
                            .iter()
                            .map(|m| m.name.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )
            })?,
            TransceiverSpec::Inline(tx) => tx.clone(),
        };
        tx.validate()?;
        Ok(tx)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct PacketFile {
    payload_bytes: u32,
    header_bytes: u32,
    packet_bytes: u32,
}

impl Default for PacketFile {
    fn default() -> Self {
        PacketFile {
            payload_bytes: 15,
            header_bytes: 2,
            packet_bytes: 65,
        }
    }
}

fn default_branches() -> u64 {
    1
}

fn default_aggregation() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    id: Option<String>,
    rings: usize,
    children_ratio: u64,
    #[serde(default = "default_branches")]
    branches: u64,
    #[serde(default)]
    spreading: Spreading,
    #[serde(default)]
    max_distance_m: Option<f64>,
    transceiver: TransceiverSpec,
    #[serde(default)]
    environment: RadioEnvironment,
    #[serde(default)]
    packet: PacketFile,
    #[serde(default = "default_aggregation")]
    aggregation: bool,
    #[serde(default)]
    models: Option<Vec<RoutingModel>>,
}

impl ScenarioFile {
    fn resolve(self, fallback_id: &str) -> Result<Scenario> {
        let tx = self.transceiver.resolve()?;
        self.environment.validate()?;
        if let Some(d) = self.max_distance_m {
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::validation("max_distance_m", "must be positive"));
            }
        }
        let d = self
            .max_distance_m
            .unwrap_or_else(|| max_range(&tx, &self.environment));
        let net = RingNetwork::new(
            d,
            self.rings,
            self.children_ratio,
            self.branches,
            self.spreading,
        )?;
        let packet = PacketConfig::new(
            self.packet.payload_bytes,
            self.packet.header_bytes,
            self.packet.packet_bytes,
            self.aggregation,
        )?;
        let models = match self.models {
            None => RoutingModel::ALL.to_vec(),
            Some(models) if models.is_empty() => {
                return Err(Error::validation("models", "must not be empty"));
            }
            Some(models) => models,
        };
        Ok(Scenario {
            id: self.id.unwrap_or_else(|| fallback_id.to_string()),
            net,
            tx,
            env: self.environment,
            packet,
            aggregation: self.aggregation,
            models,
        })
    }
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: String,
    pub net: RingNetwork,
    pub tx: TransceiverModel,
    pub env: RadioEnvironment,
    pub packet: PacketConfig,
    pub aggregation: bool,
    pub models: Vec<RoutingModel>,
}

impl Scenario {
    pub fn from_json(text: &str, fallback_id: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        file.resolve(fallback_id)
    }

    /// Rebuild the packet budget with aggregation forced on or off.
    pub fn set_aggregation(&mut self, aggregation: bool) -> Result<()> {
        self.packet = PacketConfig::new(
            self.packet.payload_bytes,
            self.packet.header_bytes,
            self.packet.packet_bytes,
            aggregation,
        )?;
        self.aggregation = aggregation;
        Ok(())
    }

    pub fn input(&self) -> SearchInput<'_> {
        SearchInput {
            net: &self.net,
            tx: &self.tx,
            env: &self.env,
            packet: &self.packet,
        }
    }
}

/// Load and validate a scenario file. The file stem is the fallback id.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".to_string());
    Scenario::from_json(&text, &fallback)
}

/// Results of every requested routing model, plus improvement ratios when
/// all three were requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunBundle {
    pub scenario_id: String,
    pub results: Vec<RoutingResult>,
    pub ratios: Option<ImprovementRatios>,
}

/// Solve every routing model the scenario requests.
pub fn run(scenario: &Scenario, opts: &SearchOpts) -> Result<RunBundle> {
    let input = scenario.input();
    let mut results = Vec::with_capacity(scenario.models.len());
    for model in &scenario.models {
        results.push(solve(*model, &input, opts)?);
    }
    let ratios = if RoutingModel::ALL
        .iter()
        .all(|m| scenario.models.contains(m))
    {
        let find = |model: RoutingModel| {
            results
                .iter()
                .find(|r| r.model == model)
                .expect("all models solved")
        };
        Some(ImprovementRatios::from_reports(
            &find(RoutingModel::SingleHop).report,
            &find(RoutingModel::NextRingHop).report,
            &find(RoutingModel::OptimalHop).report,
        )?)
    } else {
        None
    };
    Ok(RunBundle {
        scenario_id: scenario.id.clone(),
        results,
        ratios,
    })
}

/// Which structure parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Rings,
    ChildrenRatio,
}

impl SweepVariable {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::Rings => "rings",
            SweepVariable::ChildrenRatio => "children_ratio",
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct SweepTemplate {
    rings: Option<usize>,
    children_ratio: Option<u64>,
    branches: Option<u64>,
    spreading: Option<Spreading>,
    max_distance_m: Option<f64>,
    environment: Option<RadioEnvironment>,
    packet: Option<PacketFile>,
    aggregation: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    #[serde(default)]
    id: Option<String>,
    variable: SweepVariable,
    from: u64,
    to: u64,
    transceivers: Vec<String>,
    #[serde(default)]
    template: SweepTemplate,
}

/// A validated sweep specification: one scenario per (value, transceiver)
/// grid point, all three routing models each.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub id: String,
    pub variable: SweepVariable,
    pub from: u64,
    pub to: u64,
    pub transceivers: Vec<TransceiverModel>,
    template: SweepTemplate,
}

impl SweepSpec {
    pub fn from_json(text: &str, fallback_id: &str) -> Result<Self> {
        let file: SweepFile = serde_json::from_str(text)?;
        if file.from == 0 || file.from > file.to {
            return Err(Error::validation(
                "from",
                format!(
                    "range {}..={} is empty or starts at zero",
                    file.from, file.to
                ),
            ));
        }
        if file.transceivers.is_empty() {
            return Err(Error::validation("transceivers", "must not be empty"));
        }
        let transceivers = file
            .transceivers
            .iter()
            .map(|name| TransceiverSpec::Name(name.clone()).resolve())
            .collect::<Result<Vec<_>>>()?;
        match file.variable {
            SweepVariable::Rings if file.template.children_ratio.is_none() => {
                return Err(Error::validation(
                    "template.children_ratio",
                    "required when sweeping rings",
                ));
            }
            SweepVariable::ChildrenRatio if file.template.rings.is_none() => {
                return Err(Error::validation(
                    "template.rings",
                    "required when sweeping children_ratio",
                ));
            }
            _ => {}
        }
        Ok(SweepSpec {
            id: file.id.unwrap_or_else(|| fallback_id.to_string()),
            variable: file.variable,
            from: file.from,
            to: file.to,
            transceivers,
            template: file.template,
        })
    }

    /// Force aggregation on or off for every grid point.
    pub fn set_aggregation(&mut self, aggregation: bool) {
        self.template.aggregation = Some(aggregation);
    }

    fn scenario_for(&self, value: u64, tx: &TransceiverModel) -> Result<Scenario> {
        let (rings, children_ratio) = match self.variable {
            SweepVariable::Rings => (value as usize, self.template.children_ratio.unwrap()),
            SweepVariable::ChildrenRatio => (self.template.rings.unwrap(), value),
        };
        let env = self.template.environment.unwrap_or_default();
        env.validate()?;
        let d = self
            .template
            .max_distance_m
            .unwrap_or_else(|| max_range(tx, &env));
        let net = RingNetwork::new(
            d,
            rings,
            children_ratio,
            self.template.branches.unwrap_or(1),
            self.template.spreading.unwrap_or_default(),
        )?;
        let packet = self.template.packet.unwrap_or_default();
        let aggregation = self.template.aggregation.unwrap_or(true);
        Ok(Scenario {
            id: format!("{}-{}-{}", self.id, self.variable.name(), value),
            net,
            tx: tx.clone(),
            env,
            packet: PacketConfig::new(
                packet.payload_bytes,
                packet.header_bytes,
                packet.packet_bytes,
                aggregation,
            )?,
            aggregation,
            models: RoutingModel::ALL.to_vec(),
        })
    }
}

/// Load and validate a sweep specification file.
pub fn load_sweep_spec(path: &Path) -> Result<SweepSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".to_string());
    SweepSpec::from_json(&text, &fallback)
}

/// One grid point of a sweep. A failed point records its error and leaves
/// the metrics empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: u64,
    pub transceiver: String,
    pub rho_sh: Option<f64>,
    pub rho_nrh: Option<f64>,
    pub e_bt_single_hop_j: Option<f64>,
    pub e_bt_next_ring_hop_j: Option<f64>,
    pub e_bt_optimal_hop_j: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub id: String,
    pub variable: SweepVariable,
    pub rows: Vec<SweepRow>,
}

fn sweep_row(spec: &SweepSpec, value: u64, tx: &TransceiverModel, opts: &SearchOpts) -> SweepRow {
    let mut row = SweepRow {
        value,
        transceiver: tx.name.clone(),
        rho_sh: None,
        rho_nrh: None,
        e_bt_single_hop_j: None,
        e_bt_next_ring_hop_j: None,
        e_bt_optimal_hop_j: None,
        error: None,
    };
    let outcome = spec.scenario_for(value, tx).and_then(|scenario| {
        let input = scenario.input();
        let sh = solve(RoutingModel::SingleHop, &input, opts)?;
        let nrh = solve(RoutingModel::NextRingHop, &input, opts)?;
        let oh = solve(RoutingModel::OptimalHop, &input, opts)?;
        let ratios = ImprovementRatios::from_reports(&sh.report, &nrh.report, &oh.report)?;
        Ok((sh, nrh, oh, ratios))
    });
    match outcome {
        Ok((sh, nrh, oh, ratios)) => {
            row.rho_sh = Some(ratios.rho_sh);
            row.rho_nrh = Some(ratios.rho_nrh);
            row.e_bt_single_hop_j = Some(sh.report.e_bt_j);
            row.e_bt_next_ring_hop_j = Some(nrh.report.e_bt_j);
            row.e_bt_optimal_hop_j = Some(oh.report.e_bt_j);
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    row
}

/// Evaluate every grid point. Rows are independent; failures are recorded
/// per row and do not abort the sweep. Row order is value-major and stable.
pub fn sweep(spec: &SweepSpec, opts: &SearchOpts) -> Result<SweepTable> {
    let grid: Vec<(u64, &TransceiverModel)> = (spec.from..=spec.to)
        .flat_map(|value| spec.transceivers.iter().map(move |tx| (value, tx)))
        .collect();

    #[cfg(feature = "parallel")]
    let rows = if opts.force_sequential {
        grid.iter()
            .map(|(value, tx)| sweep_row(spec, *value, tx, opts))
            .collect()
    } else {
        grid.par_iter()
            .map(|(value, tx)| sweep_row(spec, *value, tx, opts))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows = grid
        .iter()
        .map(|(value, tx)| sweep_row(spec, *value, tx, opts))
        .collect();

    Ok(SweepTable {
        id: spec.id.clone(),
        variable: spec.variable,
        rows,
    })
}
