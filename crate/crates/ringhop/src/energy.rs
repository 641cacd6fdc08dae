//! Per-ring TX/RX energy, bottleneck and network totals, TDMA slot sizing,
//! and a generic state-energy calculator.
//!
//! With an ideal reservation-based MAC the only transceiver states that
//! matter are TX and RX, so a station's energy reduces to
//! `e(r) = e_tx(r) + e_rx(r)`. Idle, sleep and microprocessor terms default
//! to zero but can be studied through [`StatePowerProfile`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radio::{is_feasible, RadioEnvironment, TransceiverModel};
use crate::topology::RingNetwork;
use crate::traffic::{
    packets_tx, payloads_aggregated, ConnectivityMatrix, HopVector, PacketConfig,
};

/// Times and currents for every microprocessor and transceiver state.
/// TX entries are per power level; `t_tx_s` and `i_tx_ma` must pair up.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StatePowerProfile {
    pub t_lpm_s: f64,
    pub t_cpu_s: f64,
    pub t_sl_s: f64,
    pub t_id_s: f64,
    pub t_rx_s: f64,
    pub t_tx_s: Vec<f64>,
    pub i_lpm_ma: f64,
    pub i_cpu_ma: f64,
    pub i_sl_ma: f64,
    pub i_id_ma: f64,
    pub i_rx_ma: f64,
    pub i_tx_ma: Vec<f64>,
    pub voltage_v: f64,
}

/// Total energy in joules spent across all states of a profile:
/// microprocessor terms `(t_lpm I_lpm + t_cpu I_cpu) V` plus transceiver
/// terms `(t_sl I_sl + t_id I_id + t_rx I_rx + sum_p t_tx,p I_tx(p)) V`.
pub fn state_energy(profile: &StatePowerProfile) -> Result<f64> {
    let scalars = [
        ("t_lpm_s", profile.t_lpm_s),
        ("t_cpu_s", profile.t_cpu_s),
        ("t_sl_s", profile.t_sl_s),
        ("t_id_s", profile.t_id_s),
        ("t_rx_s", profile.t_rx_s),
        ("i_lpm_ma", profile.i_lpm_ma),
        ("i_cpu_ma", profile.i_cpu_ma),
        ("i_sl_ma", profile.i_sl_ma),
        ("i_id_ma", profile.i_id_ma),
        ("i_rx_ma", profile.i_rx_ma),
        ("voltage_v", profile.voltage_v),
    ];
    for (name, v) in scalars {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::validation(name, "must be non-negative"));
        }
    }
    if profile.t_tx_s.len() != profile.i_tx_ma.len() {
        return Err(Error::validation(
            "t_tx_s",
            "TX time and current vectors must have equal length",
        ));
    }
    if profile
        .t_tx_s
        .iter()
        .chain(profile.i_tx_ma.iter())
        .any(|v| *v < 0.0 || !v.is_finite())
    {
        return Err(Error::validation("t_tx_s", "must be non-negative"));
    }

    let e_p = profile.t_lpm_s * profile.i_lpm_ma + profile.t_cpu_s * profile.i_cpu_ma;
    let mut e_t = profile.t_sl_s * profile.i_sl_ma
        + profile.t_id_s * profile.i_id_ma
        + profile.t_rx_s * profile.i_rx_ma;
    for (t, i) in profile.t_tx_s.iter().zip(profile.i_tx_ma.iter()) {
        e_t += t * i;
    }
    Ok((e_p + e_t) / 1000.0 * profile.voltage_v)
}

/// Transmission configuration of one ring: a (power level, rate level) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingConfig {
    pub power_level: usize,
    pub rate_level: usize,
}

/// Per-ring transmission configurations, feasibility-checked against the hop
/// distances of the hop vector they were built for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfigVector {
    configs: Vec<RingConfig>,
}

impl ConfigVector {
    pub fn new(
        net: &RingNetwork,
        tx: &TransceiverModel,
        env: &RadioEnvironment,
        hops: &HopVector,
        configs: Vec<RingConfig>,
    ) -> Result<Self> {
        if configs.len() != net.ring_count || hops.len() != net.ring_count {
            return Err(Error::validation(
                "configs",
                "one configuration per ring required",
            ));
        }
        for r in 1..=net.ring_count {
            let cfg = configs[r - 1];
            let d = net.hop_distance(r, hops.hop(r))?;
            if !is_feasible(tx, env, cfg.power_level, cfg.rate_level, d)? {
                return Err(Error::Infeasible(format!(
                    "ring {r}: power level {} / rate level {} cannot cover {d:.1} m",
                    cfg.power_level, cfg.rate_level
                )));
            }
        }
        Ok(ConfigVector { configs })
    }

    /// Build without feasibility checks; callers must guarantee feasibility.
    pub(crate) fn from_unchecked(configs: Vec<RingConfig>) -> Self {
        ConfigVector { configs }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    /// Configuration of ring `r` (1-based).
    pub fn ring(&self, r: usize) -> RingConfig {
        self.configs[r - 1]
    }

    pub fn as_slice(&self) -> &[RingConfig] {
        &self.configs
    }
}

/// TX and RX energy of one station in a ring, joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingEnergy {
    pub e_tx_j: f64,
    pub e_rx_j: f64,
}

impl RingEnergy {
    pub fn e_j(&self) -> f64 {
        self.e_tx_j + self.e_rx_j
    }
}

/// Energy outcome of one (hop vector, configuration) assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// Per-station energies, index `r - 1`.
    pub rings: Vec<RingEnergy>,
    /// Ring whose stations consume the most (lowest index on ties).
    pub bottleneck_ring: usize,
    /// Energy of the bottleneck station, joules.
    pub e_bt_j: f64,
    /// Population-weighted network total, joules.
    pub e_n_j: f64,
}

/// Everything needed to evaluate energies for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct EnergyModel<'a> {
    pub net: &'a RingNetwork,
    pub tx: &'a TransceiverModel,
    pub env: &'a RadioEnvironment,
    pub packet: &'a PacketConfig,
}

impl EnergyModel<'_> {
    fn check_inputs(&self, hops: &HopVector, config: &ConfigVector) -> Result<()> {
        if hops.len() != self.net.ring_count || config.len() != self.net.ring_count {
            return Err(Error::validation(
                "hops",
                "hop and configuration vectors must cover every ring",
            ));
        }
        for r in 1..=self.net.ring_count {
            let cfg = config.ring(r);
            let d = self.net.hop_distance(r, hops.hop(r))?;
            if !is_feasible(self.tx, self.env, cfg.power_level, cfg.rate_level, d)? {
                return Err(Error::Infeasible(format!(
                    "ring {r}: configuration cannot cover its {d:.1} m hop"
                )));
            }
        }
        Ok(())
    }

    /// Seconds on air for `packets` fixed-size packets at rate level `s`.
    fn airtime_s(&self, packets: u64, rate_level: usize) -> Result<f64> {
        Ok(packets as f64 * self.packet.packet_bits() / self.tx.rate(rate_level)?.rate_bps)
    }

    /// TX energy of one station in ring `r`: packets to transmit times
    /// airtime per packet times TX current at the configured power level.
    pub fn tx_energy(
        &self,
        r: usize,
        hops: &HopVector,
        lambda: &ConnectivityMatrix,
        config: &ConfigVector,
    ) -> Result<f64> {
        self.check_inputs(hops, config)?;
        let n_p = payloads_aggregated(lambda, self.net.children_ratio, r);
        let n_dp = packets_tx(n_p, self.packet.max_payloads);
        let cfg = config.ring(r);
        let t = self.airtime_s(n_dp, cfg.rate_level)?;
        let i_a = self.tx.power(cfg.power_level)?.i_tx_ma / 1000.0;
        Ok(t * i_a * self.env.voltage_v)
    }

    /// RX energy of one station in ring `r`: listening to every packet its
    /// direct children transmit, at each child ring's configured rate.
    pub fn rx_energy(
        &self,
        r: usize,
        hops: &HopVector,
        lambda: &ConnectivityMatrix,
        config: &ConfigVector,
    ) -> Result<f64> {
        self.check_inputs(hops, config)?;
        let c = self.net.children_ratio;
        let i_rx_a = self.tx.rx_current_ma / 1000.0;
        let mut t_rx = 0.0;
        for j in r + 1..=self.net.ring_count {
            if hops.destination(j) != r {
                continue;
            }
            let n_p = payloads_aggregated(lambda, c, j);
            let n_dp = packets_tx(n_p, self.packet.max_payloads);
            let children = c.pow((j - r) as u32);
            t_rx += self.airtime_s(children * n_dp, config.ring(j).rate_level)?;
        }
        Ok(t_rx * i_rx_a * self.env.voltage_v)
    }

    /// Full per-ring energy accounting with bottleneck and network totals.
    pub fn energy_report(&self, hops: &HopVector, config: &ConfigVector) -> Result<EnergyReport> {
        self.check_inputs(hops, config)?;
        let lambda = ConnectivityMatrix::from_hops(hops);
        let ring_count = self.net.ring_count;

        let mut rings = Vec::with_capacity(ring_count);
        for r in 1..=ring_count {
            rings.push(RingEnergy {
                e_tx_j: self.tx_energy(r, hops, &lambda, config)?,
                e_rx_j: self.rx_energy(r, hops, &lambda, config)?,
            });
        }

        let mut bottleneck_ring = 1;
        let mut e_bt_j = rings[0].e_j();
        let mut e_n_j = 0.0;
        for r in 1..=ring_count {
            let e = rings[r - 1].e_j();
            if e > e_bt_j {
                e_bt_j = e;
                bottleneck_ring = r;
            }
            e_n_j += self.net.stations_in_ring(r)? as f64 * e;
        }

        Ok(EnergyReport {
            rings,
            bottleneck_ring,
            e_bt_j,
            e_n_j,
        })
    }

    /// Payload and packet counts per ring under `hops`.
    pub fn traffic(&self, hops: &HopVector) -> (Vec<u64>, Vec<u64>) {
        let lambda = ConnectivityMatrix::from_hops(hops);
        let payloads: Vec<u64> = (1..=self.net.ring_count)
            .map(|r| payloads_aggregated(&lambda, self.net.children_ratio, r))
            .collect();
        let packets: Vec<u64> = payloads
            .iter()
            .map(|&n| packets_tx(n, self.packet.max_payloads))
            .collect();
        (payloads, packets)
    }

    /// Reservation slot length sized for the worst case: the largest per-ring
    /// packet burst sent at the transceiver's slowest rate.
    pub fn slot_time_s(&self, hops: &HopVector) -> Result<f64> {
        if hops.len() != self.net.ring_count {
            return Err(Error::validation(
                "hops",
                "hop vector must cover every ring",
            ));
        }
        let (_, packets) = self.traffic(hops);
        let max_packets = packets.iter().copied().max().unwrap_or(0);
        let slowest = self.tx.rate(self.tx.slowest_rate_level())?.rate_bps;
        Ok(max_packets as f64 * self.packet.packet_bits() / slowest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn scenario_1_1() -> (
        RingNetwork,
        TransceiverModel,
        RadioEnvironment,
        PacketConfig,
    ) {
        let tx = catalog::lookup("CC1200").unwrap();
        let env = RadioEnvironment::default();
        let d = crate::radio::max_range(&tx, &env);
        let net = RingNetwork::new(d, 7, 3, 1, crate::topology::Spreading::Equidistant).unwrap();
        (net, tx, env, PacketConfig::default())
    }

    fn cfg(levels: &[(usize, usize)]) -> ConfigVector {
        ConfigVector::from_unchecked(
            levels
                .iter()
                .map(|&(p, s)| RingConfig {
                    power_level: p,
                    rate_level: s,
                })
                .collect(),
        )
    }

    // Reference configurations for the 7-ring, c = 3 network at CC1200's
    // coverage range (equidistant spreading).
    const SINGLE_HOP_CFG: [(usize, usize); 7] =
        [(5, 1), (4, 3), (1, 4), (1, 6), (4, 7), (2, 7), (1, 7)];
    const OPTIMAL_HOP_CFG: [(usize, usize); 7] =
        [(5, 1), (5, 1), (5, 1), (1, 6), (5, 1), (1, 4), (5, 1)];
    const OPTIMAL_HOPS: [u8; 7] = [1, 1, 1, 4, 1, 3, 1];

    #[test]
    fn state_energy_examples() {
        let mut profile = StatePowerProfile {
            voltage_v: 3.0,
            ..Default::default()
        };
        assert_eq!(state_energy(&profile).unwrap(), 0.0);

        profile.t_cpu_s = 1.0;
        profile.i_cpu_ma = 20.0;
        assert!((state_energy(&profile).unwrap() - 0.06).abs() < 1e-12);

        let two_tx = StatePowerProfile {
            t_tx_s: vec![0.5, 0.5],
            i_tx_ma: vec![45.0, 21.0],
            voltage_v: 3.0,
            ..Default::default()
        };
        assert!((state_energy(&two_tx).unwrap() - 0.099).abs() < 1e-12);

        let bad = StatePowerProfile {
            t_rx_s: -1.0,
            ..Default::default()
        };
        assert!(state_energy(&bad).is_err());

        let mismatched = StatePowerProfile {
            t_tx_s: vec![1.0],
            i_tx_ma: vec![],
            ..Default::default()
        };
        assert!(state_energy(&mismatched).is_err());
    }

    #[test]
    fn tx_energy_reference_values() {
        let (net, tx, env, packet) = scenario_1_1();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };

        // Last ring under single-hop: one packet at 1.2 kbps and 45 mA.
        let sh = HopVector::single_hop(7);
        let lambda = ConnectivityMatrix::from_hops(&sh);
        let e = model
            .tx_energy(7, &sh, &lambda, &cfg(&SINGLE_HOP_CFG))
            .unwrap();
        assert!((e - 0.0585).abs() < 1e-4, "got {e}");

        // Ring 1 under the reference multi-hop combination: 247 packets at
        // 1 Mbps and 31 mA.
        let oh = HopVector::new(OPTIMAL_HOPS.to_vec()).unwrap();
        let lambda = ConnectivityMatrix::from_hops(&oh);
        let e = model
            .tx_energy(1, &oh, &lambda, &cfg(&OPTIMAL_HOP_CFG))
            .unwrap();
        assert!((e - 0.01194492).abs() < 5e-5, "got {e}");
    }

    #[test]
    fn rx_energy_reference_values() {
        let (net, tx, env, packet) = scenario_1_1();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };

        let oh = HopVector::new(OPTIMAL_HOPS.to_vec()).unwrap();
        let lambda = ConnectivityMatrix::from_hops(&oh);
        let config = cfg(&OPTIMAL_HOP_CFG);

        // The last ring never receives.
        assert_eq!(model.rx_energy(7, &oh, &lambda, &config).unwrap(), 0.0);

        // Ring 6 listens to 3 children sending one packet each at 1 Mbps.
        let e = model.rx_energy(6, &oh, &lambda, &config).unwrap();
        assert!((e - 8.892e-5).abs() < 1e-6, "got {e}");

        // Single-hop consumes no RX energy anywhere.
        let sh = HopVector::single_hop(7);
        let lambda = ConnectivityMatrix::from_hops(&sh);
        let config = cfg(&SINGLE_HOP_CFG);
        for r in 1..=7 {
            assert_eq!(model.rx_energy(r, &sh, &lambda, &config).unwrap(), 0.0);
        }
    }

    #[test]
    fn report_bottlenecks() {
        let (net, tx, env, packet) = scenario_1_1();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };

        let sh = HopVector::single_hop(7);
        let report = model.energy_report(&sh, &cfg(&SINGLE_HOP_CFG)).unwrap();
        assert_eq!(report.bottleneck_ring, 7);

        let oh = HopVector::new(OPTIMAL_HOPS.to_vec()).unwrap();
        let report = model.energy_report(&oh, &cfg(&OPTIMAL_HOP_CFG)).unwrap();
        assert_eq!(report.bottleneck_ring, 1);
        assert!((report.e_bt_j - 0.01923636).abs() < 1e-7);

        // Additivity holds exactly per ring.
        for ring in &report.rings {
            assert_eq!(ring.e_j(), ring.e_tx_j + ring.e_rx_j);
        }
    }

    #[test]
    fn report_single_ring_network() {
        let tx = catalog::lookup("CC1200").unwrap();
        let env = RadioEnvironment::default();
        let d = crate::radio::max_range(&tx, &env);
        let net = RingNetwork::new(d, 1, 1, 5, crate::topology::Spreading::Equidistant).unwrap();
        let packet = PacketConfig::default();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };
        let hops = HopVector::single_hop(1);
        let report = model.energy_report(&hops, &cfg(&[(1, 7)])).unwrap();
        assert_eq!(report.bottleneck_ring, 1);
        assert_eq!(report.e_bt_j, report.rings[0].e_j());
        assert!((report.e_n_j - 5.0 * report.e_bt_j).abs() < 1e-15);
    }

    #[test]
    fn infeasible_config_rejected() {
        let (net, tx, env, packet) = scenario_1_1();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };
        let sh = HopVector::single_hop(7);
        // Minimum power at the fastest rate cannot span the full range.
        let bad = cfg(&[(5, 1), (4, 3), (1, 4), (1, 6), (4, 7), (2, 7), (16, 1)]);
        assert!(model.energy_report(&sh, &bad).is_err());
        assert!(ConfigVector::new(&net, &tx, &env, &sh, bad.as_slice().to_vec()).is_err());
    }

    #[test]
    fn slot_time_examples() {
        let (net, tx, env, packet) = scenario_1_1();
        let model = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        };
        // Largest burst of the reference combination: 247 packets at 1.2 kbps.
        let oh = HopVector::new(OPTIMAL_HOPS.to_vec()).unwrap();
        assert!((model.slot_time_s(&oh).unwrap() - 107.03).abs() < 0.1);

        // Single packet bursts under single-hop.
        let sh = HopVector::single_hop(7);
        assert!((model.slot_time_s(&sh).unwrap() - 520.0 / 1200.0).abs() < 1e-12);
    }

    #[test]
    fn energy_scales_linearly_in_voltage_and_packet_bits() {
        let (net, tx, env, packet) = scenario_1_1();
        let oh = HopVector::new(OPTIMAL_HOPS.to_vec()).unwrap();
        let config = cfg(&OPTIMAL_HOP_CFG);

        let base = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet,
        }
        .energy_report(&oh, &config)
        .unwrap();

        let mut env2 = env;
        env2.voltage_v *= 2.0;
        let doubled_v = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env2,
            packet: &packet,
        }
        .energy_report(&oh, &config)
        .unwrap();
        assert!((doubled_v.e_bt_j - 2.0 * base.e_bt_j).abs() < 1e-12);
        assert!((doubled_v.e_n_j - 2.0 * base.e_n_j).abs() < 1e-9);

        // Doubling all byte sizes keeps packet counts fixed and doubles
        // airtime, hence energy.
        let packet2 = PacketConfig::new(30, 4, 130, true).unwrap();
        assert_eq!(packet2.max_payloads, packet.max_payloads);
        let doubled_bits = EnergyModel {
            net: &net,
            tx: &tx,
            env: &env,
            packet: &packet2,
        }
        .energy_report(&oh, &config)
        .unwrap();
        assert!((doubled_bits.e_bt_j - 2.0 * base.e_bt_j).abs() < 1e-12);
    }
}
