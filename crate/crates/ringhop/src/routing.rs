//! Routing models and the min-max bottleneck search.
//!
//! Three routing models are supported: single-hop (every ring transmits
//! straight to the gateway), next-ring-hop (every ring transmits to the
//! adjacent lower ring) and optimal-hop, which searches all `R!` hop
//! combinations and all feasible per-ring transmission configurations for
//! the assignment minimizing the bottleneck station's energy.
//!
//! Combo evaluations are independent and side-effect free: the search maps
//! over the combination set and reduces with an associative, commutative
//! minimum under a total tie-break order, so results do not depend on worker
//! count or evaluation order. With the `parallel` feature (default) the map
//! runs on rayon; without it the crate falls back to a sequential loop.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{ConfigVector, EnergyModel, EnergyReport, RingConfig};
use crate::error::{Error, Result};
use crate::radio::{is_feasible, RadioEnvironment, TransceiverModel};
use crate::topology::RingNetwork;
use crate::traffic::{combo_count, decode_combo, HopVector, PacketConfig, MAX_ENUMERATED_RINGS};

/// Which routing rule sets the hop vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoutingModel {
    SingleHop,
    NextRingHop,
    OptimalHop,
}

impl RoutingModel {
    pub const ALL: [RoutingModel; 3] = [
        RoutingModel::SingleHop,
        RoutingModel::NextRingHop,
        RoutingModel::OptimalHop,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RoutingModel::SingleHop => "single-hop",
            RoutingModel::NextRingHop => "next-ring-hop",
            RoutingModel::OptimalHop => "optimal-hop",
        }
    }
}

/// The immutable inputs of a search.
#[derive(Debug, Clone, Copy)]
pub struct SearchInput<'a> {
    pub net: &'a RingNetwork,
    pub tx: &'a TransceiverModel,
    pub env: &'a RadioEnvironment,
    pub packet: &'a PacketConfig,
}

impl SearchInput<'_> {
    fn validate(&self) -> Result<()> {
        self.tx.validate()?;
        self.env.validate()
    }

    fn energy_model(&self) -> EnergyModel<'_> {
        EnergyModel {
            net: self.net,
            tx: self.tx,
            env: self.env,
            packet: self.packet,
        }
    }
}

/// Search knobs. Defaults: dominance-pruned candidates, parallel when built
/// with the `parallel` feature, guards on.
#[derive(Debug, Clone, Copy)]
pub struct SearchOpts {
    /// Evaluate every feasible (power, rate) pair per ring instead of the
    /// dominance-pruned candidate set. Slow; kept as the oracle path.
    pub exhaustive: bool,
    /// Run the combo loop sequentially even when rayon is available.
    pub force_sequential: bool,
    /// Lift the ring-count and joint-configuration guards.
    pub override_guards: bool,
    /// Refuse any single hop combination whose joint configuration product
    /// exceeds this many assignments (unless overridden).
    pub max_joint_configs: u64,
}

impl Default for SearchOpts {
    fn default() -> Self {
        SearchOpts {
            exhaustive: false,
            force_sequential: false,
            override_guards: false,
            max_joint_configs: 100_000_000,
        }
    }
}

/// Search effort accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    /// Hop combinations considered.
    pub combos_total: u64,
    /// Hop combinations with a feasible configuration for every ring.
    pub combos_feasible: u64,
    /// Joint configuration assignments evaluated.
    pub configs_evaluated: u64,
    /// Candidate configurations removed by dominance pruning.
    pub configs_pruned: u64,
}

/// Outcome of solving one routing model on one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutingResult {
    pub model: RoutingModel,
    pub hops: HopVector,
    pub configs: ConfigVector,
    /// Payloads aggregated per station, by ring.
    pub payloads: Vec<u64>,
    /// Packets transmitted per station, by ring.
    pub packets: Vec<u64>,
    pub report: EnergyReport,
    pub slot_time_s: f64,
    pub stats: SearchStats,
}

/// Bottleneck-energy ratios of the two fixed models against optimal-hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovementRatios {
    pub rho_sh: f64,
    pub rho_nrh: f64,
}

impl ImprovementRatios {
    pub fn from_reports(
        single_hop: &EnergyReport,
        next_ring_hop: &EnergyReport,
        optimal_hop: &EnergyReport,
    ) -> Result<Self> {
        if !optimal_hop.e_bt_j.is_finite() || optimal_hop.e_bt_j <= 0.0 {
            return Err(Error::validation(
                "e_bt",
                "optimal-hop bottleneck energy must be positive",
            ));
        }
        Ok(ImprovementRatios {
            rho_sh: single_hop.e_bt_j / optimal_hop.e_bt_j,
            rho_nrh: next_ring_hop.e_bt_j / optimal_hop.e_bt_j,
        })
    }
}

/// Run `f` inside a rayon pool of `threads` workers; `None` uses the current
/// pool. Without the `parallel` feature the thread count is ignored.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    #[cfg(feature = "parallel")]
    {
        match threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::validation("threads", e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(f())
    }
}

/// Candidate (power, rate) pairs for a ring transmitting over `hop` rings.
///
/// Per rate level the feasible power level with the lowest current is kept
/// (ties towards the lower output), then dominated entries are removed: a
/// candidate is dominated when another one has no worse current-per-bit and
/// no lower rate, i.e. it is no worse for the sender's TX energy and for any
/// parent's RX time. Empty when no rate closes the link.
pub fn candidate_configs(input: &SearchInput, r: usize, hop: usize) -> Result<Vec<RingConfig>> {
    let d = input.net.hop_distance(r, hop)?;
    let (list, _) = candidates_for_distance(input, d, false)?;
    Ok(list)
}

fn candidates_for_distance(
    input: &SearchInput,
    d: f64,
    exhaustive: bool,
) -> Result<(Vec<RingConfig>, u64)> {
    let tx = input.tx;
    let mut list: Vec<RingConfig> = Vec::new();
    for s in 1..=tx.rate_levels.len() {
        if exhaustive {
            for p in 1..=tx.power_levels.len() {
                if is_feasible(tx, input.env, p, s, d)? {
                    list.push(RingConfig {
                        power_level: p,
                        rate_level: s,
                    });
                }
            }
        } else {
            let mut best: Option<usize> = None;
            for p in 1..=tx.power_levels.len() {
                if !is_feasible(tx, input.env, p, s, d)? {
                    continue;
                }
                best = match best {
                    None => Some(p),
                    Some(b) => {
                        let (i_b, i_p) = (
                            tx.power_levels[b - 1].i_tx_ma,
                            tx.power_levels[p - 1].i_tx_ma,
                        );
                        // Lowest current wins; equal currents prefer the
                        // lower output (higher level index).
                        if i_p < i_b || (i_p == i_b && p > b) {
                            Some(p)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            if let Some(p) = best {
                list.push(RingConfig {
                    power_level: p,
                    rate_level: s,
                });
            }
        }
    }

    let mut pruned = 0;
    if !exhaustive {
        let metric = |c: &RingConfig| {
            let rate = tx.rate_levels[c.rate_level - 1].rate_bps;
            (tx.power_levels[c.power_level - 1].i_tx_ma / rate, rate)
        };
        let dominated = |a: &RingConfig| {
            let (ipb_a, rate_a) = metric(a);
            list.iter().any(|b| {
                let (ipb_b, rate_b) = metric(b);
                ipb_b <= ipb_a && rate_b >= rate_a && (ipb_b < ipb_a || rate_b > rate_a)
            })
        };
        let kept: Vec<RingConfig> = list.iter().copied().filter(|c| !dominated(c)).collect();
        pruned = (list.len() - kept.len()) as u64;
        list = kept;
    }

    list.sort_by_key(|c| (c.power_level, c.rate_level));
    Ok((list, pruned))
}

/// Per-(ring, hop) candidate lists: `table[r - 1][hop - 1]`.
struct CandidateTable {
    per_ring: Vec<Vec<Vec<RingConfig>>>,
    pruned: u64,
}

fn build_candidate_table(input: &SearchInput, exhaustive: bool) -> Result<CandidateTable> {
    let mut per_ring = Vec::with_capacity(input.net.ring_count);
    let mut pruned = 0;
    for r in 1..=input.net.ring_count {
        let mut by_hop = Vec::with_capacity(r);
        for hop in 1..=r {
            let d = input.net.hop_distance(r, hop)?;
            let (list, removed) = candidates_for_distance(input, d, exhaustive)?;
            pruned += removed;
            by_hop.push(list);
        }
        per_ring.push(by_hop);
    }
    Ok(CandidateTable { per_ring, pruned })
}

/// Read-only state shared by all combo evaluations.
struct SearchCtx<'a> {
    ring_count: usize,
    table: &'a CandidateTable,
    /// c^0 .. c^R
    c_pow: Vec<u64>,
    /// Stations per ring, as f64 weights.
    stations: Vec<f64>,
    packet_bits: f64,
    max_payloads: u64,
    /// Amps, indexed by 1-based rate/power level (entry 0 unused).
    rate_bps: Vec<f64>,
    i_tx_a: Vec<f64>,
    i_rx_a: f64,
    max_joint: u64,
    guard_hit: AtomicBool,
}

impl<'a> SearchCtx<'a> {
    fn new(input: &SearchInput, table: &'a CandidateTable, opts: &SearchOpts) -> Result<Self> {
        let net = input.net;
        let rc = net.ring_count;
        let mut c_pow = Vec::with_capacity(rc + 1);
        let mut p = 1u64;
        for _ in 0..=rc {
            c_pow.push(p);
            p = p.saturating_mul(net.children_ratio);
        }
        let stations = (1..=rc)
            .map(|r| net.stations_in_ring(r).map(|n| n as f64))
            .collect::<Result<Vec<_>>>()?;
        let mut rate_bps = vec![f64::NAN];
        rate_bps.extend(input.tx.rate_levels.iter().map(|s| s.rate_bps));
        let mut i_tx_a = vec![f64::NAN];
        i_tx_a.extend(input.tx.power_levels.iter().map(|p| p.i_tx_ma / 1000.0));
        Ok(SearchCtx {
            ring_count: rc,
            table,
            c_pow,
            stations,
            packet_bits: input.packet.packet_bits(),
            max_payloads: input.packet.max_payloads,
            rate_bps,
            i_tx_a,
            i_rx_a: input.tx.rx_current_ma / 1000.0,
            max_joint: if opts.override_guards {
                u64::MAX
            } else {
                opts.max_joint_configs
            },
            guard_hit: AtomicBool::new(false),
        })
    }
}

/// Reusable per-worker buffers.
struct Scratch {
    hops: Vec<u8>,
    dest: Vec<usize>,
    n_p: Vec<u64>,
    n_dp: Vec<f64>,
    rx_mult: Vec<f64>,
    choice: Vec<u32>,
    energy: Vec<f64>,
    best_cfg: Vec<RingConfig>,
}

impl Scratch {
    fn new(ring_count: usize) -> Self {
        Scratch {
            hops: vec![0; ring_count],
            dest: vec![0; ring_count],
            n_p: vec![0; ring_count],
            n_dp: vec![0.0; ring_count],
            rx_mult: vec![0.0; ring_count],
            choice: vec![0; ring_count],
            energy: vec![0.0; ring_count],
            best_cfg: vec![
                RingConfig {
                    power_level: 0,
                    rate_level: 0
                };
                ring_count
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct LocalStats {
    feasible: u64,
    configs: u64,
}

/// Winner of one combo: its search key and configuration. `(e_bt, e_n,
/// combo)` is a total order — combo indices are unique and equal indices
/// cannot occur across distinct candidates — so the reduction is
/// deterministic under any grouping.
struct BestCombo {
    e_bt: f64,
    e_n: f64,
    combo: u64,
    configs: Vec<RingConfig>,
}

fn key_less(a: (f64, f64, u64), b: (f64, f64, u64)) -> bool {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => match a.1.total_cmp(&b.1) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a.2 < b.2,
        },
    }
}

#[cfg(feature = "parallel")]
fn merge_best(a: Option<BestCombo>, b: Option<BestCombo>) -> Option<BestCombo> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if key_less((y.e_bt, y.e_n, y.combo), (x.e_bt, x.e_n, x.combo)) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

/// Evaluate one hop combination: find its cheapest-bottleneck configuration.
///
/// Returns `(e_bt, e_n)` in ampere-seconds (the common voltage factor is
/// irrelevant for comparisons) with the winning configuration left in
/// `scratch.best_cfg`, or `None` when some ring has no feasible candidate or
/// the joint product exceeds the guard.
fn eval_combo(
    ctx: &SearchCtx,
    scratch: &mut Scratch,
    combo: u64,
    stats: &mut LocalStats,
) -> Option<(f64, f64)> {
    let rc = ctx.ring_count;
    decode_combo(combo, &mut scratch.hops[..rc]);

    let mut product: u64 = 1;
    for r in 0..rc {
        let cands = &ctx.table.per_ring[r][scratch.hops[r] as usize - 1];
        if cands.is_empty() {
            return None;
        }
        product = product.saturating_mul(cands.len() as u64);
    }
    if product > ctx.max_joint {
        ctx.guard_hit.store(true, Ordering::Relaxed);
        return None;
    }
    stats.feasible += 1;
    stats.configs += product;

    // Traffic accounting: walk every ring's forwarding chain, accumulating
    // per-station payload counts at each relay.
    for r in 0..rc {
        scratch.n_p[r] = 1;
        scratch.dest[r] = r + 1 - scratch.hops[r] as usize;
    }
    for origin in 1..=rc {
        let mut j = origin;
        loop {
            let next = scratch.dest[j - 1];
            if next == 0 {
                break;
            }
            scratch.n_p[next - 1] += ctx.c_pow[origin - next];
            j = next;
        }
    }
    for r in 0..rc {
        scratch.n_dp[r] = scratch.n_p[r].div_ceil(ctx.max_payloads) as f64;
        scratch.rx_mult[r] = if scratch.dest[r] >= 1 {
            ctx.c_pow[r + 1 - scratch.dest[r]] as f64
        } else {
            0.0
        };
    }

    // Joint assignments in lexicographic order of the configuration vector
    // (candidate lists are sorted, the last ring's choice varies fastest),
    // so keeping the first strict improvement yields the lexicographically
    // smallest winner among exact ties.
    scratch.choice[..rc].fill(0);
    let mut best_e_bt = f64::INFINITY;
    let mut best_e_n = f64::INFINITY;
    'assignments: loop {
        let energy = &mut scratch.energy[..rc];
        energy.fill(0.0);
        for r in 0..rc {
            let cands = &ctx.table.per_ring[r][scratch.hops[r] as usize - 1];
            let cfg = cands[scratch.choice[r] as usize];
            let airtime = scratch.n_dp[r] * ctx.packet_bits / ctx.rate_bps[cfg.rate_level];
            energy[r] += airtime * ctx.i_tx_a[cfg.power_level];
            if scratch.dest[r] >= 1 {
                energy[scratch.dest[r] - 1] += scratch.rx_mult[r] * airtime * ctx.i_rx_a;
            }
        }
        let mut e_bt = 0.0;
        let mut e_n = 0.0;
        for (e, stations) in energy.iter().zip(&ctx.stations) {
            if *e > e_bt {
                e_bt = *e;
            }
            e_n += stations * e;
        }
        if e_bt < best_e_bt || (e_bt == best_e_bt && e_n < best_e_n) {
            best_e_bt = e_bt;
            best_e_n = e_n;
            for r in 0..rc {
                let cands = &ctx.table.per_ring[r][scratch.hops[r] as usize - 1];
                scratch.best_cfg[r] = cands[scratch.choice[r] as usize];
            }
        }

        let mut pos = rc;
        loop {
            if pos == 0 {
                break 'assignments;
            }
            let len = ctx.table.per_ring[pos - 1][scratch.hops[pos - 1] as usize - 1].len();
            scratch.choice[pos - 1] += 1;
            if (scratch.choice[pos - 1] as usize) < len {
                break;
            }
            scratch.choice[pos - 1] = 0;
            pos -= 1;
        }
    }
    Some((best_e_bt, best_e_n))
}

fn fold_combo(
    ctx: &SearchCtx,
    scratch: &mut Scratch,
    best: Option<BestCombo>,
    stats: &mut LocalStats,
    combo: u64,
) -> Option<BestCombo> {
    match eval_combo(ctx, scratch, combo, stats) {
        None => best,
        Some((e_bt, e_n)) => {
            let improves = match &best {
                None => true,
                Some(b) => key_less((e_bt, e_n, combo), (b.e_bt, b.e_n, b.combo)),
            };
            if improves {
                Some(BestCombo {
                    e_bt,
                    e_n,
                    combo,
                    configs: scratch.best_cfg[..ctx.ring_count].to_vec(),
                })
            } else {
                best
            }
        }
    }
}

fn run_search(
    ctx: &SearchCtx,
    combos: u64,
    force_sequential: bool,
) -> (Option<BestCombo>, LocalStats) {
    #[cfg(feature = "parallel")]
    if !force_sequential {
        return (0..combos as usize)
            .into_par_iter()
            .with_min_len(256)
            .fold(
                || (Scratch::new(ctx.ring_count), None, LocalStats::default()),
                |(mut scratch, best, mut stats), combo| {
                    let best = fold_combo(ctx, &mut scratch, best, &mut stats, combo as u64);
                    (scratch, best, stats)
                },
            )
            .map(|(_, best, stats)| (best, stats))
            .reduce(
                || (None, LocalStats::default()),
                |(best_a, stats_a), (best_b, stats_b)| {
                    (
                        merge_best(best_a, best_b),
                        LocalStats {
                            feasible: stats_a.feasible + stats_b.feasible,
                            configs: stats_a.configs + stats_b.configs,
                        },
                    )
                },
            );
    }
    let _ = force_sequential;
    let mut scratch = Scratch::new(ctx.ring_count);
    let mut stats = LocalStats::default();
    let mut best = None;
    for combo in 0..combos {
        best = fold_combo(ctx, &mut scratch, best, &mut stats, combo);
    }
    (best, stats)
}

fn assemble(
    model: RoutingModel,
    input: &SearchInput,
    hops: HopVector,
    configs: Vec<RingConfig>,
    stats: SearchStats,
) -> Result<RoutingResult> {
    let energy_model = input.energy_model();
    let config = ConfigVector::from_unchecked(configs);
    let (payloads, packets) = energy_model.traffic(&hops);
    let report = energy_model.energy_report(&hops, &config)?;
    let slot_time_s = energy_model.slot_time_s(&hops)?;
    Ok(RoutingResult {
        model,
        hops,
        configs: config,
        payloads,
        packets,
        report,
        slot_time_s,
        stats,
    })
}

/// Cheapest-bottleneck configuration for one hop combination, or `None` when
/// some ring cannot close its link at any rate.
pub fn best_configs_for_combo(
    input: &SearchInput,
    hops: &HopVector,
    opts: &SearchOpts,
) -> Result<Option<(ConfigVector, f64)>> {
    input.validate()?;
    if hops.len() != input.net.ring_count {
        return Err(Error::validation(
            "hops",
            "hop vector must cover every ring",
        ));
    }
    let table = build_candidate_table(input, opts.exhaustive)?;
    let ctx = SearchCtx::new(input, &table, opts)?;
    let mut scratch = Scratch::new(ctx.ring_count);
    let mut stats = LocalStats::default();
    let outcome = eval_combo(&ctx, &mut scratch, hops.index(), &mut stats);
    if ctx.guard_hit.load(Ordering::Relaxed) {
        return Err(joint_guard_error(opts));
    }
    match outcome {
        None => Ok(None),
        Some(_) => {
            let config = ConfigVector::from_unchecked(scratch.best_cfg[..ctx.ring_count].to_vec());
            let report = input.energy_model().energy_report(hops, &config)?;
            Ok(Some((config, report.e_bt_j)))
        }
    }
}

fn joint_guard_error(opts: &SearchOpts) -> Error {
    Error::Guard(format!(
        "a hop combination expands to more than {} joint configurations; \
         rerun with the guard override to search it anyway",
        opts.max_joint_configs
    ))
}

/// Min-max search over every hop combination and each ring's candidate
/// configurations. Returns the assignment minimizing the bottleneck energy;
/// exact ties prefer the smaller network total, then the lexicographically
/// smallest hop vector, then the lexicographically smallest configuration.
pub fn optimize(input: &SearchInput, opts: &SearchOpts) -> Result<RoutingResult> {
    input.validate()?;
    let rc = input.net.ring_count;
    if rc > MAX_ENUMERATED_RINGS && !opts.override_guards {
        return Err(Error::Guard(format!(
            "optimal-hop search over {rc}! combinations exceeds the \
             {MAX_ENUMERATED_RINGS}-ring guard; rerun with the guard override"
        )));
    }
    let combos = combo_count(rc)?;
    let table = build_candidate_table(input, opts.exhaustive)?;
    let ctx = SearchCtx::new(input, &table, opts)?;
    let (best, local) = run_search(&ctx, combos, opts.force_sequential);
    if ctx.guard_hit.load(Ordering::Relaxed) {
        return Err(joint_guard_error(opts));
    }
    let best = best.ok_or_else(|| {
        Error::Infeasible("no hop combination has a feasible configuration for every ring".into())
    })?;
    let stats = SearchStats {
        combos_total: combos,
        combos_feasible: local.feasible,
        configs_evaluated: local.configs,
        configs_pruned: table.pruned,
    };
    assemble(
        RoutingModel::OptimalHop,
        input,
        HopVector::from_index(rc, best.combo),
        best.configs,
        stats,
    )
}

/// Solve one of the fixed-hop models: the hop vector is pinned by the model
/// and only its configuration is optimized.
pub fn baseline(
    model: RoutingModel,
    input: &SearchInput,
    opts: &SearchOpts,
) -> Result<RoutingResult> {
    let hops = match model {
        RoutingModel::SingleHop => HopVector::single_hop(input.net.ring_count),
        RoutingModel::NextRingHop => HopVector::next_ring_hop(input.net.ring_count),
        RoutingModel::OptimalHop => {
            return Err(Error::validation(
                "model",
                "optimal-hop is searched, not fixed; call optimize",
            ));
        }
    };
    input.validate()?;
    let table = build_candidate_table(input, opts.exhaustive)?;
    let ctx = SearchCtx::new(input, &table, opts)?;
    let mut scratch = Scratch::new(ctx.ring_count);
    let mut local = LocalStats::default();
    let outcome = eval_combo(&ctx, &mut scratch, hops.index(), &mut local);
    if ctx.guard_hit.load(Ordering::Relaxed) {
        return Err(joint_guard_error(opts));
    }
    match outcome {
        None => Err(Error::Infeasible(format!(
            "{} cannot close every ring's link in this scenario",
            model.name()
        ))),
        Some(_) => {
            let stats = SearchStats {
                combos_total: 1,
                combos_feasible: 1,
                configs_evaluated: local.configs,
                configs_pruned: table.pruned,
            };
            let configs = scratch.best_cfg[..ctx.ring_count].to_vec();
            assemble(model, input, hops, configs, stats)
        }
    }
}

/// Solve any routing model.
pub fn solve(model: RoutingModel, input: &SearchInput, opts: &SearchOpts) -> Result<RoutingResult> {
    match model {
        RoutingModel::OptimalHop => optimize(input, opts),
        _ => baseline(model, input, opts),
    }
}

/// Solve all three models and form the bottleneck-energy improvement ratios.
pub fn improvement_ratios(input: &SearchInput, opts: &SearchOpts) -> Result<ImprovementRatios> {
    let sh = baseline(RoutingModel::SingleHop, input, opts)?;
    let nrh = baseline(RoutingModel::NextRingHop, input, opts)?;
    let oh = optimize(input, opts)?;
    ImprovementRatios::from_reports(&sh.report, &nrh.report, &oh.report)
}
