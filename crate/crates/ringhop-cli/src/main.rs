use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ringhop::catalog;
use ringhop::output::{bundle_csv, sweep_csv, to_json, write_text};
use ringhop::routing::{with_threads, RoutingModel, SearchOpts};
use ringhop::scenario::{self, load_scenario, load_sweep_spec, Scenario};
use ringhop::Result;

#[derive(Parser)]
#[command(
    name = "ringhop",
    version,
    about = "Uplink energy modeling and bottleneck-minimizing hop optimization \
             for ring-structured low-power wide-area networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario's routing models and emit the result bundle.
    Optimize {
        /// Scenario JSON file.
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force one payload per packet.
        #[arg(long)]
        no_aggregation: bool,
        /// Search every feasible (power, rate) pair instead of the pruned
        /// candidate set.
        #[arg(long)]
        exhaustive: bool,
        /// Worker threads (default: RINGHOP_THREADS or all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Lift the ring-count and joint-configuration guards.
        #[arg(long)]
        override_guards: bool,
    },
    /// Run a structure sweep and emit one row per grid point.
    Sweep {
        /// Sweep specification JSON file.
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_aggregation: bool,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        override_guards: bool,
    },
    /// Print the compiled-in transceiver catalogs.
    Catalog {
        /// Emit the catalogs as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the per-ring reference table of the bundled base scenario:
    /// single-hop and optimal-hop with and without payload aggregation.
    Table8 {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn effective_threads(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("RINGHOP_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Optimize {
            scenario,
            format,
            out,
            no_aggregation,
            exhaustive,
            threads,
            override_guards,
        } => {
            let mut scenario = load_scenario(&scenario)?;
            if no_aggregation {
                scenario.set_aggregation(false)?;
            }
            let opts = SearchOpts {
                exhaustive,
                override_guards,
                ..SearchOpts::default()
            };
            let bundle = with_threads(effective_threads(threads), || {
                scenario::run(&scenario, &opts)
            })??;
            let text = match format {
                Format::Csv => bundle_csv(&bundle),
                Format::Json => to_json(&bundle)?,
            };
            write_text(&text, out.as_deref())
        }
        Command::Sweep {
            spec,
            format,
            out,
            no_aggregation,
            exhaustive,
            threads,
            override_guards,
        } => {
            let mut spec = load_sweep_spec(&spec)?;
            if no_aggregation {
                spec.set_aggregation(false);
            }
            let opts = SearchOpts {
                exhaustive,
                override_guards,
                ..SearchOpts::default()
            };
            let table =
                with_threads(effective_threads(threads), || scenario::sweep(&spec, &opts))??;
            let text = match format {
                Format::Csv => sweep_csv(&table),
                Format::Json => to_json(&table)?,
            };
            write_text(&text, out.as_deref())
        }
        Command::Catalog { json, out } => {
            let models = catalog::builtin();
            let text = if json {
                to_json(&models)?
            } else {
                catalog_text(&models)
            };
            write_text(&text, out.as_deref())
        }
        Command::Table8 { out, threads } => {
            let text = with_threads(effective_threads(threads), reference_table)??;
            write_text(&text, out.as_deref())
        }
    }
}

fn catalog_text(models: &[ringhop::radio::TransceiverModel]) -> String {
    let mut text = String::new();
    for tx in models {
        text.push_str(&format!(
            "{}  (RX current {} mA)\n",
            tx.name, tx.rx_current_ma
        ));
        text.push_str("  power levels:\n");
        for (i, p) in tx.power_levels.iter().enumerate() {
            text.push_str(&format!(
                "    {:>2}: {:>6.1} dBm  {:>6.1} mA\n",
                i + 1,
                p.p_tx_dbm,
                p.i_tx_ma
            ));
        }
        text.push_str("  rate levels:\n");
        for (i, s) in tx.rate_levels.iter().enumerate() {
            text.push_str(&format!(
                "    {:>2}: {:>9} bps  {:>6.1} dBm sensitivity\n",
                i + 1,
                s.rate_bps,
                s.sensitivity_dbm
            ));
        }
        text.push('\n');
    }
    text
}

/// The 7-ring, children-ratio-3, CC1200 base scenario at full coverage range.
const BASE_SCENARIO: &str = r#"{
    "id": "1.1",
    "rings": 7,
    "children_ratio": 3,
    "branches": 1,
    "spreading": "equidistant",
    "transceiver": "CC1200"
}"#;

fn reference_table() -> Result<String> {
    let opts = SearchOpts::default();
    let scenario = Scenario::from_json(BASE_SCENARIO, "1.1")?;
    let mut no_agg = scenario.clone();
    no_agg.set_aggregation(false)?;

    let single = ringhop::routing::solve(RoutingModel::SingleHop, &scenario.input(), &opts)?;
    let optimal = ringhop::routing::solve(RoutingModel::OptimalHop, &scenario.input(), &opts)?;
    let optimal_no_agg = ringhop::routing::solve(RoutingModel::OptimalHop, &no_agg.input(), &opts)?;

    let p_max = scenario.tx.power_levels.len();
    let s_max = scenario.tx.rate_levels.len();
    let mut text = format!(
        "scenario {}: {} rings, children ratio {}, {} branch(es), {} spreading, {} at D = {:.1} m\n\n",
        scenario.id,
        scenario.net.ring_count,
        scenario.net.children_ratio,
        scenario.net.branch_count,
        scenario.net.spreading.name(),
        scenario.tx.name,
        scenario.net.max_distance_m,
    );
    text.push_str(&format!(
        "{:<5} {:<28} {:<28} {:<28}\n",
        "", "single-hop", "optimal-hop (no agg.)", "optimal-hop"
    ));
    text.push_str(&format!(
        "{:<5} {:<28} {:<28} {:<28}\n",
        "ring",
        format!("p/{p_max} s/{s_max} d  n_p (n_DP)"),
        format!("p/{p_max} s/{s_max} d  n_p (n_DP)"),
        format!("p/{p_max} s/{s_max} d  n_p (n_DP)"),
    ));
    for r in 1..=scenario.net.ring_count {
        let cell = |result: &ringhop::routing::RoutingResult| {
            let cfg = result.configs.ring(r);
            format!(
                "{:<4} {:<4} {:<2} {} ({})",
                cfg.power_level,
                cfg.rate_level,
                result.hops.hop(r),
                result.payloads[r - 1],
                result.packets[r - 1],
            )
        };
        text.push_str(&format!(
            "{:<5} {:<28} {:<28} {:<28}\n",
            r,
            cell(&single),
            cell(&optimal_no_agg),
            cell(&optimal),
        ));
    }
    text.push('\n');
    for result in [&single, &optimal_no_agg, &optimal] {
        let label = match (result.model, result.payloads == result.packets) {
            (RoutingModel::OptimalHop, true) => "optimal-hop (no agg.)",
            (RoutingModel::OptimalHop, false) => "optimal-hop",
            _ => result.model.name(),
        };
        text.push_str(&format!(
            "{label}: bottleneck ring {} at {} mJ, network total {} mJ, slot {:.2} s\n",
            result.report.bottleneck_ring,
            ringhop::output::format_sig6(result.report.e_bt_j * 1e3),
            ringhop::output::format_sig6(result.report.e_n_j * 1e3),
            result.slot_time_s,
        ));
    }
    Ok(text)
}
