//! Energy modeling and routing optimization for low-power wide-area uplinks
//! arranged in distance rings.
//!
//! Stations sit on `R` concentric rings around a gateway and forward their
//! payloads upstream along per-ring hops, aggregating what they receive from
//! their children into fixed-size packets. Given a transceiver's discrete
//! power and rate levels and a log-distance path-loss model, this crate
//! computes per-ring TX/RX energies and searches all `R!` hop combinations
//! and feasible transmission configurations for the assignment minimizing
//! the bottleneck station's energy — the station that dies first and thereby
//! ends the network's lifetime.
//!
//! The search is data-parallel over hop combinations (rayon, behind the
//! default `parallel` feature) and reduces with a total tie-break order, so
//! results are identical for any worker count. See the `ringhop-cli` crate
//! for the command-line front end.
//!
//! ```
//! use ringhop::catalog;
//! use ringhop::radio::{max_range, RadioEnvironment};
//! use ringhop::routing::{optimize, SearchInput, SearchOpts};
//! use ringhop::topology::{RingNetwork, Spreading};
//! use ringhop::traffic::PacketConfig;
//!
//! let tx = catalog::lookup("CC1200").unwrap();
//! let env = RadioEnvironment::default();
//! let net = RingNetwork::new(max_range(&tx, &env), 3, 2, 1, Spreading::Equidistant)?;
//! let packet = PacketConfig::default();
//! let input = SearchInput { net: &net, tx: &tx, env: &env, packet: &packet };
//!
//! let result = optimize(&input, &SearchOpts::default())?;
//! assert_eq!(result.hops.len(), 3);
//! assert!(result.report.e_bt_j > 0.0);
//! # Ok::<(), ringhop::Error>(())
//! ```

pub mod catalog;
pub mod energy;
pub mod error;
pub mod output;
pub mod radio;
pub mod routing;
pub mod scenario;
pub mod topology;
pub mod traffic;

pub use error::{Error, Result};
