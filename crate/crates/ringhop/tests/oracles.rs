//! Independent brute-force oracles for the traffic accounting and the search.
//!
//! The payload counts used throughout the energy model come from a
//! connectivity-matrix formula; here they are checked against an explicit
//! per-node tree simulation that builds every station and forwards every
//! payload individually.

use ringhop::catalog;
use ringhop::radio::{max_range, RadioEnvironment};
use ringhop::routing::{optimize, SearchInput, SearchOpts};
use ringhop::topology::{RingNetwork, Spreading};
use ringhop::traffic::{
    direct_child_rings, enumerate_hop_combinations, packets_tx, payloads_aggregated,
    ConnectivityMatrix, HopVector, PacketConfig,
};

/// Build one branch node by node and push every payload along its hops.
/// Returns the per-node aggregated payload counts by ring, plus the total
/// arriving at the gateway.
fn simulate_branch(hops: &HopVector, c: u64) -> (Vec<Vec<u64>>, u64) {
    let rings = hops.len();
    let mut nodes: Vec<Vec<u64>> = (0..rings)
        .map(|r| vec![1u64; (c as usize).pow(r as u32)])
        .collect();
    let mut gateway = 0u64;
    // Rings transmit outermost first; every reception comes from a higher
    // ring, so each ring's counts are complete when its turn comes.
    for j in (1..=rings).rev() {
        let dest = hops.destination(j);
        let span = (c as usize).pow((j - dest.max(1)) as u32);
        for idx in 0..nodes[j - 1].len() {
            let carried = nodes[j - 1][idx];
            if dest == 0 {
                gateway += carried;
            } else {
                nodes[dest - 1][idx / span] += carried;
            }
        }
    }
    (nodes, gateway)
}

#[test]
fn payload_formula_matches_tree_simulation() {
    for rings in 1..=5usize {
        for c in 1..=3u64 {
            for hops in enumerate_hop_combinations(rings, false).unwrap() {
                let (nodes, _) = simulate_branch(&hops, c);
                let lambda = ConnectivityMatrix::from_hops(&hops);
                for r in 1..=rings {
                    let expected = payloads_aggregated(&lambda, c, r);
                    for (i, &count) in nodes[r - 1].iter().enumerate() {
                        assert_eq!(
                            count,
                            expected,
                            "hops {:?} c={c} ring {r} node {i}",
                            hops.as_slice()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn every_payload_reaches_the_gateway_once() {
    for rings in 1..=6usize {
        for c in [1u64, 2, 3] {
            let branch_load: u64 = (0..rings).map(|r| c.pow(r as u32)).sum();
            for hops in enumerate_hop_combinations(rings, false).unwrap() {
                let (_, gateway) = simulate_branch(&hops, c);
                assert_eq!(gateway, branch_load, "hops {:?} c={c}", hops.as_slice());

                // Same statement through the formula route.
                let lambda = ConnectivityMatrix::from_hops(&hops);
                let arriving: u64 = (1..=rings)
                    .filter(|&j| hops.destination(j) == 0)
                    .map(|j| c.pow((j - 1) as u32) * payloads_aggregated(&lambda, c, j))
                    .sum();
                assert_eq!(arriving, branch_load, "hops {:?} c={c}", hops.as_slice());
            }
        }
    }
}

#[test]
fn packets_received_balance_packets_transmitted() {
    // Per branch: every transmitted packet is received exactly once, either
    // by a parent station or by the gateway.
    let c = 3u64;
    for rings in 1..=5usize {
        for max_payloads in [1u64, 4] {
            for hops in enumerate_hop_combinations(rings, false).unwrap() {
                let lambda = ConnectivityMatrix::from_hops(&hops);
                let n_dp: Vec<u64> = (1..=rings)
                    .map(|r| packets_tx(payloads_aggregated(&lambda, c, r), max_payloads))
                    .collect();

                let transmitted: u64 = (1..=rings)
                    .map(|r| c.pow((r - 1) as u32) * n_dp[r - 1])
                    .sum();

                let mut received: u64 = direct_child_rings(&hops, c, 0)
                    .iter()
                    .map(|&(j, per_branch)| per_branch * n_dp[j - 1])
                    .sum();
                for r in 1..=rings {
                    let per_station: u64 = direct_child_rings(&hops, c, r)
                        .iter()
                        .map(|&(j, mult)| mult * n_dp[j - 1])
                        .sum();
                    received += c.pow((r - 1) as u32) * per_station;
                }

                assert_eq!(
                    transmitted,
                    received,
                    "hops {:?} max_payloads={max_payloads}",
                    hops.as_slice()
                );
            }
        }
    }
}

#[test]
fn aggregation_never_hurts_the_bottleneck() {
    let env = RadioEnvironment::default();
    let scenarios: Vec<(usize, u64, &str, Spreading)> = vec![
        (7, 3, "CC1200", Spreading::Equidistant),
        (7, 2, "CC1200", Spreading::Equidistant),
        (7, 3, "CC1200", Spreading::Fibonacci),
        (7, 3, "CC1200", Spreading::ReverseFibonacci),
        (5, 3, "CC1100", Spreading::Equidistant),
        (5, 3, "Si4644", Spreading::Equidistant),
        (5, 3, "SX1272", Spreading::Equidistant),
    ];
    for (rings, c, name, spreading) in scenarios {
        let tx = catalog::lookup(name).unwrap();
        let net = RingNetwork::new(max_range(&tx, &env), rings, c, 1, spreading).unwrap();
        let solve = |aggregation: bool| {
            let packet = PacketConfig::new(15, 2, 65, aggregation).unwrap();
            let input = SearchInput {
                net: &net,
                tx: &tx,
                env: &env,
                packet: &packet,
            };
            optimize(&input, &SearchOpts::default())
                .unwrap()
                .report
                .e_bt_j
        };
        let with_aggregation = solve(true);
        let without = solve(false);
        assert!(
            with_aggregation <= without,
            "{name} R={rings} c={c} {spreading:?}: {with_aggregation} > {without}"
        );
    }
}

#[test]
fn repeated_runs_serialize_identically() {
    let tx = catalog::lookup("CC1200").unwrap();
    let env = RadioEnvironment::default();
    let net = RingNetwork::new(max_range(&tx, &env), 6, 3, 1, Spreading::Fibonacci).unwrap();
    let packet = PacketConfig::default();
    let input = SearchInput {
        net: &net,
        tx: &tx,
        env: &env,
        packet: &packet,
    };
    let a = optimize(&input, &SearchOpts::default()).unwrap();
    let b = optimize(&input, &SearchOpts::default()).unwrap();
    assert_eq!(
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap()
    );
}
