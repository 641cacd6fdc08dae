//! Optimal-hop search throughput: sequential loop vs rayon, and pruned vs
//! exhaustive candidate sets, on networks of growing ring count.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ringhop::catalog;
use ringhop::radio::{max_range, RadioEnvironment};
use ringhop::routing::{optimize, SearchInput, SearchOpts};
use ringhop::topology::{RingNetwork, Spreading};
use ringhop::traffic::PacketConfig;

struct Case {
    net: RingNetwork,
    tx: ringhop::radio::TransceiverModel,
    env: RadioEnvironment,
    packet: PacketConfig,
}

impl Case {
    fn new(transceiver: &str, rings: usize, children: u64) -> Self {
        let tx = catalog::lookup(transceiver).unwrap();
        let env = RadioEnvironment::default();
        let net = RingNetwork::new(
            max_range(&tx, &env),
            rings,
            children,
            1,
            Spreading::Equidistant,
        )
        .unwrap();
        Case {
            net,
            tx,
            env,
            packet: PacketConfig::default(),
        }
    }

    fn input(&self) -> SearchInput<'_> {
        SearchInput {
            net: &self.net,
            tx: &self.tx,
            env: &self.env,
            packet: &self.packet,
        }
    }
}

fn bench_optimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize");
    group.sample_size(10);

    for (label, rings) in [("R7", 7usize), ("R8", 8), ("R9", 9)] {
        let case = Case::new("CC1200", rings, 3);
        let sequential = SearchOpts {
            force_sequential: true,
            ..SearchOpts::default()
        };
        group.bench_with_input(BenchmarkId::new("sequential", label), &case, |b, case| {
            b.iter(|| optimize(&case.input(), &sequential).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("rayon", label), &case, |b, case| {
            b.iter(|| optimize(&case.input(), &SearchOpts::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("candidate-set");
    group.sample_size(10);

    let case = Case::new("CC1200", 4, 3);
    group.bench_function("pruned/R4", |b| {
        b.iter(|| optimize(&case.input(), &SearchOpts::default()).unwrap())
    });
    group.bench_function("exhaustive/R4", |b| {
        let opts = SearchOpts {
            exhaustive: true,
            ..SearchOpts::default()
        };
        b.iter(|| optimize(&case.input(), &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_optimize, bench_exhaustive);
criterion_main!(benches);
