//! Ring-structured network geometry.
//!
//! Stations are spread over `R` concentric distance rings around a gateway at
//! ring 0. Ring `r` holds `B * c^(r-1)` stations, where `B` is the number of
//! branches and `c` the tree children ratio. The outermost ring always sits at
//! the maximum distance `D`; the inner rings are placed by one of three
//! spreading models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Placement rule for ring distances between the gateway and the last ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spreading {
    /// Ring `r` sits at `r * (D / R)`.
    #[default]
    Equidistant,
    /// Short gaps near the gateway, growing outwards at Fibonacci rate:
    /// ring `r` sits at `F(r+1) * D / F(R+1)`.
    Fibonacci,
    /// The Fibonacci gap sequence applied in reverse order: large gaps near
    /// the gateway, short gaps near the last ring.
    ReverseFibonacci,
}

impl Spreading {
    pub const ALL: [Spreading; 3] = [
        Spreading::Equidistant,
        Spreading::Fibonacci,
        Spreading::ReverseFibonacci,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Spreading::Equidistant => "equidistant",
            Spreading::Fibonacci => "fibonacci",
            Spreading::ReverseFibonacci => "reverse-fibonacci",
        }
    }
}

/// `n`-th Fibonacci number with `F(1) = F(2) = 1`.
fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let next = a + b;
        a = b;
        b = next;
    }
    a
}

/// Distance of ring `r` under Fibonacci spreading; `r = 0` is the gateway.
fn fibonacci_distance(r: usize, ring_count: usize, max_distance_m: f64) -> f64 {
    if r == 0 {
        return 0.0;
    }
    if r == ring_count {
        return max_distance_m;
    }
    let ratio = fibonacci(r + 1) as f64 / fibonacci(ring_count + 1) as f64;
    ratio * max_distance_m
}

/// Distance from the gateway of ring `r` (1-based) under the given spreading.
///
/// The last ring is always at exactly `max_distance_m`.
pub fn ring_distance(
    spreading: Spreading,
    r: usize,
    ring_count: usize,
    max_distance_m: f64,
) -> Result<f64> {
    if ring_count == 0 {
        return Err(Error::validation("ring_count", "must be at least 1"));
    }
    if r == 0 || r > ring_count {
        return Err(Error::validation(
            "ring",
            format!("ring index {r} out of range 1..={ring_count}"),
        ));
    }
    if !max_distance_m.is_finite() || max_distance_m <= 0.0 {
        return Err(Error::validation("max_distance_m", "must be positive"));
    }
    if ring_count > 80 {
        // Fibonacci numbers above F(82) do not fit in u64.
        return Err(Error::validation("ring_count", "must be at most 80"));
    }
    let d = match spreading {
        Spreading::Equidistant => {
            if r == ring_count {
                max_distance_m
            } else {
                max_distance_m * (r as f64 / ring_count as f64)
            }
        }
        Spreading::Fibonacci => fibonacci_distance(r, ring_count, max_distance_m),
        Spreading::ReverseFibonacci => {
            if r == ring_count {
                max_distance_m
            } else {
                // Cumulative sum of the Fibonacci inter-ring gaps in reverse
                // order: gap k of this model is gap (R + 1 - k) of Fibonacci.
                let mut d = 0.0;
                for k in 1..=r {
                    let i = ring_count + 1 - k;
                    d += fibonacci_distance(i, ring_count, max_distance_m)
                        - fibonacci_distance(i - 1, ring_count, max_distance_m);
                }
                d
            }
        }
    };
    Ok(d)
}

/// A fully populated ring network.
///
/// Immutable after construction; safe to share read-only across workers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingNetwork {
    /// Distance of the outermost ring, meters.
    pub max_distance_m: f64,
    /// Number of rings `R`.
    pub ring_count: usize,
    /// Tree children ratio `c`.
    pub children_ratio: u64,
    /// Number of branches `B`.
    pub branch_count: u64,
    pub spreading: Spreading,
    /// Ring distances in meters, index `r - 1`; strictly increasing and
    /// ending at `max_distance_m`.
    pub distances_m: Vec<f64>,
    /// Stations per branch: `sum over r of c^(r-1)`.
    pub branch_load: u64,
    /// Total stations: `B * branch_load`.
    pub station_count: u64,
}

impl RingNetwork {
    pub fn new(
        max_distance_m: f64,
        ring_count: usize,
        children_ratio: u64,
        branch_count: u64,
        spreading: Spreading,
    ) -> Result<Self> {
        if ring_count == 0 {
            return Err(Error::validation("rings", "must be at least 1"));
        }
        if children_ratio == 0 {
            return Err(Error::validation("children_ratio", "must be at least 1"));
        }
        if branch_count == 0 {
            return Err(Error::validation("branches", "must be at least 1"));
        }
        if !max_distance_m.is_finite() || max_distance_m <= 0.0 {
            return Err(Error::validation("max_distance_m", "must be positive"));
        }

        let mut branch_load: u64 = 0;
        for r in 1..=ring_count {
            let per_ring = checked_pow(children_ratio, (r - 1) as u32)?;
            branch_load = branch_load
                .checked_add(per_ring)
                .ok_or_else(too_many_stations)?;
        }
        let station_count = branch_count
            .checked_mul(branch_load)
            .ok_or_else(too_many_stations)?;

        let mut distances_m = Vec::with_capacity(ring_count);
        for r in 1..=ring_count {
            distances_m.push(ring_distance(spreading, r, ring_count, max_distance_m)?);
        }
        debug_assert!(distances_m.windows(2).all(|w| w[0] < w[1]));

        Ok(RingNetwork {
            max_distance_m,
            ring_count,
            children_ratio,
            branch_count,
            spreading,
            distances_m,
            branch_load,
            station_count,
        })
    }

    /// Stations in ring `r` (1-based): `B * c^(r-1)`.
    pub fn stations_in_ring(&self, r: usize) -> Result<u64> {
        self.check_ring(r)?;
        Ok(self.branch_count * checked_pow(self.children_ratio, (r - 1) as u32)?)
    }

    /// Distance of ring `r` from the gateway; `r = 0` is the gateway itself.
    pub fn distance(&self, r: usize) -> Result<f64> {
        if r == 0 {
            return Ok(0.0);
        }
        self.check_ring(r)?;
        Ok(self.distances_m[r - 1])
    }

    /// Radial hop distance from ring `r` to ring `r - hop` within a branch.
    pub fn hop_distance(&self, r: usize, hop: usize) -> Result<f64> {
        self.check_ring(r)?;
        if hop == 0 || hop > r {
            return Err(Error::validation(
                "hop",
                format!("hop length {hop} invalid for ring {r}"),
            ));
        }
        Ok(self.distance(r)? - self.distance(r - hop)?)
    }

    fn check_ring(&self, r: usize) -> Result<()> {
        if r == 0 || r > self.ring_count {
            return Err(Error::validation(
                "ring",
                format!("ring index {r} out of range 1..={}", self.ring_count),
            ));
        }
        Ok(())
    }
}

fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or_else(too_many_stations)
}

fn too_many_stations() -> Error {
    Error::validation("children_ratio", "station count overflows u64")
}
