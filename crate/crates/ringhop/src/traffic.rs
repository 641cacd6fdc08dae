//! Hop vectors, connectivity and payload/packet accounting.
//!
//! A hop vector assigns every ring `r` a hop length `1..=r`; ring `r`
//! transmits to ring `r - hop(r)` (ring 0 is the gateway). Payloads flow
//! towards the gateway along those hops, being aggregated into fixed-size
//! packets at every relay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hop-combination enumeration refuses ring counts above this unless
/// explicitly overridden: the set grows as `R!`.
pub const MAX_ENUMERATED_RINGS: usize = 10;

/// Per-ring hop lengths. Entry `r - 1` is the hop length of ring `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HopVector {
    hops: Vec<u8>,
}

impl HopVector {
    pub fn new(hops: Vec<u8>) -> Result<Self> {
        for (i, &h) in hops.iter().enumerate() {
            let r = i + 1;
            if h == 0 || h as usize > r {
                return Err(Error::validation(
                    "hops",
                    format!("ring {r} hop length {h} outside 1..={r}"),
                ));
            }
        }
        Ok(HopVector { hops })
    }

    /// Every ring transmits straight to the gateway: hop(r) = r.
    pub fn single_hop(ring_count: usize) -> Self {
        HopVector {
            hops: (1..=ring_count as u8).collect(),
        }
    }

    /// Every ring transmits to the adjacent lower ring: hop(r) = 1.
    pub fn next_ring_hop(ring_count: usize) -> Self {
        HopVector {
            hops: vec![1; ring_count],
        }
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    /// Hop length of ring `r` (1-based).
    pub fn hop(&self, r: usize) -> usize {
        self.hops[r - 1] as usize
    }

    /// Destination ring of ring `r`; 0 is the gateway.
    pub fn destination(&self, r: usize) -> usize {
        r - self.hop(r)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.hops
    }

    /// Position of this vector in the enumeration order of `combo_count`.
    /// Hop vectors order lexicographically, ring 1 most significant.
    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for (i, &h) in self.hops.iter().enumerate() {
            idx = idx * (i as u64 + 1) + (h as u64 - 1);
        }
        idx
    }

    /// Inverse of [`HopVector::index`].
    pub fn from_index(ring_count: usize, index: u64) -> Self {
        let mut hops = vec![0u8; ring_count];
        decode_combo(index, &mut hops);
        HopVector { hops }
    }
}

/// Number of hop combinations for `ring_count` rings: `R!`.
pub fn combo_count(ring_count: usize) -> Result<u64> {
    let mut n: u64 = 1;
    for r in 2..=ring_count as u64 {
        n = n
            .checked_mul(r)
            .ok_or_else(|| Error::Guard(format!("{ring_count}! does not fit in u64")))?;
    }
    Ok(n)
}

/// Write the hop vector with the given enumeration index into `out`.
pub(crate) fn decode_combo(index: u64, out: &mut [u8]) {
    let mut k = index;
    for r in (1..=out.len()).rev() {
        out[r - 1] = (k % r as u64) as u8 + 1;
        k /= r as u64;
    }
    debug_assert_eq!(k, 0, "combo index out of range");
}

/// Materialize the full hop-combination set, in enumeration order (the hop of
/// the last ring varies fastest). Refuses `ring_count > MAX_ENUMERATED_RINGS`
/// unless `allow_large` is set.
pub fn enumerate_hop_combinations(ring_count: usize, allow_large: bool) -> Result<Vec<HopVector>> {
    if ring_count == 0 {
        return Err(Error::validation("rings", "must be at least 1"));
    }
    if ring_count > MAX_ENUMERATED_RINGS && !allow_large {
        return Err(Error::Guard(format!(
            "enumerating {ring_count}! hop combinations exceeds the {MAX_ENUMERATED_RINGS}-ring guard"
        )));
    }
    let n = combo_count(ring_count)?;
    let mut out = Vec::with_capacity(n as usize);
    for k in 0..n {
        out.push(HopVector::from_index(ring_count, k));
    }
    Ok(out)
}

/// Which origin rings' payloads each ring aggregates, as an `R x R` 0/1
/// matrix: row `r`, column `i` is set when ring `r` lies on the forwarding
/// chain of ring `i` (diagonal always set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityMatrix {
    size: usize,
    rows: Vec<u64>,
}

impl ConnectivityMatrix {
    pub fn from_hops(hops: &HopVector) -> Self {
        let size = hops.len();
        assert!(size <= 64, "connectivity matrix limited to 64 rings");
        let mut rows = vec![0u64; size];
        for i in 1..=size {
            // Walk the chain i -> i - hop(i) -> ... until the gateway,
            // marking every relay (and the origin itself).
            let mut j = i;
            loop {
                rows[j - 1] |= 1 << (i - 1);
                let next = hops.destination(j);
                if next == 0 {
                    break;
                }
                j = next;
            }
        }
        ConnectivityMatrix { size, rows }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at row `r`, column `i` (both 1-based).
    pub fn get(&self, r: usize, i: usize) -> bool {
        assert!(r >= 1 && r <= self.size && i >= 1 && i <= self.size);
        self.rows[r - 1] & (1 << (i - 1)) != 0
    }
}

/// Payloads aggregated per station in ring `r`: its own plus one per marked
/// descendant, weighted by the per-station descendant count `c^(i-r)`.
pub fn payloads_aggregated(lambda: &ConnectivityMatrix, children_ratio: u64, r: usize) -> u64 {
    let mut total = 0u64;
    for i in r..=lambda.size() {
        if lambda.get(r, i) {
            total += children_ratio.pow((i - r) as u32);
        }
    }
    total
}

/// Packets a station must transmit to carry `n_p` payloads when a packet
/// holds at most `max_payloads`: `ceil(n_p / max_payloads)`.
pub fn packets_tx(n_p: u64, max_payloads: u64) -> u64 {
    n_p.div_ceil(max_payloads)
}

/// Rings that transmit directly to ring `r` under `hops`, with the number of
/// direct children each contributes per parent station (`c^(j-r)`). `r = 0`
/// queries the gateway; its counts are per branch (`c^(j-1)`).
pub fn direct_child_rings(hops: &HopVector, children_ratio: u64, r: usize) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for j in r + 1..=hops.len() {
        if hops.destination(j) == r {
            let exp = if r == 0 { j - 1 } else { j - r };
            out.push((j, children_ratio.pow(exp as u32)));
        }
    }
    out
}

/// Fixed-size data packets and the payload budget per packet.
///
/// A packet of `packet_bytes` carries a `header_bytes` header and up to
/// `max_payloads` payloads of `payload_bytes` each, padded up to the fixed
/// size. With aggregation disabled a packet carries exactly one payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketConfig {
    pub payload_bytes: u32,
    pub header_bytes: u32,
    pub packet_bytes: u32,
    pub max_payloads: u64,
}

impl PacketConfig {
    pub fn new(
        payload_bytes: u32,
        header_bytes: u32,
        packet_bytes: u32,
        aggregation: bool,
    ) -> Result<Self> {
        if payload_bytes == 0 {
            return Err(Error::validation(
                "packet.payload_bytes",
                "must be positive",
            ));
        }
        if (packet_bytes as u64) < header_bytes as u64 + payload_bytes as u64 {
            return Err(Error::validation(
                "packet.packet_bytes",
                format!(
                    "packet of {packet_bytes} bytes cannot hold a {header_bytes}-byte header plus one {payload_bytes}-byte payload"
                ),
            ));
        }
        let max_payloads = if aggregation {
            ((packet_bytes - header_bytes) / payload_bytes) as u64
        } else {
            1
        };
        Ok(PacketConfig {
            payload_bytes,
            header_bytes,
            packet_bytes,
            max_payloads,
        })
    }

    /// Packet length on air, in bits.
    pub fn packet_bits(&self) -> f64 {
        self.packet_bytes as f64 * 8.0
    }
}

impl Default for PacketConfig {
    /// 65-byte packets carrying 15-byte payloads behind a 2-byte header,
    /// which aggregates up to 4 payloads per packet.
    fn default() -> Self {
        PacketConfig::new(15, 2, 65, true).expect("default packet config is valid")
    }
}
