//! Deterministic stream derivation.
//!
//! Every Monte Carlo job owns a ChaCha12 stream keyed by (master seed,
//! experiment kind, cell index, replication index). Streams for distinct
//! coordinates are independent by construction, so results cannot depend on
//! worker count or scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Derive the random stream for one job.
pub fn stream(master: u64, kind_id: u8, cell: u64, rep: u64) -> ChaCha12Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master.to_le_bytes());
    seed[8] = kind_id;
    seed[16..24].copy_from_slice(&cell.to_le_bytes());
    seed[24..].copy_from_slice(&rep.to_le_bytes());
    ChaCha12Rng::from_seed(seed)
}
