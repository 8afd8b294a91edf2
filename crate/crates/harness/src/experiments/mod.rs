//! The eight experiments plus batch certification.
//!
//! Each experiment follows the same shape: consume its typed parameters
//! from [`Params`] (rejecting leftovers), compute typed cells trial-parallel
//! through [`run_indexed`], then render a [`Report`]. The typed compute
//! functions are public so tests can assert on structure instead of parsing
//! CSV.
//!
//! Stream discipline: trial t of cell c under experiment tag g draws from
//! `RandomStream::derive(master_seed, g, c·trials + t)` and nothing else, so
//! any single trial can be replayed in isolation and worker scheduling
//! cannot leak between trials.

use polyperm::RandomStream;

pub mod det;
pub mod disc;
pub mod dist;
pub mod perm;
pub mod poly;

/// Experiment tags feeding the stream derivation. Frozen: changing one
/// silently reshuffles every published run of that experiment.
pub mod tags {
    pub const IRREDUCIBILITY_RATE: u64 = 1;
    pub const TV_DISTANCE: u64 = 2;
    pub const DISTRIBUTION_AUDIT: u64 = 3;
    pub const DISC_STATS: u64 = 4;
    pub const TABLE1_SCAN: u64 = 5;
    pub const DET_SQUARE: u64 = 6;
    pub const CYCLE_EVENTS: u64 = 7;
    pub const SMALL_DIVISOR_RATE: u64 = 8;
}

/// The per-trial stream for cell `cell` (0-based ordinal in report order).
pub fn trial_stream(seed: u64, tag: u64, cell: usize, trials: u64, trial: u64) -> RandomStream {
    RandomStream::derive(seed, tag, (cell as u64) * trials + trial)
}
