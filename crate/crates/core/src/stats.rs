//! Binomial frequency estimates with normal-approximation confidence radii.

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

/// Hit count out of a trial count, with the derived frequency statistics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FreqEstimate {
    pub hits: u64,
    pub trials: u64,
}

impl FreqEstimate {
    pub fn new(hits: u64, trials: u64) -> FreqEstimate {
        assert!(trials >= 1, "frequency needs at least one trial");
        assert!(hits <= trials, "more hits than trials");
        FreqEstimate { hits, trials }
    }

    pub fn frequency(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    /// 95% binomial confidence radius (Wald): z·sqrt(p̂(1−p̂)/trials).
    /// Zero when the frequency is exactly 0 or 1 — callers comparing
    /// "beyond radii" get the strict reading in the degenerate case.
    pub fn ci_radius(&self) -> f64 {
        let p = self.frequency();
        Z95 * (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Are two estimates separated beyond both radii? (A one-sided
    /// "self is genuinely larger" check.)
    pub fn exceeds(&self, other: &FreqEstimate) -> bool {
        self.frequency() - self.ci_radius() > other.frequency() + other.ci_radius()
    }
}
