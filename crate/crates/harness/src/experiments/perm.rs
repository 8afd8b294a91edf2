//! The 4-permutation window experiment: how often all four permutations can
//! write some l ∈ [k, 2k] as a sum of cycle lengths, with an optional
//! per-permutation slack, plus the two single-permutation cycle events.

use std::time::Instant;

use polyperm::{Error, FreqEstimate, Permutation, Result};

use crate::config::Params;
use crate::experiments::{tags, trial_stream};
use crate::report::{float_cell, Report};
use crate::runner::run_indexed;

pub const PERMUTATIONS_PER_TRIAL: u64 = 4;

pub struct CycleCfg {
    pub n: usize,
    pub k: Vec<usize>,
    pub lambda: usize,
    pub trials: u64,
    /// `has_double_divisor` threshold: some l > threshold divides two cycle
    /// lengths.
    pub dd_threshold: usize,
    /// `has_rough_cycle` window exponents and prime floor: some cycle length
    /// in [n^a, n^b] has a prime factor above the floor.
    pub rough_a: f64,
    pub rough_b: f64,
    pub prime_floor: usize,
    pub seed: u64,
}

impl CycleCfg {
    pub fn from_params(p: &Params) -> Result<CycleCfg> {
        let n = p.get_usize("n", 256)?;
        // default floor: ⌊ln³ n⌋, the usual "log cubed" reading
        let ln = (n.max(2) as f64).ln();
        let default_floor = (ln * ln * ln).floor() as usize;
        let cfg = CycleCfg {
            n,
            k: p.get_usize_list("k", &[8, 16, 32, 64])?,
            lambda: p.get_usize("lambda", 0)?,
            trials: p.get_u64("trials", 10_000)?,
            dd_threshold: p.get_usize("dd_threshold", 5)?,
            rough_a: p.get_f64("rough_a", 0.25)?,
            rough_b: p.get_f64("rough_b", 0.75)?,
            prime_floor: p.get_usize("prime_floor", default_floor)?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        if cfg.n < 2 {
            return Err(Error::usage("n must be >= 2"));
        }
        if cfg.trials == 0 {
            return Err(Error::usage("trials must be >= 1"));
        }
        for &k in &cfg.k {
            if k < 1 {
                return Err(Error::usage("k must be >= 1"));
            }
            if 2 * k >= cfg.n {
                return Err(Error::usage(format!(
                    "window [k, 2k] = [{k}, {}] does not fit below n = {}",
                    2 * k,
                    cfg.n
                )));
            }
        }
        if cfg.dd_threshold < 1 {
            return Err(Error::usage("dd_threshold must be >= 1"));
        }
        if !(0.0..1.0).contains(&cfg.rough_a)
            || !(cfg.rough_a..=1.0).contains(&cfg.rough_b)
            || cfg.rough_a >= cfg.rough_b
        {
            return Err(Error::usage(format!(
                "rough-cycle exponents need 0 <= a < b <= 1, got a={} b={}",
                cfg.rough_a, cfg.rough_b
            )));
        }
        Ok(cfg)
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("dd_threshold".into(), self.dd_threshold.to_string()),
            (
                "k".into(),
                self.k.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
            ),
            ("lambda".into(), self.lambda.to_string()),
            ("n".into(), self.n.to_string()),
            ("prime_floor".into(), self.prime_floor.to_string()),
            ("rough_a".into(), float_cell(self.rough_a)),
            ("rough_b".into(), float_cell(self.rough_b)),
            ("seed".into(), self.seed.to_string()),
            ("trials".into(), self.trials.to_string()),
        ]
    }
}

pub struct CycleCell {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub trials: u64,
    /// Quadruples where ⋀ᵢ achievable(σᵢ) meets [k, 2k] exactly.
    pub window_hits: u64,
    /// Same with each permutation's achievable set smeared up by λ first.
    pub slack_hits: u64,
    /// Per-permutation counts over 4·trials samples.
    pub dd_hits: u64,
    pub rough_hits: u64,
}

impl CycleCell {
    pub fn window_estimate(&self) -> FreqEstimate {
        FreqEstimate::new(self.window_hits, self.trials)
    }

    pub fn slack_estimate(&self) -> FreqEstimate {
        FreqEstimate::new(self.slack_hits, self.trials)
    }

    pub fn perm_samples(&self) -> u64 {
        self.trials * PERMUTATIONS_PER_TRIAL
    }
}

pub fn compute_cycle_events(cfg: &CycleCfg, workers: usize) -> Vec<CycleCell> {
    cfg.k
        .iter()
        .enumerate()
        .map(|(cell, &k)| {
            let per_trial = run_indexed(workers, cfg.trials, |t| {
                let mut stream = trial_stream(cfg.seed, tags::CYCLE_EVENTS, cell, cfg.trials, t);
                let mut window = None;
                let mut slack = None;
                let mut dd = 0u8;
                let mut rough = 0u8;
                for _ in 0..PERMUTATIONS_PER_TRIAL {
                    let sigma = Permutation::random(cfg.n, &mut stream).expect("n >= 2");
                    let ct = sigma.cycle_type();
                    if ct.has_double_divisor(cfg.dd_threshold) {
                        dd += 1;
                    }
                    if ct.has_rough_cycle(cfg.rough_a, cfg.rough_b, cfg.prime_floor) {
                        rough += 1;
                    }
                    let ach = ct.achievable_sums();
                    let smeared = ach.smeared_up(cfg.lambda);
                    match (&mut window, &mut slack) {
                        (None, None) => {
                            window = Some(ach);
                            slack = Some(smeared);
                        }
                        (Some(w), Some(s)) => {
                            w.and_assign(&ach);
                            s.and_assign(&smeared);
                        }
                        _ => unreachable!("both sets initialize together"),
                    }
                }
                let window_hit = window.expect("four draws").any_in_range(k, 2 * k);
                let slack_hit = slack.expect("four draws").any_in_range(k, 2 * k);
                (window_hit, slack_hit, dd, rough)
            });
            let mut out = CycleCell {
                n: cfg.n,
                k,
                lambda: cfg.lambda,
                trials: cfg.trials,
                window_hits: 0,
                slack_hits: 0,
                dd_hits: 0,
                rough_hits: 0,
            };
            for (w, s, dd, rough) in per_trial {
                out.window_hits += w as u64;
                out.slack_hits += s as u64;
                out.dd_hits += dd as u64;
                out.rough_hits += rough as u64;
            }
            out
        })
        .collect()
}

pub fn run_cycle_events(params: &Params, workers: usize) -> Result<Report> {
    let cfg = CycleCfg::from_params(params)?;
    let started = Instant::now();
    let cells = compute_cycle_events(&cfg, workers);
    let rows = cells
        .iter()
        .map(|c| {
            let window = c.window_estimate();
            let slack = c.slack_estimate();
            let dd = FreqEstimate::new(c.dd_hits, c.perm_samples());
            let rough = FreqEstimate::new(c.rough_hits, c.perm_samples());
            vec![
                c.n.to_string(),
                c.k.to_string(),
                c.lambda.to_string(),
                c.trials.to_string(),
                c.window_hits.to_string(),
                float_cell(window.frequency()),
                float_cell(window.ci_radius()),
                c.slack_hits.to_string(),
                float_cell(slack.frequency()),
                float_cell(slack.ci_radius()),
                float_cell(dd.frequency()),
                float_cell(rough.frequency()),
            ]
        })
        .collect();
    Ok(Report {
        experiment: "cycle_events",
        config: cfg.echo(),
        columns: vec![
            "n",
            "k",
            "lambda",
            "trials",
            "window_hits",
            "window_rate",
            "window_ci",
            "slack_hits",
            "slack_rate",
            "slack_ci",
            "double_divisor_rate",
            "rough_cycle_rate",
        ],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_never_loses_to_the_plain_window() {
        let p =
            Params::from_str("n = 40\nk = 5,9\nlambda = 2\ntrials = 400\nseed = 21").unwrap();
        let cfg = CycleCfg::from_params(&p).unwrap();
        let cells = compute_cycle_events(&cfg, 4);
        assert_eq!(cells.len(), 2);
        for c in &cells {
            // smearing only adds achievable values
            assert!(c.slack_hits >= c.window_hits);
            assert!(c.window_hits <= c.trials);
            assert!(c.dd_hits <= c.perm_samples());
        }
    }

    #[test]
    fn lambda_zero_makes_both_events_identical() {
        let p = Params::from_str("n = 30\nk = 4\ntrials = 300\nseed = 5").unwrap();
        let cfg = CycleCfg::from_params(&p).unwrap();
        let cells = compute_cycle_events(&cfg, 3);
        assert_eq!(cells[0].window_hits, cells[0].slack_hits);
    }

    #[test]
    fn worker_counts_cannot_change_counts() {
        let p = Params::from_str("n = 64\nk = 6\ntrials = 250\nlambda = 1\nseed = 9").unwrap();
        let cfg = CycleCfg::from_params(&p).unwrap();
        let a = compute_cycle_events(&cfg, 1);
        let b = compute_cycle_events(&cfg, 16);
        assert_eq!(a[0].window_hits, b[0].window_hits);
        assert_eq!(a[0].slack_hits, b[0].slack_hits);
        assert_eq!(a[0].dd_hits, b[0].dd_hits);
        assert_eq!(a[0].rough_hits, b[0].rough_hits);
    }

    #[test]
    fn window_must_fit() {
        for bad in ["n = 16\nk = 8", "n = 16\nk = 9", "k = 0", "n = 1"] {
            let p = Params::from_str(bad).unwrap();
            assert!(CycleCfg::from_params(&p).is_err(), "{bad}");
        }
        let p = Params::from_str("rough_a = 0.8\nrough_b = 0.3").unwrap();
        assert!(CycleCfg::from_params(&p).is_err());
    }
}
