//! Determinant-square frequencies for random {−1, 0, 1} matrices.

use std::time::Instant;

use num_traits::Zero;
use polyperm::arith::is_perfect_square;
use polyperm::{Error, FreqEstimate, IntMatrix, Result};

use crate::config::Params;
use crate::experiments::{tags, trial_stream};
use crate::report::{float_cell, Report};
use crate::runner::run_indexed;

pub struct DetCfg {
    pub n: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
}

impl DetCfg {
    pub fn from_params(p: &Params) -> Result<DetCfg> {
        let cfg = DetCfg {
            n: p.get_usize_list("n", &(1..=10).collect::<Vec<_>>())?,
            trials: p.get_u64("trials", 100_000)?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        if cfg.trials == 0 {
            return Err(Error::usage("trials must be >= 1"));
        }
        for &n in &cfg.n {
            if n < 1 {
                return Err(Error::usage("matrix dimension must be >= 1"));
            }
        }
        Ok(cfg)
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            (
                "n".into(),
                self.n.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
            ),
            ("seed".into(), self.seed.to_string()),
            ("trials".into(), self.trials.to_string()),
        ]
    }
}

pub struct DetCell {
    pub n: usize,
    pub trials: u64,
    /// det = k² for some integer k, including k = 0.
    pub square_count: u64,
    /// det = 0 — separately reported because singularity alone inflates the
    /// square rate at small n.
    pub singular_count: u64,
}

impl DetCell {
    pub fn estimate(&self) -> FreqEstimate {
        FreqEstimate::new(self.square_count, self.trials)
    }
}

pub fn compute_det_square(cfg: &DetCfg, workers: usize) -> Vec<DetCell> {
    cfg.n
        .iter()
        .enumerate()
        .map(|(cell, &n)| {
            let per_trial = run_indexed(workers, cfg.trials, |t| {
                let mut stream = trial_stream(cfg.seed, tags::DET_SQUARE, cell, cfg.trials, t);
                let det = IntMatrix::sample(n, &mut stream).det_exact();
                (is_perfect_square(&det), det.is_zero())
            });
            let mut square_count = 0;
            let mut singular_count = 0;
            for (square, singular) in per_trial {
                square_count += square as u64;
                singular_count += singular as u64;
            }
            DetCell { n, trials: cfg.trials, square_count, singular_count }
        })
        .collect()
}

pub fn run_det_square(params: &Params, workers: usize) -> Result<Report> {
    let cfg = DetCfg::from_params(params)?;
    let started = Instant::now();
    let cells = compute_det_square(&cfg, workers);
    let rows = cells
        .iter()
        .map(|c| {
            let est = c.estimate();
            vec![
                c.n.to_string(),
                c.trials.to_string(),
                c.square_count.to_string(),
                c.singular_count.to_string(),
                float_cell(est.frequency()),
                float_cell(est.ci_radius()),
            ]
        })
        .collect();
    Ok(Report {
        experiment: "det_square",
        config: cfg.echo(),
        columns: vec!["n", "trials", "square_count", "singular_count", "frequency", "ci_radius"],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_square_rate_is_three_quarters() {
        let p = Params::from_str("n = 1\ntrials = 40000\nseed = 14").unwrap();
        let cfg = DetCfg::from_params(&p).unwrap();
        let c = &compute_det_square(&cfg, 8)[0];
        // det is the entry: square ⟺ det ∈ {0, 1}, probability exactly 3/4
        let sd = (0.75 * 0.25 / c.trials as f64).sqrt();
        assert!((c.estimate().frequency() - 0.75).abs() < 4.0 * sd);
        // singular ⟺ det = 0, probability exactly 1/2
        let sd0 = (0.5 * 0.5 / c.trials as f64).sqrt();
        assert!((c.singular_count as f64 / c.trials as f64 - 0.5).abs() < 4.0 * sd0);
        // singular implies square, so the counts nest
        assert!(c.singular_count <= c.square_count);
    }

    #[test]
    fn worker_invariance_and_validation() {
        let p = Params::from_str("n = 2,3\ntrials = 500\nseed = 3").unwrap();
        let cfg = DetCfg::from_params(&p).unwrap();
        let a = compute_det_square(&cfg, 1);
        let b = compute_det_square(&cfg, 4);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.square_count, y.square_count);
            assert_eq!(x.singular_count, y.singular_count);
        }
        assert!(DetCfg::from_params(&Params::from_str("n = 0").unwrap()).is_err());
        assert!(DetCfg::from_params(&Params::from_str("trials = 0").unwrap()).is_err());
    }
}
