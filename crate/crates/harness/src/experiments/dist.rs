//! Exact distribution experiments: total-variation tables and the
//! formula-vs-enumeration audit. No randomness — the seed is accepted for
//! CLI uniformity, echoed, and ignored.

use std::time::Instant;

use num_rational::BigRational;
use polyperm::dist::{build_distribution, exhaustive_distribution, tv_distance};
use polyperm::{DistributionKind, Error, Prime, Result};

use crate::config::Params;
use crate::report::{rational_cell, Report};
use crate::runner::run_indexed;

// ---------------------------------------------------------------------------
// tv_distance

pub struct TvCfg {
    pub q: u64,
    pub n: usize,
    pub r: Vec<usize>,
    pub seed: u64,
}

impl TvCfg {
    pub fn from_params(p: &Params) -> Result<TvCfg> {
        let n = p.get_usize("n", 12)?;
        // default: every admissible cutoff, including the degenerate r = n+1
        let full: Vec<usize> = (1..=n + 1).collect();
        let cfg = TvCfg {
            q: p.get_u64("q", 2)?,
            n,
            r: p.get_usize_list("r", &full)?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        Prime::new(cfg.q)?;
        if cfg.n < 1 {
            return Err(Error::usage("n must be >= 1"));
        }
        for &r in &cfg.r {
            if r < 1 || r > cfg.n + 1 {
                return Err(Error::usage(format!(
                    "cutoff r = {r} outside 1..={}",
                    cfg.n + 1
                )));
            }
        }
        Ok(cfg)
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("n".into(), self.n.to_string()),
            ("q".into(), self.q.to_string()),
            (
                "r".into(),
                self.r.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
            ),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

pub struct TvCell {
    pub r: usize,
    pub tv: BigRational,
}

pub struct TvOutput {
    pub cells: Vec<TvCell>,
    /// max over the requested cutoffs of r·TV — the constant the C/r bound
    /// is about.
    pub max_r_tv: BigRational,
}

pub fn compute_tv(cfg: &TvCfg, workers: usize) -> Result<TvOutput> {
    let q = Prime::new(cfg.q)?;
    let results = run_indexed(workers, cfg.r.len() as u64, |i| {
        let r = cfg.r[i as usize];
        tv_distance(q, cfg.n, r)
    });
    let mut cells = Vec::with_capacity(cfg.r.len());
    for (&r, tv) in cfg.r.iter().zip(results) {
        cells.push(TvCell { r, tv: tv? });
    }
    let max_r_tv = cells
        .iter()
        .map(|c| BigRational::from_integer(c.r.into()) * &c.tv)
        .max()
        .expect("r list is nonempty");
    Ok(TvOutput { cells, max_r_tv })
}

pub fn run_tv(params: &Params, workers: usize) -> Result<Report> {
    let cfg = TvCfg::from_params(params)?;
    let started = Instant::now();
    let out = compute_tv(&cfg, workers)?;
    let mut rows: Vec<Vec<String>> = out
        .cells
        .iter()
        .map(|c| {
            vec![
                cfg.q.to_string(),
                cfg.n.to_string(),
                c.r.to_string(),
                rational_cell(&c.tv),
                rational_cell(&(BigRational::from_integer(c.r.into()) * &c.tv)),
            ]
        })
        .collect();
    rows.push(vec![
        cfg.q.to_string(),
        cfg.n.to_string(),
        "max".into(),
        "-".into(),
        rational_cell(&out.max_r_tv),
    ]);
    Ok(Report {
        experiment: "tv_distance",
        config: cfg.echo(),
        columns: vec!["q", "n", "r", "tv", "r_times_tv"],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// distribution_audit

pub struct AuditCfg {
    pub q: u64,
    pub n: Vec<usize>,
    pub seed: u64,
}

impl AuditCfg {
    pub fn from_params(p: &Params) -> Result<AuditCfg> {
        let cfg = AuditCfg {
            q: p.get_u64("q", 2)?,
            n: p.get_usize_list("n", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        Prime::new(cfg.q)?;
        for &n in &cfg.n {
            if n < 1 {
                return Err(Error::usage("n must be >= 1"));
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
            ("q".into(), self.q.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

pub struct AuditCell {
    pub n: usize,
    pub partitions: usize,
    /// Partitions where the α-product formula and the brute-force count of
    /// all q^n polynomials disagree. Anything but zero is a bug somewhere.
    pub mismatches: usize,
}

pub fn compute_audit(cfg: &AuditCfg, workers: usize) -> Result<Vec<AuditCell>> {
    let q = Prime::new(cfg.q)?;
    let results = run_indexed(workers, cfg.n.len() as u64, |i| -> Result<AuditCell> {
        let n = cfg.n[i as usize];
        let formula = build_distribution(q, n, DistributionKind::PolynomialFactors)?;
        let counted = exhaustive_distribution(q, n)?;
        // both maps have one entry per partition of n (possibly with
        // probability zero on the counted side), so a one-sided walk with
        // probability() lookups covers the union
        let mismatches = formula
            .entries()
            .iter()
            .filter(|(ct, p)| counted.probability(ct) != **p)
            .count()
            + counted
                .entries()
                .iter()
                .filter(|(ct, _)| !formula.entries().contains_key(*ct))
                .count();
        Ok(AuditCell { n, partitions: formula.entries().len(), mismatches })
    });
    results.into_iter().collect()
}

pub fn run_audit(params: &Params, workers: usize) -> Result<Report> {
    let cfg = AuditCfg::from_params(params)?;
    let started = Instant::now();
    let cells = compute_audit(&cfg, workers)?;
    let rows = cells
        .iter()
        .map(|c| {
            vec![
                cfg.q.to_string(),
                c.n.to_string(),
                c.partitions.to_string(),
                c.mismatches.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        experiment: "distribution_audit",
        config: cfg.echo(),
        columns: vec!["q", "n", "partitions", "mismatches"],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}
