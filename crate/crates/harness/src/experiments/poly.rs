//! Random-polynomial experiments driven by the degree sieve, plus the batch
//! certification pipeline behind `polyperm certify`.

use std::collections::BTreeMap;
use std::time::Instant;

use polyperm::roots::proper_divisor_degrees;
use polyperm::sieve::{degree_sieve_certify, DEFAULT_SIEVE_PRIMES};
use polyperm::{
    CoefficientModel, Error, FreqEstimate, IntPoly, Prime, Result, SieveStatus,
};

use crate::config::Params;
use crate::experiments::{tags, trial_stream};
use crate::report::{float_cell, hist_cell, Report};
use crate::runner::run_indexed;

/// Degrees where the exact root-based oracle is cheap enough to shadow
/// every trial.
const ORACLE_DEGREE_LIMIT: usize = 10;

fn validate_primes(primes: &[u64]) -> Result<()> {
    for &p in primes {
        Prime::new(p)?;
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::usage("sieve primes must be pairwise distinct"));
    }
    Ok(())
}

fn height_model(height: u64) -> Result<CoefficientModel> {
    if height < 1 || height > i64::MAX as u64 {
        return Err(Error::usage(format!("height must be in 1..=i64::MAX, got {height}")));
    }
    Ok(CoefficientModel::UniformRange { low: 1, high: height as i64 })
}

fn join_usize(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------------------
// irreducibility_rate

pub struct IrreducibilityCfg {
    pub n: Vec<usize>,
    pub trials: u64,
    pub height: u64,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl IrreducibilityCfg {
    pub fn from_params(p: &Params) -> Result<IrreducibilityCfg> {
        let cfg = IrreducibilityCfg {
            n: p.get_usize_list("n", &[10, 20, 40])?,
            trials: p.get_u64("trials", 10_000)?,
            height: p.get_u64("height", 210)?,
            primes: p.get_primes("primes", &DEFAULT_SIEVE_PRIMES)?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        if cfg.trials == 0 {
            return Err(Error::usage("trials must be >= 1"));
        }
        for &n in &cfg.n {
            if n < 2 {
                return Err(Error::usage(format!("sieve needs degree >= 2, got n={n}")));
            }
        }
        height_model(cfg.height)?;
        validate_primes(&cfg.primes)?;
        Ok(cfg)
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("height".into(), self.height.to_string()),
            ("n".into(), join_usize(&self.n)),
            ("primes".into(), join_u64(&self.primes)),
            ("seed".into(), self.seed.to_string()),
            ("trials".into(), self.trials.to_string()),
        ]
    }
}

pub struct IrreducibilityCell {
    pub n: usize,
    pub trials: u64,
    pub certified: u64,
    /// Witness-set sizes of the *Unknown* verdicts only — a certified run
    /// always has the two-element witness {0, n}.
    pub unknown_witness_sizes: BTreeMap<u64, u64>,
}

impl IrreducibilityCell {
    pub fn estimate(&self) -> FreqEstimate {
        FreqEstimate::new(self.certified, self.trials)
    }
}

pub fn compute_irreducibility(cfg: &IrreducibilityCfg, workers: usize) -> Vec<IrreducibilityCell> {
    let model = height_model(cfg.height).expect("validated height");
    cfg.n
        .iter()
        .enumerate()
        .map(|(cell, &n)| {
            let verdicts = run_indexed(workers, cfg.trials, |t| {
                let mut stream =
                    trial_stream(cfg.seed, tags::IRREDUCIBILITY_RATE, cell, cfg.trials, t);
                let f = IntPoly::sample(n, &model, &mut stream);
                let v = degree_sieve_certify(&f, &cfg.primes).expect("validated sieve inputs");
                match v.status {
                    SieveStatus::Irreducible => None,
                    SieveStatus::Unknown => Some(v.witness.len() as u64),
                }
            });
            let mut certified = 0;
            let mut unknown_witness_sizes = BTreeMap::new();
            for v in verdicts {
                match v {
                    None => certified += 1,
                    Some(size) => *unknown_witness_sizes.entry(size).or_insert(0) += 1,
                }
            }
            IrreducibilityCell { n, trials: cfg.trials, certified, unknown_witness_sizes }
        })
        .collect()
}

pub fn run_irreducibility(params: &Params, workers: usize) -> Result<Report> {
    let cfg = IrreducibilityCfg::from_params(params)?;
    let started = Instant::now();
    let cells = compute_irreducibility(&cfg, workers);
    let rows = cells
        .iter()
        .map(|c| {
            let est = c.estimate();
            vec![
                c.n.to_string(),
                c.trials.to_string(),
                c.certified.to_string(),
                float_cell(est.frequency()),
                float_cell(est.ci_radius()),
                hist_cell(c.unknown_witness_sizes.iter().map(|(&k, &v)| (k, v))),
            ]
        })
        .collect();
    Ok(Report {
        experiment: "irreducibility_rate",
        config: cfg.echo(),
        columns: vec!["n", "trials", "certified", "rate", "ci_radius", "unknown_witness_sizes"],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// small_divisor_rate

pub struct SmallDivisorCfg {
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    pub trials: u64,
    pub height: u64,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl SmallDivisorCfg {
    pub fn from_params(p: &Params) -> Result<SmallDivisorCfg> {
        let cfg = SmallDivisorCfg {
            n: p.get_usize_list("n", &[10, 20, 40])?,
            d: p.get_usize_list("d", &[0, 1, 2, 3])?,
            trials: p.get_u64("trials", 10_000)?,
            height: p.get_u64("height", 210)?,
            primes: p.get_primes("primes", &DEFAULT_SIEVE_PRIMES)?,
            seed: p.get_seed()?,
        };
        p.reject_unknown()?;
        if cfg.trials == 0 {
            return Err(Error::usage("trials must be >= 1"));
        }
        for &n in &cfg.n {
            if n < 2 {
                return Err(Error::usage(format!("sieve needs degree >= 2, got n={n}")));
            }
        }
        height_model(cfg.height)?;
        validate_primes(&cfg.primes)?;
        Ok(cfg)
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("d".into(), join_usize(&self.d)),
            ("height".into(), self.height.to_string()),
            ("n".into(), join_usize(&self.n)),
            ("primes".into(), join_u64(&self.primes)),
            ("seed".into(), self.seed.to_string()),
            ("trials".into(), self.trials.to_string()),
        ]
    }
}

pub struct SmallDivisorCell {
    pub n: usize,
    pub d: usize,
    pub trials: u64,
    /// Trials whose sieve witness admits a degree in [1, min(d, n−1)] — an
    /// upper bound on actually having such a divisor.
    pub witness_hits: u64,
    /// (hits, trials the oracle answered) — present only for small degrees.
    pub oracle: Option<(u64, u64)>,
}

pub fn compute_small_divisor(cfg: &SmallDivisorCfg, workers: usize) -> Vec<SmallDivisorCell> {
    let model = height_model(cfg.height).expect("validated height");
    let mut out = Vec::new();
    for (cell, &n) in cfg.n.iter().enumerate() {
        let use_oracle = n <= ORACLE_DEGREE_LIMIT;
        // One sample per trial; every d-row for this n reads the same trials.
        let per_trial: Vec<(Vec<bool>, Option<Vec<bool>>)> =
            run_indexed(workers, cfg.trials, |t| {
                let mut stream =
                    trial_stream(cfg.seed, tags::SMALL_DIVISOR_RATE, cell, cfg.trials, t);
                let f = IntPoly::sample(n, &model, &mut stream);
                let v = degree_sieve_certify(&f, &cfg.primes).expect("validated sieve inputs");
                // clip to proper divisor degrees: 0 and n are always present
                // in the witness and say nothing about small factors
                let hit = |set: &polyperm::BitSet, d: usize| d >= 1 && set.any_in_range(1, d.min(n - 1));
                let witness: Vec<bool> = cfg.d.iter().map(|&d| hit(&v.witness, d)).collect();
                // a degenerate (non-squarefree) sample makes the root oracle
                // refuse; those trials are dropped from the oracle column
                // and its trial count says so
                let oracle = use_oracle
                    .then(|| proper_divisor_degrees(&f).ok())
                    .flatten()
                    .map(|degs| cfg.d.iter().map(|&d| hit(&degs, d)).collect::<Vec<bool>>());
                (witness, oracle)
            });
        for (di, &d) in cfg.d.iter().enumerate() {
            let witness_hits = per_trial.iter().filter(|(w, _)| w[di]).count() as u64;
            let oracle = use_oracle.then(|| {
                let answered = per_trial.iter().filter(|(_, o)| o.is_some()).count() as u64;
                let hits = per_trial
                    .iter()
                    .filter(|(_, o)| o.as_ref().is_some_and(|v| v[di]))
                    .count() as u64;
                (hits, answered)
            });
            out.push(SmallDivisorCell { n, d, trials: cfg.trials, witness_hits, oracle });
        }
    }
    out
}

pub fn run_small_divisor(params: &Params, workers: usize) -> Result<Report> {
    let cfg = SmallDivisorCfg::from_params(params)?;
    let started = Instant::now();
    let cells = compute_small_divisor(&cfg, workers);
    let rows = cells
        .iter()
        .map(|c| {
            let witness = FreqEstimate::new(c.witness_hits, c.trials);
            let mut row = vec![
                c.n.to_string(),
                c.d.to_string(),
                c.trials.to_string(),
                c.witness_hits.to_string(),
                float_cell(witness.frequency()),
                float_cell(witness.ci_radius()),
            ];
            match c.oracle {
                Some((hits, answered)) if answered > 0 => {
                    let est = FreqEstimate::new(hits, answered);
                    row.extend([
                        answered.to_string(),
                        hits.to_string(),
                        float_cell(est.frequency()),
                        float_cell(est.ci_radius()),
                    ]);
                }
                _ => row.extend(["-".into(), "-".into(), "-".into(), "-".into()]),
            }
            row
        })
        .collect();
    Ok(Report {
        experiment: "small_divisor_rate",
        config: cfg.echo(),
        columns: vec![
            "n",
            "d",
            "trials",
            "witness_hits",
            "witness_rate",
            "witness_ci",
            "oracle_trials",
            "oracle_hits",
            "oracle_rate",
            "oracle_ci",
        ],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// certify — the batch pipeline

pub struct CertifyCfg {
    pub primes: Vec<u64>,
}

impl CertifyCfg {
    pub fn from_params(p: &Params) -> Result<CertifyCfg> {
        let cfg = CertifyCfg { primes: p.get_primes("primes", &DEFAULT_SIEVE_PRIMES)? };
        p.reject_unknown()?;
        validate_primes(&cfg.primes)?;
        Ok(cfg)
    }
}

#[derive(Debug)]
pub struct CertifyRow {
    /// 1-based line number in the input file (blank/comment lines keep
    /// their numbers).
    pub line: usize,
    pub degree: usize,
    pub status: SieveStatus,
    pub witness: Vec<usize>,
}

/// One polynomial per line, base-10 coefficients constant-first; blank
/// lines and `#` comments are skipped. Any malformed line aborts the batch
/// with its line number — partial verdicts would be worse than none.
pub fn certify_text(text: &str, primes: &[u64]) -> Result<Vec<CertifyRow>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = IntPoly::parse_line(line)
            .map_err(|e| Error::usage(format!("line {lineno}: {e}")))?;
        let degree = match f.degree() {
            None | Some(0) => {
                return Err(Error::usage(format!(
                    "line {lineno}: constant polynomial cannot be certified"
                )))
            }
            Some(d) => d,
        };
        if !f.is_monic() {
            return Err(Error::usage(format!("line {lineno}: polynomial must be monic")));
        }
        if degree == 1 {
            // linear over ℚ: irreducible by definition, no sieve needed
            rows.push(CertifyRow {
                line: lineno,
                degree,
                status: SieveStatus::Irreducible,
                witness: vec![0, 1],
            });
            continue;
        }
        let v = degree_sieve_certify(&f, primes)
            .map_err(|e| Error::internal(format!("line {lineno}: {e}")))?;
        rows.push(CertifyRow {
            line: lineno,
            degree,
            status: v.status,
            witness: v.witness.iter().collect(),
        });
    }
    Ok(rows)
}

pub fn run_certify(params: &Params, input_name: &str, text: &str) -> Result<Report> {
    let cfg = CertifyCfg::from_params(params)?;
    let started = Instant::now();
    let rows = certify_text(text, &cfg.primes)?
        .into_iter()
        .map(|r| {
            let witness =
                r.witness.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";");
            vec![r.line.to_string(), r.degree.to_string(), r.status.to_string(), witness]
        })
        .collect();
    Ok(Report {
        experiment: "certify",
        config: vec![
            ("input".into(), input_name.to_string()),
            ("primes".into(), join_u64(&cfg.primes)),
        ],
        columns: vec!["line", "degree", "status", "witness"],
        rows,
        runtime_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_counts_are_consistent() {
        let p = Params::from_str("n = 2,3\ntrials = 60\nheight = 10\nseed = 5").unwrap();
        let cfg = IrreducibilityCfg::from_params(&p).unwrap();
        let cells = compute_irreducibility(&cfg, 2);
        assert_eq!(cells.len(), 2);
        for c in &cells {
            let unknowns: u64 = c.unknown_witness_sizes.values().sum();
            assert_eq!(c.certified + unknowns, c.trials);
            // every unknown witness has 0, n, and something in between
            assert!(c.unknown_witness_sizes.keys().all(|&s| s >= 3));
        }
        // same cfg, different worker count, same counts
        let again = compute_irreducibility(&cfg, 5);
        for (a, b) in cells.iter().zip(&again) {
            assert_eq!(a.certified, b.certified);
            assert_eq!(a.unknown_witness_sizes, b.unknown_witness_sizes);
        }
    }

    #[test]
    fn single_prime_certifies_no_more_than_full_set() {
        let base = "n = 6\ntrials = 300\nheight = 50\nseed = 9";
        let full = {
            let p = Params::from_str(base).unwrap();
            compute_irreducibility(&IrreducibilityCfg::from_params(&p).unwrap(), 1)
        };
        let single = {
            let p = Params::from_str(&format!("{base}\nprimes = 2")).unwrap();
            compute_irreducibility(&IrreducibilityCfg::from_params(&p).unwrap(), 1)
        };
        // identical samples (same seed/tag/trial), so the comparison is
        // sample-by-sample: intersecting more primes can only certify more
        assert!(single[0].certified <= full[0].certified);
    }

    #[test]
    fn small_divisor_d0_is_zero_and_oracle_bounds_witness() {
        let p = Params::from_str("n = 6\nd = 0,2,9\ntrials = 150\nheight = 30\nseed = 3").unwrap();
        let cfg = SmallDivisorCfg::from_params(&p).unwrap();
        let cells = compute_small_divisor(&cfg, 3);
        assert_eq!(cells.len(), 3);
        assert_eq!(cells[0].witness_hits, 0, "d=0 admits nothing");
        for c in &cells {
            let (hits, answered) = c.oracle.expect("n=6 uses the oracle");
            // the witness is a superset condition: true divisors imply
            // witness membership, never the reverse
            assert!(answered == c.trials, "height-30 degree-6 samples are squarefree here");
            assert!(hits <= c.witness_hits, "oracle rate exceeds witness bound at d={}", c.d);
        }
        // d=9 clips to [1, 5]: counts can only grow with d
        assert!(cells[1].witness_hits <= cells[2].witness_hits);
    }

    #[test]
    fn certify_handles_the_line_format() {
        let text = "# corpus header\n1 0 1\n\n1 1\n5 1 1 2 1\n";
        let rows = certify_text(text, &[2, 3]).unwrap();
        assert_eq!(rows.len(), 3);
        // x² + 1: (x+1)² mod 2 but irreducible mod 3 ⇒ certified
        assert_eq!(rows[0].line, 2);
        assert_eq!(rows[0].status, SieveStatus::Irreducible);
        assert_eq!(rows[0].witness, vec![0, 2]);
        // x + 1: linear shortcut, keeps its file line number
        assert_eq!(rows[1].line, 4);
        assert_eq!(rows[1].degree, 1);
        assert_eq!(rows[1].status, SieveStatus::Irreducible);
        assert_eq!(rows[2].line, 5);
        assert_eq!(rows[2].degree, 4);

        let bad = certify_text("7", &[2, 3]).unwrap_err();
        assert!(bad.to_string().contains("line 1"));
        let nonmonic = certify_text("1 2", &[2]).unwrap_err();
        assert!(nonmonic.to_string().contains("monic"));
        let garbage = certify_text("1 0 1\nx y z", &[2]).unwrap_err();
        assert!(garbage.to_string().contains("line 2"));
    }

    #[test]
    fn config_validation_refuses_nonsense() {
        let p = Params::from_str("n = 1").unwrap();
        assert!(IrreducibilityCfg::from_params(&p).is_err());
        let p = Params::from_str("primes = 2,2").unwrap();
        assert!(IrreducibilityCfg::from_params(&p).is_err());
        let p = Params::from_str("primes = 9").unwrap();
        assert!(IrreducibilityCfg::from_params(&p).is_err());
        let p = Params::from_str("bogus = 1").unwrap();
        assert!(SmallDivisorCfg::from_params(&p).is_err());
        let p = Params::from_str("height = 0").unwrap();
        assert!(SmallDivisorCfg::from_params(&p).is_err());
    }
}
