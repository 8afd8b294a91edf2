//! Flat `key = value` experiment configuration.
//!
//! One key per line, `#` comments, blank lines ignored. Values stay strings
//! until an experiment asks for them with a typed getter; every key must be
//! consumed by the experiment that runs, so typos are hard errors instead of
//! silently-ignored settings.

use std::collections::BTreeMap;

use polyperm::{CoefficientModel, Error, Result};

/// Seed used when neither the config file nor the CLI provides one. A fixed
/// constant on purpose: default runs must reproduce, never depend on clocks.
pub const DEFAULT_MASTER_SEED: u64 = 0x504F_4C59; // "POLY"

/// Ceiling on how many elements a list value may expand to. Every cell in a
/// list becomes at least one full experiment cell, so anything past this is
/// a typo'd range, and ranges must not materialize before the check.
pub const LIST_ELEMENT_CAP: usize = 10_000;

/// Parsed key→value map plus consumption tracking.
#[derive(Clone, Debug)]
pub struct Params {
    values: BTreeMap<String, String>,
    consumed: std::cell::RefCell<Vec<String>>,
}

/// Parses config text. Duplicate keys are errors — a config where the same
/// key appears twice with different values has no obvious meaning.
pub fn parse_config_str(text: &str) -> Result<BTreeMap<String, String>> {
    let mut values = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::usage(format!("line {}: expected key = value", no + 1)))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(Error::usage(format!("line {}: empty key", no + 1)));
        }
        if !key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::usage(format!("line {}: malformed key '{key}'", no + 1)));
        }
        if values.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::usage(format!("line {}: duplicate key '{key}'", no + 1)));
        }
    }
    Ok(values)
}

impl Params {
    pub fn new(values: BTreeMap<String, String>) -> Params {
        Params { values, consumed: std::cell::RefCell::new(Vec::new()) }
    }

    pub fn from_str(text: &str) -> Result<Params> {
        Ok(Params::new(parse_config_str(text)?))
    }

    /// CLI override: later writers win.
    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn raw(&self, key: &str) -> Option<&str> {
        let v = self.values.get(key).map(String::as_str);
        if v.is_some() {
            self.consumed.borrow_mut().push(key.to_string());
        }
        v
    }

    /// Every key the experiment never asked about is a hard error. Call
    /// after all getters.
    pub fn reject_unknown(&self) -> Result<()> {
        let consumed = self.consumed.borrow();
        for key in self.values.keys() {
            if !consumed.iter().any(|c| c == key) {
                return Err(Error::usage(format!("unknown config key '{key}'")));
            }
        }
        Ok(())
    }

    /// Sorted echo of every (key, value) pair for reports.
    pub fn echo(&self) -> Vec<(String, String)> {
        self.values
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn get_u64(&self, key: &str, default: u64) -> Result<u64> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::usage(format!("{key}: expected unsigned integer, got '{s}'"))),
        }
    }

    pub fn get_usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::usage(format!("{key}: expected unsigned integer, got '{s}'"))),
        }
    }

    pub fn get_f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::usage(format!("{key}: expected number, got '{s}'"))),
        }
    }

    /// Comma-separated integers, each element either a value or an
    /// inclusive `a..b` range: "2,4,8..10" → [2, 4, 8, 9, 10].
    pub fn get_usize_list(&self, key: &str, default: &[usize]) -> Result<Vec<usize>> {
        let s = match self.raw(key) {
            None => return Ok(default.to_vec()),
            Some(s) => s,
        };
        let mut out = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(Error::usage(format!("{key}: empty list element")));
            }
            match piece.split_once("..") {
                Some((a, b)) => {
                    let lo: usize = a.trim().parse().map_err(|_| {
                        Error::usage(format!("{key}: bad range start '{a}'"))
                    })?;
                    let hi: usize = b.trim().parse().map_err(|_| {
                        Error::usage(format!("{key}: bad range end '{b}'"))
                    })?;
                    if lo > hi {
                        return Err(Error::usage(format!("{key}: empty range {lo}..{hi}")));
                    }
                    // refuse before materializing: a range like 1..10^18 is
                    // a typo, not an experiment plan
                    let span = hi - lo;
                    if span >= LIST_ELEMENT_CAP || out.len() + span + 1 > LIST_ELEMENT_CAP {
                        return Err(Error::capacity(format!(
                            "{key}: list expands past {LIST_ELEMENT_CAP} elements"
                        )));
                    }
                    out.extend(lo..=hi);
                }
                None => out.push(piece.parse().map_err(|_| {
                    Error::usage(format!("{key}: expected integer, got '{piece}'"))
                })?),
            }
        }
        if out.is_empty() {
            return Err(Error::usage(format!("{key}: empty list")));
        }
        Ok(out)
    }

    pub fn get_primes(&self, key: &str, default: &[u64]) -> Result<Vec<u64>> {
        let s = match self.raw(key) {
            None => return Ok(default.to_vec()),
            Some(s) => s,
        };
        let mut out = Vec::new();
        for piece in s.split(',') {
            let p: u64 = piece.trim().parse().map_err(|_| {
                Error::usage(format!("{key}: expected prime, got '{piece}'"))
            })?;
            out.push(p);
        }
        if out.is_empty() {
            return Err(Error::usage(format!("{key}: empty prime list")));
        }
        Ok(out)
    }

    pub fn get_model(&self, key: &str, default: CoefficientModel) -> Result<CoefficientModel> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s.parse(),
        }
    }

    pub fn get_seed(&self) -> Result<u64> {
        self.get_u64("seed", DEFAULT_MASTER_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let text = "\
# an experiment
n = 10,20,40
trials = 1000

seed = 77
model = uniform:1:210
";
        let p = Params::from_str(text).unwrap();
        assert_eq!(p.get_usize_list("n", &[]).unwrap(), vec![10, 20, 40]);
        assert_eq!(p.get_u64("trials", 0).unwrap(), 1000);
        assert_eq!(p.get_seed().unwrap(), 77);
        assert_eq!(
            p.get_model("model", CoefficientModel::PlusMinusOne).unwrap(),
            CoefficientModel::UniformRange { low: 1, high: 210 }
        );
        p.reject_unknown().unwrap();
    }

    #[test]
    fn ranges_expand_inclusively() {
        let p = Params::from_str("r = 1..4,9\n").unwrap();
        assert_eq!(p.get_usize_list("r", &[]).unwrap(), vec![1, 2, 3, 4, 9]);
    }

    #[test]
    fn oversized_ranges_refuse_instead_of_materializing() {
        let p = Params::from_str("n = 0..18446744073709551615\n").unwrap();
        let err = p.get_usize_list("n", &[]).unwrap_err();
        assert!(err.to_string().contains("expands past"));
        let p = Params::from_str(&format!("n = 1..{}\n", LIST_ELEMENT_CAP + 1)).unwrap();
        assert!(p.get_usize_list("n", &[]).is_err());
        let p = Params::from_str(&format!("n = 1..{LIST_ELEMENT_CAP}\n")).unwrap();
        assert_eq!(p.get_usize_list("n", &[]).unwrap().len(), LIST_ELEMENT_CAP);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(Params::from_str("just words\n").is_err());
        assert!(Params::from_str("= 5\n").is_err());
        assert!(Params::from_str("a b = 5\n").is_err());
        assert!(Params::from_str("n = 1\nn = 2\n").is_err()); // duplicate
        let p = Params::from_str("n = x\n").unwrap();
        assert!(p.get_usize_list("n", &[]).is_err());
        let p = Params::from_str("n = 5..3\n").unwrap();
        assert!(p.get_usize_list("n", &[]).is_err());
    }

    #[test]
    fn unknown_keys_are_hard_errors() {
        let p = Params::from_str("trials = 10\ntrails = 20\n").unwrap();
        let _ = p.get_u64("trials", 0).unwrap();
        let err = p.reject_unknown().unwrap_err();
        assert!(err.to_string().contains("trails"));
    }

    #[test]
    fn defaults_apply_when_missing() {
        let p = Params::from_str("").unwrap();
        assert_eq!(p.get_seed().unwrap(), DEFAULT_MASTER_SEED);
        assert_eq!(p.get_u64("trials", 123).unwrap(), 123);
        assert_eq!(p.get_primes("primes", &[2, 3]).unwrap(), vec![2, 3]);
        p.reject_unknown().unwrap();
    }

    #[test]
    fn overrides_win() {
        let mut p = Params::from_str("trials = 10\n").unwrap();
        p.set("trials", "99");
        assert_eq!(p.get_u64("trials", 0).unwrap(), 99);
    }
}
