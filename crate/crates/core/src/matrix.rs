//! Random {−1, 0, 1} matrices and exact determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::is_perfect_square;
use crate::rng::RandomStream;
use crate::stats::FreqEstimate;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    n: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let n = rows.len();
        assert!(n >= 1, "matrix needs at least one row");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.n + j]
    }

    /// i.i.d. entries: 0 with probability 1/2, ±1 with probability 1/4
    /// each — a single unbiased two-bit draw per entry.
    pub fn sample(n: usize, stream: &mut RandomStream) -> IntMatrix {
        assert!(n >= 1, "sampling needs n >= 1");
        let a = (0..n * n)
            .map(|_| match stream.uniform(4) {
                0 | 1 => BigInt::zero(),
                2 => BigInt::one(),
                _ => -BigInt::one(),
            })
            .collect();
        IntMatrix { n, a }
    }

    /// Exact determinant by Bareiss fraction-free elimination: every
    /// division is exact, intermediate entries are minors of the original,
    /// so nothing blows up past determinant size.
    pub fn det_exact(&self) -> BigInt {
        let n = self.n;
        let mut m = self.a.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                // first nonzero pivot below; none ⇒ singular
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i * n + j] = q;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let det = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

/// Empirical frequency of "det is a perfect square" (0 counts: k = 0) over
/// `trials` fresh samples, plus the singular count — singularity is common
/// at small n and inflates the square rate, so callers get it separately.
///
/// Sequential reference implementation; the harness parallelizes the same
/// quantity with per-trial streams.
pub fn square_probability(
    n: usize,
    trials: u64,
    stream: &mut RandomStream,
) -> (FreqEstimate, u64) {
    assert!(trials >= 1, "need at least one trial");
    let mut squares = 0u64;
    let mut singular = 0u64;
    for _ in 0..trials {
        let det = IntMatrix::sample(n, stream).det_exact();
        if det.is_zero() {
            singular += 1;
        }
        if is_perfect_square(&det) {
            squares += 1;
        }
    }
    (FreqEstimate::new(squares, trials), singular)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Cofactor expansion along the first row — the slow oracle.
    fn det_laplace(m: &IntMatrix) -> BigInt {
        fn go(n: usize, idx: &[usize], m: &IntMatrix) -> BigInt {
            if n == 1 {
                return m.entry(idx[0], m.n() - 1).clone();
            }
            let col = m.n() - n;
            let mut acc = BigInt::zero();
            for (pos, &row) in idx.iter().enumerate() {
                let e = m.entry(row, col);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> =
                    idx.iter().copied().filter(|&r| r != row).collect();
                let minor = go(n - 1, &rest, m);
                let term = e * minor;
                if pos % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let idx: Vec<usize> = (0..m.n()).collect();
        go(m.n(), &idx, m)
    }

    #[test]
    fn determinants_by_hand() {
        assert_eq!(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).det_exact(), BigInt::one());
        assert_eq!(mat(&[&[1, 1], &[1, 1]]).det_exact(), BigInt::zero());
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det_exact(), BigInt::from(-1)); // needs the row swap
        assert_eq!(mat(&[&[3]]).det_exact(), BigInt::from(3));
        assert_eq!(
            mat(&[&[2, 0, 1], &[1, -1, 0], &[0, 3, 1]]).det_exact(),
            BigInt::from(1) // 2(−1−0) − 0 + 1(3−0)
        );
        // zero column after partial elimination
        assert_eq!(mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 5]]).det_exact(), BigInt::zero());
    }

    #[test]
    fn row_operations_behave() {
        let base = mat(&[&[2, 1, -1], &[0, 3, 2], &[1, 1, 4]]);
        let d = base.det_exact();
        // swapping two rows flips the sign
        let swapped = mat(&[&[0, 3, 2], &[2, 1, -1], &[1, 1, 4]]);
        assert_eq!(swapped.det_exact(), -&d);
        // adding one row to another leaves it unchanged
        let sheared = mat(&[&[2, 1, -1], &[2, 4, 1], &[1, 1, 4]]);
        assert_eq!(sheared.det_exact(), d);
    }

    #[test]
    fn matches_laplace_on_random_matrices() {
        let mut stream = RandomStream::derive(0x5eed, 7, 0);
        for trial in 0..1000 {
            let n = 1 + (trial % 5);
            let m = IntMatrix::sample(n, &mut stream);
            assert_eq!(m.det_exact(), det_laplace(&m), "n={n} trial={trial}");
        }
    }

    #[test]
    fn sample_is_reproducible_and_balanced() {
        let mut a = RandomStream::derive(9, 4, 2);
        let mut b = RandomStream::derive(9, 4, 2);
        assert_eq!(IntMatrix::sample(6, &mut a), IntMatrix::sample(6, &mut b));

        let mut s = RandomStream::derive(10, 4, 0);
        let mut counts = [0u64; 3]; // −1, 0, +1
        let trials = 60_000;
        for _ in 0..trials / 36 {
            let m = IntMatrix::sample(6, &mut s);
            for i in 0..6 {
                for j in 0..6 {
                    let e = m.entry(i, j);
                    if e.is_zero() {
                        counts[1] += 1;
                    } else if e.is_one() {
                        counts[2] += 1;
                    } else {
                        counts[0] += 1;
                    }
                }
            }
        }
        let total = counts.iter().sum::<u64>() as f64;
        // 0 at 1/2 and ±1 at 1/4 each, within 4σ
        let sd_half = (0.5 * 0.5 / total).sqrt();
        let sd_quarter = (0.25 * 0.75 / total).sqrt();
        assert!((counts[1] as f64 / total - 0.5).abs() < 4.0 * sd_half);
        assert!((counts[0] as f64 / total - 0.25).abs() < 4.0 * sd_quarter);
        assert!((counts[2] as f64 / total - 0.25).abs() < 4.0 * sd_quarter);
    }

    #[test]
    fn square_probability_matches_entry_law_at_n1() {
        // n=1: det is the single entry, square ⟺ det ∈ {0, 1}, so exactly 3/4.
        let trials = 100_000u64;
        let mut s = RandomStream::derive(0xABCD, 6, 0);
        let (est, singular) = square_probability(1, trials, &mut s);
        let sd = (0.75 * 0.25 / trials as f64).sqrt();
        assert!((est.frequency() - 0.75).abs() < 4.0 * sd, "freq {}", est.frequency());
        // the singular share alone is 1/2
        let sd0 = (0.5 * 0.5 / trials as f64).sqrt();
        assert!((singular as f64 / trials as f64 - 0.5).abs() < 4.0 * sd0);

        // deterministic given the stream
        let mut a = RandomStream::derive(0xABCD, 6, 1);
        let mut b = RandomStream::derive(0xABCD, 6, 1);
        assert_eq!(square_probability(3, 500, &mut a), square_probability(3, 500, &mut b));
    }

    #[test]
    fn wide_entries_survive_elimination() {
        // determinant of a scaled identity: 10^20 cubed
        let big: BigInt = BigInt::from(10).pow(20);
        let rows = vec![
            vec![big.clone(), BigInt::zero(), BigInt::zero()],
            vec![BigInt::zero(), big.clone(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::zero(), big.clone()],
        ];
        assert_eq!(IntMatrix::from_rows(rows).det_exact(), BigInt::from(10).pow(60));
    }
}
