//! Small exact-integer helpers shared by the polynomial modules.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Is n a perfect square? Zero counts (0 = 0²), negatives never do.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if n.is_zero() {
        return true;
    }
    // squares are ≡ 0, 1, 4, 9 mod 16; cheap filter before the real sqrt
    let low = (n & BigInt::from(0xf)).to_u8().unwrap();
    if !matches!(low, 0 | 1 | 4 | 9) {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// ln|n| without overflowing f64 on wide integers: take the top 53 bits
/// exactly, add the discarded width in units of ln 2. None iff n = 0.
pub fn log_abs(n: &BigInt) -> Option<f64> {
    if n.is_zero() {
        return None;
    }
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 53 {
        return Some(mag.to_f64().expect("fits in f64").ln());
    }
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().expect("53 bits fit in f64");
    Some(top.ln() + shift as f64 * std::f64::consts::LN_2)
}
