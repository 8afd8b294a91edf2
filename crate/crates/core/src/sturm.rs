//! Counting distinct real roots with a Sturm chain.
//!
//! The chain is kept primitive (content divided out after every step) so
//! coefficients stay at subresultant size instead of exploding; the
//! pseudo-remainder orientation is corrected so each element is a positive
//! scalar multiple of the textbook Sturm element, which is all the sign
//! counting cares about.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::zpoly::{pseudo_rem, IntPoly};

/// Number of *distinct* real roots of a squarefree f with deg f >= 1, by
/// sign variations of the Sturm chain at −∞ and +∞.
///
/// Repeated roots are refused (usage error): the chain would silently count
/// distinct roots only, and every caller here wants the separable case.
pub fn real_root_count(f: &IntPoly) -> Result<usize> {
    if !matches!(f.degree(), Some(n) if n >= 1) {
        return Err(Error::usage("root counting needs degree >= 1"));
    }

    let mut chain = vec![f.primitive_part(), f.derivative().primitive_part()];
    loop {
        let k = chain.len();
        let b = &chain[k - 1];
        if b.degree().unwrap() == 0 {
            break;
        }
        let a = &chain[k - 2];
        let r = pseudo_rem(a, b);
        if r.is_zero() {
            // gcd(f, f') = b has positive degree
            return Err(Error::usage("root counting needs a squarefree polynomial"));
        }
        // pseudo_rem scales the true remainder by lc(b)^(δ+1); the Sturm
        // element is −remainder up to positive factors, so flip unless the
        // multiplier already did.
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let multiplier_negative = b.leading().is_negative() && (delta + 1) % 2 == 1;
        let next = if multiplier_negative { r } else { r.neg() };
        chain.push(next.primitive_part());
    }

    let at = |minus_inf: bool| -> usize {
        let mut variations = 0;
        let mut prev = 0i8;
        for s in &chain {
            let deg = s.degree().unwrap();
            let mut sign = if s.leading().is_negative() { -1i8 } else { 1 };
            if minus_inf && deg % 2 == 1 {
                sign = -sign;
            }
            if prev != 0 && sign != prev {
                variations += 1;
            }
            prev = sign;
        }
        variations
    };

    at(true)
        .checked_sub(at(false))
        .ok_or_else(|| Error::internal("sign variations decreased toward -infinity"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn counts_by_hand() {
        assert_eq!(real_root_count(&ip(&[-6, 11, -6, 1])).unwrap(), 3); // (x−1)(x−2)(x−3)
        assert_eq!(real_root_count(&ip(&[1, 0, 1])).unwrap(), 0); // x²+1
        assert_eq!(real_root_count(&ip(&[0, -1, 0, 1])).unwrap(), 3); // x³−x
        assert_eq!(real_root_count(&ip(&[-2, 0, 1])).unwrap(), 2); // x²−2
        assert_eq!(real_root_count(&ip(&[-1, -1, 0, 0, 0, 1])).unwrap(), 1); // x⁵−x−1
        assert_eq!(real_root_count(&ip(&[4, 0, -5, 0, 1])).unwrap(), 4); // (x²−1)(x²−4)
        assert_eq!(real_root_count(&ip(&[3, 2])).unwrap(), 1); // linear
        assert_eq!(real_root_count(&ip(&[1, 1, 1, 1])).unwrap(), 1); // x³+x²+x+1 = (x+1)(x²+1)
    }

    #[test]
    fn negative_leading_coefficient() {
        assert_eq!(real_root_count(&ip(&[4, 0, -1])).unwrap(), 2); // 4 − x²
        assert_eq!(real_root_count(&ip(&[1, -1])).unwrap(), 1); // 1 − x
        assert_eq!(real_root_count(&ip(&[-1, 0, 0, -1])).unwrap(), 1); // −x³ − 1
    }

    #[test]
    fn coefficient_growth_stays_manageable() {
        // Π (x − i), i = 1..10: ten real roots, sizable chain
        let mut f = ip(&[-1, 1]);
        for i in 2..=10 {
            f = f.mul(&ip(&[-i, 1]));
        }
        assert_eq!(real_root_count(&f).unwrap(), 10);
    }

    #[test]
    fn refuses_bad_inputs() {
        assert!(real_root_count(&ip(&[1, 2, 1])).is_err()); // (x+1)²
        assert!(real_root_count(&ip(&[0, 0, 1])).is_err()); // x²
        assert!(real_root_count(&ip(&[5])).is_err()); // constant
        assert!(real_root_count(&IntPoly::zero()).is_err());
    }
}
