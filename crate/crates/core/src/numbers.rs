//! Rational special values: Bernoulli numbers, zeta at negative odd integers,
//! harmonic numbers and a few integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `n!! = n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: u32) -> BigInt {
    (1..=n)
        .rev()
        .step_by(2)
        .fold(BigInt::one(), |acc, k| acc * k)
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_table(n: u32) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    table.push(Rational::one());
    for m in 1..=n {
        let sum = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| {
                acc + Rational::from_integer(binomial(m + 1, j as u32)) * b
            });
        table.push(-sum / Rational::from_integer(BigInt::from(m + 1)));
    }
    table
}

pub fn bernoulli(n: u32) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::zero();
    }
    bernoulli_table(n).pop().expect("table is never empty")
}

/// `zeta(1 - 2k) = -B_{2k} / (2k)` for `k >= 1`.
pub fn zeta_negative_odd(k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::OutOfRange("zeta(1-2k) needs k >= 1".into()));
    }
    Ok(-bernoulli(2 * k) / int(2 * k as i64))
}

pub fn harmonic(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::OutOfRange("harmonic number index 0".into()));
    }
    Ok((1..=n as i64).fold(Rational::zero(), |acc, j| acc + rat(1, j)))
}

/// `1 / (1 - 4^{-k})`.
pub fn inverse_one_minus_quarter_power(k: u32) -> Rational {
    let four_k = BigInt::from(4).pow(k);
    Rational::new(four_k.clone(), four_k - 1)
}

/// Degree of the Lagrangian Grassmannian `B_{d-1}` under its Plücker
/// embedding: `(d(d-1)/2)! / prod_{k=1}^{d-1} (2k-1)!!`.
pub fn lagrangian_degree(d: u32) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::OutOfRange(format!(
            "degree of B_(d-1) needs d >= 2, got {d}"
        )));
    }
    let dim = d * (d - 1) / 2;
    let denom = (1..d).fold(BigInt::one(), |acc, k| acc * double_factorial(2 * k - 1));
    let (q, r) = factorial(dim).div_rem(&denom);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Exact textual form `p/q` (or `p` when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Akiyama-Tanigawa gives B_n with B_1 = +1/2; independent of the recurrence.
    fn akiyama_tanigawa(n: u32) -> Rational {
        let mut a: Vec<Rational> = (0..=n).map(|m| rat(1, m as i64 + 1)).collect();
        for m in 1..=n as usize {
            for j in 0..=(n as usize - m) {
                a[j] = int(j as i64 + 1) * (a[j].clone() - a[j + 1].clone());
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in 2..=30 {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for k in 1..=20 {
            assert!(bernoulli(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_negative_odd(1).unwrap(), rat(-1, 12));
        assert_eq!(zeta_negative_odd(2).unwrap(), rat(1, 120));
        assert_eq!(zeta_negative_odd(3).unwrap(), rat(-1, 252));
        // zeta(-11) = 691/32760 is positive, so B_12 must be negative
        assert_eq!(zeta_negative_odd(6).unwrap(), rat(691, 32760));
        assert!(zeta_negative_odd(0).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), int(1));
        assert_eq!(harmonic(3).unwrap(), rat(11, 6));
        assert_eq!(harmonic(5).unwrap(), rat(137, 60));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn lagrangian_degrees() {
        assert_eq!(lagrangian_degree(2).unwrap(), BigInt::from(1));
        assert_eq!(lagrangian_degree(3).unwrap(), BigInt::from(2));
        assert_eq!(lagrangian_degree(4).unwrap(), BigInt::from(16));
        // 10! / (1 * 3 * 15 * 105)
        assert_eq!(lagrangian_degree(5).unwrap(), BigInt::from(3628800 / 4725));
        assert!(lagrangian_degree(1).is_err());
    }

    #[test]
    fn rational_text_round_trip() {
        for r in [rat(-17, 3), int(0), int(24), rat(1520, 63)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
