//! Truncated one-variable power series with [`Scalar`] coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{
    bernoulli, factorial, harmonic, int, inverse_one_minus_quarter_power, rat, zeta_negative_odd,
    Rational,
};
use crate::scalar::{Scalar, Symbol};

/// Series truncation used for a run at parameter `d`.
pub fn default_truncation(d: u32) -> u32 {
    2 * d * d.saturating_sub(1) + 2
}

/// `sum_{j=0}^{order} coeffs[j] var^j + O(var^{order+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    var: String,
    order: u32,
    coeffs: Vec<Scalar>,
}

impl FormalSeries {
    pub fn zero(var: &str, order: u32) -> Self {
        FormalSeries {
            var: var.to_string(),
            order,
            coeffs: vec![Scalar::zero(); order as usize + 1],
        }
    }

    pub fn one(var: &str, order: u32) -> Self {
        let mut s = FormalSeries::zero(var, order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// Series from leading coefficients; missing coefficients are zero and
    /// coefficients above `order` are dropped.
    pub fn from_coeffs(var: &str, order: u32, coeffs: impl IntoIterator<Item = Scalar>) -> Self {
        let mut s = FormalSeries::zero(var, order);
        for (j, c) in coeffs.into_iter().enumerate().take(order as usize + 1) {
            s.coeffs[j] = c;
        }
        s
    }

    pub fn monomial(var: &str, order: u32, power: u32, c: Scalar) -> Self {
        let mut s = FormalSeries::zero(var, order);
        if power <= order {
            s.coeffs[power as usize] = c;
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, j: u32) -> &Scalar {
        static ZERO: std::sync::OnceLock<Scalar> = std::sync::OnceLock::new();
        self.coeffs
            .get(j as usize)
            .unwrap_or_else(|| ZERO.get_or_init(Scalar::zero))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        FormalSeries::from_coeffs(&self.var, order, self.coeffs.iter().cloned())
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FormalSeries {
            var: self.var.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        FormalSeries::from_coeffs(
            &self.var,
            order,
            (0..=order).map(|j| self.coeff(j) + other.coeff(j)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = FormalSeries::zero(&self.var, order);
        for i in 0..=order {
            if self.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeff(j).is_zero() {
                    continue;
                }
                let prod = self.coeff(i) * other.coeff(j);
                out.coeffs[(i + j) as usize] += &prod;
            }
        }
        out
    }

    /// Multiply by `var^k`; the known order grows by `k`.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = FormalSeries::zero(&self.var, self.order + k);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j + k as usize] = c.clone();
        }
        out
    }

    /// Term-by-term derivative, exact to order `order - 1`.
    pub fn derivative(&self) -> Self {
        let order = self.order.saturating_sub(1);
        FormalSeries::from_coeffs(
            &self.var,
            order,
            (1..=self.order).map(|j| self.coeff(j).scale(&int(j as i64))),
        )
    }

    /// Reciprocal; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self
            .coeff(0)
            .as_rational()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| {
                Error::SeriesDomain("reciprocal needs a nonzero rational constant term".into())
            })?;
        let inv0 = c0.recip();
        let mut out = FormalSeries::zero(&self.var, self.order);
        out.coeffs[0] = Scalar::from_rational(inv0.clone());
        for n in 1..=self.order {
            let mut acc = Scalar::zero();
            for j in 1..=n {
                acc += &(self.coeff(j) * out.coeff(n - j));
            }
            out.coeffs[n as usize] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    /// `exp` of a series with zero constant term, via `n e_n = sum j s_j e_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::SeriesDomain("exp needs constant term 0".into()));
        }
        let mut out = FormalSeries::one(&self.var, self.order);
        for n in 1..=self.order {
            let mut acc = Scalar::zero();
            for j in 1..=n {
                acc += &(self.coeff(j) * out.coeff(n - j)).scale(&int(j as i64));
            }
            out.coeffs[n as usize] = acc.scale(&rat(1, n as i64));
        }
        Ok(out)
    }

    /// `log` of a series with constant term 1, as the antiderivative of `S'/S`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::SeriesDomain("log needs constant term 1".into()));
        }
        let quotient = self
            .derivative()
            .mul(&self.inverse()?.truncate(self.order.saturating_sub(1)));
        let mut out = FormalSeries::zero(&self.var, self.order);
        for n in 1..=self.order {
            out.coeffs[n as usize] = quotient.coeff(n - 1).scale(&rat(1, n as i64));
        }
        Ok(out)
    }

    /// Rewrite an even series in `z` as a series in `w = z^2` (or `w = -z^2`
    /// when `negate` is set): the coefficient of `w^k` is `(+-1)^k c_{2k}`.
    pub fn compose_even(&self, new_var: &str, negate: bool) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::SeriesDomain(
                "compose_even needs an even series".into(),
            ));
        }
        let order = self.order / 2;
        Ok(FormalSeries::from_coeffs(
            new_var,
            order,
            (0..=order).map(|k| {
                let c = self.coeff(2 * k).clone();
                if negate && k % 2 == 1 {
                    -c
                } else {
                    c
                }
            }),
        ))
    }

    fn render(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => self.var.clone(),
                _ if latex => format!("{}^{{{j}}}", self.var),
                _ => format!("{}^{j}", self.var),
            };
            let coeff = if latex { c.to_latex() } else { c.to_string() };
            let coeff = if c.needs_parens() {
                format!("({coeff})")
            } else {
                coeff
            };
            parts.push(match (j, c.is_one()) {
                (0, _) => coeff,
                (_, true) => mono,
                _ if latex => format!("{coeff}{mono}"),
                _ => format!("{coeff}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let tail = if latex {
            format!("O({}^{{{}}})", self.var, self.order + 1)
        } else {
            format!("O({}^{})", self.var, self.order + 1)
        };
        parts.push(tail);
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

fn inv_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `tanh(z/2) = sum_{n>=1} 2 (4^n - 1) B_{2n} z^{2n-1} / (2n)!`.
fn tanh_half(var: &str, order: u32) -> FormalSeries {
    let mut s = FormalSeries::zero(var, order);
    for n in 1..=order.div_ceil(2) {
        let p = 2 * n - 1;
        if p > order {
            break;
        }
        let four_n = BigInt::from(4).pow(n);
        let c = Rational::from_integer(BigInt::from(2) * (four_n - 1))
            * bernoulli(2 * n)
            * inv_factorial(2 * n);
        s.coeffs[p as usize] = Scalar::from_rational(c);
    }
    s
}

/// `Q(z) = 1 / cosh^2(z/2) = 2 d/dz tanh(z/2)`.
pub fn qtilde(order: u32) -> FormalSeries {
    tanh_half("z", order + 1)
        .derivative()
        .scale(&Scalar::from_int(2))
}

/// Bracket `zeta'(1-2k)/zeta(1-2k) + H_{2k-1}/2 - log2/(1-4^{-k})`.
pub fn u_bracket(k: u32) -> Scalar {
    let zeta = zeta_negative_odd(k).expect("k >= 1");
    let h = harmonic(2 * k - 1).expect("k >= 1");
    let mut s = Scalar::symbol(Symbol::zeta_prime(k)).scale(&zeta.recip());
    s += &Scalar::from_rational(h / int(2));
    s -= &Scalar::log2().scale(&inverse_one_minus_quarter_power(k));
    s
}

/// Additive class `U`: coefficient of `x^{2k-1}/(2k-1)!` is [`u_bracket`].
pub fn u_series(order: u32) -> FormalSeries {
    let mut s = FormalSeries::zero("x", order);
    for k in 1.. {
        let p = 2 * k - 1;
        if p > order {
            break;
        }
        s.coeffs[p as usize] = u_bracket(k).scale(&inv_factorial(p));
    }
    s
}

/// `R(-1,x) - R(-1,-x)` for the Bismut class at `alpha = -1`, assembled from
/// `L(-1,s) = (2^{1-s} - 1) zeta(s)` and its `s`-derivative at `s = -m`:
/// only odd `m` survive and `zeta(-m)`, `zeta'(-m)` are then exact or formal.
pub fn rodd(order: u32) -> FormalSeries {
    let mut s = FormalSeries::zero("x", order);
    for k in 1.. {
        let m = 2 * k - 1;
        if m > order {
            break;
        }
        let zeta = zeta_negative_odd(k).expect("k >= 1");
        let two_pow = Rational::from_integer(BigInt::from(2).pow(m + 1));
        let l_value = (&two_pow - int(1)) * &zeta;
        let mut dl = Scalar::log2().scale(&-(&two_pow * &zeta));
        dl += &Scalar::symbol(Symbol::zeta_prime(k)).scale(&(&two_pow - int(1)));
        let half_harmonic = (1..=m as i64).fold(Rational::zero(), |acc, j| acc + rat(1, 2 * j));
        let mut coef = dl;
        coef += &Scalar::from_rational(l_value * half_harmonic);
        s.coeffs[m as usize] = coef.scale(&(int(2) * inv_factorial(m)));
    }
    s
}

/// Right-hand side series of the Lagrangian arithmetic relation, without
/// its constant term: `-sum_k h_{2k-1} x^{2k-1}`, so that its additive class
/// is `-sum_k h_{2k-1} (2k-1)! ch^{[2k-1]}`.
pub fn harryrel_series(order: u32) -> FormalSeries {
    let mut s = FormalSeries::zero("x", order);
    for k in 1.. {
        let p = 2 * k - 1;
        if p > order {
            break;
        }
        s.coeffs[p as usize] = -Scalar::symbol(Symbol::harmonic(k));
    }
    s
}

/// Bracket `2 zeta'(1-2k)/zeta(1-2k) + H_{2k-1} - 2 log2/(1-4^{-k})` that,
/// times `(-1)^k (2k-1)! ch^{[2k-1]}`, gives the `k`-th arithmetic
/// Pontrjagin class of the Hodge bundle.
pub fn pontrjagin_bracket(k: u32) -> Scalar {
    u_bracket(k).scale(&int(2))
}

/// Additive series whose class is `sum_k (-1)^k [pontrjagin_bracket] (2k-1)! ch^{[2k-1]}`.
pub fn pontrjagin_series(order: u32) -> FormalSeries {
    let mut s = FormalSeries::zero("x", order);
    for k in 1.. {
        let p = 2 * k - 1;
        if p > order {
            break;
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        s.coeffs[p as usize] = pontrjagin_bracket(k).scale(&sign);
    }
    s
}

pub fn builtin_series(name: &str, order: u32) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::SeriesDomain("builtin series need order >= 1".into()));
    }
    match name {
        "qtilde" => Ok(qtilde(order)),
        "u" => Ok(u_series(order)),
        "rodd" => Ok(rodd(order)),
        "harryrel" => Ok(harryrel_series(order)),
        "pontrjagin" => Ok(pontrjagin_series(order)),
        other => Err(Error::UnknownSeries(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(rat(n, d))
    }

    fn z(k: u32) -> Scalar {
        Scalar::symbol(Symbol::zeta_prime(k))
    }

    /// `1 / ((1 + cosh z) / 2)` by series inversion, independent of Bernoulli numbers.
    fn sech2_half_oracle(order: u32) -> FormalSeries {
        let half_one_plus_cosh = FormalSeries::from_coeffs(
            "z",
            order,
            (0..=order).map(|j| match j {
                0 => q(1, 1),
                j if j % 2 == 0 => Scalar::from_rational(inv_factorial(j) / int(2)),
                _ => Scalar::zero(),
            }),
        );
        half_one_plus_cosh.inverse().unwrap()
    }

    #[test]
    fn qtilde_matches_sech_oracle() {
        let s = qtilde(12);
        assert_eq!(s, sech2_half_oracle(12));
        assert_eq!(s.coeff(0), &q(1, 1));
        assert_eq!(s.coeff(2), &q(-1, 4));
        assert_eq!(s.coeff(4), &q(1, 24));
        assert_eq!(s.coeff(6), &q(-17, 2880));
        assert!(s.is_even());
    }

    #[test]
    fn exp_log_inverse_pair() {
        let one_plus_z = FormalSeries::from_coeffs("z", 10, [q(1, 1), q(1, 1)]);
        assert_eq!(one_plus_z.log().unwrap().exp().unwrap(), one_plus_z);
        assert!(FormalSeries::one("z", 3).exp().is_err());
        assert!(FormalSeries::zero("z", 3).log().is_err());
    }

    #[test]
    fn compose_even_sign_flip() {
        let z2 = FormalSeries::monomial("z", 4, 2, q(1, 1));
        let flipped = z2.compose_even("w", true).unwrap();
        assert_eq!(flipped, FormalSeries::monomial("w", 2, 1, q(-1, 1)));
        let plain = z2.compose_even("w", false).unwrap();
        assert_eq!(plain, FormalSeries::monomial("w", 2, 1, q(1, 1)));
        let odd = FormalSeries::monomial("z", 4, 1, q(1, 1));
        assert!(odd.compose_even("w", true).is_err());
    }

    #[test]
    fn rodd_first_coefficient() {
        // (4-1)(2 Z1 - H1/12) - 2 L 4 (-1/12) = 6 Z1 - 1/4 + 2/3 L
        let s = rodd(5);
        let expected = &(&z(1).scale(&int(6)) + &q(-1, 4)) + &Scalar::log2().scale(&rat(2, 3));
        assert_eq!(s.coeff(1), &expected);
    }

    #[test]
    fn rodd_matches_closed_form() {
        let s = rodd(13);
        for k in 1..=7u32 {
            let four_k = int(4i64.pow(k));
            let zeta = zeta_negative_odd(k).unwrap();
            let h = harmonic(2 * k - 1).unwrap();
            let mut closed = &z(k).scale(&int(2)) + &Scalar::from_rational(&zeta * &h);
            closed = closed.scale(&(&four_k - int(1)));
            closed -= &Scalar::log2().scale(&(int(2) * &four_k * &zeta));
            let p = 2 * k - 1;
            assert_eq!(
                s.coeff(p).scale(&Rational::from_integer(factorial(p))),
                closed,
                "k={k}"
            );
            assert!(s.coeff(p + 1).is_zero());
        }
    }

    #[test]
    fn u_first_coefficient() {
        let expected = &(&z(1).scale(&int(-12)) + &q(1, 2)) - &Scalar::log2().scale(&rat(4, 3));
        assert_eq!(u_series(3).coeff(1), &expected);
    }

    #[test]
    fn u_is_half_the_pontrjagin_bracket() {
        for k in 1..=6 {
            assert_eq!(pontrjagin_bracket(k), u_bracket(k).scale(&int(2)));
        }
        // k = 1: 24 Z1 - 1 + 8/3 L after the sign (-1)^1
        let p1 = pontrjagin_series(1);
        let expected = &(&z(1).scale(&int(24)) - &q(1, 1)) + &Scalar::log2().scale(&rat(8, 3));
        assert_eq!(p1.coeff(1), &expected);
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(
            builtin_series("todd", 4),
            Err(Error::UnknownSeries(_))
        ));
        assert!(builtin_series("qtilde", 0).is_err());
        assert_eq!(builtin_series("qtilde", 6).unwrap().coeff(0), &q(1, 1));
    }

    #[test]
    fn derivative_and_shift() {
        let s = FormalSeries::from_coeffs("z", 3, [q(1, 1), q(2, 1), q(3, 1), q(4, 1)]);
        assert_eq!(
            s.derivative(),
            FormalSeries::from_coeffs("z", 2, [q(2, 1), q(6, 1), q(12, 1)])
        );
        assert_eq!(s.shift(1).coeff(4), &q(4, 1));
    }
}
