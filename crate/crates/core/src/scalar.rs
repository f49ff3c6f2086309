//! The coefficient ring `Q[L, Z1, Z3, ..., h1, h3, ...]`.
//!
//! `L` stands for `log 2`, `Z(2k-1)` for `zeta'(1-2k)` and `h(2k-1)` for a
//! formal harmonic placeholder. All symbols are independent commuting
//! indeterminates, so every value is an exact polynomial with rational
//! coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{format_rational, is_negative, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// `log 2`
    Log2,
    /// `zeta'(-n)` for odd `n`
    ZetaPrime(u32),
    /// formal harmonic symbol `h_n` for odd `n`
    Harmonic(u32),
}

impl Symbol {
    /// `Z_{2k-1}`
    pub fn zeta_prime(k: u32) -> Symbol {
        Symbol::ZetaPrime(2 * k - 1)
    }

    /// `h_{2k-1}`
    pub fn harmonic(k: u32) -> Symbol {
        Symbol::Harmonic(2 * k - 1)
    }

    /// Key used in JSON: `L`, `Z1`, `h3`, ...
    pub fn key(&self) -> String {
        match self {
            Symbol::Log2 => "L".to_string(),
            Symbol::ZetaPrime(n) => format!("Z{n}"),
            Symbol::Harmonic(n) => format!("h{n}"),
        }
    }

    pub fn from_key(key: &str) -> Result<Symbol> {
        let bad = || Error::Parse(format!("unknown constant symbol {key:?}"));
        if key == "L" {
            return Ok(Symbol::Log2);
        }
        let (head, idx) = key.split_at(1);
        let n: u32 = idx.parse().map_err(|_| bad())?;
        if n.is_multiple_of(2) {
            return Err(bad());
        }
        match head {
            "Z" => Ok(Symbol::ZetaPrime(n)),
            "h" => Ok(Symbol::Harmonic(n)),
            _ => Err(bad()),
        }
    }

    fn text(&self) -> String {
        match self {
            Symbol::Log2 => "log2".to_string(),
            Symbol::ZetaPrime(n) => format!("zeta'(-{n})"),
            Symbol::Harmonic(n) => format!("h{n}"),
        }
    }

    fn latex(&self) -> String {
        match self {
            Symbol::Log2 => "\\log 2".to_string(),
            Symbol::ZetaPrime(n) => format!("\\zeta'(-{n})"),
            Symbol::Harmonic(n) => format!("h_{{{n}}}"),
        }
    }
}

/// A monomial in the constant symbols, sorted by symbol with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstMonomial(Vec<(Symbol, u32)>);

impl ConstMonomial {
    pub fn one() -> Self {
        ConstMonomial(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        ConstMonomial(vec![(s, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in powers {
            *map.entry(s).or_default() += e;
        }
        ConstMonomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        ConstMonomial::from_powers(self.0.iter().chain(other.0.iter()).copied())
    }

    fn render(&self, latex: bool) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| {
                let base = if latex { s.latex() } else { s.text() };
                match (*e, latex) {
                    (1, _) => base,
                    (e, true) => format!("{base}^{{{e}}}"),
                    (e, false) => format!("{base}^{e}"),
                }
            })
            .collect();
        parts.join(if latex { " " } else { "*" })
    }
}

/// Exact element of `Q[L, Z_*, h_*]`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    terms: BTreeMap<ConstMonomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Scalar::zero();
        s.add_term(ConstMonomial::one(), r);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(crate::numbers::int(n))
    }

    pub fn symbol(sym: Symbol) -> Self {
        Scalar::term(ConstMonomial::symbol(sym), Rational::one())
    }

    pub fn term(m: ConstMonomial, c: Rational) -> Self {
        let mut s = Scalar::zero();
        s.add_term(m, c);
        s
    }

    pub fn log2() -> Self {
        Scalar::symbol(Symbol::Log2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value if no constant symbol occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&ConstMonomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn rational_part(&self) -> Rational {
        self.terms
            .get(&ConstMonomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &ConstMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a single symbol in the linear part.
    pub fn linear_coefficient(&self, s: Symbol) -> Rational {
        self.coefficient(&ConstMonomial::symbol(s))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ConstMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| *s))
            .collect()
    }

    /// True when no product of constant symbols occurs.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() <= 1)
    }

    pub fn add_term(&mut self, m: ConstMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// `self += r * other`
    pub fn add_scaled(&mut self, other: &Scalar, r: &Rational) {
        if r.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * r);
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        (0..e).fold(Scalar::one(), |acc, _| &acc * self)
    }

    /// Simultaneous substitution of constant symbols. A binding whose value
    /// mentions a bound symbol is rejected as cyclic (identity bindings
    /// `s -> s` are allowed).
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Scalar> {
        for (s, v) in bindings {
            if *v == Scalar::symbol(*s) {
                continue;
            }
            if let Some(hit) = v.symbols().into_iter().find(|t| bindings.contains_key(t)) {
                return Err(Error::CyclicBinding(format!(
                    "{} -> {}",
                    s.key(),
                    hit.key()
                )));
            }
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut acc = Scalar::from_rational(c.clone());
            let mut rest = Vec::new();
            for &(s, e) in &m.0 {
                match bindings.get(&s) {
                    Some(v) => acc = &acc * &v.pow(e),
                    None => rest.push((s, e)),
                }
            }
            let rest = Scalar::term(ConstMonomial::from_powers(rest), Rational::one());
            out += &(&acc * &rest);
        }
        Ok(out)
    }

    /// Render for use as a coefficient: wrapped in parentheses when it is a sum.
    pub fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if latex {
                latex_rational(&abs)
            } else {
                format_rational(&abs)
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.render(latex));
            } else if latex {
                out.push_str(&format!("{coeff}{}", m.render(true)));
            } else {
                out.push_str(&format!("{coeff}*{}", m.render(false)));
            }
        }
        out
    }
}

pub(crate) fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if is_negative(r) {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
