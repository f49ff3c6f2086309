//! Sparse graded polynomials over [`Scalar`] with weighted generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numbers::{int, Rational};
use crate::scalar::Scalar;
use crate::series::FormalSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub latex: String,
    pub degree: u32,
}

/// Ordered list of generators with positive degrees and unique names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

pub type Gens = Arc<GeneratorSet>;

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Gens> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::OutOfRange(format!(
                    "generator {} has degree 0",
                    g.name
                )));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Parse(format!("duplicate generator name {}", g.name)));
            }
        }
        Ok(Arc::new(GeneratorSet { gens }))
    }

    /// Generators `{prefix}1 .. {prefix}n` with degrees `1..n`.
    pub fn indexed(prefix: &str, latex: &str, n: u32) -> Gens {
        GeneratorSet::new(
            (1..=n)
                .map(|j| Generator {
                    name: format!("{prefix}{j}"),
                    latex: format!("{latex}_{{{j}}}"),
                    degree: j,
                })
                .collect(),
        )
        .expect("indexed generators are valid")
    }

    pub fn from_degrees(names_and_degrees: &[(&str, u32)]) -> Result<Gens> {
        GeneratorSet::new(
            names_and_degrees
                .iter()
                .map(|(n, d)| Generator {
                    name: n.to_string(),
                    latex: n.to_string(),
                    degree: *d,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }
}

/// Exponent vector with its weighted degree. Ordered by degree, then with
/// larger exponents on earlier generators first (`u1^3 < u1*u2 < u3`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(gens: &GeneratorSet, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), gens.len(), "exponent vector length");
        let degree = exps
            .iter()
            .zip(gens.iter())
            .map(|(e, g)| e * g.degree)
            .sum();
        Monomial { degree, exps }
    }

    pub fn one(gens: &GeneratorSet) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; gens.len()],
        }
    }

    pub fn generator(gens: &GeneratorSet, i: usize) -> Self {
        let mut exps = vec![0; gens.len()];
        exps[i] = 1;
        Monomial::new(gens, exps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let exps: Option<Vec<u32>> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        Some(Monomial {
            degree: self.degree - other.degree,
            exps: exps?,
        })
    }

    pub fn render(&self, gens: &GeneratorSet, latex: bool) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                let g = gens.get(i);
                let name = if latex { &g.latex } else { &g.name };
                match (*e, latex) {
                    (1, _) => name.clone(),
                    (e, true) => format!("{name}^{{{e}}}"),
                    (e, false) => format!("{name}^{e}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(if latex { " " } else { "*" })
        }
    }
}

/// All monomials of weighted degree `k`, in [`Monomial`] order.
pub fn monomials_of_degree(gens: &GeneratorSet, k: u32) -> Vec<Monomial> {
    fn rec(degs: &[u32], i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=rem / degs[i]).rev() {
            cur.push(e);
            rec(degs, i + 1, rem - e * degs[i], cur, out);
            cur.pop();
        }
    }
    let degs = gens.degrees();
    let mut out = Vec::new();
    rec(&degs, 0, k, &mut Vec::with_capacity(degs.len()), &mut out);
    out.into_iter()
        .map(|exps| Monomial { degree: k, exps })
        .collect()
}

/// Polynomial over a fixed generator set; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    gens: Gens,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedPoly {
    pub fn zero(gens: &Gens) -> Self {
        GradedPoly {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gens: &Gens, c: Scalar) -> Self {
        GradedPoly::term(gens, Monomial::one(gens), c)
    }

    pub fn one(gens: &Gens) -> Self {
        GradedPoly::constant(gens, Scalar::one())
    }

    pub fn term(gens: &Gens, m: Monomial, c: Scalar) -> Self {
        let mut p = GradedPoly::zero(gens);
        p.add_term(m, c);
        p
    }

    pub fn generator(gens: &Gens, i: usize) -> Self {
        GradedPoly::term(gens, Monomial::generator(gens, i), Scalar::one())
    }

    /// Generator by name; panics if absent.
    pub fn var(gens: &Gens, name: &str) -> Self {
        let i = gens
            .index_of(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        GradedPoly::generator(gens, i)
    }

    pub fn from_terms(gens: &Gens, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = GradedPoly::zero(gens);
        for (exps, c) in terms {
            p.add_term(Monomial::new(gens, exps), c);
        }
        p
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> Scalar {
        self.coefficient(&Monomial::new(&self.gens, exps.to_vec()))
    }

    /// Highest degree present, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// All coefficients are rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_rational_term(&mut self, m: Monomial, c: &Rational) {
        if !c.is_zero() {
            self.add_term(m, Scalar::from_rational(c.clone()));
        }
    }

    fn check(&self, other: &GradedPoly) -> Result<()> {
        if Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch)
        }
    }

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.try_mul_truncated(other, None)
    }

    /// Product with all terms of degree above `cap` dropped.
    pub fn try_mul_truncated(&self, other: &GradedPoly, cap: Option<u32>) -> Result<GradedPoly> {
        self.check(other)?;
        let mut out = GradedPoly::zero(&self.gens);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if cap.is_some_and(|cap| m1.degree + m2.degree > cap) {
                    continue;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.gens);
        }
        let mut out = GradedPoly::zero(&self.gens);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> GradedPoly {
        if r.is_zero() {
            return GradedPoly::zero(&self.gens);
        }
        GradedPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(r)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        GradedPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32, cap: Option<u32>) -> Result<GradedPoly> {
        let mut acc = GradedPoly::one(&self.gens);
        for _ in 0..e {
            acc = acc.try_mul_truncated(self, cap)?;
        }
        Ok(acc)
    }

    pub fn graded_component(&self, k: u32) -> GradedPoly {
        GradedPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components in increasing degree.
    pub fn components(&self) -> Vec<(u32, GradedPoly)> {
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree)
                .or_insert_with(|| GradedPoly::zero(&self.gens))
                .terms
                .insert(m.clone(), c.clone());
        }
        out.into_iter().collect()
    }

    pub fn truncate(&self, cap: u32) -> GradedPoly {
        GradedPoly {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(&Scalar) -> Result<Scalar>,
    ) -> Result<GradedPoly> {
        let mut out = GradedPoly::zero(&self.gens);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Ring homomorphism sending generator `i` to `images[i]` (all over `target`).
    /// Terms above `cap` in the target are dropped.
    pub fn substitute(
        &self,
        target: &Gens,
        images: &[GradedPoly],
        cap: Option<u32>,
    ) -> Result<GradedPoly> {
        if images.len() != self.gens.len() {
            return Err(Error::GeneratorMismatch);
        }
        for img in images {
            if img.gens != *target {
                return Err(Error::GeneratorMismatch);
            }
        }
        let mut powers: Vec<Vec<GradedPoly>> = images
            .iter()
            .map(|g| vec![GradedPoly::one(target), g.clone()])
            .collect();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = GradedPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .try_mul_truncated(&images[i], cap)?;
                    powers[i].push(next);
                }
                acc = acc.try_mul_truncated(&powers[i][e as usize], cap)?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// `exp` of a polynomial without constant term, truncated at `cap`.
    pub fn exp_truncated(&self, cap: u32) -> Result<GradedPoly> {
        if !self.coefficient(&Monomial::one(&self.gens)).is_zero() {
            return Err(Error::SeriesDomain(
                "exp of a class needs zero degree-0 part".into(),
            ));
        }
        let mut out = GradedPoly::one(&self.gens);
        let mut power = GradedPoly::one(&self.gens);
        for n in 1..=cap {
            power = power
                .try_mul_truncated(self, Some(cap))?
                .scale_rational(&(int(1) / int(n as i64)));
            if power.is_zero() {
                break;
            }
            out = out.try_add(&power)?;
        }
        Ok(out)
    }

    pub fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest degree first, matching the usual way the formulas are written
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let coeff = if latex { c.to_latex() } else { c.to_string() };
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if !c.needs_parens() => (true, rest.to_string()),
                _ => (false, coeff),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = if c.needs_parens() {
                if latex {
                    format!("\\left({body}\\right)")
                } else {
                    format!("({body})")
                }
            } else {
                body
            };
            if m.is_one() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&m.render(&self.gens, latex));
            } else if latex {
                out.push_str(&format!("{body} {}", m.render(&self.gens, true)));
            } else {
                out.push_str(&format!("{body}·{}", m.render(&self.gens, false)));
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("generator sets must agree")
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(&-rhs).expect("generator sets must agree")
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("generator sets must agree")
    }
}

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale_rational(&int(-1))
    }
}

/// `sum_j S_j * power(j)` where `power(j)` is the element standing in for
/// `var^j`; it must be homogeneous of degree `j * step` (or zero). Terms above
/// `cap` are dropped.
pub fn apply_series_as_polynomial(
    series: &FormalSeries,
    gens: &Gens,
    step: u32,
    cap: u32,
    mut power: impl FnMut(u32) -> GradedPoly,
) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(gens);
    for j in 0..=series.order() {
        let c = series.coeff(j);
        if c.is_zero() {
            continue;
        }
        if j * step > cap {
            break;
        }
        let p = power(j);
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() || p.degree() != Some(j * step) {
            return Err(Error::Shape(format!(
                "element standing for power {j} is not homogeneous of degree {}",
                j * step
            )));
        }
        out = out.try_add(&p.scale(c))?;
    }
    Ok(out.truncate(cap))
}
