//! Characteristic classes as graded polynomials: Newton identities, Pontrjagin
//! classes, additive and multiplicative classes of power series.

use std::collections::BTreeMap;

use crate::echelon::{Echelon, Payload, SparseRow};
use crate::error::{Error, Result};
use crate::graded::{monomials_of_degree, Generator, GeneratorSet, Gens, GradedPoly, Monomial};
use crate::numbers::{factorial, int, Rational};
use crate::scalar::Scalar;
use crate::series::FormalSeries;

/// Chern classes `c_1..c_rank` of a bundle, as polynomials; `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    gens: Gens,
    classes: Vec<GradedPoly>,
}

impl ClassVector {
    pub fn new(gens: &Gens, classes: Vec<GradedPoly>) -> Result<Self> {
        for (j, c) in classes.iter().enumerate() {
            if c.gens() != gens {
                return Err(Error::GeneratorMismatch);
            }
            if !c.is_zero() && (!c.is_homogeneous() || c.degree() != Some(j as u32 + 1)) {
                return Err(Error::Shape(format!(
                    "c_{} must be homogeneous of degree {}",
                    j + 1,
                    j + 1
                )));
            }
        }
        Ok(ClassVector {
            gens: gens.clone(),
            classes,
        })
    }

    /// `c_j = ` the j-th generator, for generators of degrees `1..rank`.
    pub fn generic(gens: &Gens, rank: usize) -> Result<Self> {
        if rank > gens.len() {
            return Err(Error::OutOfRange(format!(
                "rank {rank} exceeds {} generators",
                gens.len()
            )));
        }
        ClassVector::new(
            gens,
            (0..rank).map(|i| GradedPoly::generator(gens, i)).collect(),
        )
    }

    /// Fresh generators `c1..c_rank` used as the Chern classes.
    pub fn universal(rank: u32) -> Self {
        let gens = GeneratorSet::indexed("c", "c", rank);
        ClassVector::generic(&gens, rank as usize).expect("rank matches generators")
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn chern(&self, j: usize) -> GradedPoly {
        match j {
            0 => GradedPoly::one(&self.gens),
            j if j <= self.classes.len() => self.classes[j - 1].clone(),
            _ => GradedPoly::zero(&self.gens),
        }
    }

    /// `sum_j c_j`.
    pub fn total(&self) -> GradedPoly {
        (0..=self.rank()).fold(GradedPoly::zero(&self.gens), |acc, j| &acc + &self.chern(j))
    }
}

/// Power sums `P_k = k! ch^[k]` for `k = 0..=n`, with `P_0` the rank:
/// `P_k = sum_{j<k} (-1)^(j-1) c_j P_(k-j) + (-1)^(k-1) k c_k`.
pub fn ch_from_c(c: &ClassVector, n: u32) -> Vec<GradedPoly> {
    let gens = c.gens();
    let sign = |j: usize| int(if j % 2 == 1 { 1 } else { -1 });
    let mut p = vec![GradedPoly::constant(
        gens,
        Scalar::from_int(c.rank() as i64),
    )];
    for k in 1..=n as usize {
        let mut acc = c.chern(k).scale_rational(&(sign(k) * int(k as i64)));
        for j in 1..k {
            acc = &acc + &(&c.chern(j) * &p[k - j]).scale_rational(&sign(j));
        }
        p.push(acc);
    }
    p
}

/// Chern classes from power sums `P_1..P_n` (Newton's identities solved for `c`).
pub fn c_from_ch(p: &[GradedPoly], rank: usize) -> Result<ClassVector> {
    let gens = p
        .first()
        .ok_or_else(|| Error::Shape("need at least P_0".into()))?
        .gens()
        .clone();
    let mut c = vec![GradedPoly::one(&gens)];
    for k in 1..=rank {
        let mut acc = GradedPoly::zero(&gens);
        for j in 1..=k {
            let pj = p.get(j).cloned().unwrap_or_else(|| GradedPoly::zero(&gens));
            let term = &c[k - j] * &pj;
            acc = if j % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        c.push(acc.scale_rational(&(int(1) / int(k as i64))));
    }
    ClassVector::new(&gens, c.into_iter().skip(1).collect())
}

/// `p_k = (-1)^k sum_l (-1)^l c_l c_{2k-l}` with `c[0] = 1` and missing entries zero.
pub fn pontrjagin_component(c: &[GradedPoly], k: u32) -> GradedPoly {
    let gens = c[0].gens().clone();
    let get = |j: u32| {
        c.get(j as usize)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(&gens))
    };
    let mut acc = GradedPoly::zero(&gens);
    for l in 0..=2 * k {
        let term = &get(l) * &get(2 * k - l);
        acc = if l % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    if k % 2 == 1 {
        -&acc
    } else {
        acc
    }
}

/// `p_1..p_n` of a class vector.
pub fn pontrjagin_from_c(c: &ClassVector, n: u32) -> Vec<GradedPoly> {
    let cs: Vec<GradedPoly> = (0..=c.rank()).map(|j| c.chern(j)).collect();
    (1..=n).map(|k| pontrjagin_component(&cs, k)).collect()
}

/// `sum_k f_k P_k`, truncated at `cap`.
pub fn additive_class(f: &FormalSeries, c: &ClassVector, cap: u32) -> Result<GradedPoly> {
    if !f.coeff(0).is_zero() {
        return Err(Error::SeriesDomain(
            "additive classes need a series without constant term".into(),
        ));
    }
    let n = f.order().min(cap);
    let p = ch_from_c(c, n);
    let mut out = GradedPoly::zero(c.gens());
    for k in 1..=n {
        let fk = f.coeff(k);
        if !fk.is_zero() {
            out = &out + &p[k as usize].scale(fk);
        }
    }
    Ok(out.truncate(cap))
}

/// `exp(additive_class(log Q))`, truncated at `cap`.
pub fn multiplicative_class(q: &FormalSeries, c: &ClassVector, cap: u32) -> Result<GradedPoly> {
    let order = q.order().max(cap);
    let q = if q.order() < order {
        q.truncate(order)
    } else {
        q.clone()
    };
    let log = q.log()?;
    additive_class(&log, c, cap)?.exp_truncated(cap)
}

/// `Q(sqrt(-z)) * d/dz (z / Q(sqrt(-z)))`: its `z^k` coefficient is the coefficient of
/// the single class `p_k` in the multiplicative class of `Q`.
pub fn cauchy_single_class(q: &FormalSeries) -> Result<FormalSeries> {
    if !q.is_even() {
        return Err(Error::SeriesDomain(
            "Cauchy extraction needs an even series".into(),
        ));
    }
    if !q.coeff(0).is_one() {
        return Err(Error::SeriesDomain(
            "Cauchy extraction needs constant term 1".into(),
        ));
    }
    let var = q.var().to_string();
    let g = q.compose_even(&var, true)?;
    let n = g.order();
    let z = FormalSeries::monomial(&var, n, 1, Scalar::one());
    let inner = z.mul(&g.inverse()?).derivative();
    Ok(g.truncate(n.saturating_sub(1))
        .mul(&inner.truncate(n.saturating_sub(1))))
}

/// Coordinates of `target` on the monomials in `p_1..p_n`, where `p` gives each
/// `p_j` as a polynomial. Fails when `target` is not in their span.
pub fn express_in_basis(
    target: &GradedPoly,
    p: &[GradedPoly],
) -> Result<BTreeMap<Vec<u32>, Rational>> {
    if !target.is_rational() {
        return Err(Error::Shape("expansion needs rational coefficients".into()));
    }
    let gens = target.gens().clone();
    let slots = GeneratorSet::new(
        p.iter()
            .enumerate()
            .map(|(j, pj)| Generator {
                name: format!("p{}", j + 1),
                latex: format!("p_{{{}}}", j + 1),
                degree: pj.degree().unwrap_or(1).max(1),
            })
            .collect(),
    )?;
    let mut out = BTreeMap::new();
    for (k, comp) in target.components() {
        let cols = monomials_of_degree(&gens, k);
        let index: BTreeMap<Monomial, usize> = cols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut ech: Echelon<Vec<u32>> = Echelon::new(cols.len());
        for mu in monomials_of_degree(&slots, k) {
            let image =
                GradedPoly::term(&slots, mu.clone(), Scalar::one()).substitute(&gens, p, None)?;
            let row: SparseRow = image
                .terms()
                .map(|(m, c)| (index[m], c.rational_part()))
                .collect();
            ech.insert(row, [(mu.exps().to_vec(), int(1))].into());
        }
        if !ech.kernel().is_empty() {
            return Err(Error::Shape(
                "p-monomials are dependent at this rank".into(),
            ));
        }
        let mut row: SparseRow = comp
            .terms()
            .map(|(m, c)| (index[m], c.rational_part()))
            .collect();
        let mut payload = Payload::new();
        ech.reduce(&mut row, &mut payload);
        if !row.is_empty() {
            return Err(Error::NotInIdeal(format!(
                "degree {k} part is not a polynomial in p"
            )));
        }
        for (mu, c) in payload {
            out.insert(mu, -c);
        }
    }
    Ok(out)
}

/// Coefficients of the single classes `p_1..p_n` in the multiplicative class of
/// an even series `Q`, computed on a bundle of rank `2n` with the exp/log route
/// and an exact change of basis to Pontrjagin monomials.
pub fn single_class_coefficients(q: &FormalSeries, n: u32) -> Result<Vec<Rational>> {
    let rank = 2 * n;
    let c = ClassVector::universal(rank);
    let total = multiplicative_class(q, &c, 2 * n)?;
    let p = pontrjagin_from_c(&c, n);
    let coords = express_in_basis(&total, &p)?;
    Ok((1..=n as usize)
        .map(|k| {
            let mut key = vec![0u32; n as usize];
            key[k - 1] = 1;
            coords.get(&key).cloned().unwrap_or_default()
        })
        .collect())
}

/// `ch^[k]` from the power sum `P_k`.
pub fn power_sum_to_ch(p: &GradedPoly, k: u32) -> GradedPoly {
    p.scale_rational(&(Rational::from_integer(1.into()) / Rational::from_integer(factorial(k))))
}
