//! Graded quotient rings `ℚ[gens]/(relations)` computed degree by degree with
//! exact Gaussian elimination.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::classes::pontrjagin_component;
use crate::echelon::{Echelon, Payload, SparseRow};
use crate::error::{Error, Result};
use crate::graded::{monomials_of_degree, GeneratorSet, Gens, GradedPoly, Monomial};
use crate::numbers::int;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub degree: u32,
    pub poly: GradedPoly,
}

/// Generators plus homogeneous rational relations.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    gens: Gens,
    relations: Vec<Relation>,
}

impl RingPresentation {
    /// Mixed-degree relations are split into their graded components.
    pub fn new(gens: &Gens, relations: &[GradedPoly]) -> Result<Self> {
        let labelled: Vec<(String, GradedPoly)> = relations
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("r{}", i + 1), r.clone()))
            .collect();
        RingPresentation::with_labels(gens, labelled)
    }

    pub fn with_labels(gens: &Gens, relations: Vec<(String, GradedPoly)>) -> Result<Self> {
        let mut out = Vec::new();
        for (i, (label, rel)) in relations.into_iter().enumerate() {
            if rel.gens() != gens {
                return Err(Error::GeneratorMismatch);
            }
            if !rel.is_rational() {
                return Err(Error::NonRationalRelation(i));
            }
            let comps = rel.components();
            let split = comps.len() > 1;
            for (k, comp) in comps {
                let label = if split {
                    format!("{label}[{k}]")
                } else {
                    label.clone()
                };
                out.push(Relation {
                    label,
                    degree: k,
                    poly: comp,
                });
            }
        }
        Ok(RingPresentation {
            gens: gens.clone(),
            relations: out,
        })
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_index(&self, label: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.label == label)
    }
}

/// Coefficients `c_0..c_d` of the total class in the generators `u_1..u_d`.
fn total_class(gens: &Gens, d: u32, sign: i64) -> Vec<GradedPoly> {
    (0..=d)
        .map(|j| {
            if j == 0 {
                GradedPoly::one(gens)
            } else {
                GradedPoly::generator(gens, j as usize - 1).scale_rational(&int(sign.pow(j)))
            }
        })
        .collect()
}

/// Generators `u1..ud` with relations `p_1..p_d` and `u_d`.
pub fn tautological_presentation(d: u32) -> Result<RingPresentation> {
    if d == 0 {
        return Err(Error::OutOfRange("d must be at least 1".into()));
    }
    let gens = GeneratorSet::indexed("u", "c", d);
    let c = total_class(&gens, d, 1);
    let mut rels = Vec::new();
    for k in 1..=d {
        let p = pontrjagin_component(&c, k);
        if !p.is_zero() {
            rels.push((format!("p{k}"), p));
        }
    }
    rels.push((
        format!("u{d}"),
        GradedPoly::generator(&gens, d as usize - 1),
    ));
    RingPresentation::with_labels(&gens, rels)
}

/// Top degree `d(d-1)/2` of the tautological ring.
pub fn socle_degree(d: u32) -> u32 {
    d * (d.saturating_sub(1)) / 2
}

/// Monomials of degree `k` ordered least preferred first: non-square-free
/// before square-free, and within each group lexicographically larger
/// exponent vectors first.
pub fn columns_by_preference(gens: &GeneratorSet, k: u32) -> Vec<Monomial> {
    let mut cols = monomials_of_degree(gens, k);
    cols.sort_by(|a, b| {
        a.is_square_free()
            .cmp(&b.is_square_free())
            .then_with(|| b.exps().cmp(a.exps()))
    });
    cols
}

#[derive(Clone, Debug)]
struct DegreeTable {
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<Monomial>,
    reductions: HashMap<Monomial, GradedPoly>,
    rank: usize,
    rows: usize,
}

fn build_degree(pres: &RingPresentation, k: u32) -> DegreeTable {
    let gens = &pres.gens;
    let columns = columns_by_preference(gens, k);
    let index: HashMap<Monomial, usize> = columns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut ech: Echelon<()> = Echelon::lazy(columns.len());
    let mut rows = 0;
    // sparse relations first; stop once every monomial is a pivot
    let mut order: Vec<&Relation> = pres.relations.iter().filter(|r| r.degree <= k).collect();
    order.sort_by_key(|r| r.poly.len());
    'rels: for rel in order {
        for m in monomials_of_degree(gens, k - rel.degree) {
            if ech.is_full() {
                break 'rels;
            }
            let row: SparseRow = rel
                .poly
                .terms()
                .map(|(t, c)| (index[&t.mul(&m)], c.rational_part()))
                .collect();
            rows += 1;
            ech.insert(row, Payload::new());
        }
    }
    ech.finish();
    let mut reductions = HashMap::new();
    for (&p, row) in ech.pivots() {
        let mut nf = GradedPoly::zero(gens);
        for (&c, v) in &row.entries {
            if c != p {
                nf.add_rational_term(columns[c].clone(), &-v.clone());
            }
        }
        reductions.insert(columns[p].clone(), nf);
    }
    let mut basis: Vec<Monomial> = columns
        .iter()
        .enumerate()
        .filter(|(i, _)| !ech.is_pivot(*i))
        .map(|(_, m)| m.clone())
        .collect();
    basis.sort();
    DegreeTable {
        columns,
        index,
        basis,
        reductions,
        rank: ech.rank(),
        rows,
    }
}

#[cfg(feature = "parallel")]
fn build_tables(pres: &RingPresentation, max_degree: u32) -> Vec<DegreeTable> {
    use rayon::prelude::*;
    (0..=max_degree)
        .into_par_iter()
        .map(|k| build_degree(pres, k))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn build_tables(pres: &RingPresentation, max_degree: u32) -> Vec<DegreeTable> {
    (0..=max_degree).map(|k| build_degree(pres, k)).collect()
}

/// Quotient ring with normal-form tables for degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pres: Arc<RingPresentation>,
    max_degree: u32,
    tables: Vec<DegreeTable>,
    vanishes_above: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub dims: Vec<usize>,
    pub total: usize,
    /// Highest degree with a nonzero graded piece, with its dimension.
    pub socle: Option<(u32, usize)>,
    /// Every degree above `max_degree` is known to vanish.
    pub finite: bool,
}

impl QuotientRing {
    pub fn new(pres: RingPresentation, max_degree: u32) -> Self {
        let tables = build_tables(&pres, max_degree);
        let window = pres.gens.max_degree().max(1);
        // any monomial of degree above max_degree has a divisor whose degree
        // lies in the last `window` degrees
        let vanishes_above = max_degree + 1 >= window
            && (max_degree + 1 - window..=max_degree).all(|k| tables[k as usize].basis.is_empty());
        QuotientRing {
            pres: Arc::new(pres),
            max_degree,
            tables,
            vanishes_above,
        }
    }

    /// Builds far enough past `top` to certify that nothing survives above it.
    pub fn with_top(pres: RingPresentation, top: u32) -> Self {
        let extra = pres.gens.max_degree();
        QuotientRing::new(pres, top + extra)
    }

    pub fn tautological(d: u32) -> Result<Self> {
        Ok(QuotientRing::with_top(
            tautological_presentation(d)?,
            socle_degree(d),
        ))
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.pres
    }

    pub fn gens(&self) -> &Gens {
        &self.pres.gens
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn vanishes_above_max(&self) -> bool {
        self.vanishes_above
    }

    pub fn basis(&self, k: u32) -> &[Monomial] {
        self.tables
            .get(k as usize)
            .map(|t| t.basis.as_slice())
            .unwrap_or(&[])
    }

    pub fn dimension(&self, k: u32) -> usize {
        self.basis(k).len()
    }

    pub fn dimension_report(&self) -> DimensionReport {
        let dims: Vec<usize> = self.tables.iter().map(|t| t.basis.len()).collect();
        let socle = dims
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &n)| n > 0)
            .map(|(k, &n)| (k as u32, n));
        let total = dims.iter().sum();
        let cut = socle.map(|(k, _)| k as usize + 1).unwrap_or(1);
        DimensionReport {
            dims: if self.vanishes_above {
                dims[..cut].to_vec()
            } else {
                dims
            },
            total,
            socle,
            finite: self.vanishes_above,
        }
    }

    fn monomial_nf(&self, m: &Monomial) -> Result<Option<GradedPoly>> {
        let k = m.degree();
        if k > self.max_degree {
            return if self.vanishes_above {
                Ok(Some(GradedPoly::zero(self.gens())))
            } else {
                Err(Error::DegreeOverflow {
                    degree: k,
                    cap: self.max_degree,
                })
            };
        }
        Ok(self.tables[k as usize].reductions.get(m).cloned())
    }

    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly> {
        if p.gens() != self.gens() {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = GradedPoly::zero(self.gens());
        for (m, c) in p.terms() {
            match self.monomial_nf(m)? {
                None => out.add_term(m.clone(), c.clone()),
                Some(nf) => out = &out + &nf.scale(c),
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, p: &GradedPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Product of normal forms, reduced; terms beyond a vanishing top are skipped.
    pub fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly> {
        let cap = self.vanishes_above.then_some(self.max_degree);
        let prod = self
            .normal_form(a)?
            .try_mul_truncated(&self.normal_form(b)?, cap)?;
        self.normal_form(&prod)
    }

    pub fn pow(&self, a: &GradedPoly, e: u32) -> Result<GradedPoly> {
        let mut acc = self.normal_form(&GradedPoly::one(self.gens()))?;
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Coordinates of the normal form on a basis.
    pub fn coordinates(&self, p: &GradedPoly) -> Result<BTreeMap<Monomial, Scalar>> {
        Ok(self
            .normal_form(p)?
            .terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect())
    }

    /// Cofactors expressing `target` through the chosen relations
    /// (all relations when `subset` is `None`).
    pub fn membership_witness(
        &self,
        target: &GradedPoly,
        subset: Option<&[usize]>,
    ) -> Result<Witness> {
        self.membership_witnesses(target, subset, 1)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotInIdeal(target.to_string()))
    }

    /// Up to `count` distinct cofactor solutions: the first solution followed
    /// by shifts along syzygies (those found in the target degrees, then
    /// Koszul pairs).
    pub fn membership_witnesses(
        &self,
        target: &GradedPoly,
        subset: Option<&[usize]>,
        count: usize,
    ) -> Result<Vec<Witness>> {
        if target.gens() != self.gens() {
            return Err(Error::GeneratorMismatch);
        }
        if !target.is_rational() {
            return Err(Error::Shape(
                "witness targets must have rational coefficients".into(),
            ));
        }
        let chosen: Vec<usize> = match subset {
            Some(s) => {
                if let Some(&bad) = s.iter().find(|&&i| i >= self.pres.relations.len()) {
                    return Err(Error::OutOfRange(format!("relation index {bad}")));
                }
                s.to_vec()
            }
            None => (0..self.pres.relations.len()).collect(),
        };
        let mut base: Payload<(usize, Monomial)> = Payload::new();
        let mut syzygies: Vec<Payload<(usize, Monomial)>> = Vec::new();
        for (k, comp) in target.components() {
            let (ech, cols, index) = self.tracked_echelon(k, &chosen);
            let mut row: SparseRow = comp
                .terms()
                .map(|(m, c)| (index[m], c.rational_part()))
                .collect();
            let mut payload = Payload::new();
            ech.reduce(&mut row, &mut payload);
            if !row.is_empty() {
                let mut rest = GradedPoly::zero(self.gens());
                for (c, v) in row {
                    rest.add_rational_term(cols[c].clone(), &v);
                }
                return Err(Error::NotInIdeal(format!("{target} (remainder {rest})")));
            }
            crate::echelon::axpy(&mut base, &payload, &int(-1));
            syzygies.extend(ech.kernel().iter().cloned());
        }
        let to_witness = |p: &Payload<(usize, Monomial)>| {
            let mut cof: BTreeMap<usize, GradedPoly> = BTreeMap::new();
            for ((i, m), c) in p {
                cof.entry(*i)
                    .or_insert_with(|| GradedPoly::zero(self.gens()))
                    .add_rational_term(m.clone(), c);
            }
            cof.retain(|_, g| !g.is_zero());
            Witness {
                target: target.clone(),
                cofactors: cof,
                residue: GradedPoly::zero(self.gens()),
            }
        };
        // Koszul pairs r_j e_i - r_i e_j are syzygies in every degree
        for (a, &i) in chosen.iter().enumerate() {
            for &j in &chosen[a + 1..] {
                let mut s = Payload::new();
                for (m, c) in self.pres.relations[j].poly.terms() {
                    s.insert((i, m.clone()), c.rational_part());
                }
                for (m, c) in self.pres.relations[i].poly.terms() {
                    s.insert((j, m.clone()), -c.rational_part());
                }
                syzygies.push(s);
            }
        }
        let mut out = vec![to_witness(&base)];
        // shift by +s, -s, +2s, ... for every syzygy s in turn
        'outer: for step in 1i64.. {
            if syzygies.is_empty() {
                break;
            }
            for s in &syzygies {
                if out.len() >= count {
                    break 'outer;
                }
                let t = if step % 2 == 1 {
                    (step + 1) / 2
                } else {
                    -step / 2
                };
                let mut shifted = base.clone();
                crate::echelon::axpy(&mut shifted, s, &int(t));
                let w = to_witness(&shifted);
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        Ok(out)
    }

    #[allow(clippy::type_complexity)]
    fn tracked_echelon(
        &self,
        k: u32,
        chosen: &[usize],
    ) -> (
        Echelon<(usize, Monomial)>,
        Vec<Monomial>,
        HashMap<Monomial, usize>,
    ) {
        let gens = self.gens();
        let (cols, index) = match self.tables.get(k as usize) {
            Some(t) => (t.columns.clone(), t.index.clone()),
            None => {
                let cols = columns_by_preference(gens, k);
                let index = cols
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, m)| (m, i))
                    .collect();
                (cols, index)
            }
        };
        let mut ech = Echelon::new(cols.len());
        for &i in chosen {
            let rel = &self.pres.relations[i];
            if rel.degree > k {
                continue;
            }
            for m in monomials_of_degree(gens, k - rel.degree) {
                let row: SparseRow = rel
                    .poly
                    .terms()
                    .map(|(t, c)| (index[&t.mul(&m)], c.rational_part()))
                    .collect();
                ech.insert(row, [((i, m), int(1))].into());
            }
        }
        (ech, cols, index)
    }

    /// Per-degree bases and reduction rules, for audit.
    pub fn audit_json(&self) -> Value {
        let gens = self.gens();
        let degrees: Vec<Value> = self
            .tables
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let mut reductions: Vec<(&Monomial, &GradedPoly)> = t.reductions.iter().collect();
                reductions.sort_by(|a, b| a.0.cmp(b.0));
                json!({
                    "degree": k,
                    "monomials": t.columns.len(),
                    "relation_rows": t.rows,
                    "rank": t.rank,
                    "basis": t.basis.iter().map(|m| m.render(gens, false)).collect::<Vec<_>>(),
                    "reductions": reductions
                        .into_iter()
                        .map(|(m, nf)| json!({"monomial": m.render(gens, false), "normal_form": crate::json::poly_to_json(nf)}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "generators": gens.iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect::<Vec<_>>(),
            "relations": self.pres.relations.iter().map(|r| json!({"label": r.label, "degree": r.degree, "poly": crate::json::poly_to_json(&r.poly)})).collect::<Vec<_>>(),
            "max_degree": self.max_degree,
            "vanishes_above_max_degree": self.vanishes_above,
            "degrees": degrees,
        })
    }
}

/// `target = sum_i cofactors[i] * relation_i + residue`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub target: GradedPoly,
    pub cofactors: BTreeMap<usize, GradedPoly>,
    pub residue: GradedPoly,
}

impl Witness {
    pub fn expand(&self, pres: &RingPresentation) -> GradedPoly {
        let mut acc = self.residue.clone();
        for (i, g) in &self.cofactors {
            acc = &acc + &(g * &pres.relations()[*i].poly);
        }
        acc
    }

    /// Re-expands the identity in the free polynomial ring.
    pub fn verify(&self, pres: &RingPresentation) -> bool {
        self.expand(pres) == self.target
    }

    pub fn cofactor(&self, i: usize) -> GradedPoly {
        self.cofactors
            .get(&i)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(self.target.gens()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(d: u32) -> QuotientRing {
        QuotientRing::tautological(d).unwrap()
    }

    fn u(q: &QuotientRing, i: usize) -> GradedPoly {
        GradedPoly::generator(q.gens(), i - 1)
    }

    #[test]
    fn small_dimensions() {
        let r2 = ring(2);
        let rep = r2.dimension_report();
        assert_eq!(rep.total, 2);
        assert_eq!(rep.socle, Some((1, 1)));
        assert_eq!(
            r2.basis(1)
                .iter()
                .map(|m| m.render(r2.gens(), false))
                .collect::<Vec<_>>(),
            vec!["u1"]
        );
        let r3 = ring(3).dimension_report();
        assert_eq!(r3.dims, vec![1, 1, 1, 1]);
        assert_eq!(r3.socle, Some((3, 1)));
        assert_eq!(ring(4).dimension_report().total, 8);
        assert_eq!(ring(5).dimension_report().total, 16);
    }

    #[test]
    fn free_ring() {
        let gens = GeneratorSet::indexed("u", "u", 1);
        let q = QuotientRing::new(RingPresentation::new(&gens, &[]).unwrap(), 2);
        assert_eq!(q.dimension_report().dims, vec![1, 1, 1]);
        assert!(!q.vanishes_above_max());
        let u1 = GradedPoly::generator(&gens, 0);
        assert!(matches!(
            q.normal_form(&u1.pow(3, None).unwrap()),
            Err(Error::DegreeOverflow { degree: 3, cap: 2 })
        ));
    }

    #[test]
    fn reductions_in_r3() {
        let q = ring(3);
        let u1 = u(&q, 1);
        assert_eq!(
            q.normal_form(&(&u1 * &u1)).unwrap(),
            u(&q, 2).scale_rational(&int(2))
        );
        assert!(q.normal_form(&u1.pow(4, None).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn witnesses() {
        let q = ring(2);
        let u1 = u(&q, 1);
        let target = &u1 * &u1;
        let w = q.membership_witness(&target, None).unwrap();
        assert!(w.verify(q.presentation()));
        let zero = q
            .membership_witness(&GradedPoly::zero(q.gens()), None)
            .unwrap();
        assert!(zero.cofactors.is_empty());

        let q3 = ring(3);
        let t = u(&q3, 1).pow(4, None).unwrap();
        let ws = q3.membership_witnesses(&t, None, 3).unwrap();
        assert_eq!(ws.len(), 3);
        for w in &ws {
            assert!(w.verify(q3.presentation()));
        }
        assert!(matches!(
            q3.membership_witness(&u(&q3, 1), None),
            Err(Error::NotInIdeal(_))
        ));
        // without the u3 relation, u1^4 is no longer reachable
        let p_only: Vec<usize> = (0..q3.presentation().relations().len())
            .filter(|&i| q3.presentation().relations()[i].label.starts_with('p'))
            .collect();
        assert!(q3.membership_witness(&t, Some(&p_only)).is_err());
    }
}
