//! Two-component arithmetic rings: a polynomial part in the classes `ĉ_j`
//! together with a square-zero part `a(x)` where `x` is a form class.
//!
//! A z-relation `R(ĉ) ≡ a(α)` is eliminated degree by degree. Each row
//! `m·R` carries the label `(relation, ω(m))`, so a pivot `ĉ^m ≡ rest + a(…)`
//! knows exactly which form class it picked up.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::classes::{additive_class, pontrjagin_component, ClassVector};
use crate::echelon::{Echelon, Payload, SparseRow};
use crate::error::{Error, Result};
use crate::graded::{monomials_of_degree, Generator, GeneratorSet, Gens, GradedPoly, Monomial};
use crate::numbers::{harmonic, int, Rational};
use crate::quotient::{
    columns_by_preference, socle_degree, QuotientRing, RingPresentation, Witness,
};
use crate::scalar::{Scalar, Symbol};
use crate::series::{harryrel_series, pontrjagin_series};

/// Working-degree cap used unless overridden; enough for `d <= 7`.
pub const DEFAULT_MAX_DEGREE: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HarmonicMode {
    /// `H_{2k-1}` as rationals.
    Exact,
    /// `H_{2k-1}` kept as the symbols `h_{2k-1}`.
    Formal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Abelian,
    Lagrangian(HarmonicMode),
}

/// A form class `forms + gamma·γ`; both polynomials live in the classical
/// ring and are graded by form degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APart {
    pub forms: GradedPoly,
    pub gamma: GradedPoly,
}

impl APart {
    pub fn zero(gens: &Gens) -> Self {
        APart {
            forms: GradedPoly::zero(gens),
            gamma: GradedPoly::zero(gens),
        }
    }

    pub fn forms(p: GradedPoly) -> Self {
        let gamma = GradedPoly::zero(p.gens());
        APart { forms: p, gamma }
    }

    pub fn gamma(p: GradedPoly) -> Self {
        let forms = GradedPoly::zero(p.gens());
        APart { forms, gamma: p }
    }

    pub fn is_zero(&self) -> bool {
        self.forms.is_zero() && self.gamma.is_zero()
    }

    pub fn add(&self, other: &APart) -> APart {
        APart {
            forms: &self.forms + &other.forms,
            gamma: &self.gamma + &other.gamma,
        }
    }

    pub fn scale(&self, c: &Scalar) -> APart {
        APart {
            forms: self.forms.scale(c),
            gamma: self.gamma.scale(c),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> APart {
        APart {
            forms: self.forms.scale_rational(c),
            gamma: self.gamma.scale_rational(c),
        }
    }

    pub fn mul_poly(&self, p: &GradedPoly) -> APart {
        APart {
            forms: p * &self.forms,
            gamma: p * &self.gamma,
        }
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<APart> {
        Ok(APart {
            forms: self.forms.map_coefficients(&mut f)?,
            gamma: self.gamma.map_coefficients(&mut f)?,
        })
    }

    /// Every coefficient is linear in the formal constants.
    pub fn is_linear(&self) -> bool {
        self.forms
            .terms()
            .chain(self.gamma.terms())
            .all(|(_, c)| c.is_linear())
    }

    fn render(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        if !self.forms.is_zero() {
            parts.push(self.forms.render(latex));
        }
        if !self.gamma.is_zero() {
            let g = if latex { "\\gamma" } else { "g" };
            let body = self.gamma.render(latex);
            let single = self.gamma.len() == 1;
            parts.push(match (body.as_str(), single) {
                ("1", _) => g.to_string(),
                ("-1", _) => format!("-{g}"),
                (_, true) => {
                    let only = self.gamma.terms().next().expect("one term");
                    if only.0.is_one() {
                        if latex {
                            format!("{body} {g}")
                        } else {
                            format!("{body}·{g}")
                        }
                    } else if latex {
                        format!("{body} {g}")
                    } else {
                        format!("{body}*{g}")
                    }
                }
                (_, false) => {
                    if latex {
                        format!("\\left({body}\\right) {g}")
                    } else {
                        format!("({body})·{g}")
                    }
                }
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

/// Element `z + a(α)` of an arithmetic ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithClass {
    pub z: GradedPoly,
    pub a: APart,
}

impl ArithClass {
    pub fn new(z: GradedPoly, a: APart) -> Self {
        ArithClass { z, a }
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero() && self.a.is_zero()
    }

    pub fn add(&self, other: &ArithClass) -> Result<ArithClass> {
        Ok(ArithClass {
            z: self.z.try_add(&other.z)?,
            a: APart {
                forms: self.a.forms.try_add(&other.a.forms)?,
                gamma: self.a.gamma.try_add(&other.a.gamma)?,
            },
        })
    }

    pub fn neg(&self) -> ArithClass {
        self.scale_rational(&int(-1))
    }

    pub fn sub(&self, other: &ArithClass) -> Result<ArithClass> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> ArithClass {
        ArithClass {
            z: self.z.scale(c),
            a: self.a.scale(c),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> ArithClass {
        ArithClass {
            z: self.z.scale_rational(c),
            a: self.a.scale_rational(c),
        }
    }

    pub fn render(&self, latex: bool) -> String {
        let a = (!self.a.is_zero()).then(|| {
            let inner = self.a.render(latex);
            if latex {
                format!("a\\left({inner}\\right)")
            } else {
                format!("a({inner})")
            }
        });
        match (self.z.is_zero(), a) {
            (true, None) => "0".into(),
            (true, Some(a)) => a,
            (false, None) => self.z.render(latex),
            (false, Some(a)) => format!("{} + {a}", self.z.render(latex)),
        }
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for ArithClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// `z ≡ a(alpha)` with `z` homogeneous and rational.
#[derive(Clone, Debug)]
pub struct ArithRelation {
    pub label: String,
    pub z: GradedPoly,
    pub alpha: APart,
}

#[derive(Clone, Debug)]
struct ArithTable {
    basis: Vec<Monomial>,
    reductions: HashMap<Monomial, (GradedPoly, APart)>,
    rows: usize,
    dependent_rows: usize,
}

/// An arithmetic ring with its reduction tables.
#[derive(Clone, Debug)]
pub struct ArithRing {
    kind: RingKind,
    d: u32,
    zgens: Gens,
    a_ring: Arc<QuotientRing>,
    omega: Vec<Option<usize>>,
    relations: Vec<ArithRelation>,
    working_degree: u32,
    tables: Vec<ArithTable>,
    beyond_vanishes: Arc<OnceLock<bool>>,
}

type Label = (usize, Monomial);

struct Builder<'a> {
    zgens: &'a Gens,
    a_ring: &'a QuotientRing,
    omega: &'a [Option<usize>],
    relations: &'a [ArithRelation],
    evals: HashMap<Label, APart>,
}

impl Builder<'_> {
    fn omega_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let agens = self.a_ring.gens();
        let mut exps = vec![0u32; agens.len()];
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            exps[self.omega[i]?] += e;
        }
        Some(Monomial::new(agens, exps))
    }

    fn evaluate(&self, payload: &Payload<Label>) -> APart {
        let mut out = APart::zero(self.a_ring.gens());
        for (label, c) in payload {
            if let Some(v) = self.evals.get(label) {
                out = out.add(&v.scale_rational(c));
            }
        }
        out
    }

    fn build_degree(&self, k: u32) -> Result<ArithTable> {
        let columns = columns_by_preference(self.zgens, k);
        let index: HashMap<Monomial, usize> = columns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut ech: Echelon<Label> = Echelon::lazy(columns.len());
        let mut rows = 0;
        for (i, rel) in self.relations.iter().enumerate() {
            let e = rel.z.degree().unwrap_or(0);
            if e > k {
                continue;
            }
            for m in monomials_of_degree(self.zgens, k - e) {
                let row: SparseRow = rel
                    .z
                    .terms()
                    .map(|(t, c)| (index[&t.mul(&m)], c.rational_part()))
                    .collect();
                let mut payload = Payload::new();
                if let Some(am) = self.omega_monomial(&m) {
                    let nf = self.a_ring.normal_form(&GradedPoly::term(
                        self.a_ring.gens(),
                        am,
                        Scalar::one(),
                    ))?;
                    for (b, c) in nf.terms() {
                        payload.insert((i, b.clone()), c.rational_part());
                    }
                }
                rows += 1;
                ech.insert(row, payload);
            }
        }
        ech.finish();
        for dependency in ech.kernel() {
            if !self.evaluate(dependency).is_zero() {
                return Err(Error::Inconsistent(k));
            }
        }
        let mut reductions = HashMap::new();
        for (&p, row) in ech.pivots() {
            let mut rest = GradedPoly::zero(self.zgens);
            for (&c, v) in &row.entries {
                if c != p {
                    rest.add_rational_term(columns[c].clone(), &-v.clone());
                }
            }
            reductions.insert(columns[p].clone(), (rest, self.evaluate(&row.payload)));
        }
        let mut basis: Vec<Monomial> = columns
            .iter()
            .enumerate()
            .filter(|(i, _)| !ech.is_pivot(*i))
            .map(|(_, m)| m.clone())
            .collect();
        basis.sort();
        Ok(ArithTable {
            basis,
            reductions,
            rows,
            dependent_rows: rows - ech.rank(),
        })
    }
}

#[cfg(feature = "parallel")]
fn build_all(b: &Builder<'_>, working: u32) -> Result<Vec<ArithTable>> {
    use rayon::prelude::*;
    (0..=working)
        .into_par_iter()
        .map(|k| b.build_degree(k))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn build_all(b: &Builder<'_>, working: u32) -> Result<Vec<ArithTable>> {
    (0..=working).map(|k| b.build_degree(k)).collect()
}

impl ArithRing {
    /// Builds the reduction tables through `working_degree`.
    pub fn new(
        kind: RingKind,
        d: u32,
        zgens: Gens,
        a_ring: Arc<QuotientRing>,
        omega: Vec<Option<usize>>,
        relations: Vec<ArithRelation>,
        working_degree: u32,
    ) -> Result<Self> {
        if omega.len() != zgens.len() {
            return Err(Error::Shape("ω needs one entry per generator".into()));
        }
        for (i, rel) in relations.iter().enumerate() {
            if rel.z.gens() != &zgens
                || rel.alpha.forms.gens() != a_ring.gens()
                || rel.alpha.gamma.gens() != a_ring.gens()
            {
                return Err(Error::GeneratorMismatch);
            }
            if !rel.z.is_rational() {
                return Err(Error::NonRationalRelation(i));
            }
            if rel.z.is_zero() || !rel.z.is_homogeneous() {
                return Err(Error::Shape(format!(
                    "relation {} must be nonzero and homogeneous",
                    rel.label
                )));
            }
        }
        let mut evals = HashMap::new();
        for (i, rel) in relations.iter().enumerate() {
            let e = rel.z.degree().unwrap_or(0);
            for f in 0..=working_degree.saturating_sub(e) {
                for b in a_ring.basis(f) {
                    let bp = GradedPoly::term(a_ring.gens(), b.clone(), Scalar::one());
                    let v = APart {
                        forms: a_ring.normal_form(&(&bp * &rel.alpha.forms))?,
                        gamma: a_ring.normal_form(&(&bp * &rel.alpha.gamma))?,
                    };
                    if !v.is_zero() {
                        evals.insert((i, b.clone()), v);
                    }
                }
            }
        }
        let builder = Builder {
            zgens: &zgens,
            a_ring: &a_ring,
            omega: &omega,
            relations: &relations,
            evals,
        };
        let tables = build_all(&builder, working_degree)?;
        Ok(ArithRing {
            kind,
            d,
            zgens,
            a_ring,
            omega,
            relations,
            working_degree,
            tables,
            beyond_vanishes: Arc::new(OnceLock::new()),
        })
    }

    /// Every z-monomial above the working degree is zero: the z-quotient
    /// vanishes from the working degree on, and the form class such a
    /// monomial picks up lies above the classical top.
    pub fn vanishes_above_working(&self) -> bool {
        *self.beyond_vanishes.get_or_init(|| {
            let a_top = self
                .a_ring
                .dimension_report()
                .socle
                .map(|s| s.0)
                .unwrap_or(0);
            if !self.a_ring.vanishes_above_max() || a_top >= self.working_degree {
                return false;
            }
            match self.z_presentation() {
                Ok(pres) => QuotientRing::with_top(pres, self.working_degree.saturating_sub(1))
                    .vanishes_above_max(),
                Err(_) => false,
            }
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn zgens(&self) -> &Gens {
        &self.zgens
    }

    pub fn agens(&self) -> &Gens {
        self.a_ring.gens()
    }

    pub fn a_ring(&self) -> &QuotientRing {
        &self.a_ring
    }

    pub fn relations(&self) -> &[ArithRelation] {
        &self.relations
    }

    pub fn working_degree(&self) -> u32 {
        self.working_degree
    }

    /// Basis of the z-part quotient in ring degree `k`.
    pub fn z_basis(&self, k: u32) -> &[Monomial] {
        self.tables
            .get(k as usize)
            .map(|t| t.basis.as_slice())
            .unwrap_or(&[])
    }

    /// `(rows, dependent rows)` of the elimination in degree `k`.
    pub fn row_counts(&self, k: u32) -> Option<(usize, usize)> {
        self.tables
            .get(k as usize)
            .map(|t| (t.rows, t.dependent_rows))
    }

    /// Whether the a-part carries a γ component in this ring.
    pub fn has_gamma(&self) -> bool {
        self.kind == RingKind::Abelian
    }

    pub fn z(&self, j: usize) -> ArithClass {
        ArithClass::new(
            GradedPoly::generator(&self.zgens, j - 1),
            APart::zero(self.agens()),
        )
    }

    pub fn from_z(&self, p: GradedPoly) -> ArithClass {
        ArithClass::new(p, APart::zero(self.agens()))
    }

    pub fn from_a(&self, a: APart) -> ArithClass {
        ArithClass::new(GradedPoly::zero(&self.zgens), a)
    }

    pub fn one(&self) -> ArithClass {
        self.from_z(GradedPoly::one(&self.zgens))
    }

    pub fn zero(&self) -> ArithClass {
        self.from_z(GradedPoly::zero(&self.zgens))
    }

    /// `ω`: `ĉ_j ↦ u_j` (or zero where no image is declared).
    pub fn omega(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let images: Vec<GradedPoly> = self
            .omega
            .iter()
            .map(|o| match o {
                Some(i) => GradedPoly::generator(self.agens(), *i),
                None => GradedPoly::zero(self.agens()),
            })
            .collect();
        p.substitute(self.agens(), &images, None)
    }

    pub fn a_normal_form(&self, a: &APart) -> Result<APart> {
        Ok(APart {
            forms: self.a_ring.normal_form(&a.forms)?,
            gamma: self.a_ring.normal_form(&a.gamma)?,
        })
    }

    /// Canonical form: z-part on the preferred basis, a-part reduced.
    pub fn reduce(&self, x: &ArithClass) -> Result<ArithClass> {
        if x.z.gens() != &self.zgens {
            return Err(Error::GeneratorMismatch);
        }
        let mut z = GradedPoly::zero(&self.zgens);
        let mut a = x.a.clone();
        for (m, c) in x.z.terms() {
            let k = m.degree();
            if k > self.working_degree {
                if self.vanishes_above_working() {
                    continue;
                }
                return Err(Error::DegreeOverflow {
                    degree: k,
                    cap: self.working_degree,
                });
            }
            match self.tables[k as usize].reductions.get(m) {
                None => z.add_term(m.clone(), c.clone()),
                Some((rest, alpha)) => {
                    z = &z + &rest.scale(c);
                    a = a.add(&alpha.scale(c));
                }
            }
        }
        Ok(ArithClass::new(z, self.a_normal_form(&a)?))
    }

    /// `(P, α)(P', α') = (PP', ω(P)α' + ω(P')α)`, reduced.
    pub fn mul(&self, x: &ArithClass, y: &ArithClass) -> Result<ArithClass> {
        let x = self.reduce(x)?;
        let y = self.reduce(y)?;
        let cap = self.vanishes_above_working().then_some(self.working_degree);
        let z = x.z.try_mul_truncated(&y.z, cap)?;
        let wx = self.omega(&x.z)?;
        let wy = self.omega(&y.z)?;
        let a = y.a.mul_poly(&wx).add(&x.a.mul_poly(&wy));
        self.reduce(&ArithClass::new(z, a))
    }

    pub fn pow(&self, x: &ArithClass, e: u32) -> Result<ArithClass> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Presentation formed by the z-parts of the relations, in the same order.
    pub fn z_presentation(&self) -> Result<RingPresentation> {
        RingPresentation::with_labels(
            &self.zgens,
            self.relations
                .iter()
                .map(|r| (r.label.clone(), r.z.clone()))
                .collect(),
        )
    }

    /// A-part picked up along a cofactor witness: `sum_i ω(g_i) α_i`.
    pub fn witness_apart(&self, w: &Witness) -> Result<APart> {
        let mut out = APart::zero(self.agens());
        for (i, g) in &w.cofactors {
            out = out.add(&self.relations[*i].alpha.mul_poly(&self.omega(g)?));
        }
        self.a_normal_form(&out)
    }

    /// Reduces a z-polynomial along several independent cofactor solutions;
    /// each entry is the witness used and the resulting canonical form.
    pub fn reduce_by_witnesses(
        &self,
        p: &GradedPoly,
        count: usize,
    ) -> Result<Vec<(Witness, ArithClass)>> {
        let zq = QuotientRing::new(self.z_presentation()?, self.working_degree);
        let nf = zq.normal_form(p)?;
        let target = p - &nf;
        let mut out = Vec::new();
        for w in zq.membership_witnesses(&target, None, count)? {
            if !w.verify(zq.presentation()) {
                return Err(Error::Shape("witness failed to re-expand".into()));
            }
            let a = self.witness_apart(&w)?;
            out.push((w, ArithClass::new(nf.clone(), a)));
        }
        Ok(out)
    }
}

fn hat_generators(n: u32) -> Gens {
    GeneratorSet::new(
        (1..=n)
            .map(|j| Generator {
                name: format!("û{j}"),
                latex: format!("\\hat c_{{{j}}}"),
                degree: j,
            })
            .collect(),
    )
    .expect("valid generators")
}

fn check_range(d: u32, min: u32, cap: u32) -> Result<()> {
    if d < min {
        return Err(Error::OutOfRange(format!("d = {d} is below {min}")));
    }
    let working = socle_degree(d) + 1;
    if working > cap {
        return Err(Error::DegreeOverflow {
            degree: working,
            cap,
        });
    }
    Ok(())
}

/// Classical ring used for the form parts.
pub fn classical_ring(d: u32) -> Result<Arc<QuotientRing>> {
    Ok(Arc::new(QuotientRing::tautological(d)?))
}

/// `ρ_k`, the form class with `p̂_k ≡ a(ρ_k)`, reduced in the classical ring.
pub fn rho(a_ring: &QuotientRing, d: u32, k: u32) -> Result<GradedPoly> {
    let c = ClassVector::generic(a_ring.gens(), d as usize)?;
    let series = pontrjagin_series(2 * k);
    let full = additive_class(&series, &c, 2 * k)?;
    a_ring.normal_form(&full.graded_component(2 * k - 1))
}

/// The abelian ring with relations `p̂_k ≡ a(ρ_k)` (`k = 1..d`) and `ĉ_d ≡ a(γ)`,
/// working degree `d(d-1)/2 + 1`.
pub fn build_abelian_ring(d: u32) -> Result<ArithRing> {
    if d > 7 {
        return Err(Error::OutOfRange(format!(
            "d = {d} exceeds 7; raise the degree cap to go further"
        )));
    }
    build_abelian_ring_capped(d, DEFAULT_MAX_DEGREE)
}

/// As [`build_abelian_ring`] with an explicit cap on the working degree.
pub fn build_abelian_ring_capped(d: u32, cap: u32) -> Result<ArithRing> {
    check_range(d, 1, cap)?;
    let a_ring = classical_ring(d)?;
    let zgens = hat_generators(d);
    let zc: Vec<GradedPoly> = (0..=d)
        .map(|j| {
            if j == 0 {
                GradedPoly::one(&zgens)
            } else {
                GradedPoly::generator(&zgens, j as usize - 1)
            }
        })
        .collect();
    let mut relations = Vec::new();
    for k in 1..=d {
        let z = pontrjagin_component(&zc, k);
        if z.is_zero() {
            continue;
        }
        relations.push(ArithRelation {
            label: format!("p{k}"),
            z,
            alpha: APart::forms(rho(&a_ring, d, k)?),
        });
    }
    relations.push(ArithRelation {
        label: format!("c{d}"),
        z: GradedPoly::generator(&zgens, d as usize - 1),
        alpha: APart::gamma(GradedPoly::one(a_ring.gens())),
    });
    let omega = (0..d as usize)
        .map(|j| (j + 1 < d as usize).then_some(j))
        .collect();
    ArithRing::new(
        RingKind::Abelian,
        d,
        zgens,
        a_ring,
        omega,
        relations,
        socle_degree(d) + 1,
    )
}

/// Bindings `h_{2k-1} ↦ H_{2k-1}` for `k = 1..n`.
pub fn harmonic_values(n: u32) -> Result<BTreeMap<Symbol, Scalar>> {
    (1..=n)
        .map(|k| {
            Ok((
                Symbol::harmonic(k),
                Scalar::from_rational(harmonic(2 * k - 1)?),
            ))
        })
        .collect()
}

/// The Lagrangian ring on `ĉ_1..ĉ_{d-1}` with
/// `(1 + Σ ĉ_k)(1 + Σ (-1)^k ĉ_k) = 1 - a(Σ h_{2k-1} (2k-1)! ch^[2k-1])`.
pub fn build_lagrangian_ring(d: u32, mode: HarmonicMode) -> Result<ArithRing> {
    if d > 7 {
        return Err(Error::OutOfRange(format!(
            "d = {d} exceeds 7; raise the degree cap to go further"
        )));
    }
    build_lagrangian_ring_capped(d, mode, DEFAULT_MAX_DEGREE)
}

pub fn build_lagrangian_ring_capped(d: u32, mode: HarmonicMode, cap: u32) -> Result<ArithRing> {
    check_range(d, 2, cap)?;
    let n = d - 1;
    let a_ring = classical_ring(d)?;
    let zgens = hat_generators(n);
    let zc: Vec<GradedPoly> = (0..=n)
        .map(|j| {
            if j == 0 {
                GradedPoly::one(&zgens)
            } else {
                GradedPoly::generator(&zgens, j as usize - 1)
            }
        })
        .collect();
    let c = ClassVector::generic(a_ring.gens(), n as usize)?;
    let rhs = additive_class(&harryrel_series(2 * n), &c, 2 * n)?;
    let bindings = harmonic_values(n)?;
    let mut relations = Vec::new();
    for k in 1..=n {
        let z = pontrjagin_component(&zc, k);
        // degree 2k part: (-1)^k p_k(ĉ) = a(rhs_{2k-1})
        let mut alpha = rhs.graded_component(2 * k - 1);
        if k % 2 == 1 {
            alpha = -&alpha;
        }
        if mode == HarmonicMode::Exact {
            alpha = alpha.map_coefficients(|s| s.substitute(&bindings))?;
        }
        relations.push(ArithRelation {
            label: format!("p{k}"),
            z,
            alpha: APart::forms(a_ring.normal_form(&alpha)?),
        });
    }
    let omega = (0..n as usize).map(Some).collect();
    ArithRing::new(
        RingKind::Lagrangian(mode),
        d,
        zgens,
        a_ring,
        omega,
        relations,
        socle_degree(d) + 1,
    )
}

/// Coefficient of `c_1^D` for a top-degree form class: the ratio to the
/// normal form of `u_1^D`.
pub fn top_coefficient(a_ring: &QuotientRing, x: &GradedPoly, top: u32) -> Result<Scalar> {
    let u1 = GradedPoly::generator(a_ring.gens(), 0);
    let reference = a_ring.normal_form(&u1.pow(top, None)?)?;
    let (m, r) = reference
        .terms()
        .next()
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or_else(|| Error::Shape("c_1 to the top power vanishes".into()))?;
    if reference.len() != 1 {
        return Err(Error::Shape("top degree is not one-dimensional".into()));
    }
    let nf = a_ring.normal_form(x)?;
    for (n, _) in nf.terms() {
        if *n != m {
            return Err(Error::Shape(format!(
                "unexpected top-degree monomial {}",
                n.render(a_ring.gens(), false)
            )));
        }
    }
    let r = r
        .as_rational()
        .ok_or_else(|| Error::Shape("non-rational top normal form".into()))?;
    if r.is_zero() {
        return Err(Error::Shape("c_1 to the top power vanishes".into()));
    }
    Ok(nf
        .coefficient(&m)
        .scale(&(Rational::from_integer(1.into()) / r)))
}
