//! Closed-form statements about the arithmetic rings, computed end to end.

use std::collections::BTreeMap;

use crate::arith::{
    build_abelian_ring, build_abelian_ring_capped, build_lagrangian_ring,
    build_lagrangian_ring_capped, top_coefficient, APart, ArithClass, ArithRing, HarmonicMode,
};
use crate::classes::{additive_class, ch_from_c, pontrjagin_component, ClassVector};
use crate::error::{Error, Result};
use crate::graded::GradedPoly;
use crate::numbers::{
    factorial, harmonic, int, inverse_one_minus_quarter_power, zeta_negative_odd, Rational,
};
use crate::quotient::socle_degree;
use crate::scalar::{Scalar, Symbol};
use crate::series::{pontrjagin_series, u_series};

/// `L ↦ 0`.
pub fn drop_log2(s: &Scalar) -> Scalar {
    s.substitute(&BTreeMap::from([(Symbol::Log2, Scalar::zero())]))
        .expect("binding to a constant is never cyclic")
}

/// `ĉ_1^{D+1} = a(r·c_1^D + φ·γ)` with `D = d(d-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPower {
    pub d: u32,
    /// Absent when `D = 0`.
    pub r: Option<Scalar>,
    /// On the preferred (square-free) basis.
    pub phi: GradedPoly,
    /// `ω` of the `ĉ_d` cofactor of one explicit witness, before reduction.
    pub phi_witness: Option<GradedPoly>,
    pub value: ArithClass,
}

impl CriticalPower {
    pub fn without_log2(&self) -> CriticalPower {
        let strip = |p: &GradedPoly| {
            p.map_coefficients(|c| Ok(drop_log2(c)))
                .expect("substitution succeeds")
        };
        CriticalPower {
            d: self.d,
            r: self.r.as_ref().map(drop_log2),
            phi: strip(&self.phi),
            phi_witness: self.phi_witness.as_ref().map(strip),
            value: ArithClass::new(
                strip(&self.value.z),
                APart {
                    forms: strip(&self.value.a.forms),
                    gamma: strip(&self.value.a.gamma),
                },
            ),
        }
    }
}

pub fn c1_critical_power(d: u32) -> Result<CriticalPower> {
    c1_critical_power_in(&build_abelian_ring(d)?, true)
}

pub fn c1_critical_power_capped(d: u32, cap: u32) -> Result<CriticalPower> {
    c1_critical_power_in(&build_abelian_ring_capped(d, cap)?, true)
}

pub fn c1_critical_power_in(ring: &ArithRing, with_witness: bool) -> Result<CriticalPower> {
    let d = ring.d();
    let top = socle_degree(d);
    let value = ring.pow(&ring.z(1), top + 1)?;
    if !value.z.is_zero() {
        return Err(Error::Shape(format!("z-part survives: {}", value.z)));
    }
    let forms = &value.a.forms;
    if !forms.is_zero() && (!forms.is_homogeneous() || forms.degree() != Some(top)) {
        return Err(Error::Shape(format!(
            "form part is not of degree {top}: {forms}"
        )));
    }
    let phi = value.a.gamma.clone();
    let phi_degree = top + 1 - d;
    if !phi.is_zero() && (!phi.is_homogeneous() || phi.degree() != Some(phi_degree)) {
        return Err(Error::Shape(format!(
            "γ coefficient is not of degree {phi_degree}: {phi}"
        )));
    }
    let r = if top == 0 {
        if !forms.is_zero() {
            return Err(Error::Shape("unexpected constant form part".into()));
        }
        None
    } else {
        Some(top_coefficient(ring.a_ring(), forms, top)?)
    };
    let phi_witness = if with_witness {
        let target = GradedPoly::generator(ring.zgens(), 0).pow(top + 1, None)?;
        let (w, _) = ring
            .reduce_by_witnesses(&target, 1)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotInIdeal(target.to_string()))?;
        let gamma_rel = ring.relations().len() - 1;
        Some(ring.omega(&w.cofactor(gamma_rel))?)
    } else {
        None
    };
    Ok(CriticalPower {
        d,
        r,
        phi,
        phi_witness,
        value,
    })
}

/// `c_1^D` coefficient of the form part of `ĉ_1^{D+1}` in the Lagrangian ring with
/// symbolic harmonic numbers.
pub fn height_polynomial(d: u32) -> Result<Scalar> {
    height_polynomial_in(&build_lagrangian_ring(d, HarmonicMode::Formal)?)
}

pub fn height_polynomial_capped(d: u32, cap: u32) -> Result<Scalar> {
    height_polynomial_in(&build_lagrangian_ring_capped(d, HarmonicMode::Formal, cap)?)
}

pub fn height_polynomial_in(ring: &ArithRing) -> Result<Scalar> {
    let top = socle_degree(ring.d());
    let value = ring.pow(&ring.z(1), top + 1)?;
    if !value.z.is_zero() || !value.a.gamma.is_zero() {
        return Err(Error::Shape(format!("unexpected shape {value}")));
    }
    top_coefficient(ring.a_ring(), &value.a.forms, top)
}

/// `h_{2k-1} ↦ -2 Z_{2k-1}/ζ(1-2k) - H_{2k-1} + 2L/(1-4^{-k})` for `k = 1..n`.
pub fn height_bindings(n: u32) -> Result<BTreeMap<Symbol, Scalar>> {
    let mut out = BTreeMap::new();
    for k in 1..=n {
        let zeta = zeta_negative_odd(k)?;
        let mut v = Scalar::zero();
        v.add_term(
            crate::scalar::ConstMonomial::symbol(Symbol::zeta_prime(k)),
            int(-2) / zeta,
        );
        v.add_term(crate::scalar::ConstMonomial::one(), -harmonic(2 * k - 1)?);
        v.add_term(
            crate::scalar::ConstMonomial::symbol(Symbol::Log2),
            int(2) * inverse_one_minus_quarter_power(k),
        );
        out.insert(Symbol::harmonic(k), v);
    }
    Ok(out)
}

/// `r_d` through the Lagrangian route.
pub fn r_via_height(d: u32) -> Result<Scalar> {
    height_polynomial(d)?.substitute(&height_bindings(d)?)
}

/// Sign conventions for the comparison map from the Lagrangian ring to the
/// abelian ring modulo `a(γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HMapConvention {
    /// `ĉ(S) ↦ ĉ(E)(1 + a(X))`, `c(S) ↦ c(E)`, with
    /// `X = Σ (Z_{2k-1}/ζ(1-2k) - L/(1-4^{-k})) (2k-1)! ch^[2k-1]`.
    Literal,
    /// `ĉ(S) ↦ ĉ(E^∨)(1 - a(X))`, `c(S) ↦ c(E^∨)`.
    Dual,
}

impl HMapConvention {
    fn signs(self) -> (i64, i64) {
        match self {
            HMapConvention::Literal => (1, 1),
            HMapConvention::Dual => (-1, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HMapConvention::Literal => "literal",
            HMapConvention::Dual => "dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMapResidue {
    pub relation: String,
    pub degree: u32,
    /// Image reduced in the abelian ring with the γ part dropped.
    pub residue: ArithClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMapReport {
    pub d: u32,
    pub convention: HMapConvention,
    pub image_of_one: ArithClass,
    pub residues: Vec<HMapResidue>,
}

impl HMapReport {
    pub fn passed(&self) -> bool {
        self.image_of_one.z.is_one_poly()
            && self.image_of_one.a.is_zero()
            && self.residues.iter().all(|r| r.residue.is_zero())
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for GradedPoly {
    fn is_one_poly(&self) -> bool {
        *self == GradedPoly::one(self.gens())
    }
}

/// Pushes every relation of the exact Lagrangian ring, and the classical form
/// relations, through the comparison map and reduces modulo `a(γ)`.
pub fn proportionality_map_check(d: u32, convention: HMapConvention) -> Result<HMapReport> {
    let abelian = build_abelian_ring(d)?;
    let lagrangian = build_lagrangian_ring(d, HarmonicMode::Exact)?;
    proportionality_map_check_in(&abelian, &lagrangian, convention)
}

pub fn proportionality_map_check_in(
    abelian: &ArithRing,
    lagrangian: &ArithRing,
    convention: HMapConvention,
) -> Result<HMapReport> {
    let d = abelian.d();
    if lagrangian.d() != d || lagrangian.agens() != abelian.agens() {
        return Err(Error::GeneratorMismatch);
    }
    let (sigma, sx) = convention.signs();
    let agens = abelian.agens().clone();
    let sign = |e: u32| int(sigma.pow(e));
    let c = ClassVector::generic(&agens, d as usize)?;
    let power_sums = ch_from_c(&c, 2 * d);
    let x = |j: u32| -> Result<GradedPoly> {
        let mut coeff = Scalar::zero();
        coeff.add_term(
            crate::scalar::ConstMonomial::symbol(Symbol::zeta_prime(j)),
            int(sx) / zeta_negative_odd(j)?,
        );
        coeff.add_term(
            crate::scalar::ConstMonomial::symbol(Symbol::Log2),
            -int(sx) * inverse_one_minus_quarter_power(j),
        );
        Ok(power_sums[2 * j as usize - 1].scale(&coeff))
    };
    let u = |k: u32| -> GradedPoly {
        if k == 0 {
            GradedPoly::one(&agens)
        } else if k <= d {
            GradedPoly::generator(&agens, k as usize - 1)
        } else {
            GradedPoly::zero(&agens)
        }
    };
    // images of the generators ĉ_k(S), k = 1..d-1
    let mut zimages = Vec::new();
    for k in 1..d {
        let mut forms = GradedPoly::zero(&agens);
        for j in 1..=k / 2 {
            forms = &forms + &(&u(k - 2 * j) * &x(j)?).scale_rational(&sign(k - 2 * j));
        }
        let z = abelian.z(k as usize).scale_rational(&sign(k));
        zimages.push(abelian.reduce(&z.add(&abelian.from_a(APart::forms(forms)))?)?);
    }
    let uimages: Vec<GradedPoly> = (1..=d).map(|k| u(k).scale_rational(&sign(k))).collect();
    let map_forms = |p: &GradedPoly| p.substitute(&agens, &uimages, None);
    let map_z = |p: &GradedPoly| -> Result<ArithClass> {
        let mut out = abelian.zero();
        for (m, coeff) in p.terms() {
            let mut t = abelian.one();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = abelian.mul(&t, &zimages[i])?;
                }
            }
            out = out.add(&t.scale(coeff))?;
        }
        Ok(out)
    };
    let drop_gamma = |x: ArithClass| -> ArithClass {
        let gens = x.a.gamma.gens().clone();
        ArithClass::new(
            x.z,
            APart {
                forms: x.a.forms,
                gamma: GradedPoly::zero(&gens),
            },
        )
    };
    let image_of_one = drop_gamma(map_z(&GradedPoly::one(lagrangian.zgens()))?);
    let mut residues = Vec::new();
    for rel in lagrangian.relations() {
        let image = map_z(&rel.z)?;
        let alpha = APart::forms(map_forms(&rel.alpha.forms)?);
        let value = abelian.reduce(&image.sub(&abelian.from_a(alpha))?)?;
        residues.push(HMapResidue {
            relation: rel.label.clone(),
            degree: rel.z.degree().unwrap_or(0),
            residue: drop_gamma(value),
        });
    }
    for rel in lagrangian.a_ring().presentation().relations() {
        let image = abelian.from_a(APart::forms(map_forms(&rel.poly)?));
        residues.push(HMapResidue {
            relation: format!("a({})", rel.label),
            degree: rel.degree + 1,
            residue: drop_gamma(abelian.reduce(&image)?),
        });
    }
    Ok(HMapReport {
        d,
        convention,
        image_of_one,
        residues,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChEvenComponent {
    pub degree: u32,
    /// `ch^[2k]` from Newton's identities in the abelian ring.
    pub newton: ArithClass,
    /// `(-1)^{k+1} p̂_k / (2 (2k-1)!)` (or the rank in degree 0).
    pub pontrjagin: ArithClass,
    /// `-a(U^[2k-1])` (or the rank in degree 0).
    pub u_class: ArithClass,
}

impl ChEvenComponent {
    pub fn agrees(&self) -> bool {
        self.newton == self.pontrjagin && self.newton == self.u_class
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChEvenReport {
    pub d: u32,
    pub components: Vec<ChEvenComponent>,
}

impl ChEvenReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(ChEvenComponent::agrees)
    }
}

/// Even Chern character of the arithmetic bundle, three ways.
pub fn ch_even_check(d: u32) -> Result<ChEvenReport> {
    ch_even_check_in(&build_abelian_ring(d)?)
}

pub fn ch_even_check_in(ring: &ArithRing) -> Result<ChEvenReport> {
    let d = ring.d();
    let working = ring.working_degree();
    let agens = ring.agens().clone();
    // power sums P̂_k by Newton with ring multiplication
    let chat = |j: u32| -> ArithClass {
        match j {
            0 => ring.one(),
            j if j <= d => ring.z(j as usize),
            _ => ring.zero(),
        }
    };
    let mut p: Vec<ArithClass> = vec![ring.one().scale_rational(&int(d as i64))];
    for k in 1..=working {
        let sgn = |j: u32| int(if j % 2 == 1 { 1 } else { -1 });
        let mut acc = chat(k).scale_rational(&(sgn(k) * int(k as i64)));
        for j in 1..k {
            acc = acc.add(
                &ring
                    .mul(&chat(j), &p[(k - j) as usize])?
                    .scale_rational(&sgn(j)),
            )?;
        }
        p.push(ring.reduce(&acc)?);
    }
    let zc: Vec<GradedPoly> = (0..=d)
        .map(|j| {
            if j == 0 {
                GradedPoly::one(ring.zgens())
            } else {
                GradedPoly::generator(ring.zgens(), j as usize - 1)
            }
        })
        .collect();
    let c = ClassVector::generic(&agens, d as usize)?;
    let u_class = additive_class(&u_series(working.max(1)), &c, working.max(1))?;
    let mut components = Vec::new();
    for k in 0..=working / 2 {
        let deg = 2 * k;
        let newton = ring.reduce(
            &p[deg as usize].scale_rational(&(int(1) / Rational::from_integer(factorial(deg)))),
        )?;
        let (pont, uc) = if k == 0 {
            let rank = ring.one().scale_rational(&int(d as i64));
            (rank.clone(), rank)
        } else {
            let pk = pontrjagin_component(&zc, k);
            let scale = int(if k % 2 == 1 { 1 } else { -1 })
                / (int(2) * Rational::from_integer(factorial(2 * k - 1)));
            let pont = ring.reduce(&ring.from_z(pk).scale_rational(&scale))?;
            let forms = -&u_class.graded_component(2 * k - 1);
            (pont, ring.reduce(&ring.from_a(APart::forms(forms)))?)
        };
        components.push(ChEvenComponent {
            degree: deg,
            newton,
            pontrjagin: pont,
            u_class: uc,
        });
    }
    Ok(ChEvenReport { d, components })
}

/// `p̂_k = a(ρ_k)`: the expanded form class and its reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PontrjaginValue {
    pub d: u32,
    pub k: u32,
    pub expanded: GradedPoly,
    pub reduced: GradedPoly,
    /// `p̂_k` reduced directly in the ring, when its degree is within range.
    pub direct: Option<ArithClass>,
}

/// `cap` bounds the working degree of the ring used for the direct reduction.
pub fn pontrjagin_value(d: u32, k: u32, cap: u32) -> Result<PontrjaginValue> {
    if k == 0 || k > d {
        return Err(Error::OutOfRange(format!("k must lie in 1..={d}")));
    }
    let ring = build_abelian_ring_capped(d, cap)?;
    let c = ClassVector::generic(ring.agens(), d as usize)?;
    let expanded =
        additive_class(&pontrjagin_series(2 * k), &c, 2 * k)?.graded_component(2 * k - 1);
    let reduced = ring.a_ring().normal_form(&expanded)?;
    let direct = if 2 * k <= ring.working_degree() {
        let zc: Vec<GradedPoly> = (0..=d)
            .map(|j| {
                if j == 0 {
                    GradedPoly::one(ring.zgens())
                } else {
                    GradedPoly::generator(ring.zgens(), j as usize - 1)
                }
            })
            .collect();
        Some(ring.reduce(&ring.from_z(pontrjagin_component(&zc, k)))?)
    } else {
        None
    };
    Ok(PontrjaginValue {
        d,
        k,
        expanded,
        reduced,
        direct,
    })
}
