//! Named verification checks with their expected values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{build_abelian_ring, rho, APart, ArithRing};
use crate::classes::{
    c_from_ch, cauchy_single_class, ch_from_c, single_class_coefficients, ClassVector,
};
use crate::error::{Error, Result};
use crate::formulas::{
    c1_critical_power_in, ch_even_check_in, proportionality_map_check, r_via_height, HMapConvention,
};
use crate::graded::{Gens, GradedPoly};
use crate::numbers::{factorial, int, parse_rational, zeta_negative_odd, Rational};
use crate::quotient::{socle_degree, QuotientRing};
use crate::report::{CheckItem, CheckResult};
use crate::scalar::{ConstMonomial, Scalar, Symbol};
use crate::series::qtilde;

pub const CHECKS: [&str; 8] = [
    "examples",
    "dimensions",
    "two-route",
    "hmap",
    "ch-even",
    "newton",
    "cauchy",
    "witness-independence",
];

pub const PUBLISHED: &str = "published";
pub const CROSS_CHECK: &str = "cross-check";
pub const PROPERTY: &str = "property";

/// Scalar from `(key, "p/q")` pairs; the key `1` is the rational part.
pub fn scalar_from_pairs(pairs: &[(&str, &str)]) -> Result<Scalar> {
    let mut s = Scalar::zero();
    for (key, c) in pairs {
        let m = if *key == "1" {
            ConstMonomial::one()
        } else {
            ConstMonomial::symbol(Symbol::from_key(key)?)
        };
        s.add_term(m, parse_rational(c)?);
    }
    Ok(s)
}

/// Polynomial from `(exponents, coefficient)` pairs with rational coefficients.
pub fn poly_from_pairs(gens: &Gens, terms: &[(&[u32], i64)]) -> GradedPoly {
    GradedPoly::from_terms(
        gens,
        terms
            .iter()
            .map(|(e, c)| (e.to_vec(), Scalar::from_int(*c))),
    )
}

/// Published values of `r_d` for `d = 2, 3, 4`.
pub fn published_r(d: u32) -> Option<Scalar> {
    let pairs: &[(&str, &str)] = match d {
        2 => &[("1", "-1"), ("L", "8/3"), ("Z1", "24")],
        3 => &[("1", "-17/3"), ("L", "48/5"), ("Z1", "48"), ("Z3", "-480")],
        4 => &[
            ("1", "-1063/60"),
            ("L", "1520/63"),
            ("Z1", "96"),
            ("Z3", "-600"),
            ("Z5", "2016"),
        ],
        _ => return None,
    };
    Some(scalar_from_pairs(pairs).expect("valid literal"))
}

/// Published γ coefficient for `d = 1..4`, in `c`-monomials.
pub fn published_phi(agens: &Gens, d: u32) -> Option<GradedPoly> {
    Some(match d {
        1 => GradedPoly::one(agens),
        2 => GradedPoly::constant(agens, Scalar::from_int(2)),
        3 => poly_from_pairs(agens, &[(&[1, 0, 0], 8)]),
        4 => poly_from_pairs(agens, &[(&[1, 1, 0, 0], 112), (&[0, 0, 1, 0], -64)]),
        _ => return None,
    })
}

fn item(
    label: impl Into<String>,
    expected: impl ToString,
    computed: impl ToString,
    ok: bool,
) -> CheckItem {
    CheckItem {
        label: label.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        ok,
    }
}

fn error_item(label: impl Into<String>, e: &Error) -> CheckItem {
    item(label, "a value", format!("error: {e}"), false)
}

/// The published `d = 4` intermediate form
/// `a[64 c2c3 ρ1 - (8 c1c2 + 32 c3) ρ2 + 64 c1 ρ3 + 16 (7 c1c2 - 4 c3) γ]`, reduced.
pub fn d4_cofactor_form(ring: &ArithRing) -> Result<APart> {
    d4_cofactor_form_signed(ring, -1)
}

/// As [`d4_cofactor_form`] with `sign·(8 c1c2 + 32 c3) ρ2` in place of the second term.
pub fn d4_cofactor_form_signed(ring: &ArithRing, sign: i64) -> Result<APart> {
    let agens = ring.agens();
    let a_ring = ring.a_ring();
    let r = |k| rho(a_ring, 4, k);
    let c1 = poly_from_pairs(agens, &[(&[1, 0, 0, 0], 1)]);
    let c2c3 = poly_from_pairs(agens, &[(&[0, 1, 1, 0], 64)]);
    let second = poly_from_pairs(
        agens,
        &[(&[1, 1, 0, 0], 8 * sign), (&[0, 0, 1, 0], 32 * sign)],
    );
    let forms =
        &(&(&c2c3 * &r(1)?) + &(&second * &r(2)?)) + &(&c1.scale_rational(&int(64)) * &r(3)?);
    let gamma = published_phi(agens, 4).expect("d = 4 is published");
    ring.a_normal_form(&APart { forms, gamma })
}

pub fn check_examples() -> CheckResult {
    let mut items = Vec::new();
    for d in 1..=4 {
        let label = format!("c1 critical power, d={d}");
        let outcome = (|| -> Result<CheckItem> {
            let ring = build_abelian_ring(d)?;
            let got = c1_critical_power_in(&ring, false)?;
            let agens = ring.agens();
            let top = socle_degree(d);
            let forms = match published_r(d) {
                Some(r) => GradedPoly::generator(agens, 0).pow(top, None)?.scale(&r),
                None => GradedPoly::zero(agens),
            };
            let gamma = published_phi(agens, d).expect("published for d <= 4");
            let expected = APart { forms, gamma };
            let reduced = ring.a_normal_form(&expected)?;
            let expected_text = format!("a({})", render_apart(&expected));
            Ok(item(
                &label,
                expected_text,
                got.value.to_string(),
                got.value.z.is_zero() && reduced == got.value.a,
            ))
        })();
        items.push(outcome.unwrap_or_else(|e| error_item(&label, &e)));
    }
    let label = "d=4 cofactor form";
    let outcome = (|| -> Result<CheckItem> {
        let ring = build_abelian_ring(4)?;
        let expected = d4_cofactor_form(&ring)?;
        let got = c1_critical_power_in(&ring, false)?.value;
        let shown = crate::arith::ArithClass::new(GradedPoly::zero(ring.zgens()), expected.clone());
        let ok = got.z.is_zero() && got.a == expected;
        let mut computed = got.to_string();
        if !ok && got.a == d4_cofactor_form_signed(&ring, 1)? {
            computed.push_str(" (equal to the same form with +(8 c1c2 + 32 c3) ρ2)");
        }
        Ok(item(label, shown.to_string(), computed, ok))
    })();
    items.push(outcome.unwrap_or_else(|e| error_item(label, &e)));
    CheckResult {
        name: "examples".into(),
        source: PUBLISHED.into(),
        items,
    }
}

fn render_apart(a: &APart) -> String {
    crate::arith::ArithClass::new(GradedPoly::zero(a.forms.gens()), a.clone())
        .to_string()
        .trim_start_matches("a(")
        .trim_end_matches(')')
        .to_string()
}

pub fn check_dimensions(max_d: u32) -> CheckResult {
    let mut items = Vec::new();
    for d in 1..=max_d {
        let label = format!("R_{d}");
        let outcome = (|| -> Result<CheckItem> {
            let ring = QuotientRing::tautological(d)?;
            let report = ring.dimension_report();
            let top = socle_degree(d);
            let u1_top =
                ring.normal_form(&GradedPoly::generator(ring.gens(), 0).pow(top, None)?)?;
            let expected = format!(
                "dim {}, socle degree {top} of dimension 1, c1^{top} nonzero",
                1u64 << (d - 1)
            );
            let computed = format!(
                "dim {}, socle {:?}, c1^{top} {}",
                report.total,
                report.socle,
                if u1_top.is_zero() { "zero" } else { "nonzero" }
            );
            let ok = report.finite
                && report.total == 1usize << (d - 1)
                && report.socle == Some((top, 1))
                && !u1_top.is_zero();
            Ok(item(&label, expected, computed, ok))
        })();
        items.push(outcome.unwrap_or_else(|e| error_item(&label, &e)));
    }
    CheckResult {
        name: "dimensions".into(),
        source: PUBLISHED.into(),
        items,
    }
}

pub fn check_two_route(max_d: u32) -> CheckResult {
    let mut items = Vec::new();
    for d in 2..=max_d {
        let label = format!("r_{d}");
        let outcome = (|| -> Result<CheckItem> {
            let direct = c1_critical_power_in(&build_abelian_ring(d)?, false)?
                .r
                .ok_or_else(|| Error::Shape("missing r".into()))?;
            let height = r_via_height(d)?;
            Ok(item(&label, &direct, &height, direct == height))
        })();
        items.push(outcome.unwrap_or_else(|e| error_item(&label, &e)));
    }
    CheckResult {
        name: "two-route".into(),
        source: CROSS_CHECK.into(),
        items,
    }
}

pub fn check_hmap(max_d: u32) -> CheckResult {
    let mut items = Vec::new();
    for d in 2..=max_d {
        match proportionality_map_check(d, HMapConvention::Literal) {
            Ok(report) => {
                items.push(item(
                    format!("d={d} h(1)"),
                    "1",
                    &report.image_of_one,
                    report.image_of_one.z == GradedPoly::one(report.image_of_one.z.gens())
                        && report.image_of_one.a.is_zero(),
                ));
                for r in &report.residues {
                    items.push(item(
                        format!("d={d} {} (degree {})", r.relation, r.degree),
                        "0",
                        &r.residue,
                        r.residue.is_zero(),
                    ));
                }
            }
            Err(e) => items.push(error_item(format!("d={d}"), &e)),
        }
    }
    CheckResult {
        name: "hmap".into(),
        source: CROSS_CHECK.into(),
        items,
    }
}

pub fn check_ch_even(max_d: u32) -> CheckResult {
    let mut items = Vec::new();
    for d in 1..=max_d {
        match build_abelian_ring(d).and_then(|r| ch_even_check_in(&r)) {
            Ok(report) => {
                for c in &report.components {
                    let computed = if c.agrees() {
                        c.newton.to_string()
                    } else {
                        format!(
                            "newton {} / pontrjagin {} / U-class {}",
                            c.newton, c.pontrjagin, c.u_class
                        )
                    };
                    items.push(item(
                        format!("d={d} degree {}", c.degree),
                        &c.u_class,
                        computed,
                        c.agrees(),
                    ));
                }
            }
            Err(e) => items.push(error_item(format!("d={d}"), &e)),
        }
    }
    CheckResult {
        name: "ch-even".into(),
        source: CROSS_CHECK.into(),
        items,
    }
}

/// Symbolic round trip `c -> ch -> c` on generic classes of each rank.
pub fn check_newton(max_rank: u32) -> CheckResult {
    let mut items = Vec::new();
    for rank in 1..=max_rank {
        let label = format!("rank {rank}");
        let outcome = (|| -> Result<CheckItem> {
            let c = ClassVector::universal(rank);
            let p = ch_from_c(&c, rank);
            let back = c_from_ch(&p, rank as usize)?;
            let ok = (1..=rank as usize).all(|j| back.chern(j) == c.chern(j));
            Ok(item(
                &label,
                "c_1..c_n recovered",
                if ok { "recovered" } else { "differs" },
                ok,
            ))
        })();
        items.push(outcome.unwrap_or_else(|e| error_item(&label, &e)));
    }
    CheckResult {
        name: "newton".into(),
        source: PROPERTY.into(),
        items,
    }
}

/// `(4^k - 1) (-1)^{k+1} ζ(1-2k) / (2k-1)!`.
pub fn cauchy_expected(k: u32) -> Result<Rational> {
    let four = Rational::from_integer(BigInt::from(4).pow(k) - BigInt::one());
    let sign = int(if k % 2 == 1 { 1 } else { -1 });
    Ok(four * sign * zeta_negative_odd(k)? / Rational::from_integer(factorial(2 * k - 1)))
}

pub fn check_cauchy(n: u32) -> CheckResult {
    let mut items = Vec::new();
    let outcome = (|| -> Result<Vec<CheckItem>> {
        let series = cauchy_single_class(&qtilde(2 * n + 2))?;
        let basis = single_class_coefficients(&qtilde(2 * n + 2), n)?;
        let mut out = Vec::new();
        for k in 1..=n {
            let expected = cauchy_expected(k)?;
            let got = series.coeff(k).as_rational().unwrap_or_else(Rational::zero);
            let via_basis = &basis[k as usize - 1];
            out.push(item(
                format!("p_{k} coefficient"),
                crate::numbers::format_rational(&expected),
                format!(
                    "{} (change of basis {})",
                    crate::numbers::format_rational(&got),
                    crate::numbers::format_rational(via_basis)
                ),
                series.coeff(k).as_rational() == Some(expected.clone()) && *via_basis == expected,
            ));
        }
        Ok(out)
    })();
    match outcome {
        Ok(v) => items.extend(v),
        Err(e) => items.push(error_item("cauchy", &e)),
    }
    CheckResult {
        name: "cauchy".into(),
        source: CROSS_CHECK.into(),
        items,
    }
}

pub fn check_witness_independence(max_d: u32, count: usize) -> CheckResult {
    let mut items = Vec::new();
    for d in 2..=max_d {
        let label = format!("d={d}");
        let outcome = (|| -> Result<CheckItem> {
            let ring = build_abelian_ring(d)?;
            let target = GradedPoly::generator(ring.zgens(), 0).pow(socle_degree(d) + 1, None)?;
            let canonical = ring.reduce(&ring.from_z(target.clone()))?;
            let solutions = ring.reduce_by_witnesses(&target, count)?;
            let distinct = solutions.iter().enumerate().all(|(i, (w, _))| {
                solutions[..i]
                    .iter()
                    .all(|(v, _)| v.cofactors != w.cofactors)
            });
            let agree = solutions.iter().all(|(_, x)| *x == canonical);
            let ok = solutions.len() >= count && distinct && agree;
            Ok(item(
                &label,
                format!("{count} distinct witnesses giving {canonical}"),
                format!(
                    "{} witnesses, distinct {distinct}, agree {agree}",
                    solutions.len()
                ),
                ok,
            ))
        })();
        items.push(outcome.unwrap_or_else(|e| error_item(&label, &e)));
    }
    CheckResult {
        name: "witness-independence".into(),
        source: PROPERTY.into(),
        items,
    }
}

/// Runs the named checks with their standard ranges.
pub fn run_check(name: &str) -> Result<CheckResult> {
    Ok(match name {
        "examples" => check_examples(),
        "dimensions" => check_dimensions(7),
        "two-route" => check_two_route(5),
        "hmap" => check_hmap(5),
        "ch-even" => check_ch_even(6),
        "newton" => check_newton(6),
        "cauchy" => check_cauchy(6),
        "witness-independence" => check_witness_independence(5, 3),
        other => return Err(Error::Parse(format!("unknown check {other:?}"))),
    })
}

/// Runs the selected checks (all when `None`) in the canonical order.
pub fn run_checks(selection: Option<&[String]>) -> Result<Vec<CheckResult>> {
    let names: Vec<&str> = match selection {
        None => CHECKS.to_vec(),
        Some(sel) => {
            for s in sel {
                if !CHECKS.contains(&s.as_str()) {
                    return Err(Error::Parse(format!("unknown check {s:?}")));
                }
            }
            CHECKS
                .iter()
                .copied()
                .filter(|c| sel.iter().any(|s| s == c))
                .collect()
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        names.par_iter().map(|n| run_check(n)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        names.iter().map(|n| run_check(n)).collect()
    }
}
