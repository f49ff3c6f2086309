//! Report builders behind the command-line subcommands.

use crate::arith::{
    build_abelian_ring_capped, build_lagrangian_ring_capped, harmonic_values, APart, ArithClass,
    ArithRing, HarmonicMode,
};
use crate::error::{Error, Result};
use crate::formulas::{
    c1_critical_power_in, drop_log2, height_bindings, height_polynomial_in, pontrjagin_value,
    proportionality_map_check_in, HMapConvention,
};
use crate::graded::GradedPoly;
use crate::numbers::lagrangian_degree;
use crate::quotient::socle_degree;
use crate::report::{CheckItem, CheckResult, Report, Value};
use crate::verify::{run_checks, CROSS_CHECK};

fn need_d(d: u32, min: u32) -> Result<()> {
    if d < min {
        return Err(Error::OutOfRange(format!(
            "d = {d} (must be at least {min})"
        )));
    }
    Ok(())
}

fn strip_log2(x: &ArithClass) -> ArithClass {
    let f = |p: &GradedPoly| {
        p.map_coefficients(|c| Ok(drop_log2(c)))
            .expect("substitution succeeds")
    };
    ArithClass::new(
        f(&x.z),
        APart {
            forms: f(&x.a.forms),
            gamma: f(&x.a.gamma),
        },
    )
}

pub fn pontrjagin(d: u32, k: u32, invert2: bool, cap: u32) -> Result<Report> {
    need_d(d, 1)?;
    if k == 0 || k > d {
        return Err(Error::OutOfRange(format!("k = {k} (must lie in 1..={d})")));
    }
    let v = pontrjagin_value(d, k, cap)?;
    let ring = build_abelian_ring_capped(d, cap)?;
    let mut report = Report::new(format!(
        "pontrjagin --d {d} --k {k}{}",
        if invert2 { " --invert2" } else { "" }
    ));
    let mut class = ring.from_a(APart::forms(v.reduced.clone()));
    let mut expanded = v.expanded.clone();
    if invert2 {
        class = strip_log2(&class);
        expanded = expanded.map_coefficients(|c| Ok(drop_log2(c)))?;
        report.note("log 2 terms dropped");
    }
    report.push(
        "expanded",
        &format!("rho{k} (expanded)"),
        &format!("\\rho_{{{k}}}"),
        Value::Poly(expanded),
    );
    report.push(
        "pontrjagin",
        &format!("p̂{k}"),
        &format!("\\hat p_{{{k}}}(\\bar E)"),
        Value::Class(class),
    );
    if let Some(direct) = &v.direct {
        let target = ring.from_a(APart::forms(v.reduced.clone()));
        report.checks.push(CheckResult {
            name: "direct reduction".into(),
            source: CROSS_CHECK.into(),
            items: vec![CheckItem {
                label: format!("p{k}(ĉ) reduced in the ring"),
                expected: target.to_string(),
                computed: direct.to_string(),
                ok: *direct == target,
            }],
        });
    }
    Ok(report)
}

pub fn c1_power(d: u32, invert2: bool, cap: u32) -> Result<Report> {
    need_d(d, 1)?;
    let ring = build_abelian_ring_capped(d, cap)?;
    let mut cp = c1_critical_power_in(&ring, true)?;
    let top = socle_degree(d);
    let mut report = Report::new(format!(
        "c1-power --d {d}{}",
        if invert2 { " --invert2" } else { "" }
    ));
    let two_route = if (2..=5).contains(&d) {
        let lag = build_lagrangian_ring_capped(d, HarmonicMode::Formal, cap)?;
        let via = height_polynomial_in(&lag)?.substitute(&height_bindings(d)?)?;
        Some(via)
    } else {
        None
    };
    if invert2 {
        cp = cp.without_log2();
        report.note("log 2 terms dropped");
    }
    let agens = ring.agens();
    let forms = match &cp.r {
        Some(r) => GradedPoly::generator(agens, 0).pow(top, None)?.scale(r),
        None => GradedPoly::zero(agens),
    };
    let display = ArithClass::new(
        GradedPoly::zero(ring.zgens()),
        APart {
            forms,
            gamma: cp.phi.clone(),
        },
    );
    report.push(
        "equation",
        &format!("ĉ1^{}", top + 1),
        &format!("\\hat c_1^{{{}}}(\\bar E)", top + 1),
        Value::Class(display),
    );
    if let Some(r) = &cp.r {
        report.push(
            "r",
            &format!("r{d}"),
            &format!("r_{{{d}}}"),
            Value::Scalar(r.clone()),
        );
    }
    report.push("phi", "phi", "\\varphi", Value::Poly(cp.phi.clone()));
    if let Some(w) = &cp.phi_witness {
        report.push(
            "phi_witness",
            "phi (witness cofactor)",
            "\\varphi_{\\mathrm{witness}}",
            Value::Poly(w.clone()),
        );
    }
    report.push(
        "reduced",
        "normal form",
        "\\text{normal form}",
        Value::Class(cp.value.clone()),
    );
    if let (Some(via), Some(r)) = (two_route, &cp.r) {
        let via = if invert2 { drop_log2(&via) } else { via };
        report.checks.push(CheckResult {
            name: "two-route".into(),
            source: CROSS_CHECK.into(),
            items: vec![CheckItem {
                label: format!("r{d} via the Lagrangian height polynomial"),
                expected: r.to_string(),
                computed: via.to_string(),
                ok: via == *r,
            }],
        });
    }
    Ok(report)
}

fn relation_lines(ring: &ArithRing) -> Vec<String> {
    ring.relations()
        .iter()
        .map(|r| {
            let rhs = ArithClass::new(GradedPoly::zero(ring.zgens()), r.alpha.clone());
            format!("{}: {} = {}", r.label, r.z, rhs)
        })
        .collect()
}

pub fn ring_info(d: u32, cap: u32, mode: HarmonicMode) -> Result<Report> {
    need_d(d, 1)?;
    let top = socle_degree(d);
    let abelian = build_abelian_ring_capped(d, cap)?;
    let classical = abelian.a_ring();
    let dims = classical.dimension_report();
    let mut report = Report::new(format!("ring-info --d {d}"));
    report.push(
        "dimension",
        &format!("dim R{d}"),
        &format!("\\dim R_{{{d}}}"),
        Value::Integer(dims.total.into()),
    );
    report.push(
        "socle_degree",
        "socle degree",
        "\\text{socle degree}",
        Value::Integer(top.into()),
    );
    let hilbert: Vec<String> = dims.dims.iter().map(|n| n.to_string()).collect();
    report.push(
        "hilbert",
        "dimensions by degree",
        "\\text{dimensions by degree}",
        Value::Text(hilbert.join(" ")),
    );
    for k in 0..=top {
        let basis: Vec<String> = classical
            .basis(k)
            .iter()
            .map(|m| m.render(classical.gens(), false))
            .collect();
        report.push(
            &format!("basis_{k}"),
            &format!("basis in degree {k}"),
            &format!("\\text{{basis in degree {k}}}"),
            Value::Text(basis.join(", ")),
        );
    }
    report.push(
        "abelian_working_degree",
        "abelian ring working degree",
        "\\text{working degree}",
        Value::Integer(abelian.working_degree().into()),
    );
    for (i, line) in relation_lines(&abelian).into_iter().enumerate() {
        report.push(
            &format!("abelian_relation_{i}"),
            "abelian relation",
            "\\text{abelian relation}",
            Value::Text(line),
        );
    }
    if d >= 2 {
        let lag = build_lagrangian_ring_capped(d, mode, cap)?;
        for (i, line) in relation_lines(&lag).into_iter().enumerate() {
            report.push(
                &format!("lagrangian_relation_{i}"),
                "lagrangian relation",
                "\\text{lagrangian relation}",
                Value::Text(line),
            );
        }
    }
    Ok(report)
}

pub fn height_poly(d: u32, cap: u32, mode: HarmonicMode) -> Result<Report> {
    need_d(d, 2)?;
    let lag = build_lagrangian_ring_capped(d, HarmonicMode::Formal, cap)?;
    let height = height_polynomial_in(&lag)?;
    let mut report = Report::new(format!("height-poly --d {d}"));
    report.push(
        "height",
        &format!("height polynomial (d={d})"),
        "\\text{height}",
        Value::Scalar(height.clone()),
    );
    if mode == HarmonicMode::Exact {
        let exact = height.substitute(&harmonic_values(d)?)?;
        report.push(
            "height_exact",
            "with exact harmonic numbers",
            "\\text{exact}",
            Value::Scalar(exact),
        );
    }
    let r = height.substitute(&height_bindings(d)?)?;
    report.push(
        "r",
        &format!("r{d} by substitution"),
        &format!("r_{{{d}}}"),
        Value::Scalar(r),
    );
    Ok(report)
}

pub fn hmap_check(d: u32, conventions: &[HMapConvention], cap: u32) -> Result<Report> {
    need_d(d, 2)?;
    let abelian = build_abelian_ring_capped(d, cap)?;
    let lag = build_lagrangian_ring_capped(d, HarmonicMode::Exact, cap)?;
    let mut report = Report::new(format!("hmap-check --d {d}"));
    for &conv in conventions {
        let rep = proportionality_map_check_in(&abelian, &lag, conv)?;
        let mut items = vec![CheckItem {
            label: "h(1)".into(),
            expected: "1".into(),
            computed: rep.image_of_one.to_string(),
            ok: rep.image_of_one.z == GradedPoly::one(rep.image_of_one.z.gens())
                && rep.image_of_one.a.is_zero(),
        }];
        for r in &rep.residues {
            items.push(CheckItem {
                label: format!("{} (degree {})", r.relation, r.degree),
                expected: "0".into(),
                computed: r.residue.to_string(),
                ok: r.residue.is_zero(),
            });
        }
        report.checks.push(CheckResult {
            name: format!("{} convention", conv.name()),
            source: CROSS_CHECK.into(),
            items,
        });
    }
    Ok(report)
}

pub fn degree(d: u32) -> Result<Report> {
    need_d(d, 2)?;
    let mut report = Report::new(format!("degree --d {d}"));
    report.push(
        "degree",
        &format!("deg B{}", d - 1),
        &format!("\\deg B_{{{}}}", d - 1),
        Value::Integer(lagrangian_degree(d)?),
    );
    Ok(report)
}

pub fn verify(only: Option<&[String]>) -> Result<Report> {
    let checks = run_checks(only)?;
    let mut report = Report::new(match only {
        Some(sel) => format!("verify --only {}", sel.join(",")),
        None => "verify".to_string(),
    });
    report.checks = checks;
    Ok(report)
}
