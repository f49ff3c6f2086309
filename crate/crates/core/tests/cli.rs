use std::process::{Command, Output};

use serde_json::Value;
use tautcalc::formulas::c1_critical_power;
use tautcalc::json::{class_from_json, poly_from_json, scalar_from_json};

fn tautcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn c1_power_text_matches_published_d3() {
    let out = tautcalc(&["c1-power", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("ĉ1^4 = a((-17/3 + 48/5*log2 + 48*zeta'(-1) - 480*zeta'(-3))·u1^3 + 8·u1*g)"),
        "{text}"
    );
    assert!(text.contains("[PASS] two-route"));
}

#[test]
fn c1_power_invert2_drops_log2() {
    let text = stdout(&tautcalc(&["c1-power", "--d", "2", "--invert2"]));
    assert!(text.contains("r2 = -1 + 24*zeta'(-1)"), "{text}");
    assert!(!text.contains("log2"));
}

#[test]
fn pontrjagin_d2() {
    let out = tautcalc(&["pontrjagin", "--d", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("p̂1 = a((-1 + 8/3*log2 + 24*zeta'(-1))·u1)"));
}

#[test]
fn pontrjagin_d3_k2_has_zeta3() {
    let text = stdout(&tautcalc(&["pontrjagin", "--d", "3", "--k", "2"]));
    assert!(
        text.contains("p̂2 = a((-11/6 + 32/15*log2 - 240*zeta'(-3))·u1*u2)"),
        "{text}"
    );
}

#[test]
fn degrees() {
    for (d, expected) in [("2", "1"), ("3", "2"), ("5", "768")] {
        let text = stdout(&tautcalc(&["degree", "--d", d]));
        assert!(
            text.trim_end().ends_with(&format!("= {expected}")),
            "{text}"
        );
    }
}

#[test]
fn height_poly_formal() {
    let text = stdout(&tautcalc(&[
        "height-poly",
        "--d",
        "3",
        "--harmonic",
        "formal",
    ]));
    assert!(text.contains("= 2*h1 + 2*h3"), "{text}");
    assert!(text.contains("r3 by substitution = -17/3 + 48/5*log2 + 48*zeta'(-1) - 480*zeta'(-3)"));
}

#[test]
fn ring_info_d4() {
    let text = stdout(&tautcalc(&["ring-info", "--d", "4"]));
    assert!(text.contains("dim R4 = 8"));
    assert!(text.contains("socle degree = 6"));
    assert!(
        text.contains("dimensions by degree = 1 1 1 2 1 1 1"),
        "{text}"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        tautcalc(&["pontrjagin", "--d", "2", "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tautcalc(&["c1-power", "--d", "0"]).status.code(), Some(2));
    assert_eq!(tautcalc(&["c1-power", "--d", "8"]).status.code(), Some(2));
    assert_eq!(tautcalc(&["degree", "--d", "1"]).status.code(), Some(2));
    assert_eq!(
        tautcalc(&["verify", "--only", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(tautcalc(&["c1-power"]).status.code(), Some(2));
    assert_eq!(
        tautcalc(&["--format", "yaml", "degree", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn max_degree_override_warns() {
    let out = tautcalc(&["--max-degree", "23", "degree", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let tight = tautcalc(&["--max-degree", "3", "c1-power", "--d", "3"]);
    assert_eq!(tight.status.code(), Some(2));
}

#[test]
fn verify_exit_status_follows_checks() {
    let ok = tautcalc(&["verify", "--only", "dimensions,newton,cauchy"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("[PASS] dimensions (published)"));
    assert!(text.contains("[PASS] newton (property)"));
    assert!(text.contains("[PASS] cauchy (cross-check)"));
    let bad = tautcalc(&["verify", "--only", "hmap"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("expected: 0"));
}

#[test]
fn reports_are_deterministic() {
    for format in ["text", "json", "latex"] {
        let a = tautcalc(&["--format", format, "c1-power", "--d", "4"]);
        let b = tautcalc(&["--format", format, "c1-power", "--d", "4"]);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
    let a = tautcalc(&["verify", "--only", "two-route,ch-even"]);
    let b = tautcalc(&["verify", "--only", "ch-even,two-route"]);
    assert_eq!(
        stdout(&a).lines().skip(1).collect::<Vec<_>>(),
        stdout(&b).lines().skip(1).collect::<Vec<_>>()
    );
}

#[test]
fn json_round_trips() {
    let out = tautcalc(&["--format", "json", "c1-power", "--d", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    let expected = c1_critical_power(4).unwrap();
    let r = scalar_from_json(&v["results"]["r"]).unwrap();
    assert_eq!(Some(r), expected.r);
    let phi = poly_from_json(&v["results"]["phi"], None).unwrap();
    assert_eq!(phi.to_string(), expected.phi.to_string());
    let class = class_from_json(&v["results"]["reduced"], None, None).unwrap();
    assert_eq!(class.to_string(), expected.value.to_string());
    assert_eq!(v["results"]["r"]["Z5"], "2016");
    assert_eq!(v["results"]["r"]["rat"], "-1063/60");
}

#[test]
fn latex_uses_display_notation() {
    let text = stdout(&tautcalc(&["--format", "latex", "c1-power", "--d", "2"]));
    assert!(text.contains("\\hat c_1^{2}(\\bar E) = a\\left("), "{text}");
    assert!(text.contains("\\zeta'(-1)"));
    assert!(text.contains("\\gamma"));
}

#[test]
fn hmap_check_reports_both_conventions() {
    let out = tautcalc(&["hmap-check", "--d", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] literal convention"));
    assert!(text.contains("[FAIL] dual convention"));
    assert!(text.contains("ok       h(1)"));
}
