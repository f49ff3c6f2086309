//! JSON encodings of exact values. Rationals travel as `"p/q"` strings.

use serde_json::{json, Map, Value};

use crate::arith::{APart, ArithClass};
use crate::error::{Error, Result};
use crate::graded::{Generator, GeneratorSet, Gens, GradedPoly, Monomial};
use crate::numbers::{format_rational, parse_rational};
use crate::scalar::{ConstMonomial, Scalar, Symbol};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// `{"rat": "p/q", "L": .., "Z1": .., "h1": .., "terms": [..]}`; linear parts
/// get their own keys, higher constant monomials go to `terms`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "rat".into(),
        Value::String(format_rational(&s.rational_part())),
    );
    let mut higher = Vec::new();
    for (m, c) in s.terms() {
        match m.powers() {
            [] => {}
            [(sym, 1)] => {
                obj.insert(sym.key(), Value::String(format_rational(c)));
            }
            powers => {
                let mono: Map<String, Value> = powers
                    .iter()
                    .map(|(sym, e)| (sym.key(), json!(e)))
                    .collect();
                higher.push(json!({"monomial": mono, "coeff": format_rational(c)}));
            }
        }
    }
    if !higher.is_empty() {
        obj.insert("terms".into(), Value::Array(higher));
    }
    Value::Object(obj)
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("scalar must be an object"))?;
    let mut out = Scalar::zero();
    for (key, val) in obj {
        match key.as_str() {
            "terms" => {
                let arr = val
                    .as_array()
                    .ok_or_else(|| parse_err("terms must be an array"))?;
                for t in arr {
                    let mono = t
                        .get("monomial")
                        .and_then(Value::as_object)
                        .ok_or_else(|| parse_err("term without monomial"))?;
                    let mut powers = Vec::new();
                    for (k, e) in mono {
                        let e = e
                            .as_u64()
                            .ok_or_else(|| parse_err("exponent must be a non-negative integer"))?;
                        powers.push((Symbol::from_key(k)?, e as u32));
                    }
                    let c = t
                        .get("coeff")
                        .and_then(Value::as_str)
                        .ok_or_else(|| parse_err("term without coeff"))?;
                    out.add_term(ConstMonomial::from_powers(powers), parse_rational(c)?);
                }
            }
            "rat" => {
                let c = val
                    .as_str()
                    .ok_or_else(|| parse_err("rat must be a string"))?;
                out.add_term(ConstMonomial::one(), parse_rational(c)?);
            }
            k => {
                let c = val
                    .as_str()
                    .ok_or_else(|| parse_err(format!("{k} must be a string")))?;
                out.add_term(
                    ConstMonomial::symbol(Symbol::from_key(k)?),
                    parse_rational(c)?,
                );
            }
        }
    }
    Ok(out)
}

pub fn generators_to_json(gens: &GeneratorSet) -> Value {
    Value::Array(
        gens.iter()
            .map(|g| json!({"name": g.name, "degree": g.degree, "latex": g.latex}))
            .collect(),
    )
}

pub fn generators_from_json(v: &Value) -> Result<Gens> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("generators must be an array"))?;
    let mut gens = Vec::new();
    for g in arr {
        let name = g
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("generator without name"))?;
        let degree = g
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("generator without degree"))?;
        let latex = g.get("latex").and_then(Value::as_str).unwrap_or(name);
        gens.push(Generator {
            name: name.to_string(),
            latex: latex.to_string(),
            degree: degree as u32,
        });
    }
    GeneratorSet::new(gens)
}

/// `{"generators": [..], "terms": [{"exps": [..], "monomial": "u1^2", "coeff": scalar}]}`,
/// highest degree first.
pub fn poly_to_json(p: &GradedPoly) -> Value {
    let gens = p.gens();
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            json!({
                "exps": m.exps(),
                "monomial": m.render(gens, false),
                "coeff": scalar_to_json(c),
            })
        })
        .collect();
    json!({"generators": generators_to_json(gens), "terms": terms, "text": p.to_string()})
}

/// Parses a polynomial; when `gens` is given the embedded generator list must match it.
pub fn poly_from_json(v: &Value, gens: Option<&Gens>) -> Result<GradedPoly> {
    let embedded = generators_from_json(
        v.get("generators")
            .ok_or_else(|| parse_err("polynomial without generators"))?,
    )?;
    let gens = match gens {
        Some(g) if **g != *embedded => return Err(Error::GeneratorMismatch),
        Some(g) => g.clone(),
        None => embedded,
    };
    let mut out = GradedPoly::zero(&gens);
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polynomial without terms"))?;
    for t in terms {
        let exps = t
            .get("exps")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("term without exps"))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .map(|e| e as u32)
                    .ok_or_else(|| parse_err("bad exponent"))
            })
            .collect::<Result<Vec<u32>>>()?;
        if exps.len() != gens.len() {
            return Err(parse_err(
                "exponent vector length does not match generators",
            ));
        }
        let c = scalar_from_json(
            t.get("coeff")
                .ok_or_else(|| parse_err("term without coeff"))?,
        )?;
        out.add_term(Monomial::new(&gens, exps), c);
    }
    Ok(out)
}

/// `{"zpart": poly, "apart": poly, "gamma_part": poly}`; the γ coefficient is
/// a polynomial in the a-generators.
pub fn class_to_json(x: &ArithClass) -> Value {
    json!({
        "zpart": poly_to_json(&x.z),
        "apart": poly_to_json(&x.a.forms),
        "gamma_part": poly_to_json(&x.a.gamma),
        "text": x.to_string(),
    })
}

pub fn class_from_json(
    v: &Value,
    zgens: Option<&Gens>,
    agens: Option<&Gens>,
) -> Result<ArithClass> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| parse_err(format!("class without {k}")))
    };
    let z = poly_from_json(field("zpart")?, zgens)?;
    let forms = poly_from_json(field("apart")?, agens)?;
    let gamma = poly_from_json(field("gamma_part")?, Some(forms.gens()))?;
    Ok(ArithClass::new(z, APart { forms, gamma }))
}
