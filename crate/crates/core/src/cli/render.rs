//! Text, JSON and LaTeX renderings of polynomials and family names.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::mpoly::{MPoly, Monomial, Var};
use crate::qarith::{format_rational, parse_rational, Rational};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// The term list `[{"coeff": "a/b", "exps": {"x": 1}}, ...]` in canonical order.
pub fn terms_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(mono, c)| {
            let exps: Map<String, Value> = mono.factors().map(|(v, e)| (v.name().to_string(), json!(e))).collect();
            json!({ "coeff": format_rational(c), "exps": exps })
        })
        .collect();
    Value::Array(terms)
}

/// `{"schema": 1, "terms": [...]}`.
pub fn poly_json(p: &MPoly) -> Value {
    json!({ "schema": SCHEMA, "terms": terms_json(p) })
}

fn bad(msg: &str) -> Error {
    Error::Parse(format!("malformed polynomial JSON: {msg}"))
}

/// Reads back a term list as produced by [`terms_json`].
pub fn poly_from_terms(terms: &Value) -> Result<MPoly> {
    let terms = terms.as_array().ok_or_else(|| bad("`terms` is not an array"))?;
    let mut out = MPoly::zero();
    for t in terms {
        let coeff: Rational = parse_rational(t["coeff"].as_str().ok_or_else(|| bad("missing `coeff`"))?)?;
        let exps = t["exps"].as_object().ok_or_else(|| bad("missing `exps`"))?;
        let mut pairs = Vec::new();
        for (name, e) in exps {
            let v = Var::from_name(name).ok_or_else(|| bad(&format!("unknown variable `{name}`")))?;
            let e = e.as_u64().filter(|&e| e <= u64::from(u16::MAX)).ok_or_else(|| bad("bad exponent"))?;
            pairs.push((v, e as u16));
        }
        out.add_term(Monomial::from_pairs(&pairs), &coeff);
    }
    Ok(out)
}

/// Parses a document produced by [`poly_json`].
pub fn poly_from_json(text: &str) -> Result<MPoly> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    if doc["schema"].as_u64() != Some(SCHEMA) {
        return Err(bad("unsupported schema"));
    }
    poly_from_terms(&doc["terms"])
}

pub fn rational_latex(r: &Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else if r.numer() < &0.into() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// The family in its customary notation, e.g. `{}_LH_{2}^{(2,2)}(x,y,z|q)`.
pub fn family_latex(spec: &FamilySpec) -> String {
    let n = spec.n;
    match spec.family {
        Family::ClassicalGh { m } => format!("g_{{{n}}}^{{{m}}}(x,y)"),
        Family::QGh { m } => format!("\\mathcal{{G}}_{{{n}}}^{{{m}}}(x,y|q)"),
        Family::Q2dlp { m } => format!("{{}}_{{{m}}}L_{{{n}}}(x,y|q)"),
        Family::QLghp { m, s } => format!("{{}}_LH_{{{n}}}^{{({m},{s})}}(x,y,z|q)"),
        Family::QHermite => format!("H_{{{n}}}(x,y|q)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::q_lghp;
    use crate::qarith::QContext;

    #[test]
    fn json_round_trip() {
        let p = q_lghp(&QContext::from_ratio(1, 2), 4, 2, 2).unwrap();
        let text = poly_json(&p).to_string();
        assert_eq!(poly_from_json(&text).unwrap(), p);
        assert_eq!(poly_from_json(&poly_json(&MPoly::zero()).to_string()).unwrap(), MPoly::zero());
        assert!(poly_from_json("{\"schema\":2,\"terms\":[]}").is_err());
        assert!(poly_from_json("[").is_err());
    }

    #[test]
    fn json_shape() {
        let p = q_lghp(&QContext::from_ratio(1, 2), 2, 2, 2).unwrap();
        assert_eq!(
            poly_json(&p).to_string(),
            r#"{"schema":1,"terms":[{"coeff":"1","exps":{"y":2}},{"coeff":"3/2","exps":{"x":1}},{"coeff":"3/2","exps":{"z":1}}]}"#
        );
    }

    #[test]
    fn latex_names() {
        let spec = FamilySpec::new(Family::QLghp { m: 2, s: 3 }, 4);
        assert_eq!(family_latex(&spec), "{}_LH_{4}^{(2,3)}(x,y,z|q)");
        assert_eq!(rational_latex(&Rational::new((-3).into(), 2.into())), "-\\frac{3}{2}");
    }
}
