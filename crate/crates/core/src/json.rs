//! JSON encodings of values and reports. Rationals and integers are strings
//! (`"p/q"` or `"n"`) so nothing is lost to floating point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::development::{Development, MaximalityReport, Verdict};
use crate::error::{Error, Result};
use crate::exp::{ChainState, DyadicFailure, DyadicReport, Gadget};
use crate::integer_part::IpElement;
use crate::monomial::{GenId, GenKind, Generator, Monomial, Registry};
use crate::residue::RealAlg;
use crate::series::Series;

fn bad(msg: &str) -> Error {
    Error::Json(msg.to_string())
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.parse().map_err(|_| bad("bad integer"))?,
        )),
    }
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(&format!("{what} must be a string")))
}

pub fn realalg_to_json(a: &RealAlg) -> Value {
    let (lo, hi) = a.interval();
    json!({
        "minpoly": a.minpoly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "interval": [lo.to_string(), hi.to_string()],
    })
}

pub fn realalg_from_json(v: &Value) -> Result<RealAlg> {
    let coeffs = v["minpoly"].as_array().ok_or_else(|| bad("minpoly must be an array"))?;
    let p: Vec<BigInt> = coeffs
        .iter()
        .map(|c| str_of(c, "coefficient")?.parse().map_err(|_| bad("bad coefficient")))
        .collect::<Result<_>>()?;
    let iv = v["interval"].as_array().ok_or_else(|| bad("interval must be an array"))?;
    if iv.len() != 2 {
        return Err(bad("interval must have two endpoints"));
    }
    let lo = rational_from_str(str_of(&iv[0], "endpoint")?)?;
    let hi = rational_from_str(str_of(&iv[1], "endpoint")?)?;
    RealAlg::from_isolating(&p, lo, hi)
}

pub fn monomial_to_json(m: &Monomial) -> Value {
    Value::Array(
        m.exponents()
            .iter()
            .map(|(g, e)| json!({"gen": g.0, "exp": e.to_string()}))
            .collect(),
    )
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let arr = v.as_array().ok_or_else(|| bad("monomial must be an array"))?;
    let mut exps = Vec::with_capacity(arr.len());
    for e in arr {
        let g = e["gen"].as_u64().ok_or_else(|| bad("gen must be an integer"))?;
        let q = rational_from_str(str_of(&e["exp"], "exp")?)?;
        exps.push((GenId(g as u32), q));
    }
    Ok(Monomial::from_exponents(exps))
}

pub fn series_to_json(s: &Series) -> Value {
    json!({
        "terms": s.terms().iter().map(|t| json!({
            "coeff": realalg_to_json(&t.coeff),
            "mono": monomial_to_json(&t.mono),
        })).collect::<Vec<_>>(),
        "cutoff": s.cutoff().map_or(Value::Null, monomial_to_json),
    })
}

/// Decodes a series; monomials must refer to generators of `reg`.
pub fn series_from_json(v: &Value, reg: &Registry) -> Result<Series> {
    let arr = v["terms"].as_array().ok_or_else(|| bad("terms must be an array"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let m = monomial_from_json(&t["mono"])?;
        if m.exponents().iter().any(|(g, _)| g.0 as usize >= reg.len()) {
            return Err(bad("unknown generator"));
        }
        terms.push((realalg_from_json(&t["coeff"])?, m));
    }
    let cutoff = match &v["cutoff"] {
        Value::Null => None,
        c => Some(monomial_from_json(c)?),
    };
    Series::from_terms(terms, cutoff, reg)
}

pub fn generator_to_json(g: &Generator) -> Value {
    json!({
        "id": g.id.0,
        "kind": match g.kind { GenKind::Ladder { .. } => "ladder", GenKind::Derived => "derived" },
        "log": g.log.as_ref().map_or(Value::Null, series_to_json),
        "stage": g.stage,
    })
}

pub fn registry_to_json(reg: &Registry) -> Value {
    Value::Array(reg.generators().iter().map(generator_to_json).collect())
}

pub fn ip_to_json(e: &IpElement) -> Value {
    json!({
        "infinite": series_to_json(&e.infinite),
        "z": e.z.to_string(),
        "non_integral": e.non_integral,
    })
}

pub fn ip_from_json(v: &Value, reg: &Registry) -> Result<IpElement> {
    Ok(IpElement {
        infinite: series_from_json(&v["infinite"], reg)?,
        z: str_of(&v["z"], "z")?.parse().map_err(|_| bad("bad integer"))?,
        non_integral: v["non_integral"].as_bool().unwrap_or(false),
    })
}

pub fn development_to_json(d: &Development) -> Value {
    json!({
        "steps": d.steps.iter().map(|s| json!({
            "g": monomial_to_json(&s.g),
            "a": realalg_to_json(&s.a),
        })).collect::<Vec<_>>(),
        "prefix": series_to_json(&d.prefix),
        "complete": d.complete,
        "case": if d.gap.is_some() { "value-transcendental" } else { "immediate" },
        "gap": d.gap.as_ref().map_or(Value::Null, monomial_to_json),
    })
}

fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Consistent => json!({"verdict": "consistent"}),
        Verdict::ValueGap(g) => json!({"verdict": "value-gap", "gap": monomial_to_json(g)}),
        Verdict::NonMaximal => json!({"verdict": "non-maximal"}),
    }
}

pub fn maximality_to_json(r: &MaximalityReport) -> Value {
    json!({
        "maximal": r.is_maximal(),
        "entries": r.entries.iter().map(|e| {
            let mut v = verdict_to_json(&e.verdict);
            v["development"] = development_to_json(&e.development);
            v["cutoff_exhausted"] = json!(e.cutoff_exhausted);
            v
        }).collect::<Vec<_>>(),
    })
}

pub fn dyadic_to_json(r: &DyadicReport) -> Value {
    json!({
        "passed": r.passed(),
        "samples_checked": r.samples_checked,
        "images_checked": r.images_checked,
        "boundary": r.boundary.iter().map(monomial_to_json).collect::<Vec<_>>(),
        "pending": r.pending.iter().map(series_to_json).collect::<Vec<_>>(),
        "failures": r.failures.iter().map(|f| match f {
            DyadicFailure::NotInH(m) => json!({"kind": "not-in-h", "mono": monomial_to_json(m)}),
            DyadicFailure::LogOutsideA(g) => json!({"kind": "log-outside-a", "gen": g.0}),
            DyadicFailure::LogNotPurelyInfinite(g) =>
                json!({"kind": "log-not-purely-infinite", "gen": g.0}),
            DyadicFailure::ExpOutsideH(s) => json!({"kind": "exp-outside-h", "image": series_to_json(s)}),
        }).collect::<Vec<_>>(),
    })
}

pub fn chain_to_json(c: &ChainState) -> Value {
    let reg = &c.triple.registry;
    json!({
        "stages": c.trace.iter().map(|ev| json!({
            "j": ev.j,
            "new_generators": ev.new_generators.iter()
                .map(|g| generator_to_json(reg.generator(*g)))
                .collect::<Vec<_>>(),
            "developments": ev.developments.iter().map(|(r, d, v)| {
                let mut o = verdict_to_json(v);
                o["element"] = series_to_json(r);
                o["development"] = development_to_json(d);
                o
            }).collect::<Vec<_>>(),
            "dyadic": dyadic_to_json(&ev.dyadic),
        })).collect::<Vec<_>>(),
    })
}

fn ordering_str(o: Option<Ordering>) -> Value {
    match o {
        Some(Ordering::Less) => json!("LT"),
        Some(Ordering::Equal) => json!("EQ"),
        Some(Ordering::Greater) => json!("GT"),
        None => Value::Null,
    }
}

pub fn gadget_to_json(g: &Gadget) -> Value {
    let mut constants = Map::new();
    for ((b, i), c) in &g.constants {
        constants.insert(format!("{b},{i}"), series_to_json(c));
    }
    let mut limits = Map::new();
    for (i, c) in &g.limit_constants {
        limits.insert(i.to_string(), series_to_json(c));
    }
    json!({
        "passed": g.passed(),
        "constants": constants,
        "limit_constants": limits,
        "interleaving": g.interleaving.iter().map(|c| json!({
            "left": c.left, "right": c.right, "actual": ordering_str(c.actual), "holds": c.holds(),
        })).collect::<Vec<_>>(),
        "stages": g.stages.iter().map(|s| json!({
            "beta": s.beta, "i": s.i, "stage": s.stage, "new_at_stage": s.new_at_stage,
        })).collect::<Vec<_>>(),
        "generators": registry_to_json(&g.registry),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::rat;

    #[test]
    fn realalg_roundtrip() {
        let a = RealAlg::from_int(2).root(2).unwrap();
        let v = realalg_to_json(&a);
        assert_eq!(v["minpoly"], json!(["-2", "0", "1"]));
        assert_eq!(realalg_from_json(&v).unwrap(), a);
        let q = RealAlg::from_rational(rat(-3, 4));
        assert_eq!(realalg_to_json(&q)["interval"], json!(["-3/4", "-3/4"]));
        assert_eq!(realalg_from_json(&realalg_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn series_roundtrip() {
        let reg = Registry::ladder(3).unwrap();
        let s = Series::from_terms(
            vec![
                (RealAlg::from_int(3), Monomial::gen_pow(GenId(0), rat(1, 2))),
                (RealAlg::from_int(-1), Monomial::one()),
            ],
            Some(Monomial::gen_pow(GenId(0), rat(-8, 1))),
            &reg,
        )
        .unwrap();
        let v = series_to_json(&s);
        assert_eq!(v["terms"][0]["mono"], json!([{"gen": 0, "exp": "1/2"}]));
        assert_eq!(series_from_json(&v, &reg).unwrap(), s);
        assert!(rational_from_str("1/0").is_err());
    }
}
