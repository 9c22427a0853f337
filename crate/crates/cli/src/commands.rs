use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use t237::exact_algebra::{Rational, UniPoly};
use t237::intersection_calc::{self as ic, CurveConfig, IntersectionError, LatticeVector, QDivisor};
use t237::linalg;
use t237::quotient_sing::{self as qs, HJChain, SingularityIncidence};
use t237::riemann_roch::{self as rr, RiemannRochError};
use t237::weierstrass::{
    self as w, BrieskornParams, FiberReport, JValue, KodairaType, Place, SurfaceReport, WeierstrassModel,
};

use crate::cli::*;
use crate::report::{bigint, order, poly, rational, rationals};
use crate::schema::{self, ConfigDto, JsonRational, ModelDto, ParamsDto, SurfaceDto};
use crate::{CliError, Settings};

pub fn execute(cmd: &Command, settings: Settings) -> Result<Value, CliError> {
    match cmd {
        Command::Delta(a) => delta(a),
        Command::Hj(a) => hj(a),
        Command::Plurigenera(a) => plurigenera(a, settings),
        Command::Hilbert(a) => hilbert(a, settings),
        Command::Pullback(a) => pullback(a),
        Command::Lattice(a) => lattice(a),
        Command::Weierstrass(a) => weierstrass(a),
        Command::Brieskorn(a) => brieskorn(a),
        Command::Volume(a) => volume(a),
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(vec![msg.into()])
}

fn parse_rational_arg(what: &str, s: &str) -> Result<Rational, String> {
    schema::parse_rational(s).map_err(|e| format!("{what}: {e}"))
}

/// `k` or an inclusive range `a..b`.
fn parse_multiples(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || invalid(format!("--n: expected k or a..b, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(invalid(format!("--n: empty range {s}")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn chain_json(c: &HJChain) -> Value {
    json!(c.selfints())
}

fn delta(a: &DeltaArgs) -> Result<Value, CliError> {
    let chain = match (&a.chain, &a.sing) {
        (Some(c), _) => HJChain::new(c.clone()).map_err(|e| invalid(format!("--chain: {e}")))?,
        (None, Some(s)) => match s.as_slice() {
            [n, q] => qs::hj_expand(*n, *q).map_err(|e| invalid(format!("--sing: {e}")))?,
            _ => return Err(invalid("--sing: expected n,q")),
        },
        (None, None) => unreachable!("clap requires one of them"),
    };
    let ns = parse_multiples(&a.n)?;
    let incidence = match &a.incidence {
        Some(m) => Some(
            SingularityIncidence::new(chain.clone(), m.clone()).map_err(|e| invalid(format!("--incidence: {e}")))?,
        ),
        None => None,
    };
    let value = |n: u32| match &incidence {
        Some(inc) => qs::delta(inc, n),
        None => qs::delta_canonical(&chain, n),
    };
    let mut out = Map::new();
    out.insert("singularity".into(), json!(qs::hj_evaluate(&chain).to_string()));
    out.insert("chain".into(), chain_json(&chain));
    match &incidence {
        Some(inc) => {
            out.insert("divisor".into(), json!("incidence"));
            out.insert("incidence".into(), json!(inc.strict_mult()));
        }
        None => {
            out.insert("divisor".into(), json!("canonical"));
        }
    }
    if let [n] = ns.as_slice() {
        out.insert("n".into(), json!(n));
        out.insert("delta".into(), rational(&value(*n)));
    } else {
        let rows: Vec<Value> = ns.iter().map(|&n| json!({"n": n, "delta": rational(&value(n))})).collect();
        out.insert("values".into(), Value::Array(rows));
    }
    Ok(Value::Object(out))
}

fn hj(a: &HjArgs) -> Result<Value, CliError> {
    let chain = match (&a.chain, a.n, a.q) {
        (Some(c), _, _) => HJChain::new(c.clone()).map_err(|e| invalid(format!("--chain: {e}")))?,
        (None, Some(n), Some(q)) => qs::hj_expand(n, q).map_err(|e| invalid(e.to_string()))?,
        _ => unreachable!("clap requires --n and --q or --chain"),
    };
    let cq = qs::hj_evaluate(&chain);
    Ok(json!({
        "singularity": cq.to_string(),
        "n": cq.order(),
        "q": cq.weight(),
        "chain": chain_json(&chain),
        "discrepancies": rationals(&qs::discrepancies(&chain)),
        "canonical_index": qs::canonical_index(&chain),
    }))
}

fn rr_error(e: RiemannRochError) -> CliError {
    CliError::domain(e)
}

fn plurigenera(a: &PlurigeneraArgs, settings: Settings) -> Result<Value, CliError> {
    let data = schema::expect_surface(schema::resolve(a.source.preset.as_deref(), a.source.input.as_deref())?)?;
    let max = a.max.unwrap_or(settings.truncation as u32);
    let table = rr::plurigenera(&data, max).map_err(rr_error)?;
    let runs: Vec<Value> = table
        .runs()
        .iter()
        .map(|(from, to, v)| json!({"from": from, "to": to, "P": bigint(v)}))
        .collect();
    Ok(json!({
        "data": SurfaceDto::from_domain(&data),
        "max": max,
        "values": table.values().iter().map(bigint).collect::<Vec<_>>(),
        "runs": runs,
    }))
}

fn hilbert(a: &HilbertArgs, settings: Settings) -> Result<Value, CliError> {
    let data = schema::expect_surface(schema::resolve(a.source.preset.as_deref(), a.source.input.as_deref())?)?;
    let order = a.order.unwrap_or(settings.truncation);
    if a.weights.contains(&0) {
        return Err(invalid("--weights: weights must be positive"));
    }
    let table = rr::plurigenera(&data, order as u32).map_err(rr_error)?;
    let numerator = rr::hilbert_numerator(&table, &a.weights, order).map_err(rr_error)?;
    let terms: Vec<Value> = numerator
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != Rational::from_integer(0.into()))
        .map(|(k, c)| json!({"power": k, "coeff": rational(c)}))
        .collect();
    let mut out = json!({
        "data": SurfaceDto::from_domain(&data),
        "weights": a.weights,
        "order": order,
        "numerator": terms,
    });
    if let Some(d) = a.degree {
        if d == 0 {
            return Err(invalid("--degree: must be positive"));
        }
        let expected = rr::hypersurface_hilbert(&a.weights, d, order).map_err(rr_error)?;
        let matches = table
            .values()
            .iter()
            .take(order + 1)
            .enumerate()
            .all(|(k, v)| expected.coeff(k) == Rational::from_integer(v.clone()));
        out["degree"] = json!(d);
        out["matches_hypersurface"] = json!(matches);
    }
    Ok(out)
}

fn intersection_error(e: IntersectionError) -> CliError {
    match e {
        IntersectionError::UnknownLabel(_) | IntersectionError::SupportOnContracted(_) => invalid(e.to_string()),
        other => CliError::domain(other),
    }
}

fn parse_divisor(items: &[String]) -> Result<QDivisor, CliError> {
    let mut problems = Vec::new();
    let mut pairs = Vec::new();
    for item in items {
        match item.split_once('=') {
            Some((label, c)) => match parse_rational_arg(&format!("--divisor {label}"), c) {
                Ok(r) => pairs.push((label.trim().to_string(), r)),
                Err(e) => problems.push(e),
            },
            None => problems.push(format!("--divisor: expected label=coefficient, got {item:?}")),
        }
    }
    if problems.is_empty() {
        Ok(QDivisor::from_pairs(pairs))
    } else {
        Err(CliError::Invalid(problems))
    }
}

fn divisor_json(config: &CurveConfig, d: &QDivisor) -> Value {
    let rows: Vec<Value> = config
        .names()
        .iter()
        .filter_map(|n| {
            let c = d.coeff(n);
            (c != Rational::from_integer(0.into())).then(|| json!({"curve": n, "coeff": rational(&c)}))
        })
        .collect();
    Value::Array(rows)
}

fn pullback(a: &PullbackArgs) -> Result<Value, CliError> {
    let config = schema::expect_config(schema::resolve(a.source.preset.as_deref(), a.source.input.as_deref())?)?;
    let labels = a.contract.as_ref().or(a.keep.as_ref()).expect("clap requires one");
    let unknown: Vec<String> = labels
        .iter()
        .filter(|l| config.index_of(l).is_err())
        .map(|l| format!("unknown curve label {l:?}"))
        .collect();
    if !unknown.is_empty() {
        return Err(CliError::Invalid(unknown));
    }
    let contracted: Vec<String> = match &a.contract {
        Some(c) => c.clone(),
        None => config.names().iter().filter(|n| !labels.contains(n)).cloned().collect(),
    };
    let strict = parse_divisor(&a.divisor)?;
    for label in strict.support() {
        config.index_of(label).map_err(intersection_error)?;
    }
    let mut total = ic::pullback(&config, &contracted, &strict).map_err(intersection_error)?;
    if a.canonical {
        let k = ic::pullback_canonical(&config, &contracted, &QDivisor::new()).map_err(intersection_error)?;
        total = total.plus(&k);
    }
    let square = ic::self_intersection(&config, &total).map_err(intersection_error)?;
    let strict_map: BTreeMap<String, JsonRational> =
        strict.iter().map(|(l, c)| (l.clone(), JsonRational(c.clone()))).collect();
    Ok(json!({
        "contracted": contracted,
        "divisor": strict_map,
        "canonical": a.canonical,
        "pullback": divisor_json(&config, &total),
        "self_intersection": rational(&square),
    }))
}

fn parse_vector(s: &str, rank: usize) -> Result<LatticeVector, CliError> {
    let named = match s.trim() {
        "h" => Some(ic::t237_polarization()),
        "s" => Some(ic::t237_section()),
        "f" => Some(ic::t237_fiber()),
        _ => None,
    };
    if let Some(v) = named {
        if rank != v.coords().len() {
            return Err(invalid(format!("vector {s:?} is only defined in rank {}", v.coords().len())));
        }
        return Ok(v);
    }
    let coords: Result<Vec<i64>, _> = s.split(',').map(|c| c.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| invalid(format!("vector {s:?}: expected integers or h, s, f")))?;
    if coords.len() != rank {
        return Err(invalid(format!("vector {s:?} has {} coordinates, rank is {rank}", coords.len())));
    }
    Ok(LatticeVector(coords))
}

fn inertia_json(g: &[Vec<i64>]) -> Result<Value, CliError> {
    let s = ic::signature(g).map_err(CliError::domain)?;
    Ok(json!({"positive": s.positive, "negative": s.negative, "zero": s.zero}))
}

fn lattice(a: &LatticeArgs) -> Result<Value, CliError> {
    let config = schema::expect_config(schema::resolve(a.source.preset.as_deref(), a.source.input.as_deref())?)?;
    let g = ic::gram(&config);
    let rank = config.len();
    let det = linalg::determinant(&g);
    let even = (0..rank).all(|i| g[i][i] % 2 == 0);
    let mut out = json!({
        "config": ConfigDto::from_domain(&config),
        "rank": rank,
        "determinant": bigint(&det),
        "signature": inertia_json(&g)?,
        "even": even,
    });
    if !a.vectors.is_empty() {
        let vs: Vec<LatticeVector> = a.vectors.iter().map(|s| parse_vector(s, rank)).collect::<Result<_, _>>()?;
        let mut rows = Vec::new();
        for (name, v) in a.vectors.iter().zip(&vs) {
            let mut row = Map::new();
            row.insert("vector".into(), json!(name));
            for (other, u) in a.vectors.iter().zip(&vs) {
                let p = ic::pairing(&g, v, u).map_err(CliError::domain)?;
                row.insert(format!("·{other}"), json!(p));
            }
            rows.push(Value::Object(row));
        }
        out["pairings"] = Value::Array(rows);
    }
    if let Some(s) = &a.split {
        let e = parse_vector(s, rank)?;
        let sp = ic::split_hyperbolic(&g, &e).map_err(CliError::domain)?;
        out["split"] = json!({
            "e": sp.e.coords(),
            "e_prime": sp.e_prime.coords(),
            "complement_basis": sp.complement_basis.iter().map(|v| json!(v.coords())).collect::<Vec<_>>(),
            "complement_gram": sp.complement_gram,
            "complement_determinant": bigint(&linalg::determinant(&sp.complement_gram)),
            "complement_signature": inertia_json(&sp.complement_gram)?,
        });
    }
    Ok(out)
}

fn place_json(p: &Place) -> Value {
    match p {
        Place::Finite(f) => poly(f),
        Place::Infinity => json!("inf"),
    }
}

fn j_json(j: &Option<JValue>) -> Value {
    match j {
        None => Value::Null,
        Some(JValue::Finite(r)) => rational(r),
        Some(JValue::Infinity) => json!("inf"),
        Some(JValue::Residue(p)) => json!({ "residue": poly(p) }),
    }
}

fn fiber_json(r: &FiberReport) -> Value {
    json!({
        "place": place_json(&r.place),
        "degree": r.residual_degree,
        "ord_a": order(r.ord_a),
        "ord_b": order(r.ord_b),
        "ord_delta": order(r.ord_delta),
        "type": r.kodaira.to_string(),
        "j": j_json(&r.j),
    })
}

fn model_summary(m: &WeierstrassModel) -> Result<Value, CliError> {
    let disc = w::discriminant(m).map_err(schema::model_error)?;
    let fibers = w::fiber_reports(m).map_err(CliError::domain)?;
    Ok(json!({
        "model": ModelDto::from_domain(m),
        "discriminant": poly(&disc),
        "fibers": fibers.iter().map(fiber_json).collect::<Vec<_>>(),
        "delta_sum": w::delta_sum(&fibers),
        "euler_sum": w::euler_sum(&fibers),
    }))
}

fn parse_coeffs(flag: &str, items: &[String], problems: &mut Vec<String>) -> UniPoly {
    let mut coeffs = Vec::new();
    for (i, s) in items.iter().enumerate() {
        match parse_rational_arg(&format!("{flag}[{i}]"), s) {
            Ok(r) => coeffs.push(r),
            Err(e) => problems.push(e),
        }
    }
    UniPoly::from_coeffs(coeffs)
}

fn weierstrass(a: &WeierstrassArgs) -> Result<Value, CliError> {
    let model = match &a.input {
        Some(path) => {
            let text = schema::read_file(path)?;
            let dto: ModelDto = schema::parse_json(&text, &path.display().to_string())?;
            dto.to_domain()?
        }
        None => {
            let mut problems = Vec::new();
            let pa = parse_coeffs("--a", a.a.as_deref().unwrap_or_default(), &mut problems);
            let pb = parse_coeffs("--b", a.b.as_deref().unwrap_or_default(), &mut problems);
            if !problems.is_empty() {
                return Err(CliError::Invalid(problems));
            }
            WeierstrassModel::new(pa, pb, a.budget).map_err(schema::model_error)?
        }
    };
    let mut out = model_summary(&model)?;
    if a.minimalize {
        let mut current = model;
        let mut steps = Vec::new();
        loop {
            let fibers = w::fiber_reports(&current).map_err(CliError::domain)?;
            let Some(bad) = fibers.iter().find(|f| f.kodaira == KodairaType::NonMinimal) else {
                break;
            };
            if bad.residual_degree != 1 {
                return Err(CliError::domain(format!(
                    "non-minimal place of degree {}; only rational points are supported",
                    bad.residual_degree
                )));
            }
            current = w::minimalize(&current, &bad.place).map_err(CliError::domain)?;
            steps.push(place_json(&bad.place));
        }
        out["minimalized_at"] = Value::Array(steps);
        out["minimal"] = model_summary(&current)?;
    }
    Ok(out)
}

fn surface_json(t: &BrieskornParams, r: &SurfaceReport) -> Value {
    json!({
        "params": ParamsDto::from_domain(t),
        "type": r.surface_type.to_string(),
        "k3_fibers": r.k3_fibers.iter().map(fiber_json).collect::<Vec<_>>(),
        "k3_delta_sum": r.k3_delta_sum,
        "special_place": r.special_place.as_ref().map(place_json),
        "rational_fibers": r.rational_fibers.as_ref().map(|fs| fs.iter().map(fiber_json).collect::<Vec<_>>()),
        "euler_sum": r.euler_sum,
        "j": j_json(&r.j),
    })
}

fn params_from_assignments(items: &[String]) -> Result<BrieskornParams, CliError> {
    let mut map = Map::new();
    let mut problems = Vec::new();
    for item in items {
        match item.split_once('=') {
            Some((k, v)) => {
                let key = k.trim().to_string();
                if !w::BRIESKORN_KEYS.contains(&key.as_str()) {
                    problems.push(format!("--t: unknown parameter {key:?}; expected one of {}", w::BRIESKORN_KEYS.join(", ")));
                } else if map.contains_key(&key) {
                    problems.push(format!("--t: {key} given twice"));
                } else {
                    map.insert(key, json!(v.trim()));
                }
            }
            None => problems.push(format!("--t: expected key=value, got {item:?}")),
        }
    }
    if !problems.is_empty() {
        return Err(CliError::Invalid(problems));
    }
    let dto: ParamsDto = serde_json::from_value(Value::Object(map)).map_err(|e| invalid(format!("--t: {e}")))?;
    Ok(dto.to_domain())
}

fn brieskorn(a: &BrieskornArgs) -> Result<Value, CliError> {
    if let Some(path) = &a.sweep {
        let text = schema::read_file(path)?;
        let list: Vec<ParamsDto> = schema::parse_json(&text, &path.display().to_string())?;
        let reports: Vec<Value> = list
            .par_iter()
            .enumerate()
            .map(|(i, dto)| {
                let t = dto.to_domain();
                match w::classify_surface(&t) {
                    Ok(r) => {
                        let mut v = surface_json(&t, &r);
                        v["index"] = json!(i);
                        v["status"] = json!("ok");
                        v
                    }
                    Err(e) => json!({
                        "index": i,
                        "params": dto,
                        "status": "error",
                        "message": e.to_string(),
                    }),
                }
            })
            .collect();
        let failed = reports.iter().filter(|r| r["status"] == "error").count();
        return Ok(json!({"count": reports.len(), "failed": failed, "reports": reports}));
    }
    let t = if let Some(path) = &a.input {
        let text = schema::read_file(path)?;
        let dto: ParamsDto = schema::parse_json(&text, &path.display().to_string())?;
        dto.to_domain()
    } else if let Some(s) = &a.special {
        let [x, y] = s.as_slice() else {
            return Err(invalid("--special: expected a,b"));
        };
        let (x, y) = (parse_rational_arg("--special a", x), parse_rational_arg("--special b", y));
        match (x, y) {
            (Ok(x), Ok(y)) => w::special_locus_params(&x, &y),
            (x, y) => return Err(CliError::Invalid([x.err(), y.err()].into_iter().flatten().collect())),
        }
    } else {
        params_from_assignments(&a.t)?
    };
    let r = w::classify_surface(&t).map_err(CliError::domain)?;
    Ok(surface_json(&t, &r))
}

fn volume(a: &VolumeArgs) -> Result<Value, CliError> {
    let c = parse_rational_arg("--c", &a.c).map_err(invalid)?;
    let v = rr::min_volume(&c).map_err(|e| match e {
        RiemannRochError::OutOfRange(_) => invalid(format!("--c: {e}")),
        other => CliError::domain(other),
    })?;
    Ok(json!({"c": rational(&c), "volume": rational(&v)}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiples() {
        assert_eq!(parse_multiples("3").unwrap(), vec![3]);
        assert_eq!(parse_multiples("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert!(parse_multiples("4..1").is_err());
        assert!(parse_multiples("x").is_err());
    }

    #[test]
    fn assignments() {
        let t = params_from_assignments(&["t4=1".into(), "t42=-2/3".into()]).unwrap();
        assert_eq!(t.get(4), Some(&Rational::from_integer(1.into())));
        assert_eq!(t.get(42), Some(&Rational::new((-2).into(), 3.into())));
        let Err(CliError::Invalid(p)) = params_from_assignments(&["t5=1".into(), "t4".into()]) else {
            panic!()
        };
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn named_vectors_need_rank_ten() {
        assert!(parse_vector("h", 10).is_ok());
        assert!(parse_vector("h", 11).is_err());
        assert_eq!(parse_vector("1, 0", 2).unwrap(), LatticeVector(vec![1, 0]));
        assert!(parse_vector("1", 2).is_err());
    }
}
