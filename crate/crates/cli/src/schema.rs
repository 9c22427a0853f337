//! JSON schema for inputs and the built-in presets.
//!
//! Rationals are written as strings `"p/q"` (or `"n"`) and read from either
//! strings or JSON integers. Floating point numbers are rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use t237::exact_algebra::Rational;
use t237::intersection_calc::{self as ic, CurveConfig};
use t237::quotient_sing::{HJChain, SingularityIncidence};
use t237::riemann_roch::{self as rr, RRMode, SingularityDatum, SurfaceRRData};
use t237::weierstrass::{BrieskornParams, WeierstrassError, WeierstrassModel};
use t237::UniPoly;

use crate::CliError;

/// A rational in the JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = JsonRational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(JsonRational(Rational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(JsonRational(Rational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
        Err(E::custom(format!("floating point value {v} is not exact; write it as \"p/q\"")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        parse_rational(v).map(JsonRational).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

/// `"p/q"`, `"n"`, with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches(['0', '+']).is_empty() {
            return Err(format!("{s:?} has a zero denominator"));
        }
    }
    let cleaned: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    Rational::from_str(&cleaned).map_err(|_| format!("{s:?} is not a rational number"))
}

fn rationals(v: &[JsonRational]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn json_rationals(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

// ---------------------------------------------------------------------------
// Curve configurations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDto {
    pub name: String,
    pub selfint: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDto {
    pub curves: Vec<CurveDto>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl ConfigDto {
    pub fn from_domain(c: &CurveConfig) -> Self {
        ConfigDto {
            curves: c
                .names()
                .iter()
                .zip(c.selfints())
                .map(|(n, &s)| CurveDto {
                    name: n.clone(),
                    selfint: s,
                })
                .collect(),
            edges: c.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_domain(&self) -> Result<CurveConfig, CliError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        CurveConfig::from_edges(self.curves.iter().map(|c| (c.name.clone(), c.selfint)), &edges)
            .map_err(|e| CliError::Invalid(vec![e.to_string()]))
    }
}

// ---------------------------------------------------------------------------
// Riemann–Roch data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeDto {
    Canonical,
    Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityDto {
    pub chain: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDto {
    #[serde(rename = "chi_O")]
    pub chi_o: JsonRational,
    pub vol: JsonRational,
    pub p_g: i64,
    pub mode: ModeDto,
    #[serde(default)]
    pub singularities: Vec<SingularityDto>,
}

impl SurfaceDto {
    pub fn from_domain(d: &SurfaceRRData) -> Self {
        SurfaceDto {
            chi_o: JsonRational(d.chi_o().clone()),
            vol: JsonRational(d.vol().clone()),
            p_g: d.p_g(),
            mode: match d.mode() {
                RRMode::Canonical => ModeDto::Canonical,
                RRMode::Pair => ModeDto::Pair,
            },
            singularities: d
                .singularities()
                .iter()
                .map(|s| match s {
                    SingularityDatum::Incidence(inc) => SingularityDto {
                        chain: inc.chain().selfints().to_vec(),
                        incidence: Some(inc.strict_mult().to_vec()),
                        canonical: false,
                    },
                    SingularityDatum::Canonical(c) => SingularityDto {
                        chain: c.selfints().to_vec(),
                        incidence: None,
                        canonical: true,
                    },
                })
                .collect(),
        }
    }

    /// Validates every field and reports all problems at once.
    pub fn to_domain(&self) -> Result<SurfaceRRData, CliError> {
        let mut problems = Vec::new();
        let mut sings = Vec::new();
        for (i, s) in self.singularities.iter().enumerate() {
            let chain = match HJChain::new(s.chain.clone()) {
                Ok(c) => c,
                Err(e) => {
                    problems.push(format!("singularities[{i}].chain: {e}"));
                    continue;
                }
            };
            match (&s.incidence, s.canonical) {
                (Some(m), false) => match SingularityIncidence::new(chain, m.clone()) {
                    Ok(inc) => sings.push(SingularityDatum::Incidence(inc)),
                    Err(e) => problems.push(format!("singularities[{i}].incidence: {e}")),
                },
                (None, true) => sings.push(SingularityDatum::Canonical(chain)),
                _ => problems.push(format!(
                    "singularities[{i}]: give exactly one of \"incidence\" or \"canonical\": true"
                )),
            }
        }
        if self.vol.0 <= Rational::from_integer(0.into()) {
            problems.push(format!("vol: must be positive, got {}", self.vol.0));
        }
        if self.p_g < 0 {
            problems.push(format!("p_g: must be nonnegative, got {}", self.p_g));
        }
        if !problems.is_empty() {
            return Err(CliError::Invalid(problems));
        }
        let mode = match self.mode {
            ModeDto::Canonical => RRMode::Canonical,
            ModeDto::Pair => RRMode::Pair,
        };
        SurfaceRRData::new(self.chi_o.0.clone(), self.vol.0.clone(), self.p_g, mode, sings)
            .map_err(|e| CliError::Invalid(vec![e.to_string()]))
    }
}

// ---------------------------------------------------------------------------
// Brieskorn parameters and Weierstrass models
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsDto {
    pub t4: JsonRational,
    pub t10: JsonRational,
    pub t12: JsonRational,
    pub t16: JsonRational,
    pub t18: JsonRational,
    pub t22: JsonRational,
    pub t24: JsonRational,
    pub t28: JsonRational,
    pub t30: JsonRational,
    pub t36: JsonRational,
    pub t42: JsonRational,
}

impl ParamsDto {
    pub fn from_domain(t: &BrieskornParams) -> Self {
        let v = t.values().map(|r| JsonRational(r.clone()));
        let [t4, t10, t12, t16, t18, t22, t24, t28, t30, t36, t42] = v;
        ParamsDto {
            t4,
            t10,
            t12,
            t16,
            t18,
            t22,
            t24,
            t28,
            t30,
            t36,
            t42,
        }
    }

    pub fn to_domain(&self) -> BrieskornParams {
        BrieskornParams::from_values(
            [
                &self.t4, &self.t10, &self.t12, &self.t16, &self.t18, &self.t22, &self.t24, &self.t28, &self.t30,
                &self.t36, &self.t42,
            ]
            .map(|r| r.0.clone()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDto {
    pub a: Vec<JsonRational>,
    pub b: Vec<JsonRational>,
    pub budget: u32,
}

impl ModelDto {
    pub fn from_domain(m: &WeierstrassModel) -> Self {
        ModelDto {
            a: json_rationals(m.a().coeffs()),
            b: json_rationals(m.b().coeffs()),
            budget: m.budget(),
        }
    }

    pub fn to_domain(&self) -> Result<WeierstrassModel, CliError> {
        WeierstrassModel::new(
            UniPoly::from_coeffs(rationals(&self.a)),
            UniPoly::from_coeffs(rationals(&self.b)),
            self.budget,
        )
        .map_err(model_error)
    }
}

/// A vanishing discriminant is a property of a well-formed model, so it is a
/// domain error; malformed charts are input errors.
pub fn model_error(e: WeierstrassError) -> CliError {
    match e {
        WeierstrassError::ZeroDiscriminant => CliError::domain(e),
        other => CliError::Invalid(vec![other.to_string()]),
    }
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

pub const PRESETS: [&str; 4] = ["theorem-4.3", "theorem-4.4", "t237", "type-I-config"];

/// A domain object loaded from a preset or file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Surface(SurfaceRRData),
    Config(CurveConfig),
    Params(Box<BrieskornParams>),
}

pub fn preset(name: &str) -> Result<Model, CliError> {
    Ok(match name {
        "theorem-4.3" => Model::Surface(rr::theorem_4_3()),
        "theorem-4.4" => Model::Surface(rr::theorem_4_4()),
        "t237" => Model::Config(ic::t237()),
        "type-I-config" => Model::Config(ic::type_i_config()),
        other => {
            return Err(CliError::Usage(format!(
                "unknown preset {other:?}; known presets: {}",
                PRESETS.join(", ")
            )))
        }
    })
}

pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Loads a file, recognising the schema by its keys: `curves` for a
/// configuration, `chi_O` for Riemann–Roch data, otherwise Brieskorn parameters.
pub fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = read_file(path)?;
    let source = path.display().to_string();
    let value: serde_json::Value = parse_json(&text, &source)?;
    let has = |k: &str| value.get(k).is_some();
    if has("curves") {
        let dto: ConfigDto = parse_json(&text, &source)?;
        Ok(Model::Config(dto.to_domain()?))
    } else if has("chi_O") {
        let dto: SurfaceDto = parse_json(&text, &source)?;
        Ok(Model::Surface(dto.to_domain()?))
    } else {
        let dto: ParamsDto = parse_json(&text, &source)?;
        Ok(Model::Params(Box::new(dto.to_domain())))
    }
}

/// `--preset` or `--input`, exactly one of which clap guarantees.
pub fn resolve(preset_name: Option<&str>, input: Option<&Path>) -> Result<Model, CliError> {
    match (preset_name, input) {
        (Some(p), _) => preset(p),
        (None, Some(path)) => load_model(path),
        (None, None) => Err(CliError::Usage("give --preset or --input".into())),
    }
}

pub fn expect_surface(m: Model) -> Result<SurfaceRRData, CliError> {
    match m {
        Model::Surface(s) => Ok(s),
        _ => Err(CliError::Usage("this command needs Riemann-Roch data (chi_O, vol, ...)".into())),
    }
}

pub fn expect_config(m: Model) -> Result<CurveConfig, CliError> {
    match m {
        Model::Config(c) => Ok(c),
        _ => Err(CliError::Usage("this command needs a curve configuration (curves, edges)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use t237::exact_algebra::{int, rat};

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("-6/13").unwrap(), rat(-6, 13));
        assert_eq!(parse_rational(" 4 / 8 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("x").is_err());
        let v: Vec<JsonRational> = serde_json::from_str(r#"[1, "2/4", -3]"#).unwrap();
        assert_eq!(v, vec![JsonRational(int(1)), JsonRational(rat(1, 2)), JsonRational(int(-3))]);
        assert!(serde_json::from_str::<JsonRational>("0.5").is_err());
    }

    #[test]
    fn presets_round_trip() {
        for name in PRESETS {
            match preset(name).unwrap() {
                Model::Surface(s) => {
                    let text = serde_json::to_string(&SurfaceDto::from_domain(&s)).unwrap();
                    let back: SurfaceDto = parse_json(&text, "test").unwrap();
                    assert_eq!(back.to_domain().unwrap(), s);
                }
                Model::Config(c) => {
                    let text = serde_json::to_string(&ConfigDto::from_domain(&c)).unwrap();
                    let back: ConfigDto = parse_json(&text, "test").unwrap();
                    assert_eq!(back.to_domain().unwrap(), c);
                }
                Model::Params(_) => unreachable!(),
            }
        }
        assert!(matches!(preset("nope"), Err(CliError::Usage(_))));
    }

    #[test]
    fn preset_contents() {
        let Model::Surface(s) = preset("theorem-4.4").unwrap() else { panic!() };
        let dto = SurfaceDto::from_domain(&s);
        assert_eq!(dto.vol, JsonRational(rat(1, 42)));
        assert_eq!(dto.chi_o, JsonRational(int(2)));
        let chains: Vec<Vec<u32>> = dto.singularities.iter().map(|s| s.chain.clone()).collect();
        assert_eq!(chains, vec![vec![2], vec![2, 2], vec![2; 6]]);
        let Model::Config(c) = preset("t237").unwrap() else { panic!() };
        assert_eq!(c.len(), 10);
    }

    #[test]
    fn every_problem_is_listed() {
        let text = r#"{"chi_O": 2, "vol": "-1", "p_g": -1, "mode": "pair",
            "singularities": [{"chain": [1]}, {"chain": [2], "incidence": [1, 0]}, {"chain": [2]}]}"#;
        let dto: SurfaceDto = parse_json(text, "test").unwrap();
        let Err(CliError::Invalid(problems)) = dto.to_domain() else { panic!() };
        assert_eq!(problems.len(), 5, "{problems:?}");
    }

    #[test]
    fn malformed_json_has_position() {
        let err = parse_json::<ConfigDto>("{\n  \"curves\": [\n", "x.json").unwrap_err();
        let CliError::Parse { line, column, .. } = err else { panic!() };
        assert_eq!(line, 3);
        assert!(column <= 1);
    }
}
