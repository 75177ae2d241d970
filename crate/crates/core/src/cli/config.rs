//! TOML configuration files and their conversion to [`SetupParams`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{fmt_rational, parse_rational, CyclotomicNumber, LoopMonomial, Rational};
use crate::setup::{FElem, FScalar, GroundRegime, KScalar, Mode, Presentation, RegimeKind, SetupParams, SigmaKind};
use crate::spectrum::CenterSpectrum;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field: field.into(), message: message.into() }
}

/// A scalar: a root of unity `e(zeta_exp)`, a coefficient vector in the
/// power basis of `zeta_M`, a loop monomial `e(zeta_exp) * t^val`, or
/// (for `F` of rank two) its two `k`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_exp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub val: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclo_coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ScalarSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultSpec {
    /// Canonical `b_value` string of the vertex, e.g. `e(1/3)`.
    pub vertex: String,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub regime: RegimeKind,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub n: u32,
    pub m: u32,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_epsilon")]
    pub epsilon: i64,
    #[serde(default = "default_sigma")]
    pub sigma: SigmaKind,
    /// `field`, `split` or `quadratic` (numberfield regime only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    /// `d` of `k[x]/(x^2 - d)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<ScalarSpec>,
    pub beta: ScalarSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<ScalarSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ScalarSpec>,
    pub xi: ScalarSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multiplicities: Vec<MultSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Harness self-test only: shifts the predicted `dim H`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction_offset: Option<i64>,
}

fn default_mode() -> Mode {
    Mode::Polarized
}

fn default_epsilon() -> i64 {
    1
}

fn default_sigma() -> SigmaKind {
    SigmaKind::Identity
}

fn parse_q(field: &str, s: &str) -> Result<Rational, ConfigError> {
    parse_rational(s).map_err(|e| field_err(field, format!("{} ({:?})", e, s)))
}

fn k_scalar(field: &str, spec: &ScalarSpec, regime: RegimeKind, order: u32) -> Result<KScalar, ConfigError> {
    if spec.components.is_some() {
        return Err(field_err(field, "components are only allowed for elements of F"));
    }
    match regime {
        RegimeKind::Loop => {
            if spec.cyclo_coeffs.is_some() {
                return Err(field_err(field, "loop scalars take zeta_exp and val"));
            }
            let e = parse_q(field, spec.zeta_exp.as_deref().unwrap_or("0"))?;
            let v = parse_q(field, spec.val.as_deref().unwrap_or("0"))?;
            Ok(KScalar::Loop(LoopMonomial::from_parts(e, v)))
        }
        RegimeKind::Numberfield => {
            if spec.val.is_some() {
                return Err(field_err(field, "val is only meaningful in the loop regime"));
            }
            match (&spec.zeta_exp, &spec.cyclo_coeffs) {
                (Some(e), None) => {
                    let e = parse_q(field, e)?;
                    CyclotomicNumber::root_of_unity(order, &e)
                        .map(KScalar::Cyclo)
                        .ok_or_else(|| field_err(field, format!("e({}) does not lie in Q(zeta_{})", fmt_rational(&e), order)))
                }
                (None, Some(cs)) => {
                    let coeffs = cs.iter().map(|c| parse_q(field, c)).collect::<Result<Vec<_>, _>>()?;
                    Ok(KScalar::Cyclo(CyclotomicNumber::from_coeffs(order, coeffs)))
                }
                _ => Err(field_err(field, "give exactly one of zeta_exp or cyclo_coeffs")),
            }
        }
    }
}

fn f_scalar(field: &str, spec: &ScalarSpec, cfg: &Config, pres: &Presentation, order: u32) -> Result<FScalar, ConfigError> {
    if cfg.regime == RegimeKind::Loop {
        return match k_scalar(field, spec, RegimeKind::Loop, 0)? {
            KScalar::Loop(x) => Ok(FScalar::Loop(x)),
            KScalar::Cyclo(_) => unreachable!(),
        };
    }
    let rank = if *pres == Presentation::Field { 1 } else { 2 };
    if let Some(comps) = &spec.components {
        if spec.zeta_exp.is_some() || spec.cyclo_coeffs.is_some() || spec.val.is_some() {
            return Err(field_err(field, "components exclude the other keys"));
        }
        if comps.len() != rank {
            return Err(field_err(field, format!("F has rank {} over k, got {} components", rank, comps.len())));
        }
        let cs = comps
            .iter()
            .enumerate()
            .map(|(i, c)| match k_scalar(&format!("{}.components[{}]", field, i), c, RegimeKind::Numberfield, order)? {
                KScalar::Cyclo(x) => Ok(x),
                KScalar::Loop(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(FScalar::Cyclo(FElem(cs)));
    }
    let k = match k_scalar(field, spec, RegimeKind::Numberfield, order)? {
        KScalar::Cyclo(x) => x,
        KScalar::Loop(_) => unreachable!(),
    };
    let zero = CyclotomicNumber::zero(order);
    Ok(FScalar::Cyclo(FElem(match pres {
        Presentation::Field => vec![k],
        Presentation::Split => vec![k.clone(), k],
        _ => vec![k, zero],
    })))
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn to_params(&self) -> Result<SetupParams, ConfigError> {
        let (order, presentation) = match self.regime {
            RegimeKind::Loop => {
                if self.presentation.is_some() || self.d.is_some() {
                    return Err(field_err("presentation", "the loop regime has a fixed presentation"));
                }
                (0, Presentation::LoopModel)
            }
            RegimeKind::Numberfield => {
                let order = self.order.ok_or_else(|| field_err("M", "numberfield regime needs the cyclotomic order M"))?;
                if order == 0 {
                    return Err(field_err("M", "must be positive"));
                }
                let default = if self.n == 1 { "field" } else { "split" };
                let pres = match self.presentation.as_deref().unwrap_or(default) {
                    "field" => Presentation::Field,
                    "split" => Presentation::Split,
                    "quadratic" => {
                        let d = self.d.as_ref().ok_or_else(|| field_err("d", "quadratic presentation needs d"))?;
                        match k_scalar("d", d, RegimeKind::Numberfield, order)? {
                            KScalar::Cyclo(x) => Presentation::Quadratic(x),
                            KScalar::Loop(_) => unreachable!(),
                        }
                    }
                    other => return Err(field_err("presentation", format!("unknown presentation {:?}", other))),
                };
                (order, pres)
            }
        };
        let beta = k_scalar("beta", &self.beta, self.regime, order)?;
        let gamma = self.gamma.as_ref().map(|g| k_scalar("gamma", g, self.regime, order)).transpose()?;
        let c = self.c.as_ref().map(|c| f_scalar("c", c, self, &presentation, order)).transpose()?;
        let xi = f_scalar("xi", &self.xi, self, &presentation, order)?;
        Ok(SetupParams {
            regime: GroundRegime { kind: self.regime, order, n: self.n, sigma: self.sigma },
            presentation,
            m: self.m,
            mode: self.mode,
            epsilon: self.epsilon,
            beta,
            c,
            gamma,
            xi,
        })
    }

    /// Multiplicities indexed like the vertices of `spectrum`.
    pub fn multiplicity_vector(&self, spectrum: &CenterSpectrum) -> Result<Vec<u64>, ConfigError> {
        let mut out = vec![0; spectrum.len()];
        for (i, m) in self.multiplicities.iter().enumerate() {
            let idx = spectrum.index_of(&m.vertex).ok_or_else(|| {
                let known: Vec<&str> = spectrum.vertices.iter().map(|v| v.id.as_str()).collect();
                field_err(
                    &format!("multiplicities[{}].vertex", i),
                    format!("{:?} matches no vertex; vertices are {:?}", m.vertex, known),
                )
            })?;
            out[idx] = m.d;
        }
        Ok(out)
    }

    pub fn from_params(p: &SetupParams) -> Config {
        let order = p.regime.order;
        let (presentation, d) = match &p.presentation {
            Presentation::LoopModel => (None, None),
            Presentation::Quadratic(d) => (Some("quadratic".to_string()), Some(k_spec(&KScalar::Cyclo(d.clone())))),
            other => (Some(other.name().to_string()), None),
        };
        Config {
            regime: p.regime.kind,
            order: (p.regime.kind == RegimeKind::Numberfield).then_some(order),
            n: p.regime.n,
            m: p.m,
            mode: p.mode,
            epsilon: p.epsilon,
            sigma: p.regime.sigma,
            presentation,
            d,
            beta: k_spec(&p.beta),
            c: p.c.as_ref().map(|c| f_spec(c, &p.presentation)),
            gamma: p.gamma.as_ref().map(k_spec),
            xi: f_spec(&p.xi, &p.presentation),
            multiplicities: vec![],
            seed: None,
            trials: None,
            prediction_offset: None,
        }
    }
}

fn k_spec(x: &KScalar) -> ScalarSpec {
    match x {
        KScalar::Loop(m) => ScalarSpec {
            zeta_exp: Some(fmt_rational(m.coeff.value())),
            val: Some(fmt_rational(&m.val)),
            ..Default::default()
        },
        KScalar::Cyclo(c) => match c.root_of_unity_exp() {
            Some(e) => ScalarSpec { zeta_exp: Some(fmt_rational(&e)), ..Default::default() },
            None => ScalarSpec { cyclo_coeffs: Some(c.coeffs().iter().map(fmt_rational).collect()), ..Default::default() },
        },
    }
}

fn f_spec(x: &FScalar, pres: &Presentation) -> ScalarSpec {
    match x {
        FScalar::Loop(m) => k_spec(&KScalar::Loop(m.clone())),
        FScalar::Cyclo(e) => {
            let embedded = match pres {
                Presentation::Field => true,
                Presentation::Split => e.0[0] == e.0[1],
                _ => e.0[1].is_zero(),
            };
            if embedded {
                k_spec(&KScalar::Cyclo(e.0[0].clone()))
            } else {
                ScalarSpec { components: Some(e.0.iter().map(|c| k_spec(&KScalar::Cyclo(c.clone()))).collect()), ..Default::default() }
            }
        }
    }
}
