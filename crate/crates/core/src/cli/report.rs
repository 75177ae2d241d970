//! Machine-readable reports.

use serde::{Deserialize, Serialize};

use super::config::Config;
use crate::classifier::{ClassificationReport, DimRange, EdgeKind, FactorKind, LoopCaseRow, PredictedDims};
use crate::oracle::VerificationReport;
use crate::quiver::ShapeKind;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub b_value: String,
    pub residue_degree: u32,
    pub sigma_c_fixed: bool,
    pub star: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub from: String,
    pub to: String,
    pub star_fixed: bool,
    pub sigma_cxi_fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub kind: FactorKind,
    pub vertex: String,
    pub partner: Option<String>,
    pub weight: u32,
    pub sign_provenance: String,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub kind: EdgeKind,
    pub from: String,
    pub to: String,
    pub partner: Option<String>,
    pub weight: u32,
    pub sign_provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub shape: String,
    pub kind: ShapeKind,
    pub ell: usize,
    /// `(label, vertex id)`.
    pub labels: Vec<(String, String)>,
    pub factors: Vec<FactorEntry>,
    pub edge_spaces: Vec<EdgeEntry>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimPair {
    #[serde(rename = "H")]
    pub h: DimRange,
    pub g_xi: DimRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedEntry {
    /// Over `k^sigma` (over `k` in linear mode).
    pub k_sigma: DimPair,
    pub prime_field: Option<DimPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: String,
    pub params: Config,
    pub warnings: Vec<String>,
    pub vertices: Vec<VertexEntry>,
    pub arrows: Vec<ArrowEntry>,
    pub components: Vec<ComponentEntry>,
    pub flags: Vec<String>,
    pub multiplicities: Vec<u64>,
    pub predicted_dims: Option<PredictedEntry>,
    pub verification: Option<VerificationReport>,
}

impl ReportFile {
    pub fn new(config: &Config, r: &ClassificationReport, mult: &[u64], pred: Option<&PredictedDims>) -> ReportFile {
        let q = &r.quiver;
        let id = |i: usize| q.spectrum.vertices[i].id.clone();
        let vertices = q
            .spectrum
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| VertexEntry {
                id: v.id.clone(),
                b_value: v.b_value.canonical(),
                residue_degree: v.residue_degree,
                sigma_c_fixed: q.sigma_c_fixed[i],
                star: q.star(i).map(id),
            })
            .collect();
        let arrows = q
            .arrows
            .as_ref()
            .map(|arrows| {
                arrows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| ArrowEntry {
                        from: id(a.from),
                        to: id(a.to),
                        star_fixed: q.arrow_fixed(i),
                        sigma_cxi_fixed: q.sigma_cxi_fixed[i],
                    })
                    .collect()
            })
            .unwrap_or_default();
        let components = r
            .components
            .iter()
            .map(|c| ComponentEntry {
                shape: c.shape.name(),
                kind: c.shape.kind,
                ell: c.shape.ell,
                labels: c.shape.labels.iter().map(|(l, v)| (l.clone(), id(*v))).collect(),
                factors: c
                    .factors
                    .iter()
                    .map(|&fi| {
                        let f = &r.factors[fi];
                        FactorEntry {
                            kind: f.kind,
                            vertex: id(f.vertex),
                            partner: f.partner.map(id),
                            weight: f.weight,
                            sign_provenance: f.sign_provenance.clone(),
                            flags: f.flags.clone(),
                        }
                    })
                    .collect(),
                edge_spaces: c
                    .edges
                    .iter()
                    .map(|&ei| {
                        let e = &r.edges[ei];
                        EdgeEntry {
                            kind: e.kind,
                            from: id(e.from),
                            to: id(e.to),
                            partner: e.partner.map(&id),
                            weight: e.weight,
                            sign_provenance: e.sign_provenance.clone(),
                        }
                    })
                    .collect(),
                flags: c.shape.flags.clone(),
            })
            .collect();
        ReportFile {
            format_version: FORMAT_VERSION.into(),
            params: config.clone(),
            warnings: r.warnings().iter().map(|w| format!("{}: {}", w.code, w.message)).collect(),
            vertices,
            arrows,
            components,
            flags: r.flags.clone(),
            multiplicities: mult.to_vec(),
            predicted_dims: pred.map(|p| PredictedEntry {
                k_sigma: DimPair { h: p.h, g_xi: p.g_xi },
                prime_field: p.h_prime.zip(p.g_xi_prime).map(|(h, g)| DimPair { h, g_xi: g }),
            }),
            verification: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<ReportFile, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        out.push_str(&format!(
            "regime {:?}, n = {}, m = {}, mode {:?}, sigma {:?}, epsilon = {}\n",
            p.regime, p.n, p.m, p.mode, p.sigma, p.epsilon
        ));
        for w in &self.warnings {
            out.push_str(&format!("warning: {}\n", w));
        }
        out.push_str(&format!("{} vertices, {} arrows\n", self.vertices.len(), self.arrows.len()));
        for c in &self.components {
            let fs: Vec<String> = c.factors.iter().map(|f| format!("{:?}", f.kind)).collect();
            let es: Vec<String> = c.edge_spaces.iter().map(|e| format!("{:?}", e.kind)).collect();
            out.push_str(&format!("  {}: factors [{}], edges [{}]\n", c.shape, fs.join(", "), es.join(", ")));
            out.push_str(&format!(
                "    labels {}\n",
                c.labels.iter().map(|(l, v)| format!("{}={}", l, v)).collect::<Vec<_>>().join(" ")
            ));
            for f in &c.flags {
                out.push_str(&format!("    flag: {}\n", f));
            }
        }
        for f in &self.flags {
            if !self.components.iter().any(|c| c.flags.contains(f)) {
                out.push_str(&format!("flag: {}\n", f));
            }
        }
        if let Some(pd) = &self.predicted_dims {
            out.push_str(&format!("predicted dim H = {}, dim g_xi = {} (over k^sigma)\n", pd.k_sigma.h, pd.k_sigma.g_xi));
            if let Some(q) = &pd.prime_field {
                out.push_str(&format!("predicted dim H = {}, dim g_xi = {} (over Q)\n", q.h, q.g_xi));
            }
        }
        if let Some(v) = &self.verification {
            out.push_str(&format!(
                "verification: {} trials, {}\n",
                v.trials.len(),
                if v.all_passed { "all checks passed" } else { "MISMATCH" }
            ));
            if let (Some(h), Some(g)) = (v.h_dim, v.g_dim) {
                out.push_str(&format!("  oracle dim H = {}, dim g_xi = {}\n", h, g));
            }
            out.push_str(&format!("  resolved factors {:?}\n  resolved edges {:?}\n", v.resolved_factors, v.resolved_edges));
            for f in v.failures() {
                out.push_str(&format!(
                    "  FAIL {}: predicted {}, oracle {}, seed {}\n",
                    f.name, f.predicted, f.observed, f.seed
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowEntry {
    pub row: usize,
    pub case: String,
    pub shape: ShapeKind,
    pub forms: Vec<String>,
    pub edge_forms: Vec<String>,
    pub flagged: bool,
    pub witness: Config,
    pub witness_shape: String,
    pub witness_factors: Vec<FactorKind>,
    pub witness_edges: Vec<EdgeKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub format_version: String,
    pub rows: Vec<TableRowEntry>,
}

impl TableRowEntry {
    pub fn new(row: &LoopCaseRow, witness: Config, r: &ClassificationReport) -> Self {
        TableRowEntry {
            row: row.row,
            case: row.case.clone(),
            shape: row.shape,
            forms: row.forms.iter().map(|f| format!("{:?}", f)).collect(),
            edge_forms: row.edge_forms.iter().map(|f| format!("{:?}", f)).collect(),
            flagged: row.flagged,
            witness,
            witness_shape: r.components.iter().map(|c| c.shape.name()).collect::<Vec<_>>().join(" + "),
            witness_factors: r.factor_kinds(),
            witness_edges: r.edge_kinds(),
        }
    }
}

impl TableFile {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!(
                "{:>2}  {:<80} {:?} forms [{}] edges [{}]{}\n",
                r.row,
                r.case,
                r.shape,
                r.forms.join(", "),
                r.edge_forms.join(", "),
                if r.flagged { "  (flagged)" } else { "" }
            ));
            let w = &r.witness;
            let gamma = w.gamma.as_ref().map(|g| spec_text(g, "tau")).unwrap_or_default();
            out.push_str(&format!(
                "    witness n={} m={} sigma={:?} epsilon={} beta={} gamma={} xi={} -> {} {:?} {:?}\n",
                w.n,
                w.m,
                w.sigma,
                w.epsilon,
                spec_text(&w.beta, "tau"),
                gamma,
                spec_text(&w.xi, "t"),
                r.witness_shape,
                r.witness_factors,
                r.witness_edges
            ));
        }
        out
    }
}

fn spec_text(s: &super::config::ScalarSpec, var: &str) -> String {
    let e = s.zeta_exp.clone().unwrap_or_else(|| "0".into());
    match &s.val {
        Some(v) if v != "0" => format!("e({})*{}^({})", e, var, v),
        _ => format!("e({})", e),
    }
}
