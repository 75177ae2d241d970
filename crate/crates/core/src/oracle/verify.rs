//! Seeded cross-check of the classifier against the oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::LinearSystemRank;
use super::pairing::{extract_vertex_pairing, PairingCheck, PairingSymmetry};
use super::systems::{
    check_base_change, eigenspace_dim, fixed_lie_dim, isotypic_multiplicities, masked_dim, twisted_eigenspace_dim,
    BaseChangeCheck,
};
use super::{build_setup, OracleError, PolarizedSetup};
use crate::classifier::{predict_dimensions, ClassificationReport, DimRange, EdgeKind, FactorKind};
use crate::setup::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub exact: bool,
    /// Added to the predicted `dim H`; nonzero only in harness self-tests.
    pub prediction_offset: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 5, seed: 0, exact: false, prediction_offset: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub predicted: String,
    pub observed: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    pub size: usize,
    pub checks: Vec<Check>,
    pub h_dim: u64,
    pub g_dim: u64,
    pub resolved_factors: Vec<FactorKind>,
    pub resolved_edges: Vec<EdgeKind>,
    pub pairings: Vec<PairingCheck>,
    pub base_change: Option<BaseChangeCheck>,
    pub ranks: Vec<(String, LinearSystemRank)>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: Vec<TrialReport>,
    /// Checks spanning several trials.
    pub global_checks: Vec<Check>,
    pub all_passed: bool,
    pub h_dim: Option<u64>,
    pub g_dim: Option<u64>,
    pub resolved_factors: Vec<FactorKind>,
    pub resolved_edges: Vec<EdgeKind>,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.trials
            .iter()
            .flat_map(|t| t.checks.iter())
            .chain(self.global_checks.iter())
            .filter(|c| !c.passed)
            .collect()
    }
}

fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(t as u64 + 1)
}

pub fn verify(report: &ClassificationReport, mult: &[u64], opts: VerifyOptions) -> Result<VerificationReport, OracleError> {
    predict_dimensions(report, mult)?;
    let trials: Vec<Result<TrialReport, OracleError>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(opts.seed, t);
            let setup = build_setup(report, mult, seed)?;
            run_trial(&setup, opts)
        })
        .collect();
    let trials: Vec<TrialReport> = trials.into_iter().collect::<Result<_, _>>()?;
    let mut global_checks = Vec::new();
    if let Some(first) = trials.first() {
        let same = trials.iter().all(|t| {
            (t.h_dim, t.g_dim, &t.resolved_factors, &t.resolved_edges)
                == (first.h_dim, first.g_dim, &first.resolved_factors, &first.resolved_edges)
        });
        global_checks.push(Check {
            name: "choice_independence".into(),
            passed: same,
            predicted: format!("({}, {}) in every trial", first.h_dim, first.g_dim),
            observed: trials.iter().map(|t| format!("({}, {})", t.h_dim, t.g_dim)).collect::<Vec<_>>().join(" "),
            seed: opts.seed,
        });
    }
    let all_passed = trials.iter().all(|t| t.passed()) && global_checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        all_passed,
        h_dim: trials.first().map(|t| t.h_dim),
        g_dim: trials.first().map(|t| t.g_dim),
        resolved_factors: trials.first().map(|t| t.resolved_factors.clone()).unwrap_or_default(),
        resolved_edges: trials.first().map(|t| t.resolved_edges.clone()).unwrap_or_default(),
        trials,
        global_checks,
    })
}

fn with_range(value: String, r: DimRange) -> String {
    if r.is_exact() {
        value
    } else {
        format!("{} (range {})", value, r)
    }
}

/// Totals of several undetermined items may fall strictly inside the range.
fn in_span(r: DimRange, v: u64) -> bool {
    r.low <= v && v <= r.high
}

fn resolve_factor(kind: FactorKind, w: u64, d: u64, observed: u64) -> FactorKind {
    if kind != FactorKind::OrthOrSymp || d == 0 {
        return kind;
    }
    if observed == w * d * (d - 1) / 2 {
        FactorKind::Orth
    } else if observed == w * d * (d + 1) / 2 {
        FactorKind::Symp
    } else {
        kind
    }
}

fn resolve_edge(kind: EdgeKind, w: u64, d: u64, observed: u64) -> EdgeKind {
    if kind != EdgeKind::WedgeOrSym || d == 0 {
        return kind;
    }
    if observed == w * d * (d - 1) / 2 {
        EdgeKind::Wedge2
    } else if observed == w * d * (d + 1) / 2 {
        EdgeKind::Sym2
    } else {
        kind
    }
}

fn symmetry_matches(kind: FactorKind, sym: Option<PairingSymmetry>) -> bool {
    use PairingSymmetry::*;
    match (kind, sym) {
        (FactorKind::Orth, Some(Symmetric)) | (FactorKind::Symp, Some(Alternating)) => true,
        (FactorKind::Unitary, Some(Hermitian | SkewHermitian)) => true,
        (FactorKind::GLPair, Some(Paired)) => true,
        // unresolved only when d = 0, where any consistent sign is fine
        (FactorKind::OrthOrSymp, Some(_)) => true,
        _ => false,
    }
}

fn run_trial(s: &PolarizedSetup, opts: VerifyOptions) -> Result<TrialReport, OracleError> {
    let report = &s.report;
    let pred = predict_dimensions(report, &s.mult)?;
    let p = s.params();
    let scale = match p.mode {
        Mode::Linear => crate::scalars::euler_phi(p.regime.order) as u64,
        Mode::Polarized => p.ksigma_over_q().unwrap_or(1) as u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0x5eed);
    let mut checks = Vec::new();
    let mut ranks = Vec::new();
    let seed = s.seed;
    let mut push = |name: &str, passed: bool, predicted: String, observed: String| {
        checks.push(Check { name: name.into(), passed, predicted, observed, seed })
    };
    let to_field = |nullity: usize| -> (u64, bool) { ((nullity as u64) / scale, (nullity as u64).is_multiple_of(scale)) };

    let mults = isotypic_multiplicities(s, opts.exact, &mut rng)?;
    push("multiplicities", mults == s.mult, format!("{:?}", s.mult), format!("{:?}", mults));

    let xi = s.xi();
    let h_rank = fixed_lie_dim(s, opts.exact, &mut rng);
    let g_rank = eigenspace_dim(s, &xi, opts.exact, &mut rng);
    let tw_rank = twisted_eigenspace_dim(s, &xi, opts.exact, &mut rng);
    let (h_dim, h_div) = to_field(h_rank.nullity);
    let (g_dim, g_div) = to_field(g_rank.nullity);
    let offset = |r: DimRange| DimRange {
        low: (r.low as i64 + opts.prediction_offset).max(0) as u64,
        high: (r.high as i64 + opts.prediction_offset).max(0) as u64,
    };
    push(
        "twist_coherence",
        tw_rank.nullity == g_rank.nullity,
        g_rank.nullity.to_string(),
        tw_rank.nullity.to_string(),
    );
    ranks.push(("fixed_lie".to_string(), h_rank));
    ranks.push(("eigenspace".to_string(), g_rank));
    ranks.push(("twisted".to_string(), tw_rank));

    let q = &report.quiver;
    let mut resolved_factors = Vec::new();
    let mut factor_sum = 0;
    for (fi, f) in report.factors.iter().enumerate() {
        let mut blocks = vec![(f.vertex, f.vertex)];
        if let Some(pv) = f.partner {
            blocks.push((pv, pv));
        }
        let r = masked_dim(s, None, &blocks, opts.exact, &mut rng)?;
        let (obs, div) = to_field(r.nullity);
        factor_sum += obs;
        let range = pred.factor_dims[fi];
        push(&format!("factor[{}]", fi), div && range.contains(obs), range.to_string(), obs.to_string());
        resolved_factors.push(resolve_factor(f.kind, f.weight as u64, s.mult[f.vertex], obs));
    }
    let h_pred = offset(DimRange::exact(factor_sum));
    push(
        "fixed_lie_dim",
        h_div && h_pred.contains(h_dim) && in_span(pred.h, h_dim),
        with_range(h_pred.to_string(), offset(pred.h)),
        h_dim.to_string(),
    );

    let mut resolved_edges = Vec::new();
    let mut edge_sum = 0;
    for (ei, e) in report.edges.iter().enumerate() {
        let mut blocks = vec![(e.to, e.from)];
        if let Some(star) = &q.vertex_star {
            blocks.push((star[e.from], star[e.to]));
        }
        blocks.dedup();
        let r = masked_dim(s, Some(&xi), &blocks, opts.exact, &mut rng)?;
        let (obs, div) = to_field(r.nullity);
        edge_sum += obs;
        let range = pred.edge_dims[ei];
        push(&format!("edge[{}]", ei), div && range.contains(obs), range.to_string(), obs.to_string());
        resolved_edges.push(resolve_edge(e.kind, e.weight as u64, s.mult[e.to], obs));
    }
    push(
        "eigenspace_dim",
        g_div && edge_sum == g_dim && in_span(pred.g_xi, g_dim),
        with_range(edge_sum.to_string(), pred.g_xi),
        g_dim.to_string(),
    );

    let mut pairings = Vec::new();
    if p.mode == Mode::Polarized {
        for (fi, f) in report.factors.iter().enumerate() {
            if s.mult[f.vertex] == 0 {
                continue;
            }
            let pc = extract_vertex_pairing(s, f.vertex)?;
            let kind = resolved_factors[fi];
            let ok = pc.holds() && pc.dim as u64 == s.mult[f.vertex] && symmetry_matches(kind, pc.symmetry);
            push(
                &format!("pairing[{}]", q.spectrum.vertices[f.vertex].id),
                ok,
                format!("perfect sesquilinear pairing matching {:?}", kind),
                format!(
                    "in_k={} perfect={} sesquilinear={} eta={:?} symmetry={:?}",
                    pc.in_k, pc.perfect, pc.sesquilinear, pc.eta, pc.symmetry
                ),
            );
            pairings.push(pc);
        }
    }

    let base_change = if p.mode == Mode::Polarized { check_base_change(s, &xi, opts.exact, &mut rng) } else { None };
    if let Some(bc) = &base_change {
        push(
            "base_change",
            bc.holds,
            format!("H: {}, g: {}", bc.h_lhs, bc.g_lhs),
            format!("H: {}, g: {}", bc.h_rhs, bc.g_rhs),
        );
    }

    Ok(TrialReport {
        seed: s.seed,
        size: s.size,
        checks,
        h_dim,
        g_dim,
        resolved_factors,
        resolved_edges,
        pairings,
        base_change,
        ranks,
    })
}
