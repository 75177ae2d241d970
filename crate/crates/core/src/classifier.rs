//! Factor kinds of `H`, summand kinds of `g(xi)` and predicted dimensions.

use std::fmt;

use num_integer::Integer;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{build_quiver, classify_components, ComponentShape, InvolutiveQuiver, QuiverError, ShapeKind};
use crate::setup::{validate_params, Mode, RegimeKind, SetupError, SetupParams, SetupWarning, ValidatedParams};
use crate::spectrum::{split_center, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid parameters: {}", join_errors(.0))]
    Setup(Vec<SetupError>),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("invalid multiplicities: {0}")]
    Multiplicity(String),
}

fn join_errors(errs: &[SetupError]) -> String {
    errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorKind {
    /// `GL(M_i)` for a pair `i != i^*`.
    GLPair,
    Orth,
    Symp,
    OrthOrSymp,
    Unitary,
    /// `GL(M_i)` of the linear problem.
    GL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    /// `Hom(M_i, M_j)` for a pair of arrows `e != e^*`.
    HomPair,
    Wedge2,
    Sym2,
    WedgeOrSym,
    Hermitian,
    /// `Hom(M_i, M_j)` of the linear problem.
    Hom,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A factor of `H` attached to a vertex orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub vertex: usize,
    pub partner: Option<usize>,
    /// `[L_i : k^sigma]` (linear mode: `[L_i : k]`).
    pub weight: u32,
    pub sign_provenance: String,
    pub flags: Vec<String>,
}

/// A summand of `g(xi)` attached to an arrow orbit; arrows are named by source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpace {
    pub kind: EdgeKind,
    pub arrow: usize,
    pub partner: Option<usize>,
    pub from: usize,
    pub to: usize,
    pub weight: u32,
    pub sign_provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub shape: ComponentShape,
    pub factors: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub validated: ValidatedParams,
    pub quiver: InvolutiveQuiver,
    pub components: Vec<ComponentReport>,
    pub factors: Vec<Factor>,
    pub edges: Vec<EdgeSpace>,
    pub flags: Vec<String>,
}

impl ClassificationReport {
    pub fn params(&self) -> &SetupParams {
        &self.validated.params
    }

    pub fn warnings(&self) -> &[SetupWarning] {
        &self.validated.warnings
    }

    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        self.factors.iter().map(|f| f.kind).collect()
    }

    pub fn edge_kinds(&self) -> Vec<EdgeKind> {
        self.edges.iter().map(|e| e.kind).collect()
    }
}

/// An integer dimension, or the two candidates of an undetermined form type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimRange {
    pub low: u64,
    pub high: u64,
}

impl DimRange {
    pub fn exact(v: u64) -> Self {
        DimRange { low: v, high: v }
    }

    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    pub fn contains(&self, v: u64) -> bool {
        v == self.low || v == self.high
    }

    pub fn scale(&self, s: u64) -> Self {
        DimRange { low: self.low * s, high: self.high * s }
    }

    fn add(&self, o: &DimRange) -> DimRange {
        DimRange { low: self.low + o.low, high: self.high + o.high }
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.low)
        } else {
            write!(f, "{{{}, {}}}", self.low, self.high)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedDims {
    /// Over `k^sigma` (linear mode: over `k`).
    pub h: DimRange,
    pub g_xi: DimRange,
    pub h_prime: Option<DimRange>,
    pub g_xi_prime: Option<DimRange>,
    pub factor_dims: Vec<DimRange>,
    pub edge_dims: Vec<DimRange>,
}

/// Runs validation, center splitting, quiver construction and typing.
pub fn classify(p: &SetupParams) -> Result<ClassificationReport, ClassifyError> {
    let vp = validate_params(p).map_err(ClassifyError::Setup)?;
    let spectrum = split_center(p)?;
    let quiver = build_quiver(&spectrum, &vp)?;
    let shapes = classify_components(&quiver)?;
    Ok(assemble_report(quiver, shapes, vp))
}

pub fn type_vertex(i: usize, q: &InvolutiveQuiver, vp: &ValidatedParams) -> (FactorKind, String, Vec<String>) {
    let p = &vp.params;
    let mut flags = Vec::new();
    if !q.sigma_c_fixed[i] {
        if p.regime.kind == RegimeKind::Loop && !p.sigma_k_trivial() && p.ratio() % 2 == 1 {
            flags.push(
                "typed unitary since sigma_c is nontrivial on L_i; the loop-case text for sigma|k != id \
                 with m/n odd calls this factor orthogonal or symplectic"
                    .to_string(),
            );
        }
        return (FactorKind::Unitary, "sigma_c nontrivial on L_i: Hermitian form over L_i^sigma_c".into(), flags);
    }
    if p.sigma_is_identity_on_f() {
        let kind = if p.epsilon == 1 { FactorKind::Orth } else { FactorKind::Symp };
        return (kind, format!("sigma = id_F forces epsilon_i = 1, form sign epsilon = {}", p.epsilon), flags);
    }
    (
        FactorKind::OrthOrSymp,
        "epsilon_i undetermined by (k, sigma|k, beta, Nm c, Nm xi); dimension test d(d-1)/2 vs d(d+1)/2".into(),
        flags,
    )
}

pub fn type_fixed_arrow(i: usize, q: &InvolutiveQuiver, vp: &ValidatedParams) -> (EdgeKind, String) {
    let p = &vp.params;
    if !q.sigma_cxi_fixed[i] {
        return (EdgeKind::Hermitian, "sigma_{c xi^-1} nontrivial on L_i: Hermitian forms".into());
    }
    if p.sigma_is_identity_on_f() {
        let kind = if p.epsilon == 1 { EdgeKind::Wedge2 } else { EdgeKind::Sym2 };
        return (kind, format!("sigma = id_F forces epsilon_e = 1, summand sign -epsilon = {}", -p.epsilon));
    }
    (
        EdgeKind::WedgeOrSym,
        "epsilon_e undetermined; dimension test d(d-1)/2 vs d(d+1)/2".into(),
    )
}

pub fn assemble_report(q: InvolutiveQuiver, shapes: Vec<ComponentShape>, vp: ValidatedParams) -> ClassificationReport {
    let p = &vp.params;
    let n = q.spectrum.len();
    let kdeg = if p.mode == Mode::Linear { 1 } else { p.k_over_ksigma() };
    let weight = |i: usize| q.spectrum.vertices[i].residue_degree * kdeg;
    let mut factors = Vec::new();
    let mut factor_of = vec![usize::MAX; n];
    let mut edges = Vec::new();
    let mut edge_of = vec![usize::MAX; n];
    let mut flags = Vec::new();

    for i in 0..n {
        match q.star(i) {
            None => {
                factor_of[i] = factors.len();
                factors.push(Factor {
                    kind: FactorKind::GL,
                    vertex: i,
                    partner: None,
                    weight: weight(i),
                    sign_provenance: "linear problem".into(),
                    flags: vec![],
                });
            }
            Some(s) if s == i => {
                let (kind, prov, fl) = type_vertex(i, &q, &vp);
                flags.extend(fl.iter().cloned());
                factor_of[i] = factors.len();
                factors.push(Factor { kind, vertex: i, partner: None, weight: weight(i), sign_provenance: prov, flags: fl });
            }
            Some(s) if s > i => {
                factor_of[i] = factors.len();
                factor_of[s] = factors.len();
                factors.push(Factor {
                    kind: FactorKind::GLPair,
                    vertex: i,
                    partner: Some(s),
                    weight: weight(i),
                    sign_provenance: "no sign: M_{i*} is the dual of M_i".into(),
                    flags: vec![],
                });
            }
            Some(_) => {}
        }
    }

    if let Some(arrows) = &q.arrows {
        for i in 0..n {
            let to = arrows[i].to;
            match &q.arrow_star {
                None => {
                    edge_of[i] = edges.len();
                    edges.push(EdgeSpace {
                        kind: EdgeKind::Hom,
                        arrow: i,
                        partner: None,
                        from: i,
                        to,
                        weight: weight(i),
                        sign_provenance: "linear problem".into(),
                    });
                }
                Some(astar) if astar[i] == i => {
                    let (kind, prov) = type_fixed_arrow(i, &q, &vp);
                    edge_of[i] = edges.len();
                    edges.push(EdgeSpace { kind, arrow: i, partner: None, from: i, to, weight: weight(i), sign_provenance: prov });
                }
                Some(astar) if astar[i] > i => {
                    edge_of[i] = edges.len();
                    edge_of[astar[i]] = edges.len();
                    edges.push(EdgeSpace {
                        kind: EdgeKind::HomPair,
                        arrow: i,
                        partner: Some(astar[i]),
                        from: i,
                        to,
                        weight: weight(i),
                        sign_provenance: "no sign: the mirror arrow is the adjoint".into(),
                    });
                }
                Some(_) => {}
            }
        }
    }

    let mut components = Vec::new();
    for shape in shapes {
        let mut fs: Vec<usize> = shape.vertices.iter().map(|&v| factor_of[v]).collect();
        fs.sort();
        fs.dedup();
        let mut es: Vec<usize> = shape.vertices.iter().map(|&v| edge_of[v]).filter(|&e| e != usize::MAX).collect();
        es.sort();
        es.dedup();
        flags.extend(shape.flags.iter().cloned());
        components.push(ComponentReport { shape, factors: fs, edges: es });
    }
    ClassificationReport { validated: vp, quiver: q, components, factors, edges, flags }
}

/// Dimension of the factors and summands for multiplicities `d_i` (indexed
/// like the vertices).
pub fn predict_dimensions(r: &ClassificationReport, mult: &[u64]) -> Result<PredictedDims, ClassifyError> {
    let q = &r.quiver;
    let n = q.spectrum.len();
    if mult.len() != n {
        return Err(ClassifyError::Multiplicity(format!("expected {} multiplicities, got {}", n, mult.len())));
    }
    if let Some(star) = &q.vertex_star {
        for i in 0..n {
            if mult[i] != mult[star[i]] {
                return Err(ClassifyError::Multiplicity(format!(
                    "d_i must equal d_(i*): vertex {} has {} but its partner {} has {}",
                    q.spectrum.vertices[i].id, mult[i], q.spectrum.vertices[star[i]].id, mult[star[i]]
                )));
            }
        }
    }
    let wedge = |d: u64| d * d.saturating_sub(1) / 2;
    let sym = |d: u64| d * (d + 1) / 2;
    let half = |w: u32| {
        debug_assert!(w.is_multiple_of(2), "unitary weight must be even");
        (w / 2) as u64
    };
    let factor_dims: Vec<DimRange> = r
        .factors
        .iter()
        .map(|f| {
            let d = mult[f.vertex];
            let w = f.weight as u64;
            match f.kind {
                FactorKind::GLPair | FactorKind::GL => DimRange::exact(w * d * d),
                FactorKind::Orth => DimRange::exact(w * wedge(d)),
                FactorKind::Symp => DimRange::exact(w * sym(d)),
                FactorKind::OrthOrSymp => DimRange { low: w * wedge(d), high: w * sym(d) },
                FactorKind::Unitary => DimRange::exact(half(f.weight) * d * d),
            }
        })
        .collect();
    let edge_dims: Vec<DimRange> = r
        .edges
        .iter()
        .map(|e| {
            let w = e.weight as u64;
            let (di, dj) = (mult[e.from], mult[e.to]);
            match e.kind {
                EdgeKind::HomPair | EdgeKind::Hom => DimRange::exact(w * di * dj),
                EdgeKind::Wedge2 => DimRange::exact(w * wedge(dj)),
                EdgeKind::Sym2 => DimRange::exact(w * sym(dj)),
                EdgeKind::WedgeOrSym => DimRange { low: w * wedge(dj), high: w * sym(dj) },
                EdgeKind::Hermitian => DimRange::exact(half(e.weight) * dj * dj),
            }
        })
        .collect();
    let h = factor_dims.iter().fold(DimRange::exact(0), |a, b| a.add(b));
    let g_xi = edge_dims.iter().fold(DimRange::exact(0), |a, b| a.add(b));
    let p = r.params();
    let prime = match (p.regime.kind, p.mode) {
        (RegimeKind::Loop, _) => None,
        (_, Mode::Linear) => Some(crate::scalars::euler_phi(p.regime.order) as u64),
        (_, Mode::Polarized) => p.ksigma_over_q().map(|x| x as u64),
    };
    Ok(PredictedDims {
        h,
        g_xi,
        h_prime: prime.map(|s| h.scale(s)),
        g_xi_prime: prime.map(|s| g_xi.scale(s)),
        factor_dims,
        edge_dims,
    })
}

/// Kind of form factor in a loop-case row, before the sign is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormPattern {
    /// Orthogonal or symplectic; fixed by `epsilon` when `sigma = id_F`.
    OrthSymp,
    Unitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgePattern {
    /// Wedge or symmetric square; fixed by `epsilon` when `sigma = id_F`.
    WedgeSym,
    Hermitian,
}

impl FormPattern {
    pub fn instantiate(self, sigma_id_f: bool, epsilon: i64) -> FactorKind {
        match (self, sigma_id_f) {
            (FormPattern::Unitary, _) => FactorKind::Unitary,
            (FormPattern::OrthSymp, true) if epsilon == 1 => FactorKind::Orth,
            (FormPattern::OrthSymp, true) => FactorKind::Symp,
            (FormPattern::OrthSymp, false) => FactorKind::OrthOrSymp,
        }
    }
}

impl EdgePattern {
    pub fn instantiate(self, sigma_id_f: bool, epsilon: i64) -> EdgeKind {
        match (self, sigma_id_f) {
            (EdgePattern::Hermitian, _) => EdgeKind::Hermitian,
            (EdgePattern::WedgeSym, true) if epsilon == 1 => EdgeKind::Wedge2,
            (EdgePattern::WedgeSym, true) => EdgeKind::Sym2,
            (EdgePattern::WedgeSym, false) => EdgeKind::WedgeOrSym,
        }
    }
}

/// Which side of `beta = +/- gamma^(m/2n)` a row covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaSign {
    Plus,
    Minus,
}

/// Parameter pattern of one loop-case row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopPattern {
    pub sigma_k_trivial: bool,
    pub ratio_even: bool,
    pub gamma_val_even: Option<bool>,
    pub half_ratio_even: Option<bool>,
    pub beta_sign: Option<BetaSign>,
    pub epsilon: Option<i64>,
    /// Solvability of `b sigma(b) = gamma, b^(m/n) = beta` in `k`.
    pub norm_eqn_solvable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopCaseRow {
    pub row: usize,
    pub case: String,
    pub pattern: LoopPattern,
    pub shape: ShapeKind,
    /// The form factors; every other factor is a `GLPair`.
    pub forms: Vec<FormPattern>,
    /// The fixed-arrow summands; every other summand is a `HomPair`.
    pub edge_forms: Vec<EdgePattern>,
    /// Whether the vertex typing is a recorded discrepancy.
    pub flagged: bool,
}

pub fn loop_case_table() -> Vec<LoopCaseRow> {
    use EdgePattern as E;
    use FormPattern as F;
    let pat = |sk, re, ge, he, bs, eps, solv| LoopPattern {
        sigma_k_trivial: sk,
        ratio_even: re,
        gamma_val_even: ge,
        half_ratio_even: he,
        beta_sign: bs,
        epsilon: eps,
        norm_eqn_solvable: solv,
    };
    let row = |row, case: &str, pattern, shape, forms, edge_forms, flagged| LoopCaseRow {
        row,
        case: case.into(),
        pattern,
        shape,
        forms,
        edge_forms,
        flagged,
    };
    let plus = Some(BetaSign::Plus);
    let minus = Some(BetaSign::Minus);
    vec![
        row(1, "sigma|k = id, m/n odd, epsilon = +1", pat(true, false, None, None, None, Some(1), None),
            ShapeKind::VE, vec![F::OrthSymp], vec![E::WedgeSym], false),
        row(2, "sigma|k = id, m/n odd, epsilon = -1", pat(true, false, None, None, None, Some(-1), None),
            ShapeKind::VE, vec![F::OrthSymp], vec![E::WedgeSym], false),
        row(3, "sigma|k = id, m/n even, val gamma even, beta = +gamma^(m/2n)",
            pat(true, true, Some(true), None, plus, None, None),
            ShapeKind::VV, vec![F::OrthSymp, F::OrthSymp], vec![], false),
        row(4, "sigma|k = id, m/n even, val gamma even, beta = -gamma^(m/2n)",
            pat(true, true, Some(true), None, minus, None, None),
            ShapeKind::EE, vec![], vec![E::WedgeSym, E::WedgeSym], false),
        row(5, "sigma|k = id, val gamma odd, m/2n odd, beta = +gamma^(m/2n)",
            pat(true, true, Some(false), Some(false), plus, None, None),
            ShapeKind::VE, vec![F::OrthSymp], vec![E::Hermitian], false),
        row(6, "sigma|k = id, val gamma odd, m/2n odd, beta = -gamma^(m/2n)",
            pat(true, true, Some(false), Some(false), minus, None, None),
            ShapeKind::VE, vec![F::Unitary], vec![E::WedgeSym], false),
        row(7, "sigma|k = id, val gamma odd, m/2n even, beta = +gamma^(m/2n)",
            pat(true, true, Some(false), Some(true), plus, None, None),
            ShapeKind::VV, vec![F::OrthSymp, F::Unitary], vec![], false),
        row(8, "sigma|k = id, val gamma odd, m/2n even, beta = -gamma^(m/2n)",
            pat(true, true, Some(false), Some(true), minus, None, None),
            ShapeKind::EE, vec![], vec![E::WedgeSym, E::Hermitian], false),
        row(9, "sigma|k != id, m/n odd, epsilon = +1", pat(false, false, None, None, None, Some(1), None),
            ShapeKind::VE, vec![F::Unitary], vec![E::Hermitian], true),
        row(10, "sigma|k != id, m/n odd, epsilon = -1", pat(false, false, None, None, None, Some(-1), None),
            ShapeKind::VE, vec![F::Unitary], vec![E::Hermitian], true),
        row(11, "sigma|k != id, m/n even, b sigma(b) = gamma and b^(m/n) = beta solvable",
            pat(false, true, None, None, None, None, Some(true)),
            ShapeKind::VV, vec![F::Unitary, F::Unitary], vec![], false),
        row(12, "sigma|k != id, m/n even, b sigma(b) = gamma and b^(m/n) = beta unsolvable",
            pat(false, true, None, None, None, None, Some(false)),
            ShapeKind::EE, vec![], vec![E::Hermitian, E::Hermitian], false),
    ]
}

impl LoopCaseRow {
    /// The `ell` of the single component for ratio `m/n`.
    pub fn expected_ell(&self, ratio: u32) -> usize {
        let r = ratio as usize;
        let quadratic = self.pattern.gamma_val_even == Some(false);
        let len = if quadratic { r / 2 } else { r };
        match self.shape {
            ShapeKind::VE => (len - 1) / 2,
            _ => len / 2,
        }
    }
}

/// Evaluates a row pattern directly on loop parameters (independently of
/// the quiver construction).
pub fn pattern_matches(pat: &LoopPattern, p: &SetupParams) -> bool {
    use crate::scalars::{monomial_roots, rat_int, LoopMonomial};
    let Some(beta) = p.beta.as_loop() else { return false };
    let Some(gamma) = p.gamma() else { return false };
    let Some(gamma) = gamma.as_loop().cloned() else { return false };
    let r = p.ratio() as i64;
    if pat.sigma_k_trivial != p.sigma_k_trivial() || pat.ratio_even != (r % 2 == 0) {
        return false;
    }
    if let Some(e) = pat.epsilon {
        if e != p.epsilon {
            return false;
        }
    }
    let gval_even = gamma.val.to_integer().is_even();
    if let Some(ge) = pat.gamma_val_even {
        if ge != gval_even {
            return false;
        }
    }
    if let Some(he) = pat.half_ratio_even {
        if r % 2 != 0 || he != ((r / 2) % 2 == 0) {
            return false;
        }
    }
    if let Some(bs) = pat.beta_sign {
        if r % 2 != 0 {
            return false;
        }
        let base = gamma.pow(r / 2);
        let target = match bs {
            BetaSign::Plus => base,
            BetaSign::Minus => base.neg(),
        };
        if *beta != target {
            return false;
        }
    }
    if let Some(solv) = pat.norm_eqn_solvable {
        // b = u tau^v with v = val(gamma)/2 and u^2 (-1)^v = coeff(gamma)
        if !gval_even {
            return false;
        }
        let v = gamma.val.clone() / rat_int(2);
        let target = gamma.coeff.value() - &v / rat_int(2);
        let found = monomial_roots(&LoopMonomial::root_of_unity(target), 2)
            .into_iter()
            .map(|u| LoopMonomial::new(u.coeff, v.clone()))
            .any(|b| b.pow(r) == *beta);
        if found != solv {
            return false;
        }
    }
    true
}

/// Expected `(shape, factor kinds, edge kinds)` of a row for the given
/// `sigma`/`epsilon` and `ell`, with kinds sorted.
pub fn expected_for_row(row: &LoopCaseRow, sigma_id_f: bool, epsilon: i64, ell: usize) -> (ShapeKind, Vec<FactorKind>, Vec<EdgeKind>) {
    let (gl, hom) = match row.shape {
        ShapeKind::VV => (ell.saturating_sub(1), ell),
        ShapeKind::VE => (ell, ell),
        ShapeKind::EE => (ell, ell.saturating_sub(1)),
        ShapeKind::CC | ShapeKind::Cycle => (ell, ell),
    };
    let mut f: Vec<FactorKind> = row.forms.iter().map(|x| x.instantiate(sigma_id_f, epsilon)).collect();
    f.extend(std::iter::repeat_n(FactorKind::GLPair, gl));
    f.sort();
    let mut e: Vec<EdgeKind> = row.edge_forms.iter().map(|x| x.instantiate(sigma_id_f, epsilon)).collect();
    e.extend(std::iter::repeat_n(EdgeKind::HomPair, hom));
    e.sort();
    (row.shape, f, e)
}

/// Search bounds for witnesses: maximal `n` and maximal `m/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessBounds {
    pub max_n: u32,
    pub max_ratio: u32,
}

impl Default for WitnessBounds {
    fn default() -> Self {
        WitnessBounds { max_n: 4, max_ratio: 8 }
    }
}

/// First loop parameter set (in a fixed search order) satisfying the row
/// pattern, with primitive `Nm(xi)`.
pub fn find_witness(row: &LoopCaseRow, bounds: WitnessBounds) -> Option<SetupParams> {
    use crate::scalars::{rat, rat_int, LoopMonomial};
    use crate::setup::{FScalar, GroundRegime, KScalar, Presentation, SigmaKind};
    let pat = &row.pattern;
    let sigmas: &[SigmaKind] = if pat.sigma_k_trivial { &[SigmaKind::Identity, SigmaKind::ZetaHalf] } else { &[SigmaKind::MinusT] };
    let eps_list: Vec<i64> = match pat.epsilon {
        Some(e) => vec![e],
        None => vec![1, -1],
    };
    for n in 1..=bounds.max_n {
        for &sigma in sigmas {
            if sigma == SigmaKind::ZetaHalf && n % 2 == 1 {
                continue;
            }
            if sigma == SigmaKind::MinusT && n % 2 == 0 {
                continue;
            }
            for r in 1..=bounds.max_ratio {
                for gval in 0..=3i64 {
                    for gnum in 0..4i64 {
                        let gamma = LoopMonomial::from_parts(rat(gnum, 4), rat_int(gval));
                        // both beta^2 = gamma^r and beta*sigma(beta) = gamma^r force this valuation
                        if (r as i64 * gval) % 2 != 0 {
                            continue;
                        }
                        let bval = r as i64 * gval / 2;
                        {
                            for bnum in 0..8i64 {
                                let beta = LoopMonomial::from_parts(rat(bnum, 8), rat_int(bval));
                                for &eps in &eps_list {
                                    let p = SetupParams {
                                        regime: GroundRegime { kind: RegimeKind::Loop, order: 0, n, sigma },
                                        presentation: Presentation::LoopModel,
                                        m: n * r,
                                        mode: Mode::Polarized,
                                        epsilon: eps,
                                        beta: KScalar::Loop(beta.clone()),
                                        c: None,
                                        gamma: Some(KScalar::Loop(gamma.clone())),
                                        xi: FScalar::Loop(LoopMonomial::root_of_unity(rat(1, (n * r) as i64))),
                                    };
                                    if !pattern_matches(pat, &p) {
                                        continue;
                                    }
                                    if let Ok(vp) = validate_params(&p) {
                                        if vp.norm_xi_primitive {
                                            return Some(p);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// The row whose pattern applies to `p`, if any.
pub fn matching_row<'a>(table: &'a [LoopCaseRow], p: &SetupParams) -> Option<&'a LoopCaseRow> {
    table.iter().find(|row| pattern_matches(&row.pattern, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, CyclotomicNumber};
    use crate::setup::{FElem, FScalar, GroundRegime, KScalar, Presentation, SigmaKind};

    fn nf1(order: u32, m: u32, beta: (i64, i64), c: (i64, i64), xi: (i64, i64), eps: i64) -> SetupParams {
        let root = |(p, q): (i64, i64)| CyclotomicNumber::root_of_unity(order, &rat(p, q)).unwrap();
        SetupParams {
            regime: GroundRegime { kind: RegimeKind::Numberfield, order, n: 1, sigma: SigmaKind::Identity },
            presentation: Presentation::Field,
            m,
            mode: Mode::Polarized,
            epsilon: eps,
            beta: KScalar::Cyclo(root(beta)),
            c: Some(FScalar::Cyclo(FElem(vec![root(c)]))),
            gamma: None,
            xi: FScalar::Cyclo(FElem(vec![root(xi)])),
        }
    }

    #[test]
    fn ve1_report_and_dims() {
        let r = classify(&nf1(3, 3, (0, 1), (0, 1), (1, 3), 1)).unwrap();
        assert_eq!(r.factor_kinds(), vec![FactorKind::Orth, FactorKind::GLPair]);
        assert_eq!(r.edge_kinds(), vec![EdgeKind::HomPair, EdgeKind::Wedge2]);
        let d = predict_dimensions(&r, &[1, 1, 1]).unwrap();
        assert_eq!((d.h, d.g_xi), (DimRange::exact(1), DimRange::exact(1)));
        assert_eq!(d.h_prime, Some(DimRange::exact(2)));
        let z = predict_dimensions(&r, &[0, 0, 0]).unwrap();
        assert_eq!((z.h, z.g_xi), (DimRange::exact(0), DimRange::exact(0)));
        assert!(predict_dimensions(&r, &[1, 2, 1]).is_err());
    }

    #[test]
    fn cc1_dims() {
        let r = classify(&nf1(4, 2, (0, 1), (1, 2), (0, 1), 1)).unwrap();
        let d = predict_dimensions(&r, &[2, 2]).unwrap();
        assert_eq!((d.h.low, d.g_xi.low), (4, 4));
    }

    #[test]
    fn ee1_with_minus_one_beta() {
        let r = classify(&nf1(4, 2, (1, 2), (0, 1), (1, 2), -1)).unwrap();
        assert_eq!(r.components[0].shape.name(), "EE-1");
        assert_eq!(r.factor_kinds(), vec![FactorKind::GLPair]);
        assert_eq!(r.edge_kinds(), vec![EdgeKind::Sym2, EdgeKind::Sym2]);
    }

    #[test]
    fn linear_mode_is_all_gl() {
        let mut p = nf1(3, 3, (0, 1), (0, 1), (1, 3), 1);
        p.mode = Mode::Linear;
        let r = classify(&p).unwrap();
        assert!(r.factor_kinds().iter().all(|k| *k == FactorKind::GL));
        assert!(r.edge_kinds().iter().all(|k| *k == EdgeKind::Hom));
    }

    #[test]
    fn table_has_twelve_rows_with_witnesses() {
        let table = loop_case_table();
        assert_eq!(table.len(), 12);
        for row in &table {
            let w = find_witness(row, WitnessBounds::default()).unwrap_or_else(|| panic!("row {}", row.row));
            assert_eq!(matching_row(&table, &w).map(|r| r.row), Some(row.row));
            let rep = classify(&w).unwrap();
            assert_eq!(rep.components.len(), 1, "row {}", row.row);
            let shape = &rep.components[0].shape;
            let (kind, mut f, mut e) =
                expected_for_row(row, w.sigma_is_identity_on_f(), w.epsilon, row.expected_ell(w.ratio()));
            assert_eq!((shape.kind, shape.ell), (kind, row.expected_ell(w.ratio())), "row {}", row.row);
            let mut got_f = rep.factor_kinds();
            let mut got_e = rep.edge_kinds();
            got_f.sort();
            got_e.sort();
            f.sort();
            e.sort();
            assert_eq!((got_f, got_e), (f, e), "row {}", row.row);
        }
    }
}
