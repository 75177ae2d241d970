//! Seeded random number-field configurations for bulk cross-checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{build_setup, OracleError};
use crate::classifier::{classify, ClassificationReport};
use crate::quiver::ShapeKind;
use crate::scalars::{euler_phi, full_root_order, rat, CyclotomicNumber};
use crate::setup::{
    EtaleAlgebra, FElem, FScalar, GroundRegime, KScalar, Mode, Presentation, RegimeKind, SetupParams, SigmaKind,
};

/// The `(n, sigma, presentation)` combinations realized by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combo {
    FieldIdentity,
    FieldConj,
    SplitIdentity,
    SplitSwap,
    SplitConj,
    QuadraticIdentity,
    QuadraticZetaHalf,
    QuadraticConj,
}

pub const COMBOS: [Combo; 8] = [
    Combo::FieldIdentity,
    Combo::FieldConj,
    Combo::SplitIdentity,
    Combo::SplitSwap,
    Combo::SplitConj,
    Combo::QuadraticIdentity,
    Combo::QuadraticZetaHalf,
    Combo::QuadraticConj,
];

impl Combo {
    pub fn n(self) -> u32 {
        match self {
            Combo::FieldIdentity | Combo::FieldConj => 1,
            _ => 2,
        }
    }

    pub fn sigma(self) -> SigmaKind {
        match self {
            Combo::FieldIdentity | Combo::SplitIdentity | Combo::QuadraticIdentity => SigmaKind::Identity,
            Combo::SplitSwap | Combo::QuadraticZetaHalf => SigmaKind::ZetaHalf,
            _ => SigmaKind::Conj,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorLimits {
    pub max_ratio: u32,
    pub max_n_rank: usize,
    pub max_phi: u32,
    /// Bound on `N^2 * dim_Q F`, the unknown count of the matrix systems.
    pub max_unknowns: usize,
}

impl Default for GeneratorLimits {
    fn default() -> Self {
        GeneratorLimits { max_ratio: 6, max_n_rank: 10, max_phi: 8, max_unknowns: 192 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomConfig {
    pub params: SetupParams,
    pub report: ClassificationReport,
    pub mult: Vec<u64>,
    pub combo: Combo,
}

impl RandomConfig {
    pub fn shapes(&self) -> Vec<ShapeKind> {
        self.report
            .components
            .iter()
            .filter(|c| c.shape.vertices.iter().any(|&v| self.mult[v] > 0))
            .map(|c| c.shape.kind)
            .collect()
    }
}

const ORDERS: [u32; 12] = [1, 2, 3, 4, 5, 6, 8, 10, 12, 7, 9, 16];

fn roots(order: u32) -> Vec<CyclotomicNumber> {
    let full = full_root_order(order) as i64;
    (0..full).map(|j| CyclotomicNumber::root_of_unity(order, &rat(j, full)).expect("in k")).collect()
}

/// Unit candidates of `F` built from roots of unity.
fn f_candidates(alg: &EtaleAlgebra) -> Vec<FElem> {
    let rs = roots(alg.order);
    let zero = CyclotomicNumber::zero(alg.order);
    let mut out: Vec<FElem> = rs.iter().map(|r| alg.from_k(r)).collect();
    match alg.presentation {
        Presentation::Split => {
            for a in &rs {
                for b in &rs {
                    out.push(FElem(vec![a.clone(), b.clone()]));
                }
            }
        }
        Presentation::Quadratic(_) => {
            for a in &rs {
                out.push(FElem(vec![zero.clone(), a.clone()]));
            }
        }
        _ => {}
    }
    out.sort_by_key(|e| format!("{:?}", e));
    out.dedup();
    out
}

fn presentation<R: Rng>(combo: Combo, order: u32, rng: &mut R) -> Presentation {
    match combo {
        Combo::FieldIdentity | Combo::FieldConj => Presentation::Field,
        Combo::SplitIdentity | Combo::SplitSwap | Combo::SplitConj => Presentation::Split,
        _ => {
            let choices: Vec<CyclotomicNumber> = if combo == Combo::QuadraticConj {
                [2, 3, 5, -1, -3].iter().map(|&v| CyclotomicNumber::from_int(order, v)).collect()
            } else {
                let mut c: Vec<_> = [2, 3, -1].iter().map(|&v| CyclotomicNumber::from_int(order, v)).collect();
                c.push(CyclotomicNumber::zeta_pow(order, 1));
                c
            };
            Presentation::Quadratic(choices.choose(rng).expect("nonempty").clone())
        }
    }
}

/// Draws parameters for one combination; `None` when the draw is rejected.
pub fn draw_params<R: Rng>(combo: Combo, limits: GeneratorLimits, rng: &mut R) -> Option<SetupParams> {
    let n = combo.n();
    let max_phi = if n == 2 { limits.max_phi.min(4) } else { limits.max_phi };
    let orders: Vec<u32> = ORDERS
        .iter()
        .copied()
        .filter(|&o| euler_phi(o) <= max_phi && (combo.sigma() != SigmaKind::Conj || o > 2))
        .collect();
    let order = *orders.choose(rng)?;
    let pres = presentation(combo, order, rng);
    let sigma = combo.sigma();
    let alg = EtaleAlgebra { order, presentation: pres.clone(), sigma };
    let ratio = rng.gen_range(1..=limits.max_ratio);
    let epsilon = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mode = if rng.gen_bool(0.1) { Mode::Linear } else { Mode::Polarized };
    let cands = f_candidates(&alg);
    let fixed: Vec<&FElem> = cands.iter().filter(|c| alg.sigma(c) == **c).collect();
    let c = (*fixed.choose(rng)?).clone();
    let xi_pool: Vec<&FElem> = if mode == Mode::Polarized { fixed.clone() } else { cands.iter().collect() };
    let mut xi = (*xi_pool.choose(rng)?).clone();
    if rng.gen_bool(0.08) {
        xi = alg.scale_k(&xi, &CyclotomicNumber::from_int(order, 2));
    }
    let mut base = SetupParams {
        regime: GroundRegime { kind: RegimeKind::Numberfield, order, n, sigma },
        presentation: pres,
        m: n * ratio,
        mode,
        epsilon,
        beta: KScalar::Cyclo(CyclotomicNumber::one(order)),
        c: Some(FScalar::Cyclo(c)),
        gamma: None,
        xi: FScalar::Cyclo(xi),
    };
    let betas: Vec<CyclotomicNumber> = roots(order)
        .into_iter()
        .filter(|b| {
            base.beta = KScalar::Cyclo(b.clone());
            classify(&base).is_ok()
        })
        .collect();
    base.beta = KScalar::Cyclo(betas.choose(rng)?.clone());
    Some(base)
}

/// Multiplicities symmetric under the involution, concentrated on one
/// component so that its shape is exercised.
fn draw_mult<R: Rng>(report: &ClassificationReport, focus: usize, rng: &mut R, max_rank: usize) -> Vec<u64> {
    let q = &report.quiver;
    let nv = q.spectrum.len();
    let mut mult = vec![0u64; nv];
    let comp = &report.components[focus];
    for &v in &comp.shape.vertices {
        let d = rng.gen_range(1..=2);
        mult[v] = d;
        if let Some(s) = q.star(v) {
            mult[s] = d;
        }
    }
    for v in 0..nv {
        if mult[v] == 0 && rng.gen_bool(0.15) {
            mult[v] = 1;
            if let Some(s) = q.star(v) {
                mult[s] = 1;
            }
        }
    }
    while mult.iter().sum::<u64>() as usize > max_rank {
        let Some(v) = (0..nv).filter(|&v| mult[v] > 1).max_by_key(|&v| mult[v]) else { break };
        mult[v] -= 1;
        if let Some(s) = q.star(v) {
            mult[s] = mult[v];
        }
    }
    mult
}

/// A buildable configuration whose quiver has a component of shape
/// `target` carrying positive multiplicity (any shape when `None`).
pub fn random_config<R: Rng>(
    combo: Combo,
    target: Option<ShapeKind>,
    limits: GeneratorLimits,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<RandomConfig>, OracleError> {
    for _ in 0..attempts {
        let Some(params) = draw_params(combo, limits, rng) else { continue };
        let Ok(report) = classify(&params) else { continue };
        let comps: Vec<usize> = (0..report.components.len())
            .filter(|&i| target.map(|t| report.components[i].shape.kind == t).unwrap_or(true))
            .collect();
        let Some(&focus) = comps.choose(rng) else { continue };
        let alg = params.algebra().expect("numberfield");
        let mut mult = draw_mult(&report, focus, rng, limits.max_n_rank);
        for _ in 0..4 {
            let size: usize = mult.iter().sum::<u64>() as usize;
            if size > 0 && size * size * alg.q_dim() > limits.max_unknowns {
                let Some(v) = (0..mult.len()).filter(|&v| mult[v] > 0).max_by_key(|&v| mult[v]) else { break };
                let d = mult[v] - 1;
                mult[v] = d;
                if let Some(s) = report.quiver.star(v) {
                    mult[s] = d;
                }
            }
        }
        let size: usize = mult.iter().sum::<u64>() as usize;
        if size == 0 || size > limits.max_n_rank || size * size * alg.q_dim() > limits.max_unknowns {
            continue;
        }
        let config = RandomConfig { params, report, mult, combo };
        if target.is_some_and(|t| !config.shapes().contains(&t)) {
            continue;
        }
        match build_setup(&config.report, &config.mult, 0) {
            Ok(_) => return Ok(Some(config)),
            Err(OracleError::ParityConflict { .. } | OracleError::NoNormRepresentative(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
