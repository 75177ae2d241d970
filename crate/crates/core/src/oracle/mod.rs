//! Explicit matrix realizations and brute-force checks of the predictions.
//!
//! `V = F^N`, `theta(v) = T * zeta(v)` and `<x, y> = x^T * J * sigma(y)`.
//! Everything is reduced to linear systems over `Q` by restriction of
//! scalars along the basis of [`EtaleAlgebra::to_q`].

pub mod generate;
pub mod linalg;
pub mod pairing;
pub mod systems;
pub mod verify;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classifier::{classify, ClassificationReport, ClassifyError};
use crate::scalars::{full_root_order, rat, rat_int, CyclotomicNumber};
use crate::setup::{
    identity, mat_mul, EtaleAlgebra, FElem, FScalar, KScalar, Mode, Presentation, RegimeKind,
    SemilinearOperator, SetupParams,
};

pub use pairing::{extract_vertex_pairing, PairingCheck, PairingSymmetry};
pub use systems::{
    check_base_change, eigenspace_dim, fixed_lie_dim, isotypic_multiplicities, twisted_eigenspace_dim,
    BaseChangeCheck,
};
pub use verify::{verify, Check, TrialReport, VerificationReport, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle requires numberfield regime")]
    NotNumberfield,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("parity conflict: vertex {vertex} carries an alternating form but d = {d} is odd")]
    ParityConflict { vertex: String, d: u64 },
    #[error("no element of F with norm b = {0} found among the searched representatives")]
    NoNormRepresentative(String),
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

/// Position of the isotypic block of a vertex inside `F^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub len: usize,
}

/// The unscrambled block model `T0 = diag(t_i)`, `J0` pairing `i` with `i^*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockModel {
    pub theta: SemilinearOperator,
    pub gram: Option<Vec<FElem>>,
    pub blocks: Vec<Block>,
    /// Generator `t_i` of `S_i = F` with `theta(u) = t_i * zeta(u)`.
    pub generators: Vec<FElem>,
    /// `s_i` with `<u, v>_i = u * sigma(v) * s_i` on `S_i x S_(i*)`.
    pub pair_consts: Vec<Option<FElem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedSetup {
    pub report: ClassificationReport,
    pub alg: EtaleAlgebra,
    pub mult: Vec<u64>,
    pub size: usize,
    pub theta: SemilinearOperator,
    pub gram: Option<Vec<FElem>>,
    pub model: Option<BlockModel>,
    pub seed: u64,
}

impl PolarizedSetup {
    pub fn params(&self) -> &SetupParams {
        self.report.params()
    }

    pub fn xi(&self) -> FElem {
        match &self.params().xi {
            FScalar::Cyclo(x) => x.clone(),
            FScalar::Loop(_) => unreachable!("numberfield setup"),
        }
    }

    pub fn c(&self) -> FElem {
        match &self.params().c {
            Some(FScalar::Cyclo(c)) => c.clone(),
            _ => {
                let g = self.params().gamma().and_then(|g| g.as_cyclo().cloned()).expect("gamma");
                self.alg.from_k(&g)
            }
        }
    }

    /// Explicit `(T, J)` without a block model.
    pub fn explicit(report: ClassificationReport, theta: SemilinearOperator, gram: Option<Vec<FElem>>) -> Result<Self, OracleError> {
        let alg = report.params().algebra().ok_or(OracleError::NotNumberfield)?;
        let size = theta.size;
        let s = PolarizedSetup { mult: vec![], report, alg, size, theta, gram, model: None, seed: 0 };
        s.check_invariants()?;
        Ok(s)
    }

    /// `theta^m = beta`, `J = epsilon * sigma(J)^T`, `T^T J sigma(T) = c zeta(J)`.
    pub fn check_invariants(&self) -> Result<(), OracleError> {
        let c = if self.gram.is_some() { self.c() } else { self.alg.one() };
        check_operator(&self.alg, self.params(), &self.theta, self.gram.as_deref(), &c)
    }
}

fn check_operator(
    alg: &EtaleAlgebra,
    p: &SetupParams,
    theta: &SemilinearOperator,
    gram: Option<&[FElem]>,
    c: &FElem,
) -> Result<(), OracleError> {
    let n = theta.size;
    let beta = p.beta.as_cyclo().expect("numberfield");
    let pow = theta.power_matrix(alg, p.m as usize);
    let expect: Vec<FElem> = identity(alg, n).iter().map(|e| alg.scale_k(e, beta)).collect();
    if pow != expect {
        return Err(OracleError::Invariant("theta^m differs from beta * id".into()));
    }
    let Some(j) = gram else { return Ok(()) };
    let eps = CyclotomicNumber::from_int(alg.order, p.epsilon);
    for r in 0..n {
        for col in 0..n {
            let lhs = &j[r * n + col];
            let rhs = alg.scale_k(&alg.sigma(&j[col * n + r]), &eps);
            if *lhs != rhs {
                return Err(OracleError::Invariant("J differs from epsilon * sigma(J)^T".into()));
            }
        }
    }
    let tt = transpose(n, &theta.t);
    let sig_t: Vec<FElem> = theta.t.iter().map(|e| alg.sigma(e)).collect();
    let lhs = mat_mul(alg, n, &mat_mul(alg, n, &tt, j), &sig_t);
    let rhs: Vec<FElem> = j.iter().map(|e| alg.mul(c, &alg.zeta(e))).collect();
    if lhs != rhs {
        return Err(OracleError::Invariant("T^T J sigma(T) differs from c * zeta(J)".into()));
    }
    Ok(())
}

pub fn transpose(n: usize, a: &[FElem]) -> Vec<FElem> {
    (0..n * n).map(|idx| a[(idx % n) * n + idx / n].clone()).collect()
}

/// A random element of `F` with `Q`-coordinates in `{-1, 0, 1}`.
pub fn random_small<R: Rng>(alg: &EtaleAlgebra, rng: &mut R) -> FElem {
    let d = alg.q_dim();
    let v: Vec<_> = (0..d).map(|_| rat_int(rng.gen_range(-1..=1))).collect();
    alg.from_q(&v)
}

fn random_unit<R: Rng>(alg: &EtaleAlgebra, rng: &mut R) -> FElem {
    loop {
        let mut x = random_small(alg, rng);
        x = alg.add(&x, &alg.one());
        if alg.is_unit(&x) {
            return x;
        }
    }
}

fn random_k_unit<R: Rng>(order: u32, rng: &mut R) -> CyclotomicNumber {
    let j = rng.gen_range(0..full_root_order(order) as i64);
    let z = CyclotomicNumber::root_of_unity(order, &rat(j, full_root_order(order) as i64)).expect("in k");
    z.scale(&rat(rng.gen_range(1..=3), rng.gen_range(1..=2)))
}

/// An element `t` with `Nm(t) = b`.
fn norm_representative(alg: &EtaleAlgebra, b: &CyclotomicNumber) -> Result<FElem, OracleError> {
    let order = alg.order;
    match &alg.presentation {
        Presentation::Field => Ok(FElem(vec![b.clone()])),
        Presentation::Split => Ok(FElem(vec![b.clone(), CyclotomicNumber::one(order)])),
        Presentation::Quadratic(d) => {
            let full = full_root_order(order) as i64;
            let rs: Vec<CyclotomicNumber> =
                (0..full).map(|j| CyclotomicNumber::root_of_unity(order, &rat(j, full)).expect("in k")).collect();
            let two = CyclotomicNumber::from_int(order, 2);
            // d = delta^2: Nm(a + b x) = (a - delta b)(a + delta b)
            for delta in &rs {
                for s in [rat_int(1), rat_int(2), rat_int(3), rat(1, 2)] {
                    let dl = delta.scale(&s);
                    if dl.mul(&dl) == *d {
                        let a = b.add(&CyclotomicNumber::one(order)).div(&two).expect("2 != 0");
                        let bb = b.sub(&CyclotomicNumber::one(order)).div(&two.mul(&dl)).expect("delta != 0");
                        return Ok(FElem(vec![a, bb]));
                    }
                }
            }
            let mut pool: Vec<CyclotomicNumber> = vec![CyclotomicNumber::zero(order)];
            pool.extend(rs.iter().cloned());
            pool.extend(rs.iter().map(|r| r.scale(&rat_int(2))));
            for a in &pool {
                for bb in &pool {
                    if a.mul(a).sub(&d.mul(&bb.mul(bb))) == *b {
                        return Ok(FElem(vec![a.clone(), bb.clone()]));
                    }
                }
            }
            Err(OracleError::NoNormRepresentative(KScalar::Cyclo(b.clone()).canonical()))
        }
        Presentation::LoopModel => Err(OracleError::NotNumberfield),
    }
}

/// Solves `zeta(s) = u * s` for `u` of norm one.
fn hilbert90(alg: &EtaleAlgebra, u: &FElem) -> Result<FElem, OracleError> {
    if alg.rank() == 1 {
        return if *u == alg.one() {
            Ok(alg.one())
        } else {
            Err(OracleError::Invariant("norm-one element of F = k differs from 1".into()))
        };
    }
    let zu = alg.zeta(u);
    let order = alg.order;
    let one = CyclotomicNumber::one(order);
    let zero = CyclotomicNumber::zero(order);
    let candidates = [
        alg.one(),
        FElem(vec![one.clone(), zero.clone()]),
        FElem(vec![zero.clone(), one.clone()]),
        FElem(vec![one.clone(), one.scale(&rat_int(2))]),
    ];
    for x in candidates {
        let s = alg.add(&x, &alg.mul(&alg.zeta(&x), &zu));
        if alg.is_unit(&s) && alg.zeta(&s) == alg.mul(u, &s) {
            return Ok(s);
        }
    }
    Err(OracleError::Invariant("no Hilbert 90 solution among the candidates".into()))
}

/// Block-diagonal alternating matrix `[[0, 1], [-1, 0]]^(d/2)`.
fn standard_alternating(d: usize) -> Vec<i64> {
    let mut p = vec![0; d * d];
    for k in 0..d / 2 {
        p[(2 * k) * d + 2 * k + 1] = 1;
        p[(2 * k + 1) * d + 2 * k] = -1;
    }
    p
}

/// Construction switches; `randomize` perturbs the choices of simple-module
/// generators and pairing constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub randomize: bool,
    pub scramble: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { randomize: true, scramble: true }
    }
}

pub fn build_setup(report: &ClassificationReport, mult: &[u64], seed: u64) -> Result<PolarizedSetup, OracleError> {
    build_setup_with(report, mult, seed, BuildOptions::default())
}

pub fn build_setup_with(
    report: &ClassificationReport,
    mult: &[u64],
    seed: u64,
    opts: BuildOptions,
) -> Result<PolarizedSetup, OracleError> {
    let p = report.params();
    if p.regime.kind != RegimeKind::Numberfield {
        return Err(OracleError::NotNumberfield);
    }
    let alg = p.algebra().expect("numberfield");
    crate::classifier::predict_dimensions(report, mult)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = &report.quiver;
    let nv = q.spectrum.len();

    let mut blocks = Vec::with_capacity(nv);
    let mut start = 0;
    for &d in mult {
        blocks.push(Block { start, len: d as usize });
        start += d as usize;
    }
    let size = start;

    let mut generators = Vec::with_capacity(nv);
    for v in &q.spectrum.vertices {
        let b = v.b_value.as_cyclo().expect("numberfield");
        let mut t = norm_representative(&alg, b)?;
        if opts.randomize {
            let w = random_unit(&alg, &mut rng);
            t = alg.mul(&t, &alg.mul(&alg.zeta(&w), &alg.inv(&w).expect("unit")));
        }
        debug_assert_eq!(alg.norm(&t), *b);
        generators.push(t);
    }

    let mut t0 = vec![alg.zero(); size * size];
    for (i, blk) in blocks.iter().enumerate() {
        for a in 0..blk.len {
            let idx = blk.start + a;
            t0[idx * size + idx] = generators[i].clone();
        }
    }

    let mut pair_consts = vec![None; nv];
    let gram0 = if p.mode == Mode::Polarized {
        let c = PolarizedSetup::c_of(p, &alg);
        let star = q.vertex_star.as_ref().expect("polarized");
        let eps = p.epsilon;
        let eps_k = CyclotomicNumber::from_int(alg.order, eps);
        let mut j0 = vec![alg.zero(); size * size];
        for i in 0..nv {
            let j = star[i];
            if j < i {
                continue;
            }
            let u = alg.mul(
                &alg.mul(&generators[i], &alg.sigma(&generators[j])),
                &alg.inv(&c).expect("c invertible"),
            );
            let mut s = hilbert90(&alg, &u)?;
            if opts.randomize {
                s = alg.scale_k(&s, &random_k_unit(alg.order, &mut rng));
            }
            let d = mult[i] as usize;
            if j != i {
                let s_star = alg.scale_k(&alg.sigma(&s), &eps_k);
                for a in 0..d {
                    let (ri, rj) = (blocks[i].start + a, blocks[j].start + a);
                    j0[ri * size + rj] = s.clone();
                    j0[rj * size + ri] = s_star.clone();
                }
                pair_consts[i] = Some(s);
                pair_consts[j] = Some(s_star);
                continue;
            }
            let rho_f = alg.mul(&alg.sigma(&s), &alg.inv(&s).expect("unit"));
            let rho = alg
                .to_k(&rho_f)
                .ok_or_else(|| OracleError::Invariant("sigma(s)/s is not in k".into()))?;
            let mut pmat: Vec<i64> = (0..d * d).map(|x| if x % (d + 1) == 0 { 1 } else { 0 }).collect();
            if p.sigma_k_trivial() {
                let er = rho.scale(&rat_int(eps));
                if er.is_one() {
                } else if er == CyclotomicNumber::from_int(alg.order, -1) {
                    if d % 2 == 1 {
                        return Err(OracleError::ParityConflict { vertex: q.spectrum.vertices[i].id.clone(), d: d as u64 });
                    }
                    pmat = standard_alternating(d);
                } else {
                    return Err(OracleError::Invariant("epsilon * sigma(s)/s is not a sign".into()));
                }
            } else {
                // sigma(lambda)/lambda = epsilon / rho makes the form Hermitian
                let w = rho.inv().expect("unit").scale(&rat_int(eps));
                let mut lambda = None;
                for e in 0..full_root_order(alg.order) as i64 {
                    let y = CyclotomicNumber::zeta_pow(alg.order, e).add(&CyclotomicNumber::from_int(alg.order, 2));
                    let l = y.add(&y.conj().mul(&w.conj()));
                    if !l.is_zero() {
                        lambda = Some(l);
                        break;
                    }
                }
                let lambda = lambda.ok_or_else(|| OracleError::Invariant("no Hilbert 90 solution in k".into()))?;
                s = alg.scale_k(&s, &lambda);
            }
            for a in 0..d {
                for b in 0..d {
                    let v = pmat[a * d + b];
                    if v != 0 {
                        let (ra, rb) = (blocks[i].start + a, blocks[i].start + b);
                        j0[ra * size + rb] = alg.scale_k(&s, &CyclotomicNumber::from_int(alg.order, v));
                    }
                }
            }
            pair_consts[i] = Some(s);
        }
        Some(j0)
    } else {
        None
    };

    let model = BlockModel {
        theta: SemilinearOperator { size, t: t0 },
        gram: gram0,
        blocks,
        generators,
        pair_consts,
    };
    let c = PolarizedSetup::c_of(p, &alg);
    check_operator(&alg, p, &model.theta, model.gram.as_deref(), &c)?;

    let (theta, gram) = if opts.scramble && size > 1 {
        let (g, g_inv) = random_elementary(&alg, size, &mut rng);
        let zg: Vec<FElem> = g.iter().map(|e| alg.zeta(e)).collect();
        let t = mat_mul(&alg, size, &mat_mul(&alg, size, &g_inv, &model.theta.t), &zg);
        let gram = model.gram.as_ref().map(|j0| {
            let sg: Vec<FElem> = g.iter().map(|e| alg.sigma(e)).collect();
            mat_mul(&alg, size, &mat_mul(&alg, size, &transpose(size, &g), j0), &sg)
        });
        (SemilinearOperator { size, t }, gram)
    } else {
        (model.theta.clone(), model.gram.clone())
    };

    let setup = PolarizedSetup {
        report: report.clone(),
        alg,
        mult: mult.to_vec(),
        size,
        theta,
        gram,
        model: Some(model),
        seed,
    };
    setup.check_invariants()?;
    Ok(setup)
}

impl PolarizedSetup {
    fn c_of(p: &SetupParams, alg: &EtaleAlgebra) -> FElem {
        match &p.c {
            Some(FScalar::Cyclo(c)) => c.clone(),
            _ => match p.gamma() {
                Some(KScalar::Cyclo(g)) => alg.from_k(&g),
                _ => alg.one(),
            },
        }
    }
}

/// `g = prod (I + a E_rc)` and its inverse.
fn random_elementary<R: Rng>(alg: &EtaleAlgebra, n: usize, rng: &mut R) -> (Vec<FElem>, Vec<FElem>) {
    let mut g = identity(alg, n);
    let mut g_inv = identity(alg, n);
    for _ in 0..2 * n {
        let r = rng.gen_range(0..n);
        let mut c = rng.gen_range(0..n - 1);
        if c >= r {
            c += 1;
        }
        let a = random_small(alg, rng);
        if alg.is_zero(&a) {
            continue;
        }
        // g <- g (I + a E_rc): column c gains a * column r
        for i in 0..n {
            let add = alg.mul(&g[i * n + r], &a);
            g[i * n + c] = alg.add(&g[i * n + c], &add);
        }
        // g_inv <- (I - a E_rc) g_inv: row r loses a * row c
        for j in 0..n {
            let sub = alg.mul(&a, &g_inv[c * n + j]);
            g_inv[r * n + j] = alg.sub(&g_inv[r * n + j], &sub);
        }
    }
    (g, g_inv)
}

/// Classifies and builds in one step.
pub fn setup_from_params(p: &SetupParams, mult: &[u64], seed: u64) -> Result<PolarizedSetup, OracleError> {
    let report = classify(p)?;
    build_setup(&report, mult, seed)
}
