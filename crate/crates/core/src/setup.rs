//! Ground data `(k, F, zeta, sigma, n, m, beta, c, xi, epsilon)` and its validation.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{
    euler_phi, fmt_rational, norm_f_over_k, rat, rat_int, CyclotomicNumber, LoopMonomial,
    Rational, RootOfUnityExp,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    Numberfield,
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaKind {
    Identity,
    ZetaHalf,
    MinusT,
    Conj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Linear,
    Polarized,
}

/// How `F` is presented over `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// `F = k`.
    Field,
    /// `F = k x k`, `zeta` swaps the factors.
    Split,
    /// `F = k[x]/(x^2 - d)`, `zeta(x) = -x`.
    Quadratic(CyclotomicNumber),
    /// `F = C((t))`, `t^n = tau`, `zeta(t) = e(1/n) t`.
    LoopModel,
}

impl Presentation {
    pub fn name(&self) -> &'static str {
        match self {
            Presentation::Field => "field",
            Presentation::Split => "split",
            Presentation::Quadratic(_) => "quadratic",
            Presentation::LoopModel => "loop",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRegime {
    pub kind: RegimeKind,
    /// Cyclotomic order `M` of `k = Q(zeta_M)`; unused in the loop regime.
    pub order: u32,
    pub n: u32,
    pub sigma: SigmaKind,
}

/// A scalar of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KScalar {
    Cyclo(CyclotomicNumber),
    Loop(LoopMonomial),
}

impl KScalar {
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (KScalar::Cyclo(a), KScalar::Cyclo(b)) => KScalar::Cyclo(a.mul(b)),
            (KScalar::Loop(a), KScalar::Loop(b)) => KScalar::Loop(a.mul(b)),
            _ => panic!("mixed scalar regimes"),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            KScalar::Cyclo(a) => a.inv().ok().map(KScalar::Cyclo),
            KScalar::Loop(a) => Some(KScalar::Loop(a.inv())),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        match self {
            KScalar::Cyclo(a) => a.pow(e).ok().map(KScalar::Cyclo),
            KScalar::Loop(a) => Some(KScalar::Loop(a.pow(e))),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            KScalar::Cyclo(a) => a.is_one(),
            KScalar::Loop(a) => *a == LoopMonomial::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, KScalar::Cyclo(a) if a.is_zero())
    }

    pub fn as_cyclo(&self) -> Option<&CyclotomicNumber> {
        match self {
            KScalar::Cyclo(a) => Some(a),
            KScalar::Loop(_) => None,
        }
    }

    pub fn as_loop(&self) -> Option<&LoopMonomial> {
        match self {
            KScalar::Loop(a) => Some(a),
            KScalar::Cyclo(_) => None,
        }
    }

    /// Root-of-unity exponent in `[0, 1)` if the scalar is a root of unity.
    pub fn root_exp(&self) -> Option<Rational> {
        match self {
            KScalar::Cyclo(a) => a.root_of_unity_exp(),
            KScalar::Loop(a) => a.is_root_of_unity().then(|| a.coeff.value().clone()),
        }
    }

    /// Canonical text form; for roots of unity `e(p/q)`.
    pub fn canonical(&self) -> String {
        match self {
            KScalar::Loop(a) => a.to_string(),
            KScalar::Cyclo(a) => match a.root_of_unity_exp() {
                Some(e) => format!("e({})", fmt_rational(&e)),
                None => a.to_string(),
            },
        }
    }
}

impl fmt::Display for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// An element of `F`; in the number-field regime the components are the
/// `k`-coordinates in the presentation basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FElem(pub Vec<CyclotomicNumber>);

/// A scalar of `F` in either regime. Loop elements carry their valuation
/// in `t`-units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FScalar {
    Cyclo(FElem),
    Loop(LoopMonomial),
}

/// The number-field presentations of `F` with their `zeta` and `sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    pub order: u32,
    pub presentation: Presentation,
    pub sigma: SigmaKind,
}

impl EtaleAlgebra {
    pub fn rank(&self) -> usize {
        match self.presentation {
            Presentation::Field => 1,
            _ => 2,
        }
    }

    /// Dimension of `F` over `Q`.
    pub fn q_dim(&self) -> usize {
        self.rank() * euler_phi(self.order) as usize
    }

    pub fn zero(&self) -> FElem {
        FElem(vec![CyclotomicNumber::zero(self.order); self.rank()])
    }

    pub fn one(&self) -> FElem {
        self.from_k(&CyclotomicNumber::one(self.order))
    }

    pub fn from_k(&self, a: &CyclotomicNumber) -> FElem {
        match self.presentation {
            Presentation::Field => FElem(vec![a.clone()]),
            Presentation::Split => FElem(vec![a.clone(), a.clone()]),
            _ => FElem(vec![a.clone(), CyclotomicNumber::zero(self.order)]),
        }
    }

    /// The `k`-value of a `zeta`-fixed element.
    pub fn to_k(&self, x: &FElem) -> Option<CyclotomicNumber> {
        let z = self.zeta(x);
        (z == *x).then(|| x.0[0].clone())
    }

    pub fn is_zero(&self, x: &FElem) -> bool {
        x.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &FElem, b: &FElem) -> FElem {
        FElem(a.0.iter().zip(&b.0).map(|(x, y)| x.add(y)).collect())
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        FElem(a.0.iter().zip(&b.0).map(|(x, y)| x.sub(y)).collect())
    }

    pub fn neg(&self, a: &FElem) -> FElem {
        FElem(a.0.iter().map(|x| x.neg()).collect())
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        match &self.presentation {
            Presentation::Field => FElem(vec![a.0[0].mul(&b.0[0])]),
            Presentation::Split => FElem(vec![a.0[0].mul(&b.0[0]), a.0[1].mul(&b.0[1])]),
            Presentation::Quadratic(d) => {
                let c0 = a.0[0].mul(&b.0[0]).add(&d.mul(&a.0[1].mul(&b.0[1])));
                let c1 = a.0[0].mul(&b.0[1]).add(&a.0[1].mul(&b.0[0]));
                FElem(vec![c0, c1])
            }
            Presentation::LoopModel => unreachable!("loop model has no explicit elements"),
        }
    }

    pub fn scale_k(&self, a: &FElem, s: &CyclotomicNumber) -> FElem {
        FElem(a.0.iter().map(|x| x.mul(s)).collect())
    }

    pub fn zeta(&self, a: &FElem) -> FElem {
        match self.presentation {
            Presentation::Field => a.clone(),
            Presentation::Split => FElem(vec![a.0[1].clone(), a.0[0].clone()]),
            _ => FElem(vec![a.0[0].clone(), a.0[1].neg()]),
        }
    }

    /// `zeta^j` applied to `a`.
    pub fn zeta_pow(&self, a: &FElem, j: usize) -> FElem {
        if j % 2 == 1 {
            self.zeta(a)
        } else {
            a.clone()
        }
    }

    pub fn sigma(&self, a: &FElem) -> FElem {
        match self.sigma {
            SigmaKind::Identity | SigmaKind::MinusT => a.clone(),
            SigmaKind::ZetaHalf => self.zeta(a),
            SigmaKind::Conj => FElem(a.0.iter().map(|x| x.conj()).collect()),
        }
    }

    /// `sigma` restricted to `k`.
    pub fn sigma_k(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        match self.sigma {
            SigmaKind::Conj => a.conj(),
            _ => a.clone(),
        }
    }

    pub fn norm(&self, a: &FElem) -> CyclotomicNumber {
        match &self.presentation {
            Presentation::Field => a.0[0].clone(),
            Presentation::Split => a.0[0].mul(&a.0[1]),
            Presentation::Quadratic(d) => a.0[0].mul(&a.0[0]).sub(&d.mul(&a.0[1].mul(&a.0[1]))),
            Presentation::LoopModel => unreachable!(),
        }
    }

    pub fn inv(&self, a: &FElem) -> Option<FElem> {
        let nm = self.norm(a).inv().ok()?;
        match self.presentation {
            Presentation::Field => Some(FElem(vec![nm])),
            Presentation::Split => {
                Some(FElem(vec![a.0[0].inv().ok()?, a.0[1].inv().ok()?]))
            }
            _ => Some(self.scale_k(&self.zeta(a), &nm)),
        }
    }

    pub fn is_unit(&self, a: &FElem) -> bool {
        !self.norm(a).is_zero()
    }

    /// `Q`-coordinates: `k`-coordinates expanded in the power basis of `zeta_M`.
    pub fn to_q(&self, a: &FElem) -> Vec<Rational> {
        a.0.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn from_q(&self, v: &[Rational]) -> FElem {
        let phi = euler_phi(self.order) as usize;
        FElem(
            v.chunks(phi)
                .map(|ch| CyclotomicNumber::from_coeffs(self.order, ch.to_vec()))
                .collect(),
        )
    }

    /// The `Q`-basis matching [`Self::to_q`].
    pub fn q_basis(&self) -> Vec<FElem> {
        let d = self.q_dim();
        (0..d)
            .map(|i| {
                let mut v = vec![Rational::zero(); d];
                v[i] = Rational::one();
                self.from_q(&v)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetupError {
    #[error("n and m must be positive (got n={n}, m={m})")]
    NonPositive { n: u32, m: u32 },
    #[error("n must divide m (got n={n}, m={m})")]
    NDoesNotDivideM { n: u32, m: u32 },
    #[error("epsilon must be +1 or -1 (got {0})")]
    BadEpsilon(i64),
    #[error("involution sigma incompatible with the presentation: {0}")]
    SigmaIncompatible(String),
    #[error("presentation incompatible with the regime: {0}")]
    PresentationMismatch(String),
    #[error("scalar {name} is not an element of k: {detail}")]
    NotInK { name: &'static str, detail: String },
    #[error("scalar {0} must be invertible")]
    NotInvertible(&'static str),
    #[error("polarized mode requires {0}")]
    Missing(&'static str),
    #[error("c must be fixed by sigma (c in (F^x)^sigma)")]
    CNotSigmaFixed,
    #[error("Nm(c) must be fixed by sigma")]
    GammaNotSigmaFixed,
    #[error("Nm(c) given as {given} but Nm(c) computed from c is {computed}")]
    GammaMismatch { given: String, computed: String },
    #[error("norm condition Nm(c)^(m/n) = beta*sigma(beta) violated: lhs {lhs}, rhs {rhs}")]
    NormCondition { lhs: String, rhs: String },
    #[error("loop-regime beta/gamma must have integral tau-valuation")]
    FractionalValuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupWarning {
    pub code: String,
    pub message: String,
}

/// The problem instance `(n, m, beta, c, xi, epsilon, sigma, mode)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetupParams {
    pub regime: GroundRegime,
    pub presentation: Presentation,
    pub m: u32,
    pub mode: Mode,
    pub epsilon: i64,
    pub beta: KScalar,
    pub c: Option<FScalar>,
    pub gamma: Option<KScalar>,
    pub xi: FScalar,
}

impl SetupParams {
    pub fn n(&self) -> u32 {
        self.regime.n
    }

    pub fn sigma(&self) -> SigmaKind {
        self.regime.sigma
    }

    /// `m/n`.
    pub fn ratio(&self) -> u32 {
        self.m / self.regime.n
    }

    pub fn is_loop(&self) -> bool {
        self.regime.kind == RegimeKind::Loop
    }

    pub fn algebra(&self) -> Option<EtaleAlgebra> {
        match self.regime.kind {
            RegimeKind::Numberfield => Some(EtaleAlgebra {
                order: self.regime.order,
                presentation: self.presentation.clone(),
                sigma: self.regime.sigma,
            }),
            RegimeKind::Loop => None,
        }
    }

    pub fn sigma_k_trivial(&self) -> bool {
        match self.regime.sigma {
            SigmaKind::Identity | SigmaKind::ZetaHalf => true,
            SigmaKind::MinusT => false,
            SigmaKind::Conj => self.regime.order <= 2,
        }
    }

    pub fn sigma_is_identity_on_f(&self) -> bool {
        match self.regime.sigma {
            SigmaKind::Identity => true,
            SigmaKind::Conj => self.regime.order <= 2,
            _ => false,
        }
    }

    /// `[k : k^sigma]`.
    pub fn k_over_ksigma(&self) -> u32 {
        if self.sigma_k_trivial() {
            1
        } else {
            2
        }
    }

    /// `[k^sigma : Q]` in the number-field regime.
    pub fn ksigma_over_q(&self) -> Option<u32> {
        match self.regime.kind {
            RegimeKind::Numberfield => Some(euler_phi(self.regime.order) / self.k_over_ksigma()),
            RegimeKind::Loop => None,
        }
    }

    /// `sigma` restricted to `k`, extended to loop monomials of fractional
    /// valuation by `tau^(p/q) -> e(p/2q) tau^(p/q)`.
    pub fn sigma_k(&self, x: &KScalar) -> KScalar {
        if self.sigma_k_trivial() {
            return x.clone();
        }
        match x {
            KScalar::Cyclo(a) => KScalar::Cyclo(a.conj()),
            KScalar::Loop(a) => KScalar::Loop(a.sigma_minus_tau()),
        }
    }

    /// `Nm_{F/k}(xi)`.
    pub fn norm_xi(&self) -> KScalar {
        self.norm_f(&self.xi)
    }

    pub fn norm_f(&self, x: &FScalar) -> KScalar {
        match x {
            FScalar::Cyclo(e) => KScalar::Cyclo(self.algebra().expect("numberfield").norm(e)),
            FScalar::Loop(mono) => KScalar::Loop(norm_f_over_k(mono, self.regime.n)),
        }
    }

    /// `Nm_{F/k}(c)`, from `c` when present and otherwise as given.
    pub fn gamma(&self) -> Option<KScalar> {
        match &self.c {
            Some(c) => Some(self.norm_f(c)),
            None => self.gamma.clone(),
        }
    }

    pub fn one_k(&self) -> KScalar {
        match self.regime.kind {
            RegimeKind::Numberfield => KScalar::Cyclo(CyclotomicNumber::one(self.regime.order)),
            RegimeKind::Loop => KScalar::Loop(LoopMonomial::one()),
        }
    }
}

/// A validated instance with its recorded side facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedParams {
    pub params: SetupParams,
    pub warnings: Vec<SetupWarning>,
    /// Whether `Nm(xi)^(m/n) = 1`.
    pub xi_admissible: bool,
    /// Whether `Nm(xi)` is a primitive `(m/n)`-th root of unity.
    pub norm_xi_primitive: bool,
}

fn is_primitive_root(x: &KScalar, r: u32) -> bool {
    match x.root_exp() {
        Some(e) => e.denom() == &num_bigint::BigInt::from(r),
        None => false,
    }
}

pub fn validate_params(p: &SetupParams) -> Result<ValidatedParams, Vec<SetupError>> {
    let mut errs = Vec::new();
    let mut warnings = Vec::new();
    let (n, m) = (p.regime.n, p.m);
    if n == 0 || m == 0 {
        return Err(vec![SetupError::NonPositive { n, m }]);
    }
    if m % n != 0 {
        errs.push(SetupError::NDoesNotDivideM { n, m });
    }
    if p.epsilon != 1 && p.epsilon != -1 {
        errs.push(SetupError::BadEpsilon(p.epsilon));
    }
    check_structure(p, &mut errs);
    if !errs.is_empty() {
        return Err(errs);
    }

    if let KScalar::Loop(b) = &p.beta {
        if !b.val.is_integer() {
            errs.push(SetupError::FractionalValuation);
        }
    }
    if p.beta.is_zero() {
        errs.push(SetupError::NotInvertible("beta"));
    }
    let xi_nonzero = match &p.xi {
        FScalar::Cyclo(x) => p.algebra().map(|a| a.is_unit(x)).unwrap_or(false),
        FScalar::Loop(_) => true,
    };
    if !xi_nonzero {
        errs.push(SetupError::NotInvertible("xi"));
    }

    if p.mode == Mode::Polarized {
        check_polarization(p, &mut errs);
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    let r = p.ratio();
    let nm_xi = p.norm_xi();
    let root_ok = nm_xi.pow(r as i64).map(|x| x.is_one()).unwrap_or(false);
    let sigma_ok = p.mode == Mode::Linear || xi_sigma_fixed(p);
    if !sigma_ok {
        warnings.push(SetupWarning {
            code: "xi_not_sigma_fixed".into(),
            message: "xi is not fixed by sigma; the eigenspace g(xi) is zero".into(),
        });
    }
    let xi_admissible = root_ok && sigma_ok;
    if !root_ok {
        warnings.push(SetupWarning {
            code: "xi_not_admissible".into(),
            message: format!(
                "Nm(xi) = {} is not an (m/n)-th root of unity; the eigenspace g(xi) is zero",
                nm_xi
            ),
        });
    }
    let norm_xi_primitive = xi_admissible && is_primitive_root(&nm_xi, r);
    Ok(ValidatedParams { params: p.clone(), warnings, xi_admissible, norm_xi_primitive })
}

fn check_structure(p: &SetupParams, errs: &mut Vec<SetupError>) {
    let n = p.regime.n;
    let sigma = p.regime.sigma;
    match (p.regime.kind, &p.presentation) {
        (RegimeKind::Loop, Presentation::LoopModel) => {}
        (RegimeKind::Numberfield, Presentation::Field) if n == 1 => {}
        (RegimeKind::Numberfield, Presentation::Split | Presentation::Quadratic(_)) if n == 2 => {}
        (kind, pres) => errs.push(SetupError::PresentationMismatch(format!(
            "{:?} regime with n={} does not support the {} presentation",
            kind,
            n,
            pres.name()
        ))),
    }
    if let Presentation::Quadratic(d) = &p.presentation {
        if d.order() != p.regime.order {
            errs.push(SetupError::PresentationMismatch("d lies in a different field".into()));
        } else if d.is_zero() {
            errs.push(SetupError::PresentationMismatch("d must be nonzero".into()));
        } else if sigma == SigmaKind::Conj && d.conj() != *d {
            errs.push(SetupError::SigmaIncompatible(
                "complex conjugation commutes with x -> -x only when conj(d) = d".into(),
            ));
        }
    }
    match sigma {
        SigmaKind::ZetaHalf if !n.is_multiple_of(2) => errs.push(SetupError::SigmaIncompatible(
            "sigma = zeta^(n/2) requires n even".into(),
        )),
        SigmaKind::MinusT if p.regime.kind != RegimeKind::Loop || n.is_multiple_of(2) => {
            errs.push(SetupError::SigmaIncompatible(
                "sigma: t -> -t is available in the loop regime for odd n only".into(),
            ))
        }
        SigmaKind::Conj if p.regime.kind != RegimeKind::Numberfield => errs.push(
            SetupError::SigmaIncompatible("complex conjugation needs the numberfield regime".into()),
        ),
        _ => {}
    }
    if p.regime.kind == RegimeKind::Numberfield {
        let order = p.regime.order;
        if order == 0 {
            errs.push(SetupError::PresentationMismatch("cyclotomic order must be positive".into()));
            return;
        }
        let ok_k = |x: &KScalar| x.as_cyclo().map(|c| c.order() == order).unwrap_or(false);
        if !ok_k(&p.beta) {
            errs.push(SetupError::NotInK { name: "beta", detail: "wrong regime or order".into() });
        }
        if let Some(g) = &p.gamma {
            if !ok_k(g) {
                errs.push(SetupError::NotInK { name: "gamma", detail: "wrong regime or order".into() });
            }
        }
        let rank = if n == 1 { 1 } else { 2 };
        let ok_f = |x: &FScalar| match x {
            FScalar::Cyclo(e) => e.0.len() == rank && e.0.iter().all(|c| c.order() == order),
            FScalar::Loop(_) => false,
        };
        if !ok_f(&p.xi) {
            errs.push(SetupError::PresentationMismatch("xi is not an element of F".into()));
        }
        if let Some(c) = &p.c {
            if !ok_f(c) {
                errs.push(SetupError::PresentationMismatch("c is not an element of F".into()));
            }
        }
    } else {
        if p.beta.as_loop().is_none() || matches!(p.xi, FScalar::Cyclo(_)) {
            errs.push(SetupError::PresentationMismatch("loop regime needs monomial scalars".into()));
        }
        if p.c.is_some() {
            errs.push(SetupError::PresentationMismatch(
                "loop regime takes Nm(c) = gamma directly".into(),
            ));
        }
    }
}

fn check_polarization(p: &SetupParams, errs: &mut Vec<SetupError>) {
    if let (Some(c), Some(g)) = (&p.c, &p.gamma) {
        let computed = p.norm_f(c);
        if computed != *g {
            errs.push(SetupError::GammaMismatch {
                given: g.to_string(),
                computed: computed.to_string(),
            });
        }
    }
    let gamma = match p.gamma() {
        Some(g) => g,
        None => {
            errs.push(SetupError::Missing("c (or gamma = Nm(c))"));
            return;
        }
    };
    if let KScalar::Loop(g) = &gamma {
        if !g.val.is_integer() {
            errs.push(SetupError::FractionalValuation);
            return;
        }
    }
    if gamma.is_zero() {
        errs.push(SetupError::NotInvertible("c"));
        return;
    }
    if let (Some(FScalar::Cyclo(c)), Some(alg)) = (&p.c, p.algebra()) {
        if alg.sigma(c) != *c {
            errs.push(SetupError::CNotSigmaFixed);
        }
        if !alg.is_unit(c) {
            errs.push(SetupError::NotInvertible("c"));
        }
    }
    if p.sigma_k(&gamma) != gamma {
        errs.push(SetupError::GammaNotSigmaFixed);
    }
    let lhs = gamma.pow(p.ratio() as i64).expect("gamma invertible");
    let rhs = p.beta.mul(&p.sigma_k(&p.beta));
    if lhs != rhs {
        errs.push(SetupError::NormCondition { lhs: lhs.to_string(), rhs: rhs.to_string() });
    }
}

fn xi_sigma_fixed(p: &SetupParams) -> bool {
    match &p.xi {
        FScalar::Cyclo(x) => p.algebra().map(|alg| alg.sigma(x) == *x).unwrap_or(false),
        FScalar::Loop(x) => match p.regime.sigma {
            SigmaKind::Identity => true,
            _ => x.val.is_integer() && x.val.to_integer().is_even(),
        },
    }
}

/// A semilinear operator `v -> T * zeta(v)` on `F^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearOperator {
    pub size: usize,
    /// Row-major entries of `T`.
    pub t: Vec<FElem>,
}

impl SemilinearOperator {
    pub fn entry(&self, r: usize, c: usize) -> &FElem {
        &self.t[r * self.size + c]
    }

    /// `xi * theta`.
    pub fn twist(&self, alg: &EtaleAlgebra, xi: &FElem) -> SemilinearOperator {
        SemilinearOperator { size: self.size, t: self.t.iter().map(|e| alg.mul(xi, e)).collect() }
    }

    /// Matrix of `theta^j` as `T * zeta(T) * ... * zeta^(j-1)(T)`.
    pub fn power_matrix(&self, alg: &EtaleAlgebra, j: usize) -> Vec<FElem> {
        let n = self.size;
        let mut acc = identity(alg, n);
        for step in 0..j {
            let zt: Vec<FElem> = self.t.iter().map(|e| alg.zeta_pow(e, step)).collect();
            acc = mat_mul(alg, n, &acc, &zt);
        }
        acc
    }
}

pub fn identity(alg: &EtaleAlgebra, n: usize) -> Vec<FElem> {
    let mut out = vec![alg.zero(); n * n];
    for i in 0..n {
        out[i * n + i] = alg.one();
    }
    out
}

pub fn mat_mul(alg: &EtaleAlgebra, n: usize, a: &[FElem], b: &[FElem]) -> Vec<FElem> {
    let mut out = vec![alg.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if alg.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if alg.is_zero(bkj) {
                    continue;
                }
                out[i * n + j] = alg.add(&out[i * n + j], &alg.mul(aik, bkj));
            }
        }
    }
    out
}

/// Loop-regime `F`-scalar from `zeta_exp` and `t`-valuation.
pub fn loop_f(zeta_exp: Rational, val: i64) -> FScalar {
    FScalar::Loop(LoopMonomial::from_parts(zeta_exp, rat_int(val)))
}

pub fn loop_k(zeta_exp: Rational, val: i64) -> KScalar {
    KScalar::Loop(LoopMonomial::from_parts(zeta_exp, rat_int(val)))
}

/// `e(p/q)` as a `k`-scalar of `Q(zeta_order)`.
pub fn cyclo_root(order: u32, p: i64, q: i64) -> Option<KScalar> {
    CyclotomicNumber::root_of_unity(order, &rat(p, q)).map(KScalar::Cyclo)
}

pub fn root_exp_of_unity(x: &RootOfUnityExp) -> Rational {
    x.value().clone()
}
