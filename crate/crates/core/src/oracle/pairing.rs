//! Extraction of the induced pairings `{x, y}_i` on multiplicity spaces.

use serde::{Deserialize, Serialize};

use super::linalg::{nullspace_rational, rank, RationalField};
use super::{OracleError, PolarizedSetup};
use crate::scalars::{euler_phi, CyclotomicNumber, Rational};
use crate::setup::FElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingSymmetry {
    Symmetric,
    Alternating,
    Hermitian,
    SkewHermitian,
    /// `i != i*`; only the sign relating the two pairings is recorded.
    Paired,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingCheck {
    pub vertex: usize,
    pub partner: usize,
    pub dim: usize,
    /// `{x, y}_i` lands in `L_i = k`.
    pub in_k: bool,
    pub perfect: bool,
    pub sesquilinear: bool,
    /// `eta` in `{y, x}_(i*) = eta * sigma({x, y}_i)`; `None` if no
    /// consistent sign exists.
    pub eta: Option<i64>,
    pub symmetry: Option<PairingSymmetry>,
    /// Canonical strings of the Gram entries, row-major.
    pub gram: Vec<String>,
}

impl PairingCheck {
    pub fn holds(&self) -> bool {
        self.in_k && self.perfect && self.sesquilinear && self.eta.is_some()
    }
}

type FVec = Vec<FElem>;

/// A `k`-basis of `M_i = {v : theta(v) = t_i v}`.
fn multiplicity_basis(s: &PolarizedSetup, t: &FElem) -> Result<Vec<FVec>, OracleError> {
    let alg = &s.alg;
    let n = s.size;
    let d = alg.q_dim();
    let basis = alg.q_basis();
    let mut rows = vec![vec![Rational::from_integer(0.into()); n * d]; n * d];
    for r in 0..n {
        for (bi, e) in basis.iter().enumerate() {
            let col = r * d + bi;
            let ze = alg.zeta(e);
            for i in 0..n {
                let mut v = alg.mul(s.theta.entry(i, r), &ze);
                if i == r {
                    v = alg.sub(&v, &alg.mul(t, e));
                }
                for (q, x) in alg.to_q(&v).into_iter().enumerate() {
                    rows[i * d + q][col] = x;
                }
            }
        }
    }
    let ns = nullspace_rational(&rows, n * d);
    let vecs: Vec<FVec> = ns.iter().map(|v| v.chunks(d).map(|ch| alg.from_q(ch)).collect()).collect();
    let phi = euler_phi(alg.order) as usize;
    if !ns.len().is_multiple_of(phi) {
        return Err(OracleError::Invariant(format!("dim_Q M_i = {} is not a multiple of [k:Q]", ns.len())));
    }
    let zeta = CyclotomicNumber::zeta_pow(alg.order, 1);
    let k_orbit = |v: &FVec| -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(phi);
        let mut lam = CyclotomicNumber::one(alg.order);
        for _ in 0..phi {
            out.push(v.iter().flat_map(|x| alg.to_q(&alg.scale_k(x, &lam))).collect());
            lam = lam.mul(&zeta);
        }
        out
    };
    let mut chosen: Vec<FVec> = Vec::new();
    let mut span: Vec<Vec<Rational>> = Vec::new();
    for v in vecs {
        if chosen.len() * phi == ns.len() {
            break;
        }
        let mut trial = span.clone();
        trial.extend(k_orbit(&v));
        if rank(&RationalField, trial.clone()) == trial.len() {
            span = trial;
            chosen.push(v);
        }
    }
    if chosen.len() * phi != ns.len() {
        return Err(OracleError::Invariant("greedy k-basis of M_i incomplete".into()));
    }
    Ok(chosen)
}

fn form(s: &PolarizedSetup, x: &FVec, y: &FVec) -> FElem {
    let alg = &s.alg;
    let j = s.gram.as_ref().expect("polarized");
    let n = s.size;
    let mut acc = alg.zero();
    for r in 0..n {
        if alg.is_zero(&x[r]) {
            continue;
        }
        for c in 0..n {
            let g = &j[r * n + c];
            if alg.is_zero(g) || alg.is_zero(&y[c]) {
                continue;
            }
            acc = alg.add(&acc, &alg.mul(&alg.mul(&x[r], g), &alg.sigma(&y[c])));
        }
    }
    acc
}

fn k_gram(s: &PolarizedSetup, xs: &[FVec], ys: &[FVec], sconst: &FElem) -> Option<Vec<CyclotomicNumber>> {
    let alg = &s.alg;
    let inv = alg.inv(sconst)?;
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            out.push(alg.to_k(&alg.mul(&form(s, x, y), &inv))?);
        }
    }
    Some(out)
}

fn k_matrix_invertible(order: u32, d: usize, g: &[CyclotomicNumber]) -> bool {
    let phi = euler_phi(order) as usize;
    let zeta = CyclotomicNumber::zeta_pow(order, 1);
    let mut rows = Vec::new();
    for j in 0..d {
        let mut lam = CyclotomicNumber::one(order);
        for _ in 0..phi {
            let row: Vec<Rational> = (0..d).flat_map(|i| g[i * d + j].mul(&lam).coeffs().to_vec()).collect();
            rows.push(row);
            lam = lam.mul(&zeta);
        }
    }
    rank(&RationalField, rows) == d * phi
}

/// Gram matrix of `{., .}_i` on `M_i x M_(i*)` and its properties.
pub fn extract_vertex_pairing(s: &PolarizedSetup, i: usize) -> Result<PairingCheck, OracleError> {
    let model = s.model.as_ref().ok_or_else(|| OracleError::Invariant("setup has no block model".into()))?;
    let q = &s.report.quiver;
    let star = q.vertex_star.as_ref().ok_or_else(|| OracleError::Invariant("linear setup has no pairing".into()))?;
    let alg = &s.alg;
    let j = star[i];
    let xs = multiplicity_basis(s, &model.generators[i])?;
    let ys = if j == i { xs.clone() } else { multiplicity_basis(s, &model.generators[j])? };
    let dim = xs.len();
    let si = model.pair_consts[i].clone().ok_or_else(|| OracleError::Invariant("missing pairing constant".into()))?;
    let sj = model.pair_consts[j].clone().ok_or_else(|| OracleError::Invariant("missing pairing constant".into()))?;
    let g = k_gram(s, &xs, &ys, &si);
    let g_rev = k_gram(s, &ys, &xs, &sj);
    let (Some(g), Some(g_rev)) = (g, g_rev) else {
        return Ok(PairingCheck {
            vertex: i,
            partner: j,
            dim,
            in_k: false,
            perfect: false,
            sesquilinear: false,
            eta: None,
            symmetry: None,
            gram: vec![],
        });
    };
    let perfect = ys.len() == dim && k_matrix_invertible(alg.order, dim, &g);

    let lam = CyclotomicNumber::zeta_pow(alg.order, 1).add(&CyclotomicNumber::from_int(alg.order, 2));
    let mut sesquilinear = true;
    let inv_s = alg.inv(&si).expect("unit");
    for (a, x) in xs.iter().enumerate() {
        for (b, y) in ys.iter().enumerate() {
            let lx: FVec = x.iter().map(|e| alg.scale_k(e, &lam)).collect();
            let ly: FVec = y.iter().map(|e| alg.scale_k(e, &lam)).collect();
            let left = alg.to_k(&alg.mul(&form(s, &lx, y), &inv_s));
            let right = alg.to_k(&alg.mul(&form(s, x, &ly), &inv_s));
            let gab = &g[a * dim + b];
            if left != Some(lam.mul(gab)) || right != Some(alg.sigma_k(&lam).mul(gab)) {
                sesquilinear = false;
            }
        }
    }

    // g_rev[b][a] = {y_b, x_a}_(i*) against sigma(g[a][b]) = {x_a, y_b}_i
    let mut eta: Option<i64> = None;
    let mut consistent = true;
    for a in 0..dim {
        for b in 0..dim {
            let lhs = &g_rev[b * dim + a];
            let rhs = alg.sigma_k(&g[a * dim + b]);
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            let this = if *lhs == rhs {
                1
            } else if *lhs == rhs.neg() {
                -1
            } else {
                consistent = false;
                break;
            };
            match eta {
                None => eta = Some(this),
                Some(e) if e != this => consistent = false,
                _ => {}
            }
        }
    }
    let eta = if consistent { eta.or(if dim == 0 { Some(1) } else { None }) } else { None };
    let symmetry = eta.map(|e| match (j == i, s.params().sigma_k_trivial(), e) {
        (false, _, _) => PairingSymmetry::Paired,
        (true, true, 1) => PairingSymmetry::Symmetric,
        (true, true, _) => PairingSymmetry::Alternating,
        (true, false, 1) => PairingSymmetry::Hermitian,
        (true, false, _) => PairingSymmetry::SkewHermitian,
    });
    Ok(PairingCheck {
        vertex: i,
        partner: j,
        dim,
        in_k: true,
        perfect,
        sesquilinear,
        eta,
        symmetry,
        gram: g.iter().map(|x| crate::setup::KScalar::Cyclo(x.clone()).canonical()).collect(),
    })
}
