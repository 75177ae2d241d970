//! Restriction of scalars of the semilinear matrix conditions.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{LinearSystemRank, SparseSystem};
use super::{OracleError, PolarizedSetup};
use crate::scalars::Rational;
use crate::setup::{EtaleAlgebra, FElem, SigmaKind};

/// `left * zeta^a(X) - lambda * X * right = 0`.
pub struct MatrixEquation<'a> {
    pub left: &'a [FElem],
    pub zeta_power: usize,
    pub right: &'a [FElem],
    pub lambda: FElem,
}

fn add_f(col: &mut BTreeMap<usize, Rational>, alg: &EtaleAlgebra, offset: usize, v: &FElem) {
    for (i, x) in alg.to_q(v).into_iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let e = col.entry(offset + i).or_insert_with(Rational::zero);
        *e += x;
    }
}

/// Unknowns are the `Q`-coordinates of the entries `X[r][c]` allowed by
/// `mask`; the second block of rows is `X^T J + J sigma(X) = 0` when a Gram
/// matrix is given.
pub fn build_matrix_system(
    alg: &EtaleAlgebra,
    n: usize,
    eq: &MatrixEquation,
    gram: Option<&[FElem]>,
    mask: &dyn Fn(usize, usize) -> bool,
) -> SparseSystem {
    let d = alg.q_dim();
    let block = n * n * d;
    let nrows = if gram.is_some() { 2 * block } else { block };
    let mut sys = SparseSystem::new(nrows);
    let basis = alg.q_basis();
    for r in 0..n {
        for c in 0..n {
            if !mask(r, c) {
                continue;
            }
            for e in &basis {
                let mut col = BTreeMap::new();
                let ze = alg.zeta_pow(e, eq.zeta_power);
                let le = alg.mul(&eq.lambda, e);
                for i in 0..n {
                    let a = &eq.left[i * n + r];
                    if !alg.is_zero(a) {
                        add_f(&mut col, alg, (i * n + c) * d, &alg.mul(a, &ze));
                    }
                }
                for j in 0..n {
                    let b = &eq.right[c * n + j];
                    if !alg.is_zero(b) {
                        add_f(&mut col, alg, (r * n + j) * d, &alg.neg(&alg.mul(&le, b)));
                    }
                }
                if let Some(jm) = gram {
                    let se = alg.sigma(e);
                    for j in 0..n {
                        let g = &jm[r * n + j];
                        if !alg.is_zero(g) {
                            add_f(&mut col, alg, block + (c * n + j) * d, &alg.mul(e, g));
                        }
                    }
                    for i in 0..n {
                        let g = &jm[i * n + r];
                        if !alg.is_zero(g) {
                            add_f(&mut col, alg, block + (i * n + c) * d, &alg.mul(g, &se));
                        }
                    }
                }
                sys.columns.push(col.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
    }
    sys
}

fn all(_: usize, _: usize) -> bool {
    true
}

/// `{X : theta X = X theta, X skew}` on the conjugated setup.
pub fn fixed_lie_dim<R: Rng>(s: &PolarizedSetup, exact: bool, rng: &mut R) -> LinearSystemRank {
    let eq = MatrixEquation { left: &s.theta.t, zeta_power: 1, right: &s.theta.t, lambda: s.alg.one() };
    build_matrix_system(&s.alg, s.size, &eq, s.gram.as_deref(), &all).solve(exact, rng)
}

/// `{X : theta X theta^-1 = xi X, X skew}`.
pub fn eigenspace_dim<R: Rng>(s: &PolarizedSetup, xi: &FElem, exact: bool, rng: &mut R) -> LinearSystemRank {
    let eq = MatrixEquation { left: &s.theta.t, zeta_power: 1, right: &s.theta.t, lambda: xi.clone() };
    build_matrix_system(&s.alg, s.size, &eq, s.gram.as_deref(), &all).solve(exact, rng)
}

/// Skew intertwiners `V^xi -> V`, with `V^xi` carrying the twisted operator.
pub fn twisted_eigenspace_dim<R: Rng>(s: &PolarizedSetup, xi: &FElem, exact: bool, rng: &mut R) -> LinearSystemRank {
    let twisted = s.theta.twist(&s.alg, xi);
    let eq = MatrixEquation { left: &s.theta.t, zeta_power: 1, right: &twisted.t, lambda: s.alg.one() };
    build_matrix_system(&s.alg, s.size, &eq, s.gram.as_deref(), &all).solve(exact, rng)
}

/// The same systems restricted to block patterns of the unconjugated model.
pub fn masked_dim<R: Rng>(
    s: &PolarizedSetup,
    xi: Option<&FElem>,
    blocks: &[(usize, usize)],
    exact: bool,
    rng: &mut R,
) -> Result<LinearSystemRank, OracleError> {
    let model = s.model.as_ref().ok_or_else(|| OracleError::Invariant("setup has no block model".into()))?;
    let owner: Vec<usize> = model
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(v, b)| std::iter::repeat_n(v, b.len))
        .collect();
    let mask = |r: usize, c: usize| blocks.contains(&(owner[r], owner[c]));
    let eq = MatrixEquation {
        left: &model.theta.t,
        zeta_power: 1,
        right: &model.theta.t,
        lambda: xi.cloned().unwrap_or_else(|| s.alg.one()),
    };
    Ok(build_matrix_system(&s.alg, s.size, &eq, model.gram.as_deref(), &mask).solve(exact, rng))
}

/// `d_i` as the `F`-rank of `ker(theta^n - b_i)`.
pub fn isotypic_multiplicities<R: Rng>(s: &PolarizedSetup, exact: bool, rng: &mut R) -> Result<Vec<u64>, OracleError> {
    let alg = &s.alg;
    let n = s.size;
    let d = alg.q_dim();
    let bmat = s.theta.power_matrix(alg, s.params().n() as usize);
    let basis = alg.q_basis();
    let mut out = Vec::new();
    for v in &s.report.quiver.spectrum.vertices {
        let b = alg.from_k(v.b_value.as_cyclo().expect("numberfield"));
        let mut sys = SparseSystem::new(n * d);
        for r in 0..n {
            for e in &basis {
                let mut col = BTreeMap::new();
                for i in 0..n {
                    let mut a = bmat[i * n + r].clone();
                    if i == r {
                        a = alg.sub(&a, &b);
                    }
                    if !alg.is_zero(&a) {
                        add_f(&mut col, alg, i * d, &alg.mul(&a, e));
                    }
                }
                sys.columns.push(col.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        let nullity = sys.solve(exact, rng).nullity;
        if !nullity.is_multiple_of(d) {
            return Err(OracleError::Invariant(format!(
                "isotypic nullity {} at vertex {} is not a multiple of dim_Q S_i = {}",
                nullity, v.id, d
            )));
        }
        out.push((nullity / d) as u64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeCheck {
    /// `[F^sigma : k^sigma]`.
    pub n_prime: u32,
    pub h_lhs: usize,
    pub h_rhs: usize,
    pub g_lhs: usize,
    pub g_rhs: usize,
    pub holds: bool,
    /// Whether the `g` identity also holds with eigenvalue `xi` itself
    /// rather than `xi * zeta(xi) ...`.
    pub literal_xi_holds: bool,
}

/// Compares `Q`-dimensions of `H`, `g(xi)` times `n'` with the
/// `ad(theta^n')`-fixed and eigen-subspaces of `g`. `None` when `n = 1`.
pub fn check_base_change<R: Rng>(s: &PolarizedSetup, xi: &FElem, exact: bool, rng: &mut R) -> Option<BaseChangeCheck> {
    let p = s.params();
    if p.n() < 2 {
        return None;
    }
    let alg = &s.alg;
    let n_prime: u32 = if p.sigma() == SigmaKind::ZetaHalf { p.n() / 2 } else { p.n() };
    let pm = s.theta.power_matrix(alg, n_prime as usize);
    let zp = n_prime as usize % 2;
    let mut partial = alg.one();
    for j in 0..n_prime as usize {
        partial = alg.mul(&partial, &alg.zeta_pow(xi, j));
    }
    let gram = s.gram.as_deref();
    let dim = |lambda: FElem, rng: &mut R| {
        let eq = MatrixEquation { left: &pm, zeta_power: zp, right: &pm, lambda };
        build_matrix_system(alg, s.size, &eq, gram, &all).solve(exact, rng).nullity
    };
    let h_rhs = dim(alg.one(), rng);
    let g_rhs = dim(partial, rng);
    let g_literal = dim(xi.clone(), rng);
    let h_lhs = fixed_lie_dim(s, exact, rng).nullity * n_prime as usize;
    let g_lhs = eigenspace_dim(s, xi, exact, rng).nullity * n_prime as usize;
    Some(BaseChangeCheck {
        n_prime,
        h_lhs,
        h_rhs,
        g_lhs,
        g_rhs,
        holds: h_lhs == h_rhs && g_lhs == g_rhs,
        literal_xi_holds: g_lhs == g_literal,
    })
}
