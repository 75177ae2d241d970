//! Factorization of the center `L = k[b]/(b^(m/n) - beta)` into fields.

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::scalars::{
    full_root_order, minimal_cyclotomic_order, monomial_roots, rat, rat_int, CyclotomicNumber,
    LoopMonomial, Rational, RootOfUnityExp,
};
use crate::setup::{KScalar, RegimeKind, SetupParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("beta must be a root of unity in the numberfield regime")]
    BetaNotRootOfUnity,
    #[error("insufficient cyclotomic order: some (m/n)-th roots of beta lie outside Q(zeta_{current}); need M = {required}")]
    InsufficientOrder { current: u32, required: u32 },
}

/// One field factor `L_i` of the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// Chosen root `b_i`; in the loop regime the canonical representative
    /// of its Galois orbit.
    pub b_value: KScalar,
    /// `[L_i : k]`.
    pub residue_degree: u32,
    pub division_degree: u32,
    /// `dim_{L_i} S_i`.
    pub simple_dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterSpectrum {
    pub regime: RegimeKind,
    pub vertices: Vec<Vertex>,
    /// All roots of `b^(m/n) = beta`, grouped per vertex.
    pub orbits: Vec<Vec<KScalar>>,
}

impl CenterSpectrum {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index of the vertex whose root orbit contains `x`.
    pub fn find(&self, x: &KScalar) -> Option<usize> {
        match x {
            KScalar::Cyclo(_) => self.vertices.iter().position(|v| v.b_value == *x),
            KScalar::Loop(mono) => {
                let canon = KScalar::Loop(canonical_orbit_rep(mono));
                self.vertices.iter().position(|v| v.b_value == canon)
            }
        }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn total_degree(&self) -> u32 {
        self.vertices.iter().map(|v| v.residue_degree).sum()
    }
}

/// Representative of the Galois orbit `{x * e(j/q)}` over `C((tau))`, where
/// `q` is the denominator of `val(x)`: the coefficient reduced mod `1/q`.
pub fn canonical_orbit_rep(x: &LoopMonomial) -> LoopMonomial {
    let q = rat_int(x.val_denominator() as i64);
    let scaled = x.coeff.value() * &q;
    let reduced = (&scaled - scaled.floor()) / &q;
    LoopMonomial::new(RootOfUnityExp::new(reduced), x.val.clone())
}

pub fn split_center(p: &SetupParams) -> Result<CenterSpectrum, SpectrumError> {
    match p.regime.kind {
        RegimeKind::Numberfield => split_center_numberfield(p),
        RegimeKind::Loop => Ok(split_center_loop(p)),
    }
}

pub fn split_center_numberfield(p: &SetupParams) -> Result<CenterSpectrum, SpectrumError> {
    let order = p.regime.order;
    let r = p.ratio() as i64;
    let e = p.beta.root_exp().ok_or(SpectrumError::BetaNotRootOfUnity)?;
    let exps: Vec<Rational> = (0..r).map(|j| (&e + rat_int(j)) / rat_int(r)).collect();
    let full = full_root_order(order) as u64;
    let mut lcm = full;
    for x in &exps {
        let q = x.denom().to_u64().expect("small order");
        lcm = lcm.lcm(&q);
    }
    if lcm != full {
        return Err(SpectrumError::InsufficientOrder {
            current: order,
            required: minimal_cyclotomic_order(lcm as u32),
        });
    }
    let mut exps = exps;
    exps.sort();
    let vertices: Vec<Vertex> = exps
        .iter()
        .map(|x| {
            let b = KScalar::Cyclo(CyclotomicNumber::root_of_unity(order, x).expect("checked above"));
            Vertex {
                id: b.canonical(),
                b_value: b,
                residue_degree: 1,
                division_degree: 1,
                simple_dim: p.n(),
            }
        })
        .collect();
    let orbits = vertices.iter().map(|v| vec![v.b_value.clone()]).collect();
    Ok(CenterSpectrum { regime: RegimeKind::Numberfield, vertices, orbits })
}

pub fn split_center_loop(p: &SetupParams) -> CenterSpectrum {
    let beta = p.beta.as_loop().expect("loop regime");
    let roots = monomial_roots(beta, p.ratio());
    let mut groups: Vec<(LoopMonomial, Vec<KScalar>)> = Vec::new();
    for y in roots {
        let canon = canonical_orbit_rep(&y);
        match groups.iter_mut().find(|(c, _)| *c == canon) {
            Some((_, members)) => members.push(KScalar::Loop(y)),
            None => groups.push((canon, vec![KScalar::Loop(y)])),
        }
    }
    groups.sort_by(|a, b| a.0.coeff.cmp(&b.0.coeff));
    let mut vertices = Vec::new();
    let mut orbits = Vec::new();
    for (canon, members) in groups {
        let q = canon.val_denominator();
        debug_assert_eq!(members.len() as u32, q);
        vertices.push(Vertex {
            id: canon.to_string(),
            b_value: KScalar::Loop(canon),
            residue_degree: q,
            division_degree: 1,
            simple_dim: p.n(),
        });
        orbits.push(members);
    }
    CenterSpectrum { regime: RegimeKind::Loop, vertices, orbits }
}

/// `e(p/q)` as a loop monomial of valuation zero.
pub fn loop_root(p: i64, q: i64) -> LoopMonomial {
    LoopMonomial::root_of_unity(rat(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setup::{
        loop_f, loop_k, EtaleAlgebra, FScalar, GroundRegime, Mode, Presentation, SigmaKind,
    };

    fn nf(order: u32, m: u32, beta_exp: (i64, i64)) -> SetupParams {
        let alg = EtaleAlgebra { order, presentation: Presentation::Field, sigma: SigmaKind::Identity };
        SetupParams {
            regime: GroundRegime { kind: RegimeKind::Numberfield, order, n: 1, sigma: SigmaKind::Identity },
            presentation: Presentation::Field,
            m,
            mode: Mode::Linear,
            epsilon: 1,
            beta: crate::setup::cyclo_root(order, beta_exp.0, beta_exp.1).unwrap(),
            c: None,
            gamma: None,
            xi: FScalar::Cyclo(alg.one()),
        }
    }

    fn lp(n: u32, m: u32, beta_val: i64) -> SetupParams {
        SetupParams {
            regime: GroundRegime { kind: RegimeKind::Loop, order: 0, n, sigma: SigmaKind::Identity },
            presentation: Presentation::LoopModel,
            m,
            mode: Mode::Linear,
            epsilon: 1,
            beta: loop_k(rat(0, 1), beta_val),
            c: None,
            gamma: None,
            xi: loop_f(rat(0, 1), 0),
        }
    }

    fn ids(s: &CenterSpectrum) -> Vec<String> {
        s.vertices.iter().map(|v| v.id.clone()).collect()
    }

    #[test]
    fn cube_roots_of_one_in_q_zeta3() {
        let s = split_center(&nf(3, 3, (0, 1))).unwrap();
        assert_eq!(ids(&s), vec!["e(0)", "e(1/3)", "e(2/3)"]);
    }

    #[test]
    fn square_roots_of_minus_one() {
        let s = split_center(&nf(4, 2, (1, 2))).unwrap();
        assert_eq!(ids(&s), vec!["e(1/4)", "e(3/4)"]);
    }

    #[test]
    fn fourth_roots_of_minus_one_need_order_eight() {
        let err = split_center(&nf(4, 4, (1, 2))).unwrap_err();
        assert_eq!(err, SpectrumError::InsufficientOrder { current: 4, required: 8 });
    }

    #[test]
    fn loop_tau_squared_with_ratio_four() {
        let s = split_center(&lp(2, 8, 2)).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.vertices.iter().all(|v| v.residue_degree == 2));
        assert_eq!(s.total_degree(), 4);
    }

    #[test]
    fn loop_integral_and_odd_valuations() {
        let s = split_center(&lp(1, 2, 2)).unwrap();
        assert_eq!(ids(&s), vec!["e(0)*tau^(1)", "e(1/2)*tau^(1)"]);
        let s = split_center(&lp(1, 2, 1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.vertices[0].residue_degree, 2);
    }

    #[test]
    fn roots_satisfy_the_binomial() {
        let p = lp(3, 12, 6);
        let s = split_center(&p).unwrap();
        for orbit in &s.orbits {
            for b in orbit {
                assert_eq!(b.pow(p.ratio() as i64).unwrap(), p.beta);
                assert!(s.find(b).is_some());
            }
        }
    }
}
