//! The quiver `Q_xi` with its arrow-reversing involution, and the shapes of
//! its components.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::setup::{KScalar, Mode, ValidatedParams};
use crate::spectrum::CenterSpectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("involution ill-defined: sigma(Nm(c)/b) for b = {0} is not a root of the center")]
    InvolutionIllDefined(String),
    #[error("xi-bar ill-defined: Nm(xi)*b for b = {0} is not a root of the center")]
    XiBarIllDefined(String),
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

/// The arrow `from -> xi_bar(from)`; arrows are indexed by their source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveQuiver {
    pub spectrum: CenterSpectrum,
    /// Absent when `Nm(xi)` is not an `(m/n)`-th root of unity.
    pub arrows: Option<Vec<Arrow>>,
    pub vertex_star: Option<Vec<usize>>,
    /// `arrow_star[i]` is the source of the image of the arrow out of `i`.
    pub arrow_star: Option<Vec<usize>>,
    pub sigma_c_fixed: Vec<bool>,
    pub sigma_cxi_fixed: Vec<bool>,
}

impl InvolutiveQuiver {
    pub fn xi_bar(&self, i: usize) -> Option<usize> {
        self.arrows.as_ref().map(|a| a[i].to)
    }

    pub fn star(&self, i: usize) -> Option<usize> {
        self.vertex_star.as_ref().map(|s| s[i])
    }

    pub fn is_polarized(&self) -> bool {
        self.vertex_star.is_some()
    }

    pub fn vertex_fixed(&self, i: usize) -> bool {
        self.star(i) == Some(i)
    }

    /// Whether the arrow out of `i` is fixed, i.e. `xi_bar(i) = i^*`.
    pub fn arrow_fixed(&self, i: usize) -> bool {
        match (self.xi_bar(i), self.star(i)) {
            (Some(t), Some(s)) => t == s,
            _ => false,
        }
    }

    /// Cycles of `xi_bar`, each starting at its smallest vertex.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.spectrum.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let Some(arrows) = &self.arrows else { return out };
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cyc.push(v);
                v = arrows[v].to;
            }
            out.push(cyc);
        }
        out
    }

    pub fn check_invariants(&self) -> Result<(), QuiverError> {
        let n = self.spectrum.len();
        if let Some(arrows) = &self.arrows {
            let mut indeg = vec![0; n];
            for a in arrows {
                indeg[a.to] += 1;
            }
            if indeg.iter().any(|&d| d != 1) {
                return Err(QuiverError::Invariant("xi_bar is not a permutation".into()));
            }
        }
        if let Some(star) = &self.vertex_star {
            if (0..n).any(|i| star[star[i]] != i) {
                return Err(QuiverError::Invariant("vertex involution is not involutive".into()));
            }
            if let (Some(arrows), Some(astar)) = (&self.arrows, &self.arrow_star) {
                for i in 0..n {
                    let j = astar[i];
                    if astar[j] != i || arrows[j].from != star[arrows[i].to] || arrows[j].to != star[i] {
                        return Err(QuiverError::Invariant("arrow involution does not reverse arrows".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Nm(xi) * b`, `sigma(gamma/b)` and friends on orbit representatives.
pub fn build_quiver(spectrum: &CenterSpectrum, vp: &ValidatedParams) -> Result<InvolutiveQuiver, QuiverError> {
    let p = &vp.params;
    let n = spectrum.len();
    let nm_xi = p.norm_xi();
    let arrows = if vp.xi_admissible {
        let mut out = Vec::with_capacity(n);
        for (i, v) in spectrum.vertices.iter().enumerate() {
            let img = nm_xi.mul(&v.b_value);
            let to = spectrum.find(&img).ok_or_else(|| QuiverError::XiBarIllDefined(v.id.clone()))?;
            out.push(Arrow { from: i, to });
        }
        Some(out)
    } else {
        None
    };

    let mut q = InvolutiveQuiver {
        spectrum: spectrum.clone(),
        arrows,
        vertex_star: None,
        arrow_star: None,
        sigma_c_fixed: vec![false; n],
        sigma_cxi_fixed: vec![false; n],
    };
    if p.mode == Mode::Linear {
        q.check_invariants()?;
        return Ok(q);
    }

    let gamma = p.gamma().expect("validated polarized params carry gamma");
    let mut star = Vec::with_capacity(n);
    for v in &spectrum.vertices {
        let img = p.sigma_k(&gamma.div(&v.b_value).expect("roots are units"));
        star.push(spectrum.find(&img).ok_or_else(|| QuiverError::InvolutionIllDefined(v.id.clone()))?);
    }
    let sigma_trivial = p.sigma_k_trivial();
    let gamma_xi = gamma.div(&nm_xi).expect("units");
    for (i, v) in spectrum.vertices.iter().enumerate() {
        let b = &v.b_value;
        q.sigma_c_fixed[i] = star[i] == i && sigma_trivial && same(&gamma.div(b), b);
    }
    q.vertex_star = Some(star.clone());
    if let Some(arrows) = &q.arrows {
        let astar: Vec<usize> = (0..n).map(|i| star[arrows[i].to]).collect();
        for (i, v) in spectrum.vertices.iter().enumerate() {
            let b = &v.b_value;
            q.sigma_cxi_fixed[i] =
                arrows[i].to == star[i] && sigma_trivial && same(&gamma_xi.div(b), b);
        }
        q.arrow_star = Some(astar);
    }
    q.check_invariants()?;
    Ok(q)
}

fn same(a: &Option<KScalar>, b: &KScalar) -> bool {
    a.as_ref() == Some(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeKind {
    CC,
    VV,
    VE,
    EE,
    /// A plain cycle of the linear quiver.
    Cycle,
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ShapeKind::CC => "CC",
            ShapeKind::VV => "VV",
            ShapeKind::VE => "VE",
            ShapeKind::EE => "EE",
            ShapeKind::Cycle => "cycle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentShape {
    pub kind: ShapeKind,
    pub ell: usize,
    /// `(label, vertex index)` in the diagram conventions: `0`, `1`, ...,
    /// with starred partners written `1*`.
    pub labels: Vec<(String, usize)>,
    pub vertices: Vec<usize>,
    pub fixed_vertices: Vec<usize>,
    /// Sources of the fixed arrows.
    pub fixed_arrows: Vec<usize>,
    pub flags: Vec<String>,
}

impl ComponentShape {
    pub fn name(&self) -> String {
        format!("{}-{}", self.kind, self.ell)
    }
}

pub const VE0_FLAG: &str = "single star-fixed vertex with a self-loop recorded as VE-0";

pub fn classify_components(q: &InvolutiveQuiver) -> Result<Vec<ComponentShape>, QuiverError> {
    let cycles = q.cycles();
    let Some(star) = &q.vertex_star else {
        return Ok(cycles
            .into_iter()
            .map(|c| ComponentShape {
                kind: ShapeKind::Cycle,
                ell: c.len(),
                labels: c.iter().enumerate().map(|(j, &v)| ((j + 1).to_string(), v)).collect(),
                vertices: c,
                fixed_vertices: vec![],
                fixed_arrows: vec![],
                flags: vec![],
            })
            .collect());
    };
    let xb = |v: usize| q.xi_bar(v).expect("arrows present");
    let mut cycle_of = vec![usize::MAX; q.spectrum.len()];
    for (ci, c) in cycles.iter().enumerate() {
        for &v in c {
            cycle_of[v] = ci;
        }
    }
    let mut done = vec![false; cycles.len()];
    let mut out = Vec::new();
    for (ci, c) in cycles.iter().enumerate() {
        if done[ci] {
            continue;
        }
        done[ci] = true;
        let mirror = cycle_of[star[c[0]]];
        if mirror != ci {
            done[mirror] = true;
            let mut all: Vec<usize> = c.iter().chain(&cycles[mirror]).copied().collect();
            all.sort();
            let first = all[0];
            let ell = c.len();
            let mut labels = Vec::new();
            let mut v = first;
            for j in 1..=ell {
                labels.push((j.to_string(), v));
                v = xb(v);
            }
            let starred: Vec<(String, usize)> =
                labels.iter().map(|(l, v)| (format!("{l}*"), star[*v])).collect();
            labels.extend(starred);
            out.push(ComponentShape {
                kind: ShapeKind::CC,
                ell,
                labels,
                vertices: all,
                fixed_vertices: vec![],
                fixed_arrows: vec![],
                flags: vec![],
            });
            continue;
        }
        let mut verts = c.clone();
        verts.sort();
        let fixed_vertices: Vec<usize> = verts.iter().copied().filter(|&v| star[v] == v).collect();
        let fixed_arrows: Vec<usize> = verts.iter().copied().filter(|&v| q.arrow_fixed(v)).collect();
        let len = c.len();
        let mut flags = Vec::new();
        let (kind, ell, labels) = match (fixed_vertices.len(), fixed_arrows.len()) {
            (2, 0) => {
                let ell = len / 2;
                let mut labels = vec![("0".to_string(), fixed_vertices[0])];
                let mut v = fixed_vertices[0];
                for j in 1..=ell {
                    v = xb(v);
                    labels.push((j.to_string(), v));
                }
                for j in 1..ell {
                    let (_, lv) = labels[j].clone();
                    labels.push((format!("{j}*"), star[lv]));
                }
                (ShapeKind::VV, ell, labels)
            }
            (1, 1) => {
                let ell = (len - 1) / 2;
                if ell == 0 {
                    flags.push(VE0_FLAG.to_string());
                }
                let mut labels = vec![("0".to_string(), fixed_vertices[0])];
                let mut v = fixed_vertices[0];
                for j in 1..=ell {
                    v = xb(v);
                    labels.push((j.to_string(), v));
                }
                for j in 1..=ell {
                    let (_, lv) = labels[j].clone();
                    labels.push((format!("{j}*"), star[lv]));
                }
                (ShapeKind::VE, ell, labels)
            }
            (0, 2) => {
                let ell = len / 2;
                let first = fixed_arrows.iter().map(|&a| xb(a)).min().expect("two arrows");
                let mut labels = Vec::new();
                let mut v = first;
                for j in 1..=ell {
                    labels.push((j.to_string(), v));
                    v = xb(v);
                }
                let starred: Vec<(String, usize)> =
                    labels.iter().map(|(l, v)| (format!("{l}*"), star[*v])).collect();
                labels.extend(starred);
                (ShapeKind::EE, ell, labels)
            }
            (fv, fa) => {
                return Err(QuiverError::Invariant(format!(
                    "star-stable cycle with {fv} fixed vertices and {fa} fixed arrows"
                )))
            }
        };
        let mut labelled: Vec<usize> = labels.iter().map(|(_, v)| *v).collect();
        labelled.sort();
        labelled.dedup();
        if labelled != verts {
            return Err(QuiverError::Invariant(format!("labels do not cover the {kind} component")));
        }
        out.push(ComponentShape { kind, ell, labels, vertices: verts, fixed_vertices, fixed_arrows, flags });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, CyclotomicNumber};
    use crate::setup::{
        validate_params, EtaleAlgebra, FElem, FScalar, GroundRegime, Presentation, RegimeKind,
        SetupParams, SigmaKind,
    };
    use crate::spectrum::split_center;

    fn nf1(order: u32, m: u32, beta: (i64, i64), c: (i64, i64), xi: (i64, i64)) -> SetupParams {
        let root = |(p, q): (i64, i64)| CyclotomicNumber::root_of_unity(order, &rat(p, q)).unwrap();
        SetupParams {
            regime: GroundRegime { kind: RegimeKind::Numberfield, order, n: 1, sigma: SigmaKind::Identity },
            presentation: Presentation::Field,
            m,
            mode: Mode::Polarized,
            epsilon: 1,
            beta: KScalar::Cyclo(root(beta)),
            c: Some(FScalar::Cyclo(FElem(vec![root(c)]))),
            gamma: None,
            xi: FScalar::Cyclo(FElem(vec![root(xi)])),
        }
    }

    fn quiver(p: &SetupParams) -> InvolutiveQuiver {
        let vp = validate_params(p).unwrap();
        build_quiver(&split_center(p).unwrap(), &vp).unwrap()
    }

    #[test]
    fn ve1_quiver() {
        let q = quiver(&nf1(3, 3, (0, 1), (0, 1), (1, 3)));
        // vertices sorted as 1, z3, z3^2
        assert_eq!(q.arrows.as_ref().unwrap().iter().map(|a| a.to).collect::<Vec<_>>(), vec![1, 2, 0]);
        assert_eq!(q.vertex_star.as_ref().unwrap(), &vec![0, 2, 1]);
        let shapes = classify_components(&q).unwrap();
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].name(), "VE-1");
        assert_eq!(shapes[0].fixed_vertices, vec![0]);
        assert_eq!(shapes[0].fixed_arrows, vec![1]);
        assert!(q.sigma_c_fixed[0]);
        assert!(q.sigma_cxi_fixed[1]);
    }

    #[test]
    fn trivial_norm_gives_self_loops() {
        let q = quiver(&nf1(3, 3, (0, 1), (0, 1), (0, 1)));
        assert!(q.arrows.as_ref().unwrap().iter().all(|a| a.from == a.to));
    }

    #[test]
    fn cc1_quiver() {
        let q = quiver(&nf1(4, 2, (0, 1), (1, 2), (0, 1)));
        assert_eq!(q.vertex_star.as_ref().unwrap(), &vec![1, 0]);
        let shapes = classify_components(&q).unwrap();
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].name(), "CC-1");
    }

    #[test]
    fn ee1_quiver() {
        let q = quiver(&nf1(4, 2, (1, 2), (0, 1), (1, 2)));
        let shapes = classify_components(&q).unwrap();
        assert_eq!(shapes[0].name(), "EE-1");
        assert_eq!(shapes[0].fixed_arrows, vec![0, 1]);
    }

    #[test]
    fn ve0_is_flagged() {
        let q = quiver(&nf1(4, 1, (0, 1), (0, 1), (0, 1)));
        let shapes = classify_components(&q).unwrap();
        assert_eq!(shapes[0].name(), "VE-0");
        assert_eq!(shapes[0].flags, vec![VE0_FLAG.to_string()]);
    }

    #[test]
    fn linear_mode_has_no_involution() {
        let mut p = nf1(3, 3, (0, 1), (0, 1), (1, 3));
        p.mode = Mode::Linear;
        p.c = None;
        let q = quiver(&p);
        assert!(q.vertex_star.is_none());
        let shapes = classify_components(&q).unwrap();
        assert_eq!(shapes[0].kind, ShapeKind::Cycle);
        let _ = EtaleAlgebra { order: 3, presentation: Presentation::Field, sigma: SigmaKind::Identity };
    }
}
