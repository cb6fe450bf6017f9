use std::collections::HashMap;

use super::{build_tube, build_twisted_tube, Subcat, TubeAlgebra, TubeError};
use crate::fusion_core::{build_crossed_extension, crossed_label_index, Action, Category};
use crate::C64;

/// Comparison of the G-twisted tube algebra of `D₀` with the relative tube
/// algebra `Tube(D₀ ⊂ D₀ ⋊ G)` under the basis bijection
/// `(σ,π,ρ,c,i,j) ↦ ((g⁻¹,σ), π, (g⁻¹,ρ), (g⁻¹,c), i, j)`.
#[derive(Clone, Debug)]
pub struct IsoReport {
    /// Per group element `g`: (twisted dim at `g`, relative dim at `g⁻¹`).
    pub dims: Vec<(usize, usize)>,
    pub bijective: bool,
    pub structure: f64,
    pub star: f64,
    pub trace: f64,
}

impl IsoReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.bijective && self.structure <= tol && self.star <= tol && self.trace <= tol
    }

    pub fn max_deviation(&self) -> f64 {
        self.structure.max(self.star).max(self.trace)
    }
}

/// Builds both algebras and compares them.
pub fn twisted_untwisted_iso(d0: &Category, action: &Action) -> Result<IsoReport, TubeError> {
    let twisted = build_twisted_tube(d0, action)?;
    let crossed = build_crossed_extension(&d0.forget_grading(), action)
        .map_err(|e| TubeError::Action(e.to_string()))?;
    let relative = build_tube(&crossed, &Subcat::Degree0)?;
    Ok(compare(&twisted, &relative, d0.rank()))
}

/// Compares a twisted tube with the relative tube of its crossed extension.
pub fn compare(twisted: &TubeAlgebra, relative: &TubeAlgebra, rank0: usize) -> IsoReport {
    let grp = &twisted.group;
    let lab = |g: usize, a: usize| crossed_label_index(grp, rank0, g, a);
    let mut rep = IsoReport { dims: vec![], bijective: true, structure: 0.0, star: 0.0, trace: 0.0 };
    for (ci, comp) in twisted.components.iter().enumerate() {
        let gi = grp.inv(comp.grade);
        let Some(rci) = relative.component_of_grade(gi) else {
            rep.bijective = false;
            continue;
        };
        let rcomp = &relative.components[rci];
        rep.dims.push((comp.dim(), rcomp.dim()));
        if comp.dim() != rcomp.dim() {
            rep.bijective = false;
            continue;
        }
        let index: HashMap<_, usize> = relative.basis[rcomp.range.clone()]
            .iter()
            .enumerate()
            .map(|(k, b)| ((b.sigma, b.pi, b.rho, b.c, b.i, b.j), k))
            .collect();
        let mut phi = Vec::with_capacity(comp.dim());
        for b in &twisted.basis[comp.range.clone()] {
            let key = (lab(gi, b.sigma), lab(grp.neutral(), b.pi), lab(gi, b.rho), lab(gi, b.c), b.i, b.j);
            match index.get(&key) {
                Some(&k) => phi.push(k),
                None => {
                    rep.bijective = false;
                    break;
                }
            }
        }
        if !rep.bijective {
            continue;
        }
        let n = comp.dim();
        let (kt, kr) = (&twisted.consts[ci], &relative.consts[rci]);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let a = kt[(i * n + j) * n + l];
                    let b = kr[(phi[i] * n + phi[j]) * n + phi[l]];
                    rep.structure = rep.structure.max((a - b).norm());
                }
            }
        }
        for i in 0..n {
            let mut s_t = vec![C64::new(0.0, 0.0); n];
            for &(k, v) in &twisted.star[comp.range.start + i] {
                s_t[k] = v;
            }
            let mut s_r = vec![C64::new(0.0, 0.0); n];
            for &(k, v) in &relative.star[rcomp.range.start + phi[i]] {
                s_r[k] = v;
            }
            for k in 0..n {
                rep.star = rep.star.max((s_t[k] - s_r[phi[k]]).norm());
            }
            let tt = twisted.trace[comp.range.start + i];
            let tr = relative.trace[rcomp.range.start + phi[i]];
            rep.trace = rep.trace.max((tt - tr).norm());
        }
    }
    rep
}
