use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CenterCtx, CenterError, HalfBraiding};
use crate::linalg::{hermitian_eigen, max_abs, CMat};
use crate::morphisms::{normalize, obj_tensor, sum_of, HomBlock, Obj};
use crate::tube::{TubeAlgebra, WedderburnData};
use crate::{C64, CLUSTER_GAP};

/// Simple center objects of one tube component, in block order.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub comp: usize,
    pub grade: usize,
    pub simples: Vec<HalfBraiding>,
    /// `max ‖Φ(b_i)Φ(b_j) − Σ c_ij^k Φ(b_k)‖` over the simples' tube modules.
    pub representation_residual: f64,
    /// `max ‖Φ_X(P_i) − δ 1‖` for the matched blocks.
    pub block_residual: f64,
}

impl<'a> CenterCtx<'a> {
    /// Induced object `⊕_ξ g[ξ]μξ̄` with
    /// `E(π) = Σ_{ξ,ζ} Σ_S α_g(S) ⊗ 1_μ ⊗ S̄*` over `S ∈ ONB(ξ, πζ)`,
    /// `S̄` the Frobenius transpose of `S`.
    pub fn induce(&self, mu: usize, grade: usize) -> HalfBraiding {
        let m = &self.m;
        let cat = self.cat();
        let obj: Obj = self
            .labels
            .iter()
            .map(|&xi| normalize(&[self.tw(grade, xi), mu, cat.dual(xi)]))
            .collect();
        let idm = m.identity(&vec![vec![mu]]);
        let mut e = Vec::with_capacity(self.labels.len());
        for &p in &self.labels {
            let src = obj_tensor(&obj, &vec![vec![p]]);
            let tgt = obj_tensor(&vec![vec![self.tw(grade, p)]], &obj);
            let mut big = m.zero(&src, &tgt);
            for (a, &xi) in self.labels.iter().enumerate() {
                for (b, &zeta) in self.labels.iter().enumerate() {
                    for s in m.onb(xi, &[p, zeta]) {
                        let sbar = m.frobenius_transpose(&s, &[xi], &[p], &[zeta]);
                        let block = m.tensor(&m.tensor(&self.alpha(grade, &s), &idm), &sbar.adjoint());
                        big = big.add(&m.embed(&block, &src, &[a], &tgt, &[b]));
                    }
                }
            }
            e.push(big);
        }
        HalfBraiding { grade, object: obj, e }
    }

    /// Splits a half-braiding into simple summands using the spectral
    /// projections of random Hermitian elements of its endomorphism algebra.
    pub fn split(&self, hb: &HalfBraiding, rng: &mut ChaCha8Rng) -> Result<Vec<HalfBraiding>, CenterError> {
        let m = &self.m;
        let end = self.hom_center(hb, hb);
        if end.dim == 0 {
            return Ok(vec![]);
        }
        if end.dim == 1 {
            return Ok(vec![self.canonical_form(hb)]);
        }
        for _ in 0..16 {
            let mut h = m.zero(&hb.object, &hb.object);
            for b in &end.basis {
                h = h.add(&b.scale(C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
            }
            let h = h.add(&h.adjoint()).scale(C64::new(0.5, 0.0));
            let mut spec: Vec<(f64, usize, usize)> = Vec::new();
            let mut vecs: Vec<CMat> = Vec::with_capacity(m.rank());
            for c in 0..m.rank() {
                let (vals, v) = hermitian_eigen(&h.ch[c]);
                spec.extend(vals.iter().enumerate().map(|(i, &x)| (x, c, i)));
                vecs.push(v);
            }
            spec.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
            let mut last = f64::NEG_INFINITY;
            for &(x, c, i) in &spec {
                if groups.is_empty() || x - last > CLUSTER_GAP {
                    groups.push(vec![]);
                }
                groups.last_mut().unwrap().push((c, i));
                last = x;
            }
            if groups.len() < 2 {
                continue;
            }
            let mut out = Vec::new();
            for g in &groups {
                let labels: Vec<usize> = g.iter().map(|&(c, _)| c).collect();
                let mut sorted = labels.clone();
                sorted.sort_unstable();
                let sub: Obj = sum_of(&sorted);
                let mut v = m.zero(&sub, &hb.object);
                for c in 0..m.rank() {
                    let cols: Vec<usize> = g.iter().filter(|&&(cc, _)| cc == c).map(|&(_, i)| i).collect();
                    for (k, &i) in cols.iter().enumerate() {
                        v.ch[c].set_column(k, &vecs[c].column(i));
                    }
                }
                let piece = self.restrict_along(hb, &v);
                out.extend(self.split(&piece, rng)?);
            }
            return Ok(out);
        }
        Err(CenterError::Extraction("no separating endomorphism found".into()))
    }

    /// Transport onto `⊕_c c^{n_c}` along the unitary that identifies the tree
    /// bases channel by channel.
    pub fn canonical_form(&self, hb: &HalfBraiding) -> HalfBraiding {
        let m = &self.m;
        let mult = m.multiplicities(&hb.object);
        let labels: Vec<usize> = mult.iter().enumerate().flat_map(|(c, &k)| std::iter::repeat_n(c, k)).collect();
        let target = sum_of(&labels);
        if target == hb.object {
            return hb.clone();
        }
        let mut v = m.zero(&target, &hb.object);
        for (c, &k) in mult.iter().enumerate() {
            v.ch[c] = CMat::identity(k, k);
        }
        self.restrict_along(hb, &v)
    }

    /// `E'(π) = g[π](V*) E(π) (V ⊗ 1)` for an isometry `V: X' → X`.
    pub fn restrict_along(&self, hb: &HalfBraiding, v: &HomBlock) -> HalfBraiding {
        let m = &self.m;
        let e = self
            .labels
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let gp = self.tw(hb.grade, p);
                m.left_tensor(gp, &v.adjoint()).mul(&hb.e[k]).mul(&m.right_tensor(v, p))
            })
            .collect();
        HalfBraiding { grade: hb.grade, object: v.src.clone(), e }
    }

    /// Tube module of a center object: `W = ⊕_ρ Hom(ρ, X)` over the objects of
    /// the component, with `⟨σπ|x|g[π]ρ⟩` acting `W_ρ → W_σ` by
    /// `v ↦ (1⊗R̄_π*)(E(π)*⊗1)(g[π](v)⊗1)(x⊗1)(1⊗R̄_π)`.
    pub fn tube_module(&self, tube: &TubeAlgebra, ci: usize, hb: &HalfBraiding) -> Result<Vec<CMat>, CenterError> {
        let m = &self.m;
        let comp = &tube.components[ci];
        let x = &hb.object;
        let mut off = vec![0usize];
        for &s in &comp.objects {
            off.push(off.last().unwrap() + m.obj_dim(s, x));
        }
        let w = *off.last().unwrap();
        let pos = |a: usize| comp.objects.iter().position(|&b| b == a).unwrap();
        let mut out = Vec::with_capacity(comp.dim());
        for idx in comp.range.clone() {
            let b = tube.basis[idx];
            let mut phi = CMat::zeros(w, w);
            let (s, p, r) = (b.sigma, b.pi, b.rho);
            let pd = self.cat().dual(p);
            let gp = tube.twist_label(comp.twist, p);
            let k = self.label_pos(p).ok_or_else(|| CenterError::MissingE(format!("label {p}")))?;
            let xh = tube.element_hom(m, idx);
            let rbar = m.rr(p).1.clone();
            let cup = m.left_tensor(s, &rbar);
            let step = m.right_tensor(&xh, pd).mul(&cup);
            let cap = m.left_tensor_obj(x, &rbar.adjoint());
            let ecap = m.right_tensor(&hb.e[k].adjoint(), pd);
            let (rs, rr) = (pos(s), pos(r));
            for j in 0..m.obj_dim(r, x) {
                let mut v = m.zero(&vec![vec![r]], x);
                v.ch[r][(j, 0)] = C64::new(1.0, 0.0);
                let lifted = m.right_tensor(&m.left_tensor(gp, &v), pd);
                let res = cap.mul(&ecap).mul(&lifted).mul(&step);
                for i in 0..m.obj_dim(s, x) {
                    phi[(off[rs] + i, off[rr] + j)] = res.ch[s][(i, 0)];
                }
            }
            out.push(phi);
        }
        Ok(out)
    }

    /// Extracts one simple half-braiding per Wedderburn block of the
    /// component, by splitting induced objects and matching each simple to
    /// the block whose central projection acts as the identity on it.
    pub fn extract_simples(&self, tube: &TubeAlgebra, wd: &WedderburnData, seed: u64) -> Result<Extraction, CenterError> {
        let ci = wd.comp;
        let comp = &tube.components[ci];
        let n = comp.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5851_F42D_4C95_7F2D).wrapping_add(ci as u64));
        let mut found: Vec<HalfBraiding> = Vec::new();
        for &rho in &comp.objects {
            if found.len() == wd.blocks.len() {
                break;
            }
            let ind = self.induce(rho, comp.grade);
            for s in self.split(&ind, &mut rng)? {
                if found.iter().all(|f| self.hom_center(f, &s).dim == 0) {
                    found.push(s);
                }
            }
        }
        if found.len() != wd.blocks.len() {
            return Err(CenterError::Extraction(format!(
                "component {ci}: {} simples for {} blocks",
                found.len(),
                wd.blocks.len()
            )));
        }
        let mut slots: Vec<Option<HalfBraiding>> = vec![None; found.len()];
        let mut rep_res: f64 = 0.0;
        let mut blk_res: f64 = 0.0;
        let k = &tube.consts[ci];
        for s in found {
            let phi = self.tube_module(tube, ci, &s)?;
            for i in 0..n {
                for j in 0..n {
                    let mut rhs = CMat::zeros(phi[0].nrows(), phi[0].ncols());
                    for l in 0..n {
                        let c = k[(i * n + j) * n + l];
                        if c != C64::new(0.0, 0.0) {
                            rhs += &phi[l] * c;
                        }
                    }
                    rep_res = rep_res.max(max_abs(&(&phi[i] * &phi[j] - rhs)));
                }
            }
            let eval = |v: &[C64]| {
                let mut acc = CMat::zeros(phi[0].nrows(), phi[0].ncols());
                for (l, &c) in v.iter().enumerate() {
                    if c != C64::new(0.0, 0.0) {
                        acc += &phi[l] * c;
                    }
                }
                acc
            };
            let w = phi[0].nrows();
            let id = CMat::identity(w, w);
            let mut hit = None;
            for (bi, b) in wd.blocks.iter().enumerate() {
                let p = eval(&b.projection);
                let to_id = max_abs(&(&p - &id));
                let to_zero = max_abs(&p);
                if to_id < 1e-6 {
                    hit = Some(bi);
                    blk_res = blk_res.max(to_id);
                } else {
                    blk_res = blk_res.max(to_zero);
                }
            }
            let bi = hit.ok_or_else(|| CenterError::Extraction(format!("component {ci}: simple matches no block")))?;
            if slots[bi].is_some() {
                return Err(CenterError::Extraction(format!("component {ci}: two simples on block {bi}")));
            }
            if w != wd.blocks[bi].rank {
                return Err(CenterError::Extraction(format!("component {ci}: module dimension differs from block rank")));
            }
            slots[bi] = Some(s);
        }
        Ok(Extraction {
            comp: ci,
            grade: comp.grade,
            simples: slots.into_iter().map(Option::unwrap).collect(),
            representation_residual: rep_res,
            block_residual: blk_res,
        })
    }
}
