use super::CenterError;
use crate::fusion_core::{Action, Category, Group};
use crate::linalg::{nullspace, CMat};
use crate::morphisms::{normalize, obj_tensor, HomBlock, Morphisms, Obj, Word};
use crate::tube::TubeAlgebra;
use crate::C64;

/// Category context for half-braidings: the labels `π` braided against,
/// and the strict action twisting the target when working in a G-center.
pub struct CenterCtx<'a> {
    pub m: Morphisms<'a>,
    pub labels: Vec<usize>,
    pub action: Option<Action>,
    pub group: Group,
    pub twisted: bool,
}

/// A (g-)half-braiding: `E(π) ∈ (Xπ, g[π]X)` for each braided label `π`.
/// Without twisting `g[π] = π` and `grade` is the degree of `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfBraiding {
    pub grade: usize,
    pub object: Obj,
    /// Indexed like `CenterCtx::labels`.
    pub e: Vec<HomBlock>,
}

#[derive(Clone, Debug, Default)]
pub struct HalfBraidingReport {
    /// `max ‖g[ξ](E(π))(E(ξ)⊗1)X(T) − α_g(T)E(η)‖`.
    pub naturality: f64,
    pub unitarity: f64,
    /// `‖E(1) − 1‖`.
    pub unit: f64,
    pub shape_error: Option<String>,
}

impl HalfBraidingReport {
    pub fn max_residual(&self) -> f64 {
        if self.shape_error.is_some() {
            return f64::INFINITY;
        }
        self.naturality.max(self.unitarity).max(self.unit)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Solution space of the intertwiner constraint `E_Y(π)(T⊗1) = g[π](T)E_X(π)`.
#[derive(Clone, Debug)]
pub struct HomCenter {
    pub dim: usize,
    pub basis: Vec<HomBlock>,
}

impl<'a> CenterCtx<'a> {
    pub fn new(cat: &'a Category, labels: Vec<usize>, action: Option<Action>, group: Group, twisted: bool) -> Self {
        CenterCtx { m: Morphisms::new(cat), labels, action, group, twisted }
    }

    /// Context matching a tube algebra: its braided labels, action and grading group.
    pub fn from_tube(t: &'a TubeAlgebra) -> Self {
        let labels = t.components.first().map(|c| c.tube_labels.clone()).unwrap_or_default();
        CenterCtx::new(&t.cat, labels, t.action.clone(), t.group.clone(), t.twisted)
    }

    pub fn cat(&self) -> &Category {
        self.m.cat
    }

    /// `g[a]`; the identity unless twisted.
    pub fn tw(&self, g: usize, a: usize) -> usize {
        match (&self.action, self.twisted) {
            (Some(act), true) => act.apply(g, a),
            _ => a,
        }
    }

    pub fn tw_word(&self, g: usize, w: &[usize]) -> Word {
        normalize(&w.iter().map(|&a| self.tw(g, a)).collect::<Vec<_>>())
    }

    pub fn tw_obj(&self, g: usize, x: &Obj) -> Obj {
        x.iter().map(|w| self.tw_word(g, w)).collect()
    }

    /// `α_g(T)`; the identity unless twisted.
    pub fn alpha(&self, g: usize, t: &HomBlock) -> HomBlock {
        match (&self.action, self.twisted) {
            (Some(act), true) => self.m.alpha(act, g, t),
            _ => t.clone(),
        }
    }

    pub fn label_pos(&self, a: usize) -> Option<usize> {
        self.labels.iter().position(|&x| x == a)
    }

    /// Grade of a center object built on `x`: its degree, or the twist.
    pub fn grade_of_object(&self, x: &Obj) -> usize {
        let cat = self.cat();
        let mut g = self.group.neutral();
        if let Some(w) = x.first() {
            for &a in w {
                g = self.group.mul(g, cat.deg(a));
            }
        }
        g
    }

    /// The trivial half-braiding on the unit object.
    pub fn unit_object(&self) -> HalfBraiding {
        let x: Obj = vec![vec![0]];
        let e = self.labels.iter().map(|&p| self.m.identity(&vec![vec![p]])).collect();
        HalfBraiding { grade: self.group.neutral(), object: x, e }
    }

    fn e_label<'b>(&self, hb: &'b HalfBraiding, p: usize) -> Result<&'b HomBlock, CenterError> {
        let k = self
            .label_pos(p)
            .ok_or_else(|| CenterError::MissingE(format!("{} is not a braided label", self.cat().label(p))))?;
        hb.e.get(k).ok_or_else(|| CenterError::MissingE(format!("E({}) missing", self.cat().label(p))))
    }

    /// `E(w)` on a word of braided labels, extended multiplicatively:
    /// `E(up) = g[u](E(p)) (E(u) ⊗ 1_p)`.
    pub fn e_word(&self, hb: &HalfBraiding, w: &[usize]) -> Result<HomBlock, CenterError> {
        let w = normalize(w);
        if w == [0] {
            return Ok(self.m.identity(&hb.object));
        }
        let n = w.len();
        let last = self.e_label(hb, w[n - 1])?.clone();
        if n == 1 {
            return Ok(last);
        }
        let head = self.e_word(hb, &w[..n - 1])?;
        let gu = self.tw_word(hb.grade, &w[..n - 1]);
        Ok(self.m.left_tensor_word(&gu, &last).mul(&self.m.right_tensor(&head, w[n - 1])))
    }

    /// `E(Y) ∈ (XY, g[Y]X)` on a direct sum of words.
    pub fn e_obj(&self, hb: &HalfBraiding, y: &Obj) -> Result<HomBlock, CenterError> {
        let x = &hb.object;
        let src = obj_tensor(x, y);
        let tgt = obj_tensor(&self.tw_obj(hb.grade, y), x);
        let mut out = self.m.zero(&src, &tgt);
        let (nx, ny) = (x.len(), y.len());
        for (j, w) in y.iter().enumerate() {
            let part = self.e_word(hb, w)?;
            let si: Vec<usize> = (0..nx).map(|i| i * ny + j).collect();
            let ti: Vec<usize> = (0..nx).map(|i| j * nx + i).collect();
            out = out.add(&self.m.embed(&part, &src, &si, &tgt, &ti));
        }
        Ok(out)
    }

    /// Residual of the combined half-braiding identity
    /// `T E(η) = ξ(E(π)) E(ξ) X(T)` over `T ∈ ONB(η, ξπ)`, plus unitarity.
    pub fn verify_half_braiding(&self, hb: &HalfBraiding) -> HalfBraidingReport {
        let mut rep = HalfBraidingReport::default();
        let m = &self.m;
        let x = &hb.object;
        if hb.e.len() != self.labels.len() {
            rep.shape_error = Some(format!("{} E-blocks for {} labels", hb.e.len(), self.labels.len()));
            return rep;
        }
        for (k, &p) in self.labels.iter().enumerate() {
            let want_src = obj_tensor(x, &vec![vec![p]]);
            let want_tgt = obj_tensor(&vec![vec![self.tw(hb.grade, p)]], x);
            let e = &hb.e[k];
            if e.src != want_src || e.tgt != want_tgt || e.ch.len() != m.rank() {
                rep.shape_error = Some(format!("E({}) has the wrong source or target", self.cat().label(p)));
                return rep;
            }
            for (c, ch) in e.ch.iter().enumerate() {
                if ch.nrows() != m.obj_dim(c, &e.tgt) || ch.ncols() != m.obj_dim(c, &e.src) {
                    rep.shape_error = Some(format!("E({}) has a malformed channel", self.cat().label(p)));
                    return rep;
                }
            }
            rep.unitarity = rep.unitarity.max(e.unitarity_defect());
        }
        if rep.unitarity.is_infinite() {
            rep.shape_error = Some("non-square block: no unitary E exists on this object".into());
            return rep;
        }
        if let Some(k0) = self.label_pos(0) {
            rep.unit = hb.e[k0].dist(&m.identity(&hb.e[k0].src));
        }
        for &xi in &self.labels {
            for &p in &self.labels {
                let Ok(exp) = self.e_word(hb, &[xi, p]) else {
                    rep.shape_error = Some("missing E".into());
                    return rep;
                };
                for &eta in &self.labels {
                    for t in m.onb(eta, &[xi, p]) {
                        let lhs = exp.mul(&m.left_tensor_obj(x, &t));
                        let eeta = &hb.e[self.label_pos(eta).unwrap()];
                        let rhs = m.right_tensor_obj(&self.alpha(hb.grade, &t), x).mul(eeta);
                        rep.naturality = rep.naturality.max(lhs.dist(&rhs));
                    }
                }
            }
        }
        rep
    }

    /// Morphisms of the center: zero across grades, otherwise
    /// `intertwiner_space`.
    pub fn hom_center(&self, x: &HalfBraiding, y: &HalfBraiding) -> HomCenter {
        if x.grade != y.grade {
            return HomCenter { dim: 0, basis: vec![] };
        }
        self.intertwiner_space(x, y)
    }

    /// Solutions `T ∈ Hom(X, Y)` of `E_Y(π)(T⊗1) = g[π](T)E_X(π)`, with no
    /// grade condition imposed. When the twists differ at some `π`, both
    /// sides must vanish there.
    pub fn intertwiner_space(&self, x: &HalfBraiding, y: &HalfBraiding) -> HomCenter {
        let m = &self.m;
        let r = m.rank();
        let mut unknowns = Vec::new();
        for c in 0..r {
            for i in 0..m.obj_dim(c, &y.object) {
                for j in 0..m.obj_dim(c, &x.object) {
                    unknowns.push((c, i, j));
                }
            }
        }
        if unknowns.is_empty() {
            return HomCenter { dim: 0, basis: vec![] };
        }
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(unknowns.len());
        for &(c, i, j) in &unknowns {
            let mut t = m.zero(&x.object, &y.object);
            t.ch[c][(i, j)] = C64::new(1.0, 0.0);
            let mut col = Vec::new();
            for (k, &p) in self.labels.iter().enumerate() {
                let lhs = y.e[k].mul(&m.right_tensor(&t, p));
                let (gx, gy) = (self.tw(x.grade, p), self.tw(y.grade, p));
                if gx == gy {
                    let rhs = m.left_tensor(gy, &t).mul(&x.e[k]);
                    flatten_into(&lhs.sub(&rhs), &mut col);
                } else {
                    let rhs = m.left_tensor(gx, &t).mul(&x.e[k]);
                    flatten_into(&lhs, &mut col);
                    flatten_into(&rhs, &mut col);
                }
            }
            cols.push(col);
        }
        let rows = cols[0].len();
        let mut a = CMat::zeros(rows.max(1), unknowns.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                a[(i, j)] = *v;
            }
        }
        let ns = nullspace(&a, 1e-8);
        let basis = (0..ns.ncols())
            .map(|k| {
                let mut t = m.zero(&x.object, &y.object);
                for (u, &(c, i, j)) in unknowns.iter().enumerate() {
                    t.ch[c][(i, j)] = ns[(u, k)];
                }
                t
            })
            .collect::<Vec<_>>();
        HomCenter { dim: basis.len(), basis }
    }

    /// A unitary center isomorphism `X → Y` between simple objects, if any.
    pub fn unitary_iso(&self, x: &HalfBraiding, y: &HalfBraiding) -> Option<HomBlock> {
        let h = self.hom_center(x, y);
        if h.dim != 1 {
            return None;
        }
        let t = &h.basis[0];
        let tt = t.adjoint().mul(t);
        let c = (0..self.m.rank()).find(|&c| tt.ch[c].nrows() > 0)?;
        let lam = tt.ch[c][(0, 0)].re;
        (lam > 1e-12).then(|| t.scale(C64::new(1.0 / lam.sqrt(), 0.0)))
    }

    /// `E_X̄(π) = (R_X* ⊗ 1)(X̄(E_X(g⁻¹[π])*) ⊗ 1_X̄) X̄π(R̄_X)`, of grade `g⁻¹`.
    pub fn conjugate(&self, hb: &HalfBraiding) -> Result<HalfBraiding, CenterError> {
        let m = &self.m;
        let x = &hb.object;
        let xd = m.obj_dual(x);
        let (r, rbar) = m.rr_obj(x);
        let gi = self.group.inv(hb.grade);
        let mut e = Vec::with_capacity(self.labels.len());
        for &p in &self.labels {
            let q = self.tw(gi, p);
            let eq = self.e_label(hb, q)?;
            let xdp = obj_tensor(&xd, &vec![vec![p]]);
            let a = m.left_tensor_obj(&xdp, &rbar);
            let b = m.right_tensor_obj(&m.left_tensor_obj(&xd, &eq.adjoint()), &xd);
            let c = m.right_tensor_obj(&r.adjoint(), &obj_tensor(&vec![vec![q]], &xd));
            e.push(c.mul(&b).mul(&a));
        }
        Ok(HalfBraiding { grade: gi, object: xd, e })
    }

    /// `E_{XY}(π) = (E_X(h[π]) ⊗ 1_Y)(1_X ⊗ E_Y(π))`, of grade `gh`.
    pub fn tensor(&self, x: &HalfBraiding, y: &HalfBraiding) -> Result<HalfBraiding, CenterError> {
        let m = &self.m;
        let mut e = Vec::with_capacity(self.labels.len());
        for (k, &p) in self.labels.iter().enumerate() {
            let hp = self.tw(y.grade, p);
            let a = m.left_tensor_obj(&x.object, &y.e[k]);
            let b = m.right_tensor_obj(self.e_label(x, hp)?, &y.object);
            e.push(b.mul(&a));
        }
        Ok(HalfBraiding { grade: self.group.mul(x.grade, y.grade), object: obj_tensor(&x.object, &y.object), e })
    }

    /// `k[E](π) = α_k(E(k⁻¹[π]))`, of grade `kgk⁻¹`.
    pub fn g_action(&self, hb: &HalfBraiding, k: usize) -> Result<HalfBraiding, CenterError> {
        let act = self.action.as_ref().ok_or(CenterError::NoAction)?;
        if !self.twisted {
            return Err(CenterError::NoAction);
        }
        let mut e = Vec::with_capacity(self.labels.len());
        for &p in &self.labels {
            let q = act.apply_inv(k, p);
            e.push(self.m.alpha(act, k, self.e_label(hb, q)?));
        }
        Ok(HalfBraiding { grade: self.group.conj(k, hb.grade), object: self.tw_obj(k, &hb.object), e })
    }

    /// Transport along a unitary `U: X → X'`: `E'(π) = g[π](U) E(π) (U* ⊗ 1)`.
    pub fn transport(&self, hb: &HalfBraiding, u: &HomBlock) -> HalfBraiding {
        let m = &self.m;
        let e = self
            .labels
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let gp = self.tw(hb.grade, p);
                m.left_tensor(gp, u).mul(&hb.e[k]).mul(&m.right_tensor(&u.adjoint(), p))
            })
            .collect();
        HalfBraiding { grade: hb.grade, object: u.tgt.clone(), e }
    }

    /// Direct sum of half-braidings of one grade.
    pub fn direct_sum(&self, parts: &[HalfBraiding]) -> HalfBraiding {
        let object: Obj = parts.iter().flat_map(|p| p.object.iter().cloned()).collect();
        let e = (0..self.labels.len())
            .map(|k| self.m.direct_sum(&parts.iter().map(|p| p.e[k].clone()).collect::<Vec<_>>()))
            .collect();
        HalfBraiding { grade: parts.first().map_or(self.group.neutral(), |p| p.grade), object, e }
    }

    /// Multiplicity of each simple label in the object.
    pub fn multiplicities(&self, hb: &HalfBraiding) -> Vec<usize> {
        self.m.multiplicities(&hb.object)
    }

    pub fn qdim(&self, hb: &HalfBraiding) -> f64 {
        self.m.obj_qdim(&hb.object)
    }
}

pub(crate) fn flatten_into(h: &HomBlock, out: &mut Vec<C64>) {
    for ch in &h.ch {
        out.extend(ch.iter().copied());
    }
}
