use std::rc::Rc;

use super::hom::HomBlock;
use super::trees::{concat, normalize, obj_tensor, Morphisms, Obj, Word};
use crate::C64;

/// Normalized solution of the conjugate equations for a simple label.
#[derive(Clone, Debug)]
pub struct ConjugateSolution {
    pub label: usize,
    /// `R ∈ (1, ā a)`.
    pub r: HomBlock,
    /// `R̄ ∈ (1, a ā)`.
    pub rbar: HomBlock,
    /// Frobenius–Schur indicator `R̄ / R` for self-dual labels.
    pub fs_indicator: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConjError {
    #[error("no unit channel in {0} ⊗ dual: corrupted N or dual data")]
    NoUnitChannel(String),
}

#[derive(Clone, Copy, Debug)]
pub struct ConjugateResiduals {
    /// `|R*R - d|` and `|R̄*R̄ - d|`.
    pub norm: f64,
    /// Both zig-zag identities.
    pub zigzag: f64,
}

fn c1(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl<'a> Morphisms<'a> {
    fn zigzag_left(&self, a: usize, r: &HomBlock, rbar: &HomBlock) -> HomBlock {
        // (R̄* ⊗ 1_a) a(R) on a.
        self.right_tensor(&rbar.adjoint(), a).mul(&self.left_tensor(a, r))
    }

    fn zigzag_right(&self, a: usize, r: &HomBlock, rbar: &HomBlock) -> HomBlock {
        // (R* ⊗ 1_ā) ā(R̄) on ā.
        let ad = self.cat.dual(a);
        self.right_tensor(&r.adjoint(), ad).mul(&self.left_tensor(ad, rbar))
    }

    fn unit_vector(&self, w: Word, s: C64) -> HomBlock {
        let mut h = self.zero(&vec![vec![0]], &vec![w]);
        h.ch[0][(0, 0)] = s;
        h
    }

    /// `(R_a, R̄_a)` with `R_a = √d(a)` on the unit channel for `a ≤ ā` and
    /// `R_ā = R̄_a`, `R̄_ā = R_a` otherwise.
    pub fn rr(&self, a: usize) -> Rc<(HomBlock, HomBlock)> {
        if let Some(x) = self.conj.borrow().get(&a) {
            return x.clone();
        }
        let pair = self.solve_conjugate(a).expect("conjugate solution for a validated category");
        let rc = Rc::new((pair.r, pair.rbar));
        self.conj.borrow_mut().insert(a, rc.clone());
        rc
    }

    pub fn conjugate_solution(&self, a: usize) -> Result<ConjugateSolution, ConjError> {
        self.solve_conjugate(a)
    }

    fn solve_conjugate(&self, a: usize) -> Result<ConjugateSolution, ConjError> {
        let ad = self.cat.dual(a);
        if a == 0 {
            let one = self.identity(&vec![vec![0]]);
            return Ok(ConjugateSolution { label: 0, r: one.clone(), rbar: one, fs_indicator: Some(1.0) });
        }
        if ad < a {
            let s = self.solve_conjugate(ad)?;
            return Ok(ConjugateSolution { label: a, r: s.rbar, rbar: s.r, fs_indicator: None });
        }
        let name = self.cat.label(a).to_string();
        if self.hom_dim(0, &[ad, a]) != 1 || self.hom_dim(0, &[a, ad]) != 1 {
            return Err(ConjError::NoUnitChannel(name));
        }
        let d = self.cat.qdim(a);
        let r = self.unit_vector(vec![ad, a], c1(d.sqrt()));
        let probe = self.unit_vector(vec![a, ad], c1(1.0));
        let z = self.zigzag_left(a, &r, &probe).scalar(a);
        if z.norm() < 1e-12 {
            return Err(ConjError::NoUnitChannel(name));
        }
        let rbar = self.unit_vector(vec![a, ad], c1(1.0) / z.conj());
        let fs = (a == ad).then(|| {
            let k = rbar.ch[0][(0, 0)] / r.ch[0][(0, 0)];
            k.re
        });
        Ok(ConjugateSolution { label: a, r, rbar, fs_indicator: fs })
    }

    pub fn conjugate_residuals(&self, s: &ConjugateSolution) -> ConjugateResiduals {
        let a = s.label;
        let ad = self.cat.dual(a);
        let d = self.cat.qdim(a);
        let n1 = (s.r.adjoint().mul(&s.r).scalar(0) - c1(d)).norm();
        let n2 = (s.rbar.adjoint().mul(&s.rbar).scalar(0) - c1(d)).norm();
        let z1 = self.zigzag_left(a, &s.r, &s.rbar).dist(&self.identity(&vec![vec![a]]));
        let z2 = self.zigzag_right(a, &s.r, &s.rbar).dist(&self.identity(&vec![vec![ad]]));
        ConjugateResiduals { norm: n1.max(n2), zigzag: z1.max(z2) }
    }

    pub fn word_dual(&self, w: &[usize]) -> Word {
        normalize(&w.iter().rev().map(|&a| self.cat.dual(a)).collect::<Vec<_>>())
    }

    /// `(R_w, R̄_w)` for a word via `R_{uv} = v̄(R_u) R_v`,
    /// `R̄_{uv} = u(R̄_v) R̄_u`.
    pub fn rr_word(&self, w: &[usize]) -> (HomBlock, HomBlock) {
        let w = normalize(w);
        if w.len() == 1 {
            let p = self.rr(w[0]);
            return (p.0.clone(), p.1.clone());
        }
        let n = w.len();
        let u = &w[..n - 1];
        let v = w[n - 1];
        let (ru, rbu) = self.rr_word(u);
        let rv = self.rr(v);
        let vd = self.cat.dual(v);
        let r = self.right_tensor(&self.left_tensor(vd, &ru), v).mul(&rv.0);
        let ud = self.word_dual(u);
        let rbar = self.right_tensor_word(&self.left_tensor_word(u, &rv.1), &ud).mul(&rbu);
        (r, rbar)
    }

    /// `(R_X, R̄_X)` for a direct sum, summing the diagonal word pairs.
    pub fn rr_obj(&self, x: &Obj) -> (HomBlock, HomBlock) {
        let xd = self.obj_dual(x);
        let unit: Obj = vec![vec![0]];
        let dx = obj_tensor(&xd, x);
        let xdx = obj_tensor(x, &xd);
        let n = x.len();
        let mut r = self.zero(&unit, &dx);
        let mut rb = self.zero(&unit, &xdx);
        for (i, w) in x.iter().enumerate() {
            let (ri, rbi) = self.rr_word(w);
            r = r.add(&self.embed(&ri, &unit, &[0], &dx, &[i * n + i]));
            rb = rb.add(&self.embed(&rbi, &unit, &[0], &xdx, &[i * n + i]));
        }
        (r, rb)
    }

    /// Frobenius reciprocity `(ζ, πξ) → (ξ̄, ζ̄π)`:
    /// `T̄ = √(d(ξ)/d(ζ)) ζ̄π(R̄_ξ*) (ζ̄(T) R_ζ ⊗ 1_ξ̄)`.
    pub fn frobenius_transpose(&self, t: &HomBlock, zeta: &[usize], pi: &[usize], xi: &[usize]) -> HomBlock {
        let zeta = normalize(zeta);
        let (rz, _) = self.rr_word(&zeta);
        let (_, rbx) = self.rr_word(xi);
        let zd = self.word_dual(&zeta);
        let xd = self.word_dual(xi);
        let d = |w: &[usize]| w.iter().map(|&a| self.cat.qdim(a)).product::<f64>();
        let bent = self.left_tensor_word(&zd, t).mul(&rz);
        let lhs = self.right_tensor_word(&bent, &xd);
        let zp = concat(&zd, pi);
        let cap = self.left_tensor_word(&zp, &rbx.adjoint());
        cap.mul(&lhs).scale(c1((d(xi) / d(&zeta)).sqrt()))
    }

    /// Inverse of [`Self::frobenius_transpose`]:
    /// `T = √(d(ζ)/d(ξ)) (R̄_ζ* ⊗ 1_{πξ}) (ζ(S) ⊗ 1_ξ) ζ(R_ξ)` for `S ∈ (ξ̄, ζ̄π)`.
    pub fn frobenius_untranspose(&self, s: &HomBlock, zeta: &[usize], pi: &[usize], xi: &[usize]) -> HomBlock {
        let zeta = normalize(zeta);
        let (rx, _) = self.rr_word(xi);
        let (_, rbz) = self.rr_word(&zeta);
        let d = |w: &[usize]| w.iter().map(|&a| self.cat.qdim(a)).product::<f64>();
        let step1 = self.left_tensor_word(&zeta, &rx);
        let step2 = self.right_tensor_word(&self.left_tensor_word(&zeta, s), xi);
        let pxi = concat(pi, xi);
        let step3 = self.right_tensor_word(&rbz.adjoint(), &pxi);
        step3.mul(&step2).mul(&step1).scale(c1((d(&zeta) / d(xi)).sqrt()))
    }

    /// `T̂ = R_σ* σ̄(T*) σ̄(R̄_σ')` for `T ∈ (σ, σ')`; conjugate-linear with
    /// `(ST)^ = Ŝ T̂`.
    pub fn hat(&self, t: &HomBlock) -> HomBlock {
        let (rs, _) = self.rr_obj(&t.src);
        let (_, rbs2) = self.rr_obj(&t.tgt);
        let sd = self.obj_dual(&t.src);
        let s2d = self.obj_dual(&t.tgt);
        let a = self.left_tensor_obj(&sd, &rbs2);
        let b = self.right_tensor_obj(&self.left_tensor_obj(&sd, &t.adjoint()), &s2d);
        let c = self.right_tensor_obj(&rs.adjoint(), &s2d);
        c.mul(&b).mul(&a)
    }

    /// Tree-basis orthonormal basis of `Hom(c, w)`.
    pub fn onb(&self, c: usize, w: &[usize]) -> Vec<HomBlock> {
        let w = normalize(w);
        (0..self.hom_dim(c, &w)).map(|i| self.tree_vector(c, &w, i)).collect()
    }

    /// Orthonormal basis of `Hom(c, X)` for a direct sum.
    pub fn onb_obj(&self, c: usize, x: &Obj) -> Vec<HomBlock> {
        let src: Obj = vec![vec![c]];
        (0..self.obj_dim(c, x))
            .map(|i| {
                let mut h = self.zero(&src, x);
                h.ch[c][(i, 0)] = c1(1.0);
                h
            })
            .collect()
    }
}
