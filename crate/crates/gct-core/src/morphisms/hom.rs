use std::ops::Range;

use super::trees::{concat, normalize, obj_tensor, Morphisms, Obj, Word};
use crate::fusion_core::Action;
use crate::linalg::{kron, max_abs, zeros, CMat};
use crate::C64;

/// A morphism `src → tgt` between direct sums of words, stored as one matrix
/// per simple channel `c`: `Hom(c, src) → Hom(c, tgt)` in the tree bases.
#[derive(Clone, Debug, PartialEq)]
pub struct HomBlock {
    pub src: Obj,
    pub tgt: Obj,
    pub ch: Vec<CMat>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum HomError {
    #[error("cannot compose: source {0:?} does not match target {1:?}")]
    Mismatch(Obj, Obj),
}

impl HomBlock {
    pub fn compose(&self, g: &HomBlock) -> Result<HomBlock, HomError> {
        if self.src != g.tgt {
            return Err(HomError::Mismatch(self.src.clone(), g.tgt.clone()));
        }
        Ok(self.mul(g))
    }

    /// `self ∘ g`; panics on mismatched objects.
    pub fn mul(&self, g: &HomBlock) -> HomBlock {
        assert_eq!(self.src, g.tgt, "composition of incompatible morphisms");
        HomBlock {
            src: g.src.clone(),
            tgt: self.tgt.clone(),
            ch: self.ch.iter().zip(&g.ch).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn adjoint(&self) -> HomBlock {
        HomBlock {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            ch: self.ch.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> HomBlock {
        HomBlock { src: self.src.clone(), tgt: self.tgt.clone(), ch: self.ch.iter().map(|m| m * s).collect() }
    }

    pub fn add(&self, o: &HomBlock) -> HomBlock {
        assert!(self.src == o.src && self.tgt == o.tgt, "adding morphisms of different type");
        HomBlock {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            ch: self.ch.iter().zip(&o.ch).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &HomBlock) -> HomBlock {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    /// Largest entry modulus over all channels.
    pub fn max_abs(&self) -> f64 {
        self.ch.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Max entry distance; infinity when the types differ.
    pub fn dist(&self, o: &HomBlock) -> f64 {
        if self.src != o.src || self.tgt != o.tgt {
            return f64::INFINITY;
        }
        self.ch.iter().zip(&o.ch).map(|(a, b)| max_abs(&(a - b))).fold(0.0, f64::max)
    }

    /// Frobenius norm per channel.
    pub fn channel_norms(&self) -> Vec<f64> {
        self.ch.iter().map(|m| m.norm()).collect()
    }

    /// Unitarity defect; infinity if some channel is not square.
    pub fn unitarity_defect(&self) -> f64 {
        self.ch.iter().map(crate::linalg::unitarity_defect).fold(0.0, f64::max)
    }

    pub fn is_square(&self) -> bool {
        self.ch.iter().all(|m| m.nrows() == m.ncols())
    }

    /// Scalar of a morphism between single-channel objects such as `(c, c)`.
    pub fn scalar(&self, c: usize) -> C64 {
        self.ch[c][(0, 0)]
    }
}

impl<'a> Morphisms<'a> {
    pub fn zero(&self, src: &Obj, tgt: &Obj) -> HomBlock {
        let ch = (0..self.rank()).map(|c| zeros(self.obj_dim(c, tgt), self.obj_dim(c, src))).collect();
        HomBlock { src: src.clone(), tgt: tgt.clone(), ch }
    }

    pub fn identity(&self, x: &Obj) -> HomBlock {
        let ch = (0..self.rank())
            .map(|c| {
                let n = self.obj_dim(c, x);
                CMat::identity(n, n)
            })
            .collect();
        HomBlock { src: x.clone(), tgt: x.clone(), ch }
    }

    /// Scalar `s` times the identity of the simple `c`.
    pub fn scalar_on(&self, c: usize, s: C64) -> HomBlock {
        self.identity(&vec![vec![c]]).scale(s)
    }

    /// Element of `Hom(c, w)` given by one tree-basis vector.
    pub fn tree_vector(&self, c: usize, w: &Word, idx: usize) -> HomBlock {
        let w = normalize(w);
        let mut h = self.zero(&vec![vec![c]], &vec![w]);
        h.ch[c][(idx, 0)] = C64::new(1.0, 0.0);
        h
    }

    /// Range of word `i` of `x` inside channel `c`.
    pub fn word_range(&self, c: usize, x: &Obj, i: usize) -> Range<usize> {
        let start: usize = x[..i].iter().map(|w| self.hom_dim(c, w)).sum();
        start..start + self.hom_dim(c, &x[i])
    }

    /// Places `m` into a morphism `big_src → big_tgt`; word `i` of `m.src`
    /// goes to word `src_idx[i]` of `big_src`, likewise for targets.
    pub fn embed(
        &self,
        m: &HomBlock,
        big_src: &Obj,
        src_idx: &[usize],
        big_tgt: &Obj,
        tgt_idx: &[usize],
    ) -> HomBlock {
        let mut out = self.zero(big_src, big_tgt);
        for c in 0..self.rank() {
            for (k, &tk) in tgt_idx.iter().enumerate() {
                let rs = self.word_range(c, &m.tgt, k);
                let rb = self.word_range(c, big_tgt, tk);
                debug_assert_eq!(rs.len(), rb.len());
                for (i, &si) in src_idx.iter().enumerate() {
                    let cs = self.word_range(c, &m.src, i);
                    let cb = self.word_range(c, big_src, si);
                    debug_assert_eq!(cs.len(), cb.len());
                    if rs.is_empty() || cs.is_empty() {
                        continue;
                    }
                    out.ch[c]
                        .view_mut((rb.start, cb.start), (rb.len(), cb.len()))
                        .copy_from(&m.ch[c].view((rs.start, cs.start), (rs.len(), cs.len())));
                }
            }
        }
        out
    }

    /// Sub-block of `m` between selected words of its source and target.
    pub fn restrict(&self, m: &HomBlock, src_idx: &[usize], tgt_idx: &[usize]) -> HomBlock {
        let src: Obj = src_idx.iter().map(|&i| m.src[i].clone()).collect();
        let tgt: Obj = tgt_idx.iter().map(|&i| m.tgt[i].clone()).collect();
        let mut out = self.zero(&src, &tgt);
        for c in 0..self.rank() {
            for (k, &tk) in tgt_idx.iter().enumerate() {
                let rb = self.word_range(c, &m.tgt, tk);
                let rs = self.word_range(c, &tgt, k);
                for (i, &si) in src_idx.iter().enumerate() {
                    let cb = self.word_range(c, &m.src, si);
                    let cs = self.word_range(c, &src, i);
                    if rs.is_empty() || cs.is_empty() {
                        continue;
                    }
                    out.ch[c]
                        .view_mut((rs.start, cs.start), (rs.len(), cs.len()))
                        .copy_from(&m.ch[c].view((rb.start, cb.start), (rb.len(), cb.len())));
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, parts: &[HomBlock]) -> HomBlock {
        let src: Obj = parts.iter().flat_map(|p| p.src.iter().cloned()).collect();
        let tgt: Obj = parts.iter().flat_map(|p| p.tgt.iter().cloned()).collect();
        let mut out = self.zero(&src, &tgt);
        let (mut so, mut to) = (0, 0);
        for p in parts {
            let si: Vec<usize> = (so..so + p.src.len()).collect();
            let ti: Vec<usize> = (to..to + p.tgt.len()).collect();
            out = out.add(&self.embed(p, &src, &si, &tgt, &ti));
            so += p.src.len();
            to += p.tgt.len();
        }
        out
    }

    /// `π(T) = 1_π ⊗ T`.
    pub fn left_tensor(&self, p: usize, t: &HomBlock) -> HomBlock {
        if p == 0 {
            return t.clone();
        }
        let src: Obj = t.src.iter().map(|w| concat(&[p], w)).collect();
        let tgt: Obj = t.tgt.iter().map(|w| concat(&[p], w)).collect();
        let r = self.rank();
        let mut ch = Vec::with_capacity(r);
        for c in 0..r {
            let us = self.u_obj(p, &t.src, c);
            let ut = self.u_obj(p, &t.tgt, c);
            let mut b = zeros(ut.ncols(), us.ncols());
            let (mut ro, mut co) = (0, 0);
            for d in 0..r {
                let m = self.cat.n(p, d, c);
                let (nt, ns) = (t.ch[d].nrows(), t.ch[d].ncols());
                if m > 0 && nt > 0 && ns > 0 {
                    b.view_mut((ro, co), (nt * m, ns * m))
                        .copy_from(&kron(&t.ch[d], &CMat::identity(m, m)));
                }
                ro += nt * m;
                co += ns * m;
            }
            ch.push(&ut * b * us.adjoint());
        }
        HomBlock { src, tgt, ch }
    }

    /// Split-to-tree change of basis for a direct sum: rows are the trees of
    /// each word `p w_i`, columns `(d, t, μ)` with `t` running over the
    /// concatenated basis of `Hom(d, X)`.
    fn u_obj(&self, p: usize, x: &Obj, c: usize) -> CMat {
        let r = self.rank();
        let rows: usize = x.iter().map(|w| self.hom_dim(c, &concat(&[p], w))).sum();
        let mut col_off = vec![0; r];
        let mut acc = 0;
        for d in 0..r {
            col_off[d] = acc;
            acc += self.obj_dim(d, x) * self.cat.n(p, d, c);
        }
        let mut u = zeros(rows, acc);
        let mut row0 = 0;
        for (i, w) in x.iter().enumerate() {
            let uw = self.umat(p, w, c);
            let mut wcol = 0;
            for d in 0..r {
                let m = self.cat.n(p, d, c);
                let nd = self.hom_dim(d, w);
                let tstart = self.word_range(d, x, i).start;
                for t in 0..nd {
                    for mu in 0..m {
                        let col = col_off[d] + (tstart + t) * m + mu;
                        for row in 0..uw.nrows() {
                            u[(row0 + row, col)] = uw[(row, wcol + t * m + mu)];
                        }
                    }
                }
                wcol += nd * m;
            }
            row0 += uw.nrows();
        }
        u
    }

    /// `T ⊗ 1_p`.
    pub fn right_tensor(&self, t: &HomBlock, p: usize) -> HomBlock {
        if p == 0 {
            return t.clone();
        }
        let src: Obj = t.src.iter().map(|w| concat(w, &[p])).collect();
        let tgt: Obj = t.tgt.iter().map(|w| concat(w, &[p])).collect();
        let r = self.rank();
        let mut ch = Vec::with_capacity(r);
        for c in 0..r {
            let ls = self.right_layout(&t.src, p, c);
            let lt = self.right_layout(&t.tgt, p, c);
            let mut m = zeros(lt.len(), ls.len());
            for (i, &(e, tt, mu)) in lt.iter().enumerate() {
                for (j, &(e2, ts, mu2)) in ls.iter().enumerate() {
                    if e == e2 && mu == mu2 {
                        m[(i, j)] = t.ch[e][(tt, ts)];
                    }
                }
            }
            ch.push(m);
        }
        HomBlock { src, tgt, ch }
    }

    /// For each basis vector of `Hom(c, X p)`: `(e, t, μ)` with `t` the
    /// global index in `Hom(e, X)`.
    fn right_layout(&self, x: &Obj, p: usize, c: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..x.len() {
            for e in 0..self.rank() {
                let m = self.cat.n(e, p, c);
                let range = self.word_range(e, x, i);
                for t in range {
                    for mu in 0..m {
                        out.push((e, t, mu));
                    }
                }
            }
        }
        out
    }

    /// `w(T)` for a word `w`.
    pub fn left_tensor_word(&self, w: &[usize], t: &HomBlock) -> HomBlock {
        w.iter().rev().fold(t.clone(), |acc, &p| self.left_tensor(p, &acc))
    }

    /// `T ⊗ 1_w`.
    pub fn right_tensor_word(&self, t: &HomBlock, w: &[usize]) -> HomBlock {
        w.iter().fold(t.clone(), |acc, &p| self.right_tensor(&acc, p))
    }

    /// `1_Z ⊗ T`, words of `Z` outer.
    pub fn left_tensor_obj(&self, z: &Obj, t: &HomBlock) -> HomBlock {
        let parts: Vec<HomBlock> = z.iter().map(|w| self.left_tensor_word(w, t)).collect();
        self.direct_sum(&parts)
    }

    /// `T ⊗ 1_Z`, words of `T`'s objects outer.
    pub fn right_tensor_obj(&self, t: &HomBlock, z: &Obj) -> HomBlock {
        let src = obj_tensor(&t.src, z);
        let tgt = obj_tensor(&t.tgt, z);
        let nz = z.len();
        let mut out = self.zero(&src, &tgt);
        for (j, w) in z.iter().enumerate() {
            let part = self.right_tensor_word(t, w);
            let si: Vec<usize> = (0..t.src.len()).map(|i| i * nz + j).collect();
            let ti: Vec<usize> = (0..t.tgt.len()).map(|i| i * nz + j).collect();
            out = out.add(&self.embed(&part, &src, &si, &tgt, &ti));
        }
        out
    }

    /// `S ⊗ T = (S ⊗ 1)(1 ⊗ T)`.
    pub fn tensor(&self, s: &HomBlock, t: &HomBlock) -> HomBlock {
        self.right_tensor_obj(s, &t.tgt).mul(&self.left_tensor_obj(&s.src, t))
    }

    /// Transport of a morphism along the strict action `α_g`.
    pub fn alpha(&self, act: &Action, g: usize, t: &HomBlock) -> HomBlock {
        if g == act.group.neutral() || act.is_trivial() {
            return t.clone();
        }
        let relabel = |x: &Obj| -> Obj {
            x.iter().map(|w| normalize(&w.iter().map(|&a| act.apply(g, a)).collect::<Vec<_>>())).collect()
        };
        let src = relabel(&t.src);
        let tgt = relabel(&t.tgt);
        let r = self.rank();
        let mut ch = vec![zeros(0, 0); r];
        for c in 0..r {
            let gc = act.apply(g, c);
            let ps = self.alpha_perm(act, g, &t.src, c);
            let pt = self.alpha_perm(act, g, &t.tgt, c);
            let mut m = zeros(pt.len(), ps.len());
            for (i, &ii) in pt.iter().enumerate() {
                for (j, &jj) in ps.iter().enumerate() {
                    m[(ii, jj)] = t.ch[c][(i, j)];
                }
            }
            ch[gc] = m;
        }
        HomBlock { src, tgt, ch }
    }

    /// Position of each channel-`c` basis vector of `x` in the channel-`g[c]`
    /// basis of `g[x]`.
    fn alpha_perm(&self, act: &Action, g: usize, x: &Obj, c: usize) -> Vec<usize> {
        let gc = act.apply(g, c);
        let mut out = Vec::new();
        let mut off = 0;
        for w in x {
            let gw: Word = w.iter().map(|&a| act.apply(g, a)).collect();
            let trees = self.trees(c, w);
            let gtrees = self.trees(gc, &gw);
            for t in trees.iter() {
                let gt: Vec<(usize, usize)> = t.iter().map(|&(l, m)| (act.apply(g, l), m)).collect();
                let pos = gtrees.iter().position(|x| *x == gt).expect("relabeled tree");
                out.push(off + pos);
            }
            off += gtrees.len();
        }
        out
    }
}
