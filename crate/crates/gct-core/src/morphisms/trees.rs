use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::fusion_core::Category;
use crate::linalg::{eye, zeros, CMat};

/// A tensor word `π₁π₂…πₙ` of simple labels.
pub type Word = Vec<usize>;

/// A finite direct sum of words.
pub type Obj = Vec<Word>;

/// A left-nested fusion tree of a word of length `n`: the labels and
/// multiplicity indices of levels `2..=n`, the last label being the root.
pub type Tree = Vec<(usize, usize)>;

/// Drops unit letters; the empty word becomes `[0]`.
pub fn normalize(w: &[usize]) -> Word {
    let v: Word = w.iter().copied().filter(|&x| x != 0).collect();
    if v.is_empty() {
        vec![0]
    } else {
        v
    }
}

pub fn concat(a: &[usize], b: &[usize]) -> Word {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    normalize(&v)
}

/// `X ⊗ Y` with the words of `X` as the outer (slow) index.
pub fn obj_tensor(x: &Obj, y: &Obj) -> Obj {
    x.iter().flat_map(|a| y.iter().map(move |b| concat(a, b))).collect()
}

pub fn word_obj(w: &[usize]) -> Obj {
    vec![normalize(w)]
}

/// Single-letter object.
pub fn simple(a: usize) -> Obj {
    vec![vec![a]]
}

/// Object `⊕ a` over the given labels.
pub fn sum_of(labels: &[usize]) -> Obj {
    labels.iter().map(|&a| vec![a]).collect()
}

/// Skeletal intertwiner calculus over one category, with memoized tree
/// bases and re-association matrices.
pub struct Morphisms<'a> {
    pub cat: &'a Category,
    trees: RefCell<HashMap<(usize, Word), Rc<Vec<Tree>>>>,
    umats: RefCell<HashMap<(usize, Word, usize), Rc<CMat>>>,
    pub(crate) conj: RefCell<HashMap<usize, Rc<(super::HomBlock, super::HomBlock)>>>,
}

impl<'a> Morphisms<'a> {
    pub fn new(cat: &'a Category) -> Self {
        Morphisms {
            cat,
            trees: RefCell::new(HashMap::new()),
            umats: RefCell::new(HashMap::new()),
            conj: RefCell::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.cat.rank()
    }

    /// Tree basis of `Hom(c, w)` for a normalized word: intermediate label
    /// ascending, then subtree, then multiplicity.
    pub fn trees(&self, c: usize, w: &[usize]) -> Rc<Vec<Tree>> {
        let key = (c, w.to_vec());
        if let Some(t) = self.trees.borrow().get(&key) {
            return t.clone();
        }
        let mut out = Vec::new();
        let n = w.len();
        if n == 1 {
            if w[0] == c {
                out.push(vec![]);
            }
        } else {
            let last = w[n - 1];
            for e in 0..self.rank() {
                let m = self.cat.n(e, last, c);
                if m == 0 {
                    continue;
                }
                for t in self.trees(e, &w[..n - 1]).iter() {
                    for mu in 0..m {
                        let mut t2 = t.clone();
                        t2.push((c, mu));
                        out.push(t2);
                    }
                }
            }
        }
        let rc = Rc::new(out);
        self.trees.borrow_mut().insert(key, rc.clone());
        rc
    }

    /// `dim Hom(c, w)`.
    pub fn hom_dim(&self, c: usize, w: &[usize]) -> usize {
        self.trees(c, &normalize(w)).len()
    }

    /// `dim Hom(c, X)`.
    pub fn obj_dim(&self, c: usize, x: &Obj) -> usize {
        x.iter().map(|w| self.hom_dim(c, w)).sum()
    }

    /// Offsets of each word of `x` inside the channel-`c` basis.
    pub fn offsets(&self, c: usize, x: &Obj) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(x.len() + 1);
        for w in x {
            out.push(acc);
            acc += self.hom_dim(c, w);
        }
        out.push(acc);
        out
    }

    /// Quantum dimension of an object.
    pub fn obj_qdim(&self, x: &Obj) -> f64 {
        x.iter().map(|w| w.iter().map(|&a| self.cat.qdim(a)).product::<f64>()).sum()
    }

    /// Multiplicity of each simple in `x`.
    pub fn multiplicities(&self, x: &Obj) -> Vec<usize> {
        (0..self.rank()).map(|c| self.obj_dim(c, x)).collect()
    }

    pub fn obj_dual(&self, x: &Obj) -> Obj {
        x.iter()
            .map(|w| normalize(&w.iter().rev().map(|&a| self.cat.dual(a)).collect::<Vec<_>>()))
            .collect()
    }

    /// Change of basis in `Hom(c, p⊗w)` from the split basis `(d, t, μ)`,
    /// `t ∈ Hom(d, w)` then `(p d) → c` with index `μ`, to the left-nested
    /// tree basis of `p w`. Columns are split vectors in tree coordinates.
    pub(crate) fn umat(&self, p: usize, w: &[usize], c: usize) -> Rc<CMat> {
        let key = (p, w.to_vec(), c);
        if let Some(u) = self.umats.borrow().get(&key) {
            return u.clone();
        }
        let u = self.build_umat(p, w, c);
        let rc = Rc::new(u);
        self.umats.borrow_mut().insert(key, rc.clone());
        rc
    }

    fn split_offsets(&self, p: usize, w: &[usize], c: usize) -> (Vec<usize>, usize) {
        let mut off = vec![0; self.rank()];
        let mut acc = 0;
        for d in 0..self.rank() {
            off[d] = acc;
            acc += self.hom_dim(d, w) * self.cat.n(p, d, c);
        }
        (off, acc)
    }

    fn build_umat(&self, p: usize, w: &[usize], c: usize) -> CMat {
        let (_, ncols) = self.split_offsets(p, w, c);
        let n = w.len();
        if n == 1 {
            return eye(ncols);
        }
        let r = self.rank();
        let prefix = &w[..n - 1];
        let last = w[n - 1];
        let pw = concat(&[p], w);
        let ppre = concat(&[p], prefix);
        let nrows = self.hom_dim(c, &pw);
        let mut u = zeros(nrows, ncols);
        let (split_off, _) = self.split_offsets(p, w, c);
        // Row offsets: rows ordered (e, tree'' of p·prefix in e, β).
        let mut row_off = vec![0; r];
        let mut acc = 0;
        for e in 0..r {
            row_off[e] = acc;
            acc += self.hom_dim(e, &ppre) * self.cat.n(e, last, c);
        }
        debug_assert_eq!(acc, nrows);
        // Offsets of e' blocks inside trees(d, w): ordered (e', t', ν).
        for e in 0..r {
            let nb = self.cat.n(e, last, c);
            if nb == 0 {
                continue;
            }
            let up = self.umat(p, prefix, e);
            let (pre_split_off, _) = self.split_offsets(p, prefix, e);
            let ntree2 = self.hom_dim(e, &ppre);
            for d in 0..r {
                let nmu = self.cat.n(p, d, c);
                if nmu == 0 {
                    continue;
                }
                let mut tw_off = 0;
                for e1 in 0..r {
                    let nnu = self.cat.n(e1, last, d);
                    let nt1 = self.hom_dim(e1, prefix);
                    if nnu == 0 || nt1 == 0 {
                        tw_off += nt1 * nnu;
                        continue;
                    }
                    let nal = self.cat.n(p, e1, e);
                    let Some(f) = self.cat.fmat(p, e1, last, c) else {
                        tw_off += nt1 * nnu;
                        continue;
                    };
                    for be in 0..nb {
                        for nu in 0..nnu {
                            for mu in 0..nmu {
                                for al in 0..nal {
                                    let (Some(i), Some(j)) =
                                        (f.row_index([e, al, be]), f.col_index([d, nu, mu]))
                                    else {
                                        continue;
                                    };
                                    let coef = f.m[(i, j)].conj();
                                    if coef.norm() == 0.0 {
                                        continue;
                                    }
                                    for t1 in 0..nt1 {
                                        let t = tw_off + t1 * nnu + nu;
                                        let col = split_off[d] + t * nmu + mu;
                                        let pcol = pre_split_off[e1] + t1 * nal + al;
                                        for t2 in 0..ntree2 {
                                            let row = row_off[e] + t2 * nb + be;
                                            u[(row, col)] += coef * up[(t2, pcol)];
                                        }
                                    }
                                }
                            }
                        }
                    }
                    tw_off += nt1 * nnu;
                }
            }
        }
        u
    }
}
