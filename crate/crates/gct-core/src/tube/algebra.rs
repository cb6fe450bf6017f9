use std::collections::HashMap;
use std::ops::Range;

use crate::fusion_core::{verify_action, Action, Category, Group};
use crate::linalg::{hermitian_eigen, rank, CMat};
use crate::morphisms::{normalize, HomBlock, Morphisms, Word};
use crate::{C64, DEFAULT_TOL};

use super::TubeError;

/// Which labels may run around the tube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subcat {
    /// Every label; the category is treated as trivially graded.
    All,
    /// The neutral-degree component `C₀`.
    Degree0,
    /// An explicit fusion subcategory of `C₀`.
    List(Vec<usize>),
}

impl Subcat {
    /// Parses `all`, `degree0` or a comma-separated list of label names or indices.
    pub fn parse(s: &str, cat: &Category) -> Result<Subcat, TubeError> {
        match s {
            "all" => Ok(Subcat::All),
            "degree0" => Ok(Subcat::Degree0),
            _ => {
                let mut v = Vec::new();
                for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let idx = cat
                        .label_index(tok)
                        .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < cat.rank()))
                        .ok_or_else(|| TubeError::Subcat(format!("unknown label '{tok}'")))?;
                    v.push(idx);
                }
                Ok(Subcat::List(v))
            }
        }
    }
}

/// One graded piece: basis `⟨σπ|X|t[π]ρ⟩` with `σ, ρ ∈ objects`,
/// `π ∈ tube_labels` and `X` a matrix unit of `Hom(σπ, t[π]ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub grade: usize,
    pub twist: usize,
    pub objects: Vec<usize>,
    pub tube_labels: Vec<usize>,
    pub range: Range<usize>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.range.len()
    }
}

/// Basis element: matrix unit `(c; i, j)` of `Hom(σπ, t[π]ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub comp: usize,
    pub sigma: usize,
    pub pi: usize,
    pub rho: usize,
    pub c: usize,
    pub i: usize,
    pub j: usize,
}

/// A finite-dimensional graded *-algebra with explicit structure constants.
#[derive(Clone, Debug)]
pub struct TubeAlgebra {
    pub cat: Category,
    pub action: Option<Action>,
    /// Grading group (the category's group, or the action's group when twisted).
    pub group: Group,
    pub twisted: bool,
    pub components: Vec<Component>,
    pub basis: Vec<BasisElement>,
    /// Per component, dense `c_{ij}^k` at `(i*n + j)*n + k` in local indices.
    pub consts: Vec<Vec<C64>>,
    /// `star(b_i) = Σ_k s_k b_k`, local indices per component.
    pub star: Vec<Vec<(usize, C64)>>,
    pub trace: Vec<C64>,
}

fn c0() -> C64 {
    C64::new(0.0, 0.0)
}

/// Relative tube algebra `Tube(C₀', C)` for a fusion subcategory `C₀' ⊂ C₀`.
pub fn build_tube(cat: &Category, subcat: &Subcat) -> Result<TubeAlgebra, TubeError> {
    let m = Morphisms::new(cat);
    let (group, specs): (Group, Vec<(usize, Vec<usize>, Vec<usize>)>) = match subcat {
        Subcat::All => (
            Group::trivial(),
            vec![(0, (0..cat.rank()).collect(), (0..cat.rank()).collect())],
        ),
        Subcat::Degree0 | Subcat::List(_) => {
            let labels = match subcat {
                Subcat::List(v) => {
                    let mut v = v.clone();
                    v.sort_unstable();
                    v.dedup();
                    v
                }
                _ => cat.degree_zero(),
            };
            check_subcat(cat, &labels)?;
            let specs = (0..cat.group.order())
                .map(|g| (g, cat.component(g), labels.clone()))
                .collect();
            (cat.group.clone(), specs)
        }
    };
    let specs = specs.into_iter().map(|(g, o, a)| (g, group.neutral(), o, a)).collect();
    assemble(&m, cat.clone(), None, group, false, specs)
}

/// G-twisted tube algebra of a trivially graded category with a strict action:
/// one component per `g`, basis `(σπ, g[π]ρ)` over all labels.
pub fn build_twisted_tube(d0: &Category, action: &Action) -> Result<TubeAlgebra, TubeError> {
    let rep = verify_action(d0, action, DEFAULT_TOL);
    if let Some(v) = rep.violation {
        return Err(TubeError::Action(v));
    }
    let d0 = d0.forget_grading();
    let m = Morphisms::new(&d0);
    let all: Vec<usize> = (0..d0.rank()).collect();
    let grp = action.group.clone();
    let specs = (0..grp.order()).map(|g| (g, g, all.clone(), all.clone())).collect();
    assemble(&m, d0.clone(), Some(action.clone()), grp, true, specs)
}

fn check_subcat(cat: &Category, labels: &[usize]) -> Result<(), TubeError> {
    if !labels.contains(&0) {
        return Err(TubeError::Subcat("subcategory must contain the unit".into()));
    }
    for &a in labels {
        if a >= cat.rank() {
            return Err(TubeError::Subcat(format!("label index {a} out of range")));
        }
        if cat.deg(a) != cat.group.neutral() {
            return Err(TubeError::Subcat(format!("{} is not of neutral degree", cat.label(a))));
        }
        if !labels.contains(&cat.dual(a)) {
            return Err(TubeError::Subcat(format!("not closed under duals at {}", cat.label(a))));
        }
        for &b in labels {
            for (c, _) in cat.fuse(a, b) {
                if !labels.contains(&c) {
                    return Err(TubeError::Subcat(format!(
                        "not closed under fusion: {} ⊗ {} contains {}",
                        cat.label(a),
                        cat.label(b),
                        cat.label(c)
                    )));
                }
            }
        }
    }
    Ok(())
}

struct Layout {
    /// `(σ, π, ρ) → (global start, src word, tgt word)`.
    blocks: HashMap<(usize, usize, usize), (usize, Word, Word)>,
}

fn tw(action: &Option<Action>, t: usize, a: usize) -> usize {
    match action {
        Some(act) => act.apply(t, a),
        None => a,
    }
}

fn assemble(
    m: &Morphisms,
    cat: Category,
    action: Option<Action>,
    group: Group,
    twisted: bool,
    specs: Vec<(usize, usize, Vec<usize>, Vec<usize>)>,
) -> Result<TubeAlgebra, TubeError> {
    let mut components = Vec::new();
    let mut basis = Vec::new();
    let mut layouts = Vec::new();
    for (ci, (grade, twist, objects, tube_labels)) in specs.into_iter().enumerate() {
        let start = basis.len();
        let mut blocks = HashMap::new();
        for &s in &objects {
            for &p in &tube_labels {
                for &r in &objects {
                    let src = normalize(&[s, p]);
                    let tgt = normalize(&[tw(&action, twist, p), r]);
                    let bstart = basis.len();
                    let mut any = false;
                    for c in 0..cat.rank() {
                        let (nr, nc) = (m.hom_dim(c, &tgt), m.hom_dim(c, &src));
                        for i in 0..nr {
                            for j in 0..nc {
                                any = true;
                                basis.push(BasisElement { comp: ci, sigma: s, pi: p, rho: r, c, i, j });
                            }
                        }
                    }
                    if any {
                        blocks.insert((s, p, r), (bstart, src, tgt));
                    }
                }
            }
        }
        components.push(Component { grade, twist, objects, tube_labels, range: start..basis.len() });
        layouts.push(Layout { blocks });
    }
    let mut tube = TubeAlgebra {
        cat,
        action,
        group,
        twisted,
        components,
        basis,
        consts: vec![],
        star: vec![],
        trace: vec![],
    };
    for ci in 0..tube.components.len() {
        let consts = products(m, &tube, ci, &layouts[ci])?;
        tube.consts.push(consts);
    }
    for idx in 0..tube.basis.len() {
        let s = star_of(m, &tube, idx, &layouts[tube.basis[idx].comp]);
        tube.star.push(s);
    }
    tube.trace = tube
        .basis
        .iter()
        .map(|b| {
            if b.pi == 0 && b.sigma == b.rho {
                C64::new(tube.cat.qdim(b.sigma), 0.0)
            } else {
                c0()
            }
        })
        .collect();
    for ci in 0..tube.components.len() {
        if tube.components[ci].dim() == 0 {
            continue;
        }
        let (vals, _) = hermitian_eigen(&tube.gram(ci));
        if !(vals[0] > 0.0) {
            return Err(TubeError::Internal(format!(
                "canonical trace not positive on component {ci} (min Gram eigenvalue {:.3e})",
                vals[0]
            )));
        }
    }
    Ok(tube)
}

impl TubeAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Component index of the given grade.
    pub fn component_of_grade(&self, g: usize) -> Option<usize> {
        self.components.iter().position(|c| c.grade == g)
    }

    pub fn twist_label(&self, t: usize, a: usize) -> usize {
        tw(&self.action, t, a)
    }

    /// Matrix unit of basis element `idx` as a morphism `σπ → t[π]ρ`.
    pub fn element_hom(&self, m: &Morphisms, idx: usize) -> HomBlock {
        let b = self.basis[idx];
        let t = self.components[b.comp].twist;
        let src = vec![normalize(&[b.sigma, b.pi])];
        let tgt = vec![normalize(&[self.twist_label(t, b.pi), b.rho])];
        let mut h = m.zero(&src, &tgt);
        h.ch[b.c][(b.i, b.j)] = C64::new(1.0, 0.0);
        h
    }

    /// Product of two local coordinate vectors of component `ci`.
    pub fn mul(&self, ci: usize, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.components[ci].dim();
        let k = &self.consts[ci];
        let mut out = vec![c0(); n];
        for i in 0..n {
            if x[i] == c0() {
                continue;
            }
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == c0() {
                    continue;
                }
                let base = (i * n + j) * n;
                for l in 0..n {
                    out[l] += xy * k[base + l];
                }
            }
        }
        out
    }

    /// Antilinear involution on local coordinates.
    pub fn star_vec(&self, ci: usize, x: &[C64]) -> Vec<C64> {
        let comp = &self.components[ci];
        let mut out = vec![c0(); comp.dim()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == c0() {
                continue;
            }
            for &(k, s) in &self.star[comp.range.start + i] {
                out[k] += xi.conj() * s;
            }
        }
        out
    }

    pub fn trace_vec(&self, ci: usize, x: &[C64]) -> C64 {
        let comp = &self.components[ci];
        x.iter().zip(&self.trace[comp.range.clone()]).map(|(a, b)| a * b).sum()
    }

    /// Unit of component `ci`: `Σ_σ ⟨σ 1| 1 |1 σ⟩`.
    pub fn unit(&self, ci: usize) -> Vec<C64> {
        let comp = &self.components[ci];
        let mut u = vec![c0(); comp.dim()];
        for (k, b) in self.basis[comp.range.clone()].iter().enumerate() {
            if b.pi == 0 && b.sigma == b.rho {
                u[k] = C64::new(1.0, 0.0);
            }
        }
        u
    }

    /// Local idempotent `p_σ = ⟨σ 1| 1 |1 σ⟩`.
    pub fn object_idempotent(&self, ci: usize, sigma: usize) -> Vec<C64> {
        let comp = &self.components[ci];
        let mut u = vec![c0(); comp.dim()];
        for (k, b) in self.basis[comp.range.clone()].iter().enumerate() {
            if b.pi == 0 && b.sigma == sigma && b.rho == sigma {
                u[k] = C64::new(1.0, 0.0);
            }
        }
        u
    }

    /// Left multiplication operator of `x` on component `ci`.
    pub fn left_mult(&self, ci: usize, x: &[C64]) -> CMat {
        let n = self.components[ci].dim();
        let k = &self.consts[ci];
        let mut l = CMat::zeros(n, n);
        for i in 0..n {
            if x[i] == c0() {
                continue;
            }
            for j in 0..n {
                let base = (i * n + j) * n;
                for r in 0..n {
                    l[(r, j)] += x[i] * k[base + r];
                }
            }
        }
        l
    }

    /// Gram matrix `G_ij = τ(b_i* b_j)` of component `ci`.
    pub fn gram(&self, ci: usize) -> CMat {
        let n = self.components[ci].dim();
        let mut g = CMat::zeros(n, n);
        let e = |i: usize| {
            let mut v = vec![c0(); n];
            v[i] = C64::new(1.0, 0.0);
            v
        };
        for i in 0..n {
            let si = self.star_vec(ci, &e(i));
            for j in 0..n {
                g[(i, j)] = self.trace_vec(ci, &self.mul(ci, &si, &e(j)));
            }
        }
        g
    }

    /// Product of basis elements from possibly different components; zero
    /// vector over the whole algebra when the grades differ.
    pub fn mul_global(&self, i: usize, j: usize) -> Vec<C64> {
        let (bi, bj) = (self.basis[i], self.basis[j]);
        let mut out = vec![c0(); self.dim()];
        if bi.comp != bj.comp {
            return out;
        }
        let comp = &self.components[bi.comp];
        let n = comp.dim();
        let (li, lj) = (i - comp.range.start, j - comp.range.start);
        for k in 0..n {
            out[comp.range.start + k] = self.consts[bi.comp][(li * n + lj) * n + k];
        }
        out
    }

    /// Dimension of the center of a component.
    pub fn center_dim(&self, ci: usize) -> usize {
        let n = self.components[ci].dim();
        if n == 0 {
            return 0;
        }
        let k = &self.consts[ci];
        let mut a = CMat::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    a[(i * n + l, j)] = k[(i * n + j) * n + l] - k[(j * n + i) * n + l];
                }
            }
        }
        n - rank(&a, 1e-9)
    }
}

/// Coordinates of a morphism `σξ → t[ξ]ρ` in the basis block `(σ, ξ, ρ)`.
fn coords(m: &Morphisms, lay: &Layout, comp_start: usize, key: (usize, usize, usize), h: &HomBlock, out: &mut [C64]) -> Result<(), TubeError> {
    let Some((start, _, _)) = lay.blocks.get(&key) else {
        if h.max_abs() > 1e-12 {
            return Err(TubeError::Internal(format!("product landed outside the basis at {key:?}")));
        }
        return Ok(());
    };
    let mut k = start - comp_start;
    for c in 0..m.rank() {
        let mc = &h.ch[c];
        for i in 0..mc.nrows() {
            for j in 0..mc.ncols() {
                out[k] += mc[(i, j)];
                k += 1;
            }
        }
    }
    Ok(())
}

fn products(m: &Morphisms, tube: &TubeAlgebra, ci: usize, lay: &Layout) -> Result<Vec<C64>, TubeError> {
    let comp = &tube.components[ci];
    let n = comp.dim();
    let t = comp.twist;
    let mut consts = vec![c0(); n * n * n];
    let mut keys: Vec<_> = lay.blocks.keys().copied().collect();
    keys.sort_unstable();
    let act = tube.action.as_ref();
    let alpha = |h: &HomBlock| match act {
        Some(a) => m.alpha(a, t, h),
        None => h.clone(),
    };
    for &(s, p, r) in &keys {
        let (st1, _, _) = lay.blocks[&(s, p, r)];
        let n1 = block_len(tube, ci, st1);
        let xs: Vec<HomBlock> = (0..n1).map(|a| tube.element_hom(m, st1 + a)).collect();
        for &(s2, p2, r2) in &keys {
            if s2 != r {
                continue;
            }
            let (st2, _, _) = lay.blocks[&(s2, p2, r2)];
            let n2 = block_len(tube, ci, st2);
            let ys: Vec<HomBlock> = (0..n2).map(|a| tube.element_hom(m, st2 + a)).collect();
            let tp = tube.twist_label(t, p);
            let xr: Vec<HomBlock> = xs.iter().map(|x| m.right_tensor(x, p2)).collect();
            let yl: Vec<HomBlock> = ys.iter().map(|y| m.left_tensor(tp, y)).collect();
            for &xi in &comp.tube_labels {
                for te in m.onb(xi, &[p, p2]) {
                    let pre = m.left_tensor(s, &te);
                    let post = m.right_tensor(&alpha(&te.adjoint()), r2);
                    for (a, xa) in xr.iter().enumerate() {
                        let left = xa.mul(&pre);
                        for (b, yb) in yl.iter().enumerate() {
                            let h = post.mul(&yb.mul(&left));
                            let i = st1 - comp.range.start + a;
                            let j = st2 - comp.range.start + b;
                            let base = (i * n + j) * n;
                            coords(m, lay, comp.range.start, (s, xi, r2), &h, &mut consts[base..base + n])?;
                        }
                    }
                }
            }
        }
    }
    Ok(consts)
}

fn block_len(tube: &TubeAlgebra, ci: usize, start: usize) -> usize {
    let b0 = tube.basis[start];
    tube.basis[start..tube.components[ci].range.end]
        .iter()
        .take_while(|b| b.sigma == b0.sigma && b.pi == b0.pi && b.rho == b0.rho)
        .count()
}

fn star_of(m: &Morphisms, tube: &TubeAlgebra, idx: usize, lay: &Layout) -> Vec<(usize, C64)> {
    let b = tube.basis[idx];
    let comp = &tube.components[b.comp];
    let t = comp.twist;
    let cat = &tube.cat;
    let (s, p, r) = (b.sigma, b.pi, b.rho);
    let pd = cat.dual(p);
    let tpd = tube.twist_label(t, pd);
    let x = tube.element_hom(m, idx);
    let rr = m.rr(p);
    let alpha_r = match &tube.action {
        Some(a) => m.alpha(a, t, &rr.0),
        None => rr.0.clone(),
    };
    let a1 = m.right_tensor_word(&alpha_r, &[r, pd]);
    let a2 = m.left_tensor(tpd, &m.right_tensor(&x.adjoint(), pd));
    let a3 = m.left_tensor(tpd, &m.left_tensor(s, &rr.1.adjoint()));
    let h = a3.mul(&a2).mul(&a1);
    let mut out = vec![c0(); comp.dim()];
    coords(m, lay, comp.range.start, (r, pd, s), &h, &mut out).expect("star stays in the basis");
    out.into_iter().enumerate().filter(|(_, v)| v.norm() > 1e-14).collect()
}
