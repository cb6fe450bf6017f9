use super::{CenterCtx, CenterError, HalfBraiding};
use crate::morphisms::{obj_tensor, HomBlock, Obj};

/// `k[X_i] ≅ X_j`: for each group element `k` and simple `i`, the index `j`
/// and a unitary center isomorphism `U: k[X_i] → X_j`.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub map: Vec<Vec<(usize, HomBlock)>>,
}

impl ActionTable {
    pub fn target(&self, k: usize, i: usize) -> usize {
        self.map[k][i].0
    }

    pub fn iso(&self, k: usize, i: usize) -> &HomBlock {
        &self.map[k][i].1
    }
}

/// `E(X_i, X_j) ∈ (X_i X_j, g_i[X_j] X_i)` for every pair of simples.
#[derive(Clone, Debug, PartialEq)]
pub struct GBraidingData {
    pub entries: Vec<Vec<HomBlock>>,
}

/// Maximal residual per axiom; `instances` counts the identities evaluated.
#[derive(Clone, Debug, Default)]
pub struct BraidingReport {
    pub bf0: f64,
    pub bf1: f64,
    pub bf2: f64,
    pub bf3: f64,
    pub instances: usize,
}

impl BraidingReport {
    pub fn max_residual(&self) -> f64 {
        self.bf0.max(self.bf1).max(self.bf2).max(self.bf3)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Intertwiners `T ∈ Hom_Z(W, X⊗Y)` for all simples `W`, indexed by `W`.
type Decomposition = Vec<Vec<HomBlock>>;

impl<'a> CenterCtx<'a> {
    /// Matches `k[X_i]` to the extracted simples for every `k`; without a
    /// twisting action only the neutral element acts.
    pub fn action_table(&self, simples: &[HalfBraiding]) -> Result<ActionTable, CenterError> {
        let ng = if self.twisted { self.group.order() } else { 1 };
        let mut map = Vec::with_capacity(ng);
        for k in 0..ng {
            let k = if self.twisted { k } else { self.group.neutral() };
            let mut row = Vec::with_capacity(simples.len());
            for (i, x) in simples.iter().enumerate() {
                if k == self.group.neutral() {
                    row.push((i, self.m.identity(&x.object)));
                    continue;
                }
                let kx = self.g_action(x, k)?;
                let hit = simples
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| y.grade == kx.grade)
                    .find_map(|(j, y)| self.unitary_iso(&kx, y).map(|u| (j, u)))
                    .ok_or_else(|| CenterError::Extraction(format!("transport of simple {i} matches no simple")))?;
                row.push(hit);
            }
            map.push(row);
        }
        Ok(ActionTable { map })
    }

    fn act_index(&self, k: usize) -> usize {
        if self.twisted {
            k
        } else {
            0
        }
    }

    /// `E(X_i, X_j) := E_{X_i}` evaluated on the object of `X_j`.
    /// Requires every simple to live over the braided labels.
    pub fn build_g_braiding(&self, simples: &[HalfBraiding]) -> Result<GBraidingData, CenterError> {
        for y in simples {
            if y.object.iter().flatten().any(|&a| a != 0 && self.label_pos(a).is_none()) {
                return Err(CenterError::Braiding("simples outside the braided subcategory".into()));
            }
        }
        let mut entries = Vec::with_capacity(simples.len());
        for x in simples {
            let row = simples.iter().map(|y| self.e_obj(x, &y.object)).collect::<Result<Vec<_>, _>>()?;
            entries.push(row);
        }
        Ok(GBraidingData { entries })
    }

    fn check_entries(&self, simples: &[HalfBraiding], data: &GBraidingData, reverse: bool) -> Result<(), CenterError> {
        let n = simples.len();
        if data.entries.len() != n || data.entries.iter().any(|r| r.len() != n) {
            return Err(CenterError::Braiding("missing entries".into()));
        }
        for (i, x) in simples.iter().enumerate() {
            for (j, y) in simples.iter().enumerate() {
                let e = &data.entries[i][j];
                let (src, tgt): (Obj, Obj) = if reverse {
                    let hi = self.group.inv(y.grade);
                    (obj_tensor(&x.object, &y.object), obj_tensor(&y.object, &self.tw_obj(hi, &x.object)))
                } else {
                    (obj_tensor(&x.object, &y.object), obj_tensor(&self.tw_obj(x.grade, &y.object), &x.object))
                };
                if e.src != src || e.tgt != tgt || e.ch.len() != self.m.rank() {
                    return Err(CenterError::Braiding(format!("entry ({i},{j}) has the wrong source or target")));
                }
                for (c, ch) in e.ch.iter().enumerate() {
                    if ch.nrows() != self.m.obj_dim(c, &tgt) || ch.ncols() != self.m.obj_dim(c, &src) {
                        return Err(CenterError::Braiding(format!("entry ({i},{j}) has a malformed channel")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Hom_Z(W, X_a ⊗ X_b)` for every simple `W`, for all pairs `(a, b)`.
    fn decompositions(&self, simples: &[HalfBraiding]) -> Result<Vec<Vec<Decomposition>>, CenterError> {
        let mut out = Vec::with_capacity(simples.len());
        for x in simples {
            let mut row = Vec::with_capacity(simples.len());
            for y in simples {
                let xy = self.tensor(x, y)?;
                row.push(simples.iter().map(|w| self.hom_center(w, &xy).basis).collect());
            }
            out.push(row);
        }
        Ok(out)
    }

    /// `E(X_a, k[X_c])` through the identification `U: k[X_c] → X_j`.
    fn e_on_transported(&self, data: &GBraidingData, simples: &[HalfBraiding], tab: &ActionTable, a: usize, k: usize, c: usize) -> HomBlock {
        let m = &self.m;
        let ki = self.act_index(k);
        let (j, u) = (tab.target(ki, c), tab.iso(ki, c));
        let x = &simples[a];
        let back = m.right_tensor_obj(&self.alpha(x.grade, &u.adjoint()), &x.object);
        back.mul(&data.entries[a][j]).mul(&m.left_tensor_obj(&x.object, u))
    }

    /// Residuals of the G-braiding axioms over all simples:
    /// BF0 shape and unitarity; BF1 `g[Y](E(X,Z))(E(X,Y)⊗1)X(T) = α_g(T)E(X,W)`;
    /// BF2 `(E(X,h[Z])⊗1)X(E(Y,Z))(T⊗1) = gh[Z](T)E(W,Z)`, both for
    /// `T ∈ Hom_Z(W, ··)`; BF3 `E(k[X],k[Y]) = α_k(E(X,Y))` up to the
    /// identifications of the action table.
    pub fn verify_g_braiding(&self, simples: &[HalfBraiding], data: &GBraidingData) -> Result<BraidingReport, CenterError> {
        self.check_entries(simples, data, false)?;
        let tab = self.action_table(simples)?;
        let dec = self.decompositions(simples)?;
        Ok(self.sweep_forward(simples, data, &tab, &dec))
    }

    /// Forward sweep, then the reverse braiding and its sweep, sharing the
    /// action table and the decompositions of all products.
    pub fn verify_both(&self, simples: &[HalfBraiding], data: &GBraidingData) -> Result<(BraidingReport, BraidingReport), CenterError> {
        self.check_entries(simples, data, false)?;
        let tab = self.action_table(simples)?;
        let dec = self.decompositions(simples)?;
        let fwd = self.sweep_forward(simples, data, &tab, &dec);
        let rev = self.reverse_with(simples, data, &tab);
        self.check_entries(simples, &rev, true)?;
        Ok((fwd, self.sweep_reverse(simples, &rev, &tab, &dec)))
    }

    fn sweep_forward(&self, simples: &[HalfBraiding], data: &GBraidingData, tab: &ActionTable, dec: &[Vec<Decomposition>]) -> BraidingReport {
        let m = &self.m;
        let n = simples.len();
        let mut rep = BraidingReport::default();
        for row in &data.entries {
            for e in row {
                rep.bf0 = rep.bf0.max(e.unitarity_defect());
                rep.instances += 1;
            }
        }
        for a in 0..n {
            let x = &simples[a];
            let g = x.grade;
            for b in 0..n {
                let y = &simples[b];
                let gy = self.tw_obj(g, &y.object);
                for c in 0..n {
                    let z = &simples[c];
                    let mult = m.left_tensor_obj(&gy, &data.entries[a][c]).mul(&m.right_tensor_obj(&data.entries[a][b], &z.object));
                    for (w, ts) in dec[b][c].iter().enumerate() {
                        for t in ts {
                            let lhs = mult.mul(&m.left_tensor_obj(&x.object, t));
                            let rhs = m.right_tensor_obj(&self.alpha(g, t), &x.object).mul(&data.entries[a][w]);
                            rep.bf1 = rep.bf1.max(lhs.dist(&rhs));
                            rep.instances += 1;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (&simples[a], &simples[b]);
                let h = y.grade;
                for c in 0..n {
                    let z = &simples[c];
                    let exhz = self.e_on_transported(data, simples, tab, a, h, c);
                    let composite = m
                        .right_tensor_obj(&exhz, &y.object)
                        .mul(&m.left_tensor_obj(&x.object, &data.entries[b][c]));
                    for (w, ts) in dec[a][b].iter().enumerate() {
                        let gw = simples[w].grade;
                        let gz = self.tw_obj(gw, &z.object);
                        for t in ts {
                            let lhs = composite.mul(&m.right_tensor_obj(t, &z.object));
                            let rhs = m.left_tensor_obj(&gz, t).mul(&data.entries[w][c]);
                            rep.bf2 = rep.bf2.max(lhs.dist(&rhs));
                            rep.instances += 1;
                        }
                    }
                }
            }
        }
        let ks: Vec<usize> = if self.twisted { (0..self.group.order()).collect() } else { vec![self.group.neutral()] };
        for &k in &ks {
            let ki = self.act_index(k);
            for a in 0..n {
                for b in 0..n {
                    let (a2, ua) = (tab.target(ki, a), tab.iso(ki, a));
                    let (b2, ub) = (tab.target(ki, b), tab.iso(ki, b));
                    let g2 = simples[a2].grade;
                    let lhs = data.entries[a2][b2].mul(&m.tensor(ua, ub));
                    let rhs = m.tensor(&self.alpha(g2, ub), ua).mul(&self.alpha(k, &data.entries[a][b]));
                    rep.bf3 = rep.bf3.max(lhs.dist(&rhs));
                    rep.instances += 1;
                }
            }
        }
        rep
    }

    /// `E⁻(X,Y) = E⁺(Y, h⁻¹[X])*` for `Y` of grade `h`, with `h⁻¹[X]`
    /// identified with an extracted simple through the action table.
    pub fn reverse_braiding(&self, simples: &[HalfBraiding], data: &GBraidingData) -> Result<GBraidingData, CenterError> {
        self.check_entries(simples, data, false)?;
        let tab = self.action_table(simples)?;
        Ok(self.reverse_with(simples, data, &tab))
    }

    fn reverse_with(&self, simples: &[HalfBraiding], data: &GBraidingData, tab: &ActionTable) -> GBraidingData {
        let n = simples.len();
        let mut entries = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let hi = self.group.inv(simples[b].grade);
                row.push(self.e_on_transported(data, simples, tab, b, hi, a).adjoint());
            }
            entries.push(row);
        }
        GBraidingData { entries }
    }

    /// `E⁻(k[X_c], Z)` through `U: k[X_c] → X_j`, landing in `Z l⁻¹[k[X_c]]`
    /// for `Z` of grade `l`.
    fn rev_on_transported(&self, rev: &GBraidingData, simples: &[HalfBraiding], tab: &ActionTable, k: usize, c: usize, z: usize) -> HomBlock {
        let m = &self.m;
        let ki = self.act_index(k);
        let (j, u) = (tab.target(ki, c), tab.iso(ki, c));
        let li = self.group.inv(simples[z].grade);
        let back = m.left_tensor_obj(&simples[z].object, &self.alpha(li, &u.adjoint()));
        back.mul(&rev.entries[j][z]).mul(&m.right_tensor_obj(u, &simples[z].object))
    }

    /// Reverse-axiom sweep for `E⁻ ∈ (XY, Y h⁻¹[X])`: shape and unitarity;
    /// `(T⊗1)E⁻(X,W) = (1⊗E⁻(h⁻¹[X],Z))(E⁻(X,Y)⊗1)X(T)` for `T: W → YZ`;
    /// `Z(l⁻¹[T])E⁻(W,Z) = (E⁻(X,Z)⊗1)X(E⁻(Y,Z))(T⊗1)` for `T: W → XY`.
    pub fn verify_reverse_braiding(&self, simples: &[HalfBraiding], rev: &GBraidingData) -> Result<BraidingReport, CenterError> {
        self.check_entries(simples, rev, true)?;
        let tab = self.action_table(simples)?;
        let dec = self.decompositions(simples)?;
        Ok(self.sweep_reverse(simples, rev, &tab, &dec))
    }

    fn sweep_reverse(&self, simples: &[HalfBraiding], rev: &GBraidingData, tab: &ActionTable, dec: &[Vec<Decomposition>]) -> BraidingReport {
        let m = &self.m;
        let n = simples.len();
        let mut rep = BraidingReport::default();
        for row in &rev.entries {
            for e in row {
                rep.bf0 = rep.bf0.max(e.unitarity_defect());
                rep.instances += 1;
            }
        }
        for a in 0..n {
            let x = &simples[a];
            for b in 0..n {
                let y = &simples[b];
                let hi = self.group.inv(y.grade);
                for c in 0..n {
                    let z = &simples[c];
                    let second = self.rev_on_transported(rev, simples, tab, hi, a, c);
                    let composite = m
                        .left_tensor_obj(&y.object, &second)
                        .mul(&m.right_tensor_obj(&rev.entries[a][b], &z.object));
                    for (w, ts) in dec[b][c].iter().enumerate() {
                        let wi = self.group.inv(simples[w].grade);
                        let xw = self.tw_obj(wi, &x.object);
                        for t in ts {
                            let lhs = m.right_tensor_obj(t, &xw).mul(&rev.entries[a][w]);
                            let rhs = composite.mul(&m.left_tensor_obj(&x.object, t));
                            rep.bf1 = rep.bf1.max(lhs.dist(&rhs));
                            rep.instances += 1;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (&simples[a], &simples[b]);
                for c in 0..n {
                    let z = &simples[c];
                    let li = self.group.inv(z.grade);
                    let ly = self.tw_obj(li, &y.object);
                    let composite = m
                        .right_tensor_obj(&rev.entries[a][c], &ly)
                        .mul(&m.left_tensor_obj(&x.object, &rev.entries[b][c]));
                    for (w, ts) in dec[a][b].iter().enumerate() {
                        for t in ts {
                            let lhs = m.left_tensor_obj(&z.object, &self.alpha(li, t)).mul(&rev.entries[w][c]);
                            let rhs = composite.mul(&m.right_tensor_obj(t, &z.object));
                            rep.bf2 = rep.bf2.max(lhs.dist(&rhs));
                            rep.instances += 1;
                        }
                    }
                }
            }
        }
        rep
    }
}
