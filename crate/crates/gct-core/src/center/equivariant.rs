use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::half_braiding::flatten_into;
use super::{ActionTable, CenterCtx, CenterError, HalfBraiding};
use crate::linalg::{hermitian_eigen, nullspace, CMat};
use crate::morphisms::{sum_of, HomBlock, Obj};
use crate::{C64, CLUSTER_GAP};

/// A center object `X` with unitary center morphisms `c_g: X → g[X]`,
/// indexed by group element.
#[derive(Clone, Debug)]
pub struct EquivariantObject {
    pub base: HalfBraiding,
    pub cocycle: Vec<HomBlock>,
}

#[derive(Clone, Debug, Default)]
pub struct EquivariantReport {
    /// `max ‖E_{g[X]}(π)(c_g⊗1) − g[π](c_g)E_X(π)‖`.
    pub intertwining: f64,
    /// `max ‖α_g(c_h)c_g − c_{gh}‖`.
    pub cocycle: f64,
    pub unitarity: f64,
    /// Worst of the three residuals above for the conjugate object.
    pub conjugate: f64,
}

impl EquivariantReport {
    pub fn max_residual(&self) -> f64 {
        self.intertwining.max(self.cocycle).max(self.unitarity).max(self.conjugate)
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// One orbit of the action on simples.
#[derive(Clone, Debug)]
pub struct OrbitInfo {
    pub members: Vec<usize>,
    pub stabilizer: Vec<usize>,
    /// Number of irreducible representations of the stabilizer.
    pub irreps: usize,
    /// Distinct equivariant simples in the regular object of the representative.
    pub regular_simples: Option<usize>,
    /// Multiplicity of each of them.
    pub regular_multiplicities: Option<Vec<usize>>,
}

/// Equivariant simple count by orbits and stabilizers. The orbit formula
/// assumes that all stabilizer obstructions vanish.
#[derive(Clone, Debug)]
pub struct EquivariantCount {
    pub count: usize,
    /// Total over orbits of the regular-object decompositions, if available.
    pub regular_count: Option<usize>,
    pub orbits: Vec<OrbitInfo>,
    pub assumes_trivial_obstruction: bool,
}

impl<'a> CenterCtx<'a> {
    fn g_image(&self, x: &HalfBraiding, g: usize) -> Result<HalfBraiding, CenterError> {
        if g == self.group.neutral() {
            Ok(x.clone())
        } else {
            self.g_action(x, g)
        }
    }

    /// Residual of `E_Y(π)(T⊗1) = g[π](T)E_X(π)` for `T: X → Y`.
    fn center_defect(&self, x: &HalfBraiding, y: &HalfBraiding, t: &HomBlock) -> f64 {
        let m = &self.m;
        let mut worst: f64 = 0.0;
        for (k, &p) in self.labels.iter().enumerate() {
            let lhs = y.e[k].mul(&m.right_tensor(t, p));
            let rhs = m.left_tensor(self.tw(x.grade, p), t).mul(&x.e[k]);
            worst = worst.max(lhs.dist(&rhs));
        }
        worst
    }

    fn check_cocycle_shape(&self, eq: &EquivariantObject) -> Result<(), CenterError> {
        if eq.cocycle.len() != self.group.order() {
            return Err(CenterError::MissingE("cocycle entries".into()));
        }
        for (g, c) in eq.cocycle.iter().enumerate() {
            if c.src != eq.base.object || c.tgt != self.tw_obj(g, &eq.base.object) {
                return Err(CenterError::MissingE(format!("cocycle at {}", self.group.name(g))));
            }
        }
        Ok(())
    }

    fn equivariant_residuals(&self, eq: &EquivariantObject) -> Result<EquivariantReport, CenterError> {
        self.check_cocycle_shape(eq)?;
        let mut rep = EquivariantReport::default();
        let n = self.group.order();
        for g in 0..n {
            let gx = self.g_image(&eq.base, g)?;
            if gx.grade != eq.base.grade {
                return Err(CenterError::Braiding("action moves the grade of an equivariant object".into()));
            }
            let c = &eq.cocycle[g];
            rep.intertwining = rep.intertwining.max(self.center_defect(&eq.base, &gx, c));
            rep.unitarity = rep.unitarity.max(c.unitarity_defect());
            for h in 0..n {
                let lhs = self.alpha(g, &eq.cocycle[h]).mul(c);
                rep.cocycle = rep.cocycle.max(lhs.dist(&eq.cocycle[self.group.mul(g, h)]));
            }
        }
        Ok(rep)
    }

    /// `c̄_g = (R_X* ⊗ 1)(X̄(c_g*) ⊗ 1) X̄(α_g(R̄_X))` on the conjugate object.
    pub fn conjugate_equivariant(&self, eq: &EquivariantObject) -> Result<EquivariantObject, CenterError> {
        let m = &self.m;
        let x = &eq.base.object;
        let xd = m.obj_dual(x);
        let (r, rbar) = m.rr_obj(x);
        let base = self.conjugate(&eq.base)?;
        let cocycle = (0..self.group.order())
            .map(|g| {
                let gxd = self.tw_obj(g, &xd);
                let step1 = m.left_tensor_obj(&xd, &self.alpha(g, &rbar));
                let step2 = m.right_tensor_obj(&m.left_tensor_obj(&xd, &eq.cocycle[g].adjoint()), &gxd);
                let step3 = m.right_tensor_obj(&r.adjoint(), &gxd);
                step3.mul(&step2).mul(&step1)
            })
            .collect();
        Ok(EquivariantObject { base, cocycle })
    }

    /// Intertwining relation, cocycle identity and unitarity, also for the
    /// conjugate object.
    pub fn verify_equivariant(&self, eq: &EquivariantObject) -> Result<EquivariantReport, CenterError> {
        let mut rep = self.equivariant_residuals(eq)?;
        let conj = self.conjugate_equivariant(eq)?;
        let cr = self.equivariant_residuals(&conj)?;
        rep.conjugate = cr.intertwining.max(cr.cocycle).max(cr.unitarity);
        Ok(rep)
    }

    /// `c_g = 1`; meaningful only when `g[X] = X` as half-braidings.
    pub fn trivial_equivariant(&self, x: &HalfBraiding) -> EquivariantObject {
        let cocycle = (0..self.group.order()).map(|_| self.m.identity(&x.object)).collect();
        EquivariantObject { base: x.clone(), cocycle }
    }

    /// `X^G = ⊕_g g[X]` with `c_h` moving the summand `hg` to position `g`.
    pub fn regular_object(&self, x: &HalfBraiding) -> Result<EquivariantObject, CenterError> {
        let n = self.group.order();
        let parts = (0..n).map(|g| self.g_image(x, g)).collect::<Result<Vec<_>, _>>()?;
        if parts.iter().any(|p| p.grade != x.grade) {
            return Err(CenterError::Braiding("action moves the grade of the regular object".into()));
        }
        let base = self.direct_sum(&parts);
        let len = x.object.len();
        let m = &self.m;
        let mut cocycle = Vec::with_capacity(n);
        for h in 0..n {
            let tgt = self.tw_obj(h, &base.object);
            let mut c = m.zero(&base.object, &tgt);
            for g in 0..n {
                let from = self.group.mul(h, g);
                let block = m.identity(&parts[from].object);
                let src_idx: Vec<usize> = (from * len..(from + 1) * len).collect();
                let tgt_idx: Vec<usize> = (g * len..(g + 1) * len).collect();
                c = c.add(&m.embed(&block, &base.object, &src_idx, &tgt, &tgt_idx));
            }
            cocycle.push(c);
        }
        Ok(EquivariantObject { base, cocycle })
    }

    /// Diagonal phase `λ_g` on the summand `g[X]` of a regular object.
    pub fn regular_gauge(&self, reg: &EquivariantObject, phases: &[C64]) -> HomBlock {
        let m = &self.m;
        let n = self.group.order();
        let len = reg.base.object.len() / n;
        let mut u = m.zero(&reg.base.object, &reg.base.object);
        for (g, &ph) in phases.iter().enumerate().take(n) {
            let idx: Vec<usize> = (g * len..(g + 1) * len).collect();
            let part: Obj = reg.base.object[g * len..(g + 1) * len].to_vec();
            u = u.add(&m.embed(&m.identity(&part).scale(ph), &reg.base.object, &idx, &reg.base.object, &idx));
        }
        u
    }

    /// `d_h = α_h(Λ) c_h Λ*` for a unitary `Λ ∈ End_Z(X)`.
    pub fn gauge_equivariant(&self, eq: &EquivariantObject, lambda: &HomBlock) -> EquivariantObject {
        let cocycle = eq
            .cocycle
            .iter()
            .enumerate()
            .map(|(h, c)| self.alpha(h, lambda).mul(c).mul(&lambda.adjoint()))
            .collect();
        EquivariantObject { base: eq.base.clone(), cocycle }
    }

    /// Center morphisms `T: X → Y` with `α_g(T)c_g^X = c_g^Y T` for all `g`.
    pub fn hom_equivariant(&self, x: &EquivariantObject, y: &EquivariantObject) -> Vec<HomBlock> {
        let hc = self.hom_center(&x.base, &y.base);
        if hc.dim == 0 {
            return vec![];
        }
        let cols: Vec<Vec<C64>> = hc
            .basis
            .iter()
            .map(|b| {
                let mut col = Vec::new();
                for g in 0..self.group.order() {
                    let d = self.alpha(g, b).mul(&x.cocycle[g]).sub(&y.cocycle[g].mul(b));
                    flatten_into(&d, &mut col);
                }
                col
            })
            .collect();
        let rows = cols[0].len().max(1);
        let mut a = CMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                a[(i, j)] = *v;
            }
        }
        let ns = nullspace(&a, 1e-8);
        (0..ns.ncols())
            .map(|k| {
                let mut t = self.m.zero(&x.base.object, &y.base.object);
                for (i, b) in hc.basis.iter().enumerate() {
                    t = t.add(&b.scale(ns[(i, k)]));
                }
                t
            })
            .collect()
    }

    /// Restriction along an isometry `V: X' → X` in the equivariant
    /// endomorphism algebra: `c'_g = α_g(V)* c_g V`.
    pub fn restrict_equivariant(&self, eq: &EquivariantObject, v: &HomBlock) -> EquivariantObject {
        let base = self.restrict_along(&eq.base, v);
        let cocycle = eq
            .cocycle
            .iter()
            .enumerate()
            .map(|(g, c)| self.alpha(g, v).adjoint().mul(c).mul(v))
            .collect();
        EquivariantObject { base, cocycle }
    }

    /// Splits into simple equivariant objects using spectral projections of
    /// random Hermitian elements of the equivariant endomorphism algebra.
    pub fn split_equivariant(&self, eq: &EquivariantObject, rng: &mut ChaCha8Rng) -> Result<Vec<EquivariantObject>, CenterError> {
        let m = &self.m;
        let end = self.hom_equivariant(eq, eq);
        match end.len() {
            0 => return Ok(vec![]),
            1 => return Ok(vec![eq.clone()]),
            _ => {}
        }
        for _ in 0..16 {
            let mut h = m.zero(&eq.base.object, &eq.base.object);
            for b in &end {
                h = h.add(&b.scale(C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
            }
            let h = h.add(&h.adjoint()).scale(C64::new(0.5, 0.0));
            let mut spec: Vec<(f64, usize, usize)> = Vec::new();
            let mut vecs = Vec::with_capacity(m.rank());
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
                let mut labels: Vec<usize> = g.iter().map(|&(c, _)| c).collect();
                labels.sort_unstable();
                let sub = sum_of(&labels);
                let mut v = m.zero(&sub, &eq.base.object);
                for c in 0..m.rank() {
                    let cols: Vec<usize> = g.iter().filter(|&&(cc, _)| cc == c).map(|&(_, i)| i).collect();
                    for (k, &i) in cols.iter().enumerate() {
                        v.ch[c].set_column(k, &vecs[c].column(i));
                    }
                }
                let piece = self.restrict_equivariant(eq, &v);
                out.extend(self.split_equivariant(&piece, rng)?);
            }
            return Ok(out);
        }
        Err(CenterError::Extraction("no separating equivariant endomorphism found".into()))
    }

    /// Groups equivariant objects into isomorphism classes; returns one
    /// representative per class and the class multiplicities.
    pub fn classify_equivariant(&self, parts: Vec<EquivariantObject>) -> (Vec<EquivariantObject>, Vec<usize>) {
        let mut reps: Vec<EquivariantObject> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for p in parts {
            match reps.iter().position(|r| !self.hom_equivariant(r, &p).is_empty()) {
                Some(i) => mult[i] += 1,
                None => {
                    reps.push(p);
                    mult.push(1);
                }
            }
        }
        (reps, mult)
    }

    /// Orbits of the action on simples, with stabilizers from the action
    /// table.
    pub fn orbits(&self, tab: &ActionTable, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let ng = tab.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut members: Vec<usize> = (0..ng).map(|k| tab.target(k, i)).collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                seen[j] = true;
            }
            let stab: Vec<usize> = (0..ng).filter(|&k| tab.target(k, i) == i).collect();
            out.push((members, stab));
        }
        out
    }

    /// Orbit/stabilizer count of equivariant simples, cross-checked per
    /// orbit by decomposing the regular object of its representative.
    pub fn equivariant_count(&self, simples: &[HalfBraiding], seed: u64) -> Result<EquivariantCount, CenterError> {
        let tab = self.action_table(simples)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2545_F491_4F6C_DD1D);
        let mut orbits = Vec::new();
        let mut count = 0;
        let mut regular_total = Some(0usize);
        for (members, stab) in self.orbits(&tab, simples.len()) {
            let stab_els: Vec<usize> = if self.twisted { stab.clone() } else { vec![self.group.neutral()] };
            let irreps = self.group.subgroup_class_count(&stab_els);
            count += irreps;
            let (regular_simples, regular_multiplicities) = if self.twisted {
                match self.regular_object(&simples[members[0]]) {
                    Ok(reg) => {
                        let parts = self.split_equivariant(&reg, &mut rng)?;
                        let (reps, mult) = self.classify_equivariant(parts);
                        (Some(reps.len()), Some(mult))
                    }
                    Err(_) => (None, None),
                }
            } else {
                (Some(1), Some(vec![1]))
            };
            regular_total = match (regular_total, regular_simples) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            orbits.push(OrbitInfo { members, stabilizer: stab_els, irreps, regular_simples, regular_multiplicities });
        }
        Ok(EquivariantCount { count, regular_count: regular_total, orbits, assumes_trivial_obstruction: true })
    }

    /// Equivariant simples: the distinct summands of the regular objects of
    /// orbit representatives.
    pub fn equivariant_simples(&self, simples: &[HalfBraiding], seed: u64) -> Result<Vec<EquivariantObject>, CenterError> {
        let tab = self.action_table(simples)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2545_F491_4F6C_DD1D);
        let mut out = Vec::new();
        for (members, _) in self.orbits(&tab, simples.len()) {
            let reg = self.regular_object(&simples[members[0]])?;
            let (reps, _) = self.classify_equivariant(self.split_equivariant(&reg, &mut rng)?);
            out.extend(reps);
        }
        Ok(out)
    }

    /// `X ⊗ Y` with `c_g^{XY} = c_g^X ⊗ c_g^Y`.
    pub fn tensor_equivariant(&self, x: &EquivariantObject, y: &EquivariantObject) -> Result<EquivariantObject, CenterError> {
        let base = self.tensor(&x.base, &y.base)?;
        let cocycle = x.cocycle.iter().zip(&y.cocycle).map(|(a, b)| self.m.tensor(a, b)).collect();
        Ok(EquivariantObject { base, cocycle })
    }

    /// `Ê(X,Y) = (c_g^{Y*} ⊗ 1_X) E(X,Y) ∈ (XY, YX)` for `X` of grade `g`.
    pub fn equivariant_braiding(&self, x: &EquivariantObject, y: &EquivariantObject) -> Result<HomBlock, CenterError> {
        let g = x.base.grade;
        let e = self.e_obj(&x.base, &y.base.object)?;
        Ok(self.m.right_tensor_obj(&y.cocycle[g].adjoint(), &x.base.object).mul(&e))
    }
}

/// Residuals of the braiding on equivariant simples.
#[derive(Clone, Debug, Default)]
pub struct EquivariantBraidingReport {
    /// `Ê(X,Y)` as an equivariant center morphism `XY → YX`.
    pub membership: f64,
    /// `Ê(X,YZ) = (1⊗Ê(X,Z))(Ê(X,Y)⊗1)`.
    pub hexagon_left: f64,
    /// `Ê(XY,Z) = (Ê(X,Z)⊗1)(1⊗Ê(Y,Z))`.
    pub hexagon_right: f64,
    /// `max ‖Ê(Y,X)Ê(X,Y) − 1‖`: nonzero for a non-symmetric braiding.
    pub max_monodromy: f64,
    pub unit_row: f64,
}

impl EquivariantBraidingReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.membership.max(self.hexagon_left).max(self.hexagon_right).max(self.unit_row) <= tol
    }
}

impl<'a> CenterCtx<'a> {
    /// Sweep over all pairs and triples of the given equivariant simples.
    pub fn verify_equivariant_braiding(&self, eqs: &[EquivariantObject]) -> Result<EquivariantBraidingReport, CenterError> {
        let m = &self.m;
        let n = eqs.len();
        let mut rep = EquivariantBraidingReport::default();
        let mut br = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                br[i][j] = Some(self.equivariant_braiding(&eqs[i], &eqs[j])?);
            }
        }
        let b = |i: usize, j: usize| br[i][j].as_ref().unwrap();
        for i in 0..n {
            for j in 0..n {
                let xy = self.tensor_equivariant(&eqs[i], &eqs[j])?;
                let yx = self.tensor_equivariant(&eqs[j], &eqs[i])?;
                let e = b(i, j);
                let mut d = self.center_defect(&xy.base, &yx.base, e);
                for g in 0..self.group.order() {
                    d = d.max(self.alpha(g, e).mul(&xy.cocycle[g]).dist(&yx.cocycle[g].mul(e)));
                }
                rep.membership = rep.membership.max(d);
                let mono = b(j, i).mul(e);
                rep.max_monodromy = rep.max_monodromy.max(mono.dist(&m.identity(&xy.base.object)));
                if eqs[i].base.object == vec![vec![0]] && self.hom_center(&eqs[i].base, &self.unit_object()).dim == 1 {
                    rep.unit_row = rep.unit_row.max(e.dist(&m.identity(&xy.base.object)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (&eqs[i], &eqs[j], &eqs[k]);
                    let yz = self.tensor_equivariant(y, z)?;
                    let lhs = self.equivariant_braiding(x, &yz)?;
                    let rhs = m.left_tensor_obj(&y.base.object, b(i, k)).mul(&m.right_tensor_obj(b(i, j), &z.base.object));
                    rep.hexagon_left = rep.hexagon_left.max(lhs.dist(&rhs));
                    let xy = self.tensor_equivariant(x, y)?;
                    let lhs = self.equivariant_braiding(&xy, z)?;
                    let rhs = m.right_tensor_obj(b(i, k), &y.base.object).mul(&m.left_tensor_obj(&x.base.object, b(j, k)));
                    rep.hexagon_right = rep.hexagon_right.max(lhs.dist(&rhs));
                }
            }
        }
        Ok(rep)
    }
}
