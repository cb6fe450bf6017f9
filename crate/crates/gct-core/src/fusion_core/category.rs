use std::collections::BTreeMap;

use super::{fp_dimensions, verify_action, verify_pentagon, Action, CatError, Group};
use crate::linalg::{eye, max_abs, unitarity_defect, CMat};

/// Row or column index of an F-matrix: intermediate label and two
/// multiplicity indices.
pub type Channel = [usize; 3];

/// One F-matrix `F^{abc}_d`, mapping the left-nested tree basis (rows,
/// `(e, mu, nu)` for `(ab)->e, (ec)->d`) to the right-nested basis (columns,
/// `(f, kappa, lambda)` for `(bc)->f, (af)->d`).
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix {
    pub rows: Vec<Channel>,
    pub cols: Vec<Channel>,
    pub m: CMat,
}

impl FMatrix {
    pub fn row_index(&self, ch: Channel) -> Option<usize> {
        self.rows.iter().position(|r| *r == ch)
    }

    pub fn col_index(&self, ch: Channel) -> Option<usize> {
        self.cols.iter().position(|r| *r == ch)
    }
}

/// A finite G-graded unitary fusion category in skeletal form.
///
/// Label 0 is the unit. Fields are public for fault-injection in tests; use
/// [`Category::validate`] after mutating.
#[derive(Clone, Debug)]
pub struct Category {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub qdim: Vec<f64>,
    /// Flattened `N[a][b][c]`.
    pub n: Vec<usize>,
    pub group: Group,
    pub grading: Vec<usize>,
    pub fsym: BTreeMap<[usize; 4], FMatrix>,
    pub actions: Vec<Action>,
}

impl Category {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        let r = self.rank();
        self.n[(a * r + b) * r + c]
    }

    pub fn set_n(&mut self, a: usize, b: usize, c: usize, v: usize) {
        let r = self.rank();
        self.n[(a * r + b) * r + c] = v;
    }

    /// Simple summands of `a ⊗ b` with multiplicities, ascending.
    pub fn fuse(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        (0..self.rank())
            .filter_map(|c| {
                let m = self.n(a, b, c);
                (m > 0).then_some((c, m))
            })
            .collect()
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn qdim(&self, a: usize) -> f64 {
        self.qdim[a]
    }

    pub fn deg(&self, a: usize) -> usize {
        self.grading[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Labels of degree `g`.
    pub fn component(&self, g: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&a| self.grading[a] == g).collect()
    }

    pub fn degree_zero(&self) -> Vec<usize> {
        self.component(self.group.neutral())
    }

    /// Global dimension Σ d(a)² over the given labels.
    pub fn dim_of(&self, labels: &[usize]) -> f64 {
        labels.iter().map(|&a| self.qdim[a] * self.qdim[a]).sum()
    }

    pub fn fmat(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FMatrix> {
        self.fsym.get(&[a, b, c, d])
    }

    /// Single F entry; zero when the channels are not admissible.
    pub fn f_entry(&self, abcd: [usize; 4], row: Channel, col: Channel) -> crate::C64 {
        match self.fsym.get(&abcd) {
            Some(f) => match (f.row_index(row), f.col_index(col)) {
                (Some(i), Some(j)) => f.m[(i, j)],
                _ => crate::C64::new(0.0, 0.0),
            },
            None => crate::C64::new(0.0, 0.0),
        }
    }

    pub fn action(&self, name: &str) -> Option<&Action> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.grading.iter().all(|&g| g == self.group.neutral())
    }

    pub fn is_pointed(&self) -> bool {
        self.qdim.iter().all(|&d| (d - 1.0).abs() < 1e-12)
    }

    /// Same fusion data graded by the trivial group, without actions.
    pub fn forget_grading(&self) -> Category {
        let mut c = self.clone();
        c.group = Group::trivial();
        c.grading = vec![0; self.rank()];
        c.actions.clear();
        c
    }

    /// Left-nested tree channels `(e, mu, nu)` of `Hom(d, (ab)c)`.
    pub fn left_channels(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<Channel> {
        let mut out = Vec::new();
        for e in 0..self.rank() {
            for mu in 0..self.n(a, b, e) {
                for nu in 0..self.n(e, c, d) {
                    out.push([e, mu, nu]);
                }
            }
        }
        out
    }

    /// Right-nested tree channels `(f, kappa, lambda)` of `Hom(d, a(bc))`.
    pub fn right_channels(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<Channel> {
        let mut out = Vec::new();
        for f in 0..self.rank() {
            for ka in 0..self.n(b, c, f) {
                for la in 0..self.n(a, f, d) {
                    out.push([f, ka, la]);
                }
            }
        }
        out
    }

    /// Fills in the identity F-matrices for every admissible quadruple with
    /// a unit among `a, b, c` (unit-normalized gauge).
    pub(crate) fn fill_unit_gauge(&mut self) {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if a != 0 && b != 0 && c != 0 {
                        continue;
                    }
                    for d in 0..r {
                        let rows = self.left_channels(a, b, c, d);
                        if rows.is_empty() || self.fsym.contains_key(&[a, b, c, d]) {
                            continue;
                        }
                        let cols = self.right_channels(a, b, c, d);
                        let m = eye(rows.len());
                        self.fsym.insert([a, b, c, d], FMatrix { rows, cols, m });
                    }
                }
            }
        }
    }

    fn names3(&self, a: usize, b: usize, c: usize) -> String {
        format!("({},{},{})", self.labels[a], self.labels[b], self.labels[c])
    }

    /// Checks every ring, grading, dimension, F-symbol and action invariant.
    pub fn validate(&self, tol: f64) -> Result<(), CatError> {
        self.validate_ring()?;
        self.validate_grading()?;
        self.validate_qdim(tol)?;
        self.validate_fsym(tol)?;
        let pent = verify_pentagon(self, tol);
        if !pent.pass {
            return Err(CatError::Invariant(format!(
                "pentagon violated at {}: residual {:.3e}",
                pent.worst.map(|w| self.pentagon_label(w)).unwrap_or_default(),
                pent.max_residual
            )));
        }
        for act in &self.actions {
            let rep = verify_action(self, act, tol);
            if let Some(msg) = rep.violation {
                return Err(CatError::Invariant(format!("action '{}': {}", act.name, msg)));
            }
        }
        Ok(())
    }

    fn pentagon_label(&self, w: [usize; 5]) -> String {
        let names: Vec<&str> = w.iter().map(|&x| self.labels[x].as_str()).collect();
        format!("({})", names.join(","))
    }

    pub(super) fn validate_ring(&self) -> Result<(), CatError> {
        let r = self.rank();
        for a in 0..r {
            if self.dual[a] >= r || self.dual[self.dual[a]] != a {
                return Err(CatError::Invariant(format!(
                    "dual is not an involution at {}",
                    self.labels[a]
                )));
            }
        }
        if self.dual[0] != 0 {
            return Err(CatError::Invariant("unit is not self-dual".into()));
        }
        for a in 0..r {
            for c in 0..r {
                let want = usize::from(a == c);
                if self.n(a, 0, c) != want || self.n(0, a, c) != want {
                    return Err(CatError::Invariant(format!(
                        "unit axiom violated at ({},{})",
                        self.labels[a], self.labels[c]
                    )));
                }
            }
            for b in 0..r {
                let want = usize::from(b == self.dual[a]);
                if self.n(a, b, 0) != want {
                    return Err(CatError::Invariant(format!(
                        "duality axiom N_{{ab}}^0 violated at ({},{})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for f in 0..r {
                        let lhs: usize = (0..r).map(|e| self.n(a, b, e) * self.n(e, c, f)).sum();
                        let rhs: usize = (0..r).map(|e| self.n(b, c, e) * self.n(a, e, f)).sum();
                        if lhs != rhs {
                            return Err(CatError::Invariant(format!(
                                "associativity violated at {}",
                                self.names3(a, b, c)
                            )));
                        }
                    }
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.n(a, b, c) != self.n(self.dual[a], c, b) {
                        return Err(CatError::Invariant(format!(
                            "rigidity N_{{ab}}^c = N_{{a*c}}^b violated at {}",
                            self.names3(a, b, c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(super) fn validate_grading(&self) -> Result<(), CatError> {
        let g = &self.group;
        if self.grading[0] != g.neutral() {
            return Err(CatError::Invariant("grading: unit is not of neutral degree".into()));
        }
        let r = self.rank();
        for a in 0..r {
            if self.grading[self.dual[a]] != g.inv(self.grading[a]) {
                return Err(CatError::Invariant(format!(
                    "grading: deg(dual({})) is not deg({})^-1",
                    self.labels[a], self.labels[a]
                )));
            }
            for b in 0..r {
                for c in 0..r {
                    if self.n(a, b, c) > 0
                        && self.grading[c] != g.mul(self.grading[a], self.grading[b])
                    {
                        return Err(CatError::Invariant(format!(
                            "grading violated at {}",
                            self.names3(a, b, c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_qdim(&self, tol: f64) -> Result<(), CatError> {
        let r = self.rank();
        if (self.qdim[0] - 1.0).abs() > tol {
            return Err(CatError::Invariant("qdim of the unit is not 1".into()));
        }
        for a in 0..r {
            if self.qdim[a] <= 0.0 || !self.qdim[a].is_finite() {
                return Err(CatError::Invariant(format!(
                    "qdim({}) is not positive",
                    self.labels[a]
                )));
            }
            if (self.qdim[a] - self.qdim[self.dual[a]]).abs() > tol {
                return Err(CatError::Invariant(format!(
                    "qdim({}) differs from the dual's",
                    self.labels[a]
                )));
            }
            for b in 0..r {
                let rhs: f64 = (0..r).map(|c| self.n(a, b, c) as f64 * self.qdim[c]).sum();
                let lhs = self.qdim[a] * self.qdim[b];
                if (lhs - rhs).abs() > tol * lhs.max(1.0) {
                    return Err(CatError::Invariant(format!(
                        "qdim product rule violated at ({},{})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        let fp = fp_dimensions(self);
        for a in 0..r {
            if (fp[a] - self.qdim[a]).abs() > tol * fp[a].max(1.0) {
                return Err(CatError::Invariant(format!(
                    "declared qdim({}) = {} but Frobenius-Perron dimension is {}",
                    self.labels[a], self.qdim[a], fp[a]
                )));
            }
        }
        Ok(())
    }

    fn validate_fsym(&self, tol: f64) -> Result<(), CatError> {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let rows = self.left_channels(a, b, c, d);
                        let tag = || {
                            format!(
                                "({},{},{};{})",
                                self.labels[a], self.labels[b], self.labels[c], self.labels[d]
                            )
                        };
                        let Some(f) = self.fmat(a, b, c, d) else {
                            if rows.is_empty() {
                                continue;
                            }
                            return Err(CatError::Invariant(format!("missing F-matrix {}", tag())));
                        };
                        if rows.is_empty() {
                            return Err(CatError::Invariant(format!(
                                "F-matrix given for non-admissible {}",
                                tag()
                            )));
                        }
                        if f.rows != rows || f.cols != self.right_channels(a, b, c, d) {
                            return Err(CatError::Invariant(format!(
                                "F-matrix {} has channels inconsistent with N",
                                tag()
                            )));
                        }
                        let u = unitarity_defect(&f.m);
                        if u > tol {
                            return Err(CatError::Invariant(format!(
                                "F-matrix {} not unitary (defect {:.3e})",
                                tag(),
                                u
                            )));
                        }
                        if (a == 0 || b == 0 || c == 0) && max_abs(&(&f.m - eye(rows.len()))) > tol
                        {
                            return Err(CatError::Invariant(format!(
                                "F-matrix {} with a unit argument is not the identity",
                                tag()
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
