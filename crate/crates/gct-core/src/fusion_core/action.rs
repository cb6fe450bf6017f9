use super::{Category, Group};

/// A strict action of a finite group on the labels of a category.
#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    pub name: String,
    pub group: Group,
    /// `perm[g][a]` is `g[a]`.
    pub perm: Vec<Vec<usize>>,
}

impl Action {
    pub fn trivial(group: Group, rank: usize) -> Action {
        let perm = vec![(0..rank).collect(); group.order()];
        Action { name: "trivial".into(), group, perm }
    }

    pub fn apply(&self, g: usize, a: usize) -> usize {
        self.perm[g][a]
    }

    pub fn apply_inv(&self, g: usize, a: usize) -> usize {
        self.perm[self.group.inv(g)][a]
    }

    pub fn is_trivial(&self) -> bool {
        self.perm.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }
}

#[derive(Clone, Debug, Default)]
pub struct ActionReport {
    /// First violated property, with the offending indices.
    pub violation: Option<String>,
    /// Largest F-entry deviation under relabeling.
    pub max_f_deviation: f64,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `act` is a strict action on `cat`: a group homomorphism into
/// label permutations preserving N, duals, dimensions and F-symbols, and
/// conjugating degrees.
pub fn verify_action(cat: &Category, act: &Action, tol: f64) -> ActionReport {
    let mut rep = ActionReport::default();
    rep.violation = check(cat, act, tol, &mut rep.max_f_deviation);
    rep
}

fn check(cat: &Category, act: &Action, tol: f64, max_dev: &mut f64) -> Option<String> {
    let g = &act.group;
    let r = cat.rank();
    if act.perm.len() != g.order() || act.perm.iter().any(|p| p.len() != r) {
        return Some("perm table has the wrong shape".into());
    }
    for x in 0..g.order() {
        let mut seen = vec![false; r];
        for &a in &act.perm[x] {
            if a >= r || seen[a] {
                return Some(format!("perm({}) is not a permutation", g.name(x)));
            }
            seen[a] = true;
        }
    }
    if act.perm[g.neutral()].iter().enumerate().any(|(i, &x)| i != x) {
        return Some("perm(neutral) is not the identity".into());
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            let xy = g.mul(x, y);
            if (0..r).any(|a| act.perm[x][act.perm[y][a]] != act.perm[xy][a]) {
                return Some(format!(
                    "perm(g)perm(h) ≠ perm(gh) for (g,h) = ({},{})",
                    g.name(x),
                    g.name(y)
                ));
            }
        }
    }
    let same_group = *g == cat.group;
    for x in 0..g.order() {
        let p = &act.perm[x];
        for a in 0..r {
            if p[cat.dual(a)] != cat.dual(p[a]) {
                return Some(format!("perm({}) does not commute with dual at {}", g.name(x), cat.label(a)));
            }
            if (cat.qdim(p[a]) - cat.qdim(a)).abs() > tol {
                return Some(format!("perm({}) changes qdim of {}", g.name(x), cat.label(a)));
            }
            if same_group && cat.deg(p[a]) != g.conj(x, cat.deg(a)) {
                return Some(format!(
                    "perm({}) maps deg({}) to {} instead of its conjugate",
                    g.name(x),
                    cat.label(a),
                    g.name(cat.deg(p[a]))
                ));
            }
            for b in 0..r {
                for c in 0..r {
                    if cat.n(p[a], p[b], p[c]) != cat.n(a, b, c) {
                        return Some(format!(
                            "perm({}) does not preserve N at ({},{},{})",
                            g.name(x),
                            cat.label(a),
                            cat.label(b),
                            cat.label(c)
                        ));
                    }
                }
            }
        }
        for (key, f) in &cat.fsym {
            let pk = [p[key[0]], p[key[1]], p[key[2]], p[key[3]]];
            let Some(pf) = cat.fsym.get(&pk) else {
                return Some(format!("perm({}) maps F{:?} to a missing F-matrix", g.name(x), key));
            };
            for (i, row) in f.rows.iter().enumerate() {
                for (j, col) in f.cols.iter().enumerate() {
                    let pi = pf.row_index([p[row[0]], row[1], row[2]]);
                    let pj = pf.col_index([p[col[0]], col[1], col[2]]);
                    let (Some(pi), Some(pj)) = (pi, pj) else {
                        return Some(format!("perm({}) breaks channels of F{:?}", g.name(x), key));
                    };
                    let dev = (pf.m[(pi, pj)] - f.m[(i, j)]).norm();
                    *max_dev = max_dev.max(dev);
                    if dev > tol {
                        return Some(format!(
                            "F not invariant under perm({}) at F{:?}[{:?};{:?}]",
                            g.name(x),
                            key,
                            row,
                            col
                        ));
                    }
                }
            }
        }
    }
    None
}
