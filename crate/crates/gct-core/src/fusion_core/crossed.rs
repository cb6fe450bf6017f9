use std::collections::BTreeMap;

use super::{verify_action, Action, CatError, Category, FMatrix};
use crate::linalg::zeros;
use crate::DEFAULT_TOL;
use super::Group;

/// Index of `(g,a)` in the crossed extension: components are laid out with
/// the neutral element first, then the others in group order.
pub fn crossed_label_index(grp: &Group, rank0: usize, g: usize, a: usize) -> usize {
    let e = grp.neutral();
    let pos = if g == e { 0 } else { (0..g).filter(|&x| x != e).count() + 1 };
    pos * rank0 + a
}

/// The G-graded category with components `D_g = {α_g(a)}` built from a
/// trivially graded `d0` and a strict action on it.
///
/// Label `(g,a)` sits at [`crossed_label_index`]. Fusion is
/// `(g,a)(h,b) = (gh, h⁻¹[a] b)` and the F-symbols are
/// `F^{(g,a)(h,b)(k,c)}_{(ghk,d)} = F^{(hk)⁻¹[a], k⁻¹[b], c}_d` with the
/// intermediate label `(gh,e)` read as `k⁻¹[e]`.
pub fn build_crossed_extension(d0: &Category, action: &Action) -> Result<Category, CatError> {
    if !d0.is_trivially_graded() {
        return Err(CatError::Invariant(
            "crossed extension needs a trivially graded base".into(),
        ));
    }
    let rep = verify_action(d0, action, DEFAULT_TOL);
    if let Some(v) = rep.violation {
        return Err(CatError::Invariant(format!("action not strict: {v}")));
    }
    let grp = action.group.clone();
    let r0 = d0.rank();
    let ng = grp.order();
    let r = r0 * ng;
    let lab = |g: usize, a: usize| g * r0 + a;
    // Put the neutral component first so that label 0 is the unit.
    let order: Vec<usize> = std::iter::once(grp.neutral())
        .chain((0..ng).filter(|&g| g != grp.neutral()))
        .collect();
    let pos: Vec<usize> = (0..ng).map(|g| order.iter().position(|&x| x == g).unwrap()).collect();
    let idx = |g: usize, a: usize| lab(pos[g], a);
    debug_assert!((0..ng).all(|g| idx(g, 0) == crossed_label_index(&grp, r0, g, 0)));
    let mut labels = vec![String::new(); r];
    let mut dual = vec![0; r];
    let mut qdim = vec![0.0; r];
    let mut grading = vec![0; r];
    let mut n = vec![0; r * r * r];
    for g in 0..ng {
        for a in 0..r0 {
            let x = idx(g, a);
            labels[x] = if ng == 1 {
                d0.label(a).to_string()
            } else {
                format!("({},{})", grp.name(g), d0.label(a))
            };
            let gi = grp.inv(g);
            dual[x] = idx(gi, action.apply(g, d0.dual(a)));
            qdim[x] = d0.qdim(a);
            grading[x] = g;
            for h in 0..ng {
                for b in 0..r0 {
                    let y = idx(h, b);
                    let ha = action.apply_inv(h, a);
                    for c in 0..r0 {
                        n[(x * r + y) * r + idx(grp.mul(g, h), c)] = d0.n(ha, b, c);
                    }
                }
            }
        }
    }
    let mut cat = Category {
        name: format!("{}_x_{}", d0.name, action.name),
        labels,
        dual,
        qdim,
        n,
        group: grp.clone(),
        grading,
        fsym: BTreeMap::new(),
        actions: vec![],
    };
    let split = |x: usize| (order[x / r0], x % r0);
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                for w in 0..r {
                    let rows = cat.left_channels(x, y, z, w);
                    if rows.is_empty() {
                        continue;
                    }
                    let cols = cat.right_channels(x, y, z, w);
                    let ((_, a), (h, b), (k, c), (_, d)) = (split(x), split(y), split(z), split(w));
                    let hk = grp.mul(h, k);
                    let key = [action.apply_inv(hk, a), action.apply_inv(k, b), c, d];
                    let f0 = d0.fmat(key[0], key[1], key[2], key[3]).ok_or_else(|| {
                        CatError::Invariant(format!("base F{key:?} missing for crossed extension"))
                    })?;
                    let mut m = zeros(rows.len(), cols.len());
                    for (i, row) in rows.iter().enumerate() {
                        let (_, e) = split(row[0]);
                        let r0row = [action.apply_inv(k, e), row[1], row[2]];
                        let ii = f0.row_index(r0row).expect("row channel of base F");
                        for (j, col) in cols.iter().enumerate() {
                            let (_, f) = split(col[0]);
                            let jj = f0.col_index([f, col[1], col[2]]).expect("col channel of base F");
                            m[(i, j)] = f0.m[(ii, jj)];
                        }
                    }
                    cat.fsym.insert([x, y, z, w], FMatrix { rows, cols, m });
                }
            }
        }
    }
    cat.validate(DEFAULT_TOL)?;
    Ok(cat)
}
