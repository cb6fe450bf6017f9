use nalgebra::Cholesky;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{TubeAlgebra, TubeError};
use crate::linalg::{cluster, cluster_margins, hermitian_eigen, nullspace, CMat, CVec};
use crate::{C64, CLUSTER_GAP};

/// One matrix block `M_m` of a component.
#[derive(Clone, Debug)]
pub struct Block {
    /// Minimal central projection in local coordinates.
    pub projection: Vec<C64>,
    pub rank: usize,
    /// `n_i(π)` for each object label of the component, in component order.
    pub corner: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WedderburnData {
    pub comp: usize,
    pub grade: usize,
    pub dim: usize,
    pub center_dim: usize,
    pub blocks: Vec<Block>,
    pub seed: u64,
    /// Number of random probes drawn before a non-degenerate one was found.
    pub attempts: usize,
    /// Smallest eigenvalue gap between blocks of the accepted probe.
    pub separation: f64,
}

const MAX_ATTEMPTS: usize = 16;

/// Decomposes the component of the given grade.
pub fn decompose(tube: &TubeAlgebra, grade: usize, seed: u64) -> Result<WedderburnData, TubeError> {
    let ci = tube
        .component_of_grade(grade)
        .ok_or_else(|| TubeError::Internal(format!("no component of grade {grade}")))?;
    decompose_component(tube, ci, seed)
}

/// Minimal central projections of one component via a random Hermitian
/// central probe and eigenspace clustering of its left multiplication.
pub fn decompose_component(tube: &TubeAlgebra, ci: usize, seed: u64) -> Result<WedderburnData, TubeError> {
    let comp = &tube.components[ci];
    let n = comp.dim();
    let mut wd = WedderburnData {
        comp: ci,
        grade: comp.grade,
        dim: n,
        center_dim: 0,
        blocks: vec![],
        seed,
        attempts: 0,
        separation: f64::INFINITY,
    };
    if n == 0 {
        return Ok(wd);
    }
    let k = &tube.consts[ci];
    let mut a = CMat::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                a[(i * n + l, j)] = k[(i * n + j) * n + l] - k[(j * n + i) * n + l];
            }
        }
    }
    let center = nullspace(&a, 1e-9);
    wd.center_dim = center.ncols();
    let g = tube.gram(ci);
    let chol = Cholesky::new(g.clone())
        .ok_or_else(|| TubeError::Internal("Gram matrix not positive definite".into()))?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| TubeError::Internal("Gram factor not invertible".into()))?;
    let linv_h = linv.adjoint();
    let unit = CVec::from_vec(tube.unit(ci));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ci as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for attempt in 1..=MAX_ATTEMPTS {
        wd.attempts = attempt;
        let mut z = vec![C64::new(0.0, 0.0); n];
        for col in 0..center.ncols() {
            let r = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for (i, zi) in z.iter_mut().enumerate() {
                *zi += center[(i, col)] * r;
            }
        }
        let zs = tube.star_vec(ci, &z);
        let zh: Vec<C64> = z.iter().zip(&zs).map(|(a, b)| (a + b) * 0.5).collect();
        let lz = tube.left_mult(ci, &zh);
        let h = l.adjoint() * &lz * &linv_h;
        let (vals, vecs) = hermitian_eigen(&h);
        let clusters = cluster(&vals, CLUSTER_GAP);
        if clusters.len() != wd.center_dim {
            continue;
        }
        let mut ranks = Vec::new();
        for r in &clusters {
            let m = (r.len() as f64).sqrt().round() as usize;
            if m * m != r.len() {
                break;
            }
            ranks.push(m);
        }
        if ranks.len() != clusters.len() {
            continue;
        }
        let (sep, _) = cluster_margins(&vals, &clusters);
        wd.separation = sep;
        let gu = &g * &unit;
        let mut blocks = Vec::new();
        for (r, &m) in clusters.iter().zip(&ranks) {
            let mut p = CVec::zeros(n);
            for v in r.clone() {
                let y = &linv_h * vecs.column(v);
                let coef = y.dotc(&gu);
                p += y * coef;
            }
            let projection: Vec<C64> = p.iter().copied().collect();
            let corner = comp
                .objects
                .iter()
                .map(|&s| {
                    let x = tube.mul(ci, &projection, &tube.object_idempotent(ci, s));
                    let tr = tube.left_mult(ci, &x).trace().re;
                    (tr / m as f64).round() as usize
                })
                .collect();
            blocks.push(Block { projection, rank: m, corner });
        }
        blocks.sort_by(|a, b| {
            a.corner.cmp(&b.corner).then_with(|| {
                let key = |x: &Block| -> Vec<(i64, i64)> {
                    x.projection
                        .iter()
                        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
                        .collect()
                };
                key(a).cmp(&key(b))
            })
        });
        wd.blocks = blocks;
        return Ok(wd);
    }
    Err(TubeError::Degenerate(format!(
        "no separating central probe after {MAX_ATTEMPTS} attempts on component {ci} (seed {seed})"
    )))
}

#[derive(Clone, Debug, Default)]
pub struct WedderburnReport {
    pub idempotent: f64,
    pub orthogonal: f64,
    pub completeness: f64,
    pub central: f64,
    pub rank_sum_ok: bool,
}

impl WedderburnReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.idempotent <= tol
            && self.orthogonal <= tol
            && self.completeness <= tol
            && self.central <= tol
            && self.rank_sum_ok
    }
}

/// Checks `P_i P_j = δ_ij P_i`, `Σ P_i = 1`, centrality and `Σ m_i² = dim`.
pub fn verify_wedderburn(tube: &TubeAlgebra, wd: &WedderburnData) -> WedderburnReport {
    let ci = wd.comp;
    let n = wd.dim;
    let mut rep = WedderburnReport {
        rank_sum_ok: wd.blocks.iter().map(|b| b.rank * b.rank).sum::<usize>() == n,
        ..Default::default()
    };
    if n == 0 {
        return rep;
    }
    let d = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let mut sum = vec![C64::new(0.0, 0.0); n];
    for (i, bi) in wd.blocks.iter().enumerate() {
        for (x, y) in sum.iter_mut().zip(&bi.projection) {
            *x += y;
        }
        for (j, bj) in wd.blocks.iter().enumerate() {
            let pq = tube.mul(ci, &bi.projection, &bj.projection);
            if i == j {
                rep.idempotent = rep.idempotent.max(d(&pq, &bi.projection));
            } else {
                rep.orthogonal = rep.orthogonal.max(pq.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        for k in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[k] = C64::new(1.0, 0.0);
            let l = tube.mul(ci, &bi.projection, &e);
            let r = tube.mul(ci, &e, &bi.projection);
            rep.central = rep.central.max(d(&l, &r));
        }
    }
    rep.completeness = d(&sum, &tube.unit(ci));
    rep
}
