use super::TubeAlgebra;
use crate::linalg::hermitian_eigen;
use crate::C64;

/// Residuals of the *-algebra axioms.
#[derive(Clone, Debug, Default)]
pub struct AlgebraReport {
    pub associativity: f64,
    pub star_involution: f64,
    pub star_antimultiplicative: f64,
    /// Smallest eigenvalue of the Gram matrix `τ(b_i* b_j)` over all components.
    pub trace_min_eig: f64,
    /// `max |τ(b_i b_j) - τ(b_j b_i)|`.
    pub trace_cyclic: f64,
    pub unit: f64,
}

impl AlgebraReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.associativity <= tol
            && self.star_involution <= tol
            && self.star_antimultiplicative <= tol
            && self.trace_cyclic <= tol
            && self.unit <= tol
            && self.trace_min_eig > 0.0
    }
}

fn e(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[i] = C64::new(1.0, 0.0);
    v
}

fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Evaluates associativity, the star axioms, trace positivity and
/// traciality, and the unit on every component.
pub fn verify_algebra(t: &TubeAlgebra) -> AlgebraReport {
    let mut rep = AlgebraReport { trace_min_eig: f64::INFINITY, ..Default::default() };
    for ci in 0..t.components.len() {
        let n = t.components[ci].dim();
        if n == 0 {
            continue;
        }
        let k = &t.consts[ci];
        let zero = C64::new(0.0, 0.0);
        // Σ_m c_ij^m c_mk^l = Σ_m c_jk^m c_im^l
        for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    for l in 0..n {
                        let mut lhs = C64::new(0.0, 0.0);
                        let mut rhs = C64::new(0.0, 0.0);
                        for m in 0..n {
                            let a = k[(i * n + j) * n + m];
                            if a != zero {
                                lhs += a * k[(m * n + kk) * n + l];
                            }
                            let b = k[(j * n + kk) * n + m];
                            if b != zero {
                                rhs += b * k[(i * n + m) * n + l];
                            }
                        }
                        rep.associativity = rep.associativity.max((lhs - rhs).norm());
                    }
                }
            }
        }
        let stars: Vec<Vec<C64>> = (0..n).map(|i| t.star_vec(ci, &e(n, i))).collect();
        for i in 0..n {
            rep.star_involution = rep.star_involution.max(dist(&t.star_vec(ci, &stars[i]), &e(n, i)));
            for j in 0..n {
                let bij = t.mul(ci, &e(n, i), &e(n, j));
                let lhs = t.star_vec(ci, &bij);
                let rhs = t.mul(ci, &stars[j], &stars[i]);
                rep.star_antimultiplicative = rep.star_antimultiplicative.max(dist(&lhs, &rhs));
                let bji = t.mul(ci, &e(n, j), &e(n, i));
                rep.trace_cyclic =
                    rep.trace_cyclic.max((t.trace_vec(ci, &bij) - t.trace_vec(ci, &bji)).norm());
            }
        }
        let u = t.unit(ci);
        for i in 0..n {
            let b = e(n, i);
            rep.unit = rep.unit.max(dist(&t.mul(ci, &u, &b), &b)).max(dist(&t.mul(ci, &b, &u), &b));
        }
        let (vals, _) = hermitian_eigen(&t.gram(ci));
        rep.trace_min_eig = rep.trace_min_eig.min(vals[0]);
    }
    rep
}
