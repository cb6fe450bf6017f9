use super::Category;
use crate::C64;

#[derive(Clone, Debug)]
pub struct PentagonReport {
    pub max_residual: f64,
    pub pass: bool,
    /// Outer labels `(a,b,c,d,e)` of the worst instance.
    pub worst: Option<[usize; 5]>,
    pub instances: usize,
}

/// All index tuples `i` with `i[k] < dims[k]`, last index fastest.
pub(crate) fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    for mut flat in 0..total {
        let mut idx = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            idx[k] = flat % dims[k];
            flat /= dims[k];
        }
        out.push(idx);
    }
    out
}

/// Evaluates every pentagon instance in the multiplicity-aware form
///
/// Σ_ε F^{fcd}_e[(g,β,γ);(h,δ,ε)] F^{abh}_e[(f,α,ε);(k,ζ,η)]
///   = Σ_{l,κ,λ,μ} F^{abc}_g[(f,α,β);(l,κ,λ)] F^{ald}_e[(g,λ,γ);(k,μ,η)] F^{bcd}_k[(l,κ,μ);(h,δ,ζ)].
pub fn verify_pentagon(cat: &Category, tol: f64) -> PentagonReport {
    let r = cat.rank();
    let mut rep = PentagonReport { max_residual: 0.0, pass: true, worst: None, instances: 0 };
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in 0..r {
                        pentagon_outer(cat, [a, b, c, d, e], &mut rep);
                    }
                }
            }
        }
    }
    rep.pass = rep.max_residual <= tol;
    rep
}

fn pentagon_outer(cat: &Category, outer: [usize; 5], rep: &mut PentagonReport) {
    let [a, b, c, d, e] = outer;
    let r = cat.rank();
    let zero = C64::new(0.0, 0.0);
    for f in 0..r {
        for g in 0..r {
            for h in 0..r {
                for k in 0..r {
                    let dims = [
                        cat.n(a, b, f),
                        cat.n(f, c, g),
                        cat.n(g, d, e),
                        cat.n(c, d, h),
                        cat.n(b, h, k),
                        cat.n(a, k, e),
                    ];
                    if dims.contains(&0) {
                        continue;
                    }
                    for idx in multi_indices(&dims) {
                        let [al, be, ga, de, ze, et] = [idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]];
                        let mut lhs = zero;
                        for ep in 0..cat.n(f, h, e) {
                            lhs += cat.f_entry([f, c, d, e], [g, be, ga], [h, de, ep])
                                * cat.f_entry([a, b, h, e], [f, al, ep], [k, ze, et]);
                        }
                        let mut rhs = zero;
                        for l in 0..r {
                            for [ka, la, mu] in
                                multi_indices(&[cat.n(b, c, l), cat.n(a, l, g), cat.n(l, d, k)])
                                    .into_iter()
                                    .map(|v| [v[0], v[1], v[2]])
                            {
                                rhs += cat.f_entry([a, b, c, g], [f, al, be], [l, ka, la])
                                    * cat.f_entry([a, l, d, e], [g, la, ga], [k, mu, et])
                                    * cat.f_entry([b, c, d, k], [l, ka, mu], [h, de, ze]);
                            }
                        }
                        rep.instances += 1;
                        let res = (lhs - rhs).norm();
                        if res > rep.max_residual {
                            rep.max_residual = res;
                            rep.worst = Some(outer);
                        }
                    }
                }
            }
        }
    }
}
