use super::Category;

/// Frobenius–Perron dimensions, normalized so the unit has dimension 1.
///
/// Power iteration on `w_b = Σ_{a,c} N_{ab}^c v_c`; the matrix is entrywise
/// positive for a fusion ring, so the iteration converges to the Perron vector.
pub fn fp_dimensions(cat: &Category) -> Vec<f64> {
    let r = cat.rank();
    let mut m = vec![vec![0.0; r]; r];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                m[b][c] += cat.n(a, b, c) as f64;
            }
        }
    }
    let mut v = vec![1.0; r];
    for _ in 0..10_000 {
        let mut w: Vec<f64> = (0..r).map(|b| (0..r).map(|c| m[b][c] * v[c]).sum()).collect();
        let s = w[0];
        if s <= 0.0 || !s.is_finite() {
            break;
        }
        for x in &mut w {
            *x /= s;
        }
        let delta = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    v
}
