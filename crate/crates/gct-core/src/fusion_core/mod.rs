//! Fusion data: groups, graded fusion rings, F-symbols, strict actions and
//! crossed extensions, with validation on load.

mod action;
mod category;
mod crossed;
mod fpdim;
mod group;
mod load;
mod pentagon;

pub use action::{verify_action, Action, ActionReport};
pub use category::{Category, Channel, FMatrix};
pub use crossed::{build_crossed_extension, crossed_label_index};
pub use fpdim::fp_dimensions;
pub use group::Group;
pub use load::{
    bundled, bundled_json, bundled_names, load_category, RawAction, RawActions, RawCategory, RawF,
    RawGroup,
};
pub use pentagon::verify_pentagon;
pub use pentagon::PentagonReport;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn vec_z2_is_pointed_and_identity_graded() {
        let c = bundled("vec_z2").unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.group.order(), 2);
        assert!(c.is_pointed());
        assert_eq!((0..2).map(|a| c.deg(a)).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn ising_matches_standard_data() {
        let c = bundled("ising").unwrap();
        assert_eq!(c.labels, vec!["1", "psi", "sigma"]);
        assert_eq!(c.fuse(2, 2), vec![(0, 1), (1, 1)]);
        assert_eq!(c.fuse(1, 2), vec![(2, 1)]);
        assert_eq!(c.deg(2), 1);
        let f = c.fmat(2, 2, 2, 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [[h, h], [h, -h]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!((f.m[(i, j)] - C64::new(w, 0.0)).norm() < 1e-12);
            }
        }
        let g = c.fmat(1, 2, 1, 2).unwrap();
        assert!((g.m[(0, 0)] + C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn forced_fusion_inconsistency_is_rejected() {
        // σσ = 1 + ψ + σ is still an associative ring; the grading breaks.
        let mut raw = bundled("ising").unwrap().to_raw();
        raw.n.push([2, 2, 2, 1]);
        let err = Category::from_raw(raw, crate::DEFAULT_TOL).unwrap_err();
        assert_eq!(err, CatError::Invariant("grading violated at (sigma,sigma,sigma)".into()));

        let mut raw = bundled("ising").unwrap().to_raw();
        raw.n.push([1, 1, 2, 1]);
        let err = Category::from_raw(raw, crate::DEFAULT_TOL).unwrap_err();
        assert_eq!(err, CatError::Invariant("associativity violated at (psi,psi,sigma)".into()));
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(Category::from_json_str("{ not json"), Err(CatError::Parse(_))));
        assert!(matches!(load_category("/nonexistent/cat.json"), Err(CatError::Io(_))));
    }

    #[test]
    fn pentagons_hold() {
        assert_eq!(verify_pentagon(&bundled("vec_z2").unwrap(), 1e-12).max_residual, 0.0);
        for name in bundled_names() {
            let rep = verify_pentagon(&bundled(name).unwrap(), 1e-12);
            assert!(rep.pass, "{name}: {}", rep.max_residual);
            assert!(rep.instances > 0);
        }
    }

    #[test]
    fn corrupted_f_symbol_breaks_the_pentagon() {
        let mut c = bundled("fib").unwrap();
        let f = c.fsym.get_mut(&[1, 1, 1, 1]).unwrap();
        f.m[(1, 1)] = -f.m[(1, 1)];
        assert!(!verify_pentagon(&c, 1e-12).pass);
    }

    #[test]
    fn actions_on_vec_z3() {
        let c = bundled("vec_z3").unwrap();
        for name in ["inversion", "trivial"] {
            let rep = verify_action(&c, c.action(name).unwrap(), 1e-12);
            assert!(rep.pass(), "{name}: {:?}", rep.violation);
        }
        let mut bad = c.action("inversion").unwrap().clone();
        bad.perm[0] = vec![0, 2, 1];
        let v = verify_action(&c, &bad, 1e-12).violation.unwrap();
        assert_eq!(v, "perm(neutral) is not the identity");
    }

    #[test]
    fn non_homomorphic_label_map_is_named() {
        let c = bundled("vec_z3").unwrap();
        let mut bad = Action::trivial(c.group.clone(), c.rank());
        // An order-two element acting by a 3-cycle.
        bad.perm[1] = vec![1, 2, 0];
        let v = verify_action(&c, &bad, 1e-12).violation.unwrap();
        assert!(v.contains("perm(g)perm(h) ≠ perm(gh)"), "{v}");
    }

    #[test]
    fn crossed_extension_of_z3_is_s3_like() {
        let d0 = bundled("vec_z3").unwrap();
        let ext = build_crossed_extension(&d0, d0.action("inversion").unwrap()).unwrap();
        assert_eq!(ext.rank(), 6);
        assert!(verify_pentagon(&ext, 1e-12).pass);
        let d = fp_dimensions(&ext);
        assert!((d.iter().map(|x| x * x).sum::<f64>() - 6.0).abs() < 1e-9);
        // Labels of grade i square to the unit: (i,a)(i,a) = (0, -a + a).
        let ia = crossed_label_index(&ext.group, 3, 1, 1);
        assert_eq!(ext.fuse(ia, ia), vec![(0, 1)]);
    }
}
