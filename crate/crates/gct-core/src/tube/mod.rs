//! Relative and G-twisted tube algebras as finite-dimensional *-algebras
//! with explicit structure constants, their Wedderburn decomposition, and
//! the comparison between the twisted and the crossed-extension pictures.

mod algebra;
mod iso;
mod verify;
mod wedderburn;

pub use algebra::{build_tube, build_twisted_tube, BasisElement, Component, Subcat, TubeAlgebra};
pub use iso::{compare, twisted_untwisted_iso, IsoReport};
pub use verify::{verify_algebra, AlgebraReport};
pub use wedderburn::{decompose, decompose_component, verify_wedderburn, Block, WedderburnData, WedderburnReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TubeError {
    #[error("invalid subcategory: {0}")]
    Subcat(String),
    #[error("invalid action: {0}")]
    Action(String),
    #[error("degenerate decomposition: {0}")]
    Degenerate(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_core::bundled;

    fn dims(t: &TubeAlgebra) -> Vec<usize> {
        t.components.iter().map(|c| c.dim()).collect()
    }

    fn ranks(t: &TubeAlgebra, ci: usize) -> Vec<usize> {
        decompose_component(t, ci, 7).unwrap().blocks.iter().map(|b| b.rank).collect()
    }

    #[test]
    fn vec_z2_full_tube() {
        let cat = bundled("vec_z2").unwrap();
        let t = build_tube(&cat, &Subcat::All).unwrap();
        assert_eq!(dims(&t), vec![4]);
        assert!(verify_algebra(&t).pass(1e-10));
        assert_eq!(ranks(&t, 0), vec![1, 1, 1, 1]);
    }

    #[test]
    fn fib_full_tube() {
        // Σ_{σ,π,ρ} N_{σπ}^{πρ}-dimensional hom spaces: 1+1+1+1+1+2 = 7.
        let cat = bundled("fib").unwrap();
        let t = build_tube(&cat, &Subcat::All).unwrap();
        assert_eq!(dims(&t), vec![7]);
        assert!(verify_algebra(&t).pass(1e-10));
        let wd = decompose_component(&t, 0, 1).unwrap();
        let mut r: Vec<usize> = wd.blocks.iter().map(|b| b.rank).collect();
        r.sort_unstable();
        assert_eq!(r, vec![1, 1, 1, 2]);
        assert!(verify_wedderburn(&t, &wd).pass(1e-9));
    }

    #[test]
    fn ising_relative_tube() {
        let cat = bundled("ising").unwrap();
        let t = build_tube(&cat, &Subcat::Degree0).unwrap();
        assert_eq!(dims(&t), vec![4, 2]);
        assert!(verify_algebra(&t).pass(1e-10));
        for ci in 0..2 {
            let wd = decompose_component(&t, ci, 3).unwrap();
            assert!(verify_wedderburn(&t, &wd).pass(1e-9));
        }
        assert_eq!(ranks(&t, 0), vec![1, 1, 1, 1]);
        assert_eq!(ranks(&t, 1), vec![1, 1]);
    }

    #[test]
    fn vec_s3_full_tube() {
        let cat = bundled("vec_s3").unwrap();
        let t = build_tube(&cat, &Subcat::All).unwrap();
        assert_eq!(dims(&t), vec![36]);
        let wd = decompose_component(&t, 0, 11).unwrap();
        assert_eq!(wd.blocks.len(), 8);
        assert!(verify_wedderburn(&t, &wd).pass(1e-9));
    }

    #[test]
    fn twisted_vec_z3_matches_crossed_extension() {
        let cat = bundled("vec_z3").unwrap();
        let act = cat.action("inversion").unwrap().clone();
        let t = build_twisted_tube(&cat, &act).unwrap();
        assert_eq!(dims(&t), vec![9, 9]);
        assert!(verify_algebra(&t).pass(1e-10));
        let rep = twisted_untwisted_iso(&cat, &act).unwrap();
        assert!(rep.pass(1e-9), "{rep:?}");
    }

    #[test]
    fn subcat_must_be_closed() {
        let cat = bundled("fib").unwrap();
        let e = build_tube(&cat, &Subcat::List(vec![0, 1])).map(|_| ());
        assert!(e.is_ok());
        let cat = bundled("ising").unwrap();
        assert!(build_tube(&cat, &Subcat::List(vec![0])).is_ok());
        assert!(matches!(build_tube(&cat, &Subcat::List(vec![1])), Err(TubeError::Subcat(_))));
        assert!(matches!(build_tube(&cat, &Subcat::List(vec![0, 2])), Err(TubeError::Subcat(_))));
        assert_eq!(Subcat::parse("1,psi", &cat).unwrap(), Subcat::List(vec![0, 1]));
        assert!(Subcat::parse("nope", &cat).is_err());
    }

    #[test]
    fn decomposition_is_seed_independent() {
        let cat = bundled("fib").unwrap();
        let t = build_tube(&cat, &Subcat::All).unwrap();
        let a = decompose_component(&t, 0, 1).unwrap();
        let b = decompose_component(&t, 0, 99).unwrap();
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            assert_eq!(x.corner, y.corner);
            let d = x.projection.iter().zip(&y.projection).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
            assert!(d < 1e-8);
        }
    }

    /// `Σ_{σ, ρ ∈ C_g} Σ_{π} Σ_e N_{σπ}^e N_{g[π]ρ}^e` per grade, from fusion rules alone.
    fn counted_dims(cat: &crate::fusion_core::Category, pis: &[usize], graded: bool, act: Option<&crate::fusion_core::Action>) -> Vec<usize> {
        let r = cat.rank();
        let grades = match act {
            Some(a) => a.group.order(),
            None if graded => cat.group.order(),
            None => 1,
        };
        (0..grades)
            .map(|g| {
                let objs: Vec<usize> = (0..r).filter(|&a| !graded || cat.deg(a) == g).collect();
                let tw = |p: usize| act.map_or(p, |a| a.apply(g, p));
                let mut n = 0;
                for &p in pis {
                    for &x in &objs {
                        for &y in &objs {
                            n += (0..r).map(|e| cat.n(x, p, e) * cat.n(tw(p), y, e)).sum::<usize>();
                        }
                    }
                }
                n
            })
            .collect()
    }

    #[test]
    fn dimensions_match_independent_count() {
        let ising = bundled("ising").unwrap();
        let t = build_tube(&ising, &Subcat::Degree0).unwrap();
        assert_eq!(dims(&t), counted_dims(&ising, &[0, 1], true, None));
        for name in ["vec_z2", "fib", "vec_s3"] {
            let c = bundled(name).unwrap();
            let all: Vec<usize> = (0..c.rank()).collect();
            let t = build_tube(&c, &Subcat::All).unwrap();
            assert_eq!(dims(&t), counted_dims(&c, &all, false, None), "{name}");
        }
        let z3 = bundled("vec_z3").unwrap();
        let act = z3.action("inversion").unwrap().clone();
        let t = build_twisted_tube(&z3, &act).unwrap();
        assert_eq!(dims(&t), counted_dims(&z3, &[0, 1, 2], false, Some(&act)));
    }

    #[test]
    fn trivial_group_twisted_tube_is_the_full_tube() {
        let cat = bundled("fib").unwrap();
        let act = crate::fusion_core::Action::trivial(crate::fusion_core::Group::trivial(), cat.rank());
        let tw = build_twisted_tube(&cat, &act).unwrap();
        let full = build_tube(&cat, &Subcat::All).unwrap();
        assert_eq!(tw.consts, full.consts);
        assert_eq!(tw.star, full.star);
        assert_eq!(tw.trace, full.trace);
        assert_eq!(twisted_untwisted_iso(&cat, &act).unwrap().max_deviation(), 0.0);
    }

    #[test]
    fn trivial_z2_action_on_vec_z2() {
        let cat = bundled("vec_z2").unwrap().forget_grading();
        let act = crate::fusion_core::Action::trivial(crate::fusion_core::Group::cyclic(2), cat.rank());
        let rep = twisted_untwisted_iso(&cat, &act).unwrap();
        assert!(rep.pass(1e-8), "{rep:?}");
    }

    #[test]
    fn corrupted_constant_is_flagged() {
        let cat = bundled("fib").unwrap();
        let mut t = build_tube(&cat, &Subcat::All).unwrap();
        let k = t.consts[0].iter().position(|z| z.norm() > 0.1).unwrap();
        t.consts[0][k] += crate::C64::new(0.5, 0.0);
        assert!(verify_algebra(&t).associativity > 1e-3);
    }

    #[test]
    fn products_across_grades_vanish_exactly() {
        let cat = bundled("ising").unwrap();
        let t = build_tube(&cat, &Subcat::Degree0).unwrap();
        let (a, b) = (t.components[0].range.clone(), t.components[1].range.clone());
        for i in a {
            for j in b.clone() {
                assert!(t.mul_global(i, j).iter().all(|z| *z == crate::C64::new(0.0, 0.0)));
                assert!(t.mul_global(j, i).iter().all(|z| *z == crate::C64::new(0.0, 0.0)));
            }
        }
    }

    #[test]
    fn unit_is_two_sided() {
        for (name, sub) in [("ising", Subcat::Degree0), ("fib", Subcat::All)] {
            let t = build_tube(&bundled(name).unwrap(), &sub).unwrap();
            assert!(verify_algebra(&t).unit < 1e-9);
        }
    }
}
