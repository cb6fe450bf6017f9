use super::*;
use crate::fusion_core::{bundled, fp_dimensions, Action, Category, Group};
use crate::morphisms::{obj_tensor, simple, HomBlock};
use crate::tube::Subcat;
use crate::C64;

fn ising_relative(cat: &Category) -> CenterData {
    relative_center(cat, &Subcat::Degree0, 7).unwrap()
}

fn z3_inversion() -> (Category, Action) {
    let cat = bundled("vec_z3").unwrap();
    let act = cat.action("inversion").unwrap().clone();
    (cat, act)
}

/// `σ` in Ising with `E(1) = 1` and `E(ψ) = c`.
fn sigma_with(ctx: &CenterCtx, c: C64) -> HalfBraiding {
    let x = simple(2);
    let e = ctx
        .labels
        .iter()
        .map(|&p| {
            let mut b = ctx.m.zero(&obj_tensor(&x, &simple(p)), &obj_tensor(&simple(p), &x));
            let s = if p == 0 { C64::new(1.0, 0.0) } else { c };
            for m in b.ch.iter_mut().filter(|m| m.nrows() == 1 && m.ncols() == 1) {
                m[(0, 0)] = s;
            }
            b
        })
        .collect();
    HalfBraiding { grade: 1, object: x, e }
}

fn e_psi(ctx: &CenterCtx, hb: &HalfBraiding) -> C64 {
    hb.e[ctx.label_pos(1).unwrap()].scalar(2)
}

fn iso(ctx: &CenterCtx, x: &HalfBraiding, y: &HalfBraiding) -> bool {
    ctx.hom_center(x, y).dim == 1
}

#[test]
fn unit_object_verifies_exactly() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    assert_eq!(ctx.verify_half_braiding(&ctx.unit_object()).max_residual(), 0.0);
}

#[test]
fn ising_sigma_braids_with_psi_by_plus_minus_i() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    for c in [C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
        assert!(ctx.verify_half_braiding(&sigma_with(&ctx, c)).max_residual() < 1e-9);
    }
    let bad = ctx.verify_half_braiding(&sigma_with(&ctx, C64::new(1.0, 0.0)));
    assert!((bad.max_residual() - 2.0).abs() < 1e-9, "{}", bad.max_residual());
}

#[test]
fn ising_grade_one_simples_are_the_two_solutions() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    let ex = data.extractions.iter().find(|e| e.grade == 1).unwrap();
    assert_eq!(ex.simples.len(), 2);
    let mut signs: Vec<f64> = ex
        .simples
        .iter()
        .map(|s| {
            assert_eq!(ctx.multiplicities(s), vec![0, 0, 1]);
            let c = e_psi(&ctx, s);
            assert!(c.re.abs() < 1e-9 && (c.im.abs() - 1.0).abs() < 1e-9);
            c.im.signum()
        })
        .collect();
    signs.sort_by(f64::total_cmp);
    assert_eq!(signs, vec![-1.0, 1.0]);
    let plus = sigma_with(&ctx, C64::new(0.0, 1.0));
    let minus = sigma_with(&ctx, C64::new(0.0, -1.0));
    assert_eq!(ctx.hom_center(&plus, &minus).dim, 0);
    assert_eq!(ctx.hom_center(&plus, &plus).dim, 1);
}

#[test]
fn vec_z2_full_center_is_four_sign_characters() {
    let cat = bundled("vec_z2").unwrap();
    let data = relative_center(&cat, &Subcat::All, 1).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    assert_eq!(s.len(), 4);
    let mut pairs: Vec<(usize, i32)> = s
        .iter()
        .map(|x| {
            let a = x.object[0][0];
            let c = x.e[ctx.label_pos(1).unwrap()].scalar(1 - a);
            assert!(c.im.abs() < 1e-9 && (c.re.abs() - 1.0).abs() < 1e-9);
            (a, c.re.signum() as i32)
        })
        .collect();
    pairs.sort();
    assert_eq!(pairs, vec![(0, -1), (0, 1), (1, -1), (1, 1)]);
}

#[test]
fn schur_and_additivity() {
    for (name, sub) in [("vec_z2", Subcat::All), ("ising", Subcat::Degree0), ("fib", Subcat::All)] {
        let cat = bundled(name).unwrap();
        let data = relative_center(&cat, &sub, 3).unwrap();
        let ctx = data.ctx();
        let s = data.simples();
        for (i, x) in s.iter().enumerate() {
            assert!(ctx.verify_half_braiding(x).pass(1e-8));
            for (j, y) in s.iter().enumerate() {
                assert_eq!(ctx.hom_center(x, y).dim, usize::from(i == j), "{name} ({i},{j})");
            }
        }
        let x = &s[s.len() - 1];
        assert_eq!(ctx.hom_center(x, &ctx.direct_sum(&[x.clone(), x.clone()])).dim, 2);
    }
}

#[test]
fn conjugates_in_ising() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    let unit = ctx.unit_object();
    let cu = ctx.conjugate(&unit).unwrap();
    assert!(cu.e.iter().zip(&unit.e).all(|(a, b)| a.dist(b) < 1e-12));
    let s = data.simples();
    for x in &s {
        let c = ctx.conjugate(x).unwrap();
        assert!(ctx.verify_half_braiding(&c).pass(1e-9));
        assert_eq!(c.grade, ctx.group.inv(x.grade));
        assert_eq!(s.iter().filter(|y| iso(&ctx, &c, y)).count(), 1);
        assert!(iso(&ctx, &ctx.conjugate(&c).unwrap(), x));
    }
}

#[test]
fn tensor_products_in_ising() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    let s = data.simples();
    let unit = ctx.unit_object();
    for x in &s {
        assert!(iso(&ctx, &ctx.tensor(&unit, x).unwrap(), x));
    }
    let plus = sigma_with(&ctx, C64::new(0.0, 1.0));
    let sq = ctx.tensor(&plus, &plus).unwrap();
    assert_eq!(sq.grade, 0);
    let total: usize = s.iter().filter(|y| y.grade == 0).map(|y| ctx.hom_center(y, &sq).dim).sum();
    assert_eq!(total, 2);

    let f = fusion_table(&ctx, &s).unwrap();
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let l: usize = (0..n).map(|e| f[a][b][e] * f[e][c][d]).sum();
                    let r: usize = (0..n).map(|e| f[b][c][e] * f[a][e][d]).sum();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn induced_objects() {
    let cat = bundled("vec_z2").unwrap();
    let data = relative_center(&cat, &Subcat::All, 1).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    let ind = ctx.induce(1, 0);
    assert!(ctx.verify_half_braiding(&ind).pass(1e-9));
    assert_eq!(ctx.multiplicities(&ind), vec![0, 2]);
    assert_eq!(s.iter().filter(|y| ctx.hom_center(y, &ind).dim == 1).count(), 2);

    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    let ind = ctx.induce(2, 1);
    assert!(ctx.verify_half_braiding(&ind).pass(1e-9));
    assert_eq!(ctx.multiplicities(&ind), vec![0, 0, 2]);
    let both = ctx.direct_sum(&[sigma_with(&ctx, C64::new(0.0, 1.0)), sigma_with(&ctx, C64::new(0.0, -1.0))]);
    assert_eq!(ctx.hom_center(&ind, &both).dim, 2);
    assert_eq!(ctx.hom_center(&ind, &ind).dim, 2);

    let ind = ctx.induce(0, 0);
    assert_eq!(ctx.hom_center(&ctx.unit_object(), &ind).dim, 1);
}

#[test]
fn twisted_permutation_half_braiding() {
    let (cat, act) = z3_inversion();
    let ctx = CenterCtx::new(&cat, vec![0, 1, 2], Some(act), cat.group.clone(), true);
    let x = crate::morphisms::sum_of(&[0, 1, 2]);
    let e = (0..3)
        .map(|p| {
            let mut b = ctx.m.zero(&obj_tensor(&x, &simple(p)), &obj_tensor(&simple(ctx.tw(1, p)), &x));
            for m in b.ch.iter_mut() {
                m[(0, 0)] = C64::new(1.0, 0.0);
            }
            b
        })
        .collect();
    let hb = HalfBraiding { grade: 1, object: x, e };
    assert!(ctx.verify_half_braiding(&hb).max_residual() < 1e-9);

    // A simple object cannot carry an inversion-twisted half-braiding.
    let x = simple(1);
    let e: Vec<HomBlock> = (0..3)
        .map(|p| ctx.m.zero(&obj_tensor(&x, &simple(p)), &obj_tensor(&simple(ctx.tw(1, p)), &x)))
        .collect();
    assert!(e.iter().any(|b| !b.is_square()));
    let rep = ctx.verify_half_braiding(&HalfBraiding { grade: 1, object: x, e });
    assert!(!rep.pass(1e-8));
}

#[test]
fn neutral_twist_reduces_to_untwisted_check() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 2).unwrap();
    let ctx = data.ctx();
    let plain = CenterCtx::new(&cat, vec![0, 1, 2], None, cat.group.clone(), false);
    for x in data.simples().iter().filter(|x| x.grade == 0) {
        let a = ctx.verify_half_braiding(x).max_residual();
        let b = plain.verify_half_braiding(x).max_residual();
        assert_eq!(a, b);
    }
}

#[test]
fn inversion_acts_on_the_z3_double() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 2).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    assert_eq!(s.len(), 10);
    for x in &s {
        let y = ctx.g_action(x, 1).unwrap();
        assert!(ctx.verify_half_braiding(&y).pass(1e-9));
        let yy = ctx.g_action(&y, 1).unwrap();
        assert_eq!(yy.object, x.object);
        assert!(yy.e.iter().zip(&x.e).all(|(a, b)| a.dist(b) < 1e-12));
        assert_eq!(s.iter().filter(|z| iso(&ctx, &y, z)).count(), 1);
    }
    let zero: Vec<HalfBraiding> = s.iter().filter(|x| x.grade == 0).cloned().collect();
    assert_eq!(zero.len(), 9);
    let mut fixed = 0;
    for x in &zero {
        if iso(&ctx, &ctx.g_action(x, 1).unwrap(), x) {
            fixed += 1;
        }
    }
    assert_eq!(fixed, 1);
    let tab = ctx.action_table(&s).unwrap();
    let mut sizes: Vec<usize> = ctx
        .orbits(&tab, s.len())
        .iter()
        .filter(|(m, _)| s[m[0]].grade == 0)
        .map(|(m, _)| m.len())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 2, 2, 2]);
}

#[test]
fn dimension_identity() {
    let check = |data: &CenterData, cat: &Category, sub: &[usize], whole: &[usize]| {
        let ctx = data.ctx();
        let sum: f64 = data.simples().iter().map(|x| ctx.qdim(x).powi(2)).sum();
        let d = fp_dimensions(cat);
        let dim = |ls: &[usize]| ls.iter().map(|&a| d[a] * d[a]).sum::<f64>();
        let want = dim(sub) * dim(whole);
        assert!((sum - want).abs() < 1e-6 * want, "{sum} vs {want}");
    };
    let z2 = bundled("vec_z2").unwrap();
    check(&relative_center(&z2, &Subcat::All, 1).unwrap(), &z2, &[0, 1], &[0, 1]);
    let ising = bundled("ising").unwrap();
    check(&ising_relative(&ising), &ising, &[0, 1], &[0, 1, 2]);
    let (z3, act) = z3_inversion();
    let data = g_center(&z3, &act, 1).unwrap();
    let ctx = data.ctx();
    let sum: f64 = data.simples().iter().map(|x| ctx.qdim(x).powi(2)).sum();
    // Vec_Z3 inside the Z2-crossed extension, which has dimension 6.
    assert!((sum - 18.0).abs() < 1e-6);
}

#[test]
fn regular_and_character_twisted_equivariant_objects() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 4).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    let twist = |eq: &EquivariantObject| EquivariantObject {
        base: eq.base.clone(),
        cocycle: eq.cocycle.iter().enumerate().map(|(h, c)| c.scale(C64::new(if h == 0 { 1.0 } else { -1.0 }, 0.0))).collect(),
    };
    let free = s
        .iter()
        .find(|x| x.grade == 0 && !iso(&ctx, &ctx.g_action(x, 1).unwrap(), x))
        .unwrap();
    let reg = ctx.regular_object(free).unwrap();
    assert!(ctx.verify_equivariant(&reg).unwrap().pass(1e-9));
    let tw = twist(&reg);
    assert!(ctx.verify_equivariant(&tw).unwrap().pass(1e-9));
    assert_eq!(ctx.hom_equivariant(&reg, &tw).len(), 1);
    assert_eq!(ctx.hom_equivariant(&reg, &reg).len(), 1);
    let gauged = ctx.gauge_equivariant(&reg, &ctx.regular_gauge(&reg, &[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]));
    assert!(ctx.verify_equivariant(&gauged).unwrap().pass(1e-9));

    let unit = ctx.trivial_equivariant(&ctx.unit_object());
    assert!(ctx.verify_equivariant(&unit).unwrap().pass(1e-12));
    let sign = twist(&unit);
    assert!(ctx.verify_equivariant(&sign).unwrap().pass(1e-12));
    assert_eq!(ctx.hom_equivariant(&unit, &sign).len(), 0);

    let reg_unit = ctx.regular_object(&ctx.unit_object()).unwrap();
    assert_eq!(ctx.hom_equivariant(&reg_unit, &reg_unit).len(), 2);
    assert_eq!(ctx.hom_equivariant(&unit, &reg_unit).len(), 1);
    assert_eq!(ctx.hom_equivariant(&sign, &reg_unit).len(), 1);
}

#[test]
fn equivariant_counts() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 5).unwrap();
    let c = data.ctx().equivariant_count(&data.simples(), 5).unwrap();
    assert_eq!(c.count, 8);
    assert_eq!(c.regular_count, Some(8));
    assert!(c.assumes_trivial_obstruction);

    // Trivial Z2 on Vec_Z2: the crossed extension is Vec_{Z2×Z2}, whose
    // double has |Z2×Z2|² simples.
    let z2 = bundled("vec_z2").unwrap().forget_grading();
    let g = Group::cyclic(2);
    let klein = g.product(&g);
    let want: usize = klein.conjugacy_classes().iter().map(|cl| klein.subgroup_class_count(&klein.centralizer(cl[0]))).sum();
    assert_eq!(want, 16);
    let data = g_center(&z2, &Action::trivial(g, z2.rank()), 5).unwrap();
    let c = data.ctx().equivariant_count(&data.simples(), 5).unwrap();
    assert_eq!(data.simples().len(), 8);
    assert_eq!(c.count, want);

    let fib = bundled("fib").unwrap();
    let trivial = Action::trivial(Group::trivial(), fib.rank());
    let data = g_center(&fib, &trivial, 5).unwrap();
    let c = data.ctx().equivariant_count(&data.simples(), 5).unwrap();
    assert_eq!(c.count, data.simples().len());
}

#[test]
fn equivariant_braiding_of_the_s3_double() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 6).unwrap();
    let ctx = data.ctx();
    let eqs = ctx.equivariant_simples(&data.simples(), 6).unwrap();
    assert_eq!(eqs.len(), 8);
    let mut dims: Vec<i64> = eqs.iter().map(|e| ctx.qdim(&e.base).round() as i64).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    let rep = ctx.verify_equivariant_braiding(&eqs).unwrap();
    assert!(rep.pass(1e-8), "{rep:?}");
    assert!(rep.max_monodromy > 0.1);
    assert!(rep.unit_row < 1e-12);
}

#[test]
fn g_braiding_on_the_z3_g_center() {
    let (cat, act) = z3_inversion();
    let data = g_center(&cat, &act, 8).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    let br = ctx.build_g_braiding(&s).unwrap();
    for (i, row) in br.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert!(e.unitarity_defect() < 1e-9);
            let want_src = obj_tensor(&s[i].object, &s[j].object);
            assert_eq!(e.src, want_src);
            assert_eq!(e.tgt.len(), want_src.len());
        }
    }
    let (fwd, rev) = ctx.verify_both(&s, &br).unwrap();
    assert!(fwd.pass(1e-8) && rev.pass(1e-8), "{fwd:?} {rev:?}");

    let mut bad = br.clone();
    let i = s.iter().position(|x| x.grade == 0 && !iso(&ctx, x, &ctx.unit_object())).unwrap();
    bad.entries[i][i] = bad.entries[i][i].scale(C64::new(-1.0, 0.0));
    let rep = ctx.verify_g_braiding(&s, &bad).unwrap();
    assert!(rep.bf2 > 0.1 || rep.bf1 > 0.1, "{rep:?}");
}

#[test]
fn reverse_braiding_on_the_toric_code() {
    let cat = bundled("vec_z2").unwrap();
    let data = relative_center(&cat, &Subcat::All, 1).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    let fwd = ctx.build_g_braiding(&s).unwrap();
    let rev = ctx.reverse_braiding(&s, &fwd).unwrap();
    let unit = s.iter().position(|x| iso(&ctx, x, &ctx.unit_object())).unwrap();
    for (i, row) in rev.entries.iter().enumerate() {
        let same = row.iter().zip(&fwd.entries[i]).all(|(a, b)| a.dist(b) < 1e-9);
        assert_eq!(same, i == unit, "row {i}");
    }
    let ident = |e: &HomBlock| e.dist(&ctx.m.identity(&e.src)) < 1e-12;
    assert!(rev.entries[unit].iter().all(ident));
    let back = ctx.reverse_braiding(&s, &rev).unwrap();
    for (a, b) in back.entries.iter().flatten().zip(fwd.entries.iter().flatten()) {
        assert!(a.dist(b) < 1e-9);
    }
}

#[test]
fn braiding_unavailable_when_simples_leave_the_braided_labels() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    assert!(matches!(ctx.build_g_braiding(&data.simples()), Err(CenterError::Braiding(_))));
}

#[test]
fn cross_grade_intertwiners_vanish() {
    let cat = bundled("ising").unwrap();
    let data = ising_relative(&cat);
    let ctx = data.ctx();
    let s = data.simples();
    for x in &s {
        for y in s.iter().filter(|y| y.grade != x.grade) {
            assert_eq!(ctx.hom_center(x, y).dim, 0);
            assert_eq!(ctx.intertwiner_space(x, y).dim, 0);
        }
    }
}

#[test]
fn braiding_file_round_trip() {
    let cat = bundled("vec_z2").unwrap();
    let data = relative_center(&cat, &Subcat::All, 1).unwrap();
    let ctx = data.ctx();
    let s = data.simples();
    let br = ctx.build_g_braiding(&s).unwrap();
    let file = BraidingFile::new(&br, 1, "vec_z2", None, Some("all".into()));
    let text = serde_json::to_string(&file).unwrap();
    let back: BraidingFile = serde_json::from_str(&text).unwrap();
    let br2 = back.to_data(&ctx, &s).unwrap();
    for (a, b) in br2.entries.iter().flatten().zip(br.entries.iter().flatten()) {
        assert!(a.dist(b) < 1e-12);
    }
    let empty = BraidingFile { entries: vec![], ..back };
    assert!(empty.to_data(&ctx, &s).is_err());
}

#[test]
fn rounding_helpers() {
    assert_eq!(round12(0.1 + 0.2), 0.3);
    assert_eq!(round12(-1e-15), 0.0);
    assert_eq!(round_sig(1.23456e-9), 1.23e-9);
}
