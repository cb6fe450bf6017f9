//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::Instant;

use gct_core::center::{center_report, g_center, relative_center, CenterCtx, CenterData, HalfBraiding};
use gct_core::fusion_core::{bundled, bundled_names, verify_pentagon, Action, Category, Group};
use gct_core::morphisms::Morphisms;
use gct_core::tube::{build_tube, decompose_component, twisted_untwisted_iso, Subcat};
use gct_core::C64;

const TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Example {
    name: &'static str,
    data: CenterData,
}

impl Example {
    fn simples(&self) -> Vec<HalfBraiding> {
        self.data.simples()
    }
}

fn z3_action(cat: &Category) -> Action {
    cat.action("inversion").expect("vec_z3 defines the inversion action").clone()
}

/// Every center the criteria quantify over.
fn examples() -> Vec<Example> {
    let rel = |name: &'static str, sub: Subcat| Example {
        name,
        data: relative_center(&bundled(name).unwrap(), &sub, 1).unwrap(),
    };
    let z3 = bundled("vec_z3").unwrap();
    vec![
        rel("vec_z2", Subcat::All),
        rel("ising", Subcat::Degree0),
        rel("fib", Subcat::All),
        rel("vec_s3", Subcat::All),
        Example { name: "vec_z3 (G-center)", data: g_center(&z3, &z3_action(&z3), 1).unwrap() },
    ]
}

/// The group underlying a pointed category, read off its fusion rules.
fn group_of_pointed(cat: &Category) -> Group {
    let r = cat.rank();
    let table = (0..r).map(|a| (0..r).map(|b| cat.fuse(a, b)[0].0).collect()).collect();
    Group::new(cat.labels.clone(), table).unwrap()
}

/// `Σ_{[c]} |Irr(C_G(c))|`, counting irreducibles by conjugacy classes.
fn double_simples(g: &Group) -> usize {
    g.conjugacy_classes().iter().map(|cl| g.subgroup_class_count(&g.centralizer(cl[0]))).sum()
}

fn criterion_1() -> Outcome {
    let mut worst_pent: f64 = 0.0;
    let mut worst_conj: f64 = 0.0;
    for name in bundled_names() {
        let cat = bundled(name).unwrap();
        let p = verify_pentagon(&cat, 1e-12);
        ensure(p.max_residual < 1e-12, format!("{name}: pentagon residual {:.2e}", p.max_residual))?;
        worst_pent = worst_pent.max(p.max_residual);
        let m = Morphisms::new(&cat);
        for a in 0..cat.rank() {
            let s = m.conjugate_solution(a).map_err(|e| format!("{name}: {e}"))?;
            let r = m.conjugate_residuals(&s);
            let worst = r.norm.max(r.zigzag);
            ensure(worst < 1e-9, format!("{name}/{}: conjugate residual {worst:.2e}", cat.label(a)))?;
            worst_conj = worst_conj.max(worst);
        }
    }
    Ok(format!("pentagon max {worst_pent:.1e}, conjugate equations max {worst_conj:.1e}"))
}

fn criterion_2(ex: &[Example]) -> Outcome {
    // Expected counts per grade. vec_s3 and vec_z2 use the group oracle.
    let s3 = double_simples(&group_of_pointed(&bundled("vec_s3").unwrap()));
    let z2 = double_simples(&group_of_pointed(&bundled("vec_z2").unwrap()));
    ensure(s3 == 8 && z2 == 4, format!("group oracle gave {s3} and {z2}"))?;
    let expected: [(&str, Vec<usize>); 4] =
        [("vec_z2", vec![z2]), ("ising", vec![4, 2]), ("fib", vec![4]), ("vec_s3", vec![s3])];
    let mut parts = Vec::new();
    for (name, want) in expected {
        let e = ex.iter().find(|e| e.name == name).unwrap();
        let mut got = Vec::new();
        for (x, wd) in e.data.extractions.iter().zip(&e.data.blocks) {
            ensure(
                x.simples.len() == wd.blocks.len(),
                format!("{name}: {} simples for {} blocks", x.simples.len(), wd.blocks.len()),
            )?;
            let sq: usize = wd.blocks.iter().map(|b| b.rank * b.rank).sum();
            ensure(sq == wd.dim, format!("{name}: Σm² = {sq} but dim = {}", wd.dim))?;
            got.push(x.simples.len());
        }
        ensure(got == want, format!("{name}: counts {got:?}, expected {want:?}"))?;
        parts.push(format!("{name} {got:?}"));
    }
    Ok(parts.join(", "))
}

fn criterion_3(ex: &[Example]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for e in ex {
        let ctx = e.data.ctx();
        for s in e.simples() {
            let r = ctx.verify_half_braiding(&s).max_residual();
            ensure(r < TOL, format!("{}: residual {r:.2e}", e.name))?;
            worst = worst.max(r);
            n += 1;
        }
    }
    let ising = ex.iter().find(|e| e.name == "ising").unwrap();
    let ctx = ising.data.ctx();
    let psi = ctx.label_pos(1).unwrap();
    let mut phases: Vec<C64> = ising.simples().iter().filter(|s| s.grade == 1).map(|s| s.e[psi].scalar(2)).collect();
    phases.sort_by(|a, b| a.im.total_cmp(&b.im));
    let want = [C64::new(0.0, -1.0), C64::new(0.0, 1.0)];
    ensure(
        phases.len() == 2 && phases.iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-9),
        format!("ising grade-1 E(psi) = {phases:?}"),
    )?;
    Ok(format!("{n} simples, max residual {worst:.1e}; ising E(psi) = -i, +i"))
}

fn criterion_4(ex: &[Example]) -> Outcome {
    let mut n = 0;
    for e in ex {
        let ctx = e.data.ctx();
        let s = e.simples();
        for (i, x) in s.iter().enumerate() {
            let c = ctx.conjugate(x).map_err(|err| format!("{}: {err}", e.name))?;
            ensure(c.grade == ctx.group.inv(x.grade), format!("{}: simple {i} grade not inverted", e.name))?;
            let hits = s.iter().filter(|y| ctx.hom_center(&c, y).dim == 1).count();
            ensure(hits == 1, format!("{}: conjugate of simple {i} matches {hits} simples", e.name))?;
            let cc = ctx.conjugate(&c).map_err(|err| format!("{}: {err}", e.name))?;
            ensure(ctx.hom_center(&cc, x).dim == 1, format!("{}: simple {i} double conjugate not isomorphic", e.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} simples: conjugate simple, involutive, grade inverted"))
}

fn criterion_5() -> Outcome {
    let cat = bundled("vec_z3").unwrap();
    let rep = twisted_untwisted_iso(&cat, &z3_action(&cat)).map_err(|e| e.to_string())?;
    let d = rep.max_deviation();
    ensure(d < TOL, format!("max deviation {d:.2e}"))?;
    Ok(format!("vec_z3 inversion vs crossed extension: max deviation {d:.1e}"))
}

fn criterion_6(ex: &[Example]) -> Outcome {
    let mut parts = Vec::new();
    for name in ["vec_z3 (G-center)", "vec_z2", "fib"] {
        let e = ex.iter().find(|e| e.name == name).unwrap();
        let ctx = e.data.ctx();
        let s = e.simples();
        let data = ctx.build_g_braiding(&s).map_err(|err| format!("{name}: {err}"))?;
        let (fwd, rev) = ctx.verify_both(&s, &data).map_err(|err| format!("{name}: {err}"))?;
        ensure(fwd.pass(TOL), format!("{name}: forward {fwd:?}"))?;
        ensure(rev.pass(TOL), format!("{name}: reverse {rev:?}"))?;
        parts.push(format!("{name} {:.1e}/{:.1e}", fwd.max_residual(), rev.max_residual()));
    }
    Ok(format!("BF0-BF3 forward/reverse: {}", parts.join(", ")))
}

fn criterion_7(ex: &[Example]) -> Outcome {
    let e = ex.iter().find(|e| e.name == "vec_z3 (G-center)").unwrap();
    let count = e.data.ctx().equivariant_count(&e.simples(), 1).map_err(|err| err.to_string())?;
    let s3 = bundled("vec_s3").unwrap();
    let tube = build_tube(&s3, &Subcat::All).map_err(|err| err.to_string())?;
    let blocks = decompose_component(&tube, 0, 1).map_err(|err| err.to_string())?.blocks.len();
    ensure(count.count == blocks, format!("orbit count {} vs {} blocks of Tube(Vec_S3)", count.count, blocks))?;
    ensure(count.regular_count == Some(blocks), format!("regular decomposition count {:?}", count.regular_count))?;
    let fixed: Vec<_> = count.orbits.iter().filter(|o| o.stabilizer.len() == 2).collect();
    ensure(!fixed.is_empty(), "no orbit with full stabilizer")?;
    for o in &fixed {
        ensure(
            o.regular_multiplicities.as_deref() == Some(&[1, 1][..]),
            format!("fixed orbit {:?}: multiplicities {:?}", o.members, o.regular_multiplicities),
        )?;
    }
    Ok(format!("count {} = {} blocks; {} fixed orbits split as [1, 1]", count.count, blocks, fixed.len()))
}

fn criterion_8(ex: &[Example]) -> Outcome {
    let mut checks = 0;
    for e in ex {
        let ctx = e.data.ctx();
        let s = e.simples();
        let grp = &ctx.group;
        for x in &s {
            let c = ctx.conjugate(x).map_err(|err| err.to_string())?;
            ensure(c.grade == grp.inv(x.grade), format!("{}: conjugate grade", e.name))?;
            for y in &s {
                let t = ctx.tensor(x, y).map_err(|err| err.to_string())?;
                let g = grp.mul(x.grade, y.grade);
                ensure(t.grade == g, format!("{}: tensor grade", e.name))?;
                for z in s.iter().filter(|z| z.grade != g) {
                    ensure(ctx.hom_center(z, &t).dim == 0, format!("{}: product meets grade {}", e.name, z.grade))?;
                }
                checks += 1;
            }
        }
    }
    // Cross-grade vanishing from the raw intertwiner equations.
    for name in ["ising", "vec_z3 (G-center)"] {
        let e = ex.iter().find(|e| e.name == name).unwrap();
        let ctx: CenterCtx = e.data.ctx();
        let s = e.simples();
        for x in &s {
            for y in s.iter().filter(|y| y.grade != x.grade) {
                let d = ctx.intertwiner_space(x, y).dim;
                ensure(d == 0, format!("{name}: {d}-dimensional intertwiners across grades"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} grade checks, 0 violations"))
}

fn criterion_9() -> Outcome {
    let run = || -> Result<(String, String), String> {
        let ising = bundled("ising").unwrap();
        let a = relative_center(&ising, &Subcat::Degree0, 42).map_err(|e| e.to_string())?;
        let a = center_report(&a, "relative", Some("degree0".into()), None).map_err(|e| e.to_string())?;
        let z3 = bundled("vec_z3").unwrap();
        let b = g_center(&z3, &z3_action(&z3), 42).map_err(|e| e.to_string())?;
        let b = center_report(&b, "gcenter", None, Some("inversion".into())).map_err(|e| e.to_string())?;
        Ok((a.to_json(), b.to_json()))
    };
    let first = run()?;
    let second = run()?;
    ensure(first == second, "reports differ between runs")?;
    Ok(format!("{} + {} bytes identical across runs", first.0.len(), first.1.len()))
}

fn main() {
    let start = Instant::now();
    let ex = examples();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "validation", criterion_1()),
        (2, "tube bijection", criterion_2(&ex)),
        (3, "half-braidings", criterion_3(&ex)),
        (4, "conjugation", criterion_4(&ex)),
        (5, "twisted/untwisted iso", criterion_5()),
        (6, "G-braiding axioms", criterion_6(&ex)),
        (7, "equivariantization", criterion_7(&ex)),
        (8, "grading laws", criterion_8(&ex)),
        (9, "determinism", criterion_9()),
    ];
    let mut failed = 0;
    for (k, title, r) in &results {
        match r {
            Ok(detail) => println!("criterion {k} [{title}]: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} [{title}]: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {}/{} passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
