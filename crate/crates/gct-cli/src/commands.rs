use gct_core::center::{
    center_report, g_center, relative_center, round_sig, BraidingFile, BraidingJson, CenterData, CenterError, CenterReport,
    EquivariantJson, GradeJson,
};
use gct_core::fusion_core::{build_crossed_extension, verify_action, verify_pentagon, Action, CatError, Category, RawCategory};
use gct_core::morphisms::Morphisms;
use gct_core::tube::{
    build_tube, build_twisted_tube, decompose_component, twisted_untwisted_iso, verify_algebra, verify_wedderburn, Subcat,
    TubeAlgebra, TubeError,
};
use gct_core::{DEFAULT_TOL, VERIFY_TOL};
use serde::Serialize;

use crate::{write_file, Common, Failure};

fn cat_err(e: CatError) -> Failure {
    match e {
        CatError::Io(m) => Failure::io(m),
        other => Failure::invalid(other.to_string()),
    }
}

fn center_err(e: CenterError) -> Failure {
    match e {
        CenterError::Tube(TubeError::Subcat(_)) | CenterError::Tube(TubeError::Action(_)) => Failure::invalid(e.to_string()),
        CenterError::Braiding(_) | CenterError::NoAction => Failure::invalid(e.to_string()),
        other => Failure::internal(other.to_string()),
    }
}

fn tube_err(e: TubeError) -> Failure {
    center_err(CenterError::Tube(e))
}

/// Reads and parses a category without checking any axiom.
fn load_unchecked(c: &Common) -> Result<Category, Failure> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| Failure::io(format!("{}: {e}", c.file.display())))?;
    let raw: RawCategory = serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("parse error: {e}")))?;
    let mut cat = Category::from_raw_unchecked(raw).map_err(cat_err)?;
    if cat.name.is_empty() {
        cat.name = c.file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(cat)
}

fn load(c: &Common) -> Result<Category, Failure> {
    let cat = load_unchecked(c)?;
    cat.validate(c.tol.unwrap_or(DEFAULT_TOL).max(DEFAULT_TOL)).map_err(cat_err)?;
    Ok(cat)
}

fn select_action(cat: &Category, name: Option<&str>) -> Result<Action, Failure> {
    match name {
        Some(n) => cat.action(n).cloned().ok_or_else(|| Failure::invalid(format!("no action named '{n}'"))),
        None => match cat.actions.as_slice() {
            [] => Err(Failure::invalid("the category defines no action")),
            [a] => Ok(a.clone()),
            many => {
                let names: Vec<&str> = many.iter().map(|a| a.name.as_str()).collect();
                Err(Failure::invalid(format!("several actions ({}); choose one with --action", names.join(", "))))
            }
        },
    }
}

fn object_name(cat: &Category, mult: &[usize]) -> String {
    let parts: Vec<String> = mult
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(a, &k)| if k == 1 { cat.label(a).to_string() } else { format!("{k}{}", cat.label(a)) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn check_grade(group_names: &[String], grade: &Option<String>) -> Result<(), Failure> {
    match grade {
        Some(g) if !group_names.contains(g) => Err(Failure::invalid(format!("unknown grade '{g}'"))),
        _ => Ok(()),
    }
}

fn keep(grade: &Option<String>, name: &str) -> bool {
    grade.as_deref().is_none_or(|g| g == name)
}

pub fn verify(c: &Common) -> Result<(), Failure> {
    let tol = c.tol.unwrap_or(DEFAULT_TOL);
    let cat = load_unchecked(c)?;
    println!("category {} (rank {}, group order {})", cat.name, cat.rank(), cat.group.order());
    println!("{:<28} {:>12}  status", "check", "residual");
    let structural = cat.validate(f64::INFINITY);
    println!("{:<28} {:>12}  {}", "fusion rules and grading", "-", status(structural.is_ok()));
    if let Err(e) = structural {
        return Err(cat_err(e));
    }
    let pent = verify_pentagon(&cat, tol);
    println!("{:<28} {:>12.3e}  {}", format!("pentagon ({} instances)", pent.instances), pent.max_residual, status(pent.pass));
    let m = Morphisms::new(&cat);
    let mut conj_ok = true;
    for a in 0..cat.rank() {
        let sol = m.conjugate_solution(a).map_err(|e| Failure::invalid(e.to_string()))?;
        let r = m.conjugate_residuals(&sol);
        let worst = r.norm.max(r.zigzag);
        conj_ok &= worst <= tol;
        println!("{:<28} {:>12.3e}  {}", format!("conjugate equations {}", cat.label(a)), worst, status(worst <= tol));
    }
    for act in &cat.actions {
        let rep = verify_action(&cat, act, tol);
        println!("{:<28} {:>12.3e}  {}", format!("action {}", act.name), rep.max_f_deviation, status(rep.pass()));
    }
    cat.validate(tol).map_err(cat_err)?;
    if !conj_ok {
        return Err(Failure::invalid("conjugate equations violated"));
    }
    println!("result: pass");
    Ok(())
}

#[derive(Serialize)]
struct TubeGradeJson {
    grade: String,
    dim: usize,
    center_dim: usize,
    block_ranks: Vec<usize>,
    wedderburn_residual: f64,
}

#[derive(Serialize)]
struct TubeJson {
    seed: u64,
    category: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    subcat: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    action: Option<String>,
    algebra_residual: f64,
    grades: Vec<TubeGradeJson>,
}

pub fn tube(c: &Common) -> Result<(), Failure> {
    let tol = c.tol.unwrap_or(VERIFY_TOL);
    let seed = c.seed()?;
    let cat = load(c)?;
    let (t, subcat, action): (TubeAlgebra, _, _) = if c.action.is_some() {
        let act = select_action(&cat, c.action.as_deref())?;
        (build_twisted_tube(&cat, &act).map_err(tube_err)?, None, Some(act.name.clone()))
    } else {
        let s = c.subcat.clone().unwrap_or_else(|| "degree0".into());
        let sc = Subcat::parse(&s, &cat).map_err(tube_err)?;
        (build_tube(&cat, &sc).map_err(tube_err)?, Some(s), None)
    };
    check_grade(t.group.names(), &c.grade)?;
    let alg = verify_algebra(&t);
    let alg_res = alg.associativity.max(alg.star_involution).max(alg.star_antimultiplicative).max(alg.trace_cyclic).max(alg.unit);
    let mut ok = alg.pass(tol);
    let mut grades = Vec::new();
    println!("tube algebra of {} (seed {seed})", cat.name);
    println!("{:<8} {:>6} {:>8} {:>7}  ranks", "grade", "dim", "center", "blocks");
    for ci in 0..t.components.len() {
        let name = t.group.name(t.components[ci].grade).to_string();
        if !keep(&c.grade, &name) {
            continue;
        }
        let wd = decompose_component(&t, ci, seed).map_err(tube_err)?;
        let wr = verify_wedderburn(&t, &wd);
        ok &= wr.pass(tol);
        let ranks: Vec<usize> = wd.blocks.iter().map(|b| b.rank).collect();
        println!("{:<8} {:>6} {:>8} {:>7}  {:?}", name, wd.dim, wd.center_dim, ranks.len(), ranks);
        let wres = wr.idempotent.max(wr.orthogonal).max(wr.completeness).max(wr.central);
        grades.push(TubeGradeJson {
            grade: name,
            dim: wd.dim,
            center_dim: wd.center_dim,
            block_ranks: ranks,
            wedderburn_residual: round_sig(wres),
        });
    }
    println!("*-algebra residual {alg_res:.3e}: {}", status(alg.pass(tol)));
    if let Some(p) = &c.json {
        let j = TubeJson { seed, category: cat.name.clone(), subcat, action, algebra_residual: round_sig(alg_res), grades };
        write_file(p, &(serde_json::to_string_pretty(&j).expect("serializes") + "\n"))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::internal("tube algebra checks failed"))
    }
}

fn print_simples(cat: &Category, grades: &[GradeJson], filter: &Option<String>) {
    println!("{:<6} {:<8} {:<16} {:>8} {:>11}", "index", "grade", "object", "qdim", "residual");
    for g in grades.iter().filter(|g| keep(filter, &g.grade)) {
        for s in &g.simples {
            println!("{:<6} {:<8} {:<16} {:>8.4} {:>11.2e}", s.index, g.grade, object_name(cat, &s.object), s.qdim, s.residual);
        }
    }
}

fn print_fusion(rep: &CenterReport) {
    println!("fusion of simples (X_i X_j = sum of X_k):");
    let n = rep.fusion.len();
    for i in 0..n {
        for j in i..n {
            let terms: Vec<String> = rep.fusion[i][j]
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(k, &v)| if v == 1 { format!("X{k}") } else { format!("{v}X{k}") })
                .collect();
            println!("  X{i} X{j} = {}", terms.join(" + "));
        }
    }
}

fn schur_ok(rep: &CenterReport) -> bool {
    rep.hom_table.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &d)| d == usize::from(i == j)))
}

/// Braiding residuals when every simple lives over the braided labels.
fn braiding_summary(data: &CenterData, c: &Common, rep: &CenterReport, subcat: Option<String>) -> Result<Option<BraidingJson>, Failure> {
    let ctx = data.ctx();
    let simples = data.simples();
    let br = match ctx.build_g_braiding(&simples) {
        Ok(b) => b,
        Err(CenterError::Braiding(_)) => return Ok(None),
        Err(e) => return Err(center_err(e)),
    };
    let (fwd, rrep) = ctx.verify_both(&simples, &br).map_err(center_err)?;
    if let Some(p) = &c.braiding {
        let f = BraidingFile::new(&br, data.seed, &rep.category, rep.action.clone(), subcat);
        write_file(p, &(serde_json::to_string_pretty(&f).expect("serializes") + "\n"))?;
    }
    Ok(Some(BraidingJson::new(&fwd, &rrep)))
}

fn print_braiding(b: &BraidingJson, tol: f64) {
    println!("{:<20} {:>11}", "braiding axiom", "residual");
    for (name, v) in [
        ("BF0", b.bf0),
        ("BF1", b.bf1),
        ("BF2", b.bf2),
        ("BF3", b.bf3),
        ("reverse BF0", b.reverse_bf0),
        ("reverse BF1", b.reverse_bf1),
        ("reverse BF2", b.reverse_bf2),
    ] {
        println!("{:<20} {:>11.2e}  {}", name, v, status(v <= tol));
    }
}

fn finish(c: &Common, rep: &CenterReport, ok: bool, what: &str) -> Result<(), Failure> {
    if let Some(p) = &c.json {
        let mut out = rep.clone();
        out.grades.retain(|g| keep(&c.grade, &g.grade));
        write_file(p, &out.to_json())?;
    }
    if ok {
        println!("result: pass");
        Ok(())
    } else {
        Err(Failure::internal(format!("{what} checks failed")))
    }
}

pub fn center(c: &Common) -> Result<(), Failure> {
    let tol = c.tol.unwrap_or(VERIFY_TOL);
    let seed = c.seed()?;
    let cat = load(c)?;
    let s = c.subcat.clone().unwrap_or_else(|| "degree0".into());
    let sc = Subcat::parse(&s, &cat).map_err(tube_err)?;
    let data = relative_center(&cat, &sc, seed).map_err(center_err)?;
    check_grade(data.tube.group.names(), &c.grade)?;
    let mut rep = center_report(&data, "relative", Some(s.clone()), None).map_err(center_err)?;
    rep.braiding = braiding_summary(&data, c, &rep, Some(s))?;
    println!("center of {} relative to {:?}: {} simples (seed {seed})", cat.name, rep.braided_labels, rep.simple_count());
    for g in rep.grades.iter().filter(|g| keep(&c.grade, &g.grade)) {
        println!("  grade {}: tube dim {}, {} simples", g.grade, g.tube_dim, g.simples.len());
    }
    print_simples(&cat, &rep.grades, &c.grade);
    print_fusion(&rep);
    let mut ok = rep.grades.iter().flat_map(|g| &g.simples).all(|s| s.residual <= tol) && schur_ok(&rep);
    if let Some(b) = &rep.braiding {
        print_braiding(b, tol);
        ok &= b.max_residual() <= tol;
    }
    finish(c, &rep, ok, "center")
}

pub fn gcenter(c: &Common) -> Result<(), Failure> {
    let tol = c.tol.unwrap_or(VERIFY_TOL);
    let seed = c.seed()?;
    let cat = load(c)?;
    let act = select_action(&cat, c.action.as_deref())?;
    let data = g_center(&cat, &act, seed).map_err(center_err)?;
    check_grade(data.tube.group.names(), &c.grade)?;
    let mut rep = center_report(&data, "g-center", None, Some(act.name.clone())).map_err(center_err)?;
    rep.braiding = braiding_summary(&data, c, &rep, None)?;
    let iso = twisted_untwisted_iso(&cat, &act).map_err(tube_err)?;
    rep.iso_deviation = iso.bijective.then(|| round_sig(iso.max_deviation()));
    let ctx = data.ctx();
    let count = ctx.equivariant_count(&data.simples(), seed).map_err(center_err)?;
    rep.equivariant = Some(EquivariantJson::new(&count, &ctx));
    let crossed = build_crossed_extension(&cat.forget_grading(), &act).map_err(cat_err)?;
    let full = build_tube(&crossed, &Subcat::All).map_err(tube_err)?;
    let full_count = (0..full.components.len())
        .map(|ci| decompose_component(&full, ci, seed).map(|wd| wd.blocks.len()))
        .sum::<Result<usize, _>>()
        .map_err(tube_err)?;
    rep.full_center_simples = Some(full_count);

    println!("G-center of {} under '{}': {} simples (seed {seed})", cat.name, act.name, rep.simple_count());
    for g in rep.grades.iter().filter(|g| keep(&c.grade, &g.grade)) {
        println!("  grade {}: tube dim {}, {} simples", g.grade, g.tube_dim, g.simples.len());
    }
    print_simples(&cat, &rep.grades, &c.grade);
    print_fusion(&rep);
    let mut ok = rep.grades.iter().flat_map(|g| &g.simples).all(|s| s.residual <= tol) && schur_ok(&rep);
    match &rep.braiding {
        Some(b) => {
            print_braiding(b, tol);
            ok &= b.max_residual() <= tol;
        }
        None => {
            println!("braiding: unavailable");
            ok = false;
        }
    }
    match rep.iso_deviation {
        Some(d) => {
            println!("twisted/crossed tube isomorphism deviation {d:.2e}: {}", status(d <= tol));
            ok &= d <= tol;
        }
        None => {
            println!("twisted/crossed tube isomorphism: FAIL (basis map not bijective)");
            ok = false;
        }
    }
    println!("orbits of the action on simples:");
    for o in &count.orbits {
        println!(
            "  {:?} stabilizer {:?}: {} irreps, regular object splits into {} with multiplicities {}",
            o.members,
            o.stabilizer,
            o.irreps,
            shown(&o.regular_simples),
            shown(&o.regular_multiplicities)
        );
    }
    let count_ok = count.count == full_count && count.regular_count == Some(count.count);
    println!(
        "equivariant count {} (regular objects: {}, assumes trivial stabilizer obstruction), full center of crossed extension {}: {}",
        count.count,
        shown(&count.regular_count),
        full_count,
        status(count_ok)
    );
    ok &= count_ok;
    finish(c, &rep, ok, "G-center")
}

fn shown<T: std::fmt::Debug>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), |x| format!("{x:?}"))
}

pub fn braid_check(c: &Common) -> Result<(), Failure> {
    let tol = c.tol.unwrap_or(VERIFY_TOL);
    let path = c.braiding.as_ref().ok_or_else(|| Failure::invalid("braid-check needs --braiding <file>"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let file: BraidingFile = serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("braiding file: {e}")))?;
    let cat = load(c)?;
    let data = match file.action.as_deref().or(c.action.as_deref()) {
        Some(name) => {
            let act = select_action(&cat, Some(name))?;
            g_center(&cat, &act, file.seed).map_err(center_err)?
        }
        None => {
            let s = file.subcat.clone().or_else(|| c.subcat.clone()).unwrap_or_else(|| "degree0".into());
            let sc = Subcat::parse(&s, &cat).map_err(tube_err)?;
            relative_center(&cat, &sc, file.seed).map_err(center_err)?
        }
    };
    let ctx = data.ctx();
    let simples = data.simples();
    if file.simples != simples.len() && !file.entries.is_empty() {
        return Err(Failure::invalid(format!(
            "schema mismatch: file describes {} simples, the center has {}",
            file.simples,
            simples.len()
        )));
    }
    let br = file.to_data(&ctx, &simples).map_err(|e| Failure::invalid(e.to_string()))?;
    let (fwd, rrep) = ctx.verify_both(&simples, &br).map_err(|e| Failure::invalid(e.to_string()))?;
    let summary = BraidingJson::new(&fwd, &rrep);
    println!("braid-check of {} on {} simples ({} identities)", path.display(), simples.len(), fwd.instances);
    print_braiding(&summary, tol);
    if let Some(p) = &c.json {
        write_file(p, &(serde_json::to_string_pretty(&summary).expect("serializes") + "\n"))?;
    }
    if summary.max_residual() <= tol {
        println!("result: pass");
        Ok(())
    } else {
        Err(Failure::invalid("braiding axioms violated"))
    }
}
