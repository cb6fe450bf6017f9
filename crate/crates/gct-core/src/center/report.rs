use serde::{Deserialize, Serialize};

use super::{BraidingReport, CenterCtx, CenterError, EquivariantCount, Extraction, GBraidingData, HalfBraiding};
use crate::fusion_core::{Action, Category};
use crate::linalg::CMat;
use crate::morphisms::{HomBlock, Obj};
use crate::tube::{build_tube, build_twisted_tube, decompose_component, Subcat, TubeAlgebra, WedderburnData};
use crate::C64;

/// Tube algebra, its block decomposition and the extracted simples.
pub struct CenterData {
    pub tube: TubeAlgebra,
    pub blocks: Vec<WedderburnData>,
    pub extractions: Vec<Extraction>,
    pub seed: u64,
}

impl CenterData {
    fn from_tube(tube: TubeAlgebra, seed: u64) -> Result<Self, CenterError> {
        let blocks = (0..tube.components.len())
            .map(|ci| decompose_component(&tube, ci, seed))
            .collect::<Result<Vec<_>, _>>()?;
        let extractions = {
            let ctx = CenterCtx::from_tube(&tube);
            blocks.iter().map(|wd| ctx.extract_simples(&tube, wd, seed)).collect::<Result<Vec<_>, _>>()?
        };
        Ok(CenterData { tube, blocks, extractions, seed })
    }

    pub fn ctx(&self) -> CenterCtx<'_> {
        CenterCtx::from_tube(&self.tube)
    }

    /// All simples, component by component in block order.
    pub fn simples(&self) -> Vec<HalfBraiding> {
        self.extractions.iter().flat_map(|e| e.simples.iter().cloned()).collect()
    }
}

/// Relative center `Z_{C₀'}(C)` for a fusion subcategory `C₀' ⊂ C₀`.
pub fn relative_center(cat: &Category, subcat: &Subcat, seed: u64) -> Result<CenterData, CenterError> {
    CenterData::from_tube(build_tube(cat, subcat)?, seed)
}

/// G-center of `D₀` under a strict action, through the twisted tube algebra.
pub fn g_center(d0: &Category, action: &Action, seed: u64) -> Result<CenterData, CenterError> {
    CenterData::from_tube(build_twisted_tube(d0, action)?, seed)
}

/// Rounds to 1e-12 and clears negative zero, so that reports are stable.
pub fn round12(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Three significant digits, for residuals.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    format!("{x:.2e}").parse().unwrap_or(x)
}

/// A morphism with channel matrices as `[re, im]` pairs, row-major.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HomBlockJson {
    pub src: Obj,
    pub tgt: Obj,
    pub channels: Vec<Vec<Vec<[f64; 2]>>>,
}

impl From<&HomBlock> for HomBlockJson {
    fn from(h: &HomBlock) -> Self {
        let channels = h
            .ch
            .iter()
            .map(|m| {
                (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| [round12(m[(i, j)].re), round12(m[(i, j)].im)]).collect())
                    .collect()
            })
            .collect();
        HomBlockJson { src: h.src.clone(), tgt: h.tgt.clone(), channels }
    }
}

impl HomBlockJson {
    /// Rebuilds the morphism, checking channel shapes against the tree bases.
    pub fn to_block(&self, ctx: &CenterCtx) -> Result<HomBlock, CenterError> {
        let m = &ctx.m;
        if self.channels.len() != m.rank() {
            return Err(CenterError::Braiding(format!("expected {} channels, found {}", m.rank(), self.channels.len())));
        }
        let mut ch = Vec::with_capacity(m.rank());
        for (c, rows) in self.channels.iter().enumerate() {
            let (r, k) = (m.obj_dim(c, &self.tgt), m.obj_dim(c, &self.src));
            if rows.len() != r || rows.iter().any(|row| row.len() != k) {
                return Err(CenterError::Braiding(format!("channel {c} is not {r}x{k}")));
            }
            ch.push(CMat::from_fn(r, k, |i, j| C64::new(rows[i][j][0], rows[i][j][1])));
        }
        Ok(HomBlock { src: self.src.clone(), tgt: self.tgt.clone(), ch })
    }
}

/// G-braiding on the simples of a center, as written by `gcenter`/`center`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BraidingFile {
    pub seed: u64,
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcat: Option<String>,
    pub simples: usize,
    pub entries: Vec<Vec<HomBlockJson>>,
}

impl BraidingFile {
    pub fn new(data: &GBraidingData, seed: u64, category: &str, action: Option<String>, subcat: Option<String>) -> Self {
        let entries: Vec<Vec<HomBlockJson>> =
            data.entries.iter().map(|r| r.iter().map(HomBlockJson::from).collect()).collect();
        BraidingFile { seed, category: category.to_string(), action, subcat, simples: entries.len(), entries }
    }

    pub fn to_data(&self, ctx: &CenterCtx, simples: &[HalfBraiding]) -> Result<GBraidingData, CenterError> {
        let n = simples.len();
        if self.entries.is_empty() || self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            return Err(CenterError::Braiding("missing entries".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|b| b.to_block(ctx)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GBraidingData { entries })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LabelBlock {
    pub label: String,
    pub e: HomBlockJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SimpleJson {
    pub index: usize,
    /// Multiplicity of each simple label of the category.
    pub object: Vec<usize>,
    pub qdim: f64,
    pub residual: f64,
    pub half_braiding: Vec<LabelBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GradeJson {
    pub grade: String,
    pub tube_dim: usize,
    pub center_dim: usize,
    pub block_ranks: Vec<usize>,
    pub simples: Vec<SimpleJson>,
    pub representation_residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrbitJson {
    pub members: Vec<usize>,
    pub stabilizer: Vec<String>,
    pub irreps: usize,
    pub regular_simples: Option<usize>,
    pub regular_multiplicities: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EquivariantJson {
    pub count: usize,
    pub regular_count: Option<usize>,
    pub assumes_trivial_obstruction: bool,
    pub orbits: Vec<OrbitJson>,
}

impl EquivariantJson {
    pub fn new(c: &EquivariantCount, ctx: &CenterCtx) -> Self {
        let orbits = c
            .orbits
            .iter()
            .map(|o| OrbitJson {
                members: o.members.clone(),
                stabilizer: o.stabilizer.iter().map(|&g| ctx.group.name(g).to_string()).collect(),
                irreps: o.irreps,
                regular_simples: o.regular_simples,
                regular_multiplicities: o.regular_multiplicities.clone(),
            })
            .collect();
        EquivariantJson {
            count: c.count,
            regular_count: c.regular_count,
            assumes_trivial_obstruction: c.assumes_trivial_obstruction,
            orbits,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BraidingJson {
    pub bf0: f64,
    pub bf1: f64,
    pub bf2: f64,
    pub bf3: f64,
    pub instances: usize,
    pub reverse_bf0: f64,
    pub reverse_bf1: f64,
    pub reverse_bf2: f64,
}

impl BraidingJson {
    pub fn new(fwd: &BraidingReport, rev: &BraidingReport) -> Self {
        BraidingJson {
            bf0: round_sig(fwd.bf0),
            bf1: round_sig(fwd.bf1),
            bf2: round_sig(fwd.bf2),
            bf3: round_sig(fwd.bf3),
            instances: fwd.instances,
            reverse_bf0: round_sig(rev.bf0),
            reverse_bf1: round_sig(rev.bf1),
            reverse_bf2: round_sig(rev.bf2),
        }
    }

    pub fn max_residual(&self) -> f64 {
        [self.bf0, self.bf1, self.bf2, self.bf3, self.reverse_bf0, self.reverse_bf1, self.reverse_bf2]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Machine-readable center report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CenterReport {
    pub seed: u64,
    pub category: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcat: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    pub braided_labels: Vec<String>,
    pub grades: Vec<GradeJson>,
    /// `dim Hom_Z(X_i, X_j)` over all simples.
    pub hom_table: Vec<Vec<usize>>,
    /// `N_{ij}^k = dim Hom_Z(X_k, X_i ⊗ X_j)`.
    pub fusion: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<BraidingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivariant: Option<EquivariantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_deviation: Option<f64>,
    /// Simple count of the full center of the crossed extension, from its tube algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_center_simples: Option<usize>,
}

impl CenterReport {
    pub fn simple_count(&self) -> usize {
        self.grades.iter().map(|g| g.simples.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Fusion coefficients of the simples: `out[i][j][k] = dim Hom_Z(X_k, X_i X_j)`.
pub fn fusion_table(ctx: &CenterCtx, simples: &[HalfBraiding]) -> Result<Vec<Vec<Vec<usize>>>, CenterError> {
    let n = simples.len();
    let mut out = vec![vec![vec![0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let xy = ctx.tensor(&simples[i], &simples[j])?;
            for k in 0..n {
                out[i][j][k] = ctx.hom_center(&simples[k], &xy).dim;
            }
        }
    }
    Ok(out)
}

/// Builds the report fields that depend only on the extracted simples.
pub fn center_report(data: &CenterData, mode: &str, subcat: Option<String>, action: Option<String>) -> Result<CenterReport, CenterError> {
    let ctx = data.ctx();
    let cat = ctx.cat();
    let simples = data.simples();
    let mut grades = Vec::new();
    let mut index = 0;
    for (ex, wd) in data.extractions.iter().zip(&data.blocks) {
        let comp = &data.tube.components[ex.comp];
        let mut js = Vec::new();
        for s in &ex.simples {
            let half_braiding = ctx
                .labels
                .iter()
                .zip(&s.e)
                .map(|(&p, e)| LabelBlock { label: cat.label(p).to_string(), e: HomBlockJson::from(e) })
                .collect();
            js.push(SimpleJson {
                index,
                object: ctx.multiplicities(s),
                qdim: round12(ctx.qdim(s)),
                residual: round_sig(ctx.verify_half_braiding(s).max_residual()),
                half_braiding,
            });
            index += 1;
        }
        grades.push(GradeJson {
            grade: data.tube.group.name(ex.grade).to_string(),
            tube_dim: comp.dim(),
            center_dim: wd.center_dim,
            block_ranks: wd.blocks.iter().map(|b| b.rank).collect(),
            simples: js,
            representation_residual: round_sig(ex.representation_residual),
        });
    }
    let hom_table = simples.iter().map(|x| simples.iter().map(|y| ctx.hom_center(x, y).dim).collect()).collect();
    let fusion = fusion_table(&ctx, &simples)?;
    Ok(CenterReport {
        seed: data.seed,
        category: cat.name.clone(),
        mode: mode.to_string(),
        subcat,
        action,
        braided_labels: ctx.labels.iter().map(|&p| cat.label(p).to_string()).collect(),
        grades,
        hom_table,
        fusion,
        braiding: None,
        equivariant: None,
        iso_deviation: None,
        full_center_simples: None,
    })
}
