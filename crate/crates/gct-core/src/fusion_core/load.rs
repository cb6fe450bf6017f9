use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Action, CatError, Category, FMatrix, Group};
use crate::linalg::zeros;
use crate::{C64, DEFAULT_TOL};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawGroup {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawF {
    pub abcd: [usize; 4],
    pub rows: Vec<[usize; 3]>,
    pub cols: Vec<[usize; 3]>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawAction {
    pub name: String,
    pub perm: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawActions {
    One(RawAction),
    Many(Vec<RawAction>),
}

/// On-disk category description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub qdim: Vec<f64>,
    pub group: RawGroup,
    pub grading: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<[usize; 4]>,
    #[serde(rename = "F", default)]
    pub f: Vec<RawF>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<RawActions>,
}

const BUNDLED: &[(&str, &str)] = &[
    ("vec_z2", include_str!("../../data/vec_z2.json")),
    ("vec_z3", include_str!("../../data/vec_z3.json")),
    ("vec_s3", include_str!("../../data/vec_s3.json")),
    ("ising", include_str!("../../data/ising.json")),
    ("fib", include_str!("../../data/fib.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// Raw JSON text of a bundled category.
pub fn bundled_json(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Loads and validates one of the bundled categories.
pub fn bundled(name: &str) -> Result<Category, CatError> {
    let text = bundled_json(name)
        .ok_or_else(|| CatError::Schema(format!("no bundled category named '{name}'")))?;
    Category::from_json_str(text)
}

/// Reads, parses and validates a category file.
pub fn load_category(path: impl AsRef<Path>) -> Result<Category, CatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CatError::Io(format!("{}: {e}", path.display())))?;
    let mut cat = Category::from_json_str(&text)?;
    if cat.name.is_empty() {
        cat.name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    Ok(cat)
}

impl Category {
    pub fn from_json_str(text: &str) -> Result<Category, CatError> {
        let raw: RawCategory =
            serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))?;
        Category::from_raw(raw, DEFAULT_TOL)
    }

    /// Builds and validates a category from its raw description.
    pub fn from_raw(raw: RawCategory, tol: f64) -> Result<Category, CatError> {
        let cat = Category::from_raw_unchecked(raw)?;
        cat.validate(tol)?;
        Ok(cat)
    }

    /// Shape checks only; no axioms are verified.
    pub fn from_raw_unchecked(raw: RawCategory) -> Result<Category, CatError> {
        let r = raw.rank;
        if r == 0 {
            return Err(CatError::Schema("rank must be positive".into()));
        }
        for (field, len) in [
            ("labels", raw.labels.len()),
            ("dual", raw.dual.len()),
            ("qdim", raw.qdim.len()),
            ("grading", raw.grading.len()),
        ] {
            if len != r {
                return Err(CatError::Schema(format!("'{field}' has length {len}, expected {r}")));
            }
        }
        if raw.dual.iter().any(|&x| x >= r) {
            return Err(CatError::Schema("dual entry out of range".into()));
        }
        let group = Group::new(raw.group.elements.clone(), raw.group.table.clone())?;
        if raw.grading.iter().any(|&g| g >= group.order()) {
            return Err(CatError::Schema("grading entry out of range".into()));
        }
        let mut n = vec![0usize; r * r * r];
        for q in &raw.n {
            if q[..3].iter().any(|&x| x >= r) {
                return Err(CatError::Schema(format!("N entry {q:?} out of range")));
            }
            n[(q[0] * r + q[1]) * r + q[2]] = q[3];
        }
        let actions = match raw.action {
            None => vec![],
            Some(RawActions::One(a)) => vec![parse_action(a, &group, r)?],
            Some(RawActions::Many(v)) => v
                .into_iter()
                .map(|a| parse_action(a, &group, r))
                .collect::<Result<_, _>>()?,
        };
        let mut cat = Category {
            name: raw.name.unwrap_or_default(),
            labels: raw.labels,
            dual: raw.dual,
            qdim: raw.qdim,
            n,
            group,
            grading: raw.grading,
            fsym: BTreeMap::new(),
            actions,
        };
        for f in raw.f {
            let [a, b, c, d] = f.abcd;
            if f.abcd.iter().any(|&x| x >= r) {
                return Err(CatError::Schema(format!("F abcd {:?} out of range", f.abcd)));
            }
            let rows = cat.left_channels(a, b, c, d);
            let cols = cat.right_channels(a, b, c, d);
            let tag = format!("F{:?}", f.abcd);
            if f.matrix.len() != f.rows.len() || f.matrix.iter().any(|r| r.len() != f.cols.len())
            {
                return Err(CatError::Schema(format!("{tag}: matrix shape mismatch")));
            }
            let mut sorted_rows = f.rows.clone();
            sorted_rows.sort();
            let mut sorted_cols = f.cols.clone();
            sorted_cols.sort();
            if sorted_rows != rows || sorted_cols != cols {
                // A broken fusion ring or grading is the more useful diagnosis.
                cat.validate_ring()?;
                cat.validate_grading()?;
                return Err(CatError::Invariant(format!(
                    "{tag}: channels inconsistent with N (expected rows {rows:?}, cols {cols:?})"
                )));
            }
            let mut m = zeros(rows.len(), cols.len());
            for (i, ri) in f.rows.iter().enumerate() {
                let ii = rows.iter().position(|x| x == ri).unwrap();
                for (j, cj) in f.cols.iter().enumerate() {
                    let jj = cols.iter().position(|x| x == cj).unwrap();
                    let [re, im] = f.matrix[i][j];
                    m[(ii, jj)] = C64::new(re, im);
                }
            }
            if cat.fsym.insert(f.abcd, FMatrix { rows, cols, m }).is_some() {
                return Err(CatError::Schema(format!("{tag} given twice")));
            }
        }
        cat.fill_unit_gauge();
        Ok(cat)
    }

    /// Raw description with every non-gauge F-matrix listed.
    pub fn to_raw(&self) -> RawCategory {
        let r = self.rank();
        let mut n = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.n(a, b, c) > 0 {
                        n.push([a, b, c, self.n(a, b, c)]);
                    }
                }
            }
        }
        let f = self
            .fsym
            .iter()
            .filter(|(k, _)| k[0] != 0 && k[1] != 0 && k[2] != 0)
            .map(|(k, fm)| RawF {
                abcd: *k,
                rows: fm.rows.clone(),
                cols: fm.cols.clone(),
                matrix: (0..fm.m.nrows())
                    .map(|i| (0..fm.m.ncols()).map(|j| [fm.m[(i, j)].re, fm.m[(i, j)].im]).collect())
                    .collect(),
            })
            .collect();
        let action = if self.actions.is_empty() {
            None
        } else {
            Some(RawActions::Many(
                self.actions
                    .iter()
                    .map(|a| RawAction {
                        name: a.name.clone(),
                        perm: (0..self.group.order())
                            .map(|g| (self.group.name(g).to_string(), a.perm[g].clone()))
                            .collect(),
                    })
                    .collect(),
            ))
        };
        RawCategory {
            name: Some(self.name.clone()),
            rank: r,
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            qdim: self.qdim.clone(),
            group: RawGroup {
                elements: self.group.names().to_vec(),
                table: self.group.table().to_vec(),
            },
            grading: self.grading.clone(),
            n,
            f,
            action,
        }
    }
}

fn parse_action(a: RawAction, group: &Group, rank: usize) -> Result<Action, CatError> {
    let mut perm = vec![Vec::new(); group.order()];
    for (g, p) in a.perm {
        let gi = group.index_of(&g).ok_or_else(|| {
            CatError::Schema(format!("action '{}': unknown group element '{g}'", a.name))
        })?;
        if p.len() != rank || p.iter().any(|&x| x >= rank) {
            return Err(CatError::Schema(format!(
                "action '{}': perm of '{g}' is not a map on {rank} labels",
                a.name
            )));
        }
        perm[gi] = p;
    }
    if let Some(g) = perm.iter().position(|p| p.is_empty()) {
        return Err(CatError::Schema(format!(
            "action '{}': no perm for group element '{}'",
            a.name,
            group.name(g)
        )));
    }
    Ok(Action { name: a.name, group: group.clone(), perm })
}
