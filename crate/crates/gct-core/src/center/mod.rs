//! Objects of the relative center and of the G-center as half-braidings:
//! verification, intertwiners, conjugates, tensor products, induction,
//! extraction of simples from tube blocks, the G-action, G-braidings and
//! equivariantization counts.

mod braiding;
mod equivariant;
mod extract;
mod half_braiding;
mod report;

pub use braiding::{ActionTable, BraidingReport, GBraidingData};
pub use equivariant::{EquivariantBraidingReport, EquivariantCount, EquivariantObject, EquivariantReport, OrbitInfo};
pub use extract::Extraction;
pub use report::{
    center_report, fusion_table, g_center, relative_center, round12, round_sig, BraidingFile, BraidingJson, CenterData, CenterReport,
    EquivariantJson, GradeJson, HomBlockJson, LabelBlock, OrbitJson, SimpleJson,
};
pub use half_braiding::{CenterCtx, HalfBraiding, HalfBraidingReport, HomCenter};

use thiserror::Error;

use crate::tube::TubeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CenterError {
    #[error("missing half-braiding data: {0}")]
    MissingE(String),
    #[error("no action configured")]
    NoAction,
    #[error("extraction failed: {0}")]
    Extraction(String),
    #[error("invalid braiding data: {0}")]
    Braiding(String),
    #[error(transparent)]
    Tube(#[from] TubeError),
}

#[cfg(test)]
mod tests;
