//! Skeletal intertwiner calculus: hom spaces in left-nested tree bases,
//! composition, one-sided tensoring by F-moves, conjugate solutions and
//! Frobenius reciprocity.

mod conjugate;
mod hom;
mod trees;

pub use conjugate::{ConjError, ConjugateResiduals, ConjugateSolution};
pub use hom::{HomBlock, HomError};
pub use trees::{concat, normalize, obj_tensor, simple, sum_of, word_obj, Morphisms, Obj, Tree, Word};
