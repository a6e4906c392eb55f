//! Closed-form Burnside rings for special families: finite abelian groups,
//! elementary abelian normal forms and intersections, tori and compact
//! abelian groups, and O(2).

pub mod abelian;
pub mod elementary;
pub mod o2;

pub use abelian::{abelian_mul, compact_abelian_reduce, CompactAbelianDescriptor};
pub use elementary::{nf_from_generators, nf_intersect, ElementaryAbelianNF, NfIntersection};
pub use o2::{o2_mark, o2_mul, o2_p_perfection, O2Element, O2Subgroup};
