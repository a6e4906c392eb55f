//! Burnside rings of finite groups and selected compact families.
//!
//! The crate constructs tables of marks over canonically ordered subgroup
//! lattices, does exact ring arithmetic with independently cross-checking
//! multiplication strategies, characterizes the image of the mark
//! homomorphism by congruence relations, computes the prime ideal spectrum
//! via p-perfection, and enumerates idempotents and units. The `families`
//! module adds closed forms for abelian groups, elementary abelian normal
//! forms, tori and compact abelian groups, and O(2).
//!
//! All arithmetic is exact: 64-bit integers for marks and coefficients,
//! arbitrary-precision rationals for the triangular solve behind the mark
//! inverse. No floating point anywhere.

pub mod congruence;
pub mod element;
pub mod error;
pub mod families;
pub mod group;
pub mod lattice;
pub mod maps;
pub mod ring;
pub mod spectrum;
pub mod util;

pub use element::{BurnsideElement, GhostVector};
pub use error::{Error, Result};
pub use group::{
    all_subgroup_classes, all_subgroups, double_coset_reps, fixed_point_count, is_solvable,
    p_residual, parse_group, parse_group_with_cap, FiniteGroup, GroupSpec, Subgroup,
    DEFAULT_ORDER_CAP,
};
pub use lattice::{MarkMatrix, SubgroupLattice};
