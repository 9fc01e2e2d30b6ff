//! Witt-algebra action on the coordinate algebra, residue polynomials and the
//! level operators built from them.

pub mod action;
pub mod checks;
pub mod level_ops;
pub mod minus;
pub mod residues;

pub use action::{apply_l, apply_lbar, apply_op, elem, ImageTable, Op, WittAction};
pub use level_ops::{build_level_operators, r1t_kernel, FamilyOps, LevelOperators};
pub use minus::{convert_l_b, Conversion, ExteriorImages};
pub use residues::{compute_b, compute_p, laurent_coeff, laurent_pm1, p_u, symbolic_map, BRoutes};
