//! The lattices N¹ and N₁ of the blow-up and the linear action of Cremona
//! moves and relabelings on them.

mod action;
mod cert;
mod class;
mod matrix;

pub use action::{
    coxeter_element, coxeter_relations, coxeter_relations_check, cremona_map, cremona_pushforward,
    flopped_curve_classes, is_orthogonal_to, is_root_class, iterate_class, permutation_map, permute_class,
    CoxeterGenerators, LatticeMap, RelationCheck,
};
pub use cert::{
    distinctness_certificate, jordan_certificate, DistinctnessReport, JordanCertificate, GROWTH_WINDOW, RANK_POWERS,
};
pub use class::{intersect, CurveClass, DivisorClass};
pub use matrix::{deflate_root, root_multiplicity, IntMatrix};
