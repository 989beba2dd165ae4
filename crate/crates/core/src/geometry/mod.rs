//! Exact projective geometry of point configurations in P³.

mod canonical;
mod config;
mod cremona;
mod linalg;
mod map;
mod point;
mod random;

pub use canonical::{canonical_form, equivalent, CanonicalForm};
pub use config::{CenterSet, Configuration, ConfigurationFile, MIN_POINTS};
pub use cremona::{condition_star, cremona_at, star_violation};
pub use map::{frame_transform, ProjectiveMap};
pub use point::{coplanar, normalize_point, ProjectivePoint};
pub use random::random_config;
