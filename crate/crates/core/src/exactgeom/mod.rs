//! Exact rational geometry: linear algebra, convex hulls by double
//! description, and the face-lattice closure operators of polytopes and fans.

mod closures;
mod dd;
mod fan;
mod hull;
pub mod linalg;
mod rational;
mod volume;

pub use closures::{
    face_f_vector, face_lattice_closure, face_points, polytope_closure_facet, polytope_closure_vertex,
    Encoding,
};
pub use dd::{cone_hull, ConeHull};
pub use fan::{fan_closure, normal_fan, Fan};
pub use hull::{hull, AffineForm, HRep, Hull, IncidenceMatrix, PointConfig};
pub use rational::{
    dot, format_rational, int_json, int_rows_json, parse_rational, primitive, primitive_canonical_sign, rat, ratio,
    to_rational_vec, Rational,
};
pub use volume::normalized_volume;

pub(crate) use rational::serde_rational_vec;
