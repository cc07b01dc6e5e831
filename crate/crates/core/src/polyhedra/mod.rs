//! Rational cones and Newton polyhedra `conv(A) + cone(S)`.

mod cone;
mod dd;
mod newton;

pub use cone::{dual_cone, Cone};
pub use dd::extreme_rays;
pub use newton::{newton_polyhedron, Face, HalfSpace, NewtonPolyhedron};
