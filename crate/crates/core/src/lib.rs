//! Domain walls in ferromagnetic nanowires.
//!
//! The crate evaluates and minimizes micromagnetic energies of 180° walls in
//! a straight wire `R x omega`:
//!
//! * [`geometry`]: cross sections, boundary quadrature and wire domains,
//! * [`demag`]: the reduced demagnetizing block `M_omega` and its eigenvalues,
//! * [`profile`]: the one-dimensional reduced energy, its closed-form
//!   minimizers and projected descent,
//! * [`field3d`]: exchange and magnetostatic energies of sampled 3D fields,
//!   cross-section averages and 3D descent,
//! * [`vortex`]: the thick-wire vortex wall and its energy bounds,
//! * [`lemmas`]: numerical checks of the supporting inequalities,
//! * [`cli`]: the `nanowire` command-line front end.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod demag;
pub mod error;
pub mod field3d;
pub mod geometry;
pub mod lemmas;
pub mod profile;
pub mod quadrature;
pub mod vortex;

pub use error::{Error, Result};

pub type Vec3 = [f64; 3];

#[inline]
pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub(crate) fn normalize(a: Vec3) -> Vec3 {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}
