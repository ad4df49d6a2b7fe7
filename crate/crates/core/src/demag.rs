//! The reduced demagnetizing matrix of a cross section.
//!
//! For a cross section `omega` with outward normal `n = (n2, n3)` the block
//!
//! ```text
//! M = -(1/2pi) ∮∮ n(x) n(y)^T ln|x - y| ds(x) ds(y)
//! ```
//!
//! is symmetric positive definite; `M / |omega|` is the two-dimensional
//! demagnetizing tensor of the infinite cylinder over `omega` (trace one).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::CrossSection;
use crate::quadrature::CompensatedSum;

/// Eigenvalue gaps at or below this multiple of the error estimate count as
/// degenerate.
const DEGENERACY_FACTOR: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemagMatrix {
    pub m22: f64,
    pub m23: f64,
    pub m33: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    /// Angle in `(-pi/2, pi/2]` such that `R B R^T` is diagonal with
    /// `R = [[cos, -sin], [sin, cos]]` and `alpha2` in the first slot.
    pub rotation_angle: f64,
    pub quad_points: usize,
    /// `|alpha(n) - alpha(n/2)|`, maximized over the three entries.
    pub estimated_error: f64,
    /// `alpha3 - alpha2` is within the error estimate; the wall plane is
    /// undetermined and `rotation_angle` is set to zero.
    pub degenerate: bool,
}

impl DemagMatrix {
    /// Builds the matrix from its block entries, diagonalizing in closed form.
    pub fn from_block(m22: f64, m23: f64, m33: f64) -> Self {
        let (alpha2, alpha3, rotation_angle) = diagonalize(m22, m23, m33);
        DemagMatrix {
            m22,
            m23,
            m33,
            alpha2,
            alpha3,
            rotation_angle,
            quad_points: 0,
            estimated_error: 0.0,
            degenerate: alpha2 == alpha3,
        }
    }

    pub fn block(&self) -> [[f64; 2]; 2] {
        [[self.m22, self.m23], [self.m23, self.m33]]
    }

    /// `R(angle) B R(angle)^T`.
    pub fn rotated_block(&self, angle: f64) -> [[f64; 2]; 2] {
        let (s, c) = angle.sin_cos();
        let r = [[c, -s], [s, c]];
        let b = self.block();
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[i][j] += r[i][k] * b[k][l] * r[j][l];
                    }
                }
            }
        }
        out
    }

    /// Angle of the `alpha2` eigenvector `(cos, sin)` in the cross-section
    /// plane, i.e. the rotation taking a wall in the `(x, y)` plane into the
    /// preferred plane.
    pub fn wall_plane_angle(&self) -> f64 {
        -self.rotation_angle
    }

    /// `alpha_omega = alpha2 / |omega|`.
    pub fn alpha_omega(&self, cs: &CrossSection) -> f64 {
        alpha_omega(self.alpha2, cs.area())
    }
}

pub fn alpha_omega(alpha2: f64, area: f64) -> f64 {
    alpha2 / area
}

/// Closed-form eigendecomposition of `[[a, b], [b, c]]`.
///
/// Returns `(alpha2, alpha3, angle)` with `alpha2 <= alpha3` and the angle in
/// `(-pi/2, pi/2]`.
pub fn diagonalize(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b);
    let (alpha2, alpha3) = (mean - radius, mean + radius);
    if b == 0.0 && a == c {
        return (alpha2, alpha3, 0.0);
    }
    // angle of the alpha3 eigenvector, then the orthogonal alpha2 direction
    let phi = 0.5 * (2.0 * b).atan2(a - c) + FRAC_PI_2;
    (alpha2, alpha3, wrap_half_turn(-phi))
}

/// Wraps an angle into `(-pi/2, pi/2]`.
fn wrap_half_turn(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 + 1e-15 {
        t -= PI;
    }
    if (t - FRAC_PI_2).abs() <= 1e-15 {
        t = FRAC_PI_2;
    }
    if t.abs() < 1e-15 {
        t = 0.0;
    }
    t
}

/// `sum_{k != 0} (∫_0^1∫_k^{k+1} ln|t - s| dt ds - ln|k|)`: the total midpoint
/// error of a straight chain of unit panels, seen from one panel.
const NEIGHBOUR_CORRECTION: f64 = -0.337_877_066_409_345_5;

/// The block entries `(m22, m23, m33)` with `n` boundary nodes.
///
/// Node pairs use the midpoint product rule. The self term of each node
/// treats its panel as flat, where `∫∫ ln|s - t| = w^2 (ln w - 3/2)`, and
/// also absorbs the midpoint error of the log kernel on the neighbouring
/// panels, which would otherwise limit the rule to first order.
pub fn block_entries(cs: &CrossSection, n: usize) -> [f64; 3] {
    let nodes = cs.boundary_quadrature(n);
    let mut acc = [CompensatedSum::default(); 3];
    for (i, p) in nodes.iter().enumerate() {
        let mut row = [0.0; 3];
        for (j, q) in nodes.iter().enumerate() {
            let kernel = if i == j {
                p.weight * p.weight * (p.weight.ln() - 1.5 + NEIGHBOUR_CORRECTION)
            } else {
                let r = (p.point[0] - q.point[0]).hypot(p.point[1] - q.point[1]);
                p.weight * q.weight * r.ln()
            };
            row[0] += p.normal[0] * q.normal[0] * kernel;
            row[1] += p.normal[0] * q.normal[1] * kernel;
            row[2] += p.normal[1] * q.normal[1] * kernel;
        }
        for k in 0..3 {
            acc[k].add(row[k]);
        }
    }
    let scale = -1.0 / (2.0 * PI);
    [scale * acc[0].value(), scale * acc[1].value(), scale * acc[2].value()]
}

/// Computes the demag block with `n_points` boundary nodes and an error
/// estimate from the comparison against `n_points / 2`.
pub fn compute_demag_matrix(cs: &CrossSection, n_points: usize) -> Result<DemagMatrix> {
    if n_points < 32 {
        return Err(Error::Domain(format!("n_points must be at least 32, got {n_points}")));
    }
    let fine = block_entries(cs, n_points);
    let coarse = block_entries(cs, n_points / 2);
    let estimated_error = (0..3).map(|k| (fine[k] - coarse[k]).abs()).fold(0.0, f64::max);
    let mut dm = DemagMatrix::from_block(fine[0], fine[1], fine[2]);
    dm.quad_points = n_points;
    dm.estimated_error = estimated_error;
    dm.degenerate = dm.alpha3 - dm.alpha2 <= DEGENERACY_FACTOR * estimated_error;
    if dm.degenerate {
        dm.rotation_angle = 0.0;
    }
    Ok(dm)
}

/// As [`compute_demag_matrix`], failing when the error estimate exceeds
/// `tolerance` (absolute).
pub fn compute_demag_matrix_checked(cs: &CrossSection, n_points: usize, tolerance: f64) -> Result<DemagMatrix> {
    let dm = compute_demag_matrix(cs, n_points)?;
    if dm.estimated_error > tolerance {
        let coarse = block_entries(cs, n_points / 2);
        let (c2, _, _) = diagonalize(coarse[0], coarse[1], coarse[2]);
        return Err(Error::Accuracy {
            coarse: c2,
            fine: dm.alpha2,
            error: dm.estimated_error,
            tolerance,
        });
    }
    Ok(dm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn diagonalize_reference_blocks() {
        let (a2, a3, t) = diagonalize(2.0, 0.0, 3.0);
        assert_eq!((a2, a3, t), (2.0, 3.0, 0.0));
        let (a2, a3, t) = diagonalize(3.0, 0.0, 2.0);
        assert_eq!((a2, a3), (2.0, 3.0));
        assert_relative_eq!(t, FRAC_PI_2);
        let (a2, a3, t) = diagonalize(2.0, 1.0, 2.0);
        assert_relative_eq!(a2, 1.0, max_relative = 1e-15);
        assert_relative_eq!(a3, 3.0, max_relative = 1e-15);
        assert_relative_eq!(t, PI / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn rotation_angle_diagonalizes() {
        for &(a, b, c) in &[(1.0, 0.3, 2.0), (2.0, -0.7, 0.5), (1.0, 1e-3, 1.0), (4.0, 2.0, -1.0)] {
            let dm = DemagMatrix::from_block(a, b, c);
            let r = dm.rotated_block(dm.rotation_angle);
            assert!(r[0][1].abs() < 1e-14, "{r:?}");
            assert_relative_eq!(r[0][0], dm.alpha2, epsilon = 1e-14);
            assert_relative_eq!(r[1][1], dm.alpha3, epsilon = 1e-14);
            assert!(dm.rotation_angle > -FRAC_PI_2 && dm.rotation_angle <= FRAC_PI_2);
        }
    }

    /// Second differences of `F(u) = u^2 ln u / 2 - 3u^2/4` give the exact
    /// panel-pair integrals; the tail uses the triangular-moment expansion.
    #[test]
    fn neighbour_correction_constant() {
        let f = |u: f64| {
            if u > 0.0 {
                0.5 * u * u * u.ln() - 0.75 * u * u
            } else {
                0.0
            }
        };
        let mut s = 0.0;
        for k in 1..=20 {
            let k = k as f64;
            s += f(k + 1.0) - 2.0 * f(k) + f(k - 1.0) - k.ln();
        }
        for k in 21..200_000 {
            let k2 = (k as f64).powi(2);
            s -= 1.0 / (12.0 * k2) + 1.0 / (60.0 * k2 * k2) + 1.0 / (168.0 * k2 * k2 * k2);
        }
        s -= 1.0 / (12.0 * 200_000.0);
        assert!((2.0 * s - NEIGHBOUR_CORRECTION).abs() < 1e-9, "{}", 2.0 * s);
    }

    #[test]
    fn disc_is_half_the_area() {
        let cs = CrossSection::disc(1.0).unwrap();
        let dm = compute_demag_matrix(&cs, 512).unwrap();
        assert_relative_eq!(dm.alpha2, FRAC_PI_2, max_relative = 1e-4);
        assert!((dm.alpha3 - dm.alpha2).abs() / dm.alpha3 < 1e-6);
        assert!(dm.degenerate);
        assert_eq!(dm.rotation_angle, 0.0);
    }

    /// 2D demag factors of an elliptic cylinder: N_y = b/(a+b), N_z = a/(a+b).
    #[test]
    fn ellipse_matches_elliptic_cylinder_factors() {
        let cs = CrossSection::ellipse(2.0, 1.0).unwrap();
        let dm = compute_demag_matrix(&cs, 1024).unwrap();
        assert_relative_eq!(dm.alpha2, 2.0 * PI / 3.0, max_relative = 1e-4);
        assert_relative_eq!(dm.alpha3, 4.0 * PI / 3.0, max_relative = 1e-4);
        assert!(dm.m23.abs() < 1e-10);
        assert!(!dm.degenerate);
    }

    #[test]
    fn trace_equals_area() {
        for cs in [
            CrossSection::rectangle(1.0, 0.5).unwrap(),
            CrossSection::polygon(vec![[0.0, 0.0], [2.0, 0.0], [1.5, 1.0], [0.2, 0.8]]).unwrap(),
        ] {
            let dm = compute_demag_matrix(&cs, 1024).unwrap();
            assert_relative_eq!(dm.m22 + dm.m33, cs.area(), max_relative = 2e-3);
        }
    }

    #[test]
    fn small_n_is_rejected() {
        let cs = CrossSection::disc(1.0).unwrap();
        assert!(matches!(compute_demag_matrix(&cs, 16), Err(Error::Domain(_))));
    }

    #[test]
    fn checked_variant_reports_both_estimates() {
        let cs = CrossSection::ellipse(3.0, 1.0).unwrap();
        match compute_demag_matrix_checked(&cs, 32, 1e-14) {
            Err(Error::Accuracy { coarse, fine, .. }) => assert!(coarse != fine),
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn wall_plane_is_the_alpha2_eigenvector() {
        for (a, b, c) in [(2.0, 0.7, 3.0), (3.0, -0.4, 1.0), (1.0, 0.0, 2.0), (2.0, 0.0, 1.0)] {
            let dm = DemagMatrix::from_block(a, b, c);
            let (s, co) = dm.wall_plane_angle().sin_cos();
            let bv = [a * co + b * s, b * co + c * s];
            assert!((bv[0] - dm.alpha2 * co).abs() < 1e-12 && (bv[1] - dm.alpha2 * s).abs() < 1e-12);
        }
    }
}
