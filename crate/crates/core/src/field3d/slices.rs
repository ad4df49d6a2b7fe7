//! Cross-section statistics: the mean-deviation (Poincaré) estimate and the
//! level-crossing intervals of the averaged axial component.

use super::{average_profile, Field3D, Grid3};
use crate::demag::compute_demag_matrix;
use crate::error::{Error, Result};
use crate::geometry::CrossSection;
use crate::{dot, Vec3};

/// Neighbour lists of the inside cells of one slice, with face weights
/// `h_z / h_y` (y-neighbours) and `h_y / h_z` (z-neighbours).
fn slice_graph(grid: &Grid3) -> (Vec<(usize, usize)>, Vec<Vec<(usize, f64)>>) {
    let cells: Vec<(usize, usize)> = grid.slice_iter().collect();
    let mut id = vec![usize::MAX; grid.n[1] * grid.n[2]];
    for (c, &(j, k)) in cells.iter().enumerate() {
        id[j * grid.n[2] + k] = c;
    }
    let wy = grid.h[2] / grid.h[1];
    let wz = grid.h[1] / grid.h[2];
    let nbrs = cells
        .iter()
        .map(|&(j, k)| {
            let mut out = Vec::with_capacity(4);
            let mut add = |jj: usize, kk: usize, w: f64| {
                let c = id[jj * grid.n[2] + kk];
                if c != usize::MAX {
                    out.push((c, w));
                }
            };
            if j > 0 {
                add(j - 1, k, wy);
            }
            if j + 1 < grid.n[1] {
                add(j + 1, k, wy);
            }
            if k > 0 {
                add(j, k - 1, wz);
            }
            if k + 1 < grid.n[2] {
                add(j, k + 1, wz);
            }
            out
        })
        .collect();
    (cells, nbrs)
}

fn apply(nbrs: &[Vec<(usize, f64)>], u: &[f64]) -> Vec<f64> {
    nbrs.iter()
        .enumerate()
        .map(|(c, list)| list.iter().map(|&(n, w)| w * (u[c] - u[n])).sum())
        .collect()
}

fn remove_mean(u: &mut [f64]) {
    let mean = u.iter().sum::<f64>() / u.len() as f64;
    u.iter_mut().for_each(|x| *x -= mean);
}

fn vdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Conjugate gradients for the singular Neumann operator on mean-zero data.
fn solve_mean_zero(nbrs: &[Vec<(usize, f64)>], rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut x = vec![0.0; n];
    let mut r = rhs.to_vec();
    remove_mean(&mut r);
    let mut p = r.clone();
    let mut rr = vdot(&r, &r);
    let stop = 1e-26 * rr.max(f64::MIN_POSITIVE);
    for _ in 0..20 * n + 100 {
        if rr <= stop {
            break;
        }
        let ap = apply(nbrs, &p);
        let alpha = rr / vdot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        remove_mean(&mut r);
        let rr_new = vdot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    remove_mean(&mut x);
    x
}

/// Poincaré constant `C_p` of the discrete cross section of `grid`, defined
/// so that `∫ |u - ū|^2 <= C_p d^2 ∫ |∇_yz u|^2` for every cell function `u`;
/// `d` is the diameter of the scaled cross section.
///
/// The optimal constant is `1 / (lambda_1 d^2)` with `lambda_1` the first
/// nonzero Neumann eigenvalue of the slice, found by inverse iteration.
pub fn poincare_constant(grid: &Grid3, diameter: f64) -> f64 {
    let (cells, nbrs) = slice_graph(grid);
    if cells.len() < 2 {
        return 0.0;
    }
    let area = grid.h[1] * grid.h[2];
    let mut u: Vec<f64> = cells
        .iter()
        .map(|&(j, k)| {
            let (y, z) = (j as f64 + 0.5, k as f64 + 0.5);
            y + 0.37 * z + 0.05 * y * z
        })
        .collect();
    remove_mean(&mut u);
    let mut lambda = f64::INFINITY;
    for _ in 0..500 {
        let norm = vdot(&u, &u).sqrt();
        u.iter_mut().for_each(|x| *x /= norm);
        let next = vdot(&u, &apply(&nbrs, &u)) / (area * vdot(&u, &u));
        let converged = ((next - lambda) / next).abs() < 1e-13;
        lambda = next;
        if converged {
            break;
        }
        u = solve_mean_zero(&nbrs, &u);
    }
    if lambda <= 0.0 {
        return f64::INFINITY;
    }
    1.0 / (lambda * diameter * diameter)
}

/// Both sides of the mean-deviation estimate on one slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareSlice {
    pub x: f64,
    /// `∫_omega |m - m̄|^2`.
    pub lhs: f64,
    /// `C_p d^2 ∫_omega |∇_yz m|^2`.
    pub rhs: f64,
}

impl PoincareSlice {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-9) + 1e-14
    }
}

/// Evaluates `∫_omega |m - m̄|^2 <= C_p d^2 ∫_omega |∇_yz m|^2` on every slice,
/// with `d` the diameter of the scaled cross section.
pub fn poincare_check(f: &Field3D, c_p: f64) -> Vec<PoincareSlice> {
    let g = &f.grid;
    let (cells, nbrs) = slice_graph(g);
    let d = f.domain.diameter();
    let area = g.h[1] * g.h[2];
    let avg = average_profile(f);
    (0..g.n[0])
        .map(|i| {
            let vals: Vec<Vec3> = cells.iter().map(|&(j, k)| f.get(i, j, k)).collect();
            let mean = avg.values[i];
            let lhs = vals
                .iter()
                .map(|m| {
                    let e = [m[0] - mean[0], m[1] - mean[1], m[2] - mean[2]];
                    dot(e, e)
                })
                .sum::<f64>()
                * area;
            let mut grad = 0.0;
            for (c, list) in nbrs.iter().enumerate() {
                for &(n, w) in list {
                    if n > c {
                        let e = [
                            vals[c][0] - vals[n][0],
                            vals[c][1] - vals[n][1],
                            vals[c][2] - vals[n][2],
                        ];
                        grad += w * dot(e, e);
                    }
                }
            }
            PoincareSlice {
                x: g.x(i),
                lhs,
                rhs: c_p * d * d * grad,
            }
        })
        .collect()
}

/// Intervals `(a, b)` on which `m̄1` runs between the levels `alpha` and
/// `beta` while staying in `[-rho, rho]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalStats {
    pub intervals: Vec<(f64, f64)>,
    pub count: usize,
    pub total_length: f64,
    /// `Σ (1/(b - a) + (b - a))`.
    pub weighted_sum: f64,
}

fn check_levels(alpha: f64, beta: f64, rho: f64) -> Result<()> {
    if !(-1.0 < alpha && alpha < beta && beta < 1.0) {
        return Err(Error::Domain(format!(
            "need -1 < alpha < beta < 1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if !(0.0 < rho && rho < 1.0) {
        return Err(Error::Domain(format!("need 0 < rho < 1, got {rho}")));
    }
    Ok(())
}

/// Scans linearly interpolated samples `m1[i]` at `x0 + i h` for the
/// intervals of [`IntervalStats`]. Each interval runs from the last touch of
/// one level to the first subsequent touch of the other.
pub fn oscillation_intervals(x0: f64, h: f64, m1: &[f64], alpha: f64, beta: f64, rho: f64) -> Result<IntervalStats> {
    check_levels(alpha, beta, rho)?;
    let mut intervals = Vec::new();
    // (level index, position)
    let mut last: Option<(usize, f64)> = None;
    for i in 0..m1.len().saturating_sub(1) {
        if m1[i].abs() > rho {
            last = None;
        }
        let (a, b) = (m1[i], m1[i + 1]);
        let mut events: Vec<(f64, usize)> = Vec::new();
        for (level_id, level) in [alpha, beta].into_iter().enumerate() {
            let (da, db) = (a - level, b - level);
            if da == 0.0 && db == 0.0 {
                continue;
            }
            if da * db <= 0.0 && db != 0.0 || (db == 0.0 && da != 0.0) {
                let t = da / (da - db);
                events.push((x0 + (i as f64 + t) * h, level_id));
            }
        }
        events.sort_by(|p, q| p.0.total_cmp(&q.0));
        for (pos, level) in events {
            match last {
                Some((l, start)) if l != level => {
                    if pos > start {
                        intervals.push((start, pos));
                    }
                    last = Some((level, pos));
                }
                _ => last = Some((level, pos)),
            }
        }
    }
    let total_length = intervals.iter().map(|(a, b)| b - a).sum();
    let weighted_sum = intervals.iter().map(|(a, b)| 1.0 / (b - a) + (b - a)).sum();
    Ok(IntervalStats {
        count: intervals.len(),
        intervals,
        total_length,
        weighted_sum,
    })
}

/// `M = (1/|omega_d|) (E/(alpha - beta)^2 + (C1 + C_p d^2 E)/(1 - rho^2))` with
/// `C1 = 2E / min(alpha2, alpha3)` and `|omega_d| = d^2 |omega|`.
pub fn oscillation_constant_with(
    alpha: f64,
    beta: f64,
    rho: f64,
    area: f64,
    min_eigenvalue: f64,
    energy: f64,
    d: f64,
    c_p: f64,
) -> Result<f64> {
    check_levels(alpha, beta, rho)?;
    if !(energy >= 0.0) {
        return Err(Error::Domain(format!("energy must be nonnegative, got {energy}")));
    }
    if !(d > 0.0 && area > 0.0 && min_eigenvalue > 0.0) {
        return Err(Error::Domain("d, |omega| and the eigenvalues must be positive".into()));
    }
    let c1 = 2.0 * energy / min_eigenvalue;
    let area_d = d * d * area;
    Ok((energy / (alpha - beta).powi(2) + (c1 + c_p * d * d * energy) / (1.0 - rho * rho)) / area_d)
}

/// [`oscillation_constant_with`] with the eigenvalues of `cs` computed here.
pub fn oscillation_constant(
    alpha: f64,
    beta: f64,
    rho: f64,
    cs: &CrossSection,
    energy: f64,
    d: f64,
    c_p: f64,
) -> Result<f64> {
    check_levels(alpha, beta, rho)?;
    let dm = compute_demag_matrix(cs, 256)?;
    oscillation_constant_with(alpha, beta, rho, cs.area(), dm.alpha2.min(dm.alpha3), energy, d, c_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field3d::wire;
    use std::f64::consts::PI;

    #[test]
    fn rectangle_constant_matches_first_cosine_mode() {
        // first Neumann eigenvalue of [0, Ly] x [0, Lz] is (pi / max L)^2 and
        // cosine modes are exact discrete eigenvectors
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        let f = Field3D::from_fn(wire(&cs, 1.0, (-1.0, 1.0), [2, 16, 8]).unwrap(), |_| [1.0, 0.0, 0.0]).unwrap();
        let d = f.domain.diameter();
        let c_p = poincare_constant(&f.grid, d);
        let hy = f.grid.h[1];
        let lambda = (2.0 * (1.0 - (PI / 16.0).cos())) / (hy * hy);
        assert!((c_p - 1.0 / (lambda * d * d)).abs() < 1e-9 * c_p, "{c_p}");
    }

    #[test]
    fn slice_constant_field_has_zero_sides() {
        let cs = CrossSection::disc(1.0).unwrap();
        let f = Field3D::from_fn(wire(&cs, 1.0, (-1.0, 1.0), [3, 8, 8]).unwrap(), |xi| [xi[0], 1.0, 0.0]).unwrap();
        for s in poincare_check(&f, 1.0) {
            assert!(s.lhs < 1e-28 && s.rhs < 1e-28);
            assert!(s.holds());
        }
    }

    #[test]
    fn cosine_field_is_bounded() {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        let domain = wire(&cs, 1.0, (-1.0, 1.0), [2, 16, 8]).unwrap();
        let dy = 2.0;
        let f = Field3D::from_fn(domain, |xi| [(PI * xi[1] / dy).cos(), (PI * xi[1] / dy).sin(), 0.0]).unwrap();
        let c_p = poincare_constant(&f.grid, f.domain.diameter());
        for s in poincare_check(&f, c_p) {
            assert!(s.lhs > 0.0 && s.rhs > 0.0);
            assert!(s.holds(), "{s:?}");
        }
    }

    #[test]
    fn tanh_has_one_crossing_family() {
        let h = 0.01;
        let m1: Vec<f64> = (0..2001).map(|i| (-10.0 + i as f64 * h).tanh()).collect();
        let s = oscillation_intervals(-10.0, h, &m1, -1.0 / 3.0, 1.0 / 3.0, 5.0 / 6.0).unwrap();
        assert_eq!(s.count, 1);
        let (a, b) = s.intervals[0];
        assert!((a - (-1.0f64 / 3.0).atanh()).abs() < 1e-4);
        assert!((b - (1.0f64 / 3.0).atanh()).abs() < 1e-4);
    }

    #[test]
    fn oscillations_are_counted() {
        let h = 0.01;
        // peak, trough, peak: two passages between the levels
        let m1: Vec<f64> = (0..3001).map(|i| 0.5 * (i as f64 * h * PI / 10.0).sin()).collect();
        let s = oscillation_intervals(0.0, h, &m1, -1.0 / 3.0, 1.0 / 3.0, 5.0 / 6.0).unwrap();
        assert_eq!(s.count, 2);
        // rho below the levels breaks every interval
        let s = oscillation_intervals(0.0, h, &m1, -0.3, 0.3, 0.25).unwrap();
        assert_eq!(s.count, 0);
    }

    #[test]
    fn constant_is_zero_at_zero_energy_and_validates_levels() {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        assert_eq!(oscillation_constant(-0.3, 0.3, 0.8, &cs, 0.0, 0.1, 1.0).unwrap(), 0.0);
        assert!(matches!(
            oscillation_constant(0.3, -0.3, 0.8, &cs, 1.0, 0.1, 1.0),
            Err(Error::Domain(_))
        ));
    }
}
