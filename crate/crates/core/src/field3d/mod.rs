//! Sampled magnetizations on a truncated wire `[x0, x1] x (d omega)`.
//!
//! Values live at cell centres of a uniform `nx x ny x nz` lattice over the
//! bounding box of the scaled cross section; cells whose centre lies outside
//! the cross section are masked out and carry the zero vector. Beyond the
//! window the field continues as `(-1, 0, 0)` on the left and `(1, 0, 0)` on
//! the right.

mod descent;
pub mod kernel;
mod magnetostatic;
mod slices;

pub use descent::{minimize_3d, Descent3dOptions, Descent3dResult};
pub use magnetostatic::Magnetostatics;
pub use slices::{
    oscillation_constant, oscillation_constant_with, oscillation_intervals, poincare_check, poincare_constant,
    IntervalStats, PoincareSlice,
};

use crate::error::{Error, Result};
use crate::geometry::{CrossSection, WireDomain};
use crate::profile::{self, align_samples, Alignment, WallProfile};
use crate::{dot, norm, normalize, Vec3};

/// Default capacity of the direct charge sum, in faces.
pub const DEFAULT_MAX_CHARGES: usize = 150_000;

/// Cell lattice of a wire domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid3 {
    pub n: [usize; 3],
    pub h: [f64; 3],
    /// Corner of cell `(0, 0, 0)`.
    pub origin: [f64; 3],
    /// `mask[j * nz + k]`: cross-section cell `(j, k)` is inside.
    pub mask: Vec<bool>,
}

impl Grid3 {
    pub fn from_domain(domain: &WireDomain) -> Self {
        let section = domain.scaled_section();
        let (ny, nz) = domain.transverse_cells;
        let g = section.interior_grid_cells(ny, nz);
        Grid3 {
            n: [domain.axial_cells, ny, nz],
            h: [domain.hx(), g.h[0], g.h[1]],
            origin: [domain.x_window.0, g.origin[0], g.origin[1]],
            mask: g.mask,
        }
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n[1] + j) * self.n[2] + k
    }

    #[inline]
    pub fn inside(&self, j: usize, k: usize) -> bool {
        self.mask[j * self.n[2] + k]
    }

    pub fn center(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [
            self.origin[0] + (i as f64 + 0.5) * self.h[0],
            self.origin[1] + (j as f64 + 0.5) * self.h[1],
            self.origin[2] + (k as f64 + 0.5) * self.h[2],
        ]
    }

    pub fn cell_volume(&self) -> f64 {
        self.h[0] * self.h[1] * self.h[2]
    }

    pub fn slice_cells(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Area of the masked cross section.
    pub fn slice_area(&self) -> f64 {
        self.slice_cells() as f64 * self.h[1] * self.h[2]
    }

    /// Inside cell indices `(j, k)` of one slice.
    pub fn slice_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nz = self.n[2];
        (0..self.n[1] * nz)
            .filter(|&c| self.mask[c])
            .map(move |c| (c / nz, c % nz))
    }

    /// Centre `x` of slice `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.origin[0] + (i as f64 + 0.5) * self.h[0]
    }
}

/// A unit field on the cells of a wire domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Field3D {
    pub domain: WireDomain,
    pub grid: Grid3,
    values: Vec<Vec3>,
}

impl Field3D {
    /// Samples `f` at every inside cell centre and normalizes.
    pub fn from_fn(domain: WireDomain, mut f: impl FnMut([f64; 3]) -> Vec3) -> Result<Self> {
        let grid = Grid3::from_domain(&domain);
        if grid.slice_cells() == 0 {
            return Err(Error::geometry(
                "ny/nz",
                "no cell centre falls inside the cross section",
            ));
        }
        let mut values = vec![[0.0; 3]; grid.len()];
        for i in 0..grid.n[0] {
            for (j, k) in grid.slice_iter() {
                let v = f(grid.center(i, j, k));
                let n = norm(v);
                if !(n > 0.0) || !n.is_finite() {
                    return Err(Error::Domain(format!(
                        "field has no direction at {:?}: {v:?}",
                        grid.center(i, j, k)
                    )));
                }
                values[grid.index(i, j, k)] = normalize(v);
            }
        }
        Ok(Field3D { domain, grid, values })
    }

    /// Slice-constant extension of a 1D profile (linear interpolation, tails
    /// outside its window).
    pub fn from_profile(domain: WireDomain, p: &WallProfile) -> Result<Self> {
        Self::from_fn(domain, |xi| p.at(xi[0]))
    }

    /// Wraps raw cell values; masked cells must be zero and inside cells unit.
    pub fn from_values(domain: WireDomain, values: Vec<Vec3>) -> Result<Self> {
        let grid = Grid3::from_domain(&domain);
        if values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "expected {} cell values, got {}",
                grid.len(),
                values.len()
            )));
        }
        for i in 0..grid.n[0] {
            for j in 0..grid.n[1] {
                for k in 0..grid.n[2] {
                    let v = values[grid.index(i, j, k)];
                    let ok = if grid.inside(j, k) {
                        (norm(v) - 1.0).abs() <= 1e-12
                    } else {
                        v == [0.0; 3]
                    };
                    if !ok {
                        return Err(Error::Domain(format!("invalid value {v:?} at cell ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(Field3D { domain, grid, values })
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub(crate) fn with_values(&self, values: Vec<Vec3>) -> Self {
        Field3D {
            domain: self.domain.clone(),
            grid: self.grid.clone(),
            values,
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Vec3 {
        self.values[self.grid.index(i, j, k)]
    }

    /// Largest deviation of `|m|` from one over inside cells.
    pub fn max_norm_deviation(&self) -> f64 {
        let g = &self.grid;
        let mut worst: f64 = 0.0;
        for i in 0..g.n[0] {
            for (j, k) in g.slice_iter() {
                worst = worst.max((norm(self.get(i, j, k)) - 1.0).abs());
            }
        }
        worst
    }

    /// Sets the two end slices to the tail values.
    pub fn clamp_ends(&mut self) {
        let g = self.grid.clone();
        for (j, k) in g.slice_iter() {
            self.values[g.index(0, j, k)] = profile::LEFT_TAIL;
            self.values[g.index(g.n[0] - 1, j, k)] = profile::RIGHT_TAIL;
        }
    }

    /// `L2(Omega)` distance to a field on the same grid.
    pub fn l2_distance(&self, other: &Field3D) -> f64 {
        let mut s = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
            s += dot(d, d);
        }
        (s * self.grid.cell_volume()).sqrt()
    }
}

/// Energy components of a field.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub exchange: f64,
    pub magnetostatic: f64,
    pub total: f64,
    pub n: [usize; 3],
    pub h: [f64; 3],
    /// Number of faces carrying charge.
    pub charges: usize,
    /// `"direct-sum"`, or `"none"` when magnetostatics was skipped.
    pub method: &'static str,
}

/// `∫ |∇m|^2`: squared differences across faces shared by two inside cells,
/// times `V / h_k^2`. No coupling to the tails.
pub fn exchange_energy(f: &Field3D) -> f64 {
    exchange_energy_values(&f.grid, &f.values)
}

/// [`exchange_energy`] of raw cell values, which need not be unit vectors.
pub fn exchange_energy_values(g: &Grid3, values: &[Vec3]) -> f64 {
    let v = g.cell_volume();
    let w = [v / (g.h[0] * g.h[0]), v / (g.h[1] * g.h[1]), v / (g.h[2] * g.h[2])];
    let mut total = 0.0;
    for i in 0..g.n[0] {
        let mut slice = 0.0;
        for (j, k) in g.slice_iter() {
            let m = values[g.index(i, j, k)];
            let mut add = |axis: usize, other: Vec3| {
                let d = [m[0] - other[0], m[1] - other[1], m[2] - other[2]];
                slice += w[axis] * dot(d, d);
            };
            if i + 1 < g.n[0] {
                add(0, values[g.index(i + 1, j, k)]);
            }
            if j + 1 < g.n[1] && g.inside(j + 1, k) {
                add(1, values[g.index(i, j + 1, k)]);
            }
            if k + 1 < g.n[2] && g.inside(j, k + 1) {
                add(2, values[g.index(i, j, k + 1)]);
            }
        }
        total += slice;
    }
    total
}

/// Euclidean gradient of [`exchange_energy`] with respect to the cell values.
pub fn exchange_gradient(f: &Field3D) -> Vec<Vec3> {
    exchange_gradient_values(&f.grid, &f.values)
}

/// [`exchange_gradient`] at raw cell values.
pub fn exchange_gradient_values(g: &Grid3, values: &[Vec3]) -> Vec<Vec3> {
    let v = g.cell_volume();
    let w = [v / (g.h[0] * g.h[0]), v / (g.h[1] * g.h[1]), v / (g.h[2] * g.h[2])];
    let mut out = vec![[0.0; 3]; g.len()];
    for i in 0..g.n[0] {
        for (j, k) in g.slice_iter() {
            let c = g.index(i, j, k);
            let m = values[c];
            let mut acc = [0.0; 3];
            let mut add = |axis: usize, other: Vec3| {
                for q in 0..3 {
                    acc[q] += 2.0 * w[axis] * (m[q] - other[q]);
                }
            };
            if i > 0 {
                add(0, values[g.index(i - 1, j, k)]);
            }
            if i + 1 < g.n[0] {
                add(0, values[g.index(i + 1, j, k)]);
            }
            if j > 0 && g.inside(j - 1, k) {
                add(1, values[g.index(i, j - 1, k)]);
            }
            if j + 1 < g.n[1] && g.inside(j + 1, k) {
                add(1, values[g.index(i, j + 1, k)]);
            }
            if k > 0 && g.inside(j, k - 1) {
                add(2, values[g.index(i, j, k - 1)]);
            }
            if k + 1 < g.n[2] && g.inside(j, k + 1) {
                add(2, values[g.index(i, j, k + 1)]);
            }
            out[c] = acc;
        }
    }
    out
}

/// Exact magnetostatic energy of the cellwise-constant field.
pub fn magnetostatic_energy(f: &Field3D) -> Result<f64> {
    Magnetostatics::new(&f.grid, DEFAULT_MAX_CHARGES)?.energy(f.values())
}

/// Exchange, magnetostatic and total energy.
pub fn energy_report(f: &Field3D) -> Result<EnergyReport> {
    let mag = Magnetostatics::new(&f.grid, DEFAULT_MAX_CHARGES)?;
    mag.report(f)
}

/// Exchange energy alone, with the magnetostatic slot marked as skipped.
pub fn exchange_report(f: &Field3D) -> EnergyReport {
    let exchange = exchange_energy(f);
    EnergyReport {
        exchange,
        magnetostatic: 0.0,
        total: exchange,
        n: f.grid.n,
        h: f.grid.h,
        charges: 0,
        method: "none",
    }
}

/// Per-slice cross-section means `m̄(x_i)` (normalized by the masked area).
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedProfile {
    pub x0: f64,
    pub h: f64,
    pub values: Vec<Vec3>,
}

impl AveragedProfile {
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    /// Aligns with a reference profile of the same spacing.
    pub fn align(&self, reference: &WallProfile) -> Result<Alignment> {
        align_samples(self.x0, self.h, &self.values, reference)
    }

    /// `∫ (m̄2^2 + m̄3^2) dx` (midpoint rule).
    pub fn transverse_l2(&self) -> f64 {
        self.values.iter().map(|m| m[1] * m[1] + m[2] * m[2]).sum::<f64>() * self.h
    }

    /// `∫ m̄_c^2 dx` for component `c` (midpoint rule).
    pub fn component_l2(&self, c: usize) -> f64 {
        self.values.iter().map(|m| m[c] * m[c]).sum::<f64>() * self.h
    }
}

pub fn average_profile(f: &Field3D) -> AveragedProfile {
    let g = &f.grid;
    let count = g.slice_cells() as f64;
    let values = (0..g.n[0])
        .map(|i| {
            let mut s = [0.0; 3];
            for (j, k) in g.slice_iter() {
                let m = f.get(i, j, k);
                for q in 0..3 {
                    s[q] += m[q];
                }
            }
            [s[0] / count, s[1] / count, s[2] / count]
        })
        .collect();
    AveragedProfile {
        x0: g.x(0),
        h: g.h[0],
        values,
    }
}

/// The rescaled field `m_t(ξ) = m(ξ / t)` on the dilated wire `t d Ω`, with
/// the same cell counts and values. Exchange scales by `t` and
/// magnetostatics by `t^3`.
pub fn scale_field(f: &Field3D, t: f64) -> Result<Field3D> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("scale factor must be positive, got {t}")));
    }
    if t == 1.0 {
        return Ok(f.clone());
    }
    let d = &f.domain;
    let domain = WireDomain::new(
        d.cross_section.clone(),
        d.scale * t,
        (d.x_window.0 * t, d.x_window.1 * t),
        d.axial_cells,
        d.transverse_cells,
    )?;
    let grid = Grid3::from_domain(&domain);
    if grid.mask != f.grid.mask {
        return Err(Error::Domain("rescaled mask differs from the original".into()));
    }
    Ok(Field3D {
        domain,
        grid,
        values: f.values.clone(),
    })
}

/// A wire domain over `cs` scaled by `d` whose cells are as close to the
/// requested counts as the geometry allows.
pub fn wire(cs: &CrossSection, d: f64, window: (f64, f64), n: [usize; 3]) -> Result<WireDomain> {
    WireDomain::new(cs.clone(), d, window, n[0], (n[1], n[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demag::compute_demag_matrix;
    use crate::profile::{fixed_minimizer, ReducedEnergyParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rect_domain(n: [usize; 3], d: f64) -> WireDomain {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        wire(&cs, d, (-4.0, 4.0), n).unwrap()
    }

    fn random_field(domain: WireDomain, seed: u64) -> Field3D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Grid3::from_domain(&domain);
        let values: Vec<Vec3> = (0..g.len())
            .map(|_| {
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ]
            })
            .collect();
        Field3D::from_fn(domain, |xi| {
            let i = ((xi[0] - g.origin[0]) / g.h[0]) as usize;
            let j = ((xi[1] - g.origin[1]) / g.h[1]) as usize;
            let k = ((xi[2] - g.origin[2]) / g.h[2]) as usize;
            values[g.index(i, j, k)]
        })
        .unwrap()
    }

    #[test]
    fn constant_field_has_no_energy() {
        let f = Field3D::from_fn(rect_domain([8, 4, 2], 1.0), |_| [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(exchange_energy(&f), 0.0);
        assert_eq!(magnetostatic_energy(&f).unwrap(), 0.0);
        let avg = average_profile(&f);
        assert!(avg.values.iter().all(|m| *m == [1.0, 0.0, 0.0]));
    }

    #[test]
    fn exchange_gradient_matches_finite_differences() {
        let f = random_field(rect_domain([5, 4, 3], 1.0), 3);
        let g = exchange_gradient(&f);
        let mut values = f.values().to_vec();
        for c in 0..values.len() {
            for q in 0..3 {
                let eps = 1e-6;
                let orig = values[c][q];
                values[c][q] = orig + eps;
                let plus = exchange_energy(&f.with_values(values.clone()));
                values[c][q] = orig - eps;
                let minus = exchange_energy(&f.with_values(values.clone()));
                values[c][q] = orig;
                let fd = (plus - minus) / (2.0 * eps);
                assert!(
                    (fd - g[c][q]).abs() <= 1e-5 * g[c][q].abs().max(1.0),
                    "{fd} vs {}",
                    g[c][q]
                );
            }
        }
    }

    #[test]
    fn extended_minimizer_exchange() {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        let params = ReducedEnergyParams::new(cs.area(), 0.7, 1.3).unwrap();
        let a = params.alpha_omega();
        let window = (-25.0 / a.sqrt(), 25.0 / a.sqrt());
        let p = fixed_minimizer(&params, window, 8001).unwrap();
        let f = Field3D::from_profile(wire(&cs, 1.0, window, [400, 4, 2]).unwrap(), &p).unwrap();
        let expected = cs.area() * 2.0 * a.sqrt();
        let e = exchange_energy(&f);
        assert!((e - expected).abs() / expected < 0.02, "{e} vs {expected}");
        let avg = average_profile(&f);
        for (i, m) in avg.values.iter().enumerate() {
            let r = p.at(avg.x(i));
            assert!((m[0] - r[0]).abs() < 1e-12 && (m[1] - r[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_transverse_matches_demag_factor() {
        let cs = CrossSection::rectangle(1.0, 0.5).unwrap();
        let dm = compute_demag_matrix(&cs, 512).unwrap();
        let f = Field3D::from_fn(wire(&cs, 1.0, (-60.0, 60.0), [60, 8, 4]).unwrap(), |_| [0.0, 1.0, 0.0]).unwrap();
        let per_volume = magnetostatic_energy(&f).unwrap() / (120.0 * cs.area());
        let expected = dm.alpha2 / cs.area();
        assert!(
            (per_volume - expected).abs() / expected < 0.05,
            "{per_volume} vs {expected}"
        );
    }

    #[test]
    fn scaling_identities_are_exact() {
        let f = random_field(rect_domain([6, 4, 2], 0.5), 11);
        let (ex, mag) = (exchange_energy(&f), magnetostatic_energy(&f).unwrap());
        for t in [0.5, 2.0] {
            let s = scale_field(&f, t).unwrap();
            assert!((exchange_energy(&s) - t * ex).abs() < 1e-10 * ex);
            assert!((magnetostatic_energy(&s).unwrap() - t.powi(3) * mag).abs() < 1e-9 * mag);
        }
        assert_eq!(scale_field(&f, 1.0).unwrap(), f);
    }

    #[test]
    fn report_is_additive_and_nonnegative() {
        let f = random_field(rect_domain([6, 4, 2], 1.0), 5);
        let r = energy_report(&f).unwrap();
        assert!(r.exchange >= 0.0 && r.magnetostatic >= 0.0);
        assert_eq!(r.total, r.exchange + r.magnetostatic);
        assert_eq!(r.method, "direct-sum");
    }
}
