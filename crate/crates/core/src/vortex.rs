//! The thick-wire vortex wall on the square wire `R x [-d, d]^2`.
//!
//! Inside `Omega_L = [-L, L] x [-d, d]^2` two cones with apex at the origin
//! and bases on the end faces carry the uniform states `(±1, 0, 0)`. Their
//! complement is split by the diagonals of the cross section into four
//! sectors on which the singular field `m̃` rotates from `-e1` to `e1` while
//! its transverse part circulates around the axis (clockwise in the
//! `(y, z)` plane). The regularized field `m` blends `m̃` continuously across
//! each diagonal inside a thin wedge, leaving a single singular point at the
//! origin.
//!
//! All four sectors are images of the up sector `z >= |y|` under the quarter
//! turn `R: (y, z) -> (z, -y)`, which acts on vectors the same way; fields
//! are evaluated in the up frame and rotated back.
//!
//! Both fields depend on `x / z` and `y / z` only, which gives closed forms
//! for the exchange energies and for `||m - m̃||^2`; the finite-difference
//! measurements are checked against them.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field3d::{wire, Field3D, Magnetostatics};
use crate::geometry::CrossSection;
use crate::Vec3;

/// Half-width `d` of the square cross section and half-length `L` of the
/// wall region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexParams {
    pub d: f64,
    pub l: f64,
}

impl VortexParams {
    /// `L = d^{3/2} sqrt(ln d)`.
    pub fn new(d: f64) -> Result<Self> {
        Self::with_length(d, Self::default_length(d))
    }

    pub fn with_length(d: f64, l: f64) -> Result<Self> {
        if !(d > 1.0) || !d.is_finite() {
            return Err(Error::geometry(
                "d",
                format!("the wedge construction needs d > 1, got {d}"),
            ));
        }
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::geometry("L", format!("must be positive, got {l}")));
        }
        Ok(VortexParams { d, l })
    }

    pub fn default_length(d: f64) -> f64 {
        d.powf(1.5) * d.ln().max(0.0).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Up,
    Right,
    Bottom,
    Left,
    /// Inside one of the two cones, where the field is `(sign x, 0, 0)`.
    ConeExterior,
}

impl Sector {
    /// Number of quarter turns taking the up sector onto this one.
    fn turns(self) -> usize {
        match self {
            Sector::Up | Sector::ConeExterior => 0,
            Sector::Right => 1,
            Sector::Bottom => 2,
            Sector::Left => 3,
        }
    }
}

/// Classifies a point of `Omega_L`. The up and bottom sectors own the
/// diagonals `|y| = |z|`; cone surfaces belong to the cones.
pub fn region_of(p: Vec3, v: &VortexParams) -> Sector {
    let [x, y, z] = p;
    let r = y.abs().max(z.abs());
    if r * v.l <= v.d * x.abs() {
        Sector::ConeExterior
    } else if z > 0.0 && z >= y.abs() {
        Sector::Up
    } else if z < 0.0 && -z >= y.abs() {
        Sector::Bottom
    } else if y > 0.0 {
        Sector::Right
    } else {
        Sector::Left
    }
}

/// `R^k` on the `(y, z)` components.
fn turn(mut p: Vec3, k: usize) -> Vec3 {
    for _ in 0..k % 4 {
        p = [p[0], p[2], -p[1]];
    }
    p
}

/// `R^{-k}` on the `(y, z)` components.
fn unturn(p: Vec3, k: usize) -> Vec3 {
    turn(p, 4 - k % 4)
}

fn angle(x: f64, z: f64, v: &VortexParams) -> f64 {
    PI * v.d * x / (2.0 * v.l * z)
}

/// Up-sector branch of `m̃`: `(sin θ, cos θ, 0)`, `θ = pi d x / (2 L z)`.
fn up_tilde(q: Vec3, v: &VortexParams) -> Vec3 {
    let (s, c) = angle(q[0], q[2], v).sin_cos();
    [s, c, 0.0]
}

/// The blend used in the wedge `(d-1)/d z <= y <= z` of the up sector:
/// `(sin θ, cos θ sin φ, -cos θ cos φ)` with `φ = pi d (z - y) / (2 z)`.
///
/// This is the formula itself, evaluated anywhere with `z != 0`; it agrees
/// with [`regularized_m`] only inside the wedge.
pub fn wedge_formula(p: Vec3, v: &VortexParams) -> Vec3 {
    let [x, y, z] = p;
    let (st, ct) = angle(x, z, v).sin_cos();
    let (sp, cp) = (PI * v.d * (z - y) / (2.0 * z)).sin_cos();
    [st, ct * sp, -ct * cp]
}

fn in_wedge(q: Vec3, v: &VortexParams) -> bool {
    q[1] > 0.0 && q[1] * v.d >= q[2] * (v.d - 1.0)
}

fn is_origin(p: Vec3) -> bool {
    p == [0.0; 3]
}

fn evaluate(p: Vec3, v: &VortexParams, regularized: bool) -> Result<Vec3> {
    if is_origin(p) {
        return Err(Error::Singularity(p));
    }
    let sector = region_of(p, v);
    if sector == Sector::ConeExterior {
        return Ok([p[0].signum(), 0.0, 0.0]);
    }
    let k = sector.turns();
    let q = unturn(p, k);
    let w = if regularized && in_wedge(q, v) {
        wedge_formula(q, v)
    } else {
        up_tilde(q, v)
    };
    Ok(turn(w, k))
}

/// The singular field `m̃`.
pub fn tilde_m(p: Vec3, v: &VortexParams) -> Result<Vec3> {
    evaluate(p, v, false)
}

/// The regularized field `m`, continuous away from the origin.
pub fn regularized_m(p: Vec3, v: &VortexParams) -> Result<Vec3> {
    evaluate(p, v, true)
}

/// `E_ex(m̃)` counted inside the sectors only: `4 pi^2 (d^2/L + L/3)`.
pub fn formal_exchange_exact(v: &VortexParams) -> f64 {
    4.0 * PI * PI * (v.d * v.d / v.l + v.l / 3.0)
}

/// `E_ex(m) = E_ex^formal(m̃) + pi^2 L (2d - 1 + 1/(3d))`.
pub fn regularized_exchange_exact(v: &VortexParams) -> f64 {
    formal_exchange_exact(v) + PI * PI * v.l * (2.0 * v.d - 1.0 + 1.0 / (3.0 * v.d))
}

/// `||m - m̃||^2 = (8/3) (1 - 2/pi) L d`.
pub fn difference_norm_sq_exact(v: &VortexParams) -> f64 {
    8.0 / 3.0 * (1.0 - 2.0 / PI) * v.l * v.d
}

/// The published bounds of the construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexBounds {
    /// `20 d^4 (1 + ln(L/d)) / L`.
    pub mag_tilde: f64,
    /// `4 pi^2 (d^2/L + L)`.
    pub formal_exchange: f64,
    /// `16 d L + 16 sqrt(5) d^2 sqrt(d ln L)`.
    pub difference: f64,
    /// `2 pi^2 d L + pi^2 L / d`.
    pub exchange_difference: f64,
    /// `150 d^{5/2} sqrt(ln d)`.
    pub total: f64,
}

impl VortexBounds {
    pub fn new(v: &VortexParams) -> Self {
        let (d, l) = (v.d, v.l);
        VortexBounds {
            mag_tilde: 20.0 * d.powi(4) * (1.0 + (l / d).ln()) / l,
            formal_exchange: 4.0 * PI * PI * (d * d / l + l),
            difference: 16.0 * d * l + 16.0 * 5f64.sqrt() * d * d * (d * l.ln().max(0.0)).sqrt(),
            exchange_difference: 2.0 * PI * PI * d * l + PI * PI * l / d,
            total: 150.0 * d.powf(2.5) * d.ln().max(0.0).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexGridOptions {
    /// Axial cells of the magnetostatic grid over `[-L, L]`.
    pub axial_cells: usize,
    /// Cells across each side of the cross section, magnetostatic grid.
    pub transverse_cells: usize,
    /// Cells across each side of the cross section for the exchange and
    /// `L2` sums; the axial spacing matches.
    pub exchange_cells: usize,
    pub max_charges: usize,
}

impl Default for VortexGridOptions {
    fn default() -> Self {
        VortexGridOptions {
            axial_cells: 80,
            transverse_cells: 16,
            exchange_cells: 256,
            max_charges: 100_000,
        }
    }
}

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexCheck {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
}

impl VortexCheck {
    pub fn passed(&self) -> bool {
        self.measured <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VortexReport {
    pub params: VortexParams,
    pub bounds: VortexBounds,
    /// `E_ex(m)` by finite differences on the refined lattice.
    pub exchange: f64,
    pub exchange_exact: f64,
    /// `E_ex(m̃)` by finite differences over edges inside one sector.
    pub formal_exchange: f64,
    pub formal_exchange_exact: f64,
    /// Volume of the ball around the origin left out of the exchange sums.
    pub excluded_volume: f64,
    pub mag_tilde: f64,
    pub mag_m: f64,
    pub difference_norm_sq: f64,
    pub difference_norm_sq_exact: f64,
    /// `E(m) = E_ex(m) + E_mag(m)`.
    pub energy: f64,
    pub charges: usize,
    pub checks: Vec<VortexCheck>,
}

impl VortexReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(VortexCheck::passed)
    }
}

/// Finite-difference sums on the refined nodal lattice.
struct LatticeSums {
    exchange: f64,
    formal: f64,
    difference: f64,
    excluded_volume: f64,
}

fn lattice_sums(v: &VortexParams, cells: usize) -> LatticeSums {
    let n = cells.max(2);
    let h = 2.0 * v.d / n as f64;
    let nx = ((2.0 * v.l / h).ceil() as usize).max(2);
    let hx = 2.0 * v.l / nx as f64;
    let radius = 2.0 * h.max(hx);
    let coord = |i: usize, cnt: usize, step: f64, half: f64| {
        if 2 * i == cnt {
            0.0
        } else {
            -half + i as f64 * step
        }
    };
    let end_weight = |i: usize, cnt: usize| if i == 0 || i == cnt { 0.5 } else { 1.0 };
    let slab = |i: usize| -> Vec<(Vec3, Option<Vec3>, Vec3, Sector)> {
        let x = coord(i, nx, hx, v.l);
        (0..(n + 1) * (n + 1))
            .into_par_iter()
            .map(|c| {
                let p = [x, coord(c / (n + 1), n, h, v.d), coord(c % (n + 1), n, h, v.d)];
                let m = regularized_m(p, v).ok();
                let t = tilde_m(p, v).unwrap_or([0.0; 3]);
                (p, m, t, region_of(p, v))
            })
            .collect()
    };
    let diff2 = |a: Vec3, b: Vec3| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2);
    let far = |p: Vec3| p[0] * p[0] + p[1] * p[1] + p[2] * p[2] > radius * radius;
    let compatible = |a: Sector, b: Sector| a == b || a == Sector::ConeExterior || b == Sector::ConeExterior;
    let volume = hx * h * h;
    let (mut exchange, mut formal, mut difference) = (0.0, 0.0, 0.0);
    let mut current = slab(0);
    for i in 0..=nx {
        let next = (i < nx).then(|| slab(i + 1));
        let wx = end_weight(i, nx);
        let mut ex = 0.0;
        let mut fo = 0.0;
        let mut di = 0.0;
        for j in 0..=n {
            for k in 0..=n {
                let c = j * (n + 1) + k;
                let (p, m, t, s) = current[c];
                let (wy, wz) = (end_weight(j, n), end_weight(k, n));
                if let Some(m) = m {
                    di += wx * wy * wz * diff2(m, t);
                }
                let mut edge = |other: &(Vec3, Option<Vec3>, Vec3, Sector), step: f64, weight: f64| {
                    if !(far(p) && far(other.0)) {
                        return;
                    }
                    let scale = weight / (step * step);
                    if let (Some(a), Some(b)) = (m, other.1) {
                        ex += scale * diff2(a, b);
                    }
                    if compatible(s, other.3) {
                        fo += scale * diff2(t, other.2);
                    }
                };
                if let Some(next) = &next {
                    edge(&next[c], hx, wy * wz);
                }
                if j < n {
                    edge(&current[c + n + 1], h, wx * wz);
                }
                if k < n {
                    edge(&current[c + 1], h, wx * wy);
                }
            }
        }
        exchange += ex * volume;
        formal += fo * volume;
        difference += di * volume;
        if let Some(next) = next {
            current = next;
        }
    }
    LatticeSums {
        exchange,
        formal,
        difference,
        excluded_volume: 4.0 / 3.0 * PI * radius.powi(3),
    }
}

/// Coarse cell-centre samples of `m̃` and `m` on `Omega_L`.
pub fn vortex_fields(v: &VortexParams, opts: &VortexGridOptions) -> Result<(Field3D, Field3D)> {
    let cs = CrossSection::rectangle(1.0, 1.0)?;
    let n = opts.transverse_cells;
    let domain = wire(&cs, v.d, (-v.l, v.l), [opts.axial_cells, n, n])?;
    let tilde = Field3D::from_fn(domain.clone(), |p| tilde_m(p, v).unwrap_or([0.0; 3]))?;
    let m = Field3D::from_fn(domain, |p| regularized_m(p, v).unwrap_or([0.0; 3]))?;
    Ok((tilde, m))
}

/// Measures every quantity of the construction and compares it with its
/// bound.
pub fn verify_bounds(v: &VortexParams, opts: &VortexGridOptions) -> Result<VortexReport> {
    let (tilde, m) = vortex_fields(v, opts)?;
    let mag = Magnetostatics::new(&tilde.grid, opts.max_charges)?;
    let mag_tilde = mag.energy(tilde.values())?.max(0.0);
    let mag_m = mag.energy(m.values())?.max(0.0);
    let charges = mag.charges(m.values()).iter().filter(|&&s| s != 0.0).count();
    let sums = lattice_sums(v, opts.exchange_cells);
    let bounds = VortexBounds::new(v);
    let energy = sums.exchange + mag_m;
    let checks = vec![
        VortexCheck {
            name: "mag_tilde",
            measured: mag_tilde,
            bound: bounds.mag_tilde,
        },
        VortexCheck {
            name: "formal_exchange",
            measured: sums.formal,
            bound: bounds.formal_exchange,
        },
        VortexCheck {
            name: "difference_norm",
            measured: sums.difference,
            bound: bounds.difference,
        },
        VortexCheck {
            name: "mag_difference",
            measured: (mag_m - mag_tilde).abs(),
            bound: bounds.difference,
        },
        VortexCheck {
            name: "exchange_difference",
            measured: (sums.exchange - sums.formal).abs(),
            bound: bounds.exchange_difference,
        },
        VortexCheck {
            name: "total",
            measured: energy,
            bound: bounds.total,
        },
    ];
    Ok(VortexReport {
        params: *v,
        bounds,
        exchange: sums.exchange,
        exchange_exact: regularized_exchange_exact(v),
        formal_exchange: sums.formal,
        formal_exchange_exact: formal_exchange_exact(v),
        excluded_volume: sums.excluded_volume,
        mag_tilde,
        mag_m,
        difference_norm_sq: sums.difference,
        difference_norm_sq_exact: difference_norm_sq_exact(v),
        energy,
        charges,
        checks,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Domain("need at least two (x, y) pairs of equal length".into()));
    }
    if x.iter().chain(y).any(|&v| !(v > 0.0)) {
        return Err(Error::Domain("log-log fit needs positive data".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("log-log fit needs distinct x values".into()));
    }
    Ok(sxy / sxx)
}
