//! One-dimensional wall profiles and the reduced energy
//!
//! ```text
//! E0(m) = |omega| ∫ |m'|^2 dx + ∫ (alpha2 m2^2 + alpha3 m3^2) dx
//! ```
//!
//! over unit fields with `m(-inf) = (-1, 0, 0)` and `m(+inf) = (1, 0, 0)`,
//! in the frame where the demag block is diagonal.

use crate::demag::DemagMatrix;
use crate::error::{Error, Result};
use crate::geometry::CrossSection;
use crate::{dot, normalize, Vec3};

pub const LEFT_TAIL: Vec3 = [-1.0, 0.0, 0.0];
pub const RIGHT_TAIL: Vec3 = [1.0, 0.0, 0.0];

/// Default tail tolerance for [`reduced_energy`].
pub const TAIL_TOLERANCE: f64 = 1e-6;

/// A sampled unit field on the uniform grid `x_i = x0 + i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallProfile {
    x0: f64,
    h: f64,
    values: Vec<Vec3>,
}

impl WallProfile {
    /// Wraps samples, checking `|m| = 1` within `1e-12`.
    pub fn new(x0: f64, h: f64, values: Vec<Vec3>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain(format!("grid spacing must be positive, got {h}")));
        }
        if values.len() < 3 {
            return Err(Error::Domain("a profile needs at least three samples".into()));
        }
        if let Some(i) = values.iter().position(|m| (dot(*m, *m).sqrt() - 1.0).abs() > 1e-12) {
            return Err(Error::Domain(format!(
                "sample {i} is not a unit vector: {:?}",
                values[i]
            )));
        }
        Ok(WallProfile { x0, h, values })
    }

    /// Samples `f` at `n` points spanning `[window.0, window.1]`.
    pub fn sample(window: (f64, f64), n: usize, f: impl Fn(f64) -> Vec3) -> Result<Self> {
        if n < 3 || !(window.0 < window.1) {
            return Err(Error::Domain(format!("bad grid: n = {n}, window {window:?}")));
        }
        let h = (window.1 - window.0) / (n - 1) as f64;
        let values = (0..n).map(|i| f(window.0 + i as f64 * h)).collect();
        Self::new(window.0, h, values)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn window(&self) -> (f64, f64) {
        (self.x0, self.x(self.len() - 1))
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    /// Largest deviation of the two end samples from their tails.
    pub fn tail_deviation(&self) -> (f64, f64) {
        let dist = |a: Vec3, b: Vec3| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        (
            dist(self.values[0], LEFT_TAIL),
            dist(self.values[self.len() - 1], RIGHT_TAIL),
        )
    }

    /// Profile with `(m2, m3)` rotated by `angle` about the wire axis.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let values = self
            .values
            .iter()
            .map(|m| [m[0], c * m[1] - s * m[2], s * m[1] + c * m[2]])
            .collect();
        WallProfile { values, ..*self }
    }

    /// Linear interpolation at `x`, with the tails outside the window.
    pub fn at(&self, x: f64) -> Vec3 {
        interpolate(self.x0, self.h, &self.values, x, LEFT_TAIL, RIGHT_TAIL)
    }
}

fn interpolate(x0: f64, h: f64, values: &[Vec3], x: f64, left: Vec3, right: Vec3) -> Vec3 {
    let s = (x - x0) / h;
    let n = values.len();
    if s < 0.0 {
        return left;
    }
    if s > (n - 1) as f64 {
        return right;
    }
    let i = (s.floor() as usize).min(n - 2);
    let f = s - i as f64;
    let (a, b) = (values[i], values[i + 1]);
    [
        a[0] + f * (b[0] - a[0]),
        a[1] + f * (b[1] - a[1]),
        a[2] + f * (b[2] - a[2]),
    ]
}

/// `|omega|`, `alpha2`, `alpha3` in the diagonal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedEnergyParams {
    pub area: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    /// `alpha2 == alpha3` within the demag error estimate.
    pub degenerate: bool,
}

impl ReducedEnergyParams {
    pub fn new(area: f64, alpha2: f64, alpha3: f64) -> Result<Self> {
        for (name, v) in [("area", area), ("alpha2", alpha2), ("alpha3", alpha3)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if alpha2 > alpha3 {
            return Err(Error::Domain(format!("need alpha2 <= alpha3, got {alpha2} > {alpha3}")));
        }
        Ok(ReducedEnergyParams {
            area,
            alpha2,
            alpha3,
            degenerate: alpha2 == alpha3,
        })
    }

    pub fn from_demag(dm: &DemagMatrix, cs: &CrossSection) -> Result<Self> {
        let mut p = Self::new(cs.area(), dm.alpha2, dm.alpha3)?;
        p.degenerate = dm.degenerate;
        Ok(p)
    }

    pub fn alpha_omega(&self) -> f64 {
        self.alpha2 / self.area
    }

    /// `4 sqrt(alpha2 |omega|)`.
    pub fn minimal_energy(&self) -> f64 {
        4.0 * (self.alpha2 * self.area).sqrt()
    }

    /// `[-40, 40] / sqrt(alpha_omega)`.
    pub fn default_window(&self) -> (f64, f64) {
        let half = 40.0 / self.alpha_omega().sqrt();
        (-half, half)
    }
}

/// Exchange and zero-order parts of the discrete reduced energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedEnergy {
    pub exchange: f64,
    pub anisotropy: f64,
}

impl ReducedEnergy {
    pub fn total(&self) -> f64 {
        self.exchange + self.anisotropy
    }
}

/// Discrete energy of raw samples (unit length not required).
///
/// Exchange: `|omega| sum |m_{i+1} - m_i|^2 / h`, the midpoint-rule Dirichlet
/// energy of the piecewise-linear interpolant. Zero-order term: trapezoid
/// rule. Nothing is added for the tails.
pub fn energy_of_samples(values: &[Vec3], h: f64, params: &ReducedEnergyParams) -> ReducedEnergy {
    let mut exchange = 0.0;
    for w in values.windows(2) {
        let d = [w[1][0] - w[0][0], w[1][1] - w[0][1], w[1][2] - w[0][2]];
        exchange += dot(d, d);
    }
    let n = values.len();
    let mut anisotropy = 0.0;
    for (i, m) in values.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        anisotropy += w * (params.alpha2 * m[1] * m[1] + params.alpha3 * m[2] * m[2]);
    }
    ReducedEnergy {
        exchange: params.area * exchange / h,
        anisotropy,
    }
}

/// Reduced energy of a profile, after checking that both end samples match
/// their tails within `tail_tolerance`.
pub fn reduced_energy_with(p: &WallProfile, params: &ReducedEnergyParams, tail_tolerance: f64) -> Result<f64> {
    let (left, right) = p.tail_deviation();
    for (side, deviation) in [("left", left), ("right", right)] {
        if deviation > tail_tolerance {
            return Err(Error::Truncation {
                side,
                deviation,
                tolerance: tail_tolerance,
            });
        }
    }
    Ok(energy_of_samples(&p.values, p.h, params).total())
}

/// [`reduced_energy_with`] at the default tail tolerance.
pub fn reduced_energy(p: &WallProfile, params: &ReducedEnergyParams) -> Result<f64> {
    reduced_energy_with(p, params, TAIL_TOLERANCE)
}

/// Euclidean gradient of [`energy_of_samples`] with respect to every sample.
pub fn energy_gradient(values: &[Vec3], h: f64, params: &ReducedEnergyParams) -> Vec<Vec3> {
    let n = values.len();
    let c = 2.0 * params.area / h;
    (0..n)
        .map(|i| {
            let m = values[i];
            let mut g = [0.0; 3];
            if i > 0 {
                for k in 0..3 {
                    g[k] += c * (m[k] - values[i - 1][k]);
                }
            }
            if i + 1 < n {
                for k in 0..3 {
                    g[k] += c * (m[k] - values[i + 1][k]);
                }
            }
            let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
            g[1] += 2.0 * w * params.alpha2 * m[1];
            g[2] += 2.0 * w * params.alpha3 * m[2];
            g
        })
        .collect()
}

/// `m^{alpha,beta}(x)` with wall plane angle `theta`, written as
/// `(tanh u, sech u cos theta, sech u sin theta)` with
/// `u = sqrt(alpha) x + ln(beta) / 2`.
pub fn transverse_profile(alpha: f64, beta: f64, theta: f64, x: f64) -> Vec3 {
    let u = alpha.sqrt() * x + 0.5 * beta.ln();
    let t = u.tanh();
    let s = 1.0 / u.cosh();
    let (st, ct) = theta.sin_cos();
    [t, s * ct, s * st]
}

/// Samples `m^omega = m^{alpha_omega, 1}` (wall in the `alpha2` plane).
pub fn fixed_minimizer(params: &ReducedEnergyParams, window: (f64, f64), n: usize) -> Result<WallProfile> {
    let a = params.alpha_omega();
    WallProfile::sample(window, n, |x| transverse_profile(a, 1.0, 0.0, x))
}

/// Initial profiles for [`minimize_reduced`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitKind {
    /// `m^omega` itself.
    ClosedForm,
    /// The ramp `(clamp(x), lambda cos t0, lambda sin t0)` with
    /// `lambda = max(0, 1 - x^2)`, `t0 = pi/4`, renormalized.
    Perturbed,
    /// `m^omega` rotated into the `alpha3` plane, tilted by `tilt` so that
    /// descent can leave the saddle.
    Rotated { tilt: f64 },
}

impl InitKind {
    pub const DEFAULT_TILT: f64 = 1e-3;

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "closed-form" => Ok(InitKind::ClosedForm),
            "perturbed" => Ok(InitKind::Perturbed),
            "rotated" => Ok(InitKind::Rotated {
                tilt: Self::DEFAULT_TILT,
            }),
            other => Err(Error::Config(format!(
                "unknown init `{other}` (expected closed-form, perturbed or rotated)"
            ))),
        }
    }
}

pub fn initial_profile(
    kind: InitKind,
    params: &ReducedEnergyParams,
    window: (f64, f64),
    n: usize,
) -> Result<WallProfile> {
    let a = params.alpha_omega();
    match kind {
        InitKind::ClosedForm => fixed_minimizer(params, window, n),
        InitKind::Perturbed => WallProfile::sample(window, n, |x| {
            let lambda = (1.0 - x * x).max(0.0);
            let t0 = std::f64::consts::FRAC_PI_4;
            normalize([x.clamp(-1.0, 1.0), lambda * t0.cos(), lambda * t0.sin()])
        }),
        InitKind::Rotated { tilt } => WallProfile::sample(window, n, |x| {
            transverse_profile(a, 1.0, std::f64::consts::FRAC_PI_2 - tilt, x)
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentOptions {
    /// Initial step; `None` picks `1 / L` from the exchange stiffness.
    pub step: Option<f64>,
    pub max_iterations: usize,
    /// Tolerance on the L2 norm of the projected gradient density.
    pub gradient_tolerance: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions {
            step: None,
            max_iterations: 200_000,
            gradient_tolerance: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentStatus {
    Converged,
    /// Iteration budget exhausted; the best iterate is returned.
    MaxIterations,
    /// The step collapsed below resolution before the tolerance was met.
    Stalled,
}

#[derive(Debug, Clone)]
pub struct DescentResult {
    pub profile: WallProfile,
    /// Energy after every accepted step, starting with the initial energy.
    pub history: Vec<f64>,
    pub status: DescentStatus,
    pub gradient_norm: f64,
    pub iterations: usize,
}

fn projected_gradient(values: &[Vec3], h: f64, params: &ReducedEnergyParams) -> (Vec<Vec3>, f64) {
    let n = values.len();
    let mut g = energy_gradient(values, h, params);
    let mut norm2 = 0.0;
    for (i, (gi, m)) in g.iter_mut().zip(values).enumerate() {
        if i == 0 || i == n - 1 {
            *gi = [0.0; 3];
            continue;
        }
        let r = dot(*gi, *m);
        for k in 0..3 {
            gi[k] -= r * m[k];
        }
        norm2 += dot(*gi, *gi) / h;
    }
    (g, norm2.sqrt())
}

/// Projected gradient descent on the sphere with endpoints clamped to the
/// tails. Steps that raise the energy are retried at half the step.
pub fn minimize_reduced(params: &ReducedEnergyParams, init: &WallProfile, opts: &DescentOptions) -> DescentResult {
    let h = init.h;
    let n = init.len();
    let mut values = init.values.clone();
    values[0] = LEFT_TAIL;
    values[n - 1] = RIGHT_TAIL;
    let lipschitz = 8.0 * params.area / h + 2.0 * params.alpha3 * h;
    let max_step = opts.step.unwrap_or(1.0 / lipschitz);
    let mut step = max_step;
    let mut energy = energy_of_samples(&values, h, params).total();
    let mut history = vec![energy];
    let (mut grad, mut gnorm) = projected_gradient(&values, h, params);
    let mut status = DescentStatus::MaxIterations;
    let mut iterations = 0;
    let mut trial = values.clone();
    while iterations < opts.max_iterations {
        if gnorm < opts.gradient_tolerance {
            status = DescentStatus::Converged;
            break;
        }
        iterations += 1;
        for i in 1..n - 1 {
            let m = values[i];
            let g = grad[i];
            trial[i] = normalize([m[0] - step * g[0], m[1] - step * g[1], m[2] - step * g[2]]);
        }
        trial[0] = values[0];
        trial[n - 1] = values[n - 1];
        let e = energy_of_samples(&trial, h, params).total();
        if e <= energy {
            std::mem::swap(&mut values, &mut trial);
            energy = e;
            history.push(e);
            (grad, gnorm) = projected_gradient(&values, h, params);
            step = (step * 1.25).min(max_step);
        } else {
            step *= 0.5;
            if step < max_step * 1e-12 {
                status = DescentStatus::Stalled;
                break;
            }
        }
    }
    DescentResult {
        profile: WallProfile { x0: init.x0, h, values },
        history,
        status,
        gradient_norm: gnorm,
        iterations,
    }
}

/// Translation and rotation bringing a profile onto a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alignment {
    /// Shift `tau` such that `p(x - tau)` is compared with the reference.
    pub translation: f64,
    /// `(m2, m3)` negated (180° rotation about the axis).
    pub rotated: bool,
    /// `sqrt(h sum |p_aligned - ref|^2)` on the reference grid.
    pub distance: f64,
}

/// First upward zero crossing of the first component, linearly interpolated.
pub fn zero_crossing(x0: f64, h: f64, values: &[Vec3]) -> Option<f64> {
    for i in 0..values.len() - 1 {
        let (a, b) = (values[i][0], values[i + 1][0]);
        if a == 0.0 && b > 0.0 {
            return Some(x0 + i as f64 * h);
        }
        if a < 0.0 && b >= 0.0 {
            return Some(x0 + (i as f64 + a / (a - b)) * h);
        }
    }
    None
}

/// Aligns raw samples on `(x0, h)` (for example a cross-section average, which
/// is not unit length) with a reference profile of the same spacing.
pub fn align_samples(x0: f64, h: f64, values: &[Vec3], reference: &WallProfile) -> Result<Alignment> {
    if ((h - reference.h) / reference.h).abs() > 1e-9 {
        return Err(Error::Alignment(format!(
            "grids are not commensurate: spacing {h} vs {}",
            reference.h
        )));
    }
    let xp =
        zero_crossing(x0, h, values).ok_or_else(|| Error::Alignment("profile has no zero crossing of m1".into()))?;
    let xr = zero_crossing(reference.x0, reference.h, &reference.values)
        .ok_or_else(|| Error::Alignment("reference has no zero crossing of m1".into()))?;
    let translation = xr - xp;
    let at_cross = interpolate(x0, h, values, xp, LEFT_TAIL, RIGHT_TAIL);
    let rotated = at_cross[1] < 0.0;
    let sign = if rotated { -1.0 } else { 1.0 };
    let mut sum = 0.0;
    for (i, r) in reference.values.iter().enumerate() {
        let q = interpolate(x0, h, values, reference.x(i) - translation, LEFT_TAIL, RIGHT_TAIL);
        let d = [q[0] - r[0], sign * q[1] - r[1], sign * q[2] - r[2]];
        sum += dot(d, d);
    }
    Ok(Alignment {
        translation,
        rotated,
        distance: (h * sum).sqrt(),
    })
}

pub fn align_profile(p: &WallProfile, reference: &WallProfile) -> Result<Alignment> {
    align_samples(p.x0, p.h, &p.values, reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_params() -> ReducedEnergyParams {
        ReducedEnergyParams::new(1.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn closed_form_reference_values() {
        assert_eq!(transverse_profile(1.0, 1.0, 0.0, 0.0), [0.0, 1.0, 0.0]);
        let m = transverse_profile(4.0, 1.0, 0.0, 0.25);
        assert_relative_eq!(m[0], 0.5f64.tanh(), max_relative = 1e-15);
        assert_relative_eq!(m[1], 1.0 / 0.5f64.cosh(), max_relative = 1e-15);
        assert!((m[0] - 0.46212).abs() < 1e-5 && (m[1] - 0.88681).abs() < 1e-5);
        let far = transverse_profile(1.0, 1.0, 0.3, 800.0);
        assert_eq!(far[0], 1.0);
        assert_eq!(far[1], 0.0);
        let far = transverse_profile(1.0, 1.0, 0.3, -800.0);
        assert_eq!(far[0], -1.0);
    }

    #[test]
    fn closed_form_matches_exponential_form() {
        let (alpha, beta, theta) = (2.5f64, 0.7f64, 0.4f64);
        for &x in &[-3.0, -0.2, 0.0, 0.9, 4.0] {
            let e = (2.0 * alpha.sqrt() * x).exp() * beta;
            let s = 2.0 * beta.sqrt() * (alpha.sqrt() * x).exp() / (e + 1.0);
            let direct = [(e - 1.0) / (e + 1.0), s * theta.cos(), s * theta.sin()];
            let m = transverse_profile(alpha, beta, theta, x);
            for k in 0..3 {
                assert!((m[k] - direct[k]).abs() < 1e-14);
            }
            assert!((dot(m, m).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ramp_smoke_test_integrates_to_two() {
        let params = ReducedEnergyParams::new(1.0, 1.0, 1.0).unwrap();
        let n = 201;
        let h = 2.0 / (n - 1) as f64;
        let values: Vec<Vec3> = (0..n).map(|i| [-1.0 + i as f64 * h, 0.0, 0.0]).collect();
        assert_relative_eq!(
            energy_of_samples(&values, h, &params).total(),
            2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn no_wall_has_zero_energy_but_fails_tail_check() {
        let p = WallProfile::sample((-5.0, 5.0), 101, |_| [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(energy_of_samples(p.values(), p.h(), &unit_params()).total(), 0.0);
        assert!(matches!(
            reduced_energy(&p, &unit_params()),
            Err(Error::Truncation { side: "left", .. })
        ));
    }

    #[test]
    fn minimizer_energy_for_unit_parameters() {
        let params = ReducedEnergyParams::new(1.0, 1.0, 2.0).unwrap();
        let p = fixed_minimizer(&params, params.default_window(), 4096).unwrap();
        let e = reduced_energy(&p, &params).unwrap();
        assert!((e - 4.0).abs() < 1e-3, "{e}");
        assert!(p.values().iter().all(|m| m[2] == 0.0));
        let centered = fixed_minimizer(&params, (-10.0, 10.0), 2001).unwrap();
        assert_eq!(centered.values()[1000], [0.0, 1.0, 0.0]);
    }

    #[test]
    fn minimizer_energy_for_other_parameters() {
        let params = ReducedEnergyParams::new(3.0, 2.0, 5.0).unwrap();
        let p = fixed_minimizer(&params, params.default_window(), 4096).unwrap();
        let e = reduced_energy(&p, &params).unwrap();
        assert!((e - 4.0 * 6f64.sqrt()).abs() / e < 1e-3, "{e}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let params = ReducedEnergyParams::new(1.3, 0.7, 1.9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 64;
        let h = 0.1;
        let values: Vec<Vec3> = (0..n)
            .map(|_| {
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ]
            })
            .collect();
        let g = energy_gradient(&values, h, &params);
        for i in 0..n {
            for k in 0..3 {
                let eps = 1e-6;
                let mut plus = values.clone();
                let mut minus = values.clone();
                plus[i][k] += eps;
                minus[i][k] -= eps;
                let fd = (energy_of_samples(&plus, h, &params).total() - energy_of_samples(&minus, h, &params).total())
                    / (2.0 * eps);
                assert!(
                    (fd - g[i][k]).abs() <= 1e-6 * g[i][k].abs().max(1.0),
                    "{i},{k}: {fd} vs {}",
                    g[i][k]
                );
            }
        }
    }

    #[test]
    fn closed_form_init_is_stationary() {
        let params = unit_params();
        let init = initial_profile(InitKind::ClosedForm, &params, params.default_window(), 4096).unwrap();
        let e0 = reduced_energy(&init, &params).unwrap();
        let r = minimize_reduced(&params, &init, &DescentOptions::default());
        assert!((r.history.last().unwrap() - e0).abs() < 1e-6);
    }

    #[test]
    fn history_is_monotone() {
        let params = unit_params();
        let init = initial_profile(InitKind::Perturbed, &params, (-20.0, 20.0), 401).unwrap();
        let opts = DescentOptions {
            max_iterations: 2000,
            ..Default::default()
        };
        let r = minimize_reduced(&params, &init, &opts);
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        for m in r.profile.values() {
            assert!((dot(*m, *m).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn alignment_recovers_grid_shift_and_rotation() {
        let params = unit_params();
        let reference = fixed_minimizer(&params, (-40.0, 40.0), 801).unwrap();
        let h = reference.h();
        let shifted =
            WallProfile::sample((-40.0, 40.0), 801, |x| transverse_profile(1.0, 1.0, 0.0, x - 3.0 * h)).unwrap();
        let a = align_profile(&shifted, &reference).unwrap();
        assert!((a.translation + 3.0 * h).abs() < 1e-12);
        assert!(!a.rotated);
        assert!(a.distance < 1e-10, "{}", a.distance);
        let flipped = reference.rotated(std::f64::consts::PI);
        let a = align_profile(&flipped, &reference).unwrap();
        assert!(a.rotated);
        assert!(a.distance < 1e-10);
    }

    #[test]
    fn alignment_needs_a_crossing() {
        let p = WallProfile::sample((-1.0, 1.0), 11, |_| [1.0, 0.0, 0.0]).unwrap();
        let r = fixed_minimizer(&unit_params(), (-1.0, 1.0), 11).unwrap();
        assert!(matches!(align_profile(&p, &r), Err(Error::Alignment(_))));
    }
}
