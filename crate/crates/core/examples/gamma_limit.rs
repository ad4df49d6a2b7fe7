//! Minimizes the full energy on thinner and thinner 2:1 rectangular wires and
//! compares `E / d^2` and the averaged profile with the reduced minimizer.
//!
//! cargo run --release --example gamma_limit

use std::time::Instant;

use nanowire::demag::compute_demag_matrix;
use nanowire::field3d::{average_profile, minimize_3d, wire, Descent3dOptions, Field3D};
use nanowire::geometry::CrossSection;
use nanowire::profile::{align_profile, fixed_minimizer, minimize_reduced, DescentOptions, ReducedEnergyParams};

fn main() -> nanowire::Result<()> {
    // 2:1 rectangle of diameter one
    let a = 1.0 / 5f64.sqrt();
    let cs = CrossSection::rectangle(a, 0.5 * a)?;
    let dm = compute_demag_matrix(&cs, 1024)?;
    let params = ReducedEnergyParams::from_demag(&dm, &cs)?;
    let half = 6.0 / params.alpha_omega().sqrt();
    let n = [64, 8, 4];
    println!(
        "alpha2 {:.6}, alpha3 {:.6}, |omega| {:.3}, min E0 {:.6}",
        dm.alpha2,
        dm.alpha3,
        cs.area(),
        params.minimal_energy()
    );
    let angle = dm.wall_plane_angle();
    // the same axial grid in one dimension: the floor the 3D distances approach
    let hx = 2.0 * half / n[0] as f64;
    let coarse = fixed_minimizer(&params, (-half + 0.5 * hx, half - 0.5 * hx), n[0])?;
    let mut clamped = coarse.values().to_vec();
    clamped[0] = nanowire::profile::LEFT_TAIL;
    clamped[n[0] - 1] = nanowire::profile::RIGHT_TAIL;
    let clamped = nanowire::profile::WallProfile::new(coarse.x0(), hx, clamped)?;
    let r1 = minimize_reduced(&params, &clamped, &DescentOptions::default());
    println!(
        "discrete 1D minimizer on the axial grid: energy {:.6}, distance {:.3e}",
        r1.history.last().unwrap(),
        align_profile(&r1.profile, &coarse)?.distance
    );
    for d in [0.4, 0.2, 0.1] {
        let start = Instant::now();
        let domain = wire(&cs, d, (-half, half), n)?;
        let hx = domain.hx();
        let reference = fixed_minimizer(&params, (-half + 0.5 * hx, half - 0.5 * hx), n[0])?.rotated(angle);
        let init = Field3D::from_profile(domain, &reference)?;
        let r = minimize_3d(
            &init,
            &Descent3dOptions {
                tolerance: 1e-15,
                max_iterations: 3000,
                ..Default::default()
            },
        )?;
        let last = r.history.last().unwrap();
        let avg = average_profile(&r.field);
        let al = avg.align(&reference)?;
        println!(
            "d = {d}: {:?} after {} steps ({:.1?}), E/d^2 {:.6} (exchange {:.6}, magnetostatic {:.6}), start {:.6}, distance {:.3e}",
            r.status,
            r.iterations,
            start.elapsed(),
            last.total / (d * d),
            last.exchange / (d * d),
            last.magnetostatic / (d * d),
            r.history[0].total / (d * d),
            al.distance
        );
    }
    Ok(())
}
