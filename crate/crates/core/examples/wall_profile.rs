//! The closed-form wall `m^omega`: its reduced energy against
//! `4 sqrt(alpha2 |omega|)`, grid convergence, and the cost of turning the
//! wall plane towards the `alpha3` eigenvector.
//!
//! cargo run --release --example wall_profile

use std::f64::consts::PI;

use nanowire::profile::{fixed_minimizer, reduced_energy, transverse_profile, ReducedEnergyParams, WallProfile};

fn main() -> nanowire::Result<()> {
    for (alpha2, area) in [(1.0, 1.0), (2.0, 3.0), (0.5, PI)] {
        let params = ReducedEnergyParams::new(area, alpha2, 2.0 * alpha2)?;
        let window = params.default_window();
        println!(
            "alpha2 = {alpha2}, |omega| = {area:.6}: 4 sqrt(alpha2 |omega|) = {:.10}",
            params.minimal_energy()
        );
        for n in [1024, 2048, 4096, 8192] {
            let p = fixed_minimizer(&params, window, n)?;
            let e = reduced_energy(&p, &params)?;
            println!(
                "  n = {n:>5}: E = {e:.10}, relative error {:.3e}",
                (e - params.minimal_energy()).abs() / params.minimal_energy()
            );
        }
    }

    let params = ReducedEnergyParams::new(1.0, 1.0, 2.0)?;
    let window = params.default_window();
    let p = fixed_minimizer(&params, window, 4096)?;
    println!("wall plane rotation with alpha2 = 1, alpha3 = 2:");
    for k in 0..=4 {
        let theta = k as f64 * PI / 8.0;
        println!(
            "  theta = {theta:.4}: E = {:.10}",
            reduced_energy(&p.rotated(theta), &params)?
        );
    }

    // the general transverse profile with beta != 1 is also a unit field
    let q = WallProfile::sample(window, 4096, |x| transverse_profile(1.0, 0.25, 0.3, x))?;
    let worst = q
        .values()
        .iter()
        .map(|m| ((m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt() - 1.0).abs())
        .fold(0.0, f64::max);
    println!(
        "beta = 0.25 profile: max | |m| - 1 | = {worst:.2e}, tails {:?}",
        q.tail_deviation()
    );
    Ok(())
}
