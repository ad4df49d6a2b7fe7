//! Projected descent of the reduced energy from the three initializations,
//! followed by alignment with the closed-form minimizer.
//!
//! cargo run --release --example descent_1d

use std::time::Instant;

use nanowire::profile::{
    align_profile, fixed_minimizer, initial_profile, minimize_reduced, DescentOptions, InitKind, ReducedEnergyParams,
};

fn main() -> nanowire::Result<()> {
    let params = ReducedEnergyParams::new(1.0, 1.0, 2.0)?;
    let window = params.default_window();
    let n = 2048;
    let reference = fixed_minimizer(&params, window, n)?;
    println!("target energy 4 sqrt(alpha2 |omega|) = {}", params.minimal_energy());
    for kind in [
        InitKind::ClosedForm,
        InitKind::Perturbed,
        InitKind::Rotated {
            tilt: InitKind::DEFAULT_TILT,
        },
    ] {
        let start = Instant::now();
        let init = initial_profile(kind, &params, window, n)?;
        let r = minimize_reduced(&params, &init, &DescentOptions::default());
        let a = align_profile(&r.profile, &reference)?;
        let max_m3 = r.profile.values().iter().map(|m| m[2].abs()).fold(0.0, f64::max);
        println!(
            "{kind:?}: {:?} after {} iterations ({:.2?}), energy {:.10} -> {:.10}, |grad| {:.2e}",
            r.status,
            r.iterations,
            start.elapsed(),
            r.history[0],
            r.history.last().unwrap(),
            r.gradient_norm
        );
        println!(
            "  aligned: shift {:+.6}, rotated {}, L2 distance {:.3e}, max |m3| {:.2e}",
            a.translation, a.rotated, a.distance, max_m3
        );
    }
    Ok(())
}
