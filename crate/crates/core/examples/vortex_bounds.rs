//! Builds the vortex wall on square wires of growing half-width and compares
//! every measured energy with its bound.
//!
//! cargo run --release --example vortex_bounds

use std::time::Instant;

use nanowire::vortex::{loglog_slope, verify_bounds, VortexGridOptions, VortexParams};

fn main() -> nanowire::Result<()> {
    let opts = VortexGridOptions::default();
    let mut ds = Vec::new();
    let mut energies = Vec::new();
    for d in [4.0, 8.0, 16.0] {
        let start = Instant::now();
        let v = VortexParams::new(d)?;
        let r = verify_bounds(&v, &opts)?;
        println!(
            "d = {d}, L = {:.3}: {} charges, {:.1?}",
            v.l,
            r.charges,
            start.elapsed()
        );
        println!(
            "  E_ex(m) {:.1} (closed form {:.1}), E_ex formal {:.1} (closed form {:.1}), |m - m~|^2 {:.2} (closed form {:.2})",
            r.exchange, r.exchange_exact, r.formal_exchange, r.formal_exchange_exact, r.difference_norm_sq, r.difference_norm_sq_exact
        );
        for c in &r.checks {
            println!(
                "  {:<20} {:>12.3} <= {:>12.3}  {}",
                c.name,
                c.measured,
                c.bound,
                if c.passed() { "ok" } else { "VIOLATED" }
            );
        }
        ds.push(d);
        energies.push(r.energy);
    }
    println!("log-log slope of E(m): {:.3}", loglog_slope(&ds, &energies)?);
    Ok(())
}
