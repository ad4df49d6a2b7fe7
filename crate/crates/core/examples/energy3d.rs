//! Energies of the slice-constant wall on thinner and thinner wires, the
//! scaling identities, and the per-slice Poincaré inequality.
//!
//! cargo run --release --example energy3d

use nanowire::demag::compute_demag_matrix;
use nanowire::field3d::{
    energy_report, exchange_energy, magnetostatic_energy, poincare_check, poincare_constant, scale_field, wire, Field3D,
};
use nanowire::geometry::CrossSection;
use nanowire::profile::{fixed_minimizer, ReducedEnergyParams};

fn main() -> nanowire::Result<()> {
    let a = 1.0 / 5f64.sqrt();
    let cs = CrossSection::rectangle(a, 0.5 * a)?;
    let dm = compute_demag_matrix(&cs, 1024)?;
    let params = ReducedEnergyParams::from_demag(&dm, &cs)?;
    let half = 6.0 / params.alpha_omega().sqrt();
    let n = [64, 8, 4];
    println!("min E0 = {:.9}", params.minimal_energy());
    let hx = 2.0 * half / n[0] as f64;
    let wall = fixed_minimizer(&params, (-half + 0.5 * hx, half - 0.5 * hx), n[0])?.rotated(dm.wall_plane_angle());
    for d in [0.8, 0.4, 0.2, 0.1, 0.05] {
        let mut f = Field3D::from_profile(wire(&cs, d, (-half, half), n)?, &wall)?;
        f.clamp_ends();
        let r = energy_report(&f)?;
        println!(
            "d = {d:<5}: E_ex/d^2 = {:.6}, E_mag/d^2 = {:.6}, E/d^2 = {:.6}, {} charged faces",
            r.exchange / (d * d),
            r.magnetostatic / (d * d),
            r.total / (d * d),
            r.charges
        );
    }

    // a genuinely three-dimensional field
    let domain = wire(&cs, 1.0, (-3.0, 3.0), [24, 12, 6])?;
    let f = Field3D::from_fn(domain, |p| [p[0].tanh(), (3.0 * p[1]).cos(), (4.0 * p[2]).sin() + 0.2])?;
    let (ex, ms) = (exchange_energy(&f), magnetostatic_energy(&f)?);
    for t in [0.5, 2.0] {
        let s = scale_field(&f, t)?;
        println!(
            "t = {t}: E_ex(m_t) / (t E_ex) = {:.6}, E_mag(m_t) / (t^3 E_mag) = {:.6}",
            exchange_energy(&s) / (t * ex),
            magnetostatic_energy(&s)? / (t.powi(3) * ms)
        );
    }
    let c_p = poincare_constant(&f.grid, f.domain.diameter());
    let slices = poincare_check(&f, c_p);
    let worst = slices.iter().map(|s| s.lhs / s.rhs).fold(0.0, f64::max);
    println!(
        "Poincaré constant {c_p:.6}; worst slice ratio {worst:.4}; all slices hold: {}",
        slices.iter().all(|s| s.holds())
    );
    Ok(())
}
