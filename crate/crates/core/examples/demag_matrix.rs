//! Demag block, eigenvalues and Richardson ladder for a few cross sections.
//!
//! cargo run --example demag_matrix

use nanowire::demag::compute_demag_matrix;
use nanowire::geometry::CrossSection;

fn main() -> nanowire::Result<()> {
    let sections = [
        ("disc r=1", CrossSection::disc(1.0)?),
        ("square 1x1", CrossSection::rectangle(1.0, 1.0)?),
        ("ellipse 2:1", CrossSection::ellipse(2.0, 1.0)?),
        ("rectangle 2:1", CrossSection::rectangle(1.0, 0.5)?),
        (
            "rotated rectangle 2:1",
            CrossSection::rectangle(1.0, 0.5)?.rotated(0.6)?,
        ),
    ];
    for (name, cs) in &sections {
        println!("{name}: area {:.6}, diameter {:.6}", cs.area(), cs.diameter());
        println!(
            "  {:>5} {:>22} {:>22} {:>10} {:>10}",
            "n", "alpha2", "alpha3", "angle", "error"
        );
        for n in [64, 128, 256, 512, 1024] {
            let dm = compute_demag_matrix(cs, n)?;
            println!(
                "  {:>5} {:>22.16} {:>22.16} {:>10.6} {:>10.3e}{}",
                n,
                dm.alpha2,
                dm.alpha3,
                dm.rotation_angle,
                dm.estimated_error,
                if dm.degenerate { "  (degenerate)" } else { "" }
            );
        }
        let dm = compute_demag_matrix(cs, 1024)?;
        println!("  alpha_omega = {:.10}", dm.alpha_omega(cs));
    }
    Ok(())
}
