//! Runs the inequality suite for a few seeds and prints the tightest check
//! of every family.
//!
//! cargo run --release --example lemma_suite

use nanowire::lemmas::{green_rectangle_integral, run_all, LemmaSet, SuiteConfig};

fn main() -> nanowire::Result<()> {
    let c = green_rectangle_integral(1.0, 1.0, 0.0, 0.0)?;
    println!("unit square about its centre: {:.10} < {}", c.measured, c.bound);
    for seed in 0..3 {
        let checks = run_all(&SuiteConfig {
            seed,
            ..Default::default()
        })?;
        let failed = checks.iter().filter(|c| !c.pass).count();
        println!("seed {seed}: {} checks, {failed} failed", checks.len());
        for set in LemmaSet::ALL {
            let prefix = set.to_string();
            let tightest = checks
                .iter()
                .filter(|c| c.name.split_whitespace().next() == Some(prefix.as_str()))
                .min_by(|a, b| {
                    let ra = a.margin / a.bound.abs().max(1e-300);
                    let rb = b.margin / b.bound.abs().max(1e-300);
                    ra.total_cmp(&rb)
                });
            if let Some(t) = tightest {
                println!(
                    "  {:<4} tightest: {} (measured {:.6e}, bound {:.6e})",
                    prefix, t.name, t.measured, t.bound
                );
            }
        }
    }
    Ok(())
}
