//! Explicit diameter bounds for totally unimodular systems as `n` grows,
//! and the effect of the largest minor.

use polydiam::bounds::{polyhedron_diameter_bound, polytope_diameter_bound, refined_diameter_bound, vertex_volume_lower_bound, Regime};

fn main() -> polydiam::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>14} {:>10}", "n", "polytope", "polyhedron", "min cone vol", "/ n^3.5 ln n");
    for n in 2..=12 {
        let b = polytope_diameter_bound(n, 1.0)?;
        let nf = n as f64;
        println!(
            "{n:>3} {b:>12} {:>12} {:>14.3e} {:>10.2}",
            polyhedron_diameter_bound(n, 1.0)?,
            vertex_volume_lower_bound(n, 1.0),
            b as f64 / (nf.powf(3.5) * nf.ln())
        );
    }
    println!();
    for delta in [1.0, 2.0, 3.0, 5.0] {
        println!(
            "n = 3, max minor {delta}: polytope {}, refined with entries 1 and (n-1)-minors {delta}: {}",
            polytope_diameter_bound(3, delta)?,
            refined_diameter_bound(3, 1.0, delta, Regime::Bounded)?
        );
    }
    Ok(())
}
