//! Volume and flat surface of spherical cones of revolution against the cap
//! formulas, and the exact half-ball and Gamma inequalities.

use std::f64::consts::PI;

use polydiam::checks::{cones_formulas_check, ConeOfRevolution};
use polydiam::gamma::{gamma_half, gamma_inequality_check, halfball_bound_holds, halfball_ratio};

fn main() -> polydiam::Result<()> {
    for n in 2..=4 {
        for angle in [PI / 6.0, PI / 4.0, PI / 2.0] {
            let r = cones_formulas_check(&ConeOfRevolution::upright(n, angle)?, 200_000, 1)?;
            println!(
                "n = {n}, angle {angle:.4}: vol {:.4} vs B/n {:.4}, lateral {:.4} vs L/(n-1) {:.4}  [{} {}]",
                r.volume,
                r.base_area / n as f64,
                r.lateral_area,
                r.boundary_length / (n as f64 - 1.0),
                r.records[0].status,
                r.records[1].status
            );
        }
    }
    println!();
    for twice in 1..=8 {
        println!("Gamma({}/2) = {}", twice, gamma_half(twice)?);
    }
    for n in [2, 3, 10, 50] {
        let h = halfball_ratio(n)?;
        println!(
            "half-ball n = {n}: L = {:.4}, B = {:.4}, L/B = {:.4}, bound holds {}, Gamma inequality {}",
            h.l,
            h.b,
            h.ratio,
            halfball_bound_holds(n)?,
            gamma_inequality_check(n)?
        );
    }
    Ok(())
}
