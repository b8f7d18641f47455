//! For an unbounded polyhedron only part of the ball has an owner. Sets of
//! at most half that region have flat surface, excluding the region's own
//! boundary, at least their volume.

use polydiam::checks::prefix_surface_checks;
use polydiam::graph::enumerate_vertices;
use polydiam::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};
use polydiam::sampling::Estimator;

fn main() -> polydiam::Result<()> {
    // half-strip {x1 >= 0, 0 <= x2 <= 1} with vertices (0, 0) and (0, 1)
    let p = Polyhedron::from_i64(&[vec![0, -1], vec![0, 1], vec![-1, 0]], &[0, 1, 0])?;
    println!("bounded: {}", p.classify_boundedness(DEFAULT_BASIS_BUDGET)?);
    println!("recession ray: {:?}", p.recession_ray(DEFAULT_BASIS_BUDGET)?.map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET)?;
    let est = Estimator::new(&p, &g, 100_000, 100_000, 2)?;
    let region = est.owners().bounded_region();
    println!("region of bounded objectives: {:.4} (exact pi/2 = {:.4})", region.point_estimate, std::f64::consts::FRAC_PI_2);
    for v in 0..g.vertex_count() {
        for rec in prefix_surface_checks(&est, v, false)? {
            println!(
                "{:<20} {:<20} {:>7.4} {} {:>7.4}  {} {}",
                rec.check,
                rec.subject,
                rec.measured,
                rec.relation,
                rec.bound,
                rec.status,
                rec.note.unwrap_or_default()
            );
        }
    }
    Ok(())
}
