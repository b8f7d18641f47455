//! A square pyramid has a degenerate apex. Perturbing the right-hand side by
//! `(e, e^2, ..., e^m)` splits it into simple vertices.

use polydiam::graph::enumerate_vertices;
use polydiam::polyhedron::{Polyhedron, DEFAULT_BASIS_BUDGET};

const PYRAMID: &str = "\
# square pyramid with apex (0, 0, 1)
6 3
 1  0 1 1
-1  0 1 1
 0  1 1 1
 0 -1 1 1
 0  0 1 1
 0  0 -1 0
";

fn main() -> polydiam::Result<()> {
    let p: Polyhedron = PYRAMID.parse()?;
    let g = enumerate_vertices(&p, DEFAULT_BASIS_BUDGET)?;
    for (i, v) in g.vertices.iter().enumerate() {
        println!("vertex {i}: {:?} tight rows {:?}", v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(), v.tight_rows);
    }
    println!("simple: {}, diameter {}", g.is_simple(), g.diameter()?);

    let q = p.perturb(DEFAULT_BASIS_BUDGET)?;
    let h = enumerate_vertices(&q, DEFAULT_BASIS_BUDGET)?;
    println!(
        "\nperturbed with epsilon = {}: {} vertices, {} edges, simple: {}, diameter {}",
        q.epsilon().unwrap(),
        h.vertex_count(),
        h.edge_count(),
        h.is_simple(),
        h.diameter()?
    );
    Ok(())
}
