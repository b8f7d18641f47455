//! Largest absolute minors by size and total unimodularity of the built-in
//! families and a small skew matrix.

use polydiam::instances::InstanceSpec;
use polydiam::linalg::RationalMatrix;
use polydiam::subdet::{is_totally_unimodular, subdet_profile, DEFAULT_MINOR_BUDGET};

fn main() -> polydiam::Result<()> {
    let specs = ["cube:3", "simplex:4", "cross:3", "transport:2x3", "random:3,8,2,7"];
    for s in specs {
        let p = s.parse::<InstanceSpec>()?.build()?;
        let prof = subdet_profile(p.a(), None, DEFAULT_MINOR_BUDGET)?;
        let tu = is_totally_unimodular(p.a(), DEFAULT_MINOR_BUDGET)?;
        println!("{s:<16} max |minor| by size {:?}  -> {:?}", prof.per_size, tu);
    }

    let skew = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![-1, 2]])?;
    let prof = subdet_profile(&skew, None, DEFAULT_MINOR_BUDGET)?;
    println!("\n[[1,1],[-1,2]]: all {}, entries {:?}, size n-1 {:?}", prof.delta, prof.delta1, prof.delta_nm1);
    Ok(())
}
