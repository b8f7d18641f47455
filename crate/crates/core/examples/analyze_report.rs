//! Full pipeline on one instance with a reduced sample count, printed as a
//! table and as the versioned JSON report.
//!
//! `cargo run --example analyze_report -- transport:2x3`

use polydiam::instances::InstanceSpec;
use polydiam::report::{analyze, AnalyzeOptions};

fn main() -> polydiam::Result<()> {
    let spec: InstanceSpec = std::env::args().nth(1).as_deref().unwrap_or("cube:3").parse()?;
    let opts = AnalyzeOptions { volume_samples: 50_000, facet_samples: 20_000, seed: 5, ..Default::default() };
    let report = analyze(&spec, &opts)?;
    println!("{}", report.render_table());
    let json = report.to_json()?;
    println!("{}", &json[..json.find("\"checks\"").unwrap_or(json.len())]);
    std::process::exit(report.exit_code());
}
