//! Virtual bundles, their c2 pairing with the compact exceptional surfaces
//! and the H2 basis test.
//!
//!     cargo run --example cohomology -- "1/11(1,2,8)"

use ahilb::io::parse_group;
use ahilb::pipeline::{CheckSet, Pipeline};
use ahilb::group::DEFAULT_MAX_ORDER;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let p = Pipeline::run(&parse_group(&text)?, DEFAULT_MAX_ORDER, CheckSet::All)?;
    let g = &p.group;
    let Some(c) = &p.cohomology else {
        println!("stopped early: {:?}", p.report.first_failure);
        return Ok(());
    };
    for s in &c.surfaces {
        println!("S[{}]: {:?} with self-intersections {:?}", g.label(s.character), s.case, s.self_intersections);
    }
    let labels = |cs: &[ahilb::Character]| cs.iter().map(|&c| g.label(c)).collect::<Vec<_>>().join(" + ");
    for v in &c.bundles {
        println!("V[{}] = ({}) - ({})", g.label(v.index), labels(&v.plus), labels(&v.minus));
    }
    println!("duality matrix:");
    for row in &c.duality.entries {
        println!("  {row:?}");
    }
    println!("H2 degree matrix elementary divisors: {:?}", c.h2.elementary_divisors);
    println!("certificate: {:?}", c.certify(g));
    Ok(())
}
