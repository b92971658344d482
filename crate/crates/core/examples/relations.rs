//! One relation between tautological bundles per interior vertex, verified
//! by multiplying A-graph generators on every chart.
//!
//!     cargo run --example relations -- "1/11(1,2,8)"

use ahilb::charts::ChartAtlas;
use ahilb::fan::Triangulation;
use ahilb::io::parse_group;
use ahilb::recipe::Decoration;
use ahilb::relations::{completeness_check, derive_relations, verify_relation_chartwise};
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let tri = Triangulation::build(&g)?;
    let atlas = ChartAtlas::build(&g, &tri)?;
    let rels = derive_relations(&Decoration::build(&g, &tri, &atlas)?);
    let side = |cs: &[ahilb::Character]| cs.iter().map(|&c| format!("R[{}]", g.label(c))).collect::<Vec<_>>().join(" * ");
    for r in &rels {
        let ok = verify_relation_chartwise(&g, &atlas, r);
        println!("case {}: {} = {}  {}", r.case, side(&r.lhs), side(&r.rhs), if ok.is_ok() { "holds on every chart" } else { "FAILS" });
    }
    let c = completeness_check(&g, &tri, &rels)?;
    println!("{} relations, b2 = {}, b4 = {}", c.relations, c.b2, c.b4);
    Ok(())
}
