//! Affine charts and A-graphs of A-Hilb, and the Conv regions of one
//! character (the triangles where its generator is a fixed monomial).
//!
//!     cargo run --example charts_agraphs -- "1/11(1,2,8)" 3

use ahilb::charts::{is_convex_union, ChartAtlas};
use ahilb::fan::Triangulation;
use ahilb::io::parse_group;
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "1/11(1,2,8)".into());
    let index: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let tri = Triangulation::build(&g)?;
    let atlas = ChartAtlas::build(&g, &tri)?;
    for (chart, graph) in atlas.charts.iter().zip(&atlas.agraphs) {
        let coords: Vec<String> = chart.coords.iter().map(|(n, d)| format!("{n}/{d}")).collect();
        let socle: Vec<String> = graph.socle(&g).iter().map(|m| m.to_string()).collect();
        println!("triangle {}: coordinates {}, socle {}", chart.triangle, coords.join(", "), socle.join(" "));
    }
    let Some(c) = g.character_by_label(index) else {
        println!("no character with index {index}");
        return Ok(());
    };
    for (m, ts) in atlas.conv_regions(&g, c) {
        println!("{} = {m} on triangles {ts:?} (convex: {})", g.label(c), is_convex_union(&tri, &ts));
    }
    Ok(())
}
