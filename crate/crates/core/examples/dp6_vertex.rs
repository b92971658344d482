//! The meeting point of three straight lines carries a del Pezzo surface of
//! degree six and two marks. Shows both ways of computing them.
//!
//!     cargo run --example dp6_vertex -- "1/30(25,2,3)"

use ahilb::charts::ChartAtlas;
use ahilb::fan::Triangulation;
use ahilb::io::parse_group;
use ahilb::recipe::{dp6_projection_marks, dp6_socle_marks, Decoration, SurfaceCase};
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/30(25,2,3)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let tri = Triangulation::build(&g)?;
    let atlas = ChartAtlas::build(&g, &tri)?;
    let dec = Decoration::build(&g, &tri, &atlas)?;
    let labels = |cs: &[ahilb::Character]| cs.iter().map(|&c| g.label(c)).collect::<Vec<_>>().join(",");
    for vm in dec.vertex_marks.iter().filter(|vm| vm.case == SurfaceCase::DP6) {
        let lines: Vec<_> = vm.through_lines.iter().map(|t| t.character).collect();
        println!("dP6 vertex {:?} on lines {}", tri.points[vm.vertex], labels(&lines));
        println!("  socle marks      {}", labels(&dp6_socle_marks(&g, &tri, &atlas, vm.vertex)?));
        println!("  projection marks {}", labels(&dp6_projection_marks(&g, &tri, vm.vertex)?));
        println!("  relation character {}, kept in H2: {}", g.label(vm.mark()), labels(&vm.marks[1..]));
    }
    Ok(())
}
