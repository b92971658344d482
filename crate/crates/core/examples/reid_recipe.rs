//! Reid's recipe: mark lines and interior vertices with characters and
//! check that every nontrivial character is used exactly once.
//!
//!     cargo run --example reid_recipe -- "1/11(1,2,8)"

use ahilb::charts::ChartAtlas;
use ahilb::fan::Triangulation;
use ahilb::io::parse_group;
use ahilb::recipe::{classify_characters, CharacterRole, Decoration};
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let tri = Triangulation::build(&g)?;
    let atlas = ChartAtlas::build(&g, &tri)?;
    let dec = Decoration::build(&g, &tri, &atlas)?;
    for vm in &dec.vertex_marks {
        let marks: Vec<String> = vm.marks.iter().map(|&c| g.label(c)).collect();
        let lines: Vec<String> = vm.through_lines.iter().map(|t| g.label(t.character)).collect();
        println!(
            "vertex {:?}: valency {}, {:?}, marked {} (lines {})",
            tri.points[vm.vertex],
            vm.valency,
            vm.case,
            marks.join(","),
            lines.join(",")
        );
    }
    let p = classify_characters(&g, &tri, &dec)?;
    for role in [CharacterRole::Line, CharacterRole::Vertex, CharacterRole::SecondDp6] {
        let cs: Vec<String> = p.of_role(role).into_iter().map(|c| g.label(c)).collect();
        println!("{role:?}: {}", cs.join(" "));
    }
    Ok(())
}
