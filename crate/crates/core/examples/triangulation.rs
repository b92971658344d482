//! Step 3: tesselate the regular triangles and count what comes out.
//!
//!     cargo run --example triangulation -- "1/11(1,2,8)"

use ahilb::fan::Triangulation;
use ahilb::io::parse_group;
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let tri = Triangulation::build(&g)?;
    let interior = tri.interior_points().len();
    let boundary = tri.points.len() - interior;
    println!("{} basic triangles for |A| = {}", tri.triangles.len(), g.order());
    println!("I = {interior}, B = {boundary}, 2I + B - 2 = {}", 2 * interior + boundary - 2);
    for t in &tri.triangles {
        let v = t.vertices.map(|i| tri.points[i]);
        println!("  {:?} {:?} in region {}", t.orientation, v, t.region);
    }
    Ok(())
}
