//! Step 2: lines from the corners extend until they meet a stronger line.
//! Prints every battle and the regular triangles left behind.
//!
//!     cargo run --example knockout -- "1/30(25,2,3)"

use ahilb::fan::{step1_corner_fans, step2_knockout};
use ahilb::io::parse_group;
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/30(25,2,3)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    let ko = step2_knockout(&g, &step1_corner_fans(&g)?)?;
    for b in &ko.battles {
        let who: Vec<String> = b.lines.iter().map(|&l| ko.lines[l].ratio.to_string()).collect();
        let winner = b.winner.map_or("none".to_string(), |w| ko.lines[w].ratio.to_string());
        println!("battle at {:?}: {} with strengths {:?}, winner {winner}", b.point, who.join(" vs "), b.strengths);
    }
    for l in &ko.lines {
        println!("line {} from {:?} to {:?}, strength {} -> {}", l.ratio, l.start, l.end, l.birth_strength, l.strength);
    }
    for r in &ko.regions {
        println!("regular triangle of side {} ({:?}) at {:?}", r.side, r.kind, r.vertices);
    }
    Ok(())
}
