//! Step 1 of the triangulation: the fan at each corner of the junior simplex
//! with the strengths of its lines.
//!
//!     cargo run --example corner_fans -- "1/11(1,2,8)"

use ahilb::fan::step1_corner_fans;
use ahilb::io::parse_group;
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    for fan in step1_corner_fans(&g)? {
        println!("corner e{}: chain {:?}", fan.corner + 1, fan.chain);
        println!("  strengths {:?}", fan.strengths);
    }
    Ok(())
}
