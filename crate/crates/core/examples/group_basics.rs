//! Parse a group, list its elements with their ages and show the character labels.
//!
//!     cargo run --example group_basics -- "1/11(1,2,8)"

use ahilb::io::parse_group;
use ahilb::AbelianGroup;

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/11(1,2,8)".into());
    let g = AbelianGroup::new(&parse_group(&text)?)?;
    println!("{} has order {}", g.spec(), g.order());
    println!("invariant lattice basis: {:?}", g.invariant_basis());
    for &e in g.elements() {
        println!("  element {e:?} (scaled by |A|), age {}", g.age(e));
    }
    let labels: Vec<String> = g.characters().into_iter().map(|c| g.label(c)).collect();
    println!("characters: {}", labels.join(" "));
    println!("junior points: {}", g.junior_points().len());
    Ok(())
}
