//! A group with two generators, whose characters get tuple labels.
//!
//!     cargo run --example non_cyclic -- "1/2(1,1,0);1/2(0,1,1)"

use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::io::parse_group;
use ahilb::pipeline::{CheckSet, Pipeline};

fn main() -> ahilb::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "1/4(1,3,0);1/4(0,1,3)".into());
    let p = Pipeline::run(&parse_group(&text)?, DEFAULT_MAX_ORDER, CheckSet::All)?;
    let g = &p.group;
    println!("{} of order {}", g.spec(), g.order());
    for vm in p.decoration.iter().flat_map(|d| &d.vertex_marks) {
        let marks: Vec<String> = vm.marks.iter().map(|&c| g.label(c)).collect();
        println!("  {:?} {:?} marked {}", p.triangulation.as_ref().unwrap().points[vm.vertex], vm.case, marks.join(","));
    }
    for c in &p.report.checks {
        println!("  {:<13}{:?}", c.name, c.status);
    }
    Ok(())
}
