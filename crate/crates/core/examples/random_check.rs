//! Run every check on seeded random cyclic groups.
//!
//!     cargo run --release --example random_check -- 100 7

use ahilb::cli::random_cyclic;
use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::pipeline::{CheckSet, Pipeline};

fn main() -> ahilb::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().unwrap_or(0));
    let count = args.next().unwrap_or(50);
    let seed = args.next().unwrap_or(0);
    let mut failures = 0;
    for i in 0..count {
        let spec = random_cyclic(seed.wrapping_add(i));
        let p = Pipeline::run(&spec, DEFAULT_MAX_ORDER, CheckSet::All)?;
        if let Some(f) = &p.report.first_failure {
            failures += 1;
            println!("{spec}: {} failed: {}", f.check, f.message);
        }
    }
    println!("{} groups, {failures} failures", count);
    Ok(())
}
