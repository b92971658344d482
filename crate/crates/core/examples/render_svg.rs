//! Draw the decorated triangulation and the quiver fundamental domain.
//!
//!     cargo run --example render_svg -- "1/30(25,2,3)" fan.svg quiver.svg

use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::io::{parse_group, svg};
use ahilb::pipeline::{CheckSet, Pipeline};

fn main() -> ahilb::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "1/30(25,2,3)".into());
    let fan_path = args.next().unwrap_or_else(|| "fan.svg".into());
    let quiver_path = args.next().unwrap_or_else(|| "quiver.svg".into());
    let p = Pipeline::run(&parse_group(&text)?, DEFAULT_MAX_ORDER, CheckSet::Recipe)?;
    let io = |e: std::io::Error| ahilb::Error::Input(e.to_string());
    if let Some(tri) = &p.triangulation {
        std::fs::write(&fan_path, svg::triangulation_svg(&p.group, tri, p.decoration.as_ref())).map_err(io)?;
        println!("wrote {fan_path}");
    }
    if let Some(q) = &p.quiver {
        std::fs::write(&quiver_path, svg::quiver_svg(&p.group, q)).map_err(io)?;
        println!("wrote {quiver_path}");
    }
    Ok(())
}
