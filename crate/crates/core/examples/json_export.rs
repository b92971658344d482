//! Write the JSON document for a group and read it back.
//!
//!     cargo run --example json_export -- "1/11(1,2,8)" out.json

use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::io::json::Document;
use ahilb::io::parse_group;
use ahilb::pipeline::{CheckSet, Pipeline};

fn main() -> ahilb::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "1/11(1,2,8)".into());
    let p = Pipeline::run(&parse_group(&text)?, DEFAULT_MAX_ORDER, CheckSet::All)?;
    let json = Document::from_pipeline(&p).to_json();
    let back = Document::from_json(&json)?;
    assert_eq!(back.to_json(), json);
    match args.next() {
        Some(path) => std::fs::write(&path, &json).map_err(|e| ahilb::Error::Input(e.to_string()))?,
        None => print!("{json}"),
    }
    eprintln!("{} bytes, {} triangles, round trip ok", json.len(), back.triangles.len());
    Ok(())
}
