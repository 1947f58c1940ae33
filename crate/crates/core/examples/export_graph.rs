//! Writes the GF(2) cover as an edge list and reads it back.
//!
//! ```text
//! cargo run --release --example export_graph -- cover.txt
//! ```

use h3cover::construction::export::{cover_export, parse, render, Format};
use h3cover::graphs::is_connected;
use h3cover::report::CheckConfig;
use h3cover::Gf2;

fn main() -> h3cover::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "cover.txt".into());
    let cover = cover_export::<Gf2>(&CheckConfig::default())?;
    std::fs::write(&path, render(&cover, Format::Edgelist)?)?;
    let back = parse(&std::fs::read_to_string(&path)?)?;
    println!(
        "wrote {path}: {} vertices, {} edges; re-read identical: {}; connected: {}",
        back.vertex_count,
        back.edge_count,
        back.same_adjacency(&cover),
        is_connected(&back.to_graph())
    );
    Ok(())
}
