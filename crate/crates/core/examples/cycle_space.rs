//! Computes the span of the fundamental-cycle voltages of `H3(F)` and
//! compares it with `W⁽²⁾ ⊕ ⟨U⟩`.
//!
//! ```text
//! cargo run --release --example cycle_space -- 8
//! ```

use std::time::Instant;

use h3cover::construction::theorem::{cycle_space, cycle_span_report, projective_graph};
use h3cover::report::CheckConfig;
use h3cover::{with_field, FieldSpec};

fn main() -> h3cover::Result<()> {
    let order: u32 = std::env::args()
        .nth(1)
        .map_or(Ok(4), |s| s.parse())
        .expect("field order");
    let spec = FieldSpec::from_order(order)?;
    with_field!(spec, F => {
        let start = Instant::now();
        let graph = projective_graph::<F>(20_000_000)?;
        println!("H3({spec}): {} vertices, built in {:.1?}", h3cover::graphs::IndexedGraph::order(&graph), start.elapsed());
        let cs = cycle_space(&graph, &CheckConfig::exhaustive());
        let report = cycle_span_report(&cs);
        println!(
            "{} fundamental cycles, span of dimension {} modulo U (expected {}), equal to W2 + <U>: {}",
            cs.generators,
            cs.dim_mod_u(),
            6 * spec.k,
            cs.equals_w2_plus_u()
        );
        println!("{}  [{:.1?}]", report.one_line(), start.elapsed());
    });
    Ok(())
}
