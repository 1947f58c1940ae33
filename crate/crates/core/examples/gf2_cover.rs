//! The 64-fold cover of `H3(F2)`: the component of `(v0, 0)` in the lift
//! along `ℓ^U`, its fibers, and local isomorphism at every vertex.
//!
//! ```text
//! cargo run --release --example gf2_cover
//! ```

use h3cover::construction::base_vertex;
use h3cover::construction::theorem::{projective_graph, verify_diameter};
use h3cover::construction::QuotientVoltage;
use h3cover::graphs::{diameter, IndexedGraph};
use h3cover::report::CheckConfig;
use h3cover::voltage::{component_of, verify_local_isomorphism};
use h3cover::{Gf2, NElement};

fn main() -> h3cover::Result<()> {
    let graph = projective_graph::<Gf2>(1 << 20)?;
    println!(
        "H3(F2): {} vertices, {} edges, valency {}",
        graph.order(),
        graph.edge_count(),
        graph.degree(0)
    );
    println!(
        "{}",
        verify_diameter::<Gf2>(&CheckConfig::exhaustive())?.one_line()
    );

    let ell = QuotientVoltage::<Gf2>::new();
    let root = graph.id_of(&base_vertex()).expect("v0");
    let comp = component_of(&ell, &graph, root, NElement::zero(), 1 << 20)?;
    println!(
        "component of (v0, 0): {} vertices, {} edges, fiber size {:?}",
        comp.order(),
        comp.graph.edge_count(),
        comp.uniform_fiber_size()
    );
    let local = verify_local_isomorphism(&ell, &graph, &comp, 0..comp.order());
    println!(
        "local isomorphism: {} vertices checked, {} failures",
        local.checked,
        local.failures.len()
    );
    println!("diameter of the cover: {:?}", diameter(&comp.graph));
    Ok(())
}
