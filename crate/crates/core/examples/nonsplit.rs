//! The extension does not split over `A`: the F2-linear splitting system is
//! inconsistent, and over GF(4) a search through all of `M²` finds no
//! subgroup lift.
//!
//! ```text
//! cargo run --release --example nonsplit -- 4
//! ```

use h3cover::construction::extension::{brute_force_splitting, splitting_certificate};
use h3cover::{with_field, Field, FieldSpec};

fn main() -> h3cover::Result<()> {
    let order: u32 = std::env::args()
        .nth(1)
        .map_or(Ok(4), |s| s.parse())
        .expect("field order");
    let spec = FieldSpec::from_order(order)?;
    with_field!(spec, F => {
        match splitting_certificate(F::generator())? {
            Some(cert) => {
                println!(
                    "{spec}: {} equations in {} unknowns are inconsistent; certificate verified: {}",
                    cert.equations, cert.unknowns, cert.verified
                );
                println!("  contradiction from: {}", cert.rows.join(", "));
            }
            None => println!("{spec}: the splitting system has a solution"),
        }
        if F::ORDER == 4 {
            let bf = brute_force_splitting(F::generator())?;
            println!(
                "brute force: {} pairs, {} with both elements of order two, {} subgroup lifts",
                bf.pairs, bf.both_order_two, bf.lifts
            );
        }
    });
    Ok(())
}
