//! Multiplication and inverse tables of GF(2^k), and the F2-basis used for
//! scalar restriction.
//!
//! ```text
//! cargo run --example field_arithmetic -- 8
//! ```

use h3cover::{with_field, Field, FieldSpec};

fn main() -> h3cover::Result<()> {
    let order: u32 = std::env::args()
        .nth(1)
        .map_or(Ok(4), |s| s.parse())
        .expect("field order");
    let spec = FieldSpec::from_order(order)?;
    with_field!(spec, F => {
        println!("{spec}, modulus {:#b}, generator α = {}", spec.modulus, F::generator());
        print!("  * |");
        for b in F::elements() {
            print!("{b:>3}");
        }
        println!();
        for a in F::elements() {
            print!("{a:>3} |");
            for b in F::elements() {
                print!("{:>3}", a * b);
            }
            println!();
        }
        for a in F::nonzero_elements() {
            println!("{a}⁻¹ = {}", a.inv()?);
        }
        let basis: Vec<String> = F::f2_basis().iter().map(|b| b.to_string()).collect();
        println!("F2-basis: {}", basis.join(", "));
    });
    Ok(())
}
