//! `λ(A_x)`, the cocycle `f(A_x, A_y) = xy·w5²` on `A = {A_x : x ∈ ⟨1, α⟩}`,
//! and the elements of order two in the extension.
//!
//! ```text
//! cargo run --example cocycle -- 16
//! ```

use h3cover::construction::extension::{
    cocycle_f, lambda_ax, order2_solution_space, s_is_a_invariant, transvection_parameters,
};
use h3cover::{with_field, Field, FieldSpec};

fn main() -> h3cover::Result<()> {
    let order: u32 = std::env::args()
        .nth(1)
        .map_or(Ok(4), |s| s.parse())
        .expect("field order");
    let spec = FieldSpec::from_order(order)?;
    with_field!(spec, F => {
        let xs = transvection_parameters::<F>();
        for &x in &xs {
            println!("λ(A_{x}) coordinates {:?}", lambda_ax(x).bits());
        }
        println!("f(x, y) as the coefficient of w5² (all other coordinates vanish):");
        for &x in &xs {
            let row: Vec<String> = xs.iter().map(|&y| cocycle_f(x, y).coeff(4, 4).to_string()).collect();
            println!("  x = {x}: {}", row.join(" "));
        }
        for &x in xs.iter().filter(|x| !x.is_zero()) {
            let space = order2_solution_space(x)?;
            println!(
                "[{x}, m]² = 1: particular solution {:?}, kernel of F2-dimension {}, equals w3² + S: {}",
                space.particular.bits(),
                space.kernel.len(),
                space.is_w3_squared_plus_s()
            );
        }
        println!("S is A-invariant: {}", s_is_a_invariant::<F>());
    });
    Ok(())
}
