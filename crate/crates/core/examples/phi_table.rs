//! The duality `φ: Λ²V* -> Λ²V` on basis elements, and its defining
//! property `B(f1∧f2, v1∧v2) = (v1∧v2∧(f1∧f2)^φ)^χ` on random inputs.
//!
//! ```text
//! cargo run --example phi_table
//! ```

use h3cover::multilinear::{phi, phi_consistency_check, wedge_dual, PAIRS};
use h3cover::{with_field, Covector, Field, FieldSpec, Gf2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let name = |(i, j): (usize, usize)| format!("e{}∧e{}", i + 1, j + 1);
    for &(a, b) in &PAIRS {
        let image = phi(&wedge_dual(&Covector::<Gf2>::basis(a), &Covector::basis(b)));
        let slot = image
            .0
            .iter()
            .position(|c| c.bits() == 1)
            .expect("a basis bivector");
        println!(
            "(f{}∧f{})^φ = {} = w{}",
            a + 1,
            b + 1,
            name(PAIRS[slot]),
            slot + 1
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec in FieldSpec::ALL {
        let ok = with_field!(spec, F => phi_consistency_check::<F, _>(1000, &mut rng));
        println!(
            "{spec}: pairing identity on basis and 1000 random pairs: {}",
            if ok { "holds" } else { "FAILS" }
        );
    }
}
