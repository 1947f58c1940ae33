//! Voltages of short cycles in `H̃3(F)`: triangles give `U`, quadrangles and
//! pentagons land in `W⁽²⁾ ⊕ ⟨U⟩`.
//!
//! ```text
//! cargo run --release --example cycle_lemmas -- 4 100000
//! ```

use h3cover::construction::cycles::{
    sample_triangle, verify_pentagons, verify_quadrangles, verify_triangles, verify_w2_generators,
};
use h3cover::construction::ell;
use h3cover::multilinear::big_u;
use h3cover::report::{CheckConfig, Mode};
use h3cover::{with_field, FieldSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> h3cover::Result<()> {
    let mut args = std::env::args().skip(1);
    let order: u32 = args
        .next()
        .map_or(Ok(4), |s| s.parse())
        .expect("field order");
    let samples: u64 = args
        .next()
        .map_or(Ok(20_000), |s| s.parse())
        .expect("sample count");
    let spec = FieldSpec::from_order(order)?;
    let cfg = CheckConfig {
        mode: if order == 2 {
            Mode::Exhaustive
        } else {
            Mode::Sample
        },
        ..CheckConfig::sampled(samples, 1)
    };
    with_field!(spec, F => {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let [a, b, c] = sample_triangle::<F, _>(&mut rng).expect("a triangle");
        let total = ell(&a, &b)? + ell(&b, &c)? + ell(&c, &a)?;
        println!("a sampled triangle has voltage U: {}", total == big_u());
        for report in [
            verify_triangles::<F>(&cfg)?,
            verify_quadrangles::<F>(&cfg)?,
            verify_pentagons::<F>(&CheckConfig { mode: Mode::Sample, ..cfg })?,
            verify_w2_generators::<F>()?,
        ] {
            println!("{}", report.one_line());
        }
    });
    Ok(())
}
