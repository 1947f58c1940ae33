//! Short closed walks in `H̃3(F)`: triangles have voltage `U`, longer
//! cycles land in `W⁽²⁾ ⊕ ⟨U⟩`, and explicit quadrangles produce every
//! element of `W⁽²⁾`. Also reductivity and `SL4`-equivariance of `ℓ`.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{QuotientVoltage, SymmetricVoltage};
use crate::field::Field;
use crate::graphs::{
    random_affine_vertex, random_common_neighbor, random_neighbor, AffineVertex, IncidenceGraph,
    IndexedGraph,
};
use crate::linalg::f2::F2Span;
use crate::linalg::{
    annihilator, random_combination, random_gl4, random_sl4, Covector, Matrix4, Vector,
};
use crate::multilinear::{big_u, in_w2, in_w2_plus_u, InducedAction, NElement, SymTensor, PAIRS};
use crate::report::{sample_violations, CheckConfig, Mode, Report, Witness};
use crate::voltage::{
    closed_walk_voltage, lift_adjacent, ExtensionElement, LiftVertex, VoltageAssignment,
    VoltageGroup,
};
use crate::{Error, Result};

/// Attempts made by the walk samplers before giving up on one sample.
const SAMPLER_ATTEMPTS: usize = 200;

/// Exhaustive lemma checks enumerate `H̃3(F)` itself, so they stop at GF(2).
pub fn require_exhaustive<F: Field>(
    check: &str,
    cfg: &CheckConfig,
    max_order: usize,
) -> Result<()> {
    if cfg.mode == Mode::Exhaustive && F::ORDER > max_order {
        return Err(Error::Usage(format!(
            "{check}: exhaustive mode is only available up to GF({max_order}), use --mode sample"
        )));
    }
    Ok(())
}

fn retry<T, R: Rng>(rng: &mut R, mut f: impl FnMut(&mut R) -> Option<T>) -> Option<T> {
    (0..SAMPLER_ATTEMPTS).find_map(|_| f(rng))
}

fn common<F: Field, R: Rng>(of: &[AffineVertex<F>], rng: &mut R) -> Option<AffineVertex<F>> {
    random_common_neighbor(of, rng)
}

fn all_distinct<F: Field>(walk: &[AffineVertex<F>]) -> bool {
    walk.iter()
        .enumerate()
        .all(|(i, a)| walk[i + 1..].iter().all(|b| a != b))
}

pub fn sample_triangle<F: Field, R: Rng>(rng: &mut R) -> Option<[AffineVertex<F>; 3]> {
    retry(rng, |rng| {
        let a = random_affine_vertex(rng);
        let b = random_neighbor(&a, rng);
        let c = common(&[a, b], rng)?;
        Some([a, b, c])
    })
}

/// A 4-cycle `a, b, c, d` with four distinct vertices.
pub fn sample_quadrangle<F: Field, R: Rng>(rng: &mut R) -> Option<[AffineVertex<F>; 4]> {
    retry(rng, |rng| {
        let a = random_affine_vertex(rng);
        let b = random_neighbor(&a, rng);
        let c = random_neighbor(&b, rng);
        let d = common(&[a, c], rng)?;
        let walk = [a, b, c, d];
        all_distinct(&walk).then_some(walk)
    })
}

/// A 4-cycle whose first and third vertices share their vector.
pub fn sample_special_quadrangle<F: Field, R: Rng>(rng: &mut R) -> Option<[AffineVertex<F>; 4]> {
    retry(rng, |rng| {
        let a = random_affine_vertex(rng);
        let b = random_neighbor(&a, rng);
        let h2: Covector<F> = random_combination(&annihilator(&[b.v]), rng);
        let c = AffineVertex::new(a.v, h2).ok()?;
        let d = common(&[a, c], rng)?;
        let walk = [a, b, c, d];
        all_distinct(&walk).then_some(walk)
    })
}

pub fn sample_pentagon<F: Field, R: Rng>(rng: &mut R) -> Option<[AffineVertex<F>; 5]> {
    retry(rng, |rng| {
        let a = random_affine_vertex(rng);
        let b = random_neighbor(&a, rng);
        let c = random_neighbor(&b, rng);
        let d = random_neighbor(&c, rng);
        let e = common(&[d, a], rng)?;
        let walk = [a, b, c, d, e];
        all_distinct(&walk).then_some(walk)
    })
}

/// A closed walk of the given length: a random walk closed up by a common
/// neighbor of its ends.
pub fn sample_closed_walk<F: Field, R: Rng>(
    len: usize,
    rng: &mut R,
) -> Option<Vec<AffineVertex<F>>> {
    assert!(len >= 3);
    retry(rng, |rng| {
        let mut walk = vec![random_affine_vertex(rng)];
        while walk.len() < len - 1 {
            let next = random_neighbor(walk.last().expect("nonempty"), rng);
            walk.push(next);
        }
        let last = common(&[walk[len - 2], walk[0]], rng)?;
        walk.push(last);
        Some(walk)
    })
}

fn voltage_witness<F: Field>(what: &str, walk: &[AffineVertex<F>], s: &SymTensor<F>) -> Witness {
    Witness::new(what).walk(walk).voltage(s.bits())
}

fn sampler_failure<F: Field>(what: &str) -> Witness {
    Witness::new(format!("could not sample a {what} over {}", F::SPEC))
}

/// Every triangle has voltage `U`.
pub fn verify_triangles<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    verify_triangles_with(&SymmetricVoltage::<F>::new(), cfg)
}

pub fn verify_triangles_with<F, L>(ell: &L, cfg: &CheckConfig) -> Result<Report>
where
    F: Field,
    L: VoltageAssignment<Vertex = AffineVertex<F>, Group = SymTensor<F>>,
{
    require_exhaustive::<F>("triangles", cfg, 2)?;
    let mut report = Report::new("triangles", F::SPEC, cfg.mode);
    let u = big_u::<F>();
    let check = |walk: &[AffineVertex<F>]| {
        let s = closed_walk_voltage(ell, walk).expect("walk is closed");
        (s != u).then(|| voltage_witness("triangle voltage differs from U", walk, &s))
    };
    match cfg.mode {
        Mode::Exhaustive => {
            let g = IncidenceGraph::<F>::affine(cfg.cap)?;
            let mut count = 0;
            for a in 0..g.order() {
                for b in g.neighbors(a).into_iter().filter(|&b| b > a) {
                    for c in g
                        .neighbors(b)
                        .into_iter()
                        .filter(|&c| c > b && g.are_adjacent(a, c))
                    {
                        count += 1;
                        if let Some(w) = check(&[g.vertex(a), g.vertex(b), g.vertex(c)]) {
                            report.violation(w);
                        }
                    }
                }
            }
            report.samples = count;
        }
        Mode::Sample => {
            let bad = sample_violations(cfg.samples, cfg.seed, |rng| {
                match sample_triangle::<F, _>(rng) {
                    Some(t) => check(&t),
                    None => Some(sampler_failure::<F>("triangle")),
                }
            });
            report.record_samples(cfg.samples, bad);
        }
    }
    report.detail("expected_voltage", u.bits());
    Ok(report)
}

/// Every 4-cycle has voltage in `W⁽²⁾ ⊕ ⟨U⟩`; special ones (sharing a
/// vector across a diagonal) have voltage in `W⁽²⁾`.
pub fn verify_quadrangles<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    verify_quadrangles_with(&SymmetricVoltage::<F>::new(), cfg)
}

pub fn verify_quadrangles_with<F, L>(ell: &L, cfg: &CheckConfig) -> Result<Report>
where
    F: Field,
    L: VoltageAssignment<Vertex = AffineVertex<F>, Group = SymTensor<F>>,
{
    require_exhaustive::<F>("quadrangles", cfg, 2)?;
    let mut report = Report::new("quadrangles", F::SPEC, cfg.mode);
    let check = |walk: &[AffineVertex<F>]| {
        let s = closed_walk_voltage(ell, walk).expect("walk is closed");
        let special = walk[0].v == walk[2].v || walk[1].v == walk[3].v;
        if !in_w2_plus_u(&s) {
            Some(voltage_witness(
                "quadrangle voltage outside W2 + <U>",
                walk,
                &s,
            ))
        } else if special && !in_w2(&s) {
            Some(voltage_witness(
                "special quadrangle voltage outside W2",
                walk,
                &s,
            ))
        } else {
            None
        }
    };
    match cfg.mode {
        Mode::Exhaustive => {
            let g = IncidenceGraph::<F>::affine(cfg.cap)?;
            let mut count = 0u64;
            let mut special = 0u64;
            for a in 0..g.order() {
                let na = g.neighbors(a);
                for &b in &na {
                    for c in g.neighbors(b).into_iter().filter(|&c| c != a) {
                        for d in g
                            .neighbors(c)
                            .into_iter()
                            .filter(|&d| d != b && na.binary_search(&d).is_ok())
                        {
                            count += 1;
                            let walk = [g.vertex(a), g.vertex(b), g.vertex(c), g.vertex(d)];
                            special += u64::from(walk[0].v == walk[2].v);
                            if let Some(w) = check(&walk) {
                                report.violation(w);
                            }
                        }
                    }
                }
            }
            report.samples = count;
            report.detail("special_quadrangles", special);
        }
        Mode::Sample => {
            let half = cfg.samples.div_ceil(2);
            let bad = sample_violations(
                cfg.samples - half,
                cfg.seed,
                |rng| match sample_quadrangle::<F, _>(rng) {
                    Some(q) => check(&q),
                    None => Some(sampler_failure::<F>("quadrangle")),
                },
            );
            report.record_samples(cfg.samples - half, bad);
            let bad =
                sample_violations(
                    half,
                    cfg.seed ^ 0x5be,
                    |rng| match sample_special_quadrangle::<F, _>(rng) {
                        Some(q) => check(&q),
                        None => Some(sampler_failure::<F>("special quadrangle")),
                    },
                );
            report.record_samples(half, bad);
            report.detail("special_quadrangles", half);
        }
    }
    Ok(report)
}

/// Every 5-cycle, and every closed walk of length 6 to 8, has voltage in
/// `W⁽²⁾ ⊕ ⟨U⟩`. Always sampled.
pub fn verify_pentagons<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    verify_pentagons_with(&SymmetricVoltage::<F>::new(), cfg)
}

pub fn verify_pentagons_with<F, L>(ell: &L, cfg: &CheckConfig) -> Result<Report>
where
    F: Field,
    L: VoltageAssignment<Vertex = AffineVertex<F>, Group = SymTensor<F>>,
{
    let mut report = Report::new("pentagons", F::SPEC, Mode::Sample);
    let check = |walk: &[AffineVertex<F>], what: &str| {
        let s = closed_walk_voltage(ell, walk).expect("walk is closed");
        (!in_w2_plus_u(&s))
            .then(|| voltage_witness(&format!("{what} voltage outside W2 + <U>"), walk, &s))
    };
    let bad = sample_violations(cfg.samples, cfg.seed, |rng| {
        match sample_pentagon::<F, _>(rng) {
            Some(p) => check(&p, "pentagon"),
            None => Some(sampler_failure::<F>("pentagon")),
        }
    });
    report.record_samples(cfg.samples, bad);
    let longer = (cfg.samples / 10).max(1);
    for len in 6..=8 {
        let bad = sample_violations(longer, cfg.seed.wrapping_add(len as u64), |rng| {
            match sample_closed_walk::<F, _>(len, rng) {
                Some(w) => check(&w, &format!("closed walk of length {len}")),
                None => Some(sampler_failure::<F>("closed walk")),
            }
        });
        report.record_samples(longer, bad);
    }
    report.detail("pentagons", cfg.samples);
    report.detail("closed_walks_per_length_6_to_8", longer);
    Ok(report)
}

/// One of the quadrangles producing `λ·wᵢ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCycle<F> {
    pub walk: [AffineVertex<F>; 4],
    pub lambda: F,
    /// The basis bivector `w_slot` whose square appears.
    pub slot: usize,
    pub expected: SymTensor<F>,
}

/// The permutation matrix `e_k ↦ e_σ(k)` with `σ(0) = i`, `σ(1) = j` and
/// the two remaining indices in increasing order.
fn placing<F: Field>(i: usize, j: usize) -> Matrix4<F> {
    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    let sigma = [i, j, rest[0], rest[1]];
    Matrix4::from_rows(sigma.map(Vector::basis))
}

/// The quadrangle `e1⊗f1, e3⊗f3, e1⊗(f1+f4), (e3+λe2)⊗f3`, whose voltage
/// is `λ·w1²`.
pub fn base_generator_cycle<F: Field>(lambda: F) -> [AffineVertex<F>; 4] {
    let e = Vector::<F>::basis;
    let f = Covector::<F>::basis;
    [
        AffineVertex { v: e(0), h: f(0) },
        AffineVertex { v: e(2), h: f(2) },
        AffineVertex {
            v: e(0),
            h: f(0) + f(3),
        },
        AffineVertex {
            v: e(2) + e(1).scale(lambda),
            h: f(2),
        },
    ]
}

/// For every `λ ∈ F*` and every basis bivector `wᵢ = e_a∧e_b`, the base
/// quadrangle moved by a permutation sending `e1, e2` to `e_a, e_b`.
pub fn w2_generator_cycles<F: Field>() -> Vec<GeneratorCycle<F>> {
    let mut out = Vec::new();
    for (slot, &(i, j)) in PAIRS.iter().enumerate() {
        let p = placing::<F>(i, j);
        let dual = p.dual().expect("permutation");
        for lambda in F::nonzero_elements() {
            let walk = base_generator_cycle(lambda).map(|a| a.act(&p, &dual));
            let expected = SymTensor::monomial(slot, slot).scale(lambda);
            out.push(GeneratorCycle {
                walk,
                lambda,
                slot,
                expected,
            });
        }
    }
    out
}

/// Each generator cycle has its predicted voltage and together they span
/// `W⁽²⁾` over F2.
pub fn verify_w2_generators<F: Field>() -> Result<Report> {
    let ell = SymmetricVoltage::<F>::new();
    let mut report = Report::new("w2-generators", F::SPEC, Mode::Exhaustive);
    let mut span = F2Span::new();
    for c in w2_generator_cycles::<F>() {
        report.samples += 1;
        let s = closed_walk_voltage(&ell, &c.walk)?;
        if s != c.expected {
            report.violation(voltage_witness(
                &format!("expected λ·w{}², λ = {:?}", c.slot + 1, c.lambda),
                &c.walk,
                &s,
            ));
        }
        span.insert(s.to_f2());
    }
    let target = 6 * F::DEGREE;
    let w2 = F2Span::from_vectors((0..6).flat_map(|i| {
        F::f2_basis()
            .into_iter()
            .map(move |b| SymTensor::<F>::monomial(i, i).scale(b).to_f2())
    }));
    if span.dim() != target || !span.is_subspace_of(&w2) || !w2.is_subspace_of(&span) {
        report.fail(format!(
            "generator span has dimension {}, expected W2 of dimension {target}",
            span.dim()
        ));
    }
    report.detail("span_dimension", span.dim());
    report.example(
        Witness::new("base quadrangle, λ = 1")
            .walk(&base_generator_cycle(F::ONE))
            .voltage(SymTensor::<F>::monomial(0, 0).bits()),
    );
    Ok(report)
}

/// `ℓ(w,u) = ℓ(w,v)` whenever `u ~ v` and `w ⊥ u`.
pub fn verify_reductive<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    verify_reductive_with(&SymmetricVoltage::<F>::new(), cfg)
}

pub fn verify_reductive_with<F, L>(ell: &L, cfg: &CheckConfig) -> Result<Report>
where
    F: Field,
    L: VoltageAssignment<Vertex = AffineVertex<F>, Group = SymTensor<F>>,
{
    require_exhaustive::<F>("reductive", cfg, 2)?;
    let mut report = Report::new("reductive", F::SPEC, cfg.mode);
    let check = |w: &AffineVertex<F>, u: &AffineVertex<F>, v: &AffineVertex<F>| {
        let (a, b) = (ell.voltage(w, u), ell.voltage(w, v));
        (a != b).then(|| {
            Witness::new("ℓ(w,u) != ℓ(w,v) for u ~ v")
                .walk(&[*w, *u, *v])
                .voltage((a + b).bits())
        })
    };
    match cfg.mode {
        Mode::Exhaustive => {
            // classes are read off the graph: equal neighbor sets
            let g = IncidenceGraph::<F>::affine(cfg.cap)?;
            let mut classes: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for a in 0..g.order() {
                classes.entry(g.neighbors(a)).or_default().push(a);
            }
            let mut count = 0;
            for (nbrs, members) in &classes {
                for &u in members {
                    for &v in members {
                        for &w in nbrs {
                            count += 1;
                            if let Some(x) = check(&g.vertex(w), &g.vertex(u), &g.vertex(v)) {
                                report.violation(x);
                            }
                        }
                    }
                }
            }
            report.samples = count;
            report.detail("classes", classes.len());
        }
        Mode::Sample => {
            let bad = sample_violations(cfg.samples, cfg.seed, |rng| {
                let u = random_affine_vertex::<F, _>(rng);
                let v = u.rescaled(F::random_nonzero(rng), F::random_nonzero(rng));
                let w = random_neighbor(&u, rng);
                check(&w, &u, &v)
            });
            report.record_samples(cfg.samples, bad);
        }
    }
    Ok(report)
}

/// Number of matrices each sampled dart is tested against.
pub const EQUIVARIANCE_MATRICES: usize = 20;

/// `ℓ(a^g, b^g) = ℓ(a,b)^g` for `g ∈ SL4(F)`; `U` is fixed by `SL4` and
/// scaled by the determinant under `GL4`; the lifted action of `SL4 ⋉ N`
/// preserves adjacency and composes as a right action.
pub fn verify_equivariance<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    verify_equivariance_with(&SymmetricVoltage::<F>::new(), cfg)
}

pub fn verify_equivariance_with<F, L>(ell: &L, cfg: &CheckConfig) -> Result<Report>
where
    F: Field,
    L: VoltageAssignment<Vertex = AffineVertex<F>, Group = SymTensor<F>>,
{
    require_exhaustive::<F>("equivariance", cfg, 2)?;
    let mut report = Report::new("equivariance", F::SPEC, cfg.mode);
    let mut rng = crate::report::block_rng(cfg.seed, u64::MAX);
    let check = |a: &AffineVertex<F>, b: &AffineVertex<F>, g: &(InducedAction<F>, Matrix4<F>)| {
        let m = g.0.matrix();
        let lhs = ell.voltage(&a.act(m, &g.1), &b.act(m, &g.1));
        let rhs = g.0.act_s2(&ell.voltage(a, b));
        (lhs != rhs).then(|| {
            Witness::new("ℓ(a^g, b^g) != ℓ(a,b)^g")
                .walk(&[*a, *b])
                .voltage((lhs + rhs).bits())
        })
    };
    let with_dual = |m: Matrix4<F>| (InducedAction::new(&m), m.dual().expect("invertible"));
    match cfg.mode {
        Mode::Exhaustive => {
            let g = IncidenceGraph::<F>::affine(cfg.cap)?;
            let gs: Vec<_> = (0..100).map(|_| with_dual(random_sl4(&mut rng))).collect();
            for m in &gs {
                for a in 0..g.order() {
                    let va = g.vertex(a);
                    for b in g.neighbors(a) {
                        report.samples += 1;
                        if let Some(w) = check(&va, &g.vertex(b), m) {
                            report.violation(w);
                        }
                    }
                }
            }
            report.detail("matrices", gs.len());
        }
        Mode::Sample => {
            let gs: Vec<_> = (0..EQUIVARIANCE_MATRICES)
                .map(|_| with_dual(random_sl4(&mut rng)))
                .collect();
            let bad: Vec<Witness> = sample_violations(cfg.samples, cfg.seed, |rng| {
                let a = random_affine_vertex::<F, _>(rng);
                let b = random_neighbor(&a, rng);
                gs.iter().find_map(|m| check(&a, &b, m))
            });
            report.record_samples(cfg.samples, bad);
            report.detail("matrices", gs.len());
        }
    }

    let u = big_u::<F>();
    let fixed = (0..100).all(|_| InducedAction::new(&random_sl4::<F, _>(&mut rng)).act_s2(&u) == u);
    if !fixed {
        report.fail("U moved by an element of SL4");
    }
    let scaled = (0..20).all(|_| {
        let g = InducedAction::new(&random_gl4::<F, _>(&mut rng));
        g.act_s2(&u) == u.scale(g.det())
    });
    if !scaled {
        report.fail("U not scaled by the determinant under GL4");
    }
    report.detail("u_fixed_by_100_sl4", fixed);
    report.detail("u_scaled_by_det_for_20_gl4", scaled);

    let lifted = (cfg.samples / 10).clamp(1, 10_000);
    let bad = sample_violations(lifted, cfg.seed ^ 0x1f7, |rng| {
        lifted_action_violation::<F, _>(rng)
    });
    let failures = bad.len();
    for w in bad {
        report.violation(w);
    }
    report.detail("lifted_action_samples", lifted);
    report.detail("lifted_action_failures", failures);
    Ok(report)
}

fn random_n<F: Field, R: Rng>(rng: &mut R) -> NElement<F> {
    NElement::project(&SymTensor(std::array::from_fn(|_| F::random(rng))))
}

fn random_extension<F: Field, R: Rng>(rng: &mut R) -> ExtensionElement<F, NElement<F>> {
    ExtensionElement::new(random_sl4(rng), random_n(rng)).expect("special matrix")
}

/// One sampled lifted edge and two extension elements: adjacency must be
/// preserved and `x^((g,k)(h,l)) = (x^(g,k))^(h,l)`.
fn lifted_action_violation<F: Field, R: Rng>(rng: &mut R) -> Option<Witness> {
    let ell = QuotientVoltage::<F>::new();
    let a = random_affine_vertex::<F, _>(rng);
    let b = random_neighbor(&a, rng);
    let m = random_n::<F, _>(rng);
    let x = LiftVertex { base: a, tag: m };
    let y = LiftVertex {
        base: b,
        tag: m.plus(&ell.voltage(&a, &b)),
    };
    let (e1, e2) = (random_extension::<F, _>(rng), random_extension::<F, _>(rng));
    let (x1, y1) = (e1.act(&x).ok()?, e1.act(&y).ok()?);
    if !lift_adjacent(&ell, (&x1.base, &x1.tag), (&y1.base, &y1.tag)) {
        return Some(Witness::new("lifted action breaks adjacency").walk(&[a, b]));
    }
    let composed = e1.compose(&e2).ok()?.act(&x).ok()?;
    let stepwise = e2.act(&x1).ok()?;
    (composed != stepwise).then(|| Witness::new("lifted action is not a right action").walk(&[a]))
}

/// `ℓ` restricted to a random sample of darts, for quick smoke tests.
pub fn random_dart<F: Field>(rng: &mut ChaCha8Rng) -> (AffineVertex<F>, AffineVertex<F>) {
    let a = random_affine_vertex(rng);
    (a, random_neighbor(&a, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::CorruptedVoltage;
    use crate::field::{Gf16, Gf2, Gf4, Gf8};
    use crate::multilinear::{phi, sym_mul, wedge, wedge_dual};
    use rand::SeedableRng;

    #[test]
    fn gf2_triangles_and_quadrangles_exhaustive() {
        let cfg = CheckConfig::exhaustive();
        let t = verify_triangles::<Gf2>(&cfg).unwrap();
        assert!(t.passed(), "{t:?}");
        assert!(t.samples > 0);
        let q = verify_quadrangles::<Gf2>(&cfg).unwrap();
        assert!(q.passed(), "{:?}", q.witnesses);
        assert!(q.details["special_quadrangles"].as_u64().unwrap() > 0);
    }

    #[test]
    fn exhaustive_refused_above_gf2() {
        assert!(matches!(
            verify_triangles::<Gf4>(&CheckConfig::exhaustive()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn sampled_cycles_small() {
        let cfg = CheckConfig::sampled(2000, 5);
        assert!(verify_triangles::<Gf8>(&cfg).unwrap().passed());
        assert!(verify_quadrangles::<Gf4>(&cfg).unwrap().passed());
        assert!(verify_pentagons::<Gf4>(&cfg).unwrap().passed());
        assert!(verify_pentagons::<Gf16>(&CheckConfig::sampled(300, 5))
            .unwrap()
            .passed());
    }

    #[test]
    fn samplers_produce_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let q = sample_special_quadrangle::<Gf4, _>(&mut rng).unwrap();
            assert_eq!(q[0].v, q[2].v);
            let p = sample_pentagon::<Gf8, _>(&mut rng).unwrap();
            assert!(all_distinct(&p));
            for i in 0..5 {
                assert!(p[i].is_adjacent(&p[(i + 1) % 5]));
            }
        }
    }

    #[test]
    fn corrupted_dart_is_caught() {
        let a = AffineVertex {
            v: Vector::<Gf2>::basis(0),
            h: Covector::basis(0),
        };
        let b = AffineVertex {
            v: Vector::basis(2),
            h: Covector::basis(2),
        };
        let bad = CorruptedVoltage {
            inner: SymmetricVoltage::new(),
            edge: (a, b),
            delta: SymTensor::monomial(0, 1),
        };
        let cfg = CheckConfig::exhaustive();
        assert!(!verify_triangles_with(&bad, &cfg).unwrap().passed());
        assert!(!verify_quadrangles_with(&bad, &cfg).unwrap().passed());
        // the same corruption by a square stays inside W2 + <U>
        let mild = CorruptedVoltage {
            inner: SymmetricVoltage::new(),
            edge: (a, b),
            delta: SymTensor::monomial(0, 0),
        };
        assert!(verify_quadrangles_with(&mild, &cfg).unwrap().passed());
    }

    /// `ℓ` without the normalizing factors `h(v)⁻¹`.
    struct Unnormalized;
    impl VoltageAssignment for Unnormalized {
        type Vertex = AffineVertex<Gf4>;
        type Group = SymTensor<Gf4>;
        fn adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool {
            a.is_adjacent(b)
        }
        fn voltage(&self, a: &Self::Vertex, b: &Self::Vertex) -> SymTensor<Gf4> {
            sym_mul(&wedge(&a.v, &b.v), &phi(&wedge_dual(&a.h, &b.h)))
        }
    }

    #[test]
    fn reductivity_needs_the_normalization() {
        let cfg = CheckConfig::sampled(2000, 3);
        assert!(verify_reductive::<Gf4>(&cfg).unwrap().passed());
        assert!(!verify_reductive_with(&Unnormalized, &cfg).unwrap().passed());
        assert!(verify_reductive::<Gf2>(&CheckConfig::exhaustive())
            .unwrap()
            .passed());
    }

    #[test]
    fn equivariance_small() {
        let r = verify_equivariance::<Gf4>(&CheckConfig::sampled(500, 2)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_equivariance::<Gf2>(&CheckConfig::exhaustive()).unwrap();
        assert!(r.passed());
        assert_eq!(r.samples, 100 * 120 * 28);
    }

    #[test]
    fn generator_cycles() {
        for c in w2_generator_cycles::<Gf4>() {
            for i in 0..4 {
                assert!(c.walk[i].is_adjacent(&c.walk[(i + 1) % 4]));
            }
        }
        assert_eq!(w2_generator_cycles::<Gf8>().len(), 6 * 7);
        assert!(verify_w2_generators::<Gf2>().unwrap().passed());
        let r = verify_w2_generators::<Gf16>().unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["span_dimension"], 24);
    }

    #[test]
    fn base_generator_by_hand() {
        // λ = α over GF(4): voltage α·w1²
        let alpha = Gf4::generator();
        let ell = SymmetricVoltage::<Gf4>::new();
        let s = closed_walk_voltage(&ell, &base_generator_cycle(alpha)).unwrap();
        assert_eq!(s, SymTensor::monomial(0, 0).scale(alpha));
    }
}
