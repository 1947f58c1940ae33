//! The cover itself: the cycle space of `ℓ` on `H3(F)`, the lifted
//! component through `(v0, 0)`, and the graph facts it relies on.

use rand::Rng;

use super::{base_vertex, QuotientVoltage, SymmetricVoltage};
use crate::field::Field;
use crate::graphs::{
    diameter_from, verify_reduct_is_neighborhood_equality, IncidenceGraph, IndexedGraph,
    MAX_CACHED_FIELD_ORDER,
};
use crate::linalg::f2::F2Span;
use crate::linalg::{Covector, Vector};
use crate::multilinear::{
    big_u, in_w2_plus_u, sym_mul, wedge, Bivector, NElement, SymTensor, MONOMIALS, PAIRS,
};
use crate::report::{block_rng, CheckConfig, Mode, Report, Witness};
use crate::voltage::{
    component_of, path_voltage, tree_voltages, verify_local_isomorphism, TreeVoltages,
};
use crate::Result;

/// `H3(F)`, with cached adjacency when small enough.
pub fn projective_graph<F: Field>(cap: usize) -> Result<IncidenceGraph<F>> {
    let g = IncidenceGraph::<F>::projective(cap)?;
    if F::ORDER <= MAX_CACHED_FIELD_ORDER {
        g.with_adjacency_cache()
    } else {
        Ok(g)
    }
}

/// F2-basis of `W⁽²⁾` in scalar-restricted coordinates.
pub fn w2_basis<F: Field>() -> Vec<u128> {
    (0..6)
        .flat_map(|i| {
            F::f2_basis()
                .into_iter()
                .map(move |b| SymTensor::<F>::monomial(i, i).scale(b).to_f2())
        })
        .collect()
}

/// `W⁽²⁾ ⊕ ⟨U⟩` as an F2-space.
pub fn w2_plus_u_span<F: Field>() -> F2Span {
    let mut s = F2Span::from_vectors(w2_basis::<F>());
    s.insert(big_u::<F>().to_f2());
    s
}

/// Result of the cycle-space computation on `H3(F)`.
#[derive(Clone, Debug)]
pub struct CycleSpace<F> {
    /// Span of the fundamental-cycle voltages together with `U`.
    pub span: F2Span,
    pub generators: u64,
    pub rejected: u64,
    pub tree: TreeVoltages<SymTensor<F>>,
    pub root: usize,
    pub mode: Mode,
}

impl<F: Field> CycleSpace<F> {
    /// F2-dimension of the image in `N`, i.e. modulo `U`.
    pub fn dim_mod_u(&self) -> usize {
        self.span.dim() - 1
    }

    /// Whether the span is exactly `W⁽²⁾ ⊕ ⟨U⟩`.
    pub fn equals_w2_plus_u(&self) -> bool {
        let target = w2_plus_u_span::<F>();
        self.span.is_subspace_of(&target) && target.is_subspace_of(&self.span)
    }
}

/// Fundamental-cycle voltages of `ℓ` on `H3(F)` from the BFS tree at `v0`.
/// Exhaustive mode visits every non-tree edge; sample mode draws random
/// edges.
pub fn cycle_space<F: Field>(graph: &IncidenceGraph<F>, cfg: &CheckConfig) -> CycleSpace<F> {
    let ell = SymmetricVoltage::<F>::new();
    let root = graph.id_of(&base_vertex()).expect("v0 is a vertex");
    let seed = [big_u::<F>().to_f2()];
    match cfg.mode {
        Mode::Exhaustive => {
            let tree = tree_voltages(&ell, graph, root);
            let (span, generators, rejected) = exhaustive_cycle_span(graph, &tree);
            CycleSpace {
                span,
                generators,
                rejected,
                tree,
                root,
                mode: Mode::Exhaustive,
            }
        }
        Mode::Sample => {
            let tree = tree_voltages(&ell, graph, root);
            let mut span = F2Span::from_vectors(seed);
            let mut rng = block_rng(cfg.seed, 0);
            let (mut generators, mut rejected) = (0, 0);
            while generators < cfg.samples {
                let a = rng.gen_range(0..graph.order());
                let ns = graph.neighbors(a);
                let b = ns[rng.gen_range(0..ns.len())];
                let v = tree.voltage[a] + ell_of(graph, a, b) + tree.voltage[b];
                generators += 1;
                rejected += u64::from(!in_w2_plus_u(&v));
                span.insert(v.to_f2());
            }
            CycleSpace {
                span,
                generators,
                rejected,
                tree,
                root,
                mode: Mode::Sample,
            }
        }
    }
}

/// Streams every fundamental cycle of `H3(F)` into a span seeded with `U`.
///
/// Edges are grouped by their pair of points `P < Q`. With hyperplanes
/// rescaled so that `ha(P) = hb(Q) = 1`, the voltage of `(P, ha) ~ (Q, hb)`
/// is `(P∧Q)(ha∧hb)^φ`, which is F-linear in `hb`; after a per-`ha` table
/// build each edge costs four lookups. Insertion stops once the span is as
/// large as `W⁽²⁾ ⊕ ⟨U⟩`; membership is still tested for every cycle.
fn exhaustive_cycle_span<F: Field>(
    graph: &IncidenceGraph<F>,
    tree: &TreeVoltages<SymTensor<F>>,
) -> (F2Span, u64, u64) {
    let q = F::ORDER;
    let bits: Vec<u128> = tree.voltage.iter().map(|t| t.to_f2()).collect();
    let parent = &tree.tree.parent;
    let u_bits = big_u::<F>().to_f2();
    let off_diagonal = MONOMIALS
        .iter()
        .filter(|(i, j)| i != j)
        .fold(0u128, |acc, &(i, j)| {
            acc | SymTensor::<F>::monomial(i, j)
                .scale(F::from_bits((q - 1) as u8).expect("mask"))
                .to_f2()
        });
    let saturation = 6 * F::DEGREE + 1;
    let (points, hyperplanes) = (graph.points(), graph.hyperplanes());
    let scale = |h: &Covector<F>, at: &Vector<F>| {
        let c = h.eval(at).inv().expect("not incident");
        h.0.map(|x| x * c)
    };

    let mut span = F2Span::from_vectors([u_bits]);
    let (mut generators, mut rejected) = (0u64, 0u64);
    let mut b_side: Vec<(u32, [F; 4])> = Vec::new();
    let mut c_tab = vec![[0u128; 16]; 6];
    let mut e_tab = [[0u128; 16]; 4];
    for (pi, p) in points.iter().enumerate() {
        for (qi, qv) in points.iter().enumerate().skip(pi + 1) {
            let x = wedge(p, qv);
            for (slot, row) in c_tab.iter_mut().enumerate() {
                // φ(fᵢ∧fⱼ) is the complementary basis bivector
                let c = sym_mul(&x, &Bivector::basis(5 - slot));
                for e in F::elements() {
                    row[e.bits() as usize] = c.scale(e).to_f2();
                }
            }
            b_side.clear();
            for &h in graph.hyperplanes_through(pi) {
                if let Some(id) = graph.vertex_at(qi, h as usize) {
                    b_side.push((id as u32, scale(&hyperplanes[h as usize], qv)));
                }
            }
            for &h in graph.hyperplanes_through(qi) {
                let Some(ida) = graph.vertex_at(pi, h as usize) else {
                    continue;
                };
                let ha = scale(&hyperplanes[h as usize], p);
                for (j, tab) in e_tab.iter_mut().enumerate() {
                    for e in F::elements() {
                        tab[e.bits() as usize] =
                            PAIRS.iter().enumerate().fold(0, |acc, (slot, &(i0, i1))| {
                                let other = if i0 == j {
                                    i1
                                } else if i1 == j {
                                    i0
                                } else {
                                    return acc;
                                };
                                acc ^ c_tab[slot][(e * ha[other]).bits() as usize]
                            });
                    }
                }
                let ta = bits[ida];
                for &(idb, hb) in &b_side {
                    if parent[idb as usize] as usize == ida || parent[ida] == idb {
                        continue;
                    }
                    let ell = hb
                        .iter()
                        .zip(&e_tab)
                        .fold(0, |acc, (c, tab)| acc ^ tab[c.bits() as usize]);
                    let cycle = ta ^ ell ^ bits[idb as usize];
                    generators += 1;
                    let off = cycle & off_diagonal;
                    if off != 0 && off != u_bits {
                        rejected += 1;
                    }
                    if span.dim() < saturation {
                        span.insert(cycle);
                    }
                }
            }
        }
    }
    (span, generators, rejected)
}

fn ell_of<F: Field>(g: &IncidenceGraph<F>, a: usize, b: usize) -> SymTensor<F> {
    super::ell_unchecked(&g.vertex(a), &g.vertex(b))
}

/// The cycle voltages of `H3(F)` span exactly `W⁽²⁾` modulo `U`.
pub fn verify_cycle_span<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let graph = projective_graph::<F>(cfg.cap)?;
    Ok(cycle_span_report(&cycle_space(&graph, cfg)))
}

pub fn cycle_span_report<F: Field>(cs: &CycleSpace<F>) -> Report {
    let mut report = Report::new("cycles", F::SPEC, cs.mode);
    report.samples = cs.generators;
    if cs.rejected > 0 {
        report.violations = cs.rejected;
        report.fail(format!("{} cycle voltages outside W2 + <U>", cs.rejected));
    }
    if cs.dim_mod_u() != 6 * F::DEGREE {
        report.fail(format!(
            "span has dimension {} modulo U, expected {}",
            cs.dim_mod_u(),
            6 * F::DEGREE
        ));
    }
    if !cs.equals_w2_plus_u() {
        report.fail("span differs from W2 + <U>");
    }
    report.detail("dimension_mod_u", cs.dim_mod_u());
    report.detail("expected_dimension", 6 * F::DEGREE);
    report.detail("generators", cs.generators);
    report.detail("span_equals_w2_plus_u", cs.equals_w2_plus_u());
    report
}

/// BFS diameter of `H3(F)`: from every vertex in exhaustive mode,
/// otherwise from `samples` random sources.
pub fn verify_diameter<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let graph = projective_graph::<F>(cfg.cap)?;
    let mut report = Report::new("diameter", F::SPEC, cfg.mode);
    let d = match cfg.mode {
        Mode::Exhaustive => {
            report.samples = graph.order() as u64;
            diameter_from(&graph, 0..graph.order())
        }
        Mode::Sample => {
            let mut rng = block_rng(cfg.seed, 0);
            let n = (cfg.samples as usize).min(graph.order());
            report.samples = n as u64;
            diameter_from(&graph, (0..n).map(|_| rng.gen_range(0..graph.order())))
        }
    };
    if d != Some(2) {
        report.fail(format!("diameter {d:?}, expected 2"));
    }
    report.detail("diameter", d);
    report.detail("vertices", graph.order());
    Ok(report)
}

/// Exhaustive check that `H3(F)` is the reduct of `H̃3(F)`.
pub fn verify_reduct<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let r =
        verify_reduct_is_neighborhood_equality::<F>(cfg.cap.max(crate::graphs::DEFAULT_GRAPH_CAP))?;
    let mut report = Report::new("reduct", F::SPEC, Mode::Exhaustive);
    report.samples = r.affine_vertices as u64;
    if !r.passed() {
        report.fail(format!("{r:?}"));
    }
    report.detail("affine_vertices", r.affine_vertices);
    report.detail("classes", r.classes);
    report.detail("class_size", r.class_size);
    Ok(report)
}

/// The lifted component through `(v0, 0)` for `ℓ^U` on `H3(F)`: its order,
/// fibers and local isomorphism at every vertex.
pub fn verify_component<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let graph = projective_graph::<F>(cfg.cap)?;
    check_component_size(&graph, cfg.cap)?;
    let ell = QuotientVoltage::<F>::new();
    let root = graph.id_of(&base_vertex()).expect("v0 is a vertex");
    let comp = component_of(&ell, &graph, root, NElement::zero(), cfg.cap)?;
    let expected_fiber = F::ORDER.pow(6);
    let mut report = Report::new("component", F::SPEC, Mode::Exhaustive);
    report.samples = comp.order() as u64;
    if comp.order() != graph.order() * expected_fiber {
        report.fail(format!(
            "component has {} vertices, expected {}",
            comp.order(),
            graph.order() * expected_fiber
        ));
    }
    if comp.fiber_sizes.len() != graph.order() || comp.uniform_fiber_size() != Some(expected_fiber)
    {
        report.fail("fibers are not all of size |F|^6");
    }
    let local = verify_local_isomorphism(&ell, &graph, &comp, 0..comp.order());
    for &x in local.failures.iter().take(4) {
        report.violation(
            Witness::new("projection is not a local isomorphism here")
                .walk(&[graph.vertex(comp.base[x])]),
        );
    }
    report.detail("vertices", comp.order());
    report.detail("edges", comp.graph.edges().count());
    report.detail("fiber_size", comp.uniform_fiber_size());
    report.detail("local_isomorphism_checked", local.checked);
    Ok(report)
}

/// Refuses lifts whose component, `|H3(F)|·|F|⁶` vertices, exceeds `cap`.
pub fn check_component_size<F: Field>(graph: &IncidenceGraph<F>, cap: usize) -> Result<()> {
    let needed = graph.order() as u64 * (F::ORDER as u64).pow(6);
    if needed > cap as u64 {
        return Err(crate::Error::CapExceeded {
            what: format!("lifted component over {}", F::SPEC),
            needed,
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Over larger fields the fiber above a base vertex `b` is the coset
/// `t_b + M`, where `t_b` is the tree voltage of `b` and `M` the cycle
/// space. For sampled `b` this enumerates the coset in `N`, counts its
/// elements, and checks that random walks from the root to `b` end in it.
pub fn certify_fibers<F: Field>(
    graph: &IncidenceGraph<F>,
    cs: &CycleSpace<F>,
    bases: usize,
    walks_per_base: usize,
    seed: u64,
) -> Report {
    let ell = SymmetricVoltage::<F>::new();
    let mut report = Report::new("fibers", F::SPEC, Mode::Sample);
    let m_basis: Vec<SymTensor<F>> = cs
        .span
        .basis()
        .iter()
        .map(|&b| SymTensor::from_f2(b))
        .collect();
    let expected = 1usize << cs.dim_mod_u();
    let mut rng = block_rng(seed, 1);
    for _ in 0..bases {
        let b = rng.gen_range(0..graph.order());
        let tb = cs.tree.voltage[b];
        // every F2-combination of the basis, projected to N
        let mut coset = std::collections::HashSet::with_capacity(2 * expected);
        for mask in 0u64..(1 << m_basis.len()) {
            let mut s = tb;
            for (i, m) in m_basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s += *m;
                }
            }
            coset.insert(NElement::project(&s));
        }
        report.samples += 1;
        if coset.len() != expected {
            report.fail(format!(
                "fiber above vertex {b} has {} elements, expected {expected}",
                coset.len()
            ));
        }
        for _ in 0..walks_per_base {
            let mut walk = vec![cs.root];
            for _ in 0..rng.gen_range(1..8) {
                let ns = graph.neighbors(*walk.last().expect("nonempty"));
                walk.push(ns[rng.gen_range(0..ns.len())]);
            }
            let end = *walk.last().expect("nonempty");
            // continue to b through the tree: end -> root -> b
            let vs: Vec<_> = walk.iter().map(|&i| graph.vertex(i)).collect();
            let closed = path_voltage(&ell, &vs).expect("walk") + cs.tree.voltage[end];
            let tag = NElement::project(&(closed + tb));
            if !coset.contains(&tag) || !cs.span.contains(closed.to_f2()) {
                report.fail(format!(
                    "walk to vertex {b} ends outside the predicted fiber"
                ));
            }
        }
    }
    report.detail("fiber_size", expected);
    report.detail("base_vertices", bases);
    report.detail("walks_per_base", walks_per_base);
    report
}

/// Composite check of the cover: reductivity, triangles, cycle space, and
/// the component (explicitly over GF(2), via fibers over GF(4)).
pub fn verify_main_theorem<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let mut report = Report::new("main-theorem", F::SPEC, cfg.mode);
    let lemma_cfg = if F::ORDER > 2 {
        CheckConfig {
            mode: Mode::Sample,
            ..*cfg
        }
    } else {
        *cfg
    };
    report.absorb(super::cycles::verify_reductive::<F>(&lemma_cfg)?);
    report.absorb(super::cycles::verify_triangles::<F>(&lemma_cfg)?);

    let span_cfg = if F::ORDER <= 8 {
        CheckConfig {
            mode: Mode::Exhaustive,
            ..*cfg
        }
    } else {
        *cfg
    };
    let graph = projective_graph::<F>(cfg.cap)?;
    let cs = cycle_space(&graph, &span_cfg);
    report.absorb(cycle_span_report(&cs));
    if F::ORDER <= MAX_CACHED_FIELD_ORDER {
        report.absorb(verify_diameter::<F>(&CheckConfig {
            mode: Mode::Exhaustive,
            ..*cfg
        })?);
        report.absorb(verify_reduct::<F>(cfg)?);
    }
    match F::ORDER {
        2 => report.absorb(verify_component::<F>(cfg)?),
        4 => report.absorb(certify_fibers(&graph, &cs, 10, 20, cfg.seed)),
        _ => report.detail("component", "covered by the cycle space only"),
    }
    report.detail("expected_fiber_size", F::ORDER.pow(6));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf4};

    #[test]
    fn gf2_cycle_space_is_w2() {
        let g = projective_graph::<Gf2>(1 << 20).unwrap();
        let cs = cycle_space(&g, &CheckConfig::exhaustive());
        assert_eq!(cs.dim_mod_u(), 6);
        assert!(cs.equals_w2_plus_u());
        assert_eq!(cs.generators, 1680 - 119);
        assert_eq!(cs.rejected, 0);
    }

    #[test]
    fn bilinear_pass_agrees_with_generic_streaming() {
        fn check<F: Field>() {
            use crate::voltage::cycle_span;
            let g = projective_graph::<F>(1 << 20).unwrap();
            let fast = cycle_space(&g, &CheckConfig::exhaustive());
            let root = g.id_of(&base_vertex()).unwrap();
            let slow = cycle_span(
                &SymmetricVoltage::<F>::new(),
                &g,
                root,
                &[big_u::<F>().to_f2()],
                None,
                in_w2_plus_u,
            );
            assert_eq!(fast.generators, slow.generators);
            assert_eq!(fast.rejected, slow.rejected);
            assert!(fast.span.is_subspace_of(&slow.span) && slow.span.is_subspace_of(&fast.span));
        }
        check::<Gf2>();
        check::<Gf4>();
    }

    #[test]
    fn gf2_component() {
        let r = verify_component::<Gf2>(&CheckConfig::exhaustive()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["vertices"], 7680);
        assert_eq!(r.details["edges"], 107520);
        assert_eq!(r.details["fiber_size"], 64);
    }

    #[test]
    fn gf2_component_respects_cap() {
        let cfg = CheckConfig {
            cap: 1000,
            ..CheckConfig::exhaustive()
        };
        assert!(verify_component::<Gf2>(&cfg).is_err());
    }

    #[test]
    fn gf4_sampled_span_and_fibers() {
        let g = projective_graph::<Gf4>(1 << 20).unwrap();
        let cs = cycle_space(&g, &CheckConfig::sampled(3000, 4));
        assert_eq!(cs.dim_mod_u(), 12);
        let r = certify_fibers(&g, &cs, 2, 5, 1);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["fiber_size"], 4096);
    }

    #[test]
    fn gf2_main_theorem() {
        let r = verify_main_theorem::<Gf2>(&CheckConfig::exhaustive()).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}
