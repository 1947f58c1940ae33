//! The extension `H` of `SL4(F)` by `M`, restricted to the transvections
//! `A = {A_x : x ∈ ⟨1, α⟩}`.
//!
//! Writing `[x, m]` for `(A_x, λ(A_x) + m)` with `m ∈ M ≅ W⁽²⁾`, the product is
//! `[x, m][y, n] = [x + y, xy·w5² + m^{A_y} + n]`. A splitting of `H` over `A`
//! would be a map `c: F -> M` making `{[x, c(x)]}` a subgroup; the systems
//! below show no such map exists.

use rand::Rng;
use serde::Serialize;

use super::theorem::{cycle_space, projective_graph};
use super::{ax_matrix, base_vertex, subgroup_f, u_vertex, v_x, SymmetricVoltage};
use crate::field::Field;
use crate::linalg::f2::{AffineSolution, AffineSystemF2, BitVec, F2Span};
use crate::linalg::{random_sl4, Matrix4};
use crate::multilinear::{act_s2, big_u, InducedAction, NElement, SymTensor};
use crate::report::{block_rng, CheckConfig, Mode, Report, Witness};
use crate::voltage::{cocycle_value, lambda_along, lambda_of, ExtensionElement};
use crate::{Error, Result};

fn sq<F: Field>(i: usize) -> SymTensor<F> {
    SymTensor::monomial(i, i)
}

/// `w5²`.
pub fn w5_squared<F: Field>() -> SymTensor<F> {
    sq(4)
}

/// `λ(A_x)`, the voltage of the path `v0^{A_x} = v_x → u → v0`.
pub fn lambda_ax<F: Field>(x: F) -> SymTensor<F> {
    let g = ax_matrix(x);
    let image = base_vertex::<F>().act(&g, &g.dual().expect("A_x is invertible"));
    debug_assert_eq!(image, v_x(x));
    lambda_along(
        &SymmetricVoltage::new(),
        &[image, u_vertex(), base_vertex()],
    )
    .expect("v_x ~ u ~ v0")
}

/// `f(A_x, A_y) = λ(A_{x+y}) + λ(A_x)^{A_y} + λ(A_y)`.
pub fn cocycle_f<F: Field>(x: F, y: F) -> SymTensor<F> {
    lambda_ax(x + y) + act_s2(&ax_matrix(y), &lambda_ax(x)) + lambda_ax(y)
}

/// The elements of `⟨1, α⟩` with `α` the field generator; `{0, 1}` over GF(2).
pub fn transvection_parameters<F: Field>() -> Vec<F> {
    match subgroup_f(F::generator()) {
        Ok(f) => f.to_vec(),
        Err(_) => vec![F::ZERO, F::ONE],
    }
}

/// F2-dimension of `M`.
pub fn m_dim<F: Field>() -> usize {
    6 * F::DEGREE
}

/// The element of `M` with F2-coordinates `bits` (k bits per `wᵢ²`).
pub fn m_element<F: Field>(bits: u64) -> SymTensor<F> {
    let mask = (F::ORDER - 1) as u64;
    (0..6).fold(SymTensor::zero(), |acc, i| {
        let c = F::from_bits(((bits >> (F::DEGREE * i)) & mask) as u8).expect("masked");
        acc + sq(i).scale(c)
    })
}

/// Inverse of [`m_element`]; `None` off `W⁽²⁾`.
pub fn m_coordinates<F: Field>(s: &SymTensor<F>) -> Option<u64> {
    s.is_diagonal().then(|| {
        (0..6).fold(0, |acc, i| {
            acc | (s.coeff(i, i).bits() as u64) << (F::DEGREE * i)
        })
    })
}

fn m_from_bitvec<F: Field>(x: &BitVec, offset: usize) -> SymTensor<F> {
    m_element(
        (0..m_dim::<F>())
            .filter(|&i| x.get(offset + i))
            .fold(0, |acc, i| acc | 1 << i),
    )
}

fn to_bitvec<F: Field>(s: &SymTensor<F>) -> BitVec {
    BitVec::from_u128(21 * F::DEGREE, s.to_f2())
}

/// F2-basis of `S = ⟨w1², w3² + w4², w5², w6²⟩_F`.
pub fn s_basis<F: Field>() -> Vec<SymTensor<F>> {
    [sq(0), sq(2) + sq(3), sq(4), sq(5)]
        .into_iter()
        .flat_map(|g| F::f2_basis().into_iter().map(move |b| g.scale(b)))
        .collect()
}

fn span_of<F: Field>(v: &[SymTensor<F>]) -> F2Span {
    F2Span::from_vectors(v.iter().map(SymTensor::to_f2))
}

/// `{m ∈ M : m^{A_x} + m = x² w5²}`, an affine subspace.
#[derive(Clone, Debug)]
pub struct Order2Space<F> {
    pub x: F,
    pub particular: SymTensor<F>,
    pub kernel: Vec<SymTensor<F>>,
}

impl<F: Field> Order2Space<F> {
    /// Whether the space is `w3² + S`.
    pub fn is_w3_squared_plus_s(&self) -> bool {
        let s = span_of(&s_basis::<F>());
        let kernel = span_of(&self.kernel);
        s.contains((self.particular + sq(2)).to_f2())
            && kernel.is_subspace_of(&s)
            && s.is_subspace_of(&kernel)
    }
}

/// Solves `[x, m]² = 1` for `m ∈ M`. The equation lives in `N`, so it is
/// posed in `S₂(W)` with one extra unknown for the multiple of `U`.
pub fn order2_solution_space<F: Field>(x: F) -> Result<Order2Space<F>> {
    if x.is_zero() {
        return Err(Error::Domain(
            "[0, m] has order two only for m ≠ 0 in M; x must be nonzero".into(),
        ));
    }
    let n = m_dim::<F>();
    let g = ax_matrix(x);
    let mut system = AffineSystemF2::new(n + 1);
    system.push_affine_map(21 * F::DEGREE, "order2", |v| {
        let m = m_from_bitvec::<F>(v, 0);
        let slack = if v.get(n) { big_u() } else { SymTensor::zero() };
        to_bitvec(&(act_s2(&g, &m) + m + w5_squared::<F>().scale(x * x) + slack))
    });
    match system.solve() {
        AffineSolution::Consistent { particular, kernel } => Ok(Order2Space {
            x,
            particular: m_from_bitvec(&particular, 0),
            kernel: kernel
                .iter()
                .map(|k| m_from_bitvec(k, 0))
                .filter(|k| !k.is_zero())
                .collect(),
        }),
        AffineSolution::Inconsistent(_) => Err(Error::Domain(format!(
            "no element [{x:?}, m] has order two"
        ))),
    }
}

/// Whether `A_y` maps `S` into itself for every `y` in the subgroup.
pub fn s_is_a_invariant<F: Field>() -> bool {
    let basis = s_basis::<F>();
    let s = span_of(&basis);
    transvection_parameters::<F>().into_iter().all(|y| {
        basis
            .iter()
            .all(|b| s.contains(act_s2(&ax_matrix(y), b).to_f2()))
    })
}

/// `[x, m]` as an element of `SL4(F) ⋉ N`.
pub fn bracket<F: Field>(x: F, m: &SymTensor<F>) -> ExtensionElement<F, NElement<F>> {
    ExtensionElement::new(ax_matrix(x), NElement::project(&(lambda_ax(x) + *m)))
        .expect("A_x is invertible")
}

/// The product `[x, m][y, n]` by the closed formula.
pub fn bracket_product<F: Field>(
    x: F,
    m: &SymTensor<F>,
    y: F,
    n: &SymTensor<F>,
) -> (F, SymTensor<F>) {
    (
        x + y,
        w5_squared::<F>().scale(x * y) + act_s2(&ax_matrix(y), m) + *n,
    )
}

fn same_element<F: Field>(
    a: &ExtensionElement<F, NElement<F>>,
    b: &ExtensionElement<F, NElement<F>>,
) -> bool {
    a.g == b.g && a.n == b.n
}

/// Compares the closed multiplication formula with the semidirect product
/// on random `m, n ∈ M`, for every pair `x, y` of the subgroup.
pub fn verify_multiplication_rule<F: Field>(trials: usize, seed: u64) -> Report {
    let mut report = Report::new("multiplication-rule", F::SPEC, Mode::Sample);
    let mut rng = block_rng(seed, 0);
    let xs = transvection_parameters::<F>();
    for _ in 0..trials {
        let (m, n) = (m_element::<F>(rng.gen()), m_element::<F>(rng.gen()));
        for &x in &xs {
            for &y in &xs {
                report.samples += 1;
                let composed = bracket(x, &m).compose(&bracket(y, &n)).expect("det 1");
                let (z, k) = bracket_product(x, &m, y, &n);
                if !same_element(&composed, &bracket(z, &k)) {
                    report.violation(
                        Witness::new(format!("[{x}, m][{y}, n] differs from the closed formula"))
                            .voltage(k.bits()),
                    );
                }
            }
        }
    }
    report
}

/// Unknowns `c(1), c(α), c(α+1) ∈ M` (6k bits each) followed by one `U`
/// slack per equation block.
#[derive(Clone, Debug)]
pub struct SplittingSystem<F> {
    pub alpha: F,
    pub system: AffineSystemF2,
}

impl<F: Field> SplittingSystem<F> {
    /// The conditions for `{[x, c(x)] : x ∈ ⟨1, α⟩}` to be a subgroup:
    /// `[x, c(x)]` has order two for `x = 1, α, α+1`, and
    /// `[1, c(1)][α, c(α)] = [α+1, c(α+1)]`.
    pub fn new(alpha: F) -> Result<Self> {
        Self::with_cocycle(alpha, |x, y| w5_squared::<F>().scale(x * y))
    }

    /// The same conditions for the product `[x, m][y, n] = [x + y,
    /// f(x, y) + m^{A_y} + n]` with an arbitrary cocycle `f`.
    pub fn with_cocycle(alpha: F, f: impl Fn(F, F) -> SymTensor<F>) -> Result<Self> {
        let [_, one, a, a1] = subgroup_f(alpha)?;
        let n = m_dim::<F>();
        let slack = |v: &BitVec, i: usize| {
            if v.get(3 * n + i) {
                big_u()
            } else {
                SymTensor::zero()
            }
        };
        let mut system = AffineSystemF2::new(3 * n + 4);
        for (block, x) in [one, a, a1].into_iter().enumerate() {
            let g = ax_matrix(x);
            let fxx = f(x, x);
            system.push_affine_map(21 * F::DEGREE, &format!("order2({x})"), |v| {
                let c = m_from_bitvec::<F>(v, block * n);
                to_bitvec(&(act_s2(&g, &c) + c + fxx + slack(v, block)))
            });
        }
        let (g, f1a) = (ax_matrix(a), f(one, a));
        system.push_affine_map(21 * F::DEGREE, &format!("product(1,{a})"), |v| {
            let (c1, ca, ca1) = (
                m_from_bitvec::<F>(v, 0),
                m_from_bitvec::<F>(v, n),
                m_from_bitvec::<F>(v, 2 * n),
            );
            to_bitvec(&(f1a + act_s2(&g, &c1) + ca + ca1 + slack(v, 3)))
        });
        Ok(SplittingSystem { alpha, system })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub alpha: u8,
    pub unknowns: usize,
    pub equations: usize,
    /// Labels of equations whose left sides cancel while the right sides sum to 1.
    pub rows: Vec<String>,
    pub verified: bool,
}

/// Solves the splitting system; `Ok(None)` means it was consistent.
pub fn splitting_certificate<F: Field>(alpha: F) -> Result<Option<CertificateReport>> {
    let s = SplittingSystem::new(alpha)?;
    Ok(match s.system.solve() {
        AffineSolution::Consistent { .. } => None,
        AffineSolution::Inconsistent(cert) => Some(CertificateReport {
            alpha: alpha.bits(),
            unknowns: s.system.unknowns(),
            equations: s.system.equations().len(),
            rows: cert
                .rows
                .iter()
                .map(|&r| s.system.label(r).to_string())
                .collect(),
            verified: cert.verify(&s.system),
        }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    pub pairs: u64,
    /// Number of `m ∈ M` with `[x, m]` of order two, for `x = 1, α, α+1`.
    pub order_two: [usize; 3],
    /// Pairs `(c(1), c(α))` with both elements of order two.
    pub both_order_two: u64,
    pub lifts: u64,
}

/// Tries every `(c(1), c(α)) ∈ M²`. Orders are decided by squaring actual
/// elements of `SL4(F) ⋉ N`; the product `[1, c(1)][α, c(α)]` is formed
/// from `λ` and the action on `N` without the closed formula.
pub fn brute_force_splitting<F: Field>(alpha: F) -> Result<BruteForce> {
    use rayon::prelude::*;
    let [_, one, a, a1] = subgroup_f(alpha)?;
    let n = m_dim::<F>();
    if n > 16 {
        return Err(Error::Usage(format!(
            "brute force over M² is limited to GF(4), not {}",
            F::SPEC
        )));
    }
    let size = 1u64 << n;
    let identity = ExtensionElement::<F, NElement<F>>::identity();
    let order_two = |x: F| -> Vec<bool> {
        (0..size)
            .map(|m| {
                let e = bracket(x, &m_element(m));
                same_element(&e.compose(&e).expect("det 1"), &identity)
            })
            .collect()
    };
    let (t1, ta, ta1) = (order_two(one), order_two(a), order_two(a1));
    assert_eq!(ax_matrix(one).mul(&ax_matrix(a)), ax_matrix(a1));

    // the N-part of [1, m][α, c] is (λ(A_1) + m)^{A_α} + λ(A_α) + c; the
    // candidate c(α+1) is that minus λ(A_{α+1})
    let act_a = InducedAction::new(&ax_matrix(a));
    let left: Vec<u128> = (0..size)
        .map(|m| {
            act_a
                .act_n(&NElement::project(&(lambda_ax(one) + m_element(m))))
                .expect("det 1")
                .rep()
                .to_f2()
        })
        .collect();
    let right: Vec<u128> = (0..size)
        .map(|c| (lambda_ax(a) + m_element(c) + lambda_ax(a1)).to_f2())
        .collect();
    let u = big_u::<F>().to_f2();
    let off = SymTensor::<F>::from_f2(u128::MAX).to_f2() & !m_element::<F>(size - 1).to_f2();
    let diagonal = |bits: u128| m_coordinates(&SymTensor::<F>::from_f2(bits)).expect("diagonal");

    let (both, lifts) = (0..size)
        .into_par_iter()
        .filter(|&m| t1[m as usize])
        .map(|m| {
            let (mut both, mut lifts) = (0u64, 0u64);
            for c in (0..size).filter(|&c| ta[c as usize]) {
                both += 1;
                let k = left[m as usize] ^ right[c as usize];
                let in_m = match k & off {
                    0 => Some(k),
                    r if r == u => Some(k ^ u),
                    _ => None,
                };
                if in_m.is_some_and(|k| ta1[diagonal(k) as usize]) {
                    lifts += 1;
                }
            }
            (both, lifts)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let count = |t: &[bool]| t.iter().filter(|&&b| b).count();
    Ok(BruteForce {
        pairs: size * size,
        order_two: [count(&t1), count(&ta), count(&ta1)],
        both_order_two: both,
        lifts,
    })
}

fn sym_witness<F: Field>(what: String, s: &SymTensor<F>) -> Witness {
    Witness::new(what).voltage(s.bits())
}

/// `ℓ(v_x, u) = w2w5 + x·w4w5` and `λ(A_x) = x·w4w5` for every `x ∈ F`.
pub fn verify_lambda<F: Field>() -> Report {
    let mut report = Report::new("lambda", F::SPEC, Mode::Exhaustive);
    let w4w5 = SymTensor::<F>::monomial(3, 4);
    for x in F::elements() {
        report.samples += 1;
        let dart = super::ell(&v_x(x), &u_vertex()).expect("adjacent");
        if dart != SymTensor::monomial(1, 4) + w4w5.scale(x) {
            report.violation(
                sym_witness(format!("ℓ(v_x, u) for x = {x}"), &dart).walk(&[v_x(x), u_vertex()]),
            );
        }
        let l = lambda_ax(x);
        if l != w4w5.scale(x) {
            report.violation(sym_witness(format!("λ(A_x) for x = {x}"), &l));
        }
    }
    report
}

/// `f(x, y) = xy·w5²` on the subgroup, with the symmetry and `f(0, y) = 0`
/// checks.
pub fn verify_cocycle_f<F: Field>() -> Report {
    let mut report = Report::new("cocycle-f", F::SPEC, Mode::Exhaustive);
    let xs = transvection_parameters::<F>();
    for &x in &xs {
        for &y in &xs {
            report.samples += 1;
            let f = cocycle_f(x, y);
            if f != w5_squared::<F>().scale(x * y) {
                report.violation(sym_witness(format!("f({x}, {y}) != xy·w5²"), &f));
            }
            if f != cocycle_f(y, x) {
                report.violation(sym_witness(format!("f({x}, {y}) != f({y}, {x})"), &f));
            }
            if x.is_zero() && !f.is_zero() {
                report.violation(sym_witness(format!("f(0, {y}) != 0"), &f));
            }
        }
    }
    report
}

/// Order-two elements `[x, m]` for nonzero `x` in the subgroup.
pub fn verify_order_two<F: Field>() -> Report {
    let mut report = Report::new("order-two", F::SPEC, Mode::Exhaustive);
    for x in transvection_parameters::<F>()
        .into_iter()
        .filter(|x| !x.is_zero())
    {
        report.samples += 1;
        match order2_solution_space(x) {
            Ok(space) if space.is_w3_squared_plus_s() => {}
            Ok(space) => report.violation(sym_witness(
                format!("solutions for x = {x} differ from w3² + S"),
                &space.particular,
            )),
            Err(e) => report.fail(e.to_string()),
        }
    }
    if !s_is_a_invariant::<F>() {
        report.fail("S is not A-invariant");
    }
    let mut with_w3 = span_of(&s_basis::<F>());
    if !with_w3.insert(sq::<F>(2).to_f2()) {
        report.fail("w3² lies in S");
    }
    report.detail("s_dimension", s_basis::<F>().len());
    report
}

/// The cocycle `λ(gh) + λ(g)^h + λ(h)` lies in `M` for random `g, h`, with
/// `λ` read off the BFS tree of `H3(F)` at `v0` and `M` the computed
/// cycle span.
pub fn stabilizer_closure_check<F: Field>(pairs: usize, cfg: &CheckConfig) -> Result<Report> {
    let graph = projective_graph::<F>(cfg.cap)?;
    let cs = cycle_space(&graph, &CheckConfig::exhaustive());
    let tv = crate::voltage::TreeVoltages {
        tree: cs.tree.tree.clone(),
        voltage: cs.tree.voltage.iter().map(NElement::project).collect(),
    };
    let v0 = base_vertex::<F>();
    let lambda = |g: &Matrix4<F>| -> Option<NElement<F>> {
        let image = v0.act(g, &g.dual().expect("invertible"));
        lambda_of(&tv, graph.id_of(&image).expect("vertex"))
    };
    let mut report = Report::new("closure", F::SPEC, Mode::Sample);
    let mut rng = block_rng(cfg.seed, 0);
    let identity = Matrix4::<F>::identity();
    for i in 0..=pairs {
        let (g, h) = if i == 0 {
            (identity, identity)
        } else {
            (random_sl4::<F, _>(&mut rng), random_sl4::<F, _>(&mut rng))
        };
        report.samples += 1;
        let (Some(lg), Some(lh), Some(lgh)) = (lambda(&g), lambda(&h), lambda(&g.mul(&h))) else {
            report.fail("v0^g outside the component of v0");
            continue;
        };
        let c = cocycle_value(&lg, &lh, &lgh, &InducedAction::new(&h))?;
        if !cs.span.contains(c.rep().to_f2()) || (i == 0 && !c.is_zero()) {
            report.violation(sym_witness(
                format!("cocycle value outside M for pair {i}"),
                c.rep(),
            ));
        }
    }
    Ok(report)
}

/// λ, the cocycle on `A`, the order-two elements and, over fields of order
/// at most 4, cocycle closure on random pairs of `SL4(F)`.
pub fn verify_cocycle<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    let mut report = Report::new("cocycle", F::SPEC, cfg.mode);
    report.absorb(verify_lambda::<F>());
    report.absorb(verify_cocycle_f::<F>());
    report.absorb(verify_order_two::<F>());
    if F::ORDER <= 4 {
        report.absorb(stabilizer_closure_check::<F>(100, cfg)?);
    } else {
        report.detail(
            "closure",
            "skipped: needs the BFS tree of H3(F), run for GF(2) and GF(4)",
        );
    }
    Ok(report)
}

/// The extension does not split over `A`. Needs `|F| > 2`.
pub fn verify_nonsplit<F: Field>(cfg: &CheckConfig) -> Result<Report> {
    if F::ORDER == 2 {
        return Ok(Report::not_applicable(
            "nonsplit",
            F::SPEC,
            cfg.mode,
            "needs an element outside GF(2)",
        ));
    }
    let mut report = Report::new("nonsplit", F::SPEC, cfg.mode);
    report.absorb(verify_multiplication_rule::<F>(20, cfg.seed));
    let mut alphas = vec![F::generator()];
    if F::ORDER == 16 {
        alphas.push(F::generator() * F::generator());
    }
    let mut certificates = Vec::new();
    for alpha in alphas {
        report.samples += 1;
        match splitting_certificate(alpha)? {
            Some(cert) if cert.verified => certificates.push(cert),
            Some(_) => report.fail(format!("certificate for α = {alpha} does not verify")),
            None => report.fail(format!("splitting system for α = {alpha} is consistent")),
        }
    }
    report.detail("certificates", certificates);
    if F::ORDER == 4 {
        let bf = brute_force_splitting(F::generator())?;
        report.samples += bf.pairs;
        if bf.lifts > 0 {
            report.violations += bf.lifts - 1;
            report.fail(format!("brute force found {} subgroup lifts", bf.lifts));
        }
        report.detail("brute_force", bf);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf16, Gf2, Gf4, Gf8};

    #[test]
    fn lambda_of_transvections() {
        assert!(verify_lambda::<Gf4>().passed());
        assert!(verify_lambda::<Gf8>().passed());
        assert!(verify_lambda::<Gf16>().passed());
    }

    #[test]
    fn cocycle_on_transvections() {
        // independent oracle: xy·w5² written out coefficient by coefficient
        for x in Gf16::elements() {
            for y in Gf16::elements() {
                let f = cocycle_f(x, y);
                assert_eq!(f.coeff(4, 4), x * y);
                assert_eq!(
                    f.0.iter().filter(|c| !c.is_zero()).count(),
                    usize::from(!(x * y).is_zero())
                );
            }
        }
        assert!(verify_cocycle_f::<Gf4>().passed());
        assert!(verify_cocycle_f::<Gf8>().passed());
    }

    #[test]
    fn m_coordinates_round_trip() {
        for bits in [0u64, 1, 0xabc, (1 << 24) - 1] {
            let s = m_element::<Gf16>(bits);
            assert_eq!(m_coordinates(&s), Some(bits));
        }
        assert_eq!(m_coordinates(&big_u::<Gf4>()), None);
    }

    #[test]
    fn order_two_space() {
        for x in transvection_parameters::<Gf8>().into_iter().skip(1) {
            let space = order2_solution_space(x).unwrap();
            assert!(space.is_w3_squared_plus_s());
            assert_eq!(space.kernel.len(), 4 * 3);
            // the particular solution really squares [x, m] to the identity
            let e = bracket(x, &space.particular);
            assert!(same_element(
                &e.compose(&e).unwrap(),
                &ExtensionElement::identity()
            ));
        }
        assert!(order2_solution_space(Gf4::ZERO).is_err());
        assert!(verify_order_two::<Gf4>().passed());
        assert!(verify_order_two::<Gf16>().passed());
    }

    #[test]
    fn w3_squared_is_not_in_s() {
        let mut s = span_of(&s_basis::<Gf4>());
        assert_eq!(s.dim(), 8);
        assert!(s.insert(sq::<Gf4>(2).to_f2()));
    }

    #[test]
    fn closed_formula_matches_semidirect_product() {
        assert!(verify_multiplication_rule::<Gf4>(10, 1).passed());
        assert!(verify_multiplication_rule::<Gf16>(5, 2).passed());
    }

    #[test]
    fn splitting_system_is_inconsistent() {
        let cert = splitting_certificate(Gf8::generator()).unwrap().unwrap();
        assert!(cert.verified);
        assert_eq!(cert.unknowns, 3 * 18 + 4);
        assert!(
            splitting_certificate(Gf16::new(0b100))
                .unwrap()
                .unwrap()
                .verified
        );
        assert!(splitting_certificate(Gf4::ONE).is_err());
    }

    #[test]
    fn trivial_cocycle_splits_and_coboundaries_do_not_help() {
        let alpha = Gf4::generator();
        let zero = SplittingSystem::with_cocycle(alpha, |_, _| SymTensor::zero()).unwrap();
        assert!(matches!(
            zero.system.solve(),
            AffineSolution::Consistent { .. }
        ));
        // f + δb with b(x) = x·w2²: (δb)(x, y) = b(x)^{A_y} + b(x) + b(y) + b(x+y)
        let b = |x: Gf4| sq::<Gf4>(1).scale(x);
        let shifted = SplittingSystem::with_cocycle(alpha, |x, y| {
            w5_squared::<Gf4>().scale(x * y) + act_s2(&ax_matrix(y), &b(x)) + b(x) + b(y) + b(x + y)
        })
        .unwrap();
        assert!(matches!(
            shifted.system.solve(),
            AffineSolution::Inconsistent(_)
        ));
    }

    #[test]
    fn gf4_brute_force_finds_no_lift() {
        let bf = brute_force_splitting(Gf4::generator()).unwrap();
        assert_eq!(bf.pairs, 4096 * 4096);
        // w3² + S has 2^8 elements
        assert_eq!(bf.order_two, [256, 256, 256]);
        assert_eq!(bf.both_order_two, 256 * 256);
        assert_eq!(bf.lifts, 0);
    }

    #[test]
    fn closure_over_gf2() {
        let r = stabilizer_closure_check::<Gf2>(100, &CheckConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.samples, 101);
    }

    #[test]
    fn nonsplit_reports() {
        assert_eq!(
            verify_nonsplit::<Gf2>(&CheckConfig::default())
                .unwrap()
                .status,
            crate::report::Status::NotApplicable
        );
        let r = verify_nonsplit::<Gf8>(&CheckConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
