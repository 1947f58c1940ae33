//! `W = Λ²V`, its dual `Λ²V*`, the duality `φ`, the symmetric square
//! `S₂(W)` and its quotient `N = S₂(W)/⟨U⟩_F2`.
//!
//! Bases are fixed once and for all:
//!
//! | slot | bivector      | dual slot  | φ-preimage |
//! |------|---------------|------------|------------|
//! | w1   | e1∧e2         | f1∧f2      | f3∧f4      |
//! | w2   | e1∧e3         | f1∧f3      | f2∧f4      |
//! | w3   | e1∧e4         | f1∧f4      | f2∧f3      |
//! | w4   | e2∧e3         | f2∧f3      | f1∧f4      |
//! | w5   | e2∧e4         | f2∧f4      | f1∧f3      |
//! | w6   | e3∧e4         | f3∧f4      | f1∧f2      |
//!
//! Monomials `wᵢwⱼ` (i <= j) of `S₂(W)` are ordered lexicographically by
//! `(i, j)`: `w1², w1w2, ..., w1w6, w2², ..., w6²`.

use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linalg::{Covector, Matrix4, Vector};
use crate::Error;

/// Index pairs of the basis bivectors, 0-based.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const MONOMIAL_COUNT: usize = 21;

/// `(i, j)` for every monomial slot, in storage order.
pub const MONOMIALS: [(usize, usize); MONOMIAL_COUNT] = {
    let mut out = [(0, 0); MONOMIAL_COUNT];
    let mut n = 0;
    let mut i = 0;
    while i < 6 {
        let mut j = i;
        while j < 6 {
            out[n] = (i, j);
            n += 1;
            j += 1;
        }
        i += 1;
    }
    out
};

/// Storage slot of the monomial `wᵢwⱼ` (0-based, any order of `i`, `j`).
#[inline]
pub const fn monomial_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    6 * i - i * (i + 1) / 2 + j
}

/// Slot of `e_a ∧ e_b` in [`PAIRS`], `a != b`.
pub fn pair_index(a: usize, b: usize) -> usize {
    let key = if a < b { (a, b) } else { (b, a) };
    PAIRS
        .iter()
        .position(|p| *p == key)
        .expect("distinct indices below 4")
}

fn bits_of<F: Field, const N: usize>(c: &[F; N]) -> Vec<u8> {
    c.iter().map(|x| x.bits()).collect()
}

fn from_bits_slice<F: Field, const N: usize>(bits: &[u8]) -> crate::Result<[F; N]> {
    if bits.len() != N {
        return Err(Error::Parse(format!(
            "expected {N} coordinates, got {}",
            bits.len()
        )));
    }
    let mut out = [F::ZERO; N];
    for (o, b) in out.iter_mut().zip(bits) {
        *o = F::from_bits(*b)?;
    }
    Ok(out)
}

/// An element of `W = Λ²V` over the basis `w1..w6`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Bivector<F>(pub [F; 6]);

/// An element of `Λ²V*` over `fᵢ∧fⱼ` in the same index order as [`PAIRS`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DualBivector<F>(pub [F; 6]);

impl<F: Field> Bivector<F> {
    pub fn basis(slot: usize) -> Self {
        let mut c = [F::ZERO; 6];
        c[slot] = F::ONE;
        Bivector(c)
    }

    pub fn scale(&self, s: F) -> Self {
        Bivector(self.0.map(|c| c * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn bits(&self) -> Vec<u8> {
        bits_of(&self.0)
    }

    pub fn from_bits(bits: &[u8]) -> crate::Result<Self> {
        from_bits_slice(bits).map(Bivector)
    }
}

impl<F: Field> DualBivector<F> {
    pub fn basis(slot: usize) -> Self {
        let mut c = [F::ZERO; 6];
        c[slot] = F::ONE;
        DualBivector(c)
    }

    pub fn scale(&self, s: F) -> Self {
        DualBivector(self.0.map(|c| c * s))
    }
}

macro_rules! impl_add {
    ($t:ident) => {
        impl<F: Field> Add for $t<F> {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                for (a, b) in self.0.iter_mut().zip(rhs.0) {
                    *a += b;
                }
                self
            }
        }

        impl<F: Field> AddAssign for $t<F> {
            fn add_assign(&mut self, rhs: Self) {
                for (a, b) in self.0.iter_mut().zip(rhs.0) {
                    *a += b;
                }
            }
        }
    };
}

impl_add!(Bivector);
impl_add!(DualBivector);
impl_add!(SymTensor);

/// `v ∧ w`; slot `(i, j)` holds `vᵢwⱼ + vⱼwᵢ` (signs vanish in char 2).
#[inline]
pub fn wedge<F: Field>(v: &Vector<F>, w: &Vector<F>) -> Bivector<F> {
    Bivector(PAIRS.map(|(i, j)| v.0[i] * w.0[j] - v.0[j] * w.0[i]))
}

#[inline]
pub fn wedge_dual<F: Field>(f: &Covector<F>, g: &Covector<F>) -> DualBivector<F> {
    DualBivector(PAIRS.map(|(i, j)| f.0[i] * g.0[j] - f.0[j] * g.0[i]))
}

/// `(a∧b∧c∧d)^χ` with `χ(e1∧e2∧e3∧e4) = 1`: the determinant of the rows.
pub fn wedge4<F: Field>(a: &Vector<F>, b: &Vector<F>, c: &Vector<F>, d: &Vector<F>) -> F {
    Matrix4::from_rows([*a, *b, *c, *d]).det()
}

/// The isomorphism `Λ²V* -> Λ²V`: `fᵢ∧fⱼ` goes to the complementary basis
/// bivector, which in the fixed slot order is a reversal.
#[inline]
pub fn phi<F: Field>(f: &DualBivector<F>) -> Bivector<F> {
    let c = f.0;
    Bivector([c[5], c[4], c[3], c[2], c[1], c[0]])
}

/// `B(f1∧f2, v1∧v2) = f1(v1)f2(v2) - f1(v2)f2(v1)`, by functional evaluation.
pub fn dual_pairing<F: Field>(
    f1: &Covector<F>,
    f2: &Covector<F>,
    v1: &Vector<F>,
    v2: &Vector<F>,
) -> F {
    f1.eval(v1) * f2.eval(v2) - f1.eval(v2) * f2.eval(v1)
}

/// `B(v1∧v2, ŵ) = (v1∧v2∧ŵ)^χ`, extended linearly in `ŵ` through
/// [`wedge4`] on basis vectors.
pub fn wedge_pairing<F: Field>(v1: &Vector<F>, v2: &Vector<F>, w: &Bivector<F>) -> F {
    PAIRS
        .iter()
        .zip(w.0)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j), c)| c * wedge4(v1, v2, &Vector::basis(i), &Vector::basis(j)))
        .fold(F::ZERO, |a, b| a + b)
}

/// Checks that the table form of [`phi`] intertwines the two pairings: on
/// every pair of basis elements, and on `random_pairs` random decomposable
/// pairs drawn from `rng`.
pub fn phi_consistency_check<F: Field, R: rand::Rng + ?Sized>(
    random_pairs: usize,
    rng: &mut R,
) -> bool {
    let basis_ok = PAIRS.iter().all(|&(a, b)| {
        let (fa, fb) = (Covector::<F>::basis(a), Covector::basis(b));
        let image = phi(&wedge_dual(&fa, &fb));
        PAIRS.iter().all(|&(c, d)| {
            let (vc, vd) = (Vector::basis(c), Vector::basis(d));
            dual_pairing(&fa, &fb, &vc, &vd) == wedge_pairing(&vc, &vd, &image)
        })
    });
    basis_ok
        && (0..random_pairs).all(|_| {
            let (f1, f2) = (Covector::<F>::random(rng), Covector::random(rng));
            let (v1, v2) = (Vector::random(rng), Vector::random(rng));
            dual_pairing(&f1, &f2, &v1, &v2) == wedge_pairing(&v1, &v2, &phi(&wedge_dual(&f1, &f2)))
        })
}

/// An element of `S₂(W)` over the monomials `wᵢwⱼ`, i <= j.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SymTensor<F>(pub [F; MONOMIAL_COUNT]);

impl<F: Field> SymTensor<F> {
    pub fn zero() -> Self {
        SymTensor([F::ZERO; MONOMIAL_COUNT])
    }

    /// The monomial `wᵢwⱼ` (0-based slots).
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut c = [F::ZERO; MONOMIAL_COUNT];
        c[monomial_index(i, j)] = F::ONE;
        SymTensor(c)
    }

    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.0[monomial_index(i, j)]
    }

    pub fn scale(&self, s: F) -> Self {
        SymTensor(self.0.map(|c| c * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Only `wᵢ²` monomials present, i.e. membership in `W⁽²⁾`.
    pub fn is_diagonal(&self) -> bool {
        MONOMIALS
            .iter()
            .zip(self.0)
            .all(|(&(i, j), c)| i == j || c.is_zero())
    }

    /// The diagonal coefficients `(μ1..μ6)` of `Σ μᵢ wᵢ²`.
    pub fn diagonal(&self) -> [F; 6] {
        [0, 1, 2, 3, 4, 5].map(|i| self.coeff(i, i))
    }

    pub fn from_diagonal(d: [F; 6]) -> Self {
        let mut s = Self::zero();
        for (i, c) in d.into_iter().enumerate() {
            s.0[monomial_index(i, i)] = c;
        }
        s
    }

    /// Scalar restriction to F2: coordinate `n` occupies bits
    /// `k·n .. k·n + k`.
    pub fn to_f2(&self) -> u128 {
        self.0.iter().enumerate().fold(0u128, |acc, (n, c)| {
            acc | (c.bits() as u128) << (F::DEGREE * n)
        })
    }

    pub fn from_f2(bits: u128) -> Self {
        let mask = (F::ORDER - 1) as u128;
        let mut c = [F::ZERO; MONOMIAL_COUNT];
        for (n, slot) in c.iter_mut().enumerate() {
            *slot = F::from_bits(((bits >> (F::DEGREE * n)) & mask) as u8).expect("masked");
        }
        SymTensor(c)
    }

    pub fn bits(&self) -> Vec<u8> {
        bits_of(&self.0)
    }

    pub fn from_bits(bits: &[u8]) -> crate::Result<Self> {
        from_bits_slice(bits).map(SymTensor)
    }
}

/// Number of F2 coordinates of `S₂(W)` over a field of degree `k`.
pub fn s2_f2_dim<F: Field>() -> usize {
    MONOMIAL_COUNT * F::DEGREE
}

/// The symmetric product `ab`: slot `(i, j)` gets `aᵢbⱼ + aⱼbᵢ` off the
/// diagonal and `aᵢbᵢ` on it.
#[inline]
pub fn sym_mul<F: Field>(a: &Bivector<F>, b: &Bivector<F>) -> SymTensor<F> {
    let mut out = [F::ZERO; MONOMIAL_COUNT];
    for (slot, &(i, j)) in out.iter_mut().zip(MONOMIALS.iter()) {
        *slot = if i == j {
            a.0[i] * b.0[i]
        } else {
            a.0[i] * b.0[j] + a.0[j] * b.0[i]
        };
    }
    SymTensor(out)
}

/// `a² = aa`; diagonal with entries `aᵢ²`.
pub fn square<F: Field>(a: &Bivector<F>) -> SymTensor<F> {
    sym_mul(a, a)
}

/// `Δ(w,x,y,z) = (w∧x)(y∧z) + (w∧y)(z∧x) + (w∧z)(x∧y)`.
pub fn delta<F: Field>(w: &Vector<F>, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> SymTensor<F> {
    sym_mul(&wedge(w, x), &wedge(y, z))
        + sym_mul(&wedge(w, y), &wedge(z, x))
        + sym_mul(&wedge(w, z), &wedge(x, y))
}

/// The `SL(V)`-invariant element `U = Δ(e1, e2, e3, e4) = w1w6 + w2w5 + w3w4`.
pub fn big_u<F: Field>() -> SymTensor<F> {
    SymTensor::monomial(0, 5) + SymTensor::monomial(1, 4) + SymTensor::monomial(2, 3)
}

pub fn in_w2<F: Field>(s: &SymTensor<F>) -> bool {
    s.is_diagonal()
}

/// Membership in the F2-space `W⁽²⁾ ⊕ ⟨U⟩`.
pub fn in_w2_plus_u<F: Field>(s: &SymTensor<F>) -> bool {
    in_w2(s) || in_w2(&(*s + big_u()))
}

/// A coset `{s, s + U}` of `⟨U⟩_F2` in `S₂(W)`, stored as its
/// lexicographically smaller member.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct NElement<F> {
    rep: SymTensor<F>,
}

impl<F: Field> NElement<F> {
    pub fn zero() -> Self {
        NElement {
            rep: SymTensor::zero(),
        }
    }

    /// The class of `s`.
    pub fn project(s: &SymTensor<F>) -> Self {
        let other = *s + big_u();
        NElement {
            rep: if other < *s { other } else { *s },
        }
    }

    pub fn rep(&self) -> &SymTensor<F> {
        &self.rep
    }

    /// Both members of the coset, canonical one first.
    pub fn lift(&self) -> [SymTensor<F>; 2] {
        [self.rep, self.rep + big_u()]
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Whether the class lies in the image of `W⁽²⁾`.
    pub fn in_m(&self) -> bool {
        in_w2_plus_u(&self.rep)
    }

    /// The member of the coset lying in `W⁽²⁾`, if any.
    pub fn w2_member(&self) -> Option<SymTensor<F>> {
        self.lift().into_iter().find(|s| s.is_diagonal())
    }
}

/// Projection `S₂(W) -> N`.
pub fn project_n<F: Field>(s: &SymTensor<F>) -> NElement<F> {
    NElement::project(s)
}

pub fn lift_n<F: Field>(n: &NElement<F>) -> [SymTensor<F>; 2] {
    n.lift()
}

impl<F: Field> Add for NElement<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        NElement::project(&(self.rep + rhs.rep))
    }
}

impl<F: Field> AddAssign for NElement<F> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

/// The action of one matrix on `W`, `S₂(W)` and (for determinant one) `N`,
/// with the images of the basis precomputed.
#[derive(Clone, Debug)]
pub struct InducedAction<F> {
    matrix: Matrix4<F>,
    det: F,
    w_images: [Bivector<F>; 6],
    monomial_images: [SymTensor<F>; MONOMIAL_COUNT],
}

impl<F: Field> InducedAction<F> {
    pub fn new(g: &Matrix4<F>) -> Self {
        let w_images = PAIRS.map(|(i, j)| wedge(&g.row(i), &g.row(j)));
        let monomial_images = MONOMIALS.map(|(i, j)| sym_mul(&w_images[i], &w_images[j]));
        InducedAction {
            matrix: *g,
            det: g.det(),
            w_images,
            monomial_images,
        }
    }

    pub fn matrix(&self) -> &Matrix4<F> {
        &self.matrix
    }

    pub fn det(&self) -> F {
        self.det
    }

    pub fn act_w(&self, a: &Bivector<F>) -> Bivector<F> {
        let mut out = Bivector::default();
        for (c, img) in a.0.iter().zip(&self.w_images) {
            if !c.is_zero() {
                out += img.scale(*c);
            }
        }
        out
    }

    pub fn act_s2(&self, s: &SymTensor<F>) -> SymTensor<F> {
        let mut out = SymTensor::zero();
        for (c, img) in s.0.iter().zip(&self.monomial_images) {
            if !c.is_zero() {
                out += img.scale(*c);
            }
        }
        out
    }

    /// The action on `N`; only defined when `U` is fixed, i.e. `det = 1`.
    pub fn act_n(&self, n: &NElement<F>) -> crate::Result<NElement<F>> {
        if self.det != F::ONE {
            return Err(Error::Domain(format!(
                "action on N needs determinant 1, got {:?}",
                self.det
            )));
        }
        Ok(NElement::project(&self.act_s2(n.rep())))
    }
}

pub fn act_w<F: Field>(g: &Matrix4<F>, a: &Bivector<F>) -> Bivector<F> {
    PAIRS
        .iter()
        .zip(a.0)
        .filter(|(_, c)| !c.is_zero())
        .fold(Bivector::default(), |acc, (&(i, j), c)| {
            acc + wedge(&g.row(i), &g.row(j)).scale(c)
        })
}

pub fn act_s2<F: Field>(g: &Matrix4<F>, s: &SymTensor<F>) -> SymTensor<F> {
    InducedAction::new(g).act_s2(s)
}

pub fn act_n<F: Field>(g: &Matrix4<F>, n: &NElement<F>) -> crate::Result<NElement<F>> {
    InducedAction::new(g).act_n(n)
}

/// Coordinates as bit values, for JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinates(pub Vec<u8>);

impl<F: Field> From<&Bivector<F>> for Coordinates {
    fn from(b: &Bivector<F>) -> Self {
        Coordinates(b.bits())
    }
}

impl<F: Field> From<&SymTensor<F>> for Coordinates {
    fn from(s: &SymTensor<F>) -> Self {
        Coordinates(s.bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf16, Gf2, Gf4, Gf8};
    use crate::linalg::{random_gl4, random_sl4};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e<F: Field>(i: usize) -> Vector<F> {
        Vector::basis(i)
    }

    fn w<F: Field>(slot: usize) -> Bivector<F> {
        Bivector::basis(slot)
    }

    #[test]
    fn monomial_index_enumerates_in_order() {
        for (n, &(i, j)) in MONOMIALS.iter().enumerate() {
            assert_eq!(monomial_index(i, j), n);
            assert_eq!(monomial_index(j, i), n);
        }
        assert_eq!(MONOMIALS[20], (5, 5));
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e::<Gf4>(0), &e(1)), w(0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = Vector::<Gf8>::random(&mut rng);
        assert!(wedge(&v, &v).is_zero());
        for l in Gf16::elements() {
            let got = wedge(&(e::<Gf16>(2) + e(1).scale(l)), &e(0));
            assert_eq!(got, w(1) + w(0).scale(l));
        }
    }

    #[test]
    fn wedge4_examples() {
        assert_eq!(wedge4(&e::<Gf4>(0), &e(1), &e(2), &e(3)), Gf4::ONE);
        assert_eq!(wedge4(&e::<Gf4>(1), &e(0), &e(2), &e(3)), Gf4::ONE);
        assert_eq!(wedge4(&e::<Gf4>(0), &e(0), &e(2), &e(3)), Gf4::ZERO);
    }

    #[test]
    fn phi_table() {
        // (f_a ∧ f_b)^φ for the six basis elements
        let expected = [
            ((2, 3), 0),
            ((1, 3), 1),
            ((1, 2), 2),
            ((0, 3), 3),
            ((0, 2), 4),
            ((0, 1), 5),
        ];
        for ((a, b), slot) in expected {
            let f = wedge_dual(&Covector::<Gf2>::basis(a), &Covector::basis(b));
            assert_eq!(phi(&f), w(slot), "f{}∧f{}", a + 1, b + 1);
        }
    }

    #[test]
    fn phi_consistency_all_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(phi_consistency_check::<Gf2, _>(200, &mut rng));
        assert!(phi_consistency_check::<Gf4, _>(200, &mut rng));
        assert!(phi_consistency_check::<Gf8, _>(200, &mut rng));
        assert!(phi_consistency_check::<Gf16, _>(200, &mut rng));
    }

    #[test]
    fn sym_mul_examples() {
        assert_eq!(sym_mul(&w::<Gf4>(0), &w(5)), SymTensor::monomial(0, 5));
        assert_eq!(
            sym_mul(&(w::<Gf4>(1) + w(2)), &w(1)),
            SymTensor::monomial(1, 1) + SymTensor::monomial(1, 2)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = Bivector::<Gf16>(std::array::from_fn(|_| Gf16::random(&mut rng)));
            let b = Bivector::<Gf16>(std::array::from_fn(|_| Gf16::random(&mut rng)));
            let l = Gf16::random(&mut rng);
            assert_eq!(sym_mul(&a, &b), sym_mul(&b, &a));
            assert_eq!(square(&(a + b)), square(&a) + square(&b));
            assert_eq!(square(&a.scale(l)), square(&a).scale(l * l));
            assert!(square(&a).is_diagonal());
        }
    }

    #[test]
    fn big_u_coordinates() {
        let u = big_u::<Gf4>();
        let expected =
            SymTensor::monomial(0, 5) + SymTensor::monomial(1, 4) + SymTensor::monomial(2, 3);
        assert_eq!(u, expected);
        assert!(!in_w2(&u));
        assert!(in_w2_plus_u(&u));
    }

    fn u_independent_of_basis<F: Field>(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = 0;
        while found < 50 {
            let m = random_gl4::<F, _>(&mut rng);
            let d = m.det();
            // rescale the first vector so the 4-tuple is unimodular
            let first = m.row(0).scale(d.inv().unwrap());
            let (x, y, z) = (m.row(1), m.row(2), m.row(3));
            assert_eq!(wedge4(&first, &x, &y, &z), F::ONE);
            assert_eq!(delta(&first, &x, &y, &z), big_u());
            found += 1;
        }
    }

    #[test]
    fn u_does_not_depend_on_the_basis() {
        u_independent_of_basis::<Gf2>(4);
        u_independent_of_basis::<Gf4>(5);
        u_independent_of_basis::<Gf8>(6);
        u_independent_of_basis::<Gf16>(7);
    }

    fn u_invariance<F: Field>(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let g = random_sl4::<F, _>(&mut rng);
            assert_eq!(act_s2(&g, &big_u()), big_u());
        }
        for _ in 0..20 {
            let g = random_gl4::<F, _>(&mut rng);
            assert_eq!(act_s2(&g, &big_u()), big_u().scale(g.det()));
        }
    }

    #[test]
    fn u_fixed_by_sl_and_scaled_by_det() {
        u_invariance::<Gf2>(8);
        u_invariance::<Gf4>(9);
        u_invariance::<Gf8>(10);
        u_invariance::<Gf16>(11);
        for l in Gf8::nonzero_elements() {
            let g = Matrix4::diag([l, Gf8::ONE, Gf8::ONE, Gf8::ONE]);
            assert_eq!(act_s2(&g, &big_u()), big_u().scale(l));
        }
    }

    #[test]
    fn induced_action_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let g = random_gl4::<Gf4, _>(&mut rng);
            let h = random_gl4::<Gf4, _>(&mut rng);
            let (v, x) = (Vector::random(&mut rng), Vector::random(&mut rng));
            assert_eq!(act_w(&g, &wedge(&v, &x)), wedge(&v.act(&g), &x.act(&g)));
            let a = wedge(&v, &x) + wedge(&Vector::random(&mut rng), &x);
            assert_eq!(InducedAction::new(&g).act_w(&a), act_w(&g, &a));
            // W⁽²⁾ is GL-invariant: (a²)^g = (a^g)²
            assert_eq!(act_s2(&g, &square(&a)), square(&act_w(&g, &a)));
            let s = sym_mul(&a, &wedge(&x, &Vector::random(&mut rng)));
            assert_eq!(act_s2(&g.mul(&h), &s), act_s2(&h, &act_s2(&g, &s)));
        }
    }

    #[test]
    fn n_projection() {
        let u = big_u::<Gf4>();
        assert_eq!(project_n(&SymTensor::zero()), project_n(&u));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let s = SymTensor::<Gf4>::from_f2(rng.gen::<u64>() as u128 & ((1 << 42) - 1));
            let t = SymTensor::<Gf4>::from_f2(rng.gen::<u64>() as u128 & ((1 << 42) - 1));
            let n = project_n(&s);
            assert_eq!(n, project_n(&(s + u)));
            assert_eq!(project_n(n.rep()), n);
            assert_eq!(project_n(&s) + project_n(&t), project_n(&(s + t)));
            assert!(lift_n(&n).contains(&s));
        }
    }

    #[test]
    fn n_cardinality_over_gf2() {
        // 2^21 tensors pair up into 2^20 cosets
        let mut reps = std::collections::HashSet::new();
        for bits in 0u128..(1 << 21) {
            reps.insert(project_n(&SymTensor::<Gf2>::from_f2(bits)));
        }
        assert_eq!(reps.len(), 1 << 20);
    }

    #[test]
    fn act_n_needs_special_matrix() {
        let g = Matrix4::diag([Gf4::new(2), Gf4::ONE, Gf4::ONE, Gf4::ONE]);
        assert!(act_n(&g, &NElement::zero()).is_err());
        assert!(act_n(&Matrix4::identity(), &NElement::<Gf4>::zero()).is_ok());
    }

    #[test]
    fn f2_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let s = SymTensor::<Gf16>(std::array::from_fn(|_| Gf16::random(&mut rng)));
            assert_eq!(SymTensor::from_f2(s.to_f2()), s);
        }
    }

    use rand::Rng;
}
