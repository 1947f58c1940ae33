//! Four-dimensional linear algebra over GF(2^k).
//!
//! Groups act on the right: vectors are rows and `v^g = v·M_g`, so the matrix
//! of a product `gh` is `M_g·M_h`. Covectors transform by the inverse
//! transpose, which keeps `f^g(v^g) = f(v)`.

#![allow(clippy::needless_range_loop)]

pub mod f2;

use std::ops::{Add, AddAssign};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;

/// Number of transvections multiplied together by [`random_sl4`].
pub const TRANSVECTIONS_PER_SAMPLE: usize = 20;

macro_rules! four_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
        pub struct $name<F>(pub [F; 4]);

        impl<F: Field> $name<F> {
            pub fn zero() -> Self {
                Self([F::ZERO; 4])
            }

            /// The `i`-th standard basis element, 0-based.
            pub fn basis(i: usize) -> Self {
                let mut c = [F::ZERO; 4];
                c[i] = F::ONE;
                Self(c)
            }

            pub fn from_bits(bits: [u8; 4]) -> crate::Result<Self> {
                let mut c = [F::ZERO; 4];
                for (slot, b) in c.iter_mut().zip(bits) {
                    *slot = F::from_bits(b)?;
                }
                Ok(Self(c))
            }

            pub fn bits(&self) -> [u8; 4] {
                self.0.map(|c| c.bits())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|c| c.is_zero())
            }

            pub fn scale(&self, s: F) -> Self {
                Self(self.0.map(|c| c * s))
            }

            /// Dense index in `0..q^4`. Numeric order equals lexicographic
            /// order of the coordinates.
            pub fn code(&self) -> usize {
                self.0
                    .iter()
                    .fold(0usize, |acc, c| (acc << F::DEGREE) | c.bits() as usize)
            }

            pub fn from_code(code: usize) -> Self {
                let mask = F::ORDER - 1;
                let mut c = [F::ZERO; 4];
                for (i, slot) in c.iter_mut().enumerate() {
                    let shift = F::DEGREE * (3 - i);
                    *slot = F::from_bits(((code >> shift) & mask) as u8).expect("masked");
                }
                Self(c)
            }

            /// Rescales so that the first nonzero coordinate is one. The zero
            /// vector is returned unchanged.
            pub fn normalized(&self) -> Self {
                match self.0.iter().find(|c| !c.is_zero()) {
                    Some(lead) => self.scale(lead.inv().expect("nonzero")),
                    None => *self,
                }
            }

            pub fn is_normalized(&self) -> bool {
                matches!(self.0.iter().find(|c| !c.is_zero()), Some(c) if *c == F::ONE)
            }

            pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Self([F::random(rng), F::random(rng), F::random(rng), F::random(rng)])
            }

            pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
                loop {
                    let v = Self::random(rng);
                    if !v.is_zero() {
                        return v;
                    }
                }
            }
        }

        impl<F: Field> Add for $name<F> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self([
                    self.0[0] + rhs.0[0],
                    self.0[1] + rhs.0[1],
                    self.0[2] + rhs.0[2],
                    self.0[3] + rhs.0[3],
                ])
            }
        }

        impl<F: Field> AddAssign for $name<F> {
            fn add_assign(&mut self, rhs: Self) {
                *self = *self + rhs;
            }
        }
    };
}

four_vector!(
    Vector,
    "An element of `V = F^4` in coordinates over `e1..e4`."
);
four_vector!(
    Covector,
    "An element of `V*` in coordinates over the dual basis `f1..f4`."
);

impl<F: Field> Vector<F> {
    /// The image `v·M` under the right action.
    pub fn act(&self, m: &Matrix4<F>) -> Self {
        let mut out = [F::ZERO; 4];
        for (i, vi) in self.0.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, mij) in out.iter_mut().zip(m.0[i]) {
                *o += *vi * mij;
            }
        }
        Vector(out)
    }
}

impl<F: Field> Covector<F> {
    #[inline]
    pub fn eval(&self, v: &Vector<F>) -> F {
        self.0[0] * v.0[0] + self.0[1] * v.0[1] + self.0[2] * v.0[2] + self.0[3] * v.0[3]
    }

    /// The image under `g`, given the dual matrix `(M_g^-1)^T` from
    /// [`Matrix4::dual`].
    pub fn act(&self, dual: &Matrix4<F>) -> Self {
        Covector(Vector(self.0).act(dual).0)
    }
}

/// `f(v) = Σ fᵢ vᵢ`.
pub fn eval<F: Field>(f: &Covector<F>, v: &Vector<F>) -> F {
    f.eval(v)
}

/// A 4x4 matrix; row `i` is the image of `e_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Matrix4<F>(pub [[F; 4]; 4]);

impl<F: Field> Matrix4<F> {
    pub fn identity() -> Self {
        Self::diag([F::ONE; 4])
    }

    pub fn diag(d: [F; 4]) -> Self {
        let mut m = [[F::ZERO; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        Matrix4(m)
    }

    pub fn from_rows(rows: [Vector<F>; 4]) -> Self {
        Matrix4(rows.map(|r| r.0))
    }

    /// Identity plus `lambda` at position `(i, j)`, `i != j`: maps `e_i` to
    /// `e_i + lambda e_j`.
    pub fn transvection(i: usize, j: usize, lambda: F) -> Self {
        assert_ne!(i, j, "transvection needs an off-diagonal position");
        let mut m = Self::identity();
        m.0[i][j] = lambda;
        m
    }

    pub fn row(&self, i: usize) -> Vector<F> {
        Vector(self.0[i])
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[F::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                t[j][i] = self.0[i][j];
            }
        }
        Matrix4(t)
    }

    /// Matrix product `self · rhs`; as group elements, "first self, then rhs".
    pub fn mul(&self, rhs: &Self) -> Self {
        Matrix4(self.0.map(|r| Vector(r).act(rhs).0))
    }

    pub fn det(&self) -> F {
        let mut m = self.0;
        let mut det = F::ONE;
        for col in 0..4 {
            let Some(p) = (col..4).find(|&r| !m[r][col].is_zero()) else {
                return F::ZERO;
            };
            // row swaps flip the sign, which is invisible in characteristic 2
            m.swap(col, p);
            let pivot = m[col][col];
            det *= pivot;
            let pinv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..4 {
                let factor = m[r][col] * pinv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..4 {
                    let sub = factor * m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let p = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let pinv = a[col][col].inv().expect("nonzero pivot");
            for c in 0..4 {
                a[col][c] *= pinv;
                inv[col][c] *= pinv;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col];
                for c in 0..4 {
                    let (sa, si) = (factor * a[col][c], factor * inv[col][c]);
                    a[r][c] -= sa;
                    inv[r][c] -= si;
                }
            }
        }
        Some(Matrix4(inv))
    }

    /// `(M^-1)^T`, the matrix by which covectors transform.
    pub fn dual(&self) -> Option<Self> {
        self.inverse().map(|m| m.transpose())
    }

    pub fn is_special(&self) -> bool {
        self.det() == F::ONE
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Matrix4([(); 4].map(|_| Vector::<F>::random(rng).0))
    }
}

/// Basis of the common null space `{v : f(v) = 0 for all f in fs}`.
pub fn kernel<F: Field>(fs: &[Covector<F>]) -> Vec<Vector<F>> {
    let rows: Vec<[F; 4]> = fs.iter().map(|f| f.0).collect();
    nullspace(&rows).into_iter().map(Vector).collect()
}

/// Basis of the annihilator `{f : f(v) = 0 for all v in vs}`.
pub fn annihilator<F: Field>(vs: &[Vector<F>]) -> Vec<Covector<F>> {
    let rows: Vec<[F; 4]> = vs.iter().map(|v| v.0).collect();
    nullspace(&rows).into_iter().map(Covector).collect()
}

/// Rank of a list of covectors (or of any list of 4-tuples).
pub fn rank<F: Field>(rows: &[[F; 4]]) -> usize {
    4 - nullspace(rows).len()
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<F: Field>(m: &mut [[F; 4]]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pinv = m[r][col].inv().expect("nonzero pivot");
        for c in 0..4 {
            m[r][c] *= pinv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col];
                for c in 0..4 {
                    let sub = factor * m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Solutions `x` of `Σ_j row[j]·x[j] = 0` for every row.
pub fn nullspace<F: Field>(rows: &[[F; 4]]) -> Vec<[F; 4]> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..4).filter(|c| !pivots.contains(c)) {
        let mut x = [F::ZERO; 4];
        x[free] = F::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[r][free];
        }
        basis.push(x);
    }
    basis
}

/// Uniform random element of the span of `basis`.
pub fn random_combination<F: Field, R: Rng + ?Sized, T>(basis: &[T], rng: &mut R) -> T
where
    T: Copy + Add<Output = T> + Default + Scalable<F>,
{
    basis
        .iter()
        .fold(T::default(), |acc, b| acc + b.scaled(F::random(rng)))
}

/// Scalar multiplication, for generic code over vectors and covectors.
pub trait Scalable<F> {
    fn scaled(&self, s: F) -> Self;
}

impl<F: Field> Scalable<F> for Vector<F> {
    fn scaled(&self, s: F) -> Self {
        self.scale(s)
    }
}

impl<F: Field> Scalable<F> for Covector<F> {
    fn scaled(&self, s: F) -> Self {
        self.scale(s)
    }
}

/// A product of [`TRANSVECTIONS_PER_SAMPLE`] random transvections with
/// nonzero off-diagonal entries; determinant one by construction.
pub fn random_sl4<F: Field, R: Rng + ?Sized>(rng: &mut R) -> Matrix4<F> {
    let mut m = Matrix4::identity();
    for _ in 0..TRANSVECTIONS_PER_SAMPLE {
        let i = rng.gen_range(0..4);
        let mut j = rng.gen_range(0..3);
        if j >= i {
            j += 1;
        }
        m = m.mul(&Matrix4::transvection(i, j, F::random_nonzero(rng)));
    }
    m
}

pub fn random_sl4_seeded<F: Field>(seed: u64) -> Matrix4<F> {
    random_sl4(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// A uniformly random invertible matrix (rejection sampling).
pub fn random_gl4<F: Field, R: Rng + ?Sized>(rng: &mut R) -> Matrix4<F> {
    loop {
        let m = Matrix4::<F>::random(rng);
        if !m.det().is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf16, Gf2, Gf4, Gf8};
    use std::collections::HashSet;

    fn e<F: Field>(i: usize) -> Vector<F> {
        Vector::basis(i)
    }

    fn f<F: Field>(i: usize) -> Covector<F> {
        Covector::basis(i)
    }

    #[test]
    fn dual_basis_evaluation() {
        assert_eq!(f::<Gf4>(0).eval(&e(0)), Gf4::ONE);
        assert_eq!(f::<Gf4>(2).eval(&e(0)), Gf4::ZERO);
        for lambda in Gf8::elements() {
            let h = f::<Gf8>(0) + f(3);
            let v = e::<Gf8>(2) + e(1).scale(lambda);
            assert_eq!(h.eval(&v), Gf8::ZERO);
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&[f::<Gf4>(0), f(1), f(2)]);
        assert_eq!(k, vec![e(3)]);
        assert_eq!(kernel::<Gf4>(&[]).len(), 4);
    }

    fn rank_nullity<F: Field>(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 0..6 {
            for _ in 0..50 {
                let fs: Vec<Covector<F>> = (0..n).map(|_| Covector::random(&mut rng)).collect();
                let k = kernel(&fs);
                let rows: Vec<[F; 4]> = fs.iter().map(|f| f.0).collect();
                assert_eq!(rank(&rows) + k.len(), 4);
                for v in &k {
                    assert!(!v.is_zero());
                    assert!(fs.iter().all(|f| f.eval(v).is_zero()));
                }
                // the basis is independent
                let kr: Vec<[F; 4]> = k.iter().map(|v| v.0).collect();
                assert_eq!(rank(&kr), k.len());
            }
        }
    }

    #[test]
    fn rank_plus_nullity_is_four() {
        rank_nullity::<Gf2>(1);
        rank_nullity::<Gf4>(2);
        rank_nullity::<Gf16>(3);
    }

    #[test]
    fn three_independent_covectors_have_line_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 100 {
            let fs: Vec<Covector<Gf8>> = (0..3).map(|_| Covector::random(&mut rng)).collect();
            let rows: Vec<[Gf8; 4]> = fs.iter().map(|f| f.0).collect();
            if rank(&rows) == 3 {
                assert_eq!(kernel(&fs).len(), 1);
                seen += 1;
            }
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix4::<Gf4>::identity().det(), Gf4::ONE);
        for l in Gf16::elements() {
            let d = Matrix4::diag([l, Gf16::ONE, Gf16::ONE, Gf16::ONE]);
            assert_eq!(d.det(), l);
        }
        let swap = Matrix4::from_rows([e::<Gf4>(1), e(0), e(2), e(3)]);
        assert_eq!(swap.det(), Gf4::ONE);
    }

    // Leibniz expansion over all 24 permutations; signs vanish in char 2.
    fn leibniz<F: Field>(m: &Matrix4<F>) -> F {
        let mut total = F::ZERO;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                        if distinct {
                            total += m.0[0][a] * m.0[1][b] * m.0[2][c] * m.0[3][d];
                        }
                    }
                }
            }
        }
        total
    }

    #[test]
    fn det_matches_leibniz_and_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let a = Matrix4::<Gf8>::random(&mut rng);
            let b = Matrix4::<Gf8>::random(&mut rng);
            assert_eq!(a.det(), leibniz(&a));
            assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }
    }

    #[test]
    fn inverse_and_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let m = random_gl4::<Gf16, _>(&mut rng);
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Matrix4::identity());
            let dual = m.dual().unwrap();
            let v = Vector::random(&mut rng);
            let h = Covector::random(&mut rng);
            assert_eq!(h.act(&dual).eval(&v.act(&m)), h.eval(&v));
        }
        let singular = Matrix4::from_rows([e::<Gf4>(0), e(0), e(2), e(3)]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn random_sl4_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut distinct = HashSet::new();
        for _ in 0..100 {
            let g = random_sl4::<Gf2, _>(&mut rng);
            assert_eq!(g.det(), Gf2::ONE);
            distinct.insert(g);
        }
        assert!(distinct.len() >= 50, "{}", distinct.len());
        assert_eq!(random_sl4_seeded::<Gf4>(11), random_sl4_seeded::<Gf4>(11));
        for s in 0..20 {
            assert!(random_sl4_seeded::<Gf16>(s).is_special());
        }
    }

    #[test]
    fn codes_are_lexicographic() {
        let mut prev: Option<Vector<Gf4>> = None;
        for c in 0..256 {
            let v = Vector::<Gf4>::from_code(c);
            assert_eq!(v.code(), c);
            if let Some(p) = prev {
                assert!(p < v);
            }
            prev = Some(v);
        }
    }

    #[test]
    fn normalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let v = Vector::<Gf8>::random_nonzero(&mut rng);
            let n = v.normalized();
            assert!(n.is_normalized());
            let s = Gf8::random_nonzero(&mut rng);
            assert_eq!(v.scale(s).normalized(), n);
        }
    }
}
