//! Arithmetic in the binary fields GF(2^k), 1 <= k <= 4.
//!
//! Elements are polynomial residues over F2 packed into the low `k` bits of a
//! byte, constant term in bit 0. The field is a type parameter, so mixing
//! elements of different fields is rejected at compile time. Use
//! [`with_field!`](crate::with_field) to dispatch on a runtime [`FieldSpec`].

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Description of one of the supported fields: extension degree and the
/// irreducible modulus (as a bit mask over F2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub k: u32,
    pub modulus: u32,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec {
        k: 1,
        modulus: 0b10,
    };
    pub const GF4: FieldSpec = FieldSpec {
        k: 2,
        modulus: 0b111,
    };
    pub const GF8: FieldSpec = FieldSpec {
        k: 3,
        modulus: 0b1011,
    };
    pub const GF16: FieldSpec = FieldSpec {
        k: 4,
        modulus: 0b10011,
    };

    pub const ALL: [FieldSpec; 4] = [Self::GF2, Self::GF4, Self::GF8, Self::GF16];

    pub fn from_degree(k: u32) -> Result<Self, Error> {
        match k {
            1 => Ok(Self::GF2),
            2 => Ok(Self::GF4),
            3 => Ok(Self::GF8),
            4 => Ok(Self::GF16),
            _ => Err(Error::Usage(format!(
                "unsupported extension degree {k} (expected 1..=4)"
            ))),
        }
    }

    /// Looks up the field with `q` elements.
    pub fn from_order(q: u32) -> Result<Self, Error> {
        match q {
            2 => Ok(Self::GF2),
            4 => Ok(Self::GF4),
            8 => Ok(Self::GF8),
            16 => Ok(Self::GF16),
            _ => Err(Error::Usage(format!(
                "unsupported field order {q} (expected 2, 4, 8 or 16)"
            ))),
        }
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    /// Trial division of the modulus by every polynomial of degree 1..k.
    pub fn modulus_is_irreducible(&self) -> bool {
        is_irreducible(self.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// Carry-less product of two polynomials over F2.
pub const fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    let mut i = 0;
    while i < 16 {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
        i += 1;
    }
    acc
}

pub const fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `m` in F2[x]. `m` must be nonzero.
pub const fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

pub fn is_irreducible(p: u32) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    // every polynomial of degree 1..d as a candidate divisor
    (2u32..(1 << d)).all(|q| poly_rem(p, q) != 0)
}

const fn modulus_for(k: u32) -> u32 {
    match k {
        1 => 0b10,
        2 => 0b111,
        3 => 0b1011,
        4 => 0b10011,
        _ => panic!("unsupported extension degree"),
    }
}

const fn build_mul_table(k: u32) -> [u8; 256] {
    let m = modulus_for(k);
    let size = 1u32 << k;
    let mut table = [0u8; 256];
    let mut a = 0;
    while a < size {
        let mut b = 0;
        while b < size {
            let p = clmul(a, b);
            // in GF(2) the product of two bits never needs reduction
            let r = if k == 1 { p } else { poly_rem(p, m) };
            table[((a << 4) | b) as usize] = r as u8;
            b += 1;
        }
        a += 1;
    }
    table
}

const fn build_inv_table(mul: &[u8; 256], size: usize) -> [u8; 16] {
    let mut table = [0u8; 16];
    let mut a = 1;
    while a < size {
        let mut b = 1;
        while mul[(a << 4) | b] != 1 {
            b += 1;
        }
        table[a] = b as u8;
        a += 1;
    }
    table
}

/// Common interface of the four supported fields.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + SubAssign
    + Mul<Output = Self>
    + MulAssign
    + Neg<Output = Self>
{
    const SPEC: FieldSpec;
    /// Number of elements.
    const ORDER: usize;
    /// Extension degree over F2.
    const DEGREE: usize;
    const ZERO: Self;
    const ONE: Self;

    fn from_bits(bits: u8) -> Result<Self, Error>;

    fn bits(self) -> u8;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    fn square(self) -> Self {
        self * self
    }

    /// Multiplicative inverse, computed as `a^(2^k - 2)`.
    fn inv(self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(self.pow(Self::ORDER as u32 - 2))
    }

    /// Elements in increasing bit order, zero first.
    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER as u8).map(|b| Self::from_bits(b).expect("in range"))
    }

    fn nonzero_elements() -> impl Iterator<Item = Self> {
        Self::elements().skip(1)
    }

    /// The powers `1, a, a^2, ..., a^(k-1)` of the class `a` of `x`: an
    /// F2-basis of the field.
    fn f2_basis() -> Vec<Self> {
        (0..Self::DEGREE)
            .map(|i| Self::from_bits(1 << i).expect("in range"))
            .collect()
    }

    /// The class of `x`; equals one in GF(2).
    fn generator() -> Self {
        if Self::DEGREE == 1 {
            Self::ONE
        } else {
            Self::from_bits(0b10).expect("in range")
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_bits(rng.gen_range(0..Self::ORDER) as u8).expect("in range")
    }

    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_bits(rng.gen_range(1..Self::ORDER) as u8).expect("in range")
    }
}

/// An element of GF(2^K).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf<const K: u32>(u8);

pub type Gf2 = Gf<1>;
pub type Gf4 = Gf<2>;
pub type Gf8 = Gf<3>;
pub type Gf16 = Gf<4>;

impl<const K: u32> Gf<K> {
    const MUL: [u8; 256] = build_mul_table(K);
    const INV: [u8; 16] = build_inv_table(&Self::MUL, 1 << K);
    const MASK: u8 = ((1u32 << K) - 1) as u8;

    pub fn new(bits: u8) -> Self {
        Self::from_bits(bits).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: u32> Field for Gf<K> {
    const SPEC: FieldSpec = FieldSpec {
        k: K,
        modulus: modulus_for(K),
    };
    const ORDER: usize = 1 << K;
    const DEGREE: usize = K as usize;
    const ZERO: Self = Gf(0);
    const ONE: Self = Gf(1);

    fn from_bits(bits: u8) -> Result<Self, Error> {
        if bits & !Self::MASK != 0 {
            return Err(Error::Usage(format!(
                "{bits:#b} is not an element of GF({})",
                1u32 << K
            )));
        }
        Ok(Gf(bits))
    }

    #[inline]
    fn bits(self) -> u8 {
        self.0
    }

    fn inv(self) -> Result<Self, Error> {
        if self.0 == 0 {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(Gf(Self::INV[self.0 as usize]))
    }
}

impl<const K: u32> fmt::Debug for Gf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl<const K: u32> fmt::Display for Gf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Addition and subtraction are both XOR in characteristic 2.
impl<const K: u32> Add for Gf<K> {
    type Output = Self;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add(self, rhs: Self) -> Self {
        Gf(self.0 ^ rhs.0)
    }
}

impl<const K: u32> AddAssign for Gf<K> {
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const K: u32> Sub for Gf<K> {
    type Output = Self;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn sub(self, rhs: Self) -> Self {
        Gf(self.0 ^ rhs.0)
    }
}

impl<const K: u32> SubAssign for Gf<K> {
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const K: u32> Neg for Gf<K> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self
    }
}

impl<const K: u32> Mul for Gf<K> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Gf(Self::MUL[((self.0 as usize) << 4) | rhs.0 as usize])
    }
}

impl<const K: u32> MulAssign for Gf<K> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// All elements of the field, zero first.
pub fn enumerate<F: Field>() -> Vec<F> {
    F::elements().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Shift-and-add multiplication, reducing after every shift. Independent of
    // the table construction above.
    fn slow_mul(spec: FieldSpec, a: u8, b: u8) -> u8 {
        let k = spec.k;
        let mut acc = 0u32;
        let mut cur = a as u32;
        for i in 0..k {
            if (b >> i) & 1 == 1 {
                acc ^= cur;
            }
            cur <<= 1;
            if k > 1 && cur & (1 << k) != 0 {
                cur ^= spec.modulus;
            }
        }
        acc as u8
    }

    fn check_against_slow<F: Field>() {
        for a in F::elements() {
            for b in F::elements() {
                assert_eq!(
                    (a * b).bits(),
                    slow_mul(F::SPEC, a.bits(), b.bits()),
                    "{a:?}*{b:?}"
                );
            }
        }
    }

    #[test]
    fn table_matches_shift_and_add() {
        check_against_slow::<Gf2>();
        check_against_slow::<Gf4>();
        check_against_slow::<Gf8>();
        check_against_slow::<Gf16>();
    }

    #[test]
    fn moduli_are_irreducible() {
        for spec in FieldSpec::ALL {
            assert!(spec.modulus_is_irreducible(), "{spec}");
        }
        // x^2 + 1 = (x + 1)^2
        assert!(!is_irreducible(0b101));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible(0b10101));
    }

    #[test]
    fn small_cases() {
        let alpha = Gf4::new(0b10);
        assert_eq!(alpha + Gf4::ONE, Gf4::new(0b11));
        assert_eq!(alpha * alpha, alpha + Gf4::ONE);
        assert_eq!(alpha.inv().unwrap(), alpha + Gf4::ONE);
        assert_eq!(Gf2::ONE + Gf2::ONE, Gf2::ZERO);
        assert_eq!(Gf8::ONE.inv().unwrap(), Gf8::ONE);
        assert!(Gf16::ZERO.inv().is_err());
    }

    #[test]
    fn out_of_range_bits_rejected() {
        assert!(Gf4::from_bits(4).is_err());
        assert!(Gf2::from_bits(2).is_err());
        assert!(Gf16::from_bits(15).is_ok());
    }

    fn axioms<F: Field>() {
        let all = enumerate::<F>();
        assert_eq!(all.len(), F::ORDER);
        assert_eq!(all[0], F::ZERO);
        for &a in &all {
            assert_eq!(a + a, F::ZERO);
            assert_eq!(a * F::ONE, a);
            assert_eq!(a * F::ZERO, F::ZERO);
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), F::ONE);
            }
            for &b in &all {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                // Frobenius is additive
                assert_eq!((a + b).square(), a.square() + b.square());
                for &c in &all {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
        // Frobenius is a bijection
        let mut squares: Vec<u8> = all.iter().map(|a| a.square().bits()).collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares.len(), F::ORDER);
    }

    #[test]
    fn field_axioms_exhaustive() {
        axioms::<Gf2>();
        axioms::<Gf4>();
        axioms::<Gf8>();
        axioms::<Gf16>();
    }

    #[test]
    fn f2_basis_spans() {
        let basis = Gf8::f2_basis();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..8 {
            let mut acc = Gf8::ZERO;
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc += *b;
                }
            }
            seen.insert(acc);
        }
        assert_eq!(seen.len(), 8);
    }
}
