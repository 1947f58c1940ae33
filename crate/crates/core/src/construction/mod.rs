//! The voltage assignment on `H̃3(F)`,
//!
//! ```text
//! ℓ(v1⊗h1, v2⊗h2) = h1(v1)⁻¹ h2(v2)⁻¹ (v1∧v2)(h1∧h2)^φ  ∈ S₂(W),
//! ```
//!
//! its image `ℓ^U` in `N = S₂(W)/⟨U⟩`, and the checks built on it.

use std::marker::PhantomData;

use crate::field::Field;
use crate::graphs::AffineVertex;
use crate::linalg::{Covector, Matrix4, Vector};
use crate::multilinear::{act_w, phi, sym_mul, wedge, wedge_dual, Bivector, NElement, SymTensor};
use crate::voltage::VoltageAssignment;
use crate::{Error, Result};

pub mod cycles;
pub mod export;
pub mod extension;
pub mod theorem;

/// `ℓ(a, b)`; fails unless `a ⊥ b`.
pub fn ell<F: Field>(a: &AffineVertex<F>, b: &AffineVertex<F>) -> Result<SymTensor<F>> {
    if !a.is_adjacent(b) {
        return Err(Error::Usage("ℓ is only defined on darts".into()));
    }
    Ok(ell_unchecked(a, b))
}

#[inline]
pub fn ell_unchecked<F: Field>(a: &AffineVertex<F>, b: &AffineVertex<F>) -> SymTensor<F> {
    let scale = (a.pairing() * b.pairing())
        .inv()
        .expect("vertices pair nonzero");
    sym_mul(&wedge(&a.v, &b.v), &phi(&wedge_dual(&a.h, &b.h))).scale(scale)
}

/// `ℓ` as an `S₂(W)`-valued voltage assignment.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymmetricVoltage<F>(PhantomData<F>);

impl<F> SymmetricVoltage<F> {
    pub fn new() -> Self {
        SymmetricVoltage(PhantomData)
    }
}

impl<F: Field> VoltageAssignment for SymmetricVoltage<F> {
    type Vertex = AffineVertex<F>;
    type Group = SymTensor<F>;

    fn adjacent(&self, a: &AffineVertex<F>, b: &AffineVertex<F>) -> bool {
        a.is_adjacent(b)
    }

    fn voltage(&self, a: &AffineVertex<F>, b: &AffineVertex<F>) -> SymTensor<F> {
        ell_unchecked(a, b)
    }
}

/// `ℓ^U`: `ℓ` followed by the projection to `N`.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuotientVoltage<F>(PhantomData<F>);

impl<F> QuotientVoltage<F> {
    pub fn new() -> Self {
        QuotientVoltage(PhantomData)
    }
}

impl<F: Field> VoltageAssignment for QuotientVoltage<F> {
    type Vertex = AffineVertex<F>;
    type Group = NElement<F>;

    fn adjacent(&self, a: &AffineVertex<F>, b: &AffineVertex<F>) -> bool {
        a.is_adjacent(b)
    }

    fn voltage(&self, a: &AffineVertex<F>, b: &AffineVertex<F>) -> NElement<F> {
        NElement::project(&ell_unchecked(a, b))
    }
}

/// Another assignment with `delta` added on one edge (both darts); a
/// negative control for the verifiers.
#[derive(Clone, Debug)]
pub struct CorruptedVoltage<L: VoltageAssignment> {
    pub inner: L,
    pub edge: (L::Vertex, L::Vertex),
    pub delta: L::Group,
}

impl<L> VoltageAssignment for CorruptedVoltage<L>
where
    L: VoltageAssignment,
    L::Vertex: PartialEq + Sync,
    L::Group: Sync,
{
    type Vertex = L::Vertex;
    type Group = L::Group;

    fn adjacent(&self, a: &L::Vertex, b: &L::Vertex) -> bool {
        self.inner.adjacent(a, b)
    }

    fn voltage(&self, a: &L::Vertex, b: &L::Vertex) -> L::Group {
        use crate::voltage::VoltageGroup;
        let v = self.inner.voltage(a, b);
        let (x, y) = &self.edge;
        if (a == x && b == y) || (a == y && b == x) {
            v.plus(&self.delta)
        } else {
            v
        }
    }
}

/// `e1⊗f1`, the base vertex `v0`.
pub fn base_vertex<F: Field>() -> AffineVertex<F> {
    AffineVertex {
        v: Vector::basis(0),
        h: Covector::basis(0),
    }
}

/// `(e1 + x e2)⊗f1`.
pub fn v_x<F: Field>(x: F) -> AffineVertex<F> {
    AffineVertex {
        v: Vector::basis(0) + Vector::basis(1).scale(x),
        h: Covector::basis(0),
    }
}

/// `e3⊗f3`, adjacent to every `v_x`.
pub fn u_vertex<F: Field>() -> AffineVertex<F> {
    AffineVertex {
        v: Vector::basis(2),
        h: Covector::basis(2),
    }
}

/// `A_x`: fixes `e2`, `e4` and sends `e1`, `e3` to `e1 + x e2`, `e3 + x e4`.
pub fn ax_matrix<F: Field>(x: F) -> Matrix4<F> {
    let e = Vector::<F>::basis;
    Matrix4::from_rows([e(0) + e(1).scale(x), e(1), e(2) + e(3).scale(x), e(3)])
}

/// Images of `w1, ..., w6` under `A_x`.
pub fn ax_action_table<F: Field>(x: F) -> [Bivector<F>; 6] {
    let g = ax_matrix(x);
    [0, 1, 2, 3, 4, 5].map(|i| act_w(&g, &Bivector::basis(i)))
}

/// The order-4 subgroup `⟨1, α⟩` of `(F, +)`, listed as `0, 1, α, α+1`.
pub fn subgroup_f<F: Field>(alpha: F) -> Result<[F; 4]> {
    if alpha == F::ZERO || alpha == F::ONE {
        return Err(Error::Domain(format!("{alpha:?} lies in the prime field")));
    }
    Ok([F::ZERO, F::ONE, alpha, alpha + F::ONE])
}
