//! Linear algebra over F2: subspace spans of packed vectors and affine
//! systems with inconsistency certificates.
//!
//! Vectors over GF(2^k) enter here through scalar restriction: each
//! coordinate contributes its `k` bits as `k` independent F2 coordinates.

use std::fmt;

/// A dense bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_u128(len: usize, bits: u128) -> Self {
        assert!(len <= 128);
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, (bits >> i) & 1 == 1);
        }
        v
    }

    pub fn to_u128(&self) -> u128 {
        assert!(self.len <= 128);
        (0..self.len)
            .filter(|&i| self.get(i))
            .fold(0u128, |acc, i| acc | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An F2-subspace of `F2^n`, `n <= 128`, kept in echelon form keyed by the
/// highest set bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct F2Span {
    basis: Vec<u128>,
}

impl F2Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vs: impl IntoIterator<Item = u128>) -> Self {
        let mut s = Self::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn reduce(&self, mut v: u128) -> u128 {
        for &b in &self.basis {
            let top = 127 - b.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        // keep the basis sorted by decreasing leading bit so `reduce` is a
        // single pass
        let top = 127 - r.leading_zeros();
        let pos = self
            .basis
            .iter()
            .position(|b| 127 - b.leading_zeros() < top)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, r);
        true
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u128] {
        &self.basis
    }

    pub fn is_subspace_of(&self, other: &F2Span) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    pub fn merge(&mut self, other: &F2Span) {
        for &b in &other.basis {
            self.insert(b);
        }
    }
}

/// One equation `Σ coeffs[i]·x[i] = rhs` over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: BitVec,
    pub rhs: bool,
}

/// A system of affine equations over F2.
#[derive(Clone, Debug, Default)]
pub struct AffineSystemF2 {
    unknowns: usize,
    equations: Vec<Equation>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Consistent {
        particular: BitVec,
        kernel: Vec<BitVec>,
    },
    Inconsistent(InconsistencyCertificate),
}

/// A set of equations whose left-hand sides sum to zero while their
/// right-hand sides sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    pub rows: Vec<usize>,
}

impl AffineSystemF2 {
    pub fn new(unknowns: usize) -> Self {
        AffineSystemF2 {
            unknowns,
            equations: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn label(&self, row: usize) -> &str {
        &self.labels[row]
    }

    pub fn push(&mut self, coeffs: BitVec, rhs: bool, label: impl Into<String>) {
        assert_eq!(coeffs.len(), self.unknowns, "equation has wrong arity");
        self.equations.push(Equation { coeffs, rhs });
        self.labels.push(label.into());
    }

    /// Appends the equations `map(x) = 0` for an affine map given as a
    /// closure `F2^unknowns -> F2^outputs`; one equation per output bit.
    /// The map is probed at zero and at every unit vector.
    pub fn push_affine_map(
        &mut self,
        outputs: usize,
        label: &str,
        map: impl Fn(&BitVec) -> BitVec,
    ) {
        let constant = map(&BitVec::zeros(self.unknowns));
        assert_eq!(constant.len(), outputs);
        let columns: Vec<BitVec> = (0..self.unknowns)
            .map(|i| {
                let mut c = map(&BitVec::unit(self.unknowns, i));
                c.xor_assign(&constant);
                c
            })
            .collect();
        for o in 0..outputs {
            let mut coeffs = BitVec::zeros(self.unknowns);
            for (i, col) in columns.iter().enumerate() {
                if col.get(o) {
                    coeffs.set(i, true);
                }
            }
            self.push(coeffs, constant.get(o), format!("{label}[{o}]"));
        }
    }

    pub fn satisfied_by(&self, x: &BitVec) -> bool {
        self.equations.iter().all(|e| {
            let lhs = e.coeffs.ones().filter(|&i| x.get(i)).count() % 2 == 1;
            lhs == e.rhs
        })
    }

    /// Gauss-Jordan elimination with first-nonzero pivots.
    pub fn solve(&self) -> AffineSolution {
        let n = self.unknowns;
        let m = self.equations.len();
        let mut rows: Vec<(BitVec, bool, BitVec)> = self
            .equations
            .iter()
            .enumerate()
            .map(|(i, e)| (e.coeffs.clone(), e.rhs, BitVec::unit(m, i)))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..m).find(|&i| rows[i].0.get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let (pc, prhs, ptrack) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.0.get(col) {
                    row.0.xor_assign(&pc);
                    row.1 ^= prhs;
                    row.2.xor_assign(&ptrack);
                }
            }
            pivots.push(col);
            r += 1;
        }
        if let Some(bad) = rows[r..].iter().find(|row| row.1) {
            debug_assert!(bad.0.is_zero());
            return AffineSolution::Inconsistent(InconsistencyCertificate {
                rows: bad.2.ones().collect(),
            });
        }
        let mut particular = BitVec::zeros(n);
        for (i, &pc) in pivots.iter().enumerate() {
            particular.set(pc, rows[i].1);
        }
        let kernel = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut k = BitVec::unit(n, free);
                for (i, &pc) in pivots.iter().enumerate() {
                    if rows[i].0.get(free) {
                        k.set(pc, true);
                    }
                }
                k
            })
            .collect();
        AffineSolution::Consistent { particular, kernel }
    }
}

impl InconsistencyCertificate {
    /// Re-derives the contradiction from the original equations.
    pub fn verify(&self, system: &AffineSystemF2) -> bool {
        let mut lhs = BitVec::zeros(system.unknowns());
        let mut rhs = false;
        for &i in &self.rows {
            let Some(e) = system.equations().get(i) else {
                return false;
            };
            lhs.xor_assign(&e.coeffs);
            rhs ^= e.rhs;
        }
        lhs.is_zero() && rhs
    }
}
