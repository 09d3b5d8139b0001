//! Composition-algebra core: octonions and quaternions with explicit
//! structure constants.
//!
//! The octonion table is generated from seven oriented triples
//! `(a, b, c)` meaning `e_a e_b = e_c` cyclically, together with
//! `e_0` as two-sided unit and `e_i² = -e_0`. The orientation is fixed so
//! that `e_2 e_3 = e_1`, `e_7 e_6 = -e_1` and `e_3 e_5 = -e_6`; validity of
//! the completed table is established by [`StructureTable::validate_composition`]
//! (norm composition plus total antisymmetry of the associator), not by the
//! literals themselves.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactlin::{DenseMatrix, ExactScalar};
use crate::Side;

/// Oriented quaternion triples of the octonion table: `e_a e_b = e_c`
/// extends cyclically within each triple and antisymmetrically.
pub const FANO_LINES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (2, 7, 5),
    (1, 6, 7),
    (3, 7, 4),
    (1, 4, 5),
    (2, 4, 6),
    (3, 6, 5),
];

/// Errors from composition-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Element does not match the table's dimension.
    TableMismatch { expected: usize, found: usize },
    /// Inverse of zero requested.
    ZeroInverse,
    /// A table validity property failed; the message names it.
    InvalidTable(String),
}

impl core::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlgebraError::TableMismatch { expected, found } => {
                write!(f, "element has {found} coefficients, table expects {expected}")
            }
            AlgebraError::ZeroInverse => write!(f, "zero element has no inverse"),
            AlgebraError::InvalidTable(m) => write!(f, "invalid structure table: {m}"),
        }
    }
}

/// Basis product: `e_I e_J = sign · e_K`, or zero.
pub type BasisProduct = Option<(usize, i8)>;

/// Structure-constant table of a finite-dimensional real algebra whose
/// basis products are all `±e_K` or `0`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    /// `prod[I * dim + J]` describes `e_I e_J`.
    prod: Vec<BasisProduct>,
}

impl StructureTable {
    /// The octonions, dimension 8.
    pub fn octonions() -> Self {
        Self::cayley_table(8)
    }

    /// The quaternions as the `e_0..e_3` subalgebra of the octonion table.
    pub fn quaternions() -> Self {
        Self::cayley_table(4)
    }

    fn cayley_table(dim: usize) -> Self {
        assert!(dim == 4 || dim == 8);
        let mut prod = alloc::vec![None; dim * dim];
        let mut put = |i: usize, j: usize, k: usize, s: i8| {
            prod[i * dim + j] = Some((k, s));
        };
        for j in 0..dim {
            put(0, j, j, 1);
            put(j, 0, j, 1);
        }
        for i in 1..dim {
            put(i, i, 0, -1);
        }
        for &(a, b, c) in FANO_LINES.iter() {
            if a >= dim || b >= dim || c >= dim {
                continue;
            }
            for &(x, y, z) in &[(a, b, c), (b, c, a), (c, a, b)] {
                put(x, y, z, 1);
                put(y, x, z, -1);
            }
        }
        StructureTable { dim, prod }
    }

    /// General table from explicit basis products (used for non-composition
    /// fixtures such as matrix algebras over the reals).
    pub fn from_products(dim: usize, products: Vec<BasisProduct>) -> Self {
        assert_eq!(products.len(), dim * dim);
        StructureTable { dim, prod: products }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_I e_J` as `(K, sign)` or `None` for zero.
    pub fn basis_product(&self, i: usize, j: usize) -> BasisProduct {
        self.prod[i * self.dim + j]
    }

    /// Structure constant `f[I][J][K]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> i8 {
        match self.basis_product(i, j) {
            Some((kk, s)) if kk == k => s,
            _ => 0,
        }
    }

    /// All nonzero structure constants as `(I, J, K, sign)` triples in
    /// lexicographic order.
    pub fn signed_triples(&self) -> Vec<(usize, usize, usize, i8)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if let Some((k, s)) = self.basis_product(i, j) {
                    out.push((i, j, k, s));
                }
            }
        }
        out
    }

    pub fn zero(&self) -> CompElement {
        CompElement {
            coeffs: alloc::vec![ExactScalar::zero(); self.dim],
        }
    }

    pub fn basis(&self, i: usize) -> CompElement {
        let mut e = self.zero();
        e.coeffs[i] = ExactScalar::one();
        e
    }

    pub fn unit(&self) -> CompElement {
        self.basis(0)
    }

    fn check(&self, a: &CompElement) -> Result<(), AlgebraError> {
        if a.coeffs.len() != self.dim {
            return Err(AlgebraError::TableMismatch {
                expected: self.dim,
                found: a.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, a: &CompElement, b: &CompElement) -> Result<CompElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for i in 0..self.dim {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                if let Some((k, s)) = self.basis_product(i, j) {
                    let mut term = &a.coeffs[i] * &b.coeffs[j];
                    if s < 0 {
                        term = -term;
                    }
                    out.coeffs[k] += &term;
                }
            }
        }
        Ok(out)
    }

    /// Conjugation: fixes `e_0`, negates the imaginary basis.
    pub fn conjugate(&self, a: &CompElement) -> CompElement {
        let mut out = a.clone();
        for c in out.coeffs.iter_mut().skip(1) {
            *c = -&*c;
        }
        out
    }

    /// `[a, b, c] = (ab)c - a(bc)`.
    pub fn associator(
        &self,
        a: &CompElement,
        b: &CompElement,
        c: &CompElement,
    ) -> Result<CompElement, AlgebraError> {
        let left = self.multiply(&self.multiply(a, b)?, c)?;
        let right = self.multiply(a, &self.multiply(b, c)?)?;
        Ok(left.sub(&right))
    }

    /// Multiplication operator as a matrix on coefficient vectors:
    /// `mult_operator(Left, a) · vec(b) = vec(ab)`.
    pub fn mult_operator(&self, side: Side, a: &CompElement) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let bp = match side {
                    Side::Left => self.basis_product(i, j),
                    Side::Right => self.basis_product(j, i),
                };
                if let Some((k, s)) = bp {
                    let mut v = a.coeffs[i].clone();
                    if s < 0 {
                        v = -v;
                    }
                    m.add_to(k, j, &v);
                }
            }
        }
        m
    }

    /// Trace inner product `Tr[a* b] = Σ_I a_I b_I`.
    pub fn trace_inner(&self, a: &CompElement, b: &CompElement) -> ExactScalar {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x * y)
            .sum()
    }

    /// Trace form `Tr[a] = a_0`.
    pub fn trace(&self, a: &CompElement) -> ExactScalar {
        a.coeffs[0].clone()
    }

    /// Squared norm `‖a‖² = a a* = Σ a_I²` (composition algebras only).
    pub fn norm2(&self, a: &CompElement) -> ExactScalar {
        self.trace_inner(a, a)
    }

    /// Two-sided inverse `a⁻¹ = a*/‖a‖²`.
    pub fn inverse(&self, a: &CompElement) -> Result<CompElement, AlgebraError> {
        self.check(a)?;
        let n2 = self.norm2(a);
        if n2.is_zero() {
            return Err(AlgebraError::ZeroInverse);
        }
        let inv = n2.recip().expect("nonzero norm");
        Ok(self.conjugate(a).scale(&inv))
    }

    /// Validate composition-algebra structure: two-sided unit, norm
    /// composition on all basis pairs, totally antisymmetric associator on
    /// all basis triples, and (for dimension 8) the three anchor products
    /// of the chosen Fano orientation.
    pub fn validate_composition(&self) -> Result<(), AlgebraError> {
        let err = |m: &str| Err(AlgebraError::InvalidTable(String::from(m)));
        // unit law on the basis
        for j in 0..self.dim {
            if self.basis_product(0, j) != Some((j, 1)) || self.basis_product(j, 0) != Some((j, 1)) {
                return err("e_0 is not a two-sided unit");
            }
        }
        // norm composition on all basis pairs
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self
                    .multiply(&self.basis(i), &self.basis(j))
                    .expect("basis product");
                if self.norm2(&p) != ExactScalar::one() {
                    return err("norm composition fails on a basis pair");
                }
            }
        }
        // total antisymmetry of the associator on all basis triples
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self.basis(i);
                    let b = self.basis(j);
                    let c = self.basis(k);
                    let base = self.associator(&a, &b, &c).expect("assoc");
                    let swaps = [
                        self.associator(&b, &a, &c).expect("assoc"),
                        self.associator(&a, &c, &b).expect("assoc"),
                        self.associator(&c, &b, &a).expect("assoc"),
                    ];
                    for sw in &swaps {
                        if !base.add(sw).is_zero() {
                            return err("associator is not totally antisymmetric");
                        }
                    }
                }
            }
        }
        if self.dim == 8 {
            // anchor products fixing the orientation: e2e3 = e1, e7e6 = -e1, e3e5 = -e6
            for &(i, j, k, s) in &[(2usize, 3usize, 1usize, 1i8), (7, 6, 1, -1), (3, 5, 6, -1)] {
                if self.basis_product(i, j) != Some((k, s)) {
                    return err("anchor product violated");
                }
            }
        }
        Ok(())
    }
}

impl core::fmt::Debug for StructureTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "StructureTable(dim={})", self.dim)
    }
}

/// Element of a composition algebra as coefficients over the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompElement {
    pub coeffs: Vec<ExactScalar>,
}

impl CompElement {
    pub fn from_ints(v: &[i64]) -> Self {
        CompElement {
            coeffs: v.iter().map(|&n| ExactScalar::from_int(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_zero)
    }

    pub fn add(&self, other: &CompElement) -> CompElement {
        CompElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CompElement) -> CompElement {
        CompElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &ExactScalar) -> CompElement {
        CompElement {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> CompElement {
        CompElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Zero out the `e_0` coefficient.
    pub fn imaginary_part(&self) -> CompElement {
        let mut out = self.clone();
        out.coeffs[0] = ExactScalar::zero();
        out
    }
}
