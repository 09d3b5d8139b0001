//! Direct sums `A = ⊕ⁿ 𝕆`, their regular left/right representations on
//! `H = ⊕ⁿ 𝕆`, the involution operator `J`, and the bimodule-condition
//! checkers with their fixture representations.

use alloc::vec::Vec;

use crate::compalg::{AlgebraError, BasisProduct, CompElement, StructureTable};
use crate::exactlin::{DenseMatrix, ExactScalar};
use crate::Side;

pub mod fixtures;

/// Semisimple coordinate algebra: `n` copies of one composition algebra.
#[derive(Clone, Debug)]
pub struct SumAlgebra {
    n: usize,
    table: StructureTable,
}

impl SumAlgebra {
    pub fn new(n: usize, table: StructureTable) -> Self {
        assert!(n >= 1);
        SumAlgebra { n, table }
    }

    /// `n` octonion factors.
    pub fn octonions(n: usize) -> Self {
        Self::new(n, StructureTable::octonions())
    }

    pub fn factors(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn factor_dim(&self) -> usize {
        self.table.dim()
    }

    /// Total vector-space dimension `n · dim`.
    pub fn dim(&self) -> usize {
        self.n * self.table.dim()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: alloc::vec![self.table.zero(); self.n],
        }
    }

    /// The unit `𝕀 = Σᵢ e_{(i)0}`.
    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: alloc::vec![self.table.unit(); self.n],
        }
    }

    /// `e_{(factor)I}`: basis element `e_I` placed in one factor.
    pub fn basis_element(&self, factor: usize, index: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.blocks[factor] = self.table.basis(index);
        e
    }

    /// Embed a single-factor element.
    pub fn embed(&self, factor: usize, x: CompElement) -> AlgebraElement {
        let mut e = self.zero();
        e.blocks[factor] = x;
        e
    }

    /// Global basis index `(factor, I) -> factor·dim + I`.
    pub fn global_index(&self, factor: usize, index: usize) -> usize {
        factor * self.table.dim() + index
    }

    /// Inverse of [`Self::global_index`].
    pub fn split_index(&self, g: usize) -> (usize, usize) {
        (g / self.table.dim(), g % self.table.dim())
    }

    /// Product of global basis elements, at most one term.
    pub fn basis_product(&self, g1: usize, g2: usize) -> BasisProduct {
        let (f1, i1) = self.split_index(g1);
        let (f2, i2) = self.split_index(g2);
        if f1 != f2 {
            return None;
        }
        self.table
            .basis_product(i1, i2)
            .map(|(k, s)| (self.global_index(f1, k), s))
    }

    pub fn multiply(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| self.table.multiply(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraElement { blocks })
    }

    pub fn conjugate(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: a.blocks.iter().map(|x| self.table.conjugate(x)).collect(),
        }
    }

    /// Block-diagonal regular representation of `a` on `H = ⊕ⁿ 𝕆`.
    pub fn rep(&self, side: Side, a: &AlgebraElement) -> RepOperator {
        let d = self.table.dim();
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for (f, block) in a.blocks.iter().enumerate() {
            let op = self.table.mult_operator(side, block);
            for r in 0..d {
                for c in 0..d {
                    let v = op.get(r, c);
                    if !v.is_zero() {
                        m.set(f * d + r, f * d + c, v.clone());
                    }
                }
            }
        }
        RepOperator(m)
    }

    /// Block-diagonal involution `J`: per-factor conjugation of coefficient
    /// vectors. Squares to the identity.
    pub fn involution_j(&self) -> RepOperator {
        let d = self.table.dim();
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for f in 0..self.n {
            m.set(f * d, f * d, ExactScalar::one());
            for i in 1..d {
                m.set(f * d + i, f * d + i, ExactScalar::from_int(-1));
            }
        }
        RepOperator(m)
    }
}

/// Element of `A = ⊕ⁿ 𝕆` as `n` factor blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    pub blocks: Vec<CompElement>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> Vec<ExactScalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.coeffs.iter().cloned())
            .collect()
    }

    pub fn from_coeffs(alg: &SumAlgebra, v: &[ExactScalar]) -> Self {
        let d = alg.factor_dim();
        assert_eq!(v.len(), alg.dim());
        AlgebraElement {
            blocks: (0..alg.factors())
                .map(|f| CompElement {
                    coeffs: v[f * d..(f + 1) * d].to_vec(),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &ExactScalar) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|a| a.scale(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(CompElement::is_zero)
    }

    /// Zero out every factor's `e_0` coefficient.
    pub fn imaginary_part(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(CompElement::imaginary_part).collect(),
        }
    }
}

/// Operator on the Hilbert space `H = ⊕ⁿ 𝕆` (an `8n × 8n` matrix).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepOperator(pub DenseMatrix);

impl RepOperator {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }
}

/// Outcome of one checked operator identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// Identity name, stable across runs.
    pub name: &'static str,
    pub passed: bool,
    /// Largest absolute residual entry over all tested basis pairs.
    pub max_residual: ExactScalar,
    /// Violating basis pairs `(I, J)` in lexicographic order.
    pub witnesses: Vec<(usize, usize)>,
}

/// Report of a bimodule-condition check.
#[derive(Clone, Debug)]
pub struct BimoduleReport {
    pub conditions: Vec<ConditionReport>,
}

impl BimoduleReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Extend a per-basis operator table bilinearly to the product `e_I e_J`.
fn op_of_product(
    table: &StructureTable,
    ops: &[DenseMatrix],
    i: usize,
    j: usize,
) -> DenseMatrix {
    let dim_m = ops[0].rows();
    match table.basis_product(i, j) {
        Some((k, s)) => {
            if s > 0 {
                ops[k].clone()
            } else {
                -&ops[k]
            }
        }
        None => DenseMatrix::zeros(dim_m, dim_m),
    }
}

fn check_identity(
    table: &StructureTable,
    name: &'static str,
    mut defect: impl FnMut(usize, usize) -> DenseMatrix,
) -> ConditionReport {
    let mut witnesses = Vec::new();
    let mut max_residual = ExactScalar::zero();
    for i in 0..table.dim() {
        for j in 0..table.dim() {
            let d = defect(i, j);
            if !d.is_zero() {
                witnesses.push((i, j));
                let m = d.max_abs();
                if m > max_residual {
                    max_residual = m;
                }
            }
        }
    }
    ConditionReport {
        name,
        passed: witnesses.is_empty(),
        max_residual,
        witnesses,
    }
}

fn validate_tables(
    table: &StructureTable,
    pi_l: &[DenseMatrix],
    pi_r: &[DenseMatrix],
) -> Result<usize, AlgebraError> {
    let d = table.dim();
    if pi_l.len() != d || pi_r.len() != d {
        return Err(AlgebraError::TableMismatch {
            expected: d,
            found: pi_l.len().min(pi_r.len()),
        });
    }
    let m = pi_l[0].rows();
    for op in pi_l.iter().chain(pi_r) {
        if op.rows() != m || op.cols() != m {
            return Err(AlgebraError::TableMismatch {
                expected: m,
                found: op.rows(),
            });
        }
    }
    Ok(m)
}

/// Check the three defining identities of an associative bimodule for
/// per-basis-element action tables:
///
/// * `left_homomorphism`:      π_L(ab) − π_L(a)π_L(b) = 0
/// * `right_antihomomorphism`: π_R(ab) − π_R(b)π_R(a) = 0
/// * `left_right_commutation`: [π_L(a), π_R(b)] = 0
pub fn check_assoc_bimodule(
    table: &StructureTable,
    pi_l: &[DenseMatrix],
    pi_r: &[DenseMatrix],
) -> Result<BimoduleReport, AlgebraError> {
    validate_tables(table, pi_l, pi_r)?;
    let conditions = alloc::vec![
        check_identity(table, "left_homomorphism", |i, j| {
            let lhs = op_of_product(table, pi_l, i, j);
            &lhs - &pi_l[i].matmul(&pi_l[j])
        }),
        check_identity(table, "right_antihomomorphism", |i, j| {
            let lhs = op_of_product(table, pi_r, i, j);
            &lhs - &pi_r[j].matmul(&pi_r[i])
        }),
        check_identity(table, "left_right_commutation", |i, j| {
            pi_l[i].commutator(&pi_r[j])
        }),
    ];
    Ok(BimoduleReport { conditions })
}

/// Check the derivation-bimodule conditions: the three components of the
/// requirement that `δ_c = π_L(c) − π_R(c)` acts by the Leibniz rule on the
/// square-zero extension, the two derived symmetric forms, and the lifting
/// conditions for caller-supplied candidate lifts `(δ on A, δ' on M)`:
///
/// * `left_leibniz`:        `π_L([a,b]) − [π_L(a),π_L(b)] + [π_R(a),π_L(b)] = 0`
/// * `right_leibniz`:       `π_R([b,a]) − [π_R(a),π_R(b)] + [π_R(a),π_L(b)] = 0`
/// * `mixed_leibniz`:       `π_L(ba) − π_L(b)π_L(a) − π_R(ba) + π_R(a)π_R(b) − [π_R(a),π_L(b)] = 0`
/// * `commutator_symmetry`: `[π_R(a),π_L(b)] − [π_L(a),π_R(b)] = 0`
/// * `defect_symmetry`:     `π_L(ab) − π_L(a)π_L(b) − π_R(ba) + π_R(a)π_R(b) = 0`
/// * `lift_left` / `lift_right`: `[δ'ₖ, π(a)] = π(δₖ a)` for each candidate `k`
pub fn check_derivation_bimodule(
    table: &StructureTable,
    pi_l: &[DenseMatrix],
    pi_r: &[DenseMatrix],
    lifts: &[(DenseMatrix, DenseMatrix)],
) -> Result<BimoduleReport, AlgebraError> {
    let m = validate_tables(table, pi_l, pi_r)?;
    let d = table.dim();
    for (delta, lifted) in lifts {
        if delta.rows() != d || delta.cols() != d || lifted.rows() != m || lifted.cols() != m {
            return Err(AlgebraError::TableMismatch {
                expected: d,
                found: delta.rows(),
            });
        }
    }

    let bracket_op = |ops: &[DenseMatrix], i: usize, j: usize| {
        let ij = op_of_product(table, ops, i, j);
        let ji = op_of_product(table, ops, j, i);
        &ij - &ji
    };

    let mut conditions = alloc::vec![
        check_identity(table, "left_leibniz", |i, j| {
            let t1 = bracket_op(pi_l, i, j);
            let t2 = pi_l[i].commutator(&pi_l[j]);
            let t3 = pi_r[i].commutator(&pi_l[j]);
            &(&t1 - &t2) + &t3
        }),
        check_identity(table, "right_leibniz", |i, j| {
            let t1 = bracket_op(pi_r, j, i);
            let t2 = pi_r[i].commutator(&pi_r[j]);
            let t3 = pi_r[i].commutator(&pi_l[j]);
            &(&t1 - &t2) + &t3
        }),
        check_identity(table, "mixed_leibniz", |i, j| {
            let ba_l = op_of_product(table, pi_l, j, i);
            let ba_r = op_of_product(table, pi_r, j, i);
            let t = &(&ba_l - &pi_l[j].matmul(&pi_l[i])) - &(&ba_r - &pi_r[i].matmul(&pi_r[j]));
            &t - &pi_r[i].commutator(&pi_l[j])
        }),
        check_identity(table, "commutator_symmetry", |i, j| {
            &pi_r[i].commutator(&pi_l[j]) - &pi_l[i].commutator(&pi_r[j])
        }),
        check_identity(table, "defect_symmetry", |i, j| {
            let ab_l = op_of_product(table, pi_l, i, j);
            let ba_r = op_of_product(table, pi_r, j, i);
            &(&ab_l - &pi_l[i].matmul(&pi_l[j])) - &(&ba_r - &pi_r[i].matmul(&pi_r[j]))
        }),
    ];

    // lifting conditions against the supplied candidates; witnesses are
    // (candidate index, basis index)
    let defect_for = |ops: &[DenseMatrix], name: &'static str| {
        let mut witnesses = Vec::new();
        let mut max_residual = ExactScalar::zero();
        for (k, (delta, lifted)) in lifts.iter().enumerate() {
            for a in 0..d {
                // δa expanded over the basis
                let mut img = DenseMatrix::zeros(m, m);
                for t in 0..d {
                    let c = delta.get(t, a);
                    if !c.is_zero() {
                        img = &img + &ops[t].scale(c);
                    }
                }
                let defect = &lifted.commutator(&ops[a]) - &img;
                if !defect.is_zero() {
                    witnesses.push((k, a));
                    let mr = defect.max_abs();
                    if mr > max_residual {
                        max_residual = mr;
                    }
                }
            }
        }
        ConditionReport {
            name,
            passed: witnesses.is_empty(),
            max_residual,
            witnesses,
        }
    };
    conditions.push(defect_for(pi_l, "lift_left"));
    conditions.push(defect_for(pi_r, "lift_right"));

    Ok(BimoduleReport { conditions })
}
