//! Fixture representations for the bimodule-condition checkers.
//!
//! Two non-standard bimodules over associative algebras: the quaternions
//! acting on themselves through right multiplications only, and the 2×2
//! complex matrix algebra (realified to 8 real dimensions) acting through
//! halved commutators. Both fail the usual associative-bimodule identities
//! in characteristic ways that the checkers must reproduce exactly.

use alloc::vec::Vec;

use crate::compalg::{BasisProduct, StructureTable};
use crate::exactlin::{DenseMatrix, ExactScalar};
use crate::Side;

/// Regular bimodule: `π_L(a) = L_a`, `π_R(a) = R_a` on the algebra itself.
pub fn regular_rep(table: &StructureTable) -> (Vec<DenseMatrix>, Vec<DenseMatrix>) {
    let pi_l = (0..table.dim())
        .map(|i| table.mult_operator(Side::Left, &table.basis(i)))
        .collect();
    let pi_r = (0..table.dim())
        .map(|i| table.mult_operator(Side::Right, &table.basis(i)))
        .collect();
    (pi_l, pi_r)
}

/// Lifts for the regular bimodule: `δ_a = L_a − R_a` lifted as itself.
pub fn regular_lifts(table: &StructureTable) -> Vec<(DenseMatrix, DenseMatrix)> {
    (1..table.dim())
        .map(|i| {
            let d = &table.mult_operator(Side::Left, &table.basis(i))
                - &table.mult_operator(Side::Right, &table.basis(i));
            (d.clone(), d)
        })
        .collect()
}

/// A fixture: the algebra table, the `π_L` and `π_R` operator tables, and
/// candidate lifts `(δ on A, δ' on M)` for the derivation checker.
pub type FixtureRep = (
    StructureTable,
    Vec<DenseMatrix>,
    Vec<DenseMatrix>,
    Vec<(DenseMatrix, DenseMatrix)>,
);

/// Quaternions with the alternative-flavoured representation
/// `π_L(a) = R_a`, `π_R(a) = R_{a*}`, together with the candidate lifts
/// `δ'_a = -½(π_L(a) − π_R(a))` for the derivations `δ_a = L_a − R_a`.
pub fn quaternion_alternative_rep() -> FixtureRep {
    let q = StructureTable::quaternions();
    let pi_l: Vec<DenseMatrix> = (0..4)
        .map(|i| q.mult_operator(Side::Right, &q.basis(i)))
        .collect();
    let pi_r: Vec<DenseMatrix> = (0..4)
        .map(|i| q.mult_operator(Side::Right, &q.conjugate(&q.basis(i))))
        .collect();
    let half = ExactScalar::half();
    let lifts = (1..4)
        .map(|i| {
            let delta = &q.mult_operator(Side::Left, &q.basis(i))
                - &q.mult_operator(Side::Right, &q.basis(i));
            let lifted = (&pi_r[i] - &pi_l[i]).scale(&half);
            (delta, lifted)
        })
        .collect();
    (q, pi_l, pi_r, lifts)
}

/// `M₂(ℂ)` as a real 8-dimensional algebra with ordered basis
/// `E₁₁, E₁₂, E₂₁, E₂₂, iE₁₁, iE₁₂, iE₂₁, iE₂₂`.
pub fn m2_complex_real_table() -> StructureTable {
    let dim = 8;
    let mut prod: Vec<BasisProduct> = alloc::vec![None; dim * dim];
    // basis index for i^p E_{rc} with 0-based row/column
    let idx = |p: usize, r: usize, c: usize| 4 * p + 2 * r + c;
    for p1 in 0..2 {
        for r1 in 0..2 {
            for c1 in 0..2 {
                for p2 in 0..2 {
                    for r2 in 0..2 {
                        for c2 in 0..2 {
                            if c1 != r2 {
                                continue; // E_{r1 c1} E_{r2 c2} = δ_{c1 r2} E_{r1 c2}
                            }
                            let p = p1 + p2;
                            let sign: i8 = if p >= 2 { -1 } else { 1 }; // i² = −1
                            prod[idx(p1, r1, c1) * dim + idx(p2, r2, c2)] =
                                Some((idx(p % 2, r1, c2), sign));
                        }
                    }
                }
            }
        }
    }
    StructureTable::from_products(dim, prod)
}

/// `M₂(ℂ)` (realified) with the Lie-flavoured representation
/// `π_L(a) = ½(L_a − R_a)`, `π_R(a) = −π_L(a)`, plus candidate lifts
/// `δ'_a = π_L(a) − π_R(a)` for `δ_a = L_a − R_a`.
pub fn m2_complex_lie_rep() -> FixtureRep {
    let t = m2_complex_real_table();
    let half = ExactScalar::half();
    let pi_l: Vec<DenseMatrix> = (0..8)
        .map(|i| {
            (&t.mult_operator(Side::Left, &t.basis(i))
                - &t.mult_operator(Side::Right, &t.basis(i)))
                .scale(&half)
        })
        .collect();
    let pi_r: Vec<DenseMatrix> = pi_l.iter().map(|m| -m).collect();
    let lifts = (0..8)
        .map(|i| {
            let delta = &t.mult_operator(Side::Left, &t.basis(i))
                - &t.mult_operator(Side::Right, &t.basis(i));
            let lifted = &pi_l[i] - &pi_r[i];
            (delta, lifted)
        })
        .collect();
    (t, pi_l, pi_r, lifts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_real_table_is_unital_and_associative() {
        let t = m2_complex_real_table();
        // unit = E11 + E22 = basis 0 + basis 3; check associativity on basis
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let assoc = t
                        .associator(&t.basis(i), &t.basis(j), &t.basis(k))
                        .unwrap();
                    assert!(assoc.is_zero(), "associator nonzero at ({i},{j},{k})");
                }
            }
        }
        let unit = t.basis(0).add(&t.basis(3));
        for i in 0..8 {
            assert_eq!(t.multiply(&unit, &t.basis(i)).unwrap(), t.basis(i));
            assert_eq!(t.multiply(&t.basis(i), &unit).unwrap(), t.basis(i));
        }
    }
}
