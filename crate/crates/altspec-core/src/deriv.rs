//! Inner derivations, the derivation Lie algebra as an exact nullspace,
//! lifts to bimodules and the Hilbert space, and floating-point
//! automorphism exponentials.
//!
//! The derivation algebra is computed independently of the closed inner
//! forms: `derivation_algebra` solves `X(e_I e_J) = X(e_I) e_J + e_I X(e_J)`
//! over all basis pairs as a linear system, so the statement that every
//! inner-form operator lies in its span is an assertion checked by tests,
//! not an assumption.

use alloc::vec::Vec;

use crate::bimod::{recon_action, split_action, action_matrix, SectorSpec};
use crate::dsum::{AlgebraElement, SumAlgebra};
use crate::exactlin::{DenseMatrix, ExactScalar, RowReducer};
use crate::Side;

pub mod expm;

pub use expm::FloatMatrix;

/// Inner-derivation construction form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationForm {
    /// `δ_a = L_a − R_a`, a derivation when `a` lies in the nucleus.
    Associative,
    /// `δ_{ab} = [L°_a, L°_b]` for the symmetrized product `a∘b = ½(ab+ba)`.
    Jordan,
    /// `δ_a = ad_a` for the commutator product `[a,b] = ab − ba`.
    Lie,
    /// `δ_{ab} = [L_a,L_b] + [L_a,R_b] + [R_a,R_b]`.
    Alternative,
    /// Produced by the nullspace solver.
    Generic,
}

/// Errors from derivation construction and lifting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivError {
    /// The constructed operator violates the Leibniz rule; carries the
    /// first violating global basis pair.
    LeibnizFailure { pair: (usize, usize) },
    /// Missing second argument for a two-argument form.
    MissingArgument,
    /// Operator is not block-diagonal over the factors, so it has no
    /// factorwise lift.
    NotFactorwise,
    /// A lifting condition failed; carries the global basis index.
    LiftConditionFailure { basis: usize },
    /// Bimodule-level error during lift verification.
    Bimodule(crate::bimod::BimodError),
}

impl core::fmt::Display for DerivError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DerivError::LeibnizFailure { pair } => {
                write!(f, "Leibniz rule fails on basis pair ({}, {})", pair.0, pair.1)
            }
            DerivError::MissingArgument => write!(f, "form requires two arguments"),
            DerivError::NotFactorwise => write!(f, "operator is not block-diagonal over factors"),
            DerivError::LiftConditionFailure { basis } => {
                write!(f, "lift condition fails on basis element {basis}")
            }
            DerivError::Bimodule(e) => write!(f, "{e}"),
        }
    }
}

impl From<crate::bimod::BimodError> for DerivError {
    fn from(e: crate::bimod::BimodError) -> Self {
        DerivError::Bimodule(e)
    }
}

/// Derivation of the coordinate algebra `A`, acting on its coefficient
/// space. Verified against the Leibniz rule for its product at
/// construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOperator {
    pub matrix: DenseMatrix,
    pub form: DerivationForm,
}

/// Derivation lifted to a bimodule or to the Hilbert space, verified
/// against the lifting conditions at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedDerivation {
    pub matrix: DenseMatrix,
}

/// Floating-point one-parameter automorphism `exp(t·δ)`.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub matrix: FloatMatrix,
    /// The exact generator this automorphism exponentiates.
    pub generator: DenseMatrix,
    pub parameter: f64,
}

/// Target space of a derivation lift.
#[derive(Clone, Copy, Debug)]
pub enum LiftTarget<'a> {
    /// Split bimodule on the given sectors.
    Split(&'a SectorSpec),
    /// Reconstituted bimodule on the given sectors with sign `ε'`.
    Recon(&'a SectorSpec, i8),
    /// The Hilbert space `H = ⊕ⁿ 𝕆`.
    Hilbert,
}

/// Which product a derivation must satisfy the Leibniz rule for.
fn product_for_form(
    alg: &SumAlgebra,
    form: DerivationForm,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> AlgebraElement {
    let ab = alg.multiply(a, b).expect("same algebra");
    match form {
        DerivationForm::Jordan => {
            let ba = alg.multiply(b, a).expect("same algebra");
            ab.add(&ba).scale(&ExactScalar::half())
        }
        DerivationForm::Lie => {
            let ba = alg.multiply(b, a).expect("same algebra");
            ab.sub(&ba)
        }
        _ => ab,
    }
}

/// Check `X(x·y) = X(x)·y + x·X(y)` on all global basis pairs for the
/// product selected by `form`; returns the first violating pair.
fn leibniz_defect(
    alg: &SumAlgebra,
    form: DerivationForm,
    x: &DenseMatrix,
) -> Option<(usize, usize)> {
    let dim = alg.dim();
    let basis: Vec<AlgebraElement> = (0..dim)
        .map(|g| {
            let (f, i) = alg.split_index(g);
            alg.basis_element(f, i)
        })
        .collect();
    let apply = |v: &AlgebraElement| AlgebraElement::from_coeffs(alg, &x.apply(&v.coeffs()));
    for g1 in 0..dim {
        for g2 in 0..dim {
            let lhs = apply(&product_for_form(alg, form, &basis[g1], &basis[g2]));
            let rhs = product_for_form(alg, form, &apply(&basis[g1]), &basis[g2])
                .add(&product_for_form(alg, form, &basis[g1], &apply(&basis[g2])));
            if lhs != rhs {
                return Some((g1, g2));
            }
        }
    }
    None
}

/// Build an inner derivation of the given classical form and verify the
/// Leibniz rule exactly before returning. `b` is ignored for the
/// single-argument forms (`Associative`, `Lie`).
pub fn inner_derivation(
    alg: &SumAlgebra,
    form: DerivationForm,
    a: &AlgebraElement,
    b: Option<&AlgebraElement>,
) -> Result<DerivationOperator, DerivError> {
    let la = alg.rep(Side::Left, a).0;
    let ra = alg.rep(Side::Right, a).0;
    let matrix = match form {
        DerivationForm::Associative => &la - &ra,
        DerivationForm::Lie => &la - &ra,
        DerivationForm::Jordan => {
            let b = b.ok_or(DerivError::MissingArgument)?;
            let half = ExactScalar::half();
            let lsa = (&la + &ra).scale(&half);
            let lb = alg.rep(Side::Left, b).0;
            let rb = alg.rep(Side::Right, b).0;
            let lsb = (&lb + &rb).scale(&half);
            lsa.commutator(&lsb)
        }
        DerivationForm::Alternative => {
            let b = b.ok_or(DerivError::MissingArgument)?;
            let lb = alg.rep(Side::Left, b).0;
            let rb = alg.rep(Side::Right, b).0;
            &(&la.commutator(&lb) + &la.commutator(&rb)) + &ra.commutator(&rb)
        }
        DerivationForm::Generic => return Err(DerivError::MissingArgument),
    };
    if let Some(pair) = leibniz_defect(alg, form, &matrix) {
        return Err(DerivError::LeibnizFailure { pair });
    }
    Ok(DerivationOperator { matrix, form })
}

/// Exact basis of `Der(A) = { X : X(e_I e_J) = X(e_I) e_J + e_I X(e_J) }`,
/// computed as the nullspace of the Leibniz constraint system over all
/// basis pairs of the algebra product.
pub fn derivation_algebra(alg: &SumAlgebra) -> Vec<DerivationOperator> {
    let dim = alg.dim();
    // unknown X[s, g] at flat index s·dim + g
    let idx = |s: usize, g: usize| s * dim + g;
    let mut reducer = RowReducer::new(dim * dim);

    // reverse lookup: for (g, t) all (s, sign) with e_s e_g = sign e_t
    // and e_g e_s = sign e_t
    let mut left_rev = alloc::vec![Vec::new(); dim * dim];
    let mut right_rev = alloc::vec![Vec::new(); dim * dim];
    for s in 0..dim {
        for g in 0..dim {
            if let Some((t, sg)) = alg.basis_product(s, g) {
                left_rev[g * dim + t].push((s, sg));
            }
            if let Some((t, sg)) = alg.basis_product(g, s) {
                right_rev[g * dim + t].push((s, sg));
            }
        }
    }

    for g1 in 0..dim {
        for g2 in 0..dim {
            for t in 0..dim {
                let mut row: Vec<(usize, ExactScalar)> = Vec::new();
                if let Some((k, sg)) = alg.basis_product(g1, g2) {
                    row.push((idx(t, k), ExactScalar::from_int(sg as i64)));
                }
                // −(X(e_{g1}) e_{g2})_t
                for &(s, sg) in &left_rev[g2 * dim + t] {
                    row.push((idx(s, g1), ExactScalar::from_int(-(sg as i64))));
                }
                // −(e_{g1} X(e_{g2}))_t
                for &(s, sg) in &right_rev[g1 * dim + t] {
                    row.push((idx(s, g2), ExactScalar::from_int(-(sg as i64))));
                }
                row.sort_unstable_by_key(|(c, _)| *c);
                let mut merged: Vec<(usize, ExactScalar)> = Vec::with_capacity(row.len());
                for (col, val) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == col => *lv += &val,
                        _ => merged.push((col, val)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                reducer.insert(merged);
            }
        }
    }

    reducer
        .into_nullspace()
        .into_iter()
        .map(|flat| DerivationOperator {
            matrix: DenseMatrix::from_fn(dim, dim, |r, c| flat[idx(r, c)].clone()),
            form: DerivationForm::Generic,
        })
        .collect()
}

/// Extract the per-factor blocks of a block-diagonal operator on `A`.
fn factor_blocks(alg: &SumAlgebra, x: &DenseMatrix) -> Result<Vec<DenseMatrix>, DerivError> {
    let d = alg.factor_dim();
    let n = alg.factors();
    for r in 0..alg.dim() {
        for c in 0..alg.dim() {
            if r / d != c / d && !x.get(r, c).is_zero() {
                return Err(DerivError::NotFactorwise);
            }
        }
    }
    Ok((0..n)
        .map(|f| DenseMatrix::from_fn(d, d, |r, c| x.get(f * d + r, f * d + c).clone()))
        .collect())
}

/// Per-basis action matrices of a lift target, shared across lift
/// verifications (the actions are linear in the acting element, so images
/// of derived elements are linear combinations of these). Nonzero triplets
/// are cached for the sparse comparisons.
pub struct ActionTables {
    left: Vec<DenseMatrix>,
    right: Vec<DenseMatrix>,
    left_nnz: Vec<Vec<(usize, usize, ExactScalar)>>,
    right_nnz: Vec<Vec<(usize, usize, ExactScalar)>>,
}

fn nnz_triplets(m: &DenseMatrix) -> Vec<(usize, usize, ExactScalar)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for (c, v) in m.row(r).iter().enumerate() {
            if !v.is_zero() {
                out.push((r, c, v.clone()));
            }
        }
    }
    out
}

/// Build the action matrices of every global basis element on the target.
pub fn action_tables(alg: &SumAlgebra, target: LiftTarget<'_>) -> ActionTables {
    let dim = alg.dim();
    let mut left = Vec::with_capacity(dim);
    let mut right = Vec::with_capacity(dim);
    for g in 0..dim {
        let (f, i) = alg.split_index(g);
        let a = alg.basis_element(f, i);
        match target {
            LiftTarget::Hilbert => {
                left.push(alg.rep(Side::Left, &a).0);
                right.push(alg.rep(Side::Right, &a).0);
            }
            LiftTarget::Split(spec) => {
                left.push(action_matrix(spec, |m| {
                    split_action(alg, spec, Side::Left, &a, m).expect("valid")
                }));
                right.push(action_matrix(spec, |m| {
                    split_action(alg, spec, Side::Right, &a, m).expect("valid")
                }));
            }
            LiftTarget::Recon(spec, eps) => {
                left.push(action_matrix(spec, |m| {
                    recon_action(alg, spec, Side::Left, eps, &a, m).expect("valid")
                }));
                right.push(action_matrix(spec, |m| {
                    recon_action(alg, spec, Side::Right, eps, &a, m).expect("valid")
                }));
            }
        }
    }
    let left_nnz = left.iter().map(nnz_triplets).collect();
    let right_nnz = right.iter().map(nnz_triplets).collect();
    ActionTables {
        left,
        right,
        left_nnz,
        right_nnz,
    }
}

/// `m == Σ_s coeffs[s] · mats[s]`, compared through the sparse supports.
fn equals_linear_combination(
    m: &DenseMatrix,
    coeffs: &[(usize, ExactScalar)],
    mats_nnz: &[Vec<(usize, usize, ExactScalar)>],
) -> bool {
    let mut expected: alloc::collections::BTreeMap<(usize, usize), ExactScalar> =
        alloc::collections::BTreeMap::new();
    for (s, c) in coeffs {
        for (r, col, v) in &mats_nnz[*s] {
            let e = expected.entry((*r, *col)).or_default();
            *e += &(c * v);
        }
    }
    expected.retain(|_, v| !v.is_zero());
    let mut seen = 0usize;
    for r in 0..m.rows() {
        for (col, v) in m.row(r).iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match expected.get(&(r, col)) {
                Some(e) if e == v => seen += 1,
                _ => return false,
            }
        }
    }
    seen == expected.len()
}

fn build_lifted(
    alg: &SumAlgebra,
    delta: &DerivationOperator,
    target: LiftTarget<'_>,
) -> Result<DenseMatrix, DerivError> {
    Ok(match target {
        LiftTarget::Hilbert => delta.matrix.clone(),
        LiftTarget::Split(spec) | LiftTarget::Recon(spec, _) => {
            let blocks = factor_blocks(alg, &delta.matrix)?;
            let dim = spec.dim();
            let mut m = DenseMatrix::zeros(dim, dim);
            for (p, &(j, k)) in spec.sectors().iter().enumerate() {
                let base = 64 * p;
                // δ_j ⊗ I acting on s-index, I ⊗ δ_k on t-index
                for s in 0..8 {
                    for s2 in 0..8 {
                        let v = blocks[j].get(s2, s);
                        if v.is_zero() {
                            continue;
                        }
                        for t in 0..8 {
                            m.add_to(base + 8 * s2 + t, base + 8 * s + t, v);
                        }
                    }
                }
                for t in 0..8 {
                    for t2 in 0..8 {
                        let v = blocks[k].get(t2, t);
                        if v.is_zero() {
                            continue;
                        }
                        for s in 0..8 {
                            m.add_to(base + 8 * s + t2, base + 8 * s + t, v);
                        }
                    }
                }
            }
            m
        }
    })
}

/// Lift a derivation against precomputed action tables; verifies the
/// lifting conditions `[δ', π(e_g)] = π(δ e_g)` exactly for every basis
/// element and both actions before returning.
pub fn lift_with_tables(
    alg: &SumAlgebra,
    delta: &DerivationOperator,
    target: LiftTarget<'_>,
    tables: &ActionTables,
) -> Result<LiftedDerivation, DerivError> {
    let lifted = build_lifted(alg, delta, target)?;
    for g in 0..alg.dim() {
        // coefficients of δ(e_g) over the basis
        let coeffs: Vec<(usize, ExactScalar)> = (0..alg.dim())
            .filter_map(|s| {
                let c = delta.matrix.get(s, g);
                (!c.is_zero()).then(|| (s, c.clone()))
            })
            .collect();
        let comm_l = lifted.commutator(&tables.left[g]);
        if !equals_linear_combination(&comm_l, &coeffs, &tables.left_nnz) {
            return Err(DerivError::LiftConditionFailure { basis: g });
        }
        let comm_r = lifted.commutator(&tables.right[g]);
        if !equals_linear_combination(&comm_r, &coeffs, &tables.right_nnz) {
            return Err(DerivError::LiftConditionFailure { basis: g });
        }
    }
    Ok(LiftedDerivation { matrix: lifted })
}

/// Lift several derivations to one target, building the action tables once.
pub fn lift_all(
    alg: &SumAlgebra,
    deltas: &[DerivationOperator],
    target: LiftTarget<'_>,
) -> Result<Vec<LiftedDerivation>, DerivError> {
    let tables = action_tables(alg, target);
    deltas
        .iter()
        .map(|d| lift_with_tables(alg, d, target, &tables))
        .collect()
}

/// Lift a derivation to a bimodule or to the Hilbert space and verify the
/// lifting conditions `[δ', π(a)] = π(δa)` exactly on the algebra basis for
/// both actions before returning.
///
/// On sector spaces the lift acts factorwise:
/// `δ'(ω₁ ⊗^{(jk)} ω₂) = δ_j(ω₁) ⊗ ω₂ + ω₁ ⊗ δ_k(ω₂)`.
pub fn lift(
    alg: &SumAlgebra,
    delta: &DerivationOperator,
    target: LiftTarget<'_>,
) -> Result<LiftedDerivation, DerivError> {
    let tables = action_tables(alg, target);
    lift_with_tables(alg, delta, target, &tables)
}

/// `exp(t · generator)` in double precision by scaling and squaring.
/// Accepts the matrix of a [`DerivationOperator`] or a [`LiftedDerivation`].
pub fn exponentiate(generator: &DenseMatrix, t: f64) -> Automorphism {
    let g = FloatMatrix::from_exact(generator).scale(t);
    Automorphism {
        matrix: g.expm(),
        generator: generator.clone(),
        parameter: t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::StructureTable;
    use crate::rng::SeededRng;

    fn random_element(alg: &SumAlgebra, rng: &mut SeededRng) -> AlgebraElement {
        AlgebraElement {
            blocks: (0..alg.factors())
                .map(|_| rng.comp_element(alg.table()))
                .collect(),
        }
    }

    #[test]
    fn alternative_form_is_a_derivation_annihilating_the_unit() {
        let alg = SumAlgebra::octonions(1);
        let a = alg.basis_element(0, 1);
        let b = alg.basis_element(0, 2);
        let d = inner_derivation(&alg, DerivationForm::Alternative, &a, Some(&b)).unwrap();
        let img = d.matrix.apply(&alg.unit().coeffs());
        assert!(img.iter().all(ExactScalar::is_zero));
        assert!(!d.matrix.is_zero());
    }

    #[test]
    fn associative_form_on_unit_is_zero() {
        let alg = SumAlgebra::octonions(2);
        let d = inner_derivation(&alg, DerivationForm::Associative, &alg.unit(), None).unwrap();
        assert!(d.matrix.is_zero());
    }

    #[test]
    fn associative_form_outside_nucleus_errors_with_witness() {
        let alg = SumAlgebra::octonions(1);
        let a = alg.basis_element(0, 1);
        match inner_derivation(&alg, DerivationForm::Associative, &a, None) {
            Err(DerivError::LeibnizFailure { pair }) => {
                // confirm the witness really violates the Leibniz rule
                let la = alg.rep(Side::Left, &a).0;
                let ra = alg.rep(Side::Right, &a).0;
                let x = &la - &ra;
                let (f1, i1) = alg.split_index(pair.0);
                let (f2, i2) = alg.split_index(pair.1);
                let e1 = alg.basis_element(f1, i1);
                let e2 = alg.basis_element(f2, i2);
                let prod = alg.multiply(&e1, &e2).unwrap();
                let apply =
                    |v: &AlgebraElement| AlgebraElement::from_coeffs(&alg, &x.apply(&v.coeffs()));
                let lhs = apply(&prod);
                let rhs = alg
                    .multiply(&apply(&e1), &e2)
                    .unwrap()
                    .add(&alg.multiply(&e1, &apply(&e2)).unwrap());
                assert_ne!(lhs, rhs);
            }
            other => panic!("expected Leibniz failure, got {other:?}"),
        }
    }

    #[test]
    fn jordan_form_is_a_derivation_of_the_symmetrized_product() {
        let alg = SumAlgebra::octonions(1);
        let mut rng = SeededRng::new(61);
        let a = random_element(&alg, &mut rng);
        let b = random_element(&alg, &mut rng);
        inner_derivation(&alg, DerivationForm::Jordan, &a, Some(&b)).unwrap();
    }

    #[test]
    fn lie_form_works_on_associative_algebras_only() {
        let m2 = SumAlgebra::new(1, crate::dsum::fixtures::m2_complex_real_table());
        let a = m2.basis_element(0, 1);
        inner_derivation(&m2, DerivationForm::Lie, &a, None).unwrap();
        // commutator Leibniz fails on the octonions
        let o = SumAlgebra::octonions(1);
        assert!(matches!(
            inner_derivation(&o, DerivationForm::Lie, &o.basis_element(0, 1), None),
            Err(DerivError::LeibnizFailure { .. })
        ));
    }

    #[test]
    fn derivation_algebra_dimensions() {
        assert_eq!(derivation_algebra(&SumAlgebra::octonions(1)).len(), 14);
        assert_eq!(
            derivation_algebra(&SumAlgebra::new(1, StructureTable::quaternions())).len(),
            3
        );
    }

    #[test]
    fn derivation_algebra_of_sum_is_block_diagonal() {
        let alg = SumAlgebra::octonions(2);
        let ders = derivation_algebra(&alg);
        assert_eq!(ders.len(), 28);
        for d in &ders {
            factor_blocks(&alg, &d.matrix).expect("block diagonal");
        }
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let alg = SumAlgebra::octonions(2);
        let zero = DerivationOperator {
            matrix: DenseMatrix::zeros(16, 16),
            form: DerivationForm::Generic,
        };
        let spec = SectorSpec::full(2);
        let l = lift(&alg, &zero, LiftTarget::Split(&spec)).unwrap();
        assert!(l.matrix.is_zero());
        let lh = lift(&alg, &zero, LiftTarget::Hilbert).unwrap();
        assert!(lh.matrix.is_zero());
    }

    #[test]
    fn lifts_satisfy_conditions_on_all_targets() {
        let alg = SumAlgebra::octonions(2);
        let a = alg.basis_element(0, 1);
        let b = alg.basis_element(0, 2);
        let d = inner_derivation(&alg, DerivationForm::Alternative, &a, Some(&b)).unwrap();
        let spec = SectorSpec::full(2);
        lift(&alg, &d, LiftTarget::Hilbert).unwrap();
        lift(&alg, &d, LiftTarget::Split(&spec)).unwrap();
        lift(&alg, &d, LiftTarget::Recon(&spec, 1)).unwrap();
        lift(&alg, &d, LiftTarget::Recon(&spec, -1)).unwrap();
    }

    #[test]
    fn lifted_derivation_annihilates_exact_forms_of_derived_elements() {
        // δ'(Δ_{𝕀⊗𝕀}[a]) = Δ_{𝕀⊗𝕀}[δa]
        let alg = SumAlgebra::octonions(2);
        let spec = SectorSpec::full(2);
        let a = alg.basis_element(1, 3);
        let bgen = alg.basis_element(1, 5);
        let d = inner_derivation(&alg, DerivationForm::Alternative, &a, Some(&bgen)).unwrap();
        let dl = lift(&alg, &d, LiftTarget::Split(&spec)).unwrap();
        let mut rng = SeededRng::new(71);
        for _ in 0..5 {
            let x = random_element(&alg, &mut rng);
            // Δ[x] as a sector element
            let mut dx = crate::bimod::SectorElement::zero();
            for (f, block) in x.blocks.iter().enumerate() {
                for (i, c) in block.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        dx.scaled_add_assign(c, &crate::bimod::delta_unit(&alg, f, i));
                    }
                }
            }
            let lhs = crate::bimod::SectorElement::from_vector(
                &spec,
                &dl.matrix.apply(&dx.to_vector(&spec).unwrap()),
            );
            let dxv = d.matrix.apply(&x.coeffs());
            let dxe = AlgebraElement::from_coeffs(&alg, &dxv);
            let mut rhs = crate::bimod::SectorElement::zero();
            for (f, block) in dxe.blocks.iter().enumerate() {
                for (i, c) in block.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        rhs.scaled_add_assign(c, &crate::bimod::delta_unit(&alg, f, i));
                    }
                }
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lifted_exponential_acts_slotwise_on_tensors() {
        // exp(δ')(ω₁ ⊗ ω₂) = exp(δ)(ω₁) ⊗ exp(δ)(ω₂) within 1e-9
        let alg = SumAlgebra::octonions(1);
        let spec = SectorSpec::full(1);
        let a = alg.basis_element(0, 1);
        let b = alg.basis_element(0, 4);
        let d = inner_derivation(&alg, DerivationForm::Alternative, &a, Some(&b)).unwrap();
        let dl = lift(&alg, &d, LiftTarget::Split(&spec)).unwrap();
        let t = 0.3;
        let alpha = exponentiate(&d.matrix, t);
        let alpha_l = exponentiate(&dl.matrix, t);
        let mut rng = SeededRng::new(77);
        for _ in 0..5 {
            let x = rng.comp_element(alg.table());
            let y = rng.comp_element(alg.table());
            let w = crate::bimod::SectorElement::tensor((0, 0), &x, &y);
            let lhs = alpha_l
                .matrix
                .apply(&w.to_vector(&spec).unwrap().iter().map(|v| v.to_f64()).collect::<Vec<_>>());
            let fx = alpha
                .matrix
                .apply(&x.coeffs.iter().map(|v| v.to_f64()).collect::<Vec<_>>());
            let fy = alpha
                .matrix
                .apply(&y.coeffs.iter().map(|v| v.to_f64()).collect::<Vec<_>>());
            let mut rhs = alloc::vec![0.0f64; 64];
            for s in 0..8 {
                for tt in 0..8 {
                    rhs[8 * s + tt] = fx[s] * fy[tt];
                }
            }
            let worst = lhs
                .iter()
                .zip(&rhs)
                .map(|(p, q)| {
                    let d = p - q;
                    if d < 0.0 {
                        -d
                    } else {
                        d
                    }
                })
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-9, "slotwise action off by {worst:e}");
        }
    }

    #[test]
    fn lifted_automorphisms_commute_with_the_bimodule_involution() {
        let alg = SumAlgebra::octonions(2);
        let spec = SectorSpec::full(2);
        let gen = inner_derivation(
            &alg,
            DerivationForm::Alternative,
            &alg.basis_element(0, 1),
            Some(&alg.basis_element(0, 3)),
        )
        .unwrap();
        let dl = lift(&alg, &gen, LiftTarget::Recon(&spec, 1)).unwrap();
        let inv = crate::bimod::action_matrix(&spec, |m| {
            crate::bimod::bimodule_involution(&alg, &spec, m).unwrap()
        });
        let inv_f = FloatMatrix::from_exact(&inv);
        for &t in &[0.1, 1.0] {
            let alpha = exponentiate(&dl.matrix, t);
            let lhs = alpha.matrix.matmul(&inv_f);
            let rhs = inv_f.matmul(&alpha.matrix);
            assert!(lhs.max_abs_diff(&rhs) < 1e-9);
        }
    }

    #[test]
    fn exponentials_are_multiplicative_automorphisms() {
        let alg = SumAlgebra::octonions(1);
        let a = alg.basis_element(0, 1);
        let b = alg.basis_element(0, 2);
        let d = inner_derivation(&alg, DerivationForm::Alternative, &a, Some(&b)).unwrap();
        let alpha = exponentiate(&d.matrix, 0.3);
        // α(e_0) = e_0
        let img = alpha.matrix.apply(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!((img[0] - 1.0).abs() < 1e-12);
        assert!(img[1..].iter().all(|v| v.abs() < 1e-12));
        // α(xy) = α(x)α(y) on basis pairs
        let t = alg.table();
        for i in 0..8 {
            for j in 0..8 {
                let x = t.basis(i);
                let y = t.basis(j);
                let xy = t.multiply(&x, &y).unwrap();
                let fx = alpha.matrix.apply(&x.coeffs.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
                let fy = alpha.matrix.apply(&y.coeffs.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
                let fxy = alpha.matrix.apply(&xy.coeffs.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
                // multiply fx · fy in floats through the table
                let mut prod = [0.0f64; 8];
                for s in 0..8 {
                    for u in 0..8 {
                        if let Some((k, sg)) = t.basis_product(s, u) {
                            prod[k] += sg as f64 * fx[s] * fy[u];
                        }
                    }
                }
                for k in 0..8 {
                    assert!((prod[k] - fxy[k]).abs() < 1e-9, "basis pair ({i},{j})");
                }
            }
        }
        // t = 0 gives the identity
        let id = exponentiate(&d.matrix, 0.0);
        assert!(id.matrix.max_abs_diff(&FloatMatrix::identity(8)) < 1e-15);
    }
}
