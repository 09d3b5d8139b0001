//! Dirac operators on `H = ⊕ⁿ 𝕆`, one-form bimodule actions, Leibniz
//! verification, the first-order derivation solver, covariant derivation
//! maps, gauge diagnostics, fluctuations, and KO signs.
//!
//! The Dirac-operator machinery targets the two-point geometry (`n = 2`);
//! the derivation solver accepts any factor count and block-decomposes the
//! Leibniz constraint system by sector before running the exact nullspace.

use alloc::vec::Vec;

use crate::bimod::{
    recon_action, BimodError, BimoduleMap, MapKind, SectorElement, SectorSpec,
};
use crate::deriv::{DerivationOperator, LiftedDerivation};
use crate::dsum::{AlgebraElement, SumAlgebra};
use crate::exactlin::{DenseMatrix, ExactScalar, RowReducer};
use crate::Side;

pub mod gamma;

use gamma::{compare_sign, gamma as gamma_a, gamma5, j_continuous_linear, CMatrix};

/// Errors from spectral-module operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralError {
    /// Dirac machinery needs the two-point geometry over octonions.
    NeedsTwoOctonionFactors,
    /// Assembled operator failed a structural check; carries its name.
    AssemblyCheck(&'static str),
    /// Fluctuation arguments must be purely imaginary.
    ImaginaryRequired,
    /// A sign relation held with no definite sign.
    SignIndeterminate(&'static str),
    /// Invalid factor or unit index.
    InvalidIndex,
    Bimodule(BimodError),
}

impl From<BimodError> for SpectralError {
    fn from(e: BimodError) -> Self {
        SpectralError::Bimodule(e)
    }
}

impl core::fmt::Display for SpectralError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpectralError::NeedsTwoOctonionFactors => {
                write!(f, "operation requires A = 𝕆 ⊕ 𝕆")
            }
            SpectralError::AssemblyCheck(name) => write!(f, "assembly check failed: {name}"),
            SpectralError::ImaginaryRequired => write!(f, "arguments must be purely imaginary"),
            SpectralError::SignIndeterminate(name) => {
                write!(f, "no definite sign for relation: {name}")
            }
            SpectralError::InvalidIndex => write!(f, "invalid index"),
            SpectralError::Bimodule(e) => write!(f, "{e}"),
        }
    }
}

/// Block off-diagonal, Hermitian Dirac operator with its coefficient table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracOperator {
    pub matrix: DenseMatrix,
    /// Coefficients `M_{IJ}` of the upper-right block.
    pub coeffs: DenseMatrix,
}

/// Represented one-form (an operator on `H`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormOperator {
    pub matrix: DenseMatrix,
}

/// Result of an exact Leibniz verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizReport {
    /// Largest absolute entry of the defect over all tested pairs.
    pub residual_norm: ExactScalar,
    /// Violating global basis pairs in lexicographic order.
    pub witnesses: Vec<(usize, usize)>,
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn require_two_octonions(alg: &SumAlgebra) -> Result<(), SpectralError> {
    if alg.factors() != 2 || alg.factor_dim() != 8 {
        return Err(SpectralError::NeedsTwoOctonionFactors);
    }
    Ok(())
}

/// Assemble the block off-diagonal Dirac operator
/// `D = [[0, B],[Bᵀ, 0]]` with `B_{IJ} = M_{IJ}`; verifies symmetry and
/// block structure of the result.
pub fn dirac_general(alg: &SumAlgebra, coeffs: &DenseMatrix) -> Result<DiracOperator, SpectralError> {
    require_two_octonions(alg)?;
    if coeffs.rows() != 8 || coeffs.cols() != 8 {
        return Err(SpectralError::AssemblyCheck("coefficient table must be 8x8"));
    }
    let mut m = DenseMatrix::zeros(16, 16);
    for i in 0..8 {
        for j in 0..8 {
            let v = coeffs.get(i, j);
            if !v.is_zero() {
                m.set(i, 8 + j, v.clone());
                m.set(8 + j, i, v.clone());
            }
        }
    }
    if !m.is_symmetric() {
        return Err(SpectralError::AssemblyCheck("hermiticity"));
    }
    for r in 0..8 {
        for c in 0..8 {
            if !m.get(r, c).is_zero() || !m.get(8 + r, 8 + c).is_zero() {
                return Err(SpectralError::AssemblyCheck("block off-diagonal"));
            }
        }
    }
    Ok(DiracOperator {
        matrix: m,
        coeffs: coeffs.clone(),
    })
}

/// Split `D = D₊ + D₋`: `D₊` keeps the `M₀₀` and `M_{ij}` coefficients,
/// `D₋` the `M_{0i}` and `M_{i0}` ones. Verifies `D± J = ±J D±` exactly.
pub fn dirac_split(
    alg: &SumAlgebra,
    d: &DiracOperator,
) -> Result<(DiracOperator, DiracOperator), SpectralError> {
    require_two_octonions(alg)?;
    let mut plus = DenseMatrix::zeros(8, 8);
    let mut minus = DenseMatrix::zeros(8, 8);
    for i in 0..8 {
        for j in 0..8 {
            let v = d.coeffs.get(i, j).clone();
            if v.is_zero() {
                continue;
            }
            if (i == 0) == (j == 0) {
                plus.set(i, j, v);
            } else {
                minus.set(i, j, v);
            }
        }
    }
    let dp = dirac_general(alg, &plus)?;
    let dm = dirac_general(alg, &minus)?;
    let j = alg.involution_j().0;
    if dp.matrix.matmul(&j) != j.matmul(&dp.matrix) {
        return Err(SpectralError::AssemblyCheck("D+ commutes with J"));
    }
    let anti = &dm.matrix.matmul(&j) + &j.matmul(&dm.matrix);
    if !anti.is_zero() {
        return Err(SpectralError::AssemblyCheck("D- anticommutes with J"));
    }
    Ok((dp, dm))
}

/// `Δ_D(a) = [D, π_L(a)]`.
pub fn delta_d(alg: &SumAlgebra, d: &DiracOperator, a: &AlgebraElement) -> OneFormOperator {
    OneFormOperator {
        matrix: d.matrix.commutator(&alg.rep(Side::Left, a).0),
    }
}

/// One-parameter family of one-form bimodule actions. With `J`-conjugation
/// written `ω^J = J ωᵀ J`:
///
/// right: `ω·a = ω π_L(a) + (1−S)[ω, π_L(a)^J] − ε'S[ω^J, π_L(a)]`
/// left:  `a·ω = π_L(a) ω − ε'(1−S)[π_L(a), ω^J] + S[π_L(a)^J, ω]`
pub fn oneform_action(
    alg: &SumAlgebra,
    side: Side,
    s: &ExactScalar,
    eps: i8,
    a: &AlgebraElement,
    w: &OneFormOperator,
) -> OneFormOperator {
    let j = alg.involution_j().0;
    let jconj = |x: &DenseMatrix| j.matmul(&x.transpose()).matmul(&j);
    let pl = alg.rep(Side::Left, a).0;
    let plj = jconj(&pl);
    let wj = jconj(&w.matrix);
    let one_minus_s = &ExactScalar::one() - s;
    let eps_s = if eps > 0 { s.clone() } else { -s };
    let eps_one_minus_s = if eps > 0 {
        one_minus_s.clone()
    } else {
        -&one_minus_s
    };
    let m = match side {
        Side::Right => {
            let t1 = w.matrix.matmul(&pl);
            let t2 = w.matrix.commutator(&plj).scale(&one_minus_s);
            let t3 = wj.commutator(&pl).scale(&eps_s);
            &(&t1 + &t2) - &t3
        }
        Side::Left => {
            let t1 = pl.matmul(&w.matrix);
            let t2 = pl.commutator(&wj).scale(&eps_one_minus_s);
            let t3 = plj.commutator(&w.matrix).scale(s);
            &(&t1 - &t2) + &t3
        }
    };
    OneFormOperator { matrix: m }
}

/// Check `Δ_D(ab) = Δ_D(a)·b + a·Δ_D(b)` under [`oneform_action`] for all
/// global basis pairs; exact residual with lexicographic witnesses.
pub fn verify_leibniz(
    alg: &SumAlgebra,
    d: &DiracOperator,
    s: &ExactScalar,
    eps: i8,
) -> Result<LeibnizReport, SpectralError> {
    require_two_octonions(alg)?;
    let dim = alg.dim();
    let basis: Vec<AlgebraElement> = (0..dim)
        .map(|g| {
            let (f, i) = alg.split_index(g);
            alg.basis_element(f, i)
        })
        .collect();
    let deltas: Vec<OneFormOperator> = basis.iter().map(|a| delta_d(alg, d, a)).collect();

    let mut residual_norm = ExactScalar::zero();
    let mut witnesses = Vec::new();
    for g1 in 0..dim {
        for g2 in 0..dim {
            let mut lhs = DenseMatrix::zeros(dim, dim);
            if let Some((k, sg)) = alg.basis_product(g1, g2) {
                lhs = deltas[k].matrix.scale(&ExactScalar::from_int(sg as i64));
            }
            let rhs_r = oneform_action(alg, Side::Right, s, eps, &basis[g2], &deltas[g1]);
            let rhs_l = oneform_action(alg, Side::Left, s, eps, &basis[g1], &deltas[g2]);
            let defect = &(&lhs - &rhs_r.matrix) - &rhs_l.matrix;
            if !defect.is_zero() {
                witnesses.push((g1, g2));
                let m = defect.max_abs();
                if m > residual_norm {
                    residual_norm = m;
                }
            }
        }
    }
    Ok(LeibnizReport {
        residual_norm,
        witnesses,
    })
}

/// Defect of the plain-operator-product Leibniz rule,
/// `Δ_D(ab) − Δ_D(a)π_L(b) − π_L(a)Δ_D(b)`, for cross-checks against the
/// double-commutator identity.
pub fn plain_leibniz_defect(
    alg: &SumAlgebra,
    d: &DiracOperator,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> DenseMatrix {
    let ab = alg.multiply(a, b).expect("same algebra");
    let dab = delta_d(alg, d, &ab).matrix;
    let da = delta_d(alg, d, a).matrix;
    let db = delta_d(alg, d, b).matrix;
    let pl_a = alg.rep(Side::Left, a).0;
    let pl_b = alg.rep(Side::Left, b).0;
    &(&dab - &da.matmul(&pl_b)) - &pl_a.matmul(&db)
}

/// Involution-consistency defect `(a*·ωᵀ)ᵀ − ω·a` at parameter `S`;
/// zero for all inputs exactly when `S = ½`.
pub fn involution_consistency_defect(
    alg: &SumAlgebra,
    s: &ExactScalar,
    eps: i8,
    a: &AlgebraElement,
    w: &OneFormOperator,
) -> DenseMatrix {
    let astar = alg.conjugate(a);
    let wt = OneFormOperator {
        matrix: w.matrix.transpose(),
    };
    let lhs = oneform_action(alg, Side::Left, s, eps, &astar, &wt)
        .matrix
        .transpose();
    let rhs = oneform_action(alg, Side::Right, s, eps, a, w).matrix;
    &lhs - &rhs
}

/// One basis vector of the first-order derivation space, supported on a
/// single sector of `A ⊗ A`.
#[derive(Clone, Debug)]
pub struct DerivationBasisVector {
    /// The sector `(c, d)` carrying this solution.
    pub sector: (usize, usize),
    /// Image of each global basis element of `A`.
    pub images: Vec<SectorElement>,
    /// Coefficient of the closed-form solution
    /// `Δ[e^{(x)I}] = κ(δ^{xc} e^I ⊗^{(cd)} e⁰ − δ^{xd} e⁰ ⊗^{(cd)} e^I)`
    /// when the projection onto it leaves zero residual.
    pub kappa: Option<ExactScalar>,
}

/// Full solution of the first-order Leibniz constraint system.
#[derive(Clone, Debug)]
pub struct DerivationSolution {
    pub n: usize,
    pub basis: Vec<DerivationBasisVector>,
}

impl DerivationSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn all_match_closed_form(&self) -> bool {
        self.basis.iter().all(|b| b.kappa.is_some())
    }

    /// Assemble the κ-coefficient table with `κ_{(cd)}` read from the
    /// sector-(c,d) basis solution; `None` if any solution escaped the
    /// closed form or a sector solution is missing.
    pub fn kappa_table(&self) -> Option<DenseMatrix> {
        let mut table = DenseMatrix::zeros(self.n, self.n);
        let mut seen = alloc::vec![false; self.n * self.n];
        for b in &self.basis {
            let k = b.kappa.clone()?;
            let (c, d) = b.sector;
            table.set(c, d, k);
            seen[c * self.n + d] = true;
        }
        if seen.iter().all(|&s| s) {
            Some(table)
        } else {
            None
        }
    }
}

/// Assemble and solve the Leibniz constraint system for linear maps
/// `Δ: A → A ⊗ A` over the split bimodule actions. The system
/// block-diagonalises over sectors; each sector is solved as an exact
/// sparse nullspace and the basis is projected onto the closed one-κ form.
pub fn solve_first_order_derivations(alg: &SumAlgebra) -> DerivationSolution {
    let n = alg.factors();
    let dim = alg.dim();
    let d = alg.factor_dim();
    let table = alg.table();

    // reverse lookups within one factor: for (j, t) the unique u with
    // e_u e_j = ± e_t, and for (i, s) the unique v with e_i e_v = ± e_s
    let mut right_rev = alloc::vec![Vec::new(); d * d];
    let mut left_rev = alloc::vec![Vec::new(); d * d];
    for u in 0..d {
        for j in 0..d {
            if let Some((t, sg)) = table.basis_product(u, j) {
                right_rev[j * d + t].push((u, sg));
            }
            if let Some((s, sg)) = table.basis_product(j, u) {
                left_rev[j * d + s].push((u, sg));
            }
        }
    }

    let mut basis_out = Vec::new();
    for c in 0..n {
        for dd in 0..n {
            // unknowns: X[g, s, t] = coefficient of e_s ⊗^{(c,dd)} e_t in Δ[e_g]
            let unknowns = dim * 64;
            let uidx = |g: usize, s: usize, t: usize| g * 64 + 8 * s + t;
            let mut reducer = RowReducer::new(unknowns);
            for g1 in 0..dim {
                let (a_f, a_i) = alg.split_index(g1);
                for g2 in 0..dim {
                    let (b_f, b_j) = alg.split_index(g2);
                    for s in 0..8 {
                        for t in 0..8 {
                            let mut row: Vec<(usize, ExactScalar)> = Vec::new();
                            // Δ[e_{g1} e_{g2}] component
                            if let Some((k, sg)) = alg.basis_product(g1, g2) {
                                row.push((uidx(k, s, t), ExactScalar::from_int(sg as i64)));
                            }
                            // −(Δ[e_{g1}] · e_{g2}): right action gated on dd == b_f
                            if dd == b_f {
                                for &(u, sg) in &right_rev[b_j * d + t] {
                                    row.push((
                                        uidx(g1, s, u),
                                        ExactScalar::from_int(-(sg as i64)),
                                    ));
                                }
                            }
                            // −(e_{g1} · Δ[e_{g2}]): left action gated on c == a_f
                            if c == a_f {
                                for &(v, sg) in &left_rev[a_i * d + s] {
                                    row.push((
                                        uidx(g2, v, t),
                                        ExactScalar::from_int(-(sg as i64)),
                                    ));
                                }
                            }
                            row.sort_unstable_by_key(|(col, _)| *col);
                            let mut merged: Vec<(usize, ExactScalar)> =
                                Vec::with_capacity(row.len());
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
            }
            for flat in reducer.into_nullspace() {
                let images: Vec<SectorElement> = (0..dim)
                    .map(|g| {
                        let mut e = SectorElement::zero();
                        for s in 0..8 {
                            for t in 0..8 {
                                let v = &flat[uidx(g, s, t)];
                                if !v.is_zero() {
                                    e.scaled_add_assign(v, &SectorElement::basis((c, dd), s, t));
                                }
                            }
                        }
                        e
                    })
                    .collect();
                let kappa = project_onto_kappa_form(alg, (c, dd), &flat, &uidx);
                basis_out.push(DerivationBasisVector {
                    sector: (c, dd),
                    images,
                    kappa,
                });
            }
        }
    }
    DerivationSolution {
        n,
        basis: basis_out,
    }
}

/// Project a sector-(c,d) solution onto
/// `Δ[e^{(x)I}] = κ(δ^{xc} e^I ⊗ e⁰ − δ^{xd} e⁰ ⊗ e^I)`; returns the κ when
/// the residual vanishes identically.
fn project_onto_kappa_form(
    alg: &SumAlgebra,
    sector: (usize, usize),
    flat: &[ExactScalar],
    uidx: &dyn Fn(usize, usize, usize) -> usize,
) -> Option<ExactScalar> {
    let (c, d) = sector;
    let kappa = flat[uidx(alg.global_index(c, 1), 1, 0)].clone();
    let mut expected = alloc::vec![ExactScalar::zero(); flat.len()];
    for i in 0..8 {
        let gc = alg.global_index(c, i);
        expected[uidx(gc, i, 0)] += &kappa;
        let gd = alg.global_index(d, i);
        expected[uidx(gd, 0, i)] -= &kappa;
    }
    if expected
        .iter()
        .zip(flat)
        .all(|(e, f)| e == f)
    {
        Some(kappa)
    } else {
        None
    }
}

/// The modified first-order derivation on a reconstituted bimodule:
/// `Δ_κ[e^{(a)I}] = Σ_c κ_{(ac)} (e^I ⊗^{(ac)} e⁰ − e⁰ ⊗^{(ca)} e^I)`,
/// extended linearly (the formula applies to every basis index, and the
/// symmetric κ makes the image of the unit `𝕀` vanish).
pub fn delta_kappa(
    alg: &SumAlgebra,
    kappa: &DenseMatrix,
    a: &AlgebraElement,
) -> Result<SectorElement, BimodError> {
    let n = alg.factors();
    if kappa.rows() != n || kappa.cols() != n {
        return Err(BimodError::FactorMismatch {
            expected: n,
            found: kappa.rows(),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if kappa.get(i, j) != kappa.get(j, i) {
                return Err(BimodError::AsymmetricKappa { at: (i, j) });
            }
        }
    }
    let table = alg.table();
    let mut out = SectorElement::zero();
    for (f, block) in a.blocks.iter().enumerate() {
        for (i, coeff) in block.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for c in 0..n {
                let k_ac = kappa.get(f, c);
                if !k_ac.is_zero() {
                    out.scaled_add_assign(
                        &(coeff * k_ac),
                        &SectorElement::tensor((f, c), &table.basis(i), &table.basis(0)),
                    );
                }
                let k_ca = kappa.get(c, f);
                if !k_ca.is_zero() {
                    out.scaled_add_assign(
                        &-&(coeff * k_ca),
                        &SectorElement::tensor((c, f), &table.basis(0), &table.basis(i)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Check the Leibniz rule of an arbitrary linear map `Δ: A → M` (given by
/// its images on the global basis) under the reconstituted actions with
/// sign `ε'`, over all global basis pairs. This is the generic verifier
/// behind every derivation-compatibility claim.
pub fn recon_leibniz_report(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    images: &[SectorElement],
    eps: i8,
) -> Result<LeibnizReport, BimodError> {
    let dim = alg.dim();
    assert_eq!(images.len(), dim);
    let basis: Vec<AlgebraElement> = (0..dim)
        .map(|g| {
            let (f, i) = alg.split_index(g);
            alg.basis_element(f, i)
        })
        .collect();
    let mut residual_norm = ExactScalar::zero();
    let mut witnesses = Vec::new();
    for g1 in 0..dim {
        for g2 in 0..dim {
            let mut lhs = SectorElement::zero();
            if let Some((k, sg)) = alg.basis_product(g1, g2) {
                lhs.scaled_add_assign(&ExactScalar::from_int(sg as i64), &images[k]);
            }
            let t1 = recon_action(alg, spec, Side::Right, eps, &basis[g2], &images[g1])?;
            let t2 = recon_action(alg, spec, Side::Left, eps, &basis[g1], &images[g2])?;
            let defect = lhs.sub(&t1.add(&t2));
            if !defect.is_zero() {
                witnesses.push((g1, g2));
                let m = defect.max_abs();
                if m > residual_norm {
                    residual_norm = m;
                }
            }
        }
    }
    Ok(LeibnizReport {
        residual_norm,
        witnesses,
    })
}

/// Variant selector for the covariant derivation maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiVariant {
    /// `a ⊗ b ↦ a e^m ⊗ e^m b` on sectors `(c,d)` and `(d,c)`.
    SameSector,
    /// `a ⊗ b ↦ a e^m ⊗ b` on `(c,d)` and `a ⊗ b ↦ −a ⊗ e^m b` on `(d,c)`;
    /// requires `c ≠ d`.
    CrossSector,
}

/// The sector-gated derivation-compatible map `Φ_{cd}` built from the
/// imaginary unit `e^m`, as a matrix on the full sector space.
pub fn phi_map(
    alg: &SumAlgebra,
    variant: PhiVariant,
    c: usize,
    d: usize,
    m: usize,
) -> Result<BimoduleMap, SpectralError> {
    let n = alg.factors();
    if c >= n || d >= n || m < 1 || m >= alg.factor_dim() {
        return Err(SpectralError::InvalidIndex);
    }
    if variant == PhiVariant::CrossSector && c == d {
        return Err(SpectralError::InvalidIndex);
    }
    let spec = SectorSpec::full(n);
    let table = alg.table();
    let em = table.basis(m);
    let apply = |x: &SectorElement| -> SectorElement {
        let mut out = SectorElement::zero();
        for (sec, s, t, v) in x.iter_coeffs() {
            match variant {
                PhiVariant::SameSector => {
                    if sec == (c, d) || sec == (d, c) {
                        let aem = table.multiply(&table.basis(s), &em).expect("same table");
                        let emb = table.multiply(&em, &table.basis(t)).expect("same table");
                        out.scaled_add_assign(v, &SectorElement::tensor(sec, &aem, &emb));
                    }
                }
                PhiVariant::CrossSector => {
                    if sec == (c, d) {
                        let aem = table.multiply(&table.basis(s), &em).expect("same table");
                        out.scaled_add_assign(v, &SectorElement::tensor(sec, &aem, &table.basis(t)));
                    } else if sec == (d, c) {
                        let emb = table.multiply(&em, &table.basis(t)).expect("same table");
                        out.scaled_add_assign(
                            &-v,
                            &SectorElement::tensor(sec, &table.basis(s), &emb),
                        );
                    }
                }
            }
        }
        out
    };
    let matrix = crate::bimod::action_matrix(&spec, |x| apply(x));
    Ok(BimoduleMap {
        matrix,
        kind: MapKind::DerivationCompatible,
    })
}

/// Apply a bimodule map (matrix on the full sector space) to an element.
pub fn apply_bimodule_map(
    spec: &SectorSpec,
    map: &BimoduleMap,
    x: &SectorElement,
) -> Result<SectorElement, BimodError> {
    let v = x.to_vector(spec)?;
    Ok(SectorElement::from_vector(spec, &map.matrix.apply(&v)))
}

/// Gauge diagnostic report.
#[derive(Clone, Debug)]
pub struct GaugeReport {
    /// Per-generator verdicts: does the object commute with the lifted
    /// generator (operator case), or is it annihilated by its Lie action
    /// (map case)?
    pub commutes: Vec<bool>,
    /// Dimension of the span of the object's orbit under the generated
    /// Lie algebra (including the object itself).
    pub orbit_dim: usize,
}

impl GaugeReport {
    pub fn all_commute(&self) -> bool {
        self.commutes.iter().all(|&b| b)
    }
}

/// Gauge check for an operator on `H`: commutators with each lifted
/// generator, plus the dimension of its Lie-orbit span.
pub fn gauge_check_operator(x: &DenseMatrix, gens: &[LiftedDerivation]) -> GaugeReport {
    let commutes: Vec<bool> = gens
        .iter()
        .map(|g| x.commutator(&g.matrix).is_zero())
        .collect();
    let dim = x.rows() * x.cols();
    let flatten = |m: &DenseMatrix| -> Vec<ExactScalar> { m.entries().to_vec() };
    let mut reducer = RowReducer::new(dim);
    let mut frontier = Vec::new();
    if reducer.insert_dense(&flatten(x)) {
        frontier.push(x.clone());
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let img = g.matrix.commutator(m);
                if reducer.insert_dense(&flatten(&img)) {
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    GaugeReport {
        commutes,
        orbit_dim: reducer.rank(),
    }
}

/// Gauge check for a derivation map `X: A → M` given by basis images. The
/// Lie action of a generator `δ` is `X ↦ δ'_M ∘ X − X ∘ δ_A` with the
/// factorwise lift `δ'_M`.
pub fn gauge_check_map(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    images: &[SectorElement],
    gens: &[DerivationOperator],
) -> Result<GaugeReport, SpectralError> {
    let dim_a = alg.dim();
    assert_eq!(images.len(), dim_a);
    let lifted: Vec<LiftedDerivation> =
        crate::deriv::lift_all(alg, gens, crate::deriv::LiftTarget::Split(spec))
            .map_err(|_| SpectralError::AssemblyCheck("generator lift"))?;

    let apply_lie = |imgs: &[SectorElement],
                     g: &DerivationOperator,
                     gl: &LiftedDerivation|
     -> Result<Vec<SectorElement>, BimodError> {
        let mut out = Vec::with_capacity(dim_a);
        for gidx in 0..dim_a {
            // δ'_M(X[e_g])
            let v = imgs[gidx].to_vector(spec)?;
            let mut term = SectorElement::from_vector(spec, &gl.matrix.apply(&v));
            // − X[δ_A e_g]
            for s in 0..dim_a {
                let coeff = g.matrix.get(s, gidx);
                if !coeff.is_zero() {
                    term.scaled_add_assign(&-coeff, &imgs[s]);
                }
            }
            out.push(term);
        }
        Ok(out)
    };

    let flatten = |imgs: &[SectorElement]| -> Result<Vec<ExactScalar>, BimodError> {
        let mut v = Vec::with_capacity(dim_a * spec.dim());
        for img in imgs {
            v.extend(img.to_vector(spec)?);
        }
        Ok(v)
    };

    let mut commutes = Vec::with_capacity(gens.len());
    for (g, gl) in gens.iter().zip(&lifted) {
        let lie = apply_lie(images, g, gl)?;
        commutes.push(lie.iter().all(SectorElement::is_zero));
    }

    let mut reducer = RowReducer::new(dim_a * spec.dim());
    let mut frontier = Vec::new();
    if reducer.insert_dense(&flatten(images)?) {
        frontier.push(images.to_vec());
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for imgs in &frontier {
            for (g, gl) in gens.iter().zip(&lifted) {
                let lie = apply_lie(imgs, g, gl)?;
                if reducer.insert_dense(&flatten(&lie)?) {
                    next.push(lie);
                }
            }
        }
        frontier = next;
    }
    Ok(GaugeReport {
        commutes,
        orbit_dim: reducer.rank(),
    })
}

/// The finite fluctuation operator built from purely imaginary pairs:
///
/// `F = Σ [[D,π_L(a)], π_L(b) + ½π_L(b)^J] − ε'[[D,π_L(a)]^J, π_L(b)^J + ½π_L(b)]`
///
/// with `X^J = J Xᵀ J`. The result is verified Hermitian, block
/// off-diagonal, and satisfying `FJ = ε'JF` before being returned.
pub fn fluctuation(
    alg: &SumAlgebra,
    d: &DiracOperator,
    pairs: &[(AlgebraElement, AlgebraElement)],
    eps: i8,
) -> Result<DiracOperator, SpectralError> {
    require_two_octonions(alg)?;
    let j = alg.involution_j().0;
    let jconj = |x: &DenseMatrix| j.matmul(&x.transpose()).matmul(&j);
    let half = ExactScalar::half();
    let mut f = DenseMatrix::zeros(16, 16);
    for (a, b) in pairs {
        for x in [a, b] {
            if x.blocks.iter().any(|blk| !blk.coeffs[0].is_zero()) {
                return Err(SpectralError::ImaginaryRequired);
            }
        }
        let pa = alg.rep(Side::Left, a).0;
        let pb = alg.rep(Side::Left, b).0;
        let da = d.matrix.commutator(&pa);
        let daj = jconj(&da);
        let pbj = jconj(&pb);
        let t1 = da.commutator(&(&pb + &pbj.scale(&half)));
        let t2 = daj.commutator(&(&pbj + &pb.scale(&half)));
        let term = if eps > 0 { &t1 - &t2 } else { &t1 + &t2 };
        f = &f + &term;
    }
    if !f.is_symmetric() {
        return Err(SpectralError::AssemblyCheck("fluctuation hermiticity"));
    }
    for r in 0..8 {
        for c in 0..8 {
            if !f.get(r, c).is_zero() || !f.get(8 + r, 8 + c).is_zero() {
                return Err(SpectralError::AssemblyCheck("fluctuation block off-diagonal"));
            }
        }
    }
    let fj = f.matmul(&j);
    let jf = j.matmul(&f);
    let ok = if eps > 0 { fj == jf } else { (&fj + &jf).is_zero() };
    if !ok {
        return Err(SpectralError::AssemblyCheck("fluctuation J-compatibility"));
    }
    let coeffs = DenseMatrix::from_fn(8, 8, |r, c| f.get(r, 8 + c).clone());
    Ok(DiracOperator { matrix: f, coeffs })
}

/// KO sign triple `(ε, ε', ε'')` for one factor or the product.
pub type SignTriple = (i8, i8, i8);

/// KO sign report: finite factor, flat continuous factor, product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoReport {
    pub finite: SignTriple,
    pub continuous: SignTriple,
    pub product: SignTriple,
}

fn definite_sign(
    relations: &[(CMatrix, CMatrix)],
    name: &'static str,
) -> Result<i8, SpectralError> {
    let mut plus_ok = true;
    let mut minus_ok = true;
    let mut seen = false;
    for (lhs, rhs) in relations {
        match compare_sign(lhs, rhs) {
            Some(1) => {
                seen = true;
                minus_ok = false;
            }
            Some(-1) => {
                seen = true;
                plus_ok = false;
            }
            None if lhs.is_zero() && rhs.is_zero() => {}
            _ => {
                plus_ok = false;
                minus_ok = false;
            }
        }
    }
    match (seen, plus_ok, minus_ok) {
        (true, true, false) => Ok(1),
        (true, false, true) => Ok(-1),
        _ => Err(SpectralError::SignIndeterminate(name)),
    }
}

/// Compute the KO sign table for the finite factor (with a canonical Dirac
/// operator of type `D₊` or `D₋` matching `eps_f`), the flat continuous
/// factor, and their product, all by exact matrix comparison.
pub fn ko_sign_table(alg: &SumAlgebra, eps_f: i8) -> Result<KoReport, SpectralError> {
    require_two_octonions(alg)?;
    // canonical finite Dirac operator of the requested type
    let mut coeffs = DenseMatrix::zeros(8, 8);
    if eps_f > 0 {
        coeffs.set(0, 0, ExactScalar::one());
    } else {
        coeffs.set(0, 1, ExactScalar::one());
    }
    let d_f = dirac_general(alg, &coeffs)?.matrix;
    let j_f = alg.involution_j().0;
    let mut gamma_f = DenseMatrix::identity(16);
    for i in 8..16 {
        gamma_f.set(i, i, ExactScalar::from_int(-1));
    }

    // finite factor: J real and linear
    let eps_fin = {
        let jj = j_f.matmul(&j_f);
        if jj == DenseMatrix::identity(16) {
            1
        } else if (&jj + &DenseMatrix::identity(16)).is_zero() {
            -1
        } else {
            return Err(SpectralError::SignIndeterminate("finite J squared"));
        }
    };
    let eps_fin_p = {
        let jd = j_f.matmul(&d_f);
        let dj = d_f.matmul(&j_f);
        if jd == dj {
            1
        } else if (&jd + &dj).is_zero() {
            -1
        } else {
            return Err(SpectralError::SignIndeterminate("finite JD vs DJ"));
        }
    };
    let eps_fin_pp = {
        let jg = j_f.matmul(&gamma_f);
        let gj = gamma_f.matmul(&j_f);
        if jg == gj {
            1
        } else if (&jg + &gj).is_zero() {
            -1
        } else {
            return Err(SpectralError::SignIndeterminate("finite J gamma"));
        }
    };
    let finite = (eps_fin, eps_fin_p, eps_fin_pp);

    // continuous factor: J_c = γ⁰γ² ∘ cc, D components γ^a, grading γ₅
    let k_c = j_continuous_linear();
    let g5 = gamma5();
    let eps_c = definite_sign(
        &[(k_c.matmul(&k_c.conj()), CMatrix::identity(4))],
        "continuous J squared",
    )?;
    let dirac_components: Vec<CMatrix> = (0..4).map(gamma_a).collect();
    let rels: Vec<(CMatrix, CMatrix)> = dirac_components
        .iter()
        .map(|g| (k_c.matmul(&g.conj()), g.matmul(&k_c)))
        .collect();
    let eps_c_p = definite_sign(&rels, "continuous JD vs DJ")?;
    let eps_c_pp = definite_sign(
        &[(k_c.matmul(&g5.conj()), g5.matmul(&k_c))],
        "continuous J gamma",
    )?;
    let continuous = (eps_c, eps_c_p, eps_c_pp);

    // product: J = J_c ⊗ J_F for ε'_F = −1, γ_c J_c ⊗ J_F for ε'_F = +1;
    // D = Σ γ^a ⊗ 𝕀 (component-wise) + γ₅ ⊗ D_F; γ = γ₅ ⊗ γ_F
    let jf_c = CMatrix::from_real(&j_f);
    let df_c = CMatrix::from_real(&d_f);
    let gf_c = CMatrix::from_real(&gamma_f);
    let a_part = if eps_f > 0 { g5.matmul(&k_c) } else { k_c.clone() };
    let k_prod = a_part.kron(&jf_c);
    let id16 = CMatrix::identity(16);
    let id64 = CMatrix::identity(64);

    let eps_prod = definite_sign(
        &[(k_prod.matmul(&k_prod.conj()), id64.clone())],
        "product J squared",
    )?;
    let mut rels: Vec<(CMatrix, CMatrix)> = dirac_components
        .iter()
        .map(|g| {
            let x = g.kron(&id16);
            (k_prod.matmul(&x.conj()), x.matmul(&k_prod))
        })
        .collect();
    let finite_term = g5.kron(&df_c);
    rels.push((
        k_prod.matmul(&finite_term.conj()),
        finite_term.matmul(&k_prod),
    ));
    let eps_prod_p = definite_sign(&rels, "product JD vs DJ")?;
    let gamma_prod = g5.kron(&gf_c);
    let eps_prod_pp = definite_sign(
        &[(
            k_prod.matmul(&gamma_prod.conj()),
            gamma_prod.matmul(&k_prod),
        )],
        "product J gamma",
    )?;
    let product = (eps_prod, eps_prod_p, eps_prod_pp);

    Ok(KoReport {
        finite,
        continuous,
        product,
    })
}
