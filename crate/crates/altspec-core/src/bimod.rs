//! Split and reconstituted bimodules over `A = ⊕ⁿ 𝕆`.
//!
//! Elements live in sector-indexed tensor spaces `⊕_{ij} 𝕆 ⊗ V^{ij} ⊗ 𝕆`
//! with every `V^{ij}` of dimension 0 or 1, stored as dense 8×8 coefficient
//! blocks per active sector. The split actions multiply one tensor slot and
//! gate on the factor index; the reconstituted actions couple each sector
//! `(j,k)` to its mirror `(k,j)` with a sign `ε' = ±1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::compalg::CompElement;
use crate::dsum::{AlgebraElement, SumAlgebra};
use crate::exactlin::{DenseMatrix, ExactScalar, RowReducer};
use crate::Side;

/// Errors from bimodule operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimodError {
    /// Referenced sector is not active in the spec.
    MissingSector { sector: (usize, usize) },
    /// Reconstituted structure needs the mirror sector present.
    MissingMirrorSector { sector: (usize, usize) },
    /// Factor count of element and spec disagree.
    FactorMismatch { expected: usize, found: usize },
    /// κ table must be symmetric.
    AsymmetricKappa { at: (usize, usize) },
    /// Invalid index argument (factor or imaginary unit out of range).
    InvalidIndex,
}

impl core::fmt::Display for BimodError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BimodError::MissingSector { sector } => {
                write!(f, "sector ({}, {}) not present", sector.0, sector.1)
            }
            BimodError::MissingMirrorSector { sector } => {
                write!(f, "mirror of sector ({}, {}) not present", sector.0, sector.1)
            }
            BimodError::FactorMismatch { expected, found } => {
                write!(f, "expected {expected} factors, found {found}")
            }
            BimodError::AsymmetricKappa { at } => {
                write!(f, "kappa table asymmetric at ({}, {})", at.0, at.1)
            }
            BimodError::InvalidIndex => write!(f, "invalid factor or unit index"),
        }
    }
}

/// Which sectors `(i, j)` carry a one-dimensional `V^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorSpec {
    n: usize,
    active: Vec<(usize, usize)>,
}

impl SectorSpec {
    /// All `n²` sectors active (the `A ⊗ A` case).
    pub fn full(n: usize) -> Self {
        let mut active = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                active.push((i, j));
            }
        }
        SectorSpec { n, active }
    }

    /// A custom set of active sectors.
    pub fn custom(n: usize, mut sectors: Vec<(usize, usize)>) -> Self {
        sectors.sort_unstable();
        sectors.dedup();
        assert!(sectors.iter().all(|&(i, j)| i < n && j < n));
        SectorSpec { n, active: sectors }
    }

    pub fn factors(&self) -> usize {
        self.n
    }

    pub fn sectors(&self) -> &[(usize, usize)] {
        &self.active
    }

    pub fn has(&self, sector: (usize, usize)) -> bool {
        self.active.binary_search(&sector).is_ok()
    }

    /// Symmetric means every active `(i,j)` has `(j,i)` active.
    pub fn is_symmetric(&self) -> bool {
        self.active.iter().all(|&(i, j)| self.has((j, i)))
    }

    /// Total coefficient dimension: 64 per active sector.
    pub fn dim(&self) -> usize {
        64 * self.active.len()
    }

    fn sector_pos(&self, sector: (usize, usize)) -> Option<usize> {
        self.active.binary_search(&sector).ok()
    }

    /// Flat coefficient index of `e_s ⊗^{(sector)} e_t`.
    pub fn coeff_index(&self, sector: (usize, usize), s: usize, t: usize) -> Option<usize> {
        self.sector_pos(sector).map(|p| 64 * p + 8 * s + t)
    }
}

/// Element of `M = ⊕_{ij} 𝕆 ⊗ V^{ij} ⊗ 𝕆` as 8×8 blocks per sector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SectorElement {
    /// Coefficient c_{st} of `e_s ⊗ e_t`, keyed by sector.
    blocks: BTreeMap<(usize, usize), Vec<ExactScalar>>,
}

impl SectorElement {
    pub fn zero() -> Self {
        SectorElement::default()
    }

    /// `x ⊗^{(sector)} y`.
    pub fn tensor(sector: (usize, usize), x: &CompElement, y: &CompElement) -> Self {
        let mut block = alloc::vec![ExactScalar::zero(); 64];
        for (s, xs) in x.coeffs.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            for (t, yt) in y.coeffs.iter().enumerate() {
                if !yt.is_zero() {
                    block[8 * s + t] = xs * yt;
                }
            }
        }
        let mut e = SectorElement::zero();
        e.blocks.insert(sector, block);
        e.prune();
        e
    }

    pub fn basis(sector: (usize, usize), s: usize, t: usize) -> Self {
        let mut block = alloc::vec![ExactScalar::zero(); 64];
        block[8 * s + t] = ExactScalar::one();
        let mut e = SectorElement::zero();
        e.blocks.insert(sector, block);
        e
    }

    pub fn coeff(&self, sector: (usize, usize), s: usize, t: usize) -> ExactScalar {
        self.blocks
            .get(&sector)
            .map(|b| b[8 * s + t].clone())
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn sectors(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.iter().all(ExactScalar::is_zero))
    }

    fn prune(&mut self) {
        self.blocks.retain(|_, b| b.iter().any(|v| !v.is_zero()));
    }

    pub fn add_assign(&mut self, other: &SectorElement) {
        for (sec, block) in &other.blocks {
            let dst = self
                .blocks
                .entry(*sec)
                .or_insert_with(|| alloc::vec![ExactScalar::zero(); 64]);
            for (d, s) in dst.iter_mut().zip(block) {
                *d += s;
            }
        }
        self.prune();
    }

    pub fn add(&self, other: &SectorElement) -> SectorElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &SectorElement) -> SectorElement {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, k: &ExactScalar) -> SectorElement {
        if k.is_zero() {
            return SectorElement::zero();
        }
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            for v in b.iter_mut() {
                *v *= k;
            }
        }
        out
    }

    pub fn scaled_add_assign(&mut self, k: &ExactScalar, other: &SectorElement) {
        if k.is_zero() {
            return;
        }
        for (sec, block) in &other.blocks {
            let dst = self
                .blocks
                .entry(*sec)
                .or_insert_with(|| alloc::vec![ExactScalar::zero(); 64]);
            for (d, s) in dst.iter_mut().zip(block) {
                *d += &(k * s);
            }
        }
        self.prune();
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> ExactScalar {
        let mut best = ExactScalar::zero();
        for b in self.blocks.values() {
            for v in b {
                let a = v.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// Flatten onto the coefficient space of `spec` (inactive sectors must
    /// be empty).
    pub fn to_vector(&self, spec: &SectorSpec) -> Result<Vec<ExactScalar>, BimodError> {
        let mut v = alloc::vec![ExactScalar::zero(); spec.dim()];
        for (sec, block) in &self.blocks {
            let base = 64 * spec
                .sector_pos(*sec)
                .ok_or(BimodError::MissingSector { sector: *sec })?;
            for (i, c) in block.iter().enumerate() {
                v[base + i] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn from_vector(spec: &SectorSpec, v: &[ExactScalar]) -> SectorElement {
        assert_eq!(v.len(), spec.dim());
        let mut e = SectorElement::zero();
        for (p, sec) in spec.sectors().iter().enumerate() {
            let block = v[64 * p..64 * (p + 1)].to_vec();
            if block.iter().any(|c| !c.is_zero()) {
                e.blocks.insert(*sec, block);
            }
        }
        e
    }

    /// Sparse coefficient view `((sector, s, t), value)`.
    pub fn iter_coeffs(
        &self,
    ) -> impl Iterator<Item = ((usize, usize), usize, usize, &ExactScalar)> + '_ {
        self.blocks.iter().flat_map(|(sec, block)| {
            block
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(i, v)| (*sec, i / 8, i % 8, v))
        })
    }
}

fn check_compat(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    c: &AlgebraElement,
) -> Result<(), BimodError> {
    if alg.factors() != spec.factors() || c.blocks.len() != spec.factors() {
        return Err(BimodError::FactorMismatch {
            expected: spec.factors(),
            found: c.blocks.len(),
        });
    }
    Ok(())
}

/// Split action: per-sector multiplication of one tensor slot, gated by the
/// Kronecker delta on the factor index.
pub fn split_action(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    side: Side,
    c: &AlgebraElement,
    m: &SectorElement,
) -> Result<SectorElement, BimodError> {
    check_compat(alg, spec, c)?;
    let table = alg.table();
    let mut out = SectorElement::zero();
    for (sec, s, t, v) in m.iter_coeffs() {
        if !spec.has(sec) {
            return Err(BimodError::MissingSector { sector: sec });
        }
        let (j, k) = sec;
        match side {
            Side::Left => {
                let ci = &c.blocks[j];
                if ci.is_zero() {
                    continue;
                }
                let prod = table.multiply(ci, &table.basis(s)).expect("same table");
                out.scaled_add_assign(v, &SectorElement::tensor(sec, &prod, &table.basis(t)));
            }
            Side::Right => {
                let ci = &c.blocks[k];
                if ci.is_zero() {
                    continue;
                }
                let prod = table.multiply(&table.basis(t), ci).expect("same table");
                out.scaled_add_assign(v, &SectorElement::tensor(sec, &table.basis(s), &prod));
            }
        }
    }
    Ok(out)
}

/// Reconstituted action: the five-term sector-coupled products with sign
/// `ε' = ±1`. Acting with `c` in factor `i` on `a ⊗^{(jk)} b`:
///
/// left:  δ̂ʲᵢ ½[2(ca ⊗^{(jk)} b) + (ac ⊗^{(jk)} b) + ε'(b ⊗^{(kj)} ac)]
///        − δ̂ᵏᵢ ½[(a ⊗^{(jk)} cb) + ε'(cb ⊗^{(kj)} a)]
/// right: δ̂ᵏᵢ ½[2(a ⊗^{(jk)} bc) + (a ⊗^{(jk)} cb) + ε'(cb ⊗^{(kj)} a)]
///        − δ̂ʲᵢ ½[(ac ⊗^{(jk)} b) + ε'(b ⊗^{(kj)} ac)]
pub fn recon_action(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    side: Side,
    eps: i8,
    c: &AlgebraElement,
    m: &SectorElement,
) -> Result<SectorElement, BimodError> {
    check_compat(alg, spec, c)?;
    debug_assert!(eps == 1 || eps == -1);
    let table = alg.table();
    let half = ExactScalar::half();
    let eps_half = if eps > 0 { half.clone() } else { -&half };
    let mut out = SectorElement::zero();
    for (sec, s, t, v) in m.iter_coeffs() {
        let (j, k) = sec;
        if !spec.has(sec) {
            return Err(BimodError::MissingSector { sector: sec });
        }
        if !spec.has((k, j)) {
            return Err(BimodError::MissingMirrorSector { sector: sec });
        }
        let a = table.basis(s);
        let b = table.basis(t);
        for i in 0..alg.factors() {
            let ci = &c.blocks[i];
            if ci.is_zero() {
                continue;
            }
            let mul = |x: &CompElement, y: &CompElement| table.multiply(x, y).expect("same table");
            match side {
                Side::Left => {
                    if j == i {
                        let ca = mul(ci, &a);
                        let ac = mul(&a, ci);
                        out.scaled_add_assign(v, &SectorElement::tensor(sec, &ca, &b));
                        out.scaled_add_assign(&(v * &half), &SectorElement::tensor(sec, &ac, &b));
                        out.scaled_add_assign(
                            &(v * &eps_half),
                            &SectorElement::tensor((k, j), &b, &ac),
                        );
                    }
                    if k == i {
                        let cb = mul(ci, &b);
                        out.scaled_add_assign(&-&(v * &half), &SectorElement::tensor(sec, &a, &cb));
                        out.scaled_add_assign(
                            &-&(v * &eps_half),
                            &SectorElement::tensor((k, j), &cb, &a),
                        );
                    }
                }
                Side::Right => {
                    if k == i {
                        let bc = mul(&b, ci);
                        let cb = mul(ci, &b);
                        out.scaled_add_assign(v, &SectorElement::tensor(sec, &a, &bc));
                        out.scaled_add_assign(&(v * &half), &SectorElement::tensor(sec, &a, &cb));
                        out.scaled_add_assign(
                            &(v * &eps_half),
                            &SectorElement::tensor((k, j), &cb, &a),
                        );
                    }
                    if j == i {
                        let ac = mul(&a, ci);
                        out.scaled_add_assign(&-&(v * &half), &SectorElement::tensor(sec, &ac, &b));
                        out.scaled_add_assign(
                            &-&(v * &eps_half),
                            &SectorElement::tensor((k, j), &b, &ac),
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Bimodule involution `(a ⊗^{(jk)} b)* = b* ⊗^{(kj)} a*`, extended linearly.
pub fn bimodule_involution(
    alg: &SumAlgebra,
    spec: &SectorSpec,
    m: &SectorElement,
) -> Result<SectorElement, BimodError> {
    let table = alg.table();
    let mut out = SectorElement::zero();
    for (sec, s, t, v) in m.iter_coeffs() {
        let (j, k) = sec;
        if !spec.has((k, j)) {
            return Err(BimodError::MissingMirrorSector { sector: sec });
        }
        let bs = table.conjugate(&table.basis(t));
        let as_ = table.conjugate(&table.basis(s));
        out.scaled_add_assign(v, &SectorElement::tensor((k, j), &bs, &as_));
    }
    Ok(out)
}

/// Matrix of an action by `c` (or any linear map given columnwise) on the
/// flat coefficient space of `spec`.
pub fn action_matrix(
    spec: &SectorSpec,
    mut apply: impl FnMut(&SectorElement) -> SectorElement,
) -> DenseMatrix {
    let dim = spec.dim();
    let mut m = DenseMatrix::zeros(dim, dim);
    for (p, sec) in spec.sectors().iter().enumerate() {
        for s in 0..8 {
            for t in 0..8 {
                let img = apply(&SectorElement::basis(*sec, s, t));
                let col = 64 * p + 8 * s + t;
                for (sec2, s2, t2, v) in img.iter_coeffs() {
                    let row = spec
                        .coeff_index(sec2, s2, t2)
                        .expect("image stays on active sectors");
                    m.set(row, col, v.clone());
                }
            }
        }
    }
    m
}

/// Linear map between sector spaces with a structural tag.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub matrix: DenseMatrix,
    pub kind: MapKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    DerivationCompatible,
    Generic,
}

/// Classify all bimodule homomorphisms `Φ: M → N` between split bimodules:
/// the exact nullspace of the intertwining constraints
/// `Φ(c·m) = c·Φ(m)` and `Φ(m·c) = Φ(m)·c` over the basis of `A`.
///
/// Returned maps are verified to preserve sector indices and act only on
/// the `V` slots (scalar per sector).
pub fn classify_homomorphisms(
    alg: &SumAlgebra,
    spec_m: &SectorSpec,
    spec_n: &SectorSpec,
) -> Result<Vec<BimoduleMap>, BimodError> {
    let dim_m = spec_m.dim();
    let dim_n = spec_n.dim();
    // unknowns: Φ[r, c] flattened row-major
    let unknowns = dim_n * dim_m;
    let mut reducer = RowReducer::new(unknowns);
    let phi_idx = |r: usize, c: usize| r * dim_m + c;

    // π(e_{(f)I}) as sparse column maps on both spaces, both sides
    for f in 0..alg.factors() {
        for i in 0..alg.factor_dim() {
            let c = alg.basis_element(f, i);
            for &side in &[Side::Left, Side::Right] {
                let act_m = action_matrix(spec_m, |m| {
                    split_action(alg, spec_m, side, &c, m).expect("valid")
                });
                let act_n = action_matrix(spec_n, |m| {
                    split_action(alg, spec_n, side, &c, m).expect("valid")
                });
                // rows: (act_n · Φ − Φ · act_m)[p, q] = 0
                for p in 0..dim_n {
                    for q in 0..dim_m {
                        let mut row: Vec<(usize, ExactScalar)> = Vec::new();
                        for r in 0..dim_n {
                            let v = act_n.get(p, r);
                            if !v.is_zero() {
                                row.push((phi_idx(r, q), v.clone()));
                            }
                        }
                        for s in 0..dim_m {
                            let v = act_m.get(s, q);
                            if !v.is_zero() {
                                row.push((phi_idx(p, s), -v));
                            }
                        }
                        row.sort_unstable_by_key(|(c, _)| *c);
                        // merge duplicate columns
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
        }
    }

    let basis = reducer.into_nullspace();
    let maps = basis
        .into_iter()
        .map(|flat| {
            let matrix = DenseMatrix::from_fn(dim_n, dim_m, |r, c| flat[phi_idx(r, c)].clone());
            BimoduleMap {
                matrix,
                kind: MapKind::Homomorphism,
            }
        })
        .collect();
    Ok(maps)
}

/// True iff `map` (square, on `spec`) is sector-diagonal and scalar on each
/// sector: a multiple of the identity on every active 64-block, zero across
/// sectors.
pub fn is_sector_scalar(spec: &SectorSpec, map: &DenseMatrix) -> bool {
    let dim = spec.dim();
    if map.rows() != dim || map.cols() != dim {
        return false;
    }
    let blocks = spec.sectors().len();
    for bp in 0..blocks {
        for bq in 0..blocks {
            let scalar = map.get(64 * bp, 64 * bq).clone();
            for r in 0..64 {
                for c in 0..64 {
                    let v = map.get(64 * bp + r, 64 * bq + c);
                    if bp != bq || r != c {
                        if r == c {
                            if *v != scalar {
                                return false;
                            }
                        } else if !v.is_zero() {
                            return false;
                        }
                    }
                }
            }
            if bp != bq && !scalar.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Report of the exact-form spanning computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub generated_dim: usize,
    pub ambient_dim: usize,
    pub rounds: usize,
}

/// The canonical external derivation `Δ_{𝕀⊗𝕀}[a] = a ⊗ 𝕀 − 𝕀 ⊗ a` on the
/// full sector space.
pub fn delta_unit(alg: &SumAlgebra, basis_factor: usize, basis_index: usize) -> SectorElement {
    let table = alg.table();
    let mut out = SectorElement::zero();
    let x = table.basis(basis_index);
    let unit = table.unit();
    for k in 0..alg.factors() {
        out.add_assign(&SectorElement::tensor((basis_factor, k), &x, &unit));
    }
    for j in 0..alg.factors() {
        out.scaled_add_assign(
            &ExactScalar::from_int(-1),
            &SectorElement::tensor((j, basis_factor), &unit, &x),
        );
    }
    out
}

/// Smallest action-invariant subspace of `A ⊗ A` containing the exact forms
/// `Δ_{𝕀⊗𝕀}[e_{(a)I}]`: computes the derivation algebra, lifts it to the
/// full sector space, and closes under actions and lifted derivations.
pub fn universal_span_check(alg: &SumAlgebra) -> Result<SpanReport, BimodError> {
    let spec = SectorSpec::full(alg.factors());
    let ders = crate::deriv::derivation_algebra(alg);
    let lifts: Vec<DenseMatrix> =
        crate::deriv::lift_all(alg, &ders, crate::deriv::LiftTarget::Split(&spec))
            .expect("derivation-algebra elements lift")
            .into_iter()
            .map(|l| l.matrix)
            .collect();
    universal_span_check_with(alg, &lifts)
}

/// [`universal_span_check`] with caller-supplied lifted derivation
/// matrices, grown by alternating split actions by basis elements and the
/// supplied lifts until the dimension stabilises.
///
/// Panics after 20 rounds without stabilisation (the computations in scope
/// stabilise in a handful of rounds).
pub fn universal_span_check_with(
    alg: &SumAlgebra,
    derivation_lifts: &[DenseMatrix],
) -> Result<SpanReport, BimodError> {
    let spec = SectorSpec::full(alg.factors());
    let dim = spec.dim();
    let mut reducer = RowReducer::new(dim);
    let mut frontier: Vec<Vec<ExactScalar>> = Vec::new();
    for f in 0..alg.factors() {
        for i in 0..alg.factor_dim() {
            let v = delta_unit(alg, f, i).to_vector(&spec)?;
            if reducer.insert_dense(&v) {
                frontier.push(v);
            }
        }
    }

    let mut action_mats = Vec::new();
    for f in 0..alg.factors() {
        for i in 0..alg.factor_dim() {
            let c = alg.basis_element(f, i);
            for &side in &[Side::Left, Side::Right] {
                action_mats.push(action_matrix(&spec, |m| {
                    split_action(alg, &spec, side, &c, m).expect("valid")
                }));
            }
        }
    }

    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        assert!(rounds <= 20, "span closure failed to stabilise in 20 rounds");
        let mut next = Vec::new();
        for v in &frontier {
            for op in action_mats.iter().chain(derivation_lifts) {
                let img = op.apply(v);
                if reducer.insert_dense(&img) {
                    next.push(img);
                }
            }
        }
        frontier = next;
    }

    Ok(SpanReport {
        generated_dim: reducer.rank(),
        ambient_dim: dim,
        rounds,
    })
}
