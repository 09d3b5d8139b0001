//! Incremental sparse row reduction.
//!
//! Constraint systems in this crate (Leibniz rules, intertwining relations)
//! produce huge numbers of rows with only a handful of nonzero entries each.
//! [`RowReducer`] absorbs such rows one at a time, maintaining a row-echelon
//! basis keyed by leading column. The final reduced row echelon form is
//! canonical, so nullspace bases are independent of row insertion order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ExactScalar;

/// Sparse row: strictly increasing column indices with nonzero coefficients.
pub type SparseRow = Vec<(usize, ExactScalar)>;

/// `dst += c * src` on sparse rows.
fn add_scaled(dst: &SparseRow, c: &ExactScalar, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            let v = c * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + &(c * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(mut row: SparseRow) -> SparseRow {
    if let Some((_, lead)) = row.first() {
        let inv = lead.recip().expect("leading entry nonzero");
        if !inv.is_one() {
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
        }
    }
    row
}

/// Row-echelon accumulator over a fixed column count.
pub struct RowReducer {
    cols: usize,
    /// Pivot rows keyed by leading column; each normalized to leading 1.
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots, returning the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, coeff)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(p) => row = add_scaled(&row, &-coeff, p),
                None => break,
            }
        }
        row
    }

    /// Insert a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let rem = self.reduce(row);
        if rem.is_empty() {
            return false;
        }
        let rem = normalize(rem);
        self.pivots.insert(rem[0].0, rem);
        true
    }

    /// Insert a dense row (zeros skipped).
    pub fn insert_dense(&mut self, row: &[ExactScalar]) -> bool {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.insert(sparse)
    }

    /// True iff the row lies in the span of the inserted rows.
    pub fn contains(&self, row: &[ExactScalar]) -> bool {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.reduce(sparse).is_empty()
    }

    /// Back-substitute to full reduced row echelon form.
    fn into_rref(mut self) -> BTreeMap<usize, SparseRow> {
        let pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        // Eliminate every pivot column from the tails of earlier rows,
        // working upwards so each row is fixed exactly once.
        for &pc in pivot_cols.iter().rev() {
            let pivot_row = self.pivots.get(&pc).expect("pivot present").clone();
            let targets: Vec<usize> = self
                .pivots
                .range(..pc)
                .filter(|(_, row)| row.iter().any(|(c, _)| *c == pc))
                .map(|(k, _)| *k)
                .collect();
            for t in targets {
                let row = self.pivots.get(&t).expect("row present");
                let coeff = row
                    .iter()
                    .find(|(c, _)| *c == pc)
                    .map(|(_, v)| v.clone())
                    .expect("entry present");
                let new_row = add_scaled(row, &-coeff, &pivot_row);
                self.pivots.insert(t, new_row);
            }
        }
        self.pivots
    }

    /// Canonical nullspace basis of the inserted row system.
    ///
    /// One basis vector per free column `f`: it has `1` at `f` and
    /// `-rref[p][f]` at each pivot column `p`, so the basis (and its order)
    /// depends only on the row span.
    pub fn into_nullspace(self) -> Vec<Vec<ExactScalar>> {
        let cols = self.cols;
        let rref = self.into_rref();
        let mut basis = Vec::with_capacity(cols - rref.len());
        for free in 0..cols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut v = alloc::vec![ExactScalar::zero(); cols];
            v[free] = ExactScalar::one();
            for (pivot_col, row) in &rref {
                if let Some((_, coeff)) = row.iter().find(|(c, _)| *c == free) {
                    v[*pivot_col] = -coeff;
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn rank_and_nullspace_of_small_system() {
        // x + y = 0, y + z = 0  =>  nullspace spanned by (1, -1, 1)
        let mut r = RowReducer::new(3);
        assert!(r.insert(vec![(0, s(1)), (1, s(1))]));
        assert!(r.insert(vec![(1, s(1)), (2, s(1))]));
        assert!(!r.insert(vec![(0, s(1)), (2, s(-1))])); // dependent
        assert_eq!(r.rank(), 2);
        let ns = r.into_nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s(1), s(-1), s(1)]);
    }

    #[test]
    fn insertion_order_does_not_change_nullspace() {
        let rows: Vec<SparseRow> = vec![
            vec![(0, s(2)), (2, s(4))],
            vec![(1, s(1)), (3, s(-1))],
            vec![(0, s(1)), (1, s(1)), (2, s(2)), (3, s(-1))],
        ];
        let mut a = RowReducer::new(4);
        for row in rows.iter() {
            a.insert(row.clone());
        }
        let mut b = RowReducer::new(4);
        for row in rows.iter().rev() {
            b.insert(row.clone());
        }
        assert_eq!(a.into_nullspace(), b.into_nullspace());
    }
}
