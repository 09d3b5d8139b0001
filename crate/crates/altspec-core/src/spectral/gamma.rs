//! Constant gamma matrices of the flat continuous factor and exact
//! complex-rational matrix arithmetic for the KO sign computations.
//!
//! The real structure of the continuous factor is antilinear; operators
//! here are handled as a linear part plus entrywise conjugation, so sign
//! relations like `J X = ε X J` become exact matrix comparisons between
//! `K·conj(X)` and `±X·K` for the linear part `K`.

use alloc::vec::Vec;

use crate::exactlin::ExactScalar;

/// Exact complex rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CScalar {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl CScalar {
    pub fn zero() -> Self {
        CScalar {
            re: ExactScalar::zero(),
            im: ExactScalar::zero(),
        }
    }

    pub fn one() -> Self {
        CScalar {
            re: ExactScalar::one(),
            im: ExactScalar::zero(),
        }
    }

    pub fn i() -> Self {
        CScalar {
            re: ExactScalar::zero(),
            im: ExactScalar::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        CScalar {
            re: ExactScalar::from_int(n),
            im: ExactScalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn add(&self, o: &CScalar) -> Self {
        CScalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn mul(&self, o: &CScalar) -> Self {
        CScalar {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn neg(&self) -> Self {
        CScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Dense complex-rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CScalar>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: alloc::vec![CScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CScalar::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &CScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn from_real(m: &crate::exactlin::DenseMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(
                    r,
                    c,
                    CScalar {
                        re: m.get(r, c).clone(),
                        im: ExactScalar::zero(),
                    },
                );
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(CScalar::conj).collect(),
        }
    }

    pub fn neg(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(CScalar::neg).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CScalar::is_zero)
    }

    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn pauli(k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    match k {
        1 => {
            m.set(0, 1, CScalar::one());
            m.set(1, 0, CScalar::one());
        }
        2 => {
            m.set(0, 1, CScalar::i().neg());
            m.set(1, 0, CScalar::i());
        }
        3 => {
            m.set(0, 0, CScalar::one());
            m.set(1, 1, CScalar::from_int(-1));
        }
        _ => unreachable!(),
    }
    m
}

/// Euclidean Weyl-basis gamma matrix, `a = 0..3`; all square to `+1`.
pub fn gamma(a: usize) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    match a {
        0 => {
            for i in 0..2 {
                m.set(i, 2 + i, CScalar::one());
                m.set(2 + i, i, CScalar::one());
            }
        }
        1..=3 => {
            let s = pauli(a);
            for r in 0..2 {
                for c in 0..2 {
                    let v = s.get(r, c);
                    if !v.is_zero() {
                        m.set(r, 2 + c, CScalar::i().mul(v));
                        m.set(2 + r, c, CScalar::i().mul(v).neg());
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    m
}

/// Chirality `γ₅ = γ⁰γ¹γ²γ³`.
pub fn gamma5() -> CMatrix {
    gamma(0)
        .matmul(&gamma(1))
        .matmul(&gamma(2))
        .matmul(&gamma(3))
}

/// Linear part of the continuous real structure `J_c = γ⁰γ² ∘ cc`.
pub fn j_continuous_linear() -> CMatrix {
    gamma(0).matmul(&gamma(2))
}

/// Decide `lhs = sign · rhs` exactly; `None` when neither sign matches or
/// both sides vanish.
pub fn compare_sign(lhs: &CMatrix, rhs: &CMatrix) -> Option<i8> {
    if lhs.is_zero() && rhs.is_zero() {
        return None;
    }
    if *lhs == *rhs {
        Some(1)
    } else if *lhs == rhs.neg() {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gammas_form_a_euclidean_clifford_algebra() {
        for a in 0..4 {
            for b in 0..4 {
                let g = gamma(a).matmul(&gamma(b));
                let h = gamma(b).matmul(&gamma(a));
                let mut anti = CMatrix::zeros(4, 4);
                for r in 0..4 {
                    for c in 0..4 {
                        anti.set(r, c, g.get(r, c).add(h.get(r, c)));
                    }
                }
                if a == b {
                    let mut two = CMatrix::identity(4);
                    for i in 0..4 {
                        two.set(i, i, CScalar::from_int(2));
                    }
                    assert_eq!(anti, two);
                } else {
                    assert!(anti.is_zero());
                }
            }
        }
    }

    #[test]
    fn gamma5_squares_to_identity_and_anticommutes() {
        let g5 = gamma5();
        assert_eq!(g5.matmul(&g5), CMatrix::identity(4));
        for a in 0..4 {
            let lhs = g5.matmul(&gamma(a));
            let rhs = gamma(a).matmul(&g5);
            assert_eq!(compare_sign(&lhs, &rhs), Some(-1));
        }
    }
}
