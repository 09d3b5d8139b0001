//! Minimal dense `f64` matrices and the scaling-and-squaring exponential.
//!
//! Exact arithmetic covers every identity in this crate; floating point is
//! needed only to exponentiate derivations into automorphisms. Matrices here
//! are small (at most a few hundred rows), so a Taylor series after norm
//! scaling is accurate well past the 1e-9 tolerances used by callers.

use alloc::vec::Vec;

use crate::exactlin::DenseMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

impl FloatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMatrix {
            rows,
            cols,
            data: alloc::vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_exact(m: &DenseMatrix) -> Self {
        FloatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|v| v.to_f64()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn scale(&self, k: f64) -> Self {
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn add(&self, rhs: &FloatMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FloatMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, rhs: &FloatMatrix) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| fabs(self.get(r, c))).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &FloatMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| fabs(a - b))
            .fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring: scale until the norm is
    /// below 1/2, run the Taylor series to convergence, square back up.
    pub fn expm(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut norm = self.inf_norm();
        let mut squarings = 0u32;
        while norm > 0.5 {
            norm /= 2.0;
            squarings += 1;
        }
        let scaled = self.scale(1.0 / ((1u64 << squarings) as f64));

        let n = self.rows;
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..60u64 {
            term = term.matmul(&scaled).scale(1.0 / k as f64);
            result = result.add(&term);
            if term.inf_norm() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.matmul(&result);
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_zero_is_identity() {
        let z = FloatMatrix::zeros(4, 4);
        assert_eq!(z.expm(), FloatMatrix::identity(4));
    }

    #[test]
    fn expm_of_rotation_generator() {
        // exp(t·[[0,-1],[1,0]]) = [[cos t, -sin t],[sin t, cos t]]
        let mut g = FloatMatrix::zeros(2, 2);
        g.set(0, 1, -1.0);
        g.set(1, 0, 1.0);
        let t = 0.7f64;
        let e = g.scale(t).expm();
        let (c, s) = (t.cos(), t.sin());
        assert!((e.get(0, 0) - c).abs() < 1e-12);
        assert!((e.get(0, 1) + s).abs() < 1e-12);
        assert!((e.get(1, 0) - s).abs() < 1e-12);
        assert!((e.get(1, 1) - c).abs() < 1e-12);
    }

    #[test]
    fn expm_inverse_is_expm_of_negation() {
        let mut g = FloatMatrix::zeros(3, 3);
        g.set(0, 1, 2.0);
        g.set(1, 2, -1.5);
        g.set(2, 0, 0.5);
        let a = g.expm();
        let b = g.scale(-1.0).expm();
        let prod = a.matmul(&b);
        assert!(prod.max_abs_diff(&FloatMatrix::identity(3)) < 1e-12);
    }
}
