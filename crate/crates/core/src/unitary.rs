//! Dense complex matrices used for gate definitions and for the
//! brute-force tensor-product oracle that cross-checks the engine.

use num_complex::Complex64;

use crate::error::{domain, Error};

/// Dense square complex matrix, row-major. Dimensions are powers of two
/// in practice but nothing here requires it.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn zeros(dim: usize) -> Self {
        DenseUnitary {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from rows of (re, im) pairs.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, Error> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(domain(format!(
                    "row {r} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Kronecker product `self ⊗ other`; `self` indexes the more
    /// significant block.
    pub fn kron(&self, other: &DenseUnitary) -> DenseUnitary {
        let dim = self.dim * other.dim;
        let mut out = DenseUnitary::zeros(dim);
        for ar in 0..self.dim {
            for ac in 0..self.dim {
                let a = self.get(ar, ac);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for br in 0..other.dim {
                    for bc in 0..other.dim {
                        out.set(
                            ar * other.dim + br,
                            ac * other.dim + bc,
                            a * other.get(br, bc),
                        );
                    }
                }
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let dim = self.dim;
        let mut out = DenseUnitary::zeros(dim);
        for r in 0..dim {
            for k in 0..dim {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..dim {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (o, v) in out.entries.iter_mut().zip(other.entries.iter()) {
            *o += v;
        }
        out
    }

    pub fn dagger(&self) -> DenseUnitary {
        let mut out = DenseUnitary::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Applies the matrix to a state vector of matching length.
    pub fn mul_state(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.dim, "state length mismatch");
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(amps).map(|(m, a)| m * a).sum())
            .collect()
    }

    /// Largest element-wise deviation of `U†U` from the identity.
    pub fn max_unitarity_deviation(&self) -> f64 {
        let product = self.dagger().matmul(self);
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let expected = if r == c { 1.0 } else { 0.0 };
                let d = (product.get(r, c) - Complex64::new(expected, 0.0)).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.max_unitarity_deviation() <= tol
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest element-wise deviation from `other` over all global
    /// phases, i.e. `min_φ max_ij |e^{iφ}·self - other|`.
    pub fn phase_aligned_diff(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        // Align on the largest entry of self; global phase is fixed by
        // matching that entry's phase in other.
        let mut pivot = 0usize;
        let mut best = 0.0f64;
        for (i, v) in self.entries.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                pivot = i;
            }
        }
        if best == 0.0 {
            return self.max_abs_diff(other);
        }
        let ratio = other.entries[pivot] / self.entries[pivot];
        let phase = if ratio.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            ratio / ratio.norm()
        };
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}
