//! Matrix-free Kronecker operators.
//!
//! A vector of length `n_1 * ... * n_D` is viewed as a tensor with the first
//! factor slowest-varying, matching [`Matrix::kron`]. Each factor is applied
//! along its own axis, so memory stays proportional to the vector length.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::matrix::{Matrix, Vector};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KronMode {
    /// `sum_j I ⊗ ... ⊗ F_j ⊗ ... ⊗ I`
    Sum,
    /// `F_1 ⊗ F_2 ⊗ ... ⊗ F_D`
    Product,
}

/// Sparse row of a factor matrix: `(column, value, value == 1)`.
type SparseRow = Vec<(usize, Rational, bool)>;

#[derive(Clone, Debug)]
pub struct KronSumOperator {
    factors: Vec<Matrix>,
    mode: KronMode,
    sparse: Vec<Vec<SparseRow>>,
}

impl KronSumOperator {
    pub fn new(factors: Vec<Matrix>, mode: KronMode) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("Kronecker operator needs a factor".into()));
        }
        if let Some(f) = factors.iter().find(|f| !f.is_square()) {
            return Err(Error::Shape(format!(
                "factor of shape {}x{} is not square",
                f.rows(),
                f.cols()
            )));
        }
        let sparse = factors
            .iter()
            .map(|f| {
                (0..f.rows())
                    .map(|i| {
                        f.row(i)
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(j, x)| (j, x.clone(), x.is_one()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(KronSumOperator {
            factors,
            mode,
            sparse,
        })
    }

    /// `D` copies of the same factor.
    pub fn uniform(factor: Matrix, copies: usize, mode: KronMode) -> Result<Self> {
        Self::new(vec![factor; copies], mode)
    }

    pub fn factors(&self) -> &[Matrix] {
        &self.factors
    }

    pub fn mode(&self) -> KronMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Matrix::rows).product()
    }

    /// The operator as an explicit matrix. Only sensible for small dimensions.
    pub fn materialize(&self) -> Matrix {
        match self.mode {
            KronMode::Product => {
                let mut it = self.factors.iter();
                let first = it.next().unwrap().clone();
                it.fold(first, |acc, f| acc.kron(f))
            }
            KronMode::Sum => {
                let n = self.dim();
                let mut total = Matrix::zeros(n, n);
                for pos in 0..self.factors.len() {
                    let mut term = Matrix::identity(1);
                    for (j, f) in self.factors.iter().enumerate() {
                        let piece = if j == pos {
                            f.clone()
                        } else {
                            Matrix::identity(f.rows())
                        };
                        term = term.kron(&piece);
                    }
                    total = total.add(&term).expect("same shape");
                }
                total
            }
        }
    }

    fn apply_axis(&self, axis: usize, v: &[Rational], out: &mut [Rational], accumulate: bool) {
        let n_axis = self.factors[axis].rows();
        let stride: usize = self.factors[axis + 1..].iter().map(Matrix::rows).product();
        let block = n_axis * stride;
        let rows = &self.sparse[axis];
        out.par_chunks_mut(block)
            .zip(v.par_chunks(block))
            .for_each(|(out_block, in_block)| {
                for s in 0..stride {
                    for (i, row) in rows.iter().enumerate() {
                        let mut acc = if accumulate {
                            std::mem::take(&mut out_block[i * stride + s])
                        } else {
                            Rational::zero()
                        };
                        for (j, coeff, unit) in row {
                            let x = &in_block[j * stride + s];
                            if x.is_zero() {
                                continue;
                            }
                            if *unit {
                                acc += x;
                            } else {
                                acc += coeff * x;
                            }
                        }
                        out_block[i * stride + s] = acc;
                    }
                }
            });
    }

    /// Applies the operator to `v` without forming the full matrix.
    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::Shape(format!(
                "operator of dimension {n} applied to length-{} vector",
                v.len()
            )));
        }
        match self.mode {
            KronMode::Sum => {
                let mut out = vec![Rational::zero(); n];
                for axis in 0..self.factors.len() {
                    self.apply_axis(axis, v, &mut out, true);
                }
                Ok(out)
            }
            KronMode::Product => {
                let mut cur = v.to_vec();
                let mut next = vec![Rational::zero(); n];
                for axis in 0..self.factors.len() {
                    self.apply_axis(axis, &cur, &mut next, false);
                    std::mem::swap(&mut cur, &mut next);
                }
                Ok(cur)
            }
        }
    }

    /// Applies the operator to every column of `m`.
    pub fn apply_columns(&self, m: &Matrix) -> Result<Matrix> {
        let cols = m
            .columns()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.dim(), &cols)
    }
}

pub fn kron_apply(op: &KronSumOperator, v: &[Rational]) -> Result<Vector> {
    op.apply(v)
}
