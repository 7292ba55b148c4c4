use std::fmt::Write as _;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::exactlin::elim;
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

/// Dense row-major matrix of exact rationals.
///
/// Column `j` holds the image of basis vector `j`, so an operator that sends
/// `v_i` to `... + beta_i v_{i+1}` has `beta_i` at `(i + 1, i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Shape(format!("column length differs from {rows}")));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Rational::from_int(rows[i][j]))
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Rational::from_int(-1))
    }

    /// `self + s * I`.
    pub fn shift(&self, s: &Rational) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("shift of a non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) + s;
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![Rational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        if !self.is_square() || !other.is_square() || self.rows != other.rows {
            return Err(Error::Shape(format!(
                "commutator of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Kronecker product; the left factor is the slowest-varying index.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![Rational::zero(); rows * cols];
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            data[(i1 * other.rows + i2) * cols + j1 * other.cols + j2] = a * b;
                        }
                    }
                }
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn hadamard(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "hadamard")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vector {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// First `(row, col)` where the two matrices differ, if any.
    pub fn first_mismatch(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn rank(&self) -> usize {
        elim::Echelon::of_rows(self.to_rows(), self.cols).rank()
    }

    /// Whether the rank equals `min(rows, cols)`. A full rank modulo a large
    /// prime certifies this cheaply; otherwise the exact rank decides.
    pub fn is_full_rank(&self) -> bool {
        let full = self.rows.min(self.cols);
        let rows: Vec<&[Rational]> = (0..self.rows).map(|i| self.row(i)).collect();
        if elim::modular_rank(&rows, self.cols) == Some(full) {
            return true;
        }
        self.rank() == full
    }

    /// Null-space basis; see [`kernel_basis`].
    pub fn kernel_basis(&self) -> Vec<Vector> {
        elim::Echelon::of_rows(self.to_rows(), self.cols).kernel_basis()
    }

    /// Solves `self * X = rhs` for a matrix `self` of full column rank.
    /// Returns `Ok(None)` when some column of `rhs` is outside the column space.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        elim::solve_columns(self, rhs)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        match self.solve(&Matrix::identity(self.rows))? {
            Some(inv) => Ok(inv),
            None => Err(Error::Singular("matrix is not invertible".into())),
        }
    }

    /// Text form: `rows cols` header, then `i j value` for every nonzero in
    /// row-major order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    writeln!(out, "{i} {j} {x}").unwrap();
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut m = Matrix::zeros(rows, cols);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = parts[..] else {
                return Err(Error::Parse(format!("bad entry line {line:?}")));
            };
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad row in {line:?}")))?;
            let j: usize = j.parse().map_err(|_| Error::Parse(format!("bad col in {line:?}")))?;
            if i >= rows || j >= cols {
                return Err(Error::Parse(format!("entry out of range: {line:?}")));
            }
            m.set(i, j, v.parse()?);
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.commutator(b)
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kron(b)
}

/// Exact null-space basis by fraction-free elimination. Each vector is scaled
/// so that its first nonzero coordinate is 1; vectors are ordered by their
/// free column. Empty iff `m` is injective.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Scales `v` so its first nonzero coordinate is 1. Zero vectors are unchanged.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip().unwrap();
            for x in v.iter_mut() {
                *x *= &inv;
            }
        }
    }
}
