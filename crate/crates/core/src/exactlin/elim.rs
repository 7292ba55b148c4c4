//! Fraction-free (Bareiss) elimination.
//!
//! Rows are first scaled to integers; every intermediate entry is then a minor
//! of that integer matrix, so the exact division by the previous pivot never
//! introduces denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::matrix::{normalize_leading, Matrix, Vector};
use crate::rational::Rational;

pub(crate) struct Echelon {
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    cols: usize,
}

fn clear_denominators(row: &mut [Rational]) {
    if row.iter().all(Rational::is_integer) {
        return;
    }
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let factor = Rational::from(lcm);
    for x in row.iter_mut() {
        *x *= &factor;
    }
}

impl Echelon {
    pub(crate) fn of_rows(mut rows: Vec<Vector>, cols: usize) -> Self {
        for r in rows.iter_mut() {
            clear_denominators(r);
        }
        let mut pivots = Vec::new();
        let mut prev = Rational::one();
        let mut r = 0;
        for col in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let piv = pivot_row[col].clone();
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[col]);
                for j in col + 1..cols {
                    let a = &row[j];
                    let b = &pivot_row[j];
                    if a.is_zero() && (lead.is_zero() || b.is_zero()) {
                        continue;
                    }
                    let mut v = &piv * a;
                    if !lead.is_zero() && !b.is_zero() {
                        v -= &lead * b;
                    }
                    row[j] = if prev.is_one() { v } else { &v / &prev };
                }
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        Echelon { rows, pivots, cols }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn kernel_basis(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
                    let s: Rational = (pc + 1..self.cols)
                        .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                        .map(|j| &row[j] * &x[j])
                        .sum();
                    if !s.is_zero() {
                        x[pc] = -(&s / &row[pc]);
                    }
                }
                normalize_leading(&mut x);
                x
            })
            .collect()
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce(x: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let to_u64 = |b: BigInt| -> u64 { u64::try_from(b.mod_floor(&p)).unwrap() };
    let den = to_u64(x.denom());
    if den == 0 {
        return None;
    }
    Some(mul_mod(to_u64(x.numer()), pow_mod(den, PRIME - 2)))
}

/// Rank of the image of `rows` modulo a large prime, or `None` if some
/// denominator vanishes there. Never exceeds the rank over the rationals.
pub(crate) fn modular_rank(rows: &[&[Rational]], cols: usize) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(reduce).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][col], PRIME - 2);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv);
            for j in col..cols {
                if pivot[j] != 0 {
                    row[j] = (row[j] + PRIME - mul_mod(f, pivot[j])) % PRIME;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

pub(crate) fn solve_columns(basis: &Matrix, rhs: &Matrix) -> Result<Option<Matrix>> {
    if basis.rows() != rhs.rows() {
        return Err(Error::Shape(format!(
            "solve with {} equations but {} right-hand-side rows",
            basis.rows(),
            rhs.rows()
        )));
    }
    let k = basis.cols();
    let m = rhs.cols();
    let rows: Vec<Vector> = (0..basis.rows())
        .map(|i| basis.row(i).iter().chain(rhs.row(i)).cloned().collect())
        .collect();
    let ech = Echelon::of_rows(rows, k + m);
    let unknown_pivots = ech.pivots.iter().filter(|&&p| p < k).count();
    if unknown_pivots < k {
        return Err(Error::Singular(format!(
            "coefficient matrix has rank {unknown_pivots} < {k} columns"
        )));
    }
    if ech.pivots.len() > k {
        return Ok(None);
    }
    let mut out = Matrix::zeros(k, m);
    for c in 0..m {
        let mut x = vec![Rational::zero(); k];
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut s = row[k + c].clone();
            for j in pc + 1..k {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s -= &row[j] * &x[j];
                }
            }
            x[pc] = &s / &row[pc];
        }
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, c, v);
        }
    }
    Ok(Some(out))
}

/// Incrementally maintained span of vectors, kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    rows: Vec<(usize, Vector)>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let c = v[*pc].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pc) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
    }

    /// The reduced echelon basis, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vector> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(pc, _)| *pc);
        rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        normalize_leading(&mut w);
        for (_, row) in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let c = row[pc].clone();
                for (x, r) in row.iter_mut().zip(&w).skip(pc) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}
