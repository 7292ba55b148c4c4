//! Closed forms for the irreducible modules `L_{p,k}(D)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::hamming::binomial;
use crate::rational::Rational;

/// Which generator acts diagonally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gauge {
    /// `A(D)` tridiagonal, `A*(D)` diagonal.
    ATridiagonal,
    /// `A(D)` diagonal, `A*(D)` tridiagonal.
    ADiagonal,
}

/// Labels and counts of one isomorphism class of irreducible modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleDescriptor {
    pub p: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub dim: usize,
    pub multiplicity: u64,
    pub support: Vec<usize>,
}

/// All `(p, k)` with `0 <= k <= p/2`, `p <= D`, ordered by descending `p`
/// then ascending `k`.
pub fn labels(dim: usize) -> Vec<(usize, usize)> {
    (0..=dim)
        .rev()
        .flat_map(|p| (0..=p / 2).map(move |k| (p, k)))
        .collect()
}

/// `(d, r) = (p - 2k, D + k - p)`.
pub fn pk_to_dr(dim: usize, p: usize, k: usize) -> (usize, usize) {
    (p - 2 * k, dim + k - p)
}

/// `(p, k) = (2D - d - 2r, D - d - r)`.
pub fn dr_to_pk(dim: usize, d: usize, r: usize) -> Result<(usize, usize)> {
    if d + r > dim || 2 * r + d < dim {
        return Err(Error::Domain(format!("(d, r) = ({d}, {r}) is not a label for D = {dim}")));
    }
    Ok((2 * dim - d - 2 * r, dim - d - r))
}

fn check_label(dim: usize, p: usize, k: usize) -> Result<()> {
    if p > dim || 2 * k > p {
        return Err(Error::Domain(format!(
            "(p, k) = ({p}, {k}) needs p <= D = {dim} and k <= p/2"
        )));
    }
    Ok(())
}

/// `(p-2k+1)/(p-k+1) C(D,p) C(p,k) (q-2)^(D-p)`.
pub fn class_multiplicity(dim: usize, q: usize, p: usize, k: usize) -> Result<u64> {
    check_label(dim, p, k)?;
    let m = Rational::new((p - 2 * k + 1) as i64, (p - k + 1) as i64)
        * Rational::from(binomial(dim, p))
        * Rational::from(binomial(p, k))
        * Rational::from(q - 2).pow((dim - p) as u32);
    if !m.is_integer() {
        return Err(Error::Verification(format!("multiplicity {m} is not an integer")));
    }
    m.to_i64()
        .map(|v| v as u64)
        .ok_or_else(|| Error::Resource(format!("multiplicity {m} does not fit in 64 bits")))
}

/// `sum over labels of (p-2k+1)^2`.
pub fn wedderburn_dimension(dim: usize) -> usize {
    labels(dim).iter().map(|&(p, k)| (p - 2 * k + 1).pow(2)).sum()
}

fn tridiagonal(n: usize, diag: impl Fn(usize) -> i64, sub: impl Fn(usize) -> i64, sup: impl Fn(usize) -> i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Rational::from_int(diag(i)));
        if i + 1 < n {
            m.set(i + 1, i, Rational::from_int(sub(i)));
        }
        if i > 0 {
            m.set(i - 1, i, Rational::from_int(sup(i)));
        }
    }
    m
}

fn pair(gauge: Gauge, tri: Matrix, diag: Matrix) -> (Matrix, Matrix) {
    match gauge {
        Gauge::ATridiagonal => (tri, diag),
        Gauge::ADiagonal => (diag, tri),
    }
}

/// Matrices of `A(D)` and `A*(D)` on `L_{p,k}(D)`:
/// `α_i = (q-2)(i+k) + p - D`, `β_i = i + 1`, `γ_i = (q-1)(p-i-2k+1)`,
/// `θ_i = q(p-i-k) - D`.
pub fn module_matrices(p: usize, k: usize, dim: usize, q: usize, gauge: Gauge) -> Result<(Matrix, Matrix)> {
    check_label(dim, p, k)?;
    let n = p - 2 * k + 1;
    let (p, k, dd, q) = (p as i64, k as i64, dim as i64, q as i64);
    let tri = tridiagonal(
        n,
        |i| (q - 2) * (i as i64 + k) + p - dd,
        |i| i as i64 + 1,
        |i| (q - 1) * (p - i as i64 - 2 * k + 1),
    );
    let theta: Vec<Rational> = (0..n).map(|i| Rational::from_int(q * (p - i as i64 - k) - dd)).collect();
    Ok(pair(gauge, tri, Matrix::diagonal(&theta)))
}

/// The same matrices from the `(d, r)` parametrization:
/// `α_i = (D-d+i-r)(q-1) - i - r`, `β_i = i + 1`, `γ_i = (q-1)(d-i+1)`,
/// `θ_i = D(q-1) - q(i+r)`.
pub fn module_matrices_dr(d: usize, r: usize, dim: usize, q: usize, gauge: Gauge) -> Result<(Matrix, Matrix)> {
    dr_to_pk(dim, d, r)?;
    let n = d + 1;
    let (d, r, dd, q) = (d as i64, r as i64, dim as i64, q as i64);
    let tri = tridiagonal(
        n,
        |i| (dd - d + i as i64 - r) * (q - 1) - i as i64 - r,
        |i| i as i64 + 1,
        |i| (q - 1) * (d - i as i64 + 1),
    );
    let theta: Vec<Rational> = (0..n).map(|i| Rational::from_int(dd * (q - 1) - q * (i as i64 + r))).collect();
    Ok(pair(gauge, tri, Matrix::diagonal(&theta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_matrix_example() {
        let (a, s) = module_matrices(2, 0, 3, 3, Gauge::ATridiagonal).unwrap();
        assert_eq!(a, Matrix::from_ints(&[&[-1, 4, 0], &[1, 0, 2], &[0, 2, 1]]));
        assert_eq!(s, Matrix::from_ints(&[&[3, 0, 0], &[0, 0, 0], &[0, 0, -3]]));
        let (a2, s2) = module_matrices(2, 0, 3, 3, Gauge::ADiagonal).unwrap();
        assert_eq!((a2, s2), (s, a));
    }

    #[test]
    fn one_dimensional_modules() {
        for (dim, q) in [(3, 3), (4, 5)] {
            for (p, k) in labels(dim).into_iter().filter(|&(p, k)| p == 2 * k) {
                let (a, s) = module_matrices(p, k, dim, q, Gauge::ATridiagonal).unwrap();
                let (p, k, d, q) = (p as i64, k as i64, dim as i64, q as i64);
                assert_eq!(a, Matrix::from_ints(&[&[(q - 2) * k + p - d]]));
                assert_eq!(s, Matrix::from_ints(&[&[q * (p - k) - d]]));
            }
        }
    }

    #[test]
    fn parametrizations_agree() {
        for dim in 1..=4 {
            for q in [3, 4] {
                for (p, k) in labels(dim) {
                    let (d, r) = pk_to_dr(dim, p, k);
                    assert_eq!(dr_to_pk(dim, d, r).unwrap(), (p, k));
                    assert!((dim - d + 1) / 2 <= r && r <= dim - d);
                    for gauge in [Gauge::ATridiagonal, Gauge::ADiagonal] {
                        assert_eq!(
                            module_matrices(p, k, dim, q, gauge).unwrap(),
                            module_matrices_dr(d, r, dim, q, gauge).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn label_errors() {
        assert!(matches!(module_matrices(4, 0, 3, 3, Gauge::ATridiagonal), Err(Error::Domain(_))));
        assert!(matches!(module_matrices(2, 2, 3, 3, Gauge::ATridiagonal), Err(Error::Domain(_))));
        assert!(matches!(dr_to_pk(3, 0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicity_examples() {
        let m = |p, k| class_multiplicity(3, 3, p, k).unwrap();
        assert_eq!([m(3, 0), m(3, 1), m(2, 0), m(2, 1), m(1, 0), m(0, 0)], [1, 2, 3, 3, 3, 1]);
        let total: u64 = labels(3)
            .into_iter()
            .map(|(p, k)| class_multiplicity(3, 3, p, k).unwrap() * (p - 2 * k + 1) as u64)
            .sum();
        assert_eq!(total, 27);
        for q in [3, 4, 5, 6] {
            assert_eq!(class_multiplicity(3, q, 2, 0).unwrap(), 3 * (q as u64 - 2));
        }
    }

    #[test]
    fn multiplicities_are_integral() {
        for dim in 1..=12 {
            for (p, k) in labels(dim) {
                class_multiplicity(dim, 3, p, k).unwrap();
            }
        }
    }

    #[test]
    fn wedderburn_examples() {
        assert_eq!(wedderburn_dimension(3), 35);
        for dim in 1..=12 {
            assert_eq!(wedderburn_dimension(dim), binomial(dim + 4, 4));
        }
        assert_eq!(labels(4).len(), 9);
    }
}
