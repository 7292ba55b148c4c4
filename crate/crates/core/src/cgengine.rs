//! Clebsch–Gordan decompositions of `U(sl2)`-modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vector, Matrix, SpanBasis, Vector};
use crate::hamming::binomial;
use crate::krawtchouk::{sl2_relation_check, Sl2Triple};
use crate::rational::Rational;
use crate::report::Check;

/// Irreducible summands `(label, multiplicity)`, labels descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgSummandList {
    pub summands: Vec<(usize, usize)>,
}

impl CgSummandList {
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|&(n, m)| m * (n + 1)).sum()
    }

    /// Builds a list from arbitrary `(label, multiplicity)` pairs.
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (n, m) in counts {
            *map.entry(n).or_insert(0) += m;
        }
        CgSummandList {
            summands: map.into_iter().rev().filter(|&(_, m)| m > 0).collect(),
        }
    }
}

impl fmt::Display for CgSummandList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|&(n, m)| if m == 1 { format!("L{n}") } else { format!("{m} L{n}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn nonneg(x: i64, what: &str) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Domain(format!("{what} = {x} is negative")))
}

/// `L_m ⊗ L_n = L_{m+n} + L_{m+n-2} + ... + L_{|m-n|}`.
pub fn cg_summands(m: i64, n: i64) -> Result<CgSummandList> {
    let (m, n) = (nonneg(m, "m")?, nonneg(n, "n")?);
    Ok(CgSummandList {
        summands: (0..=m.min(n)).map(|p| (m + n - 2 * p, 1)).collect(),
    })
}

/// Multiplicity of `L_{p-2k}` in the `p`-fold tensor power of `L_1`:
/// `(p-2k+1)/(p-k+1) C(p, k)`.
pub fn tensor_power_multiplicity(p: i64, k: i64) -> Result<u64> {
    if p < 1 {
        return Err(Error::Domain(format!("tensor power p = {p} must be at least 1")));
    }
    if k < 0 || 2 * k > p {
        return Err(Error::Domain(format!("k = {k} outside 0..={}", p / 2)));
    }
    let (p, k) = (p as usize, k as usize);
    let value = Rational::new((p - 2 * k + 1) as i64, (p - k + 1) as i64) * Rational::from(binomial(p, k));
    value
        .to_i64()
        .filter(|_| value.is_integer())
        .map(|v| v as u64)
        .ok_or_else(|| Error::Verification(format!("multiplicity {value} is not an integer")))
}

/// All copies of one irreducible `L_n` found inside a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicPiece {
    pub label: usize,
    /// Each copy is `v_0, ..., v_n` with `F v_i = (i+1) v_{i+1}`.
    pub copies: Vec<Vec<Vector>>,
}

/// H-eigenspaces keyed by eigenvalue; errors unless `H` is diagonalizable
/// over the integers.
fn h_eigenspaces(h: &Matrix) -> Result<BTreeMap<i64, Vec<Vector>>> {
    let d = h.rows();
    let mut spaces = BTreeMap::new();
    if h.is_diagonal() {
        for (j, x) in h.diagonal_entries().iter().enumerate() {
            let ev = x
                .to_i64()
                .filter(|_| x.is_integer())
                .ok_or_else(|| Error::Domain(format!("H has non-integer eigenvalue {x}")))?;
            let mut e = vec![Rational::zero(); d];
            e[j] = Rational::one();
            spaces.entry(ev).or_insert_with(Vec::new).push(e);
        }
        return Ok(spaces);
    }
    let bound = d as i64;
    let mut total = 0;
    for ev in -bound..=bound {
        let k = h.shift(&Rational::from_int(-ev))?.kernel_basis();
        if !k.is_empty() {
            total += k.len();
            spaces.insert(ev, k);
        }
    }
    if total != d {
        return Err(Error::Domain(format!(
            "H is not diagonalizable with integer spectrum ({total} of {d} eigenvectors found)"
        )));
    }
    Ok(spaces)
}

/// Decomposes a module into isotypic pieces by highest-weight extraction,
/// pieces ordered by descending label.
///
/// Highest-weight vectors for `L_n` span `ker E` inside the `H`-eigenspace
/// for `n`; they are put in reduced echelon form, so copies come ordered by
/// the position of their leading coordinate, which is 1.
pub fn isotypic_decompose(t: &Sl2Triple) -> Result<Vec<IsotypicPiece>> {
    if let Some(c) = sl2_relation_check(t)?.into_iter().find(|c| !c.passed) {
        return Err(Error::Domain(format!(
            "not a U(sl2)-module: {} fails at {}",
            c.name,
            c.detail.unwrap_or_default()
        )));
    }
    let d = t.dim();
    let spaces = h_eigenspaces(&t.h)?;
    let mut pieces = Vec::new();
    let mut all = SpanBasis::new();
    let mut count = 0;
    for (&ev, space) in spaces.iter().rev() {
        if ev < 0 {
            break;
        }
        let w = Matrix::from_columns(d, space)?;
        let ew = t.e.mul(&w)?;
        let mut hw = SpanBasis::new();
        for y in ew.kernel_basis() {
            hw.insert(&w.mul_vec(&y)?);
        }
        if hw.dim() == 0 {
            continue;
        }
        let n = ev as usize;
        let mut copies = Vec::with_capacity(hw.dim());
        for v0 in hw.basis() {
            let mut copy = vec![v0];
            for i in 0..n {
                let next: Vector = t.f.mul_vec(&copy[i])?.into_iter().map(|x| x / Rational::from(i + 1)).collect();
                copy.push(next);
            }
            if !is_zero_vector(&t.f.mul_vec(&copy[n])?) {
                return Err(Error::Consistency(format!("F does not kill v_{n} of a copy of L{n}")));
            }
            for (i, v) in copy.iter().enumerate() {
                let expected = Rational::from_int(n as i64 - 2 * i as i64);
                let hv = t.h.mul_vec(v)?;
                if hv.iter().zip(v).any(|(a, b)| *a != b * &expected) {
                    return Err(Error::Consistency(format!("v_{i} of L{n} is not an H-eigenvector")));
                }
                if !all.insert(v) {
                    return Err(Error::Consistency(format!("copy of L{n} is not independent")));
                }
            }
            count += copy.len();
            copies.push(copy);
        }
        pieces.push(IsotypicPiece { label: n, copies });
    }
    if count != d {
        return Err(Error::Consistency(format!(
            "extracted bases span {count} of {d} dimensions"
        )));
    }
    Ok(pieces)
}

pub fn summands_of(pieces: &[IsotypicPiece]) -> CgSummandList {
    CgSummandList::from_counts(pieces.iter().map(|p| (p.label, p.copies.len())))
}

/// Compares the `H`-spectrum of `t` with the weights of `expected`.
pub fn multiset_character_check(t: &Sl2Triple, expected: &CgSummandList) -> Result<Check> {
    let name = "H-spectrum equals the expected character";
    if expected.dim() != t.dim() {
        return Ok(Check::fail(
            name,
            format!("dimension {} expected, module has {}", expected.dim(), t.dim()),
        ));
    }
    let actual: BTreeMap<i64, usize> = h_eigenspaces(&t.h)?
        .into_iter()
        .map(|(ev, s)| (ev, s.len()))
        .collect();
    let mut want = BTreeMap::new();
    for &(n, m) in &expected.summands {
        for i in 0..=n {
            *want.entry(n as i64 - 2 * i as i64).or_insert(0) += m;
        }
    }
    Ok(Check::expect(name, actual == want, || {
        format!("spectrum {actual:?} but expected {want:?}")
    }))
}
