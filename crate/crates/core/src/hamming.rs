//! The Hamming graph `H(D, q)` and its scheme matrices.
//!
//! Vertices are the words of `{0..q-1}^D` in lexicographic order, the first
//! coordinate slowest-varying, so vertex `x` corresponds to the tensor
//! `x_1 ⊗ ... ⊗ x_D`. All dual quantities are taken with respect to the
//! all-zeros word.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{KronMode, KronSumOperator, Matrix, Vector};
use crate::rational::Rational;
use crate::report::Check;

pub const DEFAULT_MATERIALIZE_CAP: usize = 20_000;
/// Overrides [`DEFAULT_MATERIALIZE_CAP`] when set to a positive integer.
pub const CAP_ENV_VAR: &str = "HAMMING_MATERIALIZE_CAP";

pub fn materialize_cap_from_env() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_MATERIALIZE_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingGraph {
    dim: usize,
    q: usize,
    vertex_count: usize,
    cap: usize,
}

impl HammingGraph {
    pub fn new(dim: usize, q: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Domain(format!("dimension D = {dim} must be at least 1")));
        }
        if q < 3 {
            return Err(Error::Domain(format!("alphabet size q = {q} must be at least 3")));
        }
        let vertex_count = u32::try_from(dim)
            .ok()
            .and_then(|d| q.checked_pow(d))
            .ok_or_else(|| Error::Resource(format!("q^D overflows for D = {dim}, q = {q}")))?;
        Ok(HammingGraph {
            dim,
            q,
            vertex_count,
            cap: materialize_cap_from_env(),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Errors unless `q^D` is within the materialization cap.
    pub fn ensure_materializable(&self) -> Result<()> {
        if self.vertex_count > self.cap {
            return Err(Error::Resource(format!(
                "q^D = {} exceeds the materialization cap {} (set {CAP_ENV_VAR} to raise it)",
                self.vertex_count, self.cap
            )));
        }
        Ok(())
    }

    pub fn vertex(&self, mut index: usize) -> Vec<usize> {
        let mut x = vec![0; self.dim];
        for slot in x.iter_mut().rev() {
            *slot = index % self.q;
            index /= self.q;
        }
        x
    }

    pub fn index_of(&self, x: &[usize]) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(x.iter().fold(0, |acc, &c| acc * self.q + c))
    }

    fn check_vertex(&self, x: &[usize]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Domain(format!(
                "vertex has {} coordinates, expected {}",
                x.len(),
                self.dim
            )));
        }
        if let Some(c) = x.iter().find(|&&c| c >= self.q) {
            return Err(Error::Domain(format!("coordinate {c} outside 0..{}", self.q)));
        }
        Ok(())
    }

    /// Distance from the all-zeros word for every vertex, in vertex order.
    pub fn base_distances(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.vertex_count];
        let mut block = 1;
        for _ in 0..self.dim {
            // Extend the table one trailing coordinate at a time.
            for idx in (0..block * self.q).rev() {
                w[idx] = w[idx / self.q] + usize::from(idx % self.q != 0);
            }
            block *= self.q;
        }
        w
    }

    /// Indices of the neighbours of vertex `index`.
    pub fn neighbors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let q = self.q;
        (0..self.dim).flat_map(move |pos| {
            let stride = q.pow((self.dim - 1 - pos) as u32);
            let digit = (index / stride) % q;
            let base = index - digit * stride;
            (0..q).filter(move |&c| c != digit).map(move |c| base + c * stride)
        })
    }

    /// `theta_i(D) = D(q-1) - q i`, the eigenvalues of the adjacency matrix.
    pub fn theta(&self, i: usize) -> i64 {
        (self.dim * (self.q - 1)) as i64 - (self.q * i) as i64
    }

    /// The dual eigenvalues coincide with `theta`.
    pub fn theta_star(&self, i: usize) -> i64 {
        self.theta(i)
    }

    /// `|Γ_i(x)| = C(D, i) (q-1)^i`.
    pub fn shell_size(&self, i: usize) -> usize {
        binomial(self.dim, i) * (self.q - 1).pow(i as u32)
    }

    pub fn omega(&self) -> Rational {
        Rational::one() - Rational::new(2, self.q as i64)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn hamming_distance(g: &HammingGraph, x: &[usize], y: &[usize]) -> Result<usize> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

fn complete_graph(q: usize) -> Matrix {
    Matrix::from_fn(q, q, |i, j| Rational::from_int(i64::from(i != j)))
}

fn all_ones_scaled(q: usize, s: Rational) -> Matrix {
    Matrix::from_fn(q, q, |_, _| s.clone())
}

/// `E_0(1) = J/q` and `E_1(1) = I - J/q`.
pub fn base_idempotents(q: usize) -> (Matrix, Matrix) {
    let e0 = all_ones_scaled(q, Rational::new(1, q as i64));
    let e1 = Matrix::identity(q).sub(&e0).unwrap();
    (e0, e1)
}

/// Adjacency matrix by direct neighbour enumeration.
pub fn adjacency(g: &HammingGraph) -> Result<Matrix> {
    g.ensure_materializable()?;
    let n = g.vertex_count();
    let mut m = Matrix::zeros(n, n);
    for x in 0..n {
        for y in g.neighbors(x) {
            m.set(y, x, Rational::one());
        }
    }
    Ok(m)
}

/// Adjacency matrix by `A(D) = A(D-1) ⊗ I + I(D-1) ⊗ A`.
pub fn adjacency_recursive(g: &HammingGraph) -> Result<Matrix> {
    g.ensure_materializable()?;
    let a1 = complete_graph(g.q());
    let mut acc = a1.clone();
    let mut size = g.q();
    for _ in 1..g.dim() {
        acc = acc
            .kron(&Matrix::identity(g.q()))
            .add(&Matrix::identity(size).kron(&a1))?;
        size *= g.q();
    }
    Ok(acc)
}

/// The adjacency matrix as a matrix-free Kronecker sum of `D` copies of `J - I`.
pub fn adjacency_operator(g: &HammingGraph) -> KronSumOperator {
    KronSumOperator::uniform(complete_graph(g.q()), g.dim(), KronMode::Sum)
        .expect("square factor")
}

/// Diagonal of the dual adjacency matrix: `D(q-1) - q ∂(0, y)`.
pub fn dual_adjacency_diagonal(g: &HammingGraph) -> Vector {
    g.base_distances()
        .into_iter()
        .map(|d| Rational::from_int(g.theta_star(d)))
        .collect()
}

pub fn dual_adjacency(g: &HammingGraph) -> Result<Matrix> {
    g.ensure_materializable()?;
    Ok(Matrix::diagonal(&dual_adjacency_diagonal(g)))
}

/// Dual adjacency matrix by `A*(D) = A*(D-1) ⊗ I + I(D-1) ⊗ A*`.
pub fn dual_adjacency_recursive(g: &HammingGraph) -> Result<Matrix> {
    g.ensure_materializable()?;
    let q = g.q();
    let mut diag = vec![Rational::from_int(-1); q];
    diag[0] = Rational::from_int(q as i64 - 1);
    let a1 = Matrix::diagonal(&diag);
    let mut acc = a1.clone();
    let mut size = q;
    for _ in 1..g.dim() {
        acc = acc
            .kron(&Matrix::identity(q))
            .add(&Matrix::identity(size).kron(&a1))?;
        size *= q;
    }
    Ok(acc)
}

/// Dual adjacency matrix from the first primitive idempotent:
/// `A*_{yy} = |X| (E_1)_{0y}`.
pub fn dual_adjacency_from_idempotent(g: &HammingGraph, e1: &Matrix) -> Result<Matrix> {
    let n = g.vertex_count();
    if e1.rows() != n || e1.cols() != n {
        return Err(Error::Shape(format!("E_1 must be {n}x{n}")));
    }
    let scale = Rational::from(n);
    let diag: Vector = (0..n).map(|y| e1.get(0, y) * &scale).collect();
    Ok(Matrix::diagonal(&diag))
}

/// Distance matrices `A_0, ..., A_D`.
pub fn distance_matrices(g: &HammingGraph) -> Result<Vec<Matrix>> {
    g.ensure_materializable()?;
    let n = g.vertex_count();
    let mut out = vec![Matrix::zeros(n, n); g.dim() + 1];
    for x in 0..n {
        let vx = g.vertex(x);
        for y in 0..n {
            let d = vx.iter().zip(g.vertex(y)).filter(|(a, b)| **a != *b).count();
            out[d].set(x, y, Rational::one());
        }
    }
    Ok(out)
}

/// Primitive idempotents by `E_i(D) = E_i(D-1) ⊗ E_0 + E_{i-1}(D-1) ⊗ E_1`.
pub fn idempotents(g: &HammingGraph) -> Result<Vec<Matrix>> {
    g.ensure_materializable()?;
    let (e0, e1) = base_idempotents(g.q());
    let mut level = vec![e0.clone(), e1.clone()];
    for _ in 1..g.dim() {
        let n = level[0].rows() * g.q();
        let next = (0..=level.len())
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                if i < level.len() {
                    m = m.add(&level[i].kron(&e0))?;
                }
                if i > 0 {
                    m = m.add(&level[i - 1].kron(&e1))?;
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        level = next;
    }
    Ok(level)
}

/// Krawtchouk polynomial `K_i(j) = sum_h (-1)^h (q-1)^(i-h) C(j,h) C(D-j,i-h)`.
pub fn krawtchouk(dim: usize, q: usize, i: usize, j: usize) -> BigInt {
    (0..=i)
        .map(|h| {
            let term = BigInt::from(q - 1).pow((i - h) as u32)
                * BigInt::from(binomial(j, h))
                * BigInt::from(binomial(dim.saturating_sub(j), i - h));
            if h % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Primitive idempotents from the Krawtchouk closed form
/// `(E_i)_{xy} = q^{-D} K_i(∂(x, y))`.
pub fn idempotents_direct(g: &HammingGraph) -> Result<Vec<Matrix>> {
    g.ensure_materializable()?;
    let n = g.vertex_count();
    let inv_n = Rational::new(1, n as i64);
    let table: Vec<Vec<Rational>> = (0..=g.dim())
        .map(|i| {
            (0..=g.dim())
                .map(|j| Rational::from(krawtchouk(g.dim(), g.q(), i, j)) * &inv_n)
                .collect()
        })
        .collect();
    let verts: Vec<Vec<usize>> = (0..n).map(|x| g.vertex(x)).collect();
    Ok((0..=g.dim())
        .map(|i| {
            Matrix::from_fn(n, n, |x, y| {
                let d = verts[x].iter().zip(&verts[y]).filter(|(a, b)| a != b).count();
                table[i][d].clone()
            })
        })
        .collect())
}

/// Dual primitive idempotents as 0/1 diagonal shell projectors.
pub fn dual_idempotents(g: &HammingGraph) -> Result<Vec<Matrix>> {
    g.ensure_materializable()?;
    let w = g.base_distances();
    Ok((0..=g.dim())
        .map(|i| {
            let diag: Vector = w.iter().map(|&d| Rational::from_int(i64::from(d == i))).collect();
            Matrix::diagonal(&diag)
        })
        .collect())
}

/// Dual idempotents by `E*_i(D) = E*_i(D-1) ⊗ E*_0 + E*_{i-1}(D-1) ⊗ E*_1`.
pub fn dual_idempotents_recursive(g: &HammingGraph) -> Result<Vec<Matrix>> {
    g.ensure_materializable()?;
    let q = g.q();
    let mut d0 = vec![Rational::zero(); q];
    d0[0] = Rational::one();
    let d1: Vector = d0.iter().map(|x| Rational::one() - x).collect();
    let (s0, s1) = (Matrix::diagonal(&d0), Matrix::diagonal(&d1));
    let mut level = vec![s0.clone(), s1.clone()];
    for _ in 1..g.dim() {
        let n = level[0].rows() * q;
        level = (0..=level.len())
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                if i < level.len() {
                    m = m.add(&level[i].kron(&s0))?;
                }
                if i > 0 {
                    m = m.add(&level[i - 1].kron(&s1))?;
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(level)
}

/// Computes `E_0 v, ..., E_D v` without materializing any idempotent.
///
/// Each axis splits a fibre into its mean (the `E_0` part) and the remainder
/// (the `E_1` part); tracking how many `E_1` parts were taken gives the
/// component in each eigenspace.
pub fn idempotent_components(g: &HammingGraph, v: &[Rational]) -> Result<Vec<Vector>> {
    let n = g.vertex_count();
    if v.len() != n {
        return Err(Error::Shape(format!("vector of length {} for {n} vertices", v.len())));
    }
    let q = g.q();
    let inv_q = Rational::new(1, q as i64);
    let mut parts: Vec<Vector> = vec![v.to_vec()];
    for axis in 0..g.dim() {
        let stride = q.pow((g.dim() - 1 - axis) as u32);
        let block = stride * q;
        let mut next = vec![vec![Rational::zero(); n]; parts.len() + 1];
        for (deg, part) in parts.iter().enumerate() {
            if part.iter().all(Rational::is_zero) {
                continue;
            }
            for start in (0..n).step_by(block) {
                for s in 0..stride {
                    let fibre = (0..q).map(|c| start + c * stride + s);
                    let mean: Rational =
                        fibre.clone().map(|idx| &part[idx]).sum::<Rational>() * &inv_q;
                    for idx in fibre {
                        next[deg][idx] += &mean;
                        next[deg + 1][idx] += &part[idx] - &mean;
                    }
                }
            }
        }
        parts = next;
    }
    Ok(parts)
}

/// Every scheme matrix of `H(D, q)`, materialized.
#[derive(Clone, Debug)]
pub struct SchemeMatrices {
    pub adjacency: Matrix,
    pub dual_adjacency: Matrix,
    pub distance_matrices: Vec<Matrix>,
    pub idempotents: Vec<Matrix>,
    pub dual_idempotents: Vec<Matrix>,
}

impl SchemeMatrices {
    pub fn build(g: &HammingGraph) -> Result<Self> {
        Ok(SchemeMatrices {
            adjacency: adjacency(g)?,
            dual_adjacency: dual_adjacency(g)?,
            distance_matrices: distance_matrices(g)?,
            idempotents: idempotents(g)?,
            dual_idempotents: dual_idempotents(g)?,
        })
    }

    /// Resolutions of the identity, orthogonality, eigenvalue equations, and
    /// agreement of every matrix with its independent construction.
    pub fn check_invariants(&self, g: &HammingGraph) -> Result<Vec<Check>> {
        let n = g.vertex_count();
        let id = Matrix::identity(n);
        let mut checks = Vec::new();

        let ones = Matrix::from_fn(n, n, |_, _| Rational::one());
        let sum = |ms: &[Matrix]| -> Result<Matrix> {
            ms.iter().try_fold(Matrix::zeros(n, n), |acc, m| acc.add(m))
        };
        checks.push(Check::expect(
            "distance matrices sum to J",
            sum(&self.distance_matrices)? == ones,
            || "sum of A_i differs from J".into(),
        ));
        checks.push(Check::expect(
            "A_1 equals the adjacency matrix",
            self.distance_matrices[1] == self.adjacency,
            || "A_1 differs from A".into(),
        ));
        checks.push(Check::expect(
            "idempotents sum to I",
            sum(&self.idempotents)? == id,
            || "sum of E_i differs from I".into(),
        ));
        checks.push(Check::expect(
            "dual idempotents sum to I",
            sum(&self.dual_idempotents)? == id,
            || "sum of E*_i differs from I".into(),
        ));
        for (name, family) in [
            ("idempotents", &self.idempotents),
            ("dual idempotents", &self.dual_idempotents),
        ] {
            let mut bad = None;
            'outer: for i in 0..family.len() {
                for j in 0..family.len() {
                    let p = family[i].mul(&family[j])?;
                    let ok = if i == j { p == family[i] } else { p.is_zero() };
                    if !ok {
                        bad = Some((i, j));
                        break 'outer;
                    }
                }
            }
            checks.push(Check::expect(format!("{name} are orthogonal projectors"), bad.is_none(), || {
                format!("product ({}, {}) violates E_i E_j = δ_ij E_i", bad.unwrap().0, bad.unwrap().1)
            }));
        }
        for i in 0..=g.dim() {
            let th = Rational::from_int(g.theta(i));
            let lhs = self.adjacency.mul(&self.idempotents[i])?;
            checks.push(Check::expect(
                format!("A E_{i} = theta_{i} E_{i}"),
                lhs == self.idempotents[i].scale(&th),
                || format!("theta_{i} = {th} is not the eigenvalue on E_{i}"),
            ));
            let lhs = self.dual_adjacency.mul(&self.dual_idempotents[i])?;
            checks.push(Check::expect(
                format!("A* E*_{i} = theta*_{i} E*_{i}"),
                lhs == self.dual_idempotents[i].scale(&th),
                || format!("theta*_{i} = {th} is not the eigenvalue on E*_{i}"),
            ));
        }
        checks.push(Check::expect(
            "adjacency: direct equals Kronecker recursion",
            adjacency_recursive(g)? == self.adjacency,
            || "recursive A(D) differs".into(),
        ));
        checks.push(Check::expect(
            "dual adjacency: direct equals Kronecker recursion",
            dual_adjacency_recursive(g)? == self.dual_adjacency,
            || "recursive A*(D) differs".into(),
        ));
        checks.push(Check::expect(
            "dual adjacency: direct equals |X| (E_1)_{0y}",
            dual_adjacency_from_idempotent(g, &self.idempotents[1.min(g.dim())])?
                == self.dual_adjacency,
            || "idempotent route to A*(D) differs".into(),
        ));
        checks.push(Check::expect(
            "idempotents: recursion equals Krawtchouk closed form",
            idempotents_direct(g)? == self.idempotents,
            || "recursive E_i(D) differ from the closed form".into(),
        ));
        checks.push(Check::expect(
            "dual idempotents: shells equal Kronecker recursion",
            dual_idempotents_recursive(g)? == self.dual_idempotents,
            || "recursive E*_i(D) differ".into(),
        ));
        Ok(checks)
    }
}

/// Intersection numbers `a_i, b_i, c_i` for `i = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Vertex-count limit for the all-pairs count; above it only pairs through
/// the base vertex are enumerated.
const ALL_PAIRS_LIMIT: usize = 1024;

/// Intersection numbers from `a_i = i(q-2)`, `b_i = (D-i)(q-1)`, `c_i = i`,
/// confirmed by counting `|Γ_{i-1}(x) ∩ Γ(y)|` etc. over vertex pairs.
pub fn intersection_numbers(g: &HammingGraph) -> Result<IntersectionNumbers> {
    let (d, q) = (g.dim(), g.q());
    let formula = IntersectionNumbers {
        a: (0..=d).map(|i| i * (q - 2)).collect(),
        b: (0..=d).map(|i| (d - i) * (q - 1)).collect(),
        c: (0..=d).collect(),
    };
    let n = g.vertex_count();
    let sources: Vec<usize> = if n <= ALL_PAIRS_LIMIT { (0..n).collect() } else { vec![0] };
    let verts: Vec<Vec<usize>> = if n <= ALL_PAIRS_LIMIT || n <= g.cap() {
        (0..n).map(|x| g.vertex(x)).collect()
    } else {
        return Err(Error::Resource(format!(
            "brute-force intersection count needs q^D = {n} <= cap {}",
            g.cap()
        )));
    };
    let dist = |x: usize, y: usize| verts[x].iter().zip(&verts[y]).filter(|(a, b)| a != b).count();
    for &x in &sources {
        for y in 0..n {
            let i = dist(x, y);
            let mut counts = [0usize; 3];
            for z in g.neighbors(y) {
                let j = dist(x, z);
                if j + 1 == i {
                    counts[2] += 1;
                } else if j == i {
                    counts[0] += 1;
                } else {
                    counts[1] += 1;
                }
            }
            let expected = [formula.a[i], formula.b[i], formula.c[i]];
            if counts != expected {
                return Err(Error::Consistency(format!(
                    "pair ({x}, {y}) at distance {i}: counted (a, b, c) = {counts:?}, formula gives {expected:?}"
                )));
            }
        }
    }
    Ok(formula)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyFailure {
    pub i: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyReport {
    pub passed: Vec<bool>,
    pub first_failure: Option<QPolyFailure>,
}

impl QPolyReport {
    pub fn all_passed(&self) -> bool {
        self.passed.iter().all(|&p| p)
    }
}

/// Checks `E_1 ⊙ E_i = q^{-D}(b*_{i-1} E_{i-1} + a*_i E_i + c*_{i+1} E_{i+1})`
/// with `a*_i = i(q-2)`, `b*_i = (D-i)(q-1)`, `c*_i = i`. Out-of-range terms
/// are zero.
pub fn q_polynomial_check(g: &HammingGraph, idempotents: &[Matrix]) -> Result<QPolyReport> {
    let (d, q) = (g.dim(), g.q());
    if idempotents.len() != d + 1 {
        return Err(Error::Shape(format!(
            "expected {} idempotents, got {}",
            d + 1,
            idempotents.len()
        )));
    }
    let n = g.vertex_count();
    let scale = Rational::new(1, n as i64);
    let a_star = |i: usize| Rational::from(i * (q - 2));
    let b_star = |i: usize| Rational::from((d - i) * (q - 1));
    let c_star = |i: usize| Rational::from(i);
    let mut passed = Vec::with_capacity(d + 1);
    let mut first_failure = None;
    for i in 0..=d {
        let lhs = idempotents[1].hadamard(&idempotents[i])?;
        let mut rhs = idempotents[i].scale(&a_star(i));
        if i > 0 {
            rhs = rhs.add(&idempotents[i - 1].scale(&b_star(i - 1)))?;
        }
        if i < d {
            rhs = rhs.add(&idempotents[i + 1].scale(&c_star(i + 1)))?;
        }
        let rhs = rhs.scale(&scale);
        match lhs.first_mismatch(&rhs) {
            None => passed.push(true),
            Some((row, col)) => {
                passed.push(false);
                first_failure.get_or_insert(QPolyFailure { i, row, col });
            }
        }
    }
    Ok(QPolyReport {
        passed,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn h(d: usize, q: usize) -> HammingGraph {
        HammingGraph::new(d, q).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(HammingGraph::new(0, 3), Err(Error::Domain(_))));
        assert!(matches!(HammingGraph::new(2, 2), Err(Error::Domain(_))));
        assert!(matches!(h(3, 3).with_cap(10).ensure_materializable(), Err(Error::Resource(_))));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(&h(3, 3), &[0, 0, 0], &[0, 0, 0]).unwrap(), 0);
        assert_eq!(hamming_distance(&h(2, 3), &[0, 0], &[1, 2]).unwrap(), 2);
        assert_eq!(hamming_distance(&h(3, 3), &[0, 1, 2], &[0, 2, 2]).unwrap(), 1);
        assert!(matches!(
            hamming_distance(&h(2, 3), &[0, 3], &[0, 0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn vertex_indexing_round_trips() {
        let g = h(3, 4);
        for idx in 0..g.vertex_count() {
            assert_eq!(g.index_of(&g.vertex(idx)).unwrap(), idx);
        }
        assert_eq!(g.vertex(1), vec![0, 0, 1]);
        let w = g.base_distances();
        for idx in 0..g.vertex_count() {
            assert_eq!(w[idx], g.vertex(idx).iter().filter(|&&c| c != 0).count());
        }
    }

    #[test]
    fn adjacency_examples() {
        let a = adjacency(&h(1, 3)).unwrap();
        assert_eq!(a, Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        let a2 = adjacency(&h(2, 3)).unwrap();
        for i in 0..9 {
            let s: Rational = a2.row(i).iter().sum();
            assert_eq!(s, Rational::from_int(4));
        }
        assert_eq!(a2, a2.transpose());
    }

    #[test]
    fn adjacency_spectrum_d3() {
        let g = h(3, 3);
        let a = adjacency(&g).unwrap();
        let mut total = 0;
        for theta in [6, 3, 0, -3] {
            let k = a.shift(&Rational::from_int(-theta)).unwrap().kernel_basis().len();
            assert!(k > 0, "theta {theta} not an eigenvalue");
            total += k;
        }
        assert_eq!(total, 27);
    }

    #[test]
    fn dual_adjacency_examples() {
        let d1 = dual_adjacency(&h(1, 3)).unwrap();
        assert_eq!(d1, Matrix::diagonal(&[rat(2, 1), rat(-1, 1), rat(-1, 1)]));
        // 3 (E_1)_{0y} with E_1 = I - J/3.
        let e1 = Matrix::identity(3).sub(&Matrix::from_fn(3, 3, |_, _| rat(1, 3))).unwrap();
        assert_eq!(dual_adjacency_from_idempotent(&h(1, 3), &e1).unwrap(), d1);
        let g = h(2, 3);
        let d2 = dual_adjacency(&g).unwrap();
        let w = g.base_distances();
        for y in 0..9 {
            let expected = [4, 1, -2][w[y]];
            assert_eq!(d2[(y, y)], Rational::from_int(expected));
        }
        assert_eq!(d2[(0, 0)], Rational::from_int(4));
    }

    #[test]
    fn idempotent_examples() {
        let e = idempotents(&h(1, 3)).unwrap();
        assert_eq!(e[0], Matrix::from_fn(3, 3, |_, _| rat(1, 3)));
        let e2 = idempotents(&h(2, 3)).unwrap();
        let sum = e2.iter().fold(Matrix::zeros(9, 9), |acc, m| acc.add(m).unwrap());
        assert_eq!(sum, Matrix::identity(9));
    }

    #[test]
    fn idempotent_ranks_match_eigenspace_dimensions() {
        for d in 1..=3 {
            for q in [3, 4] {
                let g = h(d, q);
                let a = adjacency(&g).unwrap();
                for (i, e) in idempotents(&g).unwrap().iter().enumerate() {
                    // Brute-force eigenspace dimension of A(D) at theta_i.
                    let eig = a
                        .shift(&Rational::from_int(-g.theta(i)))
                        .unwrap()
                        .kernel_basis()
                        .len();
                    assert_eq!(e.rank(), eig);
                    assert_eq!(e.rank(), binomial(d, i) * (q - 1).pow(i as u32));
                }
            }
        }
    }

    #[test]
    fn idempotents_by_lagrange_interpolation() {
        // Third construction: E_i = prod_{j != i} (A - theta_j)/(theta_i - theta_j).
        let g = h(2, 4);
        let a = adjacency(&g).unwrap();
        let e = idempotents(&g).unwrap();
        for i in 0..=2 {
            let mut p = Matrix::identity(16);
            for j in (0..=2).filter(|&j| j != i) {
                let f = a
                    .shift(&Rational::from_int(-g.theta(j)))
                    .unwrap()
                    .scale(&Rational::new(1, g.theta(i) - g.theta(j)));
                p = p.mul(&f).unwrap();
            }
            assert_eq!(p, e[i]);
        }
    }

    #[test]
    fn dual_idempotent_examples() {
        let g = h(1, 3);
        let es = dual_idempotents(&g).unwrap();
        assert_eq!(es[0], Matrix::diagonal(&[rat(1, 1), rat(0, 1), rat(0, 1)]));
        for d in 1..=3 {
            let g = h(d, 3);
            let es = dual_idempotents(&g).unwrap();
            for (i, e) in es.iter().enumerate() {
                assert_eq!(e.trace(), Rational::from(g.shell_size(i)));
                for (j, f) in es.iter().enumerate() {
                    if i != j {
                        assert!(e.mul(f).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn scheme_invariants_hold() {
        for d in 1..=3 {
            for q in [3, 4, 5] {
                if d == 3 && q == 5 {
                    continue;
                }
                let g = h(d, q);
                let s = SchemeMatrices::build(&g).unwrap();
                for c in s.check_invariants(&g).unwrap() {
                    assert!(c.passed, "D={d} q={q}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn intersection_number_examples() {
        let t = intersection_numbers(&h(3, 3)).unwrap();
        assert_eq!((t.a[2], t.b[2], t.c[2]), (2, 2, 2));
        assert_eq!(t.c[0], 0);
        assert_eq!(t.b[3], 0);
        intersection_numbers(&h(2, 4)).unwrap();
    }

    #[test]
    fn q_polynomial_examples() {
        let g = h(1, 3);
        let e = idempotents(&g).unwrap();
        let had = e[1].hadamard(&e[1]).unwrap();
        assert_eq!(had[(0, 0)], rat(4, 9));
        assert_eq!(had[(0, 1)], rat(1, 9));
        assert!(q_polynomial_check(&g, &e).unwrap().all_passed());
        let g = h(2, 3);
        let r = q_polynomial_check(&g, &idempotents(&g).unwrap()).unwrap();
        assert_eq!(r.passed, vec![true, true, true]);
    }

    #[test]
    fn q_polynomial_detects_corruption() {
        let g = h(2, 3);
        let mut e = idempotents(&g).unwrap();
        e[2] = e[2].scale(&rat(2, 1));
        let r = q_polynomial_check(&g, &e).unwrap();
        assert!(!r.all_passed());
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn idempotent_components_match_materialized() {
        for (d, q) in [(1, 3), (2, 4), (3, 3)] {
            let g = h(d, q);
            let e = idempotents(&g).unwrap();
            let n = g.vertex_count();
            for seed in 0..4 {
                let v: Vector = (0..n)
                    .map(|i| Rational::from_int(((i * 7 + seed * 3) % 5) as i64 - 2))
                    .collect();
                let parts = idempotent_components(&g, &v).unwrap();
                for i in 0..=d {
                    assert_eq!(parts[i], e[i].mul_vec(&v).unwrap());
                }
            }
        }
    }

    #[test]
    fn operator_matches_materialized_adjacency() {
        for d in 1..=4 {
            for q in [3, 4] {
                let g = h(d, q);
                let a = adjacency(&g).unwrap();
                let op = adjacency_operator(&g);
                for x in 0..g.vertex_count() {
                    let mut e = vec![Rational::zero(); g.vertex_count()];
                    e[x] = Rational::one();
                    assert_eq!(op.apply(&e).unwrap(), a.column(x));
                }
            }
        }
    }
}
