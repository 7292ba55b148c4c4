//! The splitting `V(D) = ⊕_s V_s(D)` and the representations `r_s(D)`.

use crate::error::{Error, Result};
use crate::exactlin::{KronMode, KronSumOperator, Matrix, Vector};
use crate::hamming::{adjacency_operator, dual_adjacency_diagonal, HammingGraph};
use crate::krawtchouk::{relation_check, tensor_rep, RepTriple};
use crate::rational::Rational;
use crate::report::Check;

/// Per-factor splitting `V = V_0 ⊕ V_1` of the `q`-dimensional space.
///
/// `V_0` has basis `e_i - e_{i+1}` for `1 <= i <= q-2`; `V_1` has basis
/// `e_0` and `e_1 + ... + e_{q-1}`. Factor coordinates list `V_0` first.
#[derive(Clone, Debug)]
pub struct SplitBasis {
    pub q: usize,
    pub v0: Vec<Vector>,
    pub v1: Vec<Vector>,
    /// Columns are `v0` followed by `v1`.
    pub change: Matrix,
    pub inverse: Matrix,
}

impl SplitBasis {
    pub fn new(q: usize) -> Result<Self> {
        if q < 3 {
            return Err(Error::Domain(format!("alphabet size q = {q} must be at least 3")));
        }
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); q];
            v[i] = Rational::one();
            v
        };
        let v0: Vec<Vector> = (1..q - 1)
            .map(|i| {
                let mut v = unit(i);
                v[i + 1] = Rational::from_int(-1);
                v
            })
            .collect();
        let mut tail = vec![Rational::one(); q];
        tail[0] = Rational::zero();
        let v1 = vec![unit(0), tail];
        let cols: Vec<Vector> = v0.iter().chain(&v1).cloned().collect();
        let change = Matrix::from_columns(q, &cols)?;
        let inverse = change.inverse()?;
        Ok(SplitBasis {
            q,
            v0,
            v1,
            change,
            inverse,
        })
    }

    /// Factor coordinates belonging to `V_s`.
    pub fn range(&self, s: u8) -> std::ops::Range<usize> {
        if s == 0 {
            0..self.q - 2
        } else {
            self.q - 2..self.q
        }
    }
}

/// One summand `V_s(D)` with its basis and the `K_ω`-action on it.
#[derive(Clone, Debug)]
pub struct BlockRep {
    pub s: Vec<u8>,
    pub p: usize,
    /// Tensor-product basis vectors in `V(D)`, leftmost factor slowest.
    pub basis: Vec<Vector>,
    pub triple: RepTriple,
}

impl BlockRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All 0/1 tuples of length `d` in lexicographic order.
pub fn block_labels(d: usize) -> Vec<Vec<u8>> {
    (0..1usize << d)
        .map(|m| (0..d).map(|t| ((m >> (d - 1 - t)) & 1) as u8).collect())
        .collect()
}

/// Multi-indices of the block's coordinates in the full factor-coordinate
/// space, lexicographic, together with their flattened positions.
fn block_positions(split: &SplitBasis, s: &[u8]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &st in s {
        out = out
            .into_iter()
            .flat_map(|base| split.range(st).map(move |c| base * split.q + c))
            .collect();
    }
    out
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub(crate) struct BlockContext {
    pub graph: HammingGraph,
    pub split: SplitBasis,
    pub omega: Rational,
    adjacency: KronSumOperator,
    dual_diag: Vector,
    to_vertices: KronSumOperator,
    to_coords: KronSumOperator,
}

impl BlockContext {
    pub fn new(graph: &HammingGraph) -> Result<Self> {
        let split = SplitBasis::new(graph.q())?;
        let d = graph.dim();
        Ok(BlockContext {
            graph: *graph,
            omega: graph.omega(),
            adjacency: adjacency_operator(graph),
            dual_diag: dual_adjacency_diagonal(graph),
            to_vertices: KronSumOperator::uniform(split.change.clone(), d, KronMode::Product)?,
            to_coords: KronSumOperator::uniform(split.inverse.clone(), d, KronMode::Product)?,
            split,
        })
    }

    pub fn apply_adjacency(&self, v: &[Rational]) -> Result<Vector> {
        self.adjacency.apply(v)
    }

    pub fn apply_dual(&self, v: &[Rational]) -> Vector {
        v.iter().zip(&self.dual_diag).map(|(x, t)| x * t).collect()
    }

    pub fn basis(&self, s: &[u8]) -> Result<Vec<Vector>> {
        let n = self.graph.vertex_count();
        block_positions(&self.split, s)
            .into_iter()
            .map(|pos| self.to_vertices.apply(&unit(n, pos)))
            .collect()
    }

    /// Coordinates of `v` in the block basis; errors if `v` leaves the block.
    fn block_coordinates(&self, positions: &[usize], v: &[Rational]) -> Result<Vector> {
        let mut coords = self.to_coords.apply(v)?;
        let out: Vector = positions.iter().map(|&p| std::mem::take(&mut coords[p])).collect();
        if let Some(i) = coords.iter().position(|x| !x.is_zero()) {
            return Err(Error::Consistency(format!(
                "image leaves its block: coordinate {i} is {}",
                coords[i]
            )));
        }
        Ok(out)
    }

    /// `r_s(D)` from the restricted `A(D)` and `A*(D)`:
    /// `X ↦ (1/q) X|_{V_s} + (D/q - p/2) I`.
    pub fn direct(&self, s: &[u8], basis: &[Vector]) -> Result<RepTriple> {
        let positions = block_positions(&self.split, s);
        let dim = positions.len();
        let q = self.graph.q() as i64;
        let p = s.iter().filter(|&&x| x == 1).count();
        let inv_q = Rational::new(1, q);
        let shift = Rational::new(self.graph.dim() as i64, q) - Rational::new(p as i64, 2);
        let restrict = |image: &dyn Fn(&[Rational]) -> Result<Vector>| -> Result<Matrix> {
            let cols = basis
                .iter()
                .map(|b| self.block_coordinates(&positions, &image(b)?))
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(dim, &cols)?.scale(&inv_q).shift(&shift)
        };
        let a = restrict(&|v| self.apply_adjacency(v))?;
        let b = restrict(&|v| Ok(self.apply_dual(v)))?;
        let c = a.commutator(&b)?;
        Ok(RepTriple {
            a,
            b,
            c,
            omega: self.omega.clone(),
        })
    }

    /// `r_0` or `r_1` on a single factor, from `J - I` and `diag(q-1, -1, ..., -1)`.
    fn factor_rep(&self, s: u8) -> Result<RepTriple> {
        let q = self.split.q;
        let one = HammingGraph::new(1, q)?;
        let ctx = BlockContext::new(&one)?;
        let basis = ctx.basis(&[s])?;
        ctx.direct(&[s], &basis)
    }

    /// `r_s(D)` as the tensor product `r_{s_1} ⊗ ... ⊗ r_{s_D}`.
    pub fn tensor(&self, s: &[u8]) -> Result<RepTriple> {
        let r0 = self.factor_rep(0)?;
        let r1 = self.factor_rep(1)?;
        let pick = |x: u8| if x == 0 { &r0 } else { &r1 };
        let mut acc = pick(s[0]).clone();
        for &x in &s[1..] {
            acc = tensor_rep(&acc, pick(x))?;
        }
        Ok(acc)
    }
}

/// `r_s(D)` on the block's basis. Both the restriction of `A(D)`, `A*(D)` and
/// the tensor product of per-factor representations are computed and must
/// agree exactly.
pub fn rs_representation(graph: &HammingGraph, s: &[u8], basis: &[Vector]) -> Result<RepTriple> {
    let ctx = BlockContext::new(graph)?;
    rs_with(&ctx, s, basis)
}

pub(crate) fn rs_with(ctx: &BlockContext, s: &[u8], basis: &[Vector]) -> Result<RepTriple> {
    let direct = ctx.direct(s, basis)?;
    let tensor = ctx.tensor(s)?;
    for (name, x, y) in [("A", &direct.a, &tensor.a), ("B", &direct.b, &tensor.b), ("C", &direct.c, &tensor.c)] {
        if let Some((i, j)) = x.first_mismatch(y) {
            return Err(Error::Consistency(format!(
                "r_s for s = {s:?}: {name} entry ({i}, {j}) is {} by restriction but {} by tensor product",
                x[(i, j)],
                y[(i, j)]
            )));
        }
    }
    Ok(direct)
}

/// Splits `V(D)` into its `2^D` blocks, each with `r_s(D)` attached.
pub fn split_standard_module(graph: &HammingGraph) -> Result<Vec<BlockRep>> {
    let ctx = BlockContext::new(graph)?;
    block_labels(graph.dim())
        .into_iter()
        .map(|s| {
            let basis = ctx.basis(&s)?;
            let triple = rs_with(&ctx, &s, &basis)?;
            Ok(BlockRep {
                p: s.iter().filter(|&&x| x == 1).count(),
                s,
                basis,
                triple,
            })
        })
        .collect()
}

/// Relation checks on one block's representation.
pub fn block_relation_checks(block: &BlockRep) -> Result<Vec<Check>> {
    relation_check(&block.triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krawtchouk::k_module;
    use crate::rational::rat;
    use crate::report::all_passed;

    #[test]
    fn split_basis_properties() {
        for q in 3..=7 {
            let sb = SplitBasis::new(q).unwrap();
            assert_eq!(sb.v0.len() + sb.v1.len(), q);
            for v in &sb.v0 {
                assert!(v[0].is_zero());
                assert!(v.iter().sum::<Rational>().is_zero());
            }
            assert_eq!(sb.change.rank(), q);
        }
    }

    #[test]
    fn block_dimension_examples() {
        let dims = |d, q| -> Vec<usize> {
            split_standard_module(&HammingGraph::new(d, q).unwrap())
                .unwrap()
                .iter()
                .map(BlockRep::dim)
                .collect()
        };
        assert_eq!(dims(1, 3), vec![1, 2]);
        assert_eq!(dims(2, 3), vec![1, 2, 2, 4]);
        assert_eq!(dims(3, 4).iter().sum::<usize>(), 64);
        for (d, q) in [(2, 4), (3, 3), (2, 5)] {
            for b in split_standard_module(&HammingGraph::new(d, q).unwrap()).unwrap() {
                assert_eq!(b.dim(), (1 << b.p) * (q - 2).pow((d - b.p) as u32));
            }
        }
    }

    #[test]
    fn concatenated_bases_span_everything() {
        let g = HammingGraph::new(2, 4).unwrap();
        let cols: Vec<Vector> = split_standard_module(&g)
            .unwrap()
            .into_iter()
            .flat_map(|b| b.basis)
            .collect();
        assert_eq!(Matrix::from_columns(16, &cols).unwrap().rank(), 16);
    }

    #[test]
    fn single_factor_examples() {
        let g = HammingGraph::new(1, 3).unwrap();
        let blocks = split_standard_module(&g).unwrap();
        assert_eq!(blocks[0].triple.a, Matrix::zeros(1, 1));
        let a = Matrix::from_rows(&[vec![rat(-1, 6), rat(2, 3)], vec![rat(1, 3), rat(1, 6)]]).unwrap();
        assert_eq!(blocks[1].triple.a, a);
        for q in 3..=6 {
            let g = HammingGraph::new(1, q).unwrap();
            let b = &split_standard_module(&g).unwrap()[1];
            assert_eq!(b.triple, k_module(1, &g.omega()).unwrap());
        }
    }

    #[test]
    fn every_block_is_a_module() {
        for (d, q) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            for b in split_standard_module(&HammingGraph::new(d, q).unwrap()).unwrap() {
                assert!(all_passed(&block_relation_checks(&b).unwrap()), "s = {:?}", b.s);
            }
        }
    }
}
