//! Decomposition of the standard module into irreducible modules.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cgengine::{isotypic_decompose, multiset_character_check, tensor_power_multiplicity, CgSummandList};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Vector};
use crate::hamming::{idempotent_components, HammingGraph};
use crate::krawtchouk::{intertwiner, k_module, k_module_twisted, relation_check, zeta_inverse_apply, RepTriple};
use crate::rational::Rational;
use crate::report::{all_passed, Check};

use super::forms::{class_multiplicity, labels, module_matrices, pk_to_dr, Gauge, ModuleDescriptor};
use super::split::{block_labels, rs_with, BlockContext};

/// Above this many vertices the completeness check relies on block
/// coordinates instead of a global rank computation.
pub const GLOBAL_RANK_LIMIT: usize = 1024;

/// Endpoints, diameters and supports of a submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    pub dual_diameter: usize,
    pub support: Vec<usize>,
    pub dual_support: Vec<usize>,
}

/// One irreducible submodule found in `V(D)`.
#[derive(Clone, Debug)]
pub struct ExtractedCopy {
    pub s: Vec<u8>,
    /// Columns are the basis in which `A(D)` is tridiagonal.
    pub basis: Matrix,
    /// Columns are the basis in which `A(D)` is diagonal.
    pub twisted_basis: Matrix,
    /// `(A(D), A*(D))` in `basis`.
    pub matrices: (Matrix, Matrix),
    /// `(A(D), A*(D))` in `twisted_basis`.
    pub twisted_matrices: (Matrix, Matrix),
    pub invariants: ModuleInvariants,
}

#[derive(Clone, Debug)]
pub struct ModuleClass {
    pub descriptor: ModuleDescriptor,
    pub copies: Vec<ExtractedCopy>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub dim: usize,
    pub q: usize,
    pub classes: Vec<ModuleClass>,
    pub checks: Vec<Check>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        all_passed(&self.checks) && self.classes.iter().all(|c| all_passed(&c.checks))
    }

    pub fn total_dim(&self) -> u64 {
        self.classes
            .iter()
            .map(|c| c.descriptor.multiplicity * c.descriptor.dim as u64)
            .sum()
    }

    pub fn descriptors(&self) -> Vec<&ModuleDescriptor> {
        self.classes.iter().map(|c| &c.descriptor).collect()
    }

    /// Every failed check, global first.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .chain(self.classes.iter().flat_map(|c| &c.checks))
            .filter(|c| !c.passed)
            .collect()
    }
}

/// Computes endpoints and supports of the span of `basis` by applying the
/// dual and primitive idempotents.
pub fn module_invariants(graph: &HammingGraph, basis: &[Vector]) -> Result<ModuleInvariants> {
    let weights = graph.base_distances();
    let mut support = vec![false; graph.dim() + 1];
    let mut dual = vec![false; graph.dim() + 1];
    for v in basis {
        for (x, &w) in v.iter().zip(&weights) {
            if !x.is_zero() {
                support[w] = true;
            }
        }
        for (i, part) in idempotent_components(graph, v)?.iter().enumerate() {
            if part.iter().any(|x| !x.is_zero()) {
                dual[i] = true;
            }
        }
    }
    let collect = |flags: &[bool]| -> Vec<usize> { (0..flags.len()).filter(|&i| flags[i]).collect() };
    let (support, dual_support) = (collect(&support), collect(&dual));
    if support.is_empty() {
        return Err(Error::Domain("module invariants of the zero space".into()));
    }
    Ok(ModuleInvariants {
        endpoint: support[0],
        dual_endpoint: dual_support[0],
        diameter: support.len() - 1,
        dual_diameter: dual_support.len() - 1,
        support,
        dual_support,
    })
}

struct CopyOutcome {
    p: usize,
    k: usize,
    copy: Option<ExtractedCopy>,
    /// Per-check failure details for this copy.
    failures: Vec<(&'static str, String)>,
}

struct BlockOutcome {
    copies: Vec<CopyOutcome>,
    checks: Vec<Check>,
    coordinate_rank: usize,
    dim: usize,
}

const INVARIANT: &str = "copies are invariant under A(D) and A*(D)";
const GAUGE_I: &str = "matrices equal the A-tridiagonal closed form";
const GAUGE_II: &str = "matrices equal the A-diagonal closed form";
const ENDPOINTS: &str = "r = r* = D+k-p, d = d* = p-2k, support = {r..r+d}";

fn solve_action(ctx: &BlockContext, w: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let cols = w.columns();
    let aw = cols.iter().map(|c| ctx.apply_adjacency(c)).collect::<Result<Vec<_>>>()?;
    let sw: Vec<Vector> = cols.iter().map(|c| ctx.apply_dual(c)).collect();
    let n = w.rows();
    let a = w.solve(&Matrix::from_columns(n, &aw)?)?;
    let s = w.solve(&Matrix::from_columns(n, &sw)?)?;
    Ok(a.zip(s))
}

fn describe_mismatch(got: &(Matrix, Matrix), want: &(Matrix, Matrix)) -> Option<String> {
    for (name, x, y) in [("A(D)", &got.0, &want.0), ("A*(D)", &got.1, &want.1)] {
        if let Some((i, j)) = x.first_mismatch(y) {
            return Some(format!("{name} entry ({i}, {j}) is {} but closed form gives {}", x[(i, j)], y[(i, j)]));
        }
    }
    None
}

fn decompose_block(
    ctx: &BlockContext,
    s: &[u8],
    twists: &BTreeMap<usize, Matrix>,
) -> Result<BlockOutcome> {
    let g = &ctx.graph;
    let (dim, q) = (g.dim(), g.q());
    let p = s.iter().filter(|&&x| x == 1).count();
    let basis = ctx.basis(s)?;
    let triple = rs_with(ctx, s, &basis)?;
    let mut checks = Vec::new();
    let rel = relation_check(&triple)?;
    let bad = rel.iter().find(|c| !c.passed);
    checks.push(Check::expect(format!("r_s relations, s = {s:?}"), bad.is_none(), || {
        format!("{}: {}", bad.unwrap().name, bad.unwrap().detail.clone().unwrap_or_default())
    }));
    let sl2 = zeta_inverse_apply(&triple)?;
    // Each block is (q-2)^(D-p) copies of the p-fold tensor power of L_1.
    let copies_of_power = (q - 2).pow((dim - p) as u32);
    let mut counts = Vec::new();
    for k in 0..=p / 2 {
        let m = if p == 0 { 1 } else { tensor_power_multiplicity(p as i64, k as i64)? };
        counts.push((p - 2 * k, m as usize * copies_of_power));
    }
    let expected = CgSummandList::from_counts(counts);
    let mut spectral = multiset_character_check(&sl2, &expected)?;
    spectral.name = format!("block B-spectrum matches its summands, s = {s:?}");
    checks.push(spectral);

    let pieces = isotypic_decompose(&sl2)?;
    let block_matrix = Matrix::from_columns(g.vertex_count(), &basis)?;
    let mut coordinate_rank = 0;
    let mut copies = Vec::new();
    for piece in &pieces {
        let n = piece.label;
        if n > p || (p - n) % 2 != 0 {
            return Err(Error::Consistency(format!("block s = {s:?} contains L{n}, impossible for p = {p}")));
        }
        let k = (p - n) / 2;
        for copy in &piece.copies {
            coordinate_rank += copy.len();
            let mut cols = copy
                .iter()
                .map(|v| block_matrix.mul_vec(v))
                .collect::<Result<Vec<_>>>()?;
            let lead = cols[0].iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::one);
            let inv = lead.recip().expect("nonzero");
            for c in cols.iter_mut() {
                for x in c.iter_mut() {
                    *x *= &inv;
                }
            }
            let w = Matrix::from_columns(g.vertex_count(), &cols)?;
            let mut failures = Vec::new();
            let Some(matrices) = solve_action(ctx, &w)? else {
                failures.push((INVARIANT, format!("copy of L{n} in s = {s:?} is not invariant")));
                copies.push(CopyOutcome { p, k, copy: None, failures });
                continue;
            };
            let want = module_matrices(p, k, dim, q, Gauge::ATridiagonal)?;
            if let Some(msg) = describe_mismatch(&matrices, &want) {
                failures.push((GAUGE_I, format!("s = {s:?}: {msg}")));
            }
            let twisted_basis = w.mul(&twists[&n].inverse()?)?;
            let Some(twisted_matrices) = solve_action(ctx, &twisted_basis)? else {
                failures.push((INVARIANT, format!("twisted copy of L{n} in s = {s:?} is not invariant")));
                copies.push(CopyOutcome { p, k, copy: None, failures });
                continue;
            };
            let want = module_matrices(p, k, dim, q, Gauge::ADiagonal)?;
            if let Some(msg) = describe_mismatch(&twisted_matrices, &want) {
                failures.push((GAUGE_II, format!("s = {s:?}: {msg}")));
            }
            let invariants = module_invariants(g, &cols)?;
            let (d, r) = pk_to_dr(dim, p, k);
            let ok = invariants.endpoint == r
                && invariants.dual_endpoint == r
                && invariants.diameter == d
                && invariants.dual_diameter == d
                && invariants.support == (r..=r + d).collect::<Vec<_>>();
            if !ok {
                failures.push((ENDPOINTS, format!("s = {s:?}: found {invariants:?}, expected r = {r}, d = {d}")));
            }
            copies.push(CopyOutcome {
                p,
                k,
                copy: Some(ExtractedCopy {
                    s: s.to_vec(),
                    basis: w,
                    twisted_basis,
                    matrices,
                    twisted_matrices,
                    invariants,
                }),
                failures,
            });
        }
    }
    Ok(BlockOutcome {
        copies,
        checks,
        coordinate_rank,
        dim: basis.len(),
    })
}

/// Intertwiner taking the `A`-tridiagonal basis of `L_n` to the
/// `A`-diagonal one, for every `n <= D`.
fn twist_intertwiners(dim: usize, omega: &Rational) -> Result<BTreeMap<usize, Matrix>> {
    (0..=dim)
        .map(|n| {
            let plain = k_module(n as i64, omega)?;
            let twisted = k_module_twisted(n as i64, omega)?;
            let x = intertwiner(&plain, &twisted)?
                .ok_or_else(|| Error::Consistency(format!("no intertwiner for the twisted L{n}")))?;
            Ok((n, x))
        })
        .collect()
}

/// Splits `V(D)` into blocks, decomposes each block through `U(sl2)`, and
/// verifies every extracted copy against the closed forms.
pub fn decompose_standard_module(graph: &HammingGraph) -> Result<DecompositionReport> {
    graph.ensure_materializable()?;
    let ctx = BlockContext::new(graph)?;
    let (dim, q) = (graph.dim(), graph.q());
    let twists = twist_intertwiners(dim, &ctx.omega)?;
    let outcomes = block_labels(dim)
        .into_par_iter()
        .map(|s| decompose_block(&ctx, &s, &twists))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let mut grouped: BTreeMap<(usize, usize), Vec<CopyOutcome>> = BTreeMap::new();
    let mut coord_ok = true;
    for o in outcomes {
        checks.extend(o.checks);
        coord_ok &= o.coordinate_rank == o.dim;
        for c in o.copies {
            grouped.entry((c.p, c.k)).or_default().push(c);
        }
    }

    let mut classes = Vec::new();
    for (p, k) in labels(dim) {
        let outcomes = grouped.remove(&(p, k)).unwrap_or_default();
        let (d, r) = pk_to_dr(dim, p, k);
        let expected = class_multiplicity(dim, q, p, k)?;
        let mut class_checks = vec![Check::expect(
            "multiplicity equals the closed form",
            outcomes.len() as u64 == expected,
            || format!("found {} copies, expected {expected}", outcomes.len()),
        )];
        for name in [INVARIANT, GAUGE_I, GAUGE_II, ENDPOINTS] {
            let first = outcomes.iter().flat_map(|o| &o.failures).find(|(n, _)| *n == name);
            class_checks.push(match first {
                None => Check::pass(name),
                Some((_, detail)) => Check::fail(name, detail.clone()),
            });
        }
        let copies: Vec<ExtractedCopy> = outcomes.into_iter().filter_map(|o| o.copy).collect();
        let support = copies
            .first()
            .map(|c| c.invariants.support.clone())
            .unwrap_or_else(|| (r..=r + d).collect());
        classes.push(ModuleClass {
            descriptor: ModuleDescriptor {
                p,
                k,
                d,
                r,
                dim: d + 1,
                multiplicity: copies.len() as u64,
                support,
            },
            copies,
            checks: class_checks,
        });
    }
    if let Some(((p, k), _)) = grouped.into_iter().next() {
        return Err(Error::Consistency(format!("extracted a module with invalid label ({p}, {k})")));
    }

    let n = graph.vertex_count() as u64;
    let total: u64 = classes.iter().map(|c| c.copies.len() as u64 * c.descriptor.dim as u64).sum();
    checks.push(Check::expect("multiplicity times dimension sums to q^D", total == n, || {
        format!("sum is {total}, q^D = {n}")
    }));
    checks.push(Check::expect("extracted copies span every block", coord_ok, || {
        "some block is not spanned by its copies".into()
    }));
    if graph.vertex_count() <= GLOBAL_RANK_LIMIT {
        let cols: Vec<Vector> = classes
            .iter()
            .flat_map(|c| c.copies.iter().flat_map(|x| x.basis.columns()))
            .collect();
        let full = cols.len() as u64 == n && Matrix::from_columns(graph.vertex_count(), &cols)?.is_full_rank();
        checks.push(Check::expect("union of copy bases has rank q^D", full, || {
            format!("{} vectors are not a basis of a space of dimension {n}", cols.len())
        }));
    }
    Ok(DecompositionReport {
        dim,
        q,
        classes,
        checks,
    })
}

/// The `(A(D), A*(D))` action on a copy as a triple, for intertwiner searches.
fn action_triple(m: &(Matrix, Matrix), omega: &Rational) -> Result<RepTriple> {
    Ok(RepTriple {
        a: m.0.clone(),
        b: m.1.clone(),
        c: m.0.commutator(&m.1)?,
        omega: omega.clone(),
    })
}

fn spectrum(m: &Matrix) -> Vec<Rational> {
    let mut v = m.diagonal_entries();
    v.sort();
    v
}

/// Distinct classes are told apart by dimension and `A*(D)`-spectrum; copies
/// within a class are isomorphic by an explicit invertible intertwiner.
pub fn classify_pairwise(report: &DecompositionReport) -> Result<Vec<Check>> {
    let omega = Rational::one() - Rational::new(2, report.q as i64);
    let mut checks = Vec::new();
    let keys: Vec<(usize, Vec<Rational>, (usize, usize))> = report
        .classes
        .iter()
        .filter_map(|c| {
            c.copies
                .first()
                .map(|x| (c.descriptor.dim, spectrum(&x.matrices.1), (c.descriptor.p, c.descriptor.k)))
        })
        .collect();
    let mut clash = None;
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            if a.0 == b.0 && a.1 == b.1 {
                clash.get_or_insert((a.2, b.2));
            }
        }
    }
    checks.push(Check::expect(
        "distinct labels have distinct (dimension, A*-spectrum)",
        clash.is_none(),
        || {
            let (x, y) = clash.unwrap();
            format!("labels {x:?} and {y:?} share dimension and spectrum")
        },
    ));
    let missing: Vec<_> = report.classes.iter().filter(|c| c.copies.is_empty()).map(|c| (c.descriptor.p, c.descriptor.k)).collect();
    checks.push(Check::expect("every label occurs", missing.is_empty(), || format!("no copies of {missing:?}")));
    let mut failure = None;
    for class in &report.classes {
        let Some(first) = class.copies.first() else { continue };
        let base = action_triple(&first.matrices, &omega)?;
        for (j, copy) in class.copies.iter().enumerate() {
            let other = action_triple(&copy.twisted_matrices, &omega)?;
            if intertwiner(&base, &other)?.is_none() {
                failure.get_or_insert((class.descriptor.p, class.descriptor.k, j));
            }
        }
    }
    checks.push(Check::expect("copies with equal labels are isomorphic", failure.is_none(), || {
        let (p, k, j) = failure.unwrap();
        format!("copy {j} of ({p}, {k}) admits no invertible intertwiner")
    }));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(d: usize, q: usize) -> DecompositionReport {
        decompose_standard_module(&HammingGraph::new(d, q).unwrap()).unwrap()
    }

    fn counts(r: &DecompositionReport) -> Vec<((usize, usize), u64)> {
        r.classes
            .iter()
            .map(|c| ((c.descriptor.p, c.descriptor.k), c.descriptor.multiplicity))
            .collect()
    }

    #[test]
    fn d2_q3() {
        let r = report(2, 3);
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(counts(&r), vec![((2, 0), 1), ((2, 1), 1), ((1, 0), 2), ((0, 0), 1)]);
        assert_eq!(r.total_dim(), 9);
    }

    #[test]
    fn d3_q3() {
        let r = report(3, 3);
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(
            counts(&r),
            vec![((3, 0), 1), ((3, 1), 2), ((2, 0), 3), ((2, 1), 3), ((1, 0), 3), ((0, 0), 1)]
        );
        let c = r.classes.iter().find(|c| (c.descriptor.p, c.descriptor.k) == (2, 0)).unwrap();
        assert_eq!((c.descriptor.r, c.descriptor.d), (1, 2));
        assert_eq!(c.descriptor.support, vec![1, 2, 3]);
        assert_eq!(r.classes[0].descriptor.support, vec![0, 1, 2, 3]);
        assert!(all_passed(&classify_pairwise(&r).unwrap()));
    }

    #[test]
    fn d3_dr_2_1_multiplicity() {
        for q in [3, 4] {
            let r = report(3, q);
            let c = r.classes.iter().find(|c| (c.descriptor.d, c.descriptor.r) == (2, 1)).unwrap();
            assert_eq!(c.descriptor.multiplicity, 3 * (q as u64 - 2));
        }
    }

    #[test]
    fn same_label_copies_are_isomorphic() {
        let r = report(2, 3);
        let c = r.classes.iter().find(|c| (c.descriptor.p, c.descriptor.k) == (1, 0)).unwrap();
        assert_eq!(c.copies.len(), 2);
        let om = Rational::new(1, 3);
        let x = intertwiner(
            &action_triple(&c.copies[0].matrices, &om).unwrap(),
            &action_triple(&c.copies[1].twisted_matrices, &om).unwrap(),
        )
        .unwrap();
        assert!(x.is_some());
    }

    #[test]
    fn invariants_examples() {
        let g = HammingGraph::new(2, 3).unwrap();
        let mut e0 = vec![Rational::zero(); 9];
        e0[0] = Rational::one();
        let inv = module_invariants(&g, &[e0]).unwrap();
        assert_eq!(inv.support, vec![0]);
        assert_eq!(inv.dual_support, vec![0, 1, 2]);
    }

    #[test]
    fn resource_cap_is_enforced() {
        let g = HammingGraph::new(3, 3).unwrap().with_cap(10);
        assert!(matches!(decompose_standard_module(&g), Err(Error::Resource(_))));
    }
}
