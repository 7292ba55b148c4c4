//! Dimension of the algebra generated by `A(D)` and `A*(D)`.

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SpanBasis};
use crate::hamming::{adjacency, dual_adjacency, HammingGraph};

/// Iteration limit for the word closure.
pub const MAX_CLOSURE_ROUNDS: usize = 30;

/// Dimension of the span of all words in `generators`, found by repeatedly
/// multiplying newly found basis elements by each generator until the span
/// stops growing.
pub fn word_closure_dimension(generators: &[Matrix]) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Err(Error::Shape("word closure needs a generator".into()));
    };
    let n = first.rows();
    let mut span = SpanBasis::new();
    let mut frontier = Vec::new();
    for m in std::iter::once(Matrix::identity(n)).chain(generators.iter().cloned()) {
        if span.insert(m.entries()) {
            frontier.push(m);
        }
    }
    for _ in 0..MAX_CLOSURE_ROUNDS {
        if frontier.is_empty() {
            return Ok(span.dim());
        }
        let mut next = Vec::new();
        for m in &frontier {
            for g in generators {
                let w = m.mul(g)?;
                if span.insert(w.entries()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Err(Error::Consistency(format!(
        "word closure still growing after {MAX_CLOSURE_ROUNDS} rounds"
    )))
}

/// `dim T(D)` by word closure on the materialized `A(D)` and `A*(D)`.
pub fn algebra_dimension(graph: &HammingGraph) -> Result<usize> {
    graph.ensure_materializable().map_err(|e| match e {
        Error::Resource(msg) => Error::Resource(format!(
            "{msg}; the closed form C(D+4, 4) needs no materialization"
        )),
        other => other,
    })?;
    word_closure_dimension(&[adjacency(graph)?, dual_adjacency(graph)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::binomial;
    use crate::terwilliger::forms::wedderburn_dimension;

    #[test]
    fn closure_examples() {
        for (d, q) in [(1, 3), (2, 3), (3, 3), (2, 4)] {
            let g = HammingGraph::new(d, q).unwrap();
            let dim = algebra_dimension(&g).unwrap();
            assert_eq!(dim, binomial(d + 4, 4));
            assert_eq!(dim, wedderburn_dimension(d));
        }
    }

    #[test]
    fn closure_of_commuting_generators() {
        let d = Matrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(word_closure_dimension(&[d]).unwrap(), 3);
        assert!(matches!(
            algebra_dimension(&HammingGraph::new(3, 3).unwrap().with_cap(5)),
            Err(Error::Resource(_))
        ));
    }
}
