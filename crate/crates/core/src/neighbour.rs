//! Neighbours of a self-dual code: `N = <C ∩ x^⊥, x>` for an even-weight
//! `x` outside `C`, which shares a subspace of codimension one with `C`.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// One link of a neighbour chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourStep {
    pub parent_fingerprint: String,
    pub x: BitVector,
    pub child: LinearCode,
    /// 1 for the first neighbour of the start code.
    pub depth: usize,
}

/// Generators of `C ∩ x^⊥`, or `None` when every row is orthogonal to `x`.
fn orthogonal_rows(code: &LinearCode, x: &BitVector) -> Option<Vec<BitVector>> {
    let rows = code.generator().rows();
    let pivot = rows.iter().position(|r| r.dot_unchecked(x))?;
    let fix = &rows[pivot];
    let out = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, r)| {
            let mut r = r.clone();
            if r.dot_unchecked(x) {
                r.xor_assign(fix);
            }
            r
        })
        .collect();
    Some(out)
}

/// The neighbour of a self-dual `code` through `x`.
///
/// `x` must have even weight (so `x . x = 0`) and must not be orthogonal to
/// all of `code`; since `code` is self-dual the latter is `x ∉ code`.
pub fn neighbour(code: &LinearCode, x: &BitVector) -> Result<LinearCode> {
    if x.len() != code.length() {
        return Err(Error::LengthMismatch {
            left: code.length(),
            right: x.len(),
        });
    }
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    if x.weight() % 2 == 1 {
        return Err(Error::NotIsotropic);
    }
    let mut rows = orthogonal_rows(code, x).ok_or(Error::NotProperNeighbour)?;
    rows.push(x.clone());
    let g = BitMatrix::from_rows(code.length(), rows)?;
    LinearCode::from_generator(&g)
}

/// Applies `xs` in order, starting from `start`.
pub fn chain(start: &LinearCode, xs: &[BitVector]) -> Result<Vec<NeighbourStep>> {
    let mut steps: Vec<NeighbourStep> = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let parent = steps.last().map_or(start, |s| &s.child);
        let child = neighbour(parent, x).map_err(|e| Error::ChainStep {
            depth: i + 1,
            source: Box::new(e),
        })?;
        steps.push(NeighbourStep {
            parent_fingerprint: parent.fingerprint(),
            x: x.clone(),
            child,
            depth: i + 1,
        });
    }
    Ok(steps)
}

/// The last code of the chain, or `start` for an empty chain.
pub fn chain_end(start: &LinearCode, xs: &[BitVector]) -> Result<LinearCode> {
    Ok(chain(start, xs)?.pop().map_or_else(|| start.clone(), |s| s.child))
}

/// `dim(C ∩ D) = dim C + dim D - dim(C + D)`.
pub fn intersection_dim(c: &LinearCode, d: &LinearCode) -> Result<usize> {
    let sum = c.generator().vconcat(d.generator())?;
    Ok(c.dimension() + d.dimension() - sum.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        BitVector::from_binary_str(s).unwrap()
    }

    fn code(rows: &str) -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_binary_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn length_four_example() {
        let c = code("1100\n0011");
        let n = neighbour(&c, &v("1010")).unwrap();
        assert_eq!(n, code("1111\n1010"));
        for w in ["0000", "1111", "1010", "0101"] {
            assert!(n.contains(&v(w)));
        }
        assert!(n.is_self_dual());
        assert_eq!(intersection_dim(&c, &n).unwrap(), 1);
    }

    #[test]
    fn rejections() {
        let c = code("1100\n0011");
        assert!(matches!(neighbour(&c, &v("1000")), Err(Error::NotIsotropic)));
        assert!(matches!(neighbour(&c, &v("1111")), Err(Error::NotProperNeighbour)));
        assert!(matches!(neighbour(&c, &v("11")), Err(Error::LengthMismatch { .. })));
        assert!(matches!(neighbour(&code("1100"), &v("1010")), Err(Error::NotSelfDual)));
    }

    #[test]
    fn neighbour_relation_is_symmetric() {
        let c = code("1100\n0011");
        let x = v("1010");
        let n = neighbour(&c, &x).unwrap();
        // any y in C outside C ∩ x^⊥ leads back
        let back = neighbour(&n, &v("1100")).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn chain_reports_failing_depth() {
        let c = code("1100\n0011");
        let err = chain(&c, &[v("1010"), v("1111")]).unwrap_err();
        assert!(matches!(err, Error::ChainStep { depth: 2, .. }));
        let steps = chain(&c, &[v("1010"), v("1100")]).unwrap();
        assert_eq!(steps[1].child, c);
        assert_eq!(steps[1].parent_fingerprint, steps[0].child.fingerprint());
        assert_eq!(chain_end(&c, &[]).unwrap(), c);
    }
}
