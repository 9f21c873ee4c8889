//! The exact pair `(Z^same, Z^dif)` of integer polynomials.

use std::collections::HashMap;

use super::{Node, SpExpr};
use crate::poly::IntPoly;
use crate::{Error, Result};

/// Largest vertex count for which exact pairs are built; beyond this the
/// coefficients are far too large to be useful and evaluation should go
/// through the complex recursion.
pub const MAX_EXACT_VERTICES: u128 = 4096;

/// `same` counts colourings with equal terminal colours, `dif` the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPair {
    pub same: IntPoly,
    pub dif: IntPoly,
}

impl PolyPair {
    pub fn edge() -> PolyPair {
        PolyPair { same: IntPoly::zero(), dif: IntPoly::from_i64(&[0, -1, 1]) }
    }

    /// The chromatic polynomial `same + dif`.
    pub fn z(&self) -> IntPoly {
        &self.same + &self.dif
    }
}

/// Divide by `q(q-1)`, insisting on a zero remainder.
fn div_q_qm1(p: &IntPoly) -> Result<IntPoly> {
    div_q(p)?
        .div_linear_exact(1)
        .map_err(|r| Error::Internal(format!("division by (q-1) left remainder {r}")))
}

fn div_q(p: &IntPoly) -> Result<IntPoly> {
    p.div_linear_exact(0)
        .map_err(|r| Error::Internal(format!("division by q left remainder {r}")))
}

/// Pair of the parallel composition.
pub fn compose_parallel(a: &PolyPair, b: &PolyPair) -> Result<PolyPair> {
    Ok(PolyPair {
        same: div_q(&(&a.same * &b.same))?,
        dif: div_q_qm1(&(&a.dif * &b.dif))?,
    })
}

/// Pair of the series composition.
pub fn compose_series(a: &PolyPair, b: &PolyPair) -> Result<PolyPair> {
    let ss = &a.same * &b.same;
    let dd = &a.dif * &b.dif;
    let cross = &(&a.same * &b.dif) + &(&a.dif * &b.same);
    // same = ss/q + dd/(q(q-1)) = (ss·(q-1) + dd) / (q(q-1))
    let same = div_q_qm1(&(&ss.mul_linear(1) + &dd))?;
    // dif = cross/q + (q-2)·dd/(q(q-1)) = (cross·(q-1) + (q-2)·dd) / (q(q-1))
    let dif = div_q_qm1(&(&cross.mul_linear(1) + &dd.mul_linear(2)))?;
    Ok(PolyPair { same, dif })
}

/// The exact pair of `g`, memoised on the canonical hash for shared blocks.
pub fn pair_polys(g: &SpExpr) -> Result<PolyPair> {
    if g.vertex_count() > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the exact-polynomial limit {MAX_EXACT_VERTICES}",
            g.vertex_count()
        )));
    }
    let mut memo = HashMap::new();
    pair_rec(g, &mut memo)
}

fn pair_rec(g: &SpExpr, memo: &mut HashMap<(u64, u128, u128), PolyPair>) -> Result<PolyPair> {
    if let Some(p) = memo.get(&g.memo_key()) {
        return Ok(p.clone());
    }
    let out = match g.node() {
        Node::Edge => PolyPair::edge(),
        Node::Series(a, b) => compose_series(&pair_rec(a, memo)?, &pair_rec(b, memo)?)?,
        Node::Parallel(a, b) => compose_parallel(&pair_rec(a, memo)?, &pair_rec(b, memo)?)?,
    };
    memo.insert(g.memo_key(), out.clone());
    Ok(out)
}

/// The chromatic polynomial of the graph described by `g`.
pub fn z_poly(g: &SpExpr) -> Result<IntPoly> {
    Ok(pair_polys(g)?.z())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn edge_pair() {
        let e = pair_polys(&SpExpr::edge()).unwrap();
        assert!(e.same.is_zero());
        assert_eq!(e.dif, p(&[0, -1, 1]));
        assert_eq!(z_poly(&SpExpr::edge()).unwrap(), p(&[0, -1, 1]));
    }

    #[test]
    fn path_two_pair() {
        let pp = pair_polys(&SpExpr::path(2).unwrap()).unwrap();
        assert_eq!(pp.same, p(&[0, -1, 1]));
        assert_eq!(pp.dif, p(&[0, 2, -3, 1]));
    }

    #[test]
    fn small_chromatic_polynomials() {
        assert_eq!(z_poly(&SpExpr::theta(&[1, 2]).unwrap()).unwrap(), p(&[0, 2, -3, 1]));
        // (q-1)^4 + (q-1)
        assert_eq!(z_poly(&SpExpr::theta(&[2, 2]).unwrap()).unwrap(), p(&[0, -3, 6, -4, 1]));
        // trees: q (q-1)^3
        assert_eq!(z_poly(&SpExpr::path(3).unwrap()).unwrap(), p(&[0, -1, 3, -3, 1]));
    }

    #[test]
    fn dif_is_pair_with_terminal_edge() {
        let g = SpExpr::theta(&[2, 3]).unwrap();
        let pair = pair_polys(&g).unwrap();
        let closed = z_poly(&SpExpr::parallel(&g, &SpExpr::edge())).unwrap();
        assert_eq!(pair.dif, closed);
    }

    #[test]
    fn refuses_huge_graphs() {
        let g = SpExpr::path(5000).unwrap();
        assert!(matches!(pair_polys(&g), Err(Error::TooLarge(_))));
    }
}
