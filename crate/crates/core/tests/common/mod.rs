#![allow(dead_code)]

use std::collections::HashSet;

use chromsp::sp::pair::{compose_parallel, compose_series};
use chromsp::sp::{PolyPair, SpExpr};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every expression with exactly `n` edges, for `n = 0..=max` (index 0 empty).
pub fn all_exprs_by_edges(max: usize) -> Vec<Vec<SpExpr>> {
    let mut by: Vec<Vec<SpExpr>> = vec![Vec::new(), vec![SpExpr::edge()]];
    for n in 2..=max {
        let mut cur = Vec::new();
        for k in 1..n {
            for a in &by[k] {
                for b in &by[n - k] {
                    cur.push(SpExpr::series(a, b));
                    cur.push(SpExpr::parallel(a, b));
                }
            }
        }
        by.push(cur);
    }
    by.truncate(max + 1);
    by
}

/// Random expression with exactly `edges` edges.
pub fn random_expr(rng: &mut impl Rng, edges: usize) -> SpExpr {
    if edges == 1 {
        return SpExpr::edge();
    }
    let k = rng.random_range(1..edges);
    let a = random_expr(rng, k);
    let b = random_expr(rng, edges - k);
    if rng.random_bool(0.5) {
        SpExpr::series(&a, &b)
    } else {
        SpExpr::parallel(&a, &b)
    }
}

/// Proptest strategy for expressions with `min..=max` edges.
pub fn arb_expr(min: usize, max: usize) -> impl Strategy<Value = SpExpr> {
    (min..=max, any::<u64>()).prop_map(|(edges, seed)| random_expr(&mut ChaCha8Rng::seed_from_u64(seed), edges))
}

/// The distinct `(Z^same, Z^dif)` pairs over all expressions with exactly
/// `n` edges, for `n = 0..=max`, built by composing pairs directly.
pub fn distinct_pairs_by_edges(max: usize) -> Vec<Vec<PolyPair>> {
    let mut by: Vec<Vec<PolyPair>> = vec![Vec::new(), vec![PolyPair::edge()]];
    for n in 2..=max {
        let mut seen: HashSet<(Vec<BigInt>, Vec<BigInt>)> = HashSet::new();
        let mut cur = Vec::new();
        for k in 1..n {
            for a in &by[k] {
                for b in &by[n - k] {
                    for p in [compose_series(a, b), compose_parallel(a, b)] {
                        let p = p.expect("small pairs compose");
                        if seen.insert((p.same.coeffs().to_vec(), p.dif.coeffs().to_vec())) {
                            cur.push(p);
                        }
                    }
                }
            }
        }
        by.push(cur);
    }
    by
}

/// `b^deg · Z(a/b)`, which vanishes exactly when `Z(a/b) = 0`.
pub fn z_at_rational(p: &PolyPair, a: i64, b: i64) -> BigInt {
    p.z().eval_homogeneous(&BigInt::from(a), &BigInt::from(b))
}
