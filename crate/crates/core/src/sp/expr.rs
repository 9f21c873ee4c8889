use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A two-terminal series-parallel graph as a composition tree.
///
/// Children are reference counted, so repeated blocks (powers built by
/// doubling) share storage and the tree may describe astronomically many
/// edges. Counts saturate at `u128::MAX`.
#[derive(Clone)]
pub struct SpExpr(Arc<Inner>);

struct Inner {
    node: Node,
    edges: u128,
    vertices: u128,
    depth: u32,
    canon: u64,
    ordered: u64,
}

/// The top-level composition of an [`SpExpr`].
#[derive(Clone)]
pub enum Node {
    Edge,
    /// The end of the left graph is glued to the start of the right graph.
    Series(SpExpr, SpExpr),
    /// Starts glued together and ends glued together.
    Parallel(SpExpr, SpExpr),
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn combine(tag: u64, a: u64, b: u64) -> u64 {
    mix(mix(tag ^ mix(a)).wrapping_add(b))
}

const TAG_EDGE: u64 = 0x45;
const TAG_SERIES: u64 = 0x53;
const TAG_PARALLEL: u64 = 0x50;

impl SpExpr {
    pub fn edge() -> SpExpr {
        SpExpr(Arc::new(Inner {
            node: Node::Edge,
            edges: 1,
            vertices: 2,
            depth: 0,
            canon: mix(TAG_EDGE),
            ordered: mix(TAG_EDGE),
        }))
    }

    fn compose(tag: u64, a: &SpExpr, b: &SpExpr) -> SpExpr {
        let (x, y) = (&a.0, &b.0);
        let (lo, hi) = if x.canon <= y.canon { (x.canon, y.canon) } else { (y.canon, x.canon) };
        let merged = if tag == TAG_SERIES { 1 } else { 2 };
        let node = if tag == TAG_SERIES {
            Node::Series(a.clone(), b.clone())
        } else {
            Node::Parallel(a.clone(), b.clone())
        };
        SpExpr(Arc::new(Inner {
            node,
            edges: x.edges.saturating_add(y.edges),
            vertices: x.vertices.saturating_add(y.vertices).saturating_sub(merged),
            depth: x.depth.max(y.depth) + 1,
            canon: combine(tag, lo, hi),
            ordered: combine(tag, x.ordered, y.ordered),
        }))
    }

    pub fn series(a: &SpExpr, b: &SpExpr) -> SpExpr {
        SpExpr::compose(TAG_SERIES, a, b)
    }

    pub fn parallel(a: &SpExpr, b: &SpExpr) -> SpExpr {
        SpExpr::compose(TAG_PARALLEL, a, b)
    }

    fn power(g: &SpExpr, n: u64, op: fn(&SpExpr, &SpExpr) -> SpExpr) -> Result<SpExpr> {
        if n == 0 {
            return Err(Error::Argument("composition power must be >= 1".into()));
        }
        if n == 1 {
            return Ok(g.clone());
        }
        let half = SpExpr::power(g, n / 2, op)?;
        let sq = op(&half, &half);
        Ok(if n % 2 == 1 { op(&sq, g) } else { sq })
    }

    /// `n` copies of `g` composed in series, sharing one copy of `g`.
    pub fn series_power(g: &SpExpr, n: u64) -> Result<SpExpr> {
        SpExpr::power(g, n, SpExpr::series)
    }

    /// `n` copies of `g` composed in parallel, sharing one copy of `g`.
    pub fn parallel_power(g: &SpExpr, n: u64) -> Result<SpExpr> {
        SpExpr::power(g, n, SpExpr::parallel)
    }

    /// The path with `n ≥ 1` edges between the terminals.
    pub fn path(n: u64) -> Result<SpExpr> {
        if n == 0 {
            return Err(Error::Argument("path length must be >= 1".into()));
        }
        SpExpr::series_power(&SpExpr::edge(), n)
    }

    /// Paths of the given lengths composed in parallel.
    pub fn theta(lengths: &[u64]) -> Result<SpExpr> {
        let (first, rest) = lengths
            .split_first()
            .ok_or_else(|| Error::Argument("theta needs at least one path".into()))?;
        let mut acc = SpExpr::path(*first)?;
        for &l in rest {
            acc = SpExpr::parallel(&acc, &SpExpr::path(l)?);
        }
        Ok(acc)
    }

    /// The cycle `C_n` (`n ≥ 3`) as `theta(n-1, 1)`, terminals adjacent.
    pub fn cycle(n: u64) -> Result<SpExpr> {
        if n < 3 {
            return Err(Error::Argument("cycle length must be >= 3".into()));
        }
        SpExpr::theta(&[n - 1, 1])
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn edge_count(&self) -> u128 {
        self.0.edges
    }

    pub fn vertex_count(&self) -> u128 {
        self.0.vertices
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn is_edge(&self) -> bool {
        matches!(self.0.node, Node::Edge)
    }

    /// Hash invariant under swapping the two children of any composition.
    /// Graphs with equal canonical hash have equal chromatic pairs (up to
    /// hash collisions), which is what memo tables rely on.
    pub fn canonical_hash(&self) -> u64 {
        self.0.canon
    }

    /// Memo key: the canonical hash together with the cached counts.
    pub fn memo_key(&self) -> (u64, u128, u128) {
        (self.0.canon, self.0.edges, self.0.vertices)
    }

    /// Whether the two handles point to the same node.
    pub fn ptr_eq(&self, other: &SpExpr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Whether the start and end terminals are joined by an edge.
    pub fn has_terminal_edge(&self) -> bool {
        match &self.0.node {
            Node::Edge => true,
            Node::Series(..) => false,
            Node::Parallel(a, b) => a.has_terminal_edge() || b.has_terminal_edge(),
        }
    }

    /// Number of distinct shared nodes reachable from the root.
    pub fn distinct_nodes(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(g) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&g.0) as usize) {
                continue;
            }
            match &g.0.node {
                Node::Edge => {}
                Node::Series(a, b) | Node::Parallel(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
            }
        }
        seen.len()
    }
}

impl PartialEq for SpExpr {
    /// Ordered structural equality.
    fn eq(&self, other: &SpExpr) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        let (x, y) = (&self.0, &other.0);
        if x.ordered != y.ordered || x.edges != y.edges || x.vertices != y.vertices {
            return false;
        }
        match (&x.node, &y.node) {
            (Node::Edge, Node::Edge) => true,
            (Node::Series(a, b), Node::Series(c, d)) | (Node::Parallel(a, b), Node::Parallel(c, d)) => {
                a == c && b == d
            }
            _ => false,
        }
    }
}

impl Eq for SpExpr {}

impl fmt::Debug for SpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edge_count() > 64 {
            write!(f, "SpExpr({} edges, {} vertices)", self.edge_count(), self.vertex_count())
        } else {
            write!(f, "SpExpr({self})")
        }
    }
}

impl fmt::Display for SpExpr {
    /// Term syntax `e`, `s(A,B)`, `p(A,B)`; macros are expanded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.node {
            Node::Edge => write!(f, "e"),
            Node::Series(a, b) => write!(f, "s({a},{b})"),
            Node::Parallel(a, b) => write!(f, "p({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_builders() {
        let p2 = SpExpr::path(2).unwrap();
        assert_eq!(p2, SpExpr::series(&SpExpr::edge(), &SpExpr::edge()));
        assert_eq!((p2.vertex_count(), p2.edge_count()), (3, 2));
        let c4 = SpExpr::theta(&[2, 2]).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        let tri = SpExpr::theta(&[1, 2]).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        let c5 = SpExpr::cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
    }

    #[test]
    fn invalid_sizes() {
        assert!(SpExpr::path(0).is_err());
        assert!(SpExpr::theta(&[]).is_err());
        assert!(SpExpr::theta(&[2, 0]).is_err());
        assert!(SpExpr::cycle(2).is_err());
    }

    #[test]
    fn powers_share_nodes() {
        let g = SpExpr::parallel_power(&SpExpr::path(7).unwrap(), 1_000_000).unwrap();
        assert_eq!(g.edge_count(), 7_000_000);
        assert_eq!(g.vertex_count(), 6_000_002);
        assert!(g.distinct_nodes() < 64);
    }

    #[test]
    fn canonical_hash_ignores_child_order() {
        let a = SpExpr::path(2).unwrap();
        let b = SpExpr::edge();
        let x = SpExpr::series(&a, &b);
        let y = SpExpr::series(&b, &a);
        assert_eq!(x.canonical_hash(), y.canonical_hash());
        assert_ne!(x, y);
        assert_ne!(SpExpr::series(&a, &b).canonical_hash(), SpExpr::parallel(&a, &b).canonical_hash());
    }

    #[test]
    fn terminal_edge_detection() {
        assert!(SpExpr::edge().has_terminal_edge());
        assert!(!SpExpr::path(3).unwrap().has_terminal_edge());
        assert!(SpExpr::cycle(4).unwrap().has_terminal_edge());
        assert!(!SpExpr::theta(&[2, 3]).unwrap().has_terminal_edge());
    }
}
