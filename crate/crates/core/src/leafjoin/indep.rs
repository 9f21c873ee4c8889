//! Independence polynomials and occupation ratios.

use num_bigint::BigInt;

use super::tree::RootedTree;
use crate::poly::IntPoly;
use crate::{Cx, Error, Result};

/// Largest graph accepted by the subset-enumeration oracle.
pub const MAX_IND_VERTICES: usize = 25;

/// Simple graph on at most [`MAX_IND_VERTICES`] vertices, as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_IND_VERTICES {
            return Err(Error::TooLarge(format!("{n} vertices, at most {MAX_IND_VERTICES} supported")));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.adj.len();
        if a >= n || b >= n || a == b {
            return Err(Error::Argument(format!("bad edge ({a}, {b}) on {n} vertices")));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let m = self.adj[v];
        (0..self.adj.len()).filter(move |&u| m >> u & 1 == 1)
    }

    fn all(&self) -> u32 {
        if self.adj.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.adj.len()) - 1
        }
    }

    /// Independent-set counts by size inside the vertex set `mask`.
    fn counts_within(&self, mask: u32) -> Vec<u64> {
        let mut counts = vec![0u64; mask.count_ones() as usize + 1];
        self.enumerate(mask, 0, &mut counts);
        counts
    }

    fn enumerate(&self, available: u32, size: usize, counts: &mut [u64]) {
        if available == 0 {
            counts[size] += 1;
            return;
        }
        let v = available.trailing_zeros();
        let rest = available & !(1 << v);
        self.enumerate(rest, size, counts);
        self.enumerate(rest & !self.adj[v as usize], size + 1, counts);
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// True when connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return false;
        }
        let edges: u32 = self.adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
        if edges as usize != n - 1 {
            return false;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= !(1 << v);
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == self.all()
    }
}

fn counts_to_poly(counts: &[u64]) -> IntPoly {
    IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
}

/// `I(G; λ) = Σ_{I independent} λ^{|I|}`, with the variable printed as `q`.
pub fn ind_poly(g: &Graph) -> IntPoly {
    counts_to_poly(&g.counts_within(g.all()))
}

fn eval_counts(counts: &[u64], lambda: Cx) -> Cx {
    counts.iter().rev().fold(Cx::new(0.0, 0.0), |acc, &c| acc * lambda + c as f64)
}

/// How to compute an occupation ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioPath {
    /// From independence polynomials of the two vertex-deleted graphs.
    Oracle,
    /// Through `F_{λ,d}` along the tree rooted at `v`; requires a tree.
    Recursion,
}

/// `P_{G,v}(λ) = λ I(G ∖ N[v]; λ) / I(G - v; λ)`.
pub fn occupation_ratio(g: &Graph, v: usize, lambda: Cx, path: RatioPath) -> Result<Cx> {
    if v >= g.vertex_count() {
        return Err(Error::Argument(format!("vertex {v} out of range")));
    }
    match path {
        RatioPath::Oracle => {
            let minus_v = g.all() & !(1 << v);
            let minus_nv = minus_v & !g.adj[v];
            let den = eval_counts(&g.counts_within(minus_v), lambda);
            if den.norm() == 0.0 {
                return Err(Error::Pole("I(G - v) vanishes".into()));
            }
            Ok(lambda * eval_counts(&g.counts_within(minus_nv), lambda) / den)
        }
        RatioPath::Recursion => {
            if !g.is_tree() {
                return Err(Error::Argument("the recursion path needs a tree".into()));
            }
            tree_ratio(&RootedTree::from_graph(g, v)?, lambda)
        }
    }
}

/// Occupation ratio of the root: `P = λ / ∏ (1 + P_child)`.
pub fn tree_ratio(t: &RootedTree, lambda: Cx) -> Result<Cx> {
    t.fold_shared(&mut |kids: &[Cx]| super::maps::f_map(lambda, kids))
}
