//! Subset-expansion oracle `Z(G;q) = Σ_{F ⊆ E} (-1)^{|F|} q^{k(F)}`.
//!
//! Independent of the pair recursion: it works on the realized multigraph
//! and counts components with a rollback union-find.

use num_bigint::BigInt;

use super::{Node, SpExpr};
use crate::poly::IntPoly;
use crate::{Error, Result};

/// Largest edge count accepted by the oracle.
pub const MAX_BRUTE_EDGES: usize = 22;

/// Largest graph [`realize`] will materialize.
pub const MAX_REALIZED_EDGES: u128 = 1 << 22;

/// An undirected multigraph on vertices `0..vertices`; the start terminal is
/// vertex 0 and the end terminal vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Materialize the graph described by `g`.
pub fn realize(g: &SpExpr) -> Result<Multigraph> {
    if g.edge_count() > MAX_REALIZED_EDGES {
        return Err(Error::TooLarge(format!("{} edges is too many to realize", g.edge_count())));
    }
    let mut out = Multigraph { vertices: 2, edges: Vec::with_capacity(g.edge_count() as usize) };
    // Explicit stack: (expression, start vertex, end vertex).
    let mut stack = vec![(g.clone(), 0usize, 1usize)];
    while let Some((h, s, t)) = stack.pop() {
        match h.node() {
            Node::Edge => out.edges.push((s, t)),
            Node::Series(a, b) => {
                let mid = out.vertices;
                out.vertices += 1;
                stack.push((b.clone(), mid, t));
                stack.push((a.clone(), s, mid));
            }
            Node::Parallel(a, b) => {
                stack.push((b.clone(), s, t));
                stack.push((a.clone(), s, t));
            }
        }
    }
    Ok(out)
}

struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        RollbackUnionFind { parent: (0..n).collect(), size: vec![1; n], components: n, history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        self.history.push(Some((ra, rb)));
    }

    fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }
}

fn expand(edges: &[(usize, usize)], uf: &mut RollbackUnionFind, sign: i64, counts: &mut [i64]) {
    match edges.split_first() {
        None => counts[uf.components] += sign,
        Some((&(a, b), rest)) => {
            expand(rest, uf, sign, counts);
            uf.union(a, b);
            expand(rest, uf, -sign, counts);
            uf.undo();
        }
    }
}

/// Chromatic polynomial of a multigraph by subset expansion.
pub fn brute_force_z_graph(g: &Multigraph) -> Result<IntPoly> {
    if g.edges.len() > MAX_BRUTE_EDGES {
        return Err(Error::TooLarge(format!(
            "{} edges exceeds the oracle limit {MAX_BRUTE_EDGES}",
            g.edges.len()
        )));
    }
    let mut counts = vec![0i64; g.vertices + 1];
    let mut uf = RollbackUnionFind::new(g.vertices);
    expand(&g.edges, &mut uf, 1, &mut counts);
    Ok(IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect()))
}

/// Chromatic polynomial of `g` by subset expansion of its realization.
pub fn brute_force_z(g: &SpExpr) -> Result<IntPoly> {
    if g.edge_count() > MAX_BRUTE_EDGES as u128 {
        return Err(Error::TooLarge(format!(
            "{} edges exceeds the oracle limit {MAX_BRUTE_EDGES}",
            g.edge_count()
        )));
    }
    brute_force_z_graph(&realize(g)?)
}

/// Two-colourability of the realized graph (loops cannot occur).
pub fn is_bipartite(g: &Multigraph) -> bool {
    let mut adj = vec![Vec::new(); g.vertices];
    for &(a, b) in &g.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour = vec![u8::MAX; g.vertices];
    for root in 0..g.vertices {
        if colour[root] != u8::MAX {
            continue;
        }
        colour[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    stack.push(w);
                } else if colour[w] == colour[v] {
                    return false;
                }
            }
        }
    }
    true
}
