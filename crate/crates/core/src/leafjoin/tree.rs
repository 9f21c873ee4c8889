//! Rooted trees with shared subtrees, their leaf-joined series-parallel
//! expressions, and the modified-ratio bridge.

use std::collections::HashMap;
use std::sync::Arc;

use super::indep::{Graph, MAX_IND_VERTICES};
use super::maps::{f_map, lambda_q_d};
use crate::moebius::Sphere;
use crate::sp::{ratio_eval, EvalPath, SpExpr};
use crate::{Cx, Error, Result};

/// A rooted tree. Identical subtrees may be shared, so trees of large depth
/// stay small in memory; all traversals visit each shared node once.
#[derive(Clone, Debug)]
pub struct RootedTree(Arc<TreeNode>);

#[derive(Debug)]
struct TreeNode {
    children: Vec<RootedTree>,
    vertices: u128,
    height: u32,
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vertices == other.0.vertices
                && self.0.height == other.0.height
                && self.0.children == other.0.children)
    }
}

impl RootedTree {
    pub fn leaf() -> RootedTree {
        RootedTree(Arc::new(TreeNode { children: Vec::new(), vertices: 1, height: 0 }))
    }

    pub fn node(children: Vec<RootedTree>) -> RootedTree {
        let vertices = 1u128.saturating_add(children.iter().fold(0u128, |a, c| a.saturating_add(c.0.vertices)));
        let height = children.iter().map(|c| c.0.height + 1).max().unwrap_or(0);
        RootedTree(Arc::new(TreeNode { children, vertices, height }))
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.0.children
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Number of vertices, counting shared subtrees once per occurrence
    /// (saturating).
    pub fn vertex_count(&self) -> u128 {
        self.0.vertices
    }

    pub fn height(&self) -> u32 {
        self.0.height
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Bottom-up fold; `f` receives the folded values of the children and
    /// is called once per distinct shared node.
    pub fn fold_shared<T: Clone>(&self, f: &mut impl FnMut(&[T]) -> Result<T>) -> Result<T> {
        let mut memo = HashMap::new();
        self.fold_rec(f, &mut memo)
    }

    fn fold_rec<T: Clone>(&self, f: &mut impl FnMut(&[T]) -> Result<T>, memo: &mut HashMap<usize, T>) -> Result<T> {
        if let Some(v) = memo.get(&self.key()) {
            return Ok(v.clone());
        }
        let kids = self.children().iter().map(|c| c.fold_rec(f, memo)).collect::<Result<Vec<T>>>()?;
        let v = f(&kids)?;
        memo.insert(self.key(), v.clone());
        Ok(v)
    }

    /// The common number of children of all internal vertices, if there is one.
    pub fn uniform_arity(&self) -> Option<usize> {
        if self.is_leaf() {
            return None;
        }
        let mut arity = None;
        let ok = self
            .fold_shared(&mut |kids: &[bool]| {
                if kids.is_empty() {
                    return Ok(true);
                }
                let same = *arity.get_or_insert(kids.len()) == kids.len();
                Ok(same && kids.iter().all(|&k| k))
            })
            .unwrap_or(false);
        if ok {
            arity
        } else {
            None
        }
    }

    /// `(root degree, maximum degree of any other vertex)` in the tree.
    pub fn degrees(&self) -> (usize, usize) {
        let mut below = |kids: &[usize]| Ok(kids.iter().copied().fold(kids.len() + 1, usize::max));
        let rest = self.children().iter().map(|c| c.fold_shared(&mut below).unwrap_or(0)).max().unwrap_or(0);
        (self.children().len(), rest)
    }

    /// Root degree at most `Δ - 1` and every other vertex of degree at most `Δ`.
    pub fn respects_max_degree(&self, delta: usize) -> bool {
        let (root, rest) = self.degrees();
        root < delta && rest <= delta
    }

    /// Root `root` of a tree graph.
    pub fn from_graph(g: &Graph, root: usize) -> Result<RootedTree> {
        if !g.is_tree() {
            return Err(Error::Argument("not a tree".into()));
        }
        fn build(g: &Graph, v: usize, parent: Option<usize>) -> RootedTree {
            RootedTree::node(g.neighbours(v).filter(|&u| Some(u) != parent).map(|u| build(g, u, Some(v))).collect())
        }
        Ok(build(g, root, None))
    }

    /// The tree as a graph with the root as vertex 0, in preorder.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.vertex_count() > MAX_IND_VERTICES as u128 {
            return Err(Error::TooLarge(format!("{} vertices", self.vertex_count())));
        }
        let mut g = Graph::empty(self.vertex_count() as usize)?;
        let mut next = 1;
        let mut stack = vec![(self.clone(), 0usize)];
        while let Some((t, id)) = stack.pop() {
            for c in t.children() {
                g.add_edge(id, next)?;
                stack.push((c.clone(), next));
                next += 1;
            }
        }
        Ok(g)
    }

    /// Regular tree: every internal vertex has `d` children, leaves at depth `depth`.
    pub fn regular(d: usize, depth: u32) -> RootedTree {
        let mut t = RootedTree::leaf();
        for _ in 0..depth {
            t = RootedTree::node(vec![t; d]);
        }
        t
    }
}

/// Tree in which vertices at even depth have `d1` internal children and
/// vertices at odd depth have `d2` internal children plus `d1 - d2` leaves,
/// down to `depth` levels of internal vertices. Every internal vertex thus
/// has exactly `d1` children and degree `d1 + 1`; the root has degree `d1`.
pub fn alternating_shape(d1: usize, d2: usize, depth: u32) -> Result<RootedTree> {
    if d1 == 0 || d2 == 0 || d2 > d1 {
        return Err(Error::Argument(format!("need 1 <= d2 <= d1, got ({d1}, {d2})")));
    }
    let leaf = RootedTree::leaf();
    let mut t = leaf.clone();
    for level in (0..depth).rev() {
        let internal = if level % 2 == 0 { d1 } else { d2 };
        let mut kids = vec![t.clone(); internal];
        kids.extend(std::iter::repeat_n(leaf.clone(), d1 - internal));
        t = RootedTree::node(kids);
    }
    Ok(t)
}

/// The leaf-joined tree as a series-parallel expression between the root and
/// the vertex joined to every leaf: a leaf becomes an edge, an internal
/// vertex the parallel composition of `Series(Edge, child)` over its children.
pub fn leafjoined_expr(shape: &RootedTree) -> SpExpr {
    let edge = SpExpr::edge();
    shape
        .fold_shared(&mut |kids: &[SpExpr]| {
            if kids.is_empty() {
                return Ok(edge.clone());
            }
            let mut acc: Option<SpExpr> = None;
            let mut i = 0;
            while i < kids.len() {
                let mut run = 1;
                while i + run < kids.len() && kids[i + run].ptr_eq(&kids[i]) {
                    run += 1;
                }
                let branch = SpExpr::parallel_power(&SpExpr::series(&edge, &kids[i]), run as u64)?;
                acc = Some(match acc {
                    None => branch,
                    Some(a) => SpExpr::parallel(&a, &branch),
                });
                i += run;
            }
            Ok(acc.expect("internal vertex has children"))
        })
        .expect("building expressions does not fail")
}

/// `R̃(G; q) = (q - 1)/(q - 2) · R(G; q)`.
pub fn modified_ratio(g: &SpExpr, q: Cx) -> Result<Cx> {
    if q == Cx::new(1.0, 0.0) || q == Cx::new(2.0, 0.0) {
        return Err(Error::Domain("q must avoid 1 and 2".into()));
    }
    match ratio_eval(g, q, EvalPath::Auto)? {
        Sphere::Finite(r) => Ok((q - 1.0) / (q - 2.0) * r),
        Sphere::Infinity => Err(Error::Pole("Z^dif vanishes".into())),
    }
}

/// `|R̃(T̂; q) - r|` where `r` is the root value of the `F_{λ(q,d),d}`
/// recursion started from `0` at the leaves. The shape needs all internal
/// vertices to have the same number `d` of children.
pub fn ratio_bridge_check(shape: &RootedTree, q: Cx) -> Result<f64> {
    let g = leafjoined_expr(shape);
    let lhs = modified_ratio(&g, q)?;
    if shape.is_leaf() {
        return Ok(lhs.norm());
    }
    let d = shape
        .uniform_arity()
        .ok_or_else(|| Error::Argument("internal vertices must all have the same number of children".into()))?;
    let lambda = lambda_q_d(q, d as u32)?;
    let rhs = shape.fold_shared(&mut |kids: &[Cx]| if kids.is_empty() { Ok(Cx::new(0.0, 0.0)) } else { f_map(lambda, kids) })?;
    Ok((lhs - rhs).norm())
}
