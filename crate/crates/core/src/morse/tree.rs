//! Matching trees over independence complexes.
//!
//! Every node stands for the interval `Σ(A, B)` of independent sets `I` with
//! `A ⊆ I` and `I ∩ B = ∅`. Growth stops at singleton leaves (`A ∪ B = V`)
//! and at empty leaves below a free pivot.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::caps::Caps;
use crate::count::is_independent;
use crate::error::{Error, Result};
use crate::lattice::GridGraph;
use crate::morse::strategy::{PivotChoice, PivotStrategy};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Pairs `I` with `I Δ {pivot}` whenever `I` misses `N(pivot)`.
    MatchingSite { pivot: usize },
    /// Branches on `vertex`, a neighbour of the tentative `pivot`.
    SplittingSite { pivot: usize, vertex: usize },
    /// Empty interval; `a` and `b` repeat the parent's sets.
    LeafEmpty,
    /// The interval `{A}`; `A` is a critical cell.
    LeafSingleton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub a: VertexSet,
    pub b: VertexSet,
    pub kind: NodeKind,
    /// Arena indices. A splitting site lists `[excluded, included]`.
    pub children: Vec<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub matching_sites: usize,
    pub splitting_sites: usize,
    pub empty_leaves: usize,
    pub singleton_leaves: usize,
    pub depth: usize,
}

/// Arena of nodes in preorder, root at index 0, excluded branch first.
#[derive(Clone, Debug)]
pub struct MatchingTree {
    nodes: Vec<TreeNode>,
    stats: TreeStats,
}

/// Outcome of routing an independent set through the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Matched { partner: VertexSet, site: usize },
    Critical { leaf: usize },
}

struct Grower<'a> {
    g: &'a GridGraph,
    strategy: &'a PivotStrategy,
    cap: usize,
    nodes: Vec<TreeNode>,
    stats: TreeStats,
}

impl Grower<'_> {
    fn push(&mut self, a: VertexSet, b: VertexSet, kind: NodeKind, depth: usize) -> Result<usize> {
        if self.nodes.len() >= self.cap {
            return Err(Error::NodeGuard {
                cap: self.cap,
                strategy: self.strategy.kind().to_string(),
                graph: self.g.family().map_or_else(|| format!("custom({} vertices)", self.g.len()), |f| f.to_string()),
            });
        }
        match kind {
            NodeKind::MatchingSite { .. } => self.stats.matching_sites += 1,
            NodeKind::SplittingSite { .. } => self.stats.splitting_sites += 1,
            NodeKind::LeafEmpty => self.stats.empty_leaves += 1,
            NodeKind::LeafSingleton => self.stats.singleton_leaves += 1,
        }
        self.stats.depth = self.stats.depth.max(depth);
        self.nodes.push(TreeNode { a, b, kind, children: Vec::new() });
        Ok(self.nodes.len() - 1)
    }

    fn grow(&mut self, a: VertexSet, b: VertexSet, depth: usize) -> Result<usize> {
        let g = self.g;
        let free = a.union(&b).complement();
        let pivot = match self.strategy.choose_pivot(g, &free) {
            PivotChoice::NoVertexLeft => return self.push(a, b, NodeKind::LeafSingleton, depth),
            PivotChoice::Pivot(p) => p,
        };
        let mut free_nbrs = g.neighbors(pivot).iter().copied().filter(|&w| free.contains(w));
        let first = free_nbrs.next();
        let second = free_nbrs.next();
        match (first, second) {
            (None, _) => {
                let id = self.push(a.clone(), b.clone(), NodeKind::MatchingSite { pivot }, depth)?;
                let leaf = self.push(a, b, NodeKind::LeafEmpty, depth + 1)?;
                self.nodes[id].children.push(leaf);
                Ok(id)
            }
            (Some(v), None) => {
                let id = self.push(a.clone(), b.clone(), NodeKind::MatchingSite { pivot }, depth)?;
                let (ca, cb) = include(g, &a, &b, v);
                let child = self.grow(ca, cb, depth + 1)?;
                self.nodes[id].children.push(child);
                Ok(id)
            }
            (Some(_), Some(_)) => {
                let vertex = self.strategy.split_vertex(g, pivot, &free);
                let id = self.push(a.clone(), b.clone(), NodeKind::SplittingSite { pivot, vertex }, depth)?;
                let mut lb = b.clone();
                lb.insert(vertex);
                let left = self.grow(a.clone(), lb, depth + 1)?;
                let (ra, rb) = include(g, &a, &b, vertex);
                let right = self.grow(ra, rb, depth + 1)?;
                self.nodes[id].children = vec![left, right];
                Ok(id)
            }
        }
    }
}

fn include(g: &GridGraph, a: &VertexSet, b: &VertexSet, v: usize) -> (VertexSet, VertexSet) {
    let mut ca = a.clone();
    ca.insert(v);
    (ca, b.union(g.neighbor_set(v)))
}

/// Grows the full matching tree of `g` from the root `Σ(∅, ∅)`.
pub fn grow_tree(g: &GridGraph, strategy: &PivotStrategy, caps: &Caps) -> Result<MatchingTree> {
    let n = g.len();
    let mut grower = Grower { g, strategy, cap: caps.max_nodes, nodes: Vec::new(), stats: TreeStats::default() };
    grower.grow(VertexSet::empty(n), VertexSet::empty(n), 0)?;
    let mut stats = grower.stats;
    stats.nodes = grower.nodes.len();
    Ok(MatchingTree { nodes: grower.nodes, stats })
}

impl MatchingTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn stats(&self) -> TreeStats {
        self.stats
    }

    /// `A`-sets of the singleton leaves in tree order.
    pub fn critical_cells(&self) -> Vec<VertexSet> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::LeafSingleton)
            .map(|n| n.a.clone())
            .collect()
    }

    /// `Σ (-1)^{|A|}` over the singleton leaves.
    pub fn morse_euler_sum(&self) -> BigInt {
        let mut s = BigInt::from(0);
        for n in self.nodes.iter().filter(|n| n.kind == NodeKind::LeafSingleton) {
            if n.a.len() % 2 == 0 {
                s += 1;
            } else {
                s -= 1;
            }
        }
        s
    }

    /// Routes the independent set `i` from the root to the node deciding it.
    pub fn classify(&self, g: &GridGraph, i: &VertexSet) -> Result<Classification> {
        if !is_independent(g, i) {
            return Err(Error::NotIndependent(i.to_string()));
        }
        let mut id = 0;
        loop {
            let node = &self.nodes[id];
            match node.kind {
                NodeKind::MatchingSite { pivot } => {
                    if !i.intersects(g.neighbor_set(pivot)) {
                        return Ok(Classification::Matched { partner: i.toggled(pivot), site: id });
                    }
                    id = node.children[0];
                }
                NodeKind::SplittingSite { vertex, .. } => {
                    id = node.children[usize::from(i.contains(vertex))];
                }
                NodeKind::LeafSingleton if node.a == *i => return Ok(Classification::Critical { leaf: id }),
                NodeKind::LeafSingleton | NodeKind::LeafEmpty => {
                    return Err(Error::NotIndependent(i.to_string()));
                }
            }
        }
    }

    /// Structural checks on every node: disjointness, `N(A) ⊆ B`, child
    /// sets and arities that follow from the node kind.
    pub fn check_invariants(&self, g: &GridGraph) -> std::result::Result<(), String> {
        for (id, node) in self.nodes.iter().enumerate() {
            if node.kind == NodeKind::LeafEmpty {
                continue;
            }
            if node.a.intersects(&node.b) {
                return Err(format!("node {id}: A and B intersect"));
            }
            if !g.neighborhood(&node.a).is_subset(&node.b) {
                return Err(format!("node {id}: N(A) not inside B"));
            }
            let free = node.a.union(&node.b).complement();
            let expect = |cid: usize, a: &VertexSet, b: &VertexSet| -> std::result::Result<(), String> {
                let c = &self.nodes[cid];
                if c.a != *a || c.b != *b {
                    return Err(format!("node {id}: child {cid} has unexpected sets"));
                }
                Ok(())
            };
            match node.kind {
                NodeKind::MatchingSite { pivot } => {
                    if !free.contains(pivot) || node.children.len() != 1 {
                        return Err(format!("node {id}: malformed matching site"));
                    }
                    let nbrs: Vec<usize> = g.neighbors(pivot).iter().copied().filter(|&w| free.contains(w)).collect();
                    let child = node.children[0];
                    match nbrs.as_slice() {
                        [] if self.nodes[child].kind == NodeKind::LeafEmpty => {}
                        [v] => {
                            let (ca, cb) = include(g, &node.a, &node.b, *v);
                            expect(child, &ca, &cb)?;
                        }
                        _ => return Err(format!("node {id}: matching pivot has {} free neighbours", nbrs.len())),
                    }
                }
                NodeKind::SplittingSite { pivot, vertex } => {
                    if node.children.len() != 2 || !free.contains(vertex) || !g.neighbor_set(pivot).contains(vertex) {
                        return Err(format!("node {id}: malformed splitting site"));
                    }
                    let mut lb = node.b.clone();
                    lb.insert(vertex);
                    expect(node.children[0], &node.a, &lb)?;
                    let (ra, rb) = include(g, &node.a, &node.b, vertex);
                    expect(node.children[1], &ra, &rb)?;
                }
                NodeKind::LeafSingleton => {
                    if !free.is_empty() || !node.children.is_empty() {
                        return Err(format!("node {id}: singleton leaf with free vertices"));
                    }
                }
                NodeKind::LeafEmpty => unreachable!(),
            }
        }
        Ok(())
    }

    /// One line per node, indented by depth: `M p=<id>`, `S v=<id>`,
    /// `leaf empty` or `leaf`, followed by the node's `A=` and `B=` sets
    /// (omitted for empty leaves).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let pad = "  ".repeat(depth);
            let _ = match node.kind {
                NodeKind::MatchingSite { pivot } => writeln!(out, "{pad}M p={pivot} A={} B={}", node.a, node.b),
                NodeKind::SplittingSite { vertex, .. } => writeln!(out, "{pad}S v={vertex} A={} B={}", node.a, node.b),
                NodeKind::LeafEmpty => writeln!(out, "{pad}leaf empty"),
                NodeKind::LeafSingleton => writeln!(out, "{pad}leaf A={} B={}", node.a, node.b),
            };
            for &c in node.children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_graph, FamilySpec, LatticePoint};
    use crate::morse::strategy::{make_strategy, StrategyKind};

    fn tree(spec: FamilySpec, kind: StrategyKind) -> (GridGraph, MatchingTree) {
        let g = build_graph(spec).unwrap();
        let s = make_strategy(kind, &g).unwrap();
        let t = grow_tree(&g, &s, &Caps::default()).unwrap();
        t.check_invariants(&g).unwrap();
        (g, t)
    }

    #[test]
    fn star_has_center_as_only_cell() {
        let (g, t) = tree(FamilySpec::TiltedRect { m: 3, n: 3 }, StrategyKind::DiagLex);
        assert_eq!(t.stats().matching_sites, 1);
        assert_eq!(t.stats().splitting_sites, 0);
        let center = g.vertex_at(LatticePoint::new(1, 0)).unwrap();
        assert_eq!(t.critical_cells(), vec![VertexSet::from_ids(5, [center])]);
        assert_eq!(t.morse_euler_sum(), BigInt::from(-1));
        assert_eq!(center, 2);
        assert_eq!(t.dump(), "M p=0 A={} B={}\n  leaf A={2} B={0,1,3,4}\n");
    }

    #[test]
    fn small_rectangles() {
        let (_, t) = tree(FamilySpec::TiltedRect { m: 4, n: 5 }, StrategyKind::DiagLex);
        assert!(t.critical_cells().is_empty());
        let (_, t) = tree(FamilySpec::TiltedRect { m: 8, n: 6 }, StrategyKind::DiagLex);
        let cells = t.critical_cells();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].len(), 6);
        assert_eq!(t.morse_euler_sum(), BigInt::from(1));
    }

    #[test]
    fn cylinder_6_5_has_four_cells() {
        let (_, t) = tree(FamilySpec::CylindricRect { m: 6, n: 5 }, StrategyKind::DiagLex);
        let cells = t.critical_cells();
        assert_eq!(cells.len(), 4);
        assert!(cells.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn classify_is_an_involution_off_critical_cells() {
        let (g, t) = tree(FamilySpec::TiltedRect { m: 3, n: 3 }, StrategyKind::DiagLex);
        let empty = VertexSet::empty(g.len());
        let Classification::Matched { partner, site } = t.classify(&g, &empty).unwrap() else { panic!() };
        assert_eq!(partner, VertexSet::from_ids(g.len(), [0]));
        assert_eq!(t.classify(&g, &partner).unwrap(), Classification::Matched { partner: empty, site });
        let center = g.vertex_at(LatticePoint::new(1, 0)).unwrap();
        assert!(t.classify(&g, &VertexSet::from_ids(g.len(), [0, center])).is_err());
        let center = VertexSet::from_ids(g.len(), [center]);
        assert!(matches!(t.classify(&g, &center).unwrap(), Classification::Critical { .. }));
        let p = |x, y| g.vertex_at(LatticePoint::new(x, y)).unwrap();
        let i = VertexSet::from_ids(g.len(), [p(0, 0), p(1, 1)]);
        let Classification::Matched { partner, .. } = t.classify(&g, &i).unwrap() else { panic!() };
        assert_eq!(partner, VertexSet::from_ids(g.len(), [p(1, 1)]));
    }

    #[test]
    fn diag_lex_splits_only_between_north_and_east() {
        for (m, n) in [(5, 7), (8, 6), (9, 9)] {
            let (g, t) = tree(FamilySpec::TiltedRect { m, n }, StrategyKind::DiagLex);
            for node in t.nodes() {
                if let NodeKind::SplittingSite { pivot, vertex } = node.kind {
                    let free = node.a.union(&node.b).complement();
                    let mut nbrs: Vec<_> =
                        g.neighbors(pivot).iter().filter(|&&w| free.contains(w)).map(|&w| g.point(w)).collect();
                    nbrs.sort();
                    let p = g.point(pivot);
                    assert_eq!(nbrs, vec![LatticePoint::new(p.x, p.y + 1), p.east()]);
                    assert_eq!(g.point(vertex), p.east());
                }
            }
        }
    }

    #[test]
    fn node_guard_trips() {
        let g = build_graph(FamilySpec::TiltedRect { m: 8, n: 8 }).unwrap();
        let s = make_strategy(StrategyKind::DiagLex, &g).unwrap();
        let caps = Caps { max_nodes: 5, ..Caps::default() };
        assert!(matches!(grow_tree(&g, &s, &caps), Err(Error::NodeGuard { cap: 5, .. })));
    }
}
