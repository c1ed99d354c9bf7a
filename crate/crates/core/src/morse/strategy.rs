//! Pivot rules for growing matching trees.
//!
//! A strategy splits the vertex set into an ordered list of blocks, each
//! scanned along its own family of parallel lines. At a node, the active
//! block is the first one that still has unprescribed vertices. The
//! tentative pivot is the unprescribed vertex of the active block with the
//! smallest `(line, position)` key, except that a free vertex (no
//! unprescribed neighbour) on the following line is preferred when one
//! exists. When the pivot has two or more unprescribed neighbours, the tree
//! splits on its East neighbour.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FamilySpec, GridGraph};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Slope -1 diagonals left to right, each from its top end.
    DiagLex,
    /// Triangle or trapezoid blocks for the parallelogram of width `K`.
    Block(u32),
    /// Lines `b*x + y = const`, each from its top end; the quadrangle rule.
    SlopeLex(i64, i64),
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::DiagLex => f.write_str("diag-lex"),
            StrategyKind::Block(k) => write!(f, "block({k})"),
            StrategyKind::SlopeLex(a, b) => write!(f, "slope-lex({a},{b})"),
        }
    }
}

/// A strategy bound to one graph.
#[derive(Clone, Debug)]
pub struct PivotStrategy {
    kind: StrategyKind,
    /// `(block, line, position)` per vertex; lexicographic order of the
    /// triple is the scan order.
    keys: Vec<(usize, i64, i64)>,
}

/// The strategy's answer for a node with unprescribed set `V'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotChoice {
    Pivot(usize),
    NoVertexLeft,
}

/// Binds a pivot rule to `g`.
///
/// `Block(K)` requires a parallelogram of width `K`; for `K ≡ 1 (mod 3)` it
/// coincides with `DiagLex`.
pub fn make_strategy(kind: StrategyKind, g: &GridGraph) -> Result<PivotStrategy> {
    let keys = match kind {
        StrategyKind::DiagLex => g.points().iter().map(|p| (0, p.x + p.y, p.x)).collect(),
        StrategyKind::SlopeLex(_, b) => g.points().iter().map(|p| (0, b * p.x + p.y, p.x)).collect(),
        StrategyKind::Block(k) => {
            match g.family() {
                Some(FamilySpec::Parallelogram { k: gk, .. }) if gk == k => {}
                _ => {
                    return Err(Error::StrategyMismatch {
                        strategy: kind.to_string(),
                        reason: format!("needs a parallelogram of width {k}"),
                    })
                }
            }
            g.points()
                .iter()
                .map(|p| {
                    let block = parallelogram_block(k as i64, p.x, p.y);
                    if block % 2 == 1 {
                        (block, p.x + p.y, p.x)
                    } else {
                        (block, p.x - p.y, p.x)
                    }
                })
                .collect()
        }
    };
    Ok(PivotStrategy { kind, keys })
}

/// 1-based index of the block `T_i` containing `(x, y)` in the parallelogram
/// of width `k`.
///
/// For `k ≡ 2 (mod 3)` the blocks are triangles of period `2k` along the
/// slope -1 diagonals:
/// `T_{2l+1} = {2lk <= x+y, x-y < 2lk+1}`,
/// `T_{2l}   = {2(l-1)k+1 <= x-y, x+y < 2lk}`.
/// For `k ≡ 0 (mod 3)` they are trapezoids of period `2k+2`:
/// `T_{2l+1} = {2l(k+1) <= x+y, x-y < 2l(k+1)+2}`,
/// `T_{2l}   = {2(l-1)(k+1)+2 <= x-y, x+y < 2l(k+1)}`.
/// For `k ≡ 1 (mod 3)` there is a single block.
pub fn parallelogram_block(k: i64, x: i64, y: i64) -> usize {
    let (s, d) = (x + y, x - y);
    let (period, odd_width, even_offset) = match k % 3 {
        2 => (2 * k, 1, 1),
        0 => (2 * k + 2, 2, 2),
        _ => return 1,
    };
    let mut l = 0i64;
    loop {
        if l * period <= s && d < l * period + odd_width {
            return (2 * l + 1) as usize;
        }
        if l * period + even_offset <= d && s < (l + 1) * period {
            return (2 * l + 2) as usize;
        }
        l += 1;
        assert!(l * period <= s + period, "({x},{y}) is in no block of P({k},.)");
    }
}

impl PivotStrategy {
    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    /// Scan key of a vertex: `(block, line, position)`.
    pub fn key(&self, v: usize) -> (usize, i64, i64) {
        self.keys[v]
    }

    /// Picks the pivot for a node whose unprescribed vertices are `free`.
    pub fn choose_pivot(&self, g: &GridGraph, free: &VertexSet) -> PivotChoice {
        let Some(tentative) = free.iter().min_by_key(|&v| self.keys[v]) else {
            return PivotChoice::NoVertexLeft;
        };
        let (block, line, _) = self.keys[tentative];
        let override_pick = free
            .iter()
            .filter(|&v| {
                let (b, l, _) = self.keys[v];
                b == block && l == line + 1 && !g.neighbor_set(v).intersects(free)
            })
            .min_by_key(|&v| self.keys[v]);
        PivotChoice::Pivot(override_pick.unwrap_or(tentative))
    }

    /// Splitting vertex for a pivot with at least two unprescribed
    /// neighbours: its East neighbour when that one is unprescribed,
    /// otherwise the smallest unprescribed neighbour.
    pub fn split_vertex(&self, g: &GridGraph, pivot: usize, free: &VertexSet) -> usize {
        let east = g.vertex_at(g.point(pivot).east());
        match east {
            Some(e) if free.contains(e) && g.neighbor_set(pivot).contains(e) => e,
            _ => g
                .neighbors(pivot)
                .iter()
                .copied()
                .find(|&w| free.contains(w))
                .expect("split requested for a pivot with unprescribed neighbours"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_graph, LatticePoint};

    #[test]
    fn diag_lex_root_pivot_of_star() {
        let g = build_graph(FamilySpec::TiltedRect { m: 3, n: 3 }).unwrap();
        let s = make_strategy(StrategyKind::DiagLex, &g).unwrap();
        let p = s.choose_pivot(&g, &g.vertex_set());
        assert_eq!(p, PivotChoice::Pivot(g.vertex_at(LatticePoint::new(0, 0)).unwrap()));
        assert_eq!(s.choose_pivot(&g, &VertexSet::empty(g.len())), PivotChoice::NoVertexLeft);
    }

    #[test]
    fn free_vertex_on_next_diagonal_wins() {
        // path (0,0)-(1,0)-(2,0) plus (0,1) detached: with (1,0) prescribed,
        // (0,1) on diagonal 1 is free and beats the tentative (0,0).
        let pts = [LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(0, 1), LatticePoint::new(2, 0)];
        let (g, _) = GridGraph::custom(&pts, &[(0, 1), (1, 3)]).unwrap();
        let s = make_strategy(StrategyKind::DiagLex, &g).unwrap();
        let mut free = g.vertex_set();
        free.remove(g.vertex_at(LatticePoint::new(1, 0)).unwrap());
        let top = g.vertex_at(LatticePoint::new(0, 1)).unwrap();
        assert_eq!(s.choose_pivot(&g, &free), PivotChoice::Pivot(top));
        let mut free = g.vertex_set();
        free.remove(0);
        // tentative is (0,1) on diagonal 1; (2,0) on diagonal 2 is adjacent to (1,0), not free
        assert_eq!(s.choose_pivot(&g, &free), PivotChoice::Pivot(top));
    }

    #[test]
    fn first_split_of_r86_is_east_of_first_pivot() {
        let g = build_graph(FamilySpec::TiltedRect { m: 8, n: 6 }).unwrap();
        let s = make_strategy(StrategyKind::DiagLex, &g).unwrap();
        let free = g.vertex_set();
        let PivotChoice::Pivot(p) = s.choose_pivot(&g, &free) else { panic!() };
        assert_eq!(g.point(p), LatticePoint::new(0, 0));
        let v = s.split_vertex(&g, p, &free);
        assert_eq!(g.point(v), LatticePoint::new(1, 0));
    }

    #[test]
    fn blocks_partition_the_strip() {
        for k in [2i64, 3, 5, 6, 8, 9] {
            let period = if k % 3 == 2 { 2 * k } else { 2 * k + 2 };
            for y in 0..k {
                let mut last = 0;
                for s in 0..3 * period {
                    let b = parallelogram_block(k, s - y, y);
                    assert!(b >= last, "blocks must be monotone along each row");
                    last = b;
                }
            }
            // T1 is a triangle (k ≡ 2) or trapezoid (k ≡ 0) with its short side at the bottom
            let bottom = (0..period).filter(|&s| parallelogram_block(k, s, 0) == 1).count() as i64;
            let top = (0..period).filter(|&s| parallelogram_block(k, s - (k - 1), k - 1) == 1).count() as i64;
            assert_eq!(bottom, if k % 3 == 2 { 1 } else { 2 });
            assert_eq!(top, bottom + 2 * (k - 1));
        }
    }

    #[test]
    fn block_requires_matching_parallelogram() {
        let g = build_graph(FamilySpec::TiltedRect { m: 5, n: 5 }).unwrap();
        assert!(make_strategy(StrategyKind::Block(5), &g).is_err());
        let p = build_graph(FamilySpec::Parallelogram { k: 4, n: 5 }).unwrap();
        assert!(make_strategy(StrategyKind::Block(5), &p).is_err());
        assert!(make_strategy(StrategyKind::Block(4), &p).is_ok());
    }
}
