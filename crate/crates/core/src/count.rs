//! Exact enumeration of independent sets.
//!
//! Two independent counting routes are provided: exhaustive search
//! ([`partition_function_brute`]) and a dynamic program over the frontier of
//! a vertex order ([`partition_function_frontier`]). The frontier program is
//! generic over the weight ring, so the same sweep can produce the full
//! partition polynomial or its value at a single activity.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Num, One, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::GridGraph;
use crate::vertex_set::VertexSet;

/// `Z_G(u) = sum_k c_k u^k`, where `c_k` counts independent sets of size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPolynomial {
    coeffs: Vec<BigUint>,
}

impl PartitionPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        PartitionPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Size of the largest independent set.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at an activity in any ring.
    pub fn evaluate<T: Clone + Num>(&self, u: &T, embed: impl Fn(&BigUint) -> T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * u.clone() + embed(c))
    }

    /// Exact value at an integer activity.
    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.evaluate(u, |c| BigInt::from(c.clone()))
    }

    /// `Z_G(-1)`.
    pub fn alternating(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }

    /// Total number of independent sets, `Z_G(1)`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &PartitionPolynomial) -> PartitionPolynomial {
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PartitionPolynomial::from_coeffs(out)
    }
}

/// Report form: `poly c0 c1 ...`.
impl fmt::Display for PartitionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("poly")?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// True iff no edge of `g` has both ends in `s`.
pub fn is_independent(g: &GridGraph, s: &VertexSet) -> bool {
    s.iter().all(|v| v < g.len() && !g.neighbor_set(v).intersects(s))
}

/// Exhaustive enumeration with adjacency pruning.
pub fn partition_function_brute(g: &GridGraph, caps: &Caps) -> Result<PartitionPolynomial> {
    let n = g.len();
    if n > caps.brute_vertices {
        return Err(Error::BruteForceCap { vertices: n, cap: caps.brute_vertices });
    }
    // neighbours as u64 masks; n <= 64 is guaranteed by any sane cap
    if n > 64 {
        return Err(Error::BruteForceCap { vertices: n, cap: 64 });
    }
    let masks: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let mut counts = vec![0u64; n + 1];

    fn go(v: usize, blocked: u64, size: usize, masks: &[u64], counts: &mut [u64]) {
        if v == masks.len() {
            counts[size] += 1;
            return;
        }
        go(v + 1, blocked, size, masks, counts);
        if blocked >> v & 1 == 0 {
            go(v + 1, blocked | masks[v], size + 1, masks, counts);
        }
    }
    go(0, 0, 0, &masks, &mut counts);
    Ok(PartitionPolynomial::from_coeffs(counts.into_iter().map(BigUint::from).collect()))
}

/// Largest frontier encountered when sweeping `g` along `order`.
///
/// The frontier after step `t` holds the processed vertices that still have
/// an unprocessed neighbour.
pub fn frontier_width(g: &GridGraph, order: &[usize]) -> Result<usize> {
    let pos = order_positions(g, order)?;
    let last_use: Vec<usize> = (0..g.len())
        .map(|v| g.neighbors(v).iter().map(|&w| pos[w]).max().unwrap_or(0))
        .collect();
    let mut width = 0;
    let mut live = 0usize;
    let mut expiring = vec![0usize; g.len() + 1];
    for (t, &v) in order.iter().enumerate() {
        if last_use[v] > t {
            live += 1;
            expiring[last_use[v]] += 1;
        }
        width = width.max(live);
        live -= expiring[t];
    }
    Ok(width)
}

fn order_positions(g: &GridGraph, order: &[usize]) -> Result<Vec<usize>> {
    let n = g.len();
    if order.len() != n {
        return Err(Error::BadOrder);
    }
    let mut pos = vec![usize::MAX; n];
    for (t, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::BadOrder);
        }
        pos[v] = t;
    }
    Ok(pos)
}

/// Frontier sweep over an arbitrary weight type.
///
/// `include` maps the weight of a configuration to the weight of the same
/// configuration with one more occupied vertex.
pub fn frontier_sweep<W: Clone>(
    g: &GridGraph,
    order: &[usize],
    caps: &Caps,
    one: W,
    add: impl Fn(&mut W, &W),
    include: impl Fn(&W) -> W,
) -> Result<W> {
    let width = frontier_width(g, order)?;
    if width > caps.frontier_width || width > 63 {
        return Err(Error::FrontierWidth { width, cap: caps.frontier_width.min(63) });
    }
    let pos = order_positions(g, order)?;
    let last_use: Vec<usize> = (0..g.len())
        .map(|v| g.neighbors(v).iter().map(|&w| pos[w]).max().unwrap_or(0))
        .collect();

    // frontier[i] is the vertex stored in bit i of a state
    let mut frontier: Vec<usize> = Vec::new();
    let mut states: HashMap<u64, W> = HashMap::from([(0u64, one)]);
    // weight of completed configurations
    for (t, &v) in order.iter().enumerate() {
        let conflict: u64 = frontier
            .iter()
            .enumerate()
            .filter(|(_, &f)| g.neighbor_set(v).contains(f))
            .fold(0, |m, (i, _)| m | 1 << i);
        let keep_v = last_use[v] > t;
        let slot = frontier.len();
        let mut next: HashMap<u64, W> = HashMap::with_capacity(states.len() * 2);
        for (state, w) in &states {
            merge(&mut next, *state, w, &add);
            if state & conflict == 0 {
                let s = if keep_v { state | 1 << slot } else { *state };
                merge(&mut next, s, &include(w), &add);
            }
        }
        if keep_v {
            frontier.push(v);
        }
        // retire frontier vertices whose neighbours are all processed
        let mut i = 0;
        while i < frontier.len() {
            if last_use[frontier[i]] <= t {
                frontier.remove(i);
                let low = (1u64 << i) - 1;
                let mut compact: HashMap<u64, W> = HashMap::with_capacity(next.len());
                for (s, w) in next.drain() {
                    let s2 = (s & low) | ((s >> (i + 1)) << i);
                    merge(&mut compact, s2, &w, &add);
                }
                next = compact;
            } else {
                i += 1;
            }
        }
        states = next;
    }
    debug_assert!(frontier.is_empty());
    Ok(states.remove(&0).expect("sweep ends with an empty frontier"))
}

fn merge<W: Clone>(map: &mut HashMap<u64, W>, key: u64, w: &W, add: &impl Fn(&mut W, &W)) {
    match map.get_mut(&key) {
        Some(acc) => add(acc, w),
        None => {
            map.insert(key, w.clone());
        }
    }
}

/// The canonical order `0..n`, whose frontier is roughly one diagonal.
pub fn canonical_order(g: &GridGraph) -> Vec<usize> {
    (0..g.len()).collect()
}

/// Partition polynomial by frontier dynamic programming along `order`.
pub fn partition_function_frontier(g: &GridGraph, order: &[usize], caps: &Caps) -> Result<PartitionPolynomial> {
    let coeffs = frontier_sweep(
        g,
        order,
        caps,
        vec![BigUint::one()],
        |acc: &mut Vec<BigUint>, w: &Vec<BigUint>| {
            if acc.len() < w.len() {
                acc.resize(w.len(), BigUint::zero());
            }
            for (a, b) in acc.iter_mut().zip(w) {
                *a += b;
            }
        },
        |w| {
            let mut s = Vec::with_capacity(w.len() + 1);
            s.push(BigUint::zero());
            s.extend(w.iter().cloned());
            s
        },
    )?;
    Ok(PartitionPolynomial::from_coeffs(coeffs))
}

/// `Z_G(u)` for a single activity `u` in any ring, by frontier sweep.
pub fn partition_at<T: Clone + Num>(g: &GridGraph, order: &[usize], u: T, caps: &Caps) -> Result<T> {
    frontier_sweep(g, order, caps, T::one(), |acc, w| *acc = acc.clone() + w.clone(), |w| w.clone() * u.clone())
}

/// `Z_G(-1)`, the alternating number of independent sets (minus the reduced
/// Euler characteristic of the independence complex).
///
/// Uses the frontier sweep along the canonical order, falling back to
/// exhaustive search when the frontier is too wide.
pub fn alternating_number(g: &GridGraph, caps: &Caps) -> Result<BigInt> {
    match partition_at(g, &canonical_order(g), BigInt::from(-1), caps) {
        Ok(z) => Ok(z),
        Err(e @ Error::FrontierWidth { .. }) => match partition_function_brute(g, caps) {
            Ok(p) => Ok(p.alternating()),
            Err(_) => Err(e),
        },
        Err(e) => Err(e),
    }
}

/// Partition polynomial by whichever method fits the caps, frontier first.
pub fn partition_function(g: &GridGraph, caps: &Caps) -> Result<PartitionPolynomial> {
    match partition_function_frontier(g, &canonical_order(g), caps) {
        Err(e @ Error::FrontierWidth { .. }) => partition_function_brute(g, caps).map_err(|_| e),
        r => r,
    }
}

/// One fold: `removed` was deleted because `N(kept) ⊆ N(removed)`.
/// Ids refer to the input graph of [`fold_reduce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldStep {
    pub kept: usize,
    pub removed: usize,
}

#[derive(Clone, Debug)]
pub struct FoldResult {
    pub graph: GridGraph,
    pub steps: Vec<FoldStep>,
}

impl FoldResult {
    /// The graph after each step, starting from `original` itself.
    pub fn stages(&self, original: &GridGraph) -> Vec<GridGraph> {
        let mut removed = VertexSet::empty(original.len());
        let mut out = vec![original.clone()];
        for step in &self.steps {
            removed.insert(step.removed);
            out.push(original.delete_vertices(&removed).expect("ids from fold_reduce").0);
        }
        out
    }
}

/// Repeatedly deletes a vertex `w` whose neighbourhood contains that of some
/// other vertex `v`. Pairs are scanned in ascending `(v, w)` order and the
/// first one found is applied. Each deletion is a collapse of the
/// independence complex, so the alternating number is unchanged.
pub fn fold_reduce(g: &GridGraph) -> FoldResult {
    let mut current = g.clone();
    // current id -> original id
    let mut origin: Vec<usize> = (0..g.len()).collect();
    let mut steps = Vec::new();
    while let Some((v, w)) = first_fold(&current) {
        steps.push(FoldStep { kept: origin[v], removed: origin[w] });
        let (next, map) = current
            .delete_vertices(&VertexSet::from_ids(current.len(), [w]))
            .expect("w is a vertex of current");
        let mut new_origin = vec![0; next.len()];
        for (old, m) in map.iter().enumerate() {
            if let Some(new) = m {
                new_origin[*new] = origin[old];
            }
        }
        origin = new_origin;
        current = next;
    }
    FoldResult { graph: current, steps }
}

fn first_fold(g: &GridGraph) -> Option<(usize, usize)> {
    let n = g.len();
    (0..n).find_map(|v| {
        let nv = g.neighbor_set(v);
        (0..n).find(|&w| w != v && nv.is_subset(g.neighbor_set(w))).map(|w| (v, w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_graph, FamilySpec, LatticePoint};

    fn caps() -> Caps {
        Caps::default()
    }

    fn path(n: usize) -> GridGraph {
        let pts: Vec<_> = (0..n as i64).map(|x| LatticePoint::new(x, 0)).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        GridGraph::custom(&pts, &edges).unwrap().0
    }

    fn square() -> GridGraph {
        build_graph(FamilySpec::OrdinaryRect { k: 2, n: 2 }).unwrap()
    }

    fn coeffs(p: &PartitionPolynomial) -> Vec<u64> {
        p.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn independence_checks() {
        let g = path(2);
        assert!(is_independent(&g, &VertexSet::empty(2)));
        assert!(!is_independent(&g, &VertexSet::full(2)));
        let sq = square();
        let diag = VertexSet::from_ids(
            4,
            [sq.vertex_at(LatticePoint::new(0, 0)).unwrap(), sq.vertex_at(LatticePoint::new(1, 1)).unwrap()],
        );
        assert!(is_independent(&sq, &diag));
    }

    #[test]
    fn small_polynomials() {
        let one = path(1);
        assert_eq!(coeffs(&partition_function_brute(&one, &caps()).unwrap()), vec![1, 1]);
        assert_eq!(coeffs(&partition_function_frontier(&one, &[0], &caps()).unwrap()), vec![1, 1]);
        // all 16 subsets of the 4-cycle: 1 empty, 4 singletons, 2 diagonals
        let sq = square();
        assert_eq!(coeffs(&partition_function_brute(&sq, &caps()).unwrap()), vec![1, 4, 2]);
        assert_eq!(coeffs(&partition_function_frontier(&sq, &canonical_order(&sq), &caps()).unwrap()), vec![1, 4, 2]);
        assert_eq!(coeffs(&partition_function_brute(&path(3), &caps()).unwrap()), vec![1, 3, 1]);
        assert_eq!(partition_function_brute(&path(3), &caps()).unwrap().to_string(), "poly 1 3 1");
    }

    #[test]
    fn empty_graph_counts_one() {
        let g = GridGraph::empty();
        assert_eq!(coeffs(&partition_function_brute(&g, &caps()).unwrap()), vec![1]);
        assert_eq!(coeffs(&partition_function_frontier(&g, &[], &caps()).unwrap()), vec![1]);
        assert_eq!(alternating_number(&g, &caps()).unwrap(), BigInt::one());
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_number(&square(), &caps()).unwrap(), BigInt::from(-1));
        let swiss = build_graph(FamilySpec::TiltedRectSmooth { m: 5, n: 5 }).unwrap();
        assert_eq!(alternating_number(&swiss, &caps()).unwrap(), BigInt::one());
        for n in 1..=12 {
            let g = build_graph(FamilySpec::TiltedRect { m: 4, n }).unwrap();
            assert_eq!(alternating_number(&g, &caps()).unwrap(), BigInt::zero());
        }
        let g = build_graph(FamilySpec::TiltedRect { m: 8, n: 6 }).unwrap();
        let p = partition_function_frontier(&g, &canonical_order(&g), &caps()).unwrap();
        assert_eq!(p.alternating(), BigInt::one());
    }

    #[test]
    fn caps_are_enforced() {
        let g = build_graph(FamilySpec::TiltedRect { m: 8, n: 8 }).unwrap();
        let tight = Caps { brute_vertices: 10, frontier_width: 2, ..Caps::default() };
        assert!(matches!(partition_function_brute(&g, &tight), Err(Error::BruteForceCap { .. })));
        assert!(matches!(
            partition_function_frontier(&g, &canonical_order(&g), &tight),
            Err(Error::FrontierWidth { .. })
        ));
        assert!(matches!(alternating_number(&g, &tight), Err(Error::FrontierWidth { .. })));
        assert!(partition_function_frontier(&g, &[0, 1], &caps()).is_err());
    }

    #[test]
    fn frontier_matches_brute_on_test_families() {
        for m in 1..=7u32 {
            for n in 1..=7u32 {
                let mut specs = vec![
                    FamilySpec::TiltedRect { m, n },
                    FamilySpec::TiltedRectSmooth { m, n },
                    FamilySpec::Parallelogram { k: m.min(4), n },
                    FamilySpec::Quadrangle { m: 2 * m, n: 2 * n, a: 2, b: 2 },
                ];
                if m % 2 == 0 {
                    specs.push(FamilySpec::CylindricRect { m, n });
                }
                if n >= 2 && m * n <= 24 {
                    specs.push(FamilySpec::OrdinaryCylinder { k: m, n });
                }
                for spec in specs {
                    let g = build_graph(spec).unwrap();
                    if g.len() > 24 {
                        continue;
                    }
                    let b = partition_function_brute(&g, &caps()).unwrap();
                    let f = partition_function_frontier(&g, &canonical_order(&g), &caps()).unwrap();
                    assert_eq!(b, f, "{spec}");
                    assert_eq!(b.coeffs()[0], BigUint::one());
                    // R~(1,1) is empty, so c_1 may be absent
                    assert_eq!(b.coeffs().get(1).cloned().unwrap_or_default(), BigUint::from(g.len()));
                    // reversed order gives the same polynomial
                    let rev: Vec<usize> = (0..g.len()).rev().collect();
                    assert_eq!(partition_function_frontier(&g, &rev, &caps()).unwrap(), b, "{spec} reversed");
                }
            }
        }
    }

    #[test]
    fn activity_sweep_agrees_with_polynomial() {
        let g = build_graph(FamilySpec::Parallelogram { k: 3, n: 6 }).unwrap();
        let p = partition_function(&g, &caps()).unwrap();
        for u in -3i64..=3 {
            let direct = partition_at(&g, &canonical_order(&g), BigInt::from(u), &caps()).unwrap();
            assert_eq!(direct, p.eval(&BigInt::from(u)));
        }
        let x = partition_at(&g, &canonical_order(&g), 0.5f64, &caps()).unwrap();
        let y = p.evaluate(&0.5f64, |c| num_traits::ToPrimitive::to_f64(c).unwrap());
        assert!((x - y).abs() < 1e-9);
    }

    #[test]
    fn disjoint_union_multiplies() {
        let a = build_graph(FamilySpec::TiltedRect { m: 3, n: 4 }).unwrap();
        let b = build_graph(FamilySpec::Parallelogram { k: 2, n: 3 }).unwrap();
        let mut pts: Vec<LatticePoint> = a.points().to_vec();
        let mut edges: Vec<(usize, usize)> = a.edges().collect();
        let off = pts.len();
        pts.extend(b.points().iter().map(|p| LatticePoint::new(p.x + 100, p.y)));
        edges.extend(b.edges().map(|(x, y)| (x + off, y + off)));
        let (u, _) = GridGraph::custom(&pts, &edges).unwrap();
        let pu = partition_function(&u, &caps()).unwrap();
        let pa = partition_function(&a, &caps()).unwrap();
        let pb = partition_function(&b, &caps()).unwrap();
        assert_eq!(pu, pa.mul(&pb));
    }

    #[test]
    fn fold_path_of_three() {
        let g = path(3);
        let r = fold_reduce(&g);
        assert_eq!(r.graph.len(), 2);
        assert_eq!(r.graph.edge_count(), 1);
        assert_eq!(r.steps, vec![FoldStep { kept: 0, removed: 2 }]);
        assert_eq!(alternating_number(&g, &caps()).unwrap(), BigInt::from(-1));
        assert_eq!(alternating_number(&r.graph, &caps()).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn fold_isolated_vertex_is_a_cone() {
        let pts = [LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(5, 5)];
        let (g, _) = GridGraph::custom(&pts, &[(0, 1)]).unwrap();
        let r = fold_reduce(&g);
        assert_eq!(r.graph.len(), 1);
        for stage in r.stages(&g) {
            assert_eq!(alternating_number(&stage, &caps()).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn fold_star() {
        let g = build_graph(FamilySpec::TiltedRect { m: 3, n: 3 }).unwrap();
        let r = fold_reduce(&g);
        assert_eq!(r.graph.len(), 2);
        assert_eq!(r.graph.edge_count(), 1);
        for stage in r.stages(&g) {
            assert_eq!(alternating_number(&stage, &caps()).unwrap(), BigInt::from(-1));
        }
    }
}
