//! Finite subgraphs of the square lattice.
//!
//! Every graph keeps its vertices in the canonical order: ascending
//! `(x + y, x)`. Vertex ids are positions in that order, so scanning ids in
//! increasing order walks the slope -1 diagonals left to right, each one from
//! its top end down.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// Sort key of the canonical vertex order.
    pub fn canonical_key(self) -> (i64, i64) {
        (self.x + self.y, self.x)
    }

    pub fn east(self) -> Self {
        LatticePoint::new(self.x + 1, self.y)
    }

    fn lattice_neighbors(self) -> [LatticePoint; 4] {
        [
            LatticePoint::new(self.x + 1, self.y),
            LatticePoint::new(self.x, self.y + 1),
            LatticePoint::new(self.x - 1, self.y),
            LatticePoint::new(self.x, self.y - 1),
        ]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The graph families studied here, with their size parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `y <= x <= y+M-1`, `-y <= x <= -y+N-1`.
    TiltedRect { m: u32, n: u32 },
    /// `y <= x <= y+M-1`, `-y+1 <= x <= -y+N`.
    TiltedRectSmooth { m: u32, n: u32 },
    /// `TiltedRect(M+1, N)` wrapped onto a cylinder; `M` even.
    CylindricRect { m: u32, n: u32 },
    /// `0 <= y <= K-1`, `-y <= x <= -y+N-1`.
    Parallelogram { k: u32, n: u32 },
    /// `a*y <= x <= a*y+M-1`, `-b*x <= y <= -b*x+N-1`.
    Quadrangle { m: u32, n: u32, a: i64, b: i64 },
    /// `0 <= x <= K-1`, `0 <= y <= N-1`.
    OrdinaryRect { k: u32, n: u32 },
    /// `OrdinaryRect(K, N)` with `y` taken modulo `N`.
    OrdinaryCylinder { k: u32, n: u32 },
}

impl FamilySpec {
    /// The command-line name of the family.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::TiltedRect { .. } => "tilted-rect",
            FamilySpec::TiltedRectSmooth { .. } => "tilted-rect-smooth",
            FamilySpec::CylindricRect { .. } => "cyl-rect",
            FamilySpec::Parallelogram { .. } => "parallelogram",
            FamilySpec::Quadrangle { .. } => "quad",
            FamilySpec::OrdinaryRect { .. } => "ord-rect",
            FamilySpec::OrdinaryCylinder { .. } => "ord-cyl",
        }
    }

    /// Space separated parameter list, as used in reports.
    pub fn params(&self) -> String {
        match *self {
            FamilySpec::TiltedRect { m, n }
            | FamilySpec::TiltedRectSmooth { m, n }
            | FamilySpec::CylindricRect { m, n } => format!("{m} {n}"),
            FamilySpec::Parallelogram { k, n }
            | FamilySpec::OrdinaryRect { k, n }
            | FamilySpec::OrdinaryCylinder { k, n } => format!("{k} {n}"),
            FamilySpec::Quadrangle { m, n, a, b } => format!("{m} {n} {a} {b}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |vals: &[u32]| vals.iter().all(|&v| v >= 1);
        let ok = match *self {
            FamilySpec::TiltedRect { m, n }
            | FamilySpec::TiltedRectSmooth { m, n }
            | FamilySpec::Quadrangle { m, n, .. } => positive(&[m, n]),
            FamilySpec::Parallelogram { k, n } | FamilySpec::OrdinaryRect { k, n } => positive(&[k, n]),
            FamilySpec::CylindricRect { m, n } => {
                if m % 2 == 1 {
                    return Err(Error::InvalidFamily(format!("cyl-rect needs even M, got {m}")));
                }
                positive(&[m, n])
            }
            FamilySpec::OrdinaryCylinder { k, n } => {
                if n == 1 {
                    return Err(Error::InvalidFamily(
                        "ord-cyl needs N >= 2: with N = 1 every vertex would be its own neighbour".into(),
                    ));
                }
                positive(&[k, n])
            }
        };
        if !ok {
            return Err(Error::InvalidFamily(format!("{self}: parameters must be >= 1")));
        }
        if let FamilySpec::Quadrangle { a, b, .. } = *self {
            if 1 + a * b == 0 {
                return Err(Error::InvalidFamily(format!("quad with a*b = -1 is unbounded (a={a}, b={b})")));
            }
        }
        Ok(())
    }

    /// True for families built with a wrap-around.
    pub fn is_cylindric(&self) -> bool {
        matches!(self, FamilySpec::CylindricRect { .. } | FamilySpec::OrdinaryCylinder { .. })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.params())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the `Display` form, e.g. `quad 12 17 2 2`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = || Error::InvalidFamily(format!("cannot parse family {s:?}"));
        let mut it = s.split_whitespace();
        let name = it.next().ok_or_else(bad)?;
        let nums: Vec<i64> = it.map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let u = |i: usize| -> Result<u32> {
            nums.get(i).and_then(|&v| u32::try_from(v).ok()).ok_or_else(bad)
        };
        let expect = |len: usize| if nums.len() == len { Ok(()) } else { Err(bad()) };
        let spec = match name {
            "tilted-rect" => { expect(2)?; FamilySpec::TiltedRect { m: u(0)?, n: u(1)? } }
            "tilted-rect-smooth" => { expect(2)?; FamilySpec::TiltedRectSmooth { m: u(0)?, n: u(1)? } }
            "cyl-rect" => { expect(2)?; FamilySpec::CylindricRect { m: u(0)?, n: u(1)? } }
            "parallelogram" => { expect(2)?; FamilySpec::Parallelogram { k: u(0)?, n: u(1)? } }
            "ord-rect" => { expect(2)?; FamilySpec::OrdinaryRect { k: u(0)?, n: u(1)? } }
            "ord-cyl" => { expect(2)?; FamilySpec::OrdinaryCylinder { k: u(0)?, n: u(1)? } }
            "quad" => {
                expect(4)?;
                FamilySpec::Quadrangle { m: u(0)?, n: u(1)?, a: nums[2], b: nums[3] }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// A finite graph on lattice points, in canonical vertex order.
#[derive(Clone, Debug)]
pub struct GridGraph {
    points: Vec<LatticePoint>,
    adjacency: Vec<Vec<usize>>,
    /// `(kept, removed)` pairs of merged lattice points.
    identifications: Vec<(LatticePoint, LatticePoint)>,
    family: Option<FamilySpec>,
    neighbor_sets: Vec<VertexSet>,
    index: HashMap<LatticePoint, usize>,
}

impl PartialEq for GridGraph {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
            && self.adjacency == other.adjacency
            && self.identifications == other.identifications
            && self.family == other.family
    }
}

impl Eq for GridGraph {}

impl GridGraph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Self::assemble(Vec::new(), Vec::new(), Vec::new(), None)
    }

    /// Builds a graph from arbitrary distinct points and an edge list over
    /// their positions in `points`. Vertices are re-sorted into canonical
    /// order; the returned vector maps input positions to canonical ids.
    pub fn custom(points: &[LatticePoint], edges: &[(usize, usize)]) -> Result<(GridGraph, Vec<usize>)> {
        let n = points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| points[i].canonical_key());
        let mut new_id = vec![0; n];
        for (rank, &i) in order.iter().enumerate() {
            new_id[i] = rank;
        }
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::InvalidFamily(format!("duplicate point {}", points[w[0]])));
            }
        }
        let sorted: Vec<LatticePoint> = order.iter().map(|&i| points[i]).collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { id: a.max(b), len: n });
            }
            if a == b {
                return Err(Error::InvalidFamily(format!("self-loop at {}", points[a])));
            }
            adjacency[new_id[a]].push(new_id[b]);
            adjacency[new_id[b]].push(new_id[a]);
        }
        Ok((Self::assemble(sorted, adjacency, Vec::new(), None), new_id))
    }

    /// Sorts and deduplicates adjacency lists and fills the derived indexes.
    fn assemble(
        points: Vec<LatticePoint>,
        mut adjacency: Vec<Vec<usize>>,
        identifications: Vec<(LatticePoint, LatticePoint)>,
        family: Option<FamilySpec>,
    ) -> Self {
        let n = points.len();
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let neighbor_sets = adjacency
            .iter()
            .map(|l| VertexSet::from_ids(n, l.iter().copied()))
            .collect();
        let mut index: HashMap<LatticePoint, usize> =
            points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for &(kept, removed) in &identifications {
            if let Some(&i) = index.get(&kept) {
                index.insert(removed, i);
            }
        }
        GridGraph { points, adjacency, identifications, family, neighbor_sets, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: usize) -> LatticePoint {
        self.points[id]
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    /// Open neighbourhood of `id` as a bitset.
    pub fn neighbor_set(&self, id: usize) -> &VertexSet {
        &self.neighbor_sets[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency[id].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn identifications(&self) -> &[(LatticePoint, LatticePoint)] {
        &self.identifications
    }

    pub fn family(&self) -> Option<FamilySpec> {
        self.family
    }

    /// The vertex sitting at `p`, looking through merged points.
    pub fn vertex_at(&self, p: LatticePoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// Union of the neighbourhoods of the members of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.len());
        for v in s {
            out.union_with(&self.neighbor_sets[v]);
        }
        out
    }

    /// Induced subgraph on the complement of `s`. The second component maps
    /// old ids to new ids (`None` for deleted vertices).
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<(GridGraph, Vec<Option<usize>>)> {
        if s.capacity() > self.len() {
            if let Some(bad) = s.iter().find(|&i| i >= self.len()) {
                return Err(Error::VertexOutOfRange { id: bad, len: self.len() });
            }
        }
        let mut map = vec![None; self.len()];
        let mut next = 0;
        for (old, slot) in map.iter_mut().enumerate() {
            if !s.contains(old) {
                *slot = Some(next);
                next += 1;
            }
        }
        let points: Vec<LatticePoint> =
            (0..self.len()).filter(|&i| map[i].is_some()).map(|i| self.points[i]).collect();
        let adjacency: Vec<Vec<usize>> = (0..self.len())
            .filter(|&i| map[i].is_some())
            .map(|i| self.adjacency[i].iter().filter_map(|&j| map[j]).collect())
            .collect();
        let identifications = self
            .identifications
            .iter()
            .filter(|(kept, _)| self.vertex_at(*kept).is_some_and(|i| map[i].is_some()))
            .copied()
            .collect();
        Ok((Self::assemble(points, adjacency, identifications, None), map))
    }

    /// Checks the structural invariants: symmetric adjacency without loops,
    /// canonical order, distinct points, and unit-length edges for open
    /// families.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.len();
        let fail = |msg: String| Err(Error::InvalidFamily(msg));
        for w in self.points.windows(2) {
            if w[0].canonical_key() >= w[1].canonical_key() {
                return fail(format!("points {} and {} out of canonical order", w[0], w[1]));
            }
        }
        let open = self.identifications.is_empty() && !self.family.is_some_and(|f| f.is_cylindric());
        for (a, list) in self.adjacency.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return fail(format!("adjacency of {a} not strictly sorted"));
                }
            }
            for &b in list {
                if b >= n {
                    return Err(Error::VertexOutOfRange { id: b, len: n });
                }
                if a == b {
                    return fail(format!("self-loop at {a}"));
                }
                if self.adjacency[b].binary_search(&a).is_err() {
                    return fail(format!("edge {a}-{b} is not symmetric"));
                }
                if open {
                    let (p, q) = (self.points[a], self.points[b]);
                    if (p.x - q.x).abs() + (p.y - q.y).abs() != 1 {
                        return fail(format!("edge {p}-{q} is not a unit lattice step"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the graph of a family.
pub fn build_graph(spec: FamilySpec) -> Result<GridGraph> {
    spec.validate()?;
    let g = match spec {
        FamilySpec::TiltedRect { m, n } => open_region(spec, tilted_points(m as i64, n as i64, 0)),
        FamilySpec::TiltedRectSmooth { m, n } => open_region(spec, tilted_points(m as i64, n as i64, 1)),
        FamilySpec::Parallelogram { k, n } => {
            let (k, n) = (k as i64, n as i64);
            let pts = (0..k).flat_map(|y| (-y..=-y + n - 1).map(move |x| LatticePoint::new(x, y)));
            open_region(spec, pts.collect())
        }
        FamilySpec::OrdinaryRect { k, n } => open_region(spec, ordinary_points(k as i64, n as i64)),
        FamilySpec::Quadrangle { m, n, a, b } => open_region(spec, quadrangle_points(m as i64, n as i64, a, b)),
        FamilySpec::CylindricRect { m, n } => cylindric_rect(spec, m as i64, n as i64),
        FamilySpec::OrdinaryCylinder { k, n } => ordinary_cylinder(spec, k as i64, n as i64),
    };
    debug_assert!(g.check_invariants().is_ok());
    Ok(g)
}

fn tilted_points(m: i64, n: i64, shift: i64) -> Vec<LatticePoint> {
    let mut pts = Vec::new();
    for y in -m..=n {
        for x in -m - n..=m + n {
            if y <= x && x < y + m && -y + shift <= x && x < -y + n + shift {
                pts.push(LatticePoint::new(x, y));
            }
        }
    }
    pts
}

fn ordinary_points(k: i64, n: i64) -> Vec<LatticePoint> {
    (0..k).flat_map(|x| (0..n).map(move |y| LatticePoint::new(x, y))).collect()
}

fn quadrangle_points(m: i64, n: i64, a: i64, b: i64) -> Vec<LatticePoint> {
    // u = x - a*y in [0, M-1], w = y + b*x in [0, N-1]; invert at the corners
    // to get a bounding box.
    let det = (1 + a * b) as f64;
    let mut lo = (i64::MAX, i64::MAX);
    let mut hi = (i64::MIN, i64::MIN);
    for u in [0, m - 1] {
        for w in [0, n - 1] {
            let x = (u as f64 + a as f64 * w as f64) / det;
            let y = (w as f64 - b as f64 * u as f64) / det;
            lo = (lo.0.min(x.floor() as i64), lo.1.min(y.floor() as i64));
            hi = (hi.0.max(x.ceil() as i64), hi.1.max(y.ceil() as i64));
        }
    }
    let mut pts = Vec::new();
    for y in lo.1 - 1..=hi.1 + 1 {
        for x in lo.0 - 1..=hi.0 + 1 {
            let u = x - a * y;
            let w = y + b * x;
            if (0..m).contains(&u) && (0..n).contains(&w) {
                pts.push(LatticePoint::new(x, y));
            }
        }
    }
    pts
}

/// Induced subgraph of the lattice on `pts`.
fn open_region(spec: FamilySpec, mut pts: Vec<LatticePoint>) -> GridGraph {
    pts.sort_by_key(|p| p.canonical_key());
    let index: HashMap<LatticePoint, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let adjacency = pts
        .iter()
        .map(|p| p.lattice_neighbors().iter().filter_map(|q| index.get(q).copied()).collect())
        .collect();
    GridGraph::assemble(pts, adjacency, Vec::new(), Some(spec))
}

fn cylindric_rect(spec: FamilySpec, m: i64, n: i64) -> GridGraph {
    let base = open_region(spec, tilted_points(m + 1, n, 0));
    let half = m / 2;
    // removed point -> kept point
    let mut merge: HashMap<LatticePoint, LatticePoint> = HashMap::new();
    let mut identifications = Vec::new();
    for i in 0..=(n - 1) / 2 {
        let a = LatticePoint::new(i, i);
        let b = LatticePoint::new(half + i, -half + i);
        let (kept, removed) = if a.canonical_key() <= b.canonical_key() { (a, b) } else { (b, a) };
        merge.insert(removed, kept);
        identifications.push((kept, removed));
    }
    let rep = |p: LatticePoint| merge.get(&p).copied().unwrap_or(p);
    let points: Vec<LatticePoint> = base.points.iter().copied().filter(|p| !merge.contains_key(p)).collect();
    let index: HashMap<LatticePoint, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut adjacency = vec![Vec::new(); points.len()];
    for (a, b) in base.edges() {
        let ia = index[&rep(base.points[a])];
        let ib = index[&rep(base.points[b])];
        if ia != ib {
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
    }
    GridGraph::assemble(points, adjacency, identifications, Some(spec))
}

fn ordinary_cylinder(spec: FamilySpec, k: i64, n: i64) -> GridGraph {
    let mut pts = ordinary_points(k, n);
    pts.sort_by_key(|p| p.canonical_key());
    let index: HashMap<LatticePoint, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let adjacency = pts
        .iter()
        .map(|p| {
            let mut l = Vec::new();
            for q in [
                LatticePoint::new(p.x + 1, p.y),
                LatticePoint::new(p.x - 1, p.y),
                LatticePoint::new(p.x, (p.y + 1).rem_euclid(n)),
                LatticePoint::new(p.x, (p.y - 1).rem_euclid(n)),
            ] {
                if let Some(&j) = index.get(&q) {
                    l.push(j);
                }
            }
            l
        })
        .collect();
    GridGraph::assemble(pts, adjacency, Vec::new(), Some(spec))
}

/// Serializes to the `gridgraph v1` text format.
pub fn dump_graph(g: &GridGraph) -> String {
    let mut out = String::from("gridgraph v1\n");
    if let Some(f) = g.family {
        out.push_str(&format!("# family {f}\n"));
    }
    for (kept, removed) in &g.identifications {
        out.push_str(&format!("# merged {kept}={removed}\n"));
    }
    for (i, p) in g.points.iter().enumerate() {
        out.push_str(&format!("v {i} {} {}\n", p.x, p.y));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("e {a} {b}\n"));
    }
    out
}

fn parse_point(s: &str) -> Option<LatticePoint> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    Some(LatticePoint::new(x.trim().parse().ok()?, y.trim().parse().ok()?))
}

/// Parses the `gridgraph v1` text format.
pub fn load_graph(text: &str) -> Result<GridGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    match lines.next() {
        Some((_, "gridgraph v1")) => {}
        Some((l, _)) => return Err(err(l, "expected header `gridgraph v1`")),
        None => return Err(err(1, "empty document")),
    }
    let mut points = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut identifications = Vec::new();
    let mut family = None;
    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("family ") {
                family = Some(rest.parse::<FamilySpec>().map_err(|e| err(line, &e.to_string()))?);
            } else if let Some(rest) = comment.strip_prefix("merged ") {
                let (a, b) = rest.split_once('=').ok_or_else(|| err(line, "bad merged record"))?;
                let a = parse_point(a.trim()).ok_or_else(|| err(line, "bad point"))?;
                let b = parse_point(b.trim()).ok_or_else(|| err(line, "bad point"))?;
                identifications.push((a, b));
            }
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        let nums: Vec<i64> = toks[1..]
            .iter()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err(line, "expected integers"))?;
        match (toks[0], nums.as_slice()) {
            ("v", &[id, x, y]) => {
                if id != points.len() as i64 {
                    return Err(err(line, "vertex ids must be dense and ascending from 0"));
                }
                points.push(LatticePoint::new(x, y));
            }
            ("e", &[a, b]) => {
                if a < 0 || b < 0 {
                    return Err(err(line, "negative vertex id"));
                }
                if a >= b {
                    return Err(err(line, "edge endpoints must satisfy id1 < id2"));
                }
                edges.push((line, a as usize, b as usize));
            }
            _ => return Err(err(line, "unrecognized record")),
        }
    }
    let n = points.len();
    let mut adjacency = vec![Vec::new(); n];
    for &(line, a, b) in &edges {
        if b >= n {
            return Err(err(line, &format!("edge refers to nonexistent vertex {b}")));
        }
        if adjacency[a].contains(&b) {
            return Err(err(line, "duplicate edge"));
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut seen = std::collections::HashSet::new();
    for p in &points {
        if !seen.insert(*p) {
            return Err(err(0, &format!("duplicate coordinates {p}")));
        }
    }
    let g = GridGraph::assemble(points, adjacency, identifications, family);
    g.check_invariants().map_err(|e| err(0, &e.to_string()))?;
    Ok(g)
}
