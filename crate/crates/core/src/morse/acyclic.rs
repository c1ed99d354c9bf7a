//! Exhaustive check that a matching on the face poset of `Σ(G)` is a Morse
//! matching.

use std::collections::{HashMap, VecDeque};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::GridGraph;
use crate::morse::tree::{Classification, MatchingTree};
use crate::vertex_set::VertexSet;

/// Result of [`check_matching`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCheck {
    /// Every pair is a cover relation and no face is used twice.
    pub is_matching: bool,
    /// The modified Hasse diagram has no directed cycle.
    pub acyclic: bool,
    /// Faces left unmatched, in input order.
    pub unmatched: Vec<VertexSet>,
}

impl MatchingCheck {
    pub fn is_morse(&self) -> bool {
        self.is_matching && self.acyclic
    }
}

/// Summary of [`verify_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub faces: usize,
    pub pairs: usize,
    /// Tree pairing is symmetric: each matched partner maps back at the same site.
    pub involutive: bool,
    /// Unmatched faces are exactly the tree's singleton leaves.
    pub critical_agree: bool,
    pub check: MatchingCheck,
}

impl AcyclicityReport {
    pub fn ok(&self) -> bool {
        self.involutive && self.critical_agree && self.check.is_morse()
    }
}

/// All independent sets of `g`, the empty set included.
pub fn enumerate_complex(g: &GridGraph, cap: usize) -> Result<Vec<VertexSet>> {
    let n = g.len();
    let mut out = Vec::new();
    let mut stack = vec![(VertexSet::empty(n), VertexSet::empty(n), 0usize)];
    // (set, blocked, next candidate)
    while let Some((set, blocked, from)) = stack.pop() {
        if out.len() >= cap {
            return Err(Error::ComplexCap { cap });
        }
        out.push(set.clone());
        for v in (from..n).rev() {
            if !blocked.contains(v) && !set.contains(v) {
                let mut s = set.clone();
                s.insert(v);
                stack.push((s, blocked.union(g.neighbor_set(v)), v + 1));
            }
        }
    }
    Ok(out)
}

/// Checks that `pairs` (each `(face, face ∪ {x})`) form a matching on the
/// face poset spanned by `faces`, and that reversing the matched edges of
/// the Hasse diagram leaves it acyclic.
///
/// `faces` must be closed under taking subsets.
pub fn check_matching(faces: &[VertexSet], pairs: &[(VertexSet, VertexSet)]) -> MatchingCheck {
    let index: HashMap<&VertexSet, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut mate: Vec<Option<usize>> = vec![None; faces.len()];
    let mut is_matching = true;
    for (lo, hi) in pairs {
        let (Some(&l), Some(&h)) = (index.get(lo), index.get(hi)) else {
            is_matching = false;
            continue;
        };
        let cover = lo.is_subset(hi) && hi.len() == lo.len() + 1;
        if !cover || mate[l].is_some() || mate[h].is_some() {
            is_matching = false;
            continue;
        }
        mate[l] = Some(h);
        mate[h] = Some(l);
    }

    // Hasse edges point down (face -> facet-removed), matched ones point up.
    let mut indegree = vec![0usize; faces.len()];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for (i, f) in faces.iter().enumerate() {
        for x in f.iter() {
            let j = index[&f.toggled(x)];
            if mate[i] == Some(j) {
                out_edges[j].push(i);
                indegree[i] += 1;
            } else {
                out_edges[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..faces.len()).filter(|&i| indegree[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop_front() {
        seen += 1;
        for &j in &out_edges[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    let unmatched = faces.iter().zip(&mate).filter(|(_, m)| m.is_none()).map(|(f, _)| f.clone()).collect();
    MatchingCheck { is_matching, acyclic: seen == faces.len(), unmatched }
}

/// Materializes `Σ(g)`, pairs it through `tree`, and checks the result.
pub fn verify_acyclic(g: &GridGraph, tree: &MatchingTree, caps: &Caps) -> Result<AcyclicityReport> {
    let faces = enumerate_complex(g, caps.max_cells)?;
    let mut pairs = Vec::new();
    let mut involutive = true;
    let mut critical = Vec::new();
    for f in &faces {
        match tree.classify(g, f)? {
            Classification::Matched { partner, site } => {
                match tree.classify(g, &partner) {
                    Ok(Classification::Matched { partner: back, site: s2 }) if back == *f && s2 == site => {}
                    _ => involutive = false,
                }
                if partner.len() > f.len() {
                    pairs.push((f.clone(), partner));
                }
            }
            Classification::Critical { .. } => critical.push(f.clone()),
        }
    }
    let check = check_matching(&faces, &pairs);
    let mut expected = tree.critical_cells();
    expected.sort();
    let mut got = check.unmatched.clone();
    got.sort();
    critical.sort();
    let critical_agree = got == expected && critical == expected;
    Ok(AcyclicityReport { faces: faces.len(), pairs: pairs.len(), involutive, critical_agree, check })
}
