//! Family sweeps comparing the predictor, both counters, matching trees and
//! transfer-matrix traces on every instance.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::caps::Caps;
use crate::count::{alternating_number, canonical_order, fold_reduce, partition_at, partition_function_brute};
use crate::error::{Error, Result};
use crate::lattice::{build_graph, FamilySpec, GridGraph};
use crate::morse::{grow_tree, make_strategy, verify_acyclic, MatchingTree, StrategyKind};
use crate::spectral::{build_transfer, TransferKind};
use crate::verifier::predict::{predict_alternating, TheoremPrediction};
use crate::verifier::report::{CheckReport, CheckRow, Status};
use crate::GaussInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Internal consistency of the closed form.
    Predict,
    Brute,
    Frontier,
    /// Euler sum and critical-cell data of the matching tree.
    Morse,
    /// Exhaustive Morse-matching check of the tree pairing.
    Acyclic,
    /// Transfer-matrix trace, for cylinders.
    Trace,
    /// Alternating number along every fold step.
    Fold,
}

impl Method {
    pub const ALL: [Method; 7] =
        [Method::Predict, Method::Brute, Method::Frontier, Method::Morse, Method::Acyclic, Method::Trace, Method::Fold];

    pub fn name(self) -> &'static str {
        match self {
            Method::Predict => "predict",
            Method::Brute => "brute",
            Method::Frontier => "frontier",
            Method::Morse => "morse",
            Method::Acyclic => "acyclic",
            Method::Trace => "trace",
            Method::Fold => "fold",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown method {s:?}")))
    }
}

/// Named instance ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    /// `TiltedRect` and `TiltedRectSmooth`, `1..=max` squared.
    Rect,
    /// `CylindricRect`, even `M <= max`, `N <= max`.
    Cyl,
    /// `Parallelogram`, `K <= max`, `N <= 2 max + 2`.
    Paral,
    /// `Quadrangle(M, N, 2, 2)`, `1..=max` squared.
    Quad,
    /// `OrdinaryCylinder`, `K <= max`, `2 <= N <= max`.
    OrdCyl,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] = [SuiteName::Rect, SuiteName::Cyl, SuiteName::Paral, SuiteName::Quad, SuiteName::OrdCyl];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Rect => "rect",
            SuiteName::Cyl => "cyl",
            SuiteName::Paral => "paral",
            SuiteName::Quad => "quad",
            SuiteName::OrdCyl => "ord-cyl",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {s:?}")))
    }
}

pub fn suite_instances(suite: SuiteName, max: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    match suite {
        SuiteName::Rect => {
            for m in 1..=max {
                for n in 1..=max {
                    out.push(FamilySpec::TiltedRect { m, n });
                }
            }
            for m in 1..=max {
                for n in 1..=max {
                    out.push(FamilySpec::TiltedRectSmooth { m, n });
                }
            }
        }
        SuiteName::Cyl => {
            for m in (2..=max).step_by(2) {
                for n in 1..=max {
                    out.push(FamilySpec::CylindricRect { m, n });
                }
            }
        }
        SuiteName::Paral => {
            for k in 1..=max {
                for n in 1..=2 * max + 2 {
                    out.push(FamilySpec::Parallelogram { k, n });
                }
            }
        }
        SuiteName::Quad => {
            for m in 1..=max {
                for n in 1..=max {
                    out.push(FamilySpec::Quadrangle { m, n, a: 2, b: 2 });
                }
            }
        }
        SuiteName::OrdCyl => {
            for k in 1..=max {
                for n in 2..=max {
                    out.push(FamilySpec::OrdinaryCylinder { k, n });
                }
            }
        }
    }
    out
}

/// The pivot rule used for a family's matching trees.
pub fn default_strategy(spec: FamilySpec) -> StrategyKind {
    match spec {
        FamilySpec::Parallelogram { k, .. } => StrategyKind::Block(k),
        FamilySpec::Quadrangle { a, b, .. } => StrategyKind::SlopeLex(a, b),
        _ => StrategyKind::DiagLex,
    }
}

/// `Z` and the critical cells of a matching tree, e.g. `Z=4 cells=4x4`.
/// Cardinalities are listed individually when they differ.
pub fn morse_summary(tree: &MatchingTree) -> String {
    let cells = tree.critical_cells();
    let z = tree.morse_euler_sum();
    if cells.is_empty() {
        return format!("Z={z} contractible");
    }
    let mut sizes: Vec<usize> = cells.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
    format!("Z={z} cells={}x{}", cells.len(), sizes.join("/"))
}

fn tilted(spec: FamilySpec) -> bool {
    matches!(spec, FamilySpec::TiltedRect { .. } | FamilySpec::TiltedRectSmooth { .. })
}

fn gauss_to_int(z: &GaussInt) -> Option<BigInt> {
    (z.im == BigInt::from(0)).then(|| z.re.clone())
}

struct Instance<'a> {
    spec: FamilySpec,
    g: &'a GridGraph,
    caps: &'a Caps,
    prediction: Option<TheoremPrediction>,
    reference: Option<BigInt>,
}

impl Instance<'_> {
    fn row(&self, method: Method, value: impl fmt::Display, expected: impl fmt::Display) -> CheckRow {
        CheckRow::compare(self.spec.name(), self.spec.params(), method.name(), value, expected)
    }

    fn skip(&self, method: impl Into<String>, reason: impl fmt::Display) -> CheckRow {
        CheckRow::skipped(self.spec.name(), self.spec.params(), method, reason)
    }

    fn against_reference(&self, method: Method, got: Result<BigInt>) -> CheckRow {
        match (got, &self.reference) {
            (Ok(z), Some(r)) => self.row(method, &z, r),
            (Ok(z), None) => CheckRow::with_status(
                self.spec.name(),
                self.spec.params(),
                method.name(),
                z.to_string(),
                Status::Info,
            ),
            (Err(e), _) => self.skip(method.name(), e),
        }
    }

    fn predict(&self) -> CheckRow {
        let Some(p) = &self.prediction else {
            return self.skip("predict", "no closed form");
        };
        // Z = count * (-1)^cardinality whenever some cell is critical
        let signed = if p.critical_count == num_bigint::BigUint::from(0u32) {
            BigInt::from(0)
        } else {
            let c = BigInt::from(p.critical_count.clone());
            if p.critical_cardinality % 2 == 0 { c } else { -c }
        };
        self.row(Method::Predict, &p.z, signed)
    }

    fn morse(&self, out: &mut CheckReport) {
        let tree = match make_strategy(default_strategy(self.spec), self.g).and_then(|s| grow_tree(self.g, &s, self.caps)) {
            Ok(t) => t,
            Err(e) => {
                out.push(self.skip("morse", e));
                return;
            }
        };
        let got = morse_summary(&tree);
        if let Some(p) = &self.prediction {
            out.push(self.row(Method::Morse, got, p));
        } else {
            out.push(self.against_reference(Method::Morse, Ok(tree.morse_euler_sum())));
        }
        if let Err(msg) = tree.check_invariants(self.g) {
            out.push(self.row(Method::Morse, "tree-invariants broken", msg));
        }
    }

    fn acyclic(&self) -> CheckRow {
        let strategy = match make_strategy(default_strategy(self.spec), self.g) {
            Ok(s) => s,
            Err(e) => return self.skip("acyclic", e),
        };
        // |Σ(G)| = Z_G(1), checked before enumerating anything
        match partition_at(self.g, &canonical_order(self.g), BigInt::one(), self.caps) {
            Ok(size) if size > BigInt::from(self.caps.max_cells) => {
                return self.skip("acyclic", format!("{size} cells above cap {}", self.caps.max_cells));
            }
            Err(e) => return self.skip("acyclic", e),
            Ok(_) => {}
        }
        let report = grow_tree(self.g, &strategy, self.caps).and_then(|t| verify_acyclic(self.g, &t, self.caps));
        match report {
            Ok(r) => {
                let value = if r.ok() {
                    format!("morse faces={} pairs={}", r.faces, r.pairs)
                } else {
                    format!(
                        "broken matching={} acyclic={} involutive={} critical_agree={}",
                        r.check.is_matching, r.check.acyclic, r.involutive, r.critical_agree
                    )
                };
                let expected = format!("morse faces={} pairs={}", r.faces, r.pairs);
                self.row(Method::Acyclic, value, expected)
            }
            Err(e) => self.skip("acyclic", e),
        }
    }

    fn trace(&self, out: &mut CheckReport) {
        let traced = |kind: TransferKind, power: usize| -> Result<BigInt> {
            let t = build_transfer(kind, self.caps)?;
            let tr = t.pow_traces(power)?;
            gauss_to_int(&tr[power]).ok_or_else(|| Error::ImaginaryResidue { degree: power, value: format!("{}", tr[power]) })
        };
        match self.spec {
            FamilySpec::CylindricRect { m, n } => {
                let got = traced(TransferKind::R(n), (m / 2) as usize);
                out.push(self.against_reference(Method::Trace, got));
            }
            FamilySpec::OrdinaryCylinder { k, n } => {
                for kind in [TransferKind::P(2 * k), TransferKind::O(k)] {
                    let got = traced(kind, n as usize);
                    let mut row = self.against_reference(Method::Trace, got);
                    row.method = format!("trace-{}", kind.letter());
                    out.push(row);
                }
            }
            _ => {}
        }
    }

    fn fold(&self) -> CheckRow {
        let Some(z0) = &self.reference else {
            return self.skip("fold", "no reference value");
        };
        let folded = fold_reduce(self.g);
        for (i, stage) in folded.stages(self.g).iter().enumerate() {
            match alternating_number(stage, self.caps) {
                Ok(z) if &z != z0 => return self.row(Method::Fold, format!("step {i}: Z={z}"), format!("Z={z0}")),
                Ok(_) => {}
                Err(e) => return self.skip("fold", e),
            }
        }
        let maxdeg = folded.graph.max_degree();
        let value = format!("steps={} maxdeg={maxdeg}", folded.steps.len());
        if tilted(self.spec) && maxdeg > 1 {
            return self.row(Method::Fold, value, format!("steps={} maxdeg<=1", folded.steps.len()));
        }
        self.row(Method::Fold, &value, &value)
    }
}

/// Runs `methods` (in the fixed order of [`Method::ALL`]) on every instance.
///
/// The reference value of `Z` is the closed form when one exists and the
/// frontier count otherwise. Cap violations give SKIPPED rows; nothing
/// aborts the sweep.
pub fn run_suite(instances: &[FamilySpec], methods: &[Method], caps: &Caps) -> CheckReport {
    let mut out = CheckReport::new();
    for &spec in instances {
        let g = match build_graph(spec) {
            Ok(g) => g,
            Err(e) => {
                out.push(CheckRow::skipped(spec.name(), spec.params(), "build", e));
                continue;
            }
        };
        let prediction = predict_alternating(spec).ok();
        let frontier = partition_at(&g, &canonical_order(&g), BigInt::from(-1), caps);
        let reference = match &prediction {
            Some(p) => Some(p.z.clone()),
            None => frontier.as_ref().ok().cloned(),
        };
        let inst = Instance { spec, g: &g, caps, prediction, reference };
        for m in Method::ALL.into_iter().filter(|m| methods.contains(m)) {
            match m {
                Method::Predict => out.push(inst.predict()),
                Method::Brute => {
                    let z = partition_function_brute(&g, caps).map(|p| p.alternating());
                    out.push(inst.against_reference(m, z));
                }
                Method::Frontier => out.push(inst.against_reference(m, frontier.clone())),
                Method::Morse => inst.morse(&mut out),
                Method::Acyclic => out.push(inst.acyclic()),
                Method::Trace => inst.trace(&mut out),
                Method::Fold => out.push(inst.fold()),
            }
        }
    }
    out
}

/// `Z` on `OrdinaryCylinder(K, N)` for odd `N`; rows are report-only.
pub fn explore_ordinary_cylinders(kmax: u32, nmax: u32, caps: &Caps) -> CheckReport {
    let mut out = CheckReport::new();
    for k in 1..=kmax {
        for n in (3..=nmax).step_by(2) {
            let spec = FamilySpec::OrdinaryCylinder { k, n };
            let row = match build_graph(spec).and_then(|g| alternating_number(&g, caps)) {
                Ok(z) => CheckRow::with_status(spec.name(), spec.params(), "frontier", z.to_string(), Status::Info),
                Err(e) => CheckRow::skipped(spec.name(), spec.params(), "frontier", e),
            };
            out.push(row);
        }
    }
    out
}
