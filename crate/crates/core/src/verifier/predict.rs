//! Closed-form alternating numbers and critical-cell data per family.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::FamilySpec;

/// Which case of the closed forms applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    EmptyGraph,
    RectM1,
    RectN1,
    RectSphere,
    CylN1,
    CylWedge,
    CylSphere,
    ParK1N1,
    ParK1Sphere,
    ParK2Contractible,
    ParK2Sphere,
    ParK0R0,
    ParK0R1,
    ParK0Sphere,
    QuadM0,
    QuadM1,
    QuadN12,
    QuadSphere,
}

impl Branch {
    pub const ALL: [Branch; 18] = [
        Branch::EmptyGraph,
        Branch::RectM1,
        Branch::RectN1,
        Branch::RectSphere,
        Branch::CylN1,
        Branch::CylWedge,
        Branch::CylSphere,
        Branch::ParK1N1,
        Branch::ParK1Sphere,
        Branch::ParK2Contractible,
        Branch::ParK2Sphere,
        Branch::ParK0R0,
        Branch::ParK0R1,
        Branch::ParK0Sphere,
        Branch::QuadM0,
        Branch::QuadM1,
        Branch::QuadN12,
        Branch::QuadSphere,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremPrediction {
    pub z: BigInt,
    pub contractible: bool,
    pub critical_count: BigUint,
    /// Meaningful only when `critical_count > 0`.
    pub critical_cardinality: u64,
    pub m: u64,
    pub n: u64,
    pub q: Option<u64>,
    pub r: Option<u64>,
    pub branch: Branch,
}

impl TheoremPrediction {
    fn contractible(m: u64, n: u64, q: Option<u64>, r: Option<u64>, branch: Branch) -> Self {
        TheoremPrediction {
            z: BigInt::zero(),
            contractible: true,
            critical_count: BigUint::zero(),
            critical_cardinality: 0,
            m,
            n,
            q,
            r,
            branch,
        }
    }

    /// One cell of size `mn`, `Z = (-1)^{mn}`.
    fn sphere(m: u64, n: u64, q: Option<u64>, r: Option<u64>, branch: Branch) -> Self {
        let card = m * n;
        TheoremPrediction {
            z: if card % 2 == 0 { BigInt::one() } else { -BigInt::one() },
            contractible: false,
            critical_count: BigUint::one(),
            critical_cardinality: card,
            m,
            n,
            q,
            r,
            branch,
        }
    }
}

impl fmt::Display for TheoremPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.contractible {
            write!(f, "Z=0 contractible")
        } else {
            write!(f, "Z={} cells={}x{}", self.z, self.critical_count, self.critical_cardinality)
        }
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Closed-form prediction for the tilted, cylindric, parallelogram and
/// `(2,2)`-quadrangle families.
pub fn predict_alternating(spec: FamilySpec) -> Result<TheoremPrediction> {
    spec.validate()?;
    match spec {
        FamilySpec::TiltedRect { m, n } | FamilySpec::TiltedRectSmooth { m, n } => {
            let (mm, nn) = (m as u64, n as u64);
            let (sm, sn) = (ceil_div(mm, 3), ceil_div(nn, 3));
            if matches!(spec, FamilySpec::TiltedRectSmooth { .. }) && mm == 1 && nn == 1 {
                // no lattice point at all: Σ = {∅}
                return Ok(TheoremPrediction::sphere(0, 0, None, None, Branch::EmptyGraph));
            }
            Ok(if mm % 3 == 1 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::RectM1)
            } else if nn % 3 == 1 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::RectN1)
            } else {
                TheoremPrediction::sphere(sm, sn, None, None, Branch::RectSphere)
            })
        }
        FamilySpec::CylindricRect { m, n } => {
            let (mm, nn) = (m as u64, n as u64);
            let (sm, sn) = ((mm + 1) / 3, ceil_div(nn, 3));
            Ok(if nn % 3 == 1 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::CylN1)
            } else if mm % 3 == 0 {
                let count = BigUint::one() << sn;
                TheoremPrediction {
                    z: BigInt::from(count.clone()),
                    contractible: false,
                    critical_count: count,
                    critical_cardinality: sm * sn,
                    m: sm,
                    n: sn,
                    q: None,
                    r: None,
                    branch: Branch::CylWedge,
                }
            } else {
                let mut p = TheoremPrediction::sphere(sm, sn, None, None, Branch::CylSphere);
                // Z = (-1)^n here, which agrees with (-1)^{mn}: m is odd
                // whenever M is even and not divisible by 3
                debug_assert_eq!(sm % 2, 1);
                p.z = if sn % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                p
            })
        }
        FamilySpec::Parallelogram { k, n } => {
            let (kk, nn) = (k as u64, n as u64);
            let sm = ceil_div(2 * kk, 3);
            Ok(match kk % 3 {
                1 => {
                    let sn = ceil_div(nn, 3);
                    if nn % 3 == 1 {
                        TheoremPrediction::contractible(sm, sn, None, None, Branch::ParK1N1)
                    } else {
                        let mut p = TheoremPrediction::sphere(sm, sn, None, None, Branch::ParK1Sphere);
                        p.z = if sn % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        p
                    }
                }
                2 => {
                    let (q, r) = (nn / (2 * kk), nn % (2 * kk));
                    let sn = ceil_div((2 * kk - 1) * nn, 6 * kk);
                    if r % 3 != 0 {
                        TheoremPrediction::contractible(sm, sn, Some(q), Some(r), Branch::ParK2Contractible)
                    } else {
                        let mut p = TheoremPrediction::sphere(sm, sn, Some(q), Some(r), Branch::ParK2Sphere);
                        p.critical_cardinality = q * sm * (sm - 1) + sm * r / 3;
                        p.z = BigInt::one();
                        p
                    }
                }
                _ => {
                    let (q, r) = (nn / (2 * kk + 2), nn % (2 * kk + 2));
                    let sn = ceil_div((2 * kk + 3) * nn, 6 * kk + 6);
                    if r % 3 == 0 && r >= 1 {
                        TheoremPrediction::contractible(sm, sn, Some(q), Some(r), Branch::ParK0R0)
                    } else if r % 3 == 1 && r <= 2 * kk {
                        TheoremPrediction::contractible(sm, sn, Some(q), Some(r), Branch::ParK0R1)
                    } else {
                        let mut p = TheoremPrediction::sphere(sm, sn, Some(q), Some(r), Branch::ParK0Sphere);
                        p.critical_cardinality = q * sm * (sm + 1) + sm * ceil_div(r, 3);
                        p.z = BigInt::one();
                        p
                    }
                }
            })
        }
        FamilySpec::Quadrangle { m, n, a: 2, b: 2 } => {
            let (mm, nn) = (m as u64, n as u64);
            let (sm, sn) = (ceil_div(mm, 5), ceil_div(nn, 5));
            Ok(if mm % 5 == 0 && nn != 3 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::QuadM0)
            } else if mm % 5 == 1 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::QuadM1)
            } else if nn % 5 == 1 || nn % 5 == 2 {
                TheoremPrediction::contractible(sm, sn, None, None, Branch::QuadN12)
            } else {
                TheoremPrediction::sphere(sm, sn, None, None, Branch::QuadSphere)
            })
        }
        other => Err(Error::Unsupported(format!("no closed form for {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(spec: FamilySpec) -> TheoremPrediction {
        predict_alternating(spec).unwrap()
    }

    #[test]
    fn examples() {
        let r = p(FamilySpec::TiltedRect { m: 8, n: 6 });
        assert_eq!((r.z.clone(), r.critical_count.clone(), r.critical_cardinality), (1.into(), 1u32.into(), 6));
        let c = p(FamilySpec::CylindricRect { m: 6, n: 5 });
        assert_eq!((c.z.clone(), c.critical_count.clone(), c.critical_cardinality), (4.into(), 4u32.into(), 4));
        let q = p(FamilySpec::Parallelogram { k: 5, n: 7 });
        assert!(q.contractible && q.z.is_zero());
        assert_eq!((q.q, q.r), (Some(0), Some(7)));
        let q = p(FamilySpec::Parallelogram { k: 5, n: 10 });
        assert_eq!(q.critical_cardinality, 12);
        assert!(p(FamilySpec::TiltedRect { m: 4, n: 9 }).z.is_zero());
        assert!(predict_alternating(FamilySpec::OrdinaryRect { k: 3, n: 3 }).is_err());
        assert!(predict_alternating(FamilySpec::Quadrangle { m: 3, n: 3, a: 1, b: 2 }).is_err());
    }

    #[test]
    fn quadrangle_quirk_at_n_equal_3() {
        assert!(p(FamilySpec::Quadrangle { m: 5, n: 8, a: 2, b: 2 }).contractible);
        let s = p(FamilySpec::Quadrangle { m: 5, n: 3, a: 2, b: 2 });
        assert_eq!(s.branch, Branch::QuadSphere);
        assert_eq!(s.critical_cardinality, 1);
    }

    #[test]
    fn cardinality_closed_forms_agree() {
        // q m(m∓1) + ... equals m n with the n given for each residue of K
        for k in 1..=12u32 {
            for n in 1..=60u32 {
                let pr = p(FamilySpec::Parallelogram { k, n });
                if !pr.contractible {
                    assert_eq!(pr.critical_cardinality, pr.m * pr.n, "P({k},{n})");
                }
            }
        }
    }

    #[test]
    fn every_branch_is_reached() {
        let mut seen = BTreeSet::new();
        for a in 1..=15u32 {
            for b in 1..=15u32 {
                seen.insert(p(FamilySpec::TiltedRect { m: a, n: b }).branch);
                seen.insert(p(FamilySpec::TiltedRectSmooth { m: a, n: b }).branch);
                seen.insert(p(FamilySpec::CylindricRect { m: 2 * a, n: b }).branch);
                seen.insert(p(FamilySpec::Parallelogram { k: a, n: b }).branch);
                seen.insert(p(FamilySpec::Quadrangle { m: a, n: b, a: 2, b: 2 }).branch);
            }
        }
        assert_eq!(seen, Branch::ALL.into_iter().collect());
    }

    #[test]
    fn k0_boundary_residues() {
        // r ∈ {0, 1, 2K, 2K+1} for K = 3 (period 8)
        let at = |n| p(FamilySpec::Parallelogram { k: 3, n });
        assert_eq!(at(8).branch, Branch::ParK0Sphere); // r = 0
        assert_eq!(at(9).branch, Branch::ParK0R1); // r = 1
        assert_eq!(at(14).branch, Branch::ParK0R0); // r = 2K
        assert_eq!(at(15).branch, Branch::ParK0Sphere); // r = 2K+1
        assert_eq!(at(7).branch, Branch::ParK0Sphere); // r = 7 ≡ 1, beyond 2K
        assert_eq!(at(4).branch, Branch::ParK0R1);
    }
}
