//! Exact transfer-matrix identities: spectra, traces against counts, the
//! tabulated `det(I - t O_K)` rows, root-of-unity divisibility and
//! generating-function closed forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::count::alternating_number;
use crate::error::{Error, Result};
use crate::lattice::{build_graph, FamilySpec, GridGraph};
use crate::spectral::{
    build_transfer, char_poly, char_poly_rev, check_r_consistency, cyclotomic, cyclotomic_factorize,
    predicted_charpoly, tabulated_charpoly_rev, Label, RationalGF, TransferKind,
};
use crate::verifier::report::{CheckReport, CheckRow, Status};
use crate::{GaussInt, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityConfig {
    /// `R_N`, `L_N` spectra and `P_N P_N^T = R_N` for `N <= spectrum_max_n`.
    pub spectrum_max_n: u32,
    pub nilpotent_n: Vec<u32>,
    /// `tr R_N^k` against cylinder counts.
    pub trace_max_n: u32,
    pub trace_max_k: u32,
    /// `tr P_{2K}^N = tr O_K^N` against ordinary-cylinder counts.
    pub ocyl_max_k: u32,
    pub ocyl_max_n: u32,
    /// Table rows compared for `K <= table_max_k`.
    pub table_max_k: u32,
    pub divisibility_k: Vec<u32>,
    pub empty_gf_k: Vec<u32>,
    pub gf_order: usize,
    pub ord_rect_order: usize,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            spectrum_max_n: 10,
            nilpotent_n: vec![4, 7, 10],
            trace_max_n: 8,
            trace_max_k: 6,
            ocyl_max_k: 5,
            ocyl_max_n: 10,
            table_max_k: 7,
            divisibility_k: (2..=9).collect(),
            empty_gf_k: vec![4, 5, 6, 7],
            gf_order: 40,
            ord_rect_order: 20,
        }
    }
}

impl IdentityConfig {
    /// Default plus the `K = 8..=10` table rows.
    pub fn extended() -> Self {
        IdentityConfig { table_max_k: 10, ..Self::default() }
    }
}

fn x_pow(k: usize) -> IntPoly {
    IntPoly::monomial(BigInt::one(), k)
}

fn real_parts(s: &[GaussInt]) -> Result<Vec<BigInt>> {
    s.iter()
        .enumerate()
        .map(|(d, z)| {
            if z.im.is_zero() {
                Ok(z.re.clone())
            } else {
                Err(Error::ImaginaryResidue { degree: d, value: format!("{z}") })
            }
        })
        .collect()
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

fn skip(family: &str, params: impl Into<String>, method: &str, e: impl std::fmt::Display) -> CheckRow {
    CheckRow::skipped(family, params, method, e)
}

fn char_poly_of(kind: TransferKind, caps: &Caps) -> Result<IntPoly> {
    char_poly(&build_transfer(kind, caps)?.matrix)
}

pub fn check_spectra(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    for n in 1..=cfg.spectrum_max_n {
        let p = format!("N={n}");
        out.push(match check_r_consistency(n, caps) {
            Ok(ok) => CheckRow::compare("R", p.clone(), "P*P^T", if ok { "equal" } else { "differ" }, "equal"),
            Err(e) => skip("R", p.clone(), "P*P^T", e),
        });
        for kind in [TransferKind::R(n), TransferKind::L(n)] {
            let want = predicted_charpoly(kind).expect("R and L have closed forms");
            out.push(match char_poly_of(kind, caps) {
                Ok(got) => CheckRow::compare(
                    kind.letter().to_string(),
                    p.clone(),
                    "charpoly",
                    cyclotomic_factorize(&got, None).render("x"),
                    cyclotomic_factorize(&want, None).render("x"),
                ),
                Err(e) => skip(&kind.letter().to_string(), p.clone(), "charpoly", e),
            });
        }
    }
    for &n in &cfg.nilpotent_n {
        for kind in [TransferKind::R(n), TransferKind::L(n)] {
            let p = format!("N={n}");
            let letter = kind.letter().to_string();
            out.push(match char_poly_of(kind, caps) {
                Ok(got) => {
                    let d = got.degree().unwrap_or(0);
                    CheckRow::compare(letter, p, "nilpotent", got.to_descending_string("x"), x_pow(d).to_descending_string("x"))
                }
                Err(e) => skip(&letter, p, "nilpotent", e),
            });
        }
    }
    report
}

pub fn check_cylinder_traces(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    for n in 1..=cfg.trace_max_n {
        let traces = build_transfer(TransferKind::R(n), caps).and_then(|t| t.pow_traces(cfg.trace_max_k as usize));
        for k in 1..=cfg.trace_max_k {
            let p = format!("N={n} k={k}");
            let spec = FamilySpec::CylindricRect { m: 2 * k, n };
            let z = build_graph(spec).and_then(|g| alternating_number(&g, caps));
            let tr = traces.as_ref().map_err(Clone::clone).and_then(|t| real_parts(&t[k as usize..=k as usize]));
            out.push(match (tr, z) {
                (Ok(tr), Ok(z)) => CheckRow::compare("R", p, "trace=cyl-rect", &tr[0], z),
                (Err(e), _) | (_, Err(e)) => skip("R", p, "trace=cyl-rect", e),
            });
        }
    }
    report
}

pub fn check_ordinary_cylinder_traces(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    let nmax = cfg.ocyl_max_n as usize;
    for k in 1..=cfg.ocyl_max_k {
        let trace_of = |kind| build_transfer(kind, caps).and_then(|t| t.pow_traces(nmax)).and_then(|t| real_parts(&t));
        let (tp, to) = (trace_of(TransferKind::P(2 * k)), trace_of(TransferKind::O(k)));
        for n in 1..=cfg.ocyl_max_n {
            let p = format!("K={k} N={n}");
            // N = 1 loops every vertex onto itself, leaving only the empty set
            let z = if n == 1 {
                Ok(BigInt::one())
            } else {
                build_graph(FamilySpec::OrdinaryCylinder { k, n }).and_then(|g| alternating_number(&g, caps))
            };
            for (letter, tr) in [("P", &tp), ("O", &to)] {
                out.push(match (tr, &z) {
                    (Ok(tr), Ok(z)) => CheckRow::compare(letter, p.clone(), "trace=ord-cyl", &tr[n as usize], z),
                    (Err(e), _) | (_, Err(e)) => skip(letter, p.clone(), "trace=ord-cyl", e),
                });
            }
        }
    }
    report
}

pub fn check_product_table(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    for k in 1..=cfg.table_max_k {
        let p = format!("K={k}");
        let Some(want) = tabulated_charpoly_rev(k) else {
            out.push(skip("O", p, "table", "no table row"));
            continue;
        };
        let got = match build_transfer(TransferKind::O(k), caps).and_then(|t| char_poly_rev(&t.matrix)) {
            Ok(g) => g,
            Err(e) => {
                out.push(skip("O", p, "table", e));
                continue;
            }
        };
        out.push(CheckRow::compare("O", p.clone(), "table", got.to_ascending_string("t"), want.to_ascending_string("t")));
        // dividing out the tabulated product leaves 1, and the cyclotomic
        // factorization leaves a unit
        let quotient = got.div_exact(&want);
        let f = cyclotomic_factorize(&got, None);
        let unit = f.remainder.degree() == Some(0) && f.remainder.coeff(0).abs().is_one();
        let value = format!(
            "quotient={} remainder={} max=Phi{}",
            quotient.as_ref().map_or("none".to_string(), |q| q.to_ascending_string("t")),
            if unit { "unit" } else { "nonunit" },
            f.max_index().unwrap_or(0)
        );
        let expected = format!("quotient=1 remainder=unit max=Phi{}", f.max_index().unwrap_or(0));
        out.push(CheckRow::compare("O", p, "factors", value, expected));
    }
    report
}

/// Cyclotomic indices whose roots must be eigenvalues of `O_K`.
pub fn required_cyclotomics(k: u32) -> Vec<u32> {
    let divisors = |n: u32| (1..=n).filter(move |d| n % d == 0);
    match k % 3 {
        1 => vec![6],
        2 => divisors(2 * k).filter(|&d| d != 2).collect(),
        _ => divisors(2 * k + 2).filter(|&d| d != 2 && !(k % 2 == 1 && d == 4)).collect(),
    }
}

pub fn check_divisibility(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    for &k in &cfg.divisibility_k {
        let p = format!("K={k}");
        let need = required_cyclotomics(k);
        let names: Vec<String> = need.iter().map(|n| format!("Phi{n}")).collect();
        let want = format!("{} | charpoly", names.join("*"));
        out.push(match char_poly_of(TransferKind::O(k), caps) {
            Ok(cp) => {
                let prod = need.iter().fold(IntPoly::one(), |acc, &n| &acc * &cyclotomic(n));
                let got = if prod.divides(&cp) { want.clone() } else { format!("{} does not divide charpoly", names.join("*")) };
                CheckRow::compare("O", p, "roots-of-unity", got, want)
            }
            Err(e) => skip("O", p, "roots-of-unity", e),
        });
    }
    report
}

fn one_minus(k: usize) -> IntPoly {
    IntPoly::one_plus(-1, k)
}

/// `(1 - t P_{2K})^{-1}(∅, ∅)` in closed form, by the residue of `K`.
pub fn empty_border_gf(k: u32) -> RationalGF {
    let k = k as usize;
    let t = x_pow(1);
    let gf = match k % 3 {
        1 => RationalGF::new(IntPoly::one(), IntPoly::from_i64(&[1, -1, 1])),
        2 => {
            // 1 + t/(1 - t^{2K}) * (1 - t^{2K+2})/(1 - t^3)
            let poly = one_minus(2 * k + 2).div_exact(&one_minus(3)).expect("3 divides 2K+2");
            Ok(RationalGF::polynomial(IntPoly::one()).add(&RationalGF::new(&t * &poly, one_minus(2 * k)).expect("den(0)=1")))
        }
        _ => {
            // (1 + t + t^3 (1 - t^{2K})/(1 - t^3)) / (1 - t^{2K+2})
            let poly = one_minus(2 * k).div_exact(&one_minus(3)).expect("3 divides 2K");
            let num = &IntPoly::from_i64(&[1, 1]) + &(&x_pow(3) * &poly);
            RationalGF::new(num, one_minus(2 * k + 2))
        }
    };
    gf.expect("denominators have constant term 1")
}

/// Known `G_{C,C}` for the two border cases, `K = 4, C = {2,3}` and
/// `K = 5, C = {3,4}`.
pub fn border_gf(k: u32) -> Option<(Label, RationalGF)> {
    match k {
        4 => {
            let num = IntPoly::from_i64(&[1, 0, 1, 1]);
            let den = &(&IntPoly::from_i64(&[1, 1]) * &one_minus(4)) * &IntPoly::from_i64(&[1, -1, 1]);
            Some((Label(0b110), RationalGF::new(num, den).ok()?))
        }
        5 => {
            let den = &one_minus(5) * &IntPoly::one_plus(1, 4);
            Some((Label(0b1100), RationalGF::new(IntPoly::one(), den).ok()?))
        }
        _ => None,
    }
}

pub fn check_generating_functions(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new();
    let out = &mut report;
    let order = cfg.gf_order;
    for &k in &cfg.empty_gf_k {
        let p = format!("K={k} C=D={{}}");
        let want = empty_border_gf(k).series(order);
        let got = build_transfer(TransferKind::P(2 * k), caps)
            .and_then(|t| t.resolvent_series(Label(0), Label(0), order))
            .and_then(|s| real_parts(&s));
        out.push(match got {
            Ok(g) => CheckRow::compare("P", p, "resolvent-gf", join(&g), join(&want)),
            Err(e) => skip("P", p, "resolvent-gf", e),
        });
    }
    for k in [4, 5] {
        let (c, gf) = border_gf(k).expect("known border");
        let p = format!("K={k} C=D={c}");
        let want = gf.series(order);
        let t = match build_transfer(TransferKind::P(2 * k), caps) {
            Ok(t) => t,
            Err(e) => {
                out.push(skip("P", p, "border-gf", e));
                continue;
            }
        };
        let mut matched = Vec::new();
        let mut first_miss = None;
        for (name, label) in [("ascending", c), ("descending", c.mirrored(k))] {
            match t.resolvent_series(label, label, order).and_then(|s| real_parts(&s)) {
                Ok(s) if s == want => matched.push(name),
                Ok(s) => first_miss = first_miss.or(Some(join(&s))),
                Err(e) => first_miss = first_miss.or(Some(e.to_string())),
            }
        }
        let row = if matched.is_empty() {
            CheckRow::with_status(
                "P",
                p,
                "border-gf",
                first_miss.unwrap_or_default(),
                Status::Fail { expected: join(&want) },
            )
        } else {
            CheckRow::with_status("P", p, "border-gf", format!("match({})", matched.join(",")), Status::Pass)
        };
        out.push(row);
    }
    report
}

/// `Z(OrdinaryRect(4, N))` for `N = 0..=order`; `N = 0` is the empty graph.
pub fn ordinary_rect_series(order: usize, caps: &Caps) -> Result<Vec<BigInt>> {
    (0..=order as u32)
        .map(|n| {
            if n == 0 {
                alternating_number(&GridGraph::empty(), caps)
            } else {
                build_graph(FamilySpec::OrdinaryRect { k: 4, n }).and_then(|g| alternating_number(&g, caps))
            }
        })
        .collect()
}

/// `(1 + t^4) / ((1 - t^2)(1 + t^3))`.
pub fn ordinary_rect_gf() -> RationalGF {
    RationalGF::new(IntPoly::one_plus(1, 4), &one_minus(2) * &IntPoly::one_plus(1, 3)).expect("den(0)=1")
}

pub fn check_ordinary_rect_series(order: usize, caps: &Caps) -> CheckRow {
    let p = format!("4 0..{order}");
    match ordinary_rect_series(order, caps) {
        Ok(s) => CheckRow::compare("ord-rect", p, "series-gf", join(&s), join(&ordinary_rect_gf().series(order))),
        Err(e) => skip("ord-rect", p, "series-gf", e),
    }
}

/// Every identity group in a fixed order.
pub fn check_identities(cfg: &IdentityConfig, caps: &Caps) -> CheckReport {
    let mut out = CheckReport::new();
    out.extend(check_spectra(cfg, caps));
    out.extend(check_cylinder_traces(cfg, caps));
    out.extend(check_ordinary_cylinder_traces(cfg, caps));
    out.extend(check_product_table(cfg, caps));
    out.extend(check_divisibility(cfg, caps));
    out.extend(check_generating_functions(cfg, caps));
    out.push(check_ordinary_rect_series(cfg.ord_rect_order, caps));
    out
}

/// Multiplicity of each `Φ_n` in `det(I - t O_K)`, for reporting.
pub fn observed_cyclotomics(k: u32, caps: &Caps) -> Result<BTreeMap<u32, u32>> {
    let p = char_poly_rev(&build_transfer(TransferKind::O(k), caps)?.matrix)?;
    Ok(cyclotomic_factorize(&p, None).factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_sets() {
        assert_eq!(required_cyclotomics(4), vec![6]);
        assert_eq!(required_cyclotomics(2), vec![1, 4]);
        assert_eq!(required_cyclotomics(3), vec![1, 8]);
        assert_eq!(required_cyclotomics(6), vec![1, 7, 14]);
    }

    #[test]
    fn closed_forms_start_like_counts() {
        // 1 + Σ Z_P(K,N) t^{N+1} with Z_P(K,0) = 1
        for k in [4, 5, 6] {
            let s = empty_border_gf(k).series(8);
            assert_eq!(s[0], BigInt::one());
            assert_eq!(s[1], BigInt::one());
            for n in 1..=7u32 {
                let g = build_graph(FamilySpec::Parallelogram { k, n }).unwrap();
                assert_eq!(s[n as usize + 1], alternating_number(&g, &Caps::default()).unwrap(), "K={k} N={n}");
            }
        }
    }

    #[test]
    fn ordinary_rect_gf_matches_counts() {
        let row = check_ordinary_rect_series(12, &Caps::default());
        assert_eq!(row.status, Status::Pass, "{row:?}");
    }

    #[test]
    fn small_identity_run() {
        let cfg = IdentityConfig {
            spectrum_max_n: 5,
            nilpotent_n: vec![4],
            trace_max_n: 4,
            trace_max_k: 3,
            ocyl_max_k: 2,
            ocyl_max_n: 5,
            table_max_k: 4,
            divisibility_k: vec![2, 3, 4],
            empty_gf_k: vec![4, 5],
            gf_order: 20,
            ord_rect_order: 8,
        };
        let rep = check_identities(&cfg, &Caps::default());
        assert!(!rep.has_failures(), "{}", rep.to_text());
        assert_eq!(rep.summary().skipped, 0);
        assert!(rep.rows.iter().any(|r| r.method == "border-gf" && r.value == "match(ascending,descending)"));
    }
}
