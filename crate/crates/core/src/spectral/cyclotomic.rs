//! Cyclotomic polynomials, cyclotomic factorization and predicted spectra.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::spectral::transfer::{fibonacci, TransferKind};
use crate::IntPoly;

/// `Φ_n`, by exact division of `x^n - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic(n: u32) -> IntPoly {
    assert!(n >= 1, "Φ_0 is undefined");
    let mut cache: BTreeMap<u32, IntPoly> = BTreeMap::new();
    cyclotomic_cached(n, &mut cache)
}

fn cyclotomic_cached(n: u32, cache: &mut BTreeMap<u32, IntPoly>) -> IntPoly {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut p = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi = cyclotomic_cached(d, cache);
        p = p.div_exact(&phi).expect("Φ_d divides x^n - 1");
    }
    cache.insert(n, p.clone());
    p
}

/// `p = x^{x_power} * Π Φ_n^{e_n} * remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub x_power: usize,
    pub factors: BTreeMap<u32, u32>,
    pub remainder: IntPoly,
}

impl Factorization {
    /// Multiplies the factors back together.
    pub fn expand(&self) -> IntPoly {
        let mut p = &IntPoly::monomial(BigInt::one(), self.x_power) * &self.remainder;
        for (&n, &e) in &self.factors {
            p = &p * &cyclotomic(n).pow(e);
        }
        p
    }

    /// Largest `n` with `Φ_n` present.
    pub fn max_index(&self) -> Option<u32> {
        self.factors.keys().next_back().copied()
    }

    /// Text form, e.g. `t^3 * Phi2 * Phi6^2 * rem(...)`, in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        match self.x_power {
            0 => {}
            1 => parts.push(var.to_string()),
            k => parts.push(format!("{var}^{k}")),
        }
        for (&n, &e) in &self.factors {
            parts.push(if e == 1 { format!("Phi{n}") } else { format!("Phi{n}^{e}") });
        }
        if !self.remainder.is_one() || parts.is_empty() {
            parts.push(format!("rem({})", self.remainder.to_descending_string(var)));
        }
        parts.join(" * ")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Strips the power of the variable, then divides out `Φ_n` for
/// `n = 1..=nmax` as often as each divides. With `nmax = None` every `Φ_n`
/// of degree at most `deg p` is tried (`φ(n) >= sqrt(n/2)`, so `n <= 2 deg²`).
pub fn cyclotomic_factorize(p: &IntPoly, nmax: Option<u32>) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let x_power = p.trailing_zeros();
    let mut rest = p.shift_down(x_power);
    let d = p.degree().unwrap_or(0) as u32;
    let nmax = nmax.unwrap_or(2 * d * d + 2);
    let mut factors = BTreeMap::new();
    let mut cache = BTreeMap::new();
    for n in 1..=nmax {
        let left = rest.degree().unwrap_or(0) as u32;
        if left == 0 {
            break;
        }
        if totient(n) > left {
            continue;
        }
        let phi = cyclotomic_cached(n, &mut cache);
        let mut e = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.insert(n, e);
        }
    }
    Factorization { x_power, factors, remainder: rest }
}

/// Eigenvalue data read off a monic characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSummary {
    pub size: usize,
    pub zero_multiplicity: usize,
    pub cyclotomic: BTreeMap<u32, u32>,
    pub remainder: IntPoly,
}

impl SpectrumSummary {
    pub fn from_charpoly(p: &IntPoly) -> SpectrumSummary {
        let f = cyclotomic_factorize(p, None);
        SpectrumSummary {
            size: p.degree().unwrap_or(0),
            zero_multiplicity: f.x_power,
            cyclotomic: f.factors,
            remainder: f.remainder,
        }
    }

    /// Whether every eigenvalue is zero or a root of unity.
    pub fn all_roots_of_unity(&self) -> bool {
        self.remainder.degree() == Some(0)
    }
}

/// `x^z (x - 1)^a (x^2 + x + 1)^b` for `R_N` and `L_N`, with `n = ⌈N/3⌉`,
/// `z = d - 2^n`, `a = (2^n + 2(-1)^n)/3`, `b = (2^n - (-1)^n)/3`;
/// `x^d` when `N ≡ 1 (mod 3)`. Other kinds have no closed form.
pub fn predicted_charpoly(kind: TransferKind) -> Option<IntPoly> {
    let (n_param, d) = match kind {
        TransferKind::R(n) => (n, 1u128 << n.div_ceil(2)),
        TransferKind::L(n) => (n, fibonacci(n as usize + 1)?),
        _ => return None,
    };
    let d = usize::try_from(d).ok()?;
    let x = |k: usize| IntPoly::monomial(BigInt::one(), k);
    if n_param % 3 == 1 {
        return Some(x(d));
    }
    let n = n_param.div_ceil(3);
    let two_n = 1i64 << n;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let a = ((two_n + 2 * sign) / 3) as u32;
    let b = ((two_n - sign) / 3) as u32;
    let z = d - two_n as usize;
    let p = &x(z) * &IntPoly::from_i64(&[-1, 1]).pow(a);
    Some(&p * &IntPoly::from_i64(&[1, 1, 1]).pow(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        for n in 1..40u32 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one());
        }
    }

    #[test]
    fn totients() {
        let want = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, &w) in (1..=12).zip(&want) {
            assert_eq!(totient(n), w);
            assert_eq!(cyclotomic(n).degree().unwrap() as u32, w);
        }
    }

    #[test]
    fn factorizations() {
        let f = cyclotomic_factorize(&IntPoly::from_i64(&[1, -1, 1]), None);
        assert_eq!(f.factors, BTreeMap::from([(6, 1)]));
        assert!(f.remainder.is_one());
        assert_eq!(f.to_string(), "Phi6");

        let one_minus = |k| IntPoly::one_plus(-1, k);
        let p4 = &(&IntPoly::from_i64(&[1, -1, 1]) * &one_minus(2)) * &one_minus(4);
        let f = cyclotomic_factorize(&p4, None);
        assert_eq!(f.factors, BTreeMap::from([(1, 2), (2, 2), (4, 1), (6, 1)]));
        assert!(f.remainder.is_one());
        assert_eq!(f.expand(), p4);

        let f = cyclotomic_factorize(&IntPoly::from_i64(&[0, 0, 0, 1, 1]), None);
        assert_eq!((f.x_power, f.factors.clone()), (3, BTreeMap::from([(2, 1)])));
        assert_eq!(f.to_string(), "t^3 * Phi2");

        let f = cyclotomic_factorize(&IntPoly::from_i64(&[0, 0, 0, 2, 0, 3]), None);
        assert_eq!(f.to_string(), "t^3 * rem(3t^2 + 2)");
        assert_eq!(cyclotomic_factorize(&IntPoly::one(), None).to_string(), "rem(1)");
    }

    #[test]
    fn predicted_spectra() {
        let x = |k| IntPoly::monomial(BigInt::one(), k);
        assert_eq!(predicted_charpoly(TransferKind::R(4)), Some(x(4)));
        assert_eq!(predicted_charpoly(TransferKind::R(2)), Some(IntPoly::from_i64(&[1, 1, 1])));
        assert_eq!(predicted_charpoly(TransferKind::L(2)), Some(IntPoly::from_i64(&[0, 1, 1, 1])));
        assert_eq!(predicted_charpoly(TransferKind::O(2)), None);
        for n in 1..=12 {
            let p = predicted_charpoly(TransferKind::L(n)).unwrap();
            assert_eq!(p.degree().unwrap() as u128, fibonacci(n as usize + 1).unwrap());
        }
    }

    #[test]
    fn summary_counts_add_up() {
        let p = predicted_charpoly(TransferKind::R(9)).unwrap();
        let s = SpectrumSummary::from_charpoly(&p);
        let deg: usize = s.cyclotomic.iter().map(|(&n, &e)| e as usize * cyclotomic(n).degree().unwrap()).sum();
        assert_eq!(s.size, s.zero_multiplicity + deg + s.remainder.degree().unwrap());
        assert!(s.all_roots_of_unity());
        assert_eq!(s.cyclotomic, BTreeMap::from([(1, 2), (3, 3)]));
    }
}
