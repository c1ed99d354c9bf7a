//! Exact characteristic polynomials.
//!
//! Two independent algorithms: Berkowitz (division free, any commutative
//! ring, O(n^4)) and a multi-modular route for Gaussian-integer matrices
//! (Hessenberg reduction over `F_p` for primes `p ≡ 1 mod 4`, both
//! embeddings `i -> ±sqrt(-1)`, Chinese remaindering under a Hadamard
//! bound, O(n^3) per prime).

use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectral::matrix::Matrix;
use crate::spectral::poly::Poly;
use crate::{GaussInt, GaussMatrix, GaussPoly, IntPoly};

/// Matrices up to this size go through Berkowitz under [`CharPolyMethod::Auto`].
pub const BERKOWITZ_MAX: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharPolyMethod {
    Auto,
    Berkowitz,
    Modular,
}

/// Monic `det(x I - m)` by the Berkowitz algorithm.
pub fn berkowitz<T: Clone + Num + Neg<Output = T>>(m: &Matrix<T>) -> Result<Poly<T>> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Poly::one());
    }
    // desc[k] = coefficient of x^{size-k} for the leading principal submatrix
    let mut desc = vec![T::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // A_{r+1} = [[A_r, c], [row, a]]
        let a = m.get(r, r).clone();
        let row: Vec<T> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vec<T> = (0..r).map(|i| m.get(i, r).clone()).collect();
        // items = [1, -a, -row·c, -row·A·c, ..., -row·A^{r-1}·c]
        let mut items = vec![T::one(), -a];
        for step in 0..r {
            let dot = row.iter().zip(&col).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            items.push(-dot);
            if step + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + m.get(i, j).clone() * col[j].clone()))
                    .collect();
            }
        }
        // Toeplitz (r+2)x(r+1) lower-triangular product with desc
        let mut next = vec![T::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, d) in desc.iter().enumerate().take(i + 1) {
                if i - j < items.len() {
                    *out = out.clone() + items[i - j].clone() * d.clone();
                }
            }
        }
        desc = next;
    }
    desc.reverse();
    Ok(Poly::new(desc))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≡ 1 (mod 4)` below `2^62`, descending.
fn gaussian_primes() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 3; // ≡ 1 mod 4
    (0..).map(move |k| start - 4 * k).filter(|&p| is_prime_u64(p))
}

fn sqrt_minus_one(p: u64) -> u64 {
    (2..)
        .map(|g| pow_mod(g, (p - 1) / 4, p))
        .find(|&r| mul_mod(r, r, p) == p - 1)
        .expect("p ≡ 1 mod 4 has a square root of -1")
}

/// Ascending coefficients of the monic characteristic polynomial of `a`
/// (row-major `n x n`, entries reduced mod `p`).
fn charpoly_mod(mut a: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    // similarity reduction to upper Hessenberg form
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| a[at(i, m - 1)] != 0) else { continue };
        if piv != m {
            for j in 0..n {
                a.swap(at(piv, j), at(m, j));
            }
            for i in 0..n {
                a.swap(at(i, piv), at(i, m));
            }
        }
        let inv = inv_mod(a[at(m, m - 1)], p);
        for i in m + 1..n {
            let u = mul_mod(a[at(i, m - 1)], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let s = mul_mod(u, a[at(m, j)], p);
                a[at(i, j)] = (a[at(i, j)] + p - s) % p;
            }
            for r in 0..n {
                let s = mul_mod(u, a[at(r, i)], p);
                a[at(r, m)] = (a[at(r, m)] + s) % p;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i,m} p_{m-i-1}, 1-indexed
    let h = |i: usize, j: usize| a[at(i - 1, j - 1)];
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut cur = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % p;
            cur[k] = (cur[k] + p - mul_mod(h(m, m), c, p)) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h(m - i + 1, m - i), p);
            let f = mul_mod(t, h(m - i, m), p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                cur[k] = (cur[k] + p - mul_mod(f, c, p)) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

/// Upper bound on `|e_k|` over all `k` for a Gaussian-integer matrix:
/// `C(n,k)` times the Hadamard product of the `k` largest row norms.
fn coefficient_bound(m: &GaussMatrix) -> BigUint {
    let n = m.rows();
    let mut norms: Vec<BigUint> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|z| (&z.re * &z.re + &z.im * &z.im).to_biguint().unwrap())
                .sum::<BigUint>()
        })
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let mut best = BigUint::one();
    let mut binom = BigUint::one();
    let mut prod = BigUint::one();
    for k in 1..=n {
        binom = binom * BigUint::from(n + 1 - k) / BigUint::from(k);
        prod *= &norms[k - 1];
        let sq = &binom * &binom * &prod;
        let b = sq.sqrt() + 1u32;
        if b > best {
            best = b;
        }
    }
    best
}

fn reduce(z: &BigInt, p: u64) -> u64 {
    z.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Incremental CRT: combines `x mod modulus` with `r mod p`.
fn crt_step(x: &mut BigUint, modulus: &BigUint, r: u64, p: u64) {
    let xp = (&*x % p).to_u64().unwrap();
    let mp = (modulus % p).to_u64().unwrap();
    let diff = (r + p - xp) % p;
    let k = mul_mod(diff, inv_mod(mp, p), p);
    *x += modulus * BigUint::from(k);
}

fn symmetric(x: &BigUint, modulus: &BigUint) -> BigInt {
    let half: BigUint = modulus >> 1;
    if x > &half {
        BigInt::from(x.clone()) - BigInt::from(modulus.clone())
    } else {
        BigInt::from(x.clone())
    }
}

/// Monic `det(x I - m)` by the multi-modular route.
pub fn char_poly_modular(m: &GaussMatrix) -> Result<GaussPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let target = coefficient_bound(m) * 2u32 + 1u32;
    let mut modulus = BigUint::one();
    let mut re = vec![BigUint::zero(); n + 1];
    let mut im = vec![BigUint::zero(); n + 1];
    for p in gaussian_primes() {
        if modulus > target {
            break;
        }
        let r = sqrt_minus_one(p);
        let embed = |sign: bool| -> Vec<u64> {
            (0..n * n)
                .map(|idx| {
                    let z = m.get(idx / n, idx % n);
                    let (a, b) = (reduce(&z.re, p), reduce(&z.im, p));
                    let br = mul_mod(b, r, p);
                    if sign {
                        (a + br) % p
                    } else {
                        (a + p - br) % p
                    }
                })
                .collect()
        };
        let plus = charpoly_mod(embed(true), n, p);
        let minus = charpoly_mod(embed(false), n, p);
        let inv2 = inv_mod(2, p);
        let inv2r = inv_mod(mul_mod(2, r, p), p);
        for k in 0..=n {
            let a = mul_mod((plus[k] + minus[k]) % p, inv2, p);
            let b = mul_mod((plus[k] + p - minus[k]) % p, inv2r, p);
            crt_step(&mut re[k], &modulus, a, p);
            crt_step(&mut im[k], &modulus, b, p);
        }
        modulus *= BigUint::from(p);
    }
    Ok(Poly::new(
        (0..=n).map(|k| Complex::new(symmetric(&re[k], &modulus), symmetric(&im[k], &modulus))).collect(),
    ))
}

/// Monic `det(x I - m)` with Gaussian-integer coefficients.
pub fn char_poly_gauss(m: &GaussMatrix, method: CharPolyMethod) -> Result<GaussPoly> {
    let n = m.require_square()?;
    match method {
        CharPolyMethod::Berkowitz => berkowitz(m),
        CharPolyMethod::Modular => char_poly_modular(m),
        CharPolyMethod::Auto if n <= BERKOWITZ_MAX => berkowitz(m),
        CharPolyMethod::Auto => char_poly_modular(m),
    }
}

/// Real part of a Gaussian polynomial, failing on the first coefficient
/// with a nonzero imaginary part.
pub fn to_int_poly(p: &GaussPoly) -> Result<IntPoly> {
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.im.is_zero() {
            return Err(Error::ImaginaryResidue { degree: k, value: format_gauss(c) });
        }
    }
    Ok(p.map(|c| c.re.clone()))
}

/// Monic `det(x I - m)`, required to have integer coefficients.
pub fn char_poly(m: &GaussMatrix) -> Result<IntPoly> {
    to_int_poly(&char_poly_gauss(m, CharPolyMethod::Auto)?)
}

/// `det(I - t m) = sum_k (-1)^k e_k t^k`, the reversal of [`char_poly`].
pub fn char_poly_rev(m: &GaussMatrix) -> Result<IntPoly> {
    let p = char_poly(m)?;
    Ok(p.reversed(m.rows()))
}

/// `a+bi` with both parts always present, e.g. `0-1i`.
pub fn format_gauss(z: &GaussInt) -> String {
    if z.im.is_negative() {
        format!("{}-{}i", z.re, -&z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussInt {
        Complex::new(BigInt::from(re), BigInt::from(im))
    }

    fn gm(rows: &[&[(i64, i64)]]) -> GaussMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| g(a, b)).collect()).collect())
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2) && is_prime_u64(97) && is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1) && !is_prime_u64(561) && !is_prime_u64(3215031751));
        let p = gaussian_primes().next().unwrap();
        assert_eq!(p % 4, 1);
        let r = sqrt_minus_one(p);
        assert_eq!(mul_mod(r, r, p), p - 1);
    }

    #[test]
    fn two_by_two() {
        let o1 = gm(&[&[(1, 0), (0, 1)], &[(0, 1), (0, 0)]]);
        let p = char_poly(&o1).unwrap();
        assert_eq!(p.to_string(), "x^2 - x + 1");
        assert_eq!(char_poly_rev(&o1).unwrap().to_ascending_string("t"), "1 - t + t^2");
        let r2 = gm(&[&[(0, 0), (0, 1)], &[(0, 1), (-1, 0)]]);
        assert_eq!(char_poly(&r2).unwrap().to_string(), "x^2 + x + 1");
        for method in [CharPolyMethod::Berkowitz, CharPolyMethod::Modular] {
            assert_eq!(to_int_poly(&char_poly_gauss(&o1, method).unwrap()).unwrap().to_string(), "x^2 - x + 1");
        }
    }

    #[test]
    fn zero_matrix() {
        let z = GaussMatrix::zeros(5, 5);
        assert_eq!(char_poly(&z).unwrap(), IntPoly::monomial(BigInt::one(), 5));
        assert!(char_poly_rev(&z).unwrap().is_one());
        assert!(to_int_poly(&char_poly_modular(&GaussMatrix::zeros(20, 20)).unwrap()).unwrap().trailing_zeros() == 20);
        assert!(char_poly(&GaussMatrix::zeros(0, 0)).unwrap().is_one());
    }

    #[test]
    fn imaginary_residue_is_reported() {
        let m = gm(&[&[(0, 1)]]);
        match char_poly(&m) {
            Err(Error::ImaginaryResidue { degree: 0, value }) => assert_eq!(value, "0-1i"),
            other => panic!("{other:?}"),
        }
        assert!(char_poly(&gm(&[&[(1, 0), (2, 0)]])).is_err());
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // companion of x^4 - 3x^3 + 2x - 7 (bottom row holds -c_k)
        let c = [-7i64, 2, 0, -3];
        let n = 4;
        let m = GaussMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j {
                g(1, 0)
            } else if i == n - 1 {
                g(-c[j], 0)
            } else {
                g(0, 0)
            }
        });
        let want = IntPoly::from_i64(&[-7, 2, 0, -3, 1]);
        assert_eq!(char_poly(&m).unwrap(), want);
        assert_eq!(to_int_poly(&char_poly_modular(&m).unwrap()).unwrap(), want);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn berkowitz_agrees_with_modular(n in 1usize..9, seed in prop::collection::vec((-3i64..4, -3i64..4), 81)) {
            let m = GaussMatrix::from_fn(n, n, |i, j| { let (a, b) = seed[i * 9 + j]; g(a, b) });
            let a = berkowitz(&m).unwrap();
            prop_assert_eq!(&a, &char_poly_modular(&m).unwrap());
            // trace and determinant
            let tr = m.trace().unwrap();
            prop_assert_eq!(a.coeff(n - 1), -tr);
            prop_assert!(a.leading().unwrap().is_one());
        }
    }
}
