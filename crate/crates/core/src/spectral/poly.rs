//! Dense univariate polynomials over an exact ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 + s * x^k` for `s = ±1`, the building block of most closed forms.
    pub fn one_plus(sign: i8, k: usize) -> Self
    where
        T: Neg<Output = T>,
    {
        let c = if sign < 0 { -T::one() } else { T::one() };
        Self::one() + Self::monomial(c, k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplicity of the root `0`.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`, dropping the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Coefficients reversed within degree `d`: `x^d * p(1/x)`.
    pub fn reversed(&self, d: usize) -> Self {
        let mut v: Vec<T> = (0..=d).map(|k| self.coeff(k)).collect();
        v.reverse();
        Self::new(v)
    }

    /// Keeps the terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Quotient and remainder when every leading-coefficient division is
    /// exact; `None` when some step would leave the ring or `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if !(top.clone() % lead.clone()).is_zero() {
                return None;
            }
            let f = top / lead.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - f.clone() * c.clone();
            }
            q[k] = f;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d)? {
            (q, r) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Num> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Clone + Num> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Clone + Num> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Clone + Num> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Poly<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let mut p = Self::new(self.coeffs.iter().map(|a| a / &c).collect());
        if p.leading().is_some_and(Signed::is_negative) {
            p = -&p;
        }
        p
    }

    /// Greatest common divisor in `Z[x]` with positive leading coefficient
    /// (primitive pseudo-remainder sequence).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        let content = self.content().gcd(&other.content());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            return a;
        }
        a.scale(&content)
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.coeffs[dd].clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.coeffs[rd].clone();
            r = &r.scale(&lead) - &(d * &Self::monomial(top, rd - dd));
        }
        r
    }

    /// Terms from the highest degree down, e.g. `x^2 - x + 1`.
    pub fn to_descending_string(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().enumerate().rev(), var)
    }

    /// Terms from the constant up, e.g. `1 - t + t^2`.
    pub fn to_ascending_string(&self, var: &str) -> String {
        format_terms(self.coeffs.iter().enumerate(), var)
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (usize, &'a BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in terms.filter(|(_, c)| !c.is_zero()) {
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_descending_string("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    #[test]
    fn formatting() {
        let p = P::from_i64(&[1, -1, 1]);
        assert_eq!(p.to_string(), "x^2 - x + 1");
        assert_eq!(p.to_ascending_string("t"), "1 - t + t^2");
        assert_eq!(P::from_i64(&[0, -3, 0, 2]).to_string(), "2x^3 - 3x");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::from_i64(&[-1]).to_string(), "-1");
    }

    #[test]
    fn division() {
        let a = P::from_i64(&[1, 1]);
        let b = P::from_i64(&[1, -1, 1]);
        let p = &a * &b;
        assert_eq!(p, P::from_i64(&[1, 0, 0, 1]));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert!(P::from_i64(&[1, 0, 1]).div_exact(&a).is_none());
        assert!(P::from_i64(&[1, 2]).div_rem(&P::from_i64(&[0, 2])).is_some());
        assert!(P::from_i64(&[1, 1]).div_rem(&P::from_i64(&[0, 2])).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let f = P::from_i64(&[1, -1, 1]);
        let a = &f * &P::from_i64(&[2, 1]);
        let b = &f * &P::from_i64(&[-1, 0, 3]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(P::from_i64(&[2, 4]).gcd(&P::from_i64(&[6])), P::from_i64(&[2]));
    }

    #[test]
    fn reversal() {
        let p = P::from_i64(&[0, 1, 2]);
        assert_eq!(p.reversed(3), P::from_i64(&[0, 2, 1]));
        assert_eq!(p.trailing_zeros(), 1);
        assert_eq!(p.shift_down(1), P::from_i64(&[1, 2]));
    }

    proptest! {
        #[test]
        fn product_divides_back(a in prop::collection::vec(-5i64..5, 0..6), b in prop::collection::vec(-5i64..5, 1..6)) {
            let (a, b) = (P::from_i64(&a), P::from_i64(&b));
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
            let x = BigInt::from(3);
            prop_assert_eq!(p.eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
