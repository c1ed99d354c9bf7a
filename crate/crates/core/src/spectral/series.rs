//! Rational generating functions and their power series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::IntPoly;

/// `num / den` with `den(0) = 1`.
#[derive(Clone, Debug)]
pub struct RationalGF {
    num: IntPoly,
    den: IntPoly,
}

impl RationalGF {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if !den.coeff(0).is_one() {
            return Err(Error::Unsupported(format!(
                "denominator {} must have constant term 1",
                den.to_ascending_string("t")
            )));
        }
        Ok(RationalGF { num, den })
    }

    pub fn polynomial(p: IntPoly) -> Self {
        RationalGF { num: p, den: IntPoly::one() }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// Divides out `gcd(num, den)`, keeping `den(0) = 1`.
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let mut num = self.num.div_exact(&g).expect("gcd divides");
        let mut den = self.den.div_exact(&g).expect("gcd divides");
        // den(0) = 1 / g(0) and g(0) divides 1
        if den.coeff(0).is_negative() {
            num = -&num;
            den = -&den;
        }
        RationalGF { num, den }
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalGF { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalGF { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    /// Power series coefficients of degree `0..=order`.
    pub fn series(&self, order: usize) -> Vec<BigInt> {
        series_of_rational(self, order)
    }
}

impl PartialEq for RationalGF {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalGF {}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num.to_ascending_string("t"), self.den.to_ascending_string("t"))
    }
}

/// Coefficients of `t^0..=t^order`, by the recurrence `den * s = num`.
pub fn series_of_rational(gf: &RationalGF, order: usize) -> Vec<BigInt> {
    let den = gf.den.coeffs();
    let mut s: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut v = gf.num.coeff(n);
        for (k, d) in den.iter().enumerate().skip(1).take(n) {
            v -= d * &s[n - k];
        }
        s.push(v);
    }
    s
}

/// Minimal rational function reproducing `series` (Berlekamp–Massey over
/// the rationals).
///
/// Requires `series.len() >= 2 * maxdeg + 2`. Fails with
/// [`Error::FitInconclusive`] if the shortest recurrence is longer than
/// `maxdeg` or has not been confirmed by at least `L + 2` extra terms.
pub fn fit_linear_recurrence(series: &[BigInt], maxdeg: usize) -> Result<RationalGF> {
    if series.len() < 2 * maxdeg + 2 {
        return Err(Error::FitInconclusive(format!(
            "{} terms given, at least {} needed for degree {maxdeg}",
            series.len(),
            2 * maxdeg + 2
        )));
    }
    let s: Vec<BigRational> = series.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_discrepancy = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last_discrepancy;
        let old_c = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = old_c;
            last_discrepancy = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    if l > maxdeg || 2 * l + 2 > s.len() {
        return Err(Error::FitInconclusive(format!(
            "shortest recurrence has length {l}, beyond degree {maxdeg} or not confirmed by {} terms",
            s.len()
        )));
    }
    c.truncate(l + 1);
    let den: Option<Vec<BigInt>> = c.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect();
    let den = den.ok_or_else(|| Error::FitInconclusive("recurrence has non-integer coefficients".into()))?;
    let den = IntPoly::new(den);
    let num = (&den * &IntPoly::new(series.to_vec())).truncate(l);
    RationalGF::new(num, den).map(|g| g.reduced())
}
