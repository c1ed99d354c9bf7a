//! Tabulated `det(I - t O_K)` for `K = 1..=10`, as products of
//! `(1 ± t^e)^{±1}`. Each row is split into the part explained by the
//! partial-spectrum result (`explained`) and the rest (`extra`).

use crate::IntPoly;

/// `(1 + sign * t^exp)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub sign: i8,
    pub exp: usize,
    pub power: i32,
}

const fn f(sign: i8, exp: usize, power: i32) -> Binomial {
    Binomial { sign, exp, power }
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub k: u32,
    pub explained: &'static [Binomial],
    pub extra: &'static [Binomial],
}

pub const CHARPOLY_TABLE: [TableRow; 10] = [
    TableRow { k: 1, explained: &[f(1, 3, 1), f(1, 1, -1)], extra: &[] },
    TableRow { k: 2, explained: &[f(-1, 4, 1), f(1, 1, -1)], extra: &[] },
    TableRow { k: 3, explained: &[f(-1, 8, 1), f(1, 1, -1), f(1, 2, -1)], extra: &[] },
    TableRow { k: 4, explained: &[f(1, 3, 1), f(1, 1, -1)], extra: &[f(-1, 2, 1), f(-1, 4, 1)] },
    TableRow { k: 5, explained: &[f(-1, 10, 1), f(1, 1, -1)], extra: &[f(1, 4, 1)] },
    TableRow { k: 6, explained: &[f(-1, 14, 1), f(1, 1, -1)], extra: &[f(-1, 4, 2)] },
    TableRow {
        k: 7,
        explained: &[f(1, 3, 1), f(1, 1, -1)],
        extra: &[f(1, 4, 1), f(-1, 12, 1), f(-1, 18, 1), f(1, 2, -1)],
    },
    TableRow {
        k: 8,
        explained: &[f(-1, 16, 1), f(1, 1, -1)],
        extra: &[f(-1, 2, 1), f(-1, 4, 2), f(1, 8, 1), f(-1, 22, 1)],
    },
    TableRow {
        k: 9,
        explained: &[f(-1, 20, 1), f(1, 1, -1), f(1, 2, -1)],
        extra: &[f(1, 4, 1), f(-1, 14, 1), f(1, 10, 1), f(-1, 20, 1), f(-1, 26, 1), f(-1, 2, -1)],
    },
    TableRow {
        k: 10,
        explained: &[f(1, 3, 1), f(1, 1, -1)],
        extra: &[f(-1, 4, 2), f(-1, 18, 2), f(-1, 24, 3), f(-1, 30, 1), f(1, 4, -1)],
    },
];

/// Multiplies the positive powers, then divides by the negative ones.
pub fn product(factors: &[Binomial]) -> IntPoly {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for b in factors {
        let p = IntPoly::one_plus(b.sign, b.exp).pow(b.power.unsigned_abs());
        if b.power >= 0 {
            num = &num * &p;
        } else {
            den = &den * &p;
        }
    }
    num.div_exact(&den).expect("table row is a polynomial")
}

impl TableRow {
    pub fn polynomial(&self) -> IntPoly {
        let all: Vec<Binomial> = self.explained.iter().chain(self.extra).copied().collect();
        product(&all)
    }
}

/// The tabulated row for `k`, if `1 <= k <= 10`.
pub fn tabulated_charpoly_rev(k: u32) -> Option<IntPoly> {
    CHARPOLY_TABLE.iter().find(|r| r.k == k).map(TableRow::polynomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::transfer::fibonacci;
    use num_traits::One;

    #[test]
    fn degrees_match_matrix_sizes() {
        for row in &CHARPOLY_TABLE {
            let p = row.polynomial();
            assert_eq!(p.degree().unwrap() as u128, fibonacci(row.k as usize + 1).unwrap(), "K={}", row.k);
            assert!(p.coeff(0).is_one());
        }
    }

    #[test]
    fn first_rows() {
        assert_eq!(tabulated_charpoly_rev(1).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(tabulated_charpoly_rev(2).unwrap(), IntPoly::from_i64(&[1, -1, 1, -1]));
        assert!(tabulated_charpoly_rev(11).is_none());
    }
}
