//! The transfer matrices `P_N`, `R_N`, `L_N` and `O_K`.
//!
//! Rows and columns are labelled by subsets of `{1, 2, ...}` stored as
//! bitmasks (bit `b` is element `b + 1`), listed in ascending binary order.
//! Every nonzero entry is `i^{|C|+|D|}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::spectral::charpoly::format_gauss;
use crate::spectral::matrix::{mat_pow_trace, resolvent_series_at, Matrix};
use crate::{GaussInt, GaussMatrix};

/// A subset of `{1, ..., 64}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u64);

impl Label {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }

    /// `{k + 1 - c : c ∈ self}`, the same set read from the other end of
    /// `{1..k}`.
    pub fn mirrored(self, k: u32) -> Label {
        Label(self.elements().fold(0, |m, c| m | 1 << (k - c)))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
        let mut mask = 0u64;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let e: u32 = tok.parse().map_err(|_| Error::UnknownLabel(s.to_string()))?;
            if !(1..=64).contains(&e) {
                return Err(Error::UnknownLabel(s.to_string()));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Label(mask))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransferKind {
    /// `P_N`: subsets of `{1..⌈N/2⌉}` by subsets of `{1..⌊N/2⌋}`.
    P(u32),
    /// `R_N = P_N P_N^T`, built directly.
    R(u32),
    /// `L_N`: independent sets of the `N`-path, `C ∩ (D+1) = ∅`.
    L(u32),
    /// `O_K`: independent sets of the `K`-path, `C ∩ D = ∅`.
    O(u32),
}

impl TransferKind {
    pub fn parameter(self) -> u32 {
        match self {
            TransferKind::P(n) | TransferKind::R(n) | TransferKind::L(n) | TransferKind::O(n) => n,
        }
    }

    pub fn letter(self) -> char {
        match self {
            TransferKind::P(_) => 'P',
            TransferKind::R(_) => 'R',
            TransferKind::L(_) => 'L',
            TransferKind::O(_) => 'O',
        }
    }

    /// Number of rows, `None` on overflow.
    pub fn size(self) -> Option<u128> {
        match self {
            TransferKind::P(n) | TransferKind::R(n) => 1u128.checked_shl(n.div_ceil(2)),
            TransferKind::L(n) | TransferKind::O(n) => fibonacci(n as usize + 1),
        }
    }
}

impl fmt::Display for TransferKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.letter(), self.parameter())
    }
}

/// `F_n` with `F_0 = F_1 = 1`; `None` on overflow.
pub fn fibonacci(n: usize) -> Option<u128> {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 0..n {
        let c = a.checked_add(b)?;
        a = b;
        b = c;
    }
    Some(a)
}

/// A transfer matrix together with its row and column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub kind: TransferKind,
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub matrix: GaussMatrix,
}

/// `i^k`.
pub fn i_pow(k: u32) -> GaussInt {
    let (re, im) = match k % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    Complex::new(BigInt::from(re), BigInt::from(im))
}

fn all_subsets(k: u32) -> Vec<Label> {
    (0..1u64 << k).map(Label).collect()
}

fn path_independent_sets(k: u32) -> Vec<Label> {
    (0..1u64 << k).filter(|m| m & (m >> 1) == 0).map(Label).collect()
}

fn labelled(kind: TransferKind, rows: Vec<Label>, cols: Vec<Label>, rule: impl Fn(u64, u64) -> bool) -> TransferMatrix {
    let matrix = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        let (c, d) = (rows[i], cols[j]);
        if rule(c.0, d.0) {
            i_pow(c.len() + d.len())
        } else {
            GaussInt::zero()
        }
    });
    TransferMatrix { kind, rows, cols, matrix }
}

/// Builds the exact matrix, refusing sizes above `caps.matrix_size`.
pub fn build_transfer(kind: TransferKind, caps: &Caps) -> Result<TransferMatrix> {
    let n = kind.parameter();
    if n == 0 {
        return Err(Error::InvalidFamily(format!("{kind}: parameter must be at least 1")));
    }
    let size = kind.size().unwrap_or(u128::MAX);
    if size > caps.matrix_size as u128 {
        return Err(Error::MatrixSize {
            kind: kind.to_string(),
            size: size.min(usize::MAX as u128) as usize,
            cap: caps.matrix_size,
        });
    }
    let (hi, lo) = (n.div_ceil(2), n / 2);
    Ok(match kind {
        TransferKind::P(_) => labelled(kind, all_subsets(hi), all_subsets(lo), |c, d| c & d == 0 && c & (d << 1) == 0),
        TransferKind::R(_) => {
            let full = (1u64 << lo) - 1;
            labelled(kind, all_subsets(hi), all_subsets(hi), move |c, d| full & !(c | d | c >> 1 | d >> 1) == 0)
        }
        TransferKind::L(_) => {
            let s = path_independent_sets(n);
            labelled(kind, s.clone(), s, |c, d| c & (d << 1) == 0)
        }
        TransferKind::O(_) => {
            let s = path_independent_sets(n);
            labelled(kind, s.clone(), s, |c, d| c & d == 0)
        }
    })
}

/// Whether `P_N P_N^T` equals the directly built `R_N`.
pub fn check_r_consistency(n: u32, caps: &Caps) -> Result<bool> {
    let p = build_transfer(TransferKind::P(n), caps)?;
    let r = build_transfer(TransferKind::R(n), caps)?;
    Ok(p.matrix.mul(&p.matrix.transpose())? == r.matrix)
}

impl TransferMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row_index(&self, l: Label) -> Result<usize> {
        self.rows.binary_search(&l).map_err(|_| Error::UnknownLabel(l.to_string()))
    }

    pub fn col_index(&self, l: Label) -> Result<usize> {
        self.cols.binary_search(&l).map_err(|_| Error::UnknownLabel(l.to_string()))
    }

    pub fn pow_traces(&self, kmax: usize) -> Result<Vec<GaussInt>> {
        mat_pow_trace(&self.matrix, kmax)
    }

    /// Coefficients of `t^0 .. t^order` in `(1 - t M)^{-1}(row, col)`.
    pub fn resolvent_series(&self, row: Label, col: Label, order: usize) -> Result<Vec<GaussInt>> {
        let (i, j) = (self.row_index(row)?, self.col_index(col)?);
        resolvent_series_at(&self.matrix, i, j, order)
    }
}

/// `gaussmat v1` text dump.
pub fn dump_matrix(t: &TransferMatrix) -> String {
    let labels = |ls: &[Label]| ls.iter().map(Label::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("gaussmat v1\nrows: {}\ncols: {}\n", labels(&t.rows), labels(&t.cols));
    for i in 0..t.matrix.rows() {
        let row: Vec<String> = t.matrix.row(i).iter().map(format_gauss).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_gauss(tok: &str) -> Option<GaussInt> {
    let body = tok.strip_suffix('i')?;
    let split = body.rfind(['+', '-']).filter(|&k| k > 0)?;
    let re: BigInt = body[..split].parse().ok()?;
    let im: BigInt = body[split..].trim_start_matches('+').parse().ok()?;
    Some(Complex::new(re, im))
}

/// Parses a `gaussmat v1` dump. The kind is not stored in the dump, so the
/// caller supplies it.
pub fn load_matrix(kind: TransferKind, text: &str) -> Result<TransferMatrix> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, "gaussmat v1")) => {}
        _ => return Err(err(1, "expected header `gaussmat v1`")),
    }
    let mut labels = |key: &str| -> Result<Vec<Label>> {
        let (no, l) = lines.next().ok_or_else(|| err(0, "truncated header"))?;
        let rest = l.strip_prefix(key).ok_or_else(|| err(no, &format!("expected `{key}`")))?;
        rest.split_whitespace().map(|t| t.parse().map_err(|_| err(no, &format!("bad label {t}")))).collect()
    };
    let rows = labels("rows:")?;
    let cols = labels("cols:")?;
    let mut data = Vec::with_capacity(rows.len());
    for (no, l) in lines.filter(|(_, l)| !l.is_empty()) {
        let row: Option<Vec<GaussInt>> = l.split_whitespace().map(parse_gauss).collect();
        let row = row.ok_or_else(|| err(no, "bad entry"))?;
        if row.len() != cols.len() {
            return Err(err(no, "wrong number of entries"));
        }
        data.push(row);
    }
    if data.len() != rows.len() {
        return Err(err(0, "wrong number of rows"));
    }
    let matrix = if rows.is_empty() { Matrix::zeros(0, cols.len()) } else { Matrix::from_rows(data) };
    Ok(TransferMatrix { kind, rows, cols, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        Complex::new(BigInt::from(re), BigInt::from(im))
    }

    fn build(kind: TransferKind) -> TransferMatrix {
        build_transfer(kind, &Caps::default()).unwrap()
    }

    #[test]
    fn small_matrices() {
        let o1 = build(TransferKind::O(1));
        assert_eq!(o1.rows, vec![Label(0), Label(1)]);
        let want = Matrix::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(0, 0)]]);
        assert_eq!(o1.matrix, want);
        assert_eq!(build(TransferKind::P(2)).matrix, want);
        let r2 = Matrix::from_rows(vec![vec![g(0, 0), g(0, 1)], vec![g(0, 1), g(-1, 0)]]);
        assert_eq!(build(TransferKind::R(2)).matrix, r2);
    }

    #[test]
    fn sizes() {
        assert_eq!(fibonacci(0), Some(1));
        assert_eq!(fibonacci(11), Some(144));
        for n in 1..=10 {
            assert_eq!(build(TransferKind::L(n)).size() as u128, fibonacci(n as usize + 1).unwrap());
            assert_eq!(build(TransferKind::R(n)).size(), 1 << n.div_ceil(2));
            let p = build(TransferKind::P(n));
            assert_eq!((p.rows.len(), p.cols.len()), (1 << n.div_ceil(2), 1 << (n / 2)));
        }
        let caps = Caps { matrix_size: 100, ..Caps::default() };
        assert!(matches!(build_transfer(TransferKind::O(10), &caps), Err(Error::MatrixSize { size: 144, .. })));
        assert!(build_transfer(TransferKind::P(200), &caps).is_err());
        assert!(build_transfer(TransferKind::L(0), &caps).is_err());
    }

    #[test]
    fn r_is_p_times_transpose() {
        for n in 1..=12 {
            assert!(check_r_consistency(n, &Caps::default()).unwrap(), "N={n}");
        }
    }

    #[test]
    fn labels_round_trip() {
        let l: Label = "{2,3}".parse().unwrap();
        assert_eq!(l, Label(0b110));
        assert_eq!(l.to_string(), "{2,3}");
        assert_eq!("{}".parse::<Label>().unwrap(), Label(0));
        assert_eq!(l.mirrored(4), l);
        assert_eq!(Label(0b1).mirrored(4), Label(0b1000));
        assert!("2,3".parse::<Label>().is_err());
        assert!("{0}".parse::<Label>().is_err());
    }

    #[test]
    fn traces_of_small_cases() {
        let t = build(TransferKind::R(5)).pow_traces(4).unwrap();
        assert_eq!(t, vec![g(8, 0), g(1, 0), g(1, 0), g(4, 0), g(1, 0)]);
        assert_eq!(build(TransferKind::O(2)).pow_traces(3).unwrap()[3], g(1, 0));
    }

    #[test]
    fn resolvents_at_empty_labels() {
        let gs = |v: &[i64]| v.iter().map(|&x| g(x, 0)).collect::<Vec<GaussInt>>();
        let p8 = build(TransferKind::P(8));
        assert_eq!(p8.resolvent_series(Label(0), Label(0), 7).unwrap(), gs(&[1, 1, 0, -1, -1, 0, 1, 1]));
        // O_4 builds ordinary 4-wide rectangles row by row
        let o4 = build(TransferKind::O(4));
        assert_eq!(o4.resolvent_series(Label(0), Label(0), 7).unwrap(), gs(&[1, 1, 0, 1, -1, 2, -1, 3]));
        assert!(o4.resolvent_series(Label(0b11), Label(0), 3).is_err());
        assert_eq!(o4.resolvent_series(Label(0b10), Label(0b10), 0).unwrap(), vec![g(1, 0)]);
    }

    #[test]
    fn dump_round_trip() {
        for kind in [TransferKind::P(3), TransferKind::R(4), TransferKind::O(3)] {
            let t = build(kind);
            let text = dump_matrix(&t);
            assert_eq!(load_matrix(kind, &text).unwrap(), t);
        }
        let text = dump_matrix(&build(TransferKind::O(1)));
        assert_eq!(text, "gaussmat v1\nrows: {} {1}\ncols: {} {1}\n1+0i 0+1i\n0+1i 0+0i\n");
        assert!(load_matrix(TransferKind::O(1), "gaussmat v2\n").is_err());
        assert!(load_matrix(TransferKind::O(1), "gaussmat v1\nrows: {}\ncols: {}\n1+xi\n").is_err());
    }
}
