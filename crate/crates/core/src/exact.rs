//! Exact integer and rational arithmetic: determinants, ranks and
//! subdeterminant statistics.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fraction_free::{self, ExactInt};

/// Rational number in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Default cap on the number of square submatrices examined by
/// [`max_abs_subdet`] before it falls back to the Hadamard bound.
pub const SUBDET_BUDGET: u64 = 1_000_000;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => t
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| Error::Parse(format!("bad rational {s:?}"))),
    }
}

/// Smallest integer `m` with `m * m >= x`, for `x >= 0`.
pub fn ceil_sqrt(x: &BigInt) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    let s = x.sqrt();
    if &s * &s == *x {
        s
    } else {
        s + 1
    }
}

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMat { rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length. An empty slice gives a 0x0 matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].len()
            )));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        Ok(IntMat { rows: rows.len(), cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.entries[i * k + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMat { rows: self.cols, cols: self.rows, entries }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMat { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Appends a column on the right.
    pub fn with_column(&self, col: &[BigInt]) -> Result<Self> {
        if col.len() != self.rows {
            return Err(Error::Dimension(format!(
                "column of length {} for a matrix with {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, extra) in col.iter().enumerate() {
            entries.extend_from_slice(self.row(i));
            entries.push(extra.clone());
        }
        Ok(IntMat { rows: self.rows, cols: self.cols + 1, entries })
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant of a square matrix.
pub fn det(m: &IntMat) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    Ok(det_entries(&m.entries, m.rows))
}

fn det_entries(e: &[BigInt], k: usize) -> BigInt {
    if k <= 4 {
        return cofactor_det(e, k);
    }
    if let Some(small) = e.iter().map(i128::from_big).collect::<Option<Vec<_>>>() {
        if let Some(d) = fraction_free::det(small, k) {
            return BigInt::from(d);
        }
    }
    fraction_free::det(e.to_vec(), k).expect("BigInt arithmetic does not overflow")
}

/// Laplace expansion along the first row; used for `k <= 4`.
fn cofactor_det(e: &[BigInt], k: usize) -> BigInt {
    match k {
        0 => BigInt::one(),
        1 => e[0].clone(),
        2 => &e[0] * &e[3] - &e[1] * &e[2],
        _ => {
            let mut acc = BigInt::zero();
            let mut minor = Vec::with_capacity((k - 1) * (k - 1));
            for j in 0..k {
                if e[j].is_zero() {
                    continue;
                }
                minor.clear();
                for i in 1..k {
                    for jj in 0..k {
                        if jj != j {
                            minor.push(e[i * k + jj].clone());
                        }
                    }
                }
                let term = &e[j] * cofactor_det(&minor, k - 1);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// A subdeterminant maximum, or an upper bound for it when `exact` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdetValue {
    pub value: BigInt,
    pub exact: bool,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Maximum absolute value of the `k x k` minors of `m` over `1 <= k <= size_cap`.
///
/// When more than `budget` submatrices would have to be examined the
/// Hadamard bound is returned instead, flagged `exact = false`.
pub fn max_abs_subdet(m: &IntMat, size_cap: usize, budget: u64) -> SubdetValue {
    let kmax = m.rows.min(m.cols).min(size_cap.max(1));
    let work: u64 = (1..=kmax)
        .map(|k| binomial(m.rows, k).saturating_mul(binomial(m.cols, k)))
        .fold(0u64, u64::saturating_add);
    if work > budget {
        return SubdetValue { value: hadamard_bound(m, kmax), exact: false };
    }
    let mut best = BigInt::zero();
    let mut buf = Vec::new();
    for k in 1..=kmax {
        for rs in (0..m.rows).combinations(k) {
            for cs in (0..m.cols).combinations(k) {
                buf.clear();
                for &i in &rs {
                    for &j in &cs {
                        buf.push(m.get(i, j).clone());
                    }
                }
                let d = det_entries(&buf, k).abs();
                if d > best {
                    best = d;
                }
            }
        }
    }
    SubdetValue { value: best, exact: true }
}

/// Hadamard bound on `|det|` of every square submatrix of order at most `kmax`:
/// the product of the `k` largest row norms, rounded up, maximized over `k`.
pub fn hadamard_bound(m: &IntMat, kmax: usize) -> BigInt {
    let side = |mat: &IntMat| -> BigInt {
        let mut norms: Vec<BigInt> =
            (0..mat.rows).map(|i| mat.row(i).iter().map(|x| x * x).sum()).collect();
        norms.sort_unstable_by(|a, b| b.cmp(a));
        let mut best = BigInt::zero();
        let mut prod = BigInt::one();
        for n2 in norms.iter().take(kmax) {
            prod *= n2;
            best = best.max(ceil_sqrt(&prod));
        }
        best
    };
    side(m).min(side(&m.transpose()))
}

/// Subdeterminant maxima of `A`, `[A b]` and `[A b c]`, each at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdetStats {
    pub d: BigInt,
    pub d_prime: BigInt,
    pub delta_max: BigInt,
    pub exact: bool,
}

impl SubdetStats {
    pub fn compute(a: &IntMat, b: &[BigInt], c: &[BigInt], budget: u64) -> Result<Self> {
        let ab = a.with_column(b)?;
        let abc = ab.with_column(c)?;
        let cap = usize::MAX;
        let vd = max_abs_subdet(a, cap, budget);
        let vdp = max_abs_subdet(&ab, cap, budget);
        let vdm = max_abs_subdet(&abc, cap, budget);
        let clamp = |v: BigInt| if v.is_zero() { BigInt::one() } else { v };
        Ok(SubdetStats {
            exact: vd.exact && vdp.exact && vdm.exact,
            d: clamp(vd.value),
            d_prime: clamp(vdp.value),
            delta_max: clamp(vdm.value),
        })
    }
}

/// Rank over the rationals.
pub fn rank_over_q(m: &IntMat) -> usize {
    if let Some(small) = m.entries.iter().map(i128::from_big).collect::<Option<Vec<_>>>() {
        if let Some(r) = rank_generic(small, m.rows, m.cols) {
            return r;
        }
    }
    rank_generic(m.entries.clone(), m.rows, m.cols).expect("BigInt arithmetic does not overflow")
}

/// Row echelon form with each row reduced to primitive content after every
/// update, which keeps entries small for the sparse sign matrices in homology.
fn rank_generic<T: ExactInt>(mut e: Vec<T>, rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !e[i * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                e.swap(p * cols + j, rank * cols + j);
            }
        }
        let piv = e[rank * cols + col].clone();
        for i in rank + 1..rows {
            let f = e[i * cols + col].clone();
            if f.is_zero() {
                continue;
            }
            let g = piv.gcd(&f);
            let (mp, mf) = (piv.checked_div(&g)?, f.checked_div(&g)?);
            for j in col..cols {
                let lhs = mp.checked_mul(&e[i * cols + j])?;
                let rhs = mf.checked_mul(&e[rank * cols + j])?;
                e[i * cols + j] = lhs.checked_sub(&rhs)?;
            }
            fraction_free::primitive(&mut e[i * cols..(i + 1) * cols]);
        }
        rank += 1;
    }
    Some(rank)
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_list(xs: &[u64]) -> Result<u64> {
    if xs.is_empty() {
        return Err(Error::Domain("gcd of an empty list".into()));
    }
    if xs.contains(&0) {
        return Err(Error::Domain("gcd_list expects positive entries".into()));
    }
    Ok(xs.iter().fold(0u64, |g, &x| g.gcd(&x)))
}

/// Floor of a rational as a big integer.
pub fn floor_rat(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Ceiling of a rational as a big integer.
pub fn ceil_rat(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Converts to `i64` when the value is an integer in range.
pub fn rat_to_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
