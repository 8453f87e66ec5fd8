//! Fraction-free integer kernels shared by the vertex and ray enumerators.
//!
//! Every kernel is generic over [`ExactInt`] so the hot paths can run on
//! `i128` and retry on `BigInt` when a checked operation overflows. A `None`
//! return always means "overflowed, retry wider", never "no solution".

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive};

pub(crate) trait ExactInt:
    Clone + Ord + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        // Leave headroom so products of two converted entries rarely overflow.
        v.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 62))
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) enum Solve<T> {
    /// `x = nums / den` with `den > 0`.
    Unique { nums: Vec<T>, den: T },
    Singular,
}

/// Fraction-free Gauss-Jordan on a `k x (k+1)` augmented matrix stored row-major.
pub(crate) fn solve<T: ExactInt>(mut aug: Vec<T>, k: usize) -> Option<Solve<T>> {
    let w = k + 1;
    debug_assert_eq!(aug.len(), k * w);
    let mut prev = T::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&i| !aug[i * w + col].is_zero()) else {
            return Some(Solve::Singular);
        };
        if p != col {
            for j in 0..w {
                aug.swap(p * w + j, col * w + j);
            }
        }
        let piv = aug[col * w + col].clone();
        for i in 0..k {
            if i == col {
                continue;
            }
            let factor = aug[i * w + col].clone();
            for j in 0..w {
                if j == col {
                    continue;
                }
                let lhs = piv.checked_mul(&aug[i * w + j])?;
                let rhs = factor.checked_mul(&aug[col * w + j])?;
                let num = lhs.checked_sub(&rhs)?;
                debug_assert!(num.is_multiple_of(&prev));
                aug[i * w + j] = num.checked_div(&prev)?;
            }
            aug[i * w + col] = T::zero();
        }
        prev = piv;
    }
    // Left block is now prev * I; right column is prev * x.
    let mut nums: Vec<T> = (0..k).map(|i| aug[i * w + k].clone()).collect();
    let mut den = prev;
    if den.is_negative() {
        den = -den;
        for v in nums.iter_mut() {
            *v = -v.clone();
        }
    }
    Some(Solve::Unique { nums, den })
}

/// Bareiss determinant of a `k x k` row-major matrix.
pub(crate) fn det<T: ExactInt>(mut m: Vec<T>, k: usize) -> Option<T> {
    if k == 0 {
        return Some(T::one());
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for col in 0..k - 1 {
        let Some(p) = (col..k).find(|&i| !m[i * k + col].is_zero()) else {
            return Some(T::zero());
        };
        if p != col {
            for j in 0..k {
                m.swap(p * k + j, col * k + j);
            }
            sign_flip = !sign_flip;
        }
        let piv = m[col * k + col].clone();
        for i in col + 1..k {
            for j in col + 1..k {
                let lhs = piv.checked_mul(&m[i * k + j])?;
                let rhs = m[i * k + col].checked_mul(&m[col * k + j])?;
                m[i * k + j] = lhs.checked_sub(&rhs)?.checked_div(&prev)?;
            }
            m[i * k + col] = T::zero();
        }
        prev = piv;
    }
    let d = m[k * k - 1].clone();
    Some(if sign_flip { -d } else { d })
}

/// Generator of the one-dimensional kernel of a `(k-1) x k` matrix by signed
/// maximal minors. Returns the zero vector when the rank is below `k-1`.
pub(crate) fn kernel_line<T: ExactInt>(rows: &[Vec<T>], k: usize) -> Option<Vec<T>> {
    debug_assert_eq!(rows.len() + 1, k);
    let mut out = Vec::with_capacity(k);
    for skip in 0..k {
        let mut minor = Vec::with_capacity((k - 1) * (k - 1));
        for row in rows {
            for (j, v) in row.iter().enumerate() {
                if j != skip {
                    minor.push(v.clone());
                }
            }
        }
        let d = det(minor, k - 1)?;
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    Some(out)
}

pub(crate) fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Some(acc)
}

/// Divides a vector by the gcd of its entries.
pub(crate) fn primitive<T: ExactInt>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}
