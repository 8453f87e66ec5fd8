//! Polyhedra `{Ax <= b, x >= 0}` in H-representation, exact vertex and ray
//! enumeration, and interior points of full-dimensional instances.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{max_abs_subdet, rank_over_q, IntMat, Rat, SUBDET_BUDGET};
use crate::fraction_free::{self, ExactInt, Solve};

/// The set `{x in R^r : Ax <= b, x >= 0}`. The sign constraints are implicit
/// and never stored in `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    r: usize,
}

/// `conv(vertices) + cone(rays)`. Rays are primitive integer vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl VRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Every `vertex + ray` point, including `ray = 0`.
    pub fn shifted_points(&self) -> Vec<Vec<Rat>> {
        let mut out = self.vertices.clone();
        for v in &self.vertices {
            for ray in &self.rays {
                out.push(v.iter().zip(ray).map(|(x, y)| x + Rat::from_integer(y.clone())).collect());
            }
        }
        out
    }
}

/// An interior point `gamma` with its minimal slack and the feasibility
/// threshold `n_gamma = 1 + max(0, -c_i) / eps_gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorWitness {
    pub gamma: Vec<Rat>,
    pub eps_gamma: Rat,
    pub n_gamma: Rat,
}

impl Polyhedron {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Dimension("a polyhedron needs at least one variable".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Dimension(format!("{} rows but {} right-hand sides", a.len(), b.len())));
        }
        if let Some(i) = a.iter().position(|row| row.len() != r) {
            return Err(Error::Dimension(format!("row {i} has length {}, expected {r}", a[i].len())));
        }
        Ok(Polyhedron { a, b, r })
    }

    pub fn from_int(a: &IntMat, b: &[BigInt]) -> Result<Self> {
        let rows = a.to_rows().into_iter().map(|row| row.into_iter().map(Rat::from_integer).collect()).collect();
        Polyhedron::new(rows, b.iter().cloned().map(Rat::from_integer).collect(), a.cols())
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let r = a.first().map_or(0, Vec::len);
        let rows = a.iter().map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
        Polyhedron::new(rows, b.iter().map(|&x| Rat::from_integer(x.into())).collect(), r)
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Vec<Rat>] {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// Integer data when every entry of `A` and `b` is integral.
    pub fn integral_data(&self) -> Option<(IntMat, Vec<BigInt>)> {
        if !self.a.iter().flatten().chain(&self.b).all(Rat::is_integer) {
            return None;
        }
        let rows: Vec<Vec<BigInt>> = self.a.iter().map(|row| row.iter().map(Rat::to_integer).collect()).collect();
        let m = IntMat::new(self.a.len(), self.r, rows.into_iter().flatten().collect()).ok()?;
        Some((m, self.b.iter().map(Rat::to_integer).collect()))
    }

    /// Structural rows scaled by the lcm of their denominators, followed by
    /// the sign rows `-x_j <= 0`.
    pub(crate) fn constraint_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.a.len() + self.r);
        let mut rhs = Vec::with_capacity(self.a.len() + self.r);
        for (row, bi) in self.a.iter().zip(&self.b) {
            let l = row.iter().chain([bi]).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            rows.push(row.iter().map(|x| (x * &l).to_integer()).collect());
            rhs.push((bi * &l).to_integer());
        }
        for j in 0..self.r {
            let mut row = vec![BigInt::zero(); self.r];
            row[j] = -BigInt::one();
            rows.push(row);
            rhs.push(BigInt::zero());
        }
        (rows, rhs)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.r
            && x.iter().all(|v| !v.is_negative())
            && self.a.iter().zip(&self.b).all(|(row, bi)| dot(row, x) <= *bi)
    }

    /// Slacks `b_i - A_i x` of the structural rows.
    pub fn slacks(&self, x: &[Rat]) -> Vec<Rat> {
        self.a.iter().zip(&self.b).map(|(row, bi)| bi - dot(row, x)).collect()
    }
}

pub(crate) fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).fold(Rat::zero(), |acc, (u, v)| acc + u * v)
}

/// Exact V-representation by exhaustive choice of `r` tight rows among the
/// structural and sign rows.
pub fn enumerate_vrep(p: &Polyhedron) -> VRep {
    let (rows, rhs) = p.constraint_rows();
    VRep { vertices: vertices_of_rows(&rows, &rhs, p.r), rays: rays_of_rows(&rows, p.r) }
}

/// Basic feasible solutions of `rows . x <= rhs`, sorted and deduplicated.
pub(crate) fn vertices_of_rows(rows: &[Vec<BigInt>], rhs: &[BigInt], r: usize) -> Vec<Vec<Rat>> {
    if let Some(out) = narrow::<i128>(rows, rhs).and_then(|(rs, bs)| vertices_generic(&rs, &bs, r)) {
        return out;
    }
    vertices_generic(rows, rhs, r).expect("BigInt arithmetic does not overflow")
}

fn narrow<T: ExactInt>(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<(Vec<Vec<T>>, Vec<T>)> {
    let rs = rows.iter().map(|row| row.iter().map(T::from_big).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
    let bs = rhs.iter().map(T::from_big).collect::<Option<Vec<_>>>()?;
    Some((rs, bs))
}

fn vertices_generic<T: ExactInt>(rows: &[Vec<T>], rhs: &[T], r: usize) -> Option<Vec<Vec<Rat>>> {
    let mut seen: BTreeSet<(Vec<T>, T)> = BTreeSet::new();
    let mut aug = Vec::with_capacity(r * (r + 1));
    for subset in (0..rows.len()).combinations(r) {
        aug.clear();
        for &i in &subset {
            aug.extend(rows[i].iter().cloned());
            aug.push(rhs[i].clone());
        }
        let Solve::Unique { mut nums, mut den } = fraction_free::solve(aug.clone(), r)? else {
            continue;
        };
        let g = nums.iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            for v in nums.iter_mut() {
                *v = v.div_floor(&g);
            }
            den = den.div_floor(&g);
        }
        if seen.contains(&(nums.clone(), den.clone())) {
            continue;
        }
        let mut feasible = true;
        for (row, bi) in rows.iter().zip(rhs) {
            if fraction_free::dot(row, &nums)? > bi.checked_mul(&den)? {
                feasible = false;
                break;
            }
        }
        if feasible {
            seen.insert((nums, den));
        }
    }
    let mut out: Vec<Vec<Rat>> = seen
        .into_iter()
        .map(|(nums, den)| nums.iter().map(|x| Rat::new(x.to_big(), den.to_big())).collect())
        .collect();
    out.sort();
    Some(out)
}

/// Extreme rays of the pointed cone `rows . x <= 0` as primitive integer vectors.
pub(crate) fn rays_of_rows(rows: &[Vec<BigInt>], r: usize) -> Vec<Vec<BigInt>> {
    if let Some(out) = narrow::<i128>(rows, &[]).and_then(|(rs, _)| rays_generic(&rs, r)) {
        return out;
    }
    rays_generic(rows, r).expect("BigInt arithmetic does not overflow")
}

fn rays_generic<T: ExactInt>(rows: &[Vec<T>], r: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut seen: BTreeSet<Vec<T>> = BTreeSet::new();
    for subset in (0..rows.len()).combinations(r - 1) {
        let chosen: Vec<Vec<T>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let mut v = fraction_free::kernel_line(&chosen, r)?;
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        fraction_free::primitive(&mut v);
        for cand in [v.clone(), v.iter().map(|x| -x.clone()).collect()] {
            if seen.contains(&cand) {
                continue;
            }
            let mut ok = true;
            for row in rows {
                if fraction_free::dot(row, &cand)?.is_positive() {
                    ok = false;
                    break;
                }
            }
            if ok {
                seen.insert(cand);
            }
        }
    }
    let mut out: Vec<Vec<BigInt>> = seen.into_iter().map(|v| v.iter().map(T::to_big).collect()).collect();
    out.sort();
    Some(out)
}

/// Lowest common multiple of the denominators in `v`.
fn denominator_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Picks `r + 1` affinely independent points among `vertex + ray` points.
fn affine_basis(points: &[Vec<Rat>], r: usize) -> Option<Vec<Vec<Rat>>> {
    let base = points.first()?;
    let mut chosen = vec![base.clone()];
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for q in &points[1..] {
        let diff: Vec<Rat> = q.iter().zip(base).map(|(x, y)| x - y).collect();
        let l = denominator_lcm(&diff);
        let row: Vec<BigInt> = diff.iter().map(|x| (x * &l).to_integer()).collect();
        diffs.push(row);
        let m = IntMat::from_rows(&diffs).expect("rows share length r");
        if rank_over_q(&m) == diffs.len() {
            chosen.push(q.clone());
            if chosen.len() == r + 1 {
                return Some(chosen);
            }
        } else {
            diffs.pop();
        }
    }
    None
}

/// The barycenter of `r + 1` affinely independent points of `p`, or `None`
/// when `p` is not full-dimensional.
///
/// `eps_gamma` is taken over rows with a nonzero coefficient vector (a zero
/// row constrains no point); with no such rows it is 1.
pub fn full_dimensional_witness(p: &Polyhedron, v: &VRep, c: Option<&[Rat]>) -> Option<InteriorWitness> {
    let basis = affine_basis(&v.shifted_points(), p.r)?;
    let k = Rat::from_integer(BigInt::from(p.r + 1));
    let gamma: Vec<Rat> = (0..p.r).map(|j| basis.iter().map(|pt| pt[j].clone()).sum::<Rat>() / &k).collect();
    let live: Vec<usize> = (0..p.a.len()).filter(|&i| p.a[i].iter().any(|x| !x.is_zero())).collect();
    let slacks = p.slacks(&gamma);
    let eps_gamma = live.iter().map(|&i| slacks[i].clone()).min().unwrap_or_else(Rat::one);
    debug_assert!(eps_gamma.is_positive());
    let worst = c
        .map(|c| live.iter().map(|&i| -c[i].clone()).fold(Rat::zero(), Rat::max))
        .unwrap_or_else(Rat::zero);
    let n_gamma = Rat::one() + worst / &eps_gamma;
    Some(InteriorWitness { gamma, eps_gamma, n_gamma })
}

pub fn is_full_dimensional(p: &Polyhedron) -> bool {
    full_dimensional_witness(p, &enumerate_vrep(p), None).is_some()
}

/// Minimum positive slack `b_i - A_i (alpha + beta)` over vertices `alpha`
/// and `beta` ranging over the rays and zero.
///
/// For integral data the result is checked against the lower bound `1/D^2`
/// with `D` the largest subdeterminant of `A`.
pub fn epsilon_zero(p: &Polyhedron, v: &VRep) -> Result<Rat> {
    if v.is_empty() {
        return Err(Error::Domain("epsilon_zero of an empty polyhedron".into()));
    }
    let eps = v
        .shifted_points()
        .iter()
        .flat_map(|pt| p.slacks(pt))
        .filter(Rat::is_positive)
        .min()
        .ok_or_else(|| Error::Degenerate("every slack is zero at every vertex".into()))?;
    if let Some((a, _)) = p.integral_data() {
        let d = max_abs_subdet(&a, usize::MAX, SUBDET_BUDGET).value.max(BigInt::one());
        let floor = Rat::new(BigInt::one(), &d * &d);
        if eps < floor {
            return Err(Error::Invariant(format!("minimum slack {eps} is below 1/D^2 = {floor}")));
        }
    }
    Ok(eps)
}

/// `{Ax <= n b + c, x >= 0}`.
pub fn scale_and_relax(p: &Polyhedron, n: &BigInt, c: &[Rat]) -> Result<Polyhedron> {
    if c.len() != p.b.len() {
        return Err(Error::Dimension(format!("c has length {}, expected {}", c.len(), p.b.len())));
    }
    let n = Rat::from_integer(n.clone());
    let b = p.b.iter().zip(c).map(|(bi, ci)| bi * &n + ci).collect();
    Polyhedron::new(p.a.clone(), b, p.r)
}
