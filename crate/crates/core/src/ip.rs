//! Exact integer programming over `{Ax <= n b + c, x in N^r}`: branch and
//! bound on the LP relaxation, an exhaustive oracle, parameter sweeps and the
//! feasibility threshold `kappa`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ceil_rat, floor_rat, max_abs_subdet, IntMat, Rat, SubdetStats, SUBDET_BUDGET};
use crate::lp::OptValue;
use crate::polyhedra::{full_dimensional_witness, enumerate_vrep, rays_of_rows, vertices_of_rows, Polyhedron};

/// Node budget of the branch and bound before it switches to enumerating
/// the bounding box.
pub const NODE_CAP: usize = 200_000;

/// Data of the family `max{d.x : Ax <= n b + c, x in N^r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamIP {
    a: IntMat,
    b: Vec<BigInt>,
    c: Vec<BigInt>,
    d: Vec<BigInt>,
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_rat(xs: &[BigInt]) -> Vec<Rat> {
    xs.iter().cloned().map(Rat::from_integer).collect()
}

impl ParamIP {
    pub fn new(a: IntMat, b: Vec<BigInt>, c: Vec<BigInt>, d: Vec<BigInt>) -> Result<Self> {
        let (s, r) = (a.rows(), a.cols());
        if s == 0 || r == 0 {
            return Err(Error::Dimension(format!("A must have at least one row and column, got {s}x{r}")));
        }
        for (name, len, want) in [("b", b.len(), s), ("c", c.len(), s), ("d", d.len(), r)] {
            if len != want {
                return Err(Error::Dimension(format!("{name} has length {len}, expected {want}")));
            }
        }
        Ok(ParamIP { a, b, c, d })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[i64], c: &[i64], d: &[i64]) -> Result<Self> {
        ParamIP::new(IntMat::from_rows(a)?, big(b), big(c), big(d))
    }

    pub fn r(&self) -> usize {
        self.a.cols()
    }

    pub fn s(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &IntMat {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn c(&self) -> &[BigInt] {
        &self.c
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    pub fn c_rat(&self) -> Vec<Rat> {
        to_rat(&self.c)
    }

    pub fn d_rat(&self) -> Vec<Rat> {
        to_rat(&self.d)
    }

    /// The same family with `c = 0`, whose optima are the sequence `m_n`.
    pub fn homogeneous(&self) -> ParamIP {
        ParamIP { c: vec![BigInt::zero(); self.s()], ..self.clone() }
    }

    /// The polyhedron `{Ax <= b, x >= 0}`.
    pub fn polyhedron(&self) -> Polyhedron {
        Polyhedron::from_int(&self.a, &self.b).expect("dimensions checked at construction")
    }

    /// The polyhedron `{Ax <= n b + c, x >= 0}`.
    pub fn relaxed(&self, n: u64) -> Polyhedron {
        Polyhedron::from_int(&self.a, &self.rhs(n)).expect("dimensions checked at construction")
    }

    pub fn rhs(&self, n: u64) -> Vec<BigInt> {
        let n = BigInt::from(n);
        self.b.iter().zip(&self.c).map(|(bi, ci)| bi * &n + ci).collect()
    }

    pub fn subdet_stats(&self, budget: u64) -> SubdetStats {
        SubdetStats::compute(&self.a, &self.b, &self.c, budget).expect("dimensions checked at construction")
    }

    fn rows_at(&self, n: u64) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = self.a.to_rows();
        let mut rhs = self.rhs(n);
        for j in 0..self.r() {
            let mut e = vec![BigInt::zero(); self.r()];
            e[j] = -BigInt::one();
            rows.push(e);
            rhs.push(BigInt::zero());
        }
        (rows, rhs)
    }
}

/// Bounds of a branch-and-bound node; the sign rows carry the lower bounds.
struct Node {
    lo: Vec<BigInt>,
    hi: Vec<Option<BigInt>>,
}

fn dot_int(d: &[BigInt], x: &[Rat]) -> Rat {
    d.iter().zip(x).map(|(u, v)| Rat::from_integer(u.clone()) * v).sum()
}

/// Row system of a node: structural rows, then `-x_j <= -lo_j`, then `x_j <= hi_j`.
fn node_rows(s_rows: &[Vec<BigInt>], s_rhs: &[BigInt], node: &Node) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let r = node.lo.len();
    let mut rows = s_rows.to_vec();
    let mut rhs = s_rhs.to_vec();
    for j in 0..r {
        let mut e = vec![BigInt::zero(); r];
        e[j] = -BigInt::one();
        rows.push(e);
        rhs.push(-node.lo[j].clone());
    }
    for (j, h) in node.hi.iter().enumerate() {
        if let Some(h) = h {
            let mut e = vec![BigInt::zero(); r];
            e[j] = BigInt::one();
            rows.push(e);
            rhs.push(h.clone());
        }
    }
    (rows, rhs)
}

enum Search {
    Done(Option<(BigInt, Vec<BigInt>)>),
    OutOfNodes,
}

/// Depth-first branch and bound; requires the LP relaxation to be bounded
/// in the objective direction.
fn branch_and_bound(s_rows: &[Vec<BigInt>], s_rhs: &[BigInt], d: &[BigInt], hi: Vec<Option<BigInt>>, cap: usize) -> Search {
    let r = d.len();
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let mut stack = vec![Node { lo: vec![BigInt::zero(); r], hi }];
    let mut visited = 0usize;
    while let Some(node) = stack.pop() {
        visited += 1;
        if visited > cap {
            return Search::OutOfNodes;
        }
        if node.hi.iter().zip(&node.lo).any(|(h, l)| h.as_ref().is_some_and(|h| h < l)) {
            continue;
        }
        let (rows, rhs) = node_rows(s_rows, s_rhs, &node);
        let verts = vertices_of_rows(&rows, &rhs, r);
        let Some((value, x)) = verts.iter().map(|v| (dot_int(d, v), v)).fold(None, |acc: Option<(Rat, &Vec<Rat>)>, (val, v)| {
            match acc {
                Some((b, bv)) if b >= val => Some((b, bv)),
                _ => Some((val, v)),
            }
        }) else {
            continue;
        };
        let bound = floor_rat(&value);
        if best.as_ref().is_some_and(|(b, _)| bound <= *b) {
            continue;
        }
        let branch = (0..r)
            .filter(|&j| !x[j].is_integer())
            .max_by(|&i, &j| x[i].denom().cmp(x[j].denom()).then(j.cmp(&i)));
        match branch {
            None => {
                let point: Vec<BigInt> = x.iter().map(Rat::to_integer).collect();
                best = Some((value.to_integer(), point));
            }
            Some(j) => {
                let mut down = Node { lo: node.lo.clone(), hi: node.hi.clone() };
                down.hi[j] = Some(floor_rat(&x[j]));
                let mut up = node;
                up.lo[j] = ceil_rat(&x[j]);
                // The rounded-up child is explored first.
                stack.push(down);
                stack.push(up);
            }
        }
    }
    Search::Done(best)
}

/// Per-coordinate box containing an optimal integer point (and some integer
/// point whenever one exists): the largest vertex coordinate plus the sum of
/// the `r` largest ray coordinates, since an integer point minus the integer
/// parts of its conic coefficients stays feasible and integral.
fn search_box(verts: &[Vec<Rat>], rays: &[Vec<BigInt>], r: usize) -> Vec<BigInt> {
    (0..r)
        .map(|j| {
            let vmax = verts.iter().map(|v| v[j].clone()).max().unwrap_or_else(Rat::zero);
            let mut ray_js: Vec<BigInt> = rays.iter().map(|ray| ray[j].clone()).collect();
            ray_js.sort_unstable_by(|a, b| b.cmp(a));
            let extra: BigInt = ray_js.into_iter().take(r).sum();
            floor_rat(&(vmax + Rat::from_integer(extra)))
        })
        .collect()
}

fn exhaustive(s_rows: &[Vec<BigInt>], s_rhs: &[BigInt], d: &[BigInt], hi: &[BigInt]) -> Option<(BigInt, Vec<BigInt>)> {
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    let ranges: Vec<Vec<BigInt>> = hi
        .iter()
        .map(|h| {
            let top = h.to_i64().expect("box fits in i64");
            (0..=top.max(-1)).map(BigInt::from).collect()
        })
        .collect();
    for x in ranges.into_iter().multi_cartesian_product() {
        let ok = s_rows
            .iter()
            .zip(s_rhs)
            .all(|(row, bi)| row.iter().zip(&x).map(|(u, v)| u * v).sum::<BigInt>() <= *bi);
        if ok {
            let val: BigInt = d.iter().zip(&x).map(|(u, v)| u * v).sum();
            if best.as_ref().is_none_or(|(b, _)| val > *b) {
                best = Some((val, x));
            }
        }
    }
    best
}

fn finite_int(value: BigInt, x: Vec<BigInt>) -> OptValue {
    OptValue::Finite { value: Rat::from_integer(value), witness: Some(to_rat(&x)) }
}

/// Exact optimum of `max{d.x : Ax <= n b + c, x in N^r}`.
pub fn solve_ip(pip: &ParamIP, n: u64) -> OptValue {
    let r = pip.r();
    let s_rows = pip.a.to_rows();
    let s_rhs = pip.rhs(n);
    let (all_rows, all_rhs) = pip.rows_at(n);
    let verts = vertices_of_rows(&all_rows, &all_rhs, r);
    if verts.is_empty() {
        return OptValue::NegInfinity;
    }
    let rays = rays_of_rows(&all_rows, r);
    let unbounded = rays.iter().any(|ray| pip.d.iter().zip(ray).map(|(u, v)| u * v).sum::<BigInt>().is_positive());
    let (objective, hi) = if rays.is_empty() {
        (pip.d.clone(), vec![None; r])
    } else {
        let bx = search_box(&verts, &rays, r);
        let objective = if unbounded { vec![BigInt::zero(); r] } else { pip.d.clone() };
        (objective, bx.into_iter().map(Some).collect())
    };
    let found = match branch_and_bound(&s_rows, &s_rhs, &objective, hi.clone(), NODE_CAP) {
        Search::Done(found) => found,
        Search::OutOfNodes => {
            let bx: Vec<BigInt> = match hi.iter().cloned().collect::<Option<Vec<_>>>() {
                Some(bx) => bx,
                None => search_box(&verts, &[], r),
            };
            exhaustive(&s_rows, &s_rhs, &objective, &bx)
        }
    };
    match found {
        None => OptValue::NegInfinity,
        Some(_) if unbounded => OptValue::PosInfinity,
        Some((value, x)) => finite_int(value, x),
    }
}

/// Exhaustive lattice-point search over `[0, hi]^r`, independent of the
/// branch and bound. `hi` defaults to the vertex box of a bounded region.
pub fn enumerate_ip(pip: &ParamIP, n: u64, hi: Option<&[BigInt]>, max_points: u64) -> Result<OptValue> {
    let r = pip.r();
    let bx = match hi {
        Some(h) => h.to_vec(),
        None => {
            let v = enumerate_vrep(&pip.relaxed(n));
            if v.is_empty() {
                return Ok(OptValue::NegInfinity);
            }
            if !v.rays.is_empty() {
                return Err(Error::Domain("exhaustive search needs a bounded region or an explicit box".into()));
            }
            search_box(&v.vertices, &[], r)
        }
    };
    let points = bx
        .iter()
        .map(|h| h.to_u64().map_or(u64::MAX, |h| h.saturating_add(1)))
        .fold(1u64, u64::saturating_mul);
    if points > max_points {
        return Err(Error::Budget(format!("box holds {points} lattice points, limit {max_points}")));
    }
    Ok(match exhaustive(&pip.a.to_rows(), &pip.rhs(n), &pip.d, &bx) {
        None => OptValue::NegInfinity,
        Some((value, x)) => finite_int(value, x),
    })
}

/// Optima for every `n` in `[n_lo, n_hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpSweep {
    pub n_lo: u64,
    pub n_hi: u64,
    pub values: Vec<OptValue>,
}

impl IpSweep {
    pub fn at(&self, n: u64) -> Option<&OptValue> {
        if n < self.n_lo {
            return None;
        }
        self.values.get((n - self.n_lo) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &OptValue)> {
        (self.n_lo..).zip(&self.values)
    }

    /// Sweep built from explicit values, for sequences computed elsewhere.
    pub fn from_values(n_lo: u64, values: Vec<OptValue>) -> Self {
        let n_hi = n_lo + values.len().saturating_sub(1) as u64;
        IpSweep { n_lo, n_hi, values }
    }
}

pub fn sweep(pip: &ParamIP, n_lo: u64, n_hi: u64) -> Result<IpSweep> {
    if n_lo > n_hi {
        return Err(Error::Domain(format!("empty range {n_lo}..={n_hi}")));
    }
    let values = (n_lo..=n_hi).into_par_iter().map(|n| solve_ip(pip, n)).collect();
    Ok(IpSweep { n_lo, n_hi, values })
}

/// `kappa = max{1, (r+1) D^2 (r/2 a* - c*)}` rounded up: the integer program
/// is feasible for every `n >= kappa` when `{Ax <= b, x >= 0}` is
/// full-dimensional.
pub fn kappa(pip: &ParamIP) -> Result<BigInt> {
    let p = pip.polyhedron();
    if full_dimensional_witness(&p, &enumerate_vrep(&p), None).is_none() {
        return Err(Error::Domain("kappa needs a full-dimensional polyhedron".into()));
    }
    // A zero row keeps no slack at the barycenter, so `0 <= c_i < 0` never heals.
    if let Some(i) = (0..pip.a.rows()).find(|&i| pip.a.row(i).iter().all(Zero::is_zero) && pip.b[i].is_zero() && pip.c[i] < BigInt::zero()) {
        return Err(Error::Domain(format!("row {} reads 0 <= {} for every n", i + 1, pip.c[i])));
    }
    let r = pip.r() as i64;
    let d = max_abs_subdet(&pip.a, usize::MAX, SUBDET_BUDGET).value.max(BigInt::one());
    let a_star = pip.a.max_abs_entry();
    let c_star = pip.c.iter().min().cloned().expect("at least one row");
    let inner = Rat::new(BigInt::from(r) * a_star, BigInt::from(2)) - Rat::from_integer(c_star);
    let k = Rat::from_integer(BigInt::from(r + 1) * &d * &d) * inner;
    Ok(ceil_rat(&k).max(BigInt::one()))
}

/// Rounds `n * gamma` coordinatewise, down when the fractional part is at
/// most 1/2 and up otherwise; `gamma` is the interior barycenter of the
/// full-dimensional polyhedron.
pub fn rounding_witness(pip: &ParamIP, n: u64) -> Result<Vec<BigInt>> {
    let p = pip.polyhedron();
    let w = full_dimensional_witness(&p, &enumerate_vrep(&p), None)
        .ok_or_else(|| Error::Domain("rounding needs a full-dimensional polyhedron".into()))?;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let nr = Rat::from_integer(BigInt::from(n));
    Ok(w
        .gamma
        .iter()
        .map(|g| {
            let t = g * &nr;
            if t.fract() <= half {
                floor_rat(&t)
            } else {
                ceil_rat(&t)
            }
        })
        .collect())
}

pub fn is_feasible_point(pip: &ParamIP, n: u64, x: &[BigInt]) -> bool {
    x.len() == pip.r()
        && x.iter().all(|v| !v.is_negative())
        && (0..pip.s()).all(|i| pip.a.row(i).iter().zip(x).map(|(u, v)| u * v).sum::<BigInt>() <= &pip.b[i] * BigInt::from(n) + &pip.c[i])
}
