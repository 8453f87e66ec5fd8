//! Exact linear programming by vertex enumeration, the dual-vertex value law
//! of the parametric relaxation, and its feasibility thresholds.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ceil_rat, Rat};
use crate::polyhedra::{dot, enumerate_vrep, epsilon_zero, full_dimensional_witness, Polyhedron, VRep};

/// Optimum of a maximization problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptValue {
    /// The feasible region is empty.
    NegInfinity,
    Finite { value: Rat, witness: Option<Vec<Rat>> },
    /// Feasible and unbounded in the objective direction.
    PosInfinity,
}

impl OptValue {
    pub fn finite(value: Rat) -> Self {
        OptValue::Finite { value, witness: None }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            OptValue::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Rat]> {
        match self {
            OptValue::Finite { witness: Some(w), .. } => Some(w),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, OptValue::NegInfinity)
    }
}

impl fmt::Display for OptValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptValue::NegInfinity => write!(f, "-inf"),
            OptValue::PosInfinity => write!(f, "+inf"),
            OptValue::Finite { value, .. } => write!(f, "{value}"),
        }
    }
}

/// `max d.x` over `p` given its V-representation.
pub fn solve_lp_with(v: &VRep, d: &[Rat]) -> OptValue {
    if v.is_empty() {
        return OptValue::NegInfinity;
    }
    if v.rays.iter().any(|ray| d.iter().zip(ray).map(|(x, y)| x * Rat::from_integer(y.clone())).sum::<Rat>().is_positive()) {
        return OptValue::PosInfinity;
    }
    // Vertices are sorted, so keeping the first maximizer gives the lexicographically smallest.
    let mut best: Option<(Rat, &Vec<Rat>)> = None;
    for vert in &v.vertices {
        let val = dot(d, vert);
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, vert));
        }
    }
    let (value, w) = best.expect("nonempty vertex list");
    OptValue::Finite { value, witness: Some(w.clone()) }
}

pub fn solve_lp(p: &Polyhedron, d: &[Rat]) -> OptValue {
    solve_lp_with(&enumerate_vrep(p), d)
}

/// Eventual value law `phi_n = phi * n + phi0` of `max{d.x : Ax <= n b + c, x >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpLaw {
    pub phi: Rat,
    pub phi0: Rat,
    /// Smallest integer from which the law is guaranteed.
    pub n1: BigInt,
    /// Interior-feasibility threshold entering `n1`.
    pub n0: Rat,
    /// Dual vertex attaining both the slope and the intercept.
    pub dual_vertex: Vec<Rat>,
    /// Every vertex of `{y >= 0, y^T A >= d^T}`.
    pub dual_vertices: Vec<Vec<Rat>>,
}

impl LpLaw {
    pub fn value_at(&self, n: &BigInt) -> Rat {
        &self.phi * Rat::from_integer(n.clone()) + &self.phi0
    }
}

/// `N0 = 1 + (r + 1) / eps0 * max(0, -c_i)`; for `n >= N0` the relaxed
/// polyhedron has interior points.
pub fn n_zero(p: &Polyhedron, c: &[Rat]) -> Result<Rat> {
    if c.len() != p.num_rows() {
        return Err(Error::Dimension(format!("c has length {}, expected {}", c.len(), p.num_rows())));
    }
    let v = enumerate_vrep(p);
    if full_dimensional_witness(p, &v, None).is_none() {
        return Err(Error::Domain("N0 needs a full-dimensional polyhedron".into()));
    }
    let worst = c.iter().map(|ci| -ci).fold(Rat::zero(), Rat::max);
    if worst.is_zero() {
        return Ok(Rat::one());
    }
    let eps0 = epsilon_zero(p, &v)?;
    let r1 = Rat::from_integer(BigInt::from(p.dim() + 1));
    Ok(Rat::one() + r1 / eps0 * worst)
}

/// The dual polyhedron `{y in R^s : -A^T y <= -d, y >= 0}`.
fn dual_polyhedron(p: &Polyhedron, d: &[Rat]) -> Result<Polyhedron> {
    let s = p.num_rows();
    let rows = (0..p.dim()).map(|j| (0..s).map(|i| -p.a()[i][j].clone()).collect()).collect();
    Polyhedron::new(rows, d.iter().map(|x| -x).collect(), s)
}

pub fn lp_value_law(p: &Polyhedron, c: &[Rat], d: &[Rat]) -> Result<LpLaw> {
    if d.len() != p.dim() {
        return Err(Error::Dimension(format!("d has length {}, expected {}", d.len(), p.dim())));
    }
    let v = enumerate_vrep(p);
    if full_dimensional_witness(p, &v, None).is_none() {
        return Err(Error::Domain("the value law needs a full-dimensional polyhedron".into()));
    }
    let primal = match solve_lp_with(&v, d) {
        OptValue::Finite { value, .. } => value,
        other => return Err(Error::Domain(format!("the value law needs a finite LP optimum, got {other}"))),
    };
    let n0 = n_zero(p, c)?;
    if p.num_rows() == 0 {
        // Only sign constraints: the optimum is 0 for every n.
        return Ok(LpLaw {
            phi: Rat::zero(),
            phi0: Rat::zero(),
            n1: ceil_rat(&n0),
            n0,
            dual_vertex: vec![],
            dual_vertices: vec![],
        });
    }
    let dual = enumerate_vrep(&dual_polyhedron(p, d)?);
    let lines: Vec<(Rat, Rat)> = dual.vertices.iter().map(|y| (dot(y, p.b()), dot(y, c))).collect();
    let phi = lines.iter().map(|l| l.0.clone()).min().expect("finite primal forces a dual vertex");
    if phi != primal {
        return Err(Error::Invariant(format!("dual minimum {phi} differs from primal maximum {primal}")));
    }
    let (best, phi0) = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| l.0 == phi)
        .map(|(i, l)| (i, l.1.clone()))
        .min_by(|x, y| x.1.cmp(&y.1))
        .expect("some line has the minimal slope");
    let mut v_star: Option<Rat> = None;
    for (i, (si, ti)) in lines.iter().enumerate() {
        for (sj, tj) in &lines[i + 1..] {
            if si != sj {
                let x = (tj - ti) / (si - sj);
                if v_star.as_ref().is_none_or(|v| x > *v) {
                    v_star = Some(x);
                }
            }
        }
    }
    let mut n1 = ceil_rat(&n0);
    if let Some(vs) = &v_star {
        n1 = n1.max(ceil_rat(vs));
    }
    Ok(LpLaw { phi, phi0, n1, n0, dual_vertex: dual.vertices[best].clone(), dual_vertices: dual.vertices })
}
