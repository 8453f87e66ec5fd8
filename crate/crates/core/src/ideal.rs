//! Monomial ideals given by exponent vectors: minimal generators, the
//! Stanley–Reisner complex of the radical, the Newton polyhedron, and
//! membership in integral closures of powers and in symbolic powers.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{det, IntMat};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Largest number of variables; vertex sets are 32-bit masks.
pub const MAX_VARS: usize = 31;

/// A monomial ideal by its minimal generators, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    r: usize,
    gens: Vec<Vec<u32>>,
    d_i: u32,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn support(a: &[u32]) -> VertexSet {
    VertexSet::from_indices(a.iter().positions(|&x| x > 0))
}

/// Drops duplicates and every vector dominated by another.
fn minimal_elements(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens.iter().map(|g| !gens.iter().any(|h| h != g && divides(h, g))).collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

/// The ideal generated by `gens`, reduced to its minimal generating set.
pub fn minimalize(r: usize, gens: Vec<Vec<u32>>) -> Result<MonomialIdeal> {
    if gens.is_empty() {
        return Err(Error::Domain("a monomial ideal needs at least one generator".into()));
    }
    if r == 0 || r > MAX_VARS {
        return Err(Error::Dimension(format!("variable count {r} outside 1..={MAX_VARS}")));
    }
    if let Some(g) = gens.iter().find(|g| g.len() != r) {
        return Err(Error::Dimension(format!("generator {g:?} has {} entries, expected {r}", g.len())));
    }
    let gens = minimal_elements(gens);
    let d_i = gens.iter().map(|g| g.iter().sum::<u32>()).max().unwrap_or(0);
    Ok(MonomialIdeal { r, gens, d_i })
}

impl MonomialIdeal {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    /// Maximal degree of a minimal generator.
    pub fn max_degree(&self) -> u32 {
        self.d_i
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        self.gens.iter().any(|g| g.iter().zip(alpha).all(|(&x, &y)| i64::from(x) <= y))
    }

    pub fn is_square_free(&self) -> bool {
        self.gens.iter().flatten().all(|&x| x <= 1)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |g: &Vec<u32>| {
            let parts: Vec<String> = g
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{e}", j + 1) })
                .collect();
            if parts.is_empty() { "1".to_string() } else { parts.join("*") }
        };
        write!(f, "({})", self.gens.iter().map(mono).join(", "))
    }
}

/// `Δ(I)`: the sets `F` containing the support of no generator.
pub fn radical_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if ideal.gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return Err(Error::Domain("the unit ideal has no Stanley-Reisner complex".into()));
    }
    let supports: Vec<VertexSet> = ideal.gens.iter().map(|g| support(g)).collect();
    let universe = VertexSet::full(ideal.r);
    let faces: Vec<VertexSet> =
        universe.subsets().filter(|f| !supports.iter().any(|s| s.is_subset(*f))).collect();
    Ok(SimplicialComplex::from_faces(universe, &faces))
}

/// `a . x >= b` with `a >= 0` and `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub a: Vec<u64>,
    pub b: u64,
}

impl Facet {
    pub fn support(&self) -> VertexSet {
        VertexSet::from_indices(self.a.iter().positions(|&x| x > 0))
    }

    pub fn lhs(&self, alpha: &[i64]) -> i128 {
        self.a.iter().zip(alpha).map(|(&a, &x)| a as i128 * x as i128).sum()
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| if c == 1 { format!("x{}", j + 1) } else { format!("{c}*x{}", j + 1) })
            .collect();
        write!(f, "{} >= {}", terms.join(" + "), self.b)
    }
}

/// `NP(I) = conv(exponents) + R_+^r` by its facets with positive right-hand
/// side; the coordinate facets `x_j >= 0` are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    r: usize,
    d_i: u32,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether each facet has every coefficient at most `d(I)^t`, `t` the
    /// size of its support.
    pub fn coefficient_bound_ok(&self) -> Vec<bool> {
        self.facets
            .iter()
            .map(|f| {
                let cap = BigInt::from(self.d_i).pow(f.support().len() as u32);
                f.a.iter().chain([&f.b]).all(|&x| BigInt::from(x) <= cap)
            })
            .collect()
    }

    /// `alpha` lies in `n NP(I)`.
    pub fn contains_scaled(&self, n: u64, alpha: &[i64]) -> bool {
        alpha.iter().all(|&x| x >= 0) && self.facets.iter().all(|f| f.lhs(alpha) >= f.b as i128 * n as i128)
    }
}

/// Facets by the cofactor construction: for a coordinate set `S` of size `t`
/// and `t` generators, expand `det [[x_S, 1], [g_S, 1], ..]` along its first
/// row. The hyperplane is parallel to every direction outside `S`.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> NewtonPolyhedron {
    let r = ideal.r;
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    for t in 1..=r {
        for coords in (0..r).combinations(t) {
            let mut pts: Vec<Vec<u32>> = ideal.gens.iter().map(|g| coords.iter().map(|&j| g[j]).collect()).collect();
            pts.sort();
            pts.dedup();
            for chosen in pts.iter().combinations(t) {
                let Some((normal, b)) = cofactor_normal(&chosen) else { continue };
                let mut a = vec![0u64; r];
                for (&j, v) in coords.iter().zip(&normal) {
                    a[j] = *v;
                }
                let facet = Facet { a, b };
                if b > 0 && ideal.gens.iter().all(|g| facet.a.iter().zip(g).map(|(&c, &x)| c * x as u64).sum::<u64>() >= b)
                {
                    found.insert(facet);
                }
            }
        }
    }
    NewtonPolyhedron { r, d_i: ideal.d_i, facets: found.into_iter().collect() }
}

/// The primitive nonnegative normal `a` and offset `b` of the hyperplane
/// through `t` points of `Z^t`; `None` for dependent or mixed-sign data.
fn cofactor_normal(points: &[&Vec<u32>]) -> Option<(Vec<u64>, u64)> {
    let t = points.len();
    // Rows of the t x (t+1) block under the symbolic first row.
    let block: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).chain([BigInt::one()]).collect())
        .collect();
    let cof = |col: usize| -> Option<BigInt> {
        let cols: Vec<usize> = (0..=t).filter(|&c| c != col).collect();
        let minor: Vec<Vec<BigInt>> = block.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = det(&IntMat::from_rows(&minor).ok()?).ok()?;
        Some(if col.is_multiple_of(2) { d } else { -d })
    };
    let mut normal: Vec<BigInt> = (0..t).map(cof).collect::<Option<_>>()?;
    let mut b = -cof(t)?;
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    if normal.iter().any(Signed::is_negative) {
        if normal.iter().any(Signed::is_positive) {
            return None;
        }
        normal.iter_mut().for_each(|x| *x = -x.clone());
        b = -b;
    }
    let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let normal: Vec<u64> = normal.iter().map(|x| (x / &g).to_u64()).collect::<Option<_>>()?;
    // b is an integer combination of the normal entries, hence divisible by g.
    let b = (b / &g).to_i64()?;
    (b > 0).then_some((normal, b as u64))
}

/// `X^alpha` lies in the integral closure of `I^n`.
pub fn in_closure_power(np: &NewtonPolyhedron, n: u64, alpha: &[i64]) -> bool {
    np.contains_scaled(n, alpha)
}

/// Minimal lattice points of `n NP(I)` inside `[0, cap]^r`, which generate
/// the integral closure of `I^n` whenever `cap >= n d(I)`.
///
/// A minimal generator `alpha` dominates some point `p` of `n conv(G(I))`,
/// and `alpha_j > n max_g g_j >= p_j` would leave `alpha - e_j` in the
/// polyhedron. So the search box is `[0, n max_g g_j]` per coordinate.
pub fn closure_power_generators(
    ideal: &MonomialIdeal,
    np: &NewtonPolyhedron,
    n: u64,
    cap: Option<u64>,
) -> Result<Vec<Vec<u32>>> {
    let floor = n * u64::from(ideal.d_i);
    let cap = cap.unwrap_or(floor * ideal.r as u64);
    if cap < floor {
        return Err(Error::Domain(format!("degree cap {cap} is below n d(I) = {floor}")));
    }
    let hi: Vec<u64> = (0..ideal.r)
        .map(|j| (n * u64::from(ideal.gens.iter().map(|g| g[j]).max().unwrap_or(0))).min(cap))
        .collect();
    Ok(minimal_points(&hi, |alpha| np.contains_scaled(n, alpha)))
}

/// Minimal points of an upward-closed set of lattice points, searched in
/// the box `[0, hi]`.
fn minimal_points(hi: &[u64], member: impl Fn(&[i64]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let ranges: Vec<std::ops::RangeInclusive<i64>> = hi.iter().map(|&h| 0..=h as i64).collect();
    for alpha in ranges.into_iter().multi_cartesian_product() {
        if !member(&alpha) {
            continue;
        }
        let minimal = (0..alpha.len()).filter(|&j| alpha[j] > 0).all(|j| {
            let mut below = alpha.clone();
            below[j] -= 1;
            !member(&below)
        });
        if minimal {
            out.push(alpha.iter().map(|&x| x as u32).collect());
        }
    }
    out.sort();
    out
}

/// A square-free monomial ideal together with its minimal primes, each
/// stored as the set of variables generating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeIdeal {
    base: MonomialIdeal,
    primes: Vec<VertexSet>,
}

impl SquareFreeIdeal {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        if !ideal.is_square_free() {
            return Err(Error::Domain(format!("{ideal} is not square-free")));
        }
        let universe = VertexSet::full(ideal.r);
        let primes = radical_complex(&ideal)?.facets().iter().map(|f| universe.minus(*f)).collect();
        Ok(SquareFreeIdeal { base: ideal, primes })
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn primes(&self) -> &[VertexSet] {
        &self.primes
    }

    /// `I^(n)` as the facet system `sum_{j in P} x_j >= n` over the primes `P`.
    pub fn facet_system(&self) -> Vec<Facet> {
        self.primes
            .iter()
            .map(|p| Facet { a: (0..self.base.r).map(|j| u64::from(p.contains(j))).collect(), b: 1 })
            .collect()
    }
}

/// `X^alpha` lies in `I^(n)`, the intersection of the `n`-th powers of the
/// minimal primes.
pub fn symbolic_membership(sf: &SquareFreeIdeal, n: u64, alpha: &[i64]) -> bool {
    alpha.iter().all(|&x| x >= 0)
        && sf.primes.iter().all(|p| p.indices().map(|j| alpha[j] as i128).sum::<i128>() >= n as i128)
}

/// Minimal generators of `I^(n)`; every coordinate of one is at most `n`.
pub fn symbolic_power_generators(sf: &SquareFreeIdeal, n: u64) -> Vec<Vec<u32>> {
    minimal_points(&vec![n; sf.base.r], |alpha| symbolic_membership(sf, n, alpha))
}
