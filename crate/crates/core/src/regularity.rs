//! Local cohomology of `R/J` for `J` the integral closure of `I^n` or the
//! symbolic power `I^(n)`, through Takayama's formula.
//!
//! Two independent routes compute the `a_i`-invariants. The integer
//! programming route groups the degrees `alpha` by the negative support
//! `N` and the set `L` of facet inequalities that `alpha` violates
//! strictly; each group is one integer program whose optimum is the
//! largest `|alpha|` in it. The definition route scans a box of degrees and
//! builds each complex `Δ_alpha` from generator membership.

use std::collections::HashMap;

use itertools::{Either, Itertools};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ceil_sqrt, IntMat, Rat, SUBDET_BUDGET};
use crate::ideal::{
    closure_power_generators, newton_polyhedron, radical_complex, symbolic_power_generators, Facet, MonomialIdeal,
    NewtonPolyhedron, SquareFreeIdeal,
};
use crate::ip::{solve_ip, IpSweep, ParamIP};
use crate::lp::OptValue;
use crate::quasilinear::{detect_law, QuasiLinearLaw};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Default cap on the number of `(N, L)` groups.
pub const CANDIDATE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Integral closures of the ordinary powers.
    Closure,
    /// Symbolic powers of a square-free ideal.
    Symbolic,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure" => Ok(Variant::Closure),
            "symbolic" => Ok(Variant::Symbolic),
            other => Err(Error::Parse(format!("unknown variant {other:?}, expected closure or symbolic"))),
        }
    }
}

#[derive(Clone, Debug)]
enum Source {
    Closure(NewtonPolyhedron),
    Symbolic(SquareFreeIdeal),
}

/// The family `n -> J_n` together with the facet system
/// `{a_i . x >= n b_i}` that describes `J_n` for every `n`.
#[derive(Clone, Debug)]
pub struct PowerFamily {
    ideal: MonomialIdeal,
    source: Source,
    facets: Vec<Facet>,
    complex: SimplicialComplex,
}

impl PowerFamily {
    pub fn closure(ideal: MonomialIdeal) -> Result<Self> {
        let complex = radical_complex(&ideal)?;
        let np = newton_polyhedron(&ideal);
        let facets = np.facets().to_vec();
        Ok(PowerFamily { ideal, source: Source::Closure(np), facets, complex })
    }

    pub fn symbolic(ideal: MonomialIdeal) -> Result<Self> {
        let sf = SquareFreeIdeal::new(ideal.clone())?;
        let complex = radical_complex(&ideal)?;
        let facets = sf.facet_system();
        Ok(PowerFamily { ideal, source: Source::Symbolic(sf), facets, complex })
    }

    pub fn new(ideal: MonomialIdeal, variant: Variant) -> Result<Self> {
        match variant {
            Variant::Closure => Self::closure(ideal),
            Variant::Symbolic => Self::symbolic(ideal),
        }
    }

    pub fn variant(&self) -> Variant {
        match self.source {
            Source::Closure(_) => Variant::Closure,
            Source::Symbolic(_) => Variant::Symbolic,
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn r(&self) -> usize {
        self.ideal.r()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn newton(&self) -> Option<&NewtonPolyhedron> {
        match &self.source {
            Source::Closure(np) => Some(np),
            Source::Symbolic(_) => None,
        }
    }

    pub fn square_free(&self) -> Option<&SquareFreeIdeal> {
        match &self.source {
            Source::Symbolic(sf) => Some(sf),
            Source::Closure(_) => None,
        }
    }

    /// `Δ(I)`, which is also the complex of every `J_n`.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Krull dimension of `R/I`, the largest face size of `Δ(I)`.
    pub fn dim(&self) -> usize {
        self.complex.max_face_size().unwrap_or(0)
    }

    /// Minimal generators of `J_n`.
    pub fn generators(&self, n: u64) -> Result<Vec<Vec<u32>>> {
        match &self.source {
            Source::Closure(np) => closure_power_generators(&self.ideal, np, n, None),
            Source::Symbolic(sf) => Ok(symbolic_power_generators(sf, n)),
        }
    }
}

/// `supp⁻(alpha)`, the coordinates where `alpha` is negative.
pub fn negative_support(alpha: &[i64]) -> VertexSet {
    VertexSet::from_indices(alpha.iter().enumerate().filter(|(_, &x)| x < 0).map(|(j, _)| j))
}

fn check_negative_support(delta_i: &SimplicialComplex, alpha: &[i64]) -> Result<VertexSet> {
    let neg = negative_support(alpha);
    if !delta_i.contains_face(neg) {
        return Err(Error::Domain(format!("negative support {neg} is not a face of the complex of I")));
    }
    Ok(neg)
}

/// `Δ_alpha` of the closure of `I^n` from the Newton facets: one facet
/// `[r] ∖ (supp a_i ∪ N)` per inequality that misses `N` and fails strictly.
pub fn delta_alpha_closure(
    np: &NewtonPolyhedron,
    delta_i: &SimplicialComplex,
    n: u64,
    alpha: &[i64],
) -> Result<SimplicialComplex> {
    let neg = check_negative_support(delta_i, alpha)?;
    Ok(delta_alpha_from_facets(np.facets(), np.r(), neg, n, alpha))
}

fn delta_alpha_from_facets(facets: &[Facet], r: usize, neg: VertexSet, n: u64, alpha: &[i64]) -> SimplicialComplex {
    let universe = VertexSet::full(r);
    let sets = facets.iter().filter_map(|f| {
        let supp = f.support();
        (supp.intersection(neg).is_empty() && f.lhs(alpha) < f.b as i128 * n as i128)
            .then(|| universe.minus(supp.union(neg)))
    });
    SimplicialComplex::from_facets(universe, sets)
}

/// `Δ_alpha` of `I^(n)`: the sets `F ∖ N` over facets `F ⊇ N` of `Δ(I)`
/// whose complement carries total degree at most `n - 1`.
pub fn delta_alpha_symbolic(sf: &SquareFreeIdeal, n: u64, alpha: &[i64]) -> Result<SimplicialComplex> {
    let r = sf.base().r();
    let delta_i = radical_complex(sf.base())?;
    let neg = check_negative_support(&delta_i, alpha)?;
    let universe = VertexSet::full(r);
    let sets = delta_i.facets().iter().filter_map(|&f| {
        let outside: i128 = universe.minus(f).indices().map(|j| alpha[j] as i128).sum();
        (neg.is_subset(f) && outside < n as i128).then(|| f.minus(neg))
    });
    Ok(SimplicialComplex::from_facets(universe, sets))
}

/// `Δ_alpha(J)` straight from the definition: `F ⊆ [r] ∖ N` is a face when
/// no generator of `J` is bounded by `alpha` off `F ∪ N`.
pub fn delta_alpha_by_definition(gens: &[Vec<u32>], r: usize, alpha: &[i64]) -> SimplicialComplex {
    let neg = negative_support(alpha);
    let universe = VertexSet::full(r);
    let free = universe.minus(neg);
    let faces: Vec<VertexSet> = free
        .subsets()
        .filter(|&f| {
            let inverted = f.union(neg);
            !gens.iter().any(|g| (0..r).all(|j| inverted.contains(j) || i64::from(g[j]) <= alpha[j]))
        })
        .collect();
    SimplicialComplex::from_faces(universe, &faces)
}

/// `dim H^i_m(R/J_n)_alpha`. Zero when `supp⁻(alpha)` is not a face of `Δ(I)`.
pub fn takayama_dim(family: &PowerFamily, n: u64, i: usize, alpha: &[i64]) -> usize {
    let neg = negative_support(alpha);
    if !family.complex.contains_face(neg) {
        return 0;
    }
    let gamma = delta_alpha_from_facets(&family.facets, family.r(), neg, n, alpha);
    gamma.reduced_homology_dim(i as i32 - neg.len() as i32 - 1)
}

/// One group of degrees: negative support `supp_neg`, strictly violated
/// inequalities `active_le` and satisfied ones `active_ge` (every other
/// inequality missing `supp_neg`). All its degrees share the complex `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCandidate {
    pub supp_neg: VertexSet,
    pub active_le: Vec<usize>,
    pub active_ge: Vec<usize>,
    pub gamma: SimplicialComplex,
}

impl GammaCandidate {
    /// The free coordinates `[r] ∖ supp_neg`, in increasing order.
    pub fn variables(&self, r: usize) -> Vec<usize> {
        VertexSet::full(r).minus(self.supp_neg).indices().collect()
    }

    /// `max sum x` over `a'_i x <= n b_i - 1` on `active_le` and
    /// `a'_l x >= n b_l` on `active_ge`, as a parametric program.
    pub fn program(&self, facets: &[Facet], r: usize) -> Result<ParamIP> {
        let vars = self.variables(r);
        let mut rows = Vec::new();
        let (mut b, mut c) = (Vec::new(), Vec::new());
        for &i in &self.active_le {
            rows.push(vars.iter().map(|&j| BigInt::from(facets[i].a[j])).collect::<Vec<_>>());
            b.push(BigInt::from(facets[i].b));
            c.push(-BigInt::one());
        }
        for &l in &self.active_ge {
            rows.push(vars.iter().map(|&j| -BigInt::from(facets[l].a[j])).collect::<Vec<_>>());
            b.push(-BigInt::from(facets[l].b));
            c.push(BigInt::zero());
        }
        ParamIP::new(IntMat::from_rows(&rows)?, b, c, vec![BigInt::one(); vars.len()])
    }

    /// Homological degree paired with `a_i`.
    pub fn homology_index(&self, i: usize) -> i32 {
        i as i32 - self.supp_neg.len() as i32 - 1
    }
}

/// Every `(N, L)` group with `N` a face of `Δ(I)` and `L` a nonempty set
/// of inequalities missing `N`.
pub fn enumerate_gamma_candidates(family: &PowerFamily, cap: usize) -> Result<Vec<GammaCandidate>> {
    let r = family.r();
    let universe = VertexSet::full(r);
    let mut out = Vec::new();
    for neg in universe.subsets().filter(|&f| family.complex.contains_face(f)) {
        let admissible: Vec<usize> =
            (0..family.facets.len()).filter(|&i| family.facets[i].support().intersection(neg).is_empty()).collect();
        if admissible.len() >= 32 {
            return Err(Error::Budget(format!("{} admissible inequalities for one negative support", admissible.len())));
        }
        for mask in 1u32..(1u32 << admissible.len()) {
            if out.len() >= cap {
                return Err(Error::Budget(format!("more than {cap} candidate complexes")));
            }
            let chosen = VertexSet(mask);
            let (active_le, active_ge): (Vec<usize>, Vec<usize>) =
                admissible.iter().enumerate().partition_map(|(k, &i)| {
                    if chosen.contains(k) { Either::Left(i) } else { Either::Right(i) }
                });
            let gamma = SimplicialComplex::from_facets(
                universe,
                active_le.iter().map(|&i| universe.minus(family.facets[i].support().union(neg))),
            );
            out.push(GammaCandidate { supp_neg: neg, active_le, active_ge, gamma });
        }
    }
    Ok(out)
}

/// `a_{Γ,i}(R/J_n)`: the program optimum shifted by `r' - r`, or `-inf`
/// when the paired homology vanishes or no degree of the group exists.
pub fn a_gamma_i(candidate: &GammaCandidate, family: &PowerFamily, n: u64, i: usize) -> Result<OptValue> {
    if candidate.gamma.reduced_homology_dim(candidate.homology_index(i)) == 0 {
        return Ok(OptValue::NegInfinity);
    }
    let pip = candidate.program(&family.facets, family.r())?;
    shifted_optimum(&pip, candidate, n)
}

fn shifted_optimum(pip: &ParamIP, candidate: &GammaCandidate, n: u64) -> Result<OptValue> {
    match solve_ip(pip, n) {
        OptValue::NegInfinity => Ok(OptValue::NegInfinity),
        OptValue::Finite { value, .. } => {
            // r' - r = -|N|
            let shift = candidate.supp_neg.len() as i64;
            Ok(OptValue::finite(value - Rat::from_integer(BigInt::from(shift))))
        }
        OptValue::PosInfinity => Err(Error::Invariant(format!(
            "group with negative support {} has nonzero homology but an unbounded program",
            candidate.supp_neg
        ))),
    }
}

/// `a_0, .., a_dim` of `R/J_n` (`None` is `-inf`) and `reg(R/J_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub n: u64,
    pub a: Vec<Option<i64>>,
    pub reg: Option<i64>,
}

impl CohomologyReport {
    fn new(n: u64, a: Vec<Option<i64>>) -> Self {
        let reg = a.iter().enumerate().filter_map(|(i, v)| v.map(|v| v + i as i64)).max();
        CohomologyReport { n, a, reg }
    }

    /// `reg(J_n) = reg(R/J_n) + 1`.
    pub fn reg_ideal(&self) -> Option<i64> {
        self.reg.map(|x| x + 1)
    }
}

/// A candidate whose complex carries homology in some relevant degree,
/// with its program built once.
#[derive(Clone, Debug)]
struct ActiveCandidate {
    candidate: GammaCandidate,
    nonzero: Vec<bool>,
    program: ParamIP,
}

/// The integer programming route, prepared once per family and reused
/// across powers.
#[derive(Clone, Debug)]
pub struct RegularityEngine {
    family: PowerFamily,
    total: usize,
    active: Vec<ActiveCandidate>,
}

impl RegularityEngine {
    pub fn new(family: PowerFamily, cap: usize) -> Result<Self> {
        let dim = family.dim();
        let r = family.r();
        let all = enumerate_gamma_candidates(&family, cap)?;
        let total = all.len();
        let mut cache: HashMap<(SimplicialComplex, i32), bool> = HashMap::new();
        let mut active = Vec::new();
        for candidate in all {
            let nonzero: Vec<bool> = (0..=dim)
                .map(|i| {
                    let k = candidate.homology_index(i);
                    *cache
                        .entry((candidate.gamma.clone(), k))
                        .or_insert_with(|| candidate.gamma.reduced_homology_dim(k) > 0)
                })
                .collect();
            if !nonzero.iter().any(|&x| x) {
                continue;
            }
            // A free coordinate outside every strict inequality is a cone
            // point of gamma, which would kill the homology.
            let covered = candidate
                .active_le
                .iter()
                .fold(candidate.supp_neg, |acc, &i| acc.union(family.facets[i].support()));
            if covered != VertexSet::full(r) {
                return Err(Error::Invariant(format!(
                    "complex {} has homology yet its program is unbounded",
                    candidate.gamma
                )));
            }
            let program = candidate.program(&family.facets, r)?;
            active.push(ActiveCandidate { candidate, nonzero, program });
        }
        Ok(RegularityEngine { family, total, active })
    }

    pub fn family(&self) -> &PowerFamily {
        &self.family
    }

    /// Number of groups enumerated, and how many carry homology.
    pub fn candidate_counts(&self) -> (usize, usize) {
        (self.total, self.active.len())
    }

    pub fn a_invariants(&self, n: u64) -> Result<CohomologyReport> {
        let dim = self.family.dim();
        let mut best: Vec<Option<i64>> = vec![None; dim + 1];
        for ac in &self.active {
            let v = shifted_optimum(&ac.program, &ac.candidate, n)?;
            let Some(value) = v.value() else { continue };
            let value = value.to_integer().to_i64().ok_or_else(|| Error::Budget("a-invariant beyond i64".into()))?;
            for i in (0..=dim).filter(|&i| ac.nonzero[i]) {
                best[i] = Some(best[i].map_or(value, |b| b.max(value)));
            }
        }
        Ok(CohomologyReport::new(n, best))
    }

    /// Per `i`, the largest subdeterminant `D` over the programs paired with
    /// a nonvanishing homology group in degree `i`.
    pub fn subdet_by_index(&self) -> Vec<BigInt> {
        let dim = self.family.dim();
        let stats: Vec<BigInt> = self.active.iter().map(|ac| ac.program.subdet_stats(SUBDET_BUDGET).d).collect();
        (0..=dim)
            .map(|i| {
                self.active
                    .iter()
                    .zip(&stats)
                    .filter(|(ac, _)| ac.nonzero[i])
                    .map(|(_, d)| d.clone())
                    .max()
                    .unwrap_or_else(BigInt::one)
            })
            .collect()
    }

    /// `max(N*, 2 r^2 D^3)` over every program with homology: from here on
    /// each `a_i` follows its final quasi-linear law.
    pub fn instance_onset_bound(&self) -> BigInt {
        let r = BigInt::from(self.family.r());
        self.active
            .iter()
            .map(|ac| {
                let st = ac.program.subdet_stats(SUBDET_BUDGET);
                let n_star = (&r + 1u32) * &st.d_prime * (&st.d - 1u32) + (&r + 2u32) * &st.delta_max - &st.d;
                let tail = BigInt::from(2u32) * &r * &r * st.d.pow(3);
                n_star.max(tail)
            })
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

pub fn a_invariants(family: &PowerFamily, n: u64) -> Result<CohomologyReport> {
    RegularityEngine::new(family.clone(), CANDIDATE_CAP)?.a_invariants(n)
}

/// Result of the definition route over a box of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub report: CohomologyReport,
    /// A degree attaining some `a_i`.
    pub maximizers: Vec<Option<Vec<i64>>>,
    /// The box was supplied, smaller than the certified one, and a maximum
    /// sits on its boundary.
    pub inconclusive: bool,
    pub box_lo: Vec<i64>,
    pub box_hi: Vec<i64>,
}

/// A box containing every degree with nonzero local cohomology: coordinates
/// go down to `-1` (all negative values give the same complex) and up to
/// one less than the largest generator exponent, beyond which the
/// coordinate is a cone point of `Δ_alpha`.
pub fn certified_box(gens: &[Vec<u32>], r: usize) -> (Vec<i64>, Vec<i64>) {
    let hi = (0..r).map(|j| gens.iter().map(|g| i64::from(g[j])).max().unwrap_or(0) - 1).collect();
    (vec![-1; r], hi)
}

/// `a_i(R/J_n)` by scanning degrees, with `Δ_alpha` built from the
/// definition. `bounds` overrides the certified box with `[lo, hi]^r`.
pub fn oracle_a_invariants(family: &PowerFamily, n: u64, bounds: Option<(i64, i64)>) -> Result<OracleReport> {
    let r = family.r();
    let dim = family.dim();
    let gens = family.generators(n)?;
    let (cert_lo, cert_hi) = certified_box(&gens, r);
    let (lo, hi) = match bounds {
        Some((l, h)) => (vec![l; r], vec![h; r]),
        None => (cert_lo.clone(), cert_hi.clone()),
    };
    let mut best: Vec<Option<i64>> = vec![None; dim + 1];
    let mut maximizers: Vec<Option<Vec<i64>>> = vec![None; dim + 1];
    let mut cache: HashMap<SimplicialComplex, Vec<usize>> = HashMap::new();
    let ranges: Vec<std::ops::RangeInclusive<i64>> = lo.iter().zip(&hi).map(|(&l, &h)| l..=h).collect();
    for alpha in ranges.into_iter().multi_cartesian_product() {
        let neg = negative_support(&alpha);
        if !family.complex.contains_face(neg) {
            continue;
        }
        let gamma = delta_alpha_by_definition(&gens, r, &alpha);
        let dims = cache
            .entry(gamma)
            .or_insert_with_key(|g| (-1..=dim as i32).map(|k| g.reduced_homology_dim(k)).collect());
        let size: i64 = alpha.iter().sum();
        for i in 0..=dim {
            let k = i as i32 - neg.len() as i32 - 1;
            if k < -1 || dims[(k + 1) as usize] == 0 {
                continue;
            }
            if best[i].is_none_or(|b| size > b) {
                best[i] = Some(size);
                maximizers[i] = Some(alpha.clone());
            }
        }
    }
    let inconclusive = bounds.is_some() && {
        let covers = lo.iter().zip(&cert_lo).all(|(a, b)| a <= b) && hi.iter().zip(&cert_hi).all(|(a, b)| a >= b);
        !covers
            && maximizers
                .iter()
                .flatten()
                .any(|m| m.iter().zip(&hi).any(|(x, h)| x == h) || lo.iter().any(|&l| l > -1))
    };
    Ok(OracleReport { report: CohomologyReport::new(n, best), maximizers, inconclusive, box_lo: lo, box_hi: hi })
}

/// The closed-form thresholds; `None` outside `r >= 2`, `d(I) >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoreticalBounds {
    /// `2 r^{2+3r/2} d^{3r^2}`, rounded up when `r` is odd.
    pub n_dagger: BigInt,
    /// `(r+1)(r+2) r^r d^{2r^2}`.
    pub regst_bound: BigInt,
    /// `2 r^{2+3r/2}`, rounded up when `r` is odd.
    pub sym_bound: BigInt,
}

pub fn theoretical_bounds(r: usize, d: u32) -> Result<TheoreticalBounds> {
    if r < 2 || d < 2 {
        return Err(Error::Domain(format!("the bounds need r >= 2 and d(I) >= 2, got r = {r}, d(I) = {d}")));
    }
    let rb = BigInt::from(r);
    let db = BigInt::from(d);
    let r32 = r as u32;
    // 2 r^{2 + 3r/2} = sqrt(4 r^{4 + 3r}), exact for even r.
    let sym_sq = BigInt::from(4u32) * rb.pow(4 + 3 * r32);
    let n_dagger = ceil_sqrt(&(&sym_sq * db.pow(6 * r32 * r32)));
    let regst_bound = BigInt::from((r + 1) * (r + 2)) * rb.pow(r32) * db.pow(2 * r32 * r32);
    Ok(TheoreticalBounds { n_dagger, regst_bound, sym_bound: ceil_sqrt(&sym_sq) })
}

/// A named property checked on the computed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub variant: Variant,
    pub dim: usize,
    pub rows: Vec<CohomologyReport>,
    /// Per `i`; a law with no defined intercept means `a_i = -inf` throughout the tail.
    pub a_laws: Vec<QuasiLinearLaw>,
    /// Law of `reg(J_n)`.
    pub reg_law: QuasiLinearLaw,
    /// `(p, e)` with `reg(J_n) = p n + e` once the law is linear with integral data.
    pub reg_linear: Option<(BigInt, BigInt)>,
    pub empirical_onset: u64,
    /// Least common multiple of the validated periods.
    pub period_lcm: u64,
    pub bounds: Option<TheoreticalBounds>,
    pub instance_onset_bound: BigInt,
    /// Whether the eventually finite `a_i` all have the same slope. Each law
    /// has one slope across its residue classes by construction, but
    /// different `i` may differ: for `(x1,x3) ∩ (x2,x4)` the symbolic powers
    /// have `a_1 = 2n - 2` and `a_2 = n - 3`.
    pub shared_slope: bool,
    pub checks: Vec<Check>,
}

impl StabilityReport {
    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Trailing points required beyond a detected onset.
pub const LAW_WINDOW: usize = 4;

fn to_sweep(n_lo: u64, values: impl Iterator<Item = Option<i64>>) -> IpSweep {
    IpSweep::from_values(
        n_lo,
        values.map(|v| v.map_or(OptValue::NegInfinity, |x| OptValue::finite(Rat::from_integer(x.into())))).collect(),
    )
}

/// Sweeps `n_lo..=n_hi`, detects the law of every `a_i` and of the
/// regularity, and checks the structural properties those laws must have.
pub fn stability_report(engine: &RegularityEngine, n_lo: u64, n_hi: u64) -> Result<StabilityReport> {
    if n_lo == 0 || n_hi < n_lo {
        return Err(Error::Domain(format!("invalid power range {n_lo}:{n_hi}")));
    }
    let family = engine.family();
    let dim = family.dim();
    let r = family.r();
    let rows: Vec<CohomologyReport> =
        (n_lo..=n_hi).into_par_iter().map(|n| engine.a_invariants(n)).collect::<Result<_>>()?;
    let max_period = ((n_hi - n_lo + 1) / 3).max(1);
    let candidates: Vec<u64> = (1..=max_period).collect();
    let mut a_laws = Vec::with_capacity(dim + 1);
    for i in 0..=dim {
        let sweep = to_sweep(n_lo, rows.iter().map(|row| row.a[i]));
        a_laws.push(detect_law(&sweep, &candidates, LAW_WINDOW, None).map_err(|e| tag(e, &format!("a_{i}")))?);
    }
    let reg_sweep = to_sweep(n_lo, rows.iter().map(CohomologyReport::reg_ideal));
    let reg_law = detect_law(&reg_sweep, &candidates, LAW_WINDOW, None).map_err(|e| tag(e, "reg"))?;
    let reg_linear = match (reg_law.period, &reg_law.intercepts[0]) {
        (1, Some(e)) if reg_law.slope.is_integer() && e.is_integer() => {
            Some((reg_law.slope.to_integer(), e.to_integer()))
        }
        _ => None,
    };
    let empirical_onset = a_laws.iter().chain([&reg_law]).map(|l| l.onset).max().unwrap_or(n_lo);
    let period_lcm = a_laws.iter().chain([&reg_law]).fold(1u64, |acc, l| acc.lcm(&l.period));
    let bounds = theoretical_bounds(r, family.ideal().max_degree()).ok();

    let mut checks = Vec::new();
    let finite_slopes: Vec<&Rat> =
        a_laws.iter().filter(|l| l.intercepts.iter().any(Option::is_some)).map(|l| &l.slope).collect();
    let shared_slope = finite_slopes.windows(2).all(|w| w[0] == w[1]);
    let d_by_i = engine.subdet_by_index();
    let rr = BigInt::from(r);
    for (i, law) in a_laws.iter().enumerate() {
        if law.intercepts.iter().all(Option::is_none) {
            continue;
        }
        let d = &d_by_i[i];
        let low = Rat::from_integer(-(BigInt::from(2u32) * &rr * &rr * d));
        checks.push(Check {
            name: format!("a_{i} slope is nonnegative with denominator at most D = {d}"),
            holds: !law.slope.is_negative() && law.slope.denom() <= d,
        });
        checks.push(Check {
            name: format!("a_{i} intercepts lie in [-2 r^2 D, 0]"),
            holds: law.intercepts.iter().flatten().all(|b| *b >= low && !b.is_positive()),
        });
    }
    if family.variant() == Variant::Closure {
        let dim_b = BigInt::from(dim);
        match &reg_linear {
            Some((p, e)) => {
                checks.push(Check {
                    name: format!("reg slope p = {p} is positive and at most d(I)"),
                    holds: p.is_positive() && *p <= BigInt::from(family.ideal().max_degree()),
                });
                checks.push(Check {
                    name: format!("reg intercept e = {e} lies in [0, dim R/I]"),
                    holds: !e.is_negative() && *e <= dim_b,
                });
                let sandwich = rows.iter().all(|row| {
                    row.reg_ideal().is_some_and(|reg| {
                        let pn = p * BigInt::from(row.n);
                        let reg = BigInt::from(reg);
                        pn <= reg && reg <= pn + &dim_b
                    })
                });
                checks.push(Check { name: "p n <= reg <= p n + dim R/I at every n".into(), holds: sandwich });
            }
            None => checks.push(Check { name: "reg of the closures is eventually linear".into(), holds: false }),
        }
    }
    Ok(StabilityReport {
        variant: family.variant(),
        dim,
        rows,
        a_laws,
        reg_law,
        reg_linear,
        empirical_onset,
        period_lcm,
        bounds,
        instance_onset_bound: engine.instance_onset_bound(),
        shared_slope,
        checks,
    })
}

fn tag(e: Error, what: &str) -> Error {
    match e {
        Error::Detection { residuals } => {
            Error::Detection { residuals: residuals.into_iter().map(|l| format!("{what}: {l}")).collect() }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::minimalize;

    fn ideal(r: usize, gens: &[&[u32]]) -> MonomialIdeal {
        minimalize(r, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn squares() -> PowerFamily {
        PowerFamily::closure(ideal(2, &[&[2, 0], &[0, 2]])).unwrap()
    }

    fn triangle() -> MonomialIdeal {
        ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
    }

    #[test]
    fn delta_alpha_examples() {
        let fam = squares();
        let np = fam.newton().unwrap();
        let g = delta_alpha_closure(np, fam.complex(), 1, &[1, 0]).unwrap();
        assert_eq!(g.facets(), &[VertexSet::EMPTY]);
        assert_eq!(&delta_alpha_closure(np, fam.complex(), 1, &[0, 0]).unwrap(), fam.complex());
        assert!(matches!(delta_alpha_closure(np, fam.complex(), 1, &[-1, 0]), Err(Error::Domain(_))));

        let sf = SquareFreeIdeal::new(triangle()).unwrap();
        assert!(delta_alpha_symbolic(&sf, 2, &[1, 1, 1]).unwrap().is_void());
        assert_eq!(delta_alpha_symbolic(&sf, 1, &[0, 0, 0]).unwrap(), radical_complex(&triangle()).unwrap());
    }

    #[test]
    fn takayama_examples() {
        let fam = squares();
        assert_eq!(takayama_dim(&fam, 1, 0, &[1, 0]), 1);
        assert_eq!(takayama_dim(&fam, 1, 0, &[-1, 0]), 0);
        assert_eq!(takayama_dim(&fam, 1, 3, &[0, 0]), 0);
    }

    #[test]
    fn candidates_for_squares() {
        let cands = enumerate_gamma_candidates(&squares(), CANDIDATE_CAP).unwrap();
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].supp_neg, VertexSet::EMPTY);
        assert_eq!(cands[0].active_le, vec![0]);
        assert!(cands[0].active_ge.is_empty());
        assert_eq!(cands[0].gamma.facets(), &[VertexSet::EMPTY]);
        assert!(matches!(enumerate_gamma_candidates(&squares(), 0), Err(Error::Budget(_))));

        let tri = PowerFamily::symbolic(triangle()).unwrap();
        let cands = enumerate_gamma_candidates(&tri, CANDIDATE_CAP).unwrap();
        // Seven subsets of the three primes with N empty, one for each vertex.
        assert_eq!(cands.len(), 7 + 3);
    }

    #[test]
    fn squares_closed_form() {
        let fam = squares();
        let cand = &enumerate_gamma_candidates(&fam, CANDIDATE_CAP).unwrap()[0];
        for n in 1..=5u64 {
            let v = a_gamma_i(cand, &fam, n, 0).unwrap();
            assert_eq!(v, OptValue::finite(Rat::from_integer((2 * n as i64 - 1).into())));
            let rep = a_invariants(&fam, n).unwrap();
            assert_eq!(rep.a, vec![Some(2 * n as i64 - 1)]);
            assert_eq!(rep.reg_ideal(), Some(2 * n as i64));
        }
    }

    #[test]
    fn single_product() {
        let fam = PowerFamily::closure(ideal(2, &[&[1, 1]])).unwrap();
        let rep = a_invariants(&fam, 1).unwrap();
        assert_eq!(rep.reg, Some(1));
        assert_eq!(oracle_a_invariants(&fam, 1, None).unwrap().report, rep);
    }

    #[test]
    fn routes_agree_on_small_ideals() {
        let ideals = [
            ideal(2, &[&[2, 0], &[0, 2]]),
            ideal(2, &[&[1, 4], &[3, 2], &[5, 1]]),
            ideal(3, &[&[2, 0, 0], &[0, 1, 1]]),
            ideal(3, &[&[1, 1, 0], &[0, 2, 1]]),
        ];
        for i in ideals {
            let fam = PowerFamily::closure(i).unwrap();
            let engine = RegularityEngine::new(fam.clone(), CANDIDATE_CAP).unwrap();
            for n in 1..=2 {
                let oracle = oracle_a_invariants(&fam, n, None).unwrap();
                assert!(!oracle.inconclusive);
                assert_eq!(engine.a_invariants(n).unwrap(), oracle.report, "{} n = {n}", fam.ideal());
            }
        }
    }

    #[test]
    fn facet_formulas_match_definition() {
        let fams = [
            PowerFamily::closure(ideal(2, &[&[1, 4], &[3, 2], &[5, 1]])).unwrap(),
            PowerFamily::closure(ideal(3, &[&[2, 1, 0], &[0, 1, 2], &[1, 0, 1]])).unwrap(),
        ];
        for fam in fams {
            let np = fam.newton().unwrap();
            for n in 1..=3u64 {
                let gens = fam.generators(n).unwrap();
                for alpha in (0..fam.r()).map(|_| -1i64..=7).multi_cartesian_product() {
                    let neg = negative_support(&alpha);
                    if !fam.complex().contains_face(neg) {
                        continue;
                    }
                    let by_facets = delta_alpha_closure(np, fam.complex(), n, &alpha).unwrap();
                    assert_eq!(by_facets, delta_alpha_by_definition(&gens, fam.r(), &alpha), "{alpha:?} n = {n}");
                }
            }
        }
        let sf = SquareFreeIdeal::new(triangle()).unwrap();
        let fam = PowerFamily::symbolic(triangle()).unwrap();
        for n in 1..=3u64 {
            let gens = fam.generators(n).unwrap();
            for alpha in (0..3).map(|_| -2i64..=4).multi_cartesian_product() {
                if !fam.complex().contains_face(negative_support(&alpha)) {
                    continue;
                }
                let by_formula = delta_alpha_symbolic(&sf, n, &alpha).unwrap();
                assert_eq!(by_formula, delta_alpha_by_definition(&gens, 3, &alpha), "{alpha:?} n = {n}");
            }
        }
    }

    #[test]
    fn bounds_plug_in() {
        let b = theoretical_bounds(2, 2).unwrap();
        assert_eq!(b.n_dagger, BigInt::from(262_144));
        assert_eq!(b.regst_bound, BigInt::from(12_288));
        assert_eq!(b.sym_bound, BigInt::from(64));
        // r = 3: 2 * 3^{6.5} = 2 * 729 * sqrt(3), rounded up.
        assert_eq!(theoretical_bounds(3, 2).unwrap().sym_bound, BigInt::from(2526));
        assert!(matches!(theoretical_bounds(1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn squares_stability() {
        let engine = RegularityEngine::new(squares(), CANDIDATE_CAP).unwrap();
        let rep = stability_report(&engine, 1, 8).unwrap();
        assert_eq!(rep.reg_linear, Some((BigInt::from(2), BigInt::from(0))));
        assert!(rep.all_checks_hold(), "{:?}", rep.checks);
        assert_eq!(rep.a_laws[0].slope, Rat::from_integer(2.into()));
    }

    #[test]
    fn oracle_box_override() {
        let fam = squares();
        let small = oracle_a_invariants(&fam, 3, Some((-1, 2))).unwrap();
        assert!(small.inconclusive);
        let big = oracle_a_invariants(&fam, 3, Some((-1, 9))).unwrap();
        assert!(!big.inconclusive);
        assert_eq!(big.report.a, vec![Some(5)]);
    }

    #[test]
    fn four_cycle_slopes_differ() {
        let fam = PowerFamily::symbolic(ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]])).unwrap();
        let engine = RegularityEngine::new(fam, CANDIDATE_CAP).unwrap();
        let rep = stability_report(&engine, 1, 10).unwrap();
        for row in &rep.rows {
            let n = row.n as i64;
            assert_eq!(row.a, vec![None, Some(2 * n - 2), Some(n - 3)]);
        }
        assert!(!rep.shared_slope);
        assert!(rep.all_checks_hold());
    }
}
