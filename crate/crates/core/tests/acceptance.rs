//! Acceptance suite: one PASS or FAIL line per criterion, nonzero exit on
//! any failure. Runs without the libtest harness.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use paramip::exact::{Rat, SubdetStats, SUBDET_BUDGET};
use paramip::ideal::{in_closure_power, newton_polyhedron, Facet};
use paramip::ip::{kappa, solve_ip, sweep, IpSweep, ParamIP};
use paramip::lp::{solve_lp, OptValue};
use paramip::polyhedra::is_full_dimensional;
use paramip::quasilinear::{default_candidates, detect_law, floor_sum, jmax_and_delta, n_star, semigroup_members};
use paramip::regularity::{
    oracle_a_invariants, stability_report, theoretical_bounds, PowerFamily, RegularityEngine, CANDIDATE_CAP,
};
use paramip::simplicial::{SimplicialComplex, VertexSet};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn int(v: &OptValue) -> Option<i64> {
    v.value().map(|x| x.to_integer().to_i64().expect("small value"))
}

fn rat_of(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn laws_of(s: &IpSweep, delta: Option<u64>, slope: Option<&Rat>) -> Result<paramip::quasilinear::QuasiLinearLaw, String> {
    let max_period = ((s.n_hi - s.n_lo + 1) / 3).max(1);
    detect_law(s, &default_candidates(delta, max_period), 6, slope).map_err(|e| e.to_string())
}

fn primes_sweep() -> Outcome {
    let start = Instant::now();
    for p in [[2i64, 3], [2, 5]] {
        let pip = primes(&p);
        let s = sweep(&pip, 1, 60).map_err(|e| e.to_string())?;
        for (n, v) in s.iter() {
            let floors: i64 = p.iter().map(|&q| n as i64 / q).sum();
            let feasible = p.iter().map(|&q| q * (n as i64 / q)).sum::<i64>() >= n as i64;
            let want = feasible.then_some(floors);
            ensure(int(v) == want, || format!("p = {p:?}, n = {n}: got {v}, expected {want:?}"))?;
        }
        let info = jmax_and_delta(&pip, None).map_err(|e| e.to_string())?;
        let law = laws_of(&s, Some(info.delta), Some(&info.phi))?;
        let slope = rat_of(1, p[0]) + rat_of(1, p[1]);
        ensure(law.slope == slope, || format!("p = {p:?}: slope {} != {slope}", law.slope))?;
        ensure(((p[0] * p[1]) as u64).is_multiple_of(law.period), || format!("p = {p:?}: period {}", law.period))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("both prime pairs exact over [1, 60] in {t:.2?}"))
}

fn chain_thresholds() -> Outcome {
    let start = Instant::now();
    for (a, r) in [(2i64, 2usize), (2, 3), (3, 2)] {
        let pip = chain(a, r);
        let top = a.pow(r as u32) as u64;
        for n in 1..=4 * top {
            let v = solve_ip(&pip, n);
            let want = (n >= top).then(|| floor_sum(n, a as u64, r as u32) as i64);
            ensure(int(&v) == want, || format!("a = {a}, r = {r}, n = {n}: got {v}, expected {want:?}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("three chains exact up to 4 a^r in {t:.2?}"))
}

fn linearity_instances() -> Outcome {
    let tri = triangle();
    let info = jmax_and_delta(&tri, None).map_err(|e| e.to_string())?;
    ensure(info.delta == 1, || format!("triangle delta = {}", info.delta))?;
    let law = laws_of(&sweep(&tri, 1, 40).map_err(|e| e.to_string())?, Some(1), Some(&info.phi))?;
    ensure(law.period == 1, || format!("triangle period {}", law.period))?;

    let two = period_two();
    let info = jmax_and_delta(&two, None).map_err(|e| e.to_string())?;
    ensure(info.delta == 2, || format!("period-two delta = {}", info.delta))?;
    let s = sweep(&two, 1, 20).map_err(|e| e.to_string())?;
    for (n, v) in s.iter() {
        ensure(int(v) == Some(n as i64), || format!("period-two n = {n}: {v}"))?;
    }
    let law = laws_of(&s, Some(2), Some(&info.phi))?;
    ensure(law.period == 1, || format!("period-two detected period {}", law.period))?;
    Ok("triangle delta 1 period 1; second instance delta 2, period 1, M_n = n".into())
}

/// Accepts a random program when it is full-dimensional with a finite LP
/// optimum, has no row reading `0 <= c < 0`, and some exact multiple shows
/// up below the default cap.
fn accept(pip: &ParamIP) -> bool {
    let p = pip.polyhedron();
    is_full_dimensional(&p) && matches!(solve_lp(&p, &pip.d_rat()), OptValue::Finite { .. }) && kappa(pip).is_ok()
        && jmax_and_delta(pip, None).is_ok()
}

fn random_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0;
    let mut onset_checked = 0;
    let mut attempts = 0;
    let mut undetected = 0;
    while checked < 20 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("only {checked} admissible instances in {attempts} draws"));
        }
        let pip = random_program(&mut rng);
        if !accept(&pip) {
            continue;
        }
        checked += 1;
        let info = jmax_and_delta(&pip, None).map_err(|e| e.to_string())?;
        let phi = info.phi.clone();
        let ns = n_star(&pip);
        let hi = match ns.to_u64() {
            Some(x) if x <= 200 => (x + 3 * info.delta.max(1) + 8).max(60),
            _ => 60,
        };
        let h = sweep(&pip.homogeneous(), 1, hi).map_err(|e| e.to_string())?;
        let tag = || format!("{pip:?}");

        // Superadditivity of m_n.
        for a in 1..=hi {
            for b in a..=hi - a {
                if let (Some(x), Some(y), Some(z)) = (h.at(a), h.at(b), h.at(a + b)) {
                    if let (Some(x), Some(y)) = (x.value(), y.value()) {
                        let z = z.value().ok_or_else(|| format!("m_{} infeasible after m_{a}, m_{b}: {}", a + b, tag()))?;
                        ensure(*z >= x + y, || format!("m_{} < m_{a} + m_{b}: {}", a + b, tag()))?;
                    }
                }
            }
        }
        // m_n <= phi n, with equality on the semigroup of exact multiples.
        let members = semigroup_members(&info.members, hi);
        for (n, v) in h.iter() {
            let bound = &phi * Rat::from_integer(n.into());
            if let Some(x) = v.value() {
                ensure(*x <= bound, || format!("m_{n} = {x} > phi n: {}", tag()))?;
            }
            if members[n as usize] {
                ensure(v.value() == Some(&bound), || format!("m_{n} != phi n on the semigroup: {}", tag()))?;
            }
        }
        // Feasibility from kappa on.
        let k = kappa(&pip).map_err(|e| e.to_string())?.to_u64().ok_or("kappa too large")?;
        for n in k..k + 4 {
            ensure(solve_ip(&pip, n).is_feasible(), || format!("infeasible at n = {n} >= kappa = {k}: {}", tag()))?;
        }
        // M_{n+delta} - M_n = phi delta past the detected onset.
        let big = sweep(&pip, 1, hi).map_err(|e| e.to_string())?;
        let small = ns <= BigInt::from(200);
        let law = match laws_of(&big, Some(info.delta), Some(&phi)) {
            Ok(law) => law,
            Err(e) if small => return Err(format!("no law past N* = {ns}: {e}: {}", tag())),
            Err(_) => {
                undetected += 1;
                continue;
            }
        };
        let step = &phi * Rat::from_integer(info.delta.into());
        for n in law.onset..=hi.saturating_sub(info.delta) {
            let (x, y) = (big.at(n).unwrap(), big.at(n + info.delta).unwrap());
            if let (Some(x), Some(y)) = (x.value(), y.value()) {
                ensure(y - x == step, || format!("M_{} - M_{n} != phi delta: {}", n + info.delta, tag()))?;
            }
        }
        if small {
            onset_checked += 1;
            ensure(BigInt::from(law.onset) <= ns, || format!("onset {} > N* = {ns}: {}", law.onset, tag()))?;
        }
    }
    Ok(format!(
        "{checked} instances from {attempts} draws, onset compared with N* on {onset_checked}, \
         {undetected} with N* > 200 and no law inside [1, 60]"
    ))
}

fn newton_facets() -> Outcome {
    let np = newton_polyhedron(&not_closed());
    let mut want = vec![
        Facet { a: vec![1, 0], b: 1 },
        Facet { a: vec![0, 1], b: 1 },
        Facet { a: vec![1, 1], b: 5 },
        Facet { a: vec![1, 2], b: 7 },
    ];
    want.sort();
    ensure(np.facets() == want.as_slice(), || format!("facets {:?}", np.facets()))?;
    ensure(in_closure_power(&np, 1, &[2, 3]) && !not_closed().contains(&[2, 3]), || "(2,3) not a hole".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..10 {
        let i = random_ideal(&mut rng);
        let np = newton_polyhedron(&i);
        ensure(np.coefficient_bound_ok().iter().all(|&ok| ok), || format!("bound fails for {i}"))?;
    }
    Ok("four facets, hole (2,3), coefficient bound on 10 random ideals".into())
}

fn compare_routes(family: &PowerFamily, ns: std::ops::RangeInclusive<u64>) -> std::result::Result<(), String> {
    let engine = RegularityEngine::new(family.clone(), CANDIDATE_CAP).map_err(|e| e.to_string())?;
    for n in ns {
        let by_programs = engine.a_invariants(n).map_err(|e| e.to_string())?;
        let scan = oracle_a_invariants(family, n, None).map_err(|e| e.to_string())?;
        ensure(!scan.inconclusive, || format!("{} n = {n}: scan inconclusive", family.ideal()))?;
        ensure(by_programs == scan.report, || {
            format!("{} n = {n}: programs {:?}, scan {:?}", family.ideal(), by_programs.a, scan.report.a)
        })?;
    }
    Ok(())
}

fn takayama_equivalence() -> Outcome {
    let start = Instant::now();
    for i in [squares(), product(), not_closed()] {
        compare_routes(&PowerFamily::closure(i).map_err(|e| e.to_string())?, 1..=3)?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("three ideals, n <= 3, every a_i equal in {t:.2?}"))
}

fn squares_regularity() -> Outcome {
    let fam = PowerFamily::closure(squares()).map_err(|e| e.to_string())?;
    let engine = RegularityEngine::new(fam, CANDIDATE_CAP).map_err(|e| e.to_string())?;
    let rep = stability_report(&engine, 1, 8).map_err(|e| e.to_string())?;
    for row in &rep.rows {
        ensure(row.reg == Some(2 * row.n as i64 - 1), || format!("reg(R/J_{}) = {:?}", row.n, row.reg))?;
    }
    ensure(rep.reg_linear == Some((BigInt::from(2), BigInt::zero())), || format!("law {:?}", rep.reg_linear))?;
    ensure(rep.dim == 0, || format!("dim {}", rep.dim))?;
    ensure(rep.all_checks_hold(), || format!("{:?}", rep.checks))?;
    Ok("reg(R/J_n) = 2n - 1 on [1, 8], p = 2, e = 0, sandwich holds".into())
}

fn symbolic_slopes() -> Outcome {
    let start = Instant::now();
    for i in [triangle_edges(), path_edges()] {
        let fam = PowerFamily::symbolic(i).map_err(|e| e.to_string())?;
        let engine = RegularityEngine::new(fam.clone(), CANDIDATE_CAP).map_err(|e| e.to_string())?;
        let rep = stability_report(&engine, 1, 10).map_err(|e| e.to_string())?;
        ensure(rep.shared_slope, || format!("{}: slopes differ", fam.ideal()))?;
        ensure(rep.all_checks_hold(), || format!("{}: {:?}", fam.ideal(), rep.checks))?;
        compare_routes(&fam, 1..=4)?;
    }
    let cycle = PowerFamily::symbolic(four_cycle()).map_err(|e| e.to_string())?;
    let rep = stability_report(&RegularityEngine::new(cycle, CANDIDATE_CAP).map_err(|e| e.to_string())?, 1, 10)
        .map_err(|e| e.to_string())?;
    let slopes = rep.a_laws.iter().map(|l| if l.intercepts.iter().all(Option::is_none) { "-inf".into() } else { l.slope.to_string() }).join(", ");
    println!("     info: 4-cycle symbolic powers, per-i slopes [{slopes}], shared = {}", rep.shared_slope);
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("triangle and path ideals share slopes; routes agree for n <= 4 in {t:.2?}"))
}

fn bound_values() -> Outcome {
    let b = theoretical_bounds(2, 2).map_err(|e| e.to_string())?;
    ensure(b.n_dagger == BigInt::from(262_144), || format!("N_dagger {}", b.n_dagger))?;
    ensure(b.regst_bound == BigInt::from(12_288), || format!("regst bound {}", b.regst_bound))?;
    ensure(b.sym_bound == BigInt::from(64), || format!("symbolic bound {}", b.sym_bound))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut compared = 0;
    while compared < 30 {
        let pip = random_program(&mut rng);
        let exact = SubdetStats::compute(pip.a(), pip.b(), pip.c(), SUBDET_BUDGET).map_err(|e| e.to_string())?;
        let bound = SubdetStats::compute(pip.a(), pip.b(), pip.c(), 0).map_err(|e| e.to_string())?;
        if !exact.exact {
            continue;
        }
        compared += 1;
        ensure(
            bound.d >= exact.d && bound.d_prime >= exact.d_prime && bound.delta_max >= exact.delta_max,
            || format!("Hadamard undercuts on {pip:?}"),
        )?;
    }
    Ok(format!("262144, 12288, 64; Hadamard dominates exact on {compared} programs"))
}

fn homology_conventions() -> Outcome {
    let u = VertexSet::full(3);
    let empty = SimplicialComplex::from_facets(u, [VertexSet::EMPTY]);
    ensure(empty.reduced_homology_dim(-1) == 1, || "H_-1({∅}) != 1".into())?;
    let void = SimplicialComplex::void(u);
    ensure((-1..4).all(|k| void.reduced_homology_dim(k) == 0), || "void complex has homology".into())?;
    let hollow = SimplicialComplex::from_facets(u, [VertexSet(0b011), VertexSet(0b101), VertexSet(0b110)]);
    ensure(hollow.reduced_homology_dim(1) == 1, || "hollow triangle H_1 != 1".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for _ in 0..50 {
        let k = rng.gen_range(0..6);
        let c = SimplicialComplex::from_facets(VertexSet::full(6), (0..k).map(|_| VertexSet(rng.gen_range(0..64))));
        let (mut f, mut h) = (0i64, 0i64);
        for d in -1..6 {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            f += sign * c.faces(d).len() as i64;
            h += sign * c.reduced_homology_dim(d) as i64;
        }
        ensure(f == h, || format!("Euler characteristic mismatch on {c}"))?;
    }
    Ok("conventions hold; Euler-Poincare on 50 random complexes".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("prime-denominator sums: exact values, slope and period", primes_sweep),
        ("chains: feasibility threshold and floor sums", chain_thresholds),
        ("linearity: delta 1 gives period 1, delta 2 with period 1", linearity_instances),
        ("random programs: structural properties", random_structure),
        ("Newton polyhedron facets and coefficient bound", newton_facets),
        ("Takayama routes agree for closures", takayama_equivalence),
        ("closed-form regularity of (x1^2, x2^2)", squares_regularity),
        ("symbolic powers: shared slopes and route agreement", symbolic_slopes),
        ("bound calculators", bound_values),
        ("homology conventions", homology_conventions),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} [{:.2?}]", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why} [{:.2?}]", k + 1, start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
