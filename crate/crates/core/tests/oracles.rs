mod common;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use paramip::exact::Rat;
use paramip::ideal::{closure_power_generators, newton_polyhedron, radical_complex, symbolic_power_generators, SquareFreeIdeal};
use paramip::ip::{enumerate_ip, solve_ip, sweep};
use paramip::lp::{lp_value_law, solve_lp, OptValue};
use paramip::polyhedra::is_full_dimensional;
use paramip::quasilinear::floor_sum;
use paramip::regularity::{
    delta_alpha_by_definition, delta_alpha_closure, delta_alpha_symbolic, oracle_a_invariants, PowerFamily,
    RegularityEngine, CANDIDATE_CAP,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn exps(report: &paramip::regularity::CohomologyReport) -> Vec<Option<i64>> {
    report.a.clone()
}

#[test]
fn branch_and_bound_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    while compared < 60 {
        let pip = random_program(&mut rng);
        let n = rng.gen_range(1..=6);
        let Ok(brute) = enumerate_ip(&pip, n, None, 200_000) else { continue };
        compared += 1;
        assert_eq!(solve_ip(&pip, n).value(), brute.value(), "{pip:?} at n = {n}");
    }
}

#[test]
fn exhaustive_search_in_a_box_sees_unbounded_directions() {
    // x1 - x2 <= n: every box optimum of x2 sits on its upper face.
    let pip = paramip::ip::ParamIP::from_i64(&[vec![1, -1]], &[1], &[0], &[0, 1]).unwrap();
    assert_eq!(solve_ip(&pip, 3), OptValue::PosInfinity);
    let bx = [BigInt::from(5), BigInt::from(7)];
    assert_eq!(enumerate_ip(&pip, 3, Some(&bx), 1000).unwrap().value(), Some(&Rat::from_integer(7.into())));
}

#[test]
fn lp_law_matches_direct_solves() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut compared = 0;
    while compared < 30 {
        let pip = random_program(&mut rng);
        let p = pip.polyhedron();
        if !is_full_dimensional(&p) || !matches!(solve_lp(&p, &pip.d_rat()), OptValue::Finite { .. }) {
            continue;
        }
        let Ok(law) = lp_value_law(&p, &pip.c_rat(), &pip.d_rat()) else { continue };
        compared += 1;
        let Some(n1) = law.n1.to_u64() else { continue };
        for n in [n1.max(1), n1.max(1) + 1, n1.max(1) + 7] {
            let direct = solve_lp(&pip.relaxed(n), &pip.d_rat());
            assert_eq!(direct.value(), Some(&law.value_at(&n.into())), "{pip:?} at n = {n}");
        }
    }
}

/// Frozen from the floor-sum closed form, itself cross-checked against
/// exhaustive search in the acceptance suite.
#[test]
fn chain_values_frozen() {
    let pip = chain(2, 2);
    let got: Vec<Option<i64>> = sweep(&pip, 1, 16)
        .unwrap()
        .iter()
        .map(|(_, v)| v.value().map(|x| x.to_integer().try_into().unwrap()))
        .collect();
    let frozen = [None, None, None, Some(3), Some(3), Some(4), Some(4), Some(6), Some(6), Some(7), Some(7), Some(9), Some(9), Some(10), Some(10), Some(12)];
    assert_eq!(got, frozen);
    for n in 4..=16u64 {
        assert_eq!(frozen[n as usize - 1], Some(floor_sum(n, 2, 2) as i64));
    }
}

/// Frozen after the program route and the exhaustive Takayama scan agreed.
#[test]
fn not_closed_invariants_frozen() {
    let fam = PowerFamily::closure(not_closed()).unwrap();
    let engine = RegularityEngine::new(fam.clone(), CANDIDATE_CAP).unwrap();
    for n in 1..=4u64 {
        let n_ = n as i64;
        let rep = engine.a_invariants(n).unwrap();
        assert_eq!(exps(&rep), vec![Some(6 * n_ - 1), Some(2 * n_ - 2)]);
        assert_eq!(rep.reg, Some(6 * n_ - 1));
    }
    assert_eq!(oracle_a_invariants(&fam, 2, None).unwrap().report, engine.a_invariants(2).unwrap());
}

/// The 4-cycle is bipartite, so symbolic and ordinary powers coincide and
/// reg(I^n) = 2n is classical. The split a_1 = 2n - 2, a_2 = n - 3 was
/// confirmed by the scan and by a Mayer-Vietoris count.
#[test]
fn four_cycle_invariants_frozen() {
    let fam = PowerFamily::symbolic(four_cycle()).unwrap();
    let engine = RegularityEngine::new(fam.clone(), CANDIDATE_CAP).unwrap();
    for n in 1..=5u64 {
        let n_ = n as i64;
        let rep = engine.a_invariants(n).unwrap();
        assert_eq!(exps(&rep), vec![None, Some(2 * n_ - 2), Some(n_ - 3)]);
        assert_eq!(rep.reg_ideal(), Some(2 * n_));
    }
    for n in 1..=3 {
        assert_eq!(oracle_a_invariants(&fam, n, None).unwrap().report, engine.a_invariants(n).unwrap());
    }
}

#[test]
fn symbolic_powers_of_bipartite_graph_are_ordinary() {
    let sf = SquareFreeIdeal::new(four_cycle()).unwrap();
    let i = four_cycle();
    let mut power = vec![vec![0u32; 4]];
    for n in 1..=3u64 {
        power = power
            .iter()
            .flat_map(|p| i.gens().iter().map(move |g| p.iter().zip(g).map(|(a, b)| a + b).collect()))
            .collect();
        let ordinary = paramip::ideal::minimalize(4, power.clone()).unwrap();
        let symbolic = paramip::ideal::minimalize(4, symbolic_power_generators(&sf, n)).unwrap();
        assert_eq!(ordinary, symbolic, "n = {n}");
    }
}

fn alpha_strategy(r: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..9, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_delta_alpha_matches_definition(seed in any::<u64>(), n in 1u64..4, alpha in alpha_strategy(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng);
        let r = ideal.r();
        let alpha = &alpha[..r];
        let np = newton_polyhedron(&ideal);
        let complex = radical_complex(&ideal).unwrap();
        let gens = closure_power_generators(&ideal, &np, n, None).unwrap();
        let by_def = delta_alpha_by_definition(&gens, r, alpha);
        match delta_alpha_closure(&np, &complex, n, alpha) {
            Ok(sym) => prop_assert_eq!(sym, by_def),
            // Outside the faces of Δ(I) the definition gives a cone.
            Err(_) => prop_assert!((-1..4).all(|k| by_def.reduced_homology_dim(k) == 0)),
        }
    }

    #[test]
    fn symbolic_delta_alpha_matches_definition(n in 1u64..4, alpha in alpha_strategy(4), which in 0usize..3) {
        let ideal = [four_cycle(), path_edges(), triangle_edges()][which].clone();
        let r = ideal.r();
        let alpha = &alpha[..r];
        let sf = SquareFreeIdeal::new(ideal).unwrap();
        let gens = symbolic_power_generators(&sf, n);
        let by_def = delta_alpha_by_definition(&gens, r, alpha);
        match delta_alpha_symbolic(&sf, n, alpha) {
            Ok(sym) => prop_assert_eq!(sym, by_def),
            Err(_) => prop_assert!((-1..5).all(|k| by_def.reduced_homology_dim(k) == 0)),
        }
    }
}
