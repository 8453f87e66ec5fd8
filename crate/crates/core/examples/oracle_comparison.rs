//! The integer-program route against a direct scan of multidegrees.

use paramip::ideal::minimalize;
use paramip::regularity::{certified_box, oracle_a_invariants, PowerFamily, RegularityEngine, CANDIDATE_CAP};

fn main() -> paramip::Result<()> {
    let ideal = minimalize(3, vec![vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 3]])?;
    let family = PowerFamily::closure(ideal)?;
    let engine = RegularityEngine::new(family.clone(), CANDIDATE_CAP)?;
    for n in 1..=3 {
        let programs = engine.a_invariants(n)?;
        let scan = oracle_a_invariants(&family, n, None)?;
        let (lo, hi) = certified_box(&family.generators(n)?, family.r());
        println!(
            "n = {n}: programs {:?}, scan {:?} over [{lo:?}, {hi:?}], agree: {}",
            programs.a,
            scan.report.a,
            programs == scan.report
        );
    }
    Ok(())
}
