//! Local cohomology degrees and regularity of integral closures of powers.

use paramip::ideal::minimalize;
use paramip::regularity::{stability_report, theoretical_bounds, PowerFamily, RegularityEngine, CANDIDATE_CAP};

fn main() -> paramip::Result<()> {
    let ideal = minimalize(2, vec![vec![1, 4], vec![3, 2], vec![5, 1]])?;
    let engine = RegularityEngine::new(PowerFamily::closure(ideal)?, CANDIDATE_CAP)?;
    let (total, active) = engine.candidate_counts();
    println!("{active} of {total} candidate complexes carry homology");
    let rep = stability_report(&engine, 1, 10)?;
    for row in &rep.rows {
        println!("n = {:>2}: a = {:?}, reg(R/J) = {:?}", row.n, row.a, row.reg);
    }
    if let Some((p, e)) = &rep.reg_linear {
        println!("reg(J_n) = {p} n + {e} from n = {}", rep.empirical_onset);
    }
    println!("instance onset bound = {}", rep.instance_onset_bound);
    for c in &rep.checks {
        println!("  {}: {}", c.name, if c.holds { "holds" } else { "FAILS" });
    }
    let b = theoretical_bounds(2, 5)?;
    println!("general bounds for r = 2, d = 5: onset {}, regularity {}", b.n_dagger, b.regst_bound);
    Ok(())
}
