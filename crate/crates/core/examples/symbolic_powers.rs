//! Symbolic powers of edge ideals: generators and cohomology degrees.

use paramip::ideal::{minimalize, symbolic_power_generators, SquareFreeIdeal};
use paramip::regularity::{stability_report, PowerFamily, RegularityEngine, CANDIDATE_CAP};

fn main() -> paramip::Result<()> {
    let edges = |r, e: &[[usize; 2]]| {
        minimalize(r, e.iter().map(|&[i, j]| (0..r).map(|k| u32::from(k == i || k == j)).collect()).collect())
    };
    let triangle = edges(3, &[[0, 1], [1, 2], [0, 2]])?;
    let sf = SquareFreeIdeal::new(triangle.clone())?;
    for n in 1..=3 {
        println!("I^({n}) = {}", minimalize(3, symbolic_power_generators(&sf, n))?);
    }
    for (name, ideal) in [("triangle", triangle), ("4-cycle", edges(4, &[[0, 1], [1, 2], [2, 3], [0, 3]])?)] {
        let engine = RegularityEngine::new(PowerFamily::symbolic(ideal)?, CANDIDATE_CAP)?;
        let rep = stability_report(&engine, 1, 8)?;
        let slopes: Vec<String> = rep
            .a_laws
            .iter()
            .map(|l| if l.intercepts.iter().all(Option::is_none) { "-inf".into() } else { l.slope.to_string() })
            .collect();
        println!("{name}: slopes of a_i = [{}], reg(J_n) law {:?}", slopes.join(", "), rep.reg_linear);
    }
    Ok(())
}
