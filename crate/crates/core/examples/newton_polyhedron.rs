//! Facets of a Newton polyhedron and generators of integral closures.

use paramip::ideal::{closure_power_generators, in_closure_power, minimalize, newton_polyhedron};

fn main() -> paramip::Result<()> {
    let ideal = minimalize(2, vec![vec![1, 4], vec![3, 2], vec![5, 1]])?;
    let np = newton_polyhedron(&ideal);
    println!("I = {ideal}");
    for (f, ok) in np.facets().iter().zip(np.coefficient_bound_ok()) {
        println!("  {f}  (coefficient bound: {})", if ok { "ok" } else { "fails" });
    }
    println!("x1^2 x2^3 in the closure of I: {}, in I: {}", in_closure_power(&np, 1, &[2, 3]), ideal.contains(&[2, 3]));
    for n in 1..=3 {
        let gens = closure_power_generators(&ideal, &np, n, None)?;
        println!("closure of I^{n}: {}", minimalize(2, gens)?);
    }
    Ok(())
}
