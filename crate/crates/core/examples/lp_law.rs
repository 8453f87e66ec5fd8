//! The linear law of the parametric LP optimum `phi * n + phi0`.

use num_bigint::BigInt;
use paramip::ip::ParamIP;
use paramip::lp::{lp_value_law, solve_lp};

fn main() -> paramip::Result<()> {
    // 2 x1 <= n, -x1 + 2 x2 <= 0, x2 >= 1; maximize x1 + x2.
    let pip = ParamIP::from_i64(&[vec![2, 0], vec![-1, 2], vec![0, -1]], &[1, 0, 0], &[0, 0, -1], &[1, 1])?;
    let law = lp_value_law(&pip.polyhedron(), &pip.c_rat(), &pip.d_rat())?;
    println!("LP value = {} n + {} for n >= {}", law.phi, law.phi0, law.n1);
    for n in [4u64, 5, 10, 37] {
        let direct = solve_lp(&pip.relaxed(n), &pip.d_rat());
        println!("n = {n:>2}: law {}, direct {direct}", law.value_at(&BigInt::from(n)));
    }
    Ok(())
}
