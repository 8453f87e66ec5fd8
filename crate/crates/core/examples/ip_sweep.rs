//! Exact integer optima over a range of `n` and the feasibility threshold.

use paramip::ip::{kappa, rounding_witness, sweep, ParamIP};

fn main() -> paramip::Result<()> {
    // 2 x1 <= n, 3 x2 <= n, 2 x1 + 3 x2 >= n; maximize x1 + x2.
    let pip = ParamIP::from_i64(&[vec![2, 0], vec![0, 3], vec![-2, -3]], &[1, 1, -1], &[0, 0, 0], &[1, 1])?;
    let s = sweep(&pip, 1, 12)?;
    for (n, v) in s.iter() {
        println!("n = {n:>2}: M_n = {v}");
    }
    let k = kappa(&pip)?;
    println!("feasible for every n >= {k}");
    let w = rounding_witness(&pip, 7)?;
    println!("rounded interior point at n = 7: {w:?}");
    Ok(())
}
