//! Exact multiples, the period bound `delta`, and the detected quasi-linear law.

use paramip::ip::{sweep, ParamIP};
use paramip::quasilinear::{default_candidates, detect_law, jmax_and_delta, linearity_criterion, n_star};

fn main() -> paramip::Result<()> {
    let chain = ParamIP::from_i64(&[vec![2, 0], vec![-1, 2], vec![0, -1]], &[1, 0, 0], &[0, 0, -1], &[1, 1])?;
    let info = jmax_and_delta(&chain, None)?;
    println!("phi = {}, exact multiples {:?}, delta = {}", info.phi, info.members, info.delta);
    println!("onset bound N* = {}", n_star(&chain));
    let s = sweep(&chain, 1, 40)?;
    let law = detect_law(&s, &default_candidates(Some(info.delta), 13), 6, Some(&info.phi))?;
    let intercepts: Vec<String> = law.intercepts.iter().map(|b| b.as_ref().map_or("-inf".into(), |b| b.to_string())).collect();
    println!("M_n = {} n + [{}][n mod {}] from n = {}", law.slope, intercepts.join(", "), law.period, law.onset);

    // delta = 2, yet M_n = n: linearity of M_n does not force delta = 1.
    let two = ParamIP::from_i64(&[vec![4, 2], vec![-2, 0]], &[3, -1], &[1, 0], &[1, 1])?;
    let lin = linearity_criterion(&two, None)?;
    println!("second program: delta = {}, m_n linear: {}", lin.delta, lin.m_linear);
    Ok(())
}
