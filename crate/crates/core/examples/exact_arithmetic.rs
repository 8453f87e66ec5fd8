//! Exact determinants, subdeterminant maxima and the Hadamard fallback.

use num_bigint::BigInt;
use paramip::exact::{ceil_sqrt, det, hadamard_bound, max_abs_subdet, rank_over_q, IntMat, SubdetStats, SUBDET_BUDGET};

fn main() -> paramip::Result<()> {
    let a = IntMat::from_rows(&[vec![2i64, 0, 1], vec![-1, 2, 3], vec![0, -1, 4]])?;
    println!("det = {}", det(&a)?);
    println!("rank = {}", rank_over_q(&a));
    let exact = max_abs_subdet(&a, usize::MAX, SUBDET_BUDGET);
    println!("largest |minor| = {} (exact: {})", exact.value, exact.exact);
    println!("Hadamard bound = {}", hadamard_bound(&a, 3));

    let b: Vec<BigInt> = [1, 0, 0].map(BigInt::from).to_vec();
    let c: Vec<BigInt> = [0, 0, -1].map(BigInt::from).to_vec();
    let stats = SubdetStats::compute(&a, &b, &c, SUBDET_BUDGET)?;
    println!("D = {}, D' = {}, Delta = {}", stats.d, stats.d_prime, stats.delta_max);
    let rough = SubdetStats::compute(&a, &b, &c, 0)?;
    println!("with no budget: D = {}, D' = {}, Delta = {}", rough.d, rough.d_prime, rough.delta_max);

    println!("ceil(sqrt(10^20 + 1)) = {}", ceil_sqrt(&(BigInt::from(10u64).pow(20) + 1)));
    Ok(())
}
