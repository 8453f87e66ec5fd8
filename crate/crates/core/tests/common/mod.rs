#![allow(dead_code)]

use paramip::ideal::{minimalize, MonomialIdeal};
use paramip::ip::ParamIP;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `a x_1 <= n`, `-x_{i-1} + a x_i <= 0`, `-x_r <= -1`; maximize the sum.
pub fn chain(a: i64, r: usize) -> ParamIP {
    let mut rows = Vec::new();
    for i in 0..r {
        let mut row = vec![0; r];
        row[i] = a;
        if i > 0 {
            row[i - 1] = -1;
        }
        rows.push(row);
    }
    let mut last = vec![0; r];
    last[r - 1] = -1;
    rows.push(last);
    let mut b = vec![0; r + 1];
    b[0] = 1;
    let mut c = vec![0; r + 1];
    c[r] = -1;
    ParamIP::from_i64(&rows, &b, &c, &vec![1; r]).unwrap()
}

/// `p_i x_i <= n` and `sum p_i x_i >= n`; maximize the sum.
pub fn primes(p: &[i64]) -> ParamIP {
    let r = p.len();
    let mut rows: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row = vec![0; r];
            row[i] = p[i];
            row
        })
        .collect();
    rows.push(p.iter().map(|x| -x).collect());
    let mut b = vec![1; r];
    b.push(-1);
    ParamIP::from_i64(&rows, &b, &vec![0; r + 1], &vec![1; r]).unwrap()
}

/// Vertices (1/4, 1/3), (1/4, 3/4), (2/3, 1/3).
pub fn triangle() -> ParamIP {
    ParamIP::from_i64(&[vec![1, 1], vec![-4, 0], vec![0, -3]], &[1, -1, -1], &[0, 0, 0], &[1, 1]).unwrap()
}

/// `delta = 2` but `M_n = n`.
pub fn period_two() -> ParamIP {
    ParamIP::from_i64(&[vec![4, 2], vec![-2, 0]], &[3, -1], &[1, 0], &[1, 1]).unwrap()
}

pub fn ideal(r: usize, gens: &[&[u32]]) -> MonomialIdeal {
    minimalize(r, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

pub fn not_closed() -> MonomialIdeal {
    ideal(2, &[&[1, 4], &[3, 2], &[5, 1]])
}

pub fn squares() -> MonomialIdeal {
    ideal(2, &[&[2, 0], &[0, 2]])
}

pub fn product() -> MonomialIdeal {
    ideal(2, &[&[1, 1]])
}

pub fn triangle_edges() -> MonomialIdeal {
    ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
}

pub fn path_edges() -> MonomialIdeal {
    ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]])
}

pub fn four_cycle() -> MonomialIdeal {
    ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]])
}

/// A program with `r <= 3`, `s <= 4` and entries in `[-3, 3]`.
pub fn random_program(rng: &mut ChaCha8Rng) -> ParamIP {
    let r = rng.gen_range(1..=3);
    let s = rng.gen_range(1..=4);
    let mut e = |k: usize| -> Vec<i64> { (0..k).map(|_| rng.gen_range(-3..=3)).collect() };
    let rows: Vec<Vec<i64>> = (0..s).map(|_| e(r)).collect();
    let (b, c, d) = (e(s), e(s), e(r));
    ParamIP::from_i64(&rows, &b, &c, &d).unwrap()
}

/// A monomial ideal in at most 3 variables with generators of degree at most 4.
pub fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let r = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=4);
    let gens: Vec<Vec<u32>> = (0..k)
        .map(|_| loop {
            let g: Vec<u32> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
            let deg: u32 = g.iter().sum();
            if (1..=4).contains(&deg) {
                break g;
            }
        })
        .collect();
    minimalize(r, gens).unwrap()
}
