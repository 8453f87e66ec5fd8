//! Vertices, rays and an interior point of `{Ax <= b, x >= 0}`.

use paramip::polyhedra::{enumerate_vrep, epsilon_zero, full_dimensional_witness, Polyhedron};

fn main() -> paramip::Result<()> {
    // The triangle with vertices (1/4, 1/3), (1/4, 3/4), (2/3, 1/3).
    let tri = Polyhedron::from_i64(&[vec![1, 1], vec![-4, 0], vec![0, -3]], &[1, -1, -1])?;
    let v = enumerate_vrep(&tri);
    for x in &v.vertices {
        println!("vertex ({}, {})", x[0], x[1]);
    }
    let w = full_dimensional_witness(&tri, &v, None).expect("the triangle has interior");
    println!("interior point ({}, {}) with slack {}", w.gamma[0], w.gamma[1], w.eps_gamma);
    println!("minimal positive vertex slack = {}", epsilon_zero(&tri, &v)?);

    // An unbounded wedge: x1 - x2 <= 1.
    let wedge = Polyhedron::from_i64(&[vec![1, -1]], &[1])?;
    let v = enumerate_vrep(&wedge);
    println!("wedge: {} vertices, rays {:?}", v.vertices.len(), v.rays);
    Ok(())
}
