//! Reduced homology over the rationals.

use paramip::simplicial::{SimplicialComplex, VertexSet};

fn show(name: &str, c: &SimplicialComplex) {
    let betti: Vec<usize> = (-1..3).map(|k| c.reduced_homology_dim(k)).collect();
    println!("{name:<16} {c}  reduced Betti numbers from degree -1: {betti:?}");
}

fn main() {
    let u = VertexSet::full(4);
    show("void", &SimplicialComplex::void(u));
    show("empty face only", &SimplicialComplex::from_facets(u, [VertexSet::EMPTY]));
    show("two points", &SimplicialComplex::from_facets(u, [VertexSet::from_indices([0]), VertexSet::from_indices([1])]));
    let circle = [[0, 1], [1, 2], [2, 3], [0, 3]].map(VertexSet::from_indices);
    show("square", &SimplicialComplex::from_facets(u, circle));
    let sphere = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].map(VertexSet::from_indices);
    show("hollow tetrahedron", &SimplicialComplex::from_facets(u, sphere));
    show("simplex", &SimplicialComplex::from_facets(u, [u]));
}
