//! Simplicial complexes on subsets of `{0, .., 31}` and their reduced
//! homology over a field.
//!
//! The void complex (no faces at all) and the complex `{∅}` are distinct:
//! the first is acyclic in every degree, the second has reduced homology of
//! dimension 1 in degree -1.

use std::fmt;

use itertools::Itertools;

use crate::exact::{rank_over_q, IntMat};

/// A subset of `{0, .., 31}` stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_indices(xs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(xs.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// `{0, .., r-1}`.
    pub fn full(r: usize) -> Self {
        VertexSet(if r >= 32 { u32::MAX } else { (1u32 << r) - 1 })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn insert(self, i: usize) -> Self {
        VertexSet(self.0 | 1 << i)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VertexSet(cur))
        })
    }
}

impl fmt::Display for VertexSet {
    /// One-based, as in `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().map(|i| i + 1).join(","))
    }
}

/// Coefficient field for homology. Only the rationals are implemented;
/// positive characteristic would slot in here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    #[default]
    Rationals,
}

/// A complex given by its facets. `facets == [∅]` is `{∅}`; no facets is the
/// void complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: VertexSet,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    pub fn void(universe: VertexSet) -> Self {
        SimplicialComplex { universe, facets: Vec::new() }
    }

    /// Keeps the inclusion-maximal sets and sorts them.
    pub fn from_facets(universe: VertexSet, sets: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        sets.sort_unstable();
        sets.dedup();
        let maximal: Vec<VertexSet> =
            sets.iter().copied().filter(|&f| !sets.iter().any(|&g| g != f && f.is_subset(g))).collect();
        let mut facets = maximal;
        facets.sort_by_key(|f| face_key(*f));
        SimplicialComplex { universe, facets }
    }

    /// The complex whose faces are exactly the given sets, which must be closed
    /// under taking subsets.
    pub fn from_faces(universe: VertexSet, faces: &[VertexSet]) -> Self {
        Self::from_facets(universe, faces.iter().copied())
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|&g| f.is_subset(g))
    }

    /// Largest face size; `None` for the void complex.
    pub fn max_face_size(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len()).max()
    }

    /// Faces of dimension `k` (size `k + 1`) in lexicographic order.
    pub fn faces(&self, k: i32) -> Vec<VertexSet> {
        if k < -1 || self.is_void() {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        let mut out: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| f.len() >= size)
            .flat_map(|f| f.indices().combinations(size).map(VertexSet::from_indices))
            .collect();
        out.sort_by_key(|f| face_key(*f));
        out.dedup();
        out
    }

    /// Matrix of `∂_k : C_k -> C_{k-1}` with rows indexed by `(k-1)`-faces.
    fn boundary(&self, k: i32) -> IntMat {
        let cols = self.faces(k);
        let rows = self.faces(k - 1);
        if rows.is_empty() || cols.is_empty() {
            return IntMat::zeros(rows.len(), cols.len());
        }
        let mut m = IntMat::zeros(rows.len(), cols.len()).to_rows();
        for (j, sigma) in cols.iter().enumerate() {
            for (pos, v) in sigma.indices().enumerate() {
                let tau = VertexSet(sigma.0 & !(1 << v));
                let i = rows.binary_search_by_key(&face_key(tau), |f| face_key(*f)).expect("boundary face present");
                m[i][j] = if pos % 2 == 0 { 1.into() } else { (-1).into() };
            }
        }
        IntMat::from_rows(&m).expect("rectangular")
    }

    /// Dimension of the reduced homology in degree `k` over `field`.
    pub fn reduced_homology_dim_over(&self, field: CoefficientField, k: i32) -> usize {
        match field {
            CoefficientField::Rationals => {}
        }
        if self.is_void() || k < -1 {
            return 0;
        }
        let fk = self.faces(k).len();
        if fk == 0 {
            return 0;
        }
        let rank_k = if k == -1 { 0 } else { rank_over_q(&self.boundary(k)) };
        let rank_k1 = rank_over_q(&self.boundary(k + 1));
        fk - rank_k - rank_k1
    }

    pub fn reduced_homology_dim(&self, k: i32) -> usize {
        self.reduced_homology_dim_over(CoefficientField::Rationals, k)
    }
}

/// Sort key: size first, then the sorted index list.
fn face_key(f: VertexSet) -> (usize, Vec<usize>) {
    (f.len(), f.indices().collect())
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "void");
        }
        write!(f, "<{}>", self.facets.iter().join(", "))
    }
}
