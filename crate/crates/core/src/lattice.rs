//! Face lattices of convex polytopes.
//!
//! A [`FaceLattice`] is a graded, atomic, Eulerian poset with a bottom (the
//! empty face, dimension -1) and a top (the polytope, dimension `d`). Every
//! face is identified by the set of atoms (vertices) below it. Faces are
//! stored sorted by dimension, so index 0 is always the empty face and the
//! last index is always the polytope itself.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Index of a face inside its lattice.
pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: i32,
    pub vertices: VertexSet,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: i32,
    n_vertices: usize,
    faces: Vec<Face>,
    down: Vec<Vec<FaceId>>,
    up: Vec<Vec<FaceId>>,
    below: Vec<Vec<FaceId>>,
    index: HashMap<VertexSet, FaceId>,
}

/// The vertex-facet form used for JSON exchange (`lattice/v1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default = "lattice_schema")]
    pub schema: String,
    pub dim: i32,
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

fn lattice_schema() -> String {
    "lattice/v1".into()
}

impl FaceLattice {
    /// The empty polytope: a single element that is both bottom and top.
    pub fn empty() -> Self {
        Self::from_parts(0, vec![Face { dim: -1, vertices: VertexSet::new() }])
    }

    pub fn point() -> Self {
        Self::from_vertex_facets(1, &[vec![]]).expect("point lattice")
    }

    /// Closes the facet vertex-sets under intersection and ranks the result.
    ///
    /// Rejects inputs whose closure is not graded, not atomic on the given
    /// vertices, or not Eulerian.
    pub fn from_vertex_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let lattice = Self::from_vertex_facets_unchecked(n_vertices, facets)?;
        if let Some((lower, upper, even, odd)) = lattice.eulerian_witness() {
            return Err(Error::NotEulerian {
                lower: lattice.faces[lower].vertices.to_vec(),
                upper: lattice.faces[upper].vertices.to_vec(),
                even,
                odd,
            });
        }
        for v in 0..n_vertices {
            match lattice.find(&VertexSet::singleton(v)) {
                Some(i) if lattice.face_dim(i) == 0 => {}
                _ => return Err(Error::NotAtomic(format!("vertex {v} is not a face of dimension 0"))),
            }
        }
        if let Some(f) = lattice.faces_of_dim(0).find(|&f| lattice.face(f).vertices.len() != 1) {
            return Err(Error::NotAtomic(format!(
                "dimension-0 face {:?} is not a single vertex",
                lattice.face(f).vertices.to_vec()
            )));
        }
        Ok(lattice)
    }

    /// Like [`from_vertex_facets`](Self::from_vertex_facets) but skips the
    /// Eulerian and atomicity tests. The result is still graded.
    pub fn from_vertex_facets_unchecked(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidInput("a polytope needs at least one vertex".into()));
        }
        if facets.is_empty() {
            return Err(Error::InvalidInput("facet list is empty".into()));
        }
        let mut facet_sets = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&bad) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidInput(format!(
                    "facet references vertex {bad} but there are only {n_vertices} vertices"
                )));
            }
            facet_sets.push(f.iter().copied().collect::<VertexSet>());
        }
        for (i, a) in facet_sets.iter().enumerate() {
            for (j, b) in facet_sets.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(Error::InvalidInput(format!(
                        "facet {:?} is contained in facet {:?}",
                        a.to_vec(),
                        b.to_vec()
                    )));
                }
            }
        }

        let top = VertexSet::full(n_vertices);
        let mut seen: HashSet<VertexSet> = HashSet::new();
        seen.insert(top.clone());
        seen.insert(VertexSet::new());
        let mut queue: Vec<VertexSet> = Vec::new();
        for f in &facet_sets {
            if seen.insert(f.clone()) {
                queue.push(f.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for f in &facet_sets {
                let y = x.intersection(f);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }

        let mut sets: Vec<VertexSet> = seen.into_iter().collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let pos: HashMap<&VertexSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();

        // Maximal proper subfaces of X are among X ∩ F for facets F not containing X.
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
        for (i, x) in sets.iter().enumerate().skip(1) {
            let mut candidates: Vec<usize> = facet_sets
                .iter()
                .filter(|f| !x.is_subset(f))
                .map(|f| pos[&x.intersection(f)])
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            let maximal: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&c| {
                    !candidates
                        .iter()
                        .any(|&o| o != c && sets[c].is_subset(&sets[o]))
                })
                .collect();
            down[i] = if maximal.is_empty() { vec![0] } else { maximal };
        }

        let mut rank = vec![0usize; sets.len()];
        for i in 1..sets.len() {
            let ranks: Vec<usize> = down[i].iter().map(|&c| rank[c]).collect();
            let r = ranks.iter().copied().max().unwrap_or(0);
            if ranks.iter().any(|&x| x != r) {
                return Err(Error::NotGraded { face: sets[i].to_vec() });
            }
            rank[i] = r + 1;
        }

        let faces = sets
            .into_iter()
            .zip(&rank)
            .map(|(vertices, &r)| Face { dim: r as i32 - 1, vertices })
            .collect();
        Ok(Self::from_parts(n_vertices, faces))
    }

    /// Assembles a lattice from faces already known to form a graded poset
    /// ordered by vertex-set inclusion.
    fn from_parts(n_vertices: usize, mut faces: Vec<Face>) -> Self {
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        let index: HashMap<VertexSet, FaceId> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let n = faces.len();
        let mut by_dim: HashMap<i32, Vec<FaceId>> = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            by_dim.entry(f.dim).or_default().push(i);
        }
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        let mut below = vec![Vec::new(); n];
        for (g, face) in faces.iter().enumerate() {
            for &f in by_dim.get(&(face.dim - 1)).map(Vec::as_slice).unwrap_or(&[]) {
                if faces[f].vertices.is_subset(&face.vertices) {
                    down[g].push(f);
                    up[f].push(g);
                }
            }
            below[g] = (0..=g)
                .filter(|&f| faces[f].dim < face.dim || f == g)
                .filter(|&f| faces[f].vertices.is_subset(&face.vertices))
                .collect();
        }
        let dim = faces.last().map_or(-1, |f| f.dim);
        Self { dim, n_vertices, faces, down, up, below, index }
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty_polytope(&self) -> bool {
        self.faces.len() == 1
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_dim(&self, id: FaceId) -> i32 {
        self.faces[id].dim
    }

    pub fn bottom(&self) -> FaceId {
        0
    }

    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    /// Faces covered by `id`.
    pub fn covers_down(&self, id: FaceId) -> &[FaceId] {
        &self.down[id]
    }

    /// Faces covering `id`.
    pub fn covers_up(&self, id: FaceId) -> &[FaceId] {
        &self.up[id]
    }

    /// All faces `F <= id`, including `id` itself, sorted by dimension.
    pub fn below(&self, id: FaceId) -> &[FaceId] {
        &self.below[id]
    }

    pub fn find(&self, vertices: &VertexSet) -> Option<FaceId> {
        self.index.get(vertices).copied()
    }

    pub fn leq(&self, a: FaceId, b: FaceId) -> bool {
        self.faces[a].vertices.is_subset(&self.faces[b].vertices)
    }

    pub fn faces_of_dim(&self, k: i32) -> impl Iterator<Item = FaceId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.dim == k)
            .map(|(i, _)| i)
    }

    /// `(f_0, ..., f_{d-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim.max(0))
            .map(|k| self.faces_of_dim(k).count())
            .collect()
    }

    pub fn facets(&self) -> Vec<FaceId> {
        if self.is_empty_polytope() {
            return Vec::new();
        }
        self.down[self.top()].clone()
    }

    /// Vertex sets of the facets, as sorted index lists.
    pub fn facet_vertex_lists(&self) -> Vec<Vec<usize>> {
        self.facets()
            .into_iter()
            .map(|f| self.faces[f].vertices.to_vec())
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.facets()
            .into_iter()
            .all(|f| self.faces[f].vertices.len() as i32 == self.dim)
    }

    /// The interval `[lower, upper]`, re-graded so `lower` becomes the empty face.
    ///
    /// `interval(bottom, F)` is the face `F` as a polytope and
    /// `interval(F, top)` is the quotient `P/F`.
    pub fn interval(&self, lower: FaceId, upper: FaceId) -> Result<FaceLattice> {
        if !self.leq(lower, upper) {
            return Err(Error::NotOrdered { lower, upper });
        }
        let base = self.faces[lower].dim;
        let members: Vec<FaceId> = self.below[upper]
            .iter()
            .copied()
            .filter(|&h| self.leq(lower, h))
            .collect();
        let atoms: Vec<FaceId> = members
            .iter()
            .copied()
            .filter(|&h| self.faces[h].dim == base + 1)
            .collect();
        let faces = members
            .iter()
            .map(|&h| Face {
                dim: self.faces[h].dim - base - 1,
                vertices: atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.leq(a, h))
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect();
        Ok(Self::from_parts(atoms.len(), faces))
    }

    /// The face `F` viewed as a polytope.
    pub fn face_lattice(&self, f: FaceId) -> FaceLattice {
        self.interval(self.bottom(), f).expect("bottom is below every face")
    }

    /// The quotient polytope `P/F`.
    pub fn quotient(&self, f: FaceId) -> FaceLattice {
        self.interval(f, self.top()).expect("every face is below the top")
    }

    /// The order-reversed lattice, whose atoms are the former facets.
    ///
    /// Face `j` of the dual corresponds to face `len - 1 - j` of `self`; see
    /// [`dual_face`](Self::dual_face).
    pub fn dual(&self) -> FaceLattice {
        let n = self.faces.len();
        let facets = self.facets();
        let faces: Vec<Face> = (0..n)
            .rev()
            .map(|g| Face {
                dim: self.dim - 1 - self.faces[g].dim,
                vertices: facets
                    .iter()
                    .enumerate()
                    .filter(|(_, &f)| self.leq(g, f))
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect();
        let dual = Self::from_parts(facets.len(), faces.clone());
        // from_parts re-sorts within a dimension; restore the reversed order so
        // that face indices map by reflection.
        Self::with_order(dual, faces)
    }

    fn with_order(lattice: FaceLattice, order: Vec<Face>) -> FaceLattice {
        let perm: Vec<FaceId> = order.iter().map(|f| lattice.index[&f.vertices]).collect();
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let remap = |ids: &Vec<FaceId>| {
            let mut v: Vec<FaceId> = ids.iter().map(|&i| inverse[i]).collect();
            v.sort_unstable();
            v
        };
        let down = perm.iter().map(|&old| remap(&lattice.down[old])).collect();
        let up = perm.iter().map(|&old| remap(&lattice.up[old])).collect();
        let below = perm.iter().map(|&old| remap(&lattice.below[old])).collect();
        let index = order.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        FaceLattice {
            dim: lattice.dim,
            n_vertices: lattice.n_vertices,
            faces: order,
            down,
            up,
            below,
            index,
        }
    }

    /// Index in `self.dual()` of the face dual to `id`.
    pub fn dual_face(&self, id: FaceId) -> FaceId {
        self.faces.len() - 1 - id
    }

    /// Cone over the lattice: faces `F` and `F ∪ {apex}`.
    pub fn pyramid(&self) -> FaceLattice {
        let n = self.n_vertices;
        let apex = n;
        let mut facets = vec![(0..n).collect::<Vec<_>>()];
        for mut f in self.facet_vertex_lists() {
            f.push(apex);
            facets.push(f);
        }
        Self::from_vertex_facets(n + 1, &facets).expect("pyramid of a polytope lattice")
    }

    /// Bipyramid with two apexes over the top face; requires `dim >= 1`.
    pub fn bipyramid(&self) -> Result<FaceLattice> {
        if self.dim < 1 {
            return Err(Error::DimensionTooSmall {
                what: "bipyramid",
                minimum: 1,
                found: self.dim.into(),
            });
        }
        let n = self.n_vertices;
        let mut facets = Vec::new();
        for f in self.facet_vertex_lists() {
            for apex in [n, n + 1] {
                let mut g = f.clone();
                g.push(apex);
                facets.push(g);
            }
        }
        Self::from_vertex_facets(n + 2, &facets)
    }

    /// Product with a segment; vertex `i` becomes `i` (bottom copy) and `n + i` (top copy).
    pub fn prism(&self) -> Result<FaceLattice> {
        if self.dim < 0 {
            return Err(Error::DimensionTooSmall { what: "prism", minimum: 0, found: -1 });
        }
        let n = self.n_vertices;
        let mut facets = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).collect()];
        for f in self.facet_vertex_lists() {
            if f.is_empty() {
                continue;
            }
            let mut g = f.clone();
            g.extend(f.iter().map(|v| v + n));
            facets.push(g);
        }
        Self::from_vertex_facets(2 * n, &facets)
    }

    pub fn is_eulerian(&self) -> bool {
        self.eulerian_witness().is_none()
    }

    /// First interval `[F, G]` with `F < G` whose even- and odd-dimensional
    /// face counts differ, as `(F, G, even, odd)`.
    pub fn eulerian_witness(&self) -> Option<(FaceId, FaceId, usize, usize)> {
        for g in 0..self.faces.len() {
            let members = &self.below[g];
            for &f in members {
                if f == g {
                    continue;
                }
                let (mut even, mut odd) = (0, 0);
                for &h in members {
                    if self.leq(f, h) {
                        if self.faces[h].dim.rem_euclid(2) == 0 {
                            even += 1;
                        } else {
                            odd += 1;
                        }
                    }
                }
                if even != odd {
                    return Some((f, g, even, odd));
                }
            }
        }
        None
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            schema: lattice_schema(),
            dim: self.dim,
            n_vertices: self.n_vertices,
            facets: self.facet_vertex_lists(),
        }
    }

    pub fn from_file(file: &LatticeFile) -> Result<Self> {
        if file.schema != "lattice/v1" {
            return Err(Error::InvalidInput(format!("unknown schema {:?}", file.schema)));
        }
        let lattice = if file.dim < 0 {
            Self::empty()
        } else {
            Self::from_vertex_facets(file.n_vertices, &file.facets)?
        };
        if lattice.dim != file.dim {
            return Err(Error::DimensionMismatch {
                expected: file.dim.into(),
                found: lattice.dim.into(),
            });
        }
        Ok(lattice)
    }

    /// A labeling-independent form: two polytope lattices are isomorphic iff
    /// their canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        crate::canonical::canonical_form(self.dim, self.n_vertices, &self.facet_vertex_lists())
    }

    pub fn is_isomorphic(&self, other: &FaceLattice) -> bool {
        self.dim == other.dim
            && self.n_vertices == other.n_vertices
            && self.len() == other.len()
            && self.f_vector() == other.f_vector()
            && self.canonical_form() == other.canonical_form()
    }
}

pub use crate::canonical::CanonicalForm;

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> FaceLattice {
        FaceLattice::from_vertex_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
    }

    /// Facets of `{0,1}^d` as vertex-index lists; vertex `i` has coordinates
    /// given by the bits of `i`.
    fn cube(d: usize) -> FaceLattice {
        let n = 1 << d;
        let mut facets = Vec::new();
        for axis in 0..d {
            for side in [0, 1] {
                facets.push((0..n).filter(|v| (v >> axis) & 1 == side).collect());
            }
        }
        FaceLattice::from_vertex_facets(n, &facets).unwrap()
    }

    fn simplex(d: usize) -> FaceLattice {
        let n = d + 1;
        let facets: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        FaceLattice::from_vertex_facets(n, &facets).unwrap()
    }

    #[test]
    fn triangle_has_eight_faces() {
        let t = FaceLattice::from_vertex_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.f_vector(), vec![3, 3]);
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn square_counts() {
        let s = square();
        assert_eq!(s.f_vector(), vec![4, 4]);
        assert_eq!(s.face(s.bottom()).dim, -1);
        assert_eq!(s.face(s.top()).dim, 2);
    }

    #[test]
    fn open_path_is_rejected() {
        let err = FaceLattice::from_vertex_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap_err();
        assert!(matches!(err, Error::NotEulerian { .. }), "{err:?}");
    }

    #[test]
    fn deleting_a_facet_breaks_eulerian() {
        let c = cube(3);
        let mut facets = c.facet_vertex_lists();
        facets.pop();
        let broken = FaceLattice::from_vertex_facets_unchecked(8, &facets).unwrap();
        assert!(!broken.is_eulerian());
        assert!(FaceLattice::from_vertex_facets(8, &facets).is_err());
        assert!(c.is_eulerian());
        assert!(FaceLattice::empty().is_eulerian());
    }

    #[test]
    fn contained_facets_rejected() {
        assert!(FaceLattice::from_vertex_facets(3, &[vec![0, 1], vec![0, 1, 2]]).is_err());
        assert!(FaceLattice::from_vertex_facets(2, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn cube_vertex_figure_is_triangle() {
        let c = cube(3);
        let v = c.faces_of_dim(0).next().unwrap();
        let q = c.quotient(v);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.f_vector(), vec![3, 3]);
        assert!(q.is_isomorphic(&simplex(2)));
    }

    #[test]
    fn trivial_intervals() {
        let c = cube(3);
        let full = c.interval(c.bottom(), c.top()).unwrap();
        assert!(full.is_isomorphic(&c));
        let v = c.faces_of_dim(1).next().unwrap();
        let one = c.interval(v, v).unwrap();
        assert!(one.is_empty_polytope());
        assert_eq!(one.dim(), -1);
        let a = c.faces_of_dim(0).next().unwrap();
        let b = c.faces_of_dim(0).nth(1).unwrap();
        assert!(matches!(c.interval(a, b), Err(Error::NotOrdered { .. })));
    }

    #[test]
    fn face_and_quotient_dimensions() {
        let c = cube(4);
        for f in 0..c.len() {
            let dim = c.face_dim(f);
            assert_eq!(c.face_lattice(f).dim(), dim);
            assert_eq!(c.quotient(f).dim(), c.dim() - dim - 1);
        }
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let oct = cube(3).dual();
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        assert!(oct.is_eulerian());
        assert!(oct.is_simplicial());
        assert!(simplex(3).dual().is_isomorphic(&simplex(3)));
        let c = cube(3);
        assert!(c.dual().dual().is_isomorphic(&c));
        // index reflection
        let d = c.dual();
        for f in 0..c.len() {
            assert_eq!(d.face_dim(c.dual_face(f)), c.dim() - 1 - c.face_dim(f));
        }
    }

    #[test]
    fn constructions() {
        let sq = square();
        assert_eq!(sq.pyramid().f_vector(), vec![5, 8, 5]);
        let oct = sq.bipyramid().unwrap();
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        assert!(oct.is_isomorphic(&cube(3).dual()));
        let tri = simplex(2);
        assert_eq!(tri.prism().unwrap().f_vector(), vec![6, 9, 5]);
        assert!(sq.prism().unwrap().is_isomorphic(&cube(3)));
        assert_eq!(FaceLattice::empty().pyramid().f_vector(), Vec::<usize>::new());
        assert_eq!(FaceLattice::empty().pyramid().dim(), 0);
        assert_eq!(FaceLattice::point().pyramid().f_vector(), vec![2]);
        assert_eq!(FaceLattice::point().prism().unwrap().f_vector(), vec![2]);
        assert!(FaceLattice::point().bipyramid().is_err());
    }

    #[test]
    fn graded_chains() {
        // every maximal chain has d + 1 covers
        let c = cube(3);
        fn longest(l: &FaceLattice, f: FaceId) -> Vec<usize> {
            if f == l.bottom() {
                return vec![0];
            }
            l.covers_down(f)
                .iter()
                .flat_map(|&g| longest(l, g))
                .map(|x| x + 1)
                .collect()
        }
        let lengths = longest(&c, c.top());
        assert!(lengths.iter().all(|&x| x == 4));
    }

    #[test]
    fn json_roundtrip() {
        let c = cube(3);
        let text = serde_json::to_string(&c.to_file()).unwrap();
        let back: LatticeFile = serde_json::from_str(&text).unwrap();
        assert!(FaceLattice::from_file(&back).unwrap().is_isomorphic(&c));
        let raw: LatticeFile =
            serde_json::from_str(r#"{"dim": 2, "n_vertices": 3, "facets": [[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(FaceLattice::from_file(&raw).unwrap().f_vector(), vec![3, 3]);
        let wrong: LatticeFile =
            serde_json::from_str(r#"{"dim": 3, "n_vertices": 3, "facets": [[0,1],[1,2],[0,2]]}"#).unwrap();
        assert!(FaceLattice::from_file(&wrong).is_err());
    }
}
