//! Infinitesimal rigidity of the framework formed by the edges of a polytope
//! and a triangulation of its 2-faces. Its stress space has dimension `g_2`
//! once `d >= 4`, and is zero for `d = 3`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{GeometricPolytope, Point};
use crate::lattice::FaceLattice;
use crate::linalg::{integer_rank, primitive_integer_row, Rational};
use crate::toric::{binomial, g2_closed, toric_g};

#[derive(Clone, Debug)]
pub struct Framework {
    pub dim: usize,
    pub points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
}

impl Framework {
    pub fn new(points: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput("points have different dimensions".into()));
        }
        if edges.iter().any(|&(a, b)| a == b || a >= points.len() || b >= points.len()) {
            return Err(Error::InvalidInput("edge endpoints out of range".into()));
        }
        Ok(Self { dim, points, edges })
    }
}

/// Edges of `p` plus, in every 2-face, the diagonals from its vertex of
/// least rank to all vertices not adjacent to it.
pub fn build_framework_ranked(p: &GeometricPolytope, rank: &[usize]) -> Result<Framework> {
    if p.dim < 3 {
        return Err(Error::DimensionTooSmall { what: "rigidity framework", minimum: 3, found: p.dim as i64 });
    }
    let lattice = &p.lattice;
    let mut edges: Vec<(usize, usize)> = lattice
        .faces_of_dim(1)
        .map(|e| {
            let v = lattice.face(e).vertices.to_vec();
            (v[0], v[1])
        })
        .collect();
    for two_face in lattice.faces_of_dim(2) {
        let vs = lattice.face(two_face).vertices.to_vec();
        let apex = *vs.iter().min_by_key(|&&v| rank[v]).expect("nonempty 2-face");
        let neighbours: Vec<usize> = lattice
            .covers_down(two_face)
            .iter()
            .map(|&e| lattice.face(e).vertices.to_vec())
            .filter(|pair| pair.contains(&apex))
            .flat_map(|pair| pair.into_iter().filter(|&v| v != apex))
            .collect();
        for &w in &vs {
            if w != apex && !neighbours.contains(&w) {
                edges.push((apex.min(w), apex.max(w)));
            }
        }
    }
    Framework::new(p.points.clone(), edges)
}

pub fn build_framework(p: &GeometricPolytope) -> Result<Framework> {
    let rank: Vec<usize> = (0..p.n_vertices()).collect();
    build_framework_ranked(p, &rank)
}

/// Rows: edges; columns: `d` coordinates per vertex. The row of `(v, w)`
/// holds `v - w` in the block of `v` and `w - v` in the block of `w`.
pub fn rigidity_matrix_rows(fw: &Framework) -> Vec<Vec<Rational>> {
    let d = fw.dim;
    let zero = Rational::from_integer(0.into());
    fw.edges
        .iter()
        .map(|&(v, w)| {
            let mut row = vec![zero.clone(); d * fw.points.len()];
            for k in 0..d {
                let diff = &fw.points[v][k] - &fw.points[w][k];
                row[v * d + k] = diff.clone();
                row[w * d + k] = -diff;
            }
            row
        })
        .collect()
}

pub fn rigidity_matrix(fw: &Framework) -> crate::linalg::RationalMatrix {
    crate::linalg::RationalMatrix::from_rows(fw.dim * fw.points.len(), rigidity_matrix_rows(fw))
}

pub fn rigidity_rank(fw: &Framework) -> usize {
    integer_rank(rigidity_matrix_rows(fw).iter().map(|r| primitive_integer_row(r)).collect())
}

/// `E - rank`: the dimension of the space of self-stresses.
pub fn stress_dimension(fw: &Framework) -> usize {
    fw.edges.len() - rigidity_rank(fw)
}

/// Kernel of the rigidity matrix equals the `C(d+1, 2)` trivial motions.
pub fn infinitesimal_rigidity_check(fw: &Framework, d: usize) -> bool {
    let kernel = d * fw.points.len() - rigidity_rank(fw);
    kernel == (d + 1) * d / 2
}

pub fn g2_via_stresses(p: &GeometricPolytope) -> Result<usize> {
    Ok(stress_dimension(&build_framework(p)?))
}

/// `C(d+1, 2) - d f_0 + E`, the Euler characteristic of the rigidity complex.
pub fn euler_g2(lattice: &FaceLattice, edges: usize) -> BigInt {
    let d = lattice.dim() as i64;
    let f0 = lattice.faces_of_dim(0).count() as i64;
    binomial(d + 1, 2) - BigInt::from(d * f0) + BigInt::from(edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub dim: usize,
    pub vertices: usize,
    pub edges: usize,
    pub diagonals: usize,
    pub rank: usize,
    pub kernel: usize,
    pub trivial_motions: usize,
    pub stress_dimension: usize,
    pub rigid: bool,
    pub euler_g2: String,
    /// `g_2` from the recursion, when `d >= 4`.
    pub g2_recursion: Option<String>,
    pub g2_closed: Option<String>,
    pub consistent: bool,
}

pub fn rigidity_report(p: &GeometricPolytope) -> Result<RigidityReport> {
    let fw = build_framework(p)?;
    let d = p.dim;
    let rank = rigidity_rank(&fw);
    let kernel = d * fw.points.len() - rank;
    let stress = fw.edges.len() - rank;
    let trivial = d * (d + 1) / 2;
    let f1 = p.lattice.faces_of_dim(1).count();
    let euler = euler_g2(&p.lattice, fw.edges.len());
    let (g2_recursion, g2_cl) = if d >= 4 {
        (Some(toric_g(&p.lattice)?.coeff(2)), Some(g2_closed(&p.lattice)?))
    } else {
        (None, None)
    };
    let stress_big = BigInt::from(stress);
    let consistent = kernel == trivial
        && match (&g2_recursion, &g2_cl) {
            (Some(a), Some(b)) => *a == stress_big && *b == stress_big && euler == stress_big,
            _ => stress == 0 && euler.is_zero(),
        };
    Ok(RigidityReport {
        dim: d,
        vertices: fw.points.len(),
        edges: fw.edges.len(),
        diagonals: fw.edges.len() - f1,
        rank,
        kernel,
        trivial_motions: trivial,
        stress_dimension: stress,
        rigid: kernel == trivial,
        euler_g2: euler.to_string(),
        g2_recursion: g2_recursion.map(|x| x.to_string()),
        g2_closed: g2_cl.map(|x| x.to_string()),
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cross, cube, cyclic, Recipe};
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn small_frameworks() {
        let bar = Framework::new(pts(&[&[0], &[1]]), vec![(0, 1)]).unwrap();
        let m = rigidity_matrix(&bar);
        assert_eq!(m.row(0), &[rat(-1), rat(1)]);
        let tri = Framework::new(pts(&[&[0, 0], &[1, 0], &[0, 1]]), vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(rigidity_matrix(&tri).rank(), 3);
        assert!(infinitesimal_rigidity_check(&tri, 2));
        let four_bar = Framework::new(
            pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]),
            vec![(0, 1), (1, 2), (2, 3), (0, 3)],
        )
        .unwrap();
        assert!(!infinitesimal_rigidity_check(&four_bar, 2));
        assert!(Framework::new(pts(&[&[0]]), vec![(0, 0)]).is_err());
    }

    #[test]
    fn cubes() {
        let c3 = cube(3).unwrap();
        let fw = build_framework(&c3).unwrap();
        assert_eq!(fw.edges.len(), 18);
        assert_eq!(rigidity_rank(&fw), 18);
        assert!(infinitesimal_rigidity_check(&fw, 3));
        assert_eq!(stress_dimension(&fw), 0);
        let c4 = cube(4).unwrap();
        let fw = build_framework(&c4).unwrap();
        assert_eq!(fw.edges.len(), 56);
        assert_eq!(rigidity_rank(&fw), 54);
        assert_eq!(stress_dimension(&fw), 2);
        assert!(infinitesimal_rigidity_check(&fw, 4));
        let rep = rigidity_report(&c4).unwrap();
        assert!(rep.consistent);
        assert_eq!(rep.g2_recursion.as_deref(), Some("2"));
        assert!(build_framework(&cube(2).unwrap()).is_err());
    }

    #[test]
    fn simplicial_frameworks_have_no_diagonals() {
        let oct = cross(3).unwrap();
        let fw = build_framework(&oct).unwrap();
        assert_eq!(fw.edges.len(), 12);
        assert_eq!(stress_dimension(&fw), 0);
        let c = cyclic(8, 4).unwrap();
        let rep = rigidity_report(&c).unwrap();
        assert_eq!(rep.diagonals, 0);
        assert!(rep.consistent, "{rep:?}");
    }

    #[test]
    fn euler_bookkeeping() {
        for text in ["cube4", "cross4", "prism(cube3)", "pyramid(cube3)", "bipyramid(prism(simplex2))"] {
            let p = Recipe::parse(text).unwrap().realize().unwrap().unwrap();
            let fw = build_framework(&p).unwrap();
            let g2 = toric_g(&p.lattice).unwrap().coeff(2);
            assert_eq!(euler_g2(&p.lattice, fw.edges.len()), g2, "{text}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn stress_dimension_is_invariant(
            entries in prop::collection::vec(-3i64..4, 16),
            shift in prop::collection::vec(-5i64..6, 4),
            order_seed in 0u64..1000,
            which in 0usize..3,
        ) {
            let text = ["cube4", "prism(cyclic(6,3))", "pyramid(cube3)"][which];
            let p = Recipe::parse(text).unwrap().realize().unwrap().unwrap();
            let base = g2_via_stresses(&p).unwrap();
            // another apex rule for the 2-face triangulations
            let n = p.n_vertices();
            let rank: Vec<usize> = (0..n).map(|v| (v as u64 * 7919 + order_seed) as usize % (n * 13)).collect();
            let fw = build_framework_ranked(&p, &rank).unwrap();
            prop_assert_eq!(stress_dimension(&fw), base);
            // an invertible affine image of the vertices
            let a = crate::linalg::RationalMatrix::from_int_rows(4, &entries.chunks(4).map(|c| c.to_vec()).collect::<Vec<_>>());
            prop_assume!(a.rank() == 4);
            let moved: Vec<Point> = p.points.iter().map(|x| {
                (0..4).map(|i| (0..4).map(|j| a.get(i, j) * &x[j]).sum::<Rational>() + rat(shift[i])).collect()
            }).collect();
            let image = Framework::new(moved, build_framework(&p).unwrap().edges).unwrap();
            prop_assert_eq!(stress_dimension(&image), base);
        }
    }
}
