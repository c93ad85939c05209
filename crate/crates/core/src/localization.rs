//! Back, front and fixed faces of a cone with respect to a direction `v`,
//! and the inequality `g(σ, 1) >= Σ_{τ ∈ Min Δ_0} g(τ, 1) g(σ/τ, 1)`.
//!
//! A face `τ` is a back face when moving from its relative interior in the
//! direction `v` stays inside `σ`. Exactly: every facet of `σ` containing `τ`
//! has inward normal `n` with `⟨n, v⟩ >= 0`. Front faces use `-v`, and
//! `Δ_0` is the set of faces whose span contains `v`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{to_rational, Cone, Point};
use crate::lattice::FaceId;
use crate::linalg::{primitive_integer_row, Rational, RationalMatrix};
use crate::shelling::random_direction;
use crate::toric::IntervalTable;
use crate::vertex_set::VertexSet;

/// A cone with the per-face data needed to classify many directions.
#[derive(Clone, Debug)]
pub struct PreparedCone<'a> {
    pub cone: &'a Cone,
    /// Integer basis of `span(τ)^⊥` for every face.
    annihilators: Vec<Vec<Vec<BigInt>>>,
    /// Indices of the facet normals tight on each face.
    tight: Vec<Vec<usize>>,
}

impl<'a> PreparedCone<'a> {
    pub fn new(cone: &'a Cone) -> Self {
        let lattice = &cone.lattice;
        let n = cone.ambient_dim();
        let annihilators = (0..lattice.len())
            .map(|f| {
                let rays = cone.face_rays(f);
                if rays.is_empty() {
                    return (0..n).map(|i| unit_int(n, i)).collect();
                }
                RationalMatrix::from_rows(n, rays)
                    .nullspace()
                    .iter()
                    .map(|w| primitive_integer_row(w))
                    .collect()
            })
            .collect();
        let tight = (0..lattice.len())
            .map(|f| {
                cone.normal_faces
                    .iter()
                    .enumerate()
                    .filter(|(_, &facet)| lattice.leq(f, facet))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Self { cone, annihilators, tight }
    }

    fn in_span(&self, f: FaceId, v: &[BigInt]) -> bool {
        self.annihilators[f].iter().all(|w| int_dot(w, v).is_zero())
    }
}

fn unit_int(n: usize, i: usize) -> Vec<BigInt> {
    (0..n).map(|j| BigInt::from(i32::from(i == j))).collect()
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    /// `v` scaled to a primitive integer vector.
    pub v: Vec<BigInt>,
    pub back: VertexSet,
    pub front: VertexSet,
    pub zero: VertexSet,
    pub min_zero: Vec<FaceId>,
}

pub fn classify_faces(pc: &PreparedCone<'_>, v: &[Rational]) -> Result<ConeDecomposition> {
    let cone = pc.cone;
    if v.len() != cone.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: cone.ambient_dim() as i64, found: v.len() as i64 });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("direction must be nonzero".into()));
    }
    let v = primitive_integer_row(v);
    let signs: Vec<BigInt> = cone.inward_normals.iter().map(|n| int_dot(n, &v)).collect();
    let lattice = &cone.lattice;
    let mut back = VertexSet::new();
    let mut front = VertexSet::new();
    let mut zero = VertexSet::new();
    for f in 0..lattice.len() {
        if pc.tight[f].iter().all(|&i| !signs[i].is_negative()) {
            back.insert(f);
        }
        if pc.tight[f].iter().all(|&i| !signs[i].is_positive()) {
            front.insert(f);
        }
        if pc.in_span(f, &v) {
            zero.insert(f);
        }
    }
    let min_zero = zero
        .iter()
        .filter(|&f| !zero.iter().any(|g| g != f && lattice.leq(g, f)))
        .collect();
    Ok(ConeDecomposition { v, back, front, zero, min_zero })
}

/// The face whose relative interior contains `x + t v` for `x` in the
/// relative interior of the back face `τ` and small `t > 0`.
pub fn tau_plus_v(pc: &PreparedCone<'_>, d: &ConeDecomposition, tau: FaceId) -> Result<FaceId> {
    if !d.back.contains(tau) {
        return Err(Error::InvalidInput(format!("face {tau} is not a back face")));
    }
    let cone = pc.cone;
    let lattice = &cone.lattice;
    let mut vertices = lattice.face(lattice.top()).vertices.clone();
    for &i in &pc.tight[tau] {
        if int_dot(&cone.inward_normals[i], &d.v).is_zero() {
            vertices = vertices.intersection(&lattice.face(cone.normal_faces[i]).vertices);
        }
    }
    lattice
        .find(&vertices)
        .ok_or_else(|| Error::Inconsistent("intersection of facets is not a face".into()))
}

/// Violations of the front/back invariants: coface closure, `Δ_0 = Δ_{<=0} ∩ Δ_{>=0}`,
/// `τ_{+v}` as the least face of `Δ_0` above `τ`, `[Δ_+] = Δ \ Δ_{<=0}`, and
/// `v ∉ span τ` on `[Δ_+]`.
pub fn front_and_back_violations(pc: &PreparedCone<'_>, d: &ConeDecomposition) -> Vec<String> {
    let lattice = &pc.cone.lattice;
    let mut out = Vec::new();
    for (name, set) in [("back", &d.back), ("front", &d.front), ("fixed", &d.zero)] {
        for f in set.iter() {
            if lattice.covers_up(f).iter().any(|&g| !set.contains(g)) {
                out.push(format!("{name} faces not closed upward at face {f}"));
            }
        }
    }
    if d.zero != d.back.intersection(&d.front) {
        out.push("fixed faces differ from back ∩ front".into());
    }
    for tau in d.back.iter() {
        let above: Vec<FaceId> = d.zero.iter().filter(|&r| lattice.leq(tau, r)).collect();
        let least: Vec<FaceId> = above
            .iter()
            .copied()
            .filter(|&r| above.iter().all(|&s| lattice.leq(r, s)))
            .collect();
        match (tau_plus_v(pc, d, tau), least.as_slice()) {
            (Ok(rho), [l]) if rho == *l => {}
            (rho, _) => out.push(format!("τ+v of face {tau} is {rho:?}, least fixed face above is {least:?}")),
        }
    }
    let plus: Vec<FaceId> = d.front.iter().filter(|&f| !d.zero.contains(f)).collect();
    let mut closure = VertexSet::new();
    for &f in &plus {
        for &g in lattice.below(f) {
            closure.insert(g);
        }
    }
    let complement: VertexSet = (0..lattice.len()).filter(|&f| !d.back.contains(f)).collect();
    if closure != complement {
        out.push("closure of Δ+ differs from the faces that are not back faces".into());
    }
    for f in closure.iter() {
        if pc.in_span(f, &d.v) {
            out.push(format!("v lies in the span of face {f} of [Δ+]"));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityTerm {
    pub face: Vec<usize>,
    pub g_face: String,
    pub g_quotient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub v: Vec<String>,
    pub back: Vec<Vec<usize>>,
    pub front: Vec<Vec<usize>>,
    pub fixed: Vec<Vec<usize>>,
    pub min_fixed: Vec<Vec<usize>>,
    pub terms: Vec<MonotonicityTerm>,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    pub violations: Vec<String>,
}

/// `(g(σ, 1), Σ_{τ ∈ Min Δ_0} g(τ, 1) g(σ/τ, 1))`.
pub fn monotonicity_sides(pc: &PreparedCone<'_>, d: &ConeDecomposition) -> (BigInt, BigInt, Vec<MonotonicityTerm>) {
    let lattice = &pc.cone.lattice;
    let rows = std::iter::once(lattice.bottom()).chain(d.min_zero.iter().copied());
    let table = IntervalTable::with_rows(lattice, rows);
    let lhs = table.whole().g.eval_one();
    let mut rhs = BigInt::zero();
    let mut terms = Vec::new();
    for &tau in &d.min_zero {
        let a = table.face(tau).g.eval_one();
        let b = table.quotient(tau).g.eval_one();
        rhs += &a * &b;
        terms.push(MonotonicityTerm {
            face: lattice.face(tau).vertices.to_vec(),
            g_face: a.to_string(),
            g_quotient: b.to_string(),
        });
    }
    (lhs, rhs, terms)
}

pub fn check_generalized_monotonicity(cone: &Cone, v: &[Rational]) -> Result<(BigInt, BigInt, bool)> {
    let pc = PreparedCone::new(cone);
    let d = classify_faces(&pc, v)?;
    let (lhs, rhs, _) = monotonicity_sides(&pc, &d);
    let ok = lhs >= rhs;
    Ok((lhs, rhs, ok))
}

pub fn localize(pc: &PreparedCone<'_>, v: &[Rational]) -> Result<LocalizationReport> {
    let d = classify_faces(pc, v)?;
    let lattice = &pc.cone.lattice;
    let names = |set: &VertexSet| set.iter().map(|f| lattice.face(f).vertices.to_vec()).collect();
    let (lhs, rhs, terms) = monotonicity_sides(pc, &d);
    Ok(LocalizationReport {
        v: d.v.iter().map(BigInt::to_string).collect(),
        back: names(&d.back),
        front: names(&d.front),
        fixed: names(&d.zero),
        min_fixed: d.min_zero.iter().map(|&f| lattice.face(f).vertices.to_vec()).collect(),
        terms,
        ok: lhs >= rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        violations: front_and_back_violations(pc, &d),
    })
}

/// Nonzero vectors in `span(a) ∩ span(b)`.
fn span_intersection(a: &[Point], b: &[Point]) -> Vec<Point> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // columns: a_1..a_p, -b_1..-b_q; solve Σ x_i a_i - Σ y_j b_j = 0
    let cols = a.len() + b.len();
    let rows: Vec<Point> = (0..n)
        .map(|k| {
            a.iter()
                .map(|r| r[k].clone())
                .chain(b.iter().map(|r| -r[k].clone()))
                .collect()
        })
        .collect();
    let mut out: Vec<Point> = Vec::new();
    for x in RationalMatrix::from_rows(cols, rows).nullspace() {
        let mut v = vec![Rational::zero(); n];
        for (i, r) in a.iter().enumerate() {
            for k in 0..n {
                v[k] += &x[i] * &r[k];
            }
        }
        if v.iter().any(|c| !c.is_zero()) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Deterministic directions: the `{-1, 0, 1}` grid (strided down to at most
/// `budget / 3` points), ray sums of faces (interior directions of faces),
/// vectors in spans of pairs of faces, and random directions from `seed`.
pub fn sample_directions(cone: &Cone, budget: usize, seed: u64) -> Vec<Point> {
    let n = cone.ambient_dim();
    let lattice = &cone.lattice;
    let mut out: Vec<Point> = Vec::new();
    let push = |v: Point, out: &mut Vec<Point>| {
        if v.iter().any(|x| !x.is_zero()) {
            let p = to_rational(&primitive_integer_row(&v));
            if !out.contains(&p) {
                out.push(p);
            }
        }
    };
    let grid_size = 3usize.pow(n as u32);
    let grid_budget = (budget / 3).max(1);
    let stride = (grid_size / grid_budget).max(1);
    for code in (1..grid_size).step_by(stride) {
        let mut c = code;
        let v: Point = (0..n)
            .map(|_| {
                let digit = (c % 3) as i64 - 1;
                c /= 3;
                Rational::from_integer(digit.into())
            })
            .collect();
        push(v, &mut out);
    }
    let faces: Vec<FaceId> = (1..lattice.len()).collect();
    let face_budget = out.len() + budget / 3;
    for &f in faces.iter().step_by((faces.len() / (budget / 6).max(1)).max(1)) {
        if out.len() >= face_budget {
            break;
        }
        let rays = cone.face_rays(f);
        let sum: Point = (0..n).map(|k| rays.iter().map(|r| r[k].clone()).sum()).collect();
        push(sum.clone(), &mut out);
        push(sum.iter().map(|x| -x).collect(), &mut out);
    }
    let pair_budget = out.len() + budget / 3;
    'pairs: for (i, &f) in faces.iter().enumerate() {
        for &g in &faces[i + 1..] {
            if out.len() >= pair_budget {
                break 'pairs;
            }
            if lattice.leq(f, g) || lattice.leq(g, f) {
                continue;
            }
            for v in span_intersection(&cone.face_rays(f), &cone.face_rays(g)) {
                push(v, &mut out);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut misses = 0;
    while out.len() < budget && misses < 1000 {
        let before = out.len();
        push(random_direction(&mut rng, n), &mut out);
        if out.len() == before {
            misses += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, simplex, Recipe};
    use crate::geometry::cone_over;
    use crate::lattice::FaceLattice;
    use crate::linalg::rat;

    fn square_cone() -> Cone {
        cone_over(&cube(2).unwrap())
    }

    fn face_with(cone: &Cone, rays: &[usize]) -> FaceId {
        cone.lattice.find(&rays.iter().copied().collect()).unwrap()
    }

    #[test]
    fn interior_direction() {
        let sigma = square_cone();
        let pc = PreparedCone::new(&sigma);
        let v = [rat(1), rat(1), rat(4)];
        let d = classify_faces(&pc, &v).unwrap();
        assert_eq!(d.zero.to_vec(), vec![sigma.lattice.top()]);
        assert_eq!(d.back.len(), sigma.lattice.len());
        assert!(front_and_back_violations(&pc, &d).is_empty());
        let (lhs, rhs, ok) = check_generalized_monotonicity(&sigma, &v).unwrap();
        assert_eq!((lhs, rhs, ok), (BigInt::from(2), BigInt::from(2), true));
        assert!(classify_faces(&pc, &[rat(0), rat(0), rat(0)]).is_err());
    }

    #[test]
    fn opposite_faces_example() {
        // square vertices: 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1)
        let sigma = square_cone();
        let pc = PreparedCone::new(&sigma);
        let v = [rat(0), rat(1), rat(0)];
        let d = classify_faces(&pc, &v).unwrap();
        let left = face_with(&sigma, &[0, 2]);
        let right = face_with(&sigma, &[1, 3]);
        let mut min = d.min_zero.clone();
        min.sort();
        let mut expected = vec![left, right];
        expected.sort();
        assert_eq!(min, expected);
        assert_eq!(d.zero.len(), 3);
        let (lhs, rhs, ok) = check_generalized_monotonicity(&sigma, &v).unwrap();
        assert_eq!((lhs, rhs, ok), (BigInt::from(2), BigInt::from(2), true));
        assert!(front_and_back_violations(&pc, &d).is_empty());
        // a ray inside τ_1 moves into τ_1
        let ray = face_with(&sigma, &[0]);
        assert!(d.back.contains(ray));
        assert_eq!(tau_plus_v(&pc, &d, ray).unwrap(), left);
        assert_eq!(tau_plus_v(&pc, &d, left).unwrap(), left);
        // with v = e_y, faces on y = 1 (rays 2 and 3) are not back faces
        let top_edge = face_with(&sigma, &[2, 3]);
        assert!(!d.back.contains(top_edge));
        assert!(tau_plus_v(&pc, &d, top_edge).is_err());
    }

    #[test]
    fn relative_interior_of_a_face() {
        let sigma = square_cone();
        let pc = PreparedCone::new(&sigma);
        // sum of the rays of the edge {0, 1}: (1, 0, 2)
        let d = classify_faces(&pc, &[rat(1), rat(0), rat(2)]).unwrap();
        let edge = face_with(&sigma, &[0, 1]);
        assert_eq!(d.min_zero, vec![edge]);
        // origin: its τ+v is the least fixed face overall
        assert_eq!(tau_plus_v(&pc, &d, sigma.lattice.bottom()).unwrap(), edge);
    }

    #[test]
    fn octant() {
        let n = |v: [i64; 3]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let lattice = FaceLattice::from_vertex_facets(3, &[vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
        let normal_faces = (0..3)
            .map(|i| {
                let rest: VertexSet = (0..3).filter(|&j| j != i).collect();
                lattice.find(&rest).unwrap()
            })
            .collect();
        let octant = Cone {
            rays: vec![n([1, 0, 0]), n([0, 1, 0]), n([0, 0, 1])],
            inward_normals: vec![n([1, 0, 0]), n([0, 1, 0]), n([0, 0, 1])],
            normal_faces,
            lattice,
        };
        let pc = PreparedCone::new(&octant);
        let d = classify_faces(&pc, &[rat(1), rat(1), rat(1)]).unwrap();
        assert_eq!(d.zero.to_vec(), vec![octant.lattice.top()]);
        assert_eq!(d.back.len(), octant.lattice.len());
        assert!(front_and_back_violations(&pc, &d).is_empty());
    }

    #[test]
    fn front_is_back_of_negation() {
        let p = Recipe::parse("prism(simplex2)").unwrap().realize().unwrap().unwrap();
        let sigma = cone_over(&p);
        let pc = PreparedCone::new(&sigma);
        for v in sample_directions(&sigma, 40, 1) {
            let neg: Point = v.iter().map(|x| -x).collect();
            let a = classify_faces(&pc, &v).unwrap();
            let b = classify_faces(&pc, &neg).unwrap();
            assert_eq!(a.front, b.back);
            assert!(front_and_back_violations(&pc, &a).is_empty());
            let (lhs, rhs, _) = monotonicity_sides(&pc, &a);
            assert!(lhs >= rhs);
        }
    }

    #[test]
    fn sampling_hits_nontrivial_strata() {
        let sigma = cone_over(&cube(3).unwrap());
        let pc = PreparedCone::new(&sigma);
        let dirs = sample_directions(&sigma, 60, 0);
        assert_eq!(dirs.len(), 60);
        let multi = dirs
            .iter()
            .filter(|v| classify_faces(&pc, v).unwrap().min_zero.len() > 1)
            .count();
        assert!(multi > 0);
        let point = cone_over(&simplex(0).unwrap());
        assert_eq!(sample_directions(&point, 10, 0).len(), 2);
    }
}
