//! Line shellings of polytope boundaries and the decomposition of `h(P, t)`
//! into the local contributions `h(I_j, I_{j-1}, t)` of the shelling steps.
//!
//! Subcomplexes of the boundary are sets of face ids (stored in a
//! [`VertexSet`]); a nonempty subcomplex always contains the empty face.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{rational_to_string, GeometricPolytope, Point};
use crate::lattice::{FaceId, FaceLattice};
use crate::linalg::{dot, rat, Rational};
use crate::polynomial::Polynomial;
use crate::toric::IntervalTable;
use crate::vertex_set::VertexSet;

/// Attempts at a random direction before giving up.
pub const RETRY_BUDGET: usize = 64;

#[derive(Clone, Debug)]
pub struct Shelling {
    /// Indices into `polytope.facets`, in shelling order.
    pub order: Vec<usize>,
    pub base: Point,
    pub direction: Point,
    /// Line parameter at which each facet hyperplane is crossed, in order.
    pub crossings: Vec<Rational>,
    /// Number of random directions drawn before a generic one was found.
    pub retries: usize,
}

/// Orders the facets by where the line `p + t v` crosses their hyperplanes,
/// or `None` if `v` is not generic.
fn order_for(p: &GeometricPolytope, base: &Point, v: &Point) -> Option<(Vec<usize>, Vec<Rational>)> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, f) in p.facets.iter().enumerate() {
        let av = dot(&f.normal_rational(), v);
        if av.is_zero() {
            return None;
        }
        let t = f.slack(base) / &av;
        if av.is_positive() {
            pos.push((t, i));
        } else {
            neg.push((t, i));
        }
    }
    pos.sort();
    neg.sort();
    let all: Vec<(Rational, usize)> = pos.into_iter().chain(neg).collect();
    if all.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    Some((all.iter().map(|x| x.1).collect(), all.into_iter().map(|x| x.0).collect()))
}

pub fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    loop {
        let v: Point = (0..dim).map(|_| rat(rng.gen_range(-997i64..=997))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A line shelling through the vertex average of `p`. Uses `direction` if it
/// is generic, otherwise pseudo-random directions drawn from `seed`.
pub fn line_shelling(p: &GeometricPolytope, direction: Option<&[Rational]>, seed: u64) -> Result<Shelling> {
    if p.dim == 0 {
        return Err(Error::DimensionTooSmall { what: "line shelling", minimum: 1, found: 0 });
    }
    let base = p.barycenter();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut retries = 0;
    let mut candidate: Point = match direction {
        Some(v) => {
            if v.len() != p.dim {
                return Err(Error::DimensionMismatch { expected: p.dim as i64, found: v.len() as i64 });
            }
            v.to_vec()
        }
        None => random_direction(&mut rng, p.dim),
    };
    loop {
        if let Some((order, crossings)) = order_for(p, &base, &candidate) {
            return Ok(Shelling { order, base, direction: candidate, crossings, retries });
        }
        if retries == RETRY_BUDGET {
            return Err(Error::DegenerateDirection(format!(
                "no generic direction after {RETRY_BUDGET} attempts"
            )));
        }
        retries += 1;
        candidate = random_direction(&mut rng, p.dim);
    }
}

impl Shelling {
    /// The same line traversed backwards: the reversed facet order.
    pub fn reversed(&self) -> Shelling {
        Shelling {
            order: self.order.iter().rev().copied().collect(),
            base: self.base.clone(),
            direction: self.direction.iter().map(|x| -x).collect(),
            crossings: self.crossings.iter().rev().map(|x| -x).collect(),
            retries: self.retries,
        }
    }
}

/// All faces below the given face, as a face-id set.
pub fn closure(lattice: &FaceLattice, f: FaceId) -> VertexSet {
    lattice.below(f).iter().copied().collect()
}

fn is_closed(lattice: &FaceLattice, set: &VertexSet) -> bool {
    set.iter().all(|f| lattice.below(f).iter().all(|&g| set.contains(g)))
}

/// `Σ_{F ∈ I \ J} g(F, t) (t - 1)^(d - 1 - dim F)` for subcomplexes `J ⊆ I`.
pub fn relative_h(lattice: &FaceLattice, table: &IntervalTable, i: &VertexSet, j: &VertexSet) -> Result<Polynomial> {
    if !j.is_subset(i) {
        return Err(Error::InvalidInput("J is not contained in I".into()));
    }
    if !is_closed(lattice, i) || !is_closed(lattice, j) {
        return Err(Error::InvalidInput("face set is not closed under taking faces".into()));
    }
    let d = lattice.dim();
    let mut h = Polynomial::zero();
    for f in i.iter().filter(|&f| !j.contains(f)) {
        let exp = d - 1 - lattice.face_dim(f);
        if exp < 0 {
            return Err(Error::InvalidInput("subcomplex contains the whole polytope".into()));
        }
        h = &h + &(table.face(f).g.clone() * Polynomial::binomial_power(-1, exp as usize));
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShellingStep {
    /// Index into the polytope's facets.
    pub facet: usize,
    pub vertices: Vec<usize>,
    pub local_h: Polynomial,
    pub running_sum: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShellingReport {
    pub direction: Vec<String>,
    pub retries: usize,
    pub steps: Vec<ShellingStep>,
    pub h: Polynomial,
    pub sum_matches: bool,
    pub nonnegative: bool,
    /// Necessary conditions for each partial union to be a disk.
    pub proxy_ok: bool,
    pub violations: Vec<String>,
}

impl ShellingReport {
    pub fn passed(&self) -> bool {
        self.sum_matches && self.nonnegative && self.proxy_ok
    }

    pub fn local(&self) -> Vec<Polynomial> {
        self.steps.iter().map(|s| s.local_h.clone()).collect()
    }
}

/// For `j >= 2`: `F_j ∩ I_{j-1}` must be a nonempty pure `(d-2)`-dimensional
/// subcomplex of `∂F_j`, all of it exactly when `j = r`.
fn proxy_violation(lattice: &FaceLattice, facet: FaceId, previous: &VertexSet, last: bool) -> Option<String> {
    let d = lattice.dim();
    let meet: Vec<FaceId> = lattice
        .below(facet)
        .iter()
        .copied()
        .filter(|&g| previous.contains(g))
        .collect();
    if d >= 2 && meet.iter().all(|&g| g == lattice.bottom()) {
        return Some("meets the previous facets only in the empty face".into());
    }
    let maximal = meet
        .iter()
        .filter(|&&g| !meet.iter().any(|&h| h != g && lattice.leq(g, h)));
    if let Some(&bad) = maximal.clone().find(|&&g| lattice.face_dim(g) != d - 2) {
        return Some(format!("intersection is not pure: maximal face of dimension {}", lattice.face_dim(bad)));
    }
    let ridges = lattice.covers_down(facet).len();
    let included = maximal.count();
    match (last, included == ridges) {
        (true, false) => Some("last facet does not close up the sphere".into()),
        (false, true) => Some("intersection is the whole boundary of the facet".into()),
        _ => None,
    }
}

pub fn shelling_decomposition(p: &GeometricPolytope, shelling: &Shelling, table: &IntervalTable) -> Result<ShellingReport> {
    let lattice = &p.lattice;
    let h = table.whole().h.clone();
    let mut previous = VertexSet::new();
    let mut running = Polynomial::zero();
    let mut steps = Vec::new();
    let mut violations = Vec::new();
    let r = shelling.order.len();
    for (j, &fi) in shelling.order.iter().enumerate() {
        let facet = lattice
            .find(&p.facets[fi].vertices)
            .ok_or_else(|| Error::Inconsistent("facet missing from the lattice".into()))?;
        if j >= 1 {
            if let Some(v) = proxy_violation(lattice, facet, &previous, j + 1 == r) {
                violations.push(format!("step {}: {v}", j + 1));
            }
        }
        let current = previous.union(&closure(lattice, facet));
        let local = relative_h(lattice, table, &current, &previous)?;
        running = &running + &local;
        steps.push(ShellingStep {
            facet: fi,
            vertices: p.facets[fi].vertices.to_vec(),
            local_h: local,
            running_sum: running.clone(),
        });
        previous = current;
    }
    let nonnegative = steps.iter().all(|s| s.local_h.has_nonnegative_coeffs());
    Ok(ShellingReport {
        direction: shelling.direction.iter().map(rational_to_string).collect(),
        retries: shelling.retries,
        sum_matches: running == h,
        nonnegative,
        proxy_ok: violations.is_empty(),
        violations,
        steps,
        h,
    })
}

/// Shelling plus decomposition in one call.
pub fn shell(p: &GeometricPolytope, direction: Option<&[Rational]>, seed: u64) -> Result<ShellingReport> {
    let s = line_shelling(p, direction, seed)?;
    let table = IntervalTable::lower(&p.lattice);
    shelling_decomposition(p, &s, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cube, cyclic, prism, simplex, Recipe};
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn triangles_at(p: &GeometricPolytope, s: &Shelling) -> Vec<usize> {
        s.order
            .iter()
            .enumerate()
            .filter(|(_, &f)| p.facets[f].vertices.len() == 3)
            .map(|(j, _)| j + 1)
            .collect()
    }

    #[test]
    fn prism_example() {
        let p = prism(&simplex(2).unwrap()).unwrap();
        let dir = [rat(3), rat(-1), rat(4)];
        let s = line_shelling(&p, Some(&dir), 0).unwrap();
        assert_eq!(s.retries, 0);
        assert_eq!(triangles_at(&p, &s), vec![1, 4]);
        let rep = shelling_decomposition(&p, &s, &IntervalTable::lower(&p.lattice)).unwrap();
        assert_eq!(
            rep.local(),
            vec![poly(&[0, 0, 0, 1]), poly(&[0, 0, 2]), poly(&[0, 1, 1]), poly(&[0, 1]), poly(&[1, 1])]
        );
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.h, poly(&[1, 3, 3, 1]));
    }

    #[test]
    fn segment() {
        let rep = shell(&simplex(1).unwrap(), None, 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.local(), vec![poly(&[0, 1]), poly(&[1])]);
    }

    #[test]
    fn square_partial_unions_are_paths() {
        let sq = cube(2).unwrap();
        let rep = shell(&sq, Some(&[rat(1), rat(2)]), 0).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.steps.len(), 4);
        assert_eq!(rep.h, poly(&[1, 2, 1]));
    }

    #[test]
    fn simplex_steps_are_powers() {
        let s = simplex(4).unwrap();
        let rep = shell(&s, None, 3).unwrap();
        assert!(rep.passed());
        let mut degrees: Vec<usize> = rep
            .local()
            .iter()
            .map(|p| {
                assert_eq!(p.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
                p.degree().unwrap()
            })
            .collect();
        degrees.sort();
        assert_eq!(degrees, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn first_and_last_steps() {
        let p = cyclic(8, 4).unwrap();
        let table = IntervalTable::lower(&p.lattice);
        let s = line_shelling(&p, None, 11).unwrap();
        let rep = shelling_decomposition(&p, &s, &table).unwrap();
        let first = p.lattice.find(&p.facets[s.order[0]].vertices).unwrap();
        let last = p.lattice.find(&p.facets[*s.order.last().unwrap()].vertices).unwrap();
        assert_eq!(rep.steps[0].local_h, table.face(first).g.reverse(4));
        assert_eq!(rep.steps.last().unwrap().local_h, table.face(last).g);
    }

    #[test]
    fn degenerate_direction_retries() {
        let sq = cube(2).unwrap();
        let s = line_shelling(&sq, Some(&[rat(1), rat(0)]), 5).unwrap();
        assert!(s.retries >= 1);
        let again = line_shelling(&sq, Some(&[rat(1), rat(0)]), 5).unwrap();
        assert_eq!(s.direction, again.direction);
        assert!(line_shelling(&sq, Some(&[rat(1)]), 5).is_err());
    }

    #[test]
    fn relative_h_whole_boundary() {
        let p = cube(3).unwrap();
        let table = IntervalTable::lower(&p.lattice);
        let boundary: VertexSet = (0..p.lattice.len() - 1).collect();
        assert_eq!(relative_h(&p.lattice, &table, &boundary, &VertexSet::new()).unwrap(), poly(&[1, 5, 5, 1]));
        let facet = p.lattice.facets()[0];
        let one: VertexSet = closure(&p.lattice, facet);
        assert!(relative_h(&p.lattice, &table, &VertexSet::new(), &one).is_err());
        let not_closed: VertexSet = [facet].into_iter().collect();
        assert!(relative_h(&p.lattice, &table, &not_closed, &VertexSet::new()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn decompositions_and_reversal(seed in 0u64..10_000, which in 0usize..5) {
            let text = ["cube3", "prism(simplex2)", "cross3", "bipyramid(square)", "cyclic(7,4)"][which];
            let p = Recipe::parse(text).unwrap().realize().unwrap().unwrap();
            let table = IntervalTable::lower(&p.lattice);
            let s = line_shelling(&p, None, seed).unwrap();
            let fwd = shelling_decomposition(&p, &s, &table).unwrap();
            prop_assert!(fwd.passed(), "{:?}", fwd.violations);
            for (step, &f) in fwd.steps.iter().zip(&s.order) {
                let id = p.lattice.find(&p.facets[f].vertices).unwrap();
                prop_assert_eq!(step.local_h.eval_one(), table.face(id).g.eval_one());
            }
            let back = shelling_decomposition(&p, &s.reversed(), &table).unwrap();
            prop_assert!(back.passed());
            let d = p.dim;
            let r = fwd.steps.len();
            for j in 0..r {
                prop_assert_eq!(&back.steps[j].local_h, &fwd.steps[r - 1 - j].local_h.reverse(d));
            }
        }
    }
}
