//! Exact rational geometry: polytopes from points, cones over polytopes, and fans.
//!
//! Facet enumeration is brute force: every hyperplane through `d` affinely
//! independent points is tried and kept if all points lie on one side. That
//! is `O(n^d)` candidates, meant for `n` up to about 30 and `d <= 6`.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FaceId, FaceLattice, LatticeFile};
use crate::linalg::{dot, primitive_integer_row, Rational, RationalMatrix};
use crate::polynomial::Polynomial;
use crate::toric::g_from_h;
use crate::vertex_set::VertexSet;

pub type Point = Vec<Rational>;

/// `⟨normal, x⟩ <= offset`, with `(normal, offset)` a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    pub vertices: VertexSet,
}

impl Facet {
    /// `offset - ⟨normal, x⟩`: zero on the facet, positive inside.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let ax: Rational = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, xi)| xi * Rational::from_integer(a.clone()))
            .sum();
        Rational::from_integer(self.offset.clone()) - ax
    }

    pub fn normal_rational(&self) -> Point {
        self.normal.iter().cloned().map(Rational::from_integer).collect()
    }
}

/// A full-dimensional polytope in its own coordinates.
#[derive(Clone, Debug)]
pub struct GeometricPolytope {
    /// Vertices as given, in the ambient space.
    pub ambient_vertices: Vec<Point>,
    /// The same vertices in coordinates of the affine hull (`dim` entries each).
    pub points: Vec<Point>,
    pub dim: usize,
    pub facets: Vec<Facet>,
    pub lattice: FaceLattice,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Affine rank of a point set (`-1` for no points).
pub fn affine_dimension(points: &[Point]) -> i64 {
    let Some(base) = points.first() else { return -1 };
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(base.len(), diffs).rank() as i64
}

/// Coordinates of the points in a chart of their affine hull, obtained by
/// keeping a set of pivot coordinates.
fn affine_chart(points: &[Point]) -> (usize, Vec<Point>) {
    let m = points[0].len();
    let base = &points[0];
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..m {
        let mut cols = chosen.clone();
        cols.push(c);
        let sub: Vec<Point> = diffs
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let r = if sub.is_empty() { 0 } else { RationalMatrix::from_rows(cols.len(), sub).rank() };
        if r > rank {
            rank = r;
            chosen.push(c);
        }
    }
    let chart = points
        .iter()
        .map(|p| chosen.iter().map(|&j| p[j].clone()).collect())
        .collect();
    (chosen.len(), chart)
}

/// Minimal integer arithmetic used by the hyperplane search.
trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn unit() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_nil(&self) -> bool;
    fn sign(&self) -> i32;
    fn to_big(&self) -> BigInt;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn sign(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        <BigInt as One>::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Bareiss determinant; destroys `m`.
fn det<R: Ring>(mut m: Vec<Vec<R>>) -> Option<R> {
    let n = m.len();
    if n == 0 {
        return Some(R::unit());
    }
    let mut sign = 1;
    let mut prev = R::unit();
    for k in 0..n - 1 {
        if m[k][k].is_nil() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_nil()) else {
                return Some(R::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        R::zero().sub(&d)
    } else {
        Some(d)
    }
}

/// Facet hyperplanes of the full-dimensional integer point set, as
/// `(normal, offset, tight point set)`. `None` on arithmetic overflow.
fn search_facets<R>(points: &[Vec<R>], dim: usize) -> Option<Vec<(Vec<R>, R, VertexSet)>>
where
    R: Ring,
{
    let n = points.len();
    let mut found: Vec<(Vec<R>, R, VertexSet)> = Vec::new();
    if dim == 0 {
        return Some(found);
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let subset: VertexSet = idx.iter().copied().collect();
        if !found.iter().any(|(_, _, s)| subset.is_subset(s)) {
            if let Some(candidate) = hyperplane_through(points, &idx)? {
                let (normal, offset) = candidate;
                let mut tight = VertexSet::new();
                let mut side = 0;
                let mut ok = true;
                for (i, p) in points.iter().enumerate() {
                    let mut v = R::zero();
                    for (a, x) in normal.iter().zip(p) {
                        v = v.add(&a.mul(x)?)?;
                    }
                    let s = v.sub(&offset)?.sign();
                    if s == 0 {
                        tight.insert(i);
                    } else if side == 0 {
                        side = s;
                    } else if side != s {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    // orient so that the points satisfy ⟨a, x⟩ <= b
                    let (normal, offset) = if side > 0 {
                        (
                            normal.iter().map(|a| R::zero().sub(a)).collect::<Option<Vec<R>>>()?,
                            R::zero().sub(&offset)?,
                        )
                    } else {
                        (normal, offset)
                    };
                    found.push((normal, offset, tight));
                }
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return Some(found);
            }
            i -= 1;
            if idx[i] < n - dim + i {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Normal (generalized cross product of the difference vectors) and offset of
/// the hyperplane through the chosen points; `Some(None)` if they are
/// affinely dependent.
#[allow(clippy::type_complexity)]
fn hyperplane_through<R>(points: &[Vec<R>], idx: &[usize]) -> Option<Option<(Vec<R>, R)>>
where
    R: Ring,
{
    let dim = points[0].len();
    let base = &points[idx[0]];
    let mut diffs: Vec<Vec<R>> = Vec::with_capacity(dim - 1);
    for &i in &idx[1..] {
        let row: Option<Vec<R>> = points[i].iter().zip(base).map(|(a, b)| a.sub(b)).collect();
        diffs.push(row?);
    }
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        let minor: Vec<Vec<R>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = det(minor)?;
        normal.push(if j % 2 == 0 { d } else { R::zero().sub(&d)? });
    }
    if normal.iter().all(Ring::is_nil) {
        return Some(None);
    }
    let mut offset = R::zero();
    for (a, x) in normal.iter().zip(base) {
        offset = offset.add(&a.mul(x)?)?;
    }
    Some(Some((normal, offset)))
}

fn primitive_with_offset(normal: &[BigInt], offset: &BigInt) -> (Vec<BigInt>, BigInt) {
    let g = normal.iter().fold(offset.abs(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return (normal.to_vec(), offset.clone());
    }
    (normal.iter().map(|x| x / &g).collect(), offset / &g)
}

fn scale_to_integers(points: &[Point]) -> Vec<Vec<BigInt>> {
    let lcm = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        .collect()
}

/// Facets of the convex hull of full-dimensional points in `R^dim`, with
/// normals expressed for the original (unscaled) coordinates.
fn enumerate_facets(points: &[Point], dim: usize) -> Vec<(Vec<BigInt>, VertexSet)> {
    let ints = scale_to_integers(points);
    let small: Option<Vec<Vec<i128>>> = ints
        .iter()
        .map(|p| p.iter().map(|x| x.to_i128().filter(|v| v.abs() < (1i128 << 40))).collect())
        .collect();
    let raw: Vec<(Vec<BigInt>, VertexSet)> = small
        .and_then(|s| search_facets::<i128>(&s, dim))
        .map(|found| {
            found
                .into_iter()
                .map(|(n, _, t)| (n.iter().map(Ring::to_big).collect(), t))
                .collect()
        })
        .unwrap_or_else(|| {
            search_facets::<BigInt>(&ints, dim)
                .expect("bigint arithmetic cannot overflow")
                .into_iter()
                .map(|(n, _, t)| (n, t))
                .collect()
        });
    raw
}

impl GeometricPolytope {
    /// Convex hull of the given points; duplicates are dropped and
    /// non-extreme points discarded, and the dimension is that of the affine
    /// hull.
    pub fn from_points(input: &[Point]) -> Result<Self> {
        if input.is_empty() {
            return Err(Error::InvalidInput("no points".into()));
        }
        let m = input[0].len();
        if input.iter().any(|p| p.len() != m) {
            return Err(Error::InvalidInput("points have different dimensions".into()));
        }
        let mut pts: Vec<Point> = Vec::new();
        for p in input {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        let (dim, chart) = affine_chart(&pts);
        if dim == 0 {
            return Self::assemble(pts, chart, 0, Vec::new());
        }
        let facets = enumerate_facets(&chart, dim);
        // keep the points that are the only point on their minimal face
        let all = VertexSet::full(pts.len());
        let extreme: Vec<usize> = (0..pts.len())
            .filter(|&i| {
                let meet = facets
                    .iter()
                    .filter(|(_, s)| s.contains(i))
                    .fold(all.clone(), |acc, (_, s)| acc.intersection(s));
                meet.len() == 1
            })
            .collect();
        let vertices: Vec<Point> = extreme.iter().map(|&i| pts[i].clone()).collect();
        let chart: Vec<Point> = extreme.iter().map(|&i| chart[i].clone()).collect();
        let normals: Vec<(Vec<BigInt>, BigInt)> = facets
            .into_iter()
            .map(|(n, _)| {
                let nr: Point = n.iter().cloned().map(Rational::from_integer).collect();
                let offset = chart.iter().map(|p| dot(&nr, p)).max().expect("nonempty");
                let mut row: Vec<Rational> = nr;
                row.push(offset);
                let ints = primitive_integer_row(&row);
                let (offset, normal) = ints.split_last().expect("nonempty");
                (normal.to_vec(), offset.clone())
            })
            .collect();
        Self::assemble(vertices, chart, dim, normals)
    }

    /// A full-dimensional polytope with known facet inequalities; the
    /// inequalities are verified against the points.
    pub fn with_facets(points: Vec<Point>, inequalities: Vec<(Point, Rational)>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if affine_dimension(&points) != dim as i64 {
            return Err(Error::InvalidInput("points are not full-dimensional".into()));
        }
        let normals = inequalities
            .into_iter()
            .map(|(a, b)| {
                let mut row = a;
                row.push(b);
                let ints = primitive_integer_row(&row);
                let (offset, normal) = ints.split_last().expect("nonempty");
                (normal.to_vec(), offset.clone())
            })
            .collect();
        Self::assemble(points.clone(), points, dim, normals)
    }

    fn assemble(
        ambient_vertices: Vec<Point>,
        points: Vec<Point>,
        dim: usize,
        normals: Vec<(Vec<BigInt>, BigInt)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Ok(Self {
                ambient_vertices,
                points,
                dim,
                facets: Vec::new(),
                lattice: FaceLattice::point(),
            });
        }
        let mut facets = Vec::new();
        for (normal, offset) in normals {
            let (normal, offset) = primitive_with_offset(&normal, &offset);
            let mut facet = Facet { normal, offset, vertices: VertexSet::new() };
            for (i, p) in points.iter().enumerate() {
                let s = facet.slack(p);
                if s.is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "point {i} violates a facet inequality"
                    )));
                }
                if s.is_zero() {
                    facet.vertices.insert(i);
                }
            }
            if !facets.contains(&facet) {
                facets.push(facet);
            }
        }
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.to_vec()).collect();
        let lattice = FaceLattice::from_vertex_facets(points.len(), &lists)?;
        if lattice.dim() != dim as i32 {
            return Err(Error::DimensionMismatch { expected: dim as i64, found: lattice.dim().into() });
        }
        Ok(Self { ambient_vertices, points, dim, facets, lattice })
    }

    pub fn n_vertices(&self) -> usize {
        self.points.len()
    }

    /// Average of the vertices (in chart coordinates); always interior.
    pub fn barycenter(&self) -> Point {
        let n = Rational::from_integer(BigInt::from(self.points.len()));
        (0..self.dim)
            .map(|j| self.points.iter().map(|p| p[j].clone()).sum::<Rational>() / &n)
            .collect()
    }

    /// Index into `facets` of the facet with the given lattice face.
    pub fn facet_for_face(&self, face: FaceId) -> Option<usize> {
        let vs = &self.lattice.face(face).vertices;
        self.facets.iter().position(|f| &f.vertices == vs)
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            schema: "polytope/v1".into(),
            vertices: self
                .ambient_vertices
                .iter()
                .map(|p| p.iter().map(rational_to_string).collect())
                .collect(),
        }
    }

    pub fn report(&self) -> PolytopeReport {
        PolytopeReport {
            schema: "polytope/v1".into(),
            dim: self.dim,
            vertices: self.to_file().vertices,
            facets: self
                .facets
                .iter()
                .map(|f| FacetReport {
                    normal: f.normal.iter().map(BigInt::to_string).collect(),
                    offset: f.offset.to_string(),
                    vertices: f.vertices.to_vec(),
                })
                .collect(),
            lattice: self.lattice.to_file(),
        }
    }
}

/// JSON input form `polytope/v1`: vertices with rational coordinates as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    #[serde(default = "polytope_schema")]
    pub schema: String,
    pub vertices: Vec<Vec<String>>,
}

fn polytope_schema() -> String {
    "polytope/v1".into()
}

impl PolytopeFile {
    pub fn points(&self) -> Result<Vec<Point>> {
        if self.schema != "polytope/v1" {
            return Err(Error::InvalidInput(format!("unknown schema {:?}", self.schema)));
        }
        self.vertices
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetReport {
    pub normal: Vec<String>,
    pub offset: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeReport {
    pub schema: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetReport>,
    pub lattice: LatticeFile,
}

/// Primitive integer vector with the same direction.
pub fn primitive_ray(v: &[Rational]) -> Vec<BigInt> {
    primitive_integer_row(v)
}

pub fn to_rational(v: &[BigInt]) -> Point {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// A pointed full-dimensional cone over a polytope: rays `(v, 1)` for the
/// vertices `v`. Its faces correspond to faces of the polytope, with the
/// empty face standing for the zero cone.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rays: Vec<Vec<BigInt>>,
    /// Inward facet normals `n` with `⟨n, x⟩ >= 0` on the cone, one per facet.
    pub inward_normals: Vec<Vec<BigInt>>,
    /// Lattice face of each normal's facet.
    pub normal_faces: Vec<FaceId>,
    pub lattice: FaceLattice,
}

impl Cone {
    pub fn ambient_dim(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    /// Dimension of the cone of lattice face `f`.
    pub fn face_dim(&self, f: FaceId) -> usize {
        (self.lattice.face_dim(f) + 1) as usize
    }

    pub fn face_rays(&self, f: FaceId) -> Vec<Point> {
        self.lattice
            .face(f)
            .vertices
            .iter()
            .map(|v| to_rational(&self.rays[v]))
            .collect()
    }

    /// Whether `v` lies in the linear span of the face.
    pub fn spans(&self, f: FaceId, v: &[Rational]) -> bool {
        crate::linalg::in_span(&self.face_rays(f), v)
    }

    /// Whether `x` lies in the cone.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inward_normals
            .iter()
            .all(|n| !dot(&to_rational(n), x).is_negative())
    }
}

pub fn cone_over(p: &GeometricPolytope) -> Cone {
    let lift = |x: &Point| {
        let mut v = x.clone();
        v.push(Rational::one());
        primitive_ray(&v)
    };
    let rays = p.points.iter().map(lift).collect();
    let mut inward_normals = Vec::new();
    let mut normal_faces = Vec::new();
    for f in &p.facets {
        let mut n: Vec<BigInt> = f.normal.iter().map(|a| -a).collect();
        n.push(f.offset.clone());
        inward_normals.push(primitive_ray(&to_rational(&n)));
        normal_faces.push(p.lattice.find(&f.vertices).expect("facet is a face"));
    }
    if p.dim == 0 {
        // a single ray in R^1 (after the lift); its only facet is the origin
        inward_normals.push(vec![BigInt::one()]);
        normal_faces.push(p.lattice.bottom());
    }
    Cone { rays, inward_normals, normal_faces, lattice: p.lattice.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCone {
    pub rays: VertexSet,
    pub dim: usize,
}

/// A fan given by its rays and cones (each cone a set of ray indices),
/// closed under faces.
#[derive(Clone, Debug)]
pub struct Fan {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<FanCone>,
    /// Membership in the boundary subfan, per cone.
    pub boundary: Vec<bool>,
}

impl Fan {
    /// Cones must be sorted by dimension and contain the zero cone; checks
    /// that the common rays of any two cones span a cone of the fan.
    pub fn new(ambient_dim: usize, rays: Vec<Vec<BigInt>>, mut cones: Vec<FanCone>) -> Result<Self> {
        cones.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
        let index: HashMap<&VertexSet, usize> = cones.iter().enumerate().map(|(i, c)| (&c.rays, i)).collect();
        if !index.contains_key(&VertexSet::new()) {
            return Err(Error::InvalidInput("fan lacks the zero cone".into()));
        }
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                let common = a.rays.intersection(&b.rays);
                if !index.contains_key(&common) {
                    return Err(Error::InvalidInput(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        a.rays, b.rays
                    )));
                }
            }
        }
        let boundary = boundary_flags(&cones);
        Ok(Self { ambient_dim, rays, cones, boundary })
    }

    pub fn max_dim(&self) -> usize {
        self.cones.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn is_complete_like(&self) -> bool {
        !self.boundary.iter().any(|&b| b)
    }

    /// g of each cone, as the g of the polytope it is the cone over.
    pub fn cone_g(&self) -> Vec<Polynomial> {
        let mut g: Vec<Polynomial> = Vec::with_capacity(self.cones.len());
        let max = self.max_dim();
        let powers: Vec<Polynomial> = (0..=max).map(|n| Polynomial::binomial_power(-1, n)).collect();
        for (i, c) in self.cones.iter().enumerate() {
            if c.dim == 0 {
                g.push(Polynomial::one());
                continue;
            }
            let mut h = Polynomial::zero();
            for (j, d) in self.cones[..i].iter().enumerate() {
                if d.dim < c.dim && d.rays.is_subset(&c.rays) {
                    h = &h + &(&g[j] * &powers[c.dim - d.dim - 1]);
                }
            }
            g.push(g_from_h(&h, c.dim as i32 - 1));
        }
        g
    }
}

/// Boundary subfan: faces of the `(d-1)`-cones lying in exactly one `d`-cone.
fn boundary_flags(cones: &[FanCone]) -> Vec<bool> {
    let d = cones.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut flags = vec![false; cones.len()];
    if d == 0 {
        return flags;
    }
    let tops: Vec<&FanCone> = cones.iter().filter(|c| c.dim == d).collect();
    for ridge in cones.iter().filter(|c| c.dim + 1 == d) {
        let n = tops.iter().filter(|t| ridge.rays.is_subset(&t.rays)).count();
        if n == 1 {
            for (i, c) in cones.iter().enumerate() {
                if c.rays.is_subset(&ridge.rays) {
                    flags[i] = true;
                }
            }
        }
    }
    flags
}

/// Cones over the proper faces of `p`, after moving the vertex average to
/// the origin.
pub fn central_fan(p: &GeometricPolytope) -> Result<Fan> {
    let c = p.barycenter();
    let rays: Vec<Vec<BigInt>> = p
        .points
        .iter()
        .map(|x| {
            let v: Point = x.iter().zip(&c).map(|(a, b)| a - b).collect();
            primitive_ray(&v)
        })
        .collect();
    let cones = (0..p.lattice.len())
        .filter(|&f| f != p.lattice.top())
        .map(|f| FanCone {
            rays: p.lattice.face(f).vertices.clone(),
            dim: (p.lattice.face_dim(f) + 1) as usize,
        })
        .collect();
    Fan::new(p.dim, rays, cones)
}

/// The fan `[σ]` of all faces of a single cone.
pub fn cone_fan(sigma: &Cone) -> Result<Fan> {
    let cones = (0..sigma.lattice.len())
        .map(|f| FanCone {
            rays: sigma.lattice.face(f).vertices.clone(),
            dim: sigma.face_dim(f),
        })
        .collect();
    Fan::new(sigma.ambient_dim(), sigma.rays.clone(), cones)
}

/// `Σ_{σ ∈ Δ \ ∂Δ} g(σ, t) (t - 1)^(d - dim σ)`.
pub fn fan_h(fan: &Fan) -> Polynomial {
    let d = fan.max_dim();
    let g = fan.cone_g();
    let mut h = Polynomial::zero();
    for (i, c) in fan.cones.iter().enumerate() {
        if fan.boundary[i] {
            continue;
        }
        h = &h + &(&g[i] * &Polynomial::binomial_power(-1, d - c.dim));
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeOne {
    pub n_rays: usize,
    pub restriction_rank: usize,
    /// `#rays - rank` of `V* -> ⊕_ρ ⟨ρ⟩`.
    pub dimension: usize,
    /// Whether the rays span the ambient space.
    pub rays_span: bool,
}

/// Dimension of the degree-one part: `#Δ_1 - rank(V* -> ⊕_ρ ⟨ρ⟩)`.
pub fn degree_one_dim(fan: &Fan) -> DegreeOne {
    let ray_ids: Vec<usize> = fan
        .cones
        .iter()
        .filter(|c| c.dim == 1)
        .filter_map(|c| c.rays.first())
        .collect();
    let rows: Vec<Point> = ray_ids.iter().map(|&r| to_rational(&fan.rays[r])).collect();
    let rank = if rows.is_empty() {
        0
    } else {
        RationalMatrix::from_rows(fan.ambient_dim, rows).rank()
    };
    DegreeOne {
        n_rays: ray_ids.len(),
        restriction_rank: rank,
        dimension: ray_ids.len() - rank,
        rays_span: rank == fan.ambient_dim,
    }
}
