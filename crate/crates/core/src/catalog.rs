//! Built-in polytopes: simplices, cubes, cross-polytopes, cyclic polytopes,
//! and pyramids, bipyramids and prisms over them, with exact coordinates.
//!
//! Generators attach their facet inequalities directly (verified on
//! construction) instead of running the brute-force hull, so the larger
//! six-dimensional members stay cheap.
//!
//! Recipes are small expressions such as `cube3`, `cyclic(8,4)` or
//! `prism(simplex2)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{GeometricPolytope, Point};
use crate::lattice::FaceLattice;
use crate::linalg::{dot, rat, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Empty,
    Simplex(usize),
    Cube(usize),
    Cross(usize),
    Cyclic { n: usize, d: usize },
    Pyramid(Box<Recipe>),
    Bipyramid(Box<Recipe>),
    Prism(Box<Recipe>),
    /// The cone over a polytope. As a polytope it is the pyramid; commands
    /// working with cones take the inner polytope.
    Cone(Box<Recipe>),
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Empty => write!(f, "empty"),
            Recipe::Simplex(d) => write!(f, "simplex{d}"),
            Recipe::Cube(d) => write!(f, "cube{d}"),
            Recipe::Cross(d) => write!(f, "cross{d}"),
            Recipe::Cyclic { n, d } => write!(f, "cyclic({n},{d})"),
            Recipe::Pyramid(r) => write!(f, "pyramid({r})"),
            Recipe::Bipyramid(r) => write!(f, "bipyramid({r})"),
            Recipe::Prism(r) => write!(f, "prism({r})"),
            Recipe::Cone(r) => write!(f, "cone({r})"),
        }
    }
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(r)
    }

    pub fn dim(&self) -> i32 {
        match self {
            Recipe::Empty => -1,
            Recipe::Simplex(d) | Recipe::Cube(d) | Recipe::Cross(d) => *d as i32,
            Recipe::Cyclic { d, .. } => *d as i32,
            Recipe::Pyramid(r) | Recipe::Bipyramid(r) | Recipe::Prism(r) | Recipe::Cone(r) => r.dim() + 1,
        }
    }

    /// The polytope the recipe describes; `None` for the empty polytope.
    pub fn realize(&self) -> Result<Option<GeometricPolytope>> {
        Ok(match self {
            Recipe::Empty => None,
            Recipe::Simplex(d) => Some(simplex(*d)?),
            Recipe::Cube(d) => Some(cube(*d)?),
            Recipe::Cross(d) => Some(cross(*d)?),
            Recipe::Cyclic { n, d } => Some(cyclic(*n, *d)?),
            Recipe::Pyramid(r) | Recipe::Cone(r) => match r.realize()? {
                Some(q) => Some(pyramid(&q)?),
                None => Some(simplex(0)?),
            },
            Recipe::Bipyramid(r) => Some(bipyramid(&need(r.realize()?, "bipyramid")?)?),
            Recipe::Prism(r) => Some(prism(&need(r.realize()?, "prism")?)?),
        })
    }

    pub fn lattice(&self) -> Result<FaceLattice> {
        Ok(match self.realize()? {
            Some(p) => p.lattice,
            None => FaceLattice::empty(),
        })
    }
}

fn need(p: Option<GeometricPolytope>, what: &'static str) -> Result<GeometricPolytope> {
    p.ok_or(Error::DimensionTooSmall { what, minimum: 0, found: -1 })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a polytope name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).to_lowercase())
    }

    fn number(&mut self) -> Result<Option<usize>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map(Some).map_err(|_| Error::Parse { position: start, message: "number too large".into() })
    }

    fn required_number(&mut self) -> Result<usize> {
        self.number()?.ok_or_else(|| self.error("expected a number"))
    }

    fn expr(&mut self) -> Result<Recipe> {
        let start = self.pos;
        let name = self.ident()?;
        let suffix = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) { self.number()? } else { None };
        let unknown = || Error::Parse { position: start, message: format!("unknown polytope {name:?}") };
        let family = |d: usize| -> Option<Recipe> {
            match name.as_str() {
                "simplex" => Some(Recipe::Simplex(d)),
                "cube" => Some(Recipe::Cube(d)),
                "cross" => Some(Recipe::Cross(d)),
                _ => None,
            }
        };
        if let Some(d) = suffix {
            return family(d).ok_or_else(unknown);
        }
        let alias = match name.as_str() {
            "empty" => Some(Recipe::Empty),
            "point" => Some(Recipe::Simplex(0)),
            "segment" => Some(Recipe::Simplex(1)),
            "triangle" => Some(Recipe::Simplex(2)),
            "square" => Some(Recipe::Cube(2)),
            "tetrahedron" => Some(Recipe::Simplex(3)),
            "octahedron" => Some(Recipe::Cross(3)),
            _ => None,
        };
        if let Some(r) = alias {
            return Ok(r);
        }
        self.expect(b'(')?;
        let out = match name.as_str() {
            "simplex" | "cube" | "cross" => {
                let d = self.required_number()?;
                family(d).expect("known family")
            }
            "cyclic" => {
                let n = self.required_number()?;
                self.expect(b',')?;
                let d = self.required_number()?;
                Recipe::Cyclic { n, d }
            }
            "pyramid" => Recipe::Pyramid(Box::new(self.expr()?)),
            "bipyramid" => Recipe::Bipyramid(Box::new(self.expr()?)),
            "prism" => Recipe::Prism(Box::new(self.expr()?)),
            "cone" => Recipe::Cone(Box::new(self.expr()?)),
            _ => return Err(unknown()),
        };
        self.expect(b')')?;
        Ok(out)
    }
}

fn unit(d: usize, i: usize, value: Rational) -> Point {
    let mut v = vec![Rational::zero(); d];
    v[i] = value;
    v
}

pub fn simplex(d: usize) -> Result<GeometricPolytope> {
    if d == 0 {
        return GeometricPolytope::from_points(&[vec![]]);
    }
    let mut points = vec![vec![Rational::zero(); d]];
    points.extend((0..d).map(|i| unit(d, i, Rational::one())));
    let mut ineqs: Vec<(Point, Rational)> = (0..d).map(|i| (unit(d, i, rat(-1)), rat(0))).collect();
    ineqs.push((vec![rat(1); d], rat(1)));
    GeometricPolytope::with_facets(points, ineqs)
}

/// `{0,1}^d`; vertex `i` has coordinate `j` equal to bit `j` of `i`.
pub fn cube(d: usize) -> Result<GeometricPolytope> {
    if d == 0 {
        return simplex(0);
    }
    let points: Vec<Point> = (0..1usize << d)
        .map(|v| (0..d).map(|j| rat(((v >> j) & 1) as i64)).collect())
        .collect();
    let mut ineqs = Vec::new();
    for i in 0..d {
        ineqs.push((unit(d, i, rat(-1)), rat(0)));
        ineqs.push((unit(d, i, rat(1)), rat(1)));
    }
    GeometricPolytope::with_facets(points, ineqs)
}

/// Convex hull of `±e_i`.
pub fn cross(d: usize) -> Result<GeometricPolytope> {
    if d == 0 {
        return simplex(0);
    }
    let mut points = Vec::new();
    for i in 0..d {
        points.push(unit(d, i, rat(1)));
        points.push(unit(d, i, rat(-1)));
    }
    let ineqs = (0..1usize << d)
        .map(|signs| {
            let a = (0..d).map(|j| rat(if (signs >> j) & 1 == 1 { -1 } else { 1 })).collect();
            (a, rat(1))
        })
        .collect();
    GeometricPolytope::with_facets(points, ineqs)
}

/// `d`-subsets of `0..n` satisfying Gale's evenness condition.
pub fn gale_facets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if d == 0 || d > n {
        return out;
    }
    loop {
        let inside = |k: usize| idx.contains(&k);
        let outside: Vec<usize> = (0..n).filter(|&k| !inside(k)).collect();
        let even = outside
            .windows(2)
            .all(|w| (w[0] + 1..w[1]).filter(|&k| inside(k)).count() % 2 == 0);
        if even {
            out.push(idx.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The inequality `⟨a, x⟩ <= b` whose hyperplane passes through the chosen
/// points and which holds on all points.
fn hyperplane(points: &[Point], through: &[usize]) -> Result<(Point, Rational)> {
    let d = points[0].len();
    let rows: Vec<Point> = through
        .iter()
        .map(|&i| {
            let mut r = points[i].clone();
            r.push(rat(-1));
            r
        })
        .collect();
    let kernel = RationalMatrix::from_rows(d + 1, rows).nullspace();
    if kernel.len() != 1 {
        return Err(Error::Inconsistent("facet points are affinely dependent".into()));
    }
    let mut v = kernel.into_iter().next().expect("one vector");
    let b = v.pop().expect("offset");
    let mut a = v;
    let mut b = b;
    if points.iter().any(|p| dot(&a, p) > b) {
        a = a.iter().map(|x| -x).collect();
        b = -b;
    }
    Ok((a, b))
}

/// Convex hull of `(t, t^2, ..., t^d)` for `t = 1, ..., n`.
pub fn cyclic(n: usize, d: usize) -> Result<GeometricPolytope> {
    if n < d + 1 || d == 0 {
        return Err(Error::InvalidInput(format!("cyclic({n},{d}) needs n >= d + 1 and d >= 1")));
    }
    let points: Vec<Point> = (1..=n as i64)
        .map(|t| (1..=d as u32).map(|e| rat(t.pow(e))).collect())
        .collect();
    if d == 1 {
        return GeometricPolytope::from_points(&points);
    }
    let ineqs = gale_facets(n, d)
        .iter()
        .map(|f| hyperplane(&points, f))
        .collect::<Result<Vec<_>>>()?;
    GeometricPolytope::with_facets(points, ineqs)
}

fn lift(p: &Point, last: Rational) -> Point {
    let mut v = p.clone();
    v.push(last);
    v
}

/// Pyramid with apex above the vertex average of `q`.
pub fn pyramid(q: &GeometricPolytope) -> Result<GeometricPolytope> {
    let d = q.dim;
    let c = q.barycenter();
    let mut points: Vec<Point> = q.points.iter().map(|p| lift(p, rat(0))).collect();
    points.push(lift(&c, rat(1)));
    let mut ineqs = vec![(unit(d + 1, d, rat(-1)), rat(0))];
    for f in &q.facets {
        let a = f.normal_rational();
        let b = Rational::from_integer(f.offset.clone());
        let lambda = &b - dot(&a, &c);
        ineqs.push((lift(&a, lambda), b));
    }
    if d == 0 {
        // a segment: the apex end
        ineqs.push((unit(1, 0, rat(1)), rat(1)));
    }
    GeometricPolytope::with_facets(points, ineqs)
}

/// Bipyramid with apexes at heights `±1` over the vertex average of `q`.
pub fn bipyramid(q: &GeometricPolytope) -> Result<GeometricPolytope> {
    let d = q.dim;
    if d == 0 {
        return Err(Error::DimensionTooSmall { what: "bipyramid", minimum: 1, found: 0 });
    }
    let c = q.barycenter();
    let mut points: Vec<Point> = q.points.iter().map(|p| lift(p, rat(0))).collect();
    points.push(lift(&c, rat(1)));
    points.push(lift(&c, rat(-1)));
    let mut ineqs = Vec::new();
    for f in &q.facets {
        let a = f.normal_rational();
        let b = Rational::from_integer(f.offset.clone());
        let lambda = &b - dot(&a, &c);
        ineqs.push((lift(&a, lambda.clone()), b.clone()));
        ineqs.push((lift(&a, -lambda), b));
    }
    GeometricPolytope::with_facets(points, ineqs)
}

/// `q × [0, 1]`; vertex `i` of `q` becomes `i` (bottom) and `n + i` (top).
pub fn prism(q: &GeometricPolytope) -> Result<GeometricPolytope> {
    let d = q.dim;
    let mut points: Vec<Point> = q.points.iter().map(|p| lift(p, rat(0))).collect();
    points.extend(q.points.iter().map(|p| lift(p, rat(1))));
    let mut ineqs = vec![(unit(d + 1, d, rat(-1)), rat(0)), (unit(d + 1, d, rat(1)), rat(1))];
    for f in &q.facets {
        ineqs.push((lift(&f.normal_rational(), rat(0)), Rational::from_integer(f.offset.clone())));
    }
    GeometricPolytope::with_facets(points, ineqs)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: Recipe,
    pub polytope: GeometricPolytope,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.polytope.dim
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.polytope.lattice
    }
}

/// Base families: simplices, cubes and cross-polytopes of dimension `1..=max_dim`
/// and cyclic polytopes `C(n, d)` with `2 <= d <= max_dim`, `d + 2 <= n <= max_n`.
pub fn base_recipes(max_dim: usize, max_n: usize) -> Vec<Recipe> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        out.push(Recipe::Simplex(d));
        if d >= 2 {
            out.push(Recipe::Cube(d));
        }
        if d >= 3 {
            out.push(Recipe::Cross(d));
        }
    }
    for d in 2..=max_dim {
        for n in d + 2..=max_n {
            out.push(Recipe::Cyclic { n, d });
        }
    }
    out
}

/// The full catalog: base families up to dimension 6 with cyclic `n <= 10`,
/// plus pyramids, bipyramids and prisms over every base member of dimension
/// at most 5.
pub fn full_catalog_recipes() -> Vec<Recipe> {
    let bases = base_recipes(6, 10);
    let mut out = bases.clone();
    for b in bases.iter().filter(|b| b.dim() <= 5) {
        out.push(Recipe::Pyramid(Box::new(b.clone())));
        out.push(Recipe::Bipyramid(Box::new(b.clone())));
        out.push(Recipe::Prism(Box::new(b.clone())));
    }
    out
}

pub fn build(recipes: &[Recipe]) -> Result<Vec<CatalogEntry>> {
    recipes
        .iter()
        .map(|r| {
            let polytope = r
                .realize()?
                .ok_or_else(|| Error::CoordinatesRequired(format!("{r} has no points")))?;
            Ok(CatalogEntry { name: r.to_string(), recipe: r.clone(), polytope })
        })
        .collect()
}

pub fn full_catalog() -> Result<Vec<CatalogEntry>> {
    build(&full_catalog_recipes())
}

/// Whether every point of `p` lies strictly inside or on the boundary, i.e.
/// the facet description is consistent (used in tests).
pub fn facets_hold(p: &GeometricPolytope) -> bool {
    p.facets
        .iter()
        .all(|f| p.points.iter().all(|x| !f.slack(x).is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::toric_h;
    use crate::Polynomial;

    #[test]
    fn parses_recipes() {
        assert_eq!(Recipe::parse("cube3").unwrap(), Recipe::Cube(3));
        assert_eq!(Recipe::parse(" cube( 3 ) ").unwrap(), Recipe::Cube(3));
        assert_eq!(Recipe::parse("cyclic(8,4)").unwrap(), Recipe::Cyclic { n: 8, d: 4 });
        assert_eq!(
            Recipe::parse("prism(simplex2)").unwrap(),
            Recipe::Prism(Box::new(Recipe::Simplex(2)))
        );
        assert_eq!(Recipe::parse("cone(square)").unwrap(), Recipe::Cone(Box::new(Recipe::Cube(2))));
        assert_eq!(Recipe::parse("empty").unwrap(), Recipe::Empty);
        for bad in ["", "cube", "blob3", "prism(cube3", "cyclic(8)", "cube3 x"] {
            assert!(matches!(Recipe::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
        let r = Recipe::parse("bipyramid(cyclic(7,3))").unwrap();
        assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn family_f_vectors() {
        assert_eq!(simplex(3).unwrap().lattice.f_vector(), vec![4, 6, 4]);
        assert_eq!(cube(3).unwrap().lattice.f_vector(), vec![8, 12, 6]);
        assert_eq!(cross(3).unwrap().lattice.f_vector(), vec![6, 12, 8]);
        assert_eq!(cross(4).unwrap().lattice.f_vector(), vec![8, 24, 32, 16]);
        // C(7,4): f = (7, 21, 28, 14)
        assert_eq!(cyclic(7, 4).unwrap().lattice.f_vector(), vec![7, 21, 28, 14]);
        assert_eq!(cyclic(6, 2).unwrap().lattice.f_vector(), vec![6, 6]);
        assert_eq!(simplex(0).unwrap().lattice.dim(), 0);
        assert_eq!(cyclic(5, 1).unwrap().n_vertices(), 2);
    }

    #[test]
    fn compositions() {
        let prism = Recipe::parse("prism(simplex2)").unwrap().realize().unwrap().unwrap();
        assert_eq!(prism.lattice.f_vector(), vec![6, 9, 5]);
        assert_eq!(toric_h(&prism.lattice).unwrap(), Polynomial::from_i64s(&[1, 3, 3, 1]));
        let pyr = Recipe::parse("pyramid(square)").unwrap().realize().unwrap().unwrap();
        assert_eq!(pyr.lattice.f_vector(), vec![5, 8, 5]);
        let bip = Recipe::parse("bipyramid(triangle)").unwrap().realize().unwrap().unwrap();
        assert_eq!(bip.lattice.f_vector(), vec![5, 9, 6]);
        let seg = Recipe::parse("pyramid(point)").unwrap().realize().unwrap().unwrap();
        assert_eq!(seg.lattice.f_vector(), vec![2]);
        assert!(Recipe::parse("bipyramid(point)").unwrap().realize().is_err());
        assert!(Recipe::parse("empty").unwrap().realize().unwrap().is_none());
        assert!(Recipe::parse("empty").unwrap().lattice().unwrap().is_empty_polytope());
    }

    #[test]
    fn generated_lattices_match_combinatorial_constructions() {
        let q = cube(3).unwrap();
        assert!(pyramid(&q).unwrap().lattice.is_isomorphic(&q.lattice.pyramid()));
        assert!(bipyramid(&q).unwrap().lattice.is_isomorphic(&q.lattice.bipyramid().unwrap()));
        assert!(prism(&q).unwrap().lattice.is_isomorphic(&q.lattice.prism().unwrap()));
        assert!(prism(&cube(3).unwrap()).unwrap().lattice.is_isomorphic(&cube(4).unwrap().lattice));
        assert!(cross(3).unwrap().lattice.is_isomorphic(&cube(3).unwrap().lattice.dual()));
    }

    #[test]
    fn analytic_facets_match_hull() {
        for text in ["cube3", "cross3", "cyclic(7,3)", "cyclic(7,4)", "bipyramid(square)", "prism(cyclic(6,3))", "simplex4"] {
            let p = Recipe::parse(text).unwrap().realize().unwrap().unwrap();
            assert!(facets_hold(&p));
            let hull = GeometricPolytope::from_points(&p.points).unwrap();
            assert_eq!(hull.facets.len(), p.facets.len(), "{text}");
            assert!(hull.lattice.is_isomorphic(&p.lattice), "{text}");
        }
    }

    #[test]
    fn gale_evenness_counts() {
        // number of facets of C(n, 4) is n(n-3)/2
        for n in 5..=10 {
            assert_eq!(gale_facets(n, 4).len(), n * (n - 3) / 2);
        }
        assert_eq!(gale_facets(6, 2).len(), 6);
    }

    #[test]
    fn catalog_sizes() {
        let recipes = full_catalog_recipes();
        assert!(recipes.iter().all(|r| r.dim() <= 6));
        assert!(recipes.contains(&Recipe::Cyclic { n: 10, d: 6 }));
        assert!(recipes.contains(&Recipe::Prism(Box::new(Recipe::Cube(5)))));
    }
}
