//! Toric g- and h-polynomials, flag numbers, and the identities and
//! inequalities they satisfy.
//!
//! The recursion
//!
//! ```text
//! h(P, t) = Σ_{F < P} g(F, t) (t - 1)^(d - 1 - dim F)
//! g_k(P)  = h_k(P) - h_{k-1}(P),   0 <= k <= d/2
//! ```
//!
//! with `g = h = 1` on the empty polytope, is evaluated for whole families of
//! intervals `[F, G]` at once by [`IntervalTable`]. Every interval of a
//! polytope lattice is again a polytope lattice, so one table answers the
//! face (`[∅, F]`) and quotient (`[F, P]`) questions the checks need.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{FaceId, FaceLattice};
use crate::polynomial::Polynomial;

/// `h` and `g` of one interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPolys {
    pub dim: i32,
    pub h: Polynomial,
    pub g: Polynomial,
}

impl IntervalPolys {
    fn empty() -> Self {
        Self { dim: -1, h: Polynomial::one(), g: Polynomial::one() }
    }

    /// `h_k - h_{k-1}` for every `k`; identically zero on the empty polytope.
    pub fn gtilde(&self, k: i64) -> BigInt {
        if self.dim < 0 {
            return BigInt::zero();
        }
        self.h.coeff(k) - self.h.coeff(k - 1)
    }
}

/// Truncation of `(1 - t) h` to degrees `<= floor(d/2)`.
pub fn g_from_h(h: &Polynomial, dim: i32) -> Polynomial {
    if dim < 0 {
        return Polynomial::one();
    }
    let top = (dim / 2) as usize;
    Polynomial::from_coeffs(
        (0..=top as i64)
            .map(|k| h.coeff(k) - h.coeff(k - 1))
            .collect(),
    )
}

/// `h` and `g` of intervals `[F, G]` for a chosen set of lower faces `F` and
/// every `G >= F`.
#[derive(Clone, Debug)]
pub struct IntervalTable {
    rows: HashMap<FaceId, HashMap<FaceId, IntervalPolys>>,
    top: FaceId,
    bottom: FaceId,
}

impl IntervalTable {
    /// Rows for every lower face: all intervals of the lattice.
    pub fn full(lattice: &FaceLattice) -> Self {
        Self::with_rows(lattice, 0..lattice.len())
    }

    /// Only the row of the empty face: every face `F` as a polytope.
    pub fn lower(lattice: &FaceLattice) -> Self {
        Self::with_rows(lattice, std::iter::once(lattice.bottom()))
    }

    pub fn with_rows(lattice: &FaceLattice, lowers: impl IntoIterator<Item = FaceId>) -> Self {
        let max_power = (lattice.dim() + 1).max(0) as usize;
        let powers: Vec<Polynomial> = (0..=max_power)
            .map(|n| Polynomial::binomial_power(-1, n))
            .collect();
        let mut rows = HashMap::new();
        for f in lowers {
            rows.entry(f)
                .or_insert_with(|| Self::row(lattice, f, &powers));
        }
        Self { rows, top: lattice.top(), bottom: lattice.bottom() }
    }

    fn row(lattice: &FaceLattice, lower: FaceId, powers: &[Polynomial]) -> HashMap<FaceId, IntervalPolys> {
        let lower_dim = lattice.face_dim(lower);
        let mut row: HashMap<FaceId, IntervalPolys> = HashMap::new();
        row.insert(lower, IntervalPolys::empty());
        let one = BigInt::one();
        for g in lower + 1..lattice.len() {
            if !lattice.leq(lower, g) {
                continue;
            }
            let g_dim = lattice.face_dim(g);
            let mut h = Polynomial::zero();
            for &mid in lattice.below(g) {
                if mid == g || !lattice.leq(lower, mid) {
                    continue;
                }
                let exp = (g_dim - lattice.face_dim(mid) - 1) as usize;
                h.add_scaled(&(&row[&mid].g * &powers[exp]), &one);
            }
            let dim = g_dim - lower_dim - 1;
            let gp = g_from_h(&h, dim);
            row.insert(g, IntervalPolys { dim, h, g: gp });
        }
        row
    }

    pub fn get(&self, lower: FaceId, upper: FaceId) -> Option<&IntervalPolys> {
        self.rows.get(&lower)?.get(&upper)
    }

    fn expect(&self, lower: FaceId, upper: FaceId) -> &IntervalPolys {
        self.get(lower, upper)
            .unwrap_or_else(|| panic!("interval [{lower}, {upper}] not tabulated"))
    }

    pub fn h(&self, lower: FaceId, upper: FaceId) -> &Polynomial {
        &self.expect(lower, upper).h
    }

    pub fn g(&self, lower: FaceId, upper: FaceId) -> &Polynomial {
        &self.expect(lower, upper).g
    }

    /// The face `F` as a polytope.
    pub fn face(&self, f: FaceId) -> &IntervalPolys {
        self.expect(self.bottom, f)
    }

    /// The quotient `P/F`.
    pub fn quotient(&self, f: FaceId) -> &IntervalPolys {
        self.expect(f, self.top)
    }

    pub fn whole(&self) -> &IntervalPolys {
        self.expect(self.bottom, self.top)
    }
}

fn require_eulerian(lattice: &FaceLattice) -> Result<()> {
    match lattice.eulerian_witness() {
        None => Ok(()),
        Some((lower, upper, even, odd)) => Err(Error::NotEulerian {
            lower: lattice.face(lower).vertices.to_vec(),
            upper: lattice.face(upper).vertices.to_vec(),
            even,
            odd,
        }),
    }
}

pub fn toric_h(lattice: &FaceLattice) -> Result<Polynomial> {
    require_eulerian(lattice)?;
    Ok(IntervalTable::lower(lattice).whole().h.clone())
}

pub fn toric_g(lattice: &FaceLattice) -> Result<Polynomial> {
    require_eulerian(lattice)?;
    Ok(IntervalTable::lower(lattice).whole().g.clone())
}

/// The simplicial h-polynomial `Σ_i f_{i-1} (t - 1)^(d - i)` with `f_{-1} = 1`.
pub fn simplicial_h(f: &[usize], dim: usize) -> Result<Polynomial> {
    if f.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim as i64, found: f.len() as i64 });
    }
    let mut h = Polynomial::binomial_power(-1, dim);
    for (i, &count) in f.iter().enumerate() {
        h.add_scaled(&Polynomial::binomial_power(-1, dim - 1 - i), &BigInt::from(count));
    }
    Ok(h)
}

/// Chain counts `f_S` for every `S ⊆ {0, ..., d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub dim: i32,
    counts: BTreeMap<Vec<i32>, u64>,
}

impl FlagVector {
    pub fn get(&self, dims: &[i32]) -> u64 {
        self.counts.get(dims).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i32>, &u64)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn key(dims: &[i32]) -> String {
        let parts: Vec<String> = dims.iter().map(i32::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl Serialize for FlagVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.counts.iter().map(|(k, v)| (Self::key(k), v)))
    }
}

impl fmt::Display for FlagVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.counts {
            writeln!(f, "f_{} = {v}", Self::key(k))?;
        }
        Ok(())
    }
}

pub fn flag_vector(lattice: &FaceLattice) -> FlagVector {
    let d = lattice.dim().max(0);
    let mut counts = BTreeMap::new();
    for mask in 0u32..(1 << d) {
        let dims: Vec<i32> = (0..d).filter(|k| mask & (1 << k) != 0).collect();
        counts.insert(dims.clone(), count_chains(lattice, &dims));
    }
    FlagVector { dim: lattice.dim(), counts }
}

fn count_chains(lattice: &FaceLattice, dims: &[i32]) -> u64 {
    let Some((&first, rest)) = dims.split_first() else {
        return 1;
    };
    let mut ways: HashMap<FaceId, u64> = lattice.faces_of_dim(first).map(|f| (f, 1)).collect();
    for &k in rest {
        ways = lattice
            .faces_of_dim(k)
            .map(|g| {
                let n = lattice
                    .below(g)
                    .iter()
                    .filter_map(|f| ways.get(f))
                    .sum::<u64>();
                (g, n)
            })
            .collect();
    }
    ways.values().sum()
}

/// `g_1 = f_0 - (d + 1)`.
pub fn g1_closed(lattice: &FaceLattice) -> Result<BigInt> {
    let d = lattice.dim();
    if d < 1 {
        return Err(Error::DimensionTooSmall { what: "g1 closed form", minimum: 1, found: d.into() });
    }
    let f0 = lattice.faces_of_dim(0).count() as i64;
    Ok(BigInt::from(f0 - (d as i64 + 1)))
}

/// `g_2 = f_1 + f_{02} - 3 f_2 - d f_0 + C(d+1, 2)`.
pub fn g2_closed(lattice: &FaceLattice) -> Result<BigInt> {
    let d = lattice.dim() as i64;
    if d < 4 {
        return Err(Error::DimensionTooSmall { what: "g2 closed form", minimum: 4, found: d });
    }
    Ok(g2_flag_expression(lattice))
}

/// The flag-number expression behind [`g2_closed`], without the dimension gate.
pub fn g2_flag_expression(lattice: &FaceLattice) -> BigInt {
    let d = lattice.dim() as i64;
    let f0 = lattice.faces_of_dim(0).count() as i64;
    let f1 = lattice.faces_of_dim(1).count() as i64;
    let f2 = lattice.faces_of_dim(2).count() as i64;
    let f02 = count_chains(lattice, &[0, 2]) as i64;
    BigInt::from(f1 + f02 - 3 * f2 - d * f0 + d * (d + 1) / 2)
}

pub fn check_dehn_sommerville(lattice: &FaceLattice) -> Result<bool> {
    let h = toric_h(lattice)?;
    Ok(lattice.dim() < 0 || h.is_palindromic(lattice.dim() as usize))
}

/// `g(P) >= g(F) g(P/F)` coefficientwise.
pub fn check_monotonicity(table: &IntervalTable, f: FaceId) -> bool {
    let product = &table.face(f).g * &table.quotient(f).g;
    table.whole().g.coefficientwise_geq(&product)
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// `g_i <= C(f_0 - d + i - 2, i)` for `1 <= i <= floor(d/2)`.
pub fn check_ubt(lattice: &FaceLattice) -> Result<bool> {
    let g = toric_g(lattice)?;
    let d = lattice.dim() as i64;
    let f0 = lattice.faces_of_dim(0).count() as i64;
    Ok((1..=d / 2).all(|i| g.coeff(i) <= binomial(f0 - d + i - 2, i)))
}

/// `h_k - h_{k-1}` for any `k`, zero on the empty polytope.
pub fn gtilde(lattice: &FaceLattice, k: i64) -> Result<BigInt> {
    require_eulerian(lattice)?;
    Ok(IntervalTable::lower(lattice).whole().gtilde(k))
}

/// No zero coefficient of `g` is followed by a nonzero one.
pub fn check_g_cascade(lattice: &FaceLattice) -> Result<bool> {
    let g = toric_g(lattice)?;
    Ok(g_cascade_holds(&g, lattice.dim()))
}

pub fn g_cascade_holds(g: &Polynomial, dim: i32) -> bool {
    let top = (dim.max(0) / 2) as i64;
    let mut seen_zero = false;
    for k in 0..=top {
        let c = g.coeff(k);
        if seen_zero && !c.is_zero() {
            return false;
        }
        seen_zero |= c.is_zero();
    }
    true
}

/// `g_2 <= C(g_1 + 1, 2)`, the degree-two Macaulay condition; vacuous below `d = 4`.
pub fn check_m_sequence_degree_two(g: &Polynomial, dim: i32) -> bool {
    if dim < 4 {
        return true;
    }
    let g1 = g.coeff(1);
    let bound = (&g1 + 1) * &g1 / 2;
    !g1.is_negative() && g.coeff(2) <= bound
}

/// A numerical invariant of polytopes of one fixed dimension.
#[derive(Clone)]
pub struct GradedInvariant {
    pub dim: i32,
    pub name: String,
    eval: Arc<dyn Fn(&IntervalPolys) -> BigInt + Send + Sync>,
}

impl fmt::Debug for GradedInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.name, self.dim)
    }
}

impl GradedInvariant {
    pub fn new(
        dim: i32,
        name: impl Into<String>,
        eval: impl Fn(&IntervalPolys) -> BigInt + Send + Sync + 'static,
    ) -> Self {
        Self { dim, name: name.into(), eval: Arc::new(eval) }
    }

    /// `g̃_k` on `dim`-polytopes.
    pub fn gtilde(k: i64, dim: i32) -> Self {
        Self::new(dim, format!("gtilde_{k}"), move |p| p.gtilde(k))
    }

    /// `g_k` on `dim`-polytopes (zero above `dim / 2`).
    pub fn g(k: i64, dim: i32) -> Self {
        Self::new(dim, format!("g_{k}"), move |p| p.g.coeff(k))
    }

    pub fn eval(&self, polys: &IntervalPolys) -> Result<BigInt> {
        if polys.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim.into(), found: polys.dim.into() });
        }
        Ok((self.eval)(polys))
    }
}

/// `(φ ∗ ψ)(P) = Σ_{F ≤ P, dim F = dim φ} φ(F) ψ(P/F)`.
///
/// `table` must hold the bottom row and the rows of every face of dimension
/// `dim φ`.
pub fn convolution_with(
    phi: &GradedInvariant,
    psi: &GradedInvariant,
    lattice: &FaceLattice,
    table: &IntervalTable,
) -> Result<BigInt> {
    let expected = phi.dim + psi.dim + 1;
    if lattice.dim() != expected {
        return Err(Error::DimensionMismatch { expected: expected.into(), found: lattice.dim().into() });
    }
    let mut total = BigInt::zero();
    for f in lattice.faces_of_dim(phi.dim) {
        total += phi.eval(table.face(f))? * psi.eval(table.quotient(f))?;
    }
    Ok(total)
}

pub fn convolution(phi: &GradedInvariant, psi: &GradedInvariant, lattice: &FaceLattice) -> Result<BigInt> {
    let rows = std::iter::once(lattice.bottom()).chain(lattice.faces_of_dim(phi.dim));
    let table = IntervalTable::with_rows(lattice, rows);
    convolution_with(phi, psi, lattice, &table)
}

/// Both sides of
/// `(k+1) g̃_{k+1}(P) + (d-k+1) g̃_k(P) = Σ_{i=0..k} (i+1) (g̃_i^{2i} ∗ g̃_{k-i}^{d-2i-1})(P)`.
pub fn kalai_identity_sides(lattice: &FaceLattice, table: &IntervalTable, k: i64) -> Result<(BigInt, BigInt)> {
    let d = lattice.dim() as i64;
    let whole = table.whole();
    let lhs = BigInt::from(k + 1) * whole.gtilde(k + 1) + BigInt::from(d - k + 1) * whole.gtilde(k);
    let mut rhs = BigInt::zero();
    for i in 0..=k {
        if 2 * i > d {
            break;
        }
        let phi = GradedInvariant::gtilde(i, (2 * i) as i32);
        let psi = GradedInvariant::gtilde(k - i, (d - 2 * i - 1) as i32);
        rhs += BigInt::from(i + 1) * convolution_with(&phi, &psi, lattice, table)?;
    }
    Ok((lhs, rhs))
}

pub fn check_kalai_identity(lattice: &FaceLattice, k: i64) -> Result<bool> {
    require_eulerian(lattice)?;
    let table = IntervalTable::full(lattice);
    let (lhs, rhs) = kalai_identity_sides(lattice, &table, k)?;
    Ok(lhs == rhs)
}

/// `g(pyramid Q) = g(Q)` and `h(bipyramid Q) = (1 + t) h(Q)`.
pub fn check_cone_bipyramid(q: &FaceLattice) -> Result<bool> {
    let cone_ok = toric_g(&q.pyramid())? == toric_g(q)?;
    let bip_ok = match q.bipyramid() {
        Ok(b) => toric_h(&b)? == &Polynomial::from_i64s(&[1, 1]) * &toric_h(q)?,
        Err(Error::DimensionTooSmall { .. }) => true,
        Err(e) => return Err(e),
    };
    Ok(cone_ok && bip_ok)
}
