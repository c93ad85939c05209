//! Multiplicities `m_k(τ)` of the pure resolution of the skyscraper at the
//! zero cone, solved degree by degree from the vanishing Euler
//! characteristic of the reduced stalks, and the identities and
//! inequalities pairing `g(F*)` with `g(P/F)`.
//!
//! Faces of the cone `σ = cP` are indexed by the faces of `P`; the empty
//! face stands for the zero cone, and a face `F` gives a cone of dimension
//! `dim F + 1`. The summand `ρL[-j]` of the resolution sits in cohomological
//! degree `dim ρ - 2j`, and its reduced stalk at `τ >= ρ` has Hilbert series
//! `t^j g(τ/ρ, t)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{FaceId, FaceLattice};
use crate::polynomial::Polynomial;
use crate::toric::IntervalTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    /// `m[f][k]` for the cone over face `f` of the polytope.
    pub m: Vec<Vec<BigInt>>,
}

impl MultiplicityTable {
    pub fn get(&self, f: FaceId, k: usize) -> BigInt {
        self.m[f].get(k).cloned().unwrap_or_default()
    }
}

fn cone_dim(lattice: &FaceLattice, f: FaceId) -> i64 {
    i64::from(lattice.face_dim(f)) + 1
}

fn sign(e: i64) -> BigInt {
    BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Solves `Σ_{ρ <= τ} (-1)^{dim ρ} Σ_j m_j(ρ) g_{k-j}(τ/ρ) = 0` for every
/// nonzero cone `τ` and every degree `k`, starting from `m(o) = 1`.
pub fn verma_multiplicities_with(lattice: &FaceLattice, table: &IntervalTable) -> Result<MultiplicityTable> {
    let n = lattice.len();
    let mut m: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    m[lattice.bottom()] = vec![BigInt::from(1)];
    // faces are sorted by dimension, so every ρ < τ is solved before τ
    for tau in 0..n {
        if tau == lattice.bottom() {
            continue;
        }
        let dt = cone_dim(lattice, tau);
        let mut row = Vec::new();
        for k in 0..=dt as usize {
            let mut s = BigInt::zero();
            for &rho in lattice.below(tau) {
                if rho == tau {
                    continue;
                }
                let g = table.g(rho, tau);
                let mut inner = BigInt::zero();
                for (j, mj) in m[rho].iter().enumerate().take(k + 1) {
                    inner += mj * g.coeff((k - j) as i64);
                }
                s += sign(cone_dim(lattice, rho)) * inner;
            }
            let value = -sign(dt) * s;
            if value.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity m_{k} = {value} at face {tau}"
                )));
            }
            if 2 * k as i64 > dt && !value.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "multiplicity m_{k} = {value} above the middle degree at face {tau}"
                )));
            }
            if 2 * k as i64 <= dt {
                row.push(value);
            }
        }
        m[tau] = row;
    }
    Ok(MultiplicityTable { m })
}

pub fn verma_multiplicities(lattice: &FaceLattice) -> Result<MultiplicityTable> {
    verma_multiplicities_with(lattice, &IntervalTable::full(lattice))
}

/// `g(F*)` for every face `F`: the upper interval above the dual face.
pub fn polar_g(lattice: &FaceLattice) -> Vec<Polynomial> {
    let dual = lattice.dual();
    let table = IntervalTable::full(&dual);
    (0..lattice.len())
        .map(|f| table.quotient(lattice.dual_face(f)).g.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VermaFace {
    pub face: Vec<usize>,
    pub cone_dim: i64,
    pub multiplicities: Vec<String>,
    pub polar_g: Vec<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VermaReport {
    pub top: Vec<String>,
    pub polar_top: Vec<String>,
    pub faces: Vec<VermaFace>,
    pub agrees: bool,
}

fn coefficients(p: &Polynomial, len: usize) -> Vec<BigInt> {
    (0..len as i64).map(|k| p.coeff(k)).collect()
}

/// Compares `m_k(cF)` with `g_k(F*)` for every nonempty face `F`, the top
/// face included.
pub fn check_verma_vs_polar(lattice: &FaceLattice) -> Result<VermaReport> {
    let table = IntervalTable::full(lattice);
    let m = verma_multiplicities_with(lattice, &table)?;
    let polar = polar_g(lattice);
    let mut faces = Vec::new();
    for f in 0..lattice.len() {
        if f == lattice.bottom() {
            continue;
        }
        let len = m.m[f].len();
        let ours = m.m[f].clone();
        let theirs = coefficients(&polar[f], len.max(polar[f].coeffs().len()));
        let padded: Vec<BigInt> = (0..theirs.len()).map(|k| m.get(f, k)).collect();
        faces.push(VermaFace {
            face: lattice.face(f).vertices.to_vec(),
            cone_dim: cone_dim(lattice, f),
            multiplicities: ours.iter().map(BigInt::to_string).collect(),
            polar_g: theirs.iter().map(BigInt::to_string).collect(),
            agrees: padded == theirs,
        });
    }
    let top = faces.last().cloned();
    Ok(VermaReport {
        agrees: faces.iter().all(|f| f.agrees),
        top: top.as_ref().map(|t| t.multiplicities.clone()).unwrap_or_default(),
        polar_top: top.map(|t| t.polar_g).unwrap_or_default(),
        faces,
    })
}

/// `Σ_{∅ <= F <= P} (-1)^{dim F} g(F*, t) g(P/F, t)`, which vanishes for
/// every nonempty polytope.
pub fn check_reciprocity(lattice: &FaceLattice) -> Polynomial {
    let table = IntervalTable::full(lattice);
    let polar = polar_g(lattice);
    let mut total = Polynomial::zero();
    for f in 0..lattice.len() {
        let term = &polar[f] * &table.quotient(f).g;
        total.add_scaled(&term, &sign(lattice.face_dim(f).into()));
    }
    total
}

/// `Σ_{i+j=k} Σ_{dim F <= s+2i-1} (-1)^{dim F - s + 1} g_i(F*) g_j(P/F)`.
pub fn truncated_inequality_with(
    lattice: &FaceLattice,
    table: &IntervalTable,
    polar: &[Polynomial],
    k: i64,
    s: i64,
) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..=k {
        let j = k - i;
        for f in 0..lattice.len() {
            let df = i64::from(lattice.face_dim(f));
            if df > s + 2 * i - 1 {
                continue;
            }
            total += sign(df - s + 1) * polar[f].coeff(i) * table.quotient(f).g.coeff(j);
        }
    }
    total
}

pub fn truncated_inequality(lattice: &FaceLattice, k: i64, s: i64) -> (BigInt, bool) {
    let table = IntervalTable::full(lattice);
    let polar = polar_g(lattice);
    let value = truncated_inequality_with(lattice, &table, &polar, k, s);
    let ok = !value.is_negative();
    (value, ok)
}
