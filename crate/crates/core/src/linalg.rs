//! Exact rational linear algebra.
//!
//! Ranks are computed by fraction-free elimination on integer rows: each
//! rational row is scaled to a primitive integer row first, which never
//! changes the rank. Elimination runs in checked `i128` and restarts in
//! `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| primitive_integer_row(self.row(r))).collect();
        integer_rank(rows)
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of `{x : M x = 0}`, from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..self.cols {
                        let delta = &factor * &m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -m[i][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Scales a rational vector to an integer vector with gcd 1 (zero stays zero).
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Rank of an integer matrix given by rows.
pub fn integer_rank(rows: Vec<Vec<BigInt>>) -> usize {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    if let Some(small) = small {
        if let Some(rank) = rank_i128(small) {
            return rank;
        }
    }
    rank_bigint(rows)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

fn normalize_i128(row: &mut [i128]) {
    let g = row.iter().fold(0, |acc, &x| gcd_i128(acc, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// `None` if an intermediate value overflows.
fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len())
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = pivot_row[col];
        for row in tail.iter_mut() {
            let cur = row[col];
            if cur == 0 {
                continue;
            }
            let g = gcd_i128(pv, cur);
            let (a, b) = (pv / g, cur / g);
            for c in col..cols {
                row[c] = row[c].checked_mul(a)?.checked_sub(pivot_row[c].checked_mul(b)?)?;
            }
            normalize_i128(row);
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn rank_bigint(mut m: Vec<Vec<BigInt>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = &pivot_row[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let a = pv / &g;
            let b = &row[col] / &g;
            for c in col..cols {
                row[c] = &row[c] * &a - &pivot_row[c] * &b;
            }
            let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                row.iter_mut().for_each(|x| *x = &*x / &content);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Whether `v` lies in the linear span of `gens`.
pub fn in_span(gens: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let cols = v.len();
    let base = RationalMatrix::from_rows(cols, gens.to_vec()).rank();
    let mut with = gens.to_vec();
    with.push(v.to_vec());
    RationalMatrix::from_rows(cols, with).rank() == base
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::from_int_rows(3, &[vec![1, 2, 3], vec![2, 4, 6]]).rank(), 1);
        assert_eq!(RationalMatrix::from_int_rows(3, &[vec![1, 2, 3], vec![2, 4, 6]]).kernel_dimension(), 2);
        assert_eq!(RationalMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1.into(), 2.into());
        let m = RationalMatrix::from_rows(2, vec![vec![half.clone(), rat(1)], vec![rat(1), rat(2)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(primitive_integer_row(&[half, rat(3)]), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn bigint_fallback_agrees() {
        // entries large enough to overflow i128 during elimination
        let big = BigInt::from(10).pow(30);
        let rows = vec![
            vec![big.clone(), BigInt::from(1), BigInt::from(7)],
            vec![BigInt::from(3), &big + 1, BigInt::from(2)],
            vec![&big * 2 + 3, &big + 3, BigInt::from(16)],
        ];
        // third row = 2*first + second
        assert_eq!(integer_rank(rows.clone()), 2);
        assert_eq!(rank_bigint(rows), 2);
    }

    #[test]
    fn nullspace_basis() {
        let m = RationalMatrix::from_int_rows(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in 0..m.rows() {
                assert!(dot(m.row(r), v).is_zero());
            }
        }
        assert!(in_span(&[vec![rat(1), rat(0)]], &[rat(5), rat(0)]));
        assert!(!in_span(&[vec![rat(1), rat(0)]], &[rat(5), rat(1)]));
        assert!(!in_span(&[], &[rat(1)]));
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 6 + c]).collect()).collect();
            let m = RationalMatrix::from_int_rows(cols, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.nullspace().len(), m.kernel_dimension());
        }

        #[test]
        fn i128_and_bigint_paths_agree(seed in prop::collection::vec(-50i64..50, 25)) {
            let rows: Vec<Vec<BigInt>> = (0..5).map(|r| (0..5).map(|c| BigInt::from(seed[r * 5 + c])).collect()).collect();
            let small: Vec<Vec<i128>> = (0..5).map(|r| (0..5).map(|c| seed[r * 5 + c] as i128).collect()).collect();
            prop_assert_eq!(rank_i128(small), Some(rank_bigint(rows)));
        }
    }
}
